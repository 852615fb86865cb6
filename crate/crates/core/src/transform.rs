//! Rewriting a classical expansion into the Hurwitz expansion of the same real.
//!
//! Every classical quotient `b_n = 1` (`n >= 1`) lies in a maximal run of ones.
//! Each run contributes every other index, starting at its first, to the set
//! `S'`. At each `n` in `S'` the tail `1/(1 + 1/(b_{n+1} + y))` is replaced by
//! `1 - 1/(b_{n+1} + 1 + y)`, which deletes level `n` and leaves a "funny"
//! expansion `c_k + e_k + (-1)^e_k / (...)` with `c_k >= 2` for `k >= 1`.
//! Folding the signs `(-1)^e_k` into the quotients gives the Hurwitz expansion.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::engine::{convergents_of, PartialQuotientSeq};
use crate::error::{Error, Kind, Result};
use crate::real::Rational;

/// A maximal run `start..=end` of indices with `b_n = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub start: usize,
    pub end: usize,
}

impl Block {
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockSelection {
    pub s: Vec<usize>,
    pub s_prime: Vec<usize>,
    pub blocks: Vec<Block>,
    /// The last block reaches the end of a prefix and may still grow.
    pub provisional: bool,
}

impl BlockSelection {
    /// Selection for an explicit set `S` of positive indices.
    pub fn from_set(s: &BTreeSet<usize>, provisional: bool) -> Self {
        let mut blocks: Vec<Block> = Vec::new();
        for &n in s {
            match blocks.last_mut() {
                Some(b) if b.end + 1 == n => b.end = n,
                _ => blocks.push(Block { start: n, end: n }),
            }
        }
        let s_prime = blocks
            .iter()
            .flat_map(|b| (b.start..=b.end).step_by(2))
            .collect();
        BlockSelection {
            s: s.iter().copied().collect(),
            s_prime,
            blocks,
            provisional,
        }
    }

    pub fn in_s(&self, n: usize) -> bool {
        self.s.binary_search(&n).is_ok()
    }

    pub fn in_s_prime(&self, n: usize) -> bool {
        self.s_prime.binary_search(&n).is_ok()
    }

    /// Each `n` in `S` has exactly one of `n`, `n - 1` in `S'`.
    pub fn check(&self) -> bool {
        self.s_prime.iter().all(|n| self.in_s(*n))
            && self
                .s
                .iter()
                .all(|&n| self.in_s_prime(n) != (n >= 1 && self.in_s_prime(n - 1)))
    }
}

/// `S = {n >= 1 : b_n = 1}` of a classical prefix and its blockwise selection.
/// When `finite` is false a run of ones touching the last index is provisional.
pub fn block_select(b_terms: &[BigInt], finite: bool) -> BlockSelection {
    let one = BigInt::one();
    let s: BTreeSet<usize> = b_terms
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, b)| **b == one)
        .map(|(n, _)| n)
        .collect();
    let touches_end = !b_terms.is_empty() && s.contains(&(b_terms.len() - 1));
    BlockSelection::from_set(&s, !finite && touches_end)
}

/// `1/(1 + 1/(n + y)) == 1 - 1/(n + 1 + y)`, evaluated exactly.
pub fn key_identity_check(n: &BigInt, y: &Rational) -> Result<bool> {
    let inv = |r: Rational| {
        if r.is_zero() {
            Err(Error::ZeroDenominator)
        } else {
            Ok(r.recip())
        }
    };
    let base = Rational::from_integer(n.clone()) + y;
    let lhs = inv(Rational::one() + inv(base.clone())?)?;
    let rhs = Rational::one() - inv(base + Rational::one())?;
    Ok(lhs == rhs)
}

/// One level `c + e + (-1)^e / (...)` of the rewritten expansion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FunnyTerm {
    /// Classical index the level came from.
    pub source: usize,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub c: BigInt,
    pub epsilon: u8,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FunnyForm {
    pub terms: Vec<FunnyTerm>,
}

impl FunnyForm {
    /// `c_n >= 2` at every level after the first.
    pub fn check(&self) -> bool {
        let two = BigInt::from(2);
        self.terms.iter().skip(1).all(|t| t.c >= two)
    }

    /// Signed quotients `sigma_j (c_j + e_j)` with `sigma_0 = 1` and
    /// `sigma_{j+1} = sigma_j (-1)^e_j`.
    pub fn signed_quotients(&self) -> Vec<BigInt> {
        let mut sigma = true;
        self.terms
            .iter()
            .map(|t| {
                let e = &t.c + BigInt::from(t.epsilon);
                let a = if sigma { e } else { -e };
                if t.epsilon == 1 {
                    sigma = !sigma;
                }
                a
            })
            .collect()
    }
}

/// Per classical index: whether it is in `S`, `S'`, and whether everything it
/// contributes to the output is final.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassicalRecord {
    pub n: usize,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub b_n: BigInt,
    #[serde(rename = "in_S")]
    pub in_s: bool,
    #[serde(rename = "in_Sprime")]
    pub in_s_prime: bool,
    pub settled: bool,
}

/// Per output index: where the quotient came from and what it became.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HurwitzStep {
    pub index: usize,
    pub source: usize,
    /// The following classical level was folded in by the key identity.
    pub rewritten: bool,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub quotient: BigInt,
    /// Classical convergent index with the same value, when there is one.
    pub classical_convergent: Option<usize>,
    pub settled: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransformTrace {
    pub selection: BlockSelection,
    pub classical: Vec<ClassicalRecord>,
    pub steps: Vec<HurwitzStep>,
    /// The input was a complete (rational) expansion.
    pub finite: bool,
    /// A trailing `(a, -2)` was rewritten as `(a - 1, 2)` to follow the tie rule.
    pub tie_normalized: bool,
}

impl TransformTrace {
    /// One JSON object per classical index: `{n, b_n, in_S, in_Sprime, settled}`.
    pub fn json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.classical {
            out.push_str(&serde_json::to_string(r).expect("plain record"));
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transformed {
    /// Settled levels only.
    pub funny: FunnyForm,
    /// Settled Hurwitz quotients.
    pub hurwitz: PartialQuotientSeq,
    pub trace: TransformTrace,
}

/// Rewrites a classical prefix (or complete finite expansion) into Hurwitz
/// quotients.
///
/// On an unterminated prefix `b_0 .. b_{L-1}` the level from classical index
/// `k` is final once `b_{k+1}` is known, so output from indices `k <= L - 2`
/// is returned and anything later only appears, unsettled, in the trace. A
/// complete expansion is rewritten in full; its last two quotients are then
/// adjusted so a trailing tie `x = a - 1/2` follows the round-down convention.
pub fn classical_to_hurwitz(seq: &PartialQuotientSeq) -> Result<Transformed> {
    if seq.kind() != Kind::Classical {
        return Err(Error::KindMismatch {
            expected: Kind::Classical,
            found: seq.kind(),
        });
    }
    let b = seq.terms();
    if let Some((n, _)) = b.iter().enumerate().skip(1).find(|(_, x)| !x.is_positive()) {
        return Err(Error::Precondition(format!(
            "classical quotient b_{n} must be positive"
        )));
    }
    let finite = seq.is_finite();
    let len = b.len();
    let selection = block_select(b, finite);
    // index k's level is final once membership of k + 1 in S' is decided
    let settled_level = |k: usize| finite || k + 2 <= len;

    let mut levels = Vec::new();
    for (k, bk) in b.iter().enumerate() {
        if selection.in_s_prime(k) {
            continue;
        }
        let c = bk + BigInt::from(u8::from(k >= 1 && selection.in_s_prime(k - 1)));
        let epsilon = u8::from(selection.in_s_prime(k + 1));
        levels.push((FunnyTerm { source: k, c, epsilon }, settled_level(k)));
    }

    let full = FunnyForm {
        terms: levels.iter().map(|(t, _)| t.clone()).collect(),
    };
    let mut quotients = full.signed_quotients();
    let mut tie_normalized = false;
    if finite && quotients.len() >= 2 && *quotients.last().unwrap() == BigInt::from(-2) {
        let n = quotients.len();
        quotients[n - 2] -= 1;
        quotients[n - 1] = BigInt::from(2);
        tie_normalized = true;
    }

    let steps: Vec<HurwitzStep> = levels
        .iter()
        .zip(&quotients)
        .enumerate()
        .map(|(j, ((t, settled), a))| {
            let touched = tie_normalized && j + 2 == quotients.len();
            HurwitzStep {
                index: j,
                source: t.source,
                rewritten: t.epsilon == 1,
                quotient: a.clone(),
                classical_convergent: (!touched).then_some(t.source + t.epsilon as usize),
                settled: *settled,
            }
        })
        .collect();

    let n_settled = levels.iter().take_while(|(_, s)| *s).count();
    let classical = b
        .iter()
        .enumerate()
        .map(|(n, bn)| ClassicalRecord {
            n,
            b_n: bn.clone(),
            in_s: selection.in_s(n),
            in_s_prime: selection.in_s_prime(n),
            settled: settled_level(n),
        })
        .collect();

    Ok(Transformed {
        funny: FunnyForm {
            terms: full.terms[..n_settled].to_vec(),
        },
        hurwitz: PartialQuotientSeq::new(
            Kind::HurwitzPositive,
            quotients[..n_settled].to_vec(),
            finite,
        ),
        trace: TransformTrace {
            selection,
            classical,
            steps,
            finite,
            tie_normalized,
        },
    })
}

/// Classical convergent indices skipped by the Hurwitz expansion: `n - 1` for `n` in `S'`.
pub fn omitted_indices(trace: &TransformTrace) -> Vec<usize> {
    trace.selection.s_prime.iter().map(|n| n - 1).collect()
}

/// Positions at which each value of `sub` occurs in `seq`, strictly increasing,
/// or `None` if `sub` is not a subsequence. Values are compared as reduced
/// fractions.
pub fn subsequence_positions(sub: &[Rational], seq: &[Rational]) -> Option<Vec<usize>> {
    let mut out = Vec::with_capacity(sub.len());
    let mut from = 0;
    for v in sub {
        let at = from + seq[from..].iter().position(|w| w == v)?;
        out.push(at);
        from = at + 1;
    }
    Some(out)
}

/// Convergent values `p_n / q_n` of a term list.
pub fn convergent_values(terms: &[BigInt]) -> Vec<Rational> {
    convergents_of(terms).iter().map(|c| c.value()).collect()
}

/// No two consecutive integers in a sorted index list.
pub fn has_no_consecutive(sorted: &[usize]) -> bool {
    sorted.windows(2).all(|w| w[1] > w[0] + 1)
}
