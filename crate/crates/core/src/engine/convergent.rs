use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::seq::PartialQuotientSeq;
use crate::error::{Error, Result};
use crate::real::Rational;

/// `p_n / q_n` exactly as the two-term recursion produces it. Signs are never
/// normalized; Hurwitz convergents may carry a negative `q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct Convergent {
    pub index: usize,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub p: BigInt,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub q: BigInt,
}

impl Convergent {
    pub fn value(&self) -> Rational {
        Rational::new(self.p.clone(), self.q.clone())
    }
}

/// Streaming form of `p_n = a_n p_{n-1} + p_{n-2}`, seeded with
/// `p_{-1} = 1, p_{-2} = 0, q_{-1} = 0, q_{-2} = 1`.
#[derive(Clone, Debug)]
pub struct Recurrence {
    next_index: usize,
    p: (BigInt, BigInt),
    q: (BigInt, BigInt),
}

impl Default for Recurrence {
    fn default() -> Self {
        Recurrence {
            next_index: 0,
            p: (BigInt::zero(), BigInt::one()),
            q: (BigInt::one(), BigInt::zero()),
        }
    }
}

impl Recurrence {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, a: &BigInt) -> Convergent {
        let p = a * &self.p.1 + &self.p.0;
        let q = a * &self.q.1 + &self.q.0;
        self.p.0 = std::mem::replace(&mut self.p.1, p.clone());
        self.q.0 = std::mem::replace(&mut self.q.1, q.clone());
        let index = self.next_index;
        self.next_index += 1;
        Convergent { index, p, q }
    }

    /// `(p_{n-1}, q_{n-1})` for the last pushed `n`.
    pub fn previous(&self) -> (&BigInt, &BigInt) {
        (&self.p.0, &self.q.0)
    }
}

/// Convergents of a raw term list.
pub fn convergents_of(terms: &[BigInt]) -> Vec<Convergent> {
    let mut r = Recurrence::new();
    terms.iter().map(|a| r.push(a)).collect()
}

/// `(p_k, q_k)` for `k < n`. Negative Hurwitz expansions share their convergents
/// with the positive form and are converted first.
pub fn convergents(seq: &PartialQuotientSeq, n: usize) -> Result<Vec<Convergent>> {
    if seq.len() < n {
        return Err(Error::InsufficientTerms {
            needed: n,
            available: seq.len(),
        });
    }
    let terms = seq.positive_terms();
    Ok(convergents_of(&terms[..n]))
}

/// An unreduced fraction `num / den`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct Fraction {
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub num: BigInt,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub den: BigInt,
}

impl Fraction {
    pub fn value(&self) -> Result<Rational> {
        if self.den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational::new(self.num.clone(), self.den.clone()))
    }
}

/// Folds the first `n` terms bottom-up with only `(p/q)^-1 = q/p` and
/// `m + p/q = (m q + p)/q`, never reducing, so the result matches the last
/// convergent componentwise.
pub fn evaluate_prefix(seq: &PartialQuotientSeq, n: usize) -> Result<Fraction> {
    if n == 0 || seq.len() < n {
        return Err(Error::InsufficientTerms {
            needed: n.max(1),
            available: seq.len(),
        });
    }
    let terms = seq.positive_terms();
    fold_terms(&terms[..n])
}

pub fn fold_terms(terms: &[BigInt]) -> Result<Fraction> {
    let (last, rest) = terms.split_last().ok_or(Error::InsufficientTerms {
        needed: 1,
        available: 0,
    })?;
    let mut num = last.clone();
    let mut den = BigInt::one();
    for a in rest.iter().rev() {
        if num.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        // a + 1/(num/den) = a + den/num = (a num + den)/num
        let new_num = a * &num + &den;
        den = num;
        num = new_num;
    }
    Ok(Fraction { num, den })
}

/// `p_n q_{n-1} - p_{n-1} q_n` for each `n >= 1`.
pub fn determinants(conv: &[Convergent]) -> Vec<BigInt> {
    conv.windows(2)
        .map(|w| &w[1].p * &w[0].q - &w[0].p * &w[1].q)
        .collect()
}
