//! Property checks on a single input, each reported as [`CheckRow`]s. The check
//! name fixes the relation between `lhs` and `rhs`; `pass` is the exact verdict.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::counting::{brute_force_approx_chunked, sandwich_series, DEFAULT_CHUNK_SIZE};
use crate::diophantine::{self, CheckRow};
use crate::engine::{
    classical_expand, complete_hurwitz, convergents_of, fold_terms, hurwitz_expand,
    validate_hurwitz, Validity,
};
use crate::error::{Error, Kind, Result};
use crate::real::{rat, ExactReal, Rational};
use crate::transform::{classical_to_hurwitz, convergent_values, has_no_consecutive, omitted_indices};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
/// A selectable property suite; the serialized names are the CLI `--prop` values.
pub enum Prop {
    #[serde(rename = "theorem1")]
    Convergents,
    #[serde(rename = "prop1")]
    Validity,
    #[serde(rename = "prop2")]
    Fold,
    #[serde(rename = "prop3")]
    ErrorSign,
    #[serde(rename = "prop4")]
    Growth,
    #[serde(rename = "prop5")]
    Bounds,
    #[serde(rename = "theorem2-sandwich")]
    Sandwich,
}

impl Prop {
    pub const ALL: [Prop; 7] = [
        Prop::Convergents,
        Prop::Validity,
        Prop::Fold,
        Prop::ErrorSign,
        Prop::Growth,
        Prop::Bounds,
        Prop::Sandwich,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Prop::Convergents => "theorem1",
            Prop::Validity => "prop1",
            Prop::Fold => "prop2",
            Prop::ErrorSign => "prop3",
            Prop::Growth => "prop4",
            Prop::Bounds => "prop5",
            Prop::Sandwich => "theorem2-sandwich",
        }
    }
}

impl fmt::Display for Prop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Prop {
    type Err = Error;

    fn from_str(s: &str) -> Result<Prop> {
        Prop::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown property {s:?}")))
    }
}

pub fn all_pass(rows: &[CheckRow]) -> bool {
    rows.iter().all(|r| r.pass)
}

fn frac(p: &BigInt, q: &BigInt) -> String {
    format!("{p}/{q}")
}

/// Subsequence, no-two-consecutive-omitted and omitted-quality checks between the
/// first `hurwitz_terms` Hurwitz and first `classical_terms` classical
/// convergents, plus coverage: every primitive `p/q` with `q <= rho` and
/// `|x - p/q| <= 1/(3q^2)` is a Hurwitz convergent.
pub fn convergent_checks(
    x: &ExactReal,
    hurwitz_terms: usize,
    classical_terms: usize,
    rho: u64,
) -> Result<Vec<CheckRow>> {
    let h = hurwitz_expand(x, hurwitz_terms)?;
    let c = classical_expand(x, classical_terms)?;
    let h_conv = convergents_of(h.terms());
    let c_conv = convergents_of(c.terms());
    let h_vals: Vec<Rational> = h_conv.iter().map(|v| v.value()).collect();
    let c_vals: Vec<Rational> = c_conv.iter().map(|v| v.value()).collect();
    let mut rows = Vec::new();

    // the first n Hurwitz values occur in order among the classical values
    let mut from = 0;
    for (j, v) in h_vals.iter().enumerate() {
        let found = c_vals[from..].iter().position(|w| w == v).map(|i| i + from);
        rows.push(CheckRow {
            n: j,
            a_n: h.terms()[j].clone(),
            q_n: h_conv[j].q.clone(),
            check: "subsequence",
            lhs: v.to_string(),
            rhs: found.map_or_else(|| "missing".to_string(), |i| format!("classical[{i}]")),
            pass: found.is_some(),
        });
        if let Some(i) = found {
            from = i + 1;
        }
    }

    let t = classical_to_hurwitz(&c)?;
    let settled = t.hurwitz.len().min(h.len());
    rows.push(CheckRow {
        n: settled,
        a_n: BigInt::zero(),
        q_n: BigInt::zero(),
        check: "transform-commutes",
        lhs: format!("{:?}", &t.hurwitz.terms()[..settled]),
        rhs: format!("{:?}", &h.terms()[..settled]),
        pass: t.hurwitz.terms()[..settled] == h.terms()[..settled] && t.funny.check(),
    });

    let omitted = omitted_indices(&t.trace);
    rows.push(CheckRow {
        n: omitted.len(),
        a_n: BigInt::zero(),
        q_n: BigInt::zero(),
        check: "no-consecutive-omitted",
        lhs: format!("{omitted:?}"),
        rhs: String::new(),
        pass: has_no_consecutive(&omitted),
    });
    let third = rat(1, 3);
    for &m in &omitted {
        let cv = &c_conv[m];
        // |x - p/q| > 1/(3q^2)  <=>  |q (q x - p)| > 1/3
        let quality = crate::counting::quality(x, &cv.p, &cv.q)?;
        rows.push(CheckRow {
            n: m,
            a_n: c.terms()[m].clone(),
            q_n: cv.q.clone(),
            check: "omitted-quality",
            lhs: "1/3".into(),
            rhs: quality.to_string(),
            pass: quality.compare_rational(&third)? == Ordering::Greater,
        });
    }

    if rho > 0 {
        let near = brute_force_approx_chunked(x, &third, rho, DEFAULT_CHUNK_SIZE)?;
        let all = hurwitz_expand_until(x, &BigInt::from(rho))?;
        let all_vals = convergent_values(&all);
        for r in near {
            let v = Rational::new(r.p.clone(), r.q.clone());
            let idx = all_vals.iter().position(|w| *w == v);
            rows.push(CheckRow {
                n: idx.unwrap_or(0),
                a_n: idx.map_or_else(BigInt::zero, |i| all[i].clone()),
                q_n: r.q.clone(),
                check: "coverage",
                lhs: frac(&r.p, &r.q),
                rhs: idx.map_or_else(|| "not a convergent".into(), |i| format!("hurwitz[{i}]")),
                pass: idx.is_some(),
            });
        }
    }
    Ok(rows)
}

/// Hurwitz quotients until the convergent denominators pass `rho` in size.
fn hurwitz_expand_until(x: &ExactReal, rho: &BigInt) -> Result<Vec<BigInt>> {
    let mut e = crate::engine::Expansion::hurwitz(x.clone());
    let mut r = crate::engine::Recurrence::new();
    while let Some(a) = e.pull()? {
        if r.push(a).q.abs() > *rho {
            break;
        }
    }
    Ok(e.terms().to_vec())
}

/// Validity of a Hurwitz quotient sequence; a valid one must re-expand from
/// its completion to the same terms.
pub fn validity_checks(terms: &[BigInt]) -> Result<Vec<CheckRow>> {
    let conv = convergents_of(terms);
    let validity = validate_hurwitz(terms, Kind::HurwitzPositive);
    let mut rows: Vec<CheckRow> = terms
        .iter()
        .enumerate()
        .skip(1)
        .map(|(n, a)| {
            let (pass, rhs) = match validity {
                Validity::Invalid { index, reason } if index == n => (false, reason.to_string()),
                _ => (true, "ok".to_string()),
            };
            CheckRow {
                n,
                a_n: a.clone(),
                q_n: conv[n].q.clone(),
                check: "validity",
                lhs: a.to_string(),
                rhs,
                pass,
            }
        })
        .collect();
    if validity.is_valid() && !terms.is_empty() {
        let x = complete_hurwitz(terms)?;
        let back = hurwitz_expand(&x, terms.len())?;
        let n = terms.len() - 1;
        rows.push(CheckRow {
            n,
            a_n: terms[n].clone(),
            q_n: conv[n].q.clone(),
            check: "round-trip",
            lhs: x.to_string(),
            rhs: format!("{:?}", back.terms()),
            pass: back.terms() == terms,
        });
    }
    Ok(rows)
}

/// The bottom-up fold of every prefix equals the last convergent, signs included.
pub fn fold_checks(terms: &[BigInt]) -> Result<Vec<CheckRow>> {
    let conv = convergents_of(terms);
    let mut rows = Vec::with_capacity(terms.len());
    for (n, c) in conv.iter().enumerate() {
        let (lhs, pass) = match fold_terms(&terms[..=n]) {
            Ok(f) => (frac(&f.num, &f.den), f.num == c.p && f.den == c.q),
            Err(e) => (e.to_string(), false),
        };
        rows.push(CheckRow {
            n,
            a_n: terms[n].clone(),
            q_n: c.q.clone(),
            check: "fold-equals-recursion",
            lhs,
            rhs: frac(&c.p, &c.q),
            pass,
        });
    }
    Ok(rows)
}

fn diophantine_rows(x: &ExactReal, n: usize, keep: &[&str]) -> Result<Vec<CheckRow>> {
    Ok(diophantine::verify(x, n)?
        .into_iter()
        .filter(|r| keep.contains(&r.check))
        .collect())
}

/// Error-sign law at `1 <= k <= n`.
pub fn error_sign_checks(x: &ExactReal, n: usize) -> Result<Vec<CheckRow>> {
    diophantine_rows(x, n, &["error-sign"])
}

/// Denominator growth at `1 <= k <= n`, one row per index: `lhs = |q_k|`,
/// `rhs = |q_{k-1}|`, passing when both growth bounds, `|q_k| > phi |q_{k-1}|`
/// and the window on `q_{k-2}/q_{k-1}` all hold.
pub fn growth_checks(x: &ExactReal, n: usize) -> Result<Vec<CheckRow>> {
    let terms = hurwitz_expand(x, n + 1)?;
    Ok(diophantine::growth_from_terms(terms.terms(), n)?
        .into_iter()
        .map(|g| CheckRow {
            n: g.n,
            a_n: g.a_n.clone(),
            q_n: g.q_cur.clone(),
            check: "growth",
            lhs: g.q_cur.abs().to_string(),
            rhs: g.q_prev.abs().to_string(),
            pass: g.holds(),
        })
        .collect())
}

/// Two-sided approximation bounds at `1 <= k <= n`.
pub fn bound_checks(x: &ExactReal, n: usize) -> Result<Vec<CheckRow>> {
    diophantine_rows(x, n, &["lagrange-lower", "lagrange-upper"])
}

/// Count and log sandwiches for `1 <= k <= n` at each `delta`.
pub fn sandwich_checks(x: &ExactReal, deltas: &[Rational], n: usize) -> Result<Vec<CheckRow>> {
    let terms = hurwitz_expand(x, n + 1)?;
    let conv = convergents_of(terms.terms());
    let mut rows = Vec::new();
    for delta in deltas {
        for s in sandwich_series(x, delta, n)? {
            let (a, q) = (terms.terms()[s.n].clone(), conv[s.n].q.clone());
            let row = |check, lhs: String, rhs: String, pass| CheckRow {
                n: s.n,
                a_n: a.clone(),
                q_n: q.clone(),
                check,
                lhs,
                rhs,
                pass,
            };
            rows.push(row(
                "count-lower",
                s.count_lower.to_string(),
                s.count_mid.to_string(),
                s.count_lower <= s.count_mid,
            ));
            rows.push(row(
                "count-upper",
                s.count_mid.to_string(),
                s.count_upper.to_string(),
                s.count_mid <= s.count_upper,
            ));
            rows.push(row(
                "log-sandwich",
                format!("{} <= {}", s.logsum_lower.lo, s.log_qn.hi),
                format!("{} <= {}", s.log_qn.lo, s.logsum_upper.hi),
                s.logs_hold(),
            ));
        }
    }
    Ok(rows)
}
