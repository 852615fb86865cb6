//! Exact checks of the approximation properties of Hurwitz convergents: the sign
//! of each error term, the growth of the denominators, and two-sided bounds on
//! `|x - p_{n-1}/q_{n-1}|` in terms of `a_n`. Constants built from the golden
//! ratio are kept as exact elements of `Q(sqrt 5)`.

use std::cmp::Ordering;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::engine::{classical_expand, convergents_of, hurwitz_expand, Convergent};
use crate::error::{Error, Result};
use crate::real::{ExactReal, Rational};

fn q5(a: i64, b: i64) -> ExactReal {
    ExactReal::surd(a, b, 2, 5).expect("valid constant")
}

/// `phi = (1 + sqrt 5)/2`.
pub fn phi() -> ExactReal {
    q5(1, 1)
}

/// `2 - phi = (3 - sqrt 5)/2`.
pub fn two_minus_phi() -> ExactReal {
    q5(3, -1)
}

/// `phi - 1 = (sqrt 5 - 1)/2`.
pub fn phi_minus_one() -> ExactReal {
    q5(-1, 1)
}

/// `phi - 1/2 = sqrt 5 / 2`.
pub fn phi_minus_half() -> ExactReal {
    q5(0, 1)
}

/// `5/2 - phi = (4 - sqrt 5)/2`.
pub fn five_halves_minus_phi() -> ExactReal {
    q5(4, -1)
}

fn int(n: &BigInt) -> ExactReal {
    ExactReal::Rational(Rational::from_integer(n.clone()))
}

fn sgn(n: &BigInt) -> i8 {
    match n.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

fn ord_sign(o: Ordering) -> i8 {
    match o {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

/// `m * c + k` for a constant `c` and integers `m`, `k`.
fn lin(c: &ExactReal, m: &BigInt, k: &BigInt) -> ExactReal {
    c.affine(
        &Rational::from_integer(m.clone()),
        &Rational::from_integer(k.clone()),
    )
}

fn hurwitz_terms(x: &ExactReal, needed: usize) -> Result<Vec<BigInt>> {
    let seq = hurwitz_expand(x, needed)?;
    if seq.len() < needed {
        return Err(Error::InsufficientTerms {
            needed,
            available: seq.len(),
        });
    }
    Ok(seq.into_terms())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ErrorSign {
    pub n: usize,
    /// `sign(p_n/q_n - x)`.
    pub actual: i8,
    /// `(-1)^(n+1) sign(a_{n+1})`.
    pub predicted: i8,
}

impl ErrorSign {
    pub fn holds(&self) -> bool {
        self.actual == self.predicted
    }
}

fn error_sign_at(x: &ExactReal, terms: &[BigInt], conv: &Convergent) -> Result<ErrorSign> {
    let n = conv.index;
    let actual = ord_sign(x.compare_rational(&conv.value())?.reverse());
    let parity: i8 = if n.is_multiple_of(2) { -1 } else { 1 };
    Ok(ErrorSign {
        n,
        actual,
        predicted: parity * sgn(&terms[n + 1]),
    })
}

/// Sign of `p_n/q_n - x` next to the sign predicted from `a_{n+1}`.
pub fn error_sign(x: &ExactReal, n: usize) -> Result<ErrorSign> {
    let terms = hurwitz_terms(x, n + 2)?;
    let conv = convergents_of(&terms[..=n]);
    error_sign_at(x, &terms, &conv[n])
}

/// Checked quantities at one index `n >= 1` of the denominator recursion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthWitness {
    pub n: usize,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub a_n: BigInt,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub q_prev: BigInt,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub q_cur: BigInt,
    /// `q_{n-1} / q_n`.
    #[serde(serialize_with = "crate::report::ser_display")]
    pub y_n: Rational,
    /// `(|a_n| - (2 - phi)) |q_{n-1}| < |q_n|`.
    pub lower: bool,
    /// `|q_n| < (|a_n| + (phi - 1)) |q_{n-1}|`.
    pub upper: bool,
    /// `|q_n| > phi |q_{n-1}|`.
    pub expanding: bool,
    /// `-(2 - phi) < y_{n-1} sgn(a_n) < phi - 1`.
    pub window: bool,
    /// `|y_n| < 1` and `sgn(y_n) = sgn(a_n)`.
    pub y_shape: bool,
}

impl GrowthWitness {
    pub fn holds(&self) -> bool {
        self.lower && self.upper && self.expanding && self.window && self.y_shape
    }
}

/// Growth checks for `1 <= n <= n_max` from a list of Hurwitz quotients.
pub fn growth_from_terms(terms: &[BigInt], n_max: usize) -> Result<Vec<GrowthWitness>> {
    if n_max == 0 {
        return Err(Error::Precondition("n_max must be at least 1".into()));
    }
    if terms.len() <= n_max {
        return Err(Error::InsufficientTerms {
            needed: n_max + 1,
            available: terms.len(),
        });
    }
    let conv = convergents_of(&terms[..=n_max]);
    let (tmp, pom, ph) = (two_minus_phi(), phi_minus_one(), phi());
    let mut y_prev = Rational::zero();
    let mut out = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let a = &terms[n];
        let (qp, qc) = (&conv[n - 1].q, &conv[n].q);
        let (abs_a, abs_qp, abs_qc) = (a.abs(), qp.abs(), qc.abs());
        let qc_r = int(&abs_qc);
        // (|a| - (2 - phi)) |q'| = -|q'| (2 - phi) + |a||q'|
        let lower_bound = lin(&tmp, &-&abs_qp, &(&abs_a * &abs_qp));
        let upper_bound = lin(&pom, &abs_qp, &(&abs_a * &abs_qp));
        let lower = lower_bound.compare(&qc_r)? == Ordering::Less;
        let upper = qc_r.compare(&upper_bound)? == Ordering::Less;
        let expanding = qc_r.compare(&lin(&ph, &abs_qp, &BigInt::zero()))? == Ordering::Greater;
        let w = ExactReal::Rational(if a.is_negative() { -&y_prev } else { y_prev.clone() });
        let window = tmp.neg().compare(&w)? == Ordering::Less && w.compare(&pom)? == Ordering::Less;
        let y_n = Rational::new(qp.clone(), qc.clone());
        let y_shape = y_n.abs() < Rational::from_integer(1.into())
            && y_n.is_negative() == a.is_negative()
            && !y_n.is_zero();
        out.push(GrowthWitness {
            n,
            a_n: a.clone(),
            q_prev: qp.clone(),
            q_cur: qc.clone(),
            y_n: y_n.clone(),
            lower,
            upper,
            expanding,
            window,
            y_shape,
        });
        y_prev = y_n;
    }
    Ok(out)
}

pub fn growth_bounds(x: &ExactReal, n_max: usize) -> Result<Vec<GrowthWitness>> {
    if n_max == 0 {
        return Err(Error::Precondition("n_max must be at least 1".into()));
    }
    growth_from_terms(&hurwitz_terms(x, n_max + 1)?, n_max)
}

/// `lower < actual < upper` for `actual = |x - p_{n-1}/q_{n-1}|`.
#[derive(Clone, Debug, PartialEq)]
pub struct Sandwich {
    pub n: usize,
    pub lower: ExactReal,
    pub actual: ExactReal,
    pub upper: ExactReal,
    pub lower_holds: bool,
    pub upper_holds: bool,
}

impl Sandwich {
    pub fn holds(&self) -> bool {
        self.lower_holds && self.upper_holds
    }
}

fn sandwich(
    n: usize,
    x: &ExactReal,
    prev: &Convergent,
    lower_den: ExactReal,
    upper_den: ExactReal,
) -> Result<Sandwich> {
    let actual = x
        .sub(&ExactReal::Rational(prev.value()))?
        .abs()?;
    let q2 = Rational::from_integer(&prev.q * &prev.q);
    let lower = lower_den.affine(&q2, &Rational::zero()).recip()?;
    let upper = upper_den.affine(&q2, &Rational::zero()).recip()?;
    Ok(Sandwich {
        n,
        lower_holds: lower.compare(&actual)? == Ordering::Less,
        upper_holds: actual.compare(&upper)? == Ordering::Less,
        lower,
        actual,
        upper,
    })
}

fn lagrange_at(x: &ExactReal, terms: &[BigInt], conv: &[Convergent], n: usize) -> Result<Sandwich> {
    let abs_a = terms[n].abs();
    let one = BigInt::from(1);
    let lower_den = lin(&phi_minus_half(), &one, &abs_a);
    let upper_den = lin(&five_halves_minus_phi(), &-one, &abs_a);
    sandwich(n, x, &conv[n - 1], lower_den, upper_den)
}

/// `1/((|a_n| + phi - 1/2) q_{n-1}^2) < |x - p_{n-1}/q_{n-1}| < 1/((|a_n| - (5/2 - phi)) q_{n-1}^2)`.
pub fn lagrange_bounds(x: &ExactReal, n: usize) -> Result<Sandwich> {
    if n == 0 {
        return Err(Error::Precondition("bounds start at n = 1".into()));
    }
    let terms = hurwitz_terms(x, n + 1)?;
    let conv = convergents_of(&terms[..n]);
    lagrange_at(x, &terms, &conv, n)
}

/// The classical counterpart `1/((b_n + 2) q_{n-1}^2) < |x - p_{n-1}/q_{n-1}| < 1/(b_n q_{n-1}^2)`.
pub fn classical_bounds(x: &ExactReal, n: usize) -> Result<Sandwich> {
    if n == 0 {
        return Err(Error::Precondition("bounds start at n = 1".into()));
    }
    let seq = classical_expand(x, n + 1)?;
    if seq.len() <= n {
        return Err(Error::InsufficientTerms {
            needed: n + 1,
            available: seq.len(),
        });
    }
    let b = &seq.terms()[n];
    let conv = convergents_of(&seq.terms()[..n]);
    sandwich(
        n,
        x,
        &conv[n - 1],
        int(&(b + BigInt::from(2))),
        int(b),
    )
}

/// One line of a verification report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRow {
    pub n: usize,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub a_n: BigInt,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub q_n: BigInt,
    pub check: &'static str,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

/// Every check for `1 <= n <= n_max` on the Hurwitz expansion of `x`. Each row
/// asserts `lhs < rhs`, except `error-sign`, which asserts equality.
pub fn verify(x: &ExactReal, n_max: usize) -> Result<Vec<CheckRow>> {
    if n_max == 0 {
        return Err(Error::Precondition("n_max must be at least 1".into()));
    }
    let terms = hurwitz_terms(x, n_max + 2)?;
    let conv = convergents_of(&terms);
    let mut rows = Vec::new();
    let row = |n: usize, check, lhs: String, rhs: String, pass| CheckRow {
        n,
        a_n: terms[n].clone(),
        q_n: conv[n].q.clone(),
        check,
        lhs,
        rhs,
        pass,
    };
    let growth = growth_from_terms(&terms, n_max)?;
    let (tmp, pom) = (two_minus_phi(), phi_minus_one());
    for g in &growth {
        let n = g.n;
        let (abs_a, abs_qp) = (g.a_n.abs(), g.q_prev.abs());
        let q = g.q_cur.abs().to_string();
        let lo = lin(&tmp, &-&abs_qp, &(&abs_a * &abs_qp)).to_string();
        let hi = lin(&pom, &abs_qp, &(&abs_a * &abs_qp)).to_string();
        rows.push(row(n, "growth-lower", lo, q.clone(), g.lower));
        rows.push(row(n, "growth-upper", q.clone(), hi, g.upper));
        rows.push(row(
            n,
            "expanding",
            lin(&phi(), &abs_qp, &BigInt::zero()).to_string(),
            q,
            g.expanding,
        ));
    }
    for n in 1..=n_max {
        let s = error_sign_at(x, &terms, &conv[n])?;
        rows.push(row(
            n,
            "error-sign",
            s.actual.to_string(),
            s.predicted.to_string(),
            s.holds(),
        ));
        let l = lagrange_at(x, &terms, &conv, n)?;
        rows.push(row(
            n,
            "lagrange-lower",
            l.lower.to_string(),
            l.actual.to_string(),
            l.lower_holds,
        ));
        rows.push(row(
            n,
            "lagrange-upper",
            l.actual.to_string(),
            l.upper.to_string(),
            l.upper_holds,
        ));
    }
    rows.sort_by_key(|r| r.n);
    Ok(rows)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn rows_csv(rows: &[CheckRow]) -> String {
    let mut out = String::from("n,a_n,q_n,check_name,lhs,rhs,pass\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.n,
            r.a_n,
            r.q_n,
            r.check,
            csv_field(&r.lhs),
            csv_field(&r.rhs),
            r.pass
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_are_exact() {
        let p = phi();
        assert_eq!(p.mul(&p).unwrap(), p.add(&ExactReal::from(1)).unwrap());
        let one: ExactReal = 1.into();
        assert_eq!(two_minus_phi().add(&p).unwrap(), 2.into());
        assert_eq!(phi_minus_one().add(&one).unwrap(), p);
        assert_eq!(
            five_halves_minus_phi().add(&p).unwrap(),
            ExactReal::Rational(crate::real::rat(5, 2))
        );
        assert_eq!(
            phi_minus_half().add(&ExactReal::Rational(crate::real::rat(1, 2))).unwrap(),
            p
        );
    }

    #[test]
    fn error_sign_examples() {
        let s = error_sign(&phi(), 0).unwrap();
        assert_eq!((s.actual, s.predicted), (1, 1));
        let s = error_sign(&ExactReal::sqrt(2).unwrap(), 0).unwrap();
        assert_eq!((s.actual, s.predicted), (-1, -1));
        let s = error_sign(&phi(), 1).unwrap();
        assert_eq!((s.actual, s.predicted), (1, 1));
        assert!(matches!(
            error_sign(&ExactReal::from(3), 0),
            Err(Error::InsufficientTerms { .. })
        ));
    }

    #[test]
    fn growth_examples() {
        let g = growth_bounds(&phi(), 3).unwrap();
        assert!(g.iter().all(|w| w.holds()));
        assert_eq!(g[0].q_cur, BigInt::from(-3));
        assert_eq!(g[2].q_prev.abs(), BigInt::from(8));
        assert_eq!(g[2].q_cur.abs(), BigInt::from(21));
        let g = growth_bounds(&ExactReal::sqrt(2).unwrap(), 2).unwrap();
        assert_eq!(g[1].q_cur, BigInt::from(5));
        assert!(g[1].holds());
    }

    #[test]
    fn lagrange_examples() {
        let l = lagrange_bounds(&phi(), 1).unwrap();
        assert_eq!(l.actual, two_minus_phi());
        assert!(l.holds());
        let l = lagrange_bounds(&ExactReal::sqrt(2).unwrap(), 1).unwrap();
        assert_eq!(l.actual, ExactReal::surd(-1, 1, 1, 2).unwrap());
        assert!(l.holds());
        assert!(matches!(lagrange_bounds(&phi(), 0), Err(Error::Precondition(_))));
    }

    #[test]
    fn classical_contrast() {
        let x = ExactReal::surd(1, 1, 3, 7).unwrap();
        for n in 1..15 {
            assert!(classical_bounds(&x, n).unwrap().holds(), "n = {n}");
        }
    }

    #[test]
    fn report_rows() {
        let rows = verify(&phi(), 4).unwrap();
        assert_eq!(rows.len(), 24);
        assert!(rows.iter().all(|r| r.pass));
        let csv = rows_csv(&rows);
        assert!(csv.starts_with("n,a_n,q_n,check_name,lhs,rhs,pass\n1,-3,-3,growth-lower,"));
    }
}
