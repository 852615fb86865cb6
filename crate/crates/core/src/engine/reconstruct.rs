//! From a valid Hurwitz quotient sequence back to the real it expands.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::convergent::{convergents_of, fold_terms};
use super::validate::{validate_hurwitz, Validity};
use crate::error::{Error, Kind, Result};
use crate::real::{ExactReal, QuadSurd, Rational};

/// Enclosure `[lo, hi]` of the complete quotient `x_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconstructionEnclosure {
    pub n: usize,
    /// Index `N` of the last quotient used; the center is `x_{n,N}`.
    pub last_index: usize,
    pub center: Rational,
    pub lo: Rational,
    pub hi: Rational,
}

impl ReconstructionEnclosure {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> &Rational {
        &self.center
    }

    pub fn contains(&self, x: &ExactReal) -> Result<bool> {
        Ok(x.compare_rational(&self.lo)? != std::cmp::Ordering::Less
            && x.compare_rational(&self.hi)? != std::cmp::Ordering::Greater)
    }
}

/// Encloses `x_0` to within `target_width`.
pub fn reconstruct(terms: &[BigInt], target_width: &Rational) -> Result<ReconstructionEnclosure> {
    reconstruct_at(terms, 0, target_width)
}

/// Encloses `x_n`, the value of `a_n + 1/(a_{n+1} + ...)`, to within `target_width`.
///
/// Every tail `x_{k,N}` with `k >= 1` has modulus at least 2, so truncating at `N`
/// moves `x_n` by at most `(1/2) (1/4)^(N - n)`. The enclosure is centered on
/// `x_{n,N}` for the smallest `N` whose width `(1/4)^(N - n)` is small enough.
pub fn reconstruct_at(
    terms: &[BigInt],
    n: usize,
    target_width: &Rational,
) -> Result<ReconstructionEnclosure> {
    if let Validity::Invalid { index, reason } = validate_hurwitz(terms, Kind::HurwitzPositive) {
        return Err(Error::Precondition(format!(
            "not a Hurwitz sequence: {reason} at index {index}"
        )));
    }
    if !target_width.is_positive() {
        return Err(Error::Precondition("target width must be positive".into()));
    }
    let quarter = Rational::new(BigInt::one(), BigInt::from(4));
    let mut width = Rational::one();
    let mut last = n;
    while &width > target_width {
        width *= &quarter;
        last += 1;
    }
    if last >= terms.len() {
        return Err(Error::InsufficientTerms {
            needed: last + 1,
            available: terms.len(),
        });
    }
    let center = fold_terms(&terms[n..=last])?.value()?;
    let radius = width / Rational::from_integer(BigInt::from(2));
    Ok(ReconstructionEnclosure {
        n,
        last_index: last,
        lo: &center - &radius,
        hi: &center + &radius,
        center,
    })
}

/// The quadratic surd whose Hurwitz expansion is `terms` followed by the constant
/// tail `s, s, s, ...` with `s = 3 sgn(a_N)` (or `3` when `a_N = 0`).
///
/// The tail value solves `y = s + 1/y`, i.e. `y = sgn(s) (3 + sqrt 13) / 2`, and
/// the result is `(p_N y + p_{N-1}) / (q_N y + q_{N-1})`.
pub fn complete_hurwitz(terms: &[BigInt]) -> Result<ExactReal> {
    if let Validity::Invalid { index, reason } = validate_hurwitz(terms, Kind::HurwitzPositive) {
        return Err(Error::Precondition(format!(
            "not a Hurwitz sequence: {reason} at index {index}"
        )));
    }
    let Some(last) = terms.last() else {
        return Err(Error::InsufficientTerms {
            needed: 1,
            available: 0,
        });
    };
    let sign = if last.is_negative() { -1 } else { 1 };
    let tail = QuadSurd::new(
        BigInt::from(3 * sign),
        BigInt::from(sign),
        BigInt::from(2),
        BigInt::from(13),
    )?;
    let conv = convergents_of(terms);
    let cur = &conv[conv.len() - 1];
    let (p_prev, q_prev) = if conv.len() >= 2 {
        let c = &conv[conv.len() - 2];
        (c.p.clone(), c.q.clone())
    } else {
        (BigInt::one(), BigInt::from(0))
    };
    let num = tail.affine(&Rational::from_integer(cur.p.clone()), &Rational::from_integer(p_prev));
    let den = tail.affine(&Rational::from_integer(cur.q.clone()), &Rational::from_integer(q_prev));
    num.div(&den)
}
