//! The floor-driven classical algorithm and the nearest-integer Hurwitz algorithm,
//! both pulled lazily one quotient at a time.

use num_bigint::BigInt;

use super::seq::PartialQuotientSeq;
use crate::error::{Error, Kind, Result};
use crate::real::ExactReal;

/// A lazily extended expansion. Prefixes are monotone: extending never changes
/// terms already produced.
///
/// Rational inputs terminate. Classically this is the Euclidean algorithm, whose
/// last quotient is at least 2 once there are two or more. The Hurwitz algorithm
/// on a rational emits the integral `x_n` it reaches and halts (a convention; the
/// algorithm is normally only applied to irrationals).
#[derive(Clone, Debug)]
pub struct Expansion {
    kind: Kind,
    /// `x_n` for `n = terms.len()`; `None` once the expansion has terminated.
    state: Option<ExactReal>,
    terms: Vec<BigInt>,
}

impl Expansion {
    pub fn classical(x: ExactReal) -> Self {
        Expansion {
            kind: Kind::Classical,
            state: Some(x),
            terms: Vec::new(),
        }
    }

    pub fn hurwitz(x: ExactReal) -> Self {
        Expansion {
            kind: Kind::HurwitzPositive,
            state: Some(x),
            terms: Vec::new(),
        }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn terms(&self) -> &[BigInt] {
        &self.terms
    }

    pub fn is_finished(&self) -> bool {
        self.state.is_none()
    }

    /// The complete quotient `x_n` the next term is drawn from.
    pub fn remainder(&self) -> Option<&ExactReal> {
        self.state.as_ref()
    }

    /// Produces the next quotient, or `None` if the expansion has terminated.
    pub fn pull(&mut self) -> Result<Option<&BigInt>> {
        let Some(x) = &self.state else {
            return Ok(None);
        };
        let a = match self.kind {
            Kind::Classical => x.floor()?,
            _ => x.nearest_int()?,
        };
        let next = match x.recip_shift(&a) {
            Ok(y) => Some(y),
            Err(Error::DivisionByZero) => None,
            Err(e) => return Err(e),
        };
        self.state = next;
        self.terms.push(a);
        Ok(self.terms.last())
    }

    /// Extends to at least `n` terms (fewer only if the expansion terminates).
    pub fn extend_to(&mut self, n: usize) -> Result<&[BigInt]> {
        while self.terms.len() < n {
            if self.pull()?.is_none() {
                break;
            }
        }
        Ok(&self.terms)
    }

    /// The first `n` terms as a sequence value.
    pub fn snapshot(&self, n: usize) -> PartialQuotientSeq {
        let n = n.min(self.terms.len());
        PartialQuotientSeq::new(
            self.kind,
            self.terms[..n].to_vec(),
            self.state.is_none() && n == self.terms.len(),
        )
    }
}

fn expand(mut e: Expansion, n_terms: usize) -> Result<PartialQuotientSeq> {
    if n_terms == 0 {
        return Err(Error::Precondition("n_terms must be at least 1".into()));
    }
    e.extend_to(n_terms)?;
    Ok(e.snapshot(n_terms))
}

/// `b_0 .. b_{n-1}` of the classical expansion.
pub fn classical_expand(x: &ExactReal, n_terms: usize) -> Result<PartialQuotientSeq> {
    expand(Expansion::classical(x.clone()), n_terms)
}

/// `a_0 .. a_{n-1}` of the positive Hurwitz expansion.
pub fn hurwitz_expand(x: &ExactReal, n_terms: usize) -> Result<PartialQuotientSeq> {
    expand(Expansion::hurwitz(x.clone()), n_terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::{rat, IntervalReal};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&n| BigInt::from(n)).collect()
    }

    #[test]
    fn classical_examples() {
        let s = classical_expand(&rat(17, 12).into(), 10).unwrap();
        assert_eq!(s.terms(), ints(&[1, 2, 2, 2]).as_slice());
        assert!(s.is_finite());
        let s = classical_expand(&ExactReal::sqrt(2).unwrap(), 5).unwrap();
        assert_eq!(s.terms(), ints(&[1, 2, 2, 2, 2]).as_slice());
        assert!(!s.is_finite());
        let s = classical_expand(&ExactReal::golden_ratio(), 5).unwrap();
        assert_eq!(s.terms(), ints(&[1, 1, 1, 1, 1]).as_slice());
    }

    #[test]
    fn hurwitz_examples() {
        let s = hurwitz_expand(&ExactReal::golden_ratio(), 4).unwrap();
        assert_eq!(s.terms(), ints(&[2, -3, 3, -3]).as_slice());
        let s = hurwitz_expand(&ExactReal::sqrt(2).unwrap(), 4).unwrap();
        assert_eq!(s.terms(), ints(&[1, 2, 2, 2]).as_slice());
        let s = hurwitz_expand(&rat(5, 2).into(), 3).unwrap();
        assert_eq!(s.terms(), ints(&[2, 2]).as_slice());
        assert!(s.is_finite());
    }

    #[test]
    fn zero_terms_rejected() {
        assert!(hurwitz_expand(&rat(1, 3).into(), 0).is_err());
    }

    #[test]
    fn prefixes_are_monotone() {
        let mut e = Expansion::hurwitz(ExactReal::surd(3, 2, 7, 11).unwrap());
        let first: Vec<BigInt> = e.extend_to(5).unwrap().to_vec();
        let longer = e.extend_to(12).unwrap();
        assert_eq!(&longer[..5], first.as_slice());
    }

    #[test]
    fn remainders_follow_the_recurrence() {
        let mut e = Expansion::hurwitz(ExactReal::golden_ratio());
        e.extend_to(1).unwrap();
        assert_eq!(e.remainder().unwrap(), &ExactReal::surd(-3, -1, 2, 5).unwrap());
        e.extend_to(2).unwrap();
        assert_eq!(e.remainder().unwrap(), &ExactReal::surd(3, 1, 2, 5).unwrap());
    }

    #[test]
    fn interval_input_stops_at_precision_limit() {
        let x = ExactReal::Interval(IntervalReal::from_decimal("1.41421356237", 512).unwrap());
        let mut e = Expansion::hurwitz(x);
        let err = e.extend_to(40).unwrap_err();
        assert!(matches!(err, Error::PrecisionExhausted { .. }));
        // whatever was produced before running out agrees with sqrt 2
        let got = e.terms().to_vec();
        assert!(got.len() >= 5);
        let exact = hurwitz_expand(&ExactReal::sqrt(2).unwrap(), got.len()).unwrap();
        assert_eq!(exact.terms(), got.as_slice());
    }
}
