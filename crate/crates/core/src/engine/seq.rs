use num_bigint::BigInt;

use crate::error::{Error, Kind, Result};

/// Partial quotients of one expansion, in index order from `a_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialQuotientSeq {
    kind: Kind,
    terms: Vec<BigInt>,
    /// The expansion terminated: these are all the quotients there are.
    finite: bool,
}

impl PartialQuotientSeq {
    pub fn new(kind: Kind, terms: Vec<BigInt>, finite: bool) -> Self {
        PartialQuotientSeq {
            kind,
            terms,
            finite,
        }
    }

    /// A prefix of an expansion whose continuation is unknown.
    pub fn prefix(kind: Kind, terms: impl IntoIterator<Item = i64>) -> Self {
        Self::new(kind, terms.into_iter().map(BigInt::from).collect(), false)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn terms(&self) -> &[BigInt] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<BigInt> {
        self.terms
    }

    pub fn is_finite(&self) -> bool {
        self.finite
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// First `n` terms (or all, when fewer); finiteness survives only if nothing was cut.
    pub fn truncated(&self, n: usize) -> Self {
        let cut = n < self.terms.len();
        PartialQuotientSeq {
            kind: self.kind,
            terms: self.terms[..n.min(self.terms.len())].to_vec(),
            finite: self.finite && !cut,
        }
    }

    /// Terms of the positive Hurwitz (or classical) form, converting negative expansions.
    pub fn positive_terms(&self) -> Vec<BigInt> {
        match self.kind {
            Kind::HurwitzNegative => alternate_signs(&self.terms),
            _ => self.terms.clone(),
        }
    }
}

/// `(-1)^n a_n`, its own inverse.
fn alternate_signs(terms: &[BigInt]) -> Vec<BigInt> {
    terms
        .iter()
        .enumerate()
        .map(|(n, a)| if n % 2 == 1 { -a } else { a.clone() })
        .collect()
}

/// Positive Hurwitz quotients `a_n` to the negative expansion `(-1)^n a_n`.
pub fn to_negative(seq: &PartialQuotientSeq) -> Result<PartialQuotientSeq> {
    if seq.kind != Kind::HurwitzPositive {
        return Err(Error::KindMismatch {
            expected: Kind::HurwitzPositive,
            found: seq.kind,
        });
    }
    Ok(PartialQuotientSeq::new(
        Kind::HurwitzNegative,
        alternate_signs(&seq.terms),
        seq.finite,
    ))
}

pub fn from_negative(seq: &PartialQuotientSeq) -> Result<PartialQuotientSeq> {
    if seq.kind != Kind::HurwitzNegative {
        return Err(Error::KindMismatch {
            expected: Kind::HurwitzNegative,
            found: seq.kind,
        });
    }
    Ok(PartialQuotientSeq::new(
        Kind::HurwitzPositive,
        alternate_signs(&seq.terms),
        seq.finite,
    ))
}
