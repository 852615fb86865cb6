use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::Kind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Violation {
    /// `|a_n| < 2` at some `n >= 1`.
    TooSmall,
    /// `|a_n| = 2` but the next quotient breaks the sign rule.
    SignRule,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Violation::TooSmall => "too-small",
            Violation::SignRule => "sign-rule",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Validity {
    Valid,
    Invalid { index: usize, reason: Violation },
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }
}

/// Checks whether `terms` can be (a prefix of) the Hurwitz quotients of an
/// irrational: for `n >= 1`, `|a_n| >= 2`, and `a_n a_{n+1} > 0` whenever
/// `|a_n| = 2`. For [`Kind::HurwitzNegative`] the sign rule flips to
/// `a_n a_{n+1} < 0`. Reports the first offending index.
pub fn validate_hurwitz(terms: &[BigInt], kind: Kind) -> Validity {
    let two = BigInt::from(2);
    let negative = kind == Kind::HurwitzNegative;
    for (n, a) in terms.iter().enumerate().skip(1) {
        let size = a.abs();
        if size < two {
            return Validity::Invalid {
                index: n,
                reason: Violation::TooSmall,
            };
        }
        if size == two {
            if let Some(next) = terms.get(n + 1) {
                let prod = a * next;
                let ok = if negative {
                    prod.is_negative()
                } else {
                    prod.is_positive()
                };
                if !ok {
                    return Validity::Invalid {
                        index: n,
                        reason: Violation::SignRule,
                    };
                }
            }
        }
    }
    Validity::Valid
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(t: &[i64], kind: Kind) -> Validity {
        let t: Vec<BigInt> = t.iter().map(|&x| BigInt::from(x)).collect();
        validate_hurwitz(&t, kind)
    }

    #[test]
    fn examples() {
        assert_eq!(v(&[5, 2, 2, 2], Kind::HurwitzPositive), Validity::Valid);
        assert_eq!(
            v(&[5, 2, -2], Kind::HurwitzPositive),
            Validity::Invalid {
                index: 1,
                reason: Violation::SignRule
            }
        );
        assert_eq!(
            v(&[0, 3, -1], Kind::HurwitzPositive),
            Validity::Invalid {
                index: 2,
                reason: Violation::TooSmall
            }
        );
    }

    #[test]
    fn negative_form_uses_alternating_rule() {
        // [1, 2, 2] positive is [1, -2, 2] negative
        assert_eq!(v(&[1, -2, 2], Kind::HurwitzNegative), Validity::Valid);
        assert!(!v(&[1, -2, -2], Kind::HurwitzNegative).is_valid());
        // a_0 is unconstrained
        assert_eq!(v(&[0, 3], Kind::HurwitzPositive), Validity::Valid);
        assert_eq!(v(&[], Kind::HurwitzPositive), Validity::Valid);
    }
}
