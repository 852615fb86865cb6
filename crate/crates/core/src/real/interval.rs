//! Refinable rational enclosures for reals that are only known approximately.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{ExactReal, Rational};
use crate::error::{Error, Result};

/// Default cap for enclosure refinement.
pub const DEFAULT_PRECISION_CAP: u32 = 4096;
const START_BITS: u32 = 64;

/// A closed interval `[lo, hi]` with rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct Enclosure {
    #[serde(serialize_with = "crate::report::ser_display")]
    pub lo: Rational,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub hi: Rational,
}

impl Enclosure {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        Enclosure { lo, hi }
    }

    pub fn point(v: Rational) -> Self {
        Enclosure {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2))
    }

    pub fn contains(&self, v: &Rational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Intersection; falls back to `self` if the two are disjoint.
    pub fn intersect(&self, other: &Enclosure) -> Enclosure {
        let lo = std::cmp::max(&self.lo, &other.lo).clone();
        let hi = std::cmp::min(&self.hi, &other.hi).clone();
        if lo <= hi {
            Enclosure { lo, hi }
        } else {
            self.clone()
        }
    }

    pub fn add(&self, other: &Enclosure) -> Enclosure {
        Enclosure {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn neg(&self) -> Enclosure {
        Enclosure {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    pub fn mul(&self, other: &Enclosure) -> Enclosure {
        let cands = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = cands.iter().min().cloned().unwrap_or_default();
        let hi = cands.iter().max().cloned().unwrap_or_default();
        Enclosure { lo, hi }
    }

    pub fn scale(&self, k: &Rational) -> Enclosure {
        let a = &self.lo * k;
        let b = &self.hi * k;
        if a <= b {
            Enclosure { lo: a, hi: b }
        } else {
            Enclosure { lo: b, hi: a }
        }
    }

    pub fn recip(&self) -> Option<Enclosure> {
        if self.contains_zero() {
            return None;
        }
        Some(Enclosure {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        })
    }

    pub fn abs(&self) -> Enclosure {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            Enclosure {
                lo: Rational::zero(),
                hi: std::cmp::max(-&self.lo, self.hi.clone()),
            }
        }
    }

    /// Sign when the enclosure decides it.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Outward rounding to the dyadic grid `2^-bits`.
    pub fn outward(&self, bits: u32) -> Enclosure {
        let scale = BigInt::one() << bits;
        let lo = (&self.lo * Rational::from_integer(scale.clone())).floor();
        let hi = (&self.hi * Rational::from_integer(scale.clone())).ceil();
        Enclosure {
            lo: lo / Rational::from_integer(scale.clone()),
            hi: hi / Rational::from_integer(scale),
        }
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]",
            super::format_rational(&self.lo),
            super::format_rational(&self.hi)
        )
    }
}

/// A source of enclosures that tighten as `bits` grows.
///
/// Implementations must be pure: the same `bits` always yields the same enclosure.
/// `None` means no finite enclosure is available at this precision.
pub trait Enclose: Send + Sync + fmt::Debug {
    fn enclose(&self, bits: u32) -> Option<Enclosure>;
}

#[derive(Debug)]
enum Node {
    /// Decimal digits known to within half a unit in the last place.
    Decimal {
        center: Rational,
        radius: Rational,
        text: String,
    },
    Exact(ExactReal),
    Add(Arc<Node>, Arc<Node>),
    Mul(Arc<Node>, Arc<Node>),
    Neg(Arc<Node>),
    Recip(Arc<Node>),
    Abs(Arc<Node>),
    Source(Arc<dyn Enclose>),
}

impl Node {
    fn enclose(&self, bits: u32) -> Option<Enclosure> {
        match self {
            Node::Decimal { center, radius, .. } => {
                Some(Enclosure::new(center - radius, center + radius).outward(bits))
            }
            Node::Exact(x) => exact_enclosure(x, bits),
            Node::Add(a, b) => Some(a.enclose(bits)?.add(&b.enclose(bits)?)),
            Node::Mul(a, b) => Some(a.enclose(bits)?.mul(&b.enclose(bits)?)),
            Node::Neg(a) => Some(a.enclose(bits)?.neg()),
            Node::Recip(a) => a.enclose(bits)?.recip(),
            Node::Abs(a) => Some(a.enclose(bits)?.abs()),
            Node::Source(s) => s.enclose(bits),
        }
    }
}

/// Enclosure on the `2^-bits` grid (a point for rationals).
pub fn exact_enclosure(x: &ExactReal, bits: u32) -> Option<Enclosure> {
    Some(match x {
        ExactReal::Rational(r) => Enclosure::point(r.clone()),
        ExactReal::Surd(s) => {
            // b sqrt(d) lies in [t, t + 1] / 2^bits with t = floor(b sqrt(d) 2^bits)
            let scale = BigInt::one() << bits;
            let n = s.b() * s.b() * s.d() * &scale * &scale;
            let r = n.sqrt();
            let t = if s.b().is_positive() { r } else { -r - 1u32 };
            let den = Rational::from_integer(scale);
            let lo = Rational::from_integer(t.clone()) / &den;
            let hi = Rational::from_integer(t + 1u32) / &den;
            let a = Rational::from_integer(s.a().clone());
            let c = Rational::from_integer(s.c().clone());
            Enclosure::new((&a + lo) / &c, (&a + hi) / &c)
        }
        ExactReal::Interval(i) => return i.enclose(bits),
    })
}

/// A real known through a refinable enclosure.
///
/// Every decision (floor, nearest integer, sign) refines by doubling the working
/// precision from 64 bits up to the cap; a decision still open at the cap is
/// [`Error::PrecisionExhausted`], never a guess.
#[derive(Clone, Debug)]
pub struct IntervalReal {
    node: Arc<Node>,
    cap_bits: u32,
}

impl IntervalReal {
    /// `digits` is a decimal such as `3.14159` or `-0.5`; the real lies within half a unit
    /// in its last place.
    pub fn from_decimal(digits: &str, cap_bits: u32) -> Result<IntervalReal> {
        let (center, scale) = parse_decimal(digits)?;
        let radius = Rational::new(BigInt::one(), BigInt::from(2) * scale);
        Ok(IntervalReal {
            node: Arc::new(Node::Decimal {
                center,
                radius,
                text: digits.to_string(),
            }),
            cap_bits,
        })
    }

    pub fn from_exact(x: ExactReal, cap_bits: u32) -> IntervalReal {
        match x {
            ExactReal::Interval(i) => i,
            other => IntervalReal {
                node: Arc::new(Node::Exact(other)),
                cap_bits,
            },
        }
    }

    pub fn from_source(source: Arc<dyn Enclose>, cap_bits: u32) -> IntervalReal {
        IntervalReal {
            node: Arc::new(Node::Source(source)),
            cap_bits,
        }
    }

    pub fn cap_bits(&self) -> u32 {
        self.cap_bits
    }

    /// Canonical literal for decimal inputs.
    pub fn literal(&self) -> Option<String> {
        match &*self.node {
            Node::Decimal { text, .. } => Some(format!("dec:{}@{}", text, self.cap_bits)),
            _ => None,
        }
    }

    pub fn enclose(&self, bits: u32) -> Option<Enclosure> {
        self.node.enclose(bits)
    }

    /// Runs `decide` on successively tighter enclosures until it answers.
    pub fn decide<T>(&self, mut decide: impl FnMut(&Enclosure) -> Option<T>) -> Result<T> {
        let mut current: Option<Enclosure> = None;
        let mut bits = START_BITS.min(self.cap_bits);
        loop {
            if let Some(e) = self.node.enclose(bits) {
                let e = match &current {
                    Some(prev) => prev.intersect(&e),
                    None => e,
                };
                if let Some(v) = decide(&e) {
                    return Ok(v);
                }
                current = Some(e);
            }
            if bits >= self.cap_bits {
                return Err(Error::PrecisionExhausted {
                    bits: self.cap_bits,
                });
            }
            bits = bits.saturating_mul(2).min(self.cap_bits);
        }
    }

    /// Refines until the enclosure is no wider than `width`.
    pub fn refine_to(&self, width: &Rational) -> Result<Enclosure> {
        self.decide(|e| (&e.width() <= width).then(|| e.clone()))
    }

    pub fn floor(&self) -> Result<BigInt> {
        self.decide(|e| {
            let lo = e.lo.floor().to_integer();
            (lo == e.hi.floor().to_integer()).then_some(lo)
        })
    }

    pub fn nearest_int(&self) -> Result<BigInt> {
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        self.decide(|e| {
            let lo = (&e.lo - &half).ceil().to_integer();
            (lo == (&e.hi - &half).ceil().to_integer()).then_some(lo)
        })
    }

    pub fn signum(&self) -> Result<Ordering> {
        self.decide(|e| e.sign())
    }

    fn combine(&self, other: &IntervalReal, f: impl FnOnce(Arc<Node>, Arc<Node>) -> Node) -> IntervalReal {
        IntervalReal {
            node: Arc::new(f(self.node.clone(), other.node.clone())),
            cap_bits: self.cap_bits.max(other.cap_bits),
        }
    }

    fn unary(&self, f: impl FnOnce(Arc<Node>) -> Node) -> IntervalReal {
        IntervalReal {
            node: Arc::new(f(self.node.clone())),
            cap_bits: self.cap_bits,
        }
    }

    pub fn add(&self, other: &IntervalReal) -> IntervalReal {
        self.combine(other, Node::Add)
    }

    pub fn mul(&self, other: &IntervalReal) -> IntervalReal {
        self.combine(other, Node::Mul)
    }

    pub fn neg(&self) -> IntervalReal {
        self.unary(Node::Neg)
    }

    pub fn recip(&self) -> IntervalReal {
        self.unary(Node::Recip)
    }

    pub fn abs(&self) -> IntervalReal {
        self.unary(Node::Abs)
    }
}

/// Parses `[-]digits[.digits]` into its value and `10^fraction_digits`.
fn parse_decimal(text: &str) -> Result<(Rational, BigInt)> {
    let err = |pos: usize, msg: &str| Error::Parse {
        pos,
        msg: msg.to_string(),
    };
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let offset = text.len() - body.len();
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err(offset, "expected decimal digits"));
    }
    for (i, ch) in body.char_indices() {
        if !(ch.is_ascii_digit() || ch == '.') {
            return Err(err(offset + i, "unexpected character in decimal"));
        }
    }
    let digits = format!("{int_part}{frac_part}");
    let mut num: BigInt = digits
        .parse()
        .map_err(|_| err(offset, "invalid decimal digits"))?;
    if neg {
        num = -num;
    }
    let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
    Ok((Rational::new(num, scale.clone()), scale))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn decimal_floor_and_nearest() {
        let x = IntervalReal::from_decimal("3.14159", 4096).unwrap();
        assert_eq!(x.floor().unwrap(), BigInt::from(3));
        assert_eq!(x.nearest_int().unwrap(), BigInt::from(3));
        // 2.5 +- 0.05 straddles the half-integer: never guessed
        let tie = IntervalReal::from_decimal("2.5", 256).unwrap();
        assert_eq!(tie.floor().unwrap(), BigInt::from(2));
        assert_eq!(tie.nearest_int(), Err(Error::PrecisionExhausted { bits: 256 }));
    }

    #[test]
    fn refinement_is_monotone() {
        let x = IntervalReal::from_exact(
            crate::real::QuadSurd::new(BigInt::from(0), BigInt::from(1), BigInt::from(1), BigInt::from(2)).unwrap(),
            4096,
        );
        let mut prev: Option<Enclosure> = None;
        for bits in [8u32, 16, 32, 64, 128] {
            let e = x.enclose(bits).unwrap();
            assert!(&e.lo * &e.lo <= q(2, 1) && q(2, 1) <= &e.hi * &e.hi);
            if let Some(p) = &prev {
                assert!(e.width() <= p.width());
            }
            prev = Some(e);
        }
        let e = x.refine_to(&q(1, 1 << 40)).unwrap();
        assert!(e.width() <= q(1, 1 << 40));
    }

    #[test]
    fn recip_of_interval_containing_zero_exhausts() {
        let x = IntervalReal::from_decimal("0.0", 128).unwrap().recip();
        assert!(matches!(x.signum(), Err(Error::PrecisionExhausted { .. })));
    }

    #[test]
    fn decimal_parse_errors() {
        assert!(matches!(
            IntervalReal::from_decimal("1.2x", 64),
            Err(Error::Parse { pos: 3, .. })
        ));
        assert!(IntervalReal::from_decimal("-", 64).is_err());
    }
}
