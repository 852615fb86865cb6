//! Exact real numbers: canonical rationals, real quadratic surds, and refinable
//! interval reals. All rounding decisions are exact or certified.

mod interval;
pub mod log;
mod parse;
mod surd;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

pub use interval::{exact_enclosure, Enclose, Enclosure, IntervalReal, DEFAULT_PRECISION_CAP};
pub use parse::{format_rational, parse_literal, ParseOptions};
pub use surd::{
    floor_mul_sqrt, floor_surd, sign_biquad, sign_quad, sign_quad_int, squarefree_split,
    QuadSurd, DEFAULT_SQUAREFREE_BOUND,
};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// A real number in one of three exact-or-certified representations.
#[derive(Clone, Debug)]
pub enum ExactReal {
    Rational(Rational),
    Surd(QuadSurd),
    Interval(IntervalReal),
}

impl PartialEq for ExactReal {
    /// Structural equality of canonical forms; intervals compare by identity only.
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (ExactReal::Rational(a), ExactReal::Rational(b)) => a == b,
            (ExactReal::Surd(a), ExactReal::Surd(b)) => a == b,
            _ => false,
        }
    }
}

impl From<Rational> for ExactReal {
    fn from(r: Rational) -> Self {
        ExactReal::Rational(r)
    }
}

impl From<BigInt> for ExactReal {
    fn from(n: BigInt) -> Self {
        ExactReal::Rational(Rational::from_integer(n))
    }
}

impl From<i64> for ExactReal {
    fn from(n: i64) -> Self {
        ExactReal::Rational(int(n))
    }
}

impl From<QuadSurd> for ExactReal {
    fn from(s: QuadSurd) -> Self {
        ExactReal::Surd(s)
    }
}

impl From<IntervalReal> for ExactReal {
    fn from(i: IntervalReal) -> Self {
        ExactReal::Interval(i)
    }
}

/// Which quadratic field a value belongs to, for arithmetic.
enum Field<'a> {
    Rational,
    Sqrt(&'a BigInt),
    Interval,
}

impl ExactReal {
    /// `sqrt(n)` for `n >= 0`, canonicalized.
    pub fn sqrt(n: i64) -> Result<ExactReal> {
        QuadSurd::new(BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::from(n))
    }

    /// `(a + b sqrt(d)) / c`, canonicalized.
    pub fn surd(a: i64, b: i64, c: i64, d: i64) -> Result<ExactReal> {
        QuadSurd::new(BigInt::from(a), BigInt::from(b), BigInt::from(c), BigInt::from(d))
    }

    /// The golden ratio `(1 + sqrt 5) / 2`.
    pub fn golden_ratio() -> ExactReal {
        QuadSurd::from_squarefree(BigInt::one(), BigInt::one(), BigInt::from(2), BigInt::from(5))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            ExactReal::Rational(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_surd(&self) -> Option<&QuadSurd> {
        match self {
            ExactReal::Surd(s) => Some(s),
            _ => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, ExactReal::Rational(_))
    }

    /// `true` when the value is a known integer.
    pub fn is_integer(&self) -> bool {
        matches!(self, ExactReal::Rational(r) if r.is_integer())
    }

    /// Radicand of the quadratic field, if any.
    pub fn radicand(&self) -> Option<&BigInt> {
        self.as_surd().map(QuadSurd::d)
    }

    fn field(&self) -> Field<'_> {
        match self {
            ExactReal::Rational(_) => Field::Rational,
            ExactReal::Surd(s) => Field::Sqrt(s.d()),
            ExactReal::Interval(_) => Field::Interval,
        }
    }

    /// Rational coordinates `(r, s)` of `r + s sqrt(d)`; `None` for intervals.
    fn coords(&self) -> Option<(Rational, Rational)> {
        match self {
            ExactReal::Rational(r) => Some((r.clone(), Rational::zero())),
            ExactReal::Surd(s) => Some(s.coords()),
            ExactReal::Interval(_) => None,
        }
    }

    /// Refinement cap carried by interval operands; exact values defer to them.
    fn cap_bits(&self) -> u32 {
        match self {
            ExactReal::Interval(i) => i.cap_bits(),
            _ => 0,
        }
    }

    fn to_interval(&self, cap: u32) -> IntervalReal {
        IntervalReal::from_exact(self.clone(), cap)
    }

    pub fn floor(&self) -> Result<BigInt> {
        match self {
            ExactReal::Rational(r) => Ok(r.floor().to_integer()),
            ExactReal::Surd(s) => Ok(s.floor()),
            ExactReal::Interval(i) => i.floor(),
        }
    }

    /// Nearest integer with ties rounded down.
    pub fn nearest_int(&self) -> Result<BigInt> {
        match self {
            ExactReal::Rational(r) => Ok((r - rat(1, 2)).ceil().to_integer()),
            ExactReal::Surd(s) => Ok(s.nearest_int()),
            ExactReal::Interval(i) => i.nearest_int(),
        }
    }

    /// `1 / (self - a)`.
    pub fn recip_shift(&self, a: &BigInt) -> Result<ExactReal> {
        match self {
            ExactReal::Rational(r) => {
                let diff = r - Rational::from_integer(a.clone());
                if diff.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(ExactReal::Rational(diff.recip()))
            }
            ExactReal::Surd(s) => Ok(s.recip_shift(a)),
            ExactReal::Interval(i) => {
                let shifted = i.add(&IntervalReal::from_exact(a.clone().into(), i.cap_bits()).neg());
                // a difference that is provably zero has no reciprocal
                if shifted.decide(|e| e.sign().map(|s| s == Ordering::Equal))? {
                    return Err(Error::DivisionByZero);
                }
                Ok(ExactReal::Interval(shifted.recip()))
            }
        }
    }

    pub fn signum(&self) -> Result<Ordering> {
        match self {
            ExactReal::Rational(r) => Ok(r.cmp(&Rational::zero())),
            ExactReal::Surd(s) => Ok(s.signum()),
            ExactReal::Interval(i) => i.signum(),
        }
    }

    /// Exact trichotomy for rationals and surds (across distinct fields too);
    /// intervals are decided by refinement.
    pub fn compare(&self, other: &ExactReal) -> Result<Ordering> {
        match (self, other) {
            (ExactReal::Rational(a), ExactReal::Rational(b)) => Ok(a.cmp(b)),
            (ExactReal::Interval(_), _) | (_, ExactReal::Interval(_)) => {
                let cap = self.cap_bits().max(other.cap_bits());
                let diff = self.to_interval(cap).add(&other.to_interval(cap).neg());
                diff.signum()
            }
            _ => {
                let (r1, s1) = self.coords().expect("exact");
                let (r2, s2) = other.coords().expect("exact");
                match (self.radicand(), other.radicand()) {
                    (Some(d1), Some(d2)) if d1 != d2 => Ok(sign_biquad(&(r1 - r2), &s1, d1, &-s2, d2)),
                    (Some(d), _) | (None, Some(d)) => Ok(sign_quad(&(r1 - r2), &(s1 - s2), d)),
                    (None, None) => Ok(r1.cmp(&r2)),
                }
            }
        }
    }

    /// Compares against a rational without allocating a second `ExactReal`.
    pub fn compare_rational(&self, r: &Rational) -> Result<Ordering> {
        match self {
            ExactReal::Rational(a) => Ok(a.cmp(r)),
            ExactReal::Surd(s) => {
                let (u, v) = s.coords();
                Ok(sign_quad(&(u - r), &v, s.d()))
            }
            ExactReal::Interval(_) => self.compare(&ExactReal::Rational(r.clone())),
        }
    }

    fn common_field<'a>(&'a self, other: &'a ExactReal) -> Result<Option<&'a BigInt>> {
        match (self.field(), other.field()) {
            (Field::Sqrt(a), Field::Sqrt(b)) if a != b => {
                Err(Error::FieldMismatch(a.to_string(), b.to_string()))
            }
            (Field::Sqrt(d), _) | (_, Field::Sqrt(d)) => Ok(Some(d)),
            _ => Ok(None),
        }
    }

    pub fn add(&self, other: &ExactReal) -> Result<ExactReal> {
        if matches!(self, ExactReal::Interval(_)) || matches!(other, ExactReal::Interval(_)) {
            let cap = self.cap_bits().max(other.cap_bits());
            return Ok(self.to_interval(cap).add(&other.to_interval(cap)).into());
        }
        let d = self.common_field(other)?;
        let (r1, s1) = self.coords().expect("exact");
        let (r2, s2) = other.coords().expect("exact");
        Ok(match d {
            Some(d) => QuadSurd::from_coords(r1 + r2, s1 + s2, d),
            None => ExactReal::Rational(r1 + r2),
        })
    }

    pub fn sub(&self, other: &ExactReal) -> Result<ExactReal> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &ExactReal) -> Result<ExactReal> {
        if matches!(self, ExactReal::Interval(_)) || matches!(other, ExactReal::Interval(_)) {
            let cap = self.cap_bits().max(other.cap_bits());
            return Ok(self.to_interval(cap).mul(&other.to_interval(cap)).into());
        }
        let d = self.common_field(other)?;
        let (r1, s1) = self.coords().expect("exact");
        let (r2, s2) = other.coords().expect("exact");
        Ok(match d {
            Some(d) => {
                let dr = Rational::from_integer(d.clone());
                QuadSurd::from_coords(&r1 * &r2 + &s1 * &s2 * dr, r1 * s2 + s1 * r2, d)
            }
            None => ExactReal::Rational(r1 * r2),
        })
    }

    pub fn recip(&self) -> Result<ExactReal> {
        self.recip_shift(&BigInt::zero())
    }

    pub fn div(&self, other: &ExactReal) -> Result<ExactReal> {
        self.mul(&other.recip()?)
    }

    pub fn neg(&self) -> ExactReal {
        match self {
            ExactReal::Rational(r) => ExactReal::Rational(-r),
            ExactReal::Surd(s) => ExactReal::Surd(s.neg()),
            ExactReal::Interval(i) => ExactReal::Interval(i.neg()),
        }
    }

    pub fn abs(&self) -> Result<ExactReal> {
        match self {
            ExactReal::Interval(i) => Ok(ExactReal::Interval(i.abs())),
            _ => Ok(if self.signum()? == Ordering::Less {
                self.neg()
            } else {
                self.clone()
            }),
        }
    }

    /// `m * self + k`.
    pub fn affine(&self, m: &Rational, k: &Rational) -> ExactReal {
        match self {
            ExactReal::Rational(r) => ExactReal::Rational(m * r + k),
            ExactReal::Surd(s) => s.affine(m, k),
            ExactReal::Interval(i) => {
                let cap = i.cap_bits();
                let mi = IntervalReal::from_exact(m.clone().into(), cap);
                let ki = IntervalReal::from_exact(k.clone().into(), cap);
                ExactReal::Interval(i.mul(&mi).add(&ki))
            }
        }
    }

    /// Enclosure on the `2^-bits` grid (exact values) or at `bits` (intervals).
    pub fn enclosure(&self, bits: u32) -> Option<Enclosure> {
        exact_enclosure(self, bits)
    }

    /// Approximate value for display and diagnostics only.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        match self {
            ExactReal::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            ExactReal::Surd(s) => s.to_f64(),
            ExactReal::Interval(i) => i
                .enclose(64)
                .and_then(|e| e.midpoint().to_f64())
                .unwrap_or(f64::NAN),
        }
    }
}

impl fmt::Display for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactReal::Rational(r) => f.write_str(&format_rational(r)),
            ExactReal::Surd(s) => f.write_str(&parse::format_surd(s)),
            ExactReal::Interval(i) => match i.literal() {
                Some(lit) => f.write_str(&lit),
                None => match i.enclose(64) {
                    Some(e) => write!(f, "{e}"),
                    None => f.write_str("[unbounded]"),
                },
            },
        }
    }
}

/// `true` iff `gcd(a, b) = 1`.
pub fn coprime(a: &BigInt, b: &BigInt) -> bool {
    a.gcd(b).is_one()
}
