//! Real quadratic surds `(a + b*sqrt(d)) / c` in canonical form.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ExactReal, Rational};
use crate::error::{Error, Result};

/// Trial-division bound used when extracting the squarefree part of a radicand.
pub const DEFAULT_SQUAREFREE_BOUND: u64 = 1_000_000;

/// `(a + b*sqrt(d)) / c` with `c > 0`, `gcd(a, b, c) = 1`, `b != 0` and `d >= 2` squarefree.
///
/// Values with `b = 0` or a square radicand are never stored here; constructors
/// hand those back as [`ExactReal::Rational`], so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadSurd {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl QuadSurd {
    /// Canonicalizes an arbitrary `(a + b*sqrt(d)) / c` with `d >= 0`.
    #[allow(clippy::new_ret_no_self)]
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<ExactReal> {
        Self::with_bound(a, b, c, d, DEFAULT_SQUAREFREE_BOUND)
    }

    pub fn with_bound(a: BigInt, b: BigInt, c: BigInt, d: BigInt, bound: u64) -> Result<ExactReal> {
        if c.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if d.is_negative() {
            return Err(Error::InvalidParams(format!("negative radicand {d}")));
        }
        let (k, m) = squarefree_split(&d, bound)?;
        Ok(Self::from_squarefree(a, b * k, c, m))
    }

    /// Like [`QuadSurd::new`] but trusts that `d` is already squarefree (or 0/1).
    pub(crate) fn from_squarefree(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> ExactReal {
        debug_assert!(!c.is_zero());
        if b.is_zero() || d.is_zero() {
            return ExactReal::Rational(Rational::new(a, c));
        }
        if d.is_one() {
            return ExactReal::Rational(Rational::new(a + b, c));
        }
        let (mut a, mut b, mut c) = (a, b, c);
        if c.is_negative() {
            a = -a;
            b = -b;
            c = -c;
        }
        let g = a.gcd(&b).gcd(&c);
        if !g.is_one() {
            a /= &g;
            b /= &g;
            c /= &g;
        }
        ExactReal::Surd(QuadSurd { a, b, c, d })
    }

    /// Builds `r + s*sqrt(d)` from rational coordinates; `d` must be squarefree.
    pub(crate) fn from_coords(r: Rational, s: Rational, d: &BigInt) -> ExactReal {
        if s.is_zero() {
            return ExactReal::Rational(r);
        }
        let c = r.denom().lcm(s.denom());
        let a = r.numer() * (&c / r.denom());
        let b = s.numer() * (&c / s.denom());
        Self::from_squarefree(a, b, c, d.clone())
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    /// The rational coordinates `(r, s)` with `self = r + s*sqrt(d)`.
    pub fn coords(&self) -> (Rational, Rational) {
        (
            Rational::new(self.a.clone(), self.c.clone()),
            Rational::new(self.b.clone(), self.c.clone()),
        )
    }

    pub fn floor(&self) -> BigInt {
        floor_surd(&self.a, &self.b, &self.c, &self.d)
    }

    /// Nearest integer, ties rounded down. Surds are irrational so no tie occurs,
    /// but the formula `-floor(1/2 - x)` is the same one used for rationals.
    pub fn nearest_int(&self) -> BigInt {
        let two = BigInt::from(2);
        let a = &self.c - &two * &self.a;
        let b = -(&two * &self.b);
        let c = &two * &self.c;
        -floor_surd(&a, &b, &c, &self.d)
    }

    pub fn signum(&self) -> Ordering {
        sign_quad_int(&self.a, &self.b, &self.d)
    }

    pub fn neg(&self) -> QuadSurd {
        QuadSurd {
            a: -&self.a,
            b: -&self.b,
            c: self.c.clone(),
            d: self.d.clone(),
        }
    }

    /// `1 / (self - n)`, rationalized.
    pub fn recip_shift(&self, n: &BigInt) -> ExactReal {
        // 1 / ((A + B sqrt d) / c) = c (A - B sqrt d) / (A^2 - B^2 d)
        let a = &self.a - n * &self.c;
        let norm = &a * &a - &self.b * &self.b * &self.d;
        debug_assert!(!norm.is_zero());
        Self::from_squarefree(&self.c * a, -(&self.c * &self.b), norm, self.d.clone())
    }

    /// `m * self + k` for rationals `m`, `k`.
    pub fn affine(&self, m: &Rational, k: &Rational) -> ExactReal {
        let (r, s) = self.coords();
        Self::from_coords(m * r + k, m * s, &self.d)
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        let c = self.c.to_f64().unwrap_or(f64::NAN);
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        (a + b * d.sqrt()) / c
    }
}

/// Splits `n = k^2 * m` with `m` squarefree, by trial division up to `bound`.
///
/// Past the bound, a cofactor below `bound^3` has at most two prime factors, so it is
/// squarefree unless it is a perfect square. Larger cofactors cannot be certified.
pub fn squarefree_split(n: &BigInt, bound: u64) -> Result<(BigInt, BigInt)> {
    if n.is_zero() {
        return Ok((BigInt::zero(), BigInt::zero()));
    }
    let mut rest = n.abs();
    let mut k = BigInt::one();
    let mut m = BigInt::one();
    let mut p = 2u64;
    while p <= bound {
        let pb = BigInt::from(p);
        if &pb * &pb > rest {
            break;
        }
        let mut e = 0u32;
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            e += 1;
        }
        if e > 0 {
            k *= pb.pow(e / 2);
            if e % 2 == 1 {
                m *= &pb;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let pb = BigInt::from(p);
    if &pb * &pb <= rest {
        let b = BigInt::from(bound);
        if rest >= &b * &b * &b {
            return Err(Error::SquarefreeBound(n.to_string()));
        }
        let r = rest.sqrt();
        if &r * &r == rest {
            k *= r;
            rest = BigInt::one();
        }
    }
    m *= rest;
    if n.is_negative() {
        m = -m;
    }
    Ok((k, m))
}

/// `floor((a + b*sqrt(d)) / c)` for `c > 0` and `d` not a perfect square.
///
/// `floor(b*sqrt(d))` comes from the integer square root of `b^2 d`, checked on
/// both sides; then `floor((a + s + t) / c) = floor((a + s) / c)` for `0 <= t < 1`.
pub fn floor_surd(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> BigInt {
    debug_assert!(c.is_positive());
    let s = floor_mul_sqrt(b, d);
    (a + s).div_floor(c)
}

/// `floor(b * sqrt(d))` for `d` not a perfect square (or `b = 0`).
pub fn floor_mul_sqrt(b: &BigInt, d: &BigInt) -> BigInt {
    if b.is_zero() {
        return BigInt::zero();
    }
    let n = b * b * d;
    let r = n.sqrt();
    debug_assert!(&r * &r < n && (&r + 1u32) * (&r + 1u32) > n);
    if b.is_positive() {
        r
    } else {
        -r - 1u32
    }
}

/// Sign of `u + v*sqrt(d)` for integers, `d >= 2` non-square.
pub fn sign_quad_int(u: &BigInt, v: &BigInt, d: &BigInt) -> Ordering {
    let su = u.sign_ord();
    let sv = v.sign_ord();
    if sv == Ordering::Equal || su == sv {
        return if su == Ordering::Equal { sv } else { su };
    }
    if su == Ordering::Equal {
        return sv;
    }
    match (u * u).cmp(&(v * v * d)) {
        Ordering::Greater => su,
        Ordering::Less => sv,
        Ordering::Equal => Ordering::Equal,
    }
}

/// Sign of `u + v*sqrt(d)` for rationals.
pub fn sign_quad(u: &Rational, v: &Rational, d: &BigInt) -> Ordering {
    let su = u.numer().sign_ord();
    let sv = v.numer().sign_ord();
    if sv == Ordering::Equal || su == sv {
        return if su == Ordering::Equal { sv } else { su };
    }
    if su == Ordering::Equal {
        return sv;
    }
    let vv = v * v * Rational::from_integer(d.clone());
    match (u * u).cmp(&vv) {
        Ordering::Greater => su,
        Ordering::Less => sv,
        Ordering::Equal => Ordering::Equal,
    }
}

/// Sign of `u + v*sqrt(d1) + w*sqrt(d2)` with distinct squarefree `d1`, `d2`.
///
/// Writes the value as `A + B` with `A = u + v sqrt(d1)` and `B = w sqrt(d2)`; when the
/// signs differ, `A^2 - B^2` lives in `Q(sqrt(d1))` and decides which side dominates.
pub fn sign_biquad(u: &Rational, v: &Rational, d1: &BigInt, w: &Rational, d2: &BigInt) -> Ordering {
    let sa = sign_quad(u, v, d1);
    let sb = w.numer().sign_ord();
    if sb == Ordering::Equal || sa == sb {
        return if sa == Ordering::Equal { sb } else { sa };
    }
    if sa == Ordering::Equal {
        return sb;
    }
    let d1r = Rational::from_integer(d1.clone());
    let d2r = Rational::from_integer(d2.clone());
    let r = u * u + v * v * &d1r - w * w * &d2r;
    let s = Rational::from_integer(BigInt::from(2)) * u * v;
    match sign_quad(&r, &s, d1) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => Ordering::Equal,
    }
}

trait SignOrd {
    fn sign_ord(&self) -> Ordering;
}

impl SignOrd for BigInt {
    fn sign_ord(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_split(&bi(72), 1000).unwrap(), (bi(6), bi(2)));
        assert_eq!(squarefree_split(&bi(1), 1000).unwrap(), (bi(1), bi(1)));
        assert_eq!(squarefree_split(&bi(49), 1000).unwrap(), (bi(7), bi(1)));
        // 1009^2 is past the trial bound but below bound^3: detected as a square.
        let n = bi(1009 * 1009 * 3);
        assert_eq!(squarefree_split(&n, 1000).unwrap(), (bi(1009), bi(3)));
        let big = bi(1009) * bi(1013) * bi(1019) * bi(1021);
        assert!(matches!(
            squarefree_split(&big, 1000),
            Err(Error::SquarefreeBound(_))
        ));
    }

    #[test]
    fn canonical_collapse() {
        assert!(matches!(
            QuadSurd::new(bi(1), bi(2), bi(3), bi(4)).unwrap(),
            ExactReal::Rational(r) if r == Rational::new(bi(5), bi(3))
        ));
        let x = QuadSurd::new(bi(2), bi(2), bi(-4), bi(5)).unwrap();
        match x {
            ExactReal::Surd(s) => {
                assert_eq!((s.a(), s.b(), s.c(), s.d()), (&bi(-1), &bi(-1), &bi(2), &bi(5)))
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn floor_via_isqrt() {
        // floor((1 + sqrt 5)/2) = 1, floor((1 - sqrt 5)/2) = -1
        assert_eq!(floor_surd(&bi(1), &bi(1), &bi(2), &bi(5)), bi(1));
        assert_eq!(floor_surd(&bi(1), &bi(-1), &bi(2), &bi(5)), bi(-1));
        assert_eq!(floor_mul_sqrt(&bi(-1), &bi(2)), bi(-2));
    }

    #[test]
    fn signs() {
        assert_eq!(sign_quad_int(&bi(-3), &bi(2), &bi(2)), Ordering::Less);
        assert_eq!(sign_quad_int(&bi(-2), &bi(2), &bi(2)), Ordering::Greater);
        // sqrt 2 + sqrt 3 - 3 > 0 (3.146...)
        let one = Rational::from_integer(bi(1));
        assert_eq!(
            sign_biquad(&Rational::from_integer(bi(-3)), &one, &bi(2), &one, &bi(3)),
            Ordering::Greater
        );
        // sqrt 2 - sqrt 3 < 0
        assert_eq!(
            sign_biquad(&Rational::zero(), &one, &bi(2), &-one.clone(), &bi(3)),
            Ordering::Less
        );
    }
}
