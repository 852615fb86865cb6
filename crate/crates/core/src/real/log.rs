//! Certified enclosures of natural logarithms.
//!
//! `ln r = k ln 2 + 2 atanh(z)` with `r = m 2^k`, `m` in `[1/2, 2]` and
//! `z = (m - 1)/(m + 1)`, so `|z| <= 1/3`. The series is summed in fixed point with
//! truncation toward zero and an explicit error budget.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Enclosure, ExactReal, Rational};
use crate::error::{Error, Result};

/// Working width for log enclosures used in reports: `2^-64` or tighter.
pub const LOG_BITS: u32 = 64;

/// `2 atanh(p/q)` scaled by `2^prec`, as `[lo, hi]` integers. Requires `|p/q| <= 1/3`.
fn atanh2_fixed(p: &BigInt, q: &BigInt, prec: u32) -> (BigInt, BigInt) {
    debug_assert!(q.is_positive() && BigInt::from(3) * p.abs() <= *q);
    if p.is_zero() {
        return (BigInt::zero(), BigInt::zero());
    }
    let neg = p.is_negative();
    let p = p.abs();
    let p2 = &p * &p;
    let q2 = q * q;
    // tail after n terms is below 3^-(2n+1) * 9/8; stop once that is < 2^-prec
    let terms = (prec as usize * 100) / 317 + 2;
    let mut pow = (&p << prec).div_floor(q);
    let mut sum = BigInt::zero();
    for i in 0..terms {
        sum += &pow / BigInt::from(2 * i + 1);
        pow = (&pow * &p2).div_floor(&q2);
        if pow.is_zero() {
            break;
        }
    }
    // each term is short by at most (i + 2) ulps, plus one ulp of tail
    let slack = BigInt::from((terms + 2) * (terms + 3) / 2 + 1);
    let (lo, hi) = (&sum * 2u32, (&sum + slack) * 2u32);
    if neg {
        (-hi, -lo)
    } else {
        (lo, hi)
    }
}

fn bit_len(n: &BigInt) -> i64 {
    n.bits() as i64
}

/// Enclosure of `ln r` for rational `r > 0` with width at most `2^-bits`.
pub fn ln_rational(r: &Rational, bits: u32) -> Result<Enclosure> {
    if !r.is_positive() {
        return Err(Error::Precondition(format!("log of non-positive {r}")));
    }
    if r.is_one() {
        return Ok(Enclosure::point(Rational::zero()));
    }
    let mut k = bit_len(r.numer()) - bit_len(r.denom());
    let two = Rational::from_integer(BigInt::from(2));
    let pow2 = |e: i64| -> Rational {
        if e >= 0 {
            Rational::from_integer(BigInt::one() << e as u64)
        } else {
            Rational::new(BigInt::one(), BigInt::one() << (-e) as u64)
        }
    };
    let mut m = r / pow2(k);
    if m > two {
        m /= &two;
        k += 1;
    } else if m < Rational::new(BigInt::one(), BigInt::from(2)) {
        m *= &two;
        k -= 1;
    }
    let z = (&m - Rational::one()) / (&m + Rational::one());
    // series slack grows like prec^2; k multiplies the ln 2 error
    let guard = 8 + 2 * (32 - bits.leading_zeros()) + 64 - k.unsigned_abs().max(1).leading_zeros();
    let prec = bits + guard;
    let (mlo, mhi) = atanh2_fixed(z.numer(), z.denom(), prec);
    let (llo, lhi) = atanh2_fixed(&BigInt::one(), &BigInt::from(3), prec);
    let kb = BigInt::from(k);
    let (klo, khi) = if k >= 0 {
        (&kb * &llo, &kb * &lhi)
    } else {
        (&kb * &lhi, &kb * &llo)
    };
    let den = BigInt::one() << prec;
    let lo = Rational::new(mlo + klo, den.clone());
    let hi = Rational::new(mhi + khi, den);
    let e = Enclosure::new(lo, hi);
    debug_assert!(e.width() <= pow2(-(bits as i64)));
    Ok(e)
}

/// Enclosure of `ln x` for an exact positive real, width at most `2^-bits`.
pub fn ln_real(x: &ExactReal, bits: u32) -> Result<Enclosure> {
    match x {
        ExactReal::Rational(r) => ln_rational(r, bits),
        _ => {
            if x.signum()? != std::cmp::Ordering::Greater {
                return Err(Error::Precondition(format!("log of non-positive {x}")));
            }
            // tighten the argument until its log enclosure is narrow enough
            let target = Rational::new(BigInt::one(), BigInt::one() << bits);
            let mut arg_bits = bits + 8;
            loop {
                let e = x
                    .enclosure(arg_bits)
                    .ok_or(Error::PrecisionExhausted { bits: arg_bits })?;
                if e.lo.is_positive() {
                    let lo = ln_rational(&e.lo, bits + 2)?;
                    let hi = ln_rational(&e.hi, bits + 2)?;
                    let enc = Enclosure::new(lo.lo, hi.hi);
                    if enc.width() <= target {
                        return Ok(enc);
                    }
                }
                if arg_bits > super::DEFAULT_PRECISION_CAP {
                    return Err(Error::PrecisionExhausted { bits: arg_bits });
                }
                arg_bits *= 2;
            }
        }
    }
}

/// Sum of enclosures.
pub fn sum<'a>(parts: impl IntoIterator<Item = &'a Enclosure>) -> Enclosure {
    parts
        .into_iter()
        .fold(Enclosure::point(Rational::zero()), |acc, e| acc.add(e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::rat;
    use num_traits::ToPrimitive;

    fn check(r: Rational) {
        let e = ln_rational(&r, 64).unwrap();
        let want = r.to_f64().unwrap().ln();
        let lo = e.lo.to_f64().unwrap();
        let hi = e.hi.to_f64().unwrap();
        assert!(lo <= want + 1e-15 && want - 1e-15 <= hi, "{r}: [{lo}, {hi}] vs {want}");
        assert!(e.width() <= Rational::new(BigInt::one(), BigInt::one() << 64u32));
    }

    #[test]
    fn matches_float_log() {
        for (n, d) in [(2, 1), (3, 1), (9, 5), (1, 3), (55, 1), (1_000_000_007, 3), (7, 1024)] {
            check(rat(n, d));
        }
        check(Rational::from_integer(BigInt::from(10u32).pow(40)));
    }

    #[test]
    fn log_additivity_overlaps() {
        let a = ln_rational(&rat(3, 1), 80).unwrap();
        let b = ln_rational(&rat(7, 2), 80).unwrap();
        let ab = ln_rational(&rat(21, 2), 80).unwrap();
        let s = a.add(&b);
        assert!(s.lo <= ab.hi && ab.lo <= s.hi);
    }

    #[test]
    fn log_of_surd() {
        let phi = ExactReal::golden_ratio();
        let e = ln_real(&phi, 64).unwrap();
        let want = 0.48121182505960347;
        assert!((e.midpoint().to_f64().unwrap() - want).abs() < 1e-15);
        assert!(ln_real(&ExactReal::surd(1, -1, 2, 5).unwrap(), 64).is_err());
    }
}
