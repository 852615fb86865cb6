//! Counting primitive solutions of `0 < |Q(p, q)| < delta` for the split form
//! `Q(p, q) = (a q + b p)(c q + d p)` with `ad - bc = 1`.
//!
//! `G(rho)` uses the max-norm `max(|p|, |q|) <= rho`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::stats::cd_delta_bound;
use crate::error::{Error, Result};
use crate::real::{coprime, Enclosure, ExactReal, Rational};

const WINDOW_BITS: u32 = 96;

#[derive(Clone, Debug, PartialEq)]
pub struct CDParams {
    a: ExactReal,
    b: ExactReal,
    c: ExactReal,
    d: ExactReal,
    delta: Rational,
    kappa: Rational,
}

impl CDParams {
    /// Checks `ad - bc = 1`, `b != 0`, `a/b` irrational, `0 < delta <= 113/355`
    /// and `kappa > 0`. For interval coefficients the determinant and
    /// irrationality cannot be certified; the determinant is only required to
    /// be consistent with 1.
    pub fn new(
        a: ExactReal,
        b: ExactReal,
        c: ExactReal,
        d: ExactReal,
        delta: Rational,
        kappa: Rational,
    ) -> Result<CDParams> {
        if !delta.is_positive() || delta > cd_delta_bound() {
            return Err(Error::DeltaOutOfRange {
                delta: delta.to_string(),
                range: "0 < delta <= 113/355",
            });
        }
        if !kappa.is_positive() {
            return Err(Error::InvalidParams("kappa must be positive".into()));
        }
        if b.signum()? == Ordering::Equal {
            return Err(Error::InvalidParams("b must be nonzero".into()));
        }
        let det = a.mul(&d)?.sub(&b.mul(&c)?)?;
        let exact = [&a, &b, &c, &d]
            .iter()
            .all(|v| !matches!(v, ExactReal::Interval(_)));
        if exact {
            if det != ExactReal::from(1) {
                return Err(Error::InvalidParams(format!("ad - bc = {det}, not 1")));
            }
            if a.div(&b)?.is_rational() {
                return Err(Error::InvalidParams("a/b must be irrational".into()));
            }
        } else {
            let one = Rational::one();
            let fits = det
                .enclosure(64)
                .map(|e| e.contains(&one))
                .unwrap_or(false);
            if !fits {
                return Err(Error::InvalidParams("ad - bc is not 1".into()));
            }
        }
        Ok(CDParams {
            a,
            b,
            c,
            d,
            delta,
            kappa,
        })
    }

    pub fn a(&self) -> &ExactReal {
        &self.a
    }

    pub fn b(&self) -> &ExactReal {
        &self.b
    }

    pub fn c(&self) -> &ExactReal {
        &self.c
    }

    pub fn d(&self) -> &ExactReal {
        &self.d
    }

    pub fn delta(&self) -> &Rational {
        &self.delta
    }

    pub fn kappa(&self) -> &Rational {
        &self.kappa
    }

    /// `x = -a/b`.
    pub fn x(&self) -> Result<ExactReal> {
        Ok(self.a.div(&self.b)?.neg())
    }

    /// `y = bd`.
    pub fn y(&self) -> Result<ExactReal> {
        self.b.mul(&self.d)
    }

    fn lin(&self, u: &ExactReal, v: &ExactReal, p: &BigInt, q: &BigInt) -> Result<ExactReal> {
        // u q + v p
        let (p, q) = (Rational::from_integer(p.clone()), Rational::from_integer(q.clone()));
        u.affine(&q, &Rational::zero())
            .add(&v.affine(&p, &Rational::zero()))
    }

    /// `Q(p, q) = (a q + b p)(c q + d p)`.
    pub fn form(&self, p: &BigInt, q: &BigInt) -> Result<ExactReal> {
        self.lin(&self.a, &self.b, p, q)?
            .mul(&self.lin(&self.c, &self.d, p, q)?)
    }

    /// Membership in `G(infinity)`: primitive, `0 < |Q| < delta`, `c q + d p > kappa`.
    pub fn admits(&self, p: &BigInt, q: &BigInt) -> Result<Option<ExactReal>> {
        if !coprime(p, q) {
            return Ok(None);
        }
        let side = self.lin(&self.c, &self.d, p, q)?;
        if side.compare_rational(&self.kappa)? != Ordering::Greater {
            return Ok(None);
        }
        let form = self.lin(&self.a, &self.b, p, q)?.mul(&side)?;
        let size = form.abs()?;
        if size.signum()? == Ordering::Equal || size.compare_rational(&self.delta)? != Ordering::Less {
            return Ok(None);
        }
        Ok(Some(form))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub p: BigInt,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub q: BigInt,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub form: ExactReal,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GCount {
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub rho: BigInt,
    pub count: u64,
    pub witnesses: Vec<Witness>,
}

fn box_bound(rho: &BigInt) -> Result<i64> {
    rho.to_i64()
        .filter(|r| *r >= 1 && *r < (1 << 40))
        .ok_or_else(|| Error::Precondition(format!("rho = {rho} must lie in [1, 2^40)")))
}

fn floor_i64(r: &Rational) -> i64 {
    r.floor().to_integer().to_i64().expect("window inside the box")
}

fn ceil_i64(r: &Rational) -> i64 {
    r.ceil().to_integer().to_i64().expect("window inside the box")
}

/// A rational `w >= sqrt(t)` for `t >= 0`.
fn sqrt_upper(t: &Rational) -> Rational {
    let guess = t.to_f64().map(f64::sqrt).unwrap_or(f64::MAX).min(1e300);
    let mut w = Rational::from_float(guess * (1.0 + 1e-9) + 1e-9).unwrap_or_else(|| t + Rational::one());
    while &(&w * &w) < t {
        w = w * Rational::from_integer(2.into()) + Rational::one();
    }
    w
}

/// `G(rho)` in `(q, p)` order.
///
/// For each `q`, `|Q(p, q)| = |bd| |p - r1| |p - r2|` with roots `r1 = -aq/b`
/// and `r2 = -cq/d`, so any solution lies within `sqrt(delta/|bd|)` of a root.
/// When `d = 0` the form is `|q| |p - r1|` and the window is `delta/|q|`.
pub fn g_rho(params: &CDParams, rho: &BigInt) -> Result<GCount> {
    let r = box_bound(rho)?;
    let bits = WINDOW_BITS;
    let enc = |v: &ExactReal| -> Result<Enclosure> {
        v.enclosure(bits).ok_or(Error::PrecisionExhausted { bits })
    };
    let d_zero = params.d.signum()? == Ordering::Equal;
    let root1 = enc(&params.a.div(&params.b)?.neg())?;
    let root2 = if d_zero {
        None
    } else {
        Some(enc(&params.c.div(&params.d)?.neg())?)
    };
    let sqrt_window = if d_zero {
        None
    } else {
        let bd = enc(&params.y()?)?.abs();
        if !bd.lo.is_positive() {
            return Err(Error::PrecisionExhausted { bits });
        }
        Some(sqrt_upper(&(&params.delta / &bd.lo)))
    };

    let mut witnesses = Vec::new();
    for q in -r..=r {
        let qr = Rational::from_integer(q.into());
        let window = match &sqrt_window {
            Some(w) => w.clone(),
            None if q == 0 => continue,
            None => &params.delta / qr.abs(),
        };
        let mut ps: Vec<i64> = Vec::new();
        for root in std::iter::once(&root1).chain(root2.as_ref()) {
            let scaled = root.scale(&qr);
            let lo = floor_i64(&(&scaled.lo - &window)).max(-r);
            let hi = ceil_i64(&(&scaled.hi + &window)).min(r);
            ps.extend(lo..=hi);
        }
        ps.sort_unstable();
        ps.dedup();
        let qb = BigInt::from(q);
        for p in ps {
            let pb = BigInt::from(p);
            if let Some(form) = params.admits(&pb, &qb)? {
                witnesses.push(Witness { p: pb, q: qb.clone(), form });
            }
        }
    }
    Ok(GCount {
        rho: rho.clone(),
        count: witnesses.len() as u64,
        witnesses,
    })
}

/// `G(rho)` by testing every pair in the box; the reference for [`g_rho`].
pub fn g_rho_exhaustive(params: &CDParams, rho: &BigInt) -> Result<GCount> {
    let r = box_bound(rho)?;
    let mut witnesses = Vec::new();
    for q in -r..=r {
        let qb = BigInt::from(q);
        for p in -r..=r {
            let pb = BigInt::from(p);
            if let Some(form) = params.admits(&pb, &qb)? {
                witnesses.push(Witness { p: pb, q: qb.clone(), form });
            }
        }
    }
    Ok(GCount {
        rho: rho.clone(),
        count: witnesses.len() as u64,
        witnesses,
    })
}

/// `|Q(p, q)| / |q (q x - p)|` computed as `|q + y (q x - p)| / |q|`, after
/// confirming that it agrees with the direct quotient.
pub fn qpq_ratio(params: &CDParams, p: &BigInt, q: &BigInt) -> Result<ExactReal> {
    let x = params.x()?;
    let err = x.affine(
        &Rational::from_integer(q.clone()),
        &Rational::from_integer(-p),
    );
    let qr = ExactReal::Rational(Rational::from_integer(q.clone()));
    let denom = qr.mul(&err)?;
    if denom.signum()? == Ordering::Equal {
        return Err(Error::DivisionByZero);
    }
    let via_y = qr.add(&params.y()?.mul(&err)?)?.div(&qr)?.abs()?;
    let direct = params.form(p, q)?.div(&denom)?.abs()?;
    if via_y.compare(&direct)? != Ordering::Equal {
        return Err(Error::InvalidParams(
            "Q(p, q) and (qx - p)(q + y(qx - p)) disagree".into(),
        ));
    }
    Ok(via_y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::rat;

    fn sqrt2_params(delta: Rational) -> CDParams {
        CDParams::new(
            ExactReal::sqrt(2).unwrap(),
            1.into(),
            ExactReal::surd(-1, 1, 1, 2).unwrap(),
            1.into(),
            delta,
            rat(1, 10),
        )
        .unwrap()
    }

    #[test]
    fn validation() {
        let s2 = ExactReal::sqrt(2).unwrap();
        assert!(matches!(
            CDParams::new(s2.clone(), 1.into(), s2.clone(), 1.into(), rat(1, 4), rat(1, 10)),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            CDParams::new(2.into(), 1.into(), 1.into(), 1.into(), rat(1, 4), rat(1, 10)),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            CDParams::new(s2.clone(), 1.into(), s2.sub(&1.into()).unwrap(), 1.into(), rat(1, 3), rat(1, 10)),
            Err(Error::DeltaOutOfRange { .. })
        ));
    }

    #[test]
    fn window_matches_exhaustive() {
        let params = sqrt2_params(rat(3, 10));
        let fast = g_rho(&params, &BigInt::from(100)).unwrap();
        let slow = g_rho_exhaustive(&params, &BigInt::from(100)).unwrap();
        assert_eq!(fast, slow);
        assert!(fast.count > 0);
        assert!(fast
            .witnesses
            .iter()
            .any(|w| w.p == BigInt::from(1) && w.q == BigInt::from(-1)));
    }

    #[test]
    fn counts_are_monotone() {
        let params = sqrt2_params(rat(3, 10));
        let mut last = 0;
        for r in [5, 20, 60, 150] {
            let g = g_rho(&params, &BigInt::from(r)).unwrap();
            assert!(g.count >= last);
            last = g.count;
        }
        let tiny = sqrt2_params(rat(1, 10_000_000));
        assert_eq!(g_rho(&tiny, &BigInt::from(50)).unwrap().count, 0);
    }

    #[test]
    fn ratio_identity() {
        let params = sqrt2_params(rat(3, 10));
        let r = qpq_ratio(&params, &BigInt::from(-10), &BigInt::from(7)).unwrap();
        // |r - 1| <= |y| |q x - p| / |q|
        let x = params.x().unwrap();
        let err = x.affine(&rat(7, 1), &rat(10, 1)).abs().unwrap();
        let bound = err.affine(&rat(1, 7), &Rational::zero());
        let dev = r.sub(&1.into()).unwrap().abs().unwrap();
        assert_ne!(dev.compare(&bound).unwrap(), Ordering::Greater);
        assert!(matches!(
            qpq_ratio(&params, &BigInt::from(0), &BigInt::from(0)),
            Err(Error::DivisionByZero)
        ));
    }
}
