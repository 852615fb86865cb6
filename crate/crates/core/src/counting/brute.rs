use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::real::{coprime, ExactReal, Rational};

pub const DEFAULT_CHUNK_SIZE: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "index", rename_all = "kebab-case")]
pub enum Source {
    Convergent(usize),
    BruteForce,
}

/// A primitive pair `p/q` with `q > 0` and its quality `|q (q x - p)|`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ApproxRecord {
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub p: BigInt,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub q: BigInt,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub quality: ExactReal,
    pub source: Source,
}

/// `|q (q x - p)|`.
pub fn quality(x: &ExactReal, p: &BigInt, q: &BigInt) -> Result<ExactReal> {
    let q_r = Rational::from_integer(q.clone());
    let err = x.affine(&q_r, &Rational::from_integer(-p));
    err.affine(&q_r, &Rational::zero()).abs()
}

/// `x = (a + b sqrt d) / c` with machine-sized coefficients, `c > 0`; rationals
/// use `b = 0`.
#[derive(Clone, Copy, Debug)]
struct Small {
    a: i128,
    b: i128,
    c: i128,
    d: i128,
}

impl Small {
    fn of(x: &ExactReal) -> Option<Small> {
        let limit = |n: &BigInt| n.abs() < BigInt::from(1i64 << 40);
        match x {
            ExactReal::Rational(r) if limit(r.numer()) && limit(r.denom()) => Some(Small {
                a: r.numer().to_i128()?,
                b: 0,
                c: r.denom().to_i128()?,
                d: 0,
            }),
            ExactReal::Surd(s) if [s.a(), s.b(), s.c(), s.d()].into_iter().all(limit) => {
                Some(Small {
                    a: s.a().to_i128()?,
                    b: s.b().to_i128()?,
                    c: s.c().to_i128()?,
                    d: s.d().to_i128()?,
                })
            }
            _ => None,
        }
    }

    /// `floor(q x)`.
    fn floor_qx(&self, q: i128) -> Option<i128> {
        let qb = q.checked_mul(self.b)?;
        let t = if qb == 0 {
            0
        } else {
            let r = isqrt(qb.checked_mul(qb)?.checked_mul(self.d)?)?;
            if qb > 0 {
                r
            } else {
                -r - 1
            }
        };
        Some(Integer::div_floor(&q.checked_mul(self.a)?.checked_add(t)?, &self.c))
    }

    /// Whether `|q (q x - p)| <= num/den`, or `None` on overflow.
    fn within(&self, p: i128, q: i128, num: i128, den: i128) -> Option<bool> {
        // q (q x - p) = (u + v sqrt d) / c with u = q (q a - p c), v = q^2 b
        let u = q.checked_mul(q.checked_mul(self.a)?.checked_sub(p.checked_mul(self.c)?)?)?;
        let v = q.checked_mul(q)?.checked_mul(self.b)?;
        let (u, v, r) = (
            u.checked_mul(den)?,
            v.checked_mul(den)?,
            num.checked_mul(self.c)?,
        );
        let hi = sign_quad_i128(u.checked_sub(r)?, v, self.d)?;
        let lo = sign_quad_i128(u.checked_add(r)?, v, self.d)?;
        Some(hi != Ordering::Greater && lo != Ordering::Less)
    }
}

fn isqrt(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let mut s = (n as f64).sqrt() as i128;
    while s > 0 && s.checked_mul(s)? > n {
        s -= 1;
    }
    while (s + 1).checked_mul(s + 1)? <= n {
        s += 1;
    }
    Some(s)
}

/// Sign of `u + v sqrt d` for squarefree `d` (or `v = 0`).
fn sign_quad_i128(u: i128, v: i128, d: i128) -> Option<Ordering> {
    let su = u.cmp(&0);
    let sv = v.cmp(&0);
    if sv == Ordering::Equal || d == 0 {
        return Some(su);
    }
    if su == Ordering::Equal || su == sv {
        return Some(sv);
    }
    // opposite signs: compare u^2 with v^2 d
    let uu = u.checked_mul(u)?;
    let vv = v.checked_mul(v)?.checked_mul(d)?;
    Some(match uu.cmp(&vv) {
        Ordering::Greater => su,
        Ordering::Less => sv,
        Ordering::Equal => Ordering::Equal,
    })
}

fn exact_within(x: &ExactReal, p: &BigInt, q: &BigInt, delta: &Rational) -> Result<bool> {
    Ok(quality(x, p, q)?.compare_rational(delta)? != Ordering::Greater)
}

/// `p` range `[floor(q x) - k, floor(q x) + 1 + k]` covering every `p` with
/// `|q x - p| <= delta / q`.
fn candidates(x: &ExactReal, small: Option<Small>, q: u64, delta: &Rational) -> Result<(BigInt, BigInt)> {
    let fl = match small.and_then(|s| s.floor_qx(q as i128)) {
        Some(f) => BigInt::from(f),
        None => x.affine(&Rational::from_integer(q.into()), &Rational::zero()).floor()?,
    };
    let reach = (delta / Rational::from_integer(q.into())).floor().to_integer();
    Ok((&fl - &reach, fl + BigInt::one() + reach))
}

fn scan(x: &ExactReal, small: Option<Small>, delta: &Rational, from: u64, to: u64) -> Result<Vec<ApproxRecord>> {
    let dn = delta.numer().to_i128();
    let dd = delta.denom().to_i128();
    let mut out = Vec::new();
    for q in from..=to {
        let (lo, hi) = candidates(x, small, q, delta)?;
        let qb = BigInt::from(q);
        let mut p = lo;
        while p <= hi {
            let fast = match (small, dn, dd, p.to_i128()) {
                (Some(s), Some(n), Some(d), Some(pi)) => s.within(pi, q as i128, n, d),
                _ => None,
            };
            let hit = match fast {
                Some(h) => h,
                None => exact_within(x, &p, &qb, delta)?,
            };
            if hit && coprime(&p, &qb) {
                out.push(ApproxRecord {
                    quality: quality(x, &p, &qb)?,
                    p: p.clone(),
                    q: qb.clone(),
                    source: Source::BruteForce,
                });
            }
            p += 1;
        }
    }
    Ok(out)
}

/// Every primitive `p/q` with `0 < q <= rho` and `|q (q x - p)| <= delta`, sorted by `q`
/// then `p`. The `q` range is split into chunks of `chunk_size` that are scanned in
/// parallel and concatenated in order.
pub fn brute_force_approx_chunked(
    x: &ExactReal,
    delta: &Rational,
    rho: u64,
    chunk_size: u64,
) -> Result<Vec<ApproxRecord>> {
    if !delta.is_positive() {
        return Err(Error::Precondition("delta must be positive".into()));
    }
    if rho == 0 {
        return Err(Error::Precondition("rho must be at least 1".into()));
    }
    let chunk = chunk_size.max(1);
    let small = Small::of(x);
    let starts: Vec<u64> = (0..rho.div_ceil(chunk)).map(|i| 1 + i * chunk).collect();
    let parts: Vec<Result<Vec<ApproxRecord>>> = starts
        .par_iter()
        .map(|&s| scan(x, small, delta, s, (s + chunk - 1).min(rho)))
        .collect();
    let mut out = Vec::new();
    for part in parts {
        out.extend(part?);
    }
    Ok(out)
}

pub fn brute_force_approx(x: &ExactReal, delta: &Rational, rho: u64) -> Result<Vec<ApproxRecord>> {
    brute_force_approx_chunked(x, delta, rho, DEFAULT_CHUNK_SIZE)
}

/// Scan with exact arithmetic only; used to cross-check the machine-integer path.
pub fn brute_force_exact(x: &ExactReal, delta: &Rational, rho: u64) -> Result<Vec<ApproxRecord>> {
    if !delta.is_positive() || rho == 0 {
        return Err(Error::Precondition("need delta > 0 and rho >= 1".into()));
    }
    scan(x, None, delta, 1, rho)
}
