use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use super::brute::{brute_force_approx_chunked, quality, ApproxRecord, Source, DEFAULT_CHUNK_SIZE};
use crate::diophantine::{five_halves_minus_phi, phi_minus_half, phi_minus_one, two_minus_phi};
use crate::engine::{convergents_of, hurwitz_expand, Expansion, Recurrence};
use crate::error::{Error, Result};
use crate::real::log::{ln_rational, ln_real, LOG_BITS};
use crate::real::{exact_enclosure, rat, Enclosure, ExactReal, Rational};

fn third() -> Rational {
    rat(1, 3)
}

/// `113/355`, a rational just below `1/pi`.
pub fn cd_delta_bound() -> Rational {
    rat(113, 355)
}

fn check_delta(delta: &Rational, max: Rational, range: &'static str) -> Result<()> {
    if !delta.is_positive() || *delta > max {
        return Err(Error::DeltaOutOfRange {
            delta: delta.to_string(),
            range,
        });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Oracle,
    Convergent,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct XRho {
    pub method: Method,
    pub count: u64,
    pub log_rho: Enclosure,
    /// `count / ln rho`.
    pub value: Enclosure,
    pub records: Vec<ApproxRecord>,
}

/// Primitive pairs found among the Hurwitz convergents with `0 < q <= rho` and
/// quality at most `delta`, each normalized to `q > 0`.
pub fn convergent_approx(x: &ExactReal, delta: &Rational, rho: &BigInt) -> Result<Vec<ApproxRecord>> {
    let mut e = Expansion::hurwitz(x.clone());
    let mut rec = Recurrence::new();
    let mut out = Vec::new();
    while let Some(a) = e.pull()? {
        let c = rec.push(a);
        let (p, q) = if c.q.is_negative() {
            (-c.p, -c.q)
        } else {
            (c.p, c.q)
        };
        // q_0 = 1 and |q_n| strictly increases from there
        if &q > rho {
            break;
        }
        let quality = quality(x, &p, &q)?;
        if quality.compare_rational(delta)? != Ordering::Greater {
            out.push(ApproxRecord {
                p,
                q,
                quality,
                source: Source::Convergent(c.index),
            });
        }
    }
    Ok(out)
}

/// The approximation count up to `rho` and `X_rho = count / ln rho`.
///
/// The convergent method needs `delta <= 1/3`, where every qualifying pair is a
/// Hurwitz convergent. The oracle enumerates every `q <= rho`.
pub fn x_rho(x: &ExactReal, delta: &Rational, rho: &BigInt, method: Method) -> Result<XRho> {
    x_rho_chunked(x, delta, rho, method, DEFAULT_CHUNK_SIZE)
}

pub fn x_rho_chunked(
    x: &ExactReal,
    delta: &Rational,
    rho: &BigInt,
    method: Method,
    chunk_size: u64,
) -> Result<XRho> {
    if *rho < BigInt::from(2) {
        return Err(Error::Precondition("rho must be at least 2".into()));
    }
    let records = match method {
        Method::Convergent => {
            check_delta(delta, third(), "0 < delta <= 1/3")?;
            convergent_approx(x, delta, rho)?
        }
        Method::Oracle => {
            let r = rho.to_u64().ok_or_else(|| {
                Error::Precondition(format!("rho = {rho} is too large to enumerate"))
            })?;
            brute_force_approx_chunked(x, delta, r, chunk_size)?
        }
    };
    let log_rho = ln_rational(&Rational::from_integer(rho.clone()), LOG_BITS)?;
    let count = records.len() as u64;
    let value = Enclosure::point(Rational::from_integer(count.into()))
        .mul(&log_rho.recip().expect("log rho > 0"));
    Ok(XRho {
        method,
        count,
        log_rho,
        value,
        records,
    })
}

/// The finite-index sandwich behind the `X_rho` bounds.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SandwichReport {
    pub n: usize,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub delta: Rational,
    /// `#{1 <= j <= n : |a_{j+1}| >= 1/delta + (5/2 - phi)}`.
    pub count_lower: u64,
    /// `#{1 <= j <= n : |q_j (q_j x - p_j)| <= delta}`.
    pub count_mid: u64,
    /// `#{1 <= j <= n : |a_{j+1}| >= 1/delta - (phi - 1/2)}`.
    pub count_upper: u64,
    /// `sum_{j=1}^n ln(|a_j| - (2 - phi))`.
    pub logsum_lower: Enclosure,
    /// `ln |q_n|`.
    pub log_qn: Enclosure,
    /// `sum_{j=1}^n ln(|a_j| + (phi - 1))`.
    pub logsum_upper: Enclosure,
    /// The products behind the log-sums bracket `|q_n|` exactly.
    pub products_hold: bool,
}

impl SandwichReport {
    pub fn counts_hold(&self) -> bool {
        self.count_lower <= self.count_mid && self.count_mid <= self.count_upper
    }

    /// The exact product comparison holds and no enclosure contradicts it.
    pub fn logs_hold(&self) -> bool {
        self.products_hold
            && self.logsum_lower.lo <= self.log_qn.hi
            && self.log_qn.lo <= self.logsum_upper.hi
    }

    pub fn holds(&self) -> bool {
        self.counts_hold() && self.logs_hold()
    }
}

/// Sandwich reports for every `1 <= n <= n_max`.
pub fn sandwich_series(x: &ExactReal, delta: &Rational, n_max: usize) -> Result<Vec<SandwichReport>> {
    check_delta(delta, third(), "0 < delta <= 1/3")?;
    if n_max == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let seq = hurwitz_expand(x, n_max + 2)?;
    if seq.len() < n_max + 2 {
        return Err(Error::InsufficientTerms {
            needed: n_max + 2,
            available: seq.len(),
        });
    }
    let terms = seq.terms();
    let conv = convergents_of(&terms[..=n_max]);
    let inv = ExactReal::Rational(delta.recip());
    let t_lower = inv.add(&five_halves_minus_phi())?;
    let t_upper = inv.sub(&phi_minus_half())?;
    let (tmp, pom) = (two_minus_phi(), phi_minus_one());
    let one = Rational::one();

    let mut counts = (0u64, 0u64, 0u64);
    let mut prod_lo = ExactReal::from(1);
    let mut prod_hi = ExactReal::from(1);
    let mut out = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let next = ExactReal::Rational(Rational::from_integer(terms[n + 1].abs()));
        if next.compare(&t_lower)? != Ordering::Less {
            counts.0 += 1;
        }
        let c = &conv[n];
        let q_abs = c.q.abs();
        let p = if c.q.is_negative() { -&c.p } else { c.p.clone() };
        if quality(x, &p, &q_abs)?.compare_rational(delta)? != Ordering::Greater {
            counts.1 += 1;
        }
        if next.compare(&t_upper)? != Ordering::Less {
            counts.2 += 1;
        }
        let a = Rational::from_integer(terms[n].abs());
        prod_lo = prod_lo.mul(&tmp.affine(&-&one, &a))?;
        prod_hi = prod_hi.mul(&pom.affine(&one, &a))?;
        let q_r = ExactReal::Rational(Rational::from_integer(q_abs.clone()));
        let products_hold = prod_lo.compare(&q_r)? != Ordering::Greater
            && q_r.compare(&prod_hi)? != Ordering::Greater;
        out.push(SandwichReport {
            n,
            delta: delta.clone(),
            count_lower: counts.0,
            count_mid: counts.1,
            count_upper: counts.2,
            logsum_lower: ln_real(&prod_lo, LOG_BITS)?,
            log_qn: ln_rational(&Rational::from_integer(q_abs), LOG_BITS)?,
            logsum_upper: ln_real(&prod_hi, LOG_BITS)?,
            products_hold,
        });
    }
    Ok(out)
}

pub fn sandwich(x: &ExactReal, delta: &Rational, n: usize) -> Result<SandwichReport> {
    Ok(sandwich_series(x, delta, n)?.pop().expect("n >= 1"))
}

/// Finite-`n` stand-ins for the liminf/limsup quantities that control the
/// growth of the approximation count. At a fixed `n` the lower and upper versions coincide;
/// nothing is extrapolated.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CdQuantities {
    pub n: usize,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub delta: Rational,
    /// `(1/n) sum_{j=1}^n ln |a_j|`, reported as both alpha^- and alpha^+.
    pub alpha: Enclosure,
    /// `D_n(1/delta + 1)`.
    #[serde(serialize_with = "crate::report::ser_display")]
    pub e_n: Rational,
    /// `D_n(1/delta - 3/2)`.
    #[serde(serialize_with = "crate::report::ser_display")]
    pub f_n: Rational,
    #[serde(serialize_with = "crate::report::ser_bigints")]
    pub terms: Vec<BigInt>,
}

impl CdQuantities {
    /// `D_n(A) = (1/n) #{1 <= j <= n : |a_{j+1}| >= A}`.
    pub fn d_n(&self, threshold: &Rational) -> Rational {
        d_n(&self.terms, self.n, threshold)
    }
}

fn d_n(terms: &[BigInt], n: usize, threshold: &Rational) -> Rational {
    let hits = (1..=n)
        .filter(|&j| Rational::from_integer(terms[j + 1].abs()) >= *threshold)
        .count();
    Rational::new(BigInt::from(hits), BigInt::from(n))
}

pub fn cd_quantities(x: &ExactReal, delta: &Rational, n: usize) -> Result<CdQuantities> {
    check_delta(delta, cd_delta_bound(), "0 < delta <= 113/355")?;
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let seq = hurwitz_expand(x, n + 2)?;
    if seq.len() < n + 2 {
        return Err(Error::InsufficientTerms {
            needed: n + 2,
            available: seq.len(),
        });
    }
    let terms = seq.into_terms();
    let product: BigInt = terms[1..=n].iter().map(|a| a.abs()).product();
    let alpha = ln_rational(&Rational::from_integer(product), LOG_BITS + 8)?
        .scale(&Rational::new(BigInt::one(), BigInt::from(n)));
    let inv = delta.recip();
    Ok(CdQuantities {
        n,
        delta: delta.clone(),
        alpha,
        e_n: d_n(&terms, n, &(&inv + Rational::one())),
        f_n: d_n(&terms, n, &(&inv - rat(3, 2))),
        terms,
    })
}

/// `ln 2 - (2 - phi) > max(ln(9/5)/4, ln(2)/8)`, decided on certified enclosures.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConstantCheck {
    pub lhs: Enclosure,
    pub quarter_log_nine_fifths: Enclosure,
    pub eighth_log_two: Enclosure,
    pub holds: bool,
}

pub fn constant_check(bits: u32) -> Result<ConstantCheck> {
    let ln2 = ln_rational(&rat(2, 1), bits)?;
    let tmp = exact_enclosure(&two_minus_phi(), bits).expect("exact constant");
    let lhs = ln2.add(&tmp.neg());
    let quarter = ln_rational(&rat(9, 5), bits)?.scale(&rat(1, 4));
    let eighth = ln2.scale(&rat(1, 8));
    let holds = lhs.lo > quarter.hi && lhs.lo > eighth.hi;
    Ok(ConstantCheck {
        lhs,
        quarter_log_nine_fifths: quarter,
        eighth_log_two: eighth,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn x_rho_examples() {
        let phi = ExactReal::golden_ratio();
        let r = x_rho(&phi, &rat(1, 3), &BigInt::from(100), Method::Oracle).unwrap();
        assert_eq!(r.count, 0);
        assert_eq!(r.value, Enclosure::point(Rational::zero()));
        let s101 = ExactReal::sqrt(101).unwrap();
        for m in [Method::Convergent, Method::Oracle] {
            let r = x_rho(&s101, &rat(1, 3), &BigInt::from(20), m).unwrap();
            assert_eq!(r.count, 2);
        }
        assert!(matches!(
            x_rho(&s101, &rat(1, 2), &BigInt::from(20), Method::Convergent),
            Err(Error::DeltaOutOfRange { .. })
        ));
        // the convergent walk handles huge rho
        let big = BigInt::from(10).pow(60);
        let r = x_rho(&ExactReal::sqrt(3).unwrap(), &rat(1, 3), &big, Method::Convergent).unwrap();
        assert!(r.count > 0);
    }

    #[test]
    fn sandwich_examples() {
        let s = sandwich(&ExactReal::golden_ratio(), &rat(1, 3), 10).unwrap();
        assert_eq!((s.count_lower, s.count_mid, s.count_upper), (0, 0, 10));
        assert!(s.holds());
        let s = sandwich(&ExactReal::sqrt(2).unwrap(), &rat(1, 3), 10).unwrap();
        assert_eq!(s.count_mid, 0);
        assert!(s.holds());
        let series = sandwich_series(&ExactReal::golden_ratio(), &rat(1, 4), 5).unwrap();
        let fifth = &series[4];
        assert!(fifth.log_qn.contains(&fifth.log_qn.midpoint()));
        assert!(fifth.log_qn.width() <= Rational::new(BigInt::one(), BigInt::one() << 64));
    }

    #[test]
    fn cd_examples() {
        let cd = cd_quantities(&ExactReal::golden_ratio(), &rat(1, 4), 10).unwrap();
        let ln3 = ln_rational(&rat(3, 1), 80).unwrap();
        assert!(cd.alpha.lo <= ln3.hi && ln3.lo <= cd.alpha.hi);
        assert_eq!(cd.d_n(&rat(4, 1)), Rational::zero());
        assert_eq!(cd.d_n(&rat(3, 1)), Rational::one());
        assert_eq!(cd.e_n, Rational::zero());
        assert!(matches!(
            cd_quantities(&ExactReal::golden_ratio(), &rat(1, 3), 10),
            Err(Error::DeltaOutOfRange { .. })
        ));
    }

    #[test]
    fn numeric_constant() {
        assert!(constant_check(64).unwrap().holds);
    }
}
