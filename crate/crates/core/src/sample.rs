//! Seeded generators for test inputs: quadratic surds, valid and invalid Hurwitz
//! quotient sequences, and classical prefixes.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::engine::Violation;
use crate::real::{ExactReal, QuadSurd};

pub struct Sampler {
    rng: ChaCha8Rng,
}

fn is_squarefree(n: u32) -> bool {
    (2..).take_while(|k| k * k <= n).all(|k| !n.is_multiple_of(k * k))
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A squarefree integer in `[2, 1000]`.
    pub fn squarefree(&mut self) -> u32 {
        loop {
            let n = self.rng.gen_range(2..=1000);
            if is_squarefree(n) {
                return n;
            }
        }
    }

    /// `(a + b sqrt d) / c` with `a` in `[-50, 50]`, `|b|` in `[1, 20]`,
    /// `c` in `[1, 50]` and squarefree `d` in `[2, 1000]`.
    pub fn surd(&mut self) -> ExactReal {
        let d = self.squarefree();
        let a = self.rng.gen_range(-50..=50i64);
        let mut b = self.rng.gen_range(1..=20i64);
        if self.rng.gen_bool(0.5) {
            b = -b;
        }
        let c = self.rng.gen_range(1..=50i64);
        QuadSurd::new(a.into(), b.into(), c.into(), d.into()).expect("valid surd")
    }

    pub fn surds(&mut self, n: usize) -> Vec<ExactReal> {
        (0..n).map(|_| self.surd()).collect()
    }

    fn sign(&mut self) -> i64 {
        if self.rng.gen_bool(0.5) {
            1
        } else {
            -1
        }
    }

    /// Magnitude for `n >= 1`: 2 often, so the sign rule is exercised.
    fn magnitude(&mut self) -> i64 {
        if self.rng.gen_bool(0.4) {
            2
        } else {
            self.rng.gen_range(3..=12)
        }
    }

    /// A sequence satisfying the Hurwitz validity conditions.
    pub fn hurwitz_terms(&mut self, len: usize) -> Vec<BigInt> {
        let mut out: Vec<i64> = Vec::with_capacity(len);
        for n in 0..len {
            let v = if n == 0 {
                self.rng.gen_range(-20..=20)
            } else {
                let prev = out[n - 1];
                let s = if n >= 2 && prev.abs() == 2 {
                    prev.signum()
                } else {
                    self.sign()
                };
                s * self.magnitude()
            };
            out.push(v);
        }
        out.into_iter().map(BigInt::from).collect()
    }

    /// A sequence of length `len >= 3` whose first violation is at the returned
    /// index, with the returned reason.
    pub fn invalid_hurwitz(&mut self, len: usize) -> (Vec<BigInt>, usize, Violation) {
        assert!(len >= 3);
        let mut t: Vec<i64> = self
            .hurwitz_terms(len)
            .iter()
            .map(|b| i64::try_from(b).expect("small"))
            .collect();
        let sign_rule = self.rng.gen_bool(0.5);
        let k = if sign_rule {
            self.rng.gen_range(1..len - 1)
        } else {
            self.rng.gen_range(1..len)
        };
        // keep index k - 1 from breaking first
        if k >= 2 && t[k - 1].abs() == 2 {
            t[k - 1] = 3 * t[k - 1].signum();
        }
        if sign_rule {
            let s = if k >= 2 { t[k - 1].signum() } else { self.sign() };
            t[k] = 2 * s;
            t[k + 1] = -s * self.magnitude();
        } else {
            t[k] = self.rng.gen_range(-1..=1);
        }
        let reason = if sign_rule {
            Violation::SignRule
        } else {
            Violation::TooSmall
        };
        (t.into_iter().map(BigInt::from).collect(), k, reason)
    }

    /// `b_0` in `[-20, 20]` then quotients in `[1, 12]`, ones being common.
    pub fn classical_terms(&mut self, len: usize) -> Vec<BigInt> {
        (0..len)
            .map(|n| {
                if n == 0 {
                    self.rng.gen_range(-20..=20)
                } else if self.rng.gen_bool(0.4) {
                    1
                } else {
                    self.rng.gen_range(2..=12)
                }
            })
            .map(BigInt::from)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{validate_hurwitz, Validity};
    use crate::error::Kind;

    #[test]
    fn reproducible() {
        let a: Vec<String> = Sampler::new(7).surds(5).iter().map(|x| x.to_string()).collect();
        let b: Vec<String> = Sampler::new(7).surds(5).iter().map(|x| x.to_string()).collect();
        assert_eq!(a, b);
        assert!(Sampler::new(7).surds(50).iter().all(|x| !x.is_rational()));
    }

    #[test]
    fn generated_sequences_classify_as_built() {
        let mut s = Sampler::new(11);
        for _ in 0..300 {
            assert!(validate_hurwitz(&s.hurwitz_terms(30), Kind::HurwitzPositive).is_valid());
            let (t, index, reason) = s.invalid_hurwitz(30);
            assert_eq!(
                validate_hurwitz(&t, Kind::HurwitzPositive),
                Validity::Invalid { index, reason }
            );
        }
    }
}
