//! Shared inputs for the benchmarks.

use hurwitz::counting::CDParams;
use hurwitz::real::rat;
use hurwitz::sample::Sampler;
use hurwitz::ExactReal;

pub const SEED: u64 = 42;

pub fn surds(n: usize) -> Vec<ExactReal> {
    Sampler::new(SEED).surds(n)
}

/// `(1 + sqrt 3)/2, 1, sqrt 3, 2` with `delta = 3/10`, `kappa = 1/3`.
pub fn mixed_form() -> CDParams {
    CDParams::new(
        ExactReal::surd(1, 1, 2, 3).expect("surd"),
        ExactReal::from(1),
        ExactReal::sqrt(3).expect("surd"),
        ExactReal::from(2),
        rat(3, 10),
        rat(1, 3),
    )
    .expect("determinant one")
}
