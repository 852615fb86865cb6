//! How often a real admits approximations `|q (q x - p)| <= delta`, counted by
//! brute force and along Hurwitz convergents, with the finite-index bounds on
//! that count and the corresponding count for split quadratic forms.

mod brute;
mod forms;
mod stats;

pub use brute::{
    brute_force_approx, brute_force_approx_chunked, brute_force_exact, quality, ApproxRecord,
    Source, DEFAULT_CHUNK_SIZE,
};
pub use forms::{g_rho, g_rho_exhaustive, qpq_ratio, CDParams, GCount, Witness};
pub use stats::{
    cd_delta_bound, cd_quantities, constant_check, convergent_approx, sandwich, sandwich_series,
    x_rho, x_rho_chunked, CdQuantities, ConstantCheck, Method, SandwichReport, XRho,
};
