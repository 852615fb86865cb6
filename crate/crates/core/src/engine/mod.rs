//! Both expansion algorithms, the convergent recursion, the validity
//! characterization of Hurwitz quotient sequences, and reconstruction.

mod convergent;
mod expand;
mod reconstruct;
mod seq;
mod validate;

pub use convergent::{
    convergents, convergents_of, determinants, evaluate_prefix, fold_terms, Convergent, Fraction,
    Recurrence,
};
pub use expand::{classical_expand, hurwitz_expand, Expansion};
pub use reconstruct::{complete_hurwitz, reconstruct, reconstruct_at, ReconstructionEnclosure};
pub use seq::{from_negative, to_negative, PartialQuotientSeq};
pub use validate::{validate_hurwitz, Validity, Violation};
