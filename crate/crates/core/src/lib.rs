//! Exact Hurwitz (nearest-integer) and classical continued fractions for real
//! numbers, the classical-to-Hurwitz rewrite, its approximation bounds, and
//! approximation-counting statistics.

pub mod error;
pub mod counting;
pub mod diophantine;
pub mod engine;
pub mod real;
pub mod report;
pub mod sample;
pub mod transform;
pub mod verify;

pub use error::{Error, Kind, Result};
pub use real::{ExactReal, IntervalReal, QuadSurd, Rational};
