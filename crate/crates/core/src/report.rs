//! JSON conventions shared by every emitted record: a `schema` version field and
//! arbitrary-precision integers written as decimal strings.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use serde::Serializer;

use crate::real::{Enclosure, Rational};

pub const SCHEMA_VERSION: u32 = 1;

pub fn ser_bigint<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub fn ser_bigints<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

pub fn ser_display<T: std::fmt::Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// `r` to `digits` decimal places, rounded down (`up = false`) or up.
pub fn decimal(r: &Rational, digits: u32, up: bool) -> String {
    let scale = BigInt::from(10).pow(digits);
    let scaled = r * Rational::from_integer(scale.clone());
    let n = if up { scaled.ceil() } else { scaled.floor() }.to_integer();
    let (int, frac) = n.abs().div_rem(&scale);
    let sign = if n.is_negative() { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{int}");
    }
    format!("{sign}{int}.{:0>width$}", frac.to_string(), width = digits as usize)
}

/// `[lo, hi]` with outward decimal rounding, so the printed interval still
/// contains the enclosure.
pub fn decimal_enclosure(e: &Enclosure, digits: u32) -> String {
    format!("[{}, {}]", decimal(&e.lo, digits, false), decimal(&e.hi, digits, true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::rat;

    #[test]
    fn decimal_rounding() {
        assert_eq!(decimal(&rat(1, 3), 4, false), "0.3333");
        assert_eq!(decimal(&rat(1, 3), 4, true), "0.3334");
        assert_eq!(decimal(&rat(-1, 3), 4, false), "-0.3334");
        assert_eq!(decimal(&rat(-1, 3), 4, true), "-0.3333");
        assert_eq!(decimal(&rat(7, 2), 0, false), "3");
        assert_eq!(decimal(&rat(1, 200), 2, true), "0.01");
        let e = Enclosure::new(rat(-1, 3), rat(2, 3));
        assert_eq!(decimal_enclosure(&e, 3), "[-0.334, 0.667]");
    }
}
