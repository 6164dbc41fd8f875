//! Exact rational scalars and the `"p/q"` literal syntax used across the
//! crate's file formats.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar. Every geometric endpoint, matrix entry and
/// polynomial coefficient in this crate is a `Rat`.
pub type Rat = BigRational;

/// `rat(p, q)` builds `p/q` from machine integers.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// `int(n)` builds the integer `n` as a rational.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Largest integer `<= r`, as a `BigInt`.
pub fn floor_int(r: &Rat) -> BigInt {
    r.floor().to_integer()
}

/// Parses a rational literal: an optional sign, an integer part and an
/// optional `/q` denominator, e.g. `-3`, `1/2`, `-7/4`.
pub fn parse_rat(s: &str) -> Result<Rat, RatParseError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(RatParseError(s.to_owned()));
    }
    t.parse::<Rat>().map_err(|_| RatParseError(s.to_owned()))
}

/// Renders a rational as `p/q`, or just `p` when the denominator is one.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Nearest `f64` to an exact rational. Used only on numeric cross-check
/// paths; decision procedures never touch this.
pub fn rat_to_f64(r: &Rat) -> f64 {
    let mut numer = r.numer().clone();
    let mut denom = r.denom().clone();
    // keep the magnitudes in f64 range before the final division
    let limit = BigInt::from(1u64 << 60);
    while numer.abs() > limit && denom.abs() > limit {
        numer >>= 16;
        denom >>= 16;
    }
    bigint_to_f64(&numer) / bigint_to_f64(&denom)
}

fn bigint_to_f64(n: &BigInt) -> f64 {
    let mut out = 0.0f64;
    let (sign, digits) = n.to_u64_digits();
    for d in digits.iter().rev() {
        out = out * 1.8446744073709552e19 + *d as f64;
    }
    match sign {
        num_bigint::Sign::Minus => -out,
        _ => out,
    }
}

/// Error for malformed rational literals.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct RatParseError(pub String);

/// True when `r` is zero.
pub fn is_zero(r: &Rat) -> bool {
    r.is_zero()
}
