//! p-adic hypergeometric functions at fixed precision, with an exact formal engine.
//!
//! The numeric half ([`padic`], [`analytic`], [`gamma`], [`hypergeom`]) works in
//! `Q_p` modulo `p^N` with explicit precision tracking. The formal half
//! ([`formal`]) works over exact rationals and checks the shuffle, KZ and
//! hypergeometric identities underlying the numeric evaluators.

pub mod analytic;
pub mod arith;
pub mod digits;
pub mod error;
pub mod formal;
pub mod gamma;
pub mod hypergeom;
pub mod linalg;
pub mod padic;

pub use analytic::{pexp, plog, ppow, Branch};
pub use digits::DigitProfile;
pub use error::{Error, Hypothesis, Result};
pub use padic::{PAdic, PrimeContext};

/// Exact rationals over arbitrary-precision integers.
pub type Rational = num_rational::BigRational;

/// Shorthand for the rational `n / d`; panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Parses `"n"` or `"n/d"` into a rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Invalid(format!("cannot parse rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: num_bigint::BigInt = n.parse().map_err(|_| bad())?;
    let d: num_bigint::BigInt = d.parse().map_err(|_| bad())?;
    if num_traits::Zero::is_zero(&d) {
        return Err(Error::ZeroDenominator);
    }
    Ok(Rational::new(n, d))
}
