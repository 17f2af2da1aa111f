//! Branched logarithm, exponential and the power map `<z>^lambda = exp(lambda Log z)`.
//!
//! Series are truncated with certified valuation bounds. Partial sums run in
//! a context with a few guard digits so that divisions by `i` or `i!` do not
//! eat into the requested precision.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{ilog, ord_factorial, v_p};
use crate::error::{Error, Hypothesis, Result};
use crate::padic::{PAdic, PrimeContext};
use crate::Rational;

/// The chosen value `lambda = Log(p)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Branch {
    lambda: Rational,
}

impl Branch {
    pub fn new(lambda: Rational) -> Self {
        Branch { lambda }
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn is_in_zp(&self, p: u64) -> bool {
        v_p(&self.lambda, p).is_none_or(|v| v >= 0)
    }

    /// `v_p(lambda)`, `None` for the zero branch.
    pub fn valuation(&self, p: u64) -> Option<i64> {
        v_p(&self.lambda, p)
    }
}

fn guard_ctx(ctx: PrimeContext, extra: u32) -> PrimeContext {
    ctx.with_prec(ctx.prec() + extra).expect("same prime")
}

fn lift(x: &PAdic, ctx: PrimeContext) -> PAdic {
    x.with_context(ctx).expect("same prime")
}

/// Splits a nonzero `z` as `p^r * u` with `u` a unit.
fn split_unit(z: &PAdic) -> Result<(i64, PAdic)> {
    let r = match z.valuation() {
        None => return Err(Error::LogOfZero),
        Some(r) => r,
    };
    if z.rel_prec() == 0 {
        return Err(Error::PrecisionExhausted(format!("{z} has no known digits")));
    }
    let s = Rational::from_integer(BigInt::from(z.p())).pow(-(r as i32));
    Ok((r, z.mul_rational(&s)))
}

/// `log(1 + m)` for `v(m) >= 1`, certified to absolute precision `target`.
fn log_one_plus(m: &PAdic, target: i64) -> PAdic {
    let ctx = m.context();
    let v = match m.valuation() {
        None => return PAdic::zero(ctx),
        Some(v) => v,
    };
    debug_assert!(v >= 1);
    if v >= target {
        return PAdic::big_o(target, ctx);
    }
    // i v - floor(log_p i) is nondecreasing for v >= 1 and bounds v(m^i / i) from below.
    let mut imax = 1u64;
    while (imax as i64) * v - (ilog(ctx.p(), imax) as i64) < target {
        imax += 1;
    }
    let wctx = guard_ctx(ctx, ilog(ctx.p(), imax) + 1);
    let mw = lift(m, wctx);
    let mut power = mw.clone();
    let mut acc = PAdic::zero(wctx);
    for i in 1..imax {
        let term = power.mul_rational(&Rational::new(BigInt::from(1), BigInt::from(i)));
        acc = if i % 2 == 1 { &acc + &term } else { &acc - &term };
        power = &power * &mw;
    }
    acc.truncate(target).with_context(ctx).expect("same prime")
}

/// `Log z = r * lambda + log(u / omega(u))` for `z = p^r u`.
pub fn plog(z: &PAdic, branch: &Branch) -> Result<PAdic> {
    let ctx = z.context();
    let (r, u) = split_unit(z)?;
    let target = u.abs_prec().expect("nonzero");
    let w = u.teichmuller()?;
    let m = &u.try_div(&w)? - &PAdic::one(ctx);
    let log_u = log_one_plus(&m, target);
    let r_lambda = PAdic::from_rational(&(branch.lambda() * Rational::from_integer(BigInt::from(r))), ctx);
    Ok(&r_lambda + &log_u)
}

/// Smallest valuation on which the exponential series converges over `Q_p`.
pub fn exp_min_valuation(p: u64) -> i64 {
    if p == 2 {
        2
    } else {
        1
    }
}

/// `exp(x) = sum x^i / i!` on `v(x) >= 1` (`v(x) >= 2` when `p = 2`).
pub fn pexp(x: &PAdic) -> Result<PAdic> {
    let ctx = x.context();
    let p = ctx.p();
    let v = match x.valuation() {
        None => return Ok(PAdic::one(ctx)),
        Some(v) => v,
    };
    let required = exp_min_valuation(p);
    if v < required {
        return Err(Error::ExpDomain { valuation: v, required });
    }
    let target = x.abs_prec().expect("nonzero");
    if x.rel_prec() == 0 {
        return Ok(&PAdic::one(ctx) + &PAdic::big_o(target, ctx));
    }
    // v(x^i / i!) >= i v - floor((i - 1) / (p - 1)), nondecreasing in i.
    let bound = |i: u64| (i as i64) * v - ((i - 1) / (p - 1)) as i64;
    let mut imax = 1u64;
    while bound(imax) < target {
        imax += 1;
    }
    let wctx = guard_ctx(ctx, ord_factorial(imax, p) as u32 + 1);
    let xw = lift(x, wctx);
    let mut term = PAdic::one(wctx);
    let mut acc = PAdic::one(wctx);
    for i in 1..imax {
        term = (&term * &xw).mul_rational(&Rational::new(BigInt::from(1), BigInt::from(i)));
        acc = &acc + &term;
    }
    Ok(acc.truncate(target).with_context(ctx).expect("same prime"))
}

fn hyp(flag: Hypothesis) -> Error {
    Error::Hypothesis { flag, requirement: "ppow" }
}

/// `<z>^lambda = exp(lambda Log z)`, requiring `|lambda| < 1` and
/// `|lambda Log(p)| < p^(-1/(p-1))`.
pub fn ppow(z: &PAdic, lambda: &PAdic, branch: &Branch) -> Result<PAdic> {
    let ctx = z.context();
    let p = ctx.p();
    if z.is_exact_zero() {
        return Err(Error::LogOfZero);
    }
    let vl = match lambda.valuation() {
        None => return Ok(PAdic::one(ctx)),
        Some(v) => v,
    };
    if vl < 1 {
        return Err(hyp(Hypothesis::ExponentSmall));
    }
    if let Some(vb) = branch.valuation(p) {
        if (vl + vb) * (p as i64 - 1) <= 1 {
            return Err(hyp(Hypothesis::ExponentTimesBranchSmall));
        }
    }
    let x = lambda.try_mul(&plog(z, branch)?)?;
    pexp(&x)
}

/// [`ppow`] with an exact rational exponent.
pub fn ppow_rational(z: &PAdic, lambda: &Rational, branch: &Branch) -> Result<PAdic> {
    if lambda.is_zero() {
        if z.is_exact_zero() {
            return Err(Error::LogOfZero);
        }
        return Ok(PAdic::one(z.context()));
    }
    ppow(z, &PAdic::from_rational(lambda, z.context()), branch)
}
