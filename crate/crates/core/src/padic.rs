//! Fixed-precision p-adic numbers with explicit valuation and precision tracking.
//!
//! A [`PAdic`] is either an exact zero (valuation `+inf`) or a value
//! `p^val * unit + O(p^(val + rel))` with `unit` coprime to `p` and reduced
//! modulo `p^rel`. A value with `rel == 0` carries no digits at all and only
//! records the bound `O(p^val)`. Absolute precision never exceeds the
//! context's `N`, and arithmetic reports only the precision derivable from
//! its operands.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{mod_inverse, pow_u64, v_p_int};
use crate::error::{Error, Result};
use crate::Rational;

/// A prime together with the absolute working precision `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeContext {
    p: u64,
    prec: u32,
}

impl PrimeContext {
    pub fn new(p: u64, prec: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if prec == 0 {
            return Err(Error::ZeroPrecision);
        }
        Ok(PrimeContext { p, prec })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// The absolute precision `N`.
    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(&self, prec: u32) -> Result<Self> {
        PrimeContext::new(self.p, prec)
    }

    /// `p^k` as a big integer.
    pub fn pow(&self, k: u32) -> BigUint {
        BigUint::from(self.p).pow(k)
    }

    /// `p^N`, or `None` when it does not fit in a `u128`.
    pub fn modulus_u128(&self) -> Option<u128> {
        (self.p as u128).checked_pow(self.prec)
    }
}

/// Deterministic primality check by trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    Zero,
    Approx { val: i64, unit: BigUint, rel: u32 },
}

/// An element of `Q_p` known modulo `p^abs` for some `abs <= N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PAdic {
    ctx: PrimeContext,
    repr: Repr,
}

impl PAdic {
    /// The exact zero.
    pub fn zero(ctx: PrimeContext) -> Self {
        PAdic { ctx, repr: Repr::Zero }
    }

    pub fn one(ctx: PrimeContext) -> Self {
        PAdic::from_int(1, ctx)
    }

    /// The value `O(p^k)`, known to vanish modulo `p^k` and nothing more.
    pub fn big_o(k: i64, ctx: PrimeContext) -> Self {
        let k = k.min(ctx.prec as i64);
        PAdic {
            ctx,
            repr: Repr::Approx { val: k, unit: BigUint::zero(), rel: 0 },
        }
    }

    pub fn from_int(n: i64, ctx: PrimeContext) -> Self {
        PAdic::from_scaled(ctx, 0, BigInt::from(n), ctx.prec as i64)
    }

    pub fn from_bigint(n: &BigInt, ctx: PrimeContext) -> Self {
        PAdic::from_scaled(ctx, 0, n.clone(), ctx.prec as i64)
    }

    pub fn from_rational(q: &Rational, ctx: PrimeContext) -> Self {
        // Ratio guarantees a nonzero denominator.
        PAdic::from_fraction(q.numer(), q.denom(), ctx).expect("nonzero denominator")
    }

    /// Image of `num / den` at full absolute precision `N`.
    pub fn from_fraction(num: &BigInt, den: &BigInt, ctx: PrimeContext) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(PAdic::zero(ctx));
        }
        let (vn, un) = v_p_int(num, ctx.p);
        let (vd, ud) = v_p_int(den, ctx.p);
        let val = vn as i64 - vd as i64;
        let abs = ctx.prec as i64;
        if val >= abs {
            return Ok(PAdic::big_o(abs, ctx));
        }
        let rel = (abs - val) as u32;
        let m = BigInt::from(ctx.pow(rel));
        let inv = mod_inverse(&ud, &m).expect("unit denominator is invertible");
        let unit = (un * inv).mod_floor(&m);
        Ok(PAdic {
            ctx,
            repr: Repr::Approx { val, unit: unit.to_biguint().expect("nonnegative"), rel },
        })
    }

    /// Builds `p^val * x + O(p^abs)` for an arbitrary integer `x`, normalizing.
    fn from_scaled(ctx: PrimeContext, val: i64, x: BigInt, abs: i64) -> Self {
        let abs = abs.min(ctx.prec as i64);
        if x.is_zero() || val >= abs {
            return PAdic::big_o(abs, ctx);
        }
        // Strip factors of p only as far as the precision allows.
        let p = BigInt::from(ctx.p);
        let mut x = x;
        let mut v = val;
        while v < abs {
            let (q, r) = x.div_rem(&p);
            if !r.is_zero() {
                break;
            }
            x = q;
            v += 1;
        }
        if v >= abs {
            return PAdic::big_o(abs, ctx);
        }
        let rel = (abs - v) as u32;
        let m = BigInt::from(ctx.pow(rel));
        let unit = x.mod_floor(&m).to_biguint().expect("nonnegative");
        PAdic { ctx, repr: Repr::Approx { val: v, unit, rel } }
    }

    pub fn context(&self) -> PrimeContext {
        self.ctx
    }

    pub fn p(&self) -> u64 {
        self.ctx.p
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero)
    }

    /// True when no nonzero digit is known (exact zero or `O(p^k)`).
    pub fn is_zero_to_precision(&self) -> bool {
        match &self.repr {
            Repr::Zero => true,
            Repr::Approx { rel, .. } => *rel == 0,
        }
    }

    /// The valuation; `None` is `+inf`. For `O(p^k)` this is the lower bound `k`.
    pub fn valuation(&self) -> Option<i64> {
        match &self.repr {
            Repr::Zero => None,
            Repr::Approx { val, .. } => Some(*val),
        }
    }

    /// Absolute precision; `None` for the exact zero.
    pub fn abs_prec(&self) -> Option<i64> {
        match &self.repr {
            Repr::Zero => None,
            Repr::Approx { val, rel, .. } => Some(val + *rel as i64),
        }
    }

    pub fn rel_prec(&self) -> u32 {
        match &self.repr {
            Repr::Zero => u32::MAX,
            Repr::Approx { rel, .. } => *rel,
        }
    }

    /// The unit part, reduced modulo `p^rel` (zero for `O(p^k)` and exact zero).
    pub fn unit(&self) -> BigUint {
        match &self.repr {
            Repr::Zero => BigUint::zero(),
            Repr::Approx { unit, .. } => unit.clone(),
        }
    }

    fn check_ctx(&self, other: &PAdic) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch {
                left_p: self.ctx.p,
                left_n: self.ctx.prec,
                right_p: other.ctx.p,
                right_n: other.ctx.prec,
            });
        }
        Ok(())
    }

    /// Moves the value into another context with the same prime, capping precision.
    pub fn with_context(&self, ctx: PrimeContext) -> Result<PAdic> {
        if ctx.p != self.ctx.p {
            return Err(Error::ContextMismatch {
                left_p: self.ctx.p,
                left_n: self.ctx.prec,
                right_p: ctx.p,
                right_n: ctx.prec,
            });
        }
        Ok(match &self.repr {
            Repr::Zero => PAdic::zero(ctx),
            Repr::Approx { val, unit, rel } => {
                PAdic::from_scaled(ctx, *val, BigInt::from(unit.clone()), val + *rel as i64)
            }
        })
    }

    /// Forgets every digit at or beyond `p^abs`.
    pub fn truncate(&self, abs: i64) -> PAdic {
        match &self.repr {
            Repr::Zero => PAdic::big_o(abs, self.ctx),
            Repr::Approx { val, unit, rel } => {
                let cur = val + *rel as i64;
                PAdic::from_scaled(self.ctx, *val, BigInt::from(unit.clone()), cur.min(abs))
            }
        }
    }

    pub fn try_add(&self, other: &PAdic) -> Result<PAdic> {
        self.check_ctx(other)?;
        let (va, ua, aa) = match &self.repr {
            Repr::Zero => return Ok(other.clone()),
            Repr::Approx { val, unit, rel } => (*val, unit, val + *rel as i64),
        };
        let (vb, ub, ab) = match &other.repr {
            Repr::Zero => return Ok(self.clone()),
            Repr::Approx { val, unit, rel } => (*val, unit, val + *rel as i64),
        };
        let abs = aa.min(ab);
        let v = va.min(vb);
        if v >= abs {
            return Ok(PAdic::big_o(abs, self.ctx));
        }
        let p = BigUint::from(self.ctx.p);
        let xa = BigInt::from(ua * p.pow((va - v) as u32));
        let xb = BigInt::from(ub * p.pow((vb - v) as u32));
        Ok(PAdic::from_scaled(self.ctx, v, xa + xb, abs))
    }

    pub fn try_sub(&self, other: &PAdic) -> Result<PAdic> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &PAdic) -> Result<PAdic> {
        self.check_ctx(other)?;
        let (va, ua, ra) = match &self.repr {
            Repr::Zero => return Ok(PAdic::zero(self.ctx)),
            Repr::Approx { val, unit, rel } => (*val, unit, *rel),
        };
        let (vb, ub, rb) = match &other.repr {
            Repr::Zero => return Ok(PAdic::zero(self.ctx)),
            Repr::Approx { val, unit, rel } => (*val, unit, *rel),
        };
        let v = va + vb;
        let rel = ra.min(rb);
        Ok(PAdic::from_scaled(self.ctx, v, BigInt::from(ua * ub), v + rel as i64))
    }

    pub fn try_div(&self, other: &PAdic) -> Result<PAdic> {
        self.check_ctx(other)?;
        let (vb, ub, rb) = match &other.repr {
            Repr::Zero => return Err(Error::DivisionByZero),
            Repr::Approx { rel: 0, val, .. } => {
                return Err(Error::PrecisionExhausted(format!("divisor is O({}^{val})", self.ctx.p)))
            }
            Repr::Approx { val, unit, rel } => (*val, unit, *rel),
        };
        let (va, ua, ra) = match &self.repr {
            Repr::Zero => return Ok(PAdic::zero(self.ctx)),
            Repr::Approx { val, unit, rel } => (*val, unit, *rel),
        };
        let v = va - vb;
        let rel = ra.min(rb);
        if rel == 0 {
            return Ok(PAdic::big_o(v, self.ctx));
        }
        let m = BigInt::from(self.ctx.pow(rel));
        let inv = mod_inverse(&BigInt::from(ub.clone()), &m).expect("unit");
        Ok(PAdic::from_scaled(self.ctx, v, BigInt::from(ua.clone()) * inv, v + rel as i64))
    }

    pub fn inverse(&self) -> Result<PAdic> {
        PAdic::one(self.ctx).try_div(self)
    }

    /// Multiplication by an exact rational: the valuation shifts, relative precision is kept.
    pub fn mul_rational(&self, q: &Rational) -> PAdic {
        if q.is_zero() {
            return PAdic::zero(self.ctx);
        }
        let (val, unit, rel) = match &self.repr {
            Repr::Zero => return PAdic::zero(self.ctx),
            Repr::Approx { val, unit, rel } => (*val, unit, *rel),
        };
        let (vn, un) = v_p_int(q.numer(), self.ctx.p);
        let (vd, ud) = v_p_int(q.denom(), self.ctx.p);
        let v = val + vn as i64 - vd as i64;
        if rel == 0 {
            return PAdic::big_o(v, self.ctx);
        }
        let m = BigInt::from(self.ctx.pow(rel));
        let inv = mod_inverse(&ud, &m).expect("unit");
        PAdic::from_scaled(self.ctx, v, BigInt::from(unit.clone()) * un * inv, v + rel as i64)
    }

    pub fn mul_int(&self, n: i64) -> PAdic {
        self.mul_rational(&Rational::from_integer(BigInt::from(n)))
    }

    pub fn pow(&self, mut n: u64) -> PAdic {
        let mut base = self.clone();
        let mut acc = PAdic::one(self.ctx);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Rising factorial `s (s+1) ... (s+n-1)`.
    pub fn pochhammer(&self, n: u64) -> PAdic {
        let mut acc = PAdic::one(self.ctx);
        let mut term = self.clone();
        let one = PAdic::one(self.ctx);
        for _ in 0..n {
            acc = &acc * &term;
            term = &term + &one;
        }
        acc
    }

    /// True when `self - other` is certified to vanish modulo `p^k`.
    pub fn agrees_mod(&self, other: &PAdic, k: i64) -> bool {
        match self.try_sub(other) {
            Ok(d) => match d.valuation() {
                None => true,
                Some(v) => v >= k,
            },
            Err(_) => false,
        }
    }

    /// Valuation of `self - other`, `None` when the difference is exactly zero.
    pub fn distance_valuation(&self, other: &PAdic) -> Result<Option<i64>> {
        Ok(self.try_sub(other)?.valuation())
    }

    /// The representative in `[0, p^abs)` of an element of `Z_p`.
    pub fn to_integer(&self) -> Result<BigUint> {
        match &self.repr {
            Repr::Zero => Ok(BigUint::zero()),
            Repr::Approx { val, unit, .. } => {
                if *val < 0 {
                    return Err(Error::NotInZp(self.to_string()));
                }
                Ok(unit * self.ctx.pow(*val as u32))
            }
        }
    }

    /// Residue modulo `p^k`; fails when `k` exceeds the known precision.
    pub fn residue_mod(&self, k: u32) -> Result<BigUint> {
        if let Some(abs) = self.abs_prec() {
            if (k as i64) > abs {
                return Err(Error::PrecisionExhausted(format!(
                    "residue mod {}^{k} requested from {}",
                    self.ctx.p, self
                )));
            }
        }
        Ok(self.to_integer()? % self.ctx.pow(k))
    }

    /// Base-p digits of the unit, least significant first, starting at the valuation.
    pub fn digits(&self) -> (i64, Vec<u64>) {
        match &self.repr {
            Repr::Zero => (0, Vec::new()),
            Repr::Approx { val, unit, rel } => {
                let p = BigUint::from(self.ctx.p);
                let mut u = unit.clone();
                let mut out = Vec::with_capacity(*rel as usize);
                for _ in 0..*rel {
                    let (q, r) = u.div_rem(&p);
                    out.push(r.to_u64().expect("digit fits"));
                    u = q;
                }
                (*val, out)
            }
        }
    }

    /// The Teichmueller representative: the `(p-1)`-st root of unity congruent to a unit.
    pub fn teichmuller(&self) -> Result<PAdic> {
        if self.valuation() != Some(0) || self.rel_prec() == 0 {
            return Err(Error::NotAUnit(self.to_string()));
        }
        let target = self.abs_prec().expect("nonzero");
        let mut y = self.clone();
        for _ in 0..(self.ctx.prec + 2) {
            let next = y.pow(self.ctx.p);
            if next.agrees_mod(&y, target) {
                return Ok(next);
            }
            y = next;
        }
        Err(Error::TeichmullerUnstable)
    }
}

impl Neg for &PAdic {
    type Output = PAdic;
    fn neg(self) -> PAdic {
        match &self.repr {
            Repr::Zero => self.clone(),
            Repr::Approx { val, unit, rel } => {
                PAdic::from_scaled(self.ctx, *val, -BigInt::from(unit.clone()), val + *rel as i64)
            }
        }
    }
}

impl Neg for PAdic {
    type Output = PAdic;
    fn neg(self) -> PAdic {
        -&self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr<&PAdic> for &PAdic {
            type Output = PAdic;
            /// Panics when the operands live in different contexts.
            fn $method(self, rhs: &PAdic) -> PAdic {
                self.$try(rhs).expect("p-adic operands share a context")
            }
        }
        impl $tr<PAdic> for PAdic {
            type Output = PAdic;
            fn $method(self, rhs: PAdic) -> PAdic {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

fn fmt_power(p: u64, k: i64) -> String {
    match k {
        0 => String::new(),
        1 => format!("{p}"),
        _ => format!("{p}^{k}"),
    }
}

/// Renders as `d0 + d1*p + d2*p^2 + ... + O(p^k)`, omitting zero digits.
impl fmt::Display for PAdic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.ctx.p;
        match &self.repr {
            Repr::Zero => write!(f, "0"),
            Repr::Approx { val, rel, .. } => {
                let (_, digits) = self.digits();
                let mut parts = Vec::new();
                for (i, d) in digits.iter().enumerate() {
                    if *d == 0 {
                        continue;
                    }
                    let k = val + i as i64;
                    parts.push(if k == 0 {
                        format!("{d}")
                    } else {
                        format!("{d}*{}", fmt_power(p, k))
                    });
                }
                let abs = val + *rel as i64;
                parts.push(format!("O({p}^{abs})"));
                write!(f, "{}", parts.join(" + "))
            }
        }
    }
}

impl PAdic {
    /// Signed representative of the unit in `(-p^rel/2, p^rel/2]`; handy for tests.
    pub fn unit_signed(&self) -> BigInt {
        let u = BigInt::from(self.unit());
        if self.is_zero_to_precision() {
            return u;
        }
        let m = BigInt::from(self.ctx.pow(self.rel_prec()));
        if &u * 2 > m {
            u - m
        } else {
            u
        }
    }

    /// True when the value is the image of the integer `n` to its full precision.
    pub fn is_integer(&self, n: i64) -> bool {
        self.agrees_mod(&PAdic::from_int(n, self.ctx), self.abs_prec().unwrap_or(i64::MAX))
    }
}

/// `p^k` as a `u64`, panicking on overflow.
pub fn p_pow_u64(p: u64, k: u32) -> u64 {
    pow_u64(p, k).expect("p^k fits in u64")
}
