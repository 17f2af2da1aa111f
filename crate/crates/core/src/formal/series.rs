//! Truncated exact-rational power series in `a, b, c1 = c - 1`, a disk coordinate `w`
//! and a formal logarithm `L` with `w dL/dw = 1`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    A,
    B,
    C1,
    W,
    L,
}

/// Truncation caps: total degree in `(a, b, c1)`, and maximal exponents of `w` and `L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Caps {
    pub param: u32,
    pub w: u32,
    pub l: u32,
}

impl Caps {
    pub fn new(param: u32, w: u32, l: u32) -> Self {
        Caps { param, w, l }
    }

    pub fn min(self, o: Caps) -> Caps {
        Caps { param: self.param.min(o.param), w: self.w.min(o.w), l: self.l.min(o.l) }
    }

    fn admits(&self, m: &Mono) -> bool {
        m.param_degree() <= self.param && m.w <= self.w && m.l <= self.l
    }
}

impl Default for Caps {
    fn default() -> Self {
        Caps::new(5, 10, 5)
    }
}

/// Exponents, ordered by `w` first so residual reports lead with the lowest order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Mono {
    pub w: u32,
    pub l: u32,
    pub a: u32,
    pub b: u32,
    pub c1: u32,
}

impl Mono {
    pub fn param_degree(&self) -> u32 {
        self.a + self.b + self.c1
    }

    fn of(v: Var) -> Mono {
        let mut m = Mono::default();
        *m.slot(v) += 1;
        m
    }

    fn slot(&mut self, v: Var) -> &mut u32 {
        match v {
            Var::A => &mut self.a,
            Var::B => &mut self.b,
            Var::C1 => &mut self.c1,
            Var::W => &mut self.w,
            Var::L => &mut self.l,
        }
    }

    fn get(&self, v: Var) -> u32 {
        let mut m = *self;
        *m.slot(v)
    }

    fn times(&self, o: &Mono) -> Mono {
        Mono { w: self.w + o.w, l: self.l + o.l, a: self.a + o.a, b: self.b + o.b, c1: self.c1 + o.c1 }
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, e) in [("a", self.a), ("b", self.b), ("c1", self.c1), ("w", self.w), ("L", self.l)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// A series known up to its caps; no zero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    caps: Caps,
    terms: BTreeMap<Mono, Rational>,
}

impl TruncSeries {
    pub fn zero(caps: Caps) -> Self {
        TruncSeries { caps, terms: BTreeMap::new() }
    }

    pub fn constant(c: Rational, caps: Caps) -> Self {
        let mut s = TruncSeries::zero(caps);
        s.add_term(Mono::default(), c);
        s
    }

    pub fn one(caps: Caps) -> Self {
        TruncSeries::constant(Rational::one(), caps)
    }

    pub fn var(v: Var, caps: Caps) -> Self {
        let mut s = TruncSeries::zero(caps);
        s.add_term(Mono::of(v), Rational::one());
        s
    }

    /// `c0 + ca a + cb b + cc c1`.
    pub fn linear(c0: Rational, ca: Rational, cb: Rational, cc: Rational, caps: Caps) -> Self {
        let mut s = TruncSeries::constant(c0, caps);
        s.add_term(Mono::of(Var::A), ca);
        s.add_term(Mono::of(Var::B), cb);
        s.add_term(Mono::of(Var::C1), cc);
        s
    }

    /// `sum coeffs[m] w^m`.
    pub fn from_w_coefficients(coeffs: &[Rational], caps: Caps) -> Self {
        let mut s = TruncSeries::zero(caps);
        for (m, c) in coeffs.iter().enumerate() {
            s.add_term(Mono { w: m as u32, ..Mono::default() }, c.clone());
        }
        s
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Mono) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Mono::default())
    }

    /// The lowest nonzero term in monomial order.
    pub fn first_term(&self) -> Option<(Mono, Rational)> {
        self.terms.iter().next().map(|(m, c)| (*m, c.clone()))
    }

    /// Adds `c m`, dropping it when `m` lies beyond the caps.
    pub fn add_term(&mut self, m: Mono, c: Rational) {
        if c.is_zero() || !self.caps.admits(&m) {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn with_caps(&self, caps: Caps) -> Self {
        let mut s = TruncSeries::zero(caps);
        for (m, c) in &self.terms {
            s.add_term(*m, c.clone());
        }
        s
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut s = TruncSeries::zero(self.caps);
        if c.is_zero() {
            return s;
        }
        s.terms = self.terms.iter().map(|(m, x)| (*m, x * c)).collect();
        s
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = TruncSeries::one(self.caps);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `exp(x)` for `x` with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::Invalid("exp needs a zero constant term".into()));
        }
        let mut acc = TruncSeries::one(self.caps);
        let mut term = TruncSeries::one(self.caps);
        let mut k = 1u32;
        loop {
            term = (&term * self).scale(&Rational::new(BigInt::one(), BigInt::from(k)));
            if term.is_zero() {
                return Ok(acc);
            }
            acc = &acc + &term;
            k += 1;
        }
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c = self.constant_term();
        if c.is_zero() {
            return Err(Error::NotInvertible);
        }
        // 1/(c(1 + x)) = (1/c) sum (-x)^k with x nilpotent under the caps.
        let cinv = Rational::one() / &c;
        let mut x = self.scale(&cinv);
        x.add_term(Mono::default(), -Rational::one());
        let neg_x = -&x;
        let mut acc = TruncSeries::one(self.caps);
        let mut term = TruncSeries::one(self.caps);
        loop {
            term = &term * &neg_x;
            if term.is_zero() {
                return Ok(acc.scale(&cinv));
            }
            acc = &acc + &term;
        }
    }

    /// `w d/dw`, with `w d/dw L = 1`.
    pub fn w_derivative(&self) -> Self {
        let mut s = TruncSeries::zero(self.caps);
        for (m, c) in &self.terms {
            if m.w > 0 {
                s.add_term(*m, c * Rational::from_integer(m.w.into()));
            }
            if m.l > 0 {
                let mut m2 = *m;
                m2.l -= 1;
                s.add_term(m2, c * Rational::from_integer(m.l.into()));
            }
        }
        s
    }

    /// Sets a variable to zero.
    pub fn eval_var_zero(&self, v: Var) -> Self {
        let mut s = TruncSeries::zero(self.caps);
        for (m, c) in &self.terms {
            if m.get(v) == 0 {
                s.add_term(*m, c.clone());
            }
        }
        s
    }

    /// Exact division by a variable. Dividing by a parameter lowers the parameter cap by one.
    pub fn div_by_var(&self, v: Var) -> Result<Self> {
        let mut caps = self.caps;
        match v {
            Var::A | Var::B | Var::C1 => caps.param = caps.param.saturating_sub(1),
            Var::W => caps.w = caps.w.saturating_sub(1),
            Var::L => caps.l = caps.l.saturating_sub(1),
        }
        let name = match v {
            Var::A => "a",
            Var::B => "b",
            Var::C1 => "c1",
            Var::W => "w",
            Var::L => "L",
        };
        let mut s = TruncSeries::zero(caps);
        for (m, c) in &self.terms {
            let mut m2 = *m;
            let e = m2.slot(v);
            if *e == 0 {
                return Err(Error::NotDivisible(name));
            }
            *e -= 1;
            s.add_term(m2, c.clone());
        }
        Ok(s)
    }

    /// Coefficient of `w^m` as a series in the remaining variables.
    pub fn w_coefficient(&self, m: u32) -> Self {
        let mut s = TruncSeries::zero(self.caps);
        for (mono, c) in &self.terms {
            if mono.w == m {
                s.add_term(Mono { w: 0, ..*mono }, c.clone());
            }
        }
        s
    }
}

impl Add for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        let caps = self.caps.min(rhs.caps);
        let mut s = if caps == self.caps { self.clone() } else { self.with_caps(caps) };
        for (m, c) in &rhs.terms {
            s.add_term(*m, c.clone());
        }
        s
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        self.scale(&-Rational::one())
    }
}

impl Sub for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        self + &-rhs
    }
}

impl Mul for &TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        let caps = self.caps.min(rhs.caps);
        let mut acc: BTreeMap<Mono, Rational> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let m = m1.times(m2);
                if caps.admits(&m) {
                    *acc.entry(m).or_insert_with(Rational::zero) += c1 * c2;
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        TruncSeries { caps, terms: acc }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<TruncSeries> for TruncSeries {
            type Output = TruncSeries;
            fn $m(self, rhs: TruncSeries) -> TruncSeries {
                (&self).$m(&rhs)
            }
        }
    )*};
}

owned_ops!(Add add, Sub sub, Mul mul);

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({c})*{m}")).collect();
        f.write_str(&parts.join(" + "))
    }
}
