//! Exact-rational polynomials in the free algebra on `{T0, T1}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::word::{Letter, Word};
use crate::Rational;

/// `unit * 1 + sum c_W W` with no zero coefficients stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NCPoly {
    unit: Rational,
    terms: BTreeMap<Word, Rational>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly::default()
    }

    pub fn one() -> Self {
        NCPoly { unit: Rational::one(), terms: BTreeMap::new() }
    }

    pub fn word(w: Word) -> Self {
        NCPoly::term(w, Rational::one())
    }

    pub fn term(w: Word, c: Rational) -> Self {
        let mut p = NCPoly::zero();
        p.add_term(Some(&w), &c);
        p
    }

    pub fn unit(&self) -> &Rational {
        &self.unit
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.unit.is_zero() && self.terms.is_empty()
    }

    /// Terms of one weight; weight 0 is empty (the unit is separate).
    pub fn homogeneous(&self, weight: usize) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter().filter(move |(w, _)| w.weight() == weight)
    }

    /// Adds `c` to the coefficient of `w` (`None` is the unit).
    pub fn add_term(&mut self, w: Option<&Word>, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match w {
            None => self.unit += c,
            Some(w) => {
                let e = self.terms.entry(w.clone()).or_insert_with(Rational::zero);
                *e += c;
                if e.is_zero() {
                    self.terms.remove(w);
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> NCPoly {
        if c.is_zero() {
            return NCPoly::zero();
        }
        NCPoly {
            unit: &self.unit * c,
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    /// Shuffle product, extended bilinearly.
    pub fn shuffle(&self, other: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        out.add_term(None, &(&self.unit * &other.unit));
        for (w, c) in &self.terms {
            out.add_term(Some(w), &(c * &other.unit));
        }
        for (w, c) in &other.terms {
            out.add_term(Some(w), &(c * &self.unit));
        }
        for (u, cu) in &self.terms {
            for (v, cv) in &other.terms {
                let c = cu * cv;
                for (w, n) in shuffle_words(u.letters(), v.letters()) {
                    out.add_term(Some(&Word::new(w).expect("nonempty")), &(&c * Rational::from_integer(n.into())));
                }
            }
        }
        out
    }

    /// The quotient map killing every word that ends in `T0`.
    pub fn fprime(&self) -> NCPoly {
        NCPoly {
            unit: self.unit.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.ends_in_t1())
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// True when every word lies in `M'`.
    pub fn in_m_prime(&self) -> bool {
        self.terms.keys().all(Word::ends_in_t1)
    }
}

/// Word shuffle with multiplicities.
pub fn shuffle_words(u: &[Letter], v: &[Letter]) -> BTreeMap<Vec<Letter>, u64> {
    let mut out = BTreeMap::new();
    if u.is_empty() || v.is_empty() {
        out.insert([u, v].concat(), 1);
        return out;
    }
    for (head, rest_u, rest_v) in [(u[0], &u[1..], v), (v[0], u, &v[1..])] {
        for (mut w, n) in shuffle_words(rest_u, rest_v) {
            w.insert(0, head);
            *out.entry(w).or_insert(0) += n;
        }
    }
    out
}

impl Add for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        out.add_term(None, &rhs.unit);
        for (w, c) in &rhs.terms {
            out.add_term(Some(w), c);
        }
        out
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        self.scale(&-Rational::one())
    }
}

impl Sub for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        self + &-rhs
    }
}

/// Concatenation product.
impl Mul for &NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        out.add_term(None, &(&self.unit * &rhs.unit));
        for (w, c) in &self.terms {
            out.add_term(Some(w), &(c * &rhs.unit));
        }
        for (w, c) in &rhs.terms {
            out.add_term(Some(w), &(c * &self.unit));
        }
        for (u, cu) in &self.terms {
            for (v, cv) in &rhs.terms {
                out.add_term(Some(&u.concat(v)), &(cu * cv));
            }
        }
        out
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.unit.is_zero() {
            parts.push(format!("{}", self.unit));
        }
        for (w, c) in &self.terms {
            parts.push(if c.is_one() { w.to_string() } else { format!("{c}*{w}") });
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&parts.join(" + "))
    }
}
