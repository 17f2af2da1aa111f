//! Coefficients of the normalized fundamental solution
//! `G(z) = 1 + sum_W J(W)(z) W` of `dG/dz = (T0/z + T1/(z-1)) G` around `0`,
//! and its substitution into `2 x 2` parameter matrices.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::mpl::{li_of_poly, mpl_series};
use super::ncpoly::NCPoly;
use super::series::{Caps, TruncSeries, Var};
use super::word::{word_to_index, Index, Letter, Word};
use crate::error::Result;
use crate::Rational;

fn factorial(n: usize) -> Rational {
    Rational::from_integer((1..=n).map(BigInt::from).product())
}

fn l_power(t: usize, caps: Caps) -> TruncSeries {
    TruncSeries::var(Var::L, caps).pow(t as u32).scale(&(Rational::one() / factorial(t)))
}

fn sign(e: usize) -> Rational {
    if e % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `J(W)` by the explicit formulae, with `L` standing for `log z`:
/// `T0^r -> L^r / r!`, and for `W = V T0^r` with `V` in `M'`,
/// `sum_{s+t=r} (-1)^(dp W + s) Li(f'(V sh T0^s)) L^t / t!`.
pub fn g01_coefficient(w: &Word, caps: Caps) -> Result<TruncSeries> {
    let Some((v, r)) = w.split_trailing_t0() else {
        return Ok(l_power(w.weight(), caps));
    };
    if r == 0 {
        let k = word_to_index(w)?;
        return Ok(mpl_series(&k, caps).scale(&sign(w.depth())));
    }
    let vp = NCPoly::word(v);
    let mut acc = TruncSeries::zero(caps);
    for s in 0..=r {
        let t0s = Word::t0_power(s).map_or_else(NCPoly::one, NCPoly::word);
        let li = li_of_poly(&vp.shuffle(&t0s).fprime(), caps)?;
        let term = &li * &l_power(r - s, caps);
        acc = &acc + &term.scale(&sign(w.depth() + s));
    }
    Ok(acc)
}

/// The coefficients `J(W)` for every word of weight at most `max_weight`.
#[derive(Clone, Debug)]
pub struct KzSolution {
    caps: Caps,
    coeffs: BTreeMap<Word, TruncSeries>,
}

impl KzSolution {
    pub fn new(max_weight: usize, caps: Caps) -> Result<Self> {
        let mut coeffs = BTreeMap::new();
        let mut li_cache: HashMap<Index, TruncSeries> = HashMap::new();
        for wt in 1..=max_weight {
            for w in Word::all_of_weight(wt) {
                let j = if w.ends_in_t1() {
                    let k = word_to_index(&w)?;
                    let li = li_cache.entry(k.clone()).or_insert_with(|| mpl_series(&k, caps));
                    li.scale(&sign(w.depth()))
                } else {
                    g01_coefficient(&w, caps)?
                };
                coeffs.insert(w, j);
            }
        }
        Ok(KzSolution { caps, coeffs })
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn coefficient(&self, w: &Word) -> Option<&TruncSeries> {
        self.coeffs.get(w)
    }

    pub fn words(&self) -> impl Iterator<Item = (&Word, &TruncSeries)> {
        self.coeffs.iter()
    }

    /// `I + sum_W J(W) W(m0, m1)`.
    pub fn substitute(&self, m0: &Mat2, m1: &Mat2) -> Mat2 {
        let caps = self.caps.min(m0.caps()).min(m1.caps());
        let mut mats: BTreeMap<Word, Mat2> = BTreeMap::new();
        let mut acc = Mat2::identity(caps);
        for (w, j) in &self.coeffs {
            let last = *w.letters().last().expect("nonempty");
            let step = if last == Letter::T0 { m0 } else { m1 };
            let m = match w.letters().len() {
                1 => step.clone(),
                n => {
                    let prefix = Word::new(w.letters()[..n - 1].to_vec()).expect("nonempty");
                    &mats[&prefix] * step
                }
            };
            if !m.is_zero() {
                acc = &acc + &m.scale_series(j);
            }
            mats.insert(w.clone(), m);
        }
        acc
    }
}

/// `z(z-1) dJ(W)/dz - (z-1) J(W') [W = T0 W'] - z J(W') [W = T1 W']` for every word, with `J(empty) = 1`.
pub fn kz_ode_residual(max_weight: usize, caps: Caps) -> Result<BTreeMap<Word, TruncSeries>> {
    let caps = Caps { l: caps.l.max(max_weight as u32), ..caps };
    let sol = KzSolution::new(max_weight, caps)?;
    let z = TruncSeries::var(Var::W, caps);
    let zm1 = &z - &TruncSeries::one(caps);
    let one = TruncSeries::one(caps);
    let mut out = BTreeMap::new();
    for (w, j) in sol.words() {
        let tail = match w.tail() {
            None => &one,
            Some(t) => sol.coefficient(&t).expect("shorter word present"),
        };
        let factor = if w.first() == Letter::T0 { &zm1 } else { &z };
        let r = &(&zm1 * &j.w_derivative()) - &(factor * tail);
        out.insert(w.clone(), r);
    }
    Ok(out)
}

/// A `2 x 2` matrix of series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat2(pub [[TruncSeries; 2]; 2]);

impl Mat2 {
    pub fn zero(caps: Caps) -> Self {
        let z = TruncSeries::zero(caps);
        Mat2([[z.clone(), z.clone()], [z.clone(), z]])
    }

    pub fn identity(caps: Caps) -> Self {
        let mut m = Mat2::zero(caps);
        m.0[0][0] = TruncSeries::one(caps);
        m.0[1][1] = TruncSeries::one(caps);
        m
    }

    pub fn caps(&self) -> Caps {
        self.0.iter().flatten().map(TruncSeries::caps).reduce(Caps::min).expect("four entries")
    }

    pub fn entry(&self, i: usize, j: usize) -> &TruncSeries {
        &self.0[i][j]
    }

    pub fn scale_series(&self, s: &TruncSeries) -> Mat2 {
        Mat2(self.0.clone().map(|row| row.map(|e| &e * s)))
    }

    pub fn neg(&self) -> Mat2 {
        Mat2(self.0.clone().map(|row| row.map(|e| -&e)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(TruncSeries::is_zero)
    }
}

impl std::ops::Add for &Mat2 {
    type Output = Mat2;
    fn add(self, rhs: &Mat2) -> Mat2 {
        let e = |i: usize, j: usize| &self.0[i][j] + &rhs.0[i][j];
        Mat2([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }
}

impl std::ops::Sub for &Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: &Mat2) -> Mat2 {
        let e = |i: usize, j: usize| &self.0[i][j] - &rhs.0[i][j];
        Mat2([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }
}

impl std::ops::Mul for &Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: &Mat2) -> Mat2 {
        let e = |i: usize, j: usize| {
            &(&self.0[i][0] * &rhs.0[0][j]) + &(&self.0[i][1] * &rhs.0[1][j])
        };
        Mat2([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }
}

/// `u = 1 - c = -c1`.
pub fn u_series(caps: Caps) -> TruncSeries {
    TruncSeries::linear(Rational::zero(), Rational::zero(), Rational::zero(), -Rational::one(), caps)
}

/// `v = a + b + 1 - c = a + b - c1`.
pub fn v_series(caps: Caps) -> TruncSeries {
    TruncSeries::linear(Rational::zero(), Rational::one(), Rational::one(), -Rational::one(), caps)
}

/// `X = [[0, b], [0, u]]`.
pub fn x_matrix(caps: Caps) -> Mat2 {
    let mut m = Mat2::zero(caps);
    m.0[0][1] = TruncSeries::var(Var::B, caps);
    m.0[1][1] = u_series(caps);
    m
}

/// `Y = [[0, 0], [a, v]]`.
pub fn y_matrix(caps: Caps) -> Mat2 {
    let mut m = Mat2::zero(caps);
    m.0[1][0] = TruncSeries::var(Var::A, caps);
    m.0[1][1] = v_series(caps);
    m
}

/// `G(X, -Y)` up to words of weight `caps.param`, fixing the hypergeometric matrices.
pub fn g01_hypergeometric(caps: Caps) -> Result<Mat2> {
    let sol = KzSolution::new(caps.param as usize, caps)?;
    Ok(sol.substitute(&x_matrix(caps), &y_matrix(caps).neg()))
}
