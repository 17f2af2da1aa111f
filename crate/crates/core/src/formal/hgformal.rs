//! The hypergeometric series over `Q[[a, b, c1, w]]` and the identities tying it to
//! the KZ solution: the `(1,1)`-entry, the multiple-polylogarithm expansion, the Euler
//! transformation and the first rows of the connection matrices at `0` and `infinity`.

use num_traits::Zero;

use super::kz::{g01_hypergeometric, u_series, v_series, x_matrix, y_matrix, KzSolution};
use super::mpl::mpl_series;
use super::series::{Caps, Mono, TruncSeries, Var};
use super::word::admissible_indices;
use crate::error::{Error, Result};
use crate::Rational;

fn lin(c0: i64, ca: i64, cb: i64, cc: i64, caps: Caps) -> TruncSeries {
    let r = |x: i64| Rational::from_integer(x.into());
    TruncSeries::linear(r(c0), r(ca), r(cb), r(cc), caps)
}

/// `sum_n (A)_n (B)_n / ((C)_n n!) w^n` for parameter series `A, B, C`.
pub fn hg_series_formal(a: &TruncSeries, b: &TruncSeries, c: &TruncSeries) -> Result<TruncSeries> {
    let caps = a.caps().min(b.caps()).min(c.caps());
    let w = TruncSeries::var(Var::W, caps);
    let mut acc = TruncSeries::one(caps);
    let mut term = TruncSeries::one(caps);
    for n in 0..caps.w {
        let nn = TruncSeries::constant(Rational::from_integer(n.into()), caps);
        let lower = c + &nn;
        if lower.constant_term().is_zero() {
            return Err(Error::PoleInLowerParameter);
        }
        let step = &(&(a + &nn) * &(b + &nn)) * &lower.inverse()?;
        term = (&(&term * &step) * &w).scale(&Rational::new(1.into(), (n + 1).into()));
        if term.is_zero() {
            break;
        }
        acc = &acc + &term;
    }
    Ok(acc)
}

/// `F(a, b; c; w)` with `c = 1 + c1`.
pub fn hg_formal_series(caps: Caps) -> Result<TruncSeries> {
    hg_series_formal(&lin(0, 1, 0, 0, caps), &lin(0, 0, 1, 0, caps), &lin(1, 0, 0, 1, caps))
}

/// Sum of `Li_k` over admissible indices of weight `k`, depth `n` and height `s`.
pub fn g0(k: u32, n: usize, s: usize, caps: Caps) -> TruncSeries {
    admissible_indices(k, n, s)
        .iter()
        .fold(TruncSeries::zero(caps), |acc, idx| &acc + &mpl_series(idx.entries(), caps))
}

/// `1 + ab sum g0(k,n,s) u^(k-n-s) v^(n-s) (ab+uv)^(s-1)`; terms have parameter degree `k`.
pub fn oi_rhs(caps: Caps) -> TruncSeries {
    let a = TruncSeries::var(Var::A, caps);
    let b = TruncSeries::var(Var::B, caps);
    let u = u_series(caps);
    let v = v_series(caps);
    let ab = &a * &b;
    let abuv = &ab + &(&u * &v);
    let mut acc = TruncSeries::one(caps);
    for k in 2..=caps.param {
        for n in 1..k as usize {
            for s in 1..=n.min(k as usize - n) {
                let g = g0(k, n, s, caps);
                if g.is_zero() {
                    continue;
                }
                let coeff = &(&u.pow(k - (n + s) as u32) * &v.pow((n - s) as u32)) * &abuv.pow(s as u32 - 1);
                acc = &acc + &(&(&ab * &coeff) * &g);
            }
        }
    }
    acc
}

/// Both residuals of the expansion check, with the caps they were computed at.
#[derive(Clone, Debug)]
pub struct OiCheck {
    pub caps: Caps,
    pub kz_minus_hg: TruncSeries,
    pub hg_minus_oi: TruncSeries,
}

impl OiCheck {
    pub fn is_zero(&self) -> bool {
        self.kz_minus_hg.is_zero() && self.hg_minus_oi.is_zero()
    }
}

pub fn oi_formula_check(caps: Caps) -> Result<OiCheck> {
    let caps = Caps { l: caps.l.max(caps.param), ..caps };
    let g = g01_hypergeometric(caps)?;
    let hg = hg_formal_series(caps)?;
    Ok(OiCheck {
        caps,
        kz_minus_hg: g.entry(0, 0) - &hg,
        hg_minus_oi: &hg - &oi_rhs(caps),
    })
}

/// `F(a,b;c;w) - (1-w)^(c-a-b) F(c-a, c-b; c; w)`, with `(1-w)^e = exp(-e Li_1(w))`.
pub fn euler_residual(caps: Caps) -> Result<TruncSeries> {
    let lhs = hg_formal_series(caps)?;
    let li1 = mpl_series(&[1], caps);
    let one_minus_w = &TruncSeries::one(caps) - &TruncSeries::var(Var::W, caps);
    let power = &one_minus_w * &(&lin(0, -1, -1, 1, caps) * &-&li1).exp()?;
    let rhs = &power * &hg_series_formal(&lin(1, -1, 0, 1, caps), &lin(1, 0, -1, 1, caps), &lin(1, 0, 0, 1, caps))?;
    Ok(&lhs - &rhs)
}

/// Named residuals of the classical identities, each expected to vanish within `caps`.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub caps: Caps,
    pub residuals: Vec<(&'static str, TruncSeries)>,
}

impl IdentityReport {
    pub fn is_zero(&self) -> bool {
        self.residuals.iter().all(|(_, r)| r.is_zero())
    }

    /// The first nonzero residual and its lowest monomial.
    pub fn first_offender(&self) -> Option<(&'static str, Mono, Rational)> {
        self.residuals.iter().find_map(|(n, r)| r.first_term().map(|(m, c)| (*n, m, c)))
    }
}

fn entry_12_over_b(g: &super::kz::Mat2) -> Result<TruncSeries> {
    g.entry(0, 1).div_by_var(Var::B)
}

/// Row one of `G(X, -Y)` against `(F(a,b;c;z), z^(1-c) F(b+1-c, a+1-c; 2-c; z))` after the
/// column change `[[1, 1], [0, u/b]]`.
pub fn v01_residuals(caps: Caps) -> Result<(TruncSeries, TruncSeries)> {
    let wide = Caps { param: caps.param + 1, l: caps.l.max(caps.param + 1), ..caps };
    let g = g01_hypergeometric(wide)?;
    let hg = hg_formal_series(caps)?;
    let r11 = (g.entry(0, 0) - &hg).with_caps(caps);
    let second = (g.entry(0, 0) + &(&u_series(wide) * &entry_12_over_b(&g)?)).with_caps(caps);
    let z_power = (&lin(0, 0, 0, -1, caps) * &TruncSeries::var(Var::L, caps)).exp()?;
    let f = hg_series_formal(&lin(0, 0, 1, -1, caps), &lin(0, 1, 0, -1, caps), &lin(1, 0, 0, -1, caps))?;
    Ok((r11, &second - &(&z_power * &f)))
}

/// Row one at infinity in `w = 1/z`, `L = log w`: `G(Y - X, -Y)(w)` after the column change
/// `[[1, 1], [-a/b, -1]]` against `(w^a F(a, a+1-c; a-b+1; w), w^b F(b+1-c, b; b-a+1; w))`.
pub fn vinf1_residuals(caps: Caps) -> Result<(TruncSeries, TruncSeries)> {
    let wide = Caps { param: caps.param + 1, l: caps.l.max(caps.param + 1), ..caps };
    let sol = KzSolution::new(wide.param as usize, wide)?;
    let g = sol.substitute(&(&y_matrix(wide) - &x_matrix(wide)), &y_matrix(wide).neg());
    let a = TruncSeries::var(Var::A, wide);
    let g12b = entry_12_over_b(&g)?;
    let first = (g.entry(0, 0) - &(&a * &g12b)).with_caps(caps);
    let second = (g.entry(0, 0) - g.entry(0, 1)).with_caps(caps);
    let l = TruncSeries::var(Var::L, caps);
    let wa = (&TruncSeries::var(Var::A, caps) * &l).exp()?;
    let wb = (&TruncSeries::var(Var::B, caps) * &l).exp()?;
    let fa = hg_series_formal(&lin(0, 1, 0, 0, caps), &lin(0, 1, 0, -1, caps), &lin(1, 1, -1, 0, caps))?;
    let fb = hg_series_formal(&lin(0, 0, 1, -1, caps), &lin(0, 0, 1, 0, caps), &lin(1, -1, 1, 0, caps))?;
    Ok((&first - &(&wa * &fa), &second - &(&wb * &fb)))
}

pub fn identity_checks(caps: Caps) -> Result<IdentityReport> {
    let (v11, v12) = v01_residuals(caps)?;
    let (i1, i2) = vinf1_residuals(caps)?;
    Ok(IdentityReport {
        caps,
        residuals: vec![
            ("euler", euler_residual(caps)?),
            ("v01_11", v11),
            ("v01_12", v12),
            ("vinf1_1", i1),
            ("vinf1_2", i2),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn low_order_coefficients() {
        let c = Caps::new(4, 3, 0);
        let f = hg_formal_series(c).unwrap();
        assert_eq!(f.constant_term(), rat(1, 1));
        // ab/c = ab (1 - c1 + c1^2 - ...), and 1 - c1 = 1 + u.
        let mut expect = TruncSeries::zero(c);
        for j in 0..=2u32 {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            expect.add_term(Mono { a: 1, b: 1, c1: j, ..Mono::default() }, rat(sign, 1));
        }
        assert_eq!(f.w_coefficient(1), expect);
        for m in 1..=3 {
            assert!(f.w_coefficient(m).eval_var_zero(Var::B).is_zero());
            assert!(f.w_coefficient(m).eval_var_zero(Var::A).is_zero());
        }
    }

    #[test]
    fn g0_examples() {
        let c = Caps::new(0, 8, 0);
        assert_eq!(g0(2, 1, 1, c), mpl_series(&[2], c));
        assert_eq!(g0(4, 2, 1, c), mpl_series(&[1, 3], c));
        assert!(g0(3, 2, 2, c).is_zero());
    }

    #[test]
    fn oi_holds_at_small_caps() {
        let r = oi_formula_check(Caps::new(3, 6, 3)).unwrap();
        assert!(r.kz_minus_hg.is_zero(), "{}", r.kz_minus_hg);
        assert!(r.hg_minus_oi.is_zero(), "{}", r.hg_minus_oi);
    }

    #[test]
    fn classical_identities_at_small_caps() {
        let r = identity_checks(Caps::new(2, 5, 3)).unwrap();
        for (name, res) in &r.residuals {
            assert!(res.is_zero(), "{name}: {res}");
        }
    }

    #[test]
    fn pole_in_lower_parameter() {
        let c = Caps::new(2, 4, 0);
        let zero = TruncSeries::zero(c);
        assert!(matches!(
            hg_series_formal(&TruncSeries::one(c), &TruncSeries::one(c), &zero),
            Err(Error::PoleInLowerParameter)
        ));
    }
}
