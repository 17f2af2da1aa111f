//! Evaluation of `F(alpha, beta; gamma; z)` on the residue disks around `0`, `1` and `infinity`,
//! the convergence report on the disk around `0`, and fitting of connection constants.
//!
//! Series coefficients are exact rationals; only the powers of the disk
//! coordinate are p-adic. Tails are cut with certified valuation bounds.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::analytic::{ppow_rational, Branch};
use crate::arith::{
    digit_sum_big, ilog, ilog_big, in_z_local, is_nonpositive_integer, is_nonzero_integer,
    ord_factorial, ord_pochhammer, v_p,
};
use crate::digits::DigitProfile;
use crate::error::{Error, Hypothesis, Result};
use crate::gamma::{gamma_phi_ratio, GammaRatioSpec};
use crate::padic::{PAdic, PrimeContext};
use crate::Rational;

/// Parameters `(alpha, beta, gamma)` in `Z_(p)` with `mu = 1 - gamma`, `nu = alpha + beta + 1 - gamma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HGParams {
    p: u64,
    alpha: Rational,
    beta: Rational,
    gamma: Rational,
}

impl HGParams {
    pub fn new(p: u64, alpha: Rational, beta: Rational, gamma: Rational) -> Result<Self> {
        for q in [&alpha, &beta, &gamma] {
            if !in_z_local(q, p) {
                return Err(Error::NotInZpLocal(q.to_string()));
            }
        }
        Ok(HGParams { p, alpha, beta, gamma })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    pub fn gamma(&self) -> &Rational {
        &self.gamma
    }

    pub fn mu(&self) -> Rational {
        Rational::one() - &self.gamma
    }

    pub fn nu(&self) -> Rational {
        &self.alpha + &self.beta + Rational::one() - &self.gamma
    }

    /// The same parameters with `alpha` and `beta` exchanged.
    pub fn swapped(&self) -> Self {
        HGParams { p: self.p, alpha: self.beta.clone(), beta: self.alpha.clone(), gamma: self.gamma.clone() }
    }

    /// Whether a parameter hypothesis holds. Branch hypotheses need [`holds_with_branch`](Self::holds_with_branch).
    pub fn holds(&self, flag: Hypothesis) -> bool {
        let in_pz = |q: &Rational| v_p(q, self.p).is_none_or(|v| v >= 1);
        match flag {
            Hypothesis::ParamsInPZ => {
                in_pz(&self.alpha) && in_pz(&self.beta) && in_pz(&(&self.gamma - Rational::one()))
            }
            Hypothesis::BetaNonzero => !self.beta.is_zero(),
            Hypothesis::GammaNotNonpositiveInteger => !is_nonpositive_integer(&self.gamma),
            Hypothesis::SumNotNonzeroInteger => {
                !is_nonzero_integer(&(&self.alpha + &self.beta - &self.gamma))
            }
            Hypothesis::DifferenceNotNonzeroInteger => {
                !is_nonzero_integer(&(&self.alpha - &self.beta))
            }
            Hypothesis::OddPrime => self.p != 2,
            Hypothesis::PolynomialLhs => {
                is_nonpositive_integer(&self.alpha) || is_nonpositive_integer(&self.beta)
            }
            _ => false,
        }
    }

    pub fn holds_with_branch(&self, flag: Hypothesis, branch: &Branch) -> bool {
        let p = self.p;
        match flag {
            Hypothesis::BranchInZp => branch.is_in_zp(p),
            Hypothesis::BranchSmallAgainstParams => match branch.valuation(p) {
                None => true,
                Some(vb) => [&self.alpha, &self.beta].iter().all(|q| {
                    v_p(q, p).is_none_or(|v| (v + vb) * (p as i64 - 1) > 1)
                }),
            },
            other => self.holds(other),
        }
    }

    pub fn require(&self, flag: Hypothesis, requirement: &'static str) -> Result<()> {
        if self.holds(flag) {
            Ok(())
        } else {
            Err(Error::Hypothesis { flag, requirement })
        }
    }

    pub fn require_with_branch(
        &self,
        flag: Hypothesis,
        branch: &Branch,
        requirement: &'static str,
    ) -> Result<()> {
        if self.holds_with_branch(flag, branch) {
            Ok(())
        } else {
            Err(Error::Hypothesis { flag, requirement })
        }
    }

    /// Every parameter and branch hypothesis with its truth value, in a fixed order.
    pub fn hypothesis_record(&self, branch: &Branch) -> Vec<(Hypothesis, bool)> {
        [
            Hypothesis::ParamsInPZ,
            Hypothesis::BetaNonzero,
            Hypothesis::GammaNotNonpositiveInteger,
            Hypothesis::SumNotNonzeroInteger,
            Hypothesis::DifferenceNotNonzeroInteger,
            Hypothesis::BranchInZp,
            Hypothesis::BranchSmallAgainstParams,
            Hypothesis::OddPrime,
            Hypothesis::PolynomialLhs,
        ]
        .into_iter()
        .map(|h| (h, self.holds_with_branch(h, branch)))
        .collect()
    }
}

/// The residue disk containing a point of `Q_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Disk {
    Zero,
    One,
    Infinity,
    /// Around a nontrivial prime-to-p root of unity; not evaluated.
    RootOfUnity,
}

impl Disk {
    pub fn name(self) -> &'static str {
        match self {
            Disk::Zero => "zero",
            Disk::One => "one",
            Disk::Infinity => "infinity",
            Disk::RootOfUnity => "root_of_unity",
        }
    }
}

/// Classifies `z` by `v(z)` and `v(z - 1)`.
pub fn classify(z: &PAdic) -> Disk {
    match z.valuation() {
        None => Disk::Zero,
        Some(v) if v > 0 => Disk::Zero,
        Some(v) if v < 0 => Disk::Infinity,
        _ => {
            let w = z - &PAdic::one(z.context());
            if w.valuation().is_none_or(|v| v > 0) {
                Disk::One
            } else {
                Disk::RootOfUnity
            }
        }
    }
}

/// `d_n = (a)_n (b)_n / ((c)_n n!)` for `n < count`, stopping after the first zero.
pub fn hg_coefficients(a: &Rational, b: &Rational, c: &Rational, count: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(count);
    let mut d = Rational::one();
    for n in 0..count {
        out.push(d.clone());
        if d.is_zero() {
            break;
        }
        let nn = Rational::from_integer(BigInt::from(n));
        d = d * (a + &nn) * (b + &nn) / ((c + &nn) * (&nn + Rational::one()));
    }
    out
}

/// `v(d_m) >= m v(z) - bound_deficit(m)` for `a, b` in `Z_(p)` and `c = A/B`.
fn deficit(p: u64, m: u64, c_size: u32) -> i64 {
    2 * ilog(p, m) as i64 + c_size as i64 + 2
}

fn c_size(c: &Rational, p: u64) -> u32 {
    let s = (c.numer().abs() + c.denom().abs()).to_biguint().expect("positive");
    ilog_big(p, &s)
}

/// `F(a, b; c; w)` for `v(w) >= 1`, to absolute precision at most `N`.
pub fn hg_series(a: &Rational, b: &Rational, c: &Rational, w: &PAdic) -> Result<PAdic> {
    let ctx = w.context();
    let p = ctx.p();
    if is_nonpositive_integer(c) {
        return Err(Error::PoleInLowerParameter);
    }
    for q in [a, b, c] {
        if !in_z_local(q, p) {
            return Err(Error::NotInZpLocal(q.to_string()));
        }
    }
    let v = match w.valuation() {
        None => return Ok(PAdic::one(ctx)),
        Some(v) => v,
    };
    if v < 1 {
        return Err(Error::WrongDisk(w.to_string(), "the series around 0"));
    }
    let target = ctx.prec() as i64;
    let cs = c_size(c, p);
    let bound = |m: u64| m as i64 * v - deficit(p, m, cs);
    // Within [p^k, p^(k+1)) the bound increases, and its values at block starts increase.
    let mut m = 1u64;
    loop {
        let next_block = p.pow(ilog(p, m) + 1);
        if bound(m) >= target && bound(next_block) >= target {
            break;
        }
        m += 1;
    }
    let guard = deficit(p, m, cs) as u32;
    let wctx = ctx.with_prec(ctx.prec() + guard)?;
    let ww = w.with_context(wctx)?;
    let mut acc = PAdic::zero(wctx);
    let mut power = PAdic::one(wctx);
    for (n, d) in hg_coefficients(a, b, c, m as usize).iter().enumerate() {
        if d.is_zero() {
            break;
        }
        debug_assert!(n == 0 || v_p(d, p).unwrap() >= -deficit(p, n as u64, cs));
        acc = &acc + &power.mul_rational(d);
        power = &power * &ww;
    }
    acc.with_context(ctx)
}

/// `F(alpha, beta; gamma; z)` on the disk `|z| < 1`.
pub fn hg_disk0_eval(params: &HGParams, z: &PAdic) -> Result<PAdic> {
    params.require(Hypothesis::GammaNotNonpositiveInteger, "the series around 0")?;
    if z.valuation().is_some_and(|v| v < 1) {
        return Err(Error::WrongDisk(z.to_string(), "the series around 0"));
    }
    hg_series(&params.alpha, &params.beta, &params.gamma, z)
}

/// One row of the convergence report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadiusRow {
    pub n: u64,
    /// `ord_p(d_n)`, `None` when `d_n = 0`.
    pub ord_term: Option<i64>,
    pub l_n: BigInt,
    pub big_l_n: BigInt,
    /// `floor(log_p L_n)`, a nonzero-digit position of `-gamma`.
    pub m_n: u32,
    /// `ord_p((gamma)_n)` by direct summation.
    pub ord_gamma_direct: i64,
    /// `(n - s_p(L_n) + s_p(L_n - n)) / (p - 1)`.
    pub ord_gamma_closed: i64,
    /// `m_n / p^(m')` with `m'` the previous nonzero-digit position, when one exists.
    pub partial_s: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadiusReport {
    pub rows: Vec<RadiusRow>,
    /// The ratios `m_i / p^(m_(i-1))` over the digit depth examined.
    pub partial_s: Vec<Rational>,
    pub s_limit: Rational,
    /// The radius is at least `p^(-radius_exponent)`, `radius_exponent = S / (p - 1)`.
    pub radius_exponent: Rational,
}

impl RadiusReport {
    pub fn closed_form_matches(&self) -> bool {
        self.rows.iter().all(|r| r.ord_gamma_closed == r.ord_gamma_direct)
    }
}

const MAX_DIGIT_DEPTH: usize = 1 << 14;

fn profile_covering(gamma: &Rational, p: u64, n_max: u64) -> Result<DigitProfile> {
    let mut depth = ilog(p, n_max.max(1)) as usize + 4;
    loop {
        let prof = DigitProfile::new(gamma, p, depth)?;
        match prof.big_t(ilog(p, n_max.max(1)) as usize) {
            Ok(_) => return Ok(prof),
            Err(Error::DepthExhausted(_)) if depth < MAX_DIGIT_DEPTH => depth *= 2,
            Err(e) => return Err(e),
        }
    }
}

/// Tabulates `ord_p(d_n)` and the digit quantities `l_n, L_n, m_n` for `1 <= n <= n_max`.
pub fn radius_report(params: &HGParams, n_max: u64) -> Result<RadiusReport> {
    params.require(Hypothesis::GammaNotNonpositiveInteger, "radius_report")?;
    let p = params.p;
    let prof = profile_covering(&params.gamma, p, n_max)?;
    let positions = prof.positions().to_vec();
    let coeffs = hg_coefficients(&params.alpha, &params.beta, &params.gamma, n_max as usize + 1);
    let mut rows = Vec::with_capacity(n_max as usize);
    let mut ord_direct = 0i64;
    let mut g = params.gamma.clone();
    for n in 1..=n_max {
        ord_direct += v_p(&g, p).expect("gamma + j is nonzero");
        g += Rational::one();
        let k = ilog(p, n) as usize;
        let l = prof.t(k)?;
        let big_l = prof.big_t(k)?;
        let m_n = ilog_big(p, &big_l);
        let diff = &big_l - num_bigint::BigUint::from(n);
        let s_l = digit_sum_big(&big_l, p);
        let s_diff = digit_sum_big(&diff, p);
        let closed = (BigInt::from(n) - BigInt::from(s_l) + BigInt::from(s_diff)) / BigInt::from(p - 1);
        let idx = positions.iter().position(|&m| m == m_n as usize);
        let partial_s = idx.filter(|&i| i > 0).map(|i| prof.partial_s()[i - 1].clone());
        rows.push(RadiusRow {
            n,
            ord_term: coeffs.get(n as usize).and_then(|d| v_p(d, p)),
            l_n: l.into(),
            big_l_n: big_l.into(),
            m_n,
            ord_gamma_direct: ord_direct,
            ord_gamma_closed: i64::try_from(closed).expect("small"),
            partial_s,
        });
    }
    let s_limit = prof.s_limit().expect("rational gamma");
    let radius_exponent = &s_limit / Rational::from_integer(BigInt::from(p - 1));
    Ok(RadiusReport { rows, partial_s: prof.partial_s().to_vec(), s_limit, radius_exponent })
}

/// `ord_p((a)_n / n!)`, `None` when `(a)_n = 0`.
pub fn ord_binomial_ratio(a: &Rational, n: u64, p: u64) -> Option<i64> {
    Some(ord_pochhammer(a, n, p)? - ord_factorial(n, p) as i64)
}

/// The value on the disk around `1` and its two addends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disk1Value {
    pub value: PAdic,
    /// `r1 F(alpha, beta; nu; 1 - z)`.
    pub addend1: PAdic,
    /// `r2 <1-z>^(-nu) (1-z) F(gamma-alpha, gamma-beta; 2-nu; 1-z)`.
    pub addend2: PAdic,
    pub r1: PAdic,
    pub r2: PAdic,
}

const DISK1: &str = "the connection formula around 1";

fn require_disk1(params: &HGParams) -> Result<()> {
    params.require(Hypothesis::OddPrime, DISK1)?;
    params.require(Hypothesis::ParamsInPZ, DISK1)?;
    params.require(Hypothesis::SumNotNonzeroInteger, DISK1)
}

/// `r1 = [-mu, -nu; -mu-alpha, -mu-beta]` and `r2 = [mu, -nu; -alpha, -beta]`.
pub fn connection_ratios(params: &HGParams, ctx: PrimeContext) -> Result<(PAdic, PAdic)> {
    let mu = params.mu();
    let nu = params.nu();
    let (a, b) = (params.alpha(), params.beta());
    let r1 = GammaRatioSpec::from_rationals([&-&mu, &-&nu, &(-&mu - a), &(-&mu - b)], ctx)?;
    let r2 = GammaRatioSpec::from_rationals([&mu, &-&nu, &-a, &-b], ctx)?;
    Ok((gamma_phi_ratio(&r1)?, gamma_phi_ratio(&r2)?))
}

/// The basis pair on the disk around `1`:
/// `F(alpha, beta; nu; 1-z)` and `<1-z>^(-nu) (1-z) F(gamma-alpha, gamma-beta; 2-nu; 1-z)`.
pub fn disk1_basis(params: &HGParams, z: &PAdic, branch: &Branch) -> Result<(PAdic, PAdic)> {
    require_disk1(params)?;
    params.require_with_branch(Hypothesis::BranchInZp, branch, DISK1)?;
    let ctx = z.context();
    let w = &PAdic::one(ctx) - z;
    if w.is_exact_zero() || w.valuation().is_some_and(|v| v < 1) {
        return Err(Error::WrongDisk(z.to_string(), DISK1));
    }
    let nu = params.nu();
    let g = params.gamma();
    let f1 = hg_series(params.alpha(), params.beta(), &nu, &w)?;
    let two = Rational::from_integer(BigInt::from(2));
    let f2 = hg_series(&(g - params.alpha()), &(g - params.beta()), &(two - &nu), &w)?;
    let pow = ppow_rational(&w, &-&nu, branch)?;
    Ok((f1, &(&pow * &w) * &f2))
}

/// Evaluates the connection formula around `1` with the gamma-ratio coefficients as printed.
pub fn hg_disk1_eval(params: &HGParams, z: &PAdic, branch: &Branch) -> Result<Disk1Value> {
    let (f1, f2) = disk1_basis(params, z, branch)?;
    let (r1, r2) = connection_ratios(params, z.context())?;
    let addend1 = &r1 * &f1;
    let addend2 = &r2 * &f2;
    Ok(Disk1Value { value: &addend1 + &addend2, addend1, addend2, r1, r2 })
}

/// The limit at `z = 1`: the ratio `[-mu, -nu; -mu-alpha, -mu-beta]`.
pub fn hg_limit_at_1(params: &HGParams, ctx: PrimeContext) -> Result<PAdic> {
    require_disk1(params)?;
    Ok(connection_ratios(params, ctx)?.0)
}

const DISK_INF: &str = "the basis around infinity";

/// `<z>^(-alpha) F(alpha, alpha+1-gamma; alpha-beta+1; 1/z)` and the same with `alpha, beta` exchanged.
pub fn hg_diskinfty_basis(params: &HGParams, z: &PAdic, branch: &Branch) -> Result<(PAdic, PAdic)> {
    params.require(Hypothesis::DifferenceNotNonzeroInteger, DISK_INF)?;
    params.require_with_branch(Hypothesis::BranchSmallAgainstParams, branch, DISK_INF)?;
    if !z.valuation().is_some_and(|v| v < 0) {
        return Err(Error::WrongDisk(z.to_string(), DISK_INF));
    }
    let zi = z.inverse()?;
    let one = Rational::one();
    let g = params.gamma();
    let half = |a: &Rational, b: &Rational| -> Result<PAdic> {
        let s = hg_series(a, &(a + &one - g), &(a - b + &one), &zi)?;
        Ok(&ppow_rational(z, &-a, branch)? * &s)
    };
    Ok((half(params.alpha(), params.beta())?, half(params.beta(), params.alpha())?))
}

/// Constants fitted by [`fit_connection_constants`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionFit {
    pub c1: PAdic,
    pub c2: PAdic,
    /// `lhs - c1 f1 - c2 f2` at every point after the first two.
    pub residuals: Vec<PAdic>,
    pub det_valuation: i64,
}

impl ConnectionFit {
    /// Least certified valuation among the residuals; `None` when all vanish exactly.
    pub fn residual_valuation(&self) -> Option<i64> {
        self.residuals.iter().filter_map(|r| r.valuation()).min()
    }
}

/// Solves `lhs = c1 f1 + c2 f2` at the first two points and reports residuals at the rest.
pub fn fit_connection_constants(
    lhs: &dyn Fn(&PAdic) -> Result<PAdic>,
    f1: &dyn Fn(&PAdic) -> Result<PAdic>,
    f2: &dyn Fn(&PAdic) -> Result<PAdic>,
    points: &[PAdic],
) -> Result<ConnectionFit> {
    if points.len() < 3 {
        return Err(Error::DegenerateSamples(format!("need 3 points, got {}", points.len())));
    }
    let (y0, y1) = (lhs(&points[0])?, lhs(&points[1])?);
    let (a0, a1) = (f1(&points[0])?, f1(&points[1])?);
    let (b0, b1) = (f2(&points[0])?, f2(&points[1])?);
    let det = &(&a0 * &b1) - &(&a1 * &b0);
    if det.is_zero_to_precision() {
        return Err(Error::DegenerateSamples(format!("basis determinant is {det}")));
    }
    let c1 = (&(&y0 * &b1) - &(&y1 * &b0)).try_div(&det)?;
    let c2 = (&(&a0 * &y1) - &(&a1 * &y0)).try_div(&det)?;
    let mut residuals = Vec::new();
    for z in &points[2..] {
        let r = &(&lhs(z)? - &(&c1 * &f1(z)?)) - &(&c2 * &f2(z)?);
        residuals.push(r);
    }
    Ok(ConnectionFit { c1, c2, residuals, det_valuation: det.valuation().expect("nonzero") })
}

/// Exact value of a terminating series `F(a, b; c; z)` at a rational point.
pub fn hg_polynomial_value(a: &Rational, b: &Rational, c: &Rational, z: &Rational) -> Result<Rational> {
    if !(is_nonpositive_integer(a) || is_nonpositive_integer(b)) {
        return Err(Error::Hypothesis { flag: Hypothesis::PolynomialLhs, requirement: "hg_polynomial_value" });
    }
    let deg = [a, b]
        .iter()
        .filter(|q| is_nonpositive_integer(q))
        .map(|q| (-q.to_integer()).try_into().unwrap_or(0usize))
        .min()
        .expect("some parameter terminates");
    let mut acc = Rational::zero();
    let mut zp = Rational::one();
    for d in hg_coefficients(a, b, c, deg + 1) {
        acc += d * &zp;
        zp *= z;
    }
    Ok(acc)
}
