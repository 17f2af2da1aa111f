//! Morita's p-adic gamma function by its factorial product, gamma-ratio products,
//! the Gauss product and a zeta-value extractor.
//!
//! `Gamma_p(m) = (-1)^m * prod_{0<j<m, p not dividing j} j` for integers `m >= 1`,
//! extended to `Z_p` by continuity. Every product over `k >= 1` of
//! `Gamma_p(1 + p^k s)` factors is taken as a ratio whose argument sums balance,
//! so the unknown linear term cancels.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::analytic::{plog, Branch};
use crate::arith::{ilog, in_z_local, v_p};
use crate::error::{Error, Hypothesis, Result};
use crate::hypergeom::HGParams;
use crate::linalg::solve;
use crate::padic::{PAdic, PrimeContext};
use crate::Rational;

/// Default bound on `p^N` for the factorial product.
pub const DEFAULT_MAX_PN: u128 = 100_000_000;

/// The configured bound on `p^N`, read from `PADIC_HG_MAX_PN`.
pub fn work_cap() -> u128 {
    std::env::var("PADIC_HG_MAX_PN")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_PN)
}

fn check_cap(ctx: PrimeContext) -> Result<u64> {
    let cap = work_cap();
    match ctx.modulus_u128() {
        Some(pn) if pn <= cap && pn <= u64::MAX as u128 => Ok(pn as u64),
        Some(pn) => Err(Error::WorkCap { pn, cap }),
        None => Err(Error::WorkCap { pn: u128::MAX, cap }),
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    if m <= u32::MAX as u64 {
        a * b % m
    } else {
        ((a as u128 * b as u128) % m as u128) as u64
    }
}

/// Precision to which `Gamma_p(x)` is determined by `x mod p^a`.
///
/// For odd `p` it is `a`. For `p = 2` the product over a period of units modulo `4`
/// is `-1`, so knowing `x mod 4` only fixes `Gamma_2(x) mod 2`.
fn gamma_precision(p: u64, a: u32) -> u32 {
    if p == 2 && a == 2 {
        1
    } else {
        a
    }
}

/// Evaluates `Gamma_p` at many points with one sweep of the factorial product.
pub fn morita_gamma_batch(xs: &[PAdic], ctx: PrimeContext) -> Result<Vec<PAdic>> {
    let pn = check_cap(ctx)?;
    let p = ctx.p();
    // (representative m in [1, p^a], precision a) per input
    let mut reps = Vec::with_capacity(xs.len());
    for x in xs {
        if x.context() != ctx {
            return Err(Error::ContextMismatch {
                left_p: x.p(),
                left_n: x.context().prec(),
                right_p: p,
                right_n: ctx.prec(),
            });
        }
        if x.valuation().is_some_and(|v| v < 0) {
            return Err(Error::NotInZp(x.to_string()));
        }
        let a = x.abs_prec().map_or(ctx.prec(), |a| a.clamp(0, ctx.prec() as i64) as u32);
        if a == 0 {
            reps.push((1u64, 0u32));
            continue;
        }
        let modulus = ctx.pow(a);
        let r = x.to_integer()? % &modulus;
        let m = if r.is_zero() { modulus } else { r };
        reps.push((m.to_u64().expect("below the work cap"), a));
    }
    let mut targets: Vec<u64> = reps.iter().map(|r| r.0).collect();
    targets.sort_unstable();
    targets.dedup();
    let mut prods: BTreeMap<u64, u64> = BTreeMap::new();
    let mut acc = 1u64 % pn;
    let mut j = 1u64;
    let mut jr = 1u64 % p;
    for &m in &targets {
        while j < m {
            if jr != 0 {
                acc = mulmod(acc, j, pn);
            }
            j += 1;
            jr += 1;
            if jr == p {
                jr = 0;
            }
        }
        prods.insert(m, acc);
    }
    Ok(reps
        .into_iter()
        .map(|(m, a)| {
            let prod = prods[&m];
            let signed = if m % 2 == 0 { prod as i64 } else { -(prod as i64) };
            let prec = gamma_precision(p, a) as i64;
            PAdic::from_int(signed, ctx).truncate(prec)
        })
        .collect())
}

/// Morita's `Gamma_p(x)` for `x` in `Z_p`, correct modulo `p^(abs prec of x)`.
pub fn morita_gamma(x: &PAdic) -> Result<PAdic> {
    Ok(morita_gamma_batch(std::slice::from_ref(x), x.context())?.remove(0))
}

/// Arguments `[s1, s2; s3, s4]` of the ratio
/// `prod_{k>=1} Gamma_p(1+p^k s3) Gamma_p(1+p^k s4) / (Gamma_p(1+p^k s1) Gamma_p(1+p^k s2))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaRatioSpec {
    num: [PAdic; 2],
    den: [PAdic; 2],
}

impl GammaRatioSpec {
    /// Requires `s1 + s2 = s3 + s4` to the known precision and every `v(s_i) >= 1`.
    pub fn new(s1: PAdic, s2: PAdic, s3: PAdic, s4: PAdic) -> Result<Self> {
        let lhs = s1.try_add(&s2)?;
        let rhs = s3.try_add(&s4)?;
        if !lhs.try_sub(&rhs)?.is_zero_to_precision() {
            return Err(Error::UnbalancedRatio);
        }
        for s in [&s1, &s2, &s3, &s4] {
            if s.valuation().is_some_and(|v| v < 1) && !s.is_zero_to_precision() {
                return Err(Error::RatioArgumentValuation(s.to_string()));
            }
        }
        Ok(GammaRatioSpec { num: [s1, s2], den: [s3, s4] })
    }

    /// Exact-rational arguments; the sum condition is checked exactly.
    pub fn from_rationals(s: [&Rational; 4], ctx: PrimeContext) -> Result<Self> {
        if s[0] + s[1] != s[2] + s[3] {
            return Err(Error::UnbalancedRatio);
        }
        for q in s {
            if !in_z_local(q, ctx.p()) || v_p(q, ctx.p()).is_some_and(|v| v < 1) {
                return Err(Error::RatioArgumentValuation(q.to_string()));
            }
        }
        let [a, b, c, d] = s.map(|q| PAdic::from_rational(q, ctx));
        GammaRatioSpec::new(a, b, c, d)
    }

    pub fn context(&self) -> PrimeContext {
        self.num[0].context()
    }

    /// `[s3, s4; s1, s2]`.
    pub fn inverted(&self) -> Self {
        GammaRatioSpec { num: self.den.clone(), den: self.num.clone() }
    }

    /// `[-s1, -s2; -s3, -s4]`.
    pub fn negated(&self) -> Self {
        GammaRatioSpec {
            num: [-&self.num[0], -&self.num[1]],
            den: [-&self.den[0], -&self.den[1]],
        }
    }

    fn min_valuation(&self) -> Option<i64> {
        self.num.iter().chain(&self.den).filter_map(|s| s.valuation()).min()
    }

    /// Last index `k` whose factor can differ from `1` modulo `p^N`.
    pub fn truncation_index(&self) -> u32 {
        let n = self.context().prec() as i64;
        match self.min_valuation() {
            None => 0,
            Some(v) => (n - v).max(0) as u32,
        }
    }
}

fn shifted_args(spec: &GammaRatioSpec, k: u32) -> Vec<PAdic> {
    let ctx = spec.context();
    let scale = Rational::from_integer(BigUint::from(ctx.p()).pow(k).into());
    let one = PAdic::one(ctx);
    spec.num
        .iter()
        .chain(&spec.den)
        .map(|s| &one + &s.mul_rational(&scale))
        .collect()
}

fn ratio_factor(g: &[PAdic]) -> Result<PAdic> {
    (&g[2] * &g[3]).try_div(&(&g[0] * &g[1]))
}

/// The gamma-ratio product, truncated where every further factor is `1 mod p^N`.
pub fn gamma_phi_ratio(spec: &GammaRatioSpec) -> Result<PAdic> {
    let ctx = spec.context();
    let kmax = spec.truncation_index();
    let mut args = Vec::with_capacity(4 * (kmax as usize + 1));
    for k in 1..=kmax + 1 {
        args.extend(shifted_args(spec, k));
    }
    let g = morita_gamma_batch(&args, ctx)?;
    let mut acc = PAdic::one(ctx);
    for k in 0..kmax as usize {
        acc = acc.try_mul(&ratio_factor(&g[4 * k..4 * k + 4])?)?;
    }
    let tail = ratio_factor(&g[4 * kmax as usize..])?;
    if !tail.agrees_mod(&PAdic::one(ctx), ctx.prec() as i64) {
        return Err(Error::PrecisionExhausted(format!(
            "tail factor at k = {} is {tail}, not 1",
            kmax + 1
        )));
    }
    Ok(acc)
}

/// The Gauss product and its reciprocal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussRhs {
    /// `prod_k Gamma_p(1+p^k(mu+alpha)) Gamma_p(1+p^k(mu+beta)) / (Gamma_p(1+p^k mu) Gamma_p(1+p^k nu))`.
    pub product: PAdic,
    pub reciprocal: PAdic,
}

/// Evaluates the Gauss product for `alpha, beta, gamma - 1` in `p Z_(p)`.
pub fn gauss_rhs(params: &HGParams, ctx: PrimeContext) -> Result<GaussRhs> {
    params.require(Hypothesis::ParamsInPZ, "gauss_rhs")?;
    let mu = params.mu();
    let nu = params.nu();
    let ma = &mu + params.alpha();
    let mb = &mu + params.beta();
    let spec = GammaRatioSpec::from_rationals([&mu, &nu, &ma, &mb], ctx)?;
    let product = gamma_phi_ratio(&spec)?;
    let reciprocal = product.inverse()?;
    Ok(GaussRhs { product, reciprocal })
}

/// Coefficients extracted from `F(s) = sum_k log(-Gamma_p(1 + p^k s))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaValues {
    /// `zeta_p(n)` for odd `3 <= n <= n_max`.
    pub odd: BTreeMap<u32, PAdic>,
    /// Coefficients of `s^n` for even `2 <= n <= n_max`; these vanish.
    pub even_coefficients: BTreeMap<u32, PAdic>,
}

/// Default sample multipliers `j` for `s = j p`.
pub const DEFAULT_ZETA_SAMPLES: [u64; 3] = [1, 2, 3];

pub fn zeta_p_values(ctx: PrimeContext, n_max: u32) -> Result<ZetaValues> {
    zeta_p_values_with_samples(ctx, n_max, &DEFAULT_ZETA_SAMPLES)
}

/// Fits the Taylor coefficients of `F` at the samples `s = j p`.
///
/// The odd part carries the unknown linear term at `n = 1`, which is fitted and
/// discarded; `zeta_p(n) = n c_n` for odd `n >= 3`. The even part is fitted from
/// `F(s) + F(-s)` and must vanish. Samples beyond the number of unknowns are ignored.
pub fn zeta_p_values_with_samples(ctx: PrimeContext, n_max: u32, js: &[u64]) -> Result<ZetaValues> {
    let p = ctx.p();
    let n = ctx.prec() as i64;
    if n_max < 2 || n_max as i64 >= n {
        return Err(Error::PrecisionExhausted(format!(
            "n_max = {n_max} needs 2 <= n_max < N = {n}"
        )));
    }
    let odd_ns: Vec<u32> = (1..=n_max).filter(|k| k % 2 == 1).collect();
    let even_ns: Vec<u32> = (2..=n_max).filter(|k| k % 2 == 0).collect();
    let count = odd_ns.len().max(even_ns.len());
    if js.len() < count {
        return Err(Error::DegenerateSamples(format!("need {count} samples, got {}", js.len())));
    }
    let js = &js[..count];
    if js.iter().any(|j| j % p == 0) {
        return Err(Error::DegenerateSamples("sample multipliers must be prime to p".into()));
    }
    if p == 2 {
        return Err(Error::Hypothesis { flag: Hypothesis::OddPrime, requirement: "zeta_p_values" });
    }
    // For odd p the Taylor coefficients a_m of log(-Gamma_p(1+x)) on pZ_p satisfy
    // v(a_m) >= -1 - v(m) - v(m-1), and c_m = a_m p^m / (1 - p^m), so a dropped term
    // c_m (jp)^m has valuation at least 2m - 1 - 2 log_p m.
    let tail = (n_max as u64 + 1..n_max as u64 + 2 + n as u64)
        .map(|k| 2 * k as i64 - 1 - 2 * ilog(p, k) as i64)
        .min()
        .expect("nonempty")
        .min(n);
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for &j in js {
        let s = Rational::from_integer((j * p).into());
        plus.push(log_gamma_sum(&s, ctx)?);
        minus.push(log_gamma_sum(&-s, ctx)?);
    }
    let fit = |ns: &[u32], sign: i64| -> Result<Vec<PAdic>> {
        let k = ns.len();
        let rows = js[..k]
            .iter()
            .map(|&j| ns.iter().map(|&e| PAdic::from_int(j.pow(e) as i64, ctx)).collect())
            .collect();
        let rhs = (0..k)
            .map(|i| {
                let m = minus[i].mul_int(sign);
                (&plus[i] + &m).truncate(tail)
            })
            .collect();
        let d = solve(rows, rhs)?;
        // d_e = 2 c_e p^e
        Ok(d.into_iter()
            .zip(ns)
            .map(|(x, &e)| {
                x.mul_rational(&Rational::new(1.into(), (BigUint::from(p).pow(e) * 2u32).into()))
            })
            .collect())
    };
    let odd_c = fit(&odd_ns, -1)?;
    let even_c = if even_ns.is_empty() { Vec::new() } else { fit(&even_ns, 1)? };
    let odd = odd_ns
        .iter()
        .zip(odd_c)
        .filter(|(e, _)| **e >= 3)
        .map(|(&e, c)| (e, c.mul_int(e as i64)))
        .collect();
    let even_coefficients = even_ns.iter().copied().zip(even_c).collect();
    Ok(ZetaValues { odd, even_coefficients })
}

/// `F(s) = sum_{k>=1} log(-Gamma_p(1 + p^k s))`, truncated where the factors are `1 mod p^N`.
pub fn log_gamma_sum(s: &Rational, ctx: PrimeContext) -> Result<PAdic> {
    let p = ctx.p();
    let v = v_p(s, p).unwrap_or(ctx.prec() as i64);
    if v < 1 {
        return Err(Error::RatioArgumentValuation(s.to_string()));
    }
    let kmax = (ctx.prec() as i64 - v).max(0) as u32;
    let sp = PAdic::from_rational(s, ctx);
    let one = PAdic::one(ctx);
    let args: Vec<PAdic> = (1..=kmax)
        .map(|k| &one + &sp.mul_rational(&Rational::from_integer(BigUint::from(p).pow(k).into())))
        .collect();
    let g = morita_gamma_batch(&args, ctx)?;
    let branch = Branch::default();
    let mut acc = PAdic::zero(ctx);
    for x in g {
        acc = &acc + &plog(&-x, &branch)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn ctx(p: u64, n: u32) -> PrimeContext {
        PrimeContext::new(p, n).unwrap()
    }

    /// `(-1)^m prod_{0<j<m, p not dividing j} j` in plain integers.
    fn oracle(m: u64, p: u64) -> i128 {
        let mut acc: i128 = 1;
        for j in 1..m {
            if j % p != 0 {
                acc *= j as i128;
            }
        }
        if m % 2 == 1 {
            -acc
        } else {
            acc
        }
    }

    #[test]
    fn small_values() {
        let c = ctx(5, 4);
        assert!(morita_gamma(&PAdic::one(c)).unwrap().is_integer(-1));
        assert!(morita_gamma(&PAdic::from_int(6, c)).unwrap().is_integer(24));
        for m in 1..15u64 {
            let g = morita_gamma(&PAdic::from_int(m as i64, c)).unwrap();
            assert!(g.is_integer(oracle(m, 5) as i64), "m = {m}");
        }
    }

    #[test]
    fn rejects_negative_valuation_and_cap() {
        let c = ctx(5, 4);
        assert!(matches!(
            morita_gamma(&PAdic::from_rational(&rat(1, 5), c)),
            Err(Error::NotInZp(_))
        ));
        assert!(matches!(morita_gamma(&PAdic::one(ctx(5, 40))), Err(Error::WorkCap { .. })));
    }

    #[test]
    fn two_adic_modulus_four_keeps_one_digit() {
        let c = ctx(2, 2);
        let g = morita_gamma(&PAdic::from_int(3, c)).unwrap();
        assert_eq!(g.abs_prec(), Some(1));
    }

    #[test]
    fn trivial_ratios() {
        let c = ctx(5, 5);
        let s = rat(5, 3);
        let t = rat(-25, 7);
        let r = gamma_phi_ratio(&GammaRatioSpec::from_rationals([&s, &s, &s, &s], c).unwrap()).unwrap();
        assert!(r.is_integer(1));
        let r = gamma_phi_ratio(&GammaRatioSpec::from_rationals([&s, &t, &t, &s], c).unwrap()).unwrap();
        assert!(r.is_integer(1));
    }

    #[test]
    fn ratio_spec_validation() {
        let c = ctx(5, 5);
        let (a, b) = (rat(5, 1), rat(10, 1));
        assert_eq!(
            GammaRatioSpec::from_rationals([&a, &a, &a, &b], c),
            Err(Error::UnbalancedRatio)
        );
        let (x, y) = (rat(1, 3), rat(2, 3));
        assert!(matches!(
            GammaRatioSpec::from_rationals([&x, &y, &y, &x], c),
            Err(Error::RatioArgumentValuation(_))
        ));
    }

    #[test]
    fn gauss_rhs_trivial_cases() {
        let c = ctx(5, 5);
        let trivial = HGParams::new(5, rat(0, 1), rat(5, 2), rat(8, 3)).unwrap();
        assert!(gauss_rhs(&trivial, c).unwrap().product.is_integer(1));
        let ab = HGParams::new(5, rat(-5, 1), rat(5, 2), rat(8, 3)).unwrap();
        let ba = HGParams::new(5, rat(5, 2), rat(-5, 1), rat(8, 3)).unwrap();
        assert_eq!(gauss_rhs(&ab, c).unwrap(), gauss_rhs(&ba, c).unwrap());
        let bad = HGParams::new(5, rat(1, 1), rat(5, 2), rat(8, 3)).unwrap();
        assert!(matches!(
            gauss_rhs(&bad, c),
            Err(Error::Hypothesis { flag: Hypothesis::ParamsInPZ, .. })
        ));
    }
}
