use padic_hg::analytic::{pexp, plog, ppow_rational, Branch};
use padic_hg::gamma::gauss_rhs;
use padic_hg::hypergeom::{
    classify, connection_ratios, disk1_basis, fit_connection_constants, hg_disk1_eval,
    hg_diskinfty_basis, hg_polynomial_value, Disk, HGParams,
};
use padic_hg::{rat, Error, Hypothesis, PAdic, PrimeContext};

fn ctx(p: u64, n: u32) -> PrimeContext {
    PrimeContext::new(p, n).unwrap()
}

fn corner() -> HGParams {
    HGParams::new(5, rat(-5, 1), rat(5, 2), rat(8, 3)).unwrap()
}

#[test]
fn limit_ratio_is_the_reciprocal_of_the_displayed_product() {
    for n in [4, 6, 8] {
        let c = ctx(5, n);
        let (r1, _) = connection_ratios(&corner(), c).unwrap();
        let g = gauss_rhs(&corner(), c).unwrap();
        assert_eq!(r1, g.reciprocal, "N = {n}");
        assert!((&r1 * &g.product).agrees_mod(&PAdic::one(c), n as i64));
    }
}

#[test]
fn fitted_second_constant_vanishes_on_the_corner() {
    let params = corner();
    let c = ctx(5, 8);
    let branch = Branch::default();
    let points: Vec<PAdic> = [6, 11, 16].iter().map(|&n| PAdic::from_int(n, c)).collect();
    let lhs = |z: &PAdic| {
        let q = z.to_integer().unwrap();
        let v = hg_polynomial_value(params.alpha(), params.beta(), params.gamma(), &rat(q.try_into().unwrap(), 1))?;
        Ok(PAdic::from_rational(&v, c))
    };
    let f1 = |z: &PAdic| disk1_basis(&params, z, &branch).map(|b| b.0);
    let f2 = |z: &PAdic| disk1_basis(&params, z, &branch).map(|b| b.1);
    let fit = fit_connection_constants(&lhs, &f1, &f2, &points).unwrap();
    assert!(fit.c2.agrees_mod(&PAdic::zero(c), 4), "c2 = {}", fit.c2);
    assert!(fit.residual_valuation().is_none_or(|v| v >= 4));
    // The fit reproduces the terminating value at 1.
    let at_one = hg_polynomial_value(params.alpha(), params.beta(), params.gamma(), &rat(1, 1)).unwrap();
    assert!(fit.c1.agrees_mod(&PAdic::from_rational(&at_one, c), 4));
}

#[test]
fn disk_routing() {
    let c = ctx(5, 6);
    let d = |q| classify(&PAdic::from_rational(&q, c));
    assert_eq!(d(rat(1, 5)), Disk::Infinity);
    assert_eq!(d(rat(6, 1)), Disk::One);
    assert_eq!(d(rat(10, 1)), Disk::Zero);
    assert_eq!(d(rat(0, 1)), Disk::Zero);
    assert_eq!(d(rat(2, 1)), Disk::RootOfUnity);
    assert_eq!(d(rat(1, 1)), Disk::One);
}

#[test]
fn disk_one_needs_an_odd_prime_and_a_zp_branch() {
    let p2 = HGParams::new(2, rat(2, 1), rat(4, 1), rat(3, 1)).unwrap();
    let c2 = ctx(2, 8);
    let err = hg_disk1_eval(&p2, &PAdic::from_int(3, c2), &Branch::default()).unwrap_err();
    assert!(matches!(err, Error::Hypothesis { flag: Hypothesis::OddPrime, .. }));
    let c = ctx(5, 6);
    let err = hg_disk1_eval(&corner(), &PAdic::from_int(6, c), &Branch::new(rat(1, 5))).unwrap_err();
    assert!(matches!(err, Error::Hypothesis { flag: Hypothesis::BranchInZp, .. }));
}

#[test]
fn infinity_basis_rejects_large_branches() {
    let c = ctx(5, 6);
    let z = PAdic::from_rational(&rat(1, 5), c);
    let err = hg_diskinfty_basis(&corner(), &z, &Branch::new(rat(1, 5))).unwrap_err();
    assert!(matches!(err, Error::Hypothesis { flag: Hypothesis::BranchSmallAgainstParams, .. }));
    assert!(matches!(hg_diskinfty_basis(&corner(), &PAdic::from_int(6, c), &Branch::default()), Err(Error::WrongDisk(..))));
}

#[test]
fn square_root_of_a_principal_unit() {
    // (1+p)^(1/2) through exp(log / 2); the power map itself needs |lambda| < 1.
    let c = ctx(5, 8);
    let u = PAdic::from_int(6, c);
    let l = plog(&u, &Branch::default()).unwrap();
    let r = pexp(&l.mul_rational(&rat(1, 2))).unwrap();
    assert!((&r * &r).agrees_mod(&u, 8));
    let err = ppow_rational(&u, &rat(1, 2), &Branch::default()).unwrap_err();
    assert!(matches!(err, Error::Hypothesis { flag: Hypothesis::ExponentSmall, .. }));
}
