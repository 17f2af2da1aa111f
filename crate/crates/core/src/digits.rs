//! Digit data of `eta = -gamma` in `Z_p`: partial sums `t`, next-distinct partial sums `T`,
//! nonzero-digit positions and the ratios `m_n / p^(m_(n-1))`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{in_z_local, mod_inverse};
use crate::error::{Error, Result};
use crate::padic::{PAdic, PrimeContext};
use crate::Rational;

/// Base-p digits of `-gamma` to a fixed depth, with the derived statistics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitProfile {
    p: u64,
    eta: Rational,
    /// `digits[i]` is the coefficient of `p^i`; `digits.len()` is the depth.
    digits: Vec<u64>,
    positions: Vec<usize>,
    nonzero: Vec<u64>,
    partial_s: Vec<Rational>,
}

impl DigitProfile {
    /// Expands `-gamma` to `depth` digits. `gamma` must lie in `Z_(p)`.
    pub fn new(gamma: &Rational, p: u64, depth: usize) -> Result<Self> {
        if !in_z_local(gamma, p) {
            return Err(Error::NotInZpLocal(gamma.to_string()));
        }
        let eta = -gamma.clone();
        let digits = expand(&eta, p, depth);
        let positions: Vec<usize> =
            digits.iter().enumerate().filter(|(_, d)| **d != 0).map(|(i, _)| i).collect();
        let nonzero = positions.iter().map(|&i| digits[i]).collect();
        let pb = BigInt::from(p);
        let partial_s = positions
            .windows(2)
            .map(|w| Rational::new(BigInt::from(w[1]), pb.pow(w[0] as u32)))
            .collect();
        Ok(DigitProfile { p, eta, digits, positions, nonzero, partial_s })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn eta(&self) -> &Rational {
        &self.eta
    }

    pub fn eta_padic(&self, ctx: PrimeContext) -> PAdic {
        PAdic::from_rational(&self.eta, ctx)
    }

    pub fn depth(&self) -> usize {
        self.digits.len()
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    /// Ascending positions `m_0 < m_1 < ...` of the nonzero digits within the depth.
    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    /// The nonzero digits `c_i`, aligned with [`positions`](Self::positions).
    pub fn nonzero_digits(&self) -> &[u64] {
        &self.nonzero
    }

    /// `partial_s()[n - 1] = m_n / p^(m_(n-1))`.
    pub fn partial_s(&self) -> &[Rational] {
        &self.partial_s
    }

    /// `lim sup m_n / p^(m_(n-1))`. For rational `eta` the expansion is eventually
    /// periodic, so positions grow linearly and the limit is `0`.
    pub fn s_limit(&self) -> Option<Rational> {
        Some(Rational::zero())
    }

    fn is_nonnegative_integer(&self) -> bool {
        self.eta.is_integer() && !self.eta.is_negative()
    }

    /// `t(eta; k) = e_0 + e_1 p + ... + e_k p^k`.
    pub fn t(&self, k: usize) -> Result<BigUint> {
        if k >= self.digits.len() {
            return Err(Error::DepthExhausted(self.digits.len()));
        }
        let pb = BigUint::from(self.p);
        let mut acc = BigUint::zero();
        for &d in self.digits[..=k].iter().rev() {
            acc = acc * &pb + BigUint::from(d);
        }
        Ok(acc)
    }

    /// `T(eta; k)`: the smallest partial sum `t(eta; h)`, `h > k`, distinct from `t(eta; k)`.
    pub fn big_t(&self, k: usize) -> Result<BigUint> {
        match self.positions.iter().find(|&&m| m > k) {
            Some(&h) => self.t(h),
            None if self.is_nonnegative_integer() && self.eta_fits_depth() => {
                Err(Error::UndefinedDigitSum(k))
            }
            None => Err(Error::DepthExhausted(self.digits.len())),
        }
    }

    fn eta_fits_depth(&self) -> bool {
        let bound = BigInt::from(self.p).pow(self.digits.len() as u32);
        self.eta.numer() < &bound
    }

    /// Reconstructs `eta` modulo `p^(k+1)` from positions and digits only.
    pub fn reconstruct(&self, k: usize) -> BigUint {
        let pb = BigUint::from(self.p);
        self.positions
            .iter()
            .zip(&self.nonzero)
            .filter(|(&m, _)| m <= k)
            .map(|(&m, &c)| BigUint::from(c) * pb.pow(m as u32))
            .sum()
    }
}

fn expand(eta: &Rational, p: u64, depth: usize) -> Vec<u64> {
    let pb = BigInt::from(p);
    let den = eta.denom().clone();
    let inv = mod_inverse(&den, &pb).expect("denominator prime to p");
    let mut num = eta.numer().clone();
    let mut out = Vec::with_capacity(depth);
    for _ in 0..depth {
        let e = (&num * &inv).mod_floor(&pb);
        out.push(e.to_u64().expect("digit"));
        // (num/den - e) / p keeps the denominator.
        num = (num - &e * &den) / &pb;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn minus_one_partial_sums() {
        // gamma = 1, eta = -1: every digit is p - 1.
        let d = DigitProfile::new(&rat(1, 1), 5, 12).unwrap();
        for k in 0..8 {
            assert_eq!(d.t(k).unwrap(), BigUint::from(5u64.pow(k as u32 + 1) - 1));
            assert_eq!(d.big_t(k).unwrap(), BigUint::from(5u64.pow(k as u32 + 2) - 1));
        }
    }

    #[test]
    fn rational_gamma_has_zero_s() {
        let d = DigitProfile::new(&rat(8, 3), 5, 30).unwrap();
        assert_eq!(d.s_limit(), Some(Rational::zero()));
        assert!(d.partial_s().last().unwrap() < &rat(1, 1000));
    }

    #[test]
    fn nonnegative_integer_eta_has_undefined_t() {
        // gamma = -7, eta = 7 = 2 + 1*5.
        let d = DigitProfile::new(&rat(-7, 1), 5, 6).unwrap();
        assert_eq!(d.positions(), &[0, 1]);
        assert_eq!(d.big_t(0).unwrap(), BigUint::from(7u32));
        assert_eq!(d.big_t(1), Err(Error::UndefinedDigitSum(1)));
    }

    #[test]
    fn depth_exhaustion_is_reported() {
        let d = DigitProfile::new(&rat(1, 1), 5, 3).unwrap();
        assert_eq!(d.big_t(2), Err(Error::DepthExhausted(3)));
    }

    #[test]
    fn rejects_gamma_outside_local_ring() {
        assert!(matches!(DigitProfile::new(&rat(1, 5), 5, 3), Err(Error::NotInZpLocal(_))));
    }
}
