//! Multiple polylogarithms `Li_k(w) = sum_{0<m_1<...<m_n} w^(m_n) / (m_1^(k_1) ... m_n^(k_n))`
//! truncated in `w`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::ncpoly::NCPoly;
use super::series::{Caps, TruncSeries};
use super::word::word_to_index;
use crate::error::{Error, Result};
use crate::Rational;

fn inv_pow(m: usize, k: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(m).pow(k))
}

/// Coefficients `0..=order` of `Li_k` by the nested sum. The empty index gives `1`.
pub fn mpl_coefficients(k: &[u32], order: u32) -> Vec<Rational> {
    let len = order as usize + 1;
    let mut s = vec![Rational::zero(); len];
    s[0] = Rational::one();
    for &kj in k {
        // s_j(m) = m^(-k_j) sum_{m' < m} s_(j-1)(m'), treating the constant as m' = 0.
        let mut next = vec![Rational::zero(); len];
        let mut run = Rational::zero();
        for m in 1..len {
            run += &s[m - 1];
            if !run.is_zero() {
                next[m] = &run * inv_pow(m, kj);
            }
        }
        s = next;
    }
    s
}

/// Coefficients of `Li_k` from the differential system:
/// `w d/dw Li_(k', k) = Li_(k', k-1)` for `k > 1` and `(1-w) d/dw Li_(k', 1) = Li_(k')`.
pub fn mpl_coefficients_ode(k: &[u32], order: u32) -> Vec<Rational> {
    let len = order as usize + 1;
    if k.is_empty() {
        let mut one = vec![Rational::zero(); len];
        one[0] = Rational::one();
        return one;
    }
    let (last, rest) = k.split_last().expect("nonempty");
    if *last > 1 {
        let mut prev = rest.to_vec();
        prev.push(last - 1);
        let cp = mpl_coefficients_ode(&prev, order);
        (0..len)
            .map(|m| if m == 0 { Rational::zero() } else { &cp[m] / Rational::from_integer(m.into()) })
            .collect()
    } else {
        let cp = mpl_coefficients_ode(rest, order);
        let mut c = vec![Rational::zero(); len];
        for m in 0..len - 1 {
            // (m+1) c_(m+1) - m c_m = c'_m
            let mm = Rational::from_integer(m.into());
            c[m + 1] = (&cp[m] + &mm * &c[m]) / (mm + Rational::one());
        }
        c
    }
}

pub fn mpl_series(k: &[u32], caps: Caps) -> TruncSeries {
    TruncSeries::from_w_coefficients(&mpl_coefficients(k, caps.w), caps)
}

pub fn mpl_series_ode(k: &[u32], caps: Caps) -> TruncSeries {
    TruncSeries::from_w_coefficients(&mpl_coefficients_ode(k, caps.w), caps)
}

/// `Li` extended linearly to `Q 1 + M'`, with `Li(1) = 1`.
pub fn li_of_poly(x: &NCPoly, caps: Caps) -> Result<TruncSeries> {
    let mut acc = TruncSeries::constant(x.unit().clone(), caps);
    for (w, c) in x.terms() {
        if !w.ends_in_t1() {
            return Err(Error::NotInMPrime(w.to_string()));
        }
        acc = &acc + &mpl_series(&word_to_index(w)?, caps).scale(c);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal::word::compositions;
    use crate::rat;

    #[test]
    fn depth_one() {
        let c = mpl_coefficients(&[1], 6);
        for m in 1..=6 {
            assert_eq!(c[m], rat(1, m as i64));
        }
        let c2 = mpl_coefficients(&[2], 6);
        for m in 1..=6 {
            assert_eq!(c2[m], rat(1, (m * m) as i64));
        }
        assert_eq!(c[0], rat(0, 1));
    }

    #[test]
    fn li_one_two_by_double_sum() {
        let c = mpl_coefficients(&[1, 2], 5);
        // Direct: sum over m1 < m2 of 1/(m1 m2^2).
        for m2 in 1..=5i64 {
            let mut s = rat(0, 1);
            for m1 in 1..m2 {
                s += rat(1, m1 * m2 * m2);
            }
            assert_eq!(c[m2 as usize], s);
        }
        assert_eq!(c[2], rat(1, 4));
        assert_eq!(c[3], rat(1, 6));
    }

    #[test]
    fn sum_matches_ode_to_weight_five() {
        for wt in 1..=5 {
            for k in compositions(wt) {
                assert_eq!(mpl_coefficients(&k, 12), mpl_coefficients_ode(&k, 12), "{k:?}");
            }
        }
    }
}
