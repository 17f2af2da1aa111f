//! Integer and rational helpers: valuations, digit sums, factorial orders, Pochhammer symbols.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Rational;

/// Splits a nonzero integer as `p^v * rest` with `p` not dividing `rest`.
pub fn v_p_int(n: &BigInt, p: u64) -> (u32, BigInt) {
    assert!(!n.is_zero(), "valuation of zero");
    let pb = BigInt::from(p);
    let mut v = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            return (v, m);
        }
        m = q;
        v += 1;
    }
}

/// `ord_p(q)`; `None` for `q = 0`.
pub fn v_p(q: &Rational, p: u64) -> Option<i64> {
    if q.is_zero() {
        return None;
    }
    let (a, _) = v_p_int(q.numer(), p);
    let (b, _) = v_p_int(q.denom(), p);
    Some(a as i64 - b as i64)
}

/// True when `q` lies in `Z_(p)`, i.e. its denominator is prime to `p`.
pub fn in_z_local(q: &Rational, p: u64) -> bool {
    !(q.denom() % BigInt::from(p)).is_zero()
}

/// Inverse of `a` modulo `m`, in `[0, m)`.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

pub fn pow_u64(p: u64, k: u32) -> Option<u64> {
    p.checked_pow(k)
}

/// `floor(log_p n)` for `n >= 1`.
pub fn ilog(p: u64, n: u64) -> u32 {
    assert!(n >= 1);
    n.ilog(p)
}

/// `floor(log_p n)` for a big `n >= 1`.
pub fn ilog_big(p: u64, n: &BigUint) -> u32 {
    assert!(!n.is_zero());
    let pb = BigUint::from(p);
    let mut k = 0;
    let mut m = n / &pb;
    while !m.is_zero() {
        k += 1;
        m /= &pb;
    }
    k
}

/// Sum of the base-p digits of `n`.
pub fn digit_sum(mut n: u64, p: u64) -> u64 {
    let mut s = 0;
    while n > 0 {
        s += n % p;
        n /= p;
    }
    s
}

pub fn digit_sum_big(n: &BigUint, p: u64) -> BigUint {
    let pb = BigUint::from(p);
    let mut s = BigUint::zero();
    let mut m = n.clone();
    while !m.is_zero() {
        let (q, r) = m.div_rem(&pb);
        s += r;
        m = q;
    }
    s
}

/// `ord_p(n!) = (n - s_p(n)) / (p - 1)`.
pub fn ord_factorial(n: u64, p: u64) -> u64 {
    (n - digit_sum(n, p)) / (p - 1)
}

pub fn ord_factorial_big(n: &BigUint, p: u64) -> BigUint {
    (n - digit_sum_big(n, p)) / BigUint::from(p - 1)
}

/// Rising factorial `(s)_n = s (s+1) ... (s+n-1)`, exactly.
pub fn pochhammer(s: &Rational, n: u64) -> Rational {
    let mut acc = Rational::one();
    let mut t = s.clone();
    for _ in 0..n {
        if t.is_zero() {
            return Rational::zero();
        }
        acc *= &t;
        t += Rational::one();
    }
    acc
}

/// `ord_p((s)_n)`, summing factor valuations; `None` when the product vanishes.
pub fn ord_pochhammer(s: &Rational, n: u64, p: u64) -> Option<i64> {
    let mut acc = 0i64;
    let mut t = s.clone();
    for _ in 0..n {
        acc += v_p(&t, p)?;
        t += Rational::one();
    }
    Some(acc)
}

/// True when `q` is an integer `<= 0`.
pub fn is_nonpositive_integer(q: &Rational) -> bool {
    q.is_integer() && !q.is_positive()
}

/// True when `q` is a nonzero integer.
pub fn is_nonzero_integer(q: &Rational) -> bool {
    q.is_integer() && !q.is_zero()
}

/// Residue of `q` modulo `p^k` for `q` in `Z_(p)`, as a `u64` when it fits.
pub fn residue_u64(q: &Rational, p: u64, k: u32) -> Option<u64> {
    let m = BigInt::from(p.checked_pow(k)?);
    let inv = mod_inverse(q.denom(), &m)?;
    (q.numer() * inv).mod_floor(&m).to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn digit_sums() {
        assert_eq!(digit_sum(10, 3), 2);
        assert_eq!(digit_sum(7, 2), 3);
        assert_eq!(digit_sum(0, 5), 0);
    }

    #[test]
    fn factorial_orders() {
        assert_eq!(ord_factorial(4, 2), 3);
        assert_eq!(ord_factorial(5, 5), 1);
        // Legendre: floor(10/3) + floor(10/9).
        assert_eq!(ord_factorial(10, 3), 3 + 1);
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(&rat(7, 9), 0), rat(1, 1));
        assert_eq!(pochhammer(&rat(2, 1), 3), rat(24, 1));
        assert_eq!(pochhammer(&rat(-5, 1), 7), rat(0, 1));
        assert_eq!(pochhammer(&rat(1, 2), 2), rat(3, 4));
    }

    #[test]
    fn valuations() {
        assert_eq!(v_p(&rat(75, 1), 5), Some(2));
        assert_eq!(v_p(&rat(7, 5), 5), Some(-1));
        assert_eq!(v_p(&rat(0, 1), 5), None);
        assert!(in_z_local(&rat(8, 3), 5));
        assert!(!in_z_local(&rat(8, 5), 5));
    }

    #[test]
    fn inverses() {
        let m = BigInt::from(15625);
        assert_eq!(mod_inverse(&BigInt::from(2), &m), Some(BigInt::from(7813)));
        assert_eq!(mod_inverse(&BigInt::from(5), &m), None);
        assert_eq!(mod_inverse(&BigInt::from(-1), &m), Some(BigInt::from(15624)));
    }

    #[test]
    fn logs() {
        assert_eq!(ilog(5, 1), 0);
        assert_eq!(ilog(5, 24), 1);
        assert_eq!(ilog(5, 25), 2);
        assert_eq!(ilog_big(5, &BigUint::from(125u32)), 3);
    }
}
