//! Dense linear solves over p-adic numbers.

use crate::error::{Error, Result};
use crate::padic::PAdic;

/// Solves `a x = b` by Gaussian elimination, pivoting on the entry of least valuation.
///
/// Fails with [`Error::DegenerateSamples`] when a pivot column has no known nonzero entry.
pub fn solve(mut a: Vec<Vec<PAdic>>, mut b: Vec<PAdic>) -> Result<Vec<PAdic>> {
    let n = b.len();
    assert!(a.len() == n && a.iter().all(|r| r.len() == n), "square system");
    for col in 0..n {
        let pivot = (col..n)
            .filter(|&r| !a[r][col].is_zero_to_precision())
            .min_by_key(|&r| a[r][col].valuation().expect("nonzero pivot"))
            .ok_or_else(|| Error::DegenerateSamples(format!("no usable pivot in column {col}")))?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        for r in col + 1..n {
            if a[r][col].is_exact_zero() {
                continue;
            }
            let f = a[r][col].try_div(&a[col][col])?;
            for c in col..n {
                let t = &f * &a[col][c];
                a[r][c] = &a[r][c] - &t;
            }
            let t = &f * &b[col];
            b[r] = &b[r] - &t;
        }
    }
    let ctx = b[0].context();
    let mut x = vec![PAdic::zero(ctx); n];
    for r in (0..n).rev() {
        let mut acc = b[r].clone();
        for c in r + 1..n {
            acc = &acc - &(&a[r][c] * &x[c]);
        }
        x[r] = acc.try_div(&a[r][r])?;
    }
    Ok(x)
}
