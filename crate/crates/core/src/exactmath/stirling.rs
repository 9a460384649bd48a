use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::IntPolynomial;

// Rows s(n, 0..=n) of the signed triangle, grown on demand.
fn table() -> &'static Mutex<Vec<Vec<BigInt>>> {
    static TABLE: OnceLock<Mutex<Vec<Vec<BigInt>>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(vec![vec![BigInt::one()]]))
}

/// Signed Stirling number of the first kind `s(n, k)`.
///
/// These are the coefficients of the falling factorial,
/// `(x)_n = sum_k s(n, k) x^k`, built from
/// `s(n+1, k) = s(n, k-1) - n s(n, k)` with `s(0, 0) = 1`.
/// Returns zero whenever `k > n`.
pub fn stirling_first(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut rows = table().lock().unwrap_or_else(|e| e.into_inner());
    while rows.len() <= n {
        let m = rows.len() - 1;
        let prev = &rows[m];
        let mf = BigInt::from(m);
        let next: Vec<BigInt> = (0..=m + 1)
            .map(|j| {
                let left = if j >= 1 { prev[j - 1].clone() } else { BigInt::zero() };
                let right = prev.get(j).map(|s| &mf * s).unwrap_or_else(BigInt::zero);
                left - right
            })
            .collect();
        rows.push(next);
    }
    rows[n][k].clone()
}

/// `(x)_n = x (x-1) ... (x-n+1)` as a polynomial, by direct multiplication.
pub fn falling_factorial_poly(n: usize) -> IntPolynomial {
    (0..n as i64).fold(IntPolynomial::one(), |acc, j| {
        &acc * &IntPolynomial::affine(-j, 1)
    })
}
