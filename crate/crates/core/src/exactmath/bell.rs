use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::factorial;
use crate::error::{Error, Result};

/// Partial exponential Bell polynomial `B_{n,k}(x_1, ..., x_{n-k+1})`.
///
/// Sums `n! / prod(j_i!) * prod((x_i / i!)^{j_i})` over every sequence of
/// non-negative `j_i` with `sum j_i = k` and `sum i j_i = n`. Indices whose
/// argument is zero are skipped during enumeration, which keeps the sparse
/// inputs produced by `p`-trigonometric series cheap.
pub fn bell_partial(n: usize, k: usize, x: &[BigRational]) -> Result<BigRational> {
    if n == 0 || k == 0 || k > n {
        return Err(Error::argument(format!(
            "bell_partial requires 1 <= k <= n, got n = {n}, k = {k}"
        )));
    }
    let len = n - k + 1;
    if x.len() != len {
        return Err(Error::argument(format!(
            "B_{{{n},{k}}} takes {len} arguments, got {}",
            x.len()
        )));
    }
    // scaled[i-1] = x_i / i!
    let scaled: Vec<BigRational> = x
        .iter()
        .enumerate()
        .map(|(i, xi)| xi / BigRational::from_integer(factorial(i as u32 + 1)))
        .collect();
    let mut total = BigRational::zero();
    let mut acc = Enumeration {
        scaled: &scaled,
        total: &mut total,
    };
    acc.walk(len, k, n, BigRational::one());
    Ok(total * BigRational::from_integer(factorial(n as u32)))
}

struct Enumeration<'a> {
    scaled: &'a [BigRational],
    total: &'a mut BigRational,
}

impl Enumeration<'_> {
    // Choose j_i for i = index, index-1, ..., 1 given the remaining part count and weight.
    // `weight` carries prod (x_i/i!)^{j_i} / j_i! for the indices chosen so far.
    fn walk(&mut self, index: usize, parts: usize, remaining: usize, weight: BigRational) {
        if index == 0 {
            if parts == 0 && remaining == 0 {
                *self.total += weight;
            }
            return;
        }
        // Indices 1..=index can absorb at most parts*index weight and at least parts.
        if remaining > parts * index || remaining < parts {
            return;
        }
        let xi = &self.scaled[index - 1];
        let max_j = if xi.is_zero() {
            0
        } else {
            parts.min(remaining / index)
        };
        let mut w = weight;
        for j in 0..=max_j {
            if j > 0 {
                w = w * xi / BigRational::from_integer(BigInt::from(j));
            }
            self.walk(index - 1, parts - j, remaining - j * index, w.clone());
        }
    }
}
