use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::exactmath::{factorial, fraction_string, to_f64};

/// Truncated power series `Σ_{k<=order} c_k z^k / k!` with exact coefficients.
///
/// Coefficients are stored factorial-normalized, so `c_k` is the `k`-th
/// derivative at zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

impl PowerSeries {
    /// From factorial-normalized coefficients `c_0, ..., c_order`.
    ///
    /// # Panics
    /// If `coeffs` is empty.
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a power series needs at least c_0");
        PowerSeries { coeffs }
    }

    /// From ordinary coefficients `a_k` of `Σ a_k z^k`.
    pub fn from_ordinary(ordinary: Vec<BigRational>) -> Self {
        let coeffs = ordinary
            .into_iter()
            .enumerate()
            .map(|(k, a)| a * BigRational::from_integer(factorial(k as u32)))
            .collect();
        PowerSeries::new(coeffs)
    }

    pub fn identity(order: usize) -> Self {
        let mut c = vec![BigRational::zero(); order + 1];
        if order >= 1 {
            c[1] = BigRational::one();
        }
        PowerSeries::new(c)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Factorial-normalized coefficient `c_k` (the `k`-th derivative at 0).
    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    /// Ordinary coefficient `c_k / k!`.
    pub fn ordinary(&self, k: usize) -> BigRational {
        &self.coeffs[k] / BigRational::from_integer(factorial(k as u32))
    }

    pub fn ordinary_coeffs(&self) -> Vec<BigRational> {
        (0..=self.order()).map(|k| self.ordinary(k)).collect()
    }

    /// Orders with a nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        (0..=self.order()).filter(|&k| !self.coeffs[k].is_zero()).collect()
    }

    /// Partial sum at a floating-point argument.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.ordinary_coeffs()
            .iter()
            .rev()
            .fold(0.0, |acc, a| acc * x + to_f64(a))
    }

    /// Truncated composition `self(inner(z))`; requires `inner` to have no
    /// constant term. The result has the smaller of the two orders.
    pub fn compose(&self, inner: &PowerSeries) -> Option<PowerSeries> {
        if !inner.coeffs[0].is_zero() {
            return None;
        }
        let order = self.order().min(inner.order());
        let g: Vec<BigRational> = (0..=order).map(|k| inner.ordinary(k)).collect();
        let outer: Vec<BigRational> = (0..=order).map(|k| self.ordinary(k)).collect();
        // Horner over truncated polynomials
        let mut acc = vec![BigRational::zero(); order + 1];
        for a in outer.iter().rev() {
            let mut next = vec![BigRational::zero(); order + 1];
            for (i, ai) in acc.iter().enumerate() {
                if ai.is_zero() {
                    continue;
                }
                for (j, gj) in g.iter().enumerate().take(order + 1 - i) {
                    if !gj.is_zero() {
                        next[i + j] += ai * gj;
                    }
                }
            }
            next[0] += a;
            acc = next;
        }
        Some(PowerSeries::from_ordinary(acc))
    }

    /// Coefficients as exact `"n/d"` strings.
    pub fn fraction_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(fraction_string).collect()
    }
}

impl Serialize for PowerSeries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PowerSeries", 2)?;
        st.serialize_field("order", &self.order())?;
        st.serialize_field("coefficients", &self.fraction_strings())?;
        st.end()
    }
}
