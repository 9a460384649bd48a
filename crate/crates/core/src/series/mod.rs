//! Exact Taylor series of `arcsin_p` and `sin_p` for integer `p >= 2`.

mod bracket;
mod power_series;
mod rigidity;

pub use bracket::{
    first_term_coefficient, first_term_key, sin_derivatives, Affine, BracketExpr, BracketTerm,
};
pub use power_series::PowerSeries;
pub use rigidity::{rigidity_report, supports_match, RigidityReport, RigidityRow};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactmath::{bell_partial, factorial, gamma, rising_factorial, to_f64};

pub const MAX_ORDER: usize = 200;

fn check_p(p: u32, max_order: usize) -> Result<()> {
    if p < 2 {
        return Err(Error::argument(format!("series need integer p >= 2, got {p}")));
    }
    if max_order > MAX_ORDER {
        return Err(Error::argument(format!(
            "max_order {max_order} exceeds the limit {MAX_ORDER}"
        )));
    }
    Ok(())
}

/// `((p-1)/p)^(k) (kp)! / k!`, the `(kp+1)`-th derivative of `arcsin_p` at 0.
fn arcsin_nonzero_derivative(p: u32, k: u32) -> BigRational {
    let a = BigRational::new(BigInt::from(p - 1), BigInt::from(p));
    let f = BigRational::new(factorial(k * p), factorial(k));
    rising_factorial(&a, k) * f
}

/// Maclaurin series of `arcsin_p` to `max_order`.
pub fn arcsin_series(p: u32, max_order: usize) -> Result<PowerSeries> {
    check_p(p, max_order)?;
    let mut c = vec![BigRational::zero(); max_order + 1];
    let p_us = p as usize;
    for (k, l) in (1..=max_order).step_by(p_us).enumerate() {
        c[l] = arcsin_nonzero_derivative(p, k as u32);
    }
    Ok(PowerSeries::new(c))
}

/// `l`-th derivative of `arcsin_n` at zero.
pub fn arcsin_derivative_at_zero(n: u32, l: u32) -> Result<BigRational> {
    check_p(n, 0)?;
    if l == 0 {
        return Err(Error::argument("derivative order must be positive"));
    }
    if l % n != 1 {
        return Ok(BigRational::zero());
    }
    Ok(arcsin_nonzero_derivative(n, (l - 1) / n))
}

fn factorial_ratio_f64(n: u32, k: u32) -> f64 {
    to_f64(&BigRational::new(factorial(k * n), factorial(k)))
}

/// The same derivative through `Γ(k+1-1/n) / Γ(1-1/n) · (kn)!/k!`.
pub fn arcsin_derivative_gamma(n: u32, l: u32) -> Result<f64> {
    check_p(n, 0)?;
    if l == 0 {
        return Err(Error::argument("derivative order must be positive"));
    }
    if l % n != 1 {
        return Ok(0.0);
    }
    let k = (l - 1) / n;
    let s = 1.0 / n as f64;
    Ok(gamma(k as f64 + 1.0 - s)? / gamma(1.0 - s)? * factorial_ratio_f64(n, k))
}

/// Variant with the gamma argument lowered by one, `Γ(k-1/n)`.
///
/// This does not equal the derivative: at `n = 2, l = 3` it gives 2 where the
/// true value is 1. It is undefined for `k = 0`.
pub fn arcsin_derivative_gamma_shifted(n: u32, l: u32) -> Result<f64> {
    check_p(n, 0)?;
    if l == 0 {
        return Err(Error::argument("derivative order must be positive"));
    }
    if l % n != 1 {
        return Ok(0.0);
    }
    let k = (l - 1) / n;
    if k == 0 {
        return Err(Error::domain("Γ(k - 1/n) has no value at k = 0"));
    }
    let s = 1.0 / n as f64;
    Ok(gamma(k as f64 - s)? / gamma(1.0 - s)? * factorial_ratio_f64(n, k))
}

/// Compositional inverse by Lagrange inversion.
///
/// Needs `f_0 = 0` and `f_1 != 0`; the result has the order of `f`.
pub fn lagrange_invert(f: &PowerSeries) -> Result<PowerSeries> {
    if !f.coeff(0).is_zero() {
        return Err(Error::argument(format!(
            "lagrange_invert needs f_0 = 0, got f_0 = {}",
            f.coeff(0)
        )));
    }
    if f.order() < 1 || f.coeff(1).is_zero() {
        return Err(Error::argument("lagrange_invert needs f_1 != 0"));
    }
    let order = f.order();
    let f1 = f.coeff(1).clone();
    // fhat_k = f_{k+1} / ((k+1) f_1), k = 1..order-1
    let fhat: Vec<BigRational> = (1..order)
        .map(|k| f.coeff(k + 1) / (&f1 * BigRational::from_integer(BigInt::from(k + 1))))
        .collect();

    let higher: Vec<Result<BigRational>> = (2..=order)
        .into_par_iter()
        .map(|n| {
            let mut sum = BigRational::zero();
            for k in 1..n {
                let b = bell_partial(n - 1, k, &fhat[..n - k])?;
                if b.is_zero() {
                    continue;
                }
                let rising = rising_factorial(&BigRational::from_integer(BigInt::from(n)), k as u32);
                let term = rising * b;
                if k % 2 == 1 {
                    sum -= term;
                } else {
                    sum += term;
                }
            }
            Ok(sum / num_traits::pow(f1.clone(), n))
        })
        .collect();

    let mut g = Vec::with_capacity(order + 1);
    g.push(BigRational::zero());
    g.push(f1.recip());
    for c in higher {
        g.push(c?);
    }
    Ok(PowerSeries::new(g))
}

/// Maclaurin series of `sin_p` to `max_order`.
pub fn sin_series(p: u32, max_order: usize) -> Result<PowerSeries> {
    lagrange_invert(&arcsin_series(p, max_order)?)
}

/// `d/dx` of a bracket expression.
pub fn bracket_differentiate(e: &BracketExpr) -> BracketExpr {
    e.differentiate()
}

/// Limit of `sin_p(x) / x` at zero, read off the series.
pub fn sinc_limit_check(p: u32) -> Result<BigRational> {
    Ok(sin_series(p, 1)?.coeff(1).clone())
}
