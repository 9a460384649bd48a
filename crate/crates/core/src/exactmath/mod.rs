//! Exact combinatorial primitives and floating-point gamma/beta.
//!
//! Rationals are `num_rational::BigRational`, which reduces to lowest terms
//! after every operation and keeps the denominator positive.

mod bell;
mod gamma;
mod poly;
mod stirling;

pub use bell::bell_partial;
pub use gamma::{beta, gamma};
pub use poly::IntPolynomial;
pub use stirling::{falling_factorial_poly, stirling_first};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

use num_traits::{One, ToPrimitive};

/// Rising factorial `a (a+1) ... (a+k-1)`, with `a^(0) = 1`.
pub fn rising_factorial(a: &BigRational, k: u32) -> BigRational {
    let mut acc = BigRational::one();
    let mut term = a.clone();
    for _ in 0..k {
        acc *= &term;
        term += BigRational::one();
    }
    acc
}

/// `n!` as a big integer.
pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Integer ratio helper: `num / den` in lowest terms.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Nearest `f64` to an exact rational.
///
/// Goes through big-integer division scaled so that both parts stay finite
/// even when numerator and denominator individually overflow `f64`.
pub fn to_f64(q: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let nb = q.numer().bits() as i64;
    let db = q.denom().bits() as i64;
    // 64 extra bits of quotient is more than enough for a correctly rounded-ish double.
    let shift = 64 - (nb - db);
    let scaled = if shift >= 0 {
        (q.numer() << shift as usize) / q.denom()
    } else {
        q.numer() / (q.denom() << (-shift) as usize)
    };
    let half = (-shift / 2) as i32;
    let rest = (-shift) as i32 - half;
    scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(half) * 2f64.powi(rest)
}

/// Render a rational as `"n/d"`, or `"n"` when the denominator is one.
pub fn fraction_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
