//! Nonzero-pattern comparison between a series and its inverse.

use num_traits::Zero;
use serde::Serialize;

use super::{arcsin_series, sin_series, PowerSeries};
use crate::error::{Error, Result};
use crate::exactmath::fraction_string;

pub const MAX_DEPTH: usize = 60;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RigidityRow {
    pub order: usize,
    pub arcsin_coefficient: String,
    pub sin_coefficient: String,
    pub arcsin_nonzero: bool,
    pub sin_nonzero: bool,
    /// Both nonzero.
    pub both_nonzero: bool,
    /// `order ≡ 1 (mod n)`
    pub expected_nonzero: bool,
}

impl RigidityRow {
    pub fn matches_pattern(&self) -> bool {
        self.arcsin_nonzero == self.expected_nonzero && self.sin_nonzero == self.expected_nonzero
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RigidityReport {
    pub n: u32,
    pub depth: usize,
    pub rows: Vec<RigidityRow>,
    /// The two series are nonzero at the same orders.
    pub supports_agree: bool,
    /// Every order follows `l ≡ 1 (mod n)`.
    pub pattern_holds: bool,
    pub status: String,
}

impl RigidityReport {
    /// Orders at which the arcsin and sin coefficients are both nonzero.
    pub fn nonzero_orders(&self) -> Vec<usize> {
        self.rows.iter().filter(|r| r.both_nonzero).map(|r| r.order).collect()
    }
}

/// Checks the `l ≡ 1 (mod n)` rule on exact coefficients up to `depth`.
pub fn rigidity_report(n: u32, depth: usize) -> Result<RigidityReport> {
    if depth > MAX_DEPTH {
        return Err(Error::argument(format!(
            "rigidity depth {depth} exceeds the limit {MAX_DEPTH}"
        )));
    }
    let f = arcsin_series(n, depth)?;
    let g = sin_series(n, depth)?;
    let rows: Vec<RigidityRow> = (1..=depth)
        .map(|l| {
            let a = f.coeff(l);
            let s = g.coeff(l);
            RigidityRow {
                order: l,
                arcsin_coefficient: fraction_string(a),
                sin_coefficient: fraction_string(s),
                arcsin_nonzero: !a.is_zero(),
                sin_nonzero: !s.is_zero(),
                both_nonzero: !a.is_zero() && !s.is_zero(),
                expected_nonzero: l % n as usize == 1,
            }
        })
        .collect();
    let supports_agree = rows.iter().all(|r| r.arcsin_nonzero == r.sin_nonzero);
    let pattern_holds = rows.iter().all(RigidityRow::matches_pattern);
    let status = if pattern_holds {
        format!(
            "conjecture check: consistent through order {depth} for n = {n} (verified, not proven)"
        )
    } else {
        let bad: Vec<String> = rows
            .iter()
            .filter(|r| !r.matches_pattern())
            .map(|r| r.order.to_string())
            .collect();
        format!(
            "conjecture check: pattern fails for n = {n} at orders {}",
            bad.join(", ")
        )
    };
    Ok(RigidityReport {
        n,
        depth,
        rows,
        supports_agree,
        pattern_holds,
        status,
    })
}

/// Whether two series are nonzero at the same positive orders, up to the
/// smaller truncation.
pub fn supports_match(f: &PowerSeries, g: &PowerSeries) -> bool {
    let order = f.order().min(g.order());
    (1..=order).all(|k| f.coeff(k).is_zero() == g.coeff(k).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::BigRational;
    use crate::series::lagrange_invert;
    use num_bigint::BigInt;

    #[test]
    fn odd_orders_for_classical_sine() {
        let r = rigidity_report(2, 9).unwrap();
        assert_eq!(r.nonzero_orders(), vec![1, 3, 5, 7, 9]);
        assert!(r.pattern_holds && r.supports_agree);
        assert!(r.status.contains("not proven"));
    }

    #[test]
    fn quartic_progression() {
        let r = rigidity_report(4, 13).unwrap();
        assert_eq!(r.nonzero_orders(), vec![1, 5, 9, 13]);
        assert!(r.rows.iter().all(|row| row.arcsin_nonzero == row.sin_nonzero));
    }

    #[test]
    fn cubic_progression() {
        let r = rigidity_report(3, 10).unwrap();
        assert_eq!(r.nonzero_orders(), vec![1, 4, 7, 10]);
        assert!(r.pattern_holds);
    }

    #[test]
    fn depth_limit() {
        assert!(matches!(rigidity_report(2, 61), Err(Error::Argument(_))));
    }

    #[test]
    fn square_is_not_rigid() {
        // x^2 about 1 is 1 + 2u + u^2; its inverse sqrt about 1 has every
        // derivative nonzero
        let q = |v: i64| BigRational::from_integer(BigInt::from(v));
        let f = PowerSeries::new(vec![q(0), q(2), q(2), q(0), q(0), q(0), q(0)]);
        let g = lagrange_invert(&f).unwrap();
        assert_eq!(g.support(), vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(f.support(), vec![1, 2]);
        assert!(!supports_match(&f, &g));
        let s = crate::series::sin_series(5, 21).unwrap();
        let a = arcsin_series(5, 21).unwrap();
        assert!(supports_match(&a, &s));
    }
}
