//! Area, perimeter and curvature of the unit p-circle, the "halfway" values
//! of `p`, and rational points.

use std::f64::consts::PI;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactmath::fraction_string;
use crate::pi::quarter_area;
use crate::ptrig::PParam;
use crate::quadrature::{tanh_sinh, QuadratureConfig};
use crate::roots::brent;

/// Enclosed area `4 ∫_0^1 (1 - x^p)^{1/p} dx`.
pub fn area(p: PParam, cfg: &QuadratureConfig) -> Result<f64> {
    Ok(4.0 * quarter_area(p, cfg)?.value)
}

/// Euclidean length of the whole p-circle.
///
/// The quarter arc is symmetric about the diagonal, so the integral runs
/// over `[0, 2^{-1/p}]` only, where the slope stays in `[-1, 0]`.
pub fn perimeter(p: PParam, cfg: &QuadratureConfig) -> Result<f64> {
    let pv = p.value();
    let diag = 2f64.powf(-1.0 / pv);
    let q = tanh_sinh(
        |x, _, _| {
            let xp = x.powf(pv);
            let slope = (xp / (1.0 - xp)).powf((pv - 1.0) / pv);
            slope.hypot(1.0)
        },
        0.0,
        diag,
        cfg,
    )?;
    Ok(8.0 * q.value)
}

/// Curvature at a first-quadrant point of the p-circle.
pub fn curvature_implicit(x: f64, y: f64, p: PParam) -> Result<f64> {
    if !(x > 0.0 && y > 0.0 && x.is_finite() && y.is_finite()) {
        return Err(Error::domain(format!(
            "curvature needs a point strictly inside the first quadrant, got ({x}, {y})"
        )));
    }
    let pv = p.value();
    let residual = x.powf(pv) + y.powf(pv) - 1.0;
    if residual.abs() > 1e-6 {
        return Err(Error::domain(format!(
            "({x}, {y}) is off the p = {pv} circle by {residual:e}"
        )));
    }
    let (xp, yp) = (x.powf(pv), y.powf(pv));
    let num = xp * yp * yp + xp * xp * yp;
    let den = (xp * xp * y * y + yp * yp * x * x).powf(1.5);
    Ok((pv - 1.0) * num / den * x * y)
}

/// Curvature at the diagonal point `x = y = 2^{-1/p}`; the square (`p = 1`)
/// gets 0 by convention.
pub fn curvature_diagonal(p: PParam) -> f64 {
    let pv = p.value();
    (pv - 1.0) * 2f64.powf(1.0 / pv - 0.5)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Objective {
    Area,
    Perimeter,
    Curvature,
}

impl Objective {
    pub const ALL: [Objective; 3] = [Objective::Area, Objective::Perimeter, Objective::Curvature];

    pub fn bracket(self) -> (f64, f64) {
        match self {
            Objective::Area => (2.0, 6.0),
            Objective::Perimeter => (2.0, 10.0),
            Objective::Curvature => (1.0, 2.0),
        }
    }

    /// Midpoint between the circle and the enclosing square.
    pub fn target(self) -> f64 {
        match self {
            Objective::Area => (PI + 4.0) / 2.0,
            Objective::Perimeter => PI + 4.0,
            Objective::Curvature => 0.5,
        }
    }

    pub fn measure(self, p: f64, cfg: &QuadratureConfig) -> Result<f64> {
        let p = PParam::new(p)?;
        match self {
            Objective::Area => area(p, cfg),
            Objective::Perimeter => perimeter(p, cfg),
            Objective::Curvature => Ok(curvature_diagonal(p)),
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Objective::Area => "area",
            Objective::Perimeter => "perimeter",
            Objective::Curvature => "curvature",
        })
    }
}

impl std::str::FromStr for Objective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "area" => Ok(Objective::Area),
            "perimeter" => Ok(Objective::Perimeter),
            "curvature" => Ok(Objective::Curvature),
            other => Err(Error::argument(format!(
                "unknown objective {other:?}; expected area, perimeter or curvature"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimalResult {
    pub objective: Objective,
    pub p_star: f64,
    /// `measure(p_star) - target`
    pub residual: f64,
    pub bracket: (f64, f64),
    pub iterations: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

pub const DEFAULT_OPTIMAL_TOL: f64 = 1e-10;

/// The `p` at which the chosen measure is halfway between circle and square.
pub fn optimal_p(objective: Objective, tol: f64) -> Result<OptimalResult> {
    optimal_p_in(objective, objective.bracket(), tol)
}

/// As [`optimal_p`] with a caller-supplied bracket.
pub fn optimal_p_in(objective: Objective, bracket: (f64, f64), tol: f64) -> Result<OptimalResult> {
    if !(tol >= 1e-10) || !tol.is_finite() {
        return Err(Error::argument(format!("tolerance must be at least 1e-10, got {tol}")));
    }
    let cfg = QuadratureConfig::default();
    let target = objective.target();
    let (lo, hi) = bracket;
    let root = brent(|p| Ok(objective.measure(p, &cfg)? - target), lo, hi, tol, 200)?;
    let note = match objective {
        Objective::Curvature => Some(
            "p = 1 also reaches this value under the convention that the square has curvature 0; \
             the smooth root is returned"
                .to_string(),
        ),
        _ => None,
    };
    Ok(OptimalResult {
        objective,
        p_star: root.x,
        residual: root.residual,
        bracket,
        iterations: root.iterations,
        note,
    })
}

/// A point with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoint {
    pub x: BigRational,
    pub y: BigRational,
}

impl RationalPoint {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        RationalPoint { x, y }
    }

    pub fn from_i64(xn: i64, xd: i64, yn: i64, yd: i64) -> Self {
        RationalPoint::new(
            BigRational::new(xn.into(), xd.into()),
            BigRational::new(yn.into(), yd.into()),
        )
    }

    /// `|x|^p + |y|^p == 1` exactly.
    pub fn on_circle(&self, p: u32) -> bool {
        let sum = num_traits::pow(self.x.abs(), p as usize) + num_traits::pow(self.y.abs(), p as usize);
        sum.is_one()
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", fraction_string(&self.x), fraction_string(&self.y))
    }
}

impl Serialize for RationalPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [fraction_string(&self.x), fraction_string(&self.y)].serialize(s)
    }
}

/// `((u² - v²)/(u² + v²), 2uv/(u² + v²))`
pub fn pythagorean_point(u: u64, v: u64) -> Result<RationalPoint> {
    if v == 0 || u <= v {
        return Err(Error::argument(format!("need u > v >= 1, got u = {u}, v = {v}")));
    }
    let (u, v) = (BigInt::from(u), BigInt::from(v));
    let d = &u * &u + &v * &v;
    Ok(RationalPoint::new(
        BigRational::new(&u * &u - &v * &v, d.clone()),
        BigRational::new(BigInt::from(2) * u * v, d),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PointSet {
    /// All `(t, 1 - t)` with rational `t`, with sign variants.
    Dense,
    /// Parametrized by Pythagorean triples.
    Pythagorean,
    /// Only `(±1, 0)` and `(0, ±1)`.
    AxesOnly,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub p: u32,
    pub kind: PointSet,
    pub infinite: bool,
    pub description: String,
    pub justification: String,
    pub points: Vec<RationalPoint>,
}

fn axis_points() -> Vec<RationalPoint> {
    vec![
        RationalPoint::from_i64(1, 1, 0, 1),
        RationalPoint::from_i64(0, 1, 1, 1),
        RationalPoint::from_i64(-1, 1, 0, 1),
        RationalPoint::from_i64(0, 1, -1, 1),
    ]
}

/// Which rational points lie on the p-circle, for integer `p`.
pub fn rational_point_classification(p: f64) -> Result<Classification> {
    if !(p >= 1.0) || p.fract() != 0.0 || p > u32::MAX as f64 {
        return Err(Error::argument(format!(
            "rational points are classified for integer p >= 1 only, got {p}"
        )));
    }
    let p = p as u32;
    Ok(match p {
        1 => Classification {
            p,
            kind: PointSet::Dense,
            infinite: true,
            description: "infinite (dense): all (t, 1 - t) for rational t in [0, 1], plus sign variants".into(),
            justification: "|x| + |y| = 1 is linear".into(),
            points: vec![RationalPoint::from_i64(1, 3, 2, 3), RationalPoint::from_i64(1, 2, 1, 2)],
        },
        2 => Classification {
            p,
            kind: PointSet::Pythagorean,
            infinite: true,
            description: "infinite: ((u^2 - v^2)/(u^2 + v^2), 2uv/(u^2 + v^2)) for integers u > v >= 1, plus sign variants".into(),
            justification: "Pythagorean triple parametrization".into(),
            points: [(2, 1), (3, 2), (4, 1)]
                .iter()
                .map(|&(u, v)| pythagorean_point(u, v))
                .collect::<Result<_>>()?,
        },
        _ => Classification {
            p,
            kind: PointSet::AxesOnly,
            infinite: false,
            description: "exactly the four axis points (±1, 0), (0, ±1)".into(),
            justification: "Fermat's Last Theorem".into(),
            points: axis_points(),
        },
    })
}

/// `true` when `u`, `v` are coprime with opposite parity, in which case the
/// Pythagorean point is already in lowest terms before reduction.
pub fn primitive_generator(u: u64, v: u64) -> bool {
    u.gcd(&v) == 1 && (u + v) % 2 == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pi::pi_gamma;
    use crate::ptrig::cos_sin_p;
    use num_traits::Zero;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    fn pp(p: f64) -> PParam {
        PParam::new(p).unwrap()
    }

    #[test]
    fn area_examples() {
        assert!((area(pp(2.0), &cfg()).unwrap() - PI).abs() < 1e-12);
        assert!((area(pp(1.0), &cfg()).unwrap() - 2.0).abs() < 1e-12);
        assert!((area(pp(3.162038), &cfg()).unwrap() - (PI + 4.0) / 2.0).abs() < 1e-4);
        for p in [1.0, 1.7, 2.0, 3.0, 4.0, 8.0] {
            let a = area(pp(p), &cfg()).unwrap();
            assert!((a - pi_gamma(p).unwrap()).abs() < 1e-9, "p={p}");
        }
    }

    #[test]
    fn perimeter_examples() {
        assert!((perimeter(pp(2.0), &cfg()).unwrap() - 2.0 * PI).abs() < 1e-8);
        assert!((perimeter(pp(1.0), &cfg()).unwrap() - 4.0 * 2f64.sqrt()).abs() < 1e-12);
        assert!((perimeter(pp(4.658459), &cfg()).unwrap() - (PI + 4.0)).abs() < 1e-5);
        assert!((perimeter(pp(4.667489), &cfg()).unwrap() - (PI + 4.0)).abs() > 1e-3);
    }

    #[test]
    fn perimeter_monotone_below_square() {
        let vals: Vec<f64> = [2.0, 3.0, 4.0, 6.0, 10.0]
            .iter()
            .map(|&p| perimeter(pp(p), &cfg()).unwrap())
            .collect();
        assert!(vals.windows(2).all(|w| w[0] < w[1]), "{vals:?}");
        assert!(vals.iter().all(|&v| v < 8.0));
    }

    #[test]
    fn perimeter_reference_values() {
        // 30-digit adaptive quadrature
        for (p, want) in [
            (1.5, 5.939361434576786),
            (3.0, 6.744993140126340),
            (7.5, 7.445377359527003),
            (50.0, 7.912278464092482),
        ] {
            let got = perimeter(pp(p), &cfg()).unwrap();
            assert!((got - want).abs() < 1e-10, "p={p}: {got}");
        }
    }

    #[test]
    fn curvature_examples() {
        let h = 0.5f64.sqrt();
        assert!((curvature_implicit(h, h, pp(2.0)).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(curvature_diagonal(pp(2.0)), 1.0);
        assert_eq!(curvature_diagonal(pp(1.0)), 0.0);
        assert!((curvature_diagonal(pp(1.43643264)) - 0.5).abs() < 1e-6);
        for p in [1.2, 2.0, 3.0, 5.0] {
            let d = 2f64.powf(-1.0 / p);
            let k = curvature_implicit(d, d, pp(p)).unwrap();
            assert!((k - curvature_diagonal(pp(p))).abs() < 1e-9, "p={p}");
            assert!((k - (p - 1.0) * 2f64.powf(1.0 / p - 0.5)).abs() < 1e-9);
        }
    }

    #[test]
    fn curvature_domain() {
        assert!(matches!(curvature_implicit(1.0, 0.0, pp(3.0)), Err(Error::Domain(_))));
        assert!(matches!(curvature_implicit(0.5, 0.5, pp(3.0)), Err(Error::Domain(_))));
        assert!(matches!(curvature_implicit(-0.5, 0.5, pp(1.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn curvature_against_finite_differences() {
        let p = pp(3.0);
        let h = 1e-3;
        let pt = |t: f64| cos_sin_p(t, p, &cfg()).unwrap();
        for &t in &[0.2, 0.5, 0.8, 1.1] {
            let (x0, y0) = pt(t);
            let (xm, ym) = pt(t - h);
            let (xp, yp) = pt(t + h);
            let (dx, dy) = ((xp - xm) / (2.0 * h), (yp - ym) / (2.0 * h));
            let (ddx, ddy) = ((xp - 2.0 * x0 + xm) / (h * h), (yp - 2.0 * y0 + ym) / (h * h));
            let fd = (dx * ddy - dy * ddx).abs() / (dx * dx + dy * dy).powf(1.5);
            let k = curvature_implicit(x0, y0, p).unwrap();
            assert!((k - fd).abs() < 1e-4, "t={t}: {k} vs {fd}");
        }
    }

    #[test]
    fn optimal_values() {
        let a = optimal_p(Objective::Area, 1e-10).unwrap();
        assert!((a.p_star - 3.162038).abs() < 1e-4, "{a:?}");
        assert!(a.residual.abs() < 1e-8);
        let per = optimal_p(Objective::Perimeter, 1e-10).unwrap();
        // independent 30-digit root: 4.658458997257738
        assert!((per.p_star - 4.658458997257738).abs() < 1e-8, "{per:?}");
        assert!(per.residual.abs() < 1e-8);
        let c = optimal_p(Objective::Curvature, 1e-10).unwrap();
        assert!((c.p_star - 1.43643264).abs() < 1e-5, "{c:?}");
        assert!(c.note.is_some());
        for r in [&a, &per, &c] {
            assert!(r.bracket.0 < r.p_star && r.p_star < r.bracket.1);
        }
    }

    #[test]
    fn optimal_independent_of_bracket() {
        let a = optimal_p_in(Objective::Area, (2.5, 5.0), 1e-10).unwrap();
        let b = optimal_p(Objective::Area, 1e-10).unwrap();
        assert!((a.p_star - b.p_star).abs() < 1e-8);
        assert!(matches!(
            optimal_p_in(Objective::Area, (4.0, 6.0), 1e-10),
            Err(Error::Solver(_))
        ));
        assert!(matches!(optimal_p(Objective::Area, 1e-12), Err(Error::Argument(_))));
    }

    #[test]
    fn pythagorean_points() {
        assert_eq!(pythagorean_point(2, 1).unwrap(), RationalPoint::from_i64(3, 5, 4, 5));
        assert_eq!(pythagorean_point(3, 2).unwrap(), RationalPoint::from_i64(5, 13, 12, 13));
        for u in 2..20u64 {
            for v in 1..u {
                let pt = pythagorean_point(u, v).unwrap();
                assert!(pt.on_circle(2));
                if primitive_generator(u, v) {
                    assert_eq!(*pt.x.denom(), BigInt::from(u * u + v * v));
                }
            }
        }
        assert!(matches!(pythagorean_point(1, 1), Err(Error::Argument(_))));
        assert!(matches!(pythagorean_point(1, 2), Err(Error::Argument(_))));
    }

    #[test]
    fn classification() {
        let c4 = rational_point_classification(4.0).unwrap();
        assert_eq!(c4.kind, PointSet::AxesOnly);
        assert_eq!(c4.points.len(), 4);
        assert!(c4.points.iter().all(|pt| pt.on_circle(4)));
        assert!(c4.justification.contains("Fermat"));
        let c2 = rational_point_classification(2.0).unwrap();
        assert!(c2.infinite);
        assert_eq!(c2.points[0], RationalPoint::from_i64(3, 5, 4, 5));
        let c1 = rational_point_classification(1.0).unwrap();
        assert_eq!(c1.kind, PointSet::Dense);
        assert_eq!(c1.points[0], RationalPoint::from_i64(1, 3, 2, 3));
        assert!(c1.points.iter().all(|pt| pt.on_circle(1)));
        assert!(matches!(rational_point_classification(2.5), Err(Error::Argument(_))));
        assert!(matches!(rational_point_classification(0.0), Err(Error::Argument(_))));
        let json = serde_json::to_value(&c2).unwrap();
        assert_eq!(json["points"][0][0], "3/5");
    }

    #[test]
    fn zero_point_is_exact() {
        assert!(RationalPoint::new(BigRational::zero(), BigRational::one()).on_circle(7));
    }
}
