//! The generalized constant `π_p = 2 sin_p^{-1}(1)`, the area enclosed by
//! the unit `p`-circle, computed several independent ways.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactmath::gamma;
use crate::ptrig::{half_pi_quadrature, PParam};
use crate::quadrature::{tanh_sinh, QuadratureConfig};

/// How an [`Estimate`] was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Gamma,
    DefiningIntegral,
    AreaIntegral,
    Series,
    MonteCarlo,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::Gamma => "gamma",
            Method::DefiningIntegral => "defining-integral",
            Method::AreaIntegral => "area-integral",
            Method::Series => "series",
            Method::MonteCarlo => "monte-carlo",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl Serialize for Method {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}

/// A value with its error model and provenance.
///
/// `error` is a quadrature refinement estimate, the last included series
/// term, or a Monte Carlo standard error depending on `method`. `n` counts
/// samples, series terms or integrand evaluations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub method: Method,
    pub n: u64,
    pub seed: Option<u64>,
}

/// `π_p = 2 Γ(1/p)^2 / (p Γ(2/p))`.
pub fn pi_gamma(p: f64) -> Result<f64> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::domain(format!("π_p requires finite p >= 1, got {p}")));
    }
    let g1 = gamma(1.0 / p)?;
    let g2 = gamma(2.0 / p)?;
    Ok(2.0 * g1 * (g1 / (p * g2)))
}

/// `π_p = 2 ∫_0^1 (1 - t^p)^{-(p-1)/p} dt`.
pub fn pi_defining_integral(p: f64, cfg: &QuadratureConfig) -> Result<Estimate> {
    let p = PParam::new(p)?;
    let q = half_pi_quadrature(p, cfg).map_err(double_accuracy)?;
    Ok(Estimate {
        value: 2.0 * q.value,
        error: 2.0 * q.error,
        method: Method::DefiningIntegral,
        n: q.evaluations as u64,
        seed: None,
    })
}

/// `π_p = 4 ∫_0^1 (1 - x^p)^{1/p} dx`, four copies of the quarter area.
pub fn pi_area_integral(p: f64, cfg: &QuadratureConfig) -> Result<Estimate> {
    let p = PParam::new(p)?;
    let q = quarter_area(p, cfg).map_err(|e| scale_accuracy(e, 4.0))?;
    Ok(Estimate {
        value: 4.0 * q.value,
        error: 4.0 * q.error,
        method: Method::AreaIntegral,
        n: q.evaluations as u64,
        seed: None,
    })
}

pub(crate) fn quarter_area(p: PParam, cfg: &QuadratureConfig) -> Result<crate::quadrature::Quadrature> {
    let pv = p.value();
    tanh_sinh(
        |x, _, one_minus_x| {
            let xp = x.powf(pv);
            let base = if xp < 0.5 {
                1.0 - xp
            } else {
                -(pv * (-one_minus_x).ln_1p()).exp_m1()
            };
            base.max(0.0).powf(1.0 / pv)
        },
        0.0,
        1.0,
        cfg,
    )
}

fn double_accuracy(e: Error) -> Error {
    scale_accuracy(e, 2.0)
}

fn scale_accuracy(e: Error, factor: f64) -> Error {
    match e {
        Error::Accuracy { message, best, error } => Error::Accuracy {
            message,
            best: factor * best,
            error: factor * error,
        },
        other => other,
    }
}

/// Partial sum `2 Σ_{k<terms} ((p-1)/p)^{(k)} / (k! (kp+1))` of the arcsine
/// series at `x = 1`.
///
/// The series sits on the boundary of its disc of convergence, so the
/// reported error (the last included term) is indicative only.
pub fn pi_series(p: u32, terms: u64) -> Result<Estimate> {
    if p < 2 {
        return Err(Error::argument(format!("series needs integer p >= 2, got {p}")));
    }
    if terms == 0 {
        return Err(Error::argument("series needs at least one term"));
    }
    let pf = p as f64;
    let a = (pf - 1.0) / pf;
    // ratio = a^{(k)} / k!
    let mut ratio = 1.0f64;
    let mut sum = 0.0f64;
    let mut last = 0.0f64;
    for k in 0..terms {
        if k > 0 {
            let kf = k as f64;
            ratio *= (a + kf - 1.0) / kf;
        }
        last = ratio / (k as f64 * pf + 1.0);
        sum += last;
    }
    Ok(Estimate {
        value: 2.0 * sum,
        error: 2.0 * last,
        method: Method::Series,
        n: terms,
        seed: None,
    })
}

/// Monte Carlo batch size; each batch has its own ChaCha stream.
pub const MC_BATCH: u64 = 1 << 16;

/// Dartboard estimate `4 t / n` with `t` hits of `|x|^p + |y|^p <= 1` among
/// `n` uniform points in `[-1, 1]^2`.
///
/// Samples are split into fixed batches of [`MC_BATCH`]; batch `i` draws from
/// ChaCha8 stream `i` of `seed`. Hit counts are summed exactly, so the
/// result depends on `(p, n, seed)` only and not on `workers`.
pub fn pi_monte_carlo(p: f64, n: u64, seed: u64, workers: usize) -> Result<Estimate> {
    let p = PParam::new(p)?;
    if n == 0 {
        return Err(Error::argument("Monte Carlo needs at least one sample"));
    }
    if workers == 0 {
        return Err(Error::argument("Monte Carlo needs at least one worker"));
    }
    let pv = p.value();
    let int_p = (pv.fract() == 0.0 && pv <= 64.0).then_some(pv as i32);
    let batches = n.div_ceil(MC_BATCH);
    let run_batch = |b: u64| -> u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(b);
        let count = if b + 1 == batches { n - b * MC_BATCH } else { MC_BATCH };
        let mut hits = 0u64;
        for _ in 0..count {
            let x: f64 = rng.random::<f64>() * 2.0 - 1.0;
            let y: f64 = rng.random::<f64>() * 2.0 - 1.0;
            let r = match int_p {
                Some(k) => x.abs().powi(k) + y.abs().powi(k),
                None => x.abs().powf(pv) + y.abs().powf(pv),
            };
            if r <= 1.0 {
                hits += 1;
            }
        }
        hits
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::argument(format!("cannot start {workers} workers: {e}")))?;
    let hits: u64 = pool.install(|| (0..batches).into_par_iter().map(run_batch).sum());
    let q = hits as f64 / n as f64;
    Ok(Estimate {
        value: 4.0 * q,
        error: 4.0 * (q * (1.0 - q) / n as f64).sqrt(),
        method: Method::MonteCarlo,
        n,
        seed: Some(seed),
    })
}

/// Gamma-form evaluation of a grid of exponents.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotonicityScan {
    pub points: Vec<(f64, f64)>,
    /// `true` when every adjacent pair strictly increases.
    pub strictly_increasing: bool,
    /// Indices `i` with `π_{p_{i+1}} <= π_{p_i}`.
    pub violations: Vec<usize>,
    /// `4 - π_p` at the largest grid point.
    pub gap_to_limit: f64,
}

pub fn pi_monotonicity_scan(grid: &[f64]) -> Result<MonotonicityScan> {
    if grid.is_empty() {
        return Err(Error::argument("grid must not be empty"));
    }
    if grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::argument("grid must be sorted ascending"));
    }
    let points = grid
        .iter()
        .map(|&p| pi_gamma(p).map(|v| (p, v)))
        .collect::<Result<Vec<_>>>()?;
    let violations: Vec<usize> = points
        .windows(2)
        .enumerate()
        .filter(|(_, w)| !(w[1].1 > w[0].1))
        .map(|(i, _)| i)
        .collect();
    let gap_to_limit = 4.0 - points.last().map(|pt| pt.1).unwrap_or(f64::NAN);
    Ok(MonotonicityScan {
        strictly_increasing: violations.is_empty(),
        violations,
        gap_to_limit,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::beta;
    use std::f64::consts::PI;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn gamma_form_examples() {
        assert!((pi_gamma(2.0).unwrap() - PI).abs() < 1e-14);
        assert!((pi_gamma(1.0).unwrap() - 2.0).abs() < 1e-14);
        assert!((pi_gamma(3.0).unwrap() - 3.533).abs() < 5e-4);
        assert!((pi_gamma(4.0).unwrap() - 3.708).abs() < 5e-4);
        assert!(matches!(pi_gamma(0.9), Err(Error::Domain(_))));
    }

    #[test]
    fn beta_identity_and_limit() {
        for p in [1.0, 1.3, 2.0, 3.0, 7.0, 40.0] {
            let via_beta = 2.0 / p * beta(1.0 / p, 1.0 / p).unwrap();
            assert!((pi_gamma(p).unwrap() / via_beta - 1.0).abs() < 1e-11, "p = {p}");
        }
        assert!(pi_gamma(1e6).unwrap() > 4.0 - 1e-4);
        assert!(pi_gamma(1e6).unwrap() < 4.0);
    }

    #[test]
    fn quadrature_routes() {
        for p in [1.0, 1.5, 2.0, 3.0, 4.0, 10.0, 20.0, 50.0] {
            let g = pi_gamma(p).unwrap();
            let d = pi_defining_integral(p, &cfg()).unwrap();
            let a = pi_area_integral(p, &cfg()).unwrap();
            assert!((d.value - g).abs() <= 1e-8 * g, "defining p = {p}");
            assert!((a.value - g).abs() <= 1e-10 * g, "area p = {p}");
            assert_eq!(d.method, Method::DefiningIntegral);
            assert_eq!(a.seed, None);
        }
        assert!((pi_defining_integral(1.0, &cfg()).unwrap().value - 2.0).abs() < 1e-15);
        let a10 = pi_area_integral(10.0, &cfg()).unwrap().value;
        assert!(a10 > PI && a10 < 4.0);
        assert!((a10 - 3.942_927_897_810_03).abs() < 1e-10);
    }

    #[test]
    fn series_partial_sums() {
        let e = pi_series(4, 4).unwrap();
        let exact = 2.0 * (1.0 + 3.0 / 20.0 + 7.0 / 96.0 + 77.0 / 1664.0);
        assert!((e.value - exact).abs() < 1e-15);
        assert_eq!(pi_series(2, 1).unwrap().value, 2.0);
        assert!(matches!(pi_series(1, 4), Err(Error::Argument(_))));
        assert!(matches!(pi_series(3, 0), Err(Error::Argument(_))));
    }

    #[test]
    fn series_endpoint_tail() {
        // the tail after N terms is about 2 / sqrt(π N); 30-digit value below
        let gap = PI - pi_series(2, 2000).unwrap().value;
        assert!((gap - 0.025_231_850_685_523_89).abs() < 1e-12, "{gap}");
        assert!((gap / (2.0 / (PI * 2000.0).sqrt()) - 1.0).abs() < 1e-4);
    }

    #[test]
    fn monte_carlo_is_deterministic_across_workers() {
        let a = pi_monte_carlo(3.0, 300_000, 7, 1).unwrap();
        let b = pi_monte_carlo(3.0, 300_000, 7, 4).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.seed, Some(7));
        assert!((a.value - pi_gamma(3.0).unwrap()).abs() < 5.0 * a.error);
        let c = pi_monte_carlo(3.0, 300_000, 8, 2).unwrap();
        assert_ne!(a.value, c.value);
    }

    #[test]
    fn monte_carlo_single_hit() {
        let seed = (0..100u64)
            .find(|&s| pi_monte_carlo(2.0, 1, s, 1).unwrap().value == 4.0)
            .expect("some seed lands inside");
        let e = pi_monte_carlo(2.0, 1, seed, 1).unwrap();
        assert_eq!(e.value, 4.0);
        assert_eq!(e.error, 0.0);
        assert!(pi_monte_carlo(2.0, 0, 1, 1).is_err());
        assert!(pi_monte_carlo(2.0, 10, 1, 0).is_err());
    }

    #[test]
    fn monotonicity() {
        let scan = pi_monotonicity_scan(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert!(scan.strictly_increasing);
        assert!((scan.points[1].1 - PI).abs() < 1e-14);
        let single = pi_monotonicity_scan(&[2.0]).unwrap();
        assert!(single.strictly_increasing && single.points.len() == 1);
        let big = pi_monotonicity_scan(&[50.0, 100.0, 500.0]).unwrap();
        assert!(big.strictly_increasing);
        assert!(big.points.iter().all(|&(_, v)| v > 3.99 && v < 4.0));
        assert!(pi_monotonicity_scan(&[3.0, 2.0]).is_err());
    }
}
