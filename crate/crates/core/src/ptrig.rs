//! Numeric `p`-trigonometric functions for real `p >= 1`.
//!
//! `arcsin_p` and `arccos_p` are evaluated by tanh-sinh quadrature. On the
//! first quadrant `sin_p` and `cos_p` come from inverting `arcsin_p` with a
//! safeguarded Newton iteration; everything else follows from the
//! symmetry and `2π_p`-periodicity of the unit `p`-circle. The explicit
//! Runge-Kutta solver of the coupled initial value problem is kept as an
//! independent cross-check.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pi::pi_gamma;
use crate::quadrature::{tanh_sinh, QuadratureConfig};

/// Validated exponent `p >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct PParam(f64);

impl PParam {
    pub fn new(p: f64) -> Result<Self> {
        if p.is_finite() && p >= 1.0 {
            Ok(PParam(p))
        } else {
            Err(Error::domain(format!("p must be finite and at least 1, got {p}")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `π_p` from the gamma closed form.
    pub fn pi(self) -> f64 {
        pi_gamma(self.0).expect("validated p")
    }

    // (p - 1)/p, the exponent of the arcsine kernel
    fn alpha(self) -> f64 {
        (self.0 - 1.0) / self.0
    }
}

impl TryFrom<f64> for PParam {
    type Error = Error;
    fn try_from(p: f64) -> Result<Self> {
        PParam::new(p)
    }
}

impl From<PParam> for f64 {
    fn from(p: PParam) -> f64 {
        p.0
    }
}

/// A point in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlanePoint {
    pub x: f64,
    pub y: f64,
}

impl PlanePoint {
    /// `|x|^p + |y|^p - 1`
    pub fn circle_residual(&self, p: PParam) -> f64 {
        self.x.abs().powf(p.0) + self.y.abs().powf(p.0) - 1.0
    }
}

/// `h(w) = (1 - (1 - w)^p) / w` with `w = v^p` and `h(0) = p`.
///
/// Under `1 - t = v^p` we have `1 - t^p = w h(w)`, and `h` is bounded away
/// from zero on `[0, 1]`, which absorbs the `(1 - t^p)^{-(p-1)/p}`
/// singularity at `t = 1`.
pub(crate) fn substitution_h(v: f64, one_minus_v: f64, p: f64) -> f64 {
    let w = v.powf(p);
    if w == 0.0 {
        return p;
    }
    let t = if w < 0.5 {
        1.0 - w
    } else {
        -(p * (-one_minus_v).ln_1p()).exp_m1()
    };
    let tp = t.powf(p);
    let num = if tp < 0.5 { 1.0 - tp } else { -(p * (-w).ln_1p()).exp_m1() };
    num / w
}

// Integrand of ∫ dv after substituting 1 - t = v^p into (1 - t^p)^{-(p-1)/p} dt.
fn substituted_kernel(v: f64, one_minus_v: f64, p: PParam) -> f64 {
    p.0 * substitution_h(v, one_minus_v, p.0).powf(-p.alpha())
}

// (1 - t^p)^{-(p-1)/p}, used only for t <= 1/2 where 1 - t^p does not cancel
fn direct_kernel(t: f64, p: PParam) -> f64 {
    (1.0 - t.powf(p.0)).powf(-p.alpha())
}

fn check_unit(x: f64, what: &str) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::domain(format!("{what} requires x in [0, 1], got {x}")))
    }
}

/// `sin_p^{-1}(x) = ∫_0^x (1 - t^p)^{-(p-1)/p} dt` for `x` in `[0, 1]`.
pub fn arcsin_p(x: f64, p: PParam, cfg: &QuadratureConfig) -> Result<f64> {
    check_unit(x, "arcsin_p")?;
    if x == 0.0 {
        return Ok(0.0);
    }
    if x <= 0.5 {
        return tanh_sinh(|t, _, _| direct_kernel(t, p), 0.0, x, cfg)
            .map(|q| q.value);
    }
    // t in [0, x] maps to v in [(1-x)^{1/p}, 1]
    let v0 = ((-x).ln_1p() / p.0).exp();
    tanh_sinh(|v, _, db| substituted_kernel(v, db, p), v0, 1.0, cfg).map(|q| q.value)
}

/// `cos_p^{-1}(x) = ∫_x^1 (1 - t^p)^{-(p-1)/p} dt` for `x` in `[0, 1]`.
pub fn arccos_p(x: f64, p: PParam, cfg: &QuadratureConfig) -> Result<f64> {
    check_unit(x, "arccos_p")?;
    if x == 1.0 {
        return Ok(0.0);
    }
    let v0 = ((-x).ln_1p() / p.0).exp();
    tanh_sinh(|v, _, _| substituted_kernel(v, 1.0 - v, p), 0.0, v0, cfg).map(|q| q.value)
}

/// `∫_0^1` of the substituted kernel, i.e. `π_p / 2`, as a full quadrature result.
pub(crate) fn half_pi_quadrature(
    p: PParam,
    cfg: &QuadratureConfig,
) -> Result<crate::quadrature::Quadrature> {
    tanh_sinh(|v, _, db| substituted_kernel(v, db, p), 0.0, 1.0, cfg)
}

const NEWTON_STEP_TOL: f64 = 1e-13;
const NEWTON_MAX_ITER: u32 = 80;

// Solve arcsin_p(x) = t for t in [0, π_p/4]; the root lies in [0, 2^{-1/p}].
fn invert_arcsin(t: f64, p: PParam, cfg: &QuadratureConfig) -> Result<f64> {
    if t <= 0.0 {
        return Ok(0.0);
    }
    if p.0 == 1.0 {
        return Ok(t.min(1.0));
    }
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    // arcsin_p(x) >= x, so x = t is at or above the root
    let mut x = t.min(1.0);
    for _ in 0..NEWTON_MAX_ITER {
        let f = arcsin_p(x, p, cfg)? - t;
        if f == 0.0 {
            return Ok(x);
        }
        if f > 0.0 {
            hi = hi.min(x);
        } else {
            lo = lo.max(x);
        }
        let slope_inv = (1.0 - x.powf(p.0)).max(0.0).powf(p.alpha());
        let mut next = x - f * slope_inv;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        let step = (next - x).abs();
        x = next;
        if step < NEWTON_STEP_TOL * x.max(1e-3) {
            return Ok(x);
        }
    }
    Ok(x)
}

/// `(cos_p t, sin_p t)` on the first quadrant `t` in `[0, π_p/2]`.
///
/// Whichever coordinate is at most `2^{-1/p}` is obtained by inversion and
/// the other from the `p`-Pythagorean identity, so `1 - s^p` never cancels.
fn first_quadrant(t: f64, p: PParam, half_pi: f64, cfg: &QuadratureConfig) -> Result<(f64, f64)> {
    let t = t.clamp(0.0, half_pi);
    let complete = |small: f64| (1.0 - small.powf(p.0)).max(0.0).powf(1.0 / p.0);
    if t <= 0.5 * half_pi {
        let s = invert_arcsin(t, p, cfg)?;
        Ok((complete(s), s))
    } else {
        // reflection in the diagonal: cos_p(t) = sin_p(π_p/2 - t)
        let c = invert_arcsin(half_pi - t, p, cfg)?;
        Ok((c, complete(c)))
    }
}

/// `(cos_p t, sin_p t)` for any real `t`.
pub fn cos_sin_p(t: f64, p: PParam, cfg: &QuadratureConfig) -> Result<(f64, f64)> {
    if !t.is_finite() {
        return Err(Error::domain(format!("t must be finite, got {t}")));
    }
    let pi_p = p.pi();
    let half = 0.5 * pi_p;
    let r = t.rem_euclid(2.0 * pi_p);
    if r <= half {
        first_quadrant(r, p, half, cfg)
    } else if r <= pi_p {
        let (c, s) = first_quadrant(pi_p - r, p, half, cfg)?;
        Ok((-c, s))
    } else if r <= 1.5 * pi_p {
        let (c, s) = first_quadrant(r - pi_p, p, half, cfg)?;
        Ok((-c, -s))
    } else {
        let (c, s) = first_quadrant(2.0 * pi_p - r, p, half, cfg)?;
        Ok((c, -s))
    }
}

pub fn sin_p(t: f64, p: PParam, cfg: &QuadratureConfig) -> Result<f64> {
    cos_sin_p(t, p, cfg).map(|(_, s)| s)
}

pub fn cos_p(t: f64, p: PParam, cfg: &QuadratureConfig) -> Result<f64> {
    cos_sin_p(t, p, cfg).map(|(c, _)| c)
}

const POLE_THRESHOLD: f64 = 1e-300;

fn quotient(num: f64, den: f64, function: &'static str, t: f64) -> Result<f64> {
    if den.abs() < POLE_THRESHOLD {
        Err(Error::Pole { function, t })
    } else {
        Ok(num / den)
    }
}

pub fn tan_p(t: f64, p: PParam, cfg: &QuadratureConfig) -> Result<f64> {
    let (c, s) = cos_sin_p(t, p, cfg)?;
    quotient(s, c, "tan_p", t)
}

pub fn sec_p(t: f64, p: PParam, cfg: &QuadratureConfig) -> Result<f64> {
    let (c, _) = cos_sin_p(t, p, cfg)?;
    quotient(1.0, c, "sec_p", t)
}

pub fn csc_p(t: f64, p: PParam, cfg: &QuadratureConfig) -> Result<f64> {
    let (_, s) = cos_sin_p(t, p, cfg)?;
    quotient(1.0, s, "csc_p", t)
}

pub fn cot_p(t: f64, p: PParam, cfg: &QuadratureConfig) -> Result<f64> {
    let (c, s) = cos_sin_p(t, p, cfg)?;
    quotient(c, s, "cot_p", t)
}

/// One sample `(t, x, y)` of the coupled initial value problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CivpSample {
    pub t: f64,
    /// `cos_p t`
    pub x: f64,
    /// `sin_p t`
    pub y: f64,
}

/// Classical RK4 for `x' = -y^{p-1}`, `y' = x^{p-1}`, `x(0) = 1`, `y(0) = 0`.
///
/// Only the first-quadrant arc `0 <= t <= π_p/2` is accepted. The final step
/// is shortened to land exactly on `t_end`.
pub fn civp_integrate(p: PParam, t_end: f64, step: f64) -> Result<Vec<CivpSample>> {
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::argument(format!("step must be positive, got {step}")));
    }
    if !(t_end >= 0.0) || !t_end.is_finite() {
        return Err(Error::argument(format!("t_end must be non-negative, got {t_end}")));
    }
    let half = 0.5 * p.pi();
    if t_end > half * (1.0 + 1e-12) {
        return Err(Error::domain(format!(
            "t_end = {t_end} leaves the first quadrant (π_p/2 = {half})"
        )));
    }
    let e = p.0 - 1.0;
    // Overshoot past an axis is clamped so fractional powers stay real.
    let field = |x: f64, y: f64| (-(y.max(0.0).powf(e)), x.max(0.0).powf(e));
    let mut out = vec![CivpSample { t: 0.0, x: 1.0, y: 0.0 }];
    let (mut t, mut x, mut y) = (0.0f64, 1.0f64, 0.0f64);
    let steps = (t_end / step).ceil() as usize;
    for i in 0..steps {
        let h = if i + 1 == steps { t_end - t } else { step };
        if h <= 0.0 {
            break;
        }
        let (k1x, k1y) = field(x, y);
        let (k2x, k2y) = field(x + 0.5 * h * k1x, y + 0.5 * h * k1y);
        let (k3x, k3y) = field(x + 0.5 * h * k2x, y + 0.5 * h * k2y);
        let (k4x, k4y) = field(x + h * k3x, y + h * k3y);
        x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        t = if i + 1 == steps { t_end } else { t + h };
        out.push(CivpSample { t, x, y });
    }
    Ok(out)
}

/// Point `(cos_p 2a, sin_p 2a)` bounding a sector of area `a` from `(1, 0)`.
pub fn areal_point(a: f64, p: PParam, cfg: &QuadratureConfig) -> Result<PlanePoint> {
    let quarter = 0.25 * p.pi();
    if !(a >= 0.0 && a <= quarter * (1.0 + 1e-12)) {
        return Err(Error::domain(format!("sector area must lie in [0, π_p/4 = {quarter}], got {a}")));
    }
    let (x, y) = cos_sin_p(2.0 * a.min(quarter), p, cfg)?;
    Ok(PlanePoint { x, y })
}

/// Area of the sector between `(1, 0)` and the first-quadrant point with abscissa `x`:
/// `x (1 - x^p)^{1/p} / 2 + ∫_x^1 (1 - t^p)^{1/p} dt`.
pub fn sector_area(x: f64, p: PParam, cfg: &QuadratureConfig) -> Result<f64> {
    check_unit(x, "sector_area")?;
    let upper = |t: f64, one_minus_t: f64| {
        let tp = t.powf(p.0);
        let base = if tp < 0.5 {
            1.0 - tp
        } else {
            -(p.0 * (-one_minus_t).ln_1p()).exp_m1()
        };
        base.max(0.0).powf(1.0 / p.0)
    };
    let tail = tanh_sinh(|t, _, db| upper(t, db), x, 1.0, cfg)?.value;
    Ok(0.5 * x * upper(x, 1.0 - x) + tail)
}
