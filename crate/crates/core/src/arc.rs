//! Per-pixel circular-arc motion model.
//!
//! A pixel moving from `P0` to `P1 = P0 + (u, v)` is assumed to travel along
//! an inferior circular arc at constant speed. The arc is described by the
//! chord length `d`, the chord dip angle `alpha = atan2(v, u)`, the half arc
//! angle `beta = asin(sigma)` and the signed radius `r = d / (2 sigma)`. The
//! polar angle of the moving point around the arc center sweeps linearly from
//! `theta0 = alpha + pi/2 + beta` to `theta1 = alpha + pi/2 - beta`.
//!
//! Coordinates are image coordinates (x right, y down). With these formulas
//! applied literally, a positive `sigma` bends rightward motion toward `+y`,
//! which appears counter-clockwise on screen; a rigid rotation by `omega`
//! (positive from `+x` toward `+y`) corresponds to `sigma = -sin(omega / 2)`.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::field::{ensure_same_dims, FlowField, SigmaMap};

pub const DEFAULT_SIGMA_THRESHOLD: f64 = 0.01;

/// Threshold configuration for the arc/linear case split.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArcConfig {
    sigma_threshold: f64,
}

impl ArcConfig {
    /// `sigma_threshold` must lie strictly inside `(0, 1)`.
    pub fn new(sigma_threshold: f64) -> Result<Self> {
        if !(sigma_threshold > 0.0 && sigma_threshold < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "sigma threshold {sigma_threshold} outside (0, 1)"
            )));
        }
        Ok(Self { sigma_threshold })
    }

    pub fn sigma_threshold(&self) -> f64 {
        self.sigma_threshold
    }

    /// Whether a pixel with curvature `sigma` follows the arc branch.
    /// The comparison is strict: `|sigma| == threshold` stays linear.
    #[inline]
    pub fn uses_arc(&self, sigma: f64) -> bool {
        sigma.abs() > self.sigma_threshold
    }
}

impl Default for ArcConfig {
    fn default() -> Self {
        Self {
            sigma_threshold: DEFAULT_SIGMA_THRESHOLD,
        }
    }
}

/// Geometry of one pixel's arc trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArcParams {
    /// Chord length in pixels.
    pub d: f64,
    /// Chord dip angle.
    pub alpha: f64,
    /// Half arc angle, in `[-pi/2, pi/2]`.
    pub beta: f64,
    /// Signed radius in pixels.
    pub r: f64,
    /// Polar angle of the start point around the arc center.
    pub theta0: f64,
    /// Polar angle of the end point around the arc center.
    pub theta1: f64,
}

impl ArcParams {
    /// Recovers the arc through `(0, 0)` and `(u, v)` with curvature measure
    /// `sigma`. `sigma` must be nonzero; callers route `sigma == 0` to the
    /// linear model.
    pub fn new(u: f64, v: f64, sigma: f64) -> Result<Self> {
        if !u.is_finite() || !v.is_finite() {
            return Err(Error::Domain(format!("non-finite flow ({u}, {v})")));
        }
        if !sigma.is_finite() || sigma.abs() > 1.0 {
            return Err(Error::Domain(format!("sigma {sigma} outside [-1, 1]")));
        }
        if sigma == 0.0 {
            return Err(Error::Domain("sigma is zero; the trajectory is linear".into()));
        }
        let d = u.hypot(v);
        let alpha = v.atan2(u);
        let beta = sigma.asin();
        let r = d / (2.0 * sigma);
        Ok(Self {
            d,
            alpha,
            beta,
            r,
            theta0: alpha + FRAC_PI_2 + beta,
            theta1: alpha + FRAC_PI_2 - beta,
        })
    }

    /// Polar angle of the moving point at time `t`.
    #[inline]
    pub fn theta_at(&self, t: f64) -> f64 {
        -2.0 * self.beta * t + self.alpha + FRAC_PI_2 + self.beta
    }

    /// Displacement from the start point after time `t` in `[0, 1]`.
    #[inline]
    pub fn displacement(&self, t: f64) -> (f64, f64) {
        let theta = self.theta_at(t);
        let (s0, c0) = self.theta0.sin_cos();
        let (s, c) = theta.sin_cos();
        (self.r * (c - c0), self.r * (s - s0))
    }

    /// Arc center relative to the start point.
    pub fn center(&self) -> (f64, f64) {
        let (s0, c0) = self.theta0.sin_cos();
        (-self.r * c0, -self.r * s0)
    }
}

fn check_t(t: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidParameter(format!("t = {t} outside [0, 1]")));
    }
    Ok(())
}

/// Displacement along the arc after time `t`.
pub fn evaluate_arc_flow(params: &ArcParams, t: f64) -> Result<(f64, f64)> {
    check_t(t)?;
    Ok(params.displacement(t))
}

/// Arc-branch displacement for a single pixel, ignoring the threshold.
/// Requires `sigma != 0`.
pub fn arc_displacement(u: f64, v: f64, sigma: f64, t: f64) -> Result<(f64, f64)> {
    check_t(t)?;
    Ok(ArcParams::new(u, v, sigma)?.displacement(t))
}

/// Displacement of one pixel at time `t`, choosing the arc or linear branch
/// by `cfg`.
#[inline]
pub fn pixel_displacement(u: f64, v: f64, sigma: f64, t: f64, cfg: &ArcConfig) -> Result<(f64, f64)> {
    if cfg.uses_arc(sigma) {
        Ok(ArcParams::new(u, v, sigma)?.displacement(t))
    } else {
        Ok((t * u, t * v))
    }
}

/// Intermediate flow from frame 0 to time `t`.
///
/// Pixels with `|sigma| > threshold` follow their arc; the rest move
/// linearly. Computation is in `f64`; the result is stored as `f32`.
pub fn intermediate_flow(
    flow: &FlowField,
    sigma: &SigmaMap,
    t: f64,
    cfg: &ArcConfig,
) -> Result<FlowField> {
    ensure_same_dims(flow.dims(), sigma.dims())?;
    check_t(t)?;
    let mut out = Vec::with_capacity(flow.len() * 2);
    for (i, ((u, v), &s)) in flow.iter().zip(sigma.as_slice()).enumerate() {
        if !u.is_finite() || !v.is_finite() {
            return Err(Error::NonFinite { what: "flow", index: i });
        }
        let (dx, dy) = pixel_displacement(u as f64, v as f64, s as f64, t, cfg)?;
        out.push(dx as f32);
        out.push(dy as f32);
    }
    FlowField::from_interleaved(flow.width(), flow.height(), out)
}

/// Linear-trajectory intermediate flow, `t * flow`.
pub fn linear_intermediate_flow(flow: &FlowField, t: f64) -> Result<FlowField> {
    check_t(t)?;
    let out = flow
        .as_interleaved()
        .iter()
        .map(|&c| (t * c as f64) as f32)
        .collect();
    FlowField::from_interleaved(flow.width(), flow.height(), out)
}

/// Intermediate flow from frame 1 to time `t`: the backward arc evaluated
/// at `1 - t`.
pub fn backward_intermediate_flow(
    flow10: &FlowField,
    sigma10: &SigmaMap,
    t: f64,
    cfg: &ArcConfig,
) -> Result<FlowField> {
    check_t(t)?;
    intermediate_flow(flow10, sigma10, 1.0 - t, cfg)
}
