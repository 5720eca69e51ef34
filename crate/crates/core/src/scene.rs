//! Synthetic rigid-motion scenes with analytic ground truth.
//!
//! A scene is a procedurally textured plane moving rigidly (rotation about a
//! fixed center, or translation) at constant speed. Because the motion is
//! known in closed form, flows, curvature maps, intermediate positions and
//! intermediate frames can all be generated exactly. Nothing here uses the
//! arc model; these functions are its independent reference.

use std::f64::consts::PI;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FlowField, Image, SigmaMap};

/// Rigid motion applied over unit time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Motion {
    /// Rotation about `center` by `omega` radians, positive from `+x` toward `+y`.
    Rotation { center: (f64, f64), omega: f64 },
    Translation { dx: f64, dy: f64 },
}

impl Motion {
    /// Position of `p` after the motion has run for time `t`.
    pub fn apply(&self, p: (f64, f64), t: f64) -> (f64, f64) {
        match *self {
            Motion::Rotation { center, omega } => rotate(p, center, omega * t),
            Motion::Translation { dx, dy } => (p.0 + t * dx, p.1 + t * dy),
        }
    }

    /// Where the point now at `q` was at time 0, given elapsed time `t`.
    pub fn invert(&self, q: (f64, f64), t: f64) -> (f64, f64) {
        match *self {
            Motion::Rotation { center, omega } => rotate(q, center, -omega * t),
            Motion::Translation { dx, dy } => (q.0 - t * dx, q.1 - t * dy),
        }
    }
}

fn rotate(p: (f64, f64), c: (f64, f64), angle: f64) -> (f64, f64) {
    let (s, co) = angle.sin_cos();
    let (rx, ry) = (p.0 - c.0, p.1 - c.1);
    (c.0 + co * rx - s * ry, c.1 + s * rx + co * ry)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pattern {
    /// Two-octave value noise, independent per channel.
    Noise,
    Checker,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Texture {
    pub pattern: Pattern,
    #[serde(default)]
    pub seed: u64,
    /// Feature size in pixels (noise lattice spacing or checker cell).
    #[serde(default = "default_cell")]
    pub cell: f64,
}

fn default_cell() -> f64 {
    8.0
}

impl Default for Texture {
    fn default() -> Self {
        Self {
            pattern: Pattern::Noise,
            seed: 0,
            cell: default_cell(),
        }
    }
}

impl Texture {
    /// Sample of channel `ch` at object coordinates `(x, y)`, in `[0, 1]`.
    pub fn sample(&self, x: f64, y: f64, ch: usize) -> f64 {
        match self.pattern {
            Pattern::Checker => {
                let cx = (x / self.cell).floor() as i64;
                let cy = (y / self.cell).floor() as i64;
                const LIGHT: [f64; 3] = [0.9, 0.85, 0.8];
                const DARK: [f64; 3] = [0.1, 0.15, 0.2];
                if (cx + cy).rem_euclid(2) == 0 {
                    LIGHT[ch % 3]
                } else {
                    DARK[ch % 3]
                }
            }
            Pattern::Noise => {
                let salt = self.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (ch as u64) << 48;
                let coarse = value_noise(x / self.cell, y / self.cell, salt);
                let fine = value_noise(2.0 * x / self.cell, 2.0 * y / self.cell, salt ^ 0xA5A5_A5A5);
                0.65 * coarse + 0.35 * fine
            }
        }
    }
}

fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn lattice(ix: i64, iy: i64, salt: u64) -> f64 {
    let h = mix64(mix64(ix as u64 ^ salt).wrapping_add(iy as u64).wrapping_add(0x632B_E59B_D9B4_E019));
    (h >> 11) as f64 / (1u64 << 53) as f64
}

fn value_noise(x: f64, y: f64, salt: u64) -> f64 {
    let (x0, y0) = (x.floor(), y.floor());
    let smooth = |f: f64| f * f * (3.0 - 2.0 * f);
    let (sx, sy) = (smooth(x - x0), smooth(y - y0));
    let (ix, iy) = (x0 as i64, y0 as i64);
    let top = lattice(ix, iy, salt) * (1.0 - sx) + lattice(ix + 1, iy, salt) * sx;
    let bottom = lattice(ix, iy + 1, salt) * (1.0 - sx) + lattice(ix + 1, iy + 1, salt) * sx;
    top * (1.0 - sy) + bottom * sy
}

/// Full description of a synthetic sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct SceneSpec {
    pub width: usize,
    pub height: usize,
    pub motion: Motion,
    pub texture: Texture,
    /// Sample value outside the textured region.
    pub background: f64,
    /// Inset, in pixels, of the textured rectangle from the frame border at
    /// time 0.
    pub margin: f64,
}

pub const RENDER_CHANNELS: usize = 3;
const SUPERSAMPLE: usize = 4;

impl SceneSpec {
    pub fn validate(&self) -> Result<()> {
        if self.width == 0 || self.height == 0 {
            return Err(Error::InvalidDimensions {
                width: self.width as i64,
                height: self.height as i64,
            });
        }
        match self.motion {
            Motion::Rotation { center, omega } => {
                if !center.0.is_finite() || !center.1.is_finite() || !omega.is_finite() {
                    return Err(Error::InvalidParameter("non-finite rotation parameters".into()));
                }
                if omega.abs() > PI {
                    return Err(Error::InvalidParameter(format!(
                        "rotation angle {omega} exceeds pi; superior arcs are not representable"
                    )));
                }
            }
            Motion::Translation { dx, dy } => {
                if !dx.is_finite() || !dy.is_finite() {
                    return Err(Error::InvalidParameter("non-finite translation".into()));
                }
            }
        }
        if !(self.texture.cell.is_finite() && self.texture.cell > 0.0) {
            return Err(Error::InvalidParameter("texture cell must be positive".into()));
        }
        if !(0.0..=1.0).contains(&self.background) {
            return Err(Error::InvalidParameter("background outside [0, 1]".into()));
        }
        if !(self.margin.is_finite() && self.margin >= 0.0) {
            return Err(Error::InvalidParameter("margin must be non-negative".into()));
        }
        Ok(())
    }

    /// Uniform curvature measure of the forward motion.
    pub fn sigma01(&self) -> f64 {
        match self.motion {
            Motion::Rotation { omega, .. } => -(omega / 2.0).sin(),
            Motion::Translation { .. } => 0.0,
        }
    }

    fn in_support(&self, x: f64, y: f64) -> bool {
        let m = self.margin;
        x >= m - 0.5
            && y >= m - 0.5
            && x <= self.width as f64 - 0.5 - m
            && y <= self.height as f64 - 0.5 - m
    }

    fn object_sample(&self, x: f64, y: f64, ch: usize) -> f64 {
        if self.in_support(x, y) {
            self.texture.sample(x, y, ch)
        } else {
            self.background
        }
    }

    pub fn parse_toml(text: &str) -> Result<Self> {
        let raw: SceneFile =
            toml::from_str(text).map_err(|e| Error::InvalidParameter(format!("scene config: {e}")))?;
        let spec = raw.into_spec()?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::from(e).in_file(path))?;
        Self::parse_toml(&text).map_err(|e| e.in_file(path))
    }

    pub fn to_toml(&self) -> String {
        let motion = match self.motion {
            Motion::Rotation { center, omega } => MotionFile::Rotation {
                center: [center.0, center.1],
                omega: Some(omega),
                omega_deg: None,
            },
            Motion::Translation { dx, dy } => MotionFile::Translation { dx, dy },
        };
        let file = SceneFile {
            width: self.width,
            height: self.height,
            background: self.background,
            margin: self.margin,
            motion,
            texture: self.texture,
        };
        toml::to_string(&file).expect("scene spec serializes")
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SceneFile {
    width: usize,
    height: usize,
    #[serde(default = "default_background")]
    background: f64,
    #[serde(default)]
    margin: f64,
    motion: MotionFile,
    #[serde(default)]
    texture: Texture,
}

fn default_background() -> f64 {
    0.5
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum MotionFile {
    Rotation {
        center: [f64; 2],
        #[serde(skip_serializing_if = "Option::is_none")]
        omega: Option<f64>,
        #[serde(skip_serializing_if = "Option::is_none")]
        omega_deg: Option<f64>,
    },
    Translation {
        dx: f64,
        dy: f64,
    },
}

impl SceneFile {
    fn into_spec(self) -> Result<SceneSpec> {
        let motion = match self.motion {
            MotionFile::Rotation {
                center,
                omega,
                omega_deg,
            } => {
                let omega = match (omega, omega_deg) {
                    (Some(w), None) => w,
                    (None, Some(deg)) => deg.to_radians(),
                    _ => {
                        return Err(Error::InvalidParameter(
                            "rotation needs exactly one of omega, omega_deg".into(),
                        ))
                    }
                };
                Motion::Rotation {
                    center: (center[0], center[1]),
                    omega,
                }
            }
            MotionFile::Translation { dx, dy } => Motion::Translation { dx, dy },
        };
        Ok(SceneSpec {
            width: self.width,
            height: self.height,
            motion,
            texture: self.texture,
            background: self.background,
            margin: self.margin,
        })
    }
}

/// Analytic forward and backward flows and curvature maps.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundTruth {
    pub flow01: FlowField,
    pub sigma01: SigmaMap,
    pub flow10: FlowField,
    pub sigma10: SigmaMap,
}

/// Exact flows and curvature maps of the scene.
///
/// A rotation by `omega` moves every point along a circle around the center
/// with arc angle `omega`, so the curvature measure is `-sin(omega / 2)`
/// everywhere (sign fixed by the image-coordinate orientation of the arc
/// model). The backward fields come from the inverse motion.
pub fn ground_truth_fields(spec: &SceneSpec) -> Result<GroundTruth> {
    spec.validate()?;
    let (w, h) = (spec.width, spec.height);
    let motion = spec.motion;
    let flow01 = FlowField::from_fn(w, h, |x, y| {
        let p = (x as f64, y as f64);
        let q = motion.apply(p, 1.0);
        (q.0 - p.0, q.1 - p.1)
    })?;
    let flow10 = FlowField::from_fn(w, h, |x, y| {
        let p = (x as f64, y as f64);
        let q = motion.invert(p, 1.0);
        (q.0 - p.0, q.1 - p.1)
    })?;
    let s = spec.sigma01() as f32;
    Ok(GroundTruth {
        flow01,
        sigma01: SigmaMap::uniform(w, h, s)?,
        flow10,
        sigma10: SigmaMap::uniform(w, h, -s)?,
    })
}

/// Renders the scene at time `t` with 4x4 supersampling.
pub fn ground_truth_frame(spec: &SceneSpec, t: f64) -> Result<Image> {
    spec.validate()?;
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidParameter(format!("t = {t} outside [0, 1]")));
    }
    let offsets: Vec<f64> = (0..SUPERSAMPLE)
        .map(|k| (k as f64 + 0.5) / SUPERSAMPLE as f64 - 0.5)
        .collect();
    let norm = (SUPERSAMPLE * SUPERSAMPLE) as f64;
    let mut data = Vec::with_capacity(spec.width * spec.height * RENDER_CHANNELS);
    let mut acc = [0.0f64; RENDER_CHANNELS];
    for y in 0..spec.height {
        for x in 0..spec.width {
            acc.fill(0.0);
            for &oy in &offsets {
                for &ox in &offsets {
                    let (sx, sy) = spec.motion.invert((x as f64 + ox, y as f64 + oy), t);
                    for (ch, a) in acc.iter_mut().enumerate() {
                        *a += spec.object_sample(sx, sy, ch);
                    }
                }
            }
            data.extend(acc.iter().map(|a| (a / norm) as f32));
        }
    }
    Image::new(spec.width, spec.height, RENDER_CHANNELS, data)
}

/// Exact position at time `t` of the point that starts at `p`.
pub fn oracle_intermediate_position(spec: &SceneSpec, p: (f64, f64), t: f64) -> (f64, f64) {
    spec.motion.apply(p, t)
}
