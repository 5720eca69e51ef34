//! Dense per-pixel containers: flow fields, curvature maps, images and masks.
//!
//! All containers are row-major with `x` the column index (increasing
//! rightward) and `y` the row index (increasing downward).

use crate::error::{Error, Result};

fn check_dims(width: usize, height: usize) -> Result<()> {
    if width == 0 || height == 0 {
        return Err(Error::InvalidDimensions {
            width: width as i64,
            height: height as i64,
        });
    }
    Ok(())
}

fn check_len(len: usize, expected: usize) -> Result<()> {
    if len != expected {
        return Err(Error::InvalidParameter(format!(
            "buffer holds {len} samples, expected {expected}"
        )));
    }
    Ok(())
}

fn first_non_finite(data: &[f32]) -> Option<usize> {
    data.iter().position(|v| !v.is_finite())
}

/// Per-pixel 2-vector motion map in pixels, stored interleaved `(u, v)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowField {
    width: usize,
    height: usize,
    data: Vec<f32>,
}

impl FlowField {
    pub fn zeros(width: usize, height: usize) -> Result<Self> {
        check_dims(width, height)?;
        Ok(Self {
            width,
            height,
            data: vec![0.0; width * height * 2],
        })
    }

    /// Builds a field from interleaved `(u, v)` samples. Rejects non-finite values.
    pub fn from_interleaved(width: usize, height: usize, data: Vec<f32>) -> Result<Self> {
        check_dims(width, height)?;
        check_len(data.len(), width * height * 2)?;
        if let Some(index) = first_non_finite(&data) {
            return Err(Error::NonFinite { what: "flow", index });
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    /// Builds a field by evaluating `f(x, y) -> (u, v)` at every pixel.
    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> (f64, f64),
    ) -> Result<Self> {
        check_dims(width, height)?;
        let mut data = Vec::with_capacity(width * height * 2);
        for y in 0..height {
            for x in 0..width {
                let (u, v) = f(x, y);
                data.push(u as f32);
                data.push(v as f32);
            }
        }
        Self::from_interleaved(width, height, data)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn len(&self) -> usize {
        self.width * self.height
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> (f32, f32) {
        let i = 2 * (y * self.width + x);
        (self.data[i], self.data[i + 1])
    }

    pub fn as_interleaved(&self) -> &[f32] {
        &self.data
    }

    pub fn into_interleaved(self) -> Vec<f32> {
        self.data
    }

    pub fn iter(&self) -> impl Iterator<Item = (f32, f32)> + '_ {
        self.data.chunks_exact(2).map(|c| (c[0], c[1]))
    }
}

/// Result of loading values into a [`SigmaMap`]: the map plus how many
/// samples had to be clamped into `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Clamped<T> {
    pub value: T,
    pub clamped: usize,
}

/// Per-pixel signed curvature measure `sigma = sin(beta)`, always in `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SigmaMap {
    width: usize,
    height: usize,
    data: Vec<f32>,
}

impl SigmaMap {
    pub fn zeros(width: usize, height: usize) -> Result<Self> {
        Self::uniform(width, height, 0.0)
    }

    pub fn uniform(width: usize, height: usize, sigma: f32) -> Result<Self> {
        check_dims(width, height)?;
        Self::new(width, height, vec![sigma; width * height])
    }

    /// Strict constructor: every value must already lie in `[-1, 1]`.
    pub fn new(width: usize, height: usize, data: Vec<f32>) -> Result<Self> {
        check_dims(width, height)?;
        check_len(data.len(), width * height)?;
        if let Some(index) = first_non_finite(&data) {
            return Err(Error::NonFinite {
                what: "sigma",
                index,
            });
        }
        if let Some(bad) = data.iter().find(|s| s.abs() > 1.0) {
            return Err(Error::Domain(format!("sigma {bad} outside [-1, 1]")));
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    /// Lenient constructor for externally produced maps: values beyond
    /// `[-1, 1]` are clamped and counted. Non-finite values are still rejected.
    pub fn new_clamped(width: usize, height: usize, mut data: Vec<f32>) -> Result<Clamped<Self>> {
        check_dims(width, height)?;
        check_len(data.len(), width * height)?;
        if let Some(index) = first_non_finite(&data) {
            return Err(Error::NonFinite {
                what: "sigma",
                index,
            });
        }
        let mut clamped = 0;
        for s in data.iter_mut() {
            if s.abs() > 1.0 {
                *s = s.clamp(-1.0, 1.0);
                clamped += 1;
            }
        }
        Ok(Clamped {
            value: Self {
                width,
                height,
                data,
            },
            clamped,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f32 {
        self.data[y * self.width + x]
    }

    pub fn as_slice(&self) -> &[f32] {
        &self.data
    }

    /// Single-channel image view of the map, for warping alongside frames.
    pub fn to_image(&self) -> Image {
        Image {
            width: self.width,
            height: self.height,
            channels: 1,
            data: self.data.clone(),
        }
    }
}

/// Multi-channel float sample grid, interleaved `HxWxC`. Frames use samples
/// in `[0, 1]`; other planes (warped curvature, for instance) may not.
#[derive(Debug, Clone, PartialEq)]
pub struct Image {
    width: usize,
    height: usize,
    channels: usize,
    data: Vec<f32>,
}

impl Image {
    pub fn new(width: usize, height: usize, channels: usize, data: Vec<f32>) -> Result<Self> {
        check_dims(width, height)?;
        if channels == 0 {
            return Err(Error::InvalidParameter("image needs at least one channel".into()));
        }
        check_len(data.len(), width * height * channels)?;
        Ok(Self {
            width,
            height,
            channels,
            data,
        })
    }

    pub fn filled(width: usize, height: usize, channels: usize, value: f32) -> Result<Self> {
        check_dims(width, height)?;
        Self::new(width, height, channels, vec![value; width * height * channels])
    }

    pub fn from_fn(
        width: usize,
        height: usize,
        channels: usize,
        mut f: impl FnMut(usize, usize, usize) -> f32,
    ) -> Result<Self> {
        check_dims(width, height)?;
        let mut data = Vec::with_capacity(width * height * channels);
        for y in 0..height {
            for x in 0..width {
                for c in 0..channels {
                    data.push(f(x, y, c));
                }
            }
        }
        Self::new(width, height, channels, data)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize, c: usize) -> f32 {
        self.data[(y * self.width + x) * self.channels + c]
    }

    #[inline]
    pub fn pixel(&self, x: usize, y: usize) -> &[f32] {
        let i = (y * self.width + x) * self.channels;
        &self.data[i..i + self.channels]
    }

    pub fn as_slice(&self) -> &[f32] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [f32] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<f32> {
        self.data
    }

    /// Interprets a single-channel image as a curvature map, clamping as
    /// [`SigmaMap::new_clamped`] does.
    pub fn to_sigma(&self) -> Result<Clamped<SigmaMap>> {
        if self.channels != 1 {
            return Err(Error::ChannelMismatch {
                expected: 1,
                found: self.channels,
            });
        }
        SigmaMap::new_clamped(self.width, self.height, self.data.clone())
    }
}

/// Per-pixel validity flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mask {
    width: usize,
    height: usize,
    data: Vec<bool>,
}

impl Mask {
    pub fn new(width: usize, height: usize, data: Vec<bool>) -> Result<Self> {
        check_dims(width, height)?;
        if data.len() != width * height {
            return Err(Error::InvalidParameter(format!(
                "mask holds {} flags, expected {}",
                data.len(),
                width * height
            )));
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    pub fn filled(width: usize, height: usize, value: bool) -> Result<Self> {
        check_dims(width, height)?;
        Self::new(width, height, vec![value; width * height])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> bool {
        self.data[y * self.width + x]
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.data
    }

    pub fn count(&self) -> usize {
        self.data.iter().filter(|&&m| m).count()
    }

    pub fn all(&self) -> bool {
        self.data.iter().all(|&m| m)
    }

    pub fn none(&self) -> bool {
        !self.data.iter().any(|&m| m)
    }

    /// 0/1 single-channel image, handy for dumping to disk.
    pub fn to_image(&self) -> Image {
        Image {
            width: self.width,
            height: self.height,
            channels: 1,
            data: self.data.iter().map(|&m| if m { 1.0 } else { 0.0 }).collect(),
        }
    }
}

pub(crate) fn ensure_same_dims(expected: (usize, usize), found: (usize, usize)) -> Result<()> {
    if expected != found {
        return Err(Error::dims(expected, found));
    }
    Ok(())
}
