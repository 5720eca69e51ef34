//! Forward warping by bilinear splatting.
//!
//! Every source pixel `p` is pushed to `q = p + flow(p)` and its samples are
//! distributed over the four integer neighbors of `q` with bilinear weights.
//! The same weights are accumulated in a separate plane, and average
//! splatting divides the two. Neighbors that fall outside the frame are
//! dropped. Accumulation is sequential and in `f64`.

use crate::error::{Error, Result};
use crate::field::{ensure_same_dims, FlowField, Image, Mask};

/// Accumulated weight at or below this value marks a hole.
pub const HOLE_EPSILON: f64 = 1e-7;

/// Raw accumulation planes of a forward splat.
#[derive(Debug, Clone, PartialEq)]
pub struct SplatResult {
    pub width: usize,
    pub height: usize,
    pub channels: usize,
    /// Weighted sample sums, interleaved `HxWxC`.
    pub values: Vec<f64>,
    /// Sum of splat weights per target pixel.
    pub weights: Vec<f64>,
    /// `weight > HOLE_EPSILON`.
    pub mask: Vec<bool>,
}

impl SplatResult {
    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Normalizes the accumulated values. Holes get the sentinel 0.
    pub fn average(&self) -> Result<(Image, Mask)> {
        let c = self.channels;
        let mut out = vec![0.0f32; self.values.len()];
        for (i, (&w, &valid)) in self.weights.iter().zip(&self.mask).enumerate() {
            if valid {
                for k in 0..c {
                    out[i * c + k] = (self.values[i * c + k] / w) as f32;
                }
            }
        }
        Ok((
            Image::new(self.width, self.height, c, out)?,
            Mask::new(self.width, self.height, self.mask.clone())?,
        ))
    }
}

/// Bilinear stencil of a landing point: up to four `(x, y, weight)` targets
/// with in-frame coordinates and nonzero weight.
#[inline]
fn stencil(qx: f64, qy: f64, width: usize, height: usize) -> impl Iterator<Item = (usize, usize, f64)> {
    let x0 = qx.floor();
    let y0 = qy.floor();
    let fx = qx - x0;
    let fy = qy - y0;
    let corners = [
        (x0, y0, (1.0 - fx) * (1.0 - fy)),
        (x0 + 1.0, y0, fx * (1.0 - fy)),
        (x0, y0 + 1.0, (1.0 - fx) * fy),
        (x0 + 1.0, y0 + 1.0, fx * fy),
    ];
    let (w, h) = (width as f64, height as f64);
    corners.into_iter().filter_map(move |(x, y, wt)| {
        if wt > 0.0 && x >= 0.0 && y >= 0.0 && x < w && y < h {
            Some((x as usize, y as usize, wt))
        } else {
            None
        }
    })
}

fn check_inputs(source: &Image, flow: &FlowField) -> Result<()> {
    ensure_same_dims(flow.dims(), source.dims())?;
    if let Some(index) = flow.as_interleaved().iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite { what: "flow", index });
    }
    Ok(())
}

pub(crate) fn splat_sum_in_order(
    source: &Image,
    flow: &FlowField,
    order: impl IntoIterator<Item = usize>,
) -> Result<SplatResult> {
    check_inputs(source, flow)?;
    let (width, height) = flow.dims();
    let c = source.channels();
    let mut values = vec![0.0f64; width * height * c];
    let mut weights = vec![0.0f64; width * height];
    let src = source.as_slice();
    let fl = flow.as_interleaved();

    for p in order {
        let (x, y) = (p % width, p / width);
        let qx = x as f64 + fl[2 * p] as f64;
        let qy = y as f64 + fl[2 * p + 1] as f64;
        let samples = &src[p * c..(p + 1) * c];
        for (tx, ty, wt) in stencil(qx, qy, width, height) {
            let t = ty * width + tx;
            weights[t] += wt;
            for (acc, &s) in values[t * c..(t + 1) * c].iter_mut().zip(samples) {
                *acc += wt * s as f64;
            }
        }
    }

    let mask = weights.iter().map(|&w| w > HOLE_EPSILON).collect();
    Ok(SplatResult {
        width,
        height,
        channels: c,
        values,
        weights,
        mask,
    })
}

/// Summation splat: accumulates weighted samples and weights without
/// normalizing.
pub fn splat_sum(source: &Image, flow: &FlowField) -> Result<SplatResult> {
    splat_sum_in_order(source, flow, 0..flow.len())
}

/// Average splat: the forward-warped image plus its validity mask.
pub fn splat_average(source: &Image, flow: &FlowField) -> Result<(Image, Mask)> {
    splat_sum(source, flow)?.average()
}

/// Warps several maps with one flow in a single splat so they share weights
/// and mask. Returns the warped maps in input order and the common mask.
pub fn warp_bundle(maps: &[&Image], flow: &FlowField) -> Result<(Vec<Image>, Mask)> {
    if maps.is_empty() {
        return Err(Error::InvalidParameter("empty warp bundle".into()));
    }
    for m in maps {
        ensure_same_dims(flow.dims(), m.dims())?;
    }
    let (width, height) = flow.dims();
    let total: usize = maps.iter().map(|m| m.channels()).sum();
    let mut stacked = Vec::with_capacity(width * height * total);
    for p in 0..width * height {
        for m in maps {
            let c = m.channels();
            stacked.extend_from_slice(&m.as_slice()[p * c..(p + 1) * c]);
        }
    }
    let stacked = Image::new(width, height, total, stacked)?;
    let (warped, mask) = splat_average(&stacked, flow)?;

    let mut outputs: Vec<Vec<f32>> = maps
        .iter()
        .map(|m| Vec::with_capacity(width * height * m.channels()))
        .collect();
    for px in warped.as_slice().chunks_exact(total) {
        let mut offset = 0;
        for (out, m) in outputs.iter_mut().zip(maps) {
            out.extend_from_slice(&px[offset..offset + m.channels()]);
            offset += m.channels();
        }
    }
    let images = outputs
        .into_iter()
        .zip(maps)
        .map(|(data, m)| Image::new(width, height, m.channels(), data))
        .collect::<Result<Vec<_>>>()?;
    Ok((images, mask))
}
