//! Independent reference computations shared by the integration suites.
#![allow(dead_code)]

use arcvfi::{FlowField, Image};
use rand::Rng;

pub fn random_image(rng: &mut impl Rng, w: usize, h: usize, c: usize) -> Image {
    Image::from_fn(w, h, c, |_, _, _| rng.gen::<f32>()).unwrap()
}

pub fn random_flow(rng: &mut impl Rng, w: usize, h: usize, amp: f64) -> FlowField {
    FlowField::from_fn(w, h, |_, _| (rng.gen_range(-amp..amp), rng.gen_range(-amp..amp))).unwrap()
}

/// Image quantized to 8-bit levels, as PPM round trips require.
pub fn random_quantized_image(rng: &mut impl Rng, w: usize, h: usize, c: usize) -> Image {
    Image::from_fn(w, h, c, |_, _, _| rng.gen::<u8>() as f32 / 255.0).unwrap()
}

/// Mean squared error by explicit loops over rows, columns and channels.
pub fn brute_mse(a: &Image, b: &Image) -> f64 {
    let mut sum = 0.0;
    let mut n = 0usize;
    for y in 0..a.height() {
        for x in 0..a.width() {
            for c in 0..a.channels() {
                let d = a.get(x, y, c) as f64 - b.get(x, y, c) as f64;
                sum += d * d;
                n += 1;
            }
        }
    }
    sum / n as f64
}

pub fn brute_psnr(a: &Image, b: &Image) -> f64 {
    -10.0 * brute_mse(a, b).log10()
}

pub fn brute_ie(a: &Image, b: &Image) -> f64 {
    let mut sum = 0.0;
    let mut n = 0usize;
    for y in 0..a.height() {
        for x in 0..a.width() {
            for c in 0..a.channels() {
                let d = 255.0 * a.get(x, y, c) as f64 - 255.0 * b.get(x, y, c) as f64;
                sum += d * d;
                n += 1;
            }
        }
    }
    (sum / n as f64).sqrt()
}

pub fn brute_charbonnier(a: &Image, b: &Image, eps: f64) -> f64 {
    let mut sum = 0.0;
    let mut n = 0usize;
    for y in 0..a.height() {
        for x in 0..a.width() {
            for c in 0..a.channels() {
                let d = a.get(x, y, c) as f64 - b.get(x, y, c) as f64;
                sum += (d * d + eps * eps).sqrt();
                n += 1;
            }
        }
    }
    sum / n as f64
}

fn overlap(a0: f64, a1: f64, b0: f64, b1: f64) -> f64 {
    (a1.min(b1) - a0.max(b0)).max(0.0)
}

/// Total in-frame splat weight, computed geometrically: a bilinear stencil
/// at `q` equals the overlap of the unit square centred on `q` with the unit
/// squares centred on the integer pixels, so the in-frame fraction is the
/// area of that square inside `[-0.5, W - 0.5] x [-0.5, H - 0.5]`.
pub fn brute_total_weight(flow: &FlowField) -> f64 {
    let (w, h) = flow.dims();
    let mut total = 0.0;
    for y in 0..h {
        for x in 0..w {
            let (u, v) = flow.get(x, y);
            let qx = x as f64 + u as f64;
            let qy = y as f64 + v as f64;
            total += overlap(qx - 0.5, qx + 0.5, -0.5, w as f64 - 0.5)
                * overlap(qy - 0.5, qy + 0.5, -0.5, h as f64 - 0.5);
        }
    }
    total
}

/// Per-target accumulated weight by visiting every target pixel and every
/// source pixel.
pub fn brute_weights(flow: &FlowField) -> Vec<f64> {
    let (w, h) = flow.dims();
    let mut out = vec![0.0; w * h];
    for ty in 0..h {
        for tx in 0..w {
            let mut acc = 0.0;
            for y in 0..h {
                for x in 0..w {
                    let (u, v) = flow.get(x, y);
                    let qx = x as f64 + u as f64;
                    let qy = y as f64 + v as f64;
                    let wx = (1.0 - (qx - tx as f64).abs()).max(0.0);
                    let wy = (1.0 - (qy - ty as f64).abs()).max(0.0);
                    acc += wx * wy;
                }
            }
            out[ty * w + tx] = acc;
        }
    }
    out
}

pub fn rotate(p: (f64, f64), c: (f64, f64), angle: f64) -> (f64, f64) {
    let (s, co) = angle.sin_cos();
    let (rx, ry) = (p.0 - c.0, p.1 - c.1);
    (c.0 + co * rx - s * ry, c.1 + s * rx + co * ry)
}
