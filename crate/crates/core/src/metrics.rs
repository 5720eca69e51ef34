//! Image quality measures: PSNR, SSIM, interpolation error and the
//! Charbonnier penalty.
//!
//! All measures compare images of equal size and channel count, accumulate
//! in `f64`, and are symmetric in their arguments.

use crate::error::{Error, Result};
use crate::field::{ensure_same_dims, Image};

pub const DEFAULT_CHARBONNIER_EPSILON: f64 = 0.001;

pub const SSIM_WINDOW: usize = 11;
pub const SSIM_SIGMA: f64 = 1.5;
pub const SSIM_K1: f64 = 0.01;
pub const SSIM_K2: f64 = 0.03;

fn check_pair(a: &Image, b: &Image) -> Result<()> {
    ensure_same_dims(a.dims(), b.dims())?;
    if a.channels() != b.channels() {
        return Err(Error::ChannelMismatch {
            expected: a.channels(),
            found: b.channels(),
        });
    }
    Ok(())
}

fn sample_pairs<'a>(a: &'a Image, b: &'a Image) -> impl Iterator<Item = (f64, f64)> + 'a {
    a.as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(&x, &y)| (x as f64, y as f64))
}

/// Mean squared difference over all samples.
pub fn mse(a: &Image, b: &Image) -> Result<f64> {
    check_pair(a, b)?;
    let n = a.as_slice().len() as f64;
    Ok(sample_pairs(a, b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>() / n)
}

/// Peak signal-to-noise ratio in dB with peak 1. Identical images give
/// `f64::INFINITY`.
pub fn psnr(a: &Image, b: &Image) -> Result<f64> {
    let mse = mse(a, b)?;
    if mse == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(10.0 * (1.0 / mse).log10())
}

/// Root-mean-square difference in 8-bit units.
pub fn interpolation_error(a: &Image, b: &Image) -> Result<f64> {
    Ok(255.0 * mse(a, b)?.sqrt())
}

/// Mean of `sqrt(x^2 + epsilon^2)` over the sample differences `x`.
///
/// Evaluated as `epsilon + mean(x^2 / (sqrt(x^2 + epsilon^2) + epsilon))`,
/// which is algebraically identical and returns exactly `epsilon` for
/// identical images.
pub fn charbonnier(a: &Image, b: &Image, epsilon: f64) -> Result<f64> {
    check_pair(a, b)?;
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidParameter(format!("charbonnier epsilon {epsilon} must be positive")));
    }
    let eps2 = epsilon * epsilon;
    let n = a.as_slice().len() as f64;
    let excess: f64 = sample_pairs(a, b)
        .map(|(x, y)| {
            let d2 = (x - y) * (x - y);
            d2 / ((d2 + eps2).sqrt() + epsilon)
        })
        .sum();
    Ok(epsilon + excess / n)
}

fn gaussian_kernel() -> [f64; SSIM_WINDOW] {
    let mut k = [0.0; SSIM_WINDOW];
    let half = (SSIM_WINDOW / 2) as f64;
    for (i, v) in k.iter_mut().enumerate() {
        let x = i as f64 - half;
        *v = (-x * x / (2.0 * SSIM_SIGMA * SSIM_SIGMA)).exp();
    }
    let sum: f64 = k.iter().sum();
    k.iter_mut().for_each(|v| *v /= sum);
    k
}

/// Separable valid-region filtering of one plane.
fn filter_valid(plane: &[f64], width: usize, height: usize, k: &[f64; SSIM_WINDOW]) -> Vec<f64> {
    let ow = width - SSIM_WINDOW + 1;
    let oh = height - SSIM_WINDOW + 1;
    let mut rows = vec![0.0; ow * height];
    for y in 0..height {
        let line = &plane[y * width..(y + 1) * width];
        for x in 0..ow {
            rows[y * ow + x] = k.iter().zip(&line[x..x + SSIM_WINDOW]).map(|(w, v)| w * v).sum();
        }
    }
    let mut out = vec![0.0; ow * oh];
    for y in 0..oh {
        for x in 0..ow {
            out[y * ow + x] = k
                .iter()
                .enumerate()
                .map(|(j, w)| w * rows[(y + j) * ow + x])
                .sum();
        }
    }
    out
}

/// Structural similarity: mean of the local SSIM map over all valid window
/// positions and channels (11x11 Gaussian window, sigma 1.5, no padding,
/// dynamic range 1).
pub fn ssim(a: &Image, b: &Image) -> Result<f64> {
    check_pair(a, b)?;
    let (w, h) = a.dims();
    if w < SSIM_WINDOW || h < SSIM_WINDOW {
        return Err(Error::ImageTooSmall {
            width: w,
            height: h,
            min_side: SSIM_WINDOW,
        });
    }
    let c1 = (SSIM_K1 * 1.0).powi(2);
    let c2 = (SSIM_K2 * 1.0).powi(2);
    let k = gaussian_kernel();
    let channels = a.channels();

    let mut total = 0.0;
    let mut count = 0usize;
    for ch in 0..channels {
        let pa: Vec<f64> = a.as_slice().iter().skip(ch).step_by(channels).map(|&v| v as f64).collect();
        let pb: Vec<f64> = b.as_slice().iter().skip(ch).step_by(channels).map(|&v| v as f64).collect();
        let mu_a = filter_valid(&pa, w, h, &k);
        let mu_b = filter_valid(&pb, w, h, &k);
        let sq = |p: &[f64], q: &[f64]| p.iter().zip(q).map(|(x, y)| x * y).collect::<Vec<_>>();
        let e_aa = filter_valid(&sq(&pa, &pa), w, h, &k);
        let e_bb = filter_valid(&sq(&pb, &pb), w, h, &k);
        let e_ab = filter_valid(&sq(&pa, &pb), w, h, &k);
        for i in 0..mu_a.len() {
            let (ma, mb) = (mu_a[i], mu_b[i]);
            let var_a = e_aa[i] - ma * ma;
            let var_b = e_bb[i] - mb * mb;
            let cov = e_ab[i] - ma * mb;
            let num = (2.0 * ma * mb + c1) * (2.0 * cov + c2);
            let den = (ma * ma + mb * mb + c1) * (var_a + var_b + c2);
            total += num / den;
        }
        count += mu_a.len();
    }
    Ok(total / count as f64)
}

/// All four measures for one image pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QualityReport {
    pub psnr: f64,
    pub ssim: f64,
    pub ie: f64,
    pub charbonnier: f64,
}

pub fn evaluate(a: &Image, b: &Image) -> Result<QualityReport> {
    Ok(QualityReport {
        psnr: psnr(a, b)?,
        ssim: ssim(a, b)?,
        ie: interpolation_error(a, b)?,
        charbonnier: charbonnier(a, b, DEFAULT_CHARBONNIER_EPSILON)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_image(seed: u64, w: usize, h: usize, c: usize) -> Image {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Image::from_fn(w, h, c, |_, _, _| rng.gen::<f32>()).unwrap()
    }

    #[test]
    fn psnr_identical_is_infinite() {
        let a = random_image(1, 8, 8, 3);
        assert_eq!(psnr(&a, &a).unwrap(), f64::INFINITY);
    }

    #[test]
    fn psnr_constant_offset() {
        let a = Image::filled(5, 4, 3, 0.25).unwrap();
        let b = Image::filled(5, 4, 3, 0.35).unwrap();
        // f32 samples: the offset is 0.1 only to ~1e-8
        assert!((psnr(&a, &b).unwrap() - 20.0).abs() < 1e-5);
    }

    #[test]
    fn ie_uniform_offset() {
        let a = Image::filled(4, 4, 3, 10.0 / 255.0).unwrap();
        let b = Image::filled(4, 4, 3, 12.0 / 255.0).unwrap();
        assert!((interpolation_error(&a, &b).unwrap() - 2.0).abs() < 1e-5);
        assert_eq!(interpolation_error(&a, &a).unwrap(), 0.0);
    }

    #[test]
    fn charbonnier_values() {
        let a = random_image(2, 6, 5, 3);
        assert_eq!(charbonnier(&a, &a, DEFAULT_CHARBONNIER_EPSILON).unwrap(), 0.001);
        let z = Image::filled(3, 3, 1, 0.0).unwrap();
        let h = Image::filled(3, 3, 1, 0.5).unwrap();
        let got = charbonnier(&z, &h, 0.001).unwrap();
        assert!((got - (0.25f64 + 1e-6).sqrt()).abs() < 1e-15);
        assert!(charbonnier(&z, &h, 0.0).is_err());
    }

    #[test]
    fn ssim_identity_and_size() {
        let a = random_image(3, 16, 12, 3);
        assert_eq!(ssim(&a, &a).unwrap(), 1.0);
        let small = random_image(4, 10, 20, 1);
        assert!(matches!(ssim(&small, &small), Err(Error::ImageTooSmall { .. })));
    }

    #[test]
    fn ssim_constant_images_luminance_only() {
        let (ma, mb) = (0.2f32, 0.7f32);
        let a = Image::filled(13, 12, 1, ma).unwrap();
        let b = Image::filled(13, 12, 1, mb).unwrap();
        let (ma, mb) = (ma as f64, mb as f64);
        let c1 = 0.0001;
        let expected = (2.0 * ma * mb + c1) / (ma * ma + mb * mb + c1);
        assert!((ssim(&a, &b).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn ssim_anticorrelated_checkerboard() {
        let a = Image::from_fn(16, 16, 1, |x, y, _| ((x + y) % 2) as f32).unwrap();
        let b = Image::from_fn(16, 16, 1, |x, y, _| 1.0 - a.get(x, y, 0)).unwrap();
        let s = ssim(&a, &b).unwrap();
        assert!(s <= 0.0, "ssim {s}");
    }

    #[test]
    fn mismatched_inputs() {
        let a = Image::filled(12, 12, 3, 0.0).unwrap();
        let b = Image::filled(12, 11, 3, 0.0).unwrap();
        let c = Image::filled(12, 12, 1, 0.0).unwrap();
        assert!(matches!(psnr(&a, &b), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(ssim(&a, &c), Err(Error::ChannelMismatch { .. })));
    }

    #[test]
    fn kernel_is_normalized_and_symmetric() {
        let k = gaussian_kernel();
        assert!((k.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        for i in 0..SSIM_WINDOW {
            assert_eq!(k[i], k[SSIM_WINDOW - 1 - i]);
        }
    }

    proptest! {
        #[test]
        fn symmetric_and_bounded(sa in 0u64..1000, sb in 0u64..1000) {
            let a = random_image(sa, 12, 11, 1);
            let b = random_image(sb + 1000, 12, 11, 1);
            prop_assert_eq!(psnr(&a, &b).unwrap(), psnr(&b, &a).unwrap());
            prop_assert_eq!(ssim(&a, &b).unwrap(), ssim(&b, &a).unwrap());
            prop_assert_eq!(interpolation_error(&a, &b).unwrap(), interpolation_error(&b, &a).unwrap());
            let s = ssim(&a, &b).unwrap();
            prop_assert!((-1.0..=1.0).contains(&s));
            prop_assert!(charbonnier(&a, &b, 0.001).unwrap() > 0.001);
        }
    }
}
