//! Fusion of the two warped frames into the output frame.
//!
//! Where both warps are valid the result is the time-weighted mix
//! `(1 - t) * warp0 + t * warp1`. Where only one is valid, that one is used.
//! Where neither is, the unwarped inputs are cross-faded with the same
//! weights.

use crate::error::{Error, Result};
use crate::field::{ensure_same_dims, Image, Mask};

/// A forward-warped frame together with its validity mask.
#[derive(Debug, Clone, PartialEq)]
pub struct Warped {
    pub image: Image,
    pub mask: Mask,
}

impl Warped {
    pub fn new(image: Image, mask: Mask) -> Result<Self> {
        ensure_same_dims(image.dims(), mask.dims())?;
        Ok(Self { image, mask })
    }
}

/// Blends two warped frames at time `t`, falling back to the unwarped
/// `frame0`/`frame1` cross-fade where both warps have holes.
pub fn blend(warp0: &Warped, warp1: &Warped, frame0: &Image, frame1: &Image, t: f64) -> Result<Image> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidParameter(format!("t = {t} outside [0, 1]")));
    }
    let dims = warp0.image.dims();
    for d in [warp1.image.dims(), frame0.dims(), frame1.dims(), warp0.mask.dims(), warp1.mask.dims()] {
        ensure_same_dims(dims, d)?;
    }
    let c = warp0.image.channels();
    for img in [&warp1.image, frame0, frame1] {
        if img.channels() != c {
            return Err(Error::ChannelMismatch {
                expected: c,
                found: img.channels(),
            });
        }
    }

    let (w0, w1) = (1.0 - t, t);
    let mix = |a: f32, b: f32| (w0 * a as f64 + w1 * b as f64) as f32;
    let (a, b) = (warp0.image.as_slice(), warp1.image.as_slice());
    let (f0, f1) = (frame0.as_slice(), frame1.as_slice());
    let mut out = vec![0.0f32; a.len()];
    for (p, (&m0, &m1)) in warp0.mask.as_slice().iter().zip(warp1.mask.as_slice()).enumerate() {
        let range = p * c..(p + 1) * c;
        for i in range {
            out[i] = match (m0, m1) {
                (true, true) => mix(a[i], b[i]),
                (true, false) => a[i],
                (false, true) => b[i],
                (false, false) => mix(f0[i], f1[i]),
            };
        }
    }
    Image::new(dims.0, dims.1, c, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn warped(img: Image, mask: Vec<bool>) -> Warped {
        let (w, h) = img.dims();
        Warped::new(img, Mask::new(w, h, mask).unwrap()).unwrap()
    }

    #[test]
    fn equal_warps_are_fixed_points() {
        let img = Image::from_fn(3, 2, 3, |x, y, c| ((x + y + c) % 4) as f32 / 4.0).unwrap();
        let w = warped(img.clone(), vec![true; 6]);
        let grey = Image::filled(3, 2, 3, 0.5).unwrap();
        for t in [0.0, 0.3, 0.5, 1.0] {
            let out = blend(&w, &w, &grey, &grey, t).unwrap();
            for (o, i) in out.as_slice().iter().zip(img.as_slice()) {
                assert!((o - i).abs() <= 1e-7);
            }
        }
    }

    #[test]
    fn t_zero_returns_first_warp() {
        let a = Image::from_fn(2, 2, 1, |x, y, _| (x + 2 * y) as f32 / 3.0).unwrap();
        let b = Image::filled(2, 2, 1, 0.9).unwrap();
        let out = blend(&warped(a.clone(), vec![true; 4]), &warped(b.clone(), vec![true; 4]), &b, &b, 0.0).unwrap();
        assert_eq!(out, a);
    }

    #[test]
    fn branch_selection() {
        let a = Image::filled(2, 2, 1, 0.2).unwrap();
        let b = Image::filled(2, 2, 1, 0.6).unwrap();
        let f0 = Image::filled(2, 2, 1, 0.0).unwrap();
        let f1 = Image::filled(2, 2, 1, 1.0).unwrap();
        let w0 = warped(a, vec![true, true, false, false]);
        let w1 = warped(b, vec![true, false, true, false]);
        let out = blend(&w0, &w1, &f0, &f1, 0.25).unwrap();
        let expected = [0.75 * 0.2 + 0.25 * 0.6, 0.2, 0.6, 0.25];
        for (o, e) in out.as_slice().iter().zip(expected) {
            assert!((*o as f64 - e).abs() < 1e-7, "{o} vs {e}");
        }
    }

    #[test]
    fn mismatches_rejected() {
        let a = Image::filled(2, 2, 1, 0.2).unwrap();
        let b = Image::filled(3, 2, 1, 0.2).unwrap();
        let c3 = Image::filled(2, 2, 3, 0.2).unwrap();
        let wa = warped(a.clone(), vec![true; 4]);
        let wb = warped(b.clone(), vec![true; 6]);
        assert!(matches!(blend(&wa, &wb, &a, &a, 0.5), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(blend(&wa, &wa, &c3, &a, 0.5), Err(Error::ChannelMismatch { .. })));
        assert!(blend(&wa, &wa, &a, &a, 1.5).is_err());
    }

    proptest! {
        #[test]
        fn convex_and_symmetric(
            vals in proptest::collection::vec(0.0f32..=1.0, 16),
            masks in proptest::collection::vec(any::<bool>(), 8),
            t in 0.0f64..=1.0,
        ) {
            let img = |k: usize| Image::new(2, 2, 1, vals[4 * k..4 * k + 4].to_vec()).unwrap();
            let w0 = warped(img(0), masks[0..4].to_vec());
            let w1 = warped(img(1), masks[4..8].to_vec());
            let (f0, f1) = (img(2), img(3));
            let ab = blend(&w0, &w1, &f0, &f1, t).unwrap();
            let ba = blend(&w1, &w0, &f1, &f0, 1.0 - t).unwrap();
            for (x, y) in ab.as_slice().iter().zip(ba.as_slice()) {
                prop_assert!((0.0..=1.0).contains(x));
                prop_assert!((x - y).abs() <= 1e-6);
            }
        }
    }
}
