//! Binary netpbm images: `P6` (RGB) and `P5` (grey), 8-bit, maxval 255.
//!
//! Bytes map to samples as `b / 255`; samples map back with
//! `round(s * 255)` (halves away from zero), clamped to `[0, 255]`.

use std::io::{Read, Write};
use std::path::Path;

use super::{parse_dim, read_header_token, read_payload, with_reader, with_writer};
use crate::error::{Error, Result};
use crate::field::Image;

#[inline]
pub(crate) fn sample_to_byte(s: f32) -> u8 {
    if s.is_nan() {
        return 0;
    }
    (s as f64 * 255.0).round().clamp(0.0, 255.0) as u8
}

#[inline]
pub(crate) fn byte_to_sample(b: u8) -> f32 {
    b as f32 / 255.0
}

pub fn read_ppm_from(r: &mut dyn Read) -> Result<Image> {
    let magic = read_header_token(r, true)?;
    let channels = match magic.as_str() {
        "P6" => 3,
        "P5" => 1,
        other => return Err(Error::BadMagic(format!("expected P6 or P5, found {other:?}"))),
    };
    let width = parse_dim(&read_header_token(r, true)?)?;
    let height = parse_dim(&read_header_token(r, true)?)?;
    let maxval = read_header_token(r, true)?;
    if maxval != "255" {
        return Err(Error::MalformedHeader(format!("maxval {maxval:?} unsupported, need 255")));
    }
    let payload = read_payload(r, width * height * channels)?;
    Image::new(width, height, channels, payload.into_iter().map(byte_to_sample).collect())
}

/// Writes three-channel images as `P6` and single-channel ones as `P5`.
pub fn write_ppm_to(w: &mut dyn Write, img: &Image) -> Result<()> {
    let magic = match img.channels() {
        3 => "P6",
        1 => "P5",
        c => return Err(Error::ChannelMismatch { expected: 3, found: c }),
    };
    let mut buf = format!("{magic}\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    buf.extend(img.as_slice().iter().map(|&s| sample_to_byte(s)));
    w.write_all(&buf)?;
    Ok(())
}

pub fn read_ppm(path: impl AsRef<Path>) -> Result<Image> {
    with_reader(path.as_ref(), read_ppm_from)
}

pub fn write_ppm(path: impl AsRef<Path>, img: &Image) -> Result<()> {
    with_writer(path.as_ref(), |w| write_ppm_to(w, img))
}
