//! Portable float maps.
//!
//! Header: `Pf` (one channel) or `PF` (three channels), width and height,
//! then a scale whose sign selects byte order (negative means
//! little-endian). Rows are stored bottom to top. Curvature maps travel as
//! single-channel PFM so that values near the threshold keep full `f32`
//! precision.

use std::io::{Read, Write};
use std::path::Path;

use super::{parse_dim, read_header_token, read_payload, with_reader, with_writer};
use crate::error::{Error, Result};
use crate::field::{Clamped, Image, SigmaMap};

pub fn read_pfm_from(r: &mut dyn Read) -> Result<Image> {
    let magic = read_header_token(r, false)?;
    let channels = match magic.as_str() {
        "Pf" => 1,
        "PF" => 3,
        other => return Err(Error::BadMagic(format!("expected Pf or PF, found {other:?}"))),
    };
    let width = parse_dim(&read_header_token(r, false)?)?;
    let height = parse_dim(&read_header_token(r, false)?)?;
    let scale_tok = read_header_token(r, false)?;
    let scale: f64 = scale_tok
        .parse()
        .map_err(|_| Error::MalformedHeader(format!("bad scale {scale_tok:?}")))?;
    if scale == 0.0 || !scale.is_finite() {
        return Err(Error::MalformedHeader(format!("bad scale {scale_tok:?}")));
    }
    let little = scale < 0.0;

    let row_len = width * channels;
    let payload = read_payload(r, row_len * height * 4)?;
    let mut data = vec![0.0f32; row_len * height];
    for (file_row, bytes) in payload.chunks_exact(row_len * 4).enumerate() {
        let y = height - 1 - file_row;
        for (dst, b) in data[y * row_len..(y + 1) * row_len].iter_mut().zip(bytes.chunks_exact(4)) {
            let b: [u8; 4] = b.try_into().unwrap();
            *dst = if little { f32::from_le_bytes(b) } else { f32::from_be_bytes(b) };
        }
    }
    Image::new(width, height, channels, data)
}

/// Writes a little-endian PFM. Only one- and three-channel images are allowed.
pub fn write_pfm_to(w: &mut dyn Write, img: &Image) -> Result<()> {
    let magic = match img.channels() {
        1 => "Pf",
        3 => "PF",
        c => return Err(Error::ChannelMismatch { expected: 1, found: c }),
    };
    let mut buf = format!("{magic}\n{} {}\n-1.0\n", img.width(), img.height()).into_bytes();
    let row_len = img.width() * img.channels();
    for row in img.as_slice().chunks_exact(row_len).rev() {
        for v in row {
            buf.extend_from_slice(&v.to_le_bytes());
        }
    }
    w.write_all(&buf)?;
    Ok(())
}

pub fn read_pfm(path: impl AsRef<Path>) -> Result<Image> {
    with_reader(path.as_ref(), read_pfm_from)
}

pub fn write_pfm(path: impl AsRef<Path>, img: &Image) -> Result<()> {
    with_writer(path.as_ref(), |w| write_pfm_to(w, img))
}

/// Loads a single-channel PFM as a curvature map, clamping values outside
/// `[-1, 1]` and reporting how many were clamped.
pub fn read_sigma(path: impl AsRef<Path>) -> Result<Clamped<SigmaMap>> {
    let path = path.as_ref();
    read_pfm(path)?.to_sigma().map_err(|e| e.in_file(path))
}

pub fn write_sigma(path: impl AsRef<Path>, sigma: &SigmaMap) -> Result<()> {
    write_pfm(path, &sigma.to_image())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn little_endian_one_by_one() {
        let mut bytes = b"Pf\n1 1\n-1.0\n".to_vec();
        bytes.extend_from_slice(&[0x00, 0x00, 0x00, 0x3F]); // 0.5
        let img = read_pfm_from(&mut bytes.as_slice()).unwrap();
        assert_eq!(img.dims(), (1, 1));
        assert_eq!(img.as_slice(), &[0.5]);
        let mut out = Vec::new();
        write_pfm_to(&mut out, &img).unwrap();
        assert_eq!(out, bytes);
    }

    #[test]
    fn big_endian_and_row_order() {
        let mut bytes = b"Pf\n1 2\n1.0\n".to_vec();
        bytes.extend_from_slice(&1.0f32.to_be_bytes()); // bottom row
        bytes.extend_from_slice(&(-0.25f32).to_be_bytes()); // top row
        let img = read_pfm_from(&mut bytes.as_slice()).unwrap();
        assert_eq!(img.as_slice(), &[-0.25, 1.0]);
    }

    #[test]
    fn three_channel() {
        let img = Image::from_fn(2, 3, 3, |x, y, c| (x + 10 * y + 100 * c) as f32).unwrap();
        let mut out = Vec::new();
        write_pfm_to(&mut out, &img).unwrap();
        assert!(out.starts_with(b"PF\n2 3\n"));
        assert_eq!(read_pfm_from(&mut out.as_slice()).unwrap(), img);
    }

    #[test]
    fn malformed_headers() {
        for bad in [&b"P6\n1 1\n-1.0\n"[..], b"Pf\nx 1\n-1.0\n", b"Pf\n1 1\n0\n", b"Pf\n1 1\nabc\n", b"Pf\n1", b"Pf\n0 1\n-1\n"] {
            assert!(read_pfm_from(&mut &bad[..]).is_err(), "{:?}", String::from_utf8_lossy(bad));
        }
        assert!(matches!(
            read_pfm_from(&mut &b"Pf\n2 1\n-1.0\n\0\0\0\0"[..]),
            Err(Error::Truncated { .. })
        ));
    }

    #[test]
    fn clamps_slightly_out_of_range_sigma() {
        let img = Image::new(3, 1, 1, vec![1.000_000_1, 0.3, -1.0]).unwrap();
        let c = img.to_sigma().unwrap();
        assert_eq!(c.clamped, 1);
        assert_eq!(c.value.as_slice(), &[1.0, 0.3, -1.0]);
    }
}
