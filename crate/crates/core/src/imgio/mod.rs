//! File codecs for flows, curvature maps and images, plus flow visualization.
//!
//! Every codec has a stream form (`read_*_from` / `write_*_to`) and a path
//! form that attaches the path to any error.

mod color;
mod flo;
mod pfm;
mod ppm;

pub use color::{flow_to_color, MaxMagnitude};
pub use flo::{read_flo, read_flo_from, write_flo, write_flo_to, FLO_MAGIC};
pub use pfm::{read_pfm, read_pfm_from, read_sigma, write_pfm, write_pfm_to, write_sigma};
pub use ppm::{read_ppm, read_ppm_from, write_ppm, write_ppm_to};

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};

pub(crate) fn with_reader<T>(path: &Path, f: impl FnOnce(&mut dyn Read) -> Result<T>) -> Result<T> {
    let file = File::open(path).map_err(|e| Error::from(e).in_file(path))?;
    let mut reader = BufReader::new(file);
    f(&mut reader).map_err(|e| e.in_file(path))
}

pub(crate) fn with_writer(path: &Path, f: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::from(e).in_file(path))?;
    let mut writer = BufWriter::new(file);
    f(&mut writer)
        .and_then(|_| writer.flush().map_err(Error::from))
        .map_err(|e| e.in_file(path))
}

/// Reads exactly `len` bytes, reporting a short read as truncation.
pub(crate) fn read_payload(r: &mut dyn Read, len: usize) -> Result<Vec<u8>> {
    let mut buf = Vec::with_capacity(len.min(1 << 26));
    r.take(len as u64).read_to_end(&mut buf)?;
    if buf.len() != len {
        return Err(Error::Truncated {
            expected: len,
            found: buf.len(),
        });
    }
    Ok(buf)
}

fn read_byte(r: &mut dyn Read) -> Result<Option<u8>> {
    let mut b = [0u8; 1];
    loop {
        match r.read(&mut b) {
            Ok(0) => return Ok(None),
            Ok(_) => return Ok(Some(b[0])),
            Err(e) if e.kind() == std::io::ErrorKind::Interrupted => continue,
            Err(e) => return Err(e.into()),
        }
    }
}

const MAX_TOKEN: usize = 64;

/// Reads one whitespace-delimited ASCII header token, skipping leading
/// whitespace and (when `comments` is set) `#` comments. Consumes exactly one
/// whitespace byte after the token.
pub(crate) fn read_header_token(r: &mut dyn Read, comments: bool) -> Result<String> {
    let mut token = Vec::new();
    loop {
        let Some(b) = read_byte(r)? else {
            return Err(Error::MalformedHeader("unexpected end of header".into()));
        };
        if b.is_ascii_whitespace() {
            if token.is_empty() {
                continue;
            }
            break;
        }
        if comments && b == b'#' && token.is_empty() {
            while let Some(c) = read_byte(r)? {
                if c == b'\n' || c == b'\r' {
                    break;
                }
            }
            continue;
        }
        if !b.is_ascii_graphic() || token.len() >= MAX_TOKEN {
            return Err(Error::MalformedHeader("invalid header token".into()));
        }
        token.push(b);
    }
    Ok(String::from_utf8(token).expect("ascii token"))
}

pub(crate) fn parse_dim(token: &str) -> Result<usize> {
    let v: i64 = token
        .parse()
        .map_err(|_| Error::MalformedHeader(format!("bad dimension {token:?}")))?;
    if v <= 0 || v > i32::MAX as i64 {
        return Err(Error::InvalidDimensions { width: v, height: v });
    }
    Ok(v as usize)
}
