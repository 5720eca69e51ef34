//! Middlebury `.flo` optical flow files.
//!
//! Layout, all little-endian: `f32` magic `202021.25` (the bytes `PIEH`),
//! `i32` width, `i32` height, then `width * height` interleaved `(u, v)`
//! `f32` pairs in row-major order.

use std::io::{Read, Write};
use std::path::Path;

use super::{read_payload, with_reader, with_writer};
use crate::error::{Error, Result};
use crate::field::FlowField;

pub const FLO_MAGIC: f32 = 202021.25;

pub fn read_flo_from(r: &mut dyn Read) -> Result<FlowField> {
    let header = read_payload(r, 12).map_err(|e| match e {
        Error::Truncated { found, .. } => Error::BadMagic(format!("flo header is only {found} bytes")),
        e => e,
    })?;
    let magic = f32::from_le_bytes(header[0..4].try_into().unwrap());
    if magic != FLO_MAGIC {
        return Err(Error::BadMagic(format!(
            "expected flo magic {FLO_MAGIC}, found {magic} ({:?})",
            String::from_utf8_lossy(&header[0..4])
        )));
    }
    let width = i32::from_le_bytes(header[4..8].try_into().unwrap());
    let height = i32::from_le_bytes(header[8..12].try_into().unwrap());
    if width <= 0 || height <= 0 {
        return Err(Error::InvalidDimensions {
            width: width as i64,
            height: height as i64,
        });
    }
    let (width, height) = (width as usize, height as usize);
    let payload = read_payload(r, width * height * 8)?;
    let data = payload
        .chunks_exact(4)
        .map(|b| f32::from_le_bytes(b.try_into().unwrap()))
        .collect();
    FlowField::from_interleaved(width, height, data)
}

pub fn write_flo_to(w: &mut dyn Write, flow: &FlowField) -> Result<()> {
    let mut buf = Vec::with_capacity(12 + flow.len() * 8);
    buf.extend_from_slice(&FLO_MAGIC.to_le_bytes());
    buf.extend_from_slice(&(flow.width() as i32).to_le_bytes());
    buf.extend_from_slice(&(flow.height() as i32).to_le_bytes());
    for v in flow.as_interleaved() {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    w.write_all(&buf)?;
    Ok(())
}

pub fn read_flo(path: impl AsRef<Path>) -> Result<FlowField> {
    with_reader(path.as_ref(), read_flo_from)
}

pub fn write_flo(path: impl AsRef<Path>, flow: &FlowField) -> Result<()> {
    with_writer(path.as_ref(), |w| write_flo_to(w, flow))
}
