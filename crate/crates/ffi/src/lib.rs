//! C ABI for arcvfi.
//!
//! Images, flow fields and curvature maps cross the boundary as opaque
//! handles created by `*_new` / `*_read_*` functions and released with the
//! matching `*_free`. Every fallible call returns an [`ArcvfiStatus`]; on
//! failure [`arcvfi_last_error_message`] describes the error on the calling
//! thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::ptr;

use arcvfi::imgio;
use arcvfi::metrics;
use arcvfi::{ArcConfig, Error, FlowField, Image, Inputs, SigmaMap, Trajectory};

/// Result codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcvfiStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    NonFinite = 4,
    Domain = 5,
    Io = 6,
    Format = 7,
    ImageTooSmall = 8,
    Panic = 99,
}

/// Opaque image handle (interleaved `HxWxC` float samples).
pub struct ArcvfiImage(Image);

/// Opaque flow field handle (interleaved `(u, v)` per pixel).
pub struct ArcvfiFlow(FlowField);

/// Opaque curvature map handle (one value in `[-1, 1]` per pixel).
pub struct ArcvfiSigma(SigmaMap);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(err: &Error) -> ArcvfiStatus {
    match err.root() {
        Error::DimensionMismatch { .. } | Error::ChannelMismatch { .. } => ArcvfiStatus::DimensionMismatch,
        Error::NonFinite { .. } => ArcvfiStatus::NonFinite,
        Error::Domain(_) => ArcvfiStatus::Domain,
        Error::InvalidParameter(_) | Error::InvalidDimensions { .. } => ArcvfiStatus::InvalidArgument,
        Error::ImageTooSmall { .. } => ArcvfiStatus::ImageTooSmall,
        Error::BadMagic(_) | Error::Truncated { .. } | Error::MalformedHeader(_) => ArcvfiStatus::Format,
        Error::Io { .. } | Error::Stream(_) => ArcvfiStatus::Io,
        Error::File { .. } => ArcvfiStatus::Format,
    }
}

enum Failure {
    Null(&'static str),
    Invalid(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> ArcvfiStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ArcvfiStatus::Ok,
        Ok(Err(Failure::Null(what))) => {
            set_last_error(format!("null pointer: {what}"));
            ArcvfiStatus::NullPointer
        }
        Ok(Err(Failure::Invalid(msg))) => {
            set_last_error(msg);
            ArcvfiStatus::InvalidArgument
        }
        Ok(Err(Failure::Lib(e))) => {
            set_last_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_last_error("internal panic");
            ArcvfiStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn path_arg(p: *const c_char, what: &'static str) -> Result<PathBuf, Failure> {
    let s = deref(p, what)?;
    let s = CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure::Invalid(format!("{what} is not valid UTF-8")))?;
    Ok(PathBuf::from(s))
}

unsafe fn samples<'a>(data: *const f32, len: usize, what: &'static str) -> Result<&'a [f32], Failure> {
    if data.is_null() {
        return Err(Failure::Null(what));
    }
    Ok(std::slice::from_raw_parts(data, len))
}

unsafe fn store<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null("out"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

fn checked_len(dims: &[usize]) -> Result<usize, Failure> {
    dims.iter()
        .try_fold(1usize, |acc, &d| acc.checked_mul(d))
        .ok_or_else(|| Failure::Invalid("dimensions overflow".into()))
}

unsafe fn copy_out(src: &[f32], dst: *mut f32, len: usize) -> Result<(), Failure> {
    if dst.is_null() {
        return Err(Failure::Null("dst"));
    }
    if len != src.len() {
        return Err(Failure::Invalid(format!("destination holds {len} floats, need {}", src.len())));
    }
    ptr::copy_nonoverlapping(src.as_ptr(), dst, len);
    Ok(())
}

fn config(sigma_threshold: f64) -> Result<ArcConfig, Failure> {
    Ok(ArcConfig::new(sigma_threshold)?)
}

/// Message for the most recent failure on this thread, or NULL if none.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn arcvfi_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Default curvature threshold of the arc/linear case split.
#[no_mangle]
pub extern "C" fn arcvfi_default_sigma_threshold() -> f64 {
    arcvfi::DEFAULT_SIGMA_THRESHOLD
}

// ---- images ----

/// Creates an image by copying `width * height * channels` samples.
///
/// # Safety
/// `data` must point to that many readable floats; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arcvfi_image_new(
    width: usize,
    height: usize,
    channels: usize,
    data: *const f32,
    out: *mut *mut ArcvfiImage,
) -> ArcvfiStatus {
    guard(|| {
        let len = checked_len(&[width, height, channels])?;
        let data = samples(data, len, "data")?.to_vec();
        store(out, ArcvfiImage(Image::new(width, height, channels, data)?))
    })
}

/// # Safety
/// `img` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn arcvfi_image_free(img: *mut ArcvfiImage) {
    if !img.is_null() {
        drop(Box::from_raw(img));
    }
}

/// Writes width, height and channel count. Any output pointer may be NULL.
///
/// # Safety
/// `img` must be a live handle; non-NULL outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn arcvfi_image_dims(
    img: *const ArcvfiImage,
    width: *mut usize,
    height: *mut usize,
    channels: *mut usize,
) -> ArcvfiStatus {
    guard(|| {
        let img = &deref(img, "img")?.0;
        if let Some(w) = width.as_mut() {
            *w = img.width();
        }
        if let Some(h) = height.as_mut() {
            *h = img.height();
        }
        if let Some(c) = channels.as_mut() {
            *c = img.channels();
        }
        Ok(())
    })
}

/// Copies the samples into `dst`, which must hold exactly `len` floats.
///
/// # Safety
/// `img` must be a live handle and `dst` writable for `len` floats.
#[no_mangle]
pub unsafe extern "C" fn arcvfi_image_copy_data(img: *const ArcvfiImage, dst: *mut f32, len: usize) -> ArcvfiStatus {
    guard(|| copy_out(deref(img, "img")?.0.as_slice(), dst, len))
}

/// Reads a binary PPM (`P6`) or PGM (`P5`) file.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arcvfi_read_ppm(path: *const c_char, out: *mut *mut ArcvfiImage) -> ArcvfiStatus {
    guard(|| store(out, ArcvfiImage(imgio::read_ppm(path_arg(path, "path")?)?)))
}

/// # Safety
/// `path` must be a NUL-terminated string; `img` a live handle.
#[no_mangle]
pub unsafe extern "C" fn arcvfi_write_ppm(path: *const c_char, img: *const ArcvfiImage) -> ArcvfiStatus {
    guard(|| Ok(imgio::write_ppm(path_arg(path, "path")?, &deref(img, "img")?.0)?))
}

/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arcvfi_read_pfm(path: *const c_char, out: *mut *mut ArcvfiImage) -> ArcvfiStatus {
    guard(|| store(out, ArcvfiImage(imgio::read_pfm(path_arg(path, "path")?)?)))
}

/// # Safety
/// `path` must be a NUL-terminated string; `img` a live handle.
#[no_mangle]
pub unsafe extern "C" fn arcvfi_write_pfm(path: *const c_char, img: *const ArcvfiImage) -> ArcvfiStatus {
    guard(|| Ok(imgio::write_pfm(path_arg(path, "path")?, &deref(img, "img")?.0)?))
}

// ---- flow fields ----

/// Creates a flow field from `2 * width * height` interleaved `(u, v)` floats.
///
/// # Safety
/// `data` must point to that many readable floats; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arcvfi_flow_new(
    width: usize,
    height: usize,
    data: *const f32,
    out: *mut *mut ArcvfiFlow,
) -> ArcvfiStatus {
    guard(|| {
        let len = checked_len(&[width, height, 2])?;
        let data = samples(data, len, "data")?.to_vec();
        store(out, ArcvfiFlow(FlowField::from_interleaved(width, height, data)?))
    })
}

/// # Safety
/// `flow` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn arcvfi_flow_free(flow: *mut ArcvfiFlow) {
    if !flow.is_null() {
        drop(Box::from_raw(flow));
    }
}

/// # Safety
/// `flow` must be a live handle; non-NULL outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn arcvfi_flow_dims(flow: *const ArcvfiFlow, width: *mut usize, height: *mut usize) -> ArcvfiStatus {
    guard(|| {
        let flow = &deref(flow, "flow")?.0;
        if let Some(w) = width.as_mut() {
            *w = flow.width();
        }
        if let Some(h) = height.as_mut() {
            *h = flow.height();
        }
        Ok(())
    })
}

/// Copies the interleaved `(u, v)` samples into `dst` (`len == 2 * width * height`).
///
/// # Safety
/// `flow` must be a live handle and `dst` writable for `len` floats.
#[no_mangle]
pub unsafe extern "C" fn arcvfi_flow_copy_data(flow: *const ArcvfiFlow, dst: *mut f32, len: usize) -> ArcvfiStatus {
    guard(|| copy_out(deref(flow, "flow")?.0.as_interleaved(), dst, len))
}

/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arcvfi_read_flo(path: *const c_char, out: *mut *mut ArcvfiFlow) -> ArcvfiStatus {
    guard(|| store(out, ArcvfiFlow(imgio::read_flo(path_arg(path, "path")?)?)))
}

/// # Safety
/// `path` must be a NUL-terminated string; `flow` a live handle.
#[no_mangle]
pub unsafe extern "C" fn arcvfi_write_flo(path: *const c_char, flow: *const ArcvfiFlow) -> ArcvfiStatus {
    guard(|| Ok(imgio::write_flo(path_arg(path, "path")?, &deref(flow, "flow")?.0)?))
}

// ---- curvature maps ----

/// Creates a curvature map from `width * height` floats. With `clamp` set,
/// values outside `[-1, 1]` are clamped and counted in `clamped` (may be
/// NULL); otherwise they are a domain error.
///
/// # Safety
/// `data` must point to `width * height` readable floats; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arcvfi_sigma_new(
    width: usize,
    height: usize,
    data: *const f32,
    clamp: bool,
    out: *mut *mut ArcvfiSigma,
    clamped: *mut usize,
) -> ArcvfiStatus {
    guard(|| {
        let len = checked_len(&[width, height])?;
        let data = samples(data, len, "data")?.to_vec();
        let (map, count) = if clamp {
            let c = SigmaMap::new_clamped(width, height, data)?;
            (c.value, c.clamped)
        } else {
            (SigmaMap::new(width, height, data)?, 0)
        };
        if let Some(c) = clamped.as_mut() {
            *c = count;
        }
        store(out, ArcvfiSigma(map))
    })
}

/// # Safety
/// `sigma` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn arcvfi_sigma_free(sigma: *mut ArcvfiSigma) {
    if !sigma.is_null() {
        drop(Box::from_raw(sigma));
    }
}

/// # Safety
/// `sigma` must be a live handle and `dst` writable for `len` floats.
#[no_mangle]
pub unsafe extern "C" fn arcvfi_sigma_copy_data(sigma: *const ArcvfiSigma, dst: *mut f32, len: usize) -> ArcvfiStatus {
    guard(|| copy_out(deref(sigma, "sigma")?.0.as_slice(), dst, len))
}

/// Loads a single-channel PFM as a curvature map with clamping; the number
/// of clamped values goes to `clamped` (may be NULL).
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arcvfi_read_sigma(
    path: *const c_char,
    out: *mut *mut ArcvfiSigma,
    clamped: *mut usize,
) -> ArcvfiStatus {
    guard(|| {
        let loaded = imgio::read_sigma(path_arg(path, "path")?)?;
        if let Some(c) = clamped.as_mut() {
            *c = loaded.clamped;
        }
        store(out, ArcvfiSigma(loaded.value))
    })
}

/// # Safety
/// `path` must be a NUL-terminated string; `sigma` a live handle.
#[no_mangle]
pub unsafe extern "C" fn arcvfi_write_sigma(path: *const c_char, sigma: *const ArcvfiSigma) -> ArcvfiStatus {
    guard(|| Ok(imgio::write_sigma(path_arg(path, "path")?, &deref(sigma, "sigma")?.0)?))
}

// ---- arc model ----

/// Displacement of a single pixel with flow `(u, v)` and curvature `sigma`
/// after time `t`, using the arc when `|sigma| > sigma_threshold` and the
/// straight line otherwise.
///
/// # Safety
/// `dx` and `dy` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arcvfi_pixel_displacement(
    u: f64,
    v: f64,
    sigma: f64,
    t: f64,
    sigma_threshold: f64,
    dx: *mut f64,
    dy: *mut f64,
) -> ArcvfiStatus {
    guard(|| {
        if dx.is_null() || dy.is_null() {
            return Err(Failure::Null("dx/dy"));
        }
        if !(0.0..=1.0).contains(&t) {
            return Err(Failure::Invalid(format!("t = {t} outside [0, 1]")));
        }
        let (x, y) = arcvfi::arc::pixel_displacement(u, v, sigma, t, &config(sigma_threshold)?)?;
        *dx = x;
        *dy = y;
        Ok(())
    })
}

/// Intermediate flow from frame 0 to time `t`.
///
/// # Safety
/// `flow` and `sigma` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arcvfi_intermediate_flow(
    flow: *const ArcvfiFlow,
    sigma: *const ArcvfiSigma,
    t: f64,
    sigma_threshold: f64,
    out: *mut *mut ArcvfiFlow,
) -> ArcvfiStatus {
    guard(|| {
        let f = arcvfi::intermediate_flow(
            &deref(flow, "flow")?.0,
            &deref(sigma, "sigma")?.0,
            t,
            &config(sigma_threshold)?,
        )?;
        store(out, ArcvfiFlow(f))
    })
}

/// Intermediate flow from frame 1 to time `t`, given the backward flow and
/// curvature map.
///
/// # Safety
/// `flow10` and `sigma10` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arcvfi_backward_intermediate_flow(
    flow10: *const ArcvfiFlow,
    sigma10: *const ArcvfiSigma,
    t: f64,
    sigma_threshold: f64,
    out: *mut *mut ArcvfiFlow,
) -> ArcvfiStatus {
    guard(|| {
        let f = arcvfi::backward_intermediate_flow(
            &deref(flow10, "flow10")?.0,
            &deref(sigma10, "sigma10")?.0,
            t,
            &config(sigma_threshold)?,
        )?;
        store(out, ArcvfiFlow(f))
    })
}

/// Forward-warps `src` by average splatting. When `mask` is non-NULL it
/// receives one byte per pixel (1 valid, 0 hole) and must hold `mask_len ==
/// width * height` bytes.
///
/// # Safety
/// `src` and `flow` must be live handles; `out` writable; `mask` NULL or
/// writable for `mask_len` bytes.
#[no_mangle]
pub unsafe extern "C" fn arcvfi_splat_average(
    src: *const ArcvfiImage,
    flow: *const ArcvfiFlow,
    out: *mut *mut ArcvfiImage,
    mask: *mut u8,
    mask_len: usize,
) -> ArcvfiStatus {
    guard(|| {
        let (img, m) = arcvfi::splat_average(&deref(src, "src")?.0, &deref(flow, "flow")?.0)?;
        if !mask.is_null() {
            let flags = m.as_slice();
            if mask_len != flags.len() {
                return Err(Failure::Invalid(format!("mask holds {mask_len} bytes, need {}", flags.len())));
            }
            for (i, &f) in flags.iter().enumerate() {
                *mask.add(i) = f as u8;
            }
        }
        store(out, ArcvfiImage(img))
    })
}

/// Synthesizes the frame at time `t`. `force_linear` ignores the curvature
/// maps and uses straight-line motion.
///
/// # Safety
/// All inputs must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arcvfi_interpolate(
    frame0: *const ArcvfiImage,
    frame1: *const ArcvfiImage,
    flow01: *const ArcvfiFlow,
    flow10: *const ArcvfiFlow,
    sigma01: *const ArcvfiSigma,
    sigma10: *const ArcvfiSigma,
    t: f64,
    sigma_threshold: f64,
    force_linear: bool,
    out: *mut *mut ArcvfiImage,
) -> ArcvfiStatus {
    guard(|| {
        let inputs = Inputs {
            frame0: &deref(frame0, "frame0")?.0,
            frame1: &deref(frame1, "frame1")?.0,
            flow01: &deref(flow01, "flow01")?.0,
            flow10: &deref(flow10, "flow10")?.0,
            sigma01: &deref(sigma01, "sigma01")?.0,
            sigma10: &deref(sigma10, "sigma10")?.0,
        };
        let trajectory = if force_linear {
            Trajectory::Linear
        } else {
            Trajectory::Arc(config(sigma_threshold)?)
        };
        let result = arcvfi::interpolate(&inputs, t, trajectory)?;
        store(out, ArcvfiImage(result.frame))
    })
}

// ---- metrics ----

unsafe fn metric(
    a: *const ArcvfiImage,
    b: *const ArcvfiImage,
    out: *mut f64,
    f: impl FnOnce(&Image, &Image) -> arcvfi::Result<f64>,
) -> ArcvfiStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        *out = f(&deref(a, "a")?.0, &deref(b, "b")?.0)?;
        Ok(())
    })
}

/// PSNR in dB (peak 1); identical images give positive infinity.
///
/// # Safety
/// `a`, `b` must be live handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn arcvfi_psnr(a: *const ArcvfiImage, b: *const ArcvfiImage, out: *mut f64) -> ArcvfiStatus {
    metric(a, b, out, metrics::psnr)
}

/// # Safety
/// `a`, `b` must be live handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn arcvfi_ssim(a: *const ArcvfiImage, b: *const ArcvfiImage, out: *mut f64) -> ArcvfiStatus {
    metric(a, b, out, metrics::ssim)
}

/// RMS difference in 8-bit units.
///
/// # Safety
/// `a`, `b` must be live handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn arcvfi_interpolation_error(
    a: *const ArcvfiImage,
    b: *const ArcvfiImage,
    out: *mut f64,
) -> ArcvfiStatus {
    metric(a, b, out, metrics::interpolation_error)
}

/// # Safety
/// `a`, `b` must be live handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn arcvfi_charbonnier(
    a: *const ArcvfiImage,
    b: *const ArcvfiImage,
    epsilon: f64,
    out: *mut f64,
) -> ArcvfiStatus {
    metric(a, b, out, |a, b| metrics::charbonnier(a, b, epsilon))
}
