//! Arc-trajectory video frame interpolation.
//!
//! Given two frames, their bidirectional optical flows and per-pixel
//! curvature maps, each pixel is moved along a circular arc to an arbitrary
//! time `t`, both frames are forward-warped by average splatting, and the
//! warps are blended into the intermediate frame.
//!
//! - [`arc`]: arc parameters and intermediate flows
//! - [`warp`]: bilinear forward splatting
//! - [`fuse`]: blending of the two warped frames
//! - [`pipeline`]: the above chained together
//! - [`scene`]: synthetic rigid-motion scenes with analytic ground truth
//! - [`imgio`]: `.flo`, PFM and PPM codecs and flow visualization
//! - [`metrics`]: PSNR, SSIM, interpolation error, Charbonnier penalty

pub mod arc;
pub mod error;
pub mod field;
pub mod fuse;
pub mod imgio;
pub mod metrics;
pub mod pipeline;
pub mod scene;
pub mod warp;

pub use arc::{
    arc_displacement, backward_intermediate_flow, evaluate_arc_flow, intermediate_flow,
    linear_intermediate_flow, ArcConfig, ArcParams, DEFAULT_SIGMA_THRESHOLD,
};
pub use error::{Error, Result};
pub use field::{Clamped, FlowField, Image, Mask, SigmaMap};
pub use fuse::{blend, Warped};
pub use pipeline::{interpolate, Inputs, Interpolation, Trajectory};
pub use scene::{ground_truth_fields, ground_truth_frame, oracle_intermediate_position, GroundTruth, Motion, SceneSpec};
pub use warp::{splat_average, splat_sum, warp_bundle, SplatResult, HOLE_EPSILON};
