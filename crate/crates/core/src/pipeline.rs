//! End-to-end interpolation of one intermediate frame from two input frames
//! and their bidirectional flows and curvature maps.

use crate::arc::{backward_intermediate_flow, intermediate_flow, linear_intermediate_flow, ArcConfig};
use crate::error::{Error, Result};
use crate::field::{ensure_same_dims, FlowField, Image, SigmaMap};
use crate::fuse::{blend, Warped};
use crate::warp::warp_bundle;

/// Motion model used for the intermediate flows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Trajectory {
    Arc(ArcConfig),
    /// Straight-line motion regardless of curvature.
    Linear,
}

impl Default for Trajectory {
    fn default() -> Self {
        Trajectory::Arc(ArcConfig::default())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Inputs<'a> {
    pub frame0: &'a Image,
    pub frame1: &'a Image,
    pub flow01: &'a FlowField,
    pub flow10: &'a FlowField,
    pub sigma01: &'a SigmaMap,
    pub sigma10: &'a SigmaMap,
}

impl Inputs<'_> {
    fn validate(&self) -> Result<()> {
        let dims = self.frame0.dims();
        for d in [
            self.frame1.dims(),
            self.flow01.dims(),
            self.flow10.dims(),
            self.sigma01.dims(),
            self.sigma10.dims(),
        ] {
            ensure_same_dims(dims, d)?;
        }
        if self.frame0.channels() != self.frame1.channels() {
            return Err(Error::ChannelMismatch {
                expected: self.frame0.channels(),
                found: self.frame1.channels(),
            });
        }
        Ok(())
    }
}

/// Output frame plus every intermediate product.
#[derive(Debug, Clone)]
pub struct Interpolation {
    pub frame: Image,
    pub flow0t: FlowField,
    pub flow1t: FlowField,
    pub warped0: Warped,
    pub warped1: Warped,
    pub warped_sigma01: Image,
    pub warped_sigma10: Image,
}

pub fn interpolate(inputs: &Inputs<'_>, t: f64, trajectory: Trajectory) -> Result<Interpolation> {
    inputs.validate()?;
    let (flow0t, flow1t) = match trajectory {
        Trajectory::Arc(cfg) => (
            intermediate_flow(inputs.flow01, inputs.sigma01, t, &cfg)?,
            backward_intermediate_flow(inputs.flow10, inputs.sigma10, t, &cfg)?,
        ),
        Trajectory::Linear => (
            linear_intermediate_flow(inputs.flow01, t)?,
            linear_intermediate_flow(inputs.flow10, 1.0 - t)?,
        ),
    };

    let sigma01 = inputs.sigma01.to_image();
    let sigma10 = inputs.sigma10.to_image();
    let (mut w0, mask0) = warp_bundle(&[inputs.frame0, &sigma01], &flow0t)?;
    let (mut w1, mask1) = warp_bundle(&[inputs.frame1, &sigma10], &flow1t)?;
    let warped_sigma01 = w0.pop().expect("two warped maps");
    let warped0 = Warped::new(w0.pop().expect("two warped maps"), mask0)?;
    let warped_sigma10 = w1.pop().expect("two warped maps");
    let warped1 = Warped::new(w1.pop().expect("two warped maps"), mask1)?;

    let frame = blend(&warped0, &warped1, inputs.frame0, inputs.frame1, t)?;
    Ok(Interpolation {
        frame,
        flow0t,
        flow1t,
        warped0,
        warped1,
        warped_sigma01,
        warped_sigma10,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn static_scene_is_unchanged() {
        let img = Image::from_fn(5, 4, 3, |x, y, c| ((x * 7 + y * 3 + c) % 11) as f32 / 10.0).unwrap();
        let zero = FlowField::zeros(5, 4).unwrap();
        let sigma = SigmaMap::zeros(5, 4).unwrap();
        let inputs = Inputs {
            frame0: &img,
            frame1: &img,
            flow01: &zero,
            flow10: &zero,
            sigma01: &sigma,
            sigma10: &sigma,
        };
        for t in [0.0, 0.3, 0.5, 1.0] {
            for traj in [Trajectory::default(), Trajectory::Linear] {
                let out = interpolate(&inputs, t, traj).unwrap();
                for (a, b) in out.frame.as_slice().iter().zip(img.as_slice()) {
                    assert!((a - b).abs() <= 1e-7);
                }
            }
        }
    }

    #[test]
    fn mismatched_inputs_rejected() {
        let img = Image::filled(5, 4, 3, 0.5).unwrap();
        let zero = FlowField::zeros(5, 4).unwrap();
        let other = FlowField::zeros(4, 4).unwrap();
        let sigma = SigmaMap::zeros(5, 4).unwrap();
        let inputs = Inputs {
            frame0: &img,
            frame1: &img,
            flow01: &zero,
            flow10: &other,
            sigma01: &sigma,
            sigma10: &sigma,
        };
        assert!(matches!(
            interpolate(&inputs, 0.5, Trajectory::default()),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
