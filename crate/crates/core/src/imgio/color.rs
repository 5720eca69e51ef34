//! Color-wheel rendering of flow fields: direction sets hue, magnitude sets
//! saturation (white at rest, fully saturated at `max_magnitude`).

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::field::{FlowField, Image};

/// Magnitude mapped to full saturation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MaxMagnitude {
    /// Largest magnitude in the field.
    Auto,
    Fixed(f64),
}

fn hsv_unit_value(hue: f64, sat: f64) -> [f32; 3] {
    let h = hue * 6.0;
    let sector = (h.floor() as i64).rem_euclid(6);
    let f = h - h.floor();
    let (p, q, t) = (1.0 - sat, 1.0 - sat * f, 1.0 - sat * (1.0 - f));
    let rgb = match sector {
        0 => (1.0, t, p),
        1 => (q, 1.0, p),
        2 => (p, 1.0, t),
        3 => (p, q, 1.0),
        4 => (t, p, 1.0),
        _ => (1.0, p, q),
    };
    [rgb.0 as f32, rgb.1 as f32, rgb.2 as f32]
}

pub fn flow_to_color(flow: &FlowField, max_magnitude: MaxMagnitude) -> Result<Image> {
    let max = match max_magnitude {
        MaxMagnitude::Fixed(m) if m > 0.0 && m.is_finite() => m,
        MaxMagnitude::Fixed(m) => {
            return Err(Error::InvalidParameter(format!("max magnitude {m} must be positive")))
        }
        MaxMagnitude::Auto => {
            let m = flow
                .iter()
                .map(|(u, v)| (u as f64).hypot(v as f64))
                .fold(0.0, f64::max);
            if m > 0.0 {
                m
            } else {
                1.0
            }
        }
    };
    let mut data = Vec::with_capacity(flow.len() * 3);
    for (u, v) in flow.iter() {
        let (u, v) = (u as f64, v as f64);
        let sat = (u.hypot(v) / max).min(1.0);
        let hue = v.atan2(u).rem_euclid(TAU) / TAU;
        data.extend_from_slice(&hsv_unit_value(hue, sat));
    }
    Image::new(flow.width(), flow.height(), 3, data)
}
