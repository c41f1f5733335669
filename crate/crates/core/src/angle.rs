//! Beamspace angle handling.
//!
//! A beamspace angle `u` is the inter-element phase progression
//! `2π·d·cos(α)/λ`. It is stored wrapped to `[-π, π)`; the frequency-scaled
//! kernels lift it to `[0, 2π)` before scaling so that beams squint towards
//! increasing beam index as the frequency drops.

use std::f64::consts::{PI, TAU};
use std::fmt;

use crate::error::{invalid, Result};

/// Wrap an angle to `[-π, π)`.
pub fn wrap_pi(u: f64) -> f64 {
    let w = (u + PI).rem_euclid(TAU) - PI;
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if w >= PI {
        w - TAU
    } else {
        w
    }
}

/// Wrap an angle to `[0, 2π)`.
pub fn wrap_positive(u: f64) -> f64 {
    let w = u.rem_euclid(TAU);
    if w >= TAU {
        0.0
    } else {
        w
    }
}

/// Shortest signed distance `a - b` on the circle, in `[-π, π)`.
pub fn circular_diff(a: f64, b: f64) -> f64 {
    wrap_pi(a - b)
}

#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Default)]
pub struct BeamspaceAngle(f64);

impl BeamspaceAngle {
    pub fn new(radians: f64) -> Self {
        BeamspaceAngle(wrap_pi(radians))
    }

    /// Canonical value in `[-π, π)`.
    pub fn radians(self) -> f64 {
        self.0
    }

    /// Representative in `[0, 2π)`.
    pub fn positive(self) -> f64 {
        wrap_positive(self.0)
    }

    /// Unsigned angular distance to `other`, in `[0, π]`.
    pub fn distance(self, other: BeamspaceAngle) -> f64 {
        circular_diff(self.0, other.0).abs()
    }
}

impl From<f64> for BeamspaceAngle {
    fn from(radians: f64) -> Self {
        BeamspaceAngle::new(radians)
    }
}

impl fmt::Display for BeamspaceAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} rad", self.0)
    }
}

/// Convert a physical angle of arrival (degrees from the array baseline) to
/// beamspace, for antenna spacing given in wavelengths.
pub fn physical_to_beamspace(alpha_deg: f64, spacing: f64) -> Result<BeamspaceAngle> {
    if !(spacing > 0.0) || !spacing.is_finite() {
        return Err(invalid(format!("antenna spacing must be positive, got {spacing}")));
    }
    if !(0.0..=180.0).contains(&alpha_deg) {
        return Err(invalid(format!("physical angle must lie in [0, 180] degrees, got {alpha_deg}")));
    }
    Ok(BeamspaceAngle::new(TAU * spacing * alpha_deg.to_radians().cos()))
}
