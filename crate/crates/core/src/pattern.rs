//! Feature extraction from sampled one-dimensional beam patterns.

use crate::error::{invalid, Result};

/// Mainlobe features of a sampled single-peak pattern.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MainlobeFeatures {
    pub peak_index: usize,
    pub left_null_index: usize,
    pub right_null_index: usize,
    /// Angular distance between the two nulls bracketing the peak.
    pub first_null_width: f64,
    /// Highest sidelobe just outside the right null, dB relative to the peak.
    pub first_sidelobe_db: f64,
}

/// Locate the peak of `magnitudes` (sampled on the cyclic grid `u_grid`,
/// covering one full turn) and the first nulls and sidelobe around it.
pub fn mainlobe_features(u_grid: &[f64], magnitudes: &[f64]) -> Result<MainlobeFeatures> {
    let n = magnitudes.len();
    if n < 8 || u_grid.len() != n {
        return Err(invalid("pattern must have at least 8 samples and a matching grid"));
    }
    let peak_index = magnitudes
        .iter()
        .enumerate()
        .fold(0, |best, (i, &m)| if m > magnitudes[best] { i } else { best });
    let at = |i: isize| magnitudes[i.rem_euclid(n as isize) as usize];
    let p = peak_index as isize;

    let mut right = p;
    while at(right + 1) <= at(right) && right - p < n as isize {
        right += 1;
    }
    let mut left = p;
    while at(left - 1) <= at(left) && p - left < n as isize {
        left -= 1;
    }
    let mut side = right;
    let mut sidelobe = at(right);
    while at(side + 1) >= at(side) && side - right < n as isize {
        side += 1;
        sidelobe = sidelobe.max(at(side));
    }

    let step = std::f64::consts::TAU / n as f64;
    let width = (right - left) as f64 * step;
    let span = u_grid[n - 1] - u_grid[0] + step;
    if (span - std::f64::consts::TAU).abs() > 1e-6 {
        return Err(invalid("pattern grid must be uniform over one full turn"));
    }
    Ok(MainlobeFeatures {
        peak_index,
        left_null_index: left.rem_euclid(n as isize) as usize,
        right_null_index: right.rem_euclid(n as isize) as usize,
        first_null_width: width,
        first_sidelobe_db: 20.0 * (sidelobe / magnitudes[peak_index]).log10(),
    })
}
