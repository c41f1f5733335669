//! Ideal DFT multi-beam array.
//!
//! An `N`-port multi-beam array maps beam ports onto `N` antennas through a
//! fixed `N`-point DFT. Beam `n` points at `u_n = 2πn/N` and its pattern is a
//! Dirichlet kernel; every other beam has a null there. All gains in this
//! crate are amplitudes relative to the peak of a single DFT beam.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::angle::{wrap_positive, BeamspaceAngle};
use crate::error::{invalid, Error, Result};

/// Sign of the exponent in the DFT matrix entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DftSign {
    #[default]
    Negative,
    Positive,
}

/// Reference level for reported gains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum GainReference {
    /// 0 dB is the peak of one DFT beam.
    #[default]
    SingleBeamPeak,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ArrayConfig {
    n_beams: usize,
    spacing: f64,
    dft_sign: DftSign,
    gain_reference: GainReference,
}

impl ArrayConfig {
    /// Half-wavelength array with `n_beams` ports.
    pub fn new(n_beams: usize) -> Result<Self> {
        if n_beams < 2 {
            return Err(invalid(format!("an array needs at least 2 beams, got {n_beams}")));
        }
        Ok(ArrayConfig {
            n_beams,
            spacing: 0.5,
            dft_sign: DftSign::Negative,
            gain_reference: GainReference::SingleBeamPeak,
        })
    }

    pub fn with_spacing(mut self, spacing: f64) -> Result<Self> {
        if !(spacing > 0.0) || !spacing.is_finite() {
            return Err(invalid(format!("antenna spacing must be positive, got {spacing}")));
        }
        self.spacing = spacing;
        Ok(self)
    }

    pub fn with_dft_sign(mut self, sign: DftSign) -> Self {
        self.dft_sign = sign;
        self
    }

    pub fn n_beams(&self) -> usize {
        self.n_beams
    }

    /// Antenna spacing in reference (highest-frequency) wavelengths.
    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn dft_sign(&self) -> DftSign {
        self.dft_sign
    }

    pub fn gain_reference(&self) -> GainReference {
        self.gain_reference
    }

    /// Spacing between adjacent beam pointings, `2π/N`.
    pub fn beam_spacing(&self) -> f64 {
        TAU / self.n_beams as f64
    }

    pub(crate) fn check_beam(&self, n: usize) -> Result<()> {
        if n >= self.n_beams {
            Err(Error::IndexOutOfRange { index: n, len: self.n_beams })
        } else {
            Ok(())
        }
    }

    pub fn physical_to_beamspace(&self, alpha_deg: f64) -> Result<BeamspaceAngle> {
        crate::angle::physical_to_beamspace(alpha_deg, self.spacing)
    }
}

pub(crate) fn check_frequency(f_norm: f64) -> Result<()> {
    if f_norm > 0.0 && f_norm <= 1.0 {
        Ok(())
    } else {
        Err(invalid(format!("normalized frequency must lie in (0, 1], got {f_norm}")))
    }
}

/// Entry `(n, m)` of the DFT matrix.
pub fn dft_weight(config: &ArrayConfig, beam: usize, antenna: usize) -> Result<Complex64> {
    let n_beams = config.n_beams;
    config.check_beam(beam)?;
    if antenna >= n_beams {
        return Err(Error::IndexOutOfRange { index: antenna, len: n_beams });
    }
    let k = (beam * antenna) % n_beams;
    let phase = TAU * k as f64 / n_beams as f64;
    Ok(match config.dft_sign {
        DftSign::Negative => Complex64::from_polar(1.0, -phase),
        DftSign::Positive => Complex64::from_polar(1.0, phase),
    })
}

/// Pointing direction of beam `n`, `2πn/N` wrapped to `[-π, π)`.
pub fn beam_pointing(config: &ArrayConfig, beam: usize) -> Result<BeamspaceAngle> {
    config.check_beam(beam)?;
    Ok(BeamspaceAngle::new(pointing_radians(config.n_beams, beam)))
}

/// Unwrapped pointing `2πn/N` in `[0, 2π)`.
pub(crate) fn pointing_radians(n_beams: usize, beam: usize) -> f64 {
    TAU * beam as f64 / n_beams as f64
}

/// Dirichlet kernel `sin(Nφ/2) / sin(φ/2)`, with the removable singularity
/// at `φ = 2πk` filled by its limit `N·(-1)^(k(N-1))`.
pub fn dirichlet(n: usize, phi: f64) -> f64 {
    let nf = n as f64;
    let half = 0.5 * phi;
    let den = half.sin();
    if den.abs() < 1e-12 {
        let k = (phi / TAU).round() as i64;
        let odd = (k * (n as i64 - 1)).rem_euclid(2) == 1;
        return if odd { -nf } else { nf };
    }
    (nf * half).sin() / den
}

/// Array response at angle `u` and normalized frequency `f_norm`: element
/// `m` carries phase `m·u·f_norm`, with `u` taken in `[0, 2π)`.
pub fn steering_vector(config: &ArrayConfig, u: BeamspaceAngle, f_norm: f64) -> Result<Vec<Complex64>> {
    check_frequency(f_norm)?;
    let step = u.positive() * f_norm;
    Ok((0..config.n_beams)
        .map(|m| Complex64::from_polar(1.0, m as f64 * step))
        .collect())
}

/// Complex gain of beam `n` towards `u` at normalized frequency `f_norm`.
///
/// This is the inner product of DFT row `n` with the steering vector,
/// divided by `N`, evaluated through its geometric-series closed form.
pub fn beam_gain(config: &ArrayConfig, beam: usize, u: BeamspaceAngle, f_norm: f64) -> Result<Complex64> {
    config.check_beam(beam)?;
    check_frequency(f_norm)?;
    Ok(beam_response(config.n_beams, beam, u.positive(), f_norm))
}

/// Unchecked closed-form beam response. `u_pos` must lie in `[0, 2π)`.
pub(crate) fn beam_response(n_beams: usize, beam: usize, u_pos: f64, f_norm: f64) -> Complex64 {
    let nf = n_beams as f64;
    // offset from the beam pointing, in units of the beam spacing
    let delta = u_pos * f_norm * nf / TAU - beam as f64;
    if delta.fract() == 0.0 {
        return if delta.rem_euclid(nf) == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        };
    }
    let half = std::f64::consts::PI * delta / nf;
    let amp = (nf * half).sin() / (nf * half.sin());
    Complex64::from_polar(amp, (nf - 1.0) * half)
}

/// Sampled complex gain over an angle grid and a normalized-frequency grid.
#[derive(Clone, Debug, PartialEq)]
pub struct GainGrid {
    u_grid: Vec<f64>,
    f_grid: Vec<f64>,
    values: Vec<Complex64>,
}

fn strictly_increasing(xs: &[f64]) -> bool {
    xs.windows(2).all(|w| w[0] < w[1])
}

impl GainGrid {
    /// `values` is row-major: one row per angle, one column per frequency.
    pub fn new(u_grid: Vec<f64>, f_grid: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        if u_grid.is_empty() || f_grid.is_empty() {
            return Err(invalid("gain grid axes must be non-empty"));
        }
        if !strictly_increasing(&u_grid) || !strictly_increasing(&f_grid) {
            return Err(invalid("gain grid axes must be strictly increasing"));
        }
        if let Some(&f) = f_grid.iter().find(|&&f| !(f > 0.0 && f <= 1.0)) {
            return Err(invalid(format!("normalized frequency {f} outside (0, 1]")));
        }
        let expected = u_grid.len() * f_grid.len();
        if values.len() != expected {
            return Err(Error::DimensionMismatch { expected, actual: values.len() });
        }
        Ok(GainGrid { u_grid, f_grid, values })
    }

    pub fn u_grid(&self) -> &[f64] {
        &self.u_grid
    }

    pub fn f_grid(&self) -> &[f64] {
        &self.f_grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value(&self, u_index: usize, f_index: usize) -> Complex64 {
        self.values[u_index * self.f_grid.len() + f_index]
    }

    /// Gain magnitudes at every angle for one frequency column.
    pub fn angle_slice(&self, f_index: usize) -> Vec<f64> {
        (0..self.u_grid.len()).map(|i| self.value(i, f_index).norm()).collect()
    }

    /// Gain magnitudes at every frequency for one angle row.
    pub fn frequency_slice(&self, u_index: usize) -> Vec<f64> {
        let nf = self.f_grid.len();
        self.values[u_index * nf..(u_index + 1) * nf].iter().map(|v| v.norm()).collect()
    }

    pub fn peak_magnitude(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// Uniform grid of `n` points over `[lo, lo + 2π)`.
pub fn uniform_angle_grid(lo: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + TAU * i as f64 / n as f64).collect()
}

/// Default 4096-point grid over `[-π, π)`.
pub fn default_angle_grid() -> Vec<f64> {
    uniform_angle_grid(-std::f64::consts::PI, crate::DEFAULT_ANGLE_POINTS)
}

/// Evaluate `Σ_n weights[n]·beam_gain(n, u, f)` over a grid.
pub fn sample_pattern(config: &ArrayConfig, weights: &[Complex64], u_grid: &[f64], f_grid: &[f64]) -> Result<GainGrid> {
    let n_beams = config.n_beams;
    if weights.len() != n_beams {
        return Err(Error::DimensionMismatch { expected: n_beams, actual: weights.len() });
    }
    for &f in f_grid {
        check_frequency(f)?;
    }
    let active: Vec<(usize, Complex64)> = weights
        .iter()
        .copied()
        .enumerate()
        .filter(|(_, w)| *w != Complex64::new(0.0, 0.0))
        .collect();
    let values: Vec<Complex64> = u_grid
        .par_iter()
        .flat_map_iter(|&u| {
            let u_pos = wrap_positive(u);
            let active = &active;
            f_grid.iter().map(move |&f| {
                active
                    .iter()
                    .map(|&(n, w)| w * beam_response(n_beams, n, u_pos, f))
                    .sum::<Complex64>()
            })
        })
        .collect();
    GainGrid::new(u_grid.to_vec(), f_grid.to_vec(), values)
}
