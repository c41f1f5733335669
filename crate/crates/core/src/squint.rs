//! Wideband beam squint: gain maps over angle and frequency, the beam-shift
//! law, squint-compensated selection and region classification from
//! gain-versus-frequency profiles.

use std::collections::BTreeMap;
use std::fmt;

use crate::array::{pointing_radians, sample_pattern, uniform_angle_grid, ArrayConfig, GainGrid};
use crate::error::{invalid, Error, Result};
use crate::synthesis::{combined_unchecked, SelectionVector};

/// Normalized band `[rho, 1]` sampled at `n_points` uniform frequencies.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrequencyBand {
    rho: f64,
    n_points: usize,
}

impl FrequencyBand {
    pub fn new(rho: f64, n_points: usize) -> Result<Self> {
        if !(rho > 0.0 && rho < 1.0) {
            return Err(invalid(format!("lowest normalized frequency must lie in (0, 1), got {rho}")));
        }
        if n_points < 8 {
            return Err(invalid(format!("frequency grid needs at least 8 points, got {n_points}")));
        }
        Ok(FrequencyBand { rho, n_points })
    }

    /// Band `[rho, 1]` with the default 64-point grid.
    pub fn with_rho(rho: f64) -> Result<Self> {
        Self::new(rho, crate::DEFAULT_FREQUENCY_POINTS)
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    /// Ascending grid from `rho` to exactly 1.
    pub fn grid(&self) -> Vec<f64> {
        let last = self.n_points - 1;
        (0..self.n_points)
            .map(|i| if i == last { 1.0 } else { self.rho + (1.0 - self.rho) * i as f64 / last as f64 })
            .collect()
    }
}

/// Gain magnitude at each band frequency for one incidence angle.
#[derive(Clone, Debug, PartialEq)]
pub struct FrequencyProfile {
    gains: Vec<f64>,
}

impl FrequencyProfile {
    pub fn new(gains: Vec<f64>) -> Result<Self> {
        if gains.is_empty() {
            return Err(invalid("frequency profile is empty"));
        }
        if let Some(g) = gains.iter().find(|g| !(**g >= 0.0)) {
            return Err(invalid(format!("profile gains must be non-negative, got {g}")));
        }
        Ok(FrequencyProfile { gains })
    }

    /// Ordered from the lowest to the highest frequency.
    pub fn gains(&self) -> &[f64] {
        &self.gains
    }

    pub fn len(&self) -> usize {
        self.gains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gains.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RegionLabel {
    /// Low gain over the whole band.
    R1,
    /// High gain only towards the top of the band.
    R2,
    /// High gain over the whole band.
    R3,
    /// High gain only towards the bottom of the band.
    R4,
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RegionLabel::R1 => "R1",
            RegionLabel::R2 => "R2",
            RegionLabel::R3 => "R3",
            RegionLabel::R4 => "R4",
        };
        f.write_str(s)
    }
}

/// Region label of a profile. `flagged` marks a mixed profile whose
/// above-threshold part is not one run touching a band edge; its label is
/// then decided by which half of the band holds the run's centroid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub label: RegionLabel,
    pub flagged: bool,
}

/// Classification thresholds, dB relative to a reference magnitude.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegionThresholds {
    pub high_db: f64,
    pub low_db: f64,
}

impl Default for RegionThresholds {
    fn default() -> Self {
        RegionThresholds { high_db: -6.0, low_db: -12.0 }
    }
}

/// Beam that beam `n` steers towards at the band edge `rho`: `n/rho`
/// rounded half-up.
pub fn shifted_beam_index(n: usize, rho: f64) -> Result<usize> {
    if !(rho > 0.0 && rho < 1.0) {
        return Err(invalid(format!("rho must lie in (0, 1), got {rho}")));
    }
    Ok((n as f64 / rho + 0.5).floor() as usize)
}

/// Combined gain of `sel` over every angle in `u_grid` and every band frequency.
pub fn wideband_gain_map(config: &ArrayConfig, sel: &SelectionVector, band: &FrequencyBand, u_grid: &[f64]) -> Result<GainGrid> {
    if sel.len() != config.n_beams() {
        return Err(Error::DimensionMismatch { expected: config.n_beams(), actual: sel.len() });
    }
    if sel.nonzero_count() == 0 {
        return Err(invalid("selection has no non-zero weight"));
    }
    sample_pattern(config, &sel.complex_weights(), u_grid, &band.grid())
}

/// Gain-versus-frequency profile of `sel` seen from beam `beam`'s pointing.
pub fn frequency_profile(config: &ArrayConfig, sel: &SelectionVector, band: &FrequencyBand, beam: usize) -> Result<FrequencyProfile> {
    config.check_beam(beam)?;
    if sel.len() != config.n_beams() {
        return Err(Error::DimensionMismatch { expected: config.n_beams(), actual: sel.len() });
    }
    let u = pointing_radians(config.n_beams(), beam);
    FrequencyProfile::new(
        band.grid()
            .into_iter()
            .map(|f| combined_unchecked(config.n_beams(), sel, u, f).norm())
            .collect(),
    )
}

/// Profile of one angle row of a gain map.
pub fn profile_from_map(map: &GainGrid, u_index: usize) -> Result<FrequencyProfile> {
    if u_index >= map.u_grid().len() {
        return Err(Error::IndexOutOfRange { index: u_index, len: map.u_grid().len() });
    }
    FrequencyProfile::new(map.frequency_slice(u_index))
}

/// Beams `n..=x` with alternating signs, where `n` is the smallest index
/// whose shifted beam reaches `x`. The selection keeps the mainlobe on beam
/// `x`'s pointing across the whole band.
pub fn squint_compensated_selection(config: &ArrayConfig, target: usize, band: &FrequencyBand) -> Result<SelectionVector> {
    let n_beams = config.n_beams();
    let mut start = target;
    while start > 0 && shifted_beam_index(start - 1, band.rho())? >= target {
        start -= 1;
    }
    if target >= n_beams {
        let suggested_end = n_beams - 1;
        return Err(Error::RangeExceeded {
            start: start as i64,
            end: target as i64,
            n_beams,
            suggested_start: start.min(suggested_end),
            suggested_end,
        });
    }
    SelectionVector::alternating(n_beams, start..=target)
}

/// Label a profile using thresholds relative to `reference` (typically the
/// peak magnitude of the whole gain map).
pub fn classify_region(profile: &FrequencyProfile, reference: f64, thresholds: RegionThresholds) -> Result<Classification> {
    let RegionThresholds { high_db, low_db } = thresholds;
    if !(low_db < high_db) {
        return Err(invalid(format!("low threshold {low_db} dB must be below high threshold {high_db} dB")));
    }
    if !(reference > 0.0) {
        return Err(invalid("reference magnitude must be positive"));
    }
    let db: Vec<f64> = profile.gains().iter().map(|g| 20.0 * (g / reference).log10()).collect();
    if db.iter().all(|&d| d >= high_db) {
        return Ok(Classification { label: RegionLabel::R3, flagged: false });
    }
    if db.iter().all(|&d| d <= low_db) {
        return Ok(Classification { label: RegionLabel::R1, flagged: false });
    }
    let mut mask: Vec<bool> = db.iter().map(|&d| d > high_db).collect();
    if !mask.iter().any(|&m| m) {
        mask = db.iter().map(|&d| d > low_db).collect();
    }
    let hits: Vec<usize> = mask.iter().enumerate().filter(|(_, m)| **m).map(|(i, _)| i).collect();
    let last = db.len() - 1;
    let centroid = hits.iter().sum::<usize>() as f64 / hits.len() as f64;
    let label = if centroid > last as f64 / 2.0 { RegionLabel::R2 } else { RegionLabel::R4 };
    let contiguous = hits.windows(2).all(|w| w[1] == w[0] + 1);
    let touches_edge = match label {
        RegionLabel::R2 => hits[hits.len() - 1] == last,
        _ => hits[0] == 0,
    };
    Ok(Classification { label, flagged: !(contiguous && touches_edge) })
}

/// Reference with the smallest least-squares distance after scaling both
/// profiles to unit norm. Returns the beam index and the residual.
pub fn match_beam_by_profile(profile: &FrequencyProfile, references: &BTreeMap<usize, FrequencyProfile>) -> Result<(usize, f64)> {
    if references.is_empty() {
        return Err(invalid("no reference profiles"));
    }
    let unit = |p: &FrequencyProfile| -> Vec<f64> {
        let norm = p.gains().iter().map(|g| g * g).sum::<f64>().sqrt();
        let scale = if norm > 0.0 { 1.0 / norm } else { 0.0 };
        p.gains().iter().map(|g| g * scale).collect()
    };
    let probe = unit(profile);
    let mut best: Option<(usize, f64)> = None;
    for (&beam, reference) in references {
        if reference.len() != probe.len() {
            return Err(Error::DimensionMismatch { expected: probe.len(), actual: reference.len() });
        }
        let r = unit(reference);
        let residual: f64 = probe.iter().zip(&r).map(|(a, b)| (a - b) * (a - b)).sum();
        if best.is_none_or(|(_, b)| residual < b) {
            best = Some((beam, residual));
        }
    }
    Ok(best.expect("non-empty references"))
}

/// Wide-beam squint scenario: a contiguous alternating-sign selection
/// observed over a frequency band on a full-turn angle grid from 0.
#[derive(Clone, Debug, PartialEq)]
pub struct SquintScenario {
    pub config: ArrayConfig,
    pub selection: SelectionVector,
    pub band: FrequencyBand,
    pub u_grid: Vec<f64>,
    pub thresholds: RegionThresholds,
}

impl SquintScenario {
    pub fn new(n_beams: usize, first: usize, last: usize, rho: f64) -> Result<Self> {
        let config = ArrayConfig::new(n_beams)?;
        config.check_beam(first)?;
        config.check_beam(last)?;
        if first > last {
            return Err(invalid(format!("beam range {first}..={last} is empty")));
        }
        Ok(SquintScenario {
            selection: SelectionVector::alternating(n_beams, first..=last)?,
            config,
            band: FrequencyBand::with_rho(rho)?,
            u_grid: uniform_angle_grid(0.0, crate::DEFAULT_ANGLE_POINTS),
            thresholds: RegionThresholds::default(),
        })
    }

    /// 128 beams, beams 64 to 115 selected, band `[0.9, 1]`.
    pub fn reference() -> Self {
        Self::new(128, 64, 115, 0.9).expect("valid reference scenario")
    }

    pub fn gain_map(&self) -> Result<GainGrid> {
        wideband_gain_map(&self.config, &self.selection, &self.band, &self.u_grid)
    }

    /// Region label for every angle of the map.
    pub fn classify_map(&self, map: &GainGrid) -> Result<Vec<Classification>> {
        let peak = map.peak_magnitude();
        (0..map.u_grid().len())
            .map(|i| classify_region(&profile_from_map(map, i)?, peak, self.thresholds))
            .collect()
    }

    /// Profile seen from each listed beam pointing.
    pub fn reference_profiles(&self, beams: impl IntoIterator<Item = usize>) -> Result<BTreeMap<usize, FrequencyProfile>> {
        beams
            .into_iter()
            .map(|b| Ok((b, frequency_profile(&self.config, &self.selection, &self.band, b)?)))
            .collect()
    }

    /// Classification of the profile seen from beam `beam`'s pointing,
    /// relative to the peak of `map`.
    pub fn classify_beam(&self, map: &GainGrid, beam: usize) -> Result<Classification> {
        let profile = frequency_profile(&self.config, &self.selection, &self.band, beam)?;
        classify_region(&profile, map.peak_magnitude(), self.thresholds)
    }
}

/// Maximal runs of equal labels, as `(label, first_index, last_index)`.
pub fn label_runs(labels: &[RegionLabel]) -> Vec<(RegionLabel, usize, usize)> {
    let mut runs: Vec<(RegionLabel, usize, usize)> = Vec::new();
    for (i, &l) in labels.iter().enumerate() {
        match runs.last_mut() {
            Some(run) if run.0 == l => run.2 = i,
            _ => runs.push((l, i, i)),
        }
    }
    runs
}
