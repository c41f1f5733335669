//! Single-RF-chain joint communication and sensing: one fixed communication
//! beam plus `x` sensing beams per time unit, sharing power evenly.

use num_complex::Complex64;
use rand::seq::index::sample;
use rand::Rng;
use rayon::prelude::*;

use crate::angle::{wrap_positive, BeamspaceAngle};
use crate::array::pointing_radians;
use crate::error::{invalid, Result};
use crate::rng::seeded;
use crate::synthesis::{alternating_signs, combined_unchecked, Normalization, SelectionVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Scheme {
    /// Cyclically sliding contiguous sensing window.
    #[default]
    Type1,
    /// Uniformly random sensing subset with random signs.
    Type2,
}

/// How a type-1 window that lands on the communication beam is repaired.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CollisionPolicy {
    /// Replace the communication beam by the first index after the window.
    /// The schedule repeats every `N` time units.
    #[default]
    SubstituteNext,
    /// Slide the window over the `N - 1` non-communication beams only.
    /// The schedule repeats every `N - 1` time units.
    SkipComm,
}

#[derive(Clone, Debug, PartialEq)]
pub struct JcasConfig {
    pub n_beams: usize,
    pub comm_beam: usize,
    pub n_sensing: usize,
    pub scheme: Scheme,
    pub time_units: usize,
    pub rng_seed: u64,
    /// First index of the type-1 window at `t = 0`; `None` means `N - x`.
    pub type1_start: Option<usize>,
    pub collision: CollisionPolicy,
}

impl JcasConfig {
    pub fn new(n_beams: usize, comm_beam: usize, n_sensing: usize, scheme: Scheme, time_units: usize, rng_seed: u64) -> Result<Self> {
        let cfg = JcasConfig {
            n_beams,
            comm_beam,
            n_sensing,
            scheme,
            time_units,
            rng_seed,
            type1_start: None,
            collision: CollisionPolicy::default(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_beams < 2 {
            return Err(invalid(format!("need at least 2 beams, got {}", self.n_beams)));
        }
        if self.comm_beam >= self.n_beams {
            return Err(invalid(format!("comm beam {} out of range for {} beams", self.comm_beam, self.n_beams)));
        }
        if self.n_sensing == 0 || self.n_sensing >= self.n_beams {
            return Err(invalid(format!(
                "sensing beam count must lie in 1..={}, got {}",
                self.n_beams - 1,
                self.n_sensing
            )));
        }
        if self.time_units == 0 {
            return Err(invalid("at least one time unit is required"));
        }
        if let Some(s) = self.type1_start {
            if s >= self.n_beams {
                return Err(invalid(format!("type-1 start {s} out of range for {} beams", self.n_beams)));
            }
        }
        Ok(())
    }

    pub fn with_scheme(mut self, scheme: Scheme) -> Self {
        self.scheme = scheme;
        self
    }

    pub fn with_n_sensing(mut self, n_sensing: usize) -> Result<Self> {
        self.n_sensing = n_sensing;
        self.validate()?;
        Ok(self)
    }

    pub fn with_time_units(mut self, time_units: usize) -> Result<Self> {
        self.time_units = time_units;
        self.validate()?;
        Ok(self)
    }

    pub fn with_seed(mut self, rng_seed: u64) -> Self {
        self.rng_seed = rng_seed;
        self
    }

    pub fn with_collision(mut self, collision: CollisionPolicy) -> Self {
        self.collision = collision;
        self
    }

    pub fn with_type1_start(mut self, start: usize) -> Result<Self> {
        self.type1_start = Some(start);
        self.validate()?;
        Ok(self)
    }

    fn start(&self) -> usize {
        self.type1_start.unwrap_or(self.n_beams - self.n_sensing)
    }
}

/// Per-time-unit selections, each with even power split over `x + 1` beams.
#[derive(Clone, Debug, PartialEq)]
pub struct JcasSchedule {
    n_beams: usize,
    comm_beam: usize,
    sensing: Vec<Vec<usize>>,
    selections: Vec<SelectionVector>,
}

impl JcasSchedule {
    pub fn n_beams(&self) -> usize {
        self.n_beams
    }

    pub fn comm_beam(&self) -> usize {
        self.comm_beam
    }

    pub fn time_units(&self) -> usize {
        self.selections.len()
    }

    /// Sorted sensing beams of each time unit.
    pub fn sensing_sets(&self) -> &[Vec<usize>] {
        &self.sensing
    }

    pub fn selections(&self) -> &[SelectionVector] {
        &self.selections
    }

    /// Fraction of time units in which `beam` is selected (comm or sensing).
    pub fn selection_frequency(&self, beam: usize) -> f64 {
        let hits = self.selections.iter().filter(|s| s.weights().get(beam).is_some_and(|w| *w != 0)).count();
        hits as f64 / self.selections.len() as f64
    }
}

fn finish(cfg: &JcasConfig, sensing: Vec<usize>, mut weights: Vec<i8>) -> (Vec<usize>, SelectionVector) {
    weights[cfg.comm_beam] = 1;
    let sel = SelectionVector::new(weights, Normalization::EvenPowerSplit).expect("weights are in {-1, 0, 1}");
    (sensing, sel)
}

fn type1_window(cfg: &JcasConfig, t: usize) -> Vec<usize> {
    let n = cfg.n_beams;
    let x = cfg.n_sensing;
    let s0 = cfg.start();
    match cfg.collision {
        CollisionPolicy::SubstituteNext => {
            let mut set: Vec<usize> = (0..x).map(|k| (s0 + t + k) % n).filter(|&b| b != cfg.comm_beam).collect();
            let mut next = (s0 + t + x) % n;
            while set.len() < x {
                if next != cfg.comm_beam && !set.contains(&next) {
                    set.push(next);
                }
                next = (next + 1) % n;
            }
            set
        }
        CollisionPolicy::SkipComm => {
            let others: Vec<usize> = (0..n).map(|k| (s0 + k) % n).filter(|&b| b != cfg.comm_beam).collect();
            (0..x).map(|k| others[(t + k) % others.len()]).collect()
        }
    }
}

/// Regular schedule: a window of `x` consecutive beams advancing by one
/// index per time unit, signs alternating along each run.
pub fn type1_schedule(cfg: &JcasConfig) -> Result<JcasSchedule> {
    cfg.validate()?;
    let (sensing, selections) = (0..cfg.time_units)
        .map(|t| {
            let mut set = type1_window(cfg, t);
            set.sort_unstable();
            let mut mask = vec![false; cfg.n_beams];
            for &b in &set {
                mask[b] = true;
            }
            finish(cfg, set, alternating_signs(&mask))
        })
        .unzip();
    Ok(JcasSchedule { n_beams: cfg.n_beams, comm_beam: cfg.comm_beam, sensing, selections })
}

/// Random schedule: a uniform `x`-subset of the non-communication beams per
/// time unit with independent uniform signs, drawn from `rng_seed`.
pub fn type2_schedule(cfg: &JcasConfig) -> Result<JcasSchedule> {
    cfg.validate()?;
    let mut rng = seeded(cfg.rng_seed);
    let others: Vec<usize> = (0..cfg.n_beams).filter(|&b| b != cfg.comm_beam).collect();
    let (sensing, selections) = (0..cfg.time_units)
        .map(|_| {
            let mut set: Vec<usize> = sample(&mut rng, others.len(), cfg.n_sensing).into_iter().map(|i| others[i]).collect();
            set.sort_unstable();
            let mut weights = vec![0i8; cfg.n_beams];
            for &b in &set {
                weights[b] = if rng.random::<bool>() { 1 } else { -1 };
            }
            finish(cfg, set, weights)
        })
        .unzip();
    Ok(JcasSchedule { n_beams: cfg.n_beams, comm_beam: cfg.comm_beam, sensing, selections })
}

/// Schedule for `cfg.scheme`.
pub fn build_schedule(cfg: &JcasConfig) -> Result<JcasSchedule> {
    match cfg.scheme {
        Scheme::Type1 => type1_schedule(cfg),
        Scheme::Type2 => type2_schedule(cfg),
    }
}

/// Time-averaged squared gain per angle.
#[derive(Clone, Debug, PartialEq)]
pub struct ApgCurve {
    pub u_grid: Vec<f64>,
    pub apg: Vec<f64>,
}

impl ApgCurve {
    pub fn apg_db(&self) -> Vec<f64> {
        self.apg.iter().map(|p| 10.0 * p.log10()).collect()
    }
}

fn apg_at(schedule: &JcasSchedule, u_pos: f64) -> f64 {
    let total: f64 = schedule
        .selections
        .iter()
        .map(|s| combined_unchecked(schedule.n_beams, s, u_pos, 1.0).norm_sqr())
        .sum();
    total / schedule.selections.len() as f64
}

pub fn average_power_gain(schedule: &JcasSchedule, u_grid: &[f64]) -> Result<ApgCurve> {
    if schedule.selections.is_empty() {
        return Err(invalid("schedule is empty"));
    }
    let apg = u_grid.par_iter().map(|&u| apg_at(schedule, wrap_positive(u))).collect();
    Ok(ApgCurve { u_grid: u_grid.to_vec(), apg })
}

/// Average power gain exactly at beam `m`'s pointing.
pub fn apg_at_pointing(schedule: &JcasSchedule, m: usize) -> f64 {
    apg_at(schedule, pointing_radians(schedule.n_beams, m))
}

/// One row of the communication/sensing power trade-off.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TradeoffRow {
    pub n_sensing: usize,
    pub comm_power: f64,
    pub sensing_apg: f64,
}

/// Comm-direction power and sensing-direction APG for each sensing count.
pub fn tradeoff_curves(base: &JcasConfig, xs: &[usize], probe: BeamspaceAngle) -> Result<Vec<TradeoffRow>> {
    if xs.is_empty() {
        return Err(invalid("no sensing counts given"));
    }
    xs.par_iter()
        .map(|&x| {
            let cfg = base.clone().with_n_sensing(x)?;
            let schedule = build_schedule(&cfg)?;
            Ok(TradeoffRow {
                n_sensing: x,
                comm_power: apg_at_pointing(&schedule, cfg.comm_beam),
                sensing_apg: apg_at(&schedule, probe.positive()),
            })
        })
        .collect()
}

/// Number of times the comm curve crosses the sensing curve. Gaps within
/// `tol` count as touching; a touch between opposite sides is one crossing,
/// and so is a touch at the last row.
pub fn count_crossings(rows: &[TradeoffRow], tol: f64) -> usize {
    let side = |r: &TradeoffRow| {
        let d = r.comm_power - r.sensing_apg;
        if d > tol {
            1
        } else if d < -tol {
            -1
        } else {
            0
        }
    };
    let mut crossings = 0;
    let mut last_side = 0;
    for (i, r) in rows.iter().enumerate() {
        let s = side(r);
        if s != 0 {
            if last_side != 0 && s != last_side {
                crossings += 1;
            }
            last_side = s;
        } else if i == rows.len() - 1 && last_side != 0 {
            crossings += 1;
        }
    }
    crossings
}

/// Complex gain per (time unit, angle).
#[derive(Clone, Debug, PartialEq)]
pub struct SecrecyMap {
    pub u_grid: Vec<f64>,
    pub time_units: usize,
    /// Row-major: one row per time unit.
    pub values: Vec<Complex64>,
}

/// Temporal statistics of the gain at one angle. Phase statistics are
/// circular; a zero-amplitude sample has phase 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AngleStats {
    pub amplitude_mean: f64,
    pub amplitude_std: f64,
    pub phase_mean: f64,
    pub phase_std: f64,
}

impl SecrecyMap {
    pub fn value(&self, t: usize, u_index: usize) -> Complex64 {
        self.values[t * self.u_grid.len() + u_index]
    }

    /// Gain sequence over time at one angle.
    pub fn series(&self, u_index: usize) -> Vec<Complex64> {
        (0..self.time_units).map(|t| self.value(t, u_index)).collect()
    }

    pub fn stats(&self, u_index: usize) -> AngleStats {
        series_stats(&self.series(u_index))
    }

    pub fn all_stats(&self) -> Vec<AngleStats> {
        (0..self.u_grid.len()).map(|i| self.stats(i)).collect()
    }
}

pub fn series_stats(series: &[Complex64]) -> AngleStats {
    let n = series.len() as f64;
    let amps: Vec<f64> = series.iter().map(|g| g.norm()).collect();
    // shifted by the first sample so that a constant series has variance exactly 0
    let k = amps.first().copied().unwrap_or(0.0);
    let shift = amps.iter().map(|a| a - k).sum::<f64>() / n;
    let mean = k + shift;
    let var = (amps.iter().map(|a| (a - k) * (a - k)).sum::<f64>() / n - shift * shift).max(0.0);
    let resultant: Complex64 = series.iter().map(|g| Complex64::from_polar(1.0, g.arg())).sum::<Complex64>() / n;
    let r = resultant.norm().min(1.0);
    AngleStats {
        amplitude_mean: mean,
        amplitude_std: var.sqrt(),
        phase_mean: resultant.arg(),
        phase_std: (-2.0 * r.ln()).sqrt(),
    }
}

pub fn secrecy_map(schedule: &JcasSchedule, u_grid: &[f64]) -> Result<SecrecyMap> {
    if schedule.selections.is_empty() {
        return Err(invalid("schedule is empty"));
    }
    let values = schedule
        .selections
        .par_iter()
        .flat_map_iter(|s| u_grid.iter().map(move |&u| combined_unchecked(schedule.n_beams, s, wrap_positive(u), 1.0)))
        .collect();
    Ok(SecrecyMap { u_grid: u_grid.to_vec(), time_units: schedule.time_units(), values })
}
