//! Snapshot simulation, the base-2 Δ/Σ angle-of-arrival estimator, and the
//! multi-section spatial search.
//!
//! Two base-2 wide beams `D = {n, n+1}` and `E = {n+1, n+2}` observe the same
//! source. The ratio `(|x_D|² - |x_E|²) / (|x_D|² + |x_E|²)` cancels the
//! source and is a strictly decreasing function of the angle between the two
//! base-2 pointings, so it can be inverted from a tabulated model.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::angle::{circular_diff, wrap_positive, BeamspaceAngle};
use crate::array::ArrayConfig;
use crate::error::{invalid, Error, Result};
use crate::rng::trial_rng;
use crate::synthesis::{base2_beam, combined_unchecked, synthesize_mainlobes, AngularInterval, SelectionVector};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Path {
    pub u: BeamspaceAngle,
    pub amplitude: Complex64,
}

/// Incident paths of a scene.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct PathSet {
    pub paths: Vec<Path>,
}

impl PathSet {
    pub fn single(u: BeamspaceAngle, amplitude: Complex64) -> Self {
        PathSet { paths: vec![Path { u, amplitude }] }
    }

    /// Noiseless received sample through `sel`.
    pub fn response(&self, config: &ArrayConfig, sel: &SelectionVector) -> Complex64 {
        self.paths
            .iter()
            .map(|p| combined_unchecked(config.n_beams(), sel, p.u.positive(), 1.0) * p.amplitude)
            .sum()
    }
}

/// One complex sample per measurement beam.
#[derive(Clone, Debug, PartialEq)]
pub struct Observation {
    pub samples: Vec<Complex64>,
    pub snr_db: f64,
}

/// Noise standard deviation for a unit-amplitude path through a 0 dB beam.
pub fn noise_std(snr_db: f64) -> Result<f64> {
    if snr_db == f64::INFINITY {
        return Ok(0.0);
    }
    if !snr_db.is_finite() {
        return Err(invalid(format!("SNR must be finite or +inf, got {snr_db}")));
    }
    Ok(10f64.powf(-snr_db / 20.0))
}

/// Circularly-symmetric complex Gaussian sample with unit variance.
pub fn unit_cn<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

fn check_selections(config: &ArrayConfig, selections: &[SelectionVector]) -> Result<()> {
    for sel in selections {
        if sel.len() != config.n_beams() {
            return Err(Error::DimensionMismatch { expected: config.n_beams(), actual: sel.len() });
        }
        if sel.nonzero_count() == 0 {
            return Err(invalid("measurement selection has no non-zero weight"));
        }
    }
    Ok(())
}

pub fn simulate_snapshot_with_rng<R: Rng + ?Sized>(
    config: &ArrayConfig,
    selections: &[SelectionVector],
    scene: &PathSet,
    snr_db: f64,
    rng: &mut R,
) -> Result<Observation> {
    if scene.paths.is_empty() {
        return Err(invalid("scene has no paths"));
    }
    check_selections(config, selections)?;
    let sigma = noise_std(snr_db)?;
    let samples = selections
        .iter()
        .map(|sel| {
            let clean = scene.response(config, sel);
            // always draw so that the noise realisation does not depend on the SNR
            let w = unit_cn(rng);
            clean + w * sigma
        })
        .collect();
    Ok(Observation { samples, snr_db })
}

/// Simulate one noisy sample per selection; deterministic in `rng_seed`.
pub fn simulate_snapshot(
    config: &ArrayConfig,
    selections: &[SelectionVector],
    scene: &PathSet,
    snr_db: f64,
    rng_seed: u64,
) -> Result<Observation> {
    let mut rng = crate::rng::seeded(rng_seed);
    simulate_snapshot_with_rng(config, selections, scene, snr_db, &mut rng)
}

/// Tabulated Δ/Σ ratio `F(u)` between the pointings of base-2 beams `D` and `E`.
#[derive(Clone, Debug, PartialEq)]
pub struct RatioModel {
    beam_triplet: [usize; 3],
    angles: Vec<f64>,
    ratios: Vec<f64>,
    d_beam: SelectionVector,
    e_beam: SelectionVector,
}

/// Build the ratio model for beams `(n, n+1, n+2)` (mod N).
pub fn build_ratio_model(config: &ArrayConfig, n: usize, grid_size: usize) -> Result<RatioModel> {
    config.check_beam(n)?;
    if grid_size < 64 {
        return Err(invalid(format!("ratio table needs at least 64 points, got {grid_size}")));
    }
    let n_beams = config.n_beams();
    let d_beam = base2_beam(config, n)?;
    let e_beam = base2_beam(config, (n + 1) % n_beams)?;
    let spacing = config.beam_spacing();
    let start = (n as f64 + 0.5) * spacing;
    let angles: Vec<f64> = (0..grid_size)
        .map(|i| start + spacing * i as f64 / (grid_size - 1) as f64)
        .collect();
    let ratios: Vec<f64> = angles
        .iter()
        .map(|&u| {
            let u = wrap_positive(u);
            let pd = combined_unchecked(n_beams, &d_beam, u, 1.0).norm_sqr();
            let pe = combined_unchecked(n_beams, &e_beam, u, 1.0).norm_sqr();
            (pd - pe) / (pd + pe)
        })
        .collect();
    if let Some(i) = ratios.windows(2).position(|w| w[1] >= w[0]) {
        return Err(Error::NonMonotone(i + 1));
    }
    Ok(RatioModel {
        beam_triplet: [n, (n + 1) % n_beams, (n + 2) % n_beams],
        angles,
        ratios,
        d_beam,
        e_beam,
    })
}

impl RatioModel {
    pub fn beam_triplet(&self) -> [usize; 3] {
        self.beam_triplet
    }

    pub fn d_selection(&self) -> &SelectionVector {
        &self.d_beam
    }

    pub fn e_selection(&self) -> &SelectionVector {
        &self.e_beam
    }

    /// Table angles, unwrapped and increasing from the `D` to the `E` pointing.
    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    /// Table ratios, strictly decreasing.
    pub fn ratios(&self) -> &[f64] {
        &self.ratios
    }

    pub fn interval_width(&self) -> f64 {
        self.angles[self.angles.len() - 1] - self.angles[0]
    }

    pub fn resolution(&self) -> f64 {
        self.interval_width() / (self.angles.len() - 1) as f64
    }

    /// Invert `F(u) = r` by bisection on the table with linear interpolation.
    /// Ratios beyond the table range clamp to the nearest endpoint.
    pub fn invert(&self, r: f64) -> f64 {
        let (a, f) = (&self.angles, &self.ratios);
        let last = f.len() - 1;
        if r >= f[0] {
            return a[0];
        }
        if r <= f[last] {
            return a[last];
        }
        // invariant: f[lo] > r > f[hi]
        let (mut lo, mut hi) = (0, last);
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if f[mid] == r {
                return a[mid];
            }
            if f[mid] > r {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let t = (f[lo] - r) / (f[lo] - f[hi]);
        a[lo] + t * (a[hi] - a[lo])
    }
}

/// Δ/Σ power ratio of two samples.
pub fn delta_sigma_ratio(x_d: Complex64, x_e: Complex64) -> Result<f64> {
    let (pd, pe) = (x_d.norm_sqr(), x_e.norm_sqr());
    let total = pd + pe;
    if !(total > 0.0) {
        return Err(Error::NoSignal);
    }
    Ok((pd - pe) / total)
}

/// Estimate the angle of arrival from the samples `(x_D, x_E)`.
pub fn estimate_aoa(obs: &Observation, model: &RatioModel) -> Result<BeamspaceAngle> {
    if obs.samples.len() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, actual: obs.samples.len() });
    }
    estimate_from_samples(obs.samples[0], obs.samples[1], model)
}

pub fn estimate_from_samples(x_d: Complex64, x_e: Complex64, model: &RatioModel) -> Result<BeamspaceAngle> {
    let r = delta_sigma_ratio(x_d, x_e)?;
    Ok(BeamspaceAngle::new(model.invert(r)))
}

/// Result of a multi-section search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchOutcome {
    /// DFT beam the search converged on.
    pub beam: usize,
    /// Index `n` of the base-2 pair `(base2(n), base2(n+1))` bracketing the path.
    pub pair_index: usize,
    pub estimate: BeamspaceAngle,
    /// Number of oracle calls made.
    pub measurements: usize,
}

/// Beams whose nearest-pointing cells intersect `region`, in cyclic order.
pub fn region_beams(config: &ArrayConfig, region: &AngularInterval) -> Vec<usize> {
    let n = config.n_beams();
    if region.is_full() {
        return (0..n).collect();
    }
    let d = config.beam_spacing();
    let t_lo = region.lo() / d;
    let t_hi = t_lo + region.width() / d;
    let first = (t_lo - 0.5 + 1e-9).ceil() as i64;
    let last = (t_hi + 0.5 - 1e-9).floor() as i64;
    let mut out = Vec::new();
    for k in first..=last {
        let b = k.rem_euclid(n as i64) as usize;
        if !out.contains(&b) {
            out.push(b);
        }
    }
    out
}

/// Upper bound on oracle calls: `branching·⌈log_branching(beams)⌉ + 2`.
pub fn search_budget(region_beams: usize, branching: usize) -> usize {
    let mut levels = 0;
    let mut size = region_beams;
    while size > 1 {
        size = size.div_ceil(branching);
        levels += 1;
    }
    branching * levels + 2
}

fn split_even(items: &[usize], parts: usize) -> Vec<&[usize]> {
    let base = items.len() / parts;
    let extra = items.len() % parts;
    let mut out = Vec::with_capacity(parts);
    let mut start = 0;
    for i in 0..parts {
        let len = base + usize::from(i < extra);
        out.push(&items[start..start + len]);
        start += len;
    }
    out
}

/// Logarithmic spatial search: split the candidate beams into `branching`
/// groups, probe each with a synthesized wide beam, descend into the
/// strongest, and finish with a Δ/Σ estimate around the surviving beam.
pub fn multisection_search<F>(
    config: &ArrayConfig,
    mut measure: F,
    region: &AngularInterval,
    branching: usize,
    grid_size: usize,
) -> Result<SearchOutcome>
where
    F: FnMut(&SelectionVector) -> Complex64,
{
    if branching < 2 {
        return Err(invalid(format!("branching factor must be at least 2, got {branching}")));
    }
    if region.width() < config.beam_spacing() - 1e-12 {
        return Err(invalid(format!(
            "search region of width {} is narrower than one beam",
            region.width()
        )));
    }
    let n_beams = config.n_beams();
    let mut candidates = region_beams(config, region);
    let mut measurements = 0;
    while candidates.len() > 1 {
        let parts = split_even(&candidates, branching.min(candidates.len()));
        let mut best: Option<(f64, usize)> = None;
        for (i, part) in parts.iter().enumerate() {
            let first = part[0];
            let last = part[part.len() - 1];
            let target = AngularInterval::around_beams(config, first, last, 0.5)?;
            let sel = synthesize_mainlobes(config, &[target])?;
            let power = measure(&sel).norm_sqr();
            measurements += 1;
            if best.is_none_or(|(p, _)| power > p) {
                best = Some((power, i));
            }
        }
        candidates = parts[best.expect("at least one part").1].to_vec();
    }
    let beam = candidates[0];
    let pair_index = (beam + n_beams - 1) % n_beams;
    let model = build_ratio_model(config, pair_index, grid_size)?;
    let x_d = measure(model.d_selection());
    let x_e = measure(model.e_selection());
    measurements += 2;
    let estimate = estimate_from_samples(x_d, x_e, &model)?;
    Ok(SearchOutcome { beam, pair_index, estimate, measurements })
}

/// One row of an RMSE-versus-SNR sweep.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RmseRow {
    pub snr_db: f64,
    pub trials: usize,
    pub rmse_rad: f64,
    pub bias_rad: f64,
}

/// Monte Carlo RMSE of the Δ/Σ estimator for the triplet starting at beam
/// `n`. Each trial draws a uniform angle inside the model interval, a random
/// path phase, and noise from its own seeded stream; the same streams are
/// reused at every SNR.
pub fn rmse_sweep(model: &RatioModel, config: &ArrayConfig, snrs_db: &[f64], trials: usize, seed: u64) -> Result<Vec<RmseRow>> {
    if trials == 0 {
        return Err(invalid("at least one trial is required"));
    }
    for &s in snrs_db {
        noise_std(s)?;
    }
    let selections = [model.d_selection().clone(), model.e_selection().clone()];
    let lo = model.angles()[0];
    let width = model.interval_width();
    snrs_db
        .iter()
        .map(|&snr| {
            let errors: Vec<f64> = (0..trials as u64)
                .into_par_iter()
                .map(|t| {
                    let mut rng = trial_rng(seed, t);
                    let u = BeamspaceAngle::new(lo + width * rng.random::<f64>());
                    let phase = std::f64::consts::TAU * rng.random::<f64>();
                    let scene = PathSet::single(u, Complex64::from_polar(1.0, phase));
                    let obs = simulate_snapshot_with_rng(config, &selections, &scene, snr, &mut rng)?;
                    let est = estimate_aoa(&obs, model)?;
                    Ok(circular_diff(est.radians(), u.radians()))
                })
                .collect::<Result<_>>()?;
            let n = errors.len() as f64;
            let rmse = (errors.iter().map(|e| e * e).sum::<f64>() / n).sqrt();
            let bias = errors.iter().sum::<f64>() / n;
            Ok(RmseRow { snr_db: snr, trials, rmse_rad: rmse, bias_rad: bias })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{PI, TAU};

    use proptest::prelude::*;
    use rand::Rng;

    use super::*;
    use crate::array::{beam_gain, beam_pointing};
    use crate::synthesis::base2_pointing;

    fn cfg(n: usize) -> ArrayConfig {
        ArrayConfig::new(n).unwrap()
    }

    fn unit() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    #[test]
    fn snapshot_examples() {
        let c = cfg(16);
        let p5 = beam_pointing(&c, 5).unwrap();
        let amp = Complex64::from_polar(0.7, 1.1);
        let scene = PathSet::single(p5, amp);
        let sel = SelectionVector::one_hot(16, 5).unwrap();
        let obs = simulate_snapshot(&c, &[sel], &scene, f64::INFINITY, 1).unwrap();
        assert!((obs.samples[0] - amp).norm() < 1e-12);

        let scene = PathSet::single(beam_pointing(&c, 6).unwrap(), amp);
        let sel = SelectionVector::one_hot(16, 5).unwrap();
        let obs = simulate_snapshot(&c, &[sel], &scene, f64::INFINITY, 1).unwrap();
        assert!(obs.samples[0].norm() < 1e-12);

        let mid = base2_pointing(&c, 5).unwrap();
        let scene = PathSet::single(mid, amp);
        let obs = simulate_snapshot(&c, &[base2_beam(&c, 5).unwrap()], &scene, f64::INFINITY, 1).unwrap();
        let exact = 2.0 / (16.0 * (PI / 32.0).tan());
        assert!((obs.samples[0].norm() - 0.7 * exact).abs() < 1e-12);
    }

    #[test]
    fn snapshot_is_seed_deterministic() {
        let c = cfg(16);
        let scene = PathSet::single(BeamspaceAngle::new(0.4), unit());
        let sels = [base2_beam(&c, 0).unwrap(), base2_beam(&c, 1).unwrap()];
        let a = simulate_snapshot(&c, &sels, &scene, 10.0, 99).unwrap();
        let b = simulate_snapshot(&c, &sels, &scene, 10.0, 99).unwrap();
        let d = simulate_snapshot(&c, &sels, &scene, 10.0, 100).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, d);
    }

    #[test]
    fn snapshot_noise_power_matches_snr() {
        let c = cfg(16);
        let scene = PathSet::single(beam_pointing(&c, 3).unwrap(), unit());
        let sel = SelectionVector::one_hot(16, 3).unwrap();
        let mut rng = crate::rng::seeded(5);
        let n = 20_000;
        let mut acc = 0.0;
        for _ in 0..n {
            let obs = simulate_snapshot_with_rng(&c, std::slice::from_ref(&sel), &scene, 10.0, &mut rng).unwrap();
            acc += (obs.samples[0] - unit()).norm_sqr();
        }
        assert!((acc / n as f64 - 0.1).abs() < 0.005);
    }

    #[test]
    fn snapshot_errors() {
        let c = cfg(16);
        let sel = SelectionVector::one_hot(16, 3).unwrap();
        assert!(simulate_snapshot(&c, std::slice::from_ref(&sel), &PathSet::default(), 10.0, 0).is_err());
        let scene = PathSet::single(BeamspaceAngle::new(0.0), unit());
        assert!(simulate_snapshot(&c, std::slice::from_ref(&sel), &scene, f64::NAN, 0).is_err());
        assert!(simulate_snapshot(&c, &[SelectionVector::zeros(16)], &scene, 10.0, 0).is_err());
    }

    #[test]
    fn ratio_model_shape() {
        let c = cfg(16);
        let m = build_ratio_model(&c, 3, 4096).unwrap();
        assert_eq!(m.beam_triplet(), [3, 4, 5]);
        assert!(m.ratios()[0] > 0.0 && m.ratios()[4095] < 0.0);
        // symmetric about the centre pointing, where both base-2 beams see gain 1
        assert!(m.ratios()[0] + m.ratios()[4095] < 1e-12);
        let centre = beam_pointing(&c, 4).unwrap();
        let r = {
            let pd = combined_unchecked(16, m.d_selection(), centre.positive(), 1.0).norm_sqr();
            let pe = combined_unchecked(16, m.e_selection(), centre.positive(), 1.0).norm_sqr();
            (pd - pe) / (pd + pe)
        };
        assert!(r.abs() < 1e-12);
        assert!(build_ratio_model(&c, 3, 63).is_err());
        assert!(build_ratio_model(&c, 16, 128).is_err());
        let wrapped = build_ratio_model(&c, 15, 256).unwrap();
        assert_eq!(wrapped.beam_triplet(), [15, 0, 1]);
    }

    #[test]
    fn inversion_hits_table_entries_exactly() {
        let m = build_ratio_model(&cfg(16), 2, 512).unwrap();
        for (u, f) in m.angles().iter().zip(m.ratios()) {
            assert_eq!(m.invert(*f), *u);
        }
        assert_eq!(m.invert(2.0), m.angles()[0]);
        assert_eq!(m.invert(-2.0), m.angles()[511]);
    }

    #[test]
    fn noiseless_midpoint_estimate() {
        let c = cfg(16);
        let m = build_ratio_model(&c, 3, 4096).unwrap();
        let mid = beam_pointing(&c, 4).unwrap();
        let scene = PathSet::single(mid, Complex64::from_polar(2.0, 0.3));
        let obs = simulate_snapshot(&c, &[m.d_selection().clone(), m.e_selection().clone()], &scene, f64::INFINITY, 0).unwrap();
        let est = estimate_aoa(&obs, &m).unwrap();
        assert!(est.distance(mid) <= m.resolution());
    }

    #[test]
    fn noiseless_round_trip() {
        for n_beams in [16, 128] {
            let c = cfg(n_beams);
            let m = build_ratio_model(&c, 7, 4096).unwrap();
            let width = m.interval_width();
            for k in 0..512 {
                let u = BeamspaceAngle::new(m.angles()[0] + width * (k as f64 + 0.5) / 512.0);
                let x_d = PathSet::single(u, unit()).response(&c, m.d_selection());
                let x_e = PathSet::single(u, unit()).response(&c, m.e_selection());
                let est = estimate_from_samples(x_d, x_e, &m).unwrap();
                assert!(est.distance(u) < width / 2048.0);
            }
        }
    }

    #[test]
    fn zero_power_is_an_error() {
        let m = build_ratio_model(&cfg(16), 0, 64).unwrap();
        let zero = Complex64::new(0.0, 0.0);
        assert_eq!(estimate_from_samples(zero, zero, &m), Err(Error::NoSignal));
        let obs = Observation { samples: vec![zero], snr_db: 0.0 };
        assert!(estimate_aoa(&obs, &m).is_err());
    }

    #[test]
    fn rmse_at_20_db() {
        let c = cfg(16);
        let m = build_ratio_model(&c, 3, 4096).unwrap();
        let rows = rmse_sweep(&m, &c, &[20.0], 1000, 11).unwrap();
        assert!(rows[0].rmse_rad < (4.0 * PI / 16.0) / 20.0, "{:?}", rows[0]);
    }

    #[test]
    fn budget_formula() {
        assert_eq!(search_budget(128, 2), 16);
        assert_eq!(search_budget(128, 4), 4 * 4 + 2);
        assert_eq!(search_budget(2, 2), 4);
    }

    #[test]
    fn region_beam_sets() {
        let c = cfg(16);
        assert_eq!(region_beams(&c, &AngularInterval::full_circle()).len(), 16);
        let r = AngularInterval::around_beams(&c, 14, 2, 0.5).unwrap();
        assert_eq!(region_beams(&c, &r), vec![14, 15, 0, 1, 2]);
    }

    fn exhaustive_best_beam(c: &ArrayConfig, u: BeamspaceAngle) -> usize {
        (0..c.n_beams())
            .max_by(|a, b| {
                let ga = beam_gain(c, *a, u, 1.0).unwrap().norm();
                let gb = beam_gain(c, *b, u, 1.0).unwrap().norm();
                ga.partial_cmp(&gb).unwrap()
            })
            .unwrap()
    }

    #[test]
    fn search_matches_exhaustive_scan() {
        let c = cfg(128);
        let mut rng = crate::rng::seeded(3);
        for _ in 0..100 {
            let u = BeamspaceAngle::new(TAU * rng.random::<f64>());
            let scene = PathSet::single(u, Complex64::from_polar(1.0, 0.8));
            for branching in [2, 4] {
                let out = multisection_search(&c, |s| scene.response(&c, s), &AngularInterval::full_circle(), branching, 4096)
                    .unwrap();
                assert_eq!(out.beam, exhaustive_best_beam(&c, u));
                assert!(out.measurements <= search_budget(128, branching));
                assert!(out.estimate.distance(u) < c.beam_spacing() / 1000.0);
            }
        }
    }

    #[test]
    fn search_on_pointings_and_crossovers() {
        let c = cfg(128);
        for k in 0..128 {
            let p = beam_pointing(&c, k).unwrap();
            let scene = PathSet::single(p, unit());
            let out = multisection_search(&c, |s| scene.response(&c, s), &AngularInterval::full_circle(), 2, 4096).unwrap();
            assert!(out.measurements <= 16);
            assert!(out.estimate.distance(p) < c.beam_spacing() / 10.0);

            let x = base2_pointing(&c, k).unwrap();
            let scene = PathSet::single(x, unit());
            let out = multisection_search(&c, |s| scene.response(&c, s), &AngularInterval::full_circle(), 2, 4096).unwrap();
            assert!(out.estimate.distance(x) < 2.0 * c.beam_spacing() / 4095.0);
        }
    }

    #[test]
    fn search_in_partial_region() {
        let c = cfg(64);
        let region = AngularInterval::around_beams(&c, 10, 25, 0.5).unwrap();
        let u = BeamspaceAngle::new(17.3 * c.beam_spacing());
        let scene = PathSet::single(u, unit());
        let out = multisection_search(&c, |s| scene.response(&c, s), &region, 2, 4096).unwrap();
        assert_eq!(out.beam, 17);
        assert!(out.measurements <= search_budget(16, 2));
        assert!(multisection_search(&c, |s| scene.response(&c, s), &region, 1, 4096).is_err());
        let tiny = AngularInterval::new(0.0, 0.5 * c.beam_spacing()).unwrap();
        assert!(multisection_search(&c, |s| scene.response(&c, s), &tiny, 2, 4096).is_err());
    }

    proptest! {
        #[test]
        fn estimate_is_scale_invariant(
            re in -3.0f64..3.0, im in -3.0f64..3.0,
            dr in -1.0f64..1.0, di in -1.0f64..1.0,
            er in -1.0f64..1.0, ei in -1.0f64..1.0,
        ) {
            let c = Complex64::new(re, im);
            prop_assume!(c.norm() > 1e-3);
            let x_d = Complex64::new(dr, di);
            let x_e = Complex64::new(er, ei);
            prop_assume!(x_d.norm_sqr() + x_e.norm_sqr() > 1e-6);
            let m = build_ratio_model(&cfg(16), 4, 256).unwrap();
            let a = estimate_from_samples(x_d, x_e, &m).unwrap();
            let b = estimate_from_samples(c * x_d, c * x_e, &m).unwrap();
            prop_assert!(a.distance(b) < 1e-9);
        }
    }
}
