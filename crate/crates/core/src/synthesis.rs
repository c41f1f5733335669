//! Beam synthesis with `{-1, 0, +1}` beam-selection weights.
//!
//! Adjacent DFT beams have (nearly) opposite phases where their patterns
//! cross, so a contiguous run of selected beams with alternating signs adds
//! coherently between pointings and yields a wide, roughly flat mainlobe.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::angle::{wrap_positive, BeamspaceAngle};
use crate::array::{beam_response, check_frequency, ArrayConfig};
use crate::error::{invalid, Error, Result};

/// How a selection splits amplitude across its selected beams.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Normalization {
    /// Every selected beam is applied with amplitude 1.
    #[default]
    Unit,
    /// Every selected beam is applied with amplitude `1/√K`, `K` selected beams.
    EvenPowerSplit,
}

/// Per-port weights of the analog selection network.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SelectionVector {
    weights: Vec<i8>,
    normalization: Normalization,
}

impl SelectionVector {
    pub fn new(weights: Vec<i8>, normalization: Normalization) -> Result<Self> {
        if let Some(w) = weights.iter().find(|w| !matches!(w, -1..=1)) {
            return Err(invalid(format!("selection weight {w} is not in {{-1, 0, +1}}")));
        }
        Ok(SelectionVector { weights, normalization })
    }

    pub fn zeros(n_beams: usize) -> Self {
        SelectionVector { weights: vec![0; n_beams], normalization: Normalization::Unit }
    }

    pub fn one_hot(n_beams: usize, beam: usize) -> Result<Self> {
        if beam >= n_beams {
            return Err(Error::IndexOutOfRange { index: beam, len: n_beams });
        }
        let mut sel = Self::zeros(n_beams);
        sel.weights[beam] = 1;
        Ok(sel)
    }

    /// Alternating signs over each cyclically contiguous run of `beams`.
    pub fn alternating(n_beams: usize, beams: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut selected = vec![false; n_beams];
        for b in beams {
            if b >= n_beams {
                return Err(Error::IndexOutOfRange { index: b, len: n_beams });
            }
            selected[b] = true;
        }
        Ok(SelectionVector {
            weights: alternating_signs(&selected),
            normalization: Normalization::Unit,
        })
    }

    pub fn with_normalization(mut self, normalization: Normalization) -> Self {
        self.normalization = normalization;
        self
    }

    pub fn weights(&self) -> &[i8] {
        &self.weights
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn set(&mut self, beam: usize, weight: i8) -> Result<()> {
        if !matches!(weight, -1..=1) {
            return Err(invalid(format!("selection weight {weight} is not in {{-1, 0, +1}}")));
        }
        let len = self.weights.len();
        let slot = self.weights.get_mut(beam).ok_or(Error::IndexOutOfRange { index: beam, len })?;
        *slot = weight;
        Ok(())
    }

    pub fn selected(&self) -> impl Iterator<Item = usize> + '_ {
        self.weights.iter().enumerate().filter(|(_, w)| **w != 0).map(|(i, _)| i)
    }

    pub fn nonzero_count(&self) -> usize {
        self.weights.iter().filter(|w| **w != 0).count()
    }

    /// Amplitude applied to each selected beam.
    pub fn amplitude(&self) -> f64 {
        match self.normalization {
            Normalization::Unit => 1.0,
            Normalization::EvenPowerSplit => 1.0 / (self.nonzero_count().max(1) as f64).sqrt(),
        }
    }

    /// Effective complex weight per beam port.
    pub fn complex_weights(&self) -> Vec<Complex64> {
        let a = self.amplitude();
        self.weights.iter().map(|&w| Complex64::new(a * w as f64, 0.0)).collect()
    }
}

/// Compact text form: comma-separated signed digits, e.g. `0,+1,-1,0`.
impl fmt::Display for SelectionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.weights.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(match w {
                1 => "+1",
                -1 => "-1",
                _ => "0",
            })?;
        }
        Ok(())
    }
}

impl FromStr for SelectionVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let weights = s
            .split(',')
            .map(|tok| match tok.trim() {
                "+1" | "1" => Ok(1),
                "-1" => Ok(-1),
                "0" | "+0" | "-0" => Ok(0),
                other => Err(invalid(format!("bad selection weight {other:?}"))),
            })
            .collect::<Result<Vec<i8>>>()?;
        SelectionVector::new(weights, Normalization::Unit)
    }
}

/// Sign pattern for a boolean selection mask: each cyclic run of selected
/// beams starts at +1 and alternates. A full mask alternates from beam 0.
pub(crate) fn alternating_signs(selected: &[bool]) -> Vec<i8> {
    let n = selected.len();
    let mut out = vec![0i8; n];
    if n == 0 {
        return out;
    }
    if selected.iter().all(|&s| s) {
        for (i, w) in out.iter_mut().enumerate() {
            *w = if i % 2 == 0 { 1 } else { -1 };
        }
        return out;
    }
    for start in 0..n {
        if !selected[start] || selected[(start + n - 1) % n] {
            continue;
        }
        let mut sign = 1i8;
        let mut k = start;
        while selected[k] {
            out[k] = sign;
            sign = -sign;
            k = (k + 1) % n;
        }
    }
    out
}

/// A wrapping interval `[lo, lo + width)` on the circle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AngularInterval {
    lo: f64,
    width: f64,
}

impl AngularInterval {
    /// Interval from `lo` to `hi` (radians, unwrapped, `hi > lo`).
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        let width = hi - lo;
        if !(width > 0.0) || !width.is_finite() {
            return Err(invalid(format!("interval [{lo}, {hi}] has no width")));
        }
        if width > TAU + 1e-12 {
            return Err(invalid(format!("interval width {width} exceeds a full turn")));
        }
        Ok(AngularInterval { lo: wrap_positive(lo), width: width.min(TAU) })
    }

    pub fn full_circle() -> Self {
        AngularInterval { lo: 0.0, width: TAU }
    }

    /// Interval spanning beam pointings `first..=last` (cyclic), widened by
    /// `margin` beam spacings on each side.
    pub fn around_beams(config: &ArrayConfig, first: usize, last: usize, margin: f64) -> Result<Self> {
        config.check_beam(first)?;
        config.check_beam(last)?;
        let n = config.n_beams();
        let span = ((last + n - first) % n) as f64;
        let d = config.beam_spacing();
        let lo = first as f64 * d - margin * d;
        AngularInterval::new(lo, lo + (span + 2.0 * margin) * d)
    }

    /// Start of the interval in `[0, 2π)`.
    pub fn lo(&self) -> f64 {
        self.lo
    }

    /// End of the interval, `lo + width` (may exceed 2π).
    pub fn hi(&self) -> f64 {
        self.lo + self.width
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn is_full(&self) -> bool {
        self.width >= TAU - 1e-12
    }

    pub fn center(&self) -> BeamspaceAngle {
        BeamspaceAngle::new(self.lo + 0.5 * self.width)
    }

    pub fn contains(&self, u: BeamspaceAngle) -> bool {
        (u.positive() - self.lo).rem_euclid(TAU) < self.width || self.is_full()
    }

    /// Whether the two half-open intervals share any angle.
    pub fn overlaps(&self, other: &AngularInterval) -> bool {
        if self.is_full() || other.is_full() {
            return true;
        }
        (other.lo - self.lo).rem_euclid(TAU) < self.width || (self.lo - other.lo).rem_euclid(TAU) < other.width
    }
}

const COVER_EPS: f64 = 1e-9;

/// Beams whose first-null mainlobes minimally cover `target`.
fn covering_beams(n_beams: usize, target: &AngularInterval) -> Vec<usize> {
    if target.is_full() {
        return (0..n_beams).collect();
    }
    let d = TAU / n_beams as f64;
    let t_lo = target.lo() / d;
    let t_hi = t_lo + target.width() / d;
    // beam k covers [t_lo, t_hi] iff k - 1 <= t_lo and k + 1 >= t_hi
    let first = (t_lo + 1.0 + COVER_EPS).floor() as i64;
    let last = (t_hi - 1.0 - COVER_EPS).ceil() as i64;
    let wrap = |k: i64| k.rem_euclid(n_beams as i64) as usize;
    if first <= last {
        (first..=last).map(wrap).collect()
    } else {
        // any beam in last..=first covers on its own; take the one nearest the centre
        let centre = 0.5 * (t_lo + t_hi);
        let best = (last..=first)
            .min_by(|a, b| {
                let da = (*a as f64 - centre).abs();
                let db = (*b as f64 - centre).abs();
                da.partial_cmp(&db).unwrap().then(a.cmp(b))
            })
            .unwrap();
        vec![wrap(best)]
    }
}

/// Select the DFT beams whose mainlobes cover each target, with alternating
/// signs inside every contiguous run.
pub fn synthesize_mainlobes(config: &ArrayConfig, targets: &[AngularInterval]) -> Result<SelectionVector> {
    if targets.is_empty() {
        return Err(invalid("at least one target interval is required"));
    }
    for (i, a) in targets.iter().enumerate() {
        for b in &targets[i + 1..] {
            if a.overlaps(b) {
                return Err(invalid(format!(
                    "target intervals [{}, {}) and [{}, {}) overlap",
                    a.lo(),
                    a.hi(),
                    b.lo(),
                    b.hi()
                )));
            }
        }
    }
    let n = config.n_beams();
    let mut selected = vec![false; n];
    for t in targets {
        for b in covering_beams(n, t) {
            selected[b] = true;
        }
    }
    Ok(SelectionVector { weights: alternating_signs(&selected), normalization: Normalization::Unit })
}

/// Beams `n` and `n+1` (mod N) with weights `(+1, -1)`.
pub fn base2_beam(config: &ArrayConfig, n: usize) -> Result<SelectionVector> {
    config.check_beam(n)?;
    let mut sel = SelectionVector::zeros(config.n_beams());
    sel.weights[n] = 1;
    sel.weights[(n + 1) % config.n_beams()] = -1;
    Ok(sel)
}

/// Pointing of the base-2 wide beam built on beam `n`: `u_n + π/N`.
pub fn base2_pointing(config: &ArrayConfig, n: usize) -> Result<BeamspaceAngle> {
    config.check_beam(n)?;
    Ok(BeamspaceAngle::new((n as f64 + 0.5) * config.beam_spacing()))
}

fn check_selection(config: &ArrayConfig, sel: &SelectionVector) -> Result<()> {
    if sel.len() != config.n_beams() {
        return Err(Error::DimensionMismatch { expected: config.n_beams(), actual: sel.len() });
    }
    if sel.nonzero_count() == 0 {
        return Err(invalid("selection has no non-zero weight"));
    }
    Ok(())
}

/// Combined gain of a selection towards `u` at normalized frequency `f_norm`.
pub fn combined_gain(config: &ArrayConfig, sel: &SelectionVector, u: BeamspaceAngle, f_norm: f64) -> Result<Complex64> {
    check_selection(config, sel)?;
    check_frequency(f_norm)?;
    Ok(combined_unchecked(config.n_beams(), sel, u.positive(), f_norm))
}

pub(crate) fn combined_unchecked(n_beams: usize, sel: &SelectionVector, u_pos: f64, f_norm: f64) -> Complex64 {
    let sum: Complex64 = sel
        .weights
        .iter()
        .enumerate()
        .filter(|(_, w)| **w != 0)
        .map(|(n, &w)| beam_response(n_beams, n, u_pos, f_norm) * w as f64)
        .sum();
    sum * sel.amplitude()
}

/// Minimum and maximum gain (dB) over the interior of `target`, excluding a
/// margin of one beam spacing at each edge.
pub fn mainlobe_ripple(config: &ArrayConfig, sel: &SelectionVector, target: &AngularInterval) -> Result<(f64, f64)> {
    check_selection(config, sel)?;
    let margin = config.beam_spacing();
    let inner = target.width() - 2.0 * margin;
    if inner <= 0.0 {
        return Err(invalid(format!(
            "interval of width {} is narrower than two beam spacings",
            target.width()
        )));
    }
    let step = TAU / crate::DEFAULT_ANGLE_POINTS as f64;
    let samples = ((inner / step).ceil() as usize).max(64);
    let start = target.lo() + margin;
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for i in 0..=samples {
        let u = wrap_positive(start + inner * i as f64 / samples as f64);
        let db = 20.0 * combined_unchecked(config.n_beams(), sel, u, 1.0).norm().log10();
        lo = lo.min(db);
        hi = hi.max(db);
    }
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use proptest::prelude::*;

    use super::*;
    use crate::array::{beam_gain, beam_pointing};

    fn cfg(n: usize) -> ArrayConfig {
        ArrayConfig::new(n).unwrap()
    }

    fn nonzero(sel: &SelectionVector) -> Vec<(usize, i8)> {
        sel.weights().iter().copied().enumerate().filter(|(_, w)| *w != 0).collect()
    }

    fn two_lobe_targets(c: &ArrayConfig) -> Vec<AngularInterval> {
        vec![
            AngularInterval::around_beams(c, 1, 4, 0.5).unwrap(),
            AngularInterval::around_beams(c, 12, 13, 0.5).unwrap(),
        ]
    }

    #[test]
    fn two_lobe_selection() {
        let c = cfg(16);
        let sel = synthesize_mainlobes(&c, &two_lobe_targets(&c)).unwrap();
        assert_eq!(nonzero(&sel), vec![(1, 1), (2, -1), (3, 1), (4, -1), (12, 1), (13, -1)]);
        assert_eq!(sel.to_string(), "0,+1,-1,+1,-1,0,0,0,0,0,0,0,+1,-1,0,0");
    }

    #[test]
    fn single_mainlobe_selects_one_beam() {
        let c = cfg(16);
        let t = AngularInterval::around_beams(&c, 9, 9, 1.0).unwrap();
        let sel = synthesize_mainlobes(&c, &[t]).unwrap();
        assert_eq!(nonzero(&sel), vec![(9, 1)]);
    }

    #[test]
    fn full_circle_selects_everything() {
        let c = cfg(16);
        let sel = synthesize_mainlobes(&c, &[AngularInterval::full_circle()]).unwrap();
        assert_eq!(sel.nonzero_count(), 16);
        for (i, w) in sel.weights().iter().enumerate() {
            assert_eq!(*w, if i % 2 == 0 { 1 } else { -1 });
        }
        // no deep nulls anywhere
        for k in 0..4096 {
            let u = BeamspaceAngle::new(TAU * k as f64 / 4096.0);
            let g = combined_gain(&c, &sel, u, 1.0).unwrap().norm();
            assert!(20.0 * g.log10() >= -1.0);
        }
    }

    #[test]
    fn narrow_target_between_pointings() {
        let c = cfg(16);
        let d = c.beam_spacing();
        let t = AngularInterval::new(3.1 * d, 3.3 * d).unwrap();
        let sel = synthesize_mainlobes(&c, &[t]).unwrap();
        assert_eq!(nonzero(&sel), vec![(3, 1)]);
        let t = AngularInterval::new(3.6 * d, 3.8 * d).unwrap();
        assert_eq!(nonzero(&synthesize_mainlobes(&c, &[t]).unwrap()), vec![(4, 1)]);
    }

    #[test]
    fn wrapping_target() {
        let c = cfg(16);
        let t = AngularInterval::around_beams(&c, 15, 1, 0.5).unwrap();
        let sel = synthesize_mainlobes(&c, &[t]).unwrap();
        assert_eq!(nonzero(&sel), vec![(0, -1), (1, 1), (15, 1)]);
    }

    #[test]
    fn synthesis_errors() {
        let c = cfg(16);
        assert!(synthesize_mainlobes(&c, &[]).is_err());
        let a = AngularInterval::around_beams(&c, 1, 4, 0.5).unwrap();
        let b = AngularInterval::around_beams(&c, 3, 6, 0.5).unwrap();
        assert!(synthesize_mainlobes(&c, &[a, b]).is_err());
        assert!(synthesize_mainlobes(&c, &[a, AngularInterval::full_circle()]).is_err());
        assert!(AngularInterval::new(1.0, 1.0).is_err());
        assert!(AngularInterval::new(0.0, 7.0).is_err());
    }

    #[test]
    fn base2_examples() {
        let c = cfg(16);
        let sel = base2_beam(&c, 12).unwrap();
        assert_eq!(nonzero(&sel), vec![(12, 1), (13, -1)]);
        let mid = base2_pointing(&c, 12).unwrap();
        assert!(mid.distance(BeamspaceAngle::new(TAU * 12.5 / 16.0)) < 1e-12);
        let g = combined_gain(&c, &sel, mid, 1.0).unwrap().norm();
        // finite-N crossover gain 2/(N tan(π/2N)), approaching 4/π
        let exact = 2.0 / (16.0 * (PI / 32.0).tan());
        assert!((g - exact).abs() < 1e-12);
        assert!((g - 4.0 / PI).abs() < 5e-3);
        let single = beam_gain(&c, 12, mid, 1.0).unwrap().norm();
        assert!((g / single - 2.0 * (PI / 32.0).cos()).abs() < 1e-12);
        // at a constituent pointing the partner beam is nulled
        let p12 = beam_pointing(&c, 12).unwrap();
        assert!((combined_gain(&c, &sel, p12, 1.0).unwrap().norm() - 1.0).abs() < 1e-12);
        assert_eq!(nonzero(&base2_beam(&c, 15).unwrap()), vec![(0, -1), (15, 1)]);
        assert!(base2_beam(&c, 16).is_err());
    }

    #[test]
    fn base2_peak_location() {
        for n_beams in [16, 64] {
            let c = cfg(n_beams);
            for n in [0, 5, n_beams - 1] {
                let sel = base2_beam(&c, n).unwrap();
                let grid = crate::array::uniform_angle_grid(0.0, 4096);
                let (arg, _) = grid
                    .iter()
                    .map(|&u| (u, combined_gain(&c, &sel, BeamspaceAngle::new(u), 1.0).unwrap().norm()))
                    .fold((0.0, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc });
                let expect = base2_pointing(&c, n).unwrap();
                assert!(BeamspaceAngle::new(arg).distance(expect) <= TAU / 4096.0 + 1e-12);
            }
        }
    }

    #[test]
    fn sign_rule_is_coherent_at_crossovers() {
        for n_beams in [8, 16, 33, 128] {
            let c = cfg(n_beams);
            for n in 0..n_beams {
                let mid = base2_pointing(&c, n).unwrap();
                let opposite = combined_gain(&c, &base2_beam(&c, n).unwrap(), mid, 1.0).unwrap().norm();
                let mut same = SelectionVector::zeros(n_beams);
                same.set(n, 1).unwrap();
                same.set((n + 1) % n_beams, 1).unwrap();
                let same = combined_gain(&c, &same, mid, 1.0).unwrap().norm();
                let single = beam_gain(&c, n, mid, 1.0).unwrap().norm();
                let partner = beam_gain(&c, (n + 1) % n_beams, mid, 1.0).unwrap().norm();
                assert!(opposite > single.max(partner));
                let exact = 2.0 / (n_beams as f64 * (PI / (2 * n_beams) as f64).tan());
                assert!((opposite - exact).abs() < 1e-9);
                // equal signs leave only the residual 2 sin(π/2N) factor
                let residual = 2.0 * single * (PI / (2 * n_beams) as f64).sin();
                assert!((same - residual).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn combined_gain_errors() {
        let c = cfg(16);
        let zero = SelectionVector::zeros(16);
        assert!(combined_gain(&c, &zero, BeamspaceAngle::new(0.0), 1.0).is_err());
        let short = SelectionVector::zeros(8);
        assert!(combined_gain(&c, &short, BeamspaceAngle::new(0.0), 1.0).is_err());
    }

    #[test]
    fn one_hot_reduces_to_beam_gain() {
        let c = cfg(16);
        let sel = SelectionVector::one_hot(16, 6).unwrap();
        for k in 0..64 {
            let u = BeamspaceAngle::new(0.1 * k as f64);
            assert_eq!(combined_gain(&c, &sel, u, 0.95).unwrap(), beam_gain(&c, 6, u, 0.95).unwrap());
        }
    }

    #[test]
    fn ripple_of_single_beam_half_power_region() {
        let c = cfg(16);
        let d = c.beam_spacing();
        let p = 5.0 * d;
        // ±(1 + 0.44) beam spacings keeps the ±0.44 spacing half-power core after the margin
        let t = AngularInterval::new(p - 1.44 * d, p + 1.44 * d).unwrap();
        let sel = SelectionVector::one_hot(16, 5).unwrap();
        let (lo, hi) = mainlobe_ripple(&c, &sel, &t).unwrap();
        assert!(hi - lo <= 3.0 + 1e-9 && hi <= 1e-12);
    }

    #[test]
    fn ripple_of_two_lobe_selection() {
        let c = cfg(16);
        let targets = two_lobe_targets(&c);
        let sel = synthesize_mainlobes(&c, &targets).unwrap();
        let (lo, hi) = mainlobe_ripple(&c, &sel, &targets[0]).unwrap();
        // frozen from dense evaluation of the explicit DFT sum (see oracle test below)
        assert!((lo - (-1.1944)).abs() < 2e-3, "{lo}");
        assert!((hi - 1.3432).abs() < 2e-3, "{hi}");
        let alone = SelectionVector::alternating(16, 1..=4).unwrap();
        let (alo, ahi) = mainlobe_ripple(&c, &alone, &targets[0]).unwrap();
        assert!((alo - (-1.3396)).abs() < 2e-3, "{alo}");
        assert!((ahi - 1.4379).abs() < 2e-3, "{ahi}");
        assert!(mainlobe_ripple(&c, &sel, &AngularInterval::around_beams(&c, 3, 4, 0.4).unwrap()).is_err());
    }

    #[test]
    fn ripple_matches_explicit_sum_oracle() {
        use crate::array::{dft_weight, steering_vector};
        let c = cfg(16);
        let targets = two_lobe_targets(&c);
        let sel = synthesize_mainlobes(&c, &targets).unwrap();
        let d = c.beam_spacing();
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for i in 0..=2000 {
            let u = BeamspaceAngle::new(1.5 * d + 2.0 * d * i as f64 / 2000.0);
            let a = steering_vector(&c, u, 1.0).unwrap();
            let g: Complex64 = sel
                .selected()
                .map(|n| {
                    let row: Complex64 = (0..16).map(|m| dft_weight(&c, n, m).unwrap() * a[m]).sum();
                    row * sel.weights()[n] as f64 / 16.0
                })
                .sum();
            let db = 20.0 * g.norm().log10();
            lo = lo.min(db);
            hi = hi.max(db);
        }
        let (rlo, rhi) = mainlobe_ripple(&c, &sel, &targets[0]).unwrap();
        assert!((rlo - lo).abs() < 2e-3 && (rhi - hi).abs() < 2e-3);
    }

    #[test]
    fn two_lobe_sidelobes_stay_low() {
        let c = cfg(16);
        let targets = two_lobe_targets(&c);
        let sel = synthesize_mainlobes(&c, &targets).unwrap();
        let d = c.beam_spacing();
        for k in 0..4096 {
            let u = BeamspaceAngle::new(TAU * k as f64 / 4096.0);
            let far = targets.iter().all(|t| {
                let outside_by = ((t.lo() - u.positive()).rem_euclid(TAU)).min((u.positive() - t.hi()).rem_euclid(TAU));
                !t.contains(u) && outside_by >= d - 1e-12
            });
            if far {
                let g = combined_gain(&c, &sel, u, 1.0).unwrap().norm();
                assert!(20.0 * g.log10() <= -10.0, "u={u} g={g}");
            }
        }
    }

    #[test]
    fn text_form_parses() {
        let s: SelectionVector = "0,+1,-1,0".parse().unwrap();
        assert_eq!(s.weights(), &[0, 1, -1, 0]);
        assert!("0,2".parse::<SelectionVector>().is_err());
        assert!("0,x".parse::<SelectionVector>().is_err());
        assert!(SelectionVector::new(vec![0, 3], Normalization::Unit).is_err());
    }

    #[test]
    fn alternating_runs_wrap() {
        let s = SelectionVector::alternating(8, [6, 7, 0, 1, 3]).unwrap();
        assert_eq!(s.weights(), &[1, -1, 0, 1, 0, 0, 1, -1]);
    }

    proptest! {
        #[test]
        fn text_form_round_trips(w in proptest::collection::vec(-1i8..=1, 2..40)) {
            let s = SelectionVector::new(w, Normalization::Unit).unwrap();
            let back: SelectionVector = s.to_string().parse().unwrap();
            prop_assert_eq!(back, s);
        }

        #[test]
        fn even_split_is_pure_scaling(
            w in proptest::collection::vec(-1i8..=1, 16),
            u in -PI..PI,
            f in 0.5f64..=1.0,
        ) {
            let c = cfg(16);
            let unit = SelectionVector::new(w, Normalization::Unit).unwrap();
            prop_assume!(unit.nonzero_count() > 0);
            let split = unit.clone().with_normalization(Normalization::EvenPowerSplit);
            let k = unit.nonzero_count() as f64;
            let gu = combined_gain(&c, &unit, BeamspaceAngle::new(u), f).unwrap();
            let gs = combined_gain(&c, &split, BeamspaceAngle::new(u), f).unwrap();
            prop_assert!((gs - gu / k.sqrt()).norm() < 1e-12);
        }
    }
}
