//! Beam-hopping index modulation: information bits select which subset of
//! the path-covering beams carries each symbol.

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use crate::angle::BeamspaceAngle;
use crate::aoa::{noise_std, unit_cn, Path};
use crate::array::{beam_gain, ArrayConfig};
use crate::error::{invalid, Error, Result};
use crate::rng::trial_rng;

/// Largest beam set accepted by [`enumerate_subsets`].
pub const MAX_BH_BEAMS: usize = 12;

/// All non-empty subsets of `beams`, ordered by size and then
/// lexicographically by position in `beams`.
pub fn enumerate_subsets(beams: &[usize]) -> Result<Vec<Vec<usize>>> {
    if beams.is_empty() || beams.len() > MAX_BH_BEAMS {
        return Err(invalid(format!("need 1..={MAX_BH_BEAMS} beams, got {}", beams.len())));
    }
    let mut sorted = beams.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(invalid("beam list contains duplicates"));
    }
    let n = beams.len();
    let mut out = Vec::with_capacity((1 << n) - 1);
    for size in 1..=n {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            out.push(idx.iter().map(|&i| beams[i]).collect());
            // next size-combination of 0..n in lexicographic order
            let Some(pos) = (0..size).rev().find(|&p| idx[p] < n - size + p) else {
                break;
            };
            idx[pos] += 1;
            for p in pos + 1..size {
                idx[p] = idx[p - 1] + 1;
            }
        }
    }
    Ok(out)
}

/// Effective complex gain from each available transmit beam to the receiver.
#[derive(Clone, Debug, PartialEq)]
pub struct BhChannel {
    beams: Vec<usize>,
    gains: Vec<Complex64>,
}

impl BhChannel {
    pub fn new(beams: Vec<usize>, gains: Vec<Complex64>) -> Result<Self> {
        if beams.len() != gains.len() {
            return Err(Error::DimensionMismatch { expected: beams.len(), actual: gains.len() });
        }
        if beams.is_empty() {
            return Err(invalid("channel has no beams"));
        }
        if gains.iter().any(|g| !(g.re.is_finite() && g.im.is_finite())) {
            return Err(invalid("channel gains must be finite"));
        }
        Ok(BhChannel { beams, gains })
    }

    /// Gain of each beam summed over the multipath components.
    pub fn from_paths(config: &ArrayConfig, beams: &[usize], paths: &[Path]) -> Result<Self> {
        let gains = beams
            .iter()
            .map(|&b| paths.iter().map(|p| Ok(beam_gain(config, b, p.u, 1.0)? * p.amplitude)).sum::<Result<Complex64>>())
            .collect::<Result<Vec<_>>>()?;
        BhChannel::new(beams.to_vec(), gains)
    }

    /// Sixteen beams, three paths sitting on the pointings of beams 2, 6
    /// and 11, each covered by its own beam.
    pub fn example() -> Self {
        let config = ArrayConfig::new(16).expect("valid size");
        let spacing = config.beam_spacing();
        let paths = [
            Path { u: BeamspaceAngle::new(2.0 * spacing), amplitude: Complex64::from_polar(1.0, 0.0) },
            Path { u: BeamspaceAngle::new(6.0 * spacing), amplitude: Complex64::from_polar(0.8, 1.0) },
            Path { u: BeamspaceAngle::new(11.0 * spacing), amplitude: Complex64::from_polar(0.6, -2.0) },
        ];
        BhChannel::from_paths(&config, &[2, 6, 11], &paths).expect("valid example channel")
    }

    pub fn beams(&self) -> &[usize] {
        &self.beams
    }

    pub fn gains(&self) -> &[Complex64] {
        &self.gains
    }

    pub fn gain_of(&self, beam: usize) -> Option<Complex64> {
        self.beams.iter().position(|&b| b == beam).map(|i| self.gains[i])
    }

    /// Noiseless received sample for `subset` under even power split.
    pub fn expected(&self, subset: &[usize]) -> Result<Complex64> {
        if subset.is_empty() {
            return Err(invalid("subset is empty"));
        }
        let sum = subset
            .iter()
            .map(|&b| self.gain_of(b).ok_or_else(|| invalid(format!("beam {b} is not available in the channel"))))
            .sum::<Result<Complex64>>()?;
        Ok(sum / (subset.len() as f64).sqrt())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BhCodebook {
    available_beams: Vec<usize>,
    subsets: Vec<Vec<usize>>,
    points: Vec<Complex64>,
    bits_per_symbol: u32,
}

impl BhCodebook {
    pub fn available_beams(&self) -> &[usize] {
        &self.available_beams
    }

    /// Codeword `w` is `subsets()[w]`.
    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    /// Expected received sample of each codeword.
    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn bits_per_symbol(&self) -> u32 {
        self.bits_per_symbol
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    /// Smallest distance between two codeword points.
    pub fn min_distance(&self) -> f64 {
        let mut best = f64::INFINITY;
        for (i, a) in self.points.iter().enumerate() {
            for b in &self.points[i + 1..] {
                best = best.min((a - b).norm());
            }
        }
        best
    }
}

/// Default guard: a tenth of the strongest subset amplitude.
pub const DEFAULT_GUARD_FRACTION: f64 = 0.1;

pub fn select_codebook(subsets: &[Vec<usize>], channel: &BhChannel, bits: u32) -> Result<BhCodebook> {
    select_codebook_with_guard(subsets, channel, bits, DEFAULT_GUARD_FRACTION)
}

/// Pick `2^bits` subsets: rank by received power (ties keep input order),
/// greedily accept those at least `guard_fraction·max amplitude` away from
/// every accepted point, then top up in rank order if the guard leaves too
/// few. The codebook is ordered by rank.
pub fn select_codebook_with_guard(subsets: &[Vec<usize>], channel: &BhChannel, bits: u32, guard_fraction: f64) -> Result<BhCodebook> {
    if bits >= usize::BITS {
        return Err(invalid(format!("{bits} bits per symbol is too many")));
    }
    let size = 1usize << bits;
    if size > subsets.len() {
        return Err(invalid(format!("{size} codewords requested from {} subsets", subsets.len())));
    }
    if !(guard_fraction >= 0.0) {
        return Err(invalid("guard fraction must be non-negative"));
    }
    let points = subsets.iter().map(|s| channel.expected(s)).collect::<Result<Vec<_>>>()?;
    for (i, s) in subsets.iter().enumerate() {
        if subsets[..i].contains(s) {
            return Err(invalid(format!("subset {s:?} is listed twice")));
        }
    }
    let mut rank: Vec<usize> = (0..subsets.len()).collect();
    rank.sort_by(|&a, &b| points[b].norm_sqr().total_cmp(&points[a].norm_sqr()));
    let guard = guard_fraction * points.iter().map(|p| p.norm()).fold(0.0, f64::max);

    let mut chosen: Vec<usize> = Vec::with_capacity(size);
    for &i in &rank {
        if chosen.len() == size {
            break;
        }
        if chosen.iter().all(|&j| (points[i] - points[j]).norm() >= guard) {
            chosen.push(i);
        }
    }
    for &i in &rank {
        if chosen.len() == size {
            break;
        }
        if !chosen.contains(&i) {
            chosen.push(i);
        }
    }
    chosen.sort_by_key(|i| rank.iter().position(|r| r == i));
    Ok(BhCodebook {
        available_beams: channel.beams.clone(),
        subsets: chosen.iter().map(|&i| subsets[i].clone()).collect(),
        points: chosen.iter().map(|&i| points[i]).collect(),
        bits_per_symbol: bits,
    })
}

pub fn modulate(word: usize, codebook: &BhCodebook) -> Result<&[usize]> {
    codebook
        .subsets
        .get(word)
        .map(Vec::as_slice)
        .ok_or_else(|| invalid(format!("word {word} needs more than {} bits", codebook.bits_per_symbol)))
}

/// Maximum-likelihood (minimum distance) decision; ties go to the lower word.
pub fn demodulate(received: Complex64, codebook: &BhCodebook) -> usize {
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (w, p) in codebook.points.iter().enumerate() {
        let d = (received - p).norm_sqr();
        if d < best_d {
            best = w;
            best_d = d;
        }
    }
    best
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BerRow {
    pub snr_db: f64,
    pub symbols: usize,
    pub bit_errors: u64,
    pub ber: f64,
}

const BER_BLOCK: usize = 1024;

/// Monte Carlo bit error rate. Noise variance is `10^(−snr/10)`; words and
/// unit noise are drawn per block of symbols from `trial_rng(seed, block)`,
/// so every SNR point sees the same realisations.
pub fn ber_sweep(codebook: &BhCodebook, snrs_db: &[f64], symbols: usize, seed: u64) -> Result<Vec<BerRow>> {
    if codebook.bits_per_symbol == 0 {
        return Err(invalid("a one-word codebook carries no bits"));
    }
    if symbols == 0 {
        return Err(invalid("at least one symbol is required"));
    }
    let sigmas = snrs_db.iter().map(|&s| noise_std(s)).collect::<Result<Vec<_>>>()?;
    let blocks = symbols.div_ceil(BER_BLOCK);
    let errors: Vec<u64> = (0..blocks)
        .into_par_iter()
        .map(|blk| {
            let mut rng = trial_rng(seed, blk as u64);
            let count = BER_BLOCK.min(symbols - blk * BER_BLOCK);
            let mut errs = vec![0u64; sigmas.len()];
            for _ in 0..count {
                let word = rng.random_range(0..codebook.len());
                let w = unit_cn(&mut rng);
                for (e, &sigma) in errs.iter_mut().zip(&sigmas) {
                    let got = demodulate(codebook.points[word] + w * sigma, codebook);
                    *e += u64::from((got ^ word).count_ones());
                }
            }
            errs
        })
        .reduce(
            || vec![0u64; sigmas.len()],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    let bits = symbols as f64 * codebook.bits_per_symbol as f64;
    Ok(snrs_db
        .iter()
        .zip(errors)
        .map(|(&snr_db, bit_errors)| BerRow { snr_db, symbols, bit_errors, ber: bit_errors as f64 / bits })
        .collect())
}
