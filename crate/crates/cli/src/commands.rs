//! One function per subcommand: read parameters, run, write CSV.

use std::f64::consts::{PI, TAU};
use std::path::{Path, PathBuf};

use mbaa_core::aoa::{noise_std, region_beams, search_budget, unit_cn};
use mbaa_core::jcas::apg_at_pointing;
use mbaa_core::rng::trial_rng;
use mbaa_core::squint::{label_runs, profile_from_map};
use mbaa_core::{
    analog_power_delta, average_power_gain, beam_gain, ber_sweep, build_ratio_model, count_crossings, enumerate_subsets,
    mainlobe_features, mainlobe_ripple, mbaa_power_mw, multisection_search, phase_shifter_power_mw, rmse_sweep,
    sample_pattern, secrecy_map, select_codebook_with_guard, synthesize_mainlobes, tradeoff_curves, type1_schedule,
    type2_schedule, uniform_angle_grid, AngularInterval, ArrayConfig, BeamspaceAngle, BhChannel, CollisionPolicy,
    JcasConfig, Path as ScenePath, PathSet, PowerParams, Scheme, SelectionVector, SquintScenario,
};
use num_complex::Complex64;
use rand::Rng;

use crate::output::{companion, db10, db20, fmt_g, Csv};
use crate::params::{ParamError, ParamResult, Params};
use crate::CliError;

pub struct Context {
    pub name: &'static str,
    pub seed: u64,
    pub out: PathBuf,
}

impl Context {
    fn csv(&self, path: &Path, params: &Params) -> Result<Csv, CliError> {
        Csv::create(path, &format!("mbaa {}", self.name), params.resolved())
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
    }
}

type Written = Result<Vec<PathBuf>, CliError>;

fn default_sweep() -> Vec<f64> {
    (0..=30).step_by(5).map(f64::from).collect()
}

fn parse_scheme(text: &str) -> ParamResult<Scheme> {
    match text {
        "type1" => Ok(Scheme::Type1),
        "type2" => Ok(Scheme::Type2),
        _ => Err(ParamError(format!("scheme must be type1 or type2, got '{text}'"))),
    }
}

fn parse_collision(text: &str) -> ParamResult<CollisionPolicy> {
    match text {
        "substitute-next" => Ok(CollisionPolicy::SubstituteNext),
        "skip-comm" => Ok(CollisionPolicy::SkipComm),
        _ => Err(ParamError(format!("collision must be substitute-next or skip-comm, got '{text}'"))),
    }
}

/// `a-b` beam ranges separated by commas; a bare `a` is a single beam.
fn parse_ranges(text: &str) -> ParamResult<Vec<(usize, usize)>> {
    text.split(',')
        .map(|part| {
            let part = part.trim();
            let bad = || ParamError(format!("invalid beam range '{part}'"));
            match part.split_once('-') {
                Some((a, b)) => Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?)),
                None => {
                    let a = part.parse().map_err(|_| bad())?;
                    Ok((a, a))
                }
            }
        })
        .collect()
}

fn parse_usize_list(key: &str, text: &str) -> ParamResult<Vec<usize>> {
    text.split(',')
        .map(|s| s.trim().parse().map_err(|_| ParamError(format!("invalid index '{s}' in {key}"))))
        .collect()
}

/// `position:amplitude:phase` triples separated by `;`, position in beam
/// spacings, phase in radians.
fn parse_paths(text: &str, config: &ArrayConfig) -> ParamResult<Vec<ScenePath>> {
    text.split(';')
        .map(|item| {
            let bad = || ParamError(format!("invalid path '{item}', expected position:amplitude:phase"));
            let fields: Vec<f64> = item
                .split(':')
                .map(|s| crate::params::parse_f64(s).ok_or_else(bad))
                .collect::<ParamResult<_>>()?;
            let [pos, amp, phase] = fields[..] else { return Err(bad()) };
            Ok(ScenePath {
                u: BeamspaceAngle::new(pos * config.beam_spacing()),
                amplitude: Complex64::from_polar(amp, phase),
            })
        })
        .collect()
}

pub fn pattern(ctx: &Context, p: &mut Params) -> Written {
    let n = p.get("n_beams", 16usize)?;
    let beam = p.get("beam", 0usize)?;
    let selection = p.get_str("selection", "");
    let f = p.get_f64("f_norm", 1.0)?;
    let points = p.get("angle_points", mbaa_core::DEFAULT_ANGLE_POINTS)?;
    p.finish()?;
    let config = ArrayConfig::new(n)?;
    let sel = if selection.is_empty() {
        SelectionVector::one_hot(n, beam)?
    } else {
        selection.parse::<SelectionVector>()?
    };
    if points < 8 {
        return Err(ParamError("angle_points must be at least 8".into()).into());
    }
    let grid = uniform_angle_grid(-PI, points);
    let gains = sample_pattern(&config, &sel.complex_weights(), &grid, &[f])?;
    let mut csv = ctx.csv(&ctx.out, p)?;
    csv.comment(&format!("selection_vector={sel}"))?;
    if let Ok(feat) = mainlobe_features(&grid, &gains.angle_slice(0)) {
        csv.comment(&format!("first_null_width={}", fmt_g(feat.first_null_width)))?;
        csv.comment(&format!("first_sidelobe_db={}", fmt_g(feat.first_sidelobe_db)))?;
    }
    csv.header(&["u", "amplitude", "gain_db", "phase"])?;
    for (i, &u) in grid.iter().enumerate() {
        let g = gains.value(i, 0);
        csv.row(&[u, g.norm(), db20(g.norm()), g.arg()])?;
    }
    Ok(vec![csv.finish()?])
}

pub fn synthesize(ctx: &Context, p: &mut Params) -> Written {
    let n = p.get("n_beams", 16usize)?;
    let targets = p.get_str("targets", "1-4,12-13");
    let margin = p.get_f64("margin", 0.5)?;
    let points = p.get("angle_points", mbaa_core::DEFAULT_ANGLE_POINTS)?;
    p.finish()?;
    let config = ArrayConfig::new(n)?;
    let ranges = parse_ranges(&targets)?;
    let intervals = ranges
        .iter()
        .map(|&(a, b)| AngularInterval::around_beams(&config, a, b, margin))
        .collect::<mbaa_core::Result<Vec<_>>>()?;
    let sel = synthesize_mainlobes(&config, &intervals)?;
    if points < 8 {
        return Err(ParamError("angle_points must be at least 8".into()).into());
    }
    let grid = uniform_angle_grid(-PI, points);
    let gains = sample_pattern(&config, &sel.complex_weights(), &grid, &[1.0])?;
    let mut csv = ctx.csv(&ctx.out, p)?;
    csv.comment(&format!("selection_vector={sel}"))?;
    for ((a, b), t) in ranges.iter().zip(&intervals) {
        let ripple = match mainlobe_ripple(&config, &sel, t) {
            Ok((lo, hi)) => format!("{}..{} dB", fmt_g(lo), fmt_g(hi)),
            Err(_) => "n/a (target narrower than two beam spacings)".into(),
        };
        csv.comment(&format!("ripple[{a}-{b}]={ripple}"))?;
    }
    csv.header(&["u", "amplitude", "gain_db"])?;
    for (i, &u) in grid.iter().enumerate() {
        let g = gains.value(i, 0).norm();
        csv.row(&[u, g, db20(g)])?;
    }
    Ok(vec![csv.finish()?])
}

pub fn aoa(ctx: &Context, p: &mut Params) -> Written {
    let n = p.get("n_beams", 16usize)?;
    let start = p.get("triplet_start", 3usize)?;
    let grid_size = p.get("grid_size", 4096usize)?;
    let trials = p.get("trials", 10_000usize)?;
    let snrs = p.get_f64_list("snr_db", &default_sweep())?;
    p.finish()?;
    let config = ArrayConfig::new(n)?;
    let model = build_ratio_model(&config, start, grid_size)?;
    let rows = rmse_sweep(&model, &config, &snrs, trials, ctx.seed)?;
    let mut csv = ctx.csv(&ctx.out, p)?;
    let [a, b, c] = model.beam_triplet();
    csv.comment(&format!("beam_triplet={a};{b};{c}"))?;
    csv.comment(&format!("interval_width={}", fmt_g(model.interval_width())))?;
    csv.header(&["snr_db", "trials", "rmse_rad", "bias_rad"])?;
    for r in rows {
        csv.row(&[r.snr_db, r.trials as f64, r.rmse_rad, r.bias_rad])?;
    }
    Ok(vec![csv.finish()?])
}

pub fn search(ctx: &Context, p: &mut Params) -> Written {
    let n = p.get("n_beams", 128usize)?;
    let branching = p.get("branching", 2usize)?;
    let trials = p.get("trials", 200usize)?;
    let snr = p.get_f64("snr_db", f64::INFINITY)?;
    let grid_size = p.get("grid_size", 4096usize)?;
    let region = p.get_str("region", "full");
    p.finish()?;
    let config = ArrayConfig::new(n)?;
    let sigma = noise_std(snr)?;
    let region = if region == "full" {
        AngularInterval::full_circle()
    } else {
        let ranges = parse_ranges(&region)?;
        let [(a, b)] = ranges[..] else {
            return Err(ParamError("region must be 'full' or one beam range a-b".into()).into());
        };
        AngularInterval::around_beams(&config, a, b, 0.5)?
    };
    let mut csv = ctx.csv(&ctx.out, p)?;
    let budget = search_budget(region_beams(&config, &region).len(), branching);
    csv.comment(&format!("measurement_budget={budget}"))?;
    csv.header(&["trial", "u_true", "beam", "exhaustive_beam", "pair_index", "u_hat", "abs_error", "measurements"])?;
    for t in 0..trials {
        let mut rng = trial_rng(ctx.seed, t as u64);
        let u = BeamspaceAngle::new(region.lo() + region.width() * rng.random::<f64>());
        let scene = PathSet::single(u, Complex64::from_polar(1.0, TAU * rng.random::<f64>()));
        let out = multisection_search(
            &config,
            |s| scene.response(&config, s) + unit_cn(&mut rng) * sigma,
            &region,
            branching,
            grid_size,
        )?;
        let exhaustive = (0..n)
            .map(|b| (b, beam_gain(&config, b, u, 1.0).map(|g| g.norm())))
            .try_fold((0usize, f64::NEG_INFINITY), |best, (b, g)| {
                let g = g?;
                Ok::<_, mbaa_core::Error>(if g > best.1 { (b, g) } else { best })
            })?
            .0;
        csv.row(&[
            t as f64,
            u.radians(),
            out.beam as f64,
            exhaustive as f64,
            out.pair_index as f64,
            out.estimate.radians(),
            out.estimate.distance(u),
            out.measurements as f64,
        ])?;
    }
    Ok(vec![csv.finish()?])
}

pub fn squint(ctx: &Context, p: &mut Params) -> Written {
    let n = p.get("n_beams", 128usize)?;
    let first = p.get("first_beam", 64usize)?;
    let last = p.get("last_beam", 115usize)?;
    let rho = p.get_f64("rho", 0.9)?;
    let f_points = p.get("f_points", mbaa_core::DEFAULT_FREQUENCY_POINTS)?;
    let points = p.get("angle_points", mbaa_core::DEFAULT_ANGLE_POINTS)?;
    let high = p.get_f64("high_db", -6.0)?;
    let low = p.get_f64("low_db", -12.0)?;
    p.finish()?;
    let mut scenario = SquintScenario::new(n, first, last, rho)?;
    scenario.band = mbaa_core::FrequencyBand::new(rho, f_points)?;
    if points < 8 {
        return Err(ParamError("angle_points must be at least 8".into()).into());
    }
    scenario.u_grid = uniform_angle_grid(0.0, points);
    scenario.thresholds = mbaa_core::RegionThresholds { high_db: high, low_db: low };
    let map = scenario.gain_map()?;
    let classes = scenario.classify_map(&map)?;

    let mut csv = ctx.csv(&ctx.out, p)?;
    csv.comment(&format!("peak_amplitude={}", fmt_g(map.peak_magnitude())))?;
    let mut header = vec!["u".to_string()];
    header.extend(map.f_grid().iter().map(|f| fmt_g(*f)));
    csv.row_str(&header)?;
    for (i, &u) in map.u_grid().iter().enumerate() {
        let mut row = vec![u];
        row.extend(profile_from_map(&map, i)?.gains());
        csv.row(&row)?;
    }
    let map_path = csv.finish()?;

    let mut regions = ctx.csv(&companion(&ctx.out, "regions"), p)?;
    let labels: Vec<_> = classes.iter().map(|c| c.label).collect();
    for (label, a, b) in label_runs(&labels) {
        regions.comment(&format!(
            "run {label}: u={}..{}",
            fmt_g(map.u_grid()[a]),
            fmt_g(map.u_grid()[b])
        ))?;
    }
    regions.header(&["u", "region", "flagged"])?;
    for (&u, c) in map.u_grid().iter().zip(&classes) {
        regions.row_str(&[fmt_g(u), c.label.to_string(), u8::from(c.flagged).to_string()])?;
    }
    Ok(vec![map_path, regions.finish()?])
}

struct JcasParams {
    base: JcasConfig,
}

/// Shared JCAS parameters. With `x_default = None` the sensing count and
/// the type-1 start are left to the caller's sweep; with
/// `scheme_default = None` the caller runs both schemes.
fn jcas_params(
    ctx: &Context,
    p: &mut Params,
    x_default: Option<usize>,
    t_default: usize,
    scheme_default: Option<&str>,
) -> Result<JcasParams, CliError> {
    let n = p.get("n_beams", 16usize)?;
    let comm = p.get("comm_beam", 0usize)?;
    let x = match x_default {
        Some(x) => p.get("x_sensing", x)?,
        None => 1,
    };
    let t = p.get("time_units", t_default)?;
    let scheme = match scheme_default {
        Some(d) => parse_scheme(&p.get_str("scheme", d))?,
        None => Scheme::Type1,
    };
    let collision = parse_collision(&p.get_str("collision", "substitute-next"))?;
    let mut base = JcasConfig::new(n, comm, x, scheme, t, ctx.seed)?.with_collision(collision);
    if x_default.is_some() {
        let start = p.get("type1_start", n.saturating_sub(x))?;
        base = base.with_type1_start(start)?;
    }
    Ok(JcasParams { base })
}

pub fn jcas_apg(ctx: &Context, p: &mut Params) -> Written {
    let points = p.get("angle_points", mbaa_core::DEFAULT_ANGLE_POINTS)?;
    let JcasParams { base } = jcas_params(ctx, p, Some(4), 1000, None)?;
    p.finish()?;
    let grid = uniform_angle_grid(-PI, points);
    let mut written = Vec::new();
    for (suffix, schedule) in [("type1", type1_schedule(&base)?), ("type2", type2_schedule(&base)?)] {
        let apg = average_power_gain(&schedule, &grid)?;
        let mut csv = ctx.csv(&companion(&ctx.out, suffix), p)?;
        let pointing: Vec<String> = (0..base.n_beams).map(|m| fmt_g(apg_at_pointing(&schedule, m))).collect();
        csv.comment(&format!("apg_at_pointings={}", pointing.join(";")))?;
        csv.header(&["u", "apg", "apg_db"])?;
        for (&u, &g) in apg.u_grid.iter().zip(&apg.apg) {
            csv.row(&[u, g, db10(g)])?;
        }
        written.push(csv.finish()?);
    }
    Ok(written)
}

pub fn jcas_tradeoff(ctx: &Context, p: &mut Params) -> Written {
    let x_min = p.get("x_min", 2usize)?;
    let JcasParams { base } = jcas_params(ctx, p, None, 1000, Some("type1"))?;
    let x_max = p.get("x_max", base.n_beams - 1)?;
    let probe = p.get_f64("probe_u", PI)?;
    p.finish()?;
    if x_min == 0 || x_min > x_max {
        return Err(ParamError(format!("need 1 <= x_min <= x_max, got {x_min}..{x_max}")).into());
    }
    let xs: Vec<usize> = (x_min..=x_max).collect();
    let rows = tradeoff_curves(&base, &xs, BeamspaceAngle::new(probe))?;
    let mut csv = ctx.csv(&ctx.out, p)?;
    csv.comment(&format!("crossings={}", count_crossings(&rows, 1e-12)))?;
    csv.header(&["x", "comm_power", "sensing_apg", "comm_db", "sensing_db"])?;
    for r in rows {
        csv.row(&[r.n_sensing as f64, r.comm_power, r.sensing_apg, db10(r.comm_power), db10(r.sensing_apg)])?;
    }
    Ok(vec![csv.finish()?])
}

pub fn jcas_secrecy(ctx: &Context, p: &mut Params) -> Written {
    let points = p.get("angle_points", 256usize)?;
    let JcasParams { base } = jcas_params(ctx, p, Some(4), 50, Some("type2"))?;
    p.finish()?;
    let grid = uniform_angle_grid(-PI, points);
    let schedule = match base.scheme {
        Scheme::Type1 => type1_schedule(&base)?,
        Scheme::Type2 => type2_schedule(&base)?,
    };
    let map = secrecy_map(&schedule, &grid)?;
    let mut header = vec!["t".to_string()];
    header.extend(grid.iter().map(|u| fmt_g(*u)));

    let mut amp = ctx.csv(&ctx.out, p)?;
    let mut phase = ctx.csv(&companion(&ctx.out, "phase"), p)?;
    amp.row_str(&header)?;
    phase.row_str(&header)?;
    for t in 0..map.time_units {
        let mut a = vec![t as f64];
        let mut ph = vec![t as f64];
        for i in 0..grid.len() {
            let g = map.value(t, i);
            a.push(g.norm());
            ph.push(g.arg());
        }
        amp.row(&a)?;
        phase.row(&ph)?;
    }
    let mut stats = ctx.csv(&companion(&ctx.out, "stats"), p)?;
    stats.header(&["u", "amplitude_mean", "amplitude_std", "phase_mean", "phase_std"])?;
    for (i, &u) in grid.iter().enumerate() {
        let s = map.stats(i);
        stats.row(&[u, s.amplitude_mean, s.amplitude_std, s.phase_mean, s.phase_std])?;
    }
    Ok(vec![amp.finish()?, phase.finish()?, stats.finish()?])
}

pub fn bh(ctx: &Context, p: &mut Params) -> Written {
    let n = p.get("n_beams", 16usize)?;
    let beams = p.get_str("beams", "2,6,11");
    let paths = p.get_str("paths", "2:1:0;6:0.8:1;11:0.6:-2");
    let bits = p.get("bits", 2u32)?;
    let symbols = p.get("symbols", 10_000usize)?;
    let guard = p.get_f64("guard", mbaa_core::index_modulation::DEFAULT_GUARD_FRACTION)?;
    let snrs = p.get_f64_list("snr_db", &default_sweep())?;
    p.finish()?;
    let config = ArrayConfig::new(n)?;
    let beams = parse_usize_list("beams", &beams)?;
    let paths = parse_paths(&paths, &config)?;
    let channel = BhChannel::from_paths(&config, &beams, &paths)?;
    let subsets = enumerate_subsets(channel.beams())?;
    let codebook = select_codebook_with_guard(&subsets, &channel, bits, guard)?;
    let rows = ber_sweep(&codebook, &snrs, symbols, ctx.seed)?;
    let mut csv = ctx.csv(&ctx.out, p)?;
    csv.comment(&format!("subsets={}", subsets.len()))?;
    for (w, (s, pt)) in codebook.subsets().iter().zip(codebook.points()).enumerate() {
        let members: Vec<String> = s.iter().map(|b| b.to_string()).collect();
        csv.comment(&format!(
            "codeword {w}: beams={} point={}{}{}j",
            members.join(";"),
            fmt_g(pt.re),
            if pt.im < 0.0 { "" } else { "+" },
            fmt_g(pt.im)
        ))?;
    }
    csv.header(&["snr_db", "symbols", "bit_errors", "ber"])?;
    for r in rows {
        csv.row(&[r.snr_db, r.symbols as f64, r.bit_errors as f64, r.ber])?;
    }
    Ok(vec![csv.finish()?])
}

pub fn power(ctx: &Context, p: &mut Params) -> Written {
    let d = PowerParams::default();
    let params = PowerParams {
        n_antennas: p.get("n_antennas", d.n_antennas)?,
        n_rf_chains: p.get("n_rf_chains", d.n_rf_chains)?,
        p_multibit_ps_mw: p.get_f64("p_multibit_ps_mw", d.p_multibit_ps_mw)?,
        p_1bit_ps_mw: p.get_f64("p_1bit_ps_mw", d.p_1bit_ps_mw)?,
        p_switch_mw: p.get_f64("p_switch_mw", d.p_switch_mw)?,
    };
    p.finish()?;
    let mbaa = mbaa_power_mw(&params)?;
    let ps = phase_shifter_power_mw(&params)?;
    let delta = analog_power_delta(&params)?;
    let mut csv = ctx.csv(&ctx.out, p)?;
    csv.header(&["architecture", "power_mw"])?;
    csv.row_str(&["selection_network".into(), fmt_g(mbaa)])?;
    csv.row_str(&["phase_shifter_array".into(), fmt_g(ps)])?;
    csv.row_str(&["delta".into(), fmt_g(delta)])?;
    println!("selection network:   {} mW", fmt_g(mbaa));
    println!("phase-shifter array: {} mW", fmt_g(ps));
    println!("analog power delta:  {} mW", fmt_g(delta));
    Ok(vec![csv.finish()?])
}
