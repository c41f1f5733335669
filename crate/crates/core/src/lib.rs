//! Simulation library for analog multi-beam antenna arrays: beam synthesis,
//! angle-of-arrival estimation, beam squint, joint communication and sensing,
//! beam-hopping index modulation and a hardware power model.

// `!(x > 0.0)` style checks are kept on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod angle;
pub mod aoa;
pub mod array;
pub mod error;
pub mod index_modulation;
pub mod jcas;
pub mod pattern;
pub mod power;
pub mod rng;
pub mod squint;
pub mod synthesis;

/// Default number of angle samples over one turn of beamspace.
pub const DEFAULT_ANGLE_POINTS: usize = 4096;
/// Default number of frequency samples across a band.
pub const DEFAULT_FREQUENCY_POINTS: usize = 64;

pub use angle::{circular_diff, physical_to_beamspace, wrap_pi, wrap_positive, BeamspaceAngle};
pub use aoa::{
    build_ratio_model, estimate_aoa, estimate_from_samples, multisection_search, rmse_sweep, simulate_snapshot,
    simulate_snapshot_with_rng, Observation, Path, PathSet, RatioModel, RmseRow, SearchOutcome,
};
pub use array::{
    beam_gain, beam_pointing, default_angle_grid, dft_weight, dirichlet, sample_pattern, steering_vector,
    uniform_angle_grid, ArrayConfig, DftSign, GainGrid, GainReference,
};
pub use error::{Error, Result};
pub use pattern::{mainlobe_features, MainlobeFeatures};
pub use synthesis::{
    base2_beam, base2_pointing, combined_gain, mainlobe_ripple, synthesize_mainlobes, AngularInterval, Normalization,
    SelectionVector,
};
pub use squint::{
    classify_region, frequency_profile, label_runs, match_beam_by_profile, shifted_beam_index,
    squint_compensated_selection, wideband_gain_map, Classification, FrequencyBand, FrequencyProfile, RegionLabel,
    RegionThresholds, SquintScenario,
};
pub use jcas::{
    apg_at_pointing, average_power_gain, build_schedule, count_crossings, secrecy_map, series_stats, tradeoff_curves,
    type1_schedule, type2_schedule, AngleStats, ApgCurve, CollisionPolicy, JcasConfig, JcasSchedule, Scheme, SecrecyMap,
    TradeoffRow,
};
pub use index_modulation::{
    ber_sweep, demodulate, enumerate_subsets, modulate, select_codebook, select_codebook_with_guard, BerRow, BhChannel,
    BhCodebook,
};
pub use power::{analog_power_delta, mbaa_power_mw, phase_shifter_power_mw, PowerParams};
