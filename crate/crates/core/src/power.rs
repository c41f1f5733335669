//! Analog beamforming power of a 1-bit-phase-shifter selection network
//! versus a fully connected multi-bit phase-shifter array.

use crate::error::{invalid, Result};

/// Device powers in milliwatts; one selection path per (antenna, RF chain).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PowerParams {
    pub n_antennas: usize,
    pub n_rf_chains: usize,
    pub p_multibit_ps_mw: f64,
    pub p_1bit_ps_mw: f64,
    pub p_switch_mw: f64,
}

impl Default for PowerParams {
    fn default() -> Self {
        PowerParams { n_antennas: 64, n_rf_chains: 8, p_multibit_ps_mw: 30.0, p_1bit_ps_mw: 5.0, p_switch_mw: 5.0 }
    }
}

impl PowerParams {
    pub fn validate(&self) -> Result<()> {
        if self.n_antennas == 0 || self.n_rf_chains == 0 {
            return Err(invalid("antenna and RF chain counts must be at least 1"));
        }
        for (name, p) in [
            ("multi-bit phase shifter", self.p_multibit_ps_mw),
            ("1-bit phase shifter", self.p_1bit_ps_mw),
            ("switch", self.p_switch_mw),
        ] {
            if !(p >= 0.0 && p.is_finite()) {
                return Err(invalid(format!("{name} power must be finite and non-negative, got {p}")));
            }
        }
        Ok(())
    }

    fn paths(&self) -> f64 {
        self.n_antennas as f64 * self.n_rf_chains as f64
    }
}

/// Total for the selection-network array: `N·M·(p_1bit + p_switch)`.
pub fn mbaa_power_mw(params: &PowerParams) -> Result<f64> {
    params.validate()?;
    Ok(params.paths() * (params.p_1bit_ps_mw + params.p_switch_mw))
}

/// Total for the phase-shifter array: `N·M·p_multibit`.
pub fn phase_shifter_power_mw(params: &PowerParams) -> Result<f64> {
    params.validate()?;
    Ok(params.paths() * params.p_multibit_ps_mw)
}

/// Extra power of the phase-shifter array; negative when the selection
/// network is the costlier one.
pub fn analog_power_delta(params: &PowerParams) -> Result<f64> {
    params.validate()?;
    Ok(params.paths() * (params.p_multibit_ps_mw - params.p_1bit_ps_mw - params.p_switch_mw))
}
