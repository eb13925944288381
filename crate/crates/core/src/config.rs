use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Physical constants of the E5 composite signal and the sampling grid.
///
/// The subcarrier runs at exactly 1.5x the chip rate, which makes one chip
/// span twelve subcarrier slots (each slot is an eighth of a subcarrier
/// period). All generators key off this structure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignalConfig {
    /// RF carrier, kept for bookkeeping only; synthesis is complex baseband/IF.
    pub carrier_hz: f64,
    /// Subcarrier frequency f_sc.
    pub subcarrier_hz: f64,
    /// Spreading-code chip rate f_p.
    pub chip_rate_hz: f64,
    /// Complex sample rate of generated buffers.
    pub sample_rate_hz: f64,
    /// Intermediate frequency applied after baseband synthesis.
    pub if_hz: f64,
    /// Primary spreading-code length in chips (one code period).
    pub primary_code_length: usize,
    /// Linear amplitude scale of the composite signal.
    pub amplitude: f64,
    /// Navigation symbol period on the data channels.
    pub data_symbol_period_s: f64,
}

impl SignalConfig {
    /// Full-scale E5 constants: 10.23 Mchip/s, 15.345 MHz subcarrier,
    /// 10230-chip codes, 20 ms data symbols, 60 Msps complex sampling.
    pub fn galileo_e5() -> Self {
        SignalConfig {
            carrier_hz: 1_191.795e6,
            subcarrier_hz: 15.345e6,
            chip_rate_hz: 10.23e6,
            sample_rate_hz: 60.0e6,
            if_hz: 0.0,
            primary_code_length: 10_230,
            amplitude: 1.0,
            data_symbol_period_s: 20e-3,
        }
    }

    /// Desk-scale configuration with the same 1.5 subcarrier/chip ratio but
    /// a tenth of the rates and 1023-chip codes. One code period is still
    /// 1 ms, so acquisition and tracking epochs carry over unchanged.
    pub fn synthetic_desk() -> Self {
        SignalConfig {
            carrier_hz: 1_191.795e6,
            subcarrier_hz: 1.5345e6,
            chip_rate_hz: 1.023e6,
            sample_rate_hz: 12.276e6,
            if_hz: 0.0,
            primary_code_length: 1_023,
            amplitude: 1.0,
            data_symbol_period_s: 20e-3,
        }
    }

    /// Subcarrier period in seconds.
    pub fn subcarrier_period_s(&self) -> f64 {
        1.0 / self.subcarrier_hz
    }

    /// Duration of one primary code period in seconds.
    pub fn code_period_s(&self) -> f64 {
        self.primary_code_length as f64 / self.chip_rate_hz
    }

    /// Samples spanning one code period (need not be an integer).
    pub fn samples_per_code(&self) -> f64 {
        self.code_period_s() * self.sample_rate_hz
    }

    pub fn samples_per_chip(&self) -> f64 {
        self.sample_rate_hz / self.chip_rate_hz
    }

    /// Check the structural invariants. `min_rate_factor` is the multiple of
    /// (f_sc + f_p) the sample rate must exceed; 2.0 suffices for the
    /// sideband-approximated model, the exact model wants more headroom.
    pub fn validate(&self) -> Result<()> {
        let ratio = self.subcarrier_hz / self.chip_rate_hz;
        if (ratio - 1.5).abs() > 1e-9 {
            return Err(Error::Config(format!(
                "subcarrier/chip-rate ratio must be 1.5, got {ratio}"
            )));
        }
        if self.sample_rate_hz <= 2.0 * (self.subcarrier_hz + self.chip_rate_hz) {
            return Err(Error::Config(format!(
                "sample rate {} does not exceed twice (f_sc + f_p) = {}",
                self.sample_rate_hz,
                2.0 * (self.subcarrier_hz + self.chip_rate_hz)
            )));
        }
        if self.primary_code_length == 0 {
            return Err(Error::Config("primary code length is zero".into()));
        }
        if self.amplitude <= 0.0 || !self.amplitude.is_finite() {
            return Err(Error::Config(format!("amplitude {} invalid", self.amplitude)));
        }
        if self.data_symbol_period_s <= 0.0 {
            return Err(Error::Config("data symbol period must be positive".into()));
        }
        let spp = self.data_symbol_period_s / self.code_period_s();
        if (spp - spp.round()).abs() > 1e-6 {
            return Err(Error::Config(format!(
                "data symbol period must be an integer number of code periods, got {spp} periods"
            )));
        }
        Ok(())
    }

    /// Code periods per navigation symbol.
    pub fn code_periods_per_symbol(&self) -> usize {
        (self.data_symbol_period_s / self.code_period_s()).round() as usize
    }
}

impl Default for SignalConfig {
    fn default() -> Self {
        SignalConfig::galileo_e5()
    }
}
