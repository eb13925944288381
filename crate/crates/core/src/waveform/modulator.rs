//! Composite modulators.
//!
//! `modulate_exact` renders the full four-term construction on the
//! four-valued subcarriers; its output is 8-PSK at every instant, so the
//! modulus is constant to rounding error. `modulate_approx` keeps only the
//! single components on pure quadrature subcarriers, the sideband model a
//! band-limited receiver sees.
//!
//! Phase bookkeeping: when every rate involved is an integral number of Hz
//! (all stock configurations are), chip and slot indices come from exact
//! integer arithmetic, so the cumulative code-phase error is zero no matter
//! how long the buffer runs. Non-integral rates fall back to f64 products.

use num_complex::Complex64;

use crate::config::SignalConfig;
use crate::error::{Error, Result};
use crate::exec;
use crate::iq::IqBuffer;
use crate::waveform::components::ComponentSet;
use crate::waveform::subcarrier::{SubcarrierTables, SLOTS_PER_PERIOD};

/// Maps sample index to (chip index, subcarrier slot, carrier phase cycles)
/// without cumulative drift.
#[derive(Debug, Clone)]
pub(crate) struct PhaseClock {
    fs_int: Option<u128>,
    rate_int: Option<u128>,
    fs: f64,
    rate: f64,
}

impl PhaseClock {
    pub(crate) fn new(sample_rate_hz: f64, event_rate_hz: f64) -> Self {
        let as_int = |x: f64| {
            let r = x.round();
            if (x - r).abs() < 1e-6 && r > 0.0 && r < 1e18 {
                Some(r as u128)
            } else {
                None
            }
        };
        let fs_int = as_int(sample_rate_hz);
        let rate_int = as_int(event_rate_hz);
        PhaseClock {
            fs_int: fs_int.filter(|_| rate_int.is_some()),
            rate_int: rate_int.filter(|_| fs_int.is_some()),
            fs: sample_rate_hz,
            rate: event_rate_hz,
        }
    }

    /// Whole events elapsed at sample n.
    pub(crate) fn index(&self, n: usize) -> u64 {
        match (self.fs_int, self.rate_int) {
            (Some(fs), Some(rate)) => ((n as u128 * rate) / fs) as u64,
            _ => (n as f64 * self.rate / self.fs).floor() as u64,
        }
    }

    /// Fractional cycle in [0, 1) at sample n.
    pub(crate) fn frac_cycle(&self, n: usize) -> f64 {
        match (self.fs_int, self.rate_int) {
            (Some(fs), Some(rate)) => {
                let rem = (n as u128 * rate) % fs;
                rem as f64 / fs as f64
            }
            _ => (n as f64 * self.rate / self.fs).fract(),
        }
    }

    /// Exact bookkeeping available?
    pub(crate) fn is_exact(&self) -> bool {
        self.fs_int.is_some()
    }
}

fn sample_count(cfg: &SignalConfig, duration_s: f64) -> Result<usize> {
    let slot_s = cfg.subcarrier_period_s() / SLOTS_PER_PERIOD as f64;
    let slots = duration_s / slot_s;
    if duration_s <= 0.0 || (slots - slots.round()).abs() > 1e-6 {
        return Err(Error::Argument(format!(
            "duration must be a positive multiple of one subcarrier slot ({slot_s:.3e} s), got {duration_s} s"
        )));
    }
    Ok((duration_s * cfg.sample_rate_hz).round() as usize)
}

fn check_components(comp: &ComponentSet, cfg: &SignalConfig, n_samples: usize) -> Result<()> {
    let chips_needed = ((n_samples as f64) * cfg.chip_rate_hz / cfg.sample_rate_hz).ceil() as usize;
    if comp.len() < chips_needed {
        return Err(Error::Shape(format!(
            "component set holds {} chips, buffer needs {}",
            comp.len(),
            chips_needed
        )));
    }
    Ok(())
}

/// Render the exact constant-envelope composite at complex baseband.
///
/// The quadrature pairing applies the amplitude split 1/(2 sqrt 2) to all
/// four terms; the constant-envelope invariant is what validates the
/// subcarrier tables and the product rule together.
pub fn modulate_exact(
    comp: &ComponentSet,
    tables: &SubcarrierTables,
    cfg: &SignalConfig,
    duration_s: f64,
) -> Result<IqBuffer> {
    cfg.validate()?;
    let n_samples = sample_count(cfg, duration_s)?;
    check_components(comp, cfg, n_samples)?;

    let slot_rate = cfg.subcarrier_hz * SLOTS_PER_PERIOD as f64;
    let chip_clock = PhaseClock::new(cfg.sample_rate_hz, cfg.chip_rate_hz);
    let slot_clock = PhaseClock::new(cfg.sample_rate_hz, slot_rate);
    let scale = cfg.amplitude / (2.0 * std::f64::consts::SQRT_2);

    let samples = exec::par_map_range(0..n_samples, |n| {
        let k = chip_clock.index(n) as usize;
        let slot = (slot_clock.index(n) as usize) % SLOTS_PER_PERIOD;
        let ss = tables.sc_s(slot);
        let ssd = tables.sc_s_delayed(slot);
        let sp = tables.sc_p(slot);
        let spd = tables.sc_p_delayed(slot);
        let ea = Complex64::new(comp.e_e5a_i[k] as f64, comp.e_e5a_q[k] as f64);
        let eb = Complex64::new(comp.e_e5b_i[k] as f64, comp.e_e5b_q[k] as f64);
        let pa = Complex64::new(comp.ebar_e5a_i[k] as f64, comp.ebar_e5a_q[k] as f64);
        let pb = Complex64::new(comp.ebar_e5b_i[k] as f64, comp.ebar_e5b_q[k] as f64);
        let sc_a = Complex64::new(ss, -ssd);
        let sc_b = Complex64::new(ss, ssd);
        let sc_pa = Complex64::new(sp, -spd);
        let sc_pb = Complex64::new(sp, spd);
        (ea * sc_a + eb * sc_b + pa * sc_pa + pb * sc_pb) * scale
    });

    Ok(IqBuffer::new(samples, cfg.sample_rate_hz))
}

/// Render the sideband approximation: single components only, each sideband
/// on a pure complex exponential at the subcarrier offset.
pub fn modulate_approx(
    comp: &ComponentSet,
    cfg: &SignalConfig,
    duration_s: f64,
) -> Result<IqBuffer> {
    cfg.validate()?;
    let n_samples = sample_count(cfg, duration_s)?;
    check_components(comp, cfg, n_samples)?;

    let chip_clock = PhaseClock::new(cfg.sample_rate_hz, cfg.chip_rate_hz);
    let sc_clock = PhaseClock::new(cfg.sample_rate_hz, cfg.subcarrier_hz);
    let scale = cfg.amplitude / (2.0 * std::f64::consts::SQRT_2);

    let samples = exec::par_map_range(0..n_samples, |n| {
        let k = chip_clock.index(n) as usize;
        let phase = 2.0 * std::f64::consts::PI * sc_clock.frac_cycle(n);
        let (s, c) = phase.sin_cos();
        let rot_minus = Complex64::new(c, -s);
        let rot_plus = Complex64::new(c, s);
        let e5a = Complex64::new(comp.e_e5a_i[k] as f64, comp.e_e5a_q[k] as f64);
        let e5b = Complex64::new(comp.e_e5b_i[k] as f64, comp.e_e5b_q[k] as f64);
        (e5a * rot_minus + e5b * rot_plus) * scale
    });

    Ok(IqBuffer::new(samples, cfg.sample_rate_hz))
}

/// Rotate a baseband buffer up to an intermediate frequency.
///
/// `signal_bandwidth_hz` is the two-sided occupied bandwidth used for the
/// aliasing check.
pub fn upconvert_to_if(iq: &IqBuffer, if_hz: f64, signal_bandwidth_hz: f64) -> Result<IqBuffer> {
    iq.validate()?;
    if if_hz.abs() + signal_bandwidth_hz / 2.0 >= iq.sample_rate_hz / 2.0 {
        return Err(Error::Config(format!(
            "IF {} Hz plus half bandwidth {} Hz exceeds Nyquist {} Hz",
            if_hz,
            signal_bandwidth_hz / 2.0,
            iq.sample_rate_hz / 2.0
        )));
    }
    let clock = PhaseClock::new(iq.sample_rate_hz, if_hz.abs());
    let sign = if_hz.signum();
    let samples = exec::par_map_range(0..iq.len(), |n| {
        let phase = sign * 2.0 * std::f64::consts::PI * clock.frac_cycle(n);
        let (s, c) = phase.sin_cos();
        iq.samples[n] * Complex64::new(c, s)
    });
    let mut out = IqBuffer::new(samples, iq.sample_rate_hz);
    out.start_time_s = iq.start_time_s;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::waveform::components::build_components;
    use crate::waveform::prn::{generate_primary_code_with, ChannelLabel, ChipSequence, CodeMode};

    fn desk_components(duration_s: f64) -> (ComponentSet, SignalConfig) {
        let cfg = SignalConfig::synthetic_desk();
        let codes = [
            generate_primary_code_with(7, ChannelLabel::E5aI, CodeMode::Synthetic, 1023).unwrap(),
            generate_primary_code_with(7, ChannelLabel::E5aQ, CodeMode::Synthetic, 1023).unwrap(),
            generate_primary_code_with(7, ChannelLabel::E5bI, CodeMode::Synthetic, 1023).unwrap(),
            generate_primary_code_with(7, ChannelLabel::E5bQ, CodeMode::Synthetic, 1023).unwrap(),
        ];
        let n_chips = (duration_s * cfg.chip_rate_hz).ceil() as usize + 1;
        let comp = build_components(&codes, None, None, cfg.chip_rate_hz, n_chips).unwrap();
        (comp, cfg)
    }

    #[test]
    fn exact_modulator_has_constant_envelope() {
        let (comp, cfg) = desk_components(2e-3);
        let iq = modulate_exact(&comp, &SubcarrierTables::altboc(), &cfg, 2e-3).unwrap();
        let mods: Vec<f64> = iq.samples.iter().map(|s| s.norm()).collect();
        let mut sorted = mods.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let median = sorted[sorted.len() / 2];
        for m in mods {
            assert!(((m - median) / median).abs() < 1e-9);
        }
    }

    #[test]
    fn exact_modulator_visits_exactly_eight_phases() {
        // exhaustive: force each of the 16 sign patterns through one chip
        let tables = SubcarrierTables::altboc();
        let cfg = SignalConfig::synthetic_desk();
        let mut phases = std::collections::BTreeSet::new();
        for mask in 0..16u8 {
            let vals: Vec<i8> = (0..4)
                .map(|b| if mask & (1 << b) != 0 { 1 } else { -1 })
                .collect();
            let codes = [
                ChipSequence {
                    chips: vec![vals[0]; 1023],
                    channel: ChannelLabel::E5aI,
                    prn_id: 1,
                },
                ChipSequence {
                    chips: vec![vals[1]; 1023],
                    channel: ChannelLabel::E5aQ,
                    prn_id: 1,
                },
                ChipSequence {
                    chips: vec![vals[2]; 1023],
                    channel: ChannelLabel::E5bI,
                    prn_id: 1,
                },
                ChipSequence {
                    chips: vec![vals[3]; 1023],
                    channel: ChannelLabel::E5bQ,
                    prn_id: 1,
                },
            ];
            let comp = build_components(&codes, None, None, cfg.chip_rate_hz, 1100).unwrap();
            let iq = modulate_exact(&comp, &tables, &cfg, 1e-3).unwrap();
            for s in &iq.samples {
                let octant = (s.arg() / (std::f64::consts::PI / 4.0)).round() as i64;
                phases.insert(octant.rem_euclid(8));
            }
        }
        assert_eq!(phases.len(), 8, "phases: {phases:?}");
    }

    #[test]
    fn approx_with_e5b_zeroed_is_lower_sideband_only() {
        let (mut comp, cfg) = desk_components(1e-3);
        comp.e_e5b_i.iter_mut().for_each(|x| *x = 0);
        comp.e_e5b_q.iter_mut().for_each(|x| *x = 0);
        let iq = modulate_approx(&comp, &cfg, 1e-3).unwrap();
        // spectral centroid should sit near -f_sc
        let centroid = spectral_centroid(&iq);
        assert!(
            (centroid + cfg.subcarrier_hz).abs() < 0.2e6,
            "centroid {centroid}"
        );
    }

    #[test]
    fn approx_swap_mirrors_spectrum() {
        let (comp, cfg) = desk_components(1e-3);
        let mut swapped = comp.clone();
        std::mem::swap(&mut swapped.e_e5a_i, &mut swapped.e_e5b_i);
        std::mem::swap(&mut swapped.e_e5a_q, &mut swapped.e_e5b_q);
        let a = modulate_approx(&comp, &cfg, 1e-3).unwrap();
        let b = modulate_approx(&swapped, &cfg, 1e-3).unwrap();
        assert!((spectral_centroid(&a) + spectral_centroid(&b)).abs() < 0.1e6);
    }

    fn spectral_centroid(iq: &IqBuffer) -> f64 {
        use rustfft::FftPlanner;
        let mut buf = iq.samples.clone();
        let mut planner = FftPlanner::new();
        planner.plan_fft_forward(buf.len()).process(&mut buf);
        let n = buf.len();
        let mut wsum = 0.0;
        let mut psum = 0.0;
        for (k, v) in buf.iter().enumerate() {
            let f = if k <= n / 2 {
                k as f64
            } else {
                k as f64 - n as f64
            } * iq.sample_rate_hz
                / n as f64;
            let p = v.norm_sqr();
            wsum += f * p;
            psum += p;
        }
        wsum / psum
    }

    #[test]
    fn upconvert_identity_and_power() {
        let (comp, cfg) = desk_components(1e-3);
        let iq = modulate_exact(&comp, &SubcarrierTables::altboc(), &cfg, 1e-3).unwrap();
        let same = upconvert_to_if(&iq, 0.0, 5.115e6).unwrap();
        assert_eq!(same.samples, iq.samples);
        let shifted = upconvert_to_if(&iq, 0.78e6, 5.115e6).unwrap();
        assert!(
            ((shifted.mean_power() - iq.mean_power()) / iq.mean_power()).abs() < 1e-12
        );
        let c0 = spectral_centroid(&iq);
        let c1 = spectral_centroid(&shifted);
        assert!((c1 - c0 - 0.78e6).abs() < 20e3, "moved {}", c1 - c0);
    }

    #[test]
    fn upconvert_aliasing_rejected() {
        let (comp, cfg) = desk_components(1e-3);
        let iq = modulate_exact(&comp, &SubcarrierTables::altboc(), &cfg, 1e-3).unwrap();
        assert!(upconvert_to_if(&iq, 4.0e6, 5.115e6).is_err());
    }

    #[test]
    fn bad_duration_rejected() {
        let (comp, cfg) = desk_components(1e-3);
        let slot = cfg.subcarrier_period_s() / 8.0;
        assert!(modulate_exact(&comp, &SubcarrierTables::altboc(), &cfg, 1.3 * slot).is_err());
    }

    #[test]
    fn phase_clock_exact_matches_float_and_never_drifts() {
        let clock = PhaseClock::new(12.276e6, 1.023e6);
        assert!(clock.is_exact());
        // 12 samples per chip exactly: boundaries every 12 samples
        for n in 0..10_000 {
            assert_eq!(clock.index(n), (n / 12) as u64);
        }
        // one simulated second: code phase exactly n*fp/fs chips
        let n = 12_276_000usize;
        assert_eq!(clock.index(n), 1_023_000);
        assert_eq!(clock.frac_cycle(n), 0.0);
    }
}
