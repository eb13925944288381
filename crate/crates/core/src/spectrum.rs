//! Spectral models and correlation curves.
//!
//! The analytic power spectral density of the composite signal takes the
//! closed form
//!
//! ```text
//! G(f) = 4 f_p / (pi^2 f^2) * cos^2(pi f / f_p) / a^2
//!        * [a^2 - a - 2 a cos(pi f / (4 f_sc)) + 2],   a = cos(pi f / (2 f_sc))
//! ```
//!
//! with removable singularities at f = 0 and wherever `a` vanishes; those
//! points are evaluated by a nearest-neighbour limit on a 1 Hz offset grid,
//! which keeps the printed formula authoritative while making the function
//! total.
//!
//! The pilot auto-correlation is the two-sideband sum
//! `2 R(tau) cos(2 pi f_sc tau)` (unit triangle `R`, half-width one chip),
//! normalized here to peak 1 at zero delay. Its band-limited variant
//! integrates the pilot sideband-pair spectrum over the front-end band and
//! anchors the code-jitter closed forms.

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::config::SignalConfig;
use crate::error::{Error, Result};
use crate::iq::IqBuffer;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Normalization {
    /// The closed form as printed.
    Raw,
    /// Scaled so the numeric integral over [-band/2, +band/2] is one.
    UnitPowerOverBand(f64),
}

/// Analytic composite-signal PSD model.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumModel {
    pub chip_rate_hz: f64,
    pub subcarrier_hz: f64,
    pub normalization: Normalization,
    scale: f64,
}

impl SpectrumModel {
    pub fn new(cfg: &SignalConfig, normalization: Normalization) -> Result<Self> {
        if cfg.chip_rate_hz <= 0.0 || cfg.subcarrier_hz <= 0.0 {
            return Err(Error::Config("rates must be positive".into()));
        }
        let mut model = SpectrumModel {
            chip_rate_hz: cfg.chip_rate_hz,
            subcarrier_hz: cfg.subcarrier_hz,
            normalization,
            scale: 1.0,
        };
        if let Normalization::UnitPowerOverBand(band) = normalization {
            if band <= 0.0 {
                return Err(Error::Config("normalization band must be positive".into()));
            }
            let raw = model.integrate_raw(-band / 2.0, band / 2.0, 400_001);
            if raw <= 0.0 || !raw.is_finite() {
                return Err(Error::Numerical(format!(
                    "normalization integral degenerate: {raw}"
                )));
            }
            model.scale = 1.0 / raw;
        }
        Ok(model)
    }

    fn eval_raw(&self, f: f64) -> Option<f64> {
        let fp = self.chip_rate_hz;
        let fsc = self.subcarrier_hz;
        if f == 0.0 {
            return None;
        }
        let a = (std::f64::consts::PI * f / (2.0 * fsc)).cos();
        if a.abs() < 1e-9 {
            return None;
        }
        let c = (std::f64::consts::PI * f / fp).cos();
        let bracket = a * a - a - 2.0 * a * (std::f64::consts::PI * f / (4.0 * fsc)).cos() + 2.0;
        let g = 4.0 * fp / (std::f64::consts::PI * std::f64::consts::PI * f * f) * (c * c)
            / (a * a)
            * bracket;
        if g.is_finite() {
            Some(g)
        } else {
            None
        }
    }

    /// Evaluate the PSD. Total over all frequencies; removable singular
    /// points fall back to the nearest 1 Hz neighbour, and rounding noise is
    /// clamped at zero.
    pub fn psd(&self, f: f64) -> f64 {
        let v = self
            .eval_raw(f)
            .or_else(|| self.eval_raw(f + 1.0))
            .or_else(|| self.eval_raw(f - 1.0))
            .unwrap_or(0.0);
        (v * self.scale).max(0.0)
    }

    fn integrate_raw(&self, f_lo: f64, f_hi: f64, n: usize) -> f64 {
        // composite Simpson over an even number of panels
        let n = if n % 2 == 0 { n + 1 } else { n };
        let h = (f_hi - f_lo) / (n - 1) as f64;
        let mut acc = 0.0;
        for i in 0..n {
            let f = f_lo + h * i as f64;
            let v = self
                .eval_raw(f)
                .or_else(|| self.eval_raw(f + 1.0))
                .or_else(|| self.eval_raw(f - 1.0))
                .unwrap_or(0.0)
                .max(0.0);
            let w = if i == 0 || i == n - 1 {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            acc += w * v;
        }
        acc * h / 3.0
    }

    /// Numeric integral of the (normalized) PSD over [f_lo, f_hi].
    pub fn band_power_fraction(&self, f_lo: f64, f_hi: f64) -> Result<f64> {
        if f_lo > f_hi {
            return Err(Error::Argument(format!(
                "inverted band: [{f_lo}, {f_hi}]"
            )));
        }
        if f_lo == f_hi {
            return Ok(0.0);
        }
        let span = f_hi - f_lo;
        let n = ((span / 500.0) as usize).clamp(2_001, 400_001);
        Ok(self.integrate_raw(f_lo, f_hi, n) * self.scale)
    }
}

/// Analytic pilot auto-correlation at zero Doppler, normalized to 1 at zero
/// delay. Real-valued by construction; returned as complex for uniformity
/// with the empirical curve.
pub fn pilot_acf_analytic(cfg: &SignalConfig, tau_s: f64) -> Complex64 {
    let chips = tau_s * cfg.chip_rate_hz;
    let tri = (1.0 - chips.abs()).max(0.0);
    let osc = (2.0 * std::f64::consts::PI * cfg.subcarrier_hz * tau_s).cos();
    Complex64::new(tri * osc, 0.0)
}

/// Pilot sideband-pair spectrum (unnormalized): two code-rate lobes centred
/// at the subcarrier offsets.
fn pilot_pair_psd(f: f64, fp: f64, fsc: f64) -> f64 {
    let sinc2 = |x: f64| {
        if x.abs() < 1e-12 {
            1.0
        } else {
            let px = std::f64::consts::PI * x;
            let s = px.sin() / px;
            s * s
        }
    };
    sinc2((f - fsc) / fp) + sinc2((f + fsc) / fp)
}

/// Band-limited pilot ACF: inverse transform of the pilot pair spectrum
/// restricted to a two-sided front-end bandwidth. `bandwidth_hz` of
/// `f64::INFINITY` returns the analytic curve.
pub fn pilot_acf_bandlimited(cfg: &SignalConfig, tau_s: f64, bandwidth_hz: f64) -> f64 {
    if !bandwidth_hz.is_finite() {
        return pilot_acf_analytic(cfg, tau_s).re;
    }
    let fp = cfg.chip_rate_hz;
    let fsc = cfg.subcarrier_hz;
    let half = bandwidth_hz / 2.0;
    // Simpson; resolution follows the lobe structure
    let n = 16_001;
    let h = 2.0 * half / (n - 1) as f64;
    let mut num = 0.0;
    let mut den = 0.0;
    for i in 0..n {
        let f = -half + h * i as f64;
        let g = pilot_pair_psd(f, fp, fsc);
        let w = if i == 0 || i == n - 1 {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        num += w * g * (2.0 * std::f64::consts::PI * f * tau_s).cos();
        den += w * g;
    }
    num / den
}

/// A correlation curve over a uniform delay grid, normalized to unit peak
/// at the best alignment.
#[derive(Debug, Clone)]
pub struct AcfCurve {
    pub delays_s: Vec<f64>,
    pub values: Vec<Complex64>,
}

impl AcfCurve {
    pub fn magnitude(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.norm()).collect()
    }

    /// Index of the maximum-modulus sample.
    pub fn peak_index(&self) -> usize {
        self.values
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm_sqr().partial_cmp(&b.1.norm_sqr()).unwrap())
            .map(|(i, _)| i)
            .unwrap_or(0)
    }
}

/// Brute-force normalized cross-correlation over a [-max_lag, +max_lag]
/// grid at one-sample steps. The replica slides over the signal; the peak
/// is rotated to the positive real axis and scaled to one.
pub fn empirical_acf(iq: &IqBuffer, replica: &IqBuffer, max_lag_s: f64) -> Result<AcfCurve> {
    if (iq.sample_rate_hz - replica.sample_rate_hz).abs() > 1e-9 {
        return Err(Error::Shape(format!(
            "sample rates differ: {} vs {}",
            iq.sample_rate_hz, replica.sample_rate_hz
        )));
    }
    if replica.len() > iq.len() {
        return Err(Error::Shape(
            "replica longer than signal".into(),
        ));
    }
    let max_lag = (max_lag_s * iq.sample_rate_hz).round() as i64;
    if max_lag < 0 {
        return Err(Error::Argument("negative max lag".into()));
    }
    let n = replica.len() as i64;
    let m = iq.len() as i64;
    let lags: Vec<i64> = (-max_lag..=max_lag).collect();
    let values = crate::exec::par_map(lags.clone(), |lag| {
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..n {
            let idx = k + lag;
            // cyclic extension keeps every lag fully supported
            let idx = idx.rem_euclid(m);
            acc += iq.samples[idx as usize] * replica.samples[k as usize].conj();
        }
        acc
    });
    let peak = values
        .iter()
        .cloned()
        .max_by(|a, b| a.norm_sqr().partial_cmp(&b.norm_sqr()).unwrap())
        .unwrap_or(Complex64::new(1.0, 0.0));
    let rot = if peak.norm() > 0.0 {
        peak.conj() / peak.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    let scale = 1.0 / peak.norm().max(f64::MIN_POSITIVE);
    let values: Vec<Complex64> = values.into_iter().map(|v| v * rot * scale).collect();
    let delays_s = lags
        .into_iter()
        .map(|l| l as f64 / iq.sample_rate_hz)
        .collect();
    Ok(AcfCurve { delays_s, values })
}

/// One-shot Welch PSD estimate: mean of windowed periodograms, cosine
/// (Hann) taper, 50% overlap.
#[derive(Debug, Clone)]
pub struct PsdEstimate {
    /// Frequency of each bin, ascending, two-sided.
    pub freqs_hz: Vec<f64>,
    /// Power density per bin (power per Hz).
    pub density: Vec<f64>,
}

impl PsdEstimate {
    /// Trapezoid integral over [f_lo, f_hi].
    pub fn band_power(&self, f_lo: f64, f_hi: f64) -> f64 {
        let mut acc = 0.0;
        for i in 1..self.freqs_hz.len() {
            let (f0, f1) = (self.freqs_hz[i - 1], self.freqs_hz[i]);
            let lo = f0.max(f_lo);
            let hi = f1.min(f_hi);
            if hi > lo {
                let frac = (hi - lo) / (f1 - f0);
                acc += 0.5 * (self.density[i - 1] + self.density[i]) * (f1 - f0) * frac;
            }
        }
        acc
    }

    pub fn total_power(&self) -> f64 {
        self.band_power(self.freqs_hz[0], *self.freqs_hz.last().unwrap())
    }
}

pub fn welch_psd(iq: &IqBuffer, segment_len: usize) -> Result<PsdEstimate> {
    if segment_len < 8 || iq.len() < segment_len {
        return Err(Error::Argument(format!(
            "segment length {segment_len} unusable for buffer of {}",
            iq.len()
        )));
    }
    let window: Vec<f64> = (0..segment_len)
        .map(|i| {
            let x = std::f64::consts::PI * i as f64 / segment_len as f64;
            let s = x.sin();
            s * s
        })
        .collect();
    let wsum2: f64 = window.iter().map(|w| w * w).sum();
    let step = segment_len / 2;
    let n_segs = (iq.len() - segment_len) / step + 1;

    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(segment_len);

    let acc = crate::exec::par_map_range(0..n_segs, |s| {
        let start = s * step;
        let mut buf: Vec<Complex64> = iq.samples[start..start + segment_len]
            .iter()
            .zip(&window)
            .map(|(x, w)| x * *w)
            .collect();
        fft.process(&mut buf);
        buf.into_iter().map(|v| v.norm_sqr()).collect::<Vec<f64>>()
    });
    let mut pow = vec![0.0; segment_len];
    for seg in acc {
        for (p, v) in pow.iter_mut().zip(seg) {
            *p += v;
        }
    }
    let norm = 1.0 / (n_segs as f64 * wsum2 * iq.sample_rate_hz);
    // reorder to ascending frequency
    let half = segment_len / 2;
    let mut freqs_hz = Vec::with_capacity(segment_len);
    let mut density = Vec::with_capacity(segment_len);
    for i in 0..segment_len {
        let k = (i + half) % segment_len;
        let f = (k as f64 - if k >= half { segment_len as f64 } else { 0.0 })
            * iq.sample_rate_hz
            / segment_len as f64;
        freqs_hz.push(f);
        density.push(pow[k] * norm);
    }
    Ok(PsdEstimate { freqs_hz, density })
}
