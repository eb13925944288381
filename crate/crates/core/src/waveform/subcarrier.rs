//! Four-valued subcarrier tables.
//!
//! One subcarrier period is split into eight equal slots. The single-signal
//! table and the product-signal table each take four distinct values; the
//! quarter-period shift used by the modulator is exactly two slots. The
//! composite of the four modulation terms lands on an 8-PSK constellation,
//! which is what makes the envelope constant; the constant-envelope test is
//! the arbiter for these coefficients.

use std::f64::consts::SQRT_2;

pub const SLOTS_PER_PERIOD: usize = 8;
/// Quarter period in slots.
pub const QUARTER_PERIOD_SLOTS: usize = 2;

/// Slot coefficient tables for the single (`sc_s`) and product (`sc_p`)
/// subcarriers.
#[derive(Debug, Clone, PartialEq)]
pub struct SubcarrierTables {
    pub sc_s_coeffs: [f64; SLOTS_PER_PERIOD],
    pub sc_p_coeffs: [f64; SLOTS_PER_PERIOD],
}

impl SubcarrierTables {
    pub fn altboc() -> Self {
        let a = (SQRT_2 + 1.0) / 2.0;
        let b = 0.5;
        let c = (SQRT_2 - 1.0) / 2.0;
        SubcarrierTables {
            sc_s_coeffs: [a, b, -b, -a, -a, -b, b, a],
            sc_p_coeffs: [-c, b, -b, c, c, -b, b, -c],
        }
    }

    /// Single-subcarrier value at a slot index (wraps modulo one period).
    pub fn sc_s(&self, slot: usize) -> f64 {
        self.sc_s_coeffs[slot % SLOTS_PER_PERIOD]
    }

    /// Product-subcarrier value at a slot index.
    pub fn sc_p(&self, slot: usize) -> f64 {
        self.sc_p_coeffs[slot % SLOTS_PER_PERIOD]
    }

    /// Single-subcarrier value a quarter period earlier.
    pub fn sc_s_delayed(&self, slot: usize) -> f64 {
        self.sc_s((slot + SLOTS_PER_PERIOD - QUARTER_PERIOD_SLOTS) % SLOTS_PER_PERIOD)
    }

    pub fn sc_p_delayed(&self, slot: usize) -> f64 {
        self.sc_p((slot + SLOTS_PER_PERIOD - QUARTER_PERIOD_SLOTS) % SLOTS_PER_PERIOD)
    }

    /// Fraction of the quadrature pair's power carried by the harmonic at
    /// `k` times the subcarrier frequency. `delayed_sign` picks the pairing
    /// (`-1` for sc(t) - j sc(t - T/4), `+1` for the conjugate pairing).
    ///
    /// Computed in closed form from the slot values: the pair is piecewise
    /// constant, so the harmonic coefficient is the slot DFT weighted by the
    /// slot-hold kernel.
    pub fn harmonic_power_fraction(&self, table: SubcarrierKind, k: i32, delayed_sign: f64) -> f64 {
        let coeffs = match table {
            SubcarrierKind::Single => &self.sc_s_coeffs,
            SubcarrierKind::Product => &self.sc_p_coeffs,
        };
        let n = SLOTS_PER_PERIOD as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, &v) in coeffs.iter().enumerate() {
            let vd = coeffs[(i + SLOTS_PER_PERIOD - QUARTER_PERIOD_SLOTS) % SLOTS_PER_PERIOD];
            // pair value over slot i: v + j*delayed_sign*vd
            // coefficient of e^{j 2 pi k f_sc t}: mean of pair * e^{-j 2 pi k t/T}
            // slot-hold integral over slot i: e^{-j pi k (2i+1)/n} * sinc(k/n)
            let phase = -std::f64::consts::PI * k as f64 * (2.0 * i as f64 + 1.0) / n;
            let (s, c) = phase.sin_cos();
            re += v * c - delayed_sign * vd * s;
            im += v * s + delayed_sign * vd * c;
        }
        let sinc = {
            let x = std::f64::consts::PI * k as f64 / n;
            if x.abs() < 1e-15 {
                1.0
            } else {
                x.sin() / x
            }
        };
        let c2 = (re * re + im * im) / (n * n) * sinc * sinc;
        let pair_power: f64 = coeffs.iter().map(|v| v * v).sum::<f64>() * 2.0 / n;
        c2 / pair_power
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubcarrierKind {
    Single,
    Product,
}

impl Default for SubcarrierTables {
    fn default() -> Self {
        SubcarrierTables::altboc()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn each_table_takes_four_distinct_values() {
        let t = SubcarrierTables::altboc();
        for coeffs in [&t.sc_s_coeffs, &t.sc_p_coeffs] {
            let mut vals: Vec<i64> = coeffs.iter().map(|v| (v * 1e12).round() as i64).collect();
            vals.sort_unstable();
            vals.dedup();
            assert_eq!(vals.len(), 4);
        }
    }

    #[test]
    fn single_pair_concentrates_at_first_harmonic() {
        let t = SubcarrierTables::altboc();
        let f1 = t.harmonic_power_fraction(SubcarrierKind::Single, 1, 1.0);
        assert!((f1 - 0.9496).abs() < 5e-4, "got {f1}");
        // the opposite pairing puts the harmonic at -1
        let f1n = t.harmonic_power_fraction(SubcarrierKind::Single, -1, -1.0);
        assert!((f1n - 0.9496).abs() < 5e-4, "got {f1n}");
    }

    #[test]
    fn product_pair_concentrates_at_third_harmonic() {
        let t = SubcarrierTables::altboc();
        let f3 = t.harmonic_power_fraction(SubcarrierKind::Product, -3, 1.0);
        assert!((f3 - 0.6150).abs() < 5e-4, "got {f3}");
    }

    #[test]
    fn mean_square_split_matches_power_budget() {
        let t = SubcarrierTables::altboc();
        let ms_s: f64 = t.sc_s_coeffs.iter().map(|v| v * v).sum::<f64>() / 8.0;
        let ms_p: f64 = t.sc_p_coeffs.iter().map(|v| v * v).sum::<f64>() / 8.0;
        assert!((ms_s - (2.0 + SQRT_2) / 4.0).abs() < 1e-12);
        assert!((ms_p - (2.0 - SQRT_2) / 4.0).abs() < 1e-12);
        assert!((ms_s + ms_p - 1.0).abs() < 1e-12);
    }
}
