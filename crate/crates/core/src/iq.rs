use num_complex::Complex64;

use crate::error::{Error, Result};

/// A uniformly sampled complex baseband/IF stream.
#[derive(Debug, Clone, PartialEq)]
pub struct IqBuffer {
    pub samples: Vec<Complex64>,
    pub sample_rate_hz: f64,
    pub start_time_s: f64,
}

impl IqBuffer {
    pub fn new(samples: Vec<Complex64>, sample_rate_hz: f64) -> Self {
        IqBuffer {
            samples,
            sample_rate_hz,
            start_time_s: 0.0,
        }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn duration_s(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate_hz
    }

    /// Mean squared modulus.
    pub fn mean_power(&self) -> f64 {
        if self.samples.is_empty() {
            return 0.0;
        }
        self.samples.iter().map(|s| s.norm_sqr()).sum::<f64>() / self.samples.len() as f64
    }

    pub fn validate(&self) -> Result<()> {
        if self.sample_rate_hz <= 0.0 {
            return Err(Error::Config(format!(
                "sample rate must be positive, got {}",
                self.sample_rate_hz
            )));
        }
        if let Some(i) = self
            .samples
            .iter()
            .position(|s| !s.re.is_finite() || !s.im.is_finite())
        {
            return Err(Error::Numerical(format!("non-finite sample at index {i}")));
        }
        Ok(())
    }

    /// Scale every sample in place.
    pub fn scale(&mut self, factor: f64) {
        for s in &mut self.samples {
            *s *= factor;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_of_unit_circle_samples() {
        let n = 1000;
        let samples: Vec<Complex64> = (0..n)
            .map(|k| Complex64::from_polar(1.0, k as f64 * 0.1))
            .collect();
        let buf = IqBuffer::new(samples, 1.0e6);
        assert!((buf.mean_power() - 1.0).abs() < 1e-12);
        buf.validate().unwrap();
    }

    #[test]
    fn non_finite_sample_detected() {
        let buf = IqBuffer::new(vec![Complex64::new(f64::NAN, 0.0)], 1.0e6);
        assert!(buf.validate().is_err());
    }
}
