use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::waveform::prn::ChannelLabel;

/// Navigation symbol stream for one channel. Pilot channels carry the
/// constant +1 stream.
#[derive(Debug, Clone, PartialEq)]
pub struct NavDataStream {
    pub symbols: Vec<i8>,
    pub symbol_period_s: f64,
    pub channel: ChannelLabel,
}

impl NavDataStream {
    /// Constant +1 stream, the pilot convention.
    pub fn pilot(channel: ChannelLabel, n_symbols: usize, symbol_period_s: f64) -> Self {
        NavDataStream {
            symbols: vec![1; n_symbols.max(1)],
            symbol_period_s,
            channel,
        }
    }

    /// Seeded random bipolar symbols for a data channel.
    pub fn random(
        channel: ChannelLabel,
        n_symbols: usize,
        symbol_period_s: f64,
        seed: u64,
    ) -> Result<Self> {
        if !channel.is_data() {
            return Err(Error::Argument(format!(
                "{} is a pilot channel and carries no data",
                channel.name()
            )));
        }
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let symbols = (0..n_symbols.max(1))
            .map(|_| if rng.gen::<bool>() { 1i8 } else { -1i8 })
            .collect();
        Ok(NavDataStream {
            symbols,
            symbol_period_s,
            channel,
        })
    }

    pub fn from_bits(channel: ChannelLabel, symbols: Vec<i8>, symbol_period_s: f64) -> Result<Self> {
        if symbols.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::Argument("symbols must be bipolar".into()));
        }
        Ok(NavDataStream {
            symbols,
            symbol_period_s,
            channel,
        })
    }

    /// Symbol value at a given chip index, given the code length and chip
    /// rate that define the symbol boundaries. Streams repeat cyclically.
    pub fn symbol_at(&self, chip_idx: usize, chip_rate_hz: f64) -> f64 {
        let chips_per_symbol = (self.symbol_period_s * chip_rate_hz).round() as usize;
        let k = (chip_idx / chips_per_symbol.max(1)) % self.symbols.len();
        self.symbols[k] as f64
    }
}
