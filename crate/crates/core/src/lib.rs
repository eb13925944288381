//! Software-defined baseband laboratory for the Galileo E5 AltBOC(15,10)
//! signal: generation, channel impairment, acquisition, tracking, and the
//! analysis curves that characterize code-tracking performance.

pub mod acquisition;
pub mod analysis;
pub mod channel;
pub mod config;
pub mod error;
pub(crate) mod exec;
pub mod io;
pub mod iq;
pub mod spectrum;
pub mod synth;
pub mod tracking;
pub mod waveform;

pub use config::SignalConfig;
pub use error::{Error, Result};
pub use iq::IqBuffer;
