//! Signal synthesis: spreading codes, navigation symbols, component
//! multiplexing, and the composite modulators.

mod components;
mod modulator;
mod nav;
mod prn;
mod subcarrier;

pub use components::{build_components, ComponentSet};
pub use modulator::{modulate_approx, modulate_exact, upconvert_to_if};
pub use nav::NavDataStream;
pub use prn::{
    generate_primary_code, generate_primary_code_with, zero_lag_correlation, ChannelLabel,
    ChipSequence, CodeMode, MAX_PRN,
};
pub use subcarrier::{SubcarrierKind, SubcarrierTables, QUARTER_PERIOD_SLOTS, SLOTS_PER_PERIOD};

pub(crate) use modulator::PhaseClock;
