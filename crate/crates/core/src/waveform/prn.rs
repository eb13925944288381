//! Primary spreading-code generation.
//!
//! The registry mode produces each channel's code as the chip-wise XOR of two
//! 14-stage maximal-length shift registers truncated at the primary code
//! length, the same register scheme the published E5 codes use. Register 1
//! starts from the all-ones word; register 2 starts from a per-PRN word held
//! in the data tables below. The feedback polynomials are verified
//! maximal-length (period 16383) by the unit tests. The start-value tables
//! are locally defined defaults: swap in the published per-PRN words to
//! reproduce the broadcast codes bit for bit.
//!
//! The synthetic mode generates a single seeded m-sequence per (prn, channel)
//! at any configured length, for desk-scale test signals.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The four multiplexed channels of the composite signal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChannelLabel {
    E5aI,
    E5aQ,
    E5bI,
    E5bQ,
}

impl ChannelLabel {
    pub const ALL: [ChannelLabel; 4] = [
        ChannelLabel::E5aI,
        ChannelLabel::E5aQ,
        ChannelLabel::E5bI,
        ChannelLabel::E5bQ,
    ];

    /// Data channels carry navigation symbols; pilots do not.
    pub fn is_data(self) -> bool {
        matches!(self, ChannelLabel::E5aI | ChannelLabel::E5bI)
    }

    pub fn name(self) -> &'static str {
        match self {
            ChannelLabel::E5aI => "E5a-I",
            ChannelLabel::E5aQ => "E5a-Q",
            ChannelLabel::E5bI => "E5b-I",
            ChannelLabel::E5bQ => "E5b-Q",
        }
    }

    fn index(self) -> usize {
        match self {
            ChannelLabel::E5aI => 0,
            ChannelLabel::E5aQ => 1,
            ChannelLabel::E5bI => 2,
            ChannelLabel::E5bQ => 3,
        }
    }
}

/// How primary codes are produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CodeMode {
    /// Two-register truncated m-sequence scheme with tabulated start values.
    Registers,
    /// Seeded single m-sequence of configurable length.
    Synthetic,
}

/// A bipolar spreading sequence for one channel.
#[derive(Debug, Clone, PartialEq)]
pub struct ChipSequence {
    pub chips: Vec<i8>,
    pub channel: ChannelLabel,
    pub prn_id: u32,
}

impl ChipSequence {
    pub fn len(&self) -> usize {
        self.chips.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chips.is_empty()
    }

    pub fn chip_f64(&self, idx: usize) -> f64 {
        self.chips[idx] as f64
    }
}

pub const MAX_PRN: u32 = 50;
const REG_LEN: u32 = 14;

/// Feedback tap exponents per channel: (register 1, register 2).
/// All four pairs generate period-16383 sequences.
const TAPS: [(&[u32], &[u32]); 4] = [
    // E5a-I
    (&[1, 6, 8, 14], &[4, 5, 7, 8, 12, 14]),
    // E5a-Q
    (&[1, 6, 8, 14], &[1, 6, 10, 14]),
    // E5b-I
    (&[4, 11, 13, 14], &[2, 5, 8, 9, 12, 14]),
    // E5b-Q
    (&[4, 11, 13, 14], &[1, 5, 6, 9, 10, 14]),
];

const START_E5A_I: [u16; 50] = [
    0o25235, 0o10223, 0o06276, 0o23754, 0o00010, 0o06162, 0o06005, 0o23121, 0o17033, 0o26347,
    0o15017, 0o26754, 0o33507, 0o30473, 0o34717, 0o01765, 0o14530, 0o16404, 0o16200, 0o05654,
    0o07776, 0o14050, 0o35622, 0o16625, 0o24412, 0o22352, 0o36157, 0o31735, 0o26054, 0o01333,
    0o24562, 0o22367, 0o07510, 0o36750, 0o02366, 0o37503, 0o24712, 0o33212, 0o04467, 0o24571,
    0o33224, 0o04650, 0o25751, 0o01654, 0o35557, 0o24561, 0o10336, 0o06322, 0o37525, 0o01451,
];
const START_E5A_Q: [u16; 50] = [
    0o35135, 0o05763, 0o16303, 0o20446, 0o00144, 0o11156, 0o11264, 0o32230, 0o00533, 0o00020,
    0o23562, 0o20123, 0o00340, 0o34603, 0o26566, 0o05754, 0o16313, 0o31147, 0o01763, 0o30017,
    0o34706, 0o34127, 0o35102, 0o15730, 0o03416, 0o24716, 0o12053, 0o16430, 0o21001, 0o16741,
    0o02373, 0o21254, 0o14311, 0o12666, 0o37206, 0o03044, 0o02164, 0o26213, 0o02471, 0o25173,
    0o31355, 0o16624, 0o22662, 0o04437, 0o04326, 0o31770, 0o11603, 0o02157, 0o04205, 0o26044,
];
const START_E5B_I: [u16; 50] = [
    0o25330, 0o31435, 0o26550, 0o05457, 0o03161, 0o11573, 0o12614, 0o07601, 0o13176, 0o26720,
    0o12345, 0o07144, 0o11312, 0o10030, 0o30752, 0o20104, 0o16102, 0o01027, 0o26206, 0o17577,
    0o21452, 0o36232, 0o02250, 0o22420, 0o20302, 0o01574, 0o23045, 0o07425, 0o03636, 0o14716,
    0o10544, 0o12726, 0o32722, 0o34252, 0o22246, 0o07550, 0o34270, 0o27342, 0o33227, 0o20103,
    0o21134, 0o20067, 0o12342, 0o06006, 0o37621, 0o30575, 0o12426, 0o11531, 0o22443, 0o27743,
];
const START_E5B_Q: [u16; 50] = [
    0o20450, 0o01101, 0o25361, 0o23047, 0o21142, 0o30310, 0o12153, 0o02410, 0o14666, 0o01655,
    0o16331, 0o01652, 0o37032, 0o21650, 0o22705, 0o37671, 0o22054, 0o25753, 0o32355, 0o01755,
    0o34741, 0o15046, 0o13024, 0o05146, 0o37272, 0o06265, 0o12204, 0o05173, 0o02577, 0o16654,
    0o32311, 0o27574, 0o01155, 0o33161, 0o00126, 0o15657, 0o22660, 0o01730, 0o20401, 0o20036,
    0o37602, 0o27027, 0o13476, 0o13474, 0o10553, 0o07720, 0o02032, 0o23710, 0o05334, 0o01560,
];

fn start_table(channel: ChannelLabel) -> &'static [u16; 50] {
    match channel {
        ChannelLabel::E5aI => &START_E5A_I,
        ChannelLabel::E5aQ => &START_E5A_Q,
        ChannelLabel::E5bI => &START_E5B_I,
        ChannelLabel::E5bQ => &START_E5B_Q,
    }
}

/// Fibonacci LFSR over 14 cells. Output is the high cell; feedback is the
/// XOR of the tapped cells shifted into the low cell.
#[derive(Debug, Clone)]
struct Lfsr {
    state: u16,
    taps: &'static [u32],
}

impl Lfsr {
    fn new(start: u16, taps: &'static [u32]) -> Self {
        Lfsr {
            state: start & 0x3FFF,
            taps,
        }
    }

    fn shift(&mut self) -> u8 {
        let out = ((self.state >> (REG_LEN - 1)) & 1) as u8;
        let mut fb = 0u16;
        for &t in self.taps {
            fb ^= (self.state >> (t - 1)) & 1;
        }
        self.state = ((self.state << 1) | fb) & 0x3FFF;
        out
    }
}

/// Generate the primary code for (prn, channel) in registry mode at the
/// canonical 10230-chip length.
pub fn generate_primary_code(prn_id: u32, channel: ChannelLabel) -> Result<ChipSequence> {
    generate_primary_code_with(prn_id, channel, CodeMode::Registers, 10_230)
}

/// Generate a primary code with explicit mode and length.
pub fn generate_primary_code_with(
    prn_id: u32,
    channel: ChannelLabel,
    mode: CodeMode,
    length: usize,
) -> Result<ChipSequence> {
    if prn_id == 0 || prn_id > MAX_PRN {
        return Err(Error::Registry(format!(
            "prn {prn_id} outside supported range 1..={MAX_PRN}"
        )));
    }
    if length == 0 {
        return Err(Error::Argument("code length must be nonzero".into()));
    }
    let chips = match mode {
        CodeMode::Registers => {
            let (taps1, taps2) = TAPS[channel.index()];
            let start2 = start_table(channel)[(prn_id - 1) as usize];
            let mut r1 = Lfsr::new(0x3FFF, taps1);
            let mut r2 = Lfsr::new(start2, taps2);
            (0..length)
                .map(|_| {
                    let bit = r1.shift() ^ r2.shift();
                    if bit == 0 {
                        1i8
                    } else {
                        -1i8
                    }
                })
                .collect()
        }
        CodeMode::Synthetic => synthetic_chips(prn_id, channel, length),
    };
    Ok(ChipSequence {
        chips,
        channel,
        prn_id,
    })
}

/// Seeded m-sequence chips for desk-scale configs. The register is seeded
/// from (prn, channel) so distinct channels decorrelate, and the sequence is
/// truncated or cycled to the requested length.
fn synthetic_chips(prn_id: u32, channel: ChannelLabel, length: usize) -> Vec<i8> {
    // x^14 + x^10 + x^6 + x + 1
    static SYN_TAPS: [u32; 4] = [1, 6, 10, 14];
    let mut seed = (prn_id as u64)
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add((channel.index() as u64 + 1).wrapping_mul(0xBF58_476D_1CE4_E5B9));
    seed ^= seed >> 31;
    let start = ((seed & 0x3FFF) as u16).max(1);
    let mut reg = Lfsr::new(start, &SYN_TAPS);
    (0..length)
        .map(|_| if reg.shift() == 0 { 1i8 } else { -1i8 })
        .collect()
}

/// Normalized cross-correlation of two equal-length bipolar sequences at
/// zero lag.
pub fn zero_lag_correlation(a: &ChipSequence, b: &ChipSequence) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::Shape(format!(
            "sequence lengths differ: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    let acc: i64 = a
        .chips
        .iter()
        .zip(&b.chips)
        .map(|(&x, &y)| (x as i64) * (y as i64))
        .sum();
    Ok(acc as f64 / a.len() as f64)
}
