use crate::error::{Error, Result};
use crate::waveform::nav::NavDataStream;
use crate::waveform::prn::{ChannelLabel, ChipSequence};

/// Chip-rate bipolar component waveforms: the four single components
/// (code x data) and the four product components that keep the composite
/// envelope constant.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentSet {
    pub e_e5a_i: Vec<i8>,
    pub e_e5a_q: Vec<i8>,
    pub e_e5b_i: Vec<i8>,
    pub e_e5b_q: Vec<i8>,
    pub ebar_e5a_i: Vec<i8>,
    pub ebar_e5a_q: Vec<i8>,
    pub ebar_e5b_i: Vec<i8>,
    pub ebar_e5b_q: Vec<i8>,
    pub chip_rate_hz: f64,
}

impl ComponentSet {
    pub fn len(&self) -> usize {
        self.e_e5a_i.len()
    }

    pub fn is_empty(&self) -> bool {
        self.e_e5a_i.is_empty()
    }
}

/// Combine the four codes with their navigation streams into the component
/// set. Each product component is the pointwise product of the three
/// complementary single components.
pub fn build_components(
    codes: &[ChipSequence; 4],
    nav_a: Option<&NavDataStream>,
    nav_b: Option<&NavDataStream>,
    chip_rate_hz: f64,
    n_chips: usize,
) -> Result<ComponentSet> {
    let base_len = codes[0].len();
    if codes.iter().any(|c| c.len() != base_len) {
        return Err(Error::Shape(format!(
            "all four codes must share one length, got {:?}",
            codes.iter().map(|c| c.len()).collect::<Vec<_>>()
        )));
    }
    for (want, code) in ChannelLabel::ALL.iter().zip(codes.iter()) {
        if code.channel != *want {
            return Err(Error::Argument(format!(
                "codes must be ordered E5a-I, E5a-Q, E5b-I, E5b-Q; found {} in slot for {}",
                code.channel.name(),
                want.name()
            )));
        }
    }
    for nav in [nav_a, nav_b].into_iter().flatten() {
        let chips_per_symbol = nav.symbol_period_s * chip_rate_hz;
        let periods = chips_per_symbol / base_len as f64;
        if (periods - periods.round()).abs() > 1e-6 {
            return Err(Error::Argument(format!(
                "nav symbol period must span an integer number of code periods, got {periods}"
            )));
        }
    }

    let mut set = ComponentSet {
        e_e5a_i: Vec::with_capacity(n_chips),
        e_e5a_q: Vec::with_capacity(n_chips),
        e_e5b_i: Vec::with_capacity(n_chips),
        e_e5b_q: Vec::with_capacity(n_chips),
        ebar_e5a_i: Vec::with_capacity(n_chips),
        ebar_e5a_q: Vec::with_capacity(n_chips),
        ebar_e5b_i: Vec::with_capacity(n_chips),
        ebar_e5b_q: Vec::with_capacity(n_chips),
        chip_rate_hz,
    };

    for k in 0..n_chips {
        let idx = k % base_len;
        let da = nav_a.map_or(1.0, |n| n.symbol_at(k, chip_rate_hz)) as i32;
        let db = nav_b.map_or(1.0, |n| n.symbol_at(k, chip_rate_hz)) as i32;
        let ai = codes[0].chips[idx] as i32 * da;
        let aq = codes[1].chips[idx] as i32;
        let bi = codes[2].chips[idx] as i32 * db;
        let bq = codes[3].chips[idx] as i32;
        set.e_e5a_i.push(ai as i8);
        set.e_e5a_q.push(aq as i8);
        set.e_e5b_i.push(bi as i8);
        set.e_e5b_q.push(bq as i8);
        set.ebar_e5a_i.push((aq * bi * bq) as i8);
        set.ebar_e5a_q.push((ai * bi * bq) as i8);
        set.ebar_e5b_i.push((ai * aq * bq) as i8);
        set.ebar_e5b_q.push((ai * aq * bi) as i8);
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::waveform::prn::{generate_primary_code_with, CodeMode};

    fn all_ones(channel: ChannelLabel, n: usize) -> ChipSequence {
        ChipSequence {
            chips: vec![1; n],
            channel,
            prn_id: 1,
        }
    }

    fn codes_of(vals: [i8; 4]) -> [ChipSequence; 4] {
        let mk = |v: i8, ch| ChipSequence {
            chips: vec![v; 4],
            channel: ch,
            prn_id: 1,
        };
        [
            mk(vals[0], ChannelLabel::E5aI),
            mk(vals[1], ChannelLabel::E5aQ),
            mk(vals[2], ChannelLabel::E5bI),
            mk(vals[3], ChannelLabel::E5bQ),
        ]
    }

    #[test]
    fn identity_inputs_give_identity_components() {
        let codes = [
            all_ones(ChannelLabel::E5aI, 8),
            all_ones(ChannelLabel::E5aQ, 8),
            all_ones(ChannelLabel::E5bI, 8),
            all_ones(ChannelLabel::E5bQ, 8),
        ];
        let set = build_components(&codes, None, None, 1.023e6, 8).unwrap();
        for v in [
            &set.e_e5a_i,
            &set.e_e5a_q,
            &set.e_e5b_i,
            &set.e_e5b_q,
            &set.ebar_e5a_i,
            &set.ebar_e5a_q,
            &set.ebar_e5b_i,
            &set.ebar_e5b_q,
        ] {
            assert!(v.iter().all(|&x| x == 1));
        }
    }

    #[test]
    fn data_flip_affects_only_that_symbol_interval() {
        let n = 1023 * 2; // two code periods, one symbol each
        let codes = [
            all_ones(ChannelLabel::E5aI, 1023),
            all_ones(ChannelLabel::E5aQ, 1023),
            all_ones(ChannelLabel::E5bI, 1023),
            all_ones(ChannelLabel::E5bQ, 1023),
        ];
        let nav = NavDataStream::from_bits(ChannelLabel::E5aI, vec![1, -1], 1e-3).unwrap();
        let set = build_components(&codes, Some(&nav), None, 1.023e6, n).unwrap();
        assert!(set.e_e5a_i[..1023].iter().all(|&x| x == 1));
        assert!(set.e_e5a_i[1023..].iter().all(|&x| x == -1));
        // pilot unaffected
        assert!(set.e_e5a_q.iter().all(|&x| x == 1));
    }

    #[test]
    fn products_bipolar_for_all_sixteen_sign_patterns() {
        for mask in 0..16u8 {
            let vals = [
                if mask & 1 != 0 { 1 } else { -1 },
                if mask & 2 != 0 { 1 } else { -1 },
                if mask & 4 != 0 { 1 } else { -1 },
                if mask & 8 != 0 { 1 } else { -1 },
            ];
            let set = build_components(&codes_of(vals), None, None, 1.023e6, 4).unwrap();
            for v in [
                &set.ebar_e5a_i,
                &set.ebar_e5a_q,
                &set.ebar_e5b_i,
                &set.ebar_e5b_q,
            ] {
                assert!(v.iter().all(|&x| x == 1 || x == -1));
            }
            // cross-check one product against its definition
            assert_eq!(
                set.ebar_e5a_i[0] as i32,
                vals[1] as i32 * vals[2] as i32 * vals[3] as i32
            );
        }
    }

    #[test]
    fn mismatched_lengths_rejected() {
        let codes = [
            all_ones(ChannelLabel::E5aI, 8),
            all_ones(ChannelLabel::E5aQ, 7),
            all_ones(ChannelLabel::E5bI, 8),
            all_ones(ChannelLabel::E5bQ, 8),
        ];
        assert!(matches!(
            build_components(&codes, None, None, 1.023e6, 8),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn real_codes_stay_bipolar_through_products() {
        let codes = [
            generate_primary_code_with(3, ChannelLabel::E5aI, CodeMode::Synthetic, 1023).unwrap(),
            generate_primary_code_with(3, ChannelLabel::E5aQ, CodeMode::Synthetic, 1023).unwrap(),
            generate_primary_code_with(3, ChannelLabel::E5bI, CodeMode::Synthetic, 1023).unwrap(),
            generate_primary_code_with(3, ChannelLabel::E5bQ, CodeMode::Synthetic, 1023).unwrap(),
        ];
        let set = build_components(&codes, None, None, 1.023e6, 1023).unwrap();
        assert!(set.ebar_e5b_q.iter().all(|&x| x == 1 || x == -1));
    }
}
