//! Polar encoding: information placement and the Arikan kernel transform.

use super::{Codeword, PolarCodeSpec};

/// In-place polar transform `x = u * F^{(x)m}` over GF(2), natural bit order
/// (no bit-reversal). `F = [[1,0],[1,1]]`; the transform is an involution.
pub fn polar_transform(bits: &mut [u8]) {
    let n = bits.len();
    debug_assert!(n.is_power_of_two());
    let mut len = 1;
    while len < n {
        let mut start = 0;
        while start < n {
            for i in start..start + len {
                bits[i] ^= bits[i + len];
            }
            start += 2 * len;
        }
        len *= 2;
    }
}

/// Scatter an information word onto the non-frozen subchannels (ascending
/// index), zero the frozen ones, and return the u-domain vector.
pub fn expand_info(info: &[u8], spec: &PolarCodeSpec) -> Vec<u8> {
    assert_eq!(info.len(), spec.info_len(), "info word length mismatch");
    let mut u = vec![0u8; spec.blocklength()];
    for (pos, &bit) in spec.info_positions().zip(info.iter()) {
        u[pos] = bit;
    }
    u
}

/// Encode a `(k + c)`-bit information word into a BPSK codeword at per-slot
/// symbol power `p_slot` (`0 -> +sqrt(p_slot)`, `1 -> -sqrt(p_slot)`).
pub fn polar_encode(info: &[u8], spec: &PolarCodeSpec, p_slot: f64) -> Codeword {
    assert!(p_slot > 0.0, "slot power must be positive");
    let mut coded = expand_info(info, spec);
    polar_transform(&mut coded);
    let amp = p_slot.sqrt();
    let bpsk = coded.iter().map(|&b| amp * (1.0 - 2.0 * b as f64)).collect();
    Codeword {
        coded_bits: coded,
        bpsk,
    }
}
