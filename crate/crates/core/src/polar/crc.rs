//! Systematic CRC over GF(2) for list-decoder path selection and
//! false-alarm control.
//!
//! The codebook appends the `c`-bit remainder of `m(x) * x^c mod g(x)` to a
//! `k`-bit payload, so a word checks iff it is divisible by `g(x)`. Only the
//! false-alarm exponent `2^-c` matters for the access scheme, so any
//! primitive-rich generator of the right degree works; the default degree-21
//! polynomial is the CAN-FD CRC-21 generator.

/// A CRC generator polynomial, stored with its leading coefficient.
///
/// `full` has bit `degree` set, e.g. `x^2 + x + 1` is `0b111`. The constant
/// term must be 1 (every cyclic generator ends in `+ 1`), which also makes a
/// zero remainder of the shifted payload equivalent to divisibility.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrcPoly {
    full: u64,
    degree: usize,
}

impl CrcPoly {
    pub fn from_full(full: u64) -> Result<Self, String> {
        if full < 0b11 {
            return Err(format!("polynomial {full:#x} has degree < 1"));
        }
        if full & 1 == 0 {
            return Err(format!("polynomial {full:#x} has zero constant term"));
        }
        let degree = 63 - full.leading_zeros() as usize;
        Ok(CrcPoly { full, degree })
    }

    pub fn from_hex(hex: &str) -> Result<Self, String> {
        let full = u64::from_str_radix(hex.trim_start_matches("0x"), 16)
            .map_err(|e| format!("{e}"))?;
        Self::from_full(full)
    }

    /// Published generator for a given CRC length, where one exists.
    ///
    /// 21: CRC-21/CAN-FD, 16: CRC-16/CCITT, 11: CRC-11/CAN-FD.
    pub fn default_for_len(c: usize) -> Option<Self> {
        let full = match c {
            21 => 0x30_2899,
            16 => 0x1_1021,
            11 => 0xB85,
            _ => return None,
        };
        Some(CrcPoly::from_full(full).expect("built-in polynomials are valid"))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Hex of the full polynomial including the leading coefficient.
    pub fn to_hex(&self) -> String {
        format!("{:x}", self.full)
    }

    /// Remainder of `bits(x) * x^degree mod g(x)` via the usual MSB-first
    /// shift register; `bits` are fed most significant first.
    fn shift_register(&self, bits: &[u8]) -> u64 {
        let c = self.degree;
        let mask = (1u64 << c) - 1;
        let taps = self.full & mask;
        let mut reg = 0u64;
        for &b in bits {
            debug_assert!(b <= 1);
            let feedback = ((reg >> (c - 1)) as u8 ^ b) & 1;
            reg = (reg << 1) & mask;
            if feedback == 1 {
                reg ^= taps;
            }
        }
        reg
    }
}

/// Append the `c`-bit CRC remainder to a payload.
pub fn crc_append(payload: &[u8], poly: &CrcPoly) -> Vec<u8> {
    let c = poly.degree();
    let rem = poly.shift_register(payload);
    let mut word = Vec::with_capacity(payload.len() + c);
    word.extend_from_slice(payload);
    word.extend((0..c).map(|i| ((rem >> (c - 1 - i)) & 1) as u8));
    word
}

/// True iff the word (payload followed by its CRC) is divisible by the
/// generator.
pub fn crc_check(word: &[u8], poly: &CrcPoly) -> bool {
    assert!(word.len() >= poly.degree(), "word shorter than CRC");
    poly.shift_register(word) == 0
}
