//! The common slot codebook: CRC-augmented polar encoding, CRC-aided
//! successive-cancellation list decoding, and Monte-Carlo code construction.
//!
//! Every user transmits a codeword of the same `(n1, k + c)` polar code, so
//! one [`PolarCodeSpec`] describes the entire codebook. The spec is immutable
//! after construction and cheap to share across concurrent trials; decoding
//! is a pure function of `(llrs, spec)`.

mod construct;
mod crc;
mod encode;
mod scl;

pub use construct::{construct_frozen_set, ConstructionChannel};
pub use crc::{crc_append, crc_check, CrcPoly};
pub use encode::{polar_encode, polar_transform};
pub use scl::{scl_decode, scl_decode_list, scl_decode_paths, DecodedPath};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PolarError {
    #[error("invalid code spec: {0}")]
    InvalidSpec(String),
    #[error("construction needs at least {min} trials, got {got}")]
    TooFewTrials { min: u64, got: u64 },
    #[error("unsupported CRC length {0} (no default polynomial; supply one)")]
    NoDefaultPolynomial(usize),
    #[error("failed to read code file {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("failed to parse code file {path}: {source}")]
    Parse {
        path: String,
        source: serde_json::Error,
    },
}

/// A `k`-bit payload together with its message index `W` in `[0, 2^k)`.
///
/// Bits are MSB-first: `bits[0]` is the coefficient of `2^(k-1)` of `W`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Message {
    bits: Vec<u8>,
}

impl Message {
    pub fn from_bits(bits: Vec<u8>) -> Self {
        assert!(bits.iter().all(|&b| b <= 1), "bits must be 0/1");
        Message { bits }
    }

    /// Message with index `w`; requires `k <= 127`.
    pub fn from_index(w: u128, k: usize) -> Self {
        assert!(k <= 127, "index form supports at most 127 bits");
        assert!(k == 127 || w < (1u128 << k), "index out of range");
        let bits = (0..k).map(|i| ((w >> (k - 1 - i)) & 1) as u8).collect();
        Message { bits }
    }

    pub fn index(&self) -> u128 {
        assert!(self.bits.len() <= 127);
        self.bits.iter().fold(0u128, |w, &b| (w << 1) | b as u128)
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }
}

/// An encoded slot codeword: binary symbols and their BPSK mapping.
///
/// `bpsk[i] = sqrt(p_slot) * (1 - 2 * coded_bits[i])`, so the codeword meets
/// the per-slot energy budget `n1 * p_slot` with equality.
#[derive(Debug, Clone, PartialEq)]
pub struct Codeword {
    pub coded_bits: Vec<u8>,
    pub bpsk: Vec<f64>,
}

/// Parameters of the CRC-augmented polar slot code.
#[derive(Debug, Clone)]
pub struct PolarCodeSpec {
    n1: usize,
    k: usize,
    crc: CrcPoly,
    frozen: Vec<usize>,
    frozen_mask: Vec<bool>,
    list_size: usize,
}

impl PolarCodeSpec {
    pub fn new(
        n1: usize,
        k: usize,
        crc: CrcPoly,
        mut frozen: Vec<usize>,
        list_size: usize,
    ) -> Result<Self, PolarError> {
        let c = crc.degree();
        if !n1.is_power_of_two() || n1 < 2 {
            return Err(PolarError::InvalidSpec(format!(
                "blocklength {n1} is not a power of two"
            )));
        }
        if k == 0 || k > 127 {
            return Err(PolarError::InvalidSpec(format!(
                "payload length {k} out of supported range 1..=127"
            )));
        }
        if k + c > n1 {
            return Err(PolarError::InvalidSpec(format!(
                "k + c = {} exceeds blocklength {n1}",
                k + c
            )));
        }
        if list_size == 0 {
            return Err(PolarError::InvalidSpec("list size must be >= 1".into()));
        }
        frozen.sort_unstable();
        frozen.dedup();
        if frozen.len() != n1 - (k + c) {
            return Err(PolarError::InvalidSpec(format!(
                "frozen set has {} distinct indices, expected {}",
                frozen.len(),
                n1 - (k + c)
            )));
        }
        if frozen.last().is_some_and(|&i| i >= n1) {
            return Err(PolarError::InvalidSpec(
                "frozen index out of range".into(),
            ));
        }
        let mut frozen_mask = vec![false; n1];
        for &i in &frozen {
            frozen_mask[i] = true;
        }
        Ok(PolarCodeSpec {
            n1,
            k,
            crc,
            frozen,
            frozen_mask,
            list_size,
        })
    }

    pub fn blocklength(&self) -> usize {
        self.n1
    }

    pub fn payload_len(&self) -> usize {
        self.k
    }

    pub fn crc_len(&self) -> usize {
        self.crc.degree()
    }

    /// Information word length `k + c` carried on non-frozen subchannels.
    pub fn info_len(&self) -> usize {
        self.k + self.crc.degree()
    }

    pub fn crc(&self) -> &CrcPoly {
        &self.crc
    }

    pub fn list_size(&self) -> usize {
        self.list_size
    }

    /// Clone with a different SCL list width (e.g. the fast list-16 preset).
    pub fn with_list_size(&self, list_size: usize) -> Self {
        let mut out = self.clone();
        out.list_size = list_size.max(1);
        out
    }

    pub fn frozen_set(&self) -> &[usize] {
        &self.frozen
    }

    pub fn is_frozen(&self, subchannel: usize) -> bool {
        self.frozen_mask[subchannel]
    }

    /// Non-frozen subchannel indices in ascending order.
    pub fn info_positions(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n1).filter(|&i| !self.frozen_mask[i])
    }

    pub fn to_json(&self) -> String {
        let dto = CodeFile {
            n1: self.n1,
            k: self.k,
            c: self.crc.degree(),
            poly_hex: self.crc.to_hex(),
            frozen: self.frozen.clone(),
            list_size: self.list_size,
        };
        serde_json::to_string_pretty(&dto).expect("code spec serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, PolarError> {
        let dto: CodeFile = serde_json::from_str(text).map_err(|source| PolarError::Parse {
            path: "<inline>".into(),
            source,
        })?;
        dto.into_spec()
    }

    pub fn save(&self, path: &std::path::Path) -> Result<(), PolarError> {
        std::fs::write(path, self.to_json()).map_err(|source| PolarError::Io {
            path: path.display().to_string(),
            source,
        })
    }

    pub fn load(path: &std::path::Path) -> Result<Self, PolarError> {
        let text = std::fs::read_to_string(path).map_err(|source| PolarError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let dto: CodeFile = serde_json::from_str(&text).map_err(|source| PolarError::Parse {
            path: path.display().to_string(),
            source,
        })?;
        dto.into_spec()
    }
}

/// On-disk form of a code spec (`code.json`).
#[derive(Debug, Serialize, Deserialize)]
struct CodeFile {
    n1: usize,
    k: usize,
    c: usize,
    poly_hex: String,
    frozen: Vec<usize>,
    #[serde(default = "default_list_size")]
    list_size: usize,
}

fn default_list_size() -> usize {
    64
}

impl CodeFile {
    fn into_spec(self) -> Result<PolarCodeSpec, PolarError> {
        let crc = CrcPoly::from_hex(&self.poly_hex)
            .map_err(|e| PolarError::InvalidSpec(format!("bad poly_hex: {e}")))?;
        if crc.degree() != self.c {
            return Err(PolarError::InvalidSpec(format!(
                "poly degree {} does not match declared CRC length {}",
                crc.degree(),
                self.c
            )));
        }
        PolarCodeSpec::new(self.n1, self.k, crc, self.frozen, self.list_size)
    }
}
