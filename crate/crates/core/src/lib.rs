//! Unsourced random access over the quasi-static Rayleigh fading MAC.
//!
//! This crate provides the two halves of a T-fold slotted-ALOHA system built
//! on a common polar slot code:
//!
//! * a **practical scheme simulator** — CRC-aided polar codes ([`polar`]),
//!   the Rayleigh block-fading slot/frame channel ([`mac`]), and the TIN-SIC
//!   slot decoder with EM-based channel estimation and least-squares
//!   interference cancellation ([`sic`]);
//! * a **finite-length achievability bound** for the genie-aided TIN-SIC
//!   decoder under Gaussian random coding ([`bound`]), together with the
//!   energy-efficiency optimizer used to trace Eb/N0-vs-load curves.
//!
//! The [`harness`] module orchestrates reproducible Monte-Carlo experiments
//! (slot PUPE sweeps, scheme and bound energy curves) and persists results as
//! CSV plus a small JSON plot manifest. All randomness flows from a single
//! `u64` seed through [`seeds`], so every experiment is bit-reproducible.
//!
//! Conventions used throughout: noise is unit-variance circularly symmetric
//! complex Gaussian per sample, powers are linear (dB only at interfaces),
//! and the energy per information bit is `Eb/N0 = n*P/k` for a frame of `n`
//! channel uses at per-use power `P` carrying `k` payload bits.

pub mod bound;
pub mod harness;
pub mod mac;
pub mod polar;
pub mod seeds;
pub mod sic;

pub use mac::{ebno_db_from_power, power_from_ebno_db, SystemConfig};
pub use polar::{Codeword, Message, PolarCodeSpec};
