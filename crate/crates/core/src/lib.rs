//! Exact ramification invariants of Artin-Schreier-Witt characters over
//! K = F((pi)), F = GF(q) or GF(q)(y).
//!
//! The crate computes Kato's Swan conductor and refined Swan conductor,
//! Matsuda's modified variants, and the slopes and characteristic points
//! attached to them. All arithmetic is exact.

pub mod differentials;
pub mod error;
pub mod expr;
pub mod field;
pub mod oracle;
pub mod ramification;
pub mod ring;
pub mod sample;
pub mod selftest;
pub mod witt;

pub use error::{Error, Result};
