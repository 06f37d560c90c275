//! Finite rings, the twisted formal matrix ring M2(R;s), and decision
//! procedures for strongly clean, strongly J-clean and strongly nil-clean
//! matrices, with an executable suite of structural checks.
//!
//! Everything here is exhaustive enumeration over small finite structures:
//! elements are dense indices and every decision is backed by a scan.

pub mod caps;
pub mod catalog;
pub mod clean;
pub mod error;
pub mod formal;
pub mod ring;
pub mod suite;
mod util;

pub use caps::Caps;
pub use error::{Error, Result};
