//! Quantum capacity of atom ↔ photon state transfer.
//!
//! A two-level atom and a single cavity mode exchange one excitation under
//! the Jaynes–Cummings interaction. Viewed as a qubit channel, each transfer
//! keeps an amplitude `h` of the excitation at the receiver; this crate
//! builds those channels (conversion, fiber loss, the full
//! atom → fiber → atom link, and conversion under cavity and atomic decay),
//! decides degradability, constructs degrading maps, and computes the
//! single-letter quantum capacity
//! `Q = max_p H₂(|h|²p) − H₂((1−|h|²)p)`.
//!
//! Every closed form has an independent numerical counterpart in
//! [`oracle`] or [`lindblad::integrate_master_equation`]; [`verify`] runs
//! them all.
//!
//! ```
//! use jc_capacity::{channel::TransferChannel, capacity::quantum_capacity, jc::JcParams};
//!
//! let params = JcParams::resonant(1.0, std::f64::consts::FRAC_PI_2).unwrap();
//! let result = quantum_capacity(&TransferChannel::atom_to_field(&params));
//! assert!((result.q - 1.0).abs() < 1e-12);
//! ```

pub mod capacity;
pub mod channel;
pub mod cli;
pub mod error;
pub mod jc;
pub mod lindblad;
pub mod oracle;
pub mod qmat;
pub mod sweep;
pub mod verify;

pub use error::{Error, Result};
