//! Exact simulator and analysis library for a Bell-state identity
//! authentication protocol with entanglement swapping.
//!
//! The crate is organized as:
//!
//! - [`state`] / [`density`]: a small exact state-vector and density-matrix
//!   engine over labeled registers (gates, Bell measurements, partial trace,
//!   entropies).
//! - [`bellmap`]: the two-bit-key to Bell-state and Pauli assignments, the
//!   derived entanglement-swapping table, and the XOR verification identity.
//! - [`protocol`]: the full three-party run with decoy-protected channels,
//!   the intermediary's permutation, and the split disclosure.
//! - [`attacks`]: impersonation, intercept-resend (Holevo), and CNOT-based
//!   fraudulent-attack simulators with their closed-form rates.
//! - [`noise`]: collective dephasing/rotation channels and their error
//!   probability curves.
//!
//! All randomness flows through caller-provided seeded generators, so every
//! simulation is replayable.

pub mod attacks;
pub mod bellmap;
pub mod density;
pub mod error;
pub mod noise;
pub mod protocol;
pub mod state;

pub use bellmap::TwoBitKey;
pub use density::DensityMatrix;
pub use error::{Error, Result};
pub use state::{BellLabel, MeasBasis, PauliLabel, PureState};
