//! Moments of randomized local correlation measurements on multi-qubit
//! states.
//!
//! The central quantity is the moment
//! `R^(t) = avg over uniform local directions of E(u_1, .., u_N)^t`,
//! where `E` is the full correlation function of the state. Even moments are
//! invariant under local unitaries and can be evaluated exactly with
//! spherical designs, statistically by Monte Carlo, or analytically by
//! monomial integration over the sphere. On top of the moments the crate
//! provides entanglement criteria for two-qubit (Bell-diagonal) states,
//! detection of pairwise entanglement in Dicke states, and criteria that
//! certify a state lies outside the W SLOCC class.

pub mod criteria;
pub mod designs;
pub mod error;
pub mod integrals;
pub mod moments;
pub mod qcore;
pub mod witness;

pub use error::{Error, Result};
