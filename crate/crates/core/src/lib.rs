//! Dimension witnesses for small communication networks.
//!
//! The crate covers the classical side (deterministic strategies, exact bounds,
//! polytope membership and facet checks), the quantum side (behaviors of qubit
//! and qutrit strategies, seesaw optimization, noise tolerance), classical
//! simulation protocols for qubit data, and a catalog of worked cases.

pub mod catalog;
pub mod classical;
pub mod error;
pub mod format;
pub mod par;
pub mod quantum;
pub mod rational;
pub mod scenario;
pub mod sim;

pub use error::{Error, Result};
pub use rational::Rational;
pub use scenario::{mix, validate_behavior, white_noise, Behavior, BoundKind, Scenario, Topology, Witness};
