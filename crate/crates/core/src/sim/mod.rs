//! Classical simulation of qubit prepare-and-measure data.
//!
//! A singlet is simulated with one bit (two shared random unit vectors; the
//! responder combines them according to a sign hint). Feeding that simulation
//! with the preparing side's outcome gives an exact two-bit simulation of any
//! qubit prepare-and-measure statistics with projective measurements.

mod batch;
mod ceiling;
mod protocols;

pub use batch::{run_batch, Protocol, SampleBatch, BATCH_CSV_HEADER, CHUNK};
pub use ceiling::{noise_ceiling_demo, NoiseCeiling, ETA_STAR_GENERAL, ETA_STAR_PROJECTIVE};
pub use protocols::{simulate_pm_two_bits, simulate_singlet_one_bit, PmRound, SingletRound};

use crate::error::{Error, Result};

const UNIT_TOL: f64 = 1e-12;

/// A real 3-vector: Bloch vector of a state or direction of an observable.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochVector(pub [f64; 3]);

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self([x, y, z])
    }

    /// Unit vector from spherical angles (polar `theta`, azimuth `phi`).
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        Self([theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()])
    }

    pub fn dot(&self, other: &BlochVector) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self(self.0.map(|v| v * s))
    }

    pub fn is_unit(&self) -> bool {
        (self.norm() - 1.0).abs() <= UNIT_TOL
    }

    pub fn check_unit(&self, name: &str) -> Result<()> {
        if self.is_unit() {
            Ok(())
        } else {
            Err(Error::Range(format!("{name} must be a unit vector, norm is {}", self.norm())))
        }
    }
}

/// `p(b = +1 | x, y) = (1 + x . y) / 2` for a pure qubit with Bloch vector `x`
/// measured along `y`.
pub fn pm_qubit_ideal(x: &BlochVector, y: &BlochVector) -> Result<f64> {
    x.check_unit("preparation")?;
    y.check_unit("observable")?;
    Ok(((1.0 + x.dot(y)) / 2.0).clamp(0.0, 1.0))
}
