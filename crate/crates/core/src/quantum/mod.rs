//! Quantum strategies, their behaviors, seesaw optimization and noise tolerance.

pub mod cmatrix;
pub mod eigen;
pub mod io;
pub mod noise;
pub mod seesaw;
pub mod states;
pub mod stiefel;
pub mod strategy;

pub use cmatrix::{CMatrix, C64};
pub use eigen::{eigh, Eigh};
pub use io::{load_strategy, parse_complex, strategy_to_string};
pub use noise::{noise_tolerance, NoiseTolerance};
pub use seesaw::{run_restart, seesaw, Restriction, RestartOutcome, SeesawConfig, SeesawResult};
pub use states::pure_state;
pub use strategy::{
    quantum_behavior, quantum_behavior_entangled, Component, Mixture, QuantumStrategy, Strategy, EPS_STRATEGY,
};
