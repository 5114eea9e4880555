//! White-noise tolerance of a violating behavior.

use crate::error::{Error, Result};
use crate::rational::{to_f64, Rational};
use crate::scenario::{mix, white_noise, Behavior, Witness};

/// Tolerance on the re-check `W(mix(p, p_I, eta)) = C_d`.
const RECHECK: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct NoiseTolerance {
    pub eta: f64,
    pub quantum_value: f64,
    pub noise_value: f64,
    pub bound: f64,
    /// Witness value of the mixture at `eta`.
    pub mixed_value: f64,
}

/// Largest `eta` with `W((1 - eta) p + eta p_I) >= C_d`, namely
/// `(W(p) - C_d) / (W(p) - W(p_I))`.
pub fn noise_tolerance(w: &Witness, bound: &Rational, p: &Behavior) -> Result<NoiseTolerance> {
    if !w.scenario().same_alphabets(p.scenario()) {
        return Err(Error::Structure("witness and behavior belong to different scenarios".into()));
    }
    let c = to_f64(bound);
    let q = w.value(p);
    if q <= c {
        return Err(Error::NoViolation { value: q, bound: c });
    }
    let noise = white_noise(p.scenario());
    let n = w.value(&noise);
    if q == n {
        return Err(Error::DegenerateWitness(q));
    }
    let eta = (q - c) / (q - n);
    let mixed_value = w.value(&mix(p, &noise, eta)?);
    if (mixed_value - c).abs() > RECHECK * (1.0 + c.abs()) {
        return Err(Error::Numerical(format!(
            "mixture at eta = {eta} evaluates to {mixed_value}, not {c}"
        )));
    }
    Ok(NoiseTolerance {
        eta,
        quantum_value: q,
        noise_value: n,
        bound: c,
        mixed_value,
    })
}
