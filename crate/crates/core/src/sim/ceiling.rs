//! Membership of noisy qubit prepare-and-measure data in the one-bit polytope.

use super::BlochVector;
use crate::classical::{enumerate_vertices, membership, VertexSet, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::scenario::{Behavior, Scenario};

/// Displayed noise level above which projective qubit data is one-bit
/// simulable (`1 - 1/K_G(3)`; the constant is known only within bounds).
pub const ETA_STAR_PROJECTIVE: f64 = 0.34;
/// The same for general qubit measurements.
pub const ETA_STAR_GENERAL: f64 = 0.5;

const MAX_PREPARATIONS: usize = 4;
const MAX_OBSERVABLES: usize = 3;
const BISECTION_TOL: f64 = 1e-4;

#[derive(Clone, Debug, PartialEq)]
pub struct NoiseCeiling {
    pub eta: f64,
    /// Verdict at `eta`.
    pub inside: bool,
    /// Smallest noise level found Inside (within the bisection tolerance).
    pub threshold: f64,
    /// Every `(eta, inside)` evaluated, in order.
    pub trace: Vec<(f64, bool)>,
}

impl NoiseCeiling {
    /// Text summary including the displayed constants. The finite check says
    /// nothing about settings that were not tried.
    pub fn summary(&self) -> String {
        format!(
            "eta = {}\nverdict = {}\nthreshold = {:.6}\neta_star_projective = {ETA_STAR_PROJECTIVE} (displayed constant)\n\
             eta_star_general = {ETA_STAR_GENERAL} (displayed constant)\n\
             note = threshold holds for these settings only",
            self.eta,
            if self.inside { "Inside" } else { "Outside" },
            self.threshold
        )
    }
}

fn noisy_behavior(scenario: &Scenario, preps: &[BlochVector], obs: &[BlochVector], eta: f64) -> Result<Behavior> {
    let mut v = vec![0.0; scenario.dim()];
    for (x, px) in preps.iter().enumerate() {
        for (y, oy) in obs.iter().enumerate() {
            let q = (1.0 - eta) * (1.0 + px.dot(oy)) / 2.0 + eta / 2.0;
            v[scenario.line_index(x, 0, y, 0, 0)] = q;
            v[scenario.line_index(x, 0, y, 0, 1)] = 1.0 - q;
        }
    }
    Behavior::new(*scenario, v)
}

/// Mixes `(1 - eta)` of ideal qubit data with `eta` white noise and decides
/// membership in the one-bit polytope; the threshold comes from bisection.
pub fn noise_ceiling_demo(preparations: &[BlochVector], observables: &[BlochVector], eta: f64) -> Result<NoiseCeiling> {
    if preparations.is_empty() || observables.is_empty() {
        return Err(Error::Structure("need at least one preparation and one observable".into()));
    }
    if preparations.len() > MAX_PREPARATIONS || observables.len() > MAX_OBSERVABLES {
        return Err(Error::Range(format!(
            "instance too large: at most {MAX_PREPARATIONS} preparations and {MAX_OBSERVABLES} observables"
        )));
    }
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::Range(format!("eta must lie in [0, 1], got {eta}")));
    }
    for (i, v) in preparations.iter().chain(observables).enumerate() {
        v.check_unit(&format!("setting {i}"))?;
    }
    let sc = Scenario::line(preparations.len(), 1, 1, observables.len(), 2, [2, 2])?;
    let vs = enumerate_vertices(&sc, [2, 2], DEFAULT_CAP)?;
    let mut trace = Vec::new();
    let mut test = |e: f64| -> Result<bool> {
        let inside = is_inside(&sc, &vs, preparations, observables, e)?;
        trace.push((e, inside));
        Ok(inside)
    };
    let inside = test(eta)?;
    let threshold = if test(0.0)? {
        0.0
    } else {
        let (mut lo, mut hi) = (0.0, 1.0);
        while hi - lo > BISECTION_TOL {
            let mid = 0.5 * (lo + hi);
            if test(mid)? {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    };
    Ok(NoiseCeiling {
        eta,
        inside,
        threshold,
        trace,
    })
}

fn is_inside(sc: &Scenario, vs: &VertexSet, preps: &[BlochVector], obs: &[BlochVector], eta: f64) -> Result<bool> {
    Ok(membership(&noisy_behavior(sc, preps, obs, eta)?, vs)?.is_inside())
}
