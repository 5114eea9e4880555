//! Quantum strategies and their behaviors.

use super::cmatrix::CMatrix;
use super::eigen::eigh;
use crate::classical::ClassicalStrategy;
use crate::error::{Error, Result};
use crate::scenario::{Behavior, Scenario, Topology};

/// Tolerance for strategy invariants.
pub const EPS_STRATEGY: f64 = 1e-10;

/// States, instruments and measurements of one network.
///
/// Instruments are indexed `[t][s]` and hold Kraus lists of `d1 x d0`
/// operators. Measurements are indexed `[y][b]`.
#[derive(Clone, Debug, PartialEq)]
pub enum QuantumStrategy {
    Line {
        dims: [usize; 2],
        states: Vec<CMatrix>,
        instruments: Vec<Vec<Vec<CMatrix>>>,
        povms: Vec<Vec<CMatrix>>,
    },
    TwoPrep {
        dims: [usize; 2],
        states0: Vec<CMatrix>,
        states1: Vec<CMatrix>,
        povms: Vec<Vec<CMatrix>>,
    },
    /// Preparations share `shared` on `d0 (x) d1` and apply local unitaries.
    Entangled {
        dims: [usize; 2],
        shared: CMatrix,
        unitaries0: Vec<CMatrix>,
        unitaries1: Vec<CMatrix>,
        povms: Vec<Vec<CMatrix>>,
    },
}

/// One term of a shared-randomness mixture.
#[derive(Clone, Debug, PartialEq)]
pub enum Component {
    Quantum(QuantumStrategy),
    Classical(ClassicalStrategy),
}

/// Finite convex mixture of strategies.
#[derive(Clone, Debug, PartialEq)]
pub struct Mixture {
    pub terms: Vec<(f64, Component)>,
}

/// Anything that produces a behavior.
#[derive(Clone, Debug, PartialEq)]
pub enum Strategy {
    Quantum(QuantumStrategy),
    Mixture(Mixture),
}

impl Strategy {
    pub fn behavior(&self, scenario: &Scenario) -> Result<Behavior> {
        match self {
            Strategy::Quantum(q) => quantum_behavior(q, scenario),
            Strategy::Mixture(m) => m.behavior(scenario),
        }
    }
}

fn bad(object: impl Into<String>, message: impl Into<String>) -> Error {
    Error::strategy(object, message)
}

pub(crate) fn check_state(rho: &CMatrix, dim: usize, name: &str) -> Result<()> {
    if rho.rows() != dim || rho.cols() != dim {
        return Err(bad(name, format!("expected {dim}x{dim}, got {}x{}", rho.rows(), rho.cols())));
    }
    let h = rho.hermitian_defect();
    if h > EPS_STRATEGY {
        return Err(bad(name, format!("not Hermitian (defect {h:e})")));
    }
    let tr = rho.trace();
    if (tr.re - 1.0).abs() > EPS_STRATEGY || tr.im.abs() > EPS_STRATEGY {
        return Err(bad(name, format!("trace {tr} is not 1")));
    }
    let min = eigh(rho).values[0];
    if min < -EPS_STRATEGY {
        return Err(bad(name, format!("negative eigenvalue {min:e}")));
    }
    Ok(())
}

pub(crate) fn check_povm(povm: &[CMatrix], outcomes: usize, dim: usize, name: &str) -> Result<()> {
    if povm.len() != outcomes {
        return Err(bad(name, format!("expected {outcomes} outcomes, got {}", povm.len())));
    }
    let mut sum = CMatrix::zeros(dim, dim);
    for (b, m) in povm.iter().enumerate() {
        let el = format!("{name}[b={b}]");
        if m.rows() != dim || m.cols() != dim {
            return Err(bad(el, format!("expected {dim}x{dim}")));
        }
        if m.hermitian_defect() > EPS_STRATEGY {
            return Err(bad(el, "not Hermitian"));
        }
        let min = eigh(m).values[0];
        if min < -EPS_STRATEGY {
            return Err(bad(el, format!("negative eigenvalue {min:e}")));
        }
        sum = &sum + m;
    }
    let defect = sum.max_abs_diff(&CMatrix::identity(dim));
    if defect > EPS_STRATEGY {
        return Err(bad(name, format!("elements do not sum to identity (defect {defect:e})")));
    }
    Ok(())
}

fn check_unitary(u: &CMatrix, dim: usize, name: &str) -> Result<()> {
    if u.rows() != dim || u.cols() != dim {
        return Err(bad(name, format!("expected {dim}x{dim}")));
    }
    let defect = (&u.adjoint() * u).max_abs_diff(&CMatrix::identity(dim));
    if defect > EPS_STRATEGY {
        return Err(bad(name, format!("not unitary (defect {defect:e})")));
    }
    Ok(())
}

fn check_count<T>(items: &[T], n: usize, name: &str) -> Result<()> {
    if items.len() != n {
        return Err(bad(name, format!("expected {n} entries, got {}", items.len())));
    }
    Ok(())
}

impl QuantumStrategy {
    pub fn dims(&self) -> [usize; 2] {
        match self {
            QuantumStrategy::Line { dims, .. }
            | QuantumStrategy::TwoPrep { dims, .. }
            | QuantumStrategy::Entangled { dims, .. } => *dims,
        }
    }

    pub fn povms(&self) -> &[Vec<CMatrix>] {
        match self {
            QuantumStrategy::Line { povms, .. }
            | QuantumStrategy::TwoPrep { povms, .. }
            | QuantumStrategy::Entangled { povms, .. } => povms,
        }
    }

    /// Checks every invariant against the scenario.
    pub fn validate(&self, scenario: &Scenario) -> Result<()> {
        let [d0, d1] = self.dims();
        if self.dims() != scenario.channel_dims() {
            return Err(bad(
                "dims",
                format!("strategy dims {:?} differ from scenario dims {:?}", self.dims(), scenario.channel_dims()),
            ));
        }
        match (self, scenario.topology()) {
            (
                QuantumStrategy::Line {
                    states,
                    instruments,
                    povms,
                    ..
                },
                Topology::Line { x, t, s, y, b },
            ) => {
                check_count(states, x, "states")?;
                for (i, rho) in states.iter().enumerate() {
                    check_state(rho, d0, &format!("states[{i}]"))?;
                }
                check_count(instruments, t, "instruments")?;
                for (ti, inst) in instruments.iter().enumerate() {
                    let name = format!("instruments[t={ti}]");
                    check_count(inst, s, &name)?;
                    let mut sum = CMatrix::zeros(d0, d0);
                    for (si, kraus) in inst.iter().enumerate() {
                        if kraus.is_empty() {
                            return Err(bad(format!("{name}[s={si}]"), "empty Kraus list"));
                        }
                        for k in kraus {
                            if k.rows() != d1 || k.cols() != d0 {
                                return Err(bad(format!("{name}[s={si}]"), format!("Kraus operators must be {d1}x{d0}")));
                            }
                            sum = &sum + &(&k.adjoint() * k);
                        }
                    }
                    let defect = sum.max_abs_diff(&CMatrix::identity(d0));
                    if defect > EPS_STRATEGY {
                        return Err(bad(name, format!("not trace preserving (defect {defect:e})")));
                    }
                }
                check_count(povms, y, "povms")?;
                for (yi, p) in povms.iter().enumerate() {
                    check_povm(p, b, d1, &format!("povms[y={yi}]"))?;
                }
                Ok(())
            }
            (
                QuantumStrategy::TwoPrep {
                    states0,
                    states1,
                    povms,
                    ..
                },
                Topology::TwoPrep { x0, x1, y, b },
            ) => {
                check_count(states0, x0, "states0")?;
                check_count(states1, x1, "states1")?;
                for (i, rho) in states0.iter().enumerate() {
                    check_state(rho, d0, &format!("states0[{i}]"))?;
                }
                for (i, rho) in states1.iter().enumerate() {
                    check_state(rho, d1, &format!("states1[{i}]"))?;
                }
                check_count(povms, y, "povms")?;
                for (yi, p) in povms.iter().enumerate() {
                    check_povm(p, b, d0 * d1, &format!("povms[y={yi}]"))?;
                }
                Ok(())
            }
            (
                QuantumStrategy::Entangled {
                    shared,
                    unitaries0,
                    unitaries1,
                    povms,
                    ..
                },
                Topology::TwoPrep { x0, x1, y, b },
            ) => {
                check_state(shared, d0 * d1, "shared")?;
                check_count(unitaries0, x0, "unitaries0")?;
                check_count(unitaries1, x1, "unitaries1")?;
                for (i, u) in unitaries0.iter().enumerate() {
                    check_unitary(u, d0, &format!("unitaries0[{i}]"))?;
                }
                for (i, u) in unitaries1.iter().enumerate() {
                    check_unitary(u, d1, &format!("unitaries1[{i}]"))?;
                }
                check_count(povms, y, "povms")?;
                for (yi, p) in povms.iter().enumerate() {
                    check_povm(p, b, d0 * d1, &format!("povms[y={yi}]"))?;
                }
                Ok(())
            }
            _ => Err(bad("topology", "strategy does not fit the scenario topology")),
        }
    }

    /// Behavior without validation; callers must have validated.
    pub(crate) fn behavior_values(&self, scenario: &Scenario) -> Vec<f64> {
        let mut p = vec![0.0; scenario.dim()];
        match (self, scenario.topology()) {
            (
                QuantumStrategy::Line {
                    states,
                    instruments,
                    povms,
                    ..
                },
                Topology::Line { x, t, s, y, b },
            ) => {
                for xi in 0..x {
                    for ti in 0..t {
                        for si in 0..s {
                            let out = apply_kraus(&instruments[ti][si], &states[xi]);
                            for yi in 0..y {
                                for bi in 0..b {
                                    p[scenario.line_index(xi, ti, yi, si, bi)] = out.trace_product_re(&povms[yi][bi]);
                                }
                            }
                        }
                    }
                }
            }
            (QuantumStrategy::TwoPrep { states0, states1, povms, .. }, Topology::TwoPrep { x0, x1, y, b }) => {
                for a in 0..x0 {
                    for c in 0..x1 {
                        let joint = states0[a].kron(&states1[c]);
                        for yi in 0..y {
                            for bi in 0..b {
                                p[scenario.two_prep_index(a, c, yi, bi)] = joint.trace_product_re(&povms[yi][bi]);
                            }
                        }
                    }
                }
            }
            (
                QuantumStrategy::Entangled {
                    shared,
                    unitaries0,
                    unitaries1,
                    povms,
                    ..
                },
                Topology::TwoPrep { x0, x1, y, b },
            ) => {
                for a in 0..x0 {
                    for c in 0..x1 {
                        let u = unitaries0[a].kron(&unitaries1[c]);
                        let joint = shared.conjugate_by(&u);
                        for yi in 0..y {
                            for bi in 0..b {
                                p[scenario.two_prep_index(a, c, yi, bi)] = joint.trace_product_re(&povms[yi][bi]);
                            }
                        }
                    }
                }
            }
            _ => panic!("strategy topology does not match scenario"),
        }
        p
    }
}

/// `sum_j K_j rho K_j^dagger`
pub fn apply_kraus(kraus: &[CMatrix], rho: &CMatrix) -> CMatrix {
    let mut out = CMatrix::zeros(kraus[0].rows(), kraus[0].rows());
    for k in kraus {
        out = &out + &rho.conjugate_by(k);
    }
    out
}

/// Single-Kraus instrument (a unitary channel when `s` is trivial).
pub fn unitary_instrument(u: CMatrix) -> Vec<Vec<CMatrix>> {
    vec![vec![u]]
}

/// Outcome probabilities `Tr(Phi_{s|t}(rho_x) M_{b|y})` (or the two-preparation
/// analogue), after checking every invariant of the strategy.
pub fn quantum_behavior(strategy: &QuantumStrategy, scenario: &Scenario) -> Result<Behavior> {
    strategy.validate(scenario)?;
    Behavior::new(*scenario, strategy.behavior_values(scenario))
}

/// Behavior of preparations that share an entangled state.
pub fn quantum_behavior_entangled(strategy: &QuantumStrategy, scenario: &Scenario) -> Result<Behavior> {
    if !matches!(strategy, QuantumStrategy::Entangled { .. }) {
        return Err(bad("shared", "strategy has no shared state"));
    }
    quantum_behavior(strategy, scenario)
}

impl Mixture {
    pub fn new(terms: Vec<(f64, Component)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(bad("mixture", "no terms"));
        }
        if terms.iter().any(|(w, _)| !(*w >= 0.0)) {
            return Err(bad("mixture", "weights must be non-negative"));
        }
        let total: f64 = terms.iter().map(|(w, _)| w).sum();
        if (total - 1.0).abs() > EPS_STRATEGY {
            return Err(bad("mixture", format!("weights sum to {total}, not 1")));
        }
        Ok(Self { terms })
    }

    /// Weighted sum of component behaviors. Classical terms may use any
    /// channel dimensions; quantum terms must match the scenario.
    pub fn behavior(&self, scenario: &Scenario) -> Result<Behavior> {
        let mut p = vec![0.0; scenario.dim()];
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let q = match c {
                Component::Quantum(q) => quantum_behavior(q, scenario).map_err(|e| match e {
                    Error::Strategy { object, message } => bad(format!("terms[{i}].{object}"), message),
                    other => other,
                })?,
                Component::Classical(cs) => cs.behavior(&scenario.with_dims(cs.dims())?)?,
            };
            for (a, b) in p.iter_mut().zip(q.values()) {
                *a += w * b;
            }
        }
        Behavior::new(*scenario, p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::states::{pure_state, sigma_x};
    use crate::scenario::validate_behavior;

    fn trivial_line() -> (QuantumStrategy, Scenario) {
        let sc = Scenario::line(3, 2, 1, 2, 2, [2, 2]).unwrap();
        let zero = pure_state(0.0, 0.0);
        let one = CMatrix::basis_projector(2, 1);
        let strat = QuantumStrategy::Line {
            dims: [2, 2],
            states: vec![zero.clone(); 3],
            instruments: vec![unitary_instrument(CMatrix::identity(2)); 2],
            povms: vec![vec![zero, one]; 2],
        };
        (strat, sc)
    }

    #[test]
    fn identity_channel_keeps_basis_state() {
        let (strat, sc) = trivial_line();
        let p = quantum_behavior(&strat, &sc).unwrap();
        for x in 0..3 {
            for t in 0..2 {
                for y in 0..2 {
                    assert!((p.values()[sc.line_index(x, t, y, 0, 0)] - 1.0).abs() < 1e-15);
                }
            }
        }
        assert!(validate_behavior(&sc, &p).unwrap().is_valid());
    }

    #[test]
    fn invariant_errors_name_the_object() {
        let (mut strat, sc) = trivial_line();
        if let QuantumStrategy::Line { instruments, .. } = &mut strat {
            instruments[1] = unitary_instrument(sigma_x().scale_real(0.5));
        }
        match quantum_behavior(&strat, &sc) {
            Err(Error::Strategy { object, .. }) => assert_eq!(object, "instruments[t=1]"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn mixture_with_classical_term() {
        let (strat, sc) = trivial_line();
        let cl = ClassicalStrategy::Line {
            dims: [1, 1],
            prep: vec![0; 3],
            transform: vec![(0, 0); 2],
            measure: vec![1, 1],
        };
        let m = Mixture::new(vec![(0.25, Component::Quantum(strat)), (0.75, Component::Classical(cl))]).unwrap();
        let p = m.behavior(&sc).unwrap();
        assert!((p.values()[sc.line_index(0, 0, 0, 0, 0)] - 0.25).abs() < 1e-15);
        assert!(Mixture::new(vec![]).is_err());
    }
}
