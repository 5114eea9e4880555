//! Seesaw (block coordinate ascent) for witness values of quantum strategies.
//!
//! Each sweep updates, in turn, the preparations, the middle devices
//! (transformations, or local unitaries and the shared state) and the
//! measurements. States take the top eigenvector of their effective operator;
//! binary measurements take the projector onto the non-negative part of the
//! effective difference operator; transformations, local unitaries and
//! multi-outcome bases move by Riemannian ascent. Every block update is kept
//! only if the full objective does not decrease.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::cmatrix::{CMatrix, C64};
use super::eigen::eigh;
use super::states::{haar_isometry, haar_unitary, random_ket};
use super::stiefel::{ascend, basis_ascent, basis_objective};
use super::strategy::QuantumStrategy;
use crate::error::{Error, Result};
use crate::par;
use crate::scenario::{Scenario, Topology, Witness};

/// Largest channel dimension the seesaw accepts.
pub const MAX_DIM: usize = 4;

/// Constraint families for the search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Restriction {
    None,
    /// The given channel (0 or 1) carries a classical message: its states (or,
    /// for the second channel of a line, the measurements) are diagonal.
    ClassicalChannel(usize),
    /// Two-preparation measurements of the one-way local form
    /// `M_b = sum_i |u_i><u_i| (x) Q^{(g(i))}_b` with at most `r` distinct
    /// conditional measurements `Q^{(g)}` on the second system.
    ProductMeasurement(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeesawConfig {
    pub restarts: usize,
    pub max_iters: usize,
    pub tol: f64,
    pub seed: u64,
    pub restriction: Restriction,
    /// Two preparations share an entangled state and apply local unitaries.
    pub shared_entanglement: bool,
}

impl Default for SeesawConfig {
    fn default() -> Self {
        Self {
            restarts: 50,
            max_iters: 500,
            tol: 1e-10,
            seed: 0,
            restriction: Restriction::None,
            shared_entanglement: false,
        }
    }
}

impl SeesawConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::Range("restarts must be at least 1".into()));
        }
        if !(self.tol > 0.0) {
            return Err(Error::Range("tol must be positive".into()));
        }
        match self.restriction {
            Restriction::ClassicalChannel(c) if c > 1 => Err(Error::Range("classical channel must be 0 or 1".into())),
            Restriction::ProductMeasurement(0) => Err(Error::Range("rank budget must be at least 1".into())),
            _ => Ok(()),
        }
    }
}

/// The outcome of a single restart.
#[derive(Clone, Debug)]
pub struct RestartOutcome {
    pub value: f64,
    pub strategy: QuantumStrategy,
    /// Objective after initialization and after every sweep.
    pub trace: Vec<f64>,
    pub converged: bool,
}

#[derive(Clone, Debug)]
pub struct SeesawResult {
    /// `w . p` of the returned strategy.
    pub value: f64,
    pub strategy: QuantumStrategy,
    pub best_restart: usize,
    pub converged: bool,
    pub restart_values: Vec<f64>,
    pub trace: Vec<f64>,
    pub seed: u64,
}

/// Ascent budget inside one block update.
const STIEFEL_STEPS: usize = 10;
const BASIS_ROUNDS: usize = 4;

#[derive(Clone, Debug)]
enum PovmRep {
    /// `M_b = sum_{k : assign[k] = b} u_k u_k^dagger`
    Basis { u: CMatrix, assign: Vec<usize> },
    /// `M_b = sum_i |u_i><u_i| (x) Q^{(class[i])}_b`
    Local {
        u: CMatrix,
        class: Vec<usize>,
        locals: Vec<(CMatrix, Vec<usize>)>,
    },
}

fn basis_elements(u: &CMatrix, assign: &[usize], outcomes: usize) -> Vec<CMatrix> {
    let n = u.rows();
    let mut m = vec![CMatrix::zeros(n, n); outcomes];
    for (k, &b) in assign.iter().enumerate() {
        m[b] = &m[b] + &CMatrix::outer(&u.column(k));
    }
    m
}

impl PovmRep {
    fn elements(&self, outcomes: usize) -> Vec<CMatrix> {
        match self {
            PovmRep::Basis { u, assign } => basis_elements(u, assign, outcomes),
            PovmRep::Local { u, class, locals } => {
                let q: Vec<Vec<CMatrix>> = locals.iter().map(|(l, a)| basis_elements(l, a, outcomes)).collect();
                let n = u.rows() * locals[0].0.rows();
                let mut m = vec![CMatrix::zeros(n, n); outcomes];
                for (i, &g) in class.iter().enumerate() {
                    let p = CMatrix::outer(&u.column(i));
                    for (b, mb) in m.iter_mut().enumerate() {
                        *mb = &*mb + &p.kron(&q[g][b]);
                    }
                }
                m
            }
        }
    }

    fn random(dims: (usize, usize), outcomes: usize, restriction: Restriction, diagonal: bool, rng: &mut ChaCha8Rng) -> Self {
        let (d0, d1) = dims;
        match restriction {
            Restriction::ProductMeasurement(r) => PovmRep::Local {
                u: haar_unitary(d0, rng),
                class: (0..d0).map(|i| i % r).collect(),
                locals: (0..r)
                    .map(|_| (haar_unitary(d1, rng), (0..d1).map(|_| rng.random_range(0..outcomes)).collect()))
                    .collect(),
            },
            _ => {
                let n = d0 * d1;
                let u = if diagonal { CMatrix::identity(n) } else { haar_unitary(n, rng) };
                PovmRep::Basis {
                    u,
                    assign: (0..n).map(|_| rng.random_range(0..outcomes)).collect(),
                }
            }
        }
    }
}

/// Best measurement (within the representation) for effective operators `ops`,
/// starting from the incumbent.
fn improve_povm(rep: &PovmRep, ops: &[CMatrix], diagonal: bool, dims: (usize, usize)) -> PovmRep {
    match rep {
        PovmRep::Basis { u, assign } => {
            if diagonal {
                let n = u.rows();
                let assign = (0..n)
                    .map(|k| {
                        let mut best = 0;
                        for b in 1..ops.len() {
                            if ops[b][(k, k)].re > ops[best][(k, k)].re {
                                best = b;
                            }
                        }
                        best
                    })
                    .collect();
                PovmRep::Basis {
                    u: CMatrix::identity(n),
                    assign,
                }
            } else if ops.len() == 2 {
                let e = eigh(&(&ops[0] - &ops[1]));
                let assign = e.values.iter().map(|&v| if v >= 0.0 { 0 } else { 1 }).collect();
                PovmRep::Basis { u: e.vectors, assign }
            } else {
                let (u, assign, _) = basis_ascent(u.clone(), assign.clone(), ops, BASIS_ROUNDS, STIEFEL_STEPS);
                PovmRep::Basis { u, assign }
            }
        }
        PovmRep::Local { u, class, locals } => {
            let (d0, d1) = dims;
            let projectors: Vec<CMatrix> = (0..d0).map(|i| CMatrix::outer(&u.column(i))).collect();
            let eye1 = CMatrix::identity(d1);
            let eye0 = CMatrix::identity(d0);
            // Conditional measurements given the first basis.
            let mut new_locals = Vec::with_capacity(locals.len());
            for (g, (q, a)) in locals.iter().enumerate() {
                let d: Vec<CMatrix> = ops
                    .iter()
                    .map(|c| {
                        let mut acc = CMatrix::zeros(d1, d1);
                        for (i, p) in projectors.iter().enumerate() {
                            if class[i] == g {
                                acc = &acc + &(&p.kron(&eye1) * c).partial_trace_first(d0, d1);
                            }
                        }
                        acc.hermitian_part()
                    })
                    .collect();
                let cand = improve_povm(&PovmRep::Basis { u: q.clone(), assign: a.clone() }, &d, false, (d1, 1));
                let PovmRep::Basis { u: qn, assign: an } = cand else { unreachable!() };
                let keep_new = basis_objective(&qn, &an, &d) >= basis_objective(q, a, &d);
                new_locals.push(if keep_new { (qn, an) } else { (q.clone(), a.clone()) });
            }
            // First basis and class assignment given the conditional measurements.
            let e: Vec<CMatrix> = new_locals
                .iter()
                .map(|(q, a)| {
                    let qb = basis_elements(q, a, ops.len());
                    let mut acc = CMatrix::zeros(d0, d0);
                    for (c, qm) in ops.iter().zip(&qb) {
                        acc = &acc + &(&eye0.kron(qm) * c).partial_trace_second(d0, d1);
                    }
                    acc.hermitian_part()
                })
                .collect();
            let (un, cn, _) = basis_ascent(u.clone(), class.clone(), &e, BASIS_ROUNDS, STIEFEL_STEPS);
            PovmRep::Local {
                u: un,
                class: cn,
                locals: new_locals,
            }
        }
    }
}

fn top_state(a: &CMatrix, diagonal: bool) -> CMatrix {
    let n = a.rows();
    if diagonal {
        let mut best = 0;
        for k in 1..n {
            if a[(k, k)].re > a[(best, best)].re {
                best = k;
            }
        }
        CMatrix::basis_projector(n, best)
    } else {
        CMatrix::outer(&eigh(a).top().1)
    }
}

fn random_state(n: usize, diagonal: bool, rng: &mut ChaCha8Rng) -> CMatrix {
    if diagonal {
        CMatrix::basis_projector(n, rng.random_range(0..n))
    } else {
        CMatrix::outer(&random_ket(n, rng))
    }
}

/// Problem data shared by all restarts.
struct Problem<'a> {
    scenario: Scenario,
    w: &'a [f64],
    restriction: Restriction,
}

enum Model {
    Line {
        states: Vec<CMatrix>,
        isometries: Vec<CMatrix>,
        povms: Vec<PovmRep>,
    },
    TwoPrep {
        states0: Vec<CMatrix>,
        states1: Vec<CMatrix>,
        povms: Vec<PovmRep>,
    },
    Entangled {
        psi: Vec<C64>,
        u0: Vec<CMatrix>,
        u1: Vec<CMatrix>,
        povms: Vec<PovmRep>,
    },
}

impl Problem<'_> {
    fn dims(&self) -> [usize; 2] {
        self.scenario.channel_dims()
    }

    fn classical(&self, channel: usize) -> bool {
        self.restriction == Restriction::ClassicalChannel(channel)
    }

    fn objective(&self, m: &Model) -> f64 {
        let p = self.to_strategy(m).behavior_values(&self.scenario);
        p.iter().zip(self.w).map(|(a, b)| a * b).sum()
    }

    fn to_strategy(&self, m: &Model) -> QuantumStrategy {
        let dims = self.dims();
        let b = self.scenario.b_size();
        match m {
            Model::Line {
                states,
                isometries,
                povms,
            } => {
                let [_, d1] = dims;
                let s = self.scenario.s_size();
                QuantumStrategy::Line {
                    dims,
                    states: states.clone(),
                    instruments: isometries
                        .iter()
                        .map(|v| (0..s).map(|si| vec![v.row_block(si * d1, d1)]).collect())
                        .collect(),
                    povms: povms.iter().map(|p| p.elements(b)).collect(),
                }
            }
            Model::TwoPrep { states0, states1, povms } => QuantumStrategy::TwoPrep {
                dims,
                states0: states0.clone(),
                states1: states1.clone(),
                povms: povms.iter().map(|p| p.elements(b)).collect(),
            },
            Model::Entangled { psi, u0, u1, povms } => QuantumStrategy::Entangled {
                dims,
                shared: CMatrix::outer(psi),
                unitaries0: u0.clone(),
                unitaries1: u1.clone(),
                povms: povms.iter().map(|p| p.elements(b)).collect(),
            },
        }
    }

    fn init(&self, shared: bool, rng: &mut ChaCha8Rng) -> Model {
        let [d0, d1] = self.dims();
        let b = self.scenario.b_size();
        match self.scenario.topology() {
            Topology::Line { x, t, s, y, .. } => Model::Line {
                states: (0..x).map(|_| random_state(d0, self.classical(0), rng)).collect(),
                isometries: (0..t).map(|_| haar_isometry(s * d1, d0, rng)).collect(),
                povms: (0..y)
                    .map(|_| PovmRep::random((d1, 1), b, Restriction::None, self.classical(1), rng))
                    .collect(),
            },
            Topology::TwoPrep { x0, x1, y, .. } if shared => Model::Entangled {
                psi: random_ket(d0 * d1, rng),
                u0: (0..x0).map(|_| haar_unitary(d0, rng)).collect(),
                u1: (0..x1).map(|_| haar_unitary(d1, rng)).collect(),
                povms: (0..y)
                    .map(|_| PovmRep::random((d0, d1), b, self.restriction, false, rng))
                    .collect(),
            },
            Topology::TwoPrep { x0, x1, y, .. } => Model::TwoPrep {
                states0: (0..x0).map(|_| random_state(d0, self.classical(0), rng)).collect(),
                states1: (0..x1).map(|_| random_state(d1, self.classical(1), rng)).collect(),
                povms: (0..y)
                    .map(|_| PovmRep::random((d0, d1), b, self.restriction, false, rng))
                    .collect(),
            },
        }
    }

    /// Keeps `cand` when it does not lower the objective.
    fn accept(&self, model: &mut Model, cand: Model, current: &mut f64) {
        let v = self.objective(&cand);
        if v >= *current {
            *model = cand;
            *current = v;
        }
    }

    fn sweep(&self, model: &mut Model, current: &mut f64) {
        match model {
            Model::Line { .. } => self.sweep_line(model, current),
            Model::TwoPrep { .. } => self.sweep_two_prep(model, current),
            Model::Entangled { .. } => self.sweep_entangled(model, current),
        }
    }

    fn sweep_line(&self, model: &mut Model, current: &mut f64) {
        let Topology::Line { x, t, s, y, b } = self.scenario.topology() else { unreachable!() };
        let [d0, d1] = self.dims();
        let sc = &self.scenario;
        let w = |xi, ti, yi, si, bi| self.w[sc.line_index(xi, ti, yi, si, bi)];
        let kraus = |isos: &[CMatrix], ti: usize, si: usize| isos[ti].row_block(si * d1, d1);

        // g[x][t][s] = sum_{y,b} w M_{b|y}
        let effective_g = |povms: &[PovmRep]| -> Vec<Vec<Vec<CMatrix>>> {
            let els: Vec<Vec<CMatrix>> = povms.iter().map(|p| p.elements(b)).collect();
            (0..x)
                .map(|xi| {
                    (0..t)
                        .map(|ti| {
                            (0..s)
                                .map(|si| {
                                    let mut acc = CMatrix::zeros(d1, d1);
                                    for (yi, el) in els.iter().enumerate() {
                                        for (bi, m) in el.iter().enumerate() {
                                            acc.add_scaled(m, w(xi, ti, yi, si, bi));
                                        }
                                    }
                                    acc
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect()
        };

        // States.
        if let Model::Line { isometries, povms, .. } = &*model {
            let g = effective_g(povms);
            let new_states = (0..x)
                .map(|xi| {
                    let mut a = CMatrix::zeros(d0, d0);
                    for ti in 0..t {
                        for si in 0..s {
                            let k = kraus(isometries, ti, si);
                            a = &a + &(&(&k.adjoint() * &g[xi][ti][si]) * &k);
                        }
                    }
                    top_state(&a.hermitian_part(), self.classical(0))
                })
                .collect();
            let cand = Model::Line {
                states: new_states,
                isometries: isometries.clone(),
                povms: povms.clone(),
            };
            self.accept(model, cand, current);
        }

        // Transformations.
        if let Model::Line {
            states,
            isometries,
            povms,
        } = &*model
        {
            let g = effective_g(povms);
            let new_isos = (0..t)
                .map(|ti| {
                    let f_ops: Vec<CMatrix> = (0..x)
                        .map(|xi| {
                            let mut f = CMatrix::zeros(s * d1, s * d1);
                            for si in 0..s {
                                for r in 0..d1 {
                                    for c in 0..d1 {
                                        f[(si * d1 + r, si * d1 + c)] = g[xi][ti][si][(r, c)];
                                    }
                                }
                            }
                            f
                        })
                        .collect();
                    let f = |v: &CMatrix| -> f64 {
                        let vd = v.adjoint();
                        (0..x)
                            .map(|xi| (&(v * &states[xi]) * &vd).trace_product_re(&f_ops[xi]))
                            .sum()
                    };
                    let grad = |v: &CMatrix| -> CMatrix {
                        let mut acc = CMatrix::zeros(v.rows(), v.cols());
                        for xi in 0..x {
                            acc = &acc + &(&(&f_ops[xi] * v) * &states[xi]);
                        }
                        acc.scale_real(2.0)
                    };
                    ascend(isometries[ti].clone(), STIEFEL_STEPS, f, grad).point
                })
                .collect();
            let cand = Model::Line {
                states: states.clone(),
                isometries: new_isos,
                povms: povms.clone(),
            };
            self.accept(model, cand, current);
        }

        // Measurements.
        if let Model::Line {
            states,
            isometries,
            povms,
        } = &*model
        {
            let new_povms = (0..y)
                .map(|yi| {
                    let ops: Vec<CMatrix> = (0..b)
                        .map(|bi| {
                            let mut c = CMatrix::zeros(d1, d1);
                            for xi in 0..x {
                                for ti in 0..t {
                                    for si in 0..s {
                                        let wt = w(xi, ti, yi, si, bi);
                                        if wt != 0.0 {
                                            c.add_scaled(&states[xi].conjugate_by(&kraus(isometries, ti, si)), wt);
                                        }
                                    }
                                }
                            }
                            c
                        })
                        .collect();
                    improve_povm(&povms[yi], &ops, self.classical(1), (d1, 1))
                })
                .collect();
            let cand = Model::Line {
                states: states.clone(),
                isometries: isometries.clone(),
                povms: new_povms,
            };
            self.accept(model, cand, current);
        }
    }

    /// `n[a][c] = sum_{y,b} w(a,c,y,b) M_{b|y}`
    fn two_prep_effective(&self, povms: &[PovmRep]) -> Vec<Vec<CMatrix>> {
        let Topology::TwoPrep { x0, x1, b, .. } = self.scenario.topology() else { unreachable!() };
        let [d0, d1] = self.dims();
        let els: Vec<Vec<CMatrix>> = povms.iter().map(|p| p.elements(b)).collect();
        (0..x0)
            .map(|a| {
                (0..x1)
                    .map(|c| {
                        let mut acc = CMatrix::zeros(d0 * d1, d0 * d1);
                        for (yi, el) in els.iter().enumerate() {
                            for (bi, m) in el.iter().enumerate() {
                                acc.add_scaled(m, self.w[self.scenario.two_prep_index(a, c, yi, bi)]);
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    }

    /// Effective measurement operators from the joint states `joint[a][c]`.
    fn two_prep_povm_update(&self, povms: &[PovmRep], joint: &[Vec<CMatrix>]) -> Vec<PovmRep> {
        let Topology::TwoPrep { x0, x1, y, b } = self.scenario.topology() else { unreachable!() };
        let [d0, d1] = self.dims();
        (0..y)
            .map(|yi| {
                let ops: Vec<CMatrix> = (0..b)
                    .map(|bi| {
                        let mut c = CMatrix::zeros(d0 * d1, d0 * d1);
                        for a in 0..x0 {
                            for cc in 0..x1 {
                                let wt = self.w[self.scenario.two_prep_index(a, cc, yi, bi)];
                                if wt != 0.0 {
                                    c.add_scaled(&joint[a][cc], wt);
                                }
                            }
                        }
                        c
                    })
                    .collect();
                improve_povm(&povms[yi], &ops, false, (d0, d1))
            })
            .collect()
    }

    fn sweep_two_prep(&self, model: &mut Model, current: &mut f64) {
        let Topology::TwoPrep { x0, x1, .. } = self.scenario.topology() else { unreachable!() };
        let [d0, d1] = self.dims();
        let eye0 = CMatrix::identity(d0);
        let eye1 = CMatrix::identity(d1);

        if let Model::TwoPrep { states1, povms, .. } = &*model {
            let n = self.two_prep_effective(povms);
            let new0 = (0..x0)
                .map(|a| {
                    let mut acc = CMatrix::zeros(d0 * d1, d0 * d1);
                    for (c, s1) in states1.iter().enumerate() {
                        acc = &acc + &(&eye0.kron(s1) * &n[a][c]);
                    }
                    top_state(&acc.partial_trace_second(d0, d1).hermitian_part(), self.classical(0))
                })
                .collect();
            let cand = Model::TwoPrep {
                states0: new0,
                states1: states1.clone(),
                povms: povms.clone(),
            };
            self.accept(model, cand, current);
        }
        if let Model::TwoPrep { states0, povms, .. } = &*model {
            let n = self.two_prep_effective(povms);
            let new1 = (0..x1)
                .map(|c| {
                    let mut acc = CMatrix::zeros(d0 * d1, d0 * d1);
                    for (a, s0) in states0.iter().enumerate() {
                        acc = &acc + &(&s0.kron(&eye1) * &n[a][c]);
                    }
                    top_state(&acc.partial_trace_first(d0, d1).hermitian_part(), self.classical(1))
                })
                .collect();
            let cand = Model::TwoPrep {
                states0: states0.clone(),
                states1: new1,
                povms: povms.clone(),
            };
            self.accept(model, cand, current);
        }
        if let Model::TwoPrep { states0, states1, povms } = &*model {
            let joint: Vec<Vec<CMatrix>> = states0
                .iter()
                .map(|s0| states1.iter().map(|s1| s0.kron(s1)).collect())
                .collect();
            let cand = Model::TwoPrep {
                states0: states0.clone(),
                states1: states1.clone(),
                povms: self.two_prep_povm_update(povms, &joint),
            };
            self.accept(model, cand, current);
        }
    }

    fn sweep_entangled(&self, model: &mut Model, current: &mut f64) {
        let Topology::TwoPrep { x0, x1, .. } = self.scenario.topology() else { unreachable!() };
        let [d0, d1] = self.dims();
        let eye0 = CMatrix::identity(d0);
        let eye1 = CMatrix::identity(d1);

        // Shared state.
        if let Model::Entangled { u0, u1, povms, .. } = &*model {
            let n = self.two_prep_effective(povms);
            let mut a = CMatrix::zeros(d0 * d1, d0 * d1);
            for (ai, ua) in u0.iter().enumerate() {
                for (ci, vc) in u1.iter().enumerate() {
                    let wm = ua.kron(vc);
                    a = &a + &(&(&wm.adjoint() * &n[ai][ci]) * &wm);
                }
            }
            let cand = Model::Entangled {
                psi: eigh(&a).top().1,
                u0: u0.clone(),
                u1: u1.clone(),
                povms: povms.clone(),
            };
            self.accept(model, cand, current);
        }
        // Local unitaries of the first preparation.
        if let Model::Entangled { psi, u0, u1, povms } = &*model {
            let n = self.two_prep_effective(povms);
            let rho = CMatrix::outer(psi);
            let a_c: Vec<CMatrix> = u1.iter().map(|v| rho.conjugate_by(&eye0.kron(v))).collect();
            let new_u0 = (0..x0)
                .map(|ai| {
                    let f = |u: &CMatrix| -> f64 {
                        let ui = u.kron(&eye1);
                        (0..x1).map(|c| a_c[c].conjugate_by(&ui).trace_product_re(&n[ai][c])).sum()
                    };
                    let grad = |u: &CMatrix| -> CMatrix {
                        let ui = u.kron(&eye1);
                        let mut acc = CMatrix::zeros(d0 * d1, d0 * d1);
                        for c in 0..x1 {
                            acc = &acc + &(&(&n[ai][c] * &ui) * &a_c[c]);
                        }
                        acc.partial_trace_second(d0, d1).scale_real(2.0)
                    };
                    ascend(u0[ai].clone(), STIEFEL_STEPS, f, grad).point
                })
                .collect();
            let cand = Model::Entangled {
                psi: psi.clone(),
                u0: new_u0,
                u1: u1.clone(),
                povms: povms.clone(),
            };
            self.accept(model, cand, current);
        }
        // Local unitaries of the second preparation.
        if let Model::Entangled { psi, u0, u1, povms } = &*model {
            let n = self.two_prep_effective(povms);
            let rho = CMatrix::outer(psi);
            let b_a: Vec<CMatrix> = u0.iter().map(|u| rho.conjugate_by(&u.kron(&eye1))).collect();
            let new_u1 = (0..x1)
                .map(|ci| {
                    let f = |v: &CMatrix| -> f64 {
                        let iv = eye0.kron(v);
                        (0..x0).map(|a| b_a[a].conjugate_by(&iv).trace_product_re(&n[a][ci])).sum()
                    };
                    let grad = |v: &CMatrix| -> CMatrix {
                        let iv = eye0.kron(v);
                        let mut acc = CMatrix::zeros(d0 * d1, d0 * d1);
                        for a in 0..x0 {
                            acc = &acc + &(&(&n[a][ci] * &iv) * &b_a[a]);
                        }
                        acc.partial_trace_first(d0, d1).scale_real(2.0)
                    };
                    ascend(u1[ci].clone(), STIEFEL_STEPS, f, grad).point
                })
                .collect();
            let cand = Model::Entangled {
                psi: psi.clone(),
                u0: u0.clone(),
                u1: new_u1,
                povms: povms.clone(),
            };
            self.accept(model, cand, current);
        }
        // Measurements.
        if let Model::Entangled { psi, u0, u1, povms } = &*model {
            let rho = CMatrix::outer(psi);
            let joint: Vec<Vec<CMatrix>> = u0
                .iter()
                .map(|u| u1.iter().map(|v| rho.conjugate_by(&u.kron(v))).collect())
                .collect();
            let cand = Model::Entangled {
                psi: psi.clone(),
                u0: u0.clone(),
                u1: u1.clone(),
                povms: self.two_prep_povm_update(povms, &joint),
            };
            self.accept(model, cand, current);
        }
    }
}

fn check_request(scenario: &Scenario, dims: [usize; 2], config: &SeesawConfig) -> Result<()> {
    config.validate()?;
    if dims.iter().any(|&d| d > MAX_DIM) {
        return Err(Error::Unsupported(format!("seesaw supports channel dimensions up to {MAX_DIM}")));
    }
    match scenario.topology() {
        Topology::Line { s, .. } => {
            if config.shared_entanglement {
                return Err(Error::Unsupported("shared entanglement needs two preparations".into()));
            }
            if matches!(config.restriction, Restriction::ProductMeasurement(_)) {
                return Err(Error::Unsupported("product measurements need two preparations".into()));
            }
            if s * dims[1] < dims[0] {
                return Err(Error::Unsupported(
                    "transformations are searched as isometries and need |s| * d1 >= d0".into(),
                ));
            }
        }
        Topology::TwoPrep { .. } => {
            if config.shared_entanglement && matches!(config.restriction, Restriction::ClassicalChannel(_)) {
                return Err(Error::Unsupported("classical channels with shared entanglement".into()));
            }
        }
    }
    Ok(())
}

/// Runs one restart with its own random stream `(seed, restart)`.
pub fn run_restart(
    w: &Witness,
    scenario: &Scenario,
    dims: [usize; 2],
    config: &SeesawConfig,
    restart: usize,
) -> Result<RestartOutcome> {
    let scenario = scenario.with_dims(dims)?;
    check_request(&scenario, dims, config)?;
    Ok(restart_inner(w, &scenario, config, restart))
}

fn restart_inner(w: &Witness, scenario: &Scenario, config: &SeesawConfig, restart: usize) -> RestartOutcome {
    let problem = Problem {
        scenario: *scenario,
        w: w.float_coefficients(),
        restriction: config.restriction,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(restart as u64);
    let mut model = problem.init(config.shared_entanglement, &mut rng);
    let mut value = problem.objective(&model);
    let mut trace = vec![value];
    let mut converged = false;
    for _ in 0..config.max_iters {
        let before = value;
        problem.sweep(&mut model, &mut value);
        trace.push(value);
        if value - before < config.tol {
            converged = true;
            break;
        }
    }
    let strategy = problem.to_strategy(&model);
    let p = strategy.behavior_values(scenario);
    let value = p.iter().zip(w.float_coefficients()).map(|(a, b)| a * b).sum();
    RestartOutcome {
        value,
        strategy,
        trace,
        converged,
    }
}

/// Best witness value found over all restarts, with the strategy reaching it.
///
/// Restarts are independent and may run in parallel; the winner is the highest
/// value, lowest restart index on ties, so results do not depend on scheduling.
pub fn seesaw(w: &Witness, scenario: &Scenario, dims: [usize; 2], config: &SeesawConfig) -> Result<SeesawResult> {
    if !w.scenario().same_alphabets(scenario) {
        return Err(Error::Structure("witness does not match the scenario".into()));
    }
    let scenario = scenario.with_dims(dims)?;
    check_request(&scenario, dims, config)?;
    let outcomes = par::map_range(config.restarts, |r| restart_inner(w, &scenario, config, r));
    let best = par::first_best(&outcomes, |a, b| a.value > b.value).expect("at least one restart");
    let restart_values = outcomes.iter().map(|o| o.value).collect();
    let o = outcomes.into_iter().nth(best).expect("index in range");
    Ok(SeesawResult {
        value: o.value,
        strategy: o.strategy,
        best_restart: best,
        converged: o.converged,
        restart_values,
        trace: o.trace,
        seed: config.seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::strategy::quantum_behavior;
    use crate::rational::int;
    use crate::scenario::BoundKind;

    fn witness_k() -> (Witness, Scenario) {
        let sc = Scenario::two_prep(3, 3, 1, 2, [2, 2]).unwrap();
        let m = [[-1, 1, 1], [-1, 0, -1], [1, 1, -1]];
        let rows: Vec<Vec<_>> = m.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect();
        (Witness::from_matrix(sc, &rows, int(2), BoundKind::Classical).unwrap(), sc)
    }

    #[test]
    fn traces_are_monotone_and_value_is_consistent() {
        let (w, sc) = witness_k();
        let cfg = SeesawConfig {
            restarts: 4,
            max_iters: 50,
            ..Default::default()
        };
        let r = seesaw(&w, &sc, [2, 2], &cfg).unwrap();
        assert!(r.trace.windows(2).all(|p| p[1] >= p[0] - 1e-12));
        let p = quantum_behavior(&r.strategy, &sc).unwrap();
        assert!((w.value(&p) - r.value).abs() < 1e-12);
        assert!(r.value > 2.0);
    }

    #[test]
    fn same_seed_same_result() {
        let (w, sc) = witness_k();
        let cfg = SeesawConfig {
            restarts: 3,
            max_iters: 20,
            seed: 9,
            ..Default::default()
        };
        let a = seesaw(&w, &sc, [2, 2], &cfg).unwrap();
        let b = seesaw(&w, &sc, [2, 2], &cfg).unwrap();
        assert_eq!(a.restart_values, b.restart_values);
    }

    #[test]
    fn config_errors() {
        let (w, sc) = witness_k();
        let bad = SeesawConfig {
            restarts: 0,
            ..Default::default()
        };
        assert!(matches!(seesaw(&w, &sc, [2, 2], &bad), Err(Error::Range(_))));
        assert!(matches!(
            seesaw(&w, &sc, [5, 2], &SeesawConfig::default()),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn product_measurement_stays_separable_and_valid() {
        let (w, sc) = witness_k();
        let cfg = SeesawConfig {
            restarts: 2,
            max_iters: 30,
            restriction: Restriction::ProductMeasurement(2),
            ..Default::default()
        };
        let r = seesaw(&w, &sc, [2, 2], &cfg).unwrap();
        quantum_behavior(&r.strategy, &sc).unwrap();
        assert!(r.value <= 2.5 + 1e-9);
    }
}
