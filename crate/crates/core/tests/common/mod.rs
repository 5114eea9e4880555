//! Random instances shared by the integration suites.
#![allow(dead_code)]

use dimwit::classical::ClassicalStrategy;
use dimwit::quantum::cmatrix::{CMatrix, C64};
use dimwit::quantum::states::{haar_isometry, haar_unitary};
use dimwit::quantum::QuantumStrategy;
use dimwit::rational::int;
use dimwit::{BoundKind, Scenario, Topology, Witness};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rows: usize, cols: usize, rng: &mut impl Rng) -> CMatrix {
    let data = (0..rows * cols)
        .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    CMatrix::from_vec(rows, cols, data)
}

pub fn random_hermitian(d: usize, rng: &mut impl Rng) -> CMatrix {
    gaussian(d, d, rng).hermitian_part()
}

/// Full-rank mixed state `G G^dagger / Tr`.
pub fn random_density(d: usize, rng: &mut impl Rng) -> CMatrix {
    let g = gaussian(d, d, rng);
    let m = &g * &g.adjoint();
    let t = m.trace().re;
    m.scale_real(1.0 / t)
}

/// `M_b = V_b^dagger V_b` for the row blocks of a random isometry.
pub fn random_povm(d: usize, outcomes: usize, rng: &mut impl Rng) -> Vec<CMatrix> {
    let v = haar_isometry(outcomes * d, d, rng);
    (0..outcomes)
        .map(|b| {
            let blk = v.row_block(b * d, d);
            (&blk.adjoint() * &blk).hermitian_part()
        })
        .collect()
}

/// Instruments `[t][s][j]` with `d0` Kraus operators per outcome.
pub fn random_instruments(t: usize, s: usize, d0: usize, d1: usize, rng: &mut impl Rng) -> Vec<Vec<Vec<CMatrix>>> {
    (0..t)
        .map(|_| {
            let v = haar_isometry(s * d0 * d1, d0, rng);
            (0..s)
                .map(|si| (0..d0).map(|j| v.row_block((si * d0 + j) * d1, d1)).collect())
                .collect()
        })
        .collect()
}

pub fn random_scenario(rng: &mut impl Rng, max_dim: usize) -> Scenario {
    let dims = [rng.random_range(1..=max_dim), rng.random_range(1..=max_dim)];
    if rng.random_bool(0.5) {
        Scenario::line(
            rng.random_range(1..=3),
            rng.random_range(1..=2),
            rng.random_range(1..=2),
            rng.random_range(1..=2),
            rng.random_range(2..=3),
            dims,
        )
        .unwrap()
    } else {
        Scenario::two_prep(
            rng.random_range(1..=3),
            rng.random_range(1..=3),
            rng.random_range(1..=2),
            rng.random_range(2..=3),
            dims,
        )
        .unwrap()
    }
}

pub fn random_quantum_strategy(sc: &Scenario, rng: &mut impl Rng, entangled: bool) -> QuantumStrategy {
    let [d0, d1] = sc.channel_dims();
    let b = sc.b_size();
    match sc.topology() {
        Topology::Line { x, t, s, y, .. } => QuantumStrategy::Line {
            dims: [d0, d1],
            states: (0..x).map(|_| random_density(d0, rng)).collect(),
            instruments: random_instruments(t, s, d0, d1, rng),
            povms: (0..y).map(|_| random_povm(d1, b, rng)).collect(),
        },
        Topology::TwoPrep { x0, x1, y, .. } if entangled => QuantumStrategy::Entangled {
            dims: [d0, d1],
            shared: random_density(d0 * d1, rng),
            unitaries0: (0..x0).map(|_| haar_unitary(d0, rng)).collect(),
            unitaries1: (0..x1).map(|_| haar_unitary(d1, rng)).collect(),
            povms: (0..y).map(|_| random_povm(d0 * d1, b, rng)).collect(),
        },
        Topology::TwoPrep { x0, x1, y, .. } => QuantumStrategy::TwoPrep {
            dims: [d0, d1],
            states0: (0..x0).map(|_| random_density(d0, rng)).collect(),
            states1: (0..x1).map(|_| random_density(d1, rng)).collect(),
            povms: (0..y).map(|_| random_povm(d0 * d1, b, rng)).collect(),
        },
    }
}

pub fn random_classical_strategy(sc: &Scenario, rng: &mut impl Rng) -> ClassicalStrategy {
    let [d0, d1] = sc.channel_dims();
    let b = sc.b_size();
    match sc.topology() {
        Topology::Line { x, t, s, y, .. } => ClassicalStrategy::Line {
            dims: [d0, d1],
            prep: (0..x).map(|_| rng.random_range(0..d0)).collect(),
            transform: (0..t * d0).map(|_| (rng.random_range(0..s), rng.random_range(0..d1))).collect(),
            measure: (0..y * d1).map(|_| rng.random_range(0..b)).collect(),
        },
        Topology::TwoPrep { x0, x1, y, .. } => ClassicalStrategy::TwoPrep {
            dims: [d0, d1],
            prep0: (0..x0).map(|_| rng.random_range(0..d0)).collect(),
            prep1: (0..x1).map(|_| rng.random_range(0..d1)).collect(),
            measure: (0..y * d0 * d1).map(|_| rng.random_range(0..b)).collect(),
        },
    }
}

/// Integer witness with entries in `-range..=range`; the bound is a placeholder.
pub fn random_witness(sc: &Scenario, range: i64, rng: &mut impl Rng) -> Witness {
    let c = (0..sc.dim()).map(|_| int(rng.random_range(-range..=range))).collect();
    Witness::new(*sc, c, int(0), BoundKind::Unset).unwrap()
}

fn perm(n: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Applies a random relabeling of inputs and outputs (outputs conditioned on
/// the matching input, and a device swap for symmetric two-preparation
/// scenarios).
pub fn random_relabeling(w: &Witness, rng: &mut impl Rng) -> Witness {
    let sc = *w.scenario();
    let c = w.coefficients();
    let mut out = vec![int(0); sc.dim()];
    match sc.topology() {
        Topology::Line { x, t, s, y, b } => {
            let (px, pt, py) = (perm(x, rng), perm(t, rng), perm(y, rng));
            let ps: Vec<Vec<usize>> = (0..t).map(|_| perm(s, rng)).collect();
            let pb: Vec<Vec<usize>> = (0..y).map(|_| perm(b, rng)).collect();
            for xi in 0..x {
                for ti in 0..t {
                    for yi in 0..y {
                        for si in 0..s {
                            for bi in 0..b {
                                let j = sc.line_index(px[xi], pt[ti], py[yi], ps[ti][si], pb[yi][bi]);
                                out[j] = c[sc.line_index(xi, ti, yi, si, bi)].clone();
                            }
                        }
                    }
                }
            }
        }
        Topology::TwoPrep { x0, x1, y, b } => {
            let [d0, d1] = sc.channel_dims();
            let swap = x0 == x1 && d0 == d1 && rng.random_bool(0.5);
            let (p0, p1, py) = (perm(x0, rng), perm(x1, rng), perm(y, rng));
            let pb: Vec<Vec<usize>> = (0..y).map(|_| perm(b, rng)).collect();
            for a in 0..x0 {
                for cc in 0..x1 {
                    for yi in 0..y {
                        for bi in 0..b {
                            let (na, nc) = if swap { (p1[cc], p0[a]) } else { (p0[a], p1[cc]) };
                            let j = sc.two_prep_index(na, nc, py[yi], pb[yi][bi]);
                            out[j] = c[sc.two_prep_index(a, cc, yi, bi)].clone();
                        }
                    }
                }
            }
        }
    }
    Witness::new(sc, out, w.bound().clone(), w.bound_kind()).unwrap()
}
