//! Scenario, witness and reference-strategy data for the built-in cases.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};

use super::{CaseEntry, Expected, ExpectedBound, Provenance, SeesawTarget};
use crate::quantum::cmatrix::{CMatrix, C64};
use crate::quantum::seesaw::Restriction;
use crate::quantum::states::{hadamard, ket, ket_kron, power, pure_state, sigma_x, sigma_z, singlet};
use crate::quantum::strategy::QuantumStrategy;
use crate::rational::{frac, int, Rational};
use crate::scenario::{BoundKind, Scenario, Witness};

/// Appendix witnesses on `p(0 | x0, x1)` with their printed bits bounds.
pub(crate) const APPENDIX: [([[i64; 3]; 3], i64); 13] = [
    ([[-1, 1, 1], [-1, 0, -1], [1, 1, -1]], 2),
    ([[2, -1, 1], [2, 0, -2], [0, -1, 1]], 4),
    ([[1, -1, 1], [1, -2, -3], [0, 2, -2]], 2),
    ([[1, 1, 0], [1, -1, 0], [0, 1, -1]], 3),
    ([[2, 2, 0], [1, -2, 0], [-1, 1, -1]], 4),
    ([[1, -2, 3], [2, 0, -2], [-1, 2, 1]], 6),
    ([[1, -1, 2], [1, 0, -1], [-1, 1, 1]], 4),
    ([[1, -1, 2], [2, 0, -2], [-1, 1, 0]], 4),
    ([[2, -2, 4], [4, -1, -5], [-2, 1, -1]], 6),
    ([[1, -1, 2], [2, -3, -5], [-1, 3, -3]], 3),
    ([[2, 2, -1], [1, -1, 0], [-1, 1, 0]], 4),
    ([[1, -2, 3], [3, 1, -2], [-2, 3, 1]], 8),
    ([[1, -1, 1], [1, 0, -1], [0, 0, 0]], 2),
];

fn published(d: usize, value: Rational) -> ExpectedBound {
    ExpectedBound {
        d,
        value,
        provenance: Provenance::Published,
    }
}

fn expect(value: f64, tol: f64) -> Expected {
    Expected {
        value,
        tol,
        provenance: Provenance::Published,
    }
}

fn binary_povm(m0: CMatrix) -> Vec<CMatrix> {
    let m1 = &CMatrix::identity(m0.rows()) - &m0;
    vec![m0, m1]
}

/// `exp(i angle sigma_z)`
fn z_rotation(angle: f64) -> CMatrix {
    CMatrix::diag(&[C64::from_polar(1.0, angle), C64::from_polar(1.0, -angle)])
}

fn line_reference(states: Vec<CMatrix>, rotation: CMatrix, m0: Vec<CMatrix>) -> QuantumStrategy {
    QuantumStrategy::Line {
        dims: [2, 2],
        states,
        instruments: vec![vec![vec![CMatrix::identity(2)]], vec![vec![rotation]]],
        povms: m0.into_iter().map(binary_povm).collect(),
    }
}

pub(crate) fn wj_scenario() -> Scenario {
    Scenario::line(3, 2, 1, 2, 2, [2, 2]).expect("valid scenario")
}

/// `p011 + p101 + p110 + p200 - p000 - p001 - p010 - p211`, `p_xty = p(0|x,t,y)`.
pub fn wj_witness() -> Witness {
    let sc = wj_scenario();
    let mut c = vec![int(0); sc.dim()];
    for (x, t, y) in [(0, 1, 1), (1, 0, 1), (1, 1, 0), (2, 0, 0)] {
        c[sc.line_index(x, t, y, 0, 0)] = int(1);
    }
    for (x, t, y) in [(0, 0, 0), (0, 0, 1), (0, 1, 0), (2, 1, 1)] {
        c[sc.line_index(x, t, y, 0, 0)] = int(-1);
    }
    Witness::new(sc, c, int(2), BoundKind::Classical).expect("witness fits")
}

fn wj_reference() -> QuantumStrategy {
    let states = vec![
        pure_state(FRAC_PI_2, 0.0),
        pure_state(FRAC_PI_2, 3.0 * FRAC_PI_4),
        pure_state(FRAC_PI_2, -3.0 * FRAC_PI_4),
    ];
    let m0 = vec![pure_state(FRAC_PI_2, -3.0 * FRAC_PI_4), pure_state(FRAC_PI_2, 3.0 * FRAC_PI_4)];
    line_reference(states, z_rotation(-FRAC_PI_4), m0)
}

/// Average success of `b = a_y` with `x = 2 a0 + a1`, `t = a0 xor a2`.
pub fn drac_witness() -> Witness {
    let sc = Scenario::line(4, 2, 1, 3, 2, [2, 2]).expect("valid scenario");
    let mut c = vec![int(0); sc.dim()];
    for a in 0..8usize {
        let bits = [a >> 2 & 1, a >> 1 & 1, a & 1];
        for y in 0..3 {
            let i = sc.line_index(2 * bits[0] + bits[1], bits[0] ^ bits[2], y, 0, bits[y]);
            c[i] += frac(1, 24);
        }
    }
    Witness::new(sc, c, frac(2, 3), BoundKind::Classical).expect("witness fits")
}

fn drac_reference() -> QuantumStrategy {
    let theta0 = (1.0 / 3f64.sqrt()).acos();
    let states = (0..4)
        .map(|x| {
            let (a0, a1) = ((x >> 1) as f64, (x & 1) as f64);
            let sign = if x & 1 == 1 { -1.0 } else { 1.0 };
            pure_state(sign * theta0 + PI * a1, FRAC_PI_4 + PI * a0)
        })
        .collect();
    let m0 = vec![pure_state(FRAC_PI_2, 0.0), pure_state(0.0, 0.0), pure_state(FRAC_PI_2, FRAC_PI_2)];
    line_reference(states, z_rotation(FRAC_PI_4), m0)
}

pub fn appendix_witness(k: usize) -> Witness {
    let (m, bound) = APPENDIX[k - 1];
    let sc = Scenario::two_prep(3, 3, 1, 2, [2, 2]).expect("valid scenario");
    let rows: Vec<Vec<Rational>> = m.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect();
    Witness::from_matrix(sc, &rows, int(bound), BoundKind::Classical).expect("witness fits")
}

fn wk_reference() -> QuantumStrategy {
    let alpha = 2.0 * (3.0f64 / 8.0).sqrt().acos();
    let gamma = (0.1f64).sqrt().acos();
    let states = vec![pure_state(-alpha, 0.0), pure_state(0.0, 0.0), pure_state(alpha, 0.0)];
    let r = |v: f64| C64::new(v, 0.0);
    let phi_minus = [r(FRAC_1_SQRT_2), r(0.0), r(0.0), r(-FRAC_1_SQRT_2)];
    let xi = [r(0.0), r(gamma.cos()), r(-gamma.sin()), r(0.0)];
    let m0 = &CMatrix::outer(&phi_minus) + &CMatrix::outer(&xi);
    QuantumStrategy::TwoPrep {
        dims: [2, 2],
        states0: states.clone(),
        states1: states,
        povms: vec![binary_povm(m0)],
    }
}

/// `+1/32` on fully correct and `-1/32` on fully wrong output pairs, with
/// `x0 = 2 u0 + u1`, `x1 = 2 v0 + v1`, `b = 2 b0 + b1`.
pub fn wd_witness() -> Witness {
    let sc = Scenario::two_prep(4, 4, 2, 4, [2, 2]).expect("valid scenario");
    let mut c = vec![int(0); sc.dim()];
    for bits in 0..32usize {
        let [u0, u1, v0, v1, y] = [4, 3, 2, 1, 0].map(|k| bits >> k & 1);
        let t0 = u0 ^ if y == 1 { v1 } else { v0 };
        let t1 = u1 ^ if y == 1 { v0 } else { v1 };
        let (x0, x1) = (2 * u0 + u1, 2 * v0 + v1);
        c[sc.two_prep_index(x0, x1, y, 2 * t0 + t1)] += frac(1, 32);
        c[sc.two_prep_index(x0, x1, y, 2 * (1 - t0) + (1 - t1))] -= frac(1, 32);
    }
    Witness::new(sc, c, frac(1, 4), BoundKind::Classical).expect("witness fits")
}

/// `sigma_x^{k1} sigma_z^{k0}` for `k = 2 k0 + k1`.
pub fn pauli_encoding(k: usize) -> CMatrix {
    &power(&sigma_x(), k & 1) * &power(&sigma_z(), k >> 1)
}

/// Projectors onto `(sigma_x^{b1} sigma_z^{b0} (x) H^y) |psi->`, indexed `[y][2 b0 + b1]`.
pub fn bell_povms() -> Vec<Vec<CMatrix>> {
    let psi = singlet();
    (0..2)
        .map(|y| {
            (0..4)
                .map(|b| {
                    let op = pauli_encoding(b).kron(&power(&hadamard(), y));
                    CMatrix::outer(&op.mul_vec(&psi))
                })
                .collect()
        })
        .collect()
}

/// First preparation half `psi(pi/4, 0)`, second `psi(-3 pi/4, 0)`.
pub fn wd_product_kets() -> (Vec<C64>, Vec<C64>) {
    (ket(FRAC_PI_4, 0.0), ket(-3.0 * FRAC_PI_4, 0.0))
}

fn wd_reference() -> QuantumStrategy {
    let (h0, h1) = wd_product_kets();
    let prep = |h: &[C64]| -> Vec<CMatrix> {
        (0..4)
            .map(|k| CMatrix::outer(&pauli_encoding(k).mul_vec(h)))
            .collect()
    };
    QuantumStrategy::TwoPrep {
        dims: [2, 2],
        states0: prep(&h0),
        states1: prep(&h1),
        povms: bell_povms(),
    }
}

/// The same encodings acting on a shared `shared` state.
pub fn wd_shared_reference(shared: CMatrix) -> QuantumStrategy {
    let locals: Vec<CMatrix> = (0..4).map(pauli_encoding).collect();
    QuantumStrategy::Entangled {
        dims: [2, 2],
        shared,
        unitaries0: locals.clone(),
        unitaries1: locals,
        povms: bell_povms(),
    }
}

/// Product shared state `|h+><h+| (x) |h-><h-|` of the unentangled strategy.
pub fn wd_product_shared() -> CMatrix {
    let (h0, h1) = wd_product_kets();
    CMatrix::outer(&ket_kron(&h0, &h1))
}

fn hard(dims: [usize; 2], value: f64) -> SeesawTarget {
    SeesawTarget {
        label: format!("seesaw d=({},{})", dims[0], dims[1]),
        dims,
        restriction: Restriction::None,
        shared_entanglement: false,
        value,
        tol: 1e-4,
        soft: false,
        provenance: Provenance::Published,
    }
}

fn soft(label: &str, dims: [usize; 2], restriction: Restriction, value: f64) -> SeesawTarget {
    SeesawTarget {
        label: label.into(),
        dims,
        restriction,
        shared_entanglement: false,
        value,
        tol: 5e-3,
        soft: true,
        provenance: Provenance::Published,
    }
}

pub(crate) fn build(name: &str) -> Option<CaseEntry> {
    let entry = match name {
        "WJ" => CaseEntry {
            name: name.into(),
            title: "three devices in a line, |x| = 3, |t| = |y| = |b| = 2",
            witness: wj_witness(),
            classical_bounds: vec![published(2, int(2)), published(3, int(4))],
            facet_at: Some(2),
            reference: Some(wj_reference()),
            reference_value: Some(expect(2.0 + SQRT_2, 1e-9)),
            noise: Some(expect(SQRT_2 - 1.0, 1e-9)),
            noise_bound_d: 2,
            seesaw: vec![hard([2, 2], 2.0 + SQRT_2)],
            ordering: false,
        },
        "DRAC" => CaseEntry {
            name: name.into(),
            title: "distributed 3 -> 1 random access code",
            witness: drac_witness(),
            classical_bounds: vec![published(2, frac(2, 3)), published(3, frac(19, 24)), published(8, int(1))],
            facet_at: None,
            reference: Some(drac_reference()),
            reference_value: Some(expect((1.0 + 1.0 / 3f64.sqrt()) / 2.0, 1e-9)),
            noise: Some(expect(1.0 - 1.0 / 3f64.sqrt(), 1e-9)),
            noise_bound_d: 2,
            seesaw: vec![hard([2, 2], (1.0 + 1.0 / 3f64.sqrt()) / 2.0)],
            ordering: false,
        },
        "WK" => CaseEntry {
            name: name.into(),
            title: "two preparations with ternary inputs, fixed binary measurement",
            witness: appendix_witness(1),
            classical_bounds: vec![published(2, int(2))],
            facet_at: Some(2),
            reference: Some(wk_reference()),
            reference_value: Some(expect(2.5, 1e-9)),
            noise: Some(expect(0.2, 1e-9)),
            noise_bound_d: 2,
            seesaw: vec![
                hard([2, 2], 2.5),
                soft("seesaw bit+qubit", [2, 2], Restriction::ClassicalChannel(0), 2.337),
            ],
            ordering: false,
        },
        "WD" => CaseEntry {
            name: name.into(),
            title: "nonlocal dense coding",
            witness: wd_witness(),
            classical_bounds: vec![published(2, frac(1, 4)), published(3, frac(9, 16)), published(4, int(1))],
            facet_at: None,
            reference: Some(wd_reference()),
            reference_value: Some(expect(0.5, 1e-9)),
            noise: Some(expect(0.5, 1e-9)),
            noise_bound_d: 2,
            seesaw: vec![hard([2, 2], 0.5), soft("seesaw d=(3,3)", [3, 3], Restriction::None, 0.598)],
            ordering: true,
        },
        "WD_ENT" => CaseEntry {
            name: name.into(),
            title: "nonlocal dense coding with a shared singlet",
            witness: wd_witness(),
            classical_bounds: vec![published(2, frac(1, 4))],
            facet_at: None,
            reference: Some(wd_shared_reference(CMatrix::outer(&singlet()))),
            reference_value: Some(expect(1.0, 1e-9)),
            noise: Some(expect(0.75, 1e-9)),
            noise_bound_d: 2,
            seesaw: vec![SeesawTarget {
                shared_entanglement: true,
                label: "seesaw shared entanglement d=(2,2)".into(),
                ..hard([2, 2], 1.0)
            }],
            ordering: false,
        },
        _ => {
            let k: usize = name.strip_prefix("APPENDIX_A_")?.parse().ok()?;
            if !(1..=13).contains(&k) || name != format!("APPENDIX_A_{k}") {
                return None;
            }
            CaseEntry {
                name: name.into(),
                title: "facet class of the two-preparation bits polytope",
                witness: appendix_witness(k),
                classical_bounds: vec![published(2, int(APPENDIX[k - 1].1))],
                facet_at: Some(2),
                reference: None,
                reference_value: None,
                noise: None,
                noise_bound_d: 2,
                seesaw: vec![],
                ordering: false,
            }
        }
    };
    Some(entry)
}
