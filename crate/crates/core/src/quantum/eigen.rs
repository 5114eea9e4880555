//! Hermitian eigendecomposition by cyclic complex Jacobi rotations.

use super::cmatrix::{CMatrix, C64, ZERO};

const MAX_SWEEPS: usize = 100;

/// Eigenvalues (ascending) and eigenvectors (columns of `Q`) of a Hermitian
/// matrix, so that `H = Q diag(values) Q^dagger`.
#[derive(Clone, Debug)]
pub struct Eigh {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl Eigh {
    pub fn vector(&self, k: usize) -> Vec<C64> {
        self.vectors.column(k)
    }

    /// Eigenvector of the largest eigenvalue.
    pub fn top(&self) -> (f64, Vec<C64>) {
        let k = self.values.len() - 1;
        (self.values[k], self.vector(k))
    }
}

/// Diagonalizes the Hermitian part of `h`.
pub fn eigh(h: &CMatrix) -> Eigh {
    assert!(h.is_square(), "eigh needs a square matrix");
    let n = h.rows();
    let mut a = h.hermitian_part();
    let mut q = CMatrix::identity(n);
    let scale = a.max_abs().max(f64::MIN_POSITIVE);

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum();
        if off.sqrt() <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for r in p + 1..n {
                rotate(&mut a, &mut q, p, r);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]).then(i.cmp(&j)));
    let values = order.iter().map(|&i| diag[i]).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (new, &old) in order.iter().enumerate() {
        vectors.set_column(new, &q.column(old));
    }
    Eigh { values, vectors }
}

/// One Jacobi rotation zeroing `a[p][q]`: `A <- V^dagger A V`, `Q <- Q V`.
fn rotate(a: &mut CMatrix, qm: &mut CMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r < 1e-300 {
        return;
    }
    let n = a.rows();
    let phase = apq / r; // e^{i phi}
    let (app, aqq) = (a[(p, p)].re, a[(q, q)].re);
    let theta = (aqq - app) / (2.0 * r);
    let t = if theta >= 0.0 {
        1.0 / (theta + (1.0 + theta * theta).sqrt())
    } else {
        -1.0 / (-theta + (1.0 + theta * theta).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let em = phase.conj(); // e^{-i phi}
    let (vpp, vpq, vqp, vqq) = (C64::new(c, 0.0), C64::new(s, 0.0), em * (-s), em * c);

    for k in 0..n {
        let (x, y) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = x * vpp + y * vqp;
        a[(k, q)] = x * vpq + y * vqq;
    }
    for k in 0..n {
        let (x, y) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = vpp.conj() * x + vqp.conj() * y;
        a[(q, k)] = vpq.conj() * x + vqq.conj() * y;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
    for k in 0..n {
        let (x, y) = (qm[(k, p)], qm[(k, q)]);
        qm[(k, p)] = x * vpp + y * vqp;
        qm[(k, q)] = x * vpq + y * vqq;
    }
}

/// `f(H)` for a Hermitian `H` and a real function of its eigenvalues.
pub fn apply_function(h: &CMatrix, f: impl Fn(f64) -> C64) -> CMatrix {
    let e = eigh(h);
    let d: Vec<C64> = e.values.iter().map(|&v| f(v)).collect();
    &(&e.vectors * &CMatrix::diag(&d)) * &e.vectors.adjoint()
}

/// `exp(i t H)`
pub fn exp_i(h: &CMatrix, t: f64) -> CMatrix {
    apply_function(h, |v| C64::from_polar(1.0, t * v))
}

/// Projector onto the eigenspace with eigenvalue `>= 0`.
pub fn positive_projector(h: &CMatrix) -> CMatrix {
    apply_function(h, |v| if v >= 0.0 { C64::new(1.0, 0.0) } else { ZERO })
}

/// Polar factor `M (M^dagger M)^{-1/2}` of a full-column-rank matrix.
pub fn polar_factor(m: &CMatrix) -> Option<CMatrix> {
    let gram = &m.adjoint() * m;
    let e = eigh(&gram);
    if e.values[0] <= 1e-14 * e.values[e.values.len() - 1].max(1e-300) {
        return None;
    }
    let d: Vec<C64> = e.values.iter().map(|&v| C64::new(1.0 / v.sqrt(), 0.0)).collect();
    let inv_sqrt = &(&e.vectors * &CMatrix::diag(&d)) * &e.vectors.adjoint();
    Some(m * &inv_sqrt)
}
