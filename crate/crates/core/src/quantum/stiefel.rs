//! Riemannian gradient ascent over isometries (`V^dagger V = I`).
//!
//! Tangent vectors at `V` are `xi = G - V sym(V^dagger G)` for a Euclidean
//! gradient `G`; steps are retracted with the polar factor and chosen by
//! Armijo backtracking followed by halving while the value improves. A step is only taken when it increases the objective.

use super::cmatrix::{CMatrix, C64};
use super::eigen::polar_factor;

const ARMIJO: f64 = 1e-4;
const MAX_BACKTRACKS: usize = 40;

/// Projection of a Euclidean gradient onto the tangent space at `v`.
pub fn tangent(v: &CMatrix, g: &CMatrix) -> CMatrix {
    let vg = &v.adjoint() * g;
    g - &(v * &vg.hermitian_part())
}

/// Polar retraction of `v + alpha * xi`.
pub fn retract(v: &CMatrix, xi: &CMatrix, alpha: f64) -> Option<CMatrix> {
    let mut m = v.clone();
    m.add_scaled(xi, alpha);
    polar_factor(&m)
}

/// Result of [`ascend`].
pub struct Ascent {
    pub point: CMatrix,
    pub value: f64,
    pub steps: usize,
}

/// Up to `max_steps` ascent steps from `v0`. `f` is the objective and `grad`
/// its Euclidean gradient (`df = Re Tr(G^dagger dV)`).
pub fn ascend(
    v0: CMatrix,
    max_steps: usize,
    f: impl Fn(&CMatrix) -> f64,
    grad: impl Fn(&CMatrix) -> CMatrix,
) -> Ascent {
    let mut v = v0;
    let mut fv = f(&v);
    let mut alpha: f64 = 1.0;
    let mut steps = 0;
    for _ in 0..max_steps {
        let xi = tangent(&v, &grad(&v));
        let slope = xi.norm_sq();
        if slope < 1e-24 {
            break;
        }
        alpha = (alpha * 4.0).min(1e3);
        let mut accepted = None;
        for _ in 0..MAX_BACKTRACKS {
            if let Some(cand) = retract(&v, &xi, alpha) {
                let fc = f(&cand);
                if fc >= fv + ARMIJO * alpha * slope {
                    accepted = Some((cand, fc));
                    break;
                }
            }
            alpha *= 0.5;
        }
        // Backtracking from a long trial step may overshoot the maximum along
        // the curve; keep halving while the objective still improves.
        if let Some((mut cand, mut fc)) = accepted.take() {
            for _ in 0..MAX_BACKTRACKS {
                match retract(&v, &xi, alpha * 0.5) {
                    Some(c2) => {
                        let f2 = f(&c2);
                        if f2 > fc {
                            cand = c2;
                            fc = f2;
                            alpha *= 0.5;
                        } else {
                            break;
                        }
                    }
                    None => break,
                }
            }
            accepted = Some((cand, fc));
        }
        match accepted {
            Some((cand, fc)) if fc > fv => {
                v = cand;
                fv = fc;
                steps += 1;
            }
            _ => break,
        }
    }
    Ascent {
        point: v,
        value: fv,
        steps,
    }
}

/// `sum_k u_k^dagger ops[assign[k]] u_k` over the columns of `u`.
pub fn basis_objective(u: &CMatrix, assign: &[usize], ops: &[CMatrix]) -> f64 {
    (0..u.cols())
        .map(|k| {
            let col = u.column(k);
            let y = ops[assign[k]].mul_vec(&col);
            col.iter().zip(&y).map(|(a, b)| (a.conj() * b).re).sum::<f64>()
        })
        .sum()
}

/// Euclidean gradient of [`basis_objective`]: column `k` is `2 ops[a_k] u_k`.
pub fn basis_gradient(u: &CMatrix, assign: &[usize], ops: &[CMatrix]) -> CMatrix {
    let mut g = CMatrix::zeros(u.rows(), u.cols());
    for k in 0..u.cols() {
        let y: Vec<C64> = ops[assign[k]].mul_vec(&u.column(k)).iter().map(|v| v * 2.0).collect();
        g.set_column(k, &y);
    }
    g
}

/// Best operator per basis vector, lowest index on ties.
pub fn best_assignment(u: &CMatrix, ops: &[CMatrix]) -> Vec<usize> {
    (0..u.cols())
        .map(|k| {
            let col = u.column(k);
            let mut best = (0, f64::NEG_INFINITY);
            for (b, op) in ops.iter().enumerate() {
                let y = op.mul_vec(&col);
                let v: f64 = col.iter().zip(&y).map(|(a, c)| (a.conj() * c).re).sum();
                if v > best.1 + 1e-15 {
                    best = (b, v);
                }
            }
            best.0
        })
        .collect()
}

/// Alternates assignment and basis rotation to increase
/// `sum_k u_k^dagger ops[a_k] u_k`. Never decreases the incumbent value.
pub fn basis_ascent(u: CMatrix, assign: Vec<usize>, ops: &[CMatrix], rounds: usize, steps: usize) -> (CMatrix, Vec<usize>, f64) {
    let mut u = u;
    let mut assign = assign;
    let mut value = basis_objective(&u, &assign, ops);
    for _ in 0..rounds {
        let a2 = best_assignment(&u, ops);
        let v2 = basis_objective(&u, &a2, ops);
        if v2 > value {
            assign = a2;
            value = v2;
        }
        let asg = assign.clone();
        let res = ascend(
            u.clone(),
            steps,
            |m| basis_objective(m, &asg, ops),
            |m| basis_gradient(m, &asg, ops),
        );
        let gained = res.value > value + 1e-14;
        if res.value > value {
            u = res.point;
            value = res.value;
        }
        if !gained && best_assignment(&u, ops) == assign {
            break;
        }
    }
    (u, assign, value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::states::haar_unitary;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn ascent_finds_top_eigenvector() {
        let h = CMatrix::from_real(3, 3, &[2.0, 1.0, 0.0, 1.0, 2.0, 0.0, 0.0, 0.0, 1.0]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let v0 = crate::quantum::states::haar_isometry(3, 1, &mut rng);
        let f = |v: &CMatrix| (&(&v.adjoint() * &h) * v).trace().re;
        let g = |v: &CMatrix| (&h * v).scale_real(2.0);
        let r = ascend(v0, 500, f, g);
        assert!((r.value - 3.0).abs() < 1e-8, "{} after {} steps", r.value, r.steps);
    }

    #[test]
    fn basis_ascent_is_monotone() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let ops = vec![
            CMatrix::from_real(2, 2, &[1.0, 0.5, 0.5, 0.0]),
            CMatrix::from_real(2, 2, &[0.0, 0.0, 0.0, 0.3]),
            CMatrix::from_real(2, 2, &[0.2, 0.0, 0.0, 0.2]),
        ];
        let u = haar_unitary(2, &mut rng);
        let start = basis_objective(&u, &[0, 1], &ops);
        let (u2, a2, v) = basis_ascent(u, vec![0, 1], &ops, 20, 50);
        assert!(v >= start);
        assert!((basis_objective(&u2, &a2, &ops) - v).abs() < 1e-12);
        assert!((&u2.adjoint() * &u2).max_abs_diff(&CMatrix::identity(2)) < 1e-12);
    }
}
