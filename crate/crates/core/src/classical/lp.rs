//! Dense Phase-I simplex for `A x = b, x >= 0` with Bland's rule.

/// Feasibility tolerance.
pub const EPS_LP: f64 = 1e-9;
const PIVOT_EPS: f64 = 1e-12;

#[derive(Clone, Debug)]
pub enum Phase1 {
    /// A nonnegative solution of `A x = b`.
    Feasible(Vec<f64>),
    /// Infeasible: `y` with `y . A_j <= 0` for every column and `y . b > 0`.
    Infeasible { dual: Vec<f64>, residual: f64 },
}

/// Solves the phase-one problem `min sum(a)` s.t. `A x + a = b`, `x, a >= 0`.
///
/// `columns[j]` is column `j` of `A` (length `m`). Iteration stops after
/// `max_pivots`; in that case the current point is classified as if optimal.
pub fn phase_one(columns: &[Vec<f64>], b: &[f64], max_pivots: usize) -> Phase1 {
    let m = b.len();
    let n = columns.len();
    let width = n + m + 1;
    // Tableau rows 0..m are constraints, row m is the reduced-cost row.
    let mut tab = vec![0.0; (m + 1) * width];
    let sign: Vec<f64> = b.iter().map(|&v| if v < 0.0 { -1.0 } else { 1.0 }).collect();
    for i in 0..m {
        let row = &mut tab[i * width..(i + 1) * width];
        for (j, col) in columns.iter().enumerate() {
            row[j] = sign[i] * col[i];
        }
        row[n + i] = 1.0;
        row[width - 1] = sign[i] * b[i];
    }
    // Reduced costs c_j - c_B B^-1 A_j with c = 1 on artificials.
    for j in 0..width {
        if (n..n + m).contains(&j) {
            continue;
        }
        let s: f64 = (0..m).map(|i| tab[i * width + j]).sum();
        tab[m * width + j] = -s;
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    for _ in 0..max_pivots {
        let Some(enter) = (0..n + m).find(|&j| tab[m * width + j] < -EPS_LP * 1e-3) else {
            break;
        };
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..m {
            let a = tab[i * width + enter];
            if a > PIVOT_EPS {
                let ratio = tab[i * width + width - 1] / a;
                let better = match leave {
                    None => true,
                    Some((k, r)) => ratio < r - 1e-15 || (ratio <= r + 1e-15 && basis[i] < basis[k]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else {
            // Unbounded direction cannot occur for a phase-one objective bounded below.
            break;
        };
        pivot(&mut tab, m + 1, width, r, enter);
        basis[r] = enter;
    }

    let residual = -tab[m * width + width - 1];
    if residual <= EPS_LP {
        let mut x = vec![0.0; n];
        for (i, &bv) in basis.iter().enumerate() {
            if bv < n {
                x[bv] = tab[i * width + width - 1].max(0.0);
            }
        }
        Phase1::Feasible(x)
    } else {
        // Reduced cost of artificial i is 1 - y_i (in the sign-adjusted rows).
        let dual = (0..m).map(|i| sign[i] * (1.0 - tab[m * width + n + i])).collect();
        Phase1::Infeasible { dual, residual }
    }
}

fn pivot(tab: &mut [f64], rows: usize, width: usize, r: usize, c: usize) {
    let p = tab[r * width + c];
    for j in 0..width {
        tab[r * width + j] /= p;
    }
    let pivot_row: Vec<f64> = tab[r * width..(r + 1) * width].to_vec();
    for i in 0..rows {
        if i == r {
            continue;
        }
        let f = tab[i * width + c];
        if f != 0.0 {
            let row = &mut tab[i * width..(i + 1) * width];
            for j in 0..width {
                row[j] -= f * pivot_row[j];
            }
            row[c] = 0.0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_convex_combination() {
        // Points 0 and 2 on a line, target 1: columns [v; 1].
        let cols = vec![vec![0.0, 1.0], vec![2.0, 1.0]];
        match phase_one(&cols, &[1.0, 1.0], 100) {
            Phase1::Feasible(x) => {
                assert!((x[0] - 0.5).abs() < 1e-12 && (x[1] - 0.5).abs() < 1e-12);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_returns_separating_dual() {
        let cols = vec![vec![0.0, 1.0], vec![2.0, 1.0]];
        let b = [3.0, 1.0];
        let Phase1::Infeasible { dual, residual } = phase_one(&cols, &b, 100) else {
            panic!("expected infeasible");
        };
        assert!(residual > 0.5);
        for c in &cols {
            let s: f64 = c.iter().zip(&dual).map(|(a, y)| a * y).sum();
            assert!(s <= 1e-12);
        }
        let s: f64 = b.iter().zip(&dual).map(|(a, y)| a * y).sum();
        assert!(s > 0.0);
    }
}
