//! Standard states, operators and random unitaries.

use rand::Rng;
use rand_distr::StandardNormal;

use super::cmatrix::{vec_dot, vec_norm, CMatrix, C64, I, ONE, ZERO};

/// `cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>`
pub fn ket(theta: f64, phi: f64) -> Vec<C64> {
    vec![
        C64::new((theta / 2.0).cos(), 0.0),
        C64::from_polar((theta / 2.0).sin(), phi),
    ]
}

/// Rank-one density matrix of [`ket`].
pub fn pure_state(theta: f64, phi: f64) -> CMatrix {
    CMatrix::outer(&ket(theta, phi))
}

pub fn sigma_x() -> CMatrix {
    CMatrix::from_vec(2, 2, vec![ZERO, ONE, ONE, ZERO])
}

pub fn sigma_y() -> CMatrix {
    CMatrix::from_vec(2, 2, vec![ZERO, -I, I, ZERO])
}

pub fn sigma_z() -> CMatrix {
    CMatrix::from_vec(2, 2, vec![ONE, ZERO, ZERO, -ONE])
}

pub fn hadamard() -> CMatrix {
    CMatrix::from_real(2, 2, &[1.0, 1.0, 1.0, -1.0]).scale_real(std::f64::consts::FRAC_1_SQRT_2)
}

/// `M^k` for a small non-negative power.
pub fn power(m: &CMatrix, k: usize) -> CMatrix {
    (0..k).fold(CMatrix::identity(m.rows()), |acc, _| &acc * m)
}

/// The singlet `(|01> - |10>)/sqrt 2`.
pub fn singlet() -> Vec<C64> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    vec![ZERO, C64::new(h, 0.0), C64::new(-h, 0.0), ZERO]
}

/// Kronecker product of two kets.
pub fn ket_kron(a: &[C64], b: &[C64]) -> Vec<C64> {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

/// Qubit density matrix `(I + r . sigma)/2` of a Bloch vector.
pub fn bloch_state(r: [f64; 3]) -> CMatrix {
    let mut m = CMatrix::identity(2);
    m.add_scaled(&sigma_x(), r[0]);
    m.add_scaled(&sigma_y(), r[1]);
    m.add_scaled(&sigma_z(), r[2]);
    m.scale_real(0.5)
}

/// Haar-distributed unitary (Gram-Schmidt on a complex Gaussian matrix).
pub fn haar_unitary(n: usize, rng: &mut impl Rng) -> CMatrix {
    haar_isometry(n, n, rng)
}

/// `rows x cols` matrix with orthonormal columns, Haar distributed.
pub fn haar_isometry(rows: usize, cols: usize, rng: &mut impl Rng) -> CMatrix {
    assert!(rows >= cols);
    let mut m = CMatrix::zeros(rows, cols);
    let mut j = 0;
    while j < cols {
        let mut v: Vec<C64> = (0..rows)
            .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        for k in 0..j {
            let u = m.column(k);
            let c = vec_dot(&u, &v);
            for (vi, ui) in v.iter_mut().zip(&u) {
                *vi -= c * ui;
            }
        }
        let n = vec_norm(&v);
        if n < 1e-8 {
            continue;
        }
        let v: Vec<C64> = v.iter().map(|x| x / n).collect();
        m.set_column(j, &v);
        j += 1;
    }
    m
}

/// Haar-random pure state of dimension `n`.
pub fn random_ket(n: usize, rng: &mut impl Rng) -> Vec<C64> {
    haar_isometry(n, 1, rng).column(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn pure_state_examples() {
        assert!(pure_state(0.0, 0.0).max_abs_diff(&CMatrix::basis_projector(2, 0)) < 1e-15);
        let plus = bloch_state([1.0, 0.0, 0.0]);
        assert!(pure_state(std::f64::consts::FRAC_PI_2, 0.0).max_abs_diff(&plus) < 1e-15);
    }

    #[test]
    fn pure_states_are_projectors() {
        for (t, p) in [(0.3, 1.1), (2.0, -0.7), (-2.4, 3.0)] {
            let r = pure_state(t, p);
            assert!((r.trace().re - 1.0).abs() < 1e-12);
            assert!((&r * &r).max_abs_diff(&r) < 1e-12);
        }
    }

    #[test]
    fn haar_unitaries_are_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..5 {
            let u = haar_unitary(n, &mut rng);
            assert!((&u.adjoint() * &u).max_abs_diff(&CMatrix::identity(n)) < 1e-12);
        }
    }

    #[test]
    fn hadamard_swaps_paulis() {
        let h = hadamard();
        assert!((&(&h * &sigma_x()) * &h).max_abs_diff(&sigma_z()) < 1e-15);
    }
}
