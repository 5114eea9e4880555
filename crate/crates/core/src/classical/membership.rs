use num::{Signed, Zero};

use super::lp::{self, Phase1, EPS_LP};
use super::vertices::VertexSet;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::scenario::{Behavior, BoundKind, Witness};

/// Denominator caps tried, in order, when rationalizing a separating hyperplane.
const DENOMINATOR_CAPS: [u64; 3] = [1_000_000, 1_000_000_000, 1_000_000_000_000];

#[derive(Clone, Debug)]
pub enum Membership {
    /// Convex weights over the vertex list.
    Inside { weights: Vec<f64> },
    /// A witness valid on every vertex and violated by the behavior.
    Outside { witness: Witness, violation: f64 },
}

impl Membership {
    pub fn is_inside(&self) -> bool {
        matches!(self, Membership::Inside { .. })
    }
}

/// Decides whether `p` lies in the convex hull of `vertices`.
///
/// Outside certificates are exact: the coefficients are rationals, the bound is
/// the exact maximum over the vertices, and the violation is re-checked against
/// the exact value of `p`.
pub fn membership(p: &Behavior, vertices: &VertexSet) -> Result<Membership> {
    if vertices.is_empty() {
        return Err(Error::Structure("empty vertex set".into()));
    }
    if !p.scenario().same_alphabets(vertices.scenario()) {
        return Err(Error::Structure(format!(
            "behavior scenario {} does not match vertex scenario {}",
            p.scenario(),
            vertices.scenario()
        )));
    }
    let dim = p.values().len();
    let columns: Vec<Vec<f64>> = vertices
        .vertices()
        .iter()
        .map(|v| v.iter().map(|&e| f64::from(e)).chain(std::iter::once(1.0)).collect())
        .collect();
    let mut rhs = p.values().to_vec();
    rhs.push(1.0);
    let max_pivots = 50 * (columns.len() + rhs.len()) + 1000;
    match lp::phase_one(&columns, &rhs, max_pivots) {
        Phase1::Feasible(weights) => Ok(Membership::Inside { weights }),
        Phase1::Infeasible { dual, .. } => {
            let u = &dual[..dim];
            let scale = u.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            if scale == 0.0 {
                return Err(Error::Numerical("separating direction vanished".into()));
            }
            let exact_p: Vec<Rational> = p
                .values()
                .iter()
                .map(|&v| rational::from_f64_exact(v))
                .collect::<Result<_>>()?;
            for cap in DENOMINATOR_CAPS {
                let coefficients: Vec<Rational> = u
                    .iter()
                    .map(|&v| rational::rationalize(v / scale, cap))
                    .collect::<Result<_>>()?;
                let w = Witness::new(*vertices.scenario(), coefficients, Rational::zero(), BoundKind::Classical)?;
                let bound = vertices
                    .vertices()
                    .iter()
                    .map(|v| w.exact_value_on_vertex(v))
                    .max()
                    .expect("nonempty vertex set");
                let value: Rational = w
                    .coefficients()
                    .iter()
                    .zip(&exact_p)
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b);
                let gap = &value - &bound;
                if gap.is_positive() && rational::to_f64(&gap) > EPS_LP {
                    let witness = w.with_bound(bound, BoundKind::Classical);
                    return Ok(Membership::Outside {
                        witness,
                        violation: rational::to_f64(&gap),
                    });
                }
            }
            Err(Error::Numerical(
                "could not certify the separating hyperplane in exact arithmetic".into(),
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::vertices::{enumerate_vertices, DEFAULT_CAP};
    use crate::scenario::{white_noise, Scenario};

    fn pm() -> VertexSet {
        // Three preparations, two binary measurements, one bit.
        let sc = Scenario::line(3, 1, 1, 2, 2, [2, 2]).unwrap();
        enumerate_vertices(&sc, [2, 2], DEFAULT_CAP).unwrap()
    }

    #[test]
    fn vertices_and_noise_are_inside() {
        let v = pm();
        for i in 0..v.len() {
            assert!(membership(&v.behavior(i), &v).unwrap().is_inside());
        }
        assert!(membership(&white_noise(v.scenario()), &v).unwrap().is_inside());
    }

    #[test]
    fn outside_certificate_is_exact() {
        let v = pm();
        // Qubit trine states measured along x and z: not reproducible with one bit.
        let sc = *v.scenario();
        let angles = [0.0f64, 2.0 * std::f64::consts::PI / 3.0, 4.0 * std::f64::consts::PI / 3.0];
        let mut vals = vec![0.0; sc.dim()];
        for (x, a) in angles.iter().enumerate() {
            let bloch = [a.sin(), a.cos()];
            for (y, obs) in [[1.0, 0.0], [0.0, 1.0]].iter().enumerate() {
                let e = bloch[0] * obs[0] + bloch[1] * obs[1];
                vals[sc.line_index(x, 0, y, 0, 0)] = (1.0 + e) / 2.0;
                vals[sc.line_index(x, 0, y, 0, 1)] = (1.0 - e) / 2.0;
            }
        }
        let p = Behavior::new(sc, vals).unwrap();
        match membership(&p, &v).unwrap() {
            Membership::Outside { witness, violation } => {
                assert!(violation > EPS_LP);
                for vert in v.vertices() {
                    assert!(witness.exact_value_on_vertex(vert) <= *witness.bound());
                }
                assert!(witness.value(&p) > rational::to_f64(witness.bound()));
            }
            Membership::Inside { .. } => panic!("trine data should need more than a bit"),
        }
    }

    #[test]
    fn empty_set_is_structural() {
        let v = pm();
        let empty = VertexSet::from_parts(*v.scenario(), Vec::new(), Vec::new());
        assert!(matches!(
            membership(&white_noise(v.scenario()), &empty),
            Err(Error::Structure(_))
        ));
    }
}
