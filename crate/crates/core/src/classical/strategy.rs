use crate::error::{Error, Result};
use crate::scenario::{Behavior, Scenario, Topology};

/// Deterministic response functions for every device. Symbols are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ClassicalStrategy {
    Line {
        dims: [usize; 2],
        /// `x -> c0`
        prep: Vec<usize>,
        /// `t * d0 + c0 -> (s, c1)`
        transform: Vec<(usize, usize)>,
        /// `y * d1 + c1 -> b`
        measure: Vec<usize>,
    },
    TwoPrep {
        dims: [usize; 2],
        /// `x0 -> c0`
        prep0: Vec<usize>,
        /// `x1 -> c1`
        prep1: Vec<usize>,
        /// `(y * d0 + c0) * d1 + c1 -> b`
        measure: Vec<usize>,
    },
}

impl ClassicalStrategy {
    pub fn dims(&self) -> [usize; 2] {
        match self {
            ClassicalStrategy::Line { dims, .. } | ClassicalStrategy::TwoPrep { dims, .. } => *dims,
        }
    }

    /// Checks map lengths and that every value lies in its alphabet.
    pub fn check(&self, scenario: &Scenario) -> Result<()> {
        let bad = |what: &str| Err(Error::Structure(format!("classical strategy: {what}")));
        match (self, scenario.topology()) {
            (
                ClassicalStrategy::Line {
                    dims: [d0, d1],
                    prep,
                    transform,
                    measure,
                },
                Topology::Line { x, t, s, y, b },
            ) => {
                if prep.len() != x || transform.len() != t * d0 || measure.len() != y * d1 {
                    return bad("map sizes do not match the scenario");
                }
                if prep.iter().any(|&c| c >= *d0)
                    || transform.iter().any(|&(ss, c)| ss >= s || c >= *d1)
                    || measure.iter().any(|&bb| bb >= b)
                {
                    return bad("symbol outside its alphabet");
                }
                Ok(())
            }
            (
                ClassicalStrategy::TwoPrep {
                    dims: [d0, d1],
                    prep0,
                    prep1,
                    measure,
                },
                Topology::TwoPrep { x0, x1, y, b },
            ) => {
                if prep0.len() != x0 || prep1.len() != x1 || measure.len() != y * d0 * d1 {
                    return bad("map sizes do not match the scenario");
                }
                if prep0.iter().any(|&c| c >= *d0)
                    || prep1.iter().any(|&c| c >= *d1)
                    || measure.iter().any(|&bb| bb >= b)
                {
                    return bad("symbol outside its alphabet");
                }
                Ok(())
            }
            _ => bad("topology mismatch"),
        }
    }

    /// The 0/1 behavior vector produced by this strategy.
    pub fn vertex(&self, scenario: &Scenario) -> Vec<u8> {
        let mut v = vec![0u8; scenario.dim()];
        self.fill_vertex(scenario, &mut v);
        v
    }

    pub(crate) fn fill_vertex(&self, scenario: &Scenario, v: &mut [u8]) {
        v.iter_mut().for_each(|e| *e = 0);
        match (self, scenario.topology()) {
            (
                ClassicalStrategy::Line {
                    dims: [d0, d1],
                    prep,
                    transform,
                    measure,
                },
                Topology::Line { x, t, y, .. },
            ) => {
                for xi in 0..x {
                    let c0 = prep[xi];
                    for ti in 0..t {
                        let (s, c1) = transform[ti * d0 + c0];
                        for yi in 0..y {
                            let b = measure[yi * d1 + c1];
                            v[scenario.line_index(xi, ti, yi, s, b)] = 1;
                        }
                    }
                }
            }
            (
                ClassicalStrategy::TwoPrep {
                    dims: [d0, d1],
                    prep0,
                    prep1,
                    measure,
                },
                Topology::TwoPrep { x0, x1, y, .. },
            ) => {
                for a in 0..x0 {
                    for c in 0..x1 {
                        for yi in 0..y {
                            let b = measure[(yi * d0 + prep0[a]) * d1 + prep1[c]];
                            v[scenario.two_prep_index(a, c, yi, b)] = 1;
                        }
                    }
                }
            }
            _ => panic!("classical strategy topology does not match scenario"),
        }
    }

    pub fn behavior(&self, scenario: &Scenario) -> Result<Behavior> {
        self.check(scenario)?;
        let v = self.vertex(scenario);
        Behavior::new(*scenario, v.into_iter().map(f64::from).collect())
    }
}
