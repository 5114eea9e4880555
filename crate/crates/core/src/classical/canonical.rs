//! Canonical representatives of witnesses under relabelings.
//!
//! A witness `w . p <= C` is first written as the homogeneous vector `(w, -C)`
//! and projected onto the orthogonal complement of the equalities every behavior
//! satisfies (normalization per input tuple and, for a line with several
//! measurement settings, no-signaling of `s`). Two inequalities that agree on all
//! behaviors therefore project to the same direction. The projection is scaled to
//! a primitive integer vector and the lexicographically smallest image under the
//! relabeling group is returned.
//!
//! The group permutes each input alphabet, the outputs `b` separately for each
//! setting `y`, the outputs `s` separately for each `t`, and for two preparations
//! with equal alphabets and channel dimensions also swaps the two devices.

use num::bigint::BigInt;
use num::{Integer, One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::par;
use crate::rational::{self, Rational};
use crate::scenario::{Scenario, Topology, Witness};

/// Largest relabeling group that is searched exhaustively.
pub const MAX_GROUP_ORDER: u128 = 100_000_000;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

/// Rows spanning the structural equalities, in homogeneous coordinates.
fn equality_rows(scenario: &Scenario) -> Vec<Vec<Rational>> {
    let d = scenario.dim();
    let outs = scenario.n_outputs();
    let mut rows = Vec::new();
    for k in 0..scenario.n_inputs() {
        let mut r = vec![Rational::zero(); d + 1];
        for o in 0..outs {
            r[k * outs + o] = Rational::one();
        }
        r[d] = -Rational::one();
        rows.push(r);
    }
    if let Topology::Line { x, t, s, y, b } = scenario.topology() {
        for xi in 0..x {
            for ti in 0..t {
                for si in 0..s {
                    for yi in 1..y {
                        let mut r = vec![Rational::zero(); d + 1];
                        for bi in 0..b {
                            r[scenario.line_index(xi, ti, 0, si, bi)] = Rational::one();
                            r[scenario.line_index(xi, ti, yi, si, bi)] = -Rational::one();
                        }
                        rows.push(r);
                    }
                }
            }
        }
    }
    rows
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Orthogonal projection of `h` onto the complement of `span(rows)`.
fn project_out(h: &[Rational], rows: Vec<Vec<Rational>>) -> Vec<Rational> {
    let mut basis: Vec<(Vec<Rational>, Rational)> = Vec::new();
    for mut r in rows {
        for (q, qq) in &basis {
            let c = dot(&r, q) / qq;
            if !c.is_zero() {
                for (ri, qi) in r.iter_mut().zip(q) {
                    *ri -= &c * qi;
                }
            }
        }
        let rr = dot(&r, &r);
        if !rr.is_zero() {
            basis.push((r, rr));
        }
    }
    let mut out = h.to_vec();
    for (q, qq) in &basis {
        let c = dot(&out, q) / qq;
        if !c.is_zero() {
            for (oi, qi) in out.iter_mut().zip(q) {
                *oi -= &c * qi;
            }
        }
    }
    out
}

fn primitive_integers(v: &[Rational]) -> Vec<BigInt> {
    let (mut ints, _) = rational::scale_to_integers(v);
    let g = ints.iter().fold(BigInt::zero(), |g, e| g.gcd(e));
    if !g.is_zero() && !g.is_one() {
        for e in ints.iter_mut() {
            *e = &*e / &g;
        }
    }
    ints
}

/// The relabeling group as a list of factors; each factor is a list of
/// permutations, and one group element picks one permutation per factor.
struct Group {
    factors: Vec<Vec<Vec<usize>>>,
    /// Per coordinate (excluding the homogeneous one): its tuple of labels.
    labels: Vec<Vec<usize>>,
    /// For each label slot, which factor permutes it (`None`: fixed), keyed by
    /// the value of another slot when the permutation is conditioned.
    slot_factor: Vec<SlotRule>,
    swap_factor: Option<usize>,
    scenario: Scenario,
}

#[derive(Clone, Copy)]
enum SlotRule {
    Plain(usize),
    /// `factor_base + label[cond_slot]`
    Conditioned { base: usize, cond_slot: usize },
}

impl Group {
    fn new(scenario: &Scenario) -> Self {
        let d = scenario.dim();
        match scenario.topology() {
            Topology::Line { x, t, s, y, b } => {
                let mut factors = vec![permutations(x), permutations(t), permutations(y)];
                let b_base = factors.len();
                factors.extend((0..y).map(|_| permutations(b)));
                let s_base = factors.len();
                factors.extend((0..t).map(|_| permutations(s)));
                let labels = (0..d)
                    .map(|i| {
                        let bi = i % b;
                        let si = (i / b) % s;
                        let k = i / (b * s);
                        let yi = k % y;
                        let ti = (k / y) % t;
                        let xi = k / (y * t);
                        vec![xi, ti, yi, si, bi]
                    })
                    .collect();
                let slot_factor = vec![
                    SlotRule::Plain(0),
                    SlotRule::Plain(1),
                    SlotRule::Plain(2),
                    SlotRule::Conditioned { base: s_base, cond_slot: 1 },
                    SlotRule::Conditioned { base: b_base, cond_slot: 2 },
                ];
                Group {
                    factors,
                    labels,
                    slot_factor,
                    swap_factor: None,
                    scenario: *scenario,
                }
            }
            Topology::TwoPrep { x0, x1, y, b } => {
                let mut factors = vec![permutations(x0), permutations(x1), permutations(y)];
                let b_base = factors.len();
                factors.extend((0..y).map(|_| permutations(b)));
                let [d0, d1] = scenario.channel_dims();
                let swap_factor = (x0 == x1 && d0 == d1).then(|| {
                    factors.push(vec![vec![0, 1], vec![1, 0]]);
                    factors.len() - 1
                });
                let labels = (0..d)
                    .map(|i| {
                        let bi = i % b;
                        let k = i / b;
                        let yi = k % y;
                        let ci = (k / y) % x1;
                        let ai = k / (y * x1);
                        vec![ai, ci, yi, bi]
                    })
                    .collect();
                let slot_factor = vec![
                    SlotRule::Plain(0),
                    SlotRule::Plain(1),
                    SlotRule::Plain(2),
                    SlotRule::Conditioned { base: b_base, cond_slot: 2 },
                ];
                Group {
                    factors,
                    labels,
                    slot_factor,
                    swap_factor,
                    scenario: *scenario,
                }
            }
        }
    }

    fn order(&self) -> u128 {
        self.factors
            .iter()
            .fold(1u128, |acc, f| acc.saturating_mul(f.len() as u128))
    }

    /// Coordinate map of the group element with the given factor choices.
    fn coordinate_map(&self, choice: &[usize], out: &mut [usize]) {
        let mut lab = vec![0usize; self.slot_factor.len()];
        for (i, l) in self.labels.iter().enumerate() {
            for (slot, rule) in self.slot_factor.iter().enumerate() {
                let f = match *rule {
                    SlotRule::Plain(f) => f,
                    SlotRule::Conditioned { base, cond_slot } => base + l[cond_slot],
                };
                lab[slot] = self.factors[f][choice[f]][l[slot]];
            }
            let swapped = self
                .swap_factor
                .map(|f| choice[f] == 1)
                .unwrap_or(false);
            if swapped {
                lab.swap(0, 1);
            }
            out[i] = match self.scenario.topology() {
                Topology::Line { .. } => self.scenario.line_index(lab[0], lab[1], lab[2], lab[3], lab[4]),
                Topology::TwoPrep { .. } => self.scenario.two_prep_index(lab[0], lab[1], lab[2], lab[3]),
            };
        }
    }

    fn lex_min<T: Ord + Clone + Send + Sync>(&self, v: &[T]) -> Vec<T> {
        let d = self.labels.len();
        let outer = self.factors[0].len();
        let inner: usize = self.factors[1..].iter().map(|f| f.len()).product();
        let candidates = par::map_range(outer, |first| {
            let mut choice = vec![0usize; self.factors.len()];
            choice[0] = first;
            let mut map = vec![0usize; d];
            let mut image = v.to_vec();
            let mut best: Option<Vec<T>> = None;
            for mut idx in 0..inner {
                for (f, slot) in choice.iter_mut().enumerate().skip(1) {
                    let n = self.factors[f].len();
                    *slot = idx % n;
                    idx /= n;
                }
                self.coordinate_map(&choice, &mut map);
                for (i, &j) in map.iter().enumerate() {
                    image[j] = v[i].clone();
                }
                if best.as_ref().is_none_or(|b| image < *b) {
                    best = Some(image.clone());
                }
            }
            best.expect("group is nonempty")
        });
        candidates.into_iter().min().expect("group is nonempty")
    }
}

/// Canonical representative of the relabeling class of `w`.
///
/// Equal outputs mean the two witnesses define the same inequality on
/// behaviors up to a relabeling and a positive factor.
pub fn canonical_form(w: &Witness) -> Result<Witness> {
    let scenario = *w.scenario();
    let d = scenario.dim();
    let mut h: Vec<Rational> = w.coefficients().to_vec();
    h.push(-w.bound().clone());
    let projected = project_out(&h, equality_rows(&scenario));
    let ints = primitive_integers(&projected);

    let group = Group::new(&scenario);
    if group.order() > MAX_GROUP_ORDER {
        return Err(Error::Resource {
            needed: group.order(),
            cap: MAX_GROUP_ORDER,
            advice: "relabeling group too large for exhaustive canonicalization".into(),
        });
    }
    let last = ints[d].clone();
    let body = &ints[..d];
    let min: Vec<BigInt> = match body.iter().map(|e| e.to_i64()).collect::<Option<Vec<i64>>>() {
        Some(small) => group.lex_min(&small).into_iter().map(BigInt::from).collect(),
        None => group.lex_min(body),
    };
    let coefficients = min.into_iter().map(Rational::from_integer).collect();
    let bound = Rational::from_integer(-last);
    Witness::new(scenario, coefficients, bound, w.bound_kind())
}

/// Whether two witnesses are related by a relabeling (up to positive scaling and
/// structural equalities).
pub fn equivalent(a: &Witness, b: &Witness) -> Result<bool> {
    if a.scenario() != b.scenario() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

/// Size of the relabeling group for a scenario.
pub fn group_order(scenario: &Scenario) -> u128 {
    Group::new(scenario).order()
}
