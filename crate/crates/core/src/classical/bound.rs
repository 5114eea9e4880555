//! Classical bounds without materializing the vertex set.
//!
//! Relabeling channel symbols never changes a behavior, so preparation maps are
//! enumerated as set partitions of the input alphabet and measurement maps of a
//! line as sets of distinct response functions `y -> b`. Splitting a block (or
//! adding a response function) can only help, so only partitions with exactly
//! `min(d, |x|)` blocks and sets of exactly `min(d1, |b|^|y|)` functions are needed.
//! Once both endpoint maps are fixed every interior cell is independent and is
//! filled greedily.

use std::ops::AddAssign;

use num::bigint::BigInt;
use num::{ToPrimitive, Zero};

use super::strategy::ClassicalStrategy;
use crate::error::{Error, Result};
use crate::par;
use crate::rational::{self, Rational};
use crate::scenario::{Scenario, Topology, Witness};

pub use super::vertices::DEFAULT_CAP;

/// Restricted-growth strings of length `n` with exactly `k` blocks.
pub(crate) fn partitions(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(pos: usize, used: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pos == n {
            if used == k {
                out.push(cur.clone());
            }
            return;
        }
        if used + (n - pos) < k {
            return;
        }
        let top = (used + 1).min(k);
        for c in 0..top {
            cur.push(c);
            rec(pos + 1, used.max(c + 1), n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, 0, n, k, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Stirling number of the second kind, saturating.
pub(crate) fn stirling2(n: usize, k: usize) -> u128 {
    let mut row = vec![0u128; k + 1];
    row[0] = 1;
    for i in 1..=n {
        for j in (1..=k.min(i)).rev() {
            row[j] = (j as u128).saturating_mul(row[j]).saturating_add(row[j - 1]);
        }
        row[0] = 0;
    }
    row[k]
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Lexicographic `k`-subsets of `0..n`.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        while i > 0 && idx[i - 1] == i - 1 + n - k {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        let i = i - 1;
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn ipow(base: usize, exp: usize) -> Option<usize> {
    (0..exp).try_fold(1usize, |acc, _| acc.checked_mul(base))
}

/// Number of reduced endpoint combinations that `classical_bound` scores.
pub fn endpoint_count(scenario: &Scenario, dims: [usize; 2]) -> u128 {
    let [d0, d1] = dims;
    match scenario.topology() {
        Topology::Line { x, y, b, .. } => {
            let p = stirling2(x, d0.min(x));
            let responses = ipow(b, y).map(|r| r as u128).unwrap_or(u128::MAX);
            let k1 = (d1 as u128).min(responses);
            p.saturating_mul(binomial(responses, k1))
        }
        Topology::TwoPrep { x0, x1, .. } => stirling2(x0, d0.min(x0)).saturating_mul(stirling2(x1, d1.min(x1))),
    }
}

trait Score: Clone + Ord + Zero + Send + Sync + for<'a> AddAssign<&'a Self> {}
impl<T: Clone + Ord + Zero + Send + Sync + for<'a> AddAssign<&'a T>> Score for T {}

/// Exact maximum of `w . p` over the classical polytope at `dims`, with a
/// deterministic strategy attaining it.
///
/// Ties between strategies are broken towards the first one in enumeration
/// order and, inside a cell, towards the lowest symbol.
pub fn classical_bound(w: &Witness, scenario: &Scenario, dims: [usize; 2]) -> Result<(Rational, ClassicalStrategy)> {
    classical_bound_with_cap(w, scenario, dims, DEFAULT_CAP)
}

pub fn classical_bound_with_cap(
    w: &Witness,
    scenario: &Scenario,
    dims: [usize; 2],
    cap: u128,
) -> Result<(Rational, ClassicalStrategy)> {
    if !w.scenario().same_alphabets(scenario) {
        return Err(Error::Structure(format!(
            "witness scenario {} does not match {}",
            w.scenario(),
            scenario
        )));
    }
    let scenario = scenario.with_dims(dims)?;
    let needed = endpoint_count(&scenario, dims);
    if needed > cap {
        return Err(Error::Resource {
            needed,
            cap,
            advice: "lower the channel dimensions or raise --cap".into(),
        });
    }
    let (ints, scale) = rational::scale_to_integers(w.coefficients());
    let small: Option<Vec<i64>> = ints.iter().map(|c| c.to_i64().filter(|v| v.abs() < 1 << 40)).collect();
    let (value, strategy) = match small {
        Some(c) => {
            let (v, s) = search(&scenario, dims, &c);
            (BigInt::from(v), s)
        }
        None => search(&scenario, dims, &ints),
    };
    Ok((Rational::new(value, scale), strategy))
}

fn search<T: Score>(scenario: &Scenario, dims: [usize; 2], coef: &[T]) -> (T, ClassicalStrategy) {
    match scenario.topology() {
        Topology::Line { x, t, s, y, b } => search_line(scenario, dims, coef, [x, t, s, y, b]),
        Topology::TwoPrep { x0, x1, y, b } => search_two_prep(scenario, dims, coef, [x0, x1, y, b]),
    }
}

/// Picks the best per-partition result, lowest index on ties.
fn reduce<T: Ord, S>(results: Vec<(T, S)>) -> (T, S) {
    let mut best: Option<(T, S)> = None;
    for r in results {
        match &best {
            Some((v, _)) if r.0 <= *v => {}
            _ => best = Some(r),
        }
    }
    best.expect("at least one endpoint combination")
}

fn search_line<T: Score>(
    scenario: &Scenario,
    dims: [usize; 2],
    coef: &[T],
    [nx, nt, ns, ny, nb]: [usize; 5],
) -> (T, ClassicalStrategy) {
    let [d0, d1] = dims;
    let n_resp = ipow(nb, ny).expect("response count checked against the cap");
    let responses: Vec<Vec<usize>> = (0..n_resp)
        .map(|mut r| {
            (0..ny)
                .map(|_| {
                    let v = r % nb;
                    r /= nb;
                    v
                })
                .collect()
        })
        .collect();
    // gain[((x * nt + t) * ns + s) * n_resp + r] = sum_y w(x, t, y, s, r(y))
    let mut gain = vec![T::zero(); nx * nt * ns * n_resp];
    for xi in 0..nx {
        for ti in 0..nt {
            for si in 0..ns {
                for (ri, resp) in responses.iter().enumerate() {
                    let slot = &mut gain[((xi * nt + ti) * ns + si) * n_resp + ri];
                    for (yi, &bi) in resp.iter().enumerate() {
                        *slot += &coef[scenario.line_index(xi, ti, yi, si, bi)];
                    }
                }
            }
        }
    }
    let k0 = d0.min(nx);
    let k1 = d1.min(n_resp);
    let preps = partitions(nx, k0);
    let subsets = combinations(n_resp, k1);

    let per_prep = par::map_slice(&preps, |prep| {
        let mut best: Option<(T, usize, Vec<(usize, usize)>)> = None;
        let mut cell = vec![T::zero(); ns * k1];
        for (si_idx, subset) in subsets.iter().enumerate() {
            let mut total = T::zero();
            let mut choice = Vec::with_capacity(nt * k0);
            for ti in 0..nt {
                for block in 0..k0 {
                    for (o, slot) in cell.iter_mut().enumerate() {
                        let (si, c1) = (o / k1, o % k1);
                        let mut acc = T::zero();
                        for xi in (0..nx).filter(|&xi| prep[xi] == block) {
                            acc += &gain[((xi * nt + ti) * ns + si) * n_resp + subset[c1]];
                        }
                        *slot = acc;
                    }
                    let pick = argmax_first(&cell);
                    total += &cell[pick];
                    choice.push((pick / k1, pick % k1));
                }
            }
            if best.as_ref().is_none_or(|(v, _, _)| total > *v) {
                best = Some((total, si_idx, choice));
            }
        }
        let (v, si_idx, choice) = best.expect("at least one measurement set");
        (v, (si_idx, choice))
    });
    let tagged: Vec<(T, (usize, usize, Vec<(usize, usize)>))> = per_prep
        .into_iter()
        .enumerate()
        .map(|(pi, (v, (si, ch)))| (v, (pi, si, ch)))
        .collect();
    let (value, (pi, si, choice)) = reduce(tagged);

    let mut transform = vec![(0, 0); nt * d0];
    for ti in 0..nt {
        for block in 0..k0 {
            transform[ti * d0 + block] = choice[ti * k0 + block];
        }
    }
    let mut measure = vec![0; ny * d1];
    for (c1, &r) in subsets[si].iter().enumerate() {
        for yi in 0..ny {
            measure[yi * d1 + c1] = responses[r][yi];
        }
    }
    let strategy = ClassicalStrategy::Line {
        dims,
        prep: preps[pi].clone(),
        transform,
        measure,
    };
    (value, strategy)
}

fn search_two_prep<T: Score>(
    scenario: &Scenario,
    dims: [usize; 2],
    coef: &[T],
    [nx0, nx1, ny, nb]: [usize; 4],
) -> (T, ClassicalStrategy) {
    let [d0, d1] = dims;
    let k0 = d0.min(nx0);
    let k1 = d1.min(nx1);
    let preps0 = partitions(nx0, k0);
    let preps1 = partitions(nx1, k1);
    let n1 = preps1.len();

    let results = par::map_range(preps0.len() * n1, |i| {
        let (p0, p1) = (&preps0[i / n1], &preps1[i % n1]);
        let mut total = T::zero();
        let mut choice = Vec::with_capacity(ny * k0 * k1);
        let mut cell = vec![T::zero(); nb];
        for yi in 0..ny {
            for c0 in 0..k0 {
                for c1 in 0..k1 {
                    for (bi, slot) in cell.iter_mut().enumerate() {
                        let mut acc = T::zero();
                        for a in (0..nx0).filter(|&a| p0[a] == c0) {
                            for c in (0..nx1).filter(|&c| p1[c] == c1) {
                                acc += &coef[scenario.two_prep_index(a, c, yi, bi)];
                            }
                        }
                        *slot = acc;
                    }
                    let pick = argmax_first(&cell);
                    total += &cell[pick];
                    choice.push(pick);
                }
            }
        }
        (total, (i, choice))
    });
    let (value, (i, choice)) = reduce(results);
    let mut measure = vec![0; ny * d0 * d1];
    for yi in 0..ny {
        for c0 in 0..k0 {
            for c1 in 0..k1 {
                measure[(yi * d0 + c0) * d1 + c1] = choice[(yi * k0 + c0) * k1 + c1];
            }
        }
    }
    let strategy = ClassicalStrategy::TwoPrep {
        dims,
        prep0: preps0[i / n1].clone(),
        prep1: preps1[i % n1].clone(),
        measure,
    };
    (value, strategy)
}

fn argmax_first<T: Ord>(values: &[T]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate().skip(1) {
        if *v > values[best] {
            best = i;
        }
    }
    best
}
