use std::collections::HashMap;

use super::strategy::ClassicalStrategy;
use crate::error::{Error, Result};
use crate::par;
use crate::scenario::{Behavior, Scenario, Topology};

/// Default cap on raw enumeration sizes.
pub const DEFAULT_CAP: u128 = 100_000_000;

/// Distinct deterministic behaviors of a scenario at fixed channel dimensions.
#[derive(Clone, Debug)]
pub struct VertexSet {
    scenario: Scenario,
    vertices: Vec<Vec<u8>>,
    representatives: Vec<ClassicalStrategy>,
}

impl VertexSet {
    /// Builds a set from explicit 0/1 vectors, sorting and deduplicating them.
    /// Representatives are kept only when one is given per vertex.
    pub fn from_parts(
        scenario: Scenario,
        vertices: Vec<Vec<u8>>,
        representatives: Vec<ClassicalStrategy>,
    ) -> Self {
        let mut pairs: Vec<(Vec<u8>, Option<ClassicalStrategy>)> = if representatives.len() == vertices.len() {
            vertices.into_iter().zip(representatives.into_iter().map(Some)).collect()
        } else {
            vertices.into_iter().map(|v| (v, None)).collect()
        };
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        pairs.dedup_by(|a, b| a.0 == b.0);
        let keep = pairs.iter().all(|(_, r)| r.is_some());
        let (vertices, reps): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
        let representatives = if keep { reps.into_iter().flatten().collect() } else { Vec::new() };
        Self {
            scenario,
            vertices,
            representatives,
        }
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    pub fn vertices(&self) -> &[Vec<u8>] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// One strategy realizing each vertex (the first in enumeration order).
    /// Empty for sets built without representatives.
    pub fn representatives(&self) -> &[ClassicalStrategy] {
        &self.representatives
    }

    pub fn behavior(&self, i: usize) -> Behavior {
        Behavior::new(self.scenario, self.vertices[i].iter().map(|&v| f64::from(v)).collect())
            .expect("vertex length matches scenario")
    }

    pub fn contains(&self, vertex: &[u8]) -> bool {
        self.vertices.binary_search_by(|v| v.as_slice().cmp(vertex)).is_ok()
    }

    /// Vertices as CSV, one per row.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<String> = (0..self.scenario.dim()).map(|i| format!("p{i}")).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for v in &self.vertices {
            let row: Vec<&str> = v.iter().map(|&e| if e == 0 { "0" } else { "1" }).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// Number of raw deterministic strategies (before deduplication).
pub fn raw_strategy_count(scenario: &Scenario, dims: [usize; 2]) -> u128 {
    let [d0, d1] = dims.map(|d| d as u128);
    let pow = |base: u128, exp: u128| -> u128 {
        let mut acc: u128 = 1;
        for _ in 0..exp {
            acc = acc.saturating_mul(base);
        }
        acc
    };
    match scenario.topology() {
        Topology::Line { x, t, s, y, b } => {
            let (x, t, s, y, b) = (x as u128, t as u128, s as u128, y as u128, b as u128);
            pow(d0, x)
                .saturating_mul(pow(s * d1, t * d0))
                .saturating_mul(pow(b, y * d1))
        }
        Topology::TwoPrep { x0, x1, y, b } => {
            let (x0, x1, y, b) = (x0 as u128, x1 as u128, y as u128, b as u128);
            pow(d0, x0)
                .saturating_mul(pow(d1, x1))
                .saturating_mul(pow(b, y * d0 * d1))
        }
    }
}

fn decode(mut index: u128, radix: usize, out: &mut [usize]) -> u128 {
    for slot in out.iter_mut() {
        *slot = (index % radix as u128) as usize;
        index /= radix as u128;
    }
    index
}

/// Raw strategy number `index` (mixed radix, prep map slowest).
fn strategy_at(scenario: &Scenario, dims: [usize; 2], index: u128) -> ClassicalStrategy {
    let [d0, d1] = dims;
    match scenario.topology() {
        Topology::Line { x, t, s, y, b } => {
            let mut measure = vec![0; y * d1];
            let mut tr = vec![0; t * d0];
            let mut prep = vec![0; x];
            let rest = decode(index, b, &mut measure);
            let rest = decode(rest, s * d1, &mut tr);
            decode(rest, d0, &mut prep);
            let transform = tr.into_iter().map(|sc| (sc / d1, sc % d1)).collect();
            ClassicalStrategy::Line {
                dims,
                prep,
                transform,
                measure,
            }
        }
        Topology::TwoPrep { x0, x1, y, b } => {
            let mut measure = vec![0; y * d0 * d1];
            let mut prep1 = vec![0; x1];
            let mut prep0 = vec![0; x0];
            let rest = decode(index, b, &mut measure);
            let rest = decode(rest, d1, &mut prep1);
            decode(rest, d0, &mut prep0);
            ClassicalStrategy::TwoPrep {
                dims,
                prep0,
                prep1,
                measure,
            }
        }
    }
}

/// Enumerates every deterministic strategy and deduplicates their behaviors.
///
/// Vertices are returned sorted; each carries the lowest-numbered strategy that
/// realizes it, so the output does not depend on the number of threads.
pub fn enumerate_vertices(scenario: &Scenario, dims: [usize; 2], cap: u128) -> Result<VertexSet> {
    let scenario = scenario.with_dims(dims)?;
    let total = raw_strategy_count(&scenario, dims);
    if total > cap {
        return Err(Error::Resource {
            needed: total,
            cap,
            advice: "use classical_bound, which does not enumerate vertices".into(),
        });
    }
    let total = total as u64;
    let chunk = 4096u64;
    let n_chunks = total.div_ceil(chunk) as usize;

    let partial: Vec<HashMap<Vec<u8>, u64>> = par::map_range(n_chunks, |c| {
        let mut seen: HashMap<Vec<u8>, u64> = HashMap::new();
        let mut buf = vec![0u8; scenario.dim()];
        let start = c as u64 * chunk;
        let end = (start + chunk).min(total);
        for i in start..end {
            strategy_at(&scenario, dims, i as u128).fill_vertex(&scenario, &mut buf);
            seen.entry(buf.clone()).or_insert(i);
        }
        seen
    });

    let mut merged: HashMap<Vec<u8>, u64> = HashMap::new();
    for map in partial {
        for (v, i) in map {
            merged
                .entry(v)
                .and_modify(|j| *j = (*j).min(i))
                .or_insert(i);
        }
    }
    let mut entries: Vec<(Vec<u8>, u64)> = merged.into_iter().collect();
    entries.sort_unstable();
    let representatives = entries
        .iter()
        .map(|(_, i)| strategy_at(&scenario, dims, *i as u128))
        .collect();
    let vertices = entries.into_iter().map(|(v, _)| v).collect();
    Ok(VertexSet {
        scenario,
        vertices,
        representatives,
    })
}
