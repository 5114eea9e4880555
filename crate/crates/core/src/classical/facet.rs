use std::fmt;

use super::exact::affine_dimension;
use super::vertices::{enumerate_vertices, VertexSet, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::scenario::{Scenario, Witness};

/// Verdict on whether `w . p <= bound` is a facet of the classical polytope.
#[derive(Clone, Debug, PartialEq)]
pub struct FacetReport {
    pub is_valid: bool,
    pub max_over_vertices: Rational,
    pub is_tight: bool,
    pub saturating_count: usize,
    pub affine_dim_polytope: i64,
    pub affine_dim_face: i64,
    pub is_facet: bool,
}

impl fmt::Display for FacetReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "is_valid = {}", self.is_valid)?;
        writeln!(f, "max_over_vertices = {}", rational::format_rational(&self.max_over_vertices))?;
        writeln!(f, "is_tight = {}", self.is_tight)?;
        writeln!(f, "saturating_count = {}", self.saturating_count)?;
        writeln!(f, "affine_dim_polytope = {}", self.affine_dim_polytope)?;
        writeln!(f, "affine_dim_face = {}", self.affine_dim_face)?;
        write!(f, "is_facet = {}", self.is_facet)
    }
}

pub fn verify_facet(w: &Witness, scenario: &Scenario, dims: [usize; 2]) -> Result<FacetReport> {
    verify_facet_with_cap(w, scenario, dims, DEFAULT_CAP)
}

pub fn verify_facet_with_cap(w: &Witness, scenario: &Scenario, dims: [usize; 2], cap: u128) -> Result<FacetReport> {
    if !w.scenario().same_alphabets(scenario) {
        return Err(Error::Structure(format!(
            "witness scenario {} does not match {}",
            w.scenario(),
            scenario
        )));
    }
    let vertices = enumerate_vertices(scenario, dims, cap)?;
    Ok(facet_report(w, &vertices))
}

/// Facet verdict against an explicit vertex set.
pub fn facet_report(w: &Witness, vertices: &VertexSet) -> FacetReport {
    let values: Vec<Rational> = vertices.vertices().iter().map(|v| w.exact_value_on_vertex(v)).collect();
    let max = values.iter().max().cloned().unwrap_or_default();
    let bound = w.bound();
    let is_valid = max <= *bound;
    let is_tight = max == *bound;
    let saturating: Vec<&[u8]> = vertices
        .vertices()
        .iter()
        .zip(&values)
        .filter(|(_, val)| *val == bound)
        .map(|(v, _)| v.as_slice())
        .collect();
    let affine_dim_polytope = affine_dimension(vertices.vertices().iter().map(|v| v.as_slice()));
    let affine_dim_face = affine_dimension(saturating.iter().copied());
    let is_facet = is_valid && is_tight && affine_dim_face == affine_dim_polytope - 1;
    FacetReport {
        is_valid,
        max_over_vertices: max,
        is_tight,
        saturating_count: saturating.len(),
        affine_dim_polytope,
        affine_dim_face,
        is_facet,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::scenario::BoundKind;

    fn witness_one(scale: i64) -> (Witness, Scenario) {
        let sc = Scenario::two_prep(3, 3, 1, 2, [2, 2]).unwrap();
        let m = [[-1, 1, 1], [-1, 0, -1], [1, 1, -1]];
        let rows: Vec<Vec<Rational>> = m.iter().map(|r| r.iter().map(|&v| int(v * scale)).collect()).collect();
        (Witness::from_matrix(sc, &rows, int(2 * scale), BoundKind::Classical).unwrap(), sc)
    }

    #[test]
    fn appendix_witness_is_a_facet() {
        let (w, sc) = witness_one(1);
        let r = verify_facet(&w, &sc, [2, 2]).unwrap();
        assert!(r.is_facet, "{r}");
        assert_eq!(r.affine_dim_polytope, 9);
        assert_eq!(r.saturating_count, 16);
    }

    #[test]
    fn positive_scaling_keeps_the_facet() {
        let (w, sc) = witness_one(2);
        let r = verify_facet(&w, &sc, [2, 2]).unwrap();
        assert!(r.is_facet);
        assert_eq!(r.max_over_vertices, int(4));
    }

    #[test]
    fn slack_bound_is_not_tight() {
        let (w, sc) = witness_one(1);
        let r = verify_facet(&w.with_bound(int(5), BoundKind::Classical), &sc, [2, 2]).unwrap();
        assert!(r.is_valid && !r.is_tight && !r.is_facet);
        assert_eq!(r.saturating_count, 0);
        assert_eq!(r.affine_dim_face, -1);
    }

    #[test]
    fn report_text_is_exact() {
        let (w, sc) = witness_one(1);
        let text = verify_facet(&w, &sc, [2, 2]).unwrap().to_string();
        assert!(text.contains("max_over_vertices = 2"));
        assert!(text.ends_with("is_facet = true"));
    }
}
