//! Built-in cases: scenarios, witnesses, expected values and reference
//! strategies, plus a harness that recomputes everything and compares.

mod cases;
mod reproduce;

pub use cases::{
    appendix_witness, bell_povms, drac_witness, pauli_encoding, wd_product_kets, wd_product_shared,
    wd_shared_reference, wd_witness, wj_witness,
};
pub use reproduce::{reproduce, reproduce_case, Report, ReproduceOptions, Row, Status};

use std::fmt;

use crate::error::{Error, Result};
use crate::quantum::seesaw::Restriction;
use crate::quantum::strategy::QuantumStrategy;
use crate::rational::Rational;
use crate::scenario::{Scenario, Witness};

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Stated in the published case study.
    Published,
    /// Computed by an independent brute-force oracle.
    Derived,
    /// Holds by construction of the data.
    Construction,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Published => "published",
            Provenance::Derived => "derived",
            Provenance::Construction => "construction",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExpectedBound {
    /// Both channels carry `d` symbols.
    pub d: usize,
    pub value: Rational,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expected {
    pub value: f64,
    pub tol: f64,
    pub provenance: Provenance,
}

/// A seesaw run and the value it should reach.
///
/// Hard targets pass when `value >= target - tol`; soft targets when
/// `|value - target| <= tol`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeesawTarget {
    pub label: String,
    pub dims: [usize; 2],
    pub restriction: Restriction,
    pub shared_entanglement: bool,
    pub value: f64,
    pub tol: f64,
    pub soft: bool,
    pub provenance: Provenance,
}

#[derive(Clone, Debug)]
pub struct CaseEntry {
    pub name: String,
    pub title: &'static str,
    pub witness: Witness,
    pub classical_bounds: Vec<ExpectedBound>,
    /// Channel dimension at which the witness is a facet with its stored bound.
    pub facet_at: Option<usize>,
    pub reference: Option<QuantumStrategy>,
    pub reference_value: Option<Expected>,
    /// Noise tolerance of the reference against the bound at `noise_bound_d`.
    pub noise: Option<Expected>,
    pub noise_bound_d: usize,
    pub seesaw: Vec<SeesawTarget>,
    /// Check `C_2 < Q_2 < C_3 < Q_3`.
    pub ordering: bool,
}

impl CaseEntry {
    pub fn scenario(&self) -> &Scenario {
        self.witness.scenario()
    }

    pub fn expected_bound(&self, d: usize) -> Option<&Rational> {
        self.classical_bounds.iter().find(|b| b.d == d).map(|b| &b.value)
    }
}

/// Single case names, in report order.
pub fn case_names() -> Vec<String> {
    let mut names: Vec<String> = ["WJ", "DRAC", "WK", "WD", "WD_ENT"].iter().map(|s| s.to_string()).collect();
    names.extend((1..=13).map(|k| format!("APPENDIX_A_{k}")));
    names
}

pub fn get_case(name: &str) -> Result<CaseEntry> {
    cases::build(name).ok_or_else(|| {
        Error::parse(
            "case",
            format!("unknown case `{name}`; known: {}, ALL, APPENDIX_A_ALL", case_names().join(", ")),
        )
    })
}

/// Expands `ALL` and `APPENDIX_A_ALL`.
pub fn resolve(name: &str) -> Result<Vec<CaseEntry>> {
    match name {
        "ALL" => case_names().iter().map(|n| get_case(n)).collect(),
        "APPENDIX_A_ALL" => (1..=13).map(|k| get_case(&format!("APPENDIX_A_{k}"))).collect(),
        _ => Ok(vec![get_case(name)?]),
    }
}
