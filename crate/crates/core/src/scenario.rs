//! Network scenarios and the behavior vector layout.
//!
//! A behavior is the full table `p(outputs | inputs)` flattened into one vector.
//! Input tuples are enumerated row-major in device order (`x, t, y` for a line,
//! `x0, x1, y` for two preparations); within one input tuple the output block
//! `(s, b)` follows with `b` varying fastest.

use std::fmt;

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Probability tolerance for floating-point validation.
pub const EPS_PROB: f64 = 1e-9;

/// The two network shapes that are instantiated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Topology {
    /// Preparation -> transformation -> measurement.
    Line {
        x: usize,
        t: usize,
        s: usize,
        y: usize,
        b: usize,
    },
    /// Two preparations feeding one measurement.
    TwoPrep {
        x0: usize,
        x1: usize,
        y: usize,
        b: usize,
    },
}

/// A topology together with per-channel dimension bounds.
///
/// Both topologies have exactly two channels: prep -> transform and
/// transform -> measure for [`Topology::Line`], prep 0 -> measure and
/// prep 1 -> measure for [`Topology::TwoPrep`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Scenario {
    topology: Topology,
    channel_dims: [usize; 2],
}

impl Scenario {
    pub fn new(topology: Topology, channel_dims: [usize; 2]) -> Result<Self> {
        let sizes: Vec<(&str, usize)> = match topology {
            Topology::Line { x, t, s, y, b } => vec![("x", x), ("t", t), ("s", s), ("y", y), ("b", b)],
            Topology::TwoPrep { x0, x1, y, b } => vec![("x0", x0), ("x1", x1), ("y", y), ("b", b)],
        };
        for (name, n) in sizes {
            if n == 0 {
                return Err(Error::Structure(format!("alphabet `{name}` must be at least 1")));
            }
        }
        if channel_dims.contains(&0) {
            return Err(Error::Structure("channel dimensions must be at least 1".into()));
        }
        Ok(Self {
            topology,
            channel_dims,
        })
    }

    pub fn line(x: usize, t: usize, s: usize, y: usize, b: usize, dims: [usize; 2]) -> Result<Self> {
        Self::new(Topology::Line { x, t, s, y, b }, dims)
    }

    pub fn two_prep(x0: usize, x1: usize, y: usize, b: usize, dims: [usize; 2]) -> Result<Self> {
        Self::new(Topology::TwoPrep { x0, x1, y, b }, dims)
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn channel_dims(&self) -> [usize; 2] {
        self.channel_dims
    }

    /// Same alphabets, different channel dimensions.
    pub fn with_dims(&self, dims: [usize; 2]) -> Result<Self> {
        Self::new(self.topology, dims)
    }

    /// Same alphabets (channel dimensions ignored).
    pub fn same_alphabets(&self, other: &Scenario) -> bool {
        self.topology == other.topology
    }

    pub fn is_line(&self) -> bool {
        matches!(self.topology, Topology::Line { .. })
    }

    /// Alphabet sizes of the input tuple, in device order.
    pub fn input_sizes(&self) -> Vec<usize> {
        match self.topology {
            Topology::Line { x, t, y, .. } => vec![x, t, y],
            Topology::TwoPrep { x0, x1, y, .. } => vec![x0, x1, y],
        }
    }

    pub fn y_size(&self) -> usize {
        match self.topology {
            Topology::Line { y, .. } | Topology::TwoPrep { y, .. } => y,
        }
    }

    pub fn b_size(&self) -> usize {
        match self.topology {
            Topology::Line { b, .. } | Topology::TwoPrep { b, .. } => b,
        }
    }

    /// Transformation outcome alphabet (1 for two-preparation networks).
    pub fn s_size(&self) -> usize {
        match self.topology {
            Topology::Line { s, .. } => s,
            Topology::TwoPrep { .. } => 1,
        }
    }

    pub fn n_inputs(&self) -> usize {
        self.input_sizes().iter().product()
    }

    pub fn n_outputs(&self) -> usize {
        self.s_size() * self.b_size()
    }

    /// Length `D` of a behavior vector.
    pub fn dim(&self) -> usize {
        self.n_inputs() * self.n_outputs()
    }

    /// Flat index of `p(b, s | x, t, y)`.
    pub fn line_index(&self, x: usize, t: usize, y: usize, s: usize, b: usize) -> usize {
        match self.topology {
            Topology::Line {
                t: nt,
                s: ns,
                y: ny,
                b: nb,
                ..
            } => ((((x * nt + t) * ny + y) * ns + s) * nb) + b,
            Topology::TwoPrep { .. } => panic!("line_index on a two-preparation scenario"),
        }
    }

    /// Flat index of `p(b | x0, x1, y)`.
    pub fn two_prep_index(&self, x0: usize, x1: usize, y: usize, b: usize) -> usize {
        match self.topology {
            Topology::TwoPrep {
                x1: n1, y: ny, b: nb, ..
            } => (((x0 * n1 + x1) * ny + y) * nb) + b,
            Topology::Line { .. } => panic!("two_prep_index on a line scenario"),
        }
    }

    /// Decodes an input-tuple index into its components (device order).
    pub fn decode_inputs(&self, mut index: usize) -> Vec<usize> {
        let sizes = self.input_sizes();
        let mut out = vec![0; sizes.len()];
        for (slot, &n) in out.iter_mut().zip(&sizes).rev() {
            *slot = index % n;
            index /= n;
        }
        out
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [d0, d1] = self.channel_dims;
        match self.topology {
            Topology::Line { x, t, s, y, b } => {
                write!(f, "line(|x|={x},|t|={t},|s|={s},|y|={y},|b|={b}; d=({d0},{d1}))")
            }
            Topology::TwoPrep { x0, x1, y, b } => {
                write!(f, "two-prep(|x0|={x0},|x1|={x1},|y|={y},|b|={b}; d=({d0},{d1}))")
            }
        }
    }
}

/// A conditional probability table laid out as described in the module docs.
#[derive(Clone, Debug, PartialEq)]
pub struct Behavior {
    scenario: Scenario,
    values: Vec<f64>,
}

impl Behavior {
    pub fn new(scenario: Scenario, values: Vec<f64>) -> Result<Self> {
        if values.len() != scenario.dim() {
            return Err(Error::Structure(format!(
                "behavior has {} entries, scenario {} needs {}",
                values.len(),
                scenario,
                scenario.dim()
            )));
        }
        Ok(Self { scenario, values })
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Re-tags the behavior with a scenario of equal alphabets.
    pub fn with_scenario(mut self, scenario: Scenario) -> Result<Self> {
        if !self.scenario.same_alphabets(&scenario) {
            return Err(Error::Structure("scenario alphabets differ".into()));
        }
        self.scenario = scenario;
        Ok(self)
    }
}

/// Uniform output distribution `1 / (|b| |s|)` for every input tuple.
pub fn white_noise(scenario: &Scenario) -> Behavior {
    let v = 1.0 / scenario.n_outputs() as f64;
    Behavior {
        scenario: *scenario,
        values: vec![v; scenario.dim()],
    }
}

/// Entrywise `(1 - eta) p + eta q`.
pub fn mix(p: &Behavior, q: &Behavior, eta: f64) -> Result<Behavior> {
    if !(0.0..=1.0).contains(&eta) || eta.is_nan() {
        return Err(Error::Range(format!("mixing weight {eta} outside [0, 1]")));
    }
    if !p.scenario.same_alphabets(&q.scenario) {
        return Err(Error::Structure("mixed behaviors belong to different scenarios".into()));
    }
    let values = p
        .values
        .iter()
        .zip(&q.values)
        .map(|(a, b)| (1.0 - eta) * a + eta * b)
        .collect();
    Ok(Behavior {
        scenario: p.scenario,
        values,
    })
}

/// Which constraint family a violation belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstraintFamily {
    /// Entry outside `[0, 1]`.
    Range,
    /// Outputs do not sum to one for some input tuple.
    Normalization,
    /// Transformation marginal depends on the measurement setting.
    NoSignaling,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub family: ConstraintFamily,
    /// Input tuple in device order; for no-signaling the `y` slot is 0 and the
    /// offending transformation outcome is in `output`.
    pub inputs: Vec<usize>,
    pub output: Option<usize>,
    pub residual: f64,
}

/// Result of [`validate_behavior`]; empty means valid.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn of_family(&self, family: ConstraintFamily) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(move |v| v.family == family)
    }
}

/// Checks range, normalization and no-signaling within [`EPS_PROB`].
pub fn validate_behavior(scenario: &Scenario, p: &Behavior) -> Result<ValidationReport> {
    if !scenario.same_alphabets(&p.scenario) {
        return Err(Error::Structure(format!(
            "behavior scenario {} does not match {}",
            p.scenario, scenario
        )));
    }
    validate_values(scenario, &p.values)
}

/// Same as [`validate_behavior`] on a raw value slice.
pub fn validate_values(scenario: &Scenario, values: &[f64]) -> Result<ValidationReport> {
    if values.len() != scenario.dim() {
        return Err(Error::Structure(format!(
            "behavior has {} entries, expected {}",
            values.len(),
            scenario.dim()
        )));
    }
    let n_out = scenario.n_outputs();
    let nb = scenario.b_size();
    let mut violations = Vec::new();

    for (i, block) in values.chunks(n_out).enumerate() {
        for (o, &v) in block.iter().enumerate() {
            let residual = if v < 0.0 {
                -v
            } else if v > 1.0 {
                v - 1.0
            } else {
                0.0
            };
            if residual > EPS_PROB || v.is_nan() {
                violations.push(Violation {
                    family: ConstraintFamily::Range,
                    inputs: scenario.decode_inputs(i),
                    output: Some(o),
                    residual,
                });
            }
        }
        let total: f64 = block.iter().sum();
        if (total - 1.0).abs() > EPS_PROB {
            violations.push(Violation {
                family: ConstraintFamily::Normalization,
                inputs: scenario.decode_inputs(i),
                output: None,
                residual: (total - 1.0).abs(),
            });
        }
    }

    if let Topology::Line { x, t, s, y, .. } = scenario.topology() {
        if y > 1 {
            for xi in 0..x {
                for ti in 0..t {
                    for si in 0..s {
                        let marginals: Vec<f64> = (0..y)
                            .map(|yi| {
                                let start = scenario.line_index(xi, ti, yi, si, 0);
                                values[start..start + nb].iter().sum()
                            })
                            .collect();
                        let hi = marginals.iter().cloned().fold(f64::MIN, f64::max);
                        let lo = marginals.iter().cloned().fold(f64::MAX, f64::min);
                        if hi - lo > EPS_PROB {
                            violations.push(Violation {
                                family: ConstraintFamily::NoSignaling,
                                inputs: vec![xi, ti, 0],
                                output: Some(si),
                                residual: hi - lo,
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(ValidationReport { violations })
}

/// Which bound a witness carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    Classical,
    Quantum,
    Unset,
}

impl BoundKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundKind::Classical => "classical",
            BoundKind::Quantum => "quantum",
            BoundKind::Unset => "unset",
        }
    }
}

/// A linear functional `w . p <= bound` with exact rational coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    scenario: Scenario,
    coefficients: Vec<Rational>,
    bound: Rational,
    bound_kind: BoundKind,
    float_coefficients: Vec<f64>,
}

impl Witness {
    pub fn new(
        scenario: Scenario,
        coefficients: Vec<Rational>,
        bound: Rational,
        bound_kind: BoundKind,
    ) -> Result<Self> {
        if coefficients.len() != scenario.dim() {
            return Err(Error::Structure(format!(
                "witness has {} coefficients, scenario {} needs {}",
                coefficients.len(),
                scenario,
                scenario.dim()
            )));
        }
        let float_coefficients = coefficients.iter().map(rational::to_f64).collect();
        Ok(Self {
            scenario,
            coefficients,
            bound,
            bound_kind,
            float_coefficients,
        })
    }

    /// Two-preparation witness on `p(0 | x0, x1)` given as an `|x0| x |x1|` matrix.
    pub fn from_matrix(
        scenario: Scenario,
        matrix: &[Vec<Rational>],
        bound: Rational,
        bound_kind: BoundKind,
    ) -> Result<Self> {
        let Topology::TwoPrep { x0, x1, y, .. } = scenario.topology() else {
            return Err(Error::Structure("matrix witnesses need a two-preparation scenario".into()));
        };
        if y != 1 {
            return Err(Error::Structure("matrix witnesses need |y| = 1".into()));
        }
        if matrix.len() != x0 || matrix.iter().any(|row| row.len() != x1) {
            return Err(Error::Structure(format!("matrix must be {x0} x {x1}")));
        }
        let mut coefficients = vec![Rational::zero(); scenario.dim()];
        for (a, row) in matrix.iter().enumerate() {
            for (c, w) in row.iter().enumerate() {
                coefficients[scenario.two_prep_index(a, c, 0, 0)] = w.clone();
            }
        }
        Self::new(scenario, coefficients, bound, bound_kind)
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    /// Re-tags the witness for other channel dimensions.
    pub fn with_dims(&self, dims: [usize; 2]) -> Result<Self> {
        let mut w = self.clone();
        w.scenario = self.scenario.with_dims(dims)?;
        Ok(w)
    }

    pub fn with_bound(&self, bound: Rational, kind: BoundKind) -> Self {
        let mut w = self.clone();
        w.bound = bound;
        w.bound_kind = kind;
        w
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn float_coefficients(&self) -> &[f64] {
        &self.float_coefficients
    }

    pub fn bound(&self) -> &Rational {
        &self.bound
    }

    pub fn bound_kind(&self) -> BoundKind {
        self.bound_kind
    }

    pub fn nonzero_count(&self) -> usize {
        self.coefficients.iter().filter(|c| !c.is_zero()).count()
    }

    /// The `|x0| x |x1|` matrix form, when the witness only weights outcome 0 of a
    /// two-preparation scenario with `|y| = 1`.
    pub fn as_matrix(&self) -> Option<Vec<Vec<Rational>>> {
        let Topology::TwoPrep { x0, x1, y, b } = self.scenario.topology() else {
            return None;
        };
        if y != 1 {
            return None;
        }
        let mut rows = Vec::with_capacity(x0);
        for a in 0..x0 {
            let mut row = Vec::with_capacity(x1);
            for c in 0..x1 {
                for bb in 1..b {
                    if !self.coefficients[self.scenario.two_prep_index(a, c, 0, bb)].is_zero() {
                        return None;
                    }
                }
                row.push(self.coefficients[self.scenario.two_prep_index(a, c, 0, 0)].clone());
            }
            rows.push(row);
        }
        Some(rows)
    }

    /// Floating-point value `w . p`.
    pub fn value(&self, p: &Behavior) -> f64 {
        self.value_of(p.values())
    }

    pub fn value_of(&self, values: &[f64]) -> f64 {
        self.float_coefficients
            .iter()
            .zip(values)
            .map(|(w, p)| w * p)
            .sum()
    }

    /// Exact value on a 0/1 vector.
    pub fn exact_value_on_vertex(&self, vertex: &[u8]) -> Rational {
        self.coefficients
            .iter()
            .zip(vertex)
            .filter(|(_, &v)| v != 0)
            .fold(Rational::zero(), |acc, (w, _)| acc + w)
    }

    /// Whether any coefficient is negative.
    pub fn has_negative(&self) -> bool {
        self.coefficients.iter().any(|c| c.is_negative())
    }
}
