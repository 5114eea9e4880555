//! TOML text formats for scenarios, witnesses and behaviors.
//!
//! ```toml
//! # scenario
//! topology = "line"        # or "two-prep" (keys x0, x1 instead of x, t, s)
//! x = 3
//! t = 2
//! s = 1
//! y = 2
//! b = 2
//! channel_dims = [2, 2]
//! ```
//!
//! A witness file carries `bound`, optional `bound_kind`, and either a flat
//! `coefficients` list (integers or `"a/b"` strings, behavior layout) or, for
//! two-preparation scenarios with `|y| = 1`, a `matrix` of `p(0 | x0, x1)`
//! weights. A `[scenario]` table may be embedded. Behavior files carry
//! `values` (floats) and an optional `[scenario]` table.

use serde::{Deserialize, Serialize};
use toml::Value;

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::scenario::{Behavior, BoundKind, Scenario, Topology, Witness};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioRecord {
    topology: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    x: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    x0: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    x1: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    t: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    s: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    y: Option<usize>,
    b: usize,
    channel_dims: Vec<usize>,
}

impl From<&Scenario> for ScenarioRecord {
    fn from(s: &Scenario) -> Self {
        let dims = s.channel_dims().to_vec();
        match s.topology() {
            Topology::Line { x, t, s, y, b } => ScenarioRecord {
                topology: "line".into(),
                x: Some(x),
                x0: None,
                x1: None,
                t: Some(t),
                s: Some(s),
                y: Some(y),
                b,
                channel_dims: dims,
            },
            Topology::TwoPrep { x0, x1, y, b } => ScenarioRecord {
                topology: "two-prep".into(),
                x: None,
                x0: Some(x0),
                x1: Some(x1),
                t: None,
                s: None,
                // |y| = 1 is dropped from files.
                y: if y == 1 { None } else { Some(y) },
                b,
                channel_dims: dims,
            },
        }
    }
}

impl ScenarioRecord {
    fn into_scenario(self) -> Result<Scenario> {
        let need = |v: Option<usize>, name: &str| v.ok_or_else(|| Error::parse(name, "missing"));
        let dims: [usize; 2] = self
            .channel_dims
            .as_slice()
            .try_into()
            .map_err(|_| Error::parse("channel_dims", "expected exactly two channel dimensions"))?;
        match self.topology.as_str() {
            "line" => {
                if self.x0.is_some() || self.x1.is_some() {
                    return Err(Error::parse("x0", "not a line key"));
                }
                Scenario::line(
                    need(self.x, "x")?,
                    need(self.t, "t")?,
                    self.s.unwrap_or(1),
                    need(self.y, "y")?,
                    self.b,
                    dims,
                )
            }
            "two-prep" => {
                if self.x.is_some() || self.t.is_some() || self.s.is_some() {
                    return Err(Error::parse("x", "not a two-prep key"));
                }
                Scenario::two_prep(
                    need(self.x0, "x0")?,
                    need(self.x1, "x1")?,
                    self.y.unwrap_or(1),
                    self.b,
                    dims,
                )
            }
            other => Err(Error::parse("topology", format!("unknown topology `{other}`"))),
        }
        .map_err(|e| match e {
            Error::Structure(m) => Error::parse("scenario", m),
            other => other,
        })
    }
}

fn toml_error(e: toml::de::Error) -> Error {
    Error::parse("toml", e.message().to_string())
}

/// Parses a scenario file.
pub fn load_scenario(text: &str) -> Result<Scenario> {
    let record: ScenarioRecord = toml::from_str(text).map_err(toml_error)?;
    record.into_scenario()
}

pub fn scenario_to_string(s: &Scenario) -> String {
    toml::to_string(&ScenarioRecord::from(s)).expect("scenario serializes")
}

fn parse_coefficient(v: &Value, field: &str) -> Result<Rational> {
    match v {
        Value::Integer(i) => Ok(Rational::from_integer((*i).into())),
        Value::String(s) => {
            parse_rational(s).ok_or_else(|| Error::parse(field, format!("`{s}` is not a rational")))
        }
        other => Err(Error::parse(
            field,
            format!("expected an integer or \"a/b\" string, found {}", other.type_str()),
        )),
    }
}

fn parse_bound_kind(v: Option<&Value>) -> Result<BoundKind> {
    match v {
        None => Ok(BoundKind::Unset),
        Some(Value::String(s)) => match s.as_str() {
            "classical" => Ok(BoundKind::Classical),
            "quantum" => Ok(BoundKind::Quantum),
            "unset" => Ok(BoundKind::Unset),
            other => Err(Error::parse("bound_kind", format!("unknown kind `{other}`"))),
        },
        Some(_) => Err(Error::parse("bound_kind", "expected a string")),
    }
}

fn embedded_scenario(table: &toml::Table) -> Result<Option<Scenario>> {
    match table.get("scenario") {
        None => Ok(None),
        Some(v) => {
            let record: ScenarioRecord = v
                .clone()
                .try_into()
                .map_err(|e: toml::de::Error| Error::parse("scenario", e.message().to_string()))?;
            record.into_scenario().map(Some)
        }
    }
}

/// Parses a witness file against `scenario`. An embedded `[scenario]` table must agree.
pub fn load_witness(text: &str, scenario: &Scenario) -> Result<Witness> {
    let table: toml::Table = text.parse().map_err(toml_error)?;
    if let Some(embedded) = embedded_scenario(&table)? {
        if embedded != *scenario {
            return Err(Error::parse(
                "scenario",
                format!("embedded scenario {embedded} differs from {scenario}"),
            ));
        }
    }
    witness_from_table(&table, scenario)
}

/// Parses a witness file that embeds its own `[scenario]` table.
pub fn load_witness_file(text: &str) -> Result<Witness> {
    let table: toml::Table = text.parse().map_err(toml_error)?;
    let scenario = embedded_scenario(&table)?.ok_or_else(|| Error::parse("scenario", "missing"))?;
    witness_from_table(&table, &scenario)
}

fn witness_from_table(table: &toml::Table, scenario: &Scenario) -> Result<Witness> {
    for key in table.keys() {
        if !matches!(key.as_str(), "scenario" | "bound" | "bound_kind" | "coefficients" | "matrix") {
            return Err(Error::parse(key.as_str(), "unknown key"));
        }
    }
    let bound = match table.get("bound") {
        Some(v) => parse_coefficient(v, "bound")?,
        None => return Err(Error::parse("bound", "missing")),
    };
    let kind = parse_bound_kind(table.get("bound_kind"))?;
    let structural = |field: &str| {
        let field = field.to_string();
        move |e: Error| match e {
            Error::Structure(m) => Error::parse(field.clone(), m),
            other => other,
        }
    };
    match (table.get("coefficients"), table.get("matrix")) {
        (Some(_), Some(_)) => Err(Error::parse("matrix", "give either coefficients or matrix")),
        (None, None) => Err(Error::parse("coefficients", "missing")),
        (Some(Value::Array(items)), None) => {
            let coeffs = items
                .iter()
                .enumerate()
                .map(|(i, v)| parse_coefficient(v, &format!("coefficients[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            Witness::new(*scenario, coeffs, bound, kind).map_err(structural("coefficients"))
        }
        (None, Some(Value::Array(rows))) => {
            let matrix = rows
                .iter()
                .enumerate()
                .map(|(r, row)| match row {
                    Value::Array(cells) => cells
                        .iter()
                        .enumerate()
                        .map(|(c, v)| parse_coefficient(v, &format!("matrix[{r}][{c}]")))
                        .collect::<Result<Vec<_>>>(),
                    _ => Err(Error::parse(format!("matrix[{r}]"), "expected a list")),
                })
                .collect::<Result<Vec<_>>>()?;
            Witness::from_matrix(*scenario, &matrix, bound, kind).map_err(structural("matrix"))
        }
        (Some(_), None) => Err(Error::parse("coefficients", "expected a list")),
        (None, Some(_)) => Err(Error::parse("matrix", "expected a list of lists")),
    }
}

/// Serializes a witness with its scenario embedded. Coefficients are written as
/// exact `"a/b"` strings in behavior layout.
pub fn witness_to_string(w: &Witness) -> String {
    let mut table = toml::Table::new();
    table.insert("bound".into(), Value::String(format_rational(w.bound())));
    table.insert("bound_kind".into(), Value::String(w.bound_kind().as_str().into()));
    table.insert(
        "coefficients".into(),
        Value::Array(
            w.coefficients()
                .iter()
                .map(|c| Value::String(format_rational(c)))
                .collect(),
        ),
    );
    table.insert(
        "scenario".into(),
        Value::try_from(ScenarioRecord::from(w.scenario())).expect("scenario serializes"),
    );
    toml::to_string(&table).expect("witness serializes")
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BehaviorRecord {
    values: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    scenario: Option<ScenarioRecord>,
}

/// Parses a behavior file. `scenario` is used when the file embeds none.
pub fn load_behavior(text: &str, scenario: Option<&Scenario>) -> Result<Behavior> {
    let record: BehaviorRecord = toml::from_str(text).map_err(toml_error)?;
    let s = match (record.scenario, scenario) {
        (Some(r), Some(given)) => {
            let s = r.into_scenario()?;
            if !s.same_alphabets(given) {
                return Err(Error::parse("scenario", "embedded scenario differs"));
            }
            *given
        }
        (Some(r), None) => r.into_scenario()?,
        (None, Some(given)) => *given,
        (None, None) => return Err(Error::parse("scenario", "missing")),
    };
    Behavior::new(s, record.values).map_err(|e| match e {
        Error::Structure(m) => Error::parse("values", m),
        other => other,
    })
}

pub fn behavior_to_string(p: &Behavior) -> String {
    toml::to_string(&BehaviorRecord {
        values: p.values().to_vec(),
        scenario: Some(ScenarioRecord::from(p.scenario())),
    })
    .expect("behavior serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    const APPENDIX_1: &str = r#"
bound = 2
bound_kind = "classical"
matrix = [[-1, 1, 1], [-1, 0, -1], [1, 1, -1]]
"#;

    #[test]
    fn case_a_scenario_round_trips() {
        let s = Scenario::line(3, 2, 1, 2, 2, [2, 2]).unwrap();
        let text = scenario_to_string(&s);
        assert_eq!(load_scenario(&text).unwrap(), s);
        assert_eq!(scenario_to_string(&load_scenario(&text).unwrap()), text);
    }

    #[test]
    fn two_prep_drops_trivial_y() {
        let s = Scenario::two_prep(3, 3, 1, 2, [2, 2]).unwrap();
        let text = scenario_to_string(&s);
        assert!(!text.lines().any(|l| l.starts_with("y ")), "{text}");
        assert_eq!(load_scenario(&text).unwrap(), s);
    }

    #[test]
    fn appendix_matrix_parses() {
        let s = Scenario::two_prep(3, 3, 1, 2, [2, 2]).unwrap();
        let w = load_witness(APPENDIX_1, &s).unwrap();
        assert_eq!(w.bound(), &int(2));
        assert_eq!(w.bound_kind(), BoundKind::Classical);
        assert_eq!(w.coefficients()[s.two_prep_index(0, 0, 0, 0)], int(-1));
        assert_eq!(w.coefficients()[s.two_prep_index(2, 1, 0, 0)], int(1));
        assert_eq!(w.coefficients()[s.two_prep_index(2, 1, 0, 1)], int(0));
        let text = witness_to_string(&w);
        assert_eq!(load_witness_file(&text).unwrap(), w);
        assert_eq!(witness_to_string(&load_witness_file(&text).unwrap()), text);
    }

    #[test]
    fn rational_strings_are_exact() {
        let s = Scenario::two_prep(1, 1, 1, 2, [2, 2]).unwrap();
        let w = load_witness("bound = \"19/24\"\ncoefficients = [\"1/3\", -2]\n", &s).unwrap();
        assert_eq!(w.coefficients()[0], crate::rational::frac(1, 3));
        assert_eq!(w.bound(), &crate::rational::frac(19, 24));
    }

    #[test]
    fn bad_witness_texts_name_the_field() {
        let s = Scenario::two_prep(3, 3, 1, 2, [2, 2]).unwrap();
        let short = "bound = 2\ncoefficients = [1, 2, 3]\n";
        assert!(matches!(load_witness(short, &s), Err(Error::Parse { field, .. }) if field == "coefficients"));
        let float = "bound = 2\ncoefficients = [0.5]\n";
        assert!(matches!(load_witness(float, &s), Err(Error::Parse { field, .. }) if field == "coefficients[0]"));
        let bad = "bound = \"x/2\"\nmatrix = [[1]]\n";
        assert!(matches!(load_witness(bad, &s), Err(Error::Parse { field, .. }) if field == "bound"));
        let ragged = "bound = 1\nmatrix = [[1, 2, 3], [1, 2], [1, 2, 3]]\n";
        assert!(matches!(load_witness(ragged, &s), Err(Error::Parse { field, .. }) if field == "matrix"));
        assert!(load_scenario("topology = \"ring\"\nb = 2\nchannel_dims = [2, 2]\n").is_err());
        assert!(load_scenario("topology = \"line\"\nx = 3\nt = 2\ny = 2\nb = 2\nchannel_dims = [2]\n").is_err());
    }

    #[test]
    fn behavior_round_trips() {
        let s = Scenario::line(3, 2, 1, 2, 2, [2, 2]).unwrap();
        let p = crate::scenario::white_noise(&s);
        let text = behavior_to_string(&p);
        assert_eq!(load_behavior(&text, None).unwrap(), p);
    }
}
