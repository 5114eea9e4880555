//! TOML text format for quantum strategies.
//!
//! Matrices are arrays of rows; entries are strings `"re"`, `"im i"` or
//! `"re+im i"` (no spaces, e.g. `"0.5-0.25i"`). Floats are written in shortest
//! round-trip form, so files reload bit for bit.
//!
//! ```toml
//! kind = "line"            # or "two-prep", "entangled"
//! dims = [2, 2]
//! states = [...]           # [x] matrices
//! instruments = [...]      # [t][s][j] Kraus operators
//! povms = [...]            # [y][b]
//! ```
//!
//! Two-preparation files carry `states0` and `states1`; entangled files carry
//! `shared`, `unitaries0` and `unitaries1`.

use serde::{Deserialize, Serialize};

use super::cmatrix::{CMatrix, C64};
use super::strategy::QuantumStrategy;
use crate::error::{Error, Result};

type Mat = Vec<Vec<String>>;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Record {
    kind: String,
    dims: [usize; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    states: Option<Vec<Mat>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    instruments: Option<Vec<Vec<Vec<Mat>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    states0: Option<Vec<Mat>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    states1: Option<Vec<Mat>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    shared: Option<Mat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    unitaries0: Option<Vec<Mat>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    unitaries1: Option<Vec<Mat>>,
    povms: Vec<Vec<Mat>>,
}

pub fn format_complex(z: C64) -> String {
    if z.im == 0.0 && z.im.is_sign_positive() {
        format!("{:?}", z.re)
    } else if z.re == 0.0 && z.re.is_sign_positive() {
        format!("{:?}i", z.im)
    } else {
        let sign = if z.im.is_sign_negative() { '-' } else { '+' };
        format!("{:?}{sign}{:?}i", z.re, z.im.abs())
    }
}

pub fn parse_complex(text: &str) -> Result<C64> {
    let bad = || Error::parse("complex", format!("cannot read `{text}`"));
    let s = text.trim();
    let float = |t: &str| t.parse::<f64>().map_err(|_| bad());
    let Some(body) = s.strip_suffix('i') else {
        return Ok(C64::new(float(s)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => {
            let im = match &body[k..] {
                "+" => 1.0,
                "-" => -1.0,
                t => float(t)?,
            };
            Ok(C64::new(float(&body[..k])?, im))
        }
        None => {
            let im = match body {
                "" | "+" => 1.0,
                "-" => -1.0,
                t => float(t)?,
            };
            Ok(C64::new(0.0, im))
        }
    }
}

fn write_mat(m: &CMatrix) -> Mat {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| format_complex(m[(i, j)])).collect())
        .collect()
}

fn read_mat(m: &Mat, field: &str) -> Result<CMatrix> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    if rows == 0 || cols == 0 || m.iter().any(|r| r.len() != cols) {
        return Err(Error::parse(field, "matrix rows must be non-empty and of equal length"));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for r in m {
        for e in r {
            data.push(parse_complex(e).map_err(|_| Error::parse(field, format!("cannot read entry `{e}`")))?);
        }
    }
    Ok(CMatrix::from_vec(rows, cols, data))
}

fn read_list(list: &[Mat], field: &str) -> Result<Vec<CMatrix>> {
    list.iter()
        .enumerate()
        .map(|(i, m)| read_mat(m, &format!("{field}[{i}]")))
        .collect()
}

fn read_nested(list: &[Vec<Mat>], field: &str) -> Result<Vec<Vec<CMatrix>>> {
    list.iter()
        .enumerate()
        .map(|(i, l)| read_list(l, &format!("{field}[{i}]")))
        .collect()
}

fn required<T>(v: Option<T>, field: &str) -> Result<T> {
    v.ok_or_else(|| Error::parse(field, "missing"))
}

/// Reads a strategy. Invariants are checked later, against a scenario.
pub fn load_strategy(text: &str) -> Result<QuantumStrategy> {
    let r: Record = toml::from_str(text).map_err(|e| Error::parse("strategy", e.message().to_string()))?;
    let povms = read_nested(&r.povms, "povms")?;
    let dims = r.dims;
    match r.kind.as_str() {
        "line" => {
            let instruments = required(r.instruments, "instruments")?
                .iter()
                .enumerate()
                .map(|(t, l)| read_nested(l, &format!("instruments[{t}]")))
                .collect::<Result<_>>()?;
            Ok(QuantumStrategy::Line {
                dims,
                states: read_list(&required(r.states, "states")?, "states")?,
                instruments,
                povms,
            })
        }
        "two-prep" => Ok(QuantumStrategy::TwoPrep {
            dims,
            states0: read_list(&required(r.states0, "states0")?, "states0")?,
            states1: read_list(&required(r.states1, "states1")?, "states1")?,
            povms,
        }),
        "entangled" => Ok(QuantumStrategy::Entangled {
            dims,
            shared: read_mat(&required(r.shared, "shared")?, "shared")?,
            unitaries0: read_list(&required(r.unitaries0, "unitaries0")?, "unitaries0")?,
            unitaries1: read_list(&required(r.unitaries1, "unitaries1")?, "unitaries1")?,
            povms,
        }),
        other => Err(Error::parse("kind", format!("unknown strategy kind `{other}`"))),
    }
}

pub fn strategy_to_string(s: &QuantumStrategy) -> String {
    let list = |l: &[CMatrix]| l.iter().map(write_mat).collect::<Vec<_>>();
    let nested = |l: &[Vec<CMatrix>]| l.iter().map(|v| list(v)).collect::<Vec<_>>();
    let mut r = Record {
        kind: String::new(),
        dims: s.dims(),
        states: None,
        instruments: None,
        states0: None,
        states1: None,
        shared: None,
        unitaries0: None,
        unitaries1: None,
        povms: nested(s.povms()),
    };
    match s {
        QuantumStrategy::Line { states, instruments, .. } => {
            r.kind = "line".into();
            r.states = Some(list(states));
            r.instruments = Some(instruments.iter().map(|t| nested(t)).collect());
        }
        QuantumStrategy::TwoPrep { states0, states1, .. } => {
            r.kind = "two-prep".into();
            r.states0 = Some(list(states0));
            r.states1 = Some(list(states1));
        }
        QuantumStrategy::Entangled {
            shared,
            unitaries0,
            unitaries1,
            ..
        } => {
            r.kind = "entangled".into();
            r.shared = Some(write_mat(shared));
            r.unitaries0 = Some(list(unitaries0));
            r.unitaries1 = Some(list(unitaries1));
        }
    }
    toml::to_string(&r).expect("strategy record serializes")
}
