//! File formats. All indices in these formats are 1-based and all scalars
//! are reduced-fraction strings (`"3"`, `"-1/2"`).
//!
//! * Cayley table, text: a line with `m`, then `m` lines of `m` integers.
//! * Cayley table, JSON: `{"m": 2, "table": [[1, 1], [1, 2]]}`.
//! * Cubic matrix, JSON: `{"m": 2, "entries": [[["1", "0"], ...], ...]}`.
//! * Census, JSON: `{"m", "total", "orbit_count", "orbits": [{"representative", "size"}]}`.

use serde::{Deserialize, Serialize};

use crate::cubic::CubicMatrix;
use crate::enumerate::{CensusResult, OrbitSummary};
use crate::error::{CubalError, Result};
use crate::field::{format_rational, parse_rational, Rational};
use crate::linalg::SquareMatrix;
use crate::semigroup::Operation;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperationDoc {
    pub m: usize,
    pub table: Vec<Vec<usize>>,
}

impl From<&Operation> for OperationDoc {
    fn from(op: &Operation) -> Self {
        OperationDoc { m: op.m(), table: op.rows_one_based() }
    }
}

impl OperationDoc {
    pub fn into_operation(self, unchecked: bool) -> Result<Operation> {
        if self.table.len() != self.m {
            return Err(CubalError::MalformedTable(format!(
                "m = {} but the table has {} rows",
                self.m,
                self.table.len()
            )));
        }
        if unchecked {
            Operation::from_rows_unchecked(&self.table)
        } else {
            Operation::from_rows(&self.table)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicMatrixDoc {
    pub m: usize,
    pub entries: Vec<Vec<Vec<String>>>,
}

impl From<&CubicMatrix> for CubicMatrixDoc {
    fn from(x: &CubicMatrix) -> Self {
        let m = x.m();
        let entries = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| (0..m).map(|k| format_rational(&x[(i, j, k)])).collect())
                    .collect()
            })
            .collect();
        CubicMatrixDoc { m, entries }
    }
}

impl CubicMatrixDoc {
    pub fn into_matrix(self) -> Result<CubicMatrix> {
        let m = self.m;
        let shape_error = || CubalError::Parse(format!("entries must be an {m}×{m}×{m} array"));
        if m == 0 || self.entries.len() != m {
            return Err(shape_error());
        }
        let mut flat = Vec::with_capacity(m * m * m);
        for plane in &self.entries {
            if plane.len() != m {
                return Err(shape_error());
            }
            for row in plane {
                if row.len() != m {
                    return Err(shape_error());
                }
                for s in row {
                    flat.push(parse_rational(s)?);
                }
            }
        }
        CubicMatrix::from_vec(m, flat)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitDoc {
    pub representative: Vec<Vec<usize>>,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusDoc {
    pub m: usize,
    pub total: u64,
    pub orbit_count: usize,
    pub orbits: Vec<OrbitDoc>,
}

impl From<&CensusResult> for CensusDoc {
    fn from(c: &CensusResult) -> Self {
        CensusDoc {
            m: c.m,
            total: c.total,
            orbit_count: c.orbit_count,
            orbits: c
                .orbits
                .iter()
                .map(|o| OrbitDoc { representative: o.representative.rows_one_based(), size: o.size })
                .collect(),
        }
    }
}

impl CensusDoc {
    pub fn into_census(self) -> Result<CensusResult> {
        let orbits = self
            .orbits
            .into_iter()
            .map(|o| {
                Ok(OrbitSummary { representative: Operation::from_rows(&o.representative)?, size: o.size })
            })
            .collect::<Result<Vec<_>>>()?;
        if orbits.len() != self.orbit_count
            || orbits.iter().map(|o| o.size as u64).sum::<u64>() != self.total
        {
            return Err(CubalError::Parse("census counts are inconsistent".into()));
        }
        Ok(CensusResult { m: self.m, total: self.total, orbit_count: self.orbit_count, orbits })
    }
}

pub fn square_matrix_rows(b: &SquareMatrix) -> Vec<Vec<String>> {
    b.to_rows()
        .iter()
        .map(|row| row.iter().map(format_rational).collect())
        .collect()
}

pub fn parse_square_matrix(rows: &[Vec<String>]) -> Result<SquareMatrix> {
    let parsed = rows
        .iter()
        .map(|row| row.iter().map(|s| parse_rational(s)).collect::<Result<Vec<Rational>>>())
        .collect::<Result<Vec<_>>>()?;
    SquareMatrix::from_rows(parsed)
}

fn json_error(e: serde_json::Error) -> CubalError {
    CubalError::Parse(e.to_string())
}

/// Parses the text Cayley format.
pub fn parse_operation_text(text: &str, unchecked: bool) -> Result<Operation> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| CubalError::Parse("empty table file".into()))?;
    let m: usize = header
        .parse()
        .map_err(|_| CubalError::Parse(format!("first line must be m, found {header:?}")))?;
    let rows = lines
        .map(|line| {
            line.split_whitespace()
                .map(|tok| tok.parse::<usize>().map_err(|_| CubalError::Parse(format!("bad entry {tok:?}"))))
                .collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    OperationDoc { m, table: rows }.into_operation(unchecked)
}

pub fn format_operation_text(op: &Operation) -> String {
    let mut out = format!("{}\n", op.m());
    for row in op.rows_one_based() {
        let row: Vec<String> = row.iter().map(usize::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_operation_json(text: &str, unchecked: bool) -> Result<Operation> {
    serde_json::from_str::<OperationDoc>(text).map_err(json_error)?.into_operation(unchecked)
}

/// Accepts either format, choosing JSON when the first non-blank character
/// is `{`.
pub fn parse_operation(text: &str, unchecked: bool) -> Result<Operation> {
    if text.trim_start().starts_with('{') {
        parse_operation_json(text, unchecked)
    } else {
        parse_operation_text(text, unchecked)
    }
}

pub fn operation_to_json(op: &Operation) -> String {
    serde_json::to_string(&OperationDoc::from(op)).expect("serializable")
}

pub fn parse_cubic_matrix(text: &str) -> Result<CubicMatrix> {
    serde_json::from_str::<CubicMatrixDoc>(text).map_err(json_error)?.into_matrix()
}

pub fn cubic_matrix_to_json(x: &CubicMatrix) -> String {
    serde_json::to_string(&CubicMatrixDoc::from(x)).expect("serializable")
}

pub fn parse_census(text: &str) -> Result<CensusResult> {
    serde_json::from_str::<CensusDoc>(text).map_err(json_error)?.into_census()
}

pub fn census_to_json(c: &CensusResult) -> String {
    serde_json::to_string(&CensusDoc::from(c)).expect("serializable")
}
