//! Interchange formats: triple JSON `{"d", "A", "B", "C"}` with `[re, im]`
//! entries, complex matrices as nested JSON arrays, and dense operators as
//! CSV with interleaved real and imaginary columns.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::embed::DenseOperator;
use crate::linalg::c;
use crate::{CMatrix, Error, MatrixTriple, Result};

/// Row-major matrix of `[re, im]` pairs.
pub type JsonMatrix = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TripleJson {
    pub d: usize,
    #[serde(rename = "A")]
    pub a: JsonMatrix,
    #[serde(rename = "B")]
    pub b: JsonMatrix,
    #[serde(rename = "C")]
    pub c: JsonMatrix,
}

pub fn matrix_to_json(m: &CMatrix) -> JsonMatrix {
    (0..m.nrows())
        .map(|i| {
            (0..m.ncols())
                .map(|j| [m[(i, j)].re, m[(i, j)].im])
                .collect()
        })
        .collect()
}

fn json_to_matrix(name: &'static str, rows: &JsonMatrix, d: usize) -> Result<CMatrix> {
    if rows.len() != d || rows.iter().any(|r| r.len() != d) {
        return Err(Error::Shape {
            name,
            rows: rows.len(),
            cols: rows.first().map_or(0, Vec::len),
            dim: d,
        });
    }
    Ok(CMatrix::from_fn(d, d, |i, j| {
        c(rows[i][j][0], rows[i][j][1])
    }))
}

impl From<&MatrixTriple> for TripleJson {
    fn from(t: &MatrixTriple) -> Self {
        TripleJson {
            d: t.dim(),
            a: matrix_to_json(t.a()),
            b: matrix_to_json(t.b()),
            c: matrix_to_json(t.c()),
        }
    }
}

impl TryFrom<&TripleJson> for MatrixTriple {
    type Error = Error;

    fn try_from(j: &TripleJson) -> Result<Self> {
        MatrixTriple::new(
            json_to_matrix("A", &j.a, j.d)?,
            json_to_matrix("B", &j.b, j.d)?,
            json_to_matrix("C", &j.c, j.d)?,
        )
    }
}

/// Parses triple JSON. Shapes are checked; the shared diagonal is not.
pub fn triple_from_json(text: &str) -> Result<MatrixTriple> {
    let j: TripleJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    MatrixTriple::try_from(&j)
}

pub fn triple_to_json(t: &MatrixTriple) -> String {
    serde_json::to_string(&TripleJson::from(t)).expect("finite floats serialize")
}

/// Complex matrix from nested arrays whose entries are numbers or
/// `[re, im]` pairs.
pub fn matrix_from_value(v: &Value) -> Result<CMatrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?;
    let n = rows.len();
    let mut entries = Vec::with_capacity(n * n);
    for row in rows {
        let row = row
            .as_array()
            .ok_or_else(|| Error::Parse("matrix row must be an array".into()))?;
        if row.len() != n {
            return Err(Error::Shape {
                name: "matrix",
                rows: n,
                cols: row.len(),
                dim: n,
            });
        }
        for z in row {
            entries.push(complex_from_value(z)?);
        }
    }
    if n == 0 {
        return Err(Error::Parse("empty matrix".into()));
    }
    Ok(CMatrix::from_row_slice(n, n, &entries))
}

fn complex_from_value(z: &Value) -> Result<crate::C64> {
    let num = |x: &Value| {
        x.as_f64()
            .ok_or_else(|| Error::Parse(format!("expected a number, got {x}")))
    };
    match z {
        Value::Number(_) => Ok(c(num(z)?, 0.0)),
        Value::Array(p) if p.len() == 2 => Ok(c(num(&p[0])?, num(&p[1])?)),
        other => Err(Error::Parse(format!("bad matrix entry {other}"))),
    }
}

/// Formats a float with 17 significant digits.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// One CSV line per row: `re,im,re,im,…`.
pub fn dense_to_csv(x: &DenseOperator) -> String {
    let m = x.matrix();
    let mut out = String::new();
    for i in 0..m.nrows() {
        let line: Vec<String> = (0..m.ncols())
            .flat_map(|j| [format_f64(m[(i, j)].re), format_f64(m[(i, j)].im)])
            .collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

/// Inverse of [`dense_to_csv`].
pub fn dense_from_csv(text: &str) -> Result<DenseOperator> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        let row = line
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Parse(format!("bad CSV number `{tok}`")))
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != 2 * n) {
        return Err(Error::Parse(format!(
            "expected {n} rows of {} interleaved values",
            2 * n
        )));
    }
    DenseOperator::new(CMatrix::from_fn(n, n, |i, j| {
        c(rows[i][2 * j], rows[i][2 * j + 1])
    }))
}
