//! The Hadamardness functional `𝔥(C) = Tr[(CC†)²] = Σ_{i,j} |⟨C_i, C_j⟩|²`
//! and its exhaustive minimization over dephased sign matrices.
//!
//! Sign matrices are stored as one bitmask per row, bit `d − 1 − k` set iff
//! entry `k` is `−1`. Row inner products are then `d − 2·popcount(r_i ⊕ r_j)`.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::linalg::c;
use crate::par::{map_indexed, Execution};
use crate::{CMatrix, Error, Result};

/// Largest dimension accepted by [`exhaustive_min`].
pub const MAX_EXHAUSTIVE_DIM: usize = 6;
/// Largest dimension representable by the row bitmasks.
pub const MAX_SIGN_DIM: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignMatrix {
    dim: usize,
    rows: Vec<u64>,
}

impl SignMatrix {
    /// All-ones matrix `J_d`.
    pub fn ones(dim: usize) -> Result<Self> {
        Self::from_bits(dim, vec![0; dim])
    }

    pub fn from_bits(dim: usize, rows: Vec<u64>) -> Result<Self> {
        if dim == 0 || dim > MAX_SIGN_DIM {
            return Err(Error::OutOfRange(format!(
                "sign matrix dimension must lie in 1..={MAX_SIGN_DIM}, got {dim}"
            )));
        }
        if rows.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: rows.len(),
            });
        }
        let mask = row_mask(dim);
        if rows.iter().any(|r| r & !mask != 0) {
            return Err(Error::InvalidArgument(
                "row bitmask wider than the dimension".into(),
            ));
        }
        Ok(SignMatrix { dim, rows })
    }

    /// From rows of `±1` entries.
    pub fn from_signs(rows: &[Vec<i64>]) -> Result<Self> {
        let dim = rows.len();
        let mut bits = Vec::with_capacity(dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::Shape {
                    name: "sign matrix",
                    rows: dim,
                    cols: row.len(),
                    dim,
                });
            }
            let mut r = 0_u64;
            for (k, &s) in row.iter().enumerate() {
                match s {
                    1 => {}
                    -1 => r |= 1 << (dim - 1 - k),
                    other => {
                        return Err(Error::InvalidArgument(format!(
                            "entry ({i},{k}) is {other}, expected ±1"
                        )))
                    }
                }
            }
            bits.push(r);
        }
        Self::from_bits(dim, bits)
    }

    /// The dephased matrix with the given enumeration index: the free entries
    /// (rows and columns `1..d`) read row-major, most significant bit first,
    /// with a set bit meaning `−1`.
    pub fn from_dephased_index(dim: usize, index: u64) -> Result<Self> {
        let free = dim.saturating_sub(1).pow(2);
        if dim < 2 || free > 64 || (free < 64 && index >> free != 0) {
            return Err(Error::OutOfRange(format!(
                "index {index} out of range for dephased d = {dim}"
            )));
        }
        let mut rows = vec![0_u64; dim];
        for (r, row) in rows.iter_mut().enumerate().skip(1) {
            *row = dephased_row(dim, index, r);
        }
        Self::from_bits(dim, rows)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row_bits(&self) -> &[u64] {
        &self.rows
    }

    /// Entry `(i, k)` as `±1`.
    pub fn get(&self, i: usize, k: usize) -> i64 {
        if self.rows[i] >> (self.dim - 1 - k) & 1 == 1 {
            -1
        } else {
            1
        }
    }

    pub fn to_signs(&self) -> Vec<Vec<i64>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|k| self.get(i, k)).collect())
            .collect()
    }

    pub fn to_matrix(&self) -> CMatrix {
        CMatrix::from_fn(self.dim, self.dim, |i, k| c(self.get(i, k) as f64, 0.0))
    }

    /// First row and first column all `+1`.
    pub fn is_dephased(&self) -> bool {
        let top = 1_u64 << (self.dim - 1);
        self.rows[0] == 0 && self.rows.iter().all(|r| r & top == 0)
    }

    pub fn flip_row(&mut self, i: usize) {
        self.rows[i] ^= row_mask(self.dim);
    }

    pub fn flip_col(&mut self, k: usize) {
        let bit = 1_u64 << (self.dim - 1 - k);
        self.rows.iter_mut().for_each(|r| *r ^= bit);
    }
}

impl fmt::Display for SignMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            let line: String = (0..self.dim)
                .map(|k| if self.get(i, k) > 0 { '+' } else { '-' })
                .collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

impl FromStr for SignMatrix {
    type Err = Error;

    /// Rows of `+`/`-` characters, or of whitespace-separated `1`/`-1`.
    fn from_str(s: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for line in s.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let row: Vec<i64> = if line.chars().any(|ch| ch.is_ascii_digit()) {
                line.split(|ch: char| ch.is_whitespace() || ch == ',')
                    .filter(|tok| !tok.is_empty())
                    .map(|tok| {
                        tok.trim_start_matches('+')
                            .parse::<i64>()
                            .map_err(|_| Error::Parse(format!("bad sign entry `{tok}`")))
                    })
                    .collect::<Result<_>>()?
            } else {
                line.chars()
                    .filter(|ch| !ch.is_whitespace())
                    .map(|ch| match ch {
                        '+' => Ok(1),
                        '-' => Ok(-1),
                        other => Err(Error::Parse(format!("bad sign character `{other}`"))),
                    })
                    .collect::<Result<_>>()?
            };
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(Error::Parse("empty sign matrix".into()));
        }
        SignMatrix::from_signs(&rows)
    }
}

impl Serialize for SignMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_signs().serialize(s)
    }
}

fn row_mask(dim: usize) -> u64 {
    if dim == 64 {
        u64::MAX
    } else {
        (1_u64 << dim) - 1
    }
}

/// Row `r ≥ 1` of the dephased matrix with the given index.
#[inline]
fn dephased_row(dim: usize, index: u64, r: usize) -> u64 {
    let w = dim - 1;
    (index >> (w * (w - r))) & ((1_u64 << w) - 1)
}

#[inline]
fn inner_product(dim: usize, x: u64, y: u64) -> i64 {
    dim as i64 - 2 * (x ^ y).count_ones() as i64
}

/// `𝔥` of a sign matrix in exact integer arithmetic.
pub fn h_measure_sign(m: &SignMatrix) -> u64 {
    let d = m.dim;
    let mut off = 0_u64;
    for i in 0..d {
        for j in (i + 1)..d {
            let ip = inner_product(d, m.rows[i], m.rows[j]);
            off += (ip * ip) as u64;
        }
    }
    (d as u64).pow(3) + 2 * off
}

/// `𝔥(C) = Σ_{i,j} |⟨C_i, C_j⟩|²` for a complex square matrix.
pub fn h_measure_complex(m: &CMatrix) -> f64 {
    let g = m * m.adjoint();
    g.iter().map(|z| z.norm_sqr()).sum()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchResult {
    pub dim: usize,
    pub min_value: u64,
    pub argmin_count: u64,
    /// Enumeration index of `first_argmin`.
    pub first_index: u64,
    pub first_argmin: SignMatrix,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Partial {
    min: u64,
    count: u64,
    first: u64,
}

impl Partial {
    fn merge(self, other: Partial) -> Partial {
        match self.min.cmp(&other.min) {
            std::cmp::Ordering::Less => self,
            std::cmp::Ordering::Greater => other,
            std::cmp::Ordering::Equal => Partial {
                min: self.min,
                count: self.count + other.count,
                first: self.first.min(other.first),
            },
        }
    }
}

/// Scans the indices `[start, start + len)`; `len` is a multiple of the
/// last-row range `2^{d−1}` and `start` is aligned to it.
fn scan(dim: usize, start: u64, len: u64) -> Partial {
    let w = dim - 1;
    let last_range = 1_u64 << w;
    let base = (dim as u64).pow(3);
    let mut best = Partial {
        min: u64::MAX,
        count: 0,
        first: u64::MAX,
    };
    let mut rows = [0_u64; MAX_EXHAUSTIVE_DIM];
    let mut prefix = start;
    while prefix < start + len {
        for (r, row) in rows.iter_mut().enumerate().take(w).skip(1) {
            *row = dephased_row(dim, prefix, r);
        }
        let mut fixed = 0_i64;
        for i in 0..w {
            for j in (i + 1)..w {
                let ip = inner_product(dim, rows[i], rows[j]);
                fixed += ip * ip;
            }
        }
        for last in 0..last_range {
            let mut acc = fixed;
            for &row in &rows[..w] {
                let ip = inner_product(dim, row, last);
                acc += ip * ip;
            }
            let h = base + 2 * acc as u64;
            if h < best.min {
                best = Partial {
                    min: h,
                    count: 1,
                    first: prefix + last,
                };
            } else if h == best.min {
                best.count += 1;
            }
        }
        prefix += last_range;
    }
    best
}

/// Exhaustive minimum of `𝔥` over all `2^{(d−1)²}` dephased sign matrices,
/// using the default execution strategy.
pub fn exhaustive_min(dim: usize) -> Result<SearchResult> {
    exhaustive_min_with(dim, Execution::default())
}

/// Exhaustive minimum with an explicit execution strategy. The index range is
/// cut into a fixed number of chunks, so the result does not depend on the
/// number of workers.
pub fn exhaustive_min_with(dim: usize, exec: Execution) -> Result<SearchResult> {
    if !(2..=MAX_EXHAUSTIVE_DIM).contains(&dim) {
        return Err(Error::OutOfRange(format!(
            "exhaustive search supports 2 <= d <= {MAX_EXHAUSTIVE_DIM}, got d = {dim}; \
             larger d needs a heuristic search, which is not provided"
        )));
    }
    let started = Instant::now();
    let w = dim - 1;
    let chunk_bits = (w * (w - 1)).min(12);
    let chunk_len = 1_u64 << (w * w - chunk_bits);
    let chunks = 1_usize << chunk_bits;
    let best = map_indexed(exec, chunks, |k| scan(dim, k as u64 * chunk_len, chunk_len))
        .into_iter()
        .reduce(Partial::merge)
        .expect("at least one chunk");
    Ok(SearchResult {
        dim,
        min_value: best.min,
        argmin_count: best.count,
        first_index: best.first,
        first_argmin: SignMatrix::from_dephased_index(dim, best.first)?,
        elapsed: started.elapsed(),
    })
}

/// Whether the exhaustive minimum for odd `d ∈ {3, 5}` equals `d³ + d(d−1)`.
pub fn odd_d_check(dim: usize) -> Result<bool> {
    if dim.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("d must be odd, got {dim}")));
    }
    if !(3..=5).contains(&dim) {
        return Err(Error::OutOfRange(format!(
            "odd-d check covers d in {{3, 5}} only, got d = {dim}; \
             larger d needs a heuristic search, which is not provided"
        )));
    }
    let d = dim as u64;
    Ok(exhaustive_min(dim)?.min_value == d * d * d + d * (d - 1))
}

/// Sylvester Hadamard matrix of order `d`, a power of two.
pub fn sylvester_hadamard(dim: usize) -> Result<SignMatrix> {
    if !dim.is_power_of_two() || dim > MAX_SIGN_DIM {
        return Err(Error::OutOfRange(format!(
            "Sylvester construction needs a power of two up to {MAX_SIGN_DIM}, got {dim}"
        )));
    }
    // H_{ik} = (−1)^{popcount(i & k)}.
    let rows = (0..dim)
        .map(|i| {
            (0..dim).fold(0_u64, |acc, k| {
                if (i & k).count_ones() % 2 == 1 {
                    acc | 1 << (dim - 1 - k)
                } else {
                    acc
                }
            })
        })
        .collect();
    SignMatrix::from_bits(dim, rows)
}
