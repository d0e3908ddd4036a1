//! Operator Schmidt rank and coefficients of LDOI triples, and real
//! orthogonal triples of every prescribed rank.
//!
//! The realignment of `X(A,B,C)` is `X(B,A,C)`, whose block decomposition is
//! `A ⊕ ⨁_{i<j} [[B_ij, C_ij], [C_ji, B_ji]]`. Its singular values, hence the
//! Schmidt coefficients, are the union of those of the blocks.

pub mod catalog;

pub use catalog::{catalog, lookup, CatalogEntry};

use rand::seq::{IndexedRandom, SliceRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::embed::{dense_realign, embed, pair_block, pairs};
use crate::linalg::{self, c, diag_part, exact_rank, identity, random_sign, singular_values};
use crate::unitary::{check_unitary, Field};
use crate::{CMatrix, Error, MatrixTriple, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchmidtSpectrum {
    /// Descending, strictly positive.
    pub coefficients: Vec<f64>,
    pub rank: usize,
}

fn block_as_matrix(m: &nalgebra::Matrix2<crate::C64>) -> CMatrix {
    CMatrix::from_fn(2, 2, |r, s| m[(r, s)])
}

/// Singular values of `A` and of every `[[B_ij, C_ij], [C_ji, B_ji]]`.
fn block_singular_values(t: &MatrixTriple) -> (Vec<f64>, Vec<Vec<f64>>) {
    let a = singular_values(t.a());
    let blocks = pairs(t.dim())
        .map(|(i, j)| singular_values(&block_as_matrix(&pair_block(t.b(), t.c(), i, j))))
        .collect();
    (a, blocks)
}

/// Operator Schmidt rank `rank A + Σ_{i<j} rank [[B_ij, C_ij], [C_ji, B_ji]]`.
///
/// All blocks share the cutoff of the dense realigned operator, whose
/// largest singular value is the largest over the blocks.
pub fn schmidt_rank(t: &MatrixTriple) -> usize {
    let d = t.dim();
    let (a, blocks) = block_singular_values(t);
    let smax = blocks
        .iter()
        .flatten()
        .chain(a.iter())
        .copied()
        .fold(0.0, f64::max);
    let cut = linalg::rank_cutoff(&[smax], d * d, d);
    let count = |sv: &[f64]| sv.iter().filter(|&&s| s > cut && s > 0.0).count();
    count(&a) + blocks.iter().map(|b| count(b)).sum::<usize>()
}

/// Numerical rank of the dense realignment of `embed(t)`.
pub fn schmidt_rank_dense(t: &MatrixTriple) -> usize {
    let xr = dense_realign(&embed(t));
    linalg::numerical_rank(xr.matrix(), t.dim())
}

/// Singular values of the dense realignment above the rank cutoff.
pub fn schmidt_coefficients(t: &MatrixTriple) -> SchmidtSpectrum {
    let xr = dense_realign(&embed(t));
    let sv = singular_values(xr.matrix());
    let cut = linalg::rank_cutoff(&sv, xr.matrix().nrows(), t.dim());
    let coefficients: Vec<f64> = sv.into_iter().filter(|&s| s > cut && s > 0.0).collect();
    SchmidtSpectrum {
        rank: coefficients.len(),
        coefficients,
    }
}

/// Real orthogonal LDOI triple with operator Schmidt rank `target`, for
/// `d ≥ 3` and `1 ≤ target ≤ d²`.
///
/// - `target ≤ d`: `A` is a sign matrix of rank `target`, `B = C = diag A`.
/// - `target ≥ d² − d`: `A = diag B`, `B` orthogonal with `d² − target`
///   zeros on its diagonal, `C` a sign matrix off the diagonal.
/// - otherwise: `B = diag A`, each off-diagonal pair carries signs either in
///   `A` or in `C`, so that the rank is `rank A + 2·#(pairs carried by C)`.
///
/// Catalogued triples are used where available. The result is verified
/// against the dense SVD and against orthogonality before it is returned.
pub fn make_rank(d: usize, target: usize, seed: u64) -> Result<MatrixTriple> {
    if d < 3 {
        return Err(Error::OutOfRange(format!(
            "make_rank needs d >= 3 (rank 3 is not attainable at d = 2), got d = {d}"
        )));
    }
    if target == 0 || target > d * d {
        return Err(Error::OutOfRange(format!(
            "target rank must lie in 1..={}, got {target}",
            d * d
        )));
    }
    let t = if let Some(t) = lookup(d, target) {
        t
    } else if target <= d {
        low_rank(d, target)
    } else if target >= d * d - d {
        high_rank(d, d * d - target)
    } else {
        middle_rank(d, target, seed)?
    };
    let report = check_unitary(&t, Field::Real);
    if !report.is_unitary {
        return Err(Error::NotUnitary {
            defect: report.b_defect.max(report.condition_defect),
        });
    }
    let (closed, dense) = (schmidt_rank(&t), schmidt_rank_dense(&t));
    if closed != target || dense != target {
        return Err(Error::Numeric(format!(
            "constructed rank mismatch: target {target}, closed form {closed}, dense {dense}"
        )));
    }
    Ok(t)
}

/// Columns `0..r` of `J − 2𝟙`, the last one repeated.
fn low_rank(d: usize, r: usize) -> MatrixTriple {
    let a = CMatrix::from_fn(d, d, |i, j| {
        let col = j.min(r - 1);
        c(if i == col { -1.0 } else { 1.0 }, 0.0)
    });
    let diag = diag_part(&a);
    MatrixTriple::new(a, diag.clone(), diag).expect("square")
}

/// Orthogonal matrix with exactly `m ≤ d` zeros on its diagonal (`d ≥ 3`).
fn orthogonal_with_zero_diagonal(d: usize, m: usize) -> CMatrix {
    match m {
        0 => identity(d),
        1 => {
            let mut v = CMatrix::zeros(d, 1);
            v[(0, 0)] = c(std::f64::consts::FRAC_1_SQRT_2, 0.0);
            v[(1, 0)] = c(0.5, 0.0);
            v[(2, 0)] = c(0.5, 0.0);
            identity(d) - &v * v.transpose() * c(2.0, 0.0)
        }
        _ => {
            // Cyclic shift on the first m basis vectors.
            let mut b = identity(d);
            for k in 0..m {
                b[(k, k)] = c(0.0, 0.0);
            }
            for k in 0..m {
                b[((k + 1) % m, k)] = c(1.0, 0.0);
            }
            b
        }
    }
}

fn high_rank(d: usize, m: usize) -> MatrixTriple {
    let b = orthogonal_with_zero_diagonal(d, m);
    let a = diag_part(&b);
    let mut cm = diag_part(&b);
    let sign = |x: f64| if x < 0.0 { -1.0 } else { 1.0 };
    for (i, j) in pairs(d) {
        // det [[B_ij, 1], [C_ji, B_ji]] = B_ij·B_ji + sign(B_ij·B_ji) ≠ 0.
        cm[(i, j)] = c(1.0, 0.0);
        cm[(j, i)] = c(-sign(b[(i, j)].re * b[(j, i)].re), 0.0);
    }
    MatrixTriple::new(a, b, cm).expect("square")
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Carrier {
    A,
    C,
}

/// Seeded search over sign patterns for the band `d < target < d² − d`.
fn middle_rank(d: usize, target: usize, seed: u64) -> Result<MatrixTriple> {
    let full = (target - d).is_multiple_of(2);
    let rank_a = if full { d } else { d - 1 };
    let c_pairs = (target - rank_a) / 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // For rank d − 1 rows 0 and 1 are forced equal: pair (0,1) carries ones
    // in A, and pairs (0,k), (1,k) are treated as twins.
    let twins: Vec<usize> = if full { Vec::new() } else { (2..d).collect() };
    let singles: Vec<(usize, usize)> = pairs(d)
        .filter(|&(i, j)| full || (i >= 2 && j >= 2))
        .collect();
    let splits: Vec<(usize, usize)> = (0..=twins.len())
        .filter_map(|k2| {
            let k1 = c_pairs.checked_sub(2 * k2)?;
            (k1 <= singles.len()).then_some((k2, k1))
        })
        .collect();
    if splits.is_empty() {
        return Err(Error::Numeric(format!(
            "no sign pattern with {c_pairs} C-carried pairs at d = {d}"
        )));
    }

    for _ in 0..20_000 {
        let (k2, k1) = *splits.choose(&mut rng).expect("non-empty");
        let mut carrier = vec![vec![Carrier::A; d]; d];
        let mut tw = twins.clone();
        tw.shuffle(&mut rng);
        for &k in &tw[..k2] {
            for r in [0, 1] {
                carrier[r][k] = Carrier::C;
                carrier[k][r] = Carrier::C;
            }
        }
        let mut si = singles.clone();
        si.shuffle(&mut rng);
        for &(i, j) in &si[..k1] {
            carrier[i][j] = Carrier::C;
            carrier[j][i] = Carrier::C;
        }

        let mut a = vec![vec![0_i64; d]; d];
        let mut cm = vec![vec![0_i64; d]; d];
        for i in 0..d {
            for j in 0..d {
                let s = if random_sign(&mut rng) > 0.0 { 1 } else { -1 };
                if i == j || carrier[i][j] == Carrier::A {
                    a[i][j] = s;
                } else {
                    cm[i][j] = s;
                }
            }
        }
        if !full {
            a[0][0] = 1;
            a[0][1] = 1;
            a[1][0] = 1;
            a[1][1] = 1;
            let (first, rest) = a.split_at_mut(1);
            first[0][2..d].copy_from_slice(&rest[0][2..d]);
        }
        for i in 0..d {
            cm[i][i] = a[i][i];
        }
        if exact_rank(&a) != Some(rank_a) {
            continue;
        }
        let to_matrix = |m: &Vec<Vec<i64>>| CMatrix::from_fn(d, d, |i, j| c(m[i][j] as f64, 0.0));
        let am = to_matrix(&a);
        let b = diag_part(&am);
        return MatrixTriple::new(am, b, to_matrix(&cm));
    }
    Err(Error::Numeric(format!(
        "sign-pattern search exhausted for d = {d}, target {target}"
    )))
}
