//! Dense `d² × d²` operators and the block structure of LDOI matrices.
//!
//! Basis order is `|ij⟩ → i·d + j`. The dense realignment and partial
//! transposition here act on raw coordinates and never look at triples, so
//! they serve as oracles for the triple-level [`symmetry`](crate::triples::symmetry).

use nalgebra::Matrix2;

use crate::linalg::c;
use crate::{CMatrix, Error, MatrixTriple, Result, C64, EPS_EQ};

/// A dense operator on `ℂ^d ⊗ ℂ^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    dim: usize,
    matrix: CMatrix,
}

impl DenseOperator {
    /// Wraps a square matrix whose side must be a perfect square `d²`.
    pub fn new(matrix: CMatrix) -> Result<Self> {
        let n = matrix.nrows();
        if matrix.ncols() != n {
            return Err(Error::Shape {
                name: "X",
                rows: n,
                cols: matrix.ncols(),
                dim: n,
            });
        }
        let d = (n as f64).sqrt().round() as usize;
        if d * d != n || d == 0 {
            return Err(Error::SideNotSquare(n));
        }
        Ok(Self { dim: d, matrix })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    #[inline]
    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.dim + j
    }

    /// `X_{ij,kl}`.
    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> C64 {
        self.matrix[(self.index(i, j), self.index(k, l))]
    }

    /// Operator product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(Self {
            dim: self.dim,
            matrix: &self.matrix * &other.matrix,
        })
    }

    pub fn adjoint(&self) -> Self {
        Self {
            dim: self.dim,
            matrix: self.matrix.adjoint(),
        }
    }

    fn permuted(
        &self,
        f: impl Fn(usize, usize, usize, usize) -> (usize, usize, usize, usize),
    ) -> Self {
        let d = self.dim;
        let mut out = CMatrix::zeros(d * d, d * d);
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for l in 0..d {
                        let (p, q, r, s) = f(i, j, k, l);
                        out[(i * d + j, k * d + l)] = self.get(p, q, r, s);
                    }
                }
            }
        }
        Self {
            dim: d,
            matrix: out,
        }
    }
}

/// `X^R_{ij,kl} = X_{ik,jl}`.
pub fn dense_realign(x: &DenseOperator) -> DenseOperator {
    x.permuted(|i, j, k, l| (i, k, j, l))
}

/// `X^Γ_{ij,kl} = X_{il,kj}` (transpose on the second factor).
pub fn dense_pt(x: &DenseOperator) -> DenseOperator {
    x.permuted(|i, j, k, l| (i, l, k, j))
}

/// Dense form of a triple: `X_{ij,ij} = A_ij`, `X_{ii,jj} = B_ij` and
/// `X_{ij,ji} = C_ij` for `i ≠ j`, zero elsewhere.
pub fn embed(t: &MatrixTriple) -> DenseOperator {
    let d = t.dim();
    let mut x = CMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            x[(i * d + j, i * d + j)] = t.a()[(i, j)];
            if i != j {
                x[(i * d + i, j * d + j)] = t.b()[(i, j)];
                x[(i * d + j, j * d + i)] = t.c()[(i, j)];
            }
        }
    }
    DenseOperator { dim: d, matrix: x }
}

/// Whether coordinate `(ij, kl)` belongs to the LDOI support pattern.
pub fn in_ldoi_pattern(i: usize, j: usize, k: usize, l: usize) -> bool {
    (i == k && j == l) || (i == j && k == l) || (i == l && j == k)
}

/// Inverse of [`embed`]. Fails if any coordinate outside the LDOI pattern
/// exceeds [`EPS_EQ`] in modulus; the returned triple takes its shared
/// diagonal from `X_{ii,ii}`.
pub fn extract(x: &DenseOperator) -> Result<MatrixTriple> {
    let d = x.dim();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                for l in 0..d {
                    if in_ldoi_pattern(i, j, k, l) {
                        continue;
                    }
                    let z = x.get(i, j, k, l);
                    if z.norm() > EPS_EQ {
                        return Err(Error::NotLdoi {
                            row: i * d + j,
                            col: k * d + l,
                            value: z.norm(),
                        });
                    }
                }
            }
        }
    }
    let a = CMatrix::from_fn(d, d, |i, j| x.get(i, j, i, j));
    let b = CMatrix::from_fn(d, d, |i, j| {
        if i == j {
            x.get(i, i, i, i)
        } else {
            x.get(i, i, j, j)
        }
    });
    let cm = CMatrix::from_fn(d, d, |i, j| {
        if i == j {
            x.get(i, i, i, i)
        } else {
            x.get(i, j, j, i)
        }
    });
    MatrixTriple::new(a, b, cm)
}

/// The 2×2 block acting on `span{|ij⟩, |ji⟩}` for `i < j`.
#[derive(Debug, Clone, PartialEq)]
pub struct PairBlock {
    pub i: usize,
    pub j: usize,
    pub block: Matrix2<C64>,
}

/// `X = B ⊕ (⊕_{i<j} [[A_ij, C_ij], [C_ji, A_ji]])` after reordering the
/// product basis as `|00⟩, |11⟩, …` followed by `|ij⟩, |ji⟩` pairs in
/// lexicographic order.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockDecomposition {
    pub b_block: CMatrix,
    pub pair_blocks: Vec<PairBlock>,
}

/// The 2×2 block `[[M_ij, N_ij], [N_ji, M_ji]]`.
pub fn pair_block(m: &CMatrix, n: &CMatrix, i: usize, j: usize) -> Matrix2<C64> {
    Matrix2::new(m[(i, j)], n[(i, j)], n[(j, i)], m[(j, i)])
}

/// Iterator over `(i, j)` with `i < j < d` in lexicographic order.
pub fn pairs(d: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..d).flat_map(move |i| ((i + 1)..d).map(move |j| (i, j)))
}

pub fn blocks(t: &MatrixTriple) -> BlockDecomposition {
    let pair_blocks = pairs(t.dim())
        .map(|(i, j)| PairBlock {
            i,
            j,
            block: pair_block(t.a(), t.c(), i, j),
        })
        .collect();
    BlockDecomposition {
        b_block: t.b().clone(),
        pair_blocks,
    }
}

/// Basis permutation `perm[new] = old` that makes an LDOI operator block diagonal.
pub fn block_basis_permutation(d: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..d).map(|i| i * d + i).collect();
    for (i, j) in pairs(d) {
        perm.push(i * d + j);
        perm.push(j * d + i);
    }
    perm
}

impl BlockDecomposition {
    pub fn dim(&self) -> usize {
        self.b_block.nrows()
    }

    /// The direct sum `B ⊕ W₀₁ ⊕ W₀₂ ⊕ …` as a dense matrix in the permuted basis.
    pub fn direct_sum(&self) -> CMatrix {
        let d = self.dim();
        let mut m = CMatrix::zeros(d * d, d * d);
        m.view_mut((0, 0), (d, d)).copy_from(&self.b_block);
        for (n, pb) in self.pair_blocks.iter().enumerate() {
            let o = d + 2 * n;
            for r in 0..2 {
                for s in 0..2 {
                    m[(o + r, o + s)] = pb.block[(r, s)];
                }
            }
        }
        m
    }

    /// Undo the basis permutation: returns the operator in the product basis.
    pub fn reassemble(&self) -> DenseOperator {
        let d = self.dim();
        let perm = block_basis_permutation(d);
        let sum = self.direct_sum();
        let mut x = CMatrix::zeros(d * d, d * d);
        for (r, &pr) in perm.iter().enumerate() {
            for (s, &ps) in perm.iter().enumerate() {
                x[(pr, ps)] = sum[(r, s)];
            }
        }
        DenseOperator { dim: d, matrix: x }
    }

    /// Eigenvalues gathered block by block.
    pub fn eigenvalues(&self) -> Vec<C64> {
        let mut ev = crate::linalg::eigenvalues(&self.b_block);
        for pb in &self.pair_blocks {
            ev.extend(crate::linalg::eigenvalues_2x2(&pb.block));
        }
        ev
    }
}

/// Number of entries with modulus above `tol`.
pub fn count_nonzeros(x: &DenseOperator, tol: f64) -> usize {
    x.matrix().iter().filter(|z| z.norm() > tol).count()
}

/// `(U ⊗ V) X (U ⊗ V)†` for dense `U, V`.
pub fn conjugate_local(x: &DenseOperator, u: &CMatrix, v: &CMatrix) -> DenseOperator {
    let uv = u.kronecker(v);
    DenseOperator {
        dim: x.dim,
        matrix: &uv * x.matrix() * uv.adjoint(),
    }
}

/// The swap operator as a dense matrix.
pub fn dense_swap(d: usize) -> DenseOperator {
    let mut m = CMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            m[(i * d + j, j * d + i)] = c(1.0, 0.0);
        }
    }
    DenseOperator { dim: d, matrix: m }
}
