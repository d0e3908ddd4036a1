//! The `(A, B, C)` coordinate system for LDOI operators.
//!
//! A [`MatrixTriple`] stores all three matrices in full, including the
//! diagonal they are required to share. Construction only checks shapes;
//! [`validate`] checks the shared diagonal and the class constraints.

use serde::{Deserialize, Serialize};

use crate::linalg::{c, diag_part, identity, ones};
use crate::{CMatrix, Error, Result, C64, EPS_EQ};

/// Which invariant subspace a triple claims membership of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InvarianceClass {
    /// `(U⊗U) X (U⊗U)† = X` for diagonal unitaries: `B` is diagonal.
    Ldui,
    /// `(U⊗Ū) X (U⊗Ū)† = X` for diagonal unitaries: `C` is diagonal.
    Cldui,
    /// `(O⊗O) X (O⊗O) = X` for diagonal sign matrices.
    Ldoi,
}

impl InvarianceClass {
    pub const ALL: [InvarianceClass; 3] = [Self::Ldoi, Self::Ldui, Self::Cldui];

    /// Complex dimension of the subspace of `d ⊗ d` operators in this class.
    pub fn subspace_dim(self, d: usize) -> usize {
        match self {
            Self::Ldoi => 3 * d * d - 2 * d,
            Self::Ldui | Self::Cldui => 2 * d * d - d,
        }
    }
}

impl std::str::FromStr for InvarianceClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ldoi" => Ok(Self::Ldoi),
            "ldui" => Ok(Self::Ldui),
            "cldui" => Ok(Self::Cldui),
            other => Err(Error::Parse(format!("unknown invariance class `{other}`"))),
        }
    }
}

/// The four involutions that preserve the LDOI subspace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Symmetry {
    Transpose,
    Adjoint,
    Realign,
    PartialTranspose,
}

impl Symmetry {
    pub const ALL: [Symmetry; 4] = [
        Self::Transpose,
        Self::Adjoint,
        Self::Realign,
        Self::PartialTranspose,
    ];
}

/// Three `d × d` complex matrices `(A, B, C)`.
///
/// `A` holds the `|ij⟩⟨ij|` coefficients, `B` the `|ii⟩⟨jj|` ones and `C` the
/// `|ij⟩⟨ji|` ones. A valid triple has `diag A = diag B = diag C`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixTriple {
    a: CMatrix,
    b: CMatrix,
    c: CMatrix,
}

/// One violated constraint reported by [`validate`].
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// `B_ii ≠ A_ii`.
    DiagonalAB { index: usize, delta: f64 },
    /// `C_ii ≠ A_ii`.
    DiagonalAC { index: usize, delta: f64 },
    /// LDUI requires `B` diagonal.
    BNotDiagonal {
        row: usize,
        col: usize,
        modulus: f64,
    },
    /// CLDUI requires `C` diagonal.
    CNotDiagonal {
        row: usize,
        col: usize,
        modulus: f64,
    },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::DiagonalAB { index, delta } => {
                write!(f, "diag B differs from diag A at {index} by {delta:e}")
            }
            Self::DiagonalAC { index, delta } => {
                write!(f, "diag C differs from diag A at {index} by {delta:e}")
            }
            Self::BNotDiagonal { row, col, modulus } => {
                write!(f, "B not diagonal: |B[{row},{col}]| = {modulus:e}")
            }
            Self::CNotDiagonal { row, col, modulus } => {
                write!(f, "C not diagonal: |C[{row},{col}]| = {modulus:e}")
            }
        }
    }
}

/// Outcome of [`validate`]: empty `violations` means the triple is valid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidityReport {
    pub class: InvarianceClass,
    pub violations: Vec<Violation>,
}

impl ValidityReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check_square(name: &'static str, m: &CMatrix, dim: usize) -> Result<()> {
    if m.nrows() != dim || m.ncols() != dim {
        return Err(Error::Shape {
            name,
            rows: m.nrows(),
            cols: m.ncols(),
            dim,
        });
    }
    Ok(())
}

impl MatrixTriple {
    /// Builds a triple, checking only that the three matrices are square and
    /// of equal size.
    pub fn new(a: CMatrix, b: CMatrix, c: CMatrix) -> Result<Self> {
        let dim = a.nrows();
        if dim == 0 {
            return Err(Error::InvalidArgument(
                "dimension must be at least 1".into(),
            ));
        }
        check_square("A", &a, dim)?;
        check_square("B", &b, dim)?;
        check_square("C", &c, dim)?;
        Ok(Self { a, b, c })
    }

    /// Builds a triple and rejects it unless it is a valid member of `class`.
    pub fn new_valid(a: CMatrix, b: CMatrix, c: CMatrix, class: InvarianceClass) -> Result<Self> {
        let t = Self::new(a, b, c)?;
        let report = validate(&t, class);
        if let Some(v) = report.violations.first() {
            return Err(Error::InvalidArgument(format!(
                "invalid {class:?} triple: {v}"
            )));
        }
        Ok(t)
    }

    /// Triple whose `B` and `C` share the diagonal of `A` and have the given
    /// off-diagonal parts (their diagonals are overwritten).
    pub fn with_shared_diagonal(a: CMatrix, b: CMatrix, c: CMatrix) -> Result<Self> {
        let mut t = Self::new(a, b, c)?;
        for i in 0..t.dim() {
            t.b[(i, i)] = t.a[(i, i)];
            t.c[(i, i)] = t.a[(i, i)];
        }
        Ok(t)
    }

    pub fn dim(&self) -> usize {
        self.a.nrows()
    }

    pub fn a(&self) -> &CMatrix {
        &self.a
    }

    pub fn b(&self) -> &CMatrix {
        &self.b
    }

    pub fn c(&self) -> &CMatrix {
        &self.c
    }

    pub fn into_parts(self) -> (CMatrix, CMatrix, CMatrix) {
        (self.a, self.b, self.c)
    }

    /// `𝟙 ⊗ 𝟙 = (J, 𝟙, 𝟙)`.
    pub fn identity(d: usize) -> Self {
        Self {
            a: ones(d),
            b: identity(d),
            c: identity(d),
        }
    }

    /// The swap gate `S = (𝟙, 𝟙, J)`.
    pub fn swap(d: usize) -> Self {
        Self {
            a: identity(d),
            b: identity(d),
            c: ones(d),
        }
    }

    pub fn zeros(d: usize) -> Self {
        Self {
            a: CMatrix::zeros(d, d),
            b: CMatrix::zeros(d, d),
            c: CMatrix::zeros(d, d),
        }
    }

    /// Local diagonal product `diag(u) ⊗ diag(v)`.
    pub fn diagonal_product(u: &[C64], v: &[C64]) -> Result<Self> {
        if u.len() != v.len() {
            return Err(Error::DimensionMismatch {
                expected: u.len(),
                found: v.len(),
            });
        }
        let d = u.len();
        let a = CMatrix::from_fn(d, d, |i, j| u[i] * v[j]);
        let dg = diag_part(&a);
        Self::new(a, dg.clone(), dg)
    }

    /// Componentwise `α·self + β·other`.
    pub fn linear_combination(&self, alpha: C64, other: &Self, beta: C64) -> Result<Self> {
        same_dim(self, other)?;
        Ok(Self {
            a: &self.a * alpha + &other.a * beta,
            b: &self.b * alpha + &other.b * beta,
            c: &self.c * alpha + &other.c * beta,
        })
    }

    /// Largest entrywise distance to another triple of the same size.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let pairs = [
            (&self.a, &other.a),
            (&self.b, &other.b),
            (&self.c, &other.c),
        ];
        pairs
            .iter()
            .flat_map(|(x, y)| x.iter().zip(y.iter()).map(|(p, q)| (p - q).norm()))
            .fold(0.0, f64::max)
    }

    /// True when every entry has zero imaginary part up to `tol`.
    pub fn is_real(&self, tol: f64) -> bool {
        [&self.a, &self.b, &self.c]
            .iter()
            .all(|m| m.iter().all(|z| z.im.abs() <= tol))
    }
}

fn same_dim(t1: &MatrixTriple, t2: &MatrixTriple) -> Result<()> {
    if t1.dim() != t2.dim() {
        return Err(Error::DimensionMismatch {
            expected: t1.dim(),
            found: t2.dim(),
        });
    }
    Ok(())
}

/// Checks the shared diagonal and, for LDUI / CLDUI, the diagonality of `B`
/// / `C`, all at absolute tolerance [`EPS_EQ`].
pub fn validate(t: &MatrixTriple, class: InvarianceClass) -> ValidityReport {
    let d = t.dim();
    let mut violations = Vec::new();
    for i in 0..d {
        let dab = (t.b[(i, i)] - t.a[(i, i)]).norm();
        if dab > EPS_EQ {
            violations.push(Violation::DiagonalAB {
                index: i,
                delta: dab,
            });
        }
        let dac = (t.c[(i, i)] - t.a[(i, i)]).norm();
        if dac > EPS_EQ {
            violations.push(Violation::DiagonalAC {
                index: i,
                delta: dac,
            });
        }
    }
    let off_diag = (0..d).flat_map(|i| (0..d).filter(move |&j| j != i).map(move |j| (i, j)));
    match class {
        InvarianceClass::Ldoi => {}
        InvarianceClass::Ldui => {
            for (i, j) in off_diag {
                let m = t.b[(i, j)].norm();
                if m > EPS_EQ {
                    violations.push(Violation::BNotDiagonal {
                        row: i,
                        col: j,
                        modulus: m,
                    });
                }
            }
        }
        InvarianceClass::Cldui => {
            for (i, j) in off_diag {
                let m = t.c[(i, j)].norm();
                if m > EPS_EQ {
                    violations.push(Violation::CNotDiagonal {
                        row: i,
                        col: j,
                        modulus: m,
                    });
                }
            }
        }
    }
    ValidityReport { class, violations }
}

/// Triple of the operator product `X(t1) · X(t2)`:
///
/// ```text
/// A = A₁⊙A₂ + C₁⊙C₂ᵀ + diag(B₁B₂ − A₁⊙A₂ − C₁⊙C₂ᵀ)
/// B = B₁B₂
/// C = A₁⊙C₂ + C₁⊙A₂ᵀ + diag(B₁B₂ − A₁⊙C₂ − C₁⊙A₂ᵀ)
/// ```
pub fn triple_product(t1: &MatrixTriple, t2: &MatrixTriple) -> Result<MatrixTriple> {
    same_dim(t1, t2)?;
    let bb = &t1.b * &t2.b;
    let a_off = t1.a.component_mul(&t2.a) + t1.c.component_mul(&t2.c.transpose());
    let c_off = t1.a.component_mul(&t2.c) + t1.c.component_mul(&t2.a.transpose());
    let a = &a_off + diag_part(&(&bb - &a_off));
    let c = &c_off + diag_part(&(&bb - &c_off));
    Ok(MatrixTriple { a, b: bb, c })
}

/// Same as [`triple_product`] but with both diagonal corrections written as
/// `diag(B₁B₂ − 2 B₁⊙B₂)`, which is equivalent on valid triples.
pub fn triple_product_simplified(t1: &MatrixTriple, t2: &MatrixTriple) -> Result<MatrixTriple> {
    same_dim(t1, t2)?;
    let bb = &t1.b * &t2.b;
    let corr = diag_part(&(&bb - t1.b.component_mul(&t2.b) * c(2.0, 0.0)));
    let a = t1.a.component_mul(&t2.a) + t1.c.component_mul(&t2.c.transpose()) + &corr;
    let cc = t1.a.component_mul(&t2.c) + t1.c.component_mul(&t2.a.transpose()) + &corr;
    Ok(MatrixTriple { a, b: bb, c: cc })
}

/// DOC-map composition `t1 ∘ t2`:
///
/// ```text
/// 𝔄 = A₁A₂
/// 𝔅 = B₁⊙B₂ + C₁⊙C₂ᵀ + diag(A₁A₂ − 2A₁⊙A₂)
/// ℭ = B₁⊙C₂ + C₁⊙B₂ᵀ + diag(A₁A₂ − 2A₁⊙A₂)
/// ```
pub fn triple_compose(t1: &MatrixTriple, t2: &MatrixTriple) -> Result<MatrixTriple> {
    same_dim(t1, t2)?;
    let aa = &t1.a * &t2.a;
    let corr = diag_part(&(&aa - t1.a.component_mul(&t2.a) * c(2.0, 0.0)));
    let b = t1.b.component_mul(&t2.b) + t1.c.component_mul(&t2.c.transpose()) + &corr;
    let cc = t1.b.component_mul(&t2.c) + t1.c.component_mul(&t2.b.transpose()) + &corr;
    Ok(MatrixTriple { a: aa, b, c: cc })
}

/// Applies one of the LDOI-preserving involutions at triple level.
pub fn symmetry(t: &MatrixTriple, op: Symmetry) -> MatrixTriple {
    match op {
        Symmetry::Transpose => MatrixTriple {
            a: t.a.clone(),
            b: t.b.transpose(),
            c: t.c.transpose(),
        },
        Symmetry::Adjoint => MatrixTriple {
            a: t.a.conjugate(),
            b: t.b.adjoint(),
            c: t.c.adjoint(),
        },
        Symmetry::Realign => MatrixTriple {
            a: t.b.clone(),
            b: t.a.clone(),
            c: t.c.clone(),
        },
        Symmetry::PartialTranspose => MatrixTriple {
            a: t.a.clone(),
            b: t.c.clone(),
            c: t.b.clone(),
        },
    }
}
