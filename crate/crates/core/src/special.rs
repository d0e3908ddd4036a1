//! Dual, PT and perfect unitarity of LDOI triples.
//!
//! Realignment maps `(A,B,C)` to `(B,A,C)` and partial transposition maps it
//! to `(A,C,B)`, so dual (PT) unitarity asks for unitarity of two triples.
//! Per off-diagonal pair this reduces to unitarity of the blocks
//! `[[A_ij, C_ij], [C_ji, A_ji]]` and `[[B_ij, C_ij], [C_ji, B_ji]]` (dual) or
//! `[[A_ij, C_ij], [C_ji, A_ji]]` and `[[A_ij, B_ij], [B_ji, A_ji]]` (PT).
//!
//! The phases of the two dual blocks coincide whenever `C_ij ≠ 0`; when
//! `C_ij = 0` both `A` and `B` entries are unimodular and their phases are
//! independent.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::embed::pairs;
use crate::linalg::{c, haar_unitary, identity, principal_sqrt, unitarity_defect};
use crate::triples::{symmetry, Symmetry};
use crate::unitary::{check_unitary, pair_condition, Field};
use crate::{CMatrix, Error, MatrixTriple, Result, C64, EPS_U};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualityReport {
    pub is_unitary: bool,
    pub is_dual: bool,
    pub is_pt: bool,
    pub is_perfect: bool,
    pub a_defect: f64,
    pub b_defect: f64,
    pub c_defect: f64,
    /// Largest of `||A_ij|² − |B_ij|²|` and `||A_ij|² + |C_ij|² − 1|`.
    pub dual_modulus_defect: f64,
    /// Largest phase-relation defect of the two dual blocks, including the
    /// mismatch of their phases where `C_ij ≠ 0`.
    pub dual_phase_defect: f64,
    /// Largest of `||A_ij|² − |C_ij|²|` and `||A_ij|² + |B_ij|² − 1|`.
    pub pt_modulus_defect: f64,
    pub pt_phase_defect: f64,
    /// Whether the condition lists agree with the unitarity of the realigned
    /// and partially transposed triples.
    pub paths_agree: bool,
}

/// Defects of the block conditions shared between two 2×2 block families
/// `[[S_ij, T_ij], [T_ji, S_ji]]` and `[[U_ij, T_ij], [T_ji, U_ji]]` that
/// share the `T` entries.
fn paired_block_defects(s: &CMatrix, u: &CMatrix, t: &CMatrix) -> (f64, f64) {
    let d = s.nrows();
    let mut modulus = 0.0_f64;
    let mut phase = 0.0_f64;
    for (i, j) in pairs(d) {
        modulus = modulus
            .max((s[(i, j)].norm_sqr() - u[(i, j)].norm_sqr()).abs())
            .max((s[(i, j)].norm_sqr() + t[(i, j)].norm_sqr() - 1.0).abs());
        let (ds, ws) = pair_condition(s, t, i, j, Field::Complex);
        let (du, wu) = pair_condition(u, t, i, j, Field::Complex);
        phase = phase.max(ds).max(du);
        if t[(i, j)].norm() > EPS_U {
            if let (Some(ws), Some(wu)) = (ws, wu) {
                phase = phase.max((ws - wu).norm());
            }
        }
    }
    (modulus, phase)
}

/// Evaluates dual, PT and perfect unitarity both through the condition lists
/// and through the unitarity of the realigned / partially transposed triple.
pub fn check_special(t: &MatrixTriple) -> DualityReport {
    let is_unitary = check_unitary(t, Field::Complex).is_unitary;
    let a_defect = unitarity_defect(t.a());
    let b_defect = unitarity_defect(t.b());
    let c_defect = unitarity_defect(t.c());
    let (dual_modulus_defect, dual_phase_defect) = paired_block_defects(t.a(), t.b(), t.c());
    let (pt_modulus_defect, pt_phase_defect) = paired_block_defects(t.c(), t.b(), t.a());
    // The PT lists pair the A-block with the B-block through A, written here
    // with the roles of A and C exchanged: [[C,A],[A,C]] is unitary iff
    // [[A,C],[C,A]] is.
    let dual_by_conditions = a_defect <= EPS_U
        && b_defect <= EPS_U
        && dual_modulus_defect <= EPS_U
        && dual_phase_defect <= EPS_U;
    let pt_by_conditions = b_defect <= EPS_U
        && c_defect <= EPS_U
        && pt_modulus_defect <= EPS_U
        && pt_phase_defect <= EPS_U;

    let realigned = check_unitary(&symmetry(t, Symmetry::Realign), Field::Complex).is_unitary;
    let transposed =
        check_unitary(&symmetry(t, Symmetry::PartialTranspose), Field::Complex).is_unitary;
    let dual_by_definition = is_unitary && realigned;
    let pt_by_definition = is_unitary && transposed;

    DualityReport {
        is_unitary,
        is_dual: dual_by_definition,
        is_pt: pt_by_definition,
        is_perfect: dual_by_definition && pt_by_definition,
        a_defect,
        b_defect,
        c_defect,
        dual_modulus_defect,
        dual_phase_defect,
        pt_modulus_defect,
        pt_phase_defect,
        paths_agree: dual_by_conditions == dual_by_definition
            && pt_by_conditions == pt_by_definition,
    }
}

/// Constructive families of dual unitary LDOI triples.
#[derive(Debug, Clone, PartialEq)]
pub enum DualFamily {
    /// `A = B = 2P − 𝟙` for an orthogonal projection `P`.
    Projection { p: CMatrix, phases: Option<CMatrix> },
    /// `A = B = ω^{1/2}(2P − 𝟙)` with the principal square root.
    PhaseProjection {
        p: CMatrix,
        omega: C64,
        phases: Option<CMatrix>,
    },
    /// LDUI family `A = B = diag C` with every `C_ij` unimodular.
    LduiPhases { c: CMatrix },
}

fn check_projection(p: &CMatrix) -> Result<()> {
    if !p.is_square() {
        return Err(Error::InvalidArgument("projection must be square".into()));
    }
    let idem = (p * p - p).norm();
    let herm = (p.adjoint() - p).norm();
    if idem > EPS_U || herm > EPS_U {
        return Err(Error::InvalidArgument(format!(
            "not an orthogonal projection (‖P²−P‖ = {idem:.3e}, ‖P†−P‖ = {herm:.3e})"
        )));
    }
    Ok(())
}

fn check_unimodular(m: &CMatrix, name: &str) -> Result<()> {
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let dev = (m[(i, j)].norm() - 1.0).abs();
            if dev > EPS_U {
                return Err(Error::InvalidArgument(format!(
                    "{name}[{i}][{j}] has modulus {} (expected 1)",
                    m[(i, j)].norm()
                )));
            }
        }
    }
    Ok(())
}

/// Completes `A = B = scale·(2P − 𝟙)` with a `C` that makes the triple dual
/// unitary; `omega` is the common pair phase `scale²`.
fn complete_projection(
    p: &CMatrix,
    scale: C64,
    omega: C64,
    phases: Option<&CMatrix>,
) -> Result<MatrixTriple> {
    check_projection(p)?;
    let d = p.nrows();
    if let Some(ph) = phases {
        if ph.shape() != (d, d) {
            return Err(Error::Shape {
                name: "phases",
                rows: ph.nrows(),
                cols: ph.ncols(),
                dim: d,
            });
        }
    }
    let a = (p * c(2.0, 0.0) - identity(d)) * scale;
    let mut cm = CMatrix::zeros(d, d);
    for i in 0..d {
        cm[(i, i)] = a[(i, i)];
    }
    for (i, j) in pairs(d) {
        let radicand = 1.0 - a[(i, j)].norm_sqr();
        assert!(
            radicand > -EPS_U,
            "|A_ij| > 1 cannot occur for a projection"
        );
        let modulus = if radicand <= EPS_U {
            0.0
        } else {
            radicand.sqrt()
        };
        let phase = match phases {
            Some(ph) if ph[(i, j)].norm() > 0.0 => ph[(i, j)] / ph[(i, j)].norm(),
            _ => c(1.0, 0.0),
        };
        cm[(i, j)] = phase * modulus;
        cm[(j, i)] = -omega * cm[(i, j)].conj();
    }
    MatrixTriple::new(a.clone(), a, cm)
}

/// Builds a dual unitary triple from one of the constructive families.
pub fn make_dual(family: &DualFamily) -> Result<MatrixTriple> {
    match family {
        DualFamily::Projection { p, phases } => {
            complete_projection(p, c(1.0, 0.0), c(1.0, 0.0), phases.as_ref())
        }
        DualFamily::PhaseProjection { p, omega, phases } => {
            if (omega.norm() - 1.0).abs() > EPS_U {
                return Err(Error::InvalidArgument(format!(
                    "ω must be unimodular, got modulus {}",
                    omega.norm()
                )));
            }
            complete_projection(p, principal_sqrt(*omega), *omega, phases.as_ref())
        }
        DualFamily::LduiPhases { c: cm } => {
            if !cm.is_square() || cm.nrows() == 0 {
                return Err(Error::InvalidArgument(
                    "C must be square and non-empty".into(),
                ));
            }
            check_unimodular(cm, "C")?;
            let d = cm.nrows();
            let diag = CMatrix::from_fn(d, d, |i, j| if i == j { cm[(i, i)] } else { c(0.0, 0.0) });
            MatrixTriple::new(diag.clone(), diag, cm.clone())
        }
    }
}

/// Haar-random rank-`rank` orthogonal projection on `ℂᵈ`.
pub fn random_projection<R: Rng + ?Sized>(d: usize, rank: usize, rng: &mut R) -> CMatrix {
    let u = haar_unitary(d, rng);
    let cols = u.columns(0, rank.min(d));
    cols * cols.adjoint()
}

/// Seeded convenience wrapper for [`random_projection`].
pub fn random_projection_seeded(d: usize, rank: usize, seed: u64) -> CMatrix {
    random_projection(d, rank, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Random `d × d` matrix of uniform phases.
pub fn random_phase_matrix(d: usize, seed: u64) -> CMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    CMatrix::from_fn(d, d, |_, _| crate::linalg::random_phase(&mut rng))
}

/// Fourier matrix `F_jk = exp(2πi·jk/d)` (unnormalized).
pub fn fourier_matrix(d: usize) -> CMatrix {
    CMatrix::from_fn(d, d, |j, k| {
        let phase = std::f64::consts::TAU * ((j * k) % d.max(1)) as f64 / d as f64;
        C64::from_polar(1.0, phase)
    })
}

/// Outcome of checking a triple against the consequences of perfection.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// `d = 1` has no off-diagonal pairs.
    Vacuous,
    /// A perfect triple needs `|A_ij| = |B_ij| = |C_ij| = 1/√2`.
    ModulusMismatch {
        i: usize,
        j: usize,
        matrix: char,
        modulus: f64,
    },
    /// The dual conditions fix `ω_ij` from `B`, the PT conditions fix
    /// `λ_ij` from `B`; then `A_ji` must equal both `ω·conj(A_ij)` and
    /// `−λ·conj(A_ij)` with `ω = λ`, impossible for `A_ij ≠ 0`.
    PhaseContradiction {
        i: usize,
        j: usize,
        omega: [f64; 2],
        lambda: [f64; 2],
        /// `|A_ji − ω·conj(A_ij)|`
        dual_residual: f64,
        /// `|A_ji + λ·conj(A_ij)|`
        pt_residual: f64,
    },
    /// `A`, `B` or `C` is not unitary.
    NotUnitary { matrix: char, defect: f64 },
    /// No implication was violated within tolerance.
    ConstraintsSatisfied,
}

impl Certificate {
    pub fn is_contradiction(&self) -> bool {
        !matches!(self, Certificate::ConstraintsSatisfied)
    }
}

/// Walks the necessary conditions for perfection and returns the first one
/// that fails.
pub fn perfect_witness(t: &MatrixTriple) -> Certificate {
    let d = t.dim();
    if d == 1 {
        return Certificate::Vacuous;
    }
    let target = std::f64::consts::FRAC_1_SQRT_2;
    let mats = [('A', t.a()), ('B', t.b()), ('C', t.c())];
    for (i, j) in pairs(d) {
        for &(name, m) in &mats {
            for (r, s) in [(i, j), (j, i)] {
                let modulus = m[(r, s)].norm();
                if (modulus - target).abs() > EPS_U {
                    return Certificate::ModulusMismatch {
                        i: r,
                        j: s,
                        matrix: name,
                        modulus,
                    };
                }
            }
        }
    }
    for (i, j) in pairs(d) {
        let (a, b) = (t.a(), t.b());
        let omega = b[(j, i)] / b[(i, j)].conj();
        let lambda = omega;
        let dual_residual = (a[(j, i)] - omega * a[(i, j)].conj()).norm();
        let pt_residual = (a[(j, i)] + lambda * a[(i, j)].conj()).norm();
        if dual_residual > EPS_U || pt_residual > EPS_U {
            return Certificate::PhaseContradiction {
                i,
                j,
                omega: [omega.re, omega.im],
                lambda: [lambda.re, lambda.im],
                dual_residual,
                pt_residual,
            };
        }
    }
    for &(name, m) in &mats {
        let defect = unitarity_defect(m);
        if defect > EPS_U {
            return Certificate::NotUnitary {
                matrix: name,
                defect,
            };
        }
    }
    Certificate::ConstraintsSatisfied
}
