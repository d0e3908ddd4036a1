//! Unitary discrimination: spectral arcs, copy counts and sampling of the
//! local numerical range.
//!
//! `X₁` and `X₂` are perfectly distinguishable with `k` copies iff the
//! smallest arc `θ` holding the spectrum of `X₂†X₁` satisfies `kθ ≥ π`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::embed::{blocks, embed, BlockDecomposition};
use crate::linalg::{self, random_unit_vector};
use crate::par::{map_indexed, Execution};
use crate::triples::{symmetry, triple_product, Symmetry};
use crate::unitary::{check_unitary, Field};
use crate::{CMatrix, Error, MatrixTriple, Result, C64};

use std::f64::consts::{PI, TAU};

/// Arcs shorter than this count as a single point.
pub const THETA_EPS: f64 = 1e-9;
/// Largest `d` for which the dense cross-check of local-range values runs.
pub const DENSE_CHECK_MAX_DIM: usize = 16;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArcResult {
    /// Length of the smallest arc containing all eigenvalues, in `[0, 2π]`.
    pub theta: f64,
    /// Eigenvalue phases in `[0, 2π)`, ascending.
    pub eigen_angles: Vec<f64>,
}

/// Smallest containing arc of a set of phases: `2π` minus the largest gap
/// between circular neighbours.
pub fn arc_of_angles(angles: impl IntoIterator<Item = f64>) -> ArcResult {
    let mut eigen_angles: Vec<f64> = angles.into_iter().map(|a| a.rem_euclid(TAU)).collect();
    eigen_angles.sort_by(f64::total_cmp);
    let theta = match eigen_angles.as_slice() {
        [] | [_] => 0.0,
        [first, .., last] => {
            let wrap = TAU - last + first;
            let max_gap = eigen_angles
                .windows(2)
                .map(|w| w[1] - w[0])
                .fold(wrap, f64::max);
            (TAU - max_gap).max(0.0)
        }
    };
    ArcResult {
        theta,
        eigen_angles,
    }
}

fn require_unitary(t: &MatrixTriple) -> Result<()> {
    let r = check_unitary(t, Field::Complex);
    if r.is_unitary {
        Ok(())
    } else {
        Err(Error::NotUnitary {
            defect: r.b_defect.max(r.condition_defect),
        })
    }
}

/// Eigenvalues of `embed(t)` from `spec(B) ∪ ⋃ spec(pair block)`.
pub fn spectrum(t: &MatrixTriple) -> Vec<C64> {
    blocks(t).eigenvalues()
}

/// Eigenphases of a unitary block decomposition.
fn unitary_phases(dec: &BlockDecomposition) -> Vec<f64> {
    let mut phases = linalg::unitary_eigenphases(&dec.b_block);
    for pb in &dec.pair_blocks {
        phases.extend(linalg::eigenvalues_2x2(&pb.block).iter().map(|z| z.arg()));
    }
    phases
}

/// Arc of a unitary triple, through its block spectra.
pub fn arc(t: &MatrixTriple) -> Result<ArcResult> {
    require_unitary(t)?;
    Ok(arc_of_angles(unitary_phases(&blocks(t))))
}

/// Arc of a unitary dense matrix from a dense eigensolver.
pub fn arc_dense(m: &CMatrix) -> Result<ArcResult> {
    let defect = linalg::unitarity_defect(m);
    if defect > crate::EPS_U * m.nrows().max(1) as f64 {
        return Err(Error::NotUnitary { defect });
    }
    Ok(arc_of_angles(linalg::unitary_eigenphases(m)))
}

/// Number of copies needed for perfect discrimination.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CopyCount {
    Copies(u32),
    /// `θ = 0`: the operators agree up to a global phase and can never be
    /// perfectly discriminated.
    EqualSpectrum,
}

impl CopyCount {
    /// `⌈π/θ⌉`, or [`CopyCount::EqualSpectrum`] for `θ < THETA_EPS`.
    pub fn from_theta(theta: f64) -> Self {
        if theta < THETA_EPS {
            CopyCount::EqualSpectrum
        } else {
            // The small offset keeps θ = π/k (up to roundoff) at exactly k.
            CopyCount::Copies(((PI / theta - 1e-9).ceil() as u32).max(1))
        }
    }

    pub fn copies(self) -> Option<u32> {
        match self {
            CopyCount::Copies(k) => Some(k),
            CopyCount::EqualSpectrum => None,
        }
    }

    /// Ordering with `EqualSpectrum` as infinity.
    fn min(self, other: Self) -> Self {
        match (self.copies(), other.copies()) {
            (Some(a), Some(b)) => CopyCount::Copies(a.min(b)),
            (Some(_), None) => self,
            _ => other,
        }
    }
}

fn relative(t1: &MatrixTriple, t2: &MatrixTriple) -> Result<MatrixTriple> {
    require_unitary(t1)?;
    require_unitary(t2)?;
    triple_product(&symmetry(t2, Symmetry::Adjoint), t1)
}

/// `⌈π/θ(X₂†X₁)⌉`.
pub fn k_copies(t1: &MatrixTriple, t2: &MatrixTriple) -> Result<CopyCount> {
    let rel = relative(t1, t2)?;
    Ok(CopyCount::from_theta(arc(&rel)?.theta))
}

/// Upper bound on [`k_copies`]: the minimum of the copy counts of the
/// individual blocks of `X₂†X₁`, each of whose arcs is no longer than the
/// full arc.
pub fn k_bound(t1: &MatrixTriple, t2: &MatrixTriple) -> Result<CopyCount> {
    let rel = relative(t1, t2)?;
    let dec = blocks(&rel);
    let b = arc_of_angles(linalg::unitary_eigenphases(&dec.b_block));
    let mut best = CopyCount::from_theta(b.theta);
    for pb in &dec.pair_blocks {
        let ev = linalg::eigenvalues_2x2(&pb.block);
        let k = CopyCount::from_theta(arc_of_angles(ev.iter().map(|z| z.arg())).theta);
        best = best.min(k);
    }
    Ok(best)
}

/// `⟨v⊗w|X|v⊗w⟩ = ⟨v⊙v̄|A|w⊙w̄⟩ + ⟨v⊙w|B̃|v⊙w⟩ + ⟨v⊙w̄|C̃|v⊙w̄⟩`, with `B̃`, `C̃`
/// the off-diagonal parts.
pub fn local_range_value(t: &MatrixTriple, v: &[C64], w: &[C64]) -> Result<C64> {
    let d = t.dim();
    if v.len() != d || w.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: if v.len() != d { v.len() } else { w.len() },
        });
    }
    let vv: Vec<f64> = v.iter().map(|z| z.norm_sqr()).collect();
    let ww: Vec<f64> = w.iter().map(|z| z.norm_sqr()).collect();
    let vw: Vec<C64> = v.iter().zip(w).map(|(a, b)| a * b).collect();
    let vwc: Vec<C64> = v.iter().zip(w).map(|(a, b)| a * b.conj()).collect();
    let (a, b, cm) = (t.a(), t.b(), t.c());
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..d {
        for j in 0..d {
            acc += a[(i, j)] * (vv[i] * ww[j]);
            if i != j {
                acc += vw[i].conj() * b[(i, j)] * vw[j];
                acc += vwc[i].conj() * cm[(i, j)] * vwc[j];
            }
        }
    }
    Ok(acc)
}

/// `⟨v⊗w|X|v⊗w⟩` evaluated on the dense embedding.
pub fn local_range_value_dense(t: &MatrixTriple, v: &[C64], w: &[C64]) -> C64 {
    let vw: Vec<C64> = v
        .iter()
        .flat_map(|a| w.iter().map(move |b| a * b))
        .collect();
    let psi = nalgebra::DVector::from_vec(vw);
    (psi.adjoint() * embed(t).matrix() * &psi)[(0, 0)]
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocalRangeSample {
    pub values: Vec<C64>,
    pub min_abs: f64,
    /// Index of the sample attaining `min_abs`, with its probe vectors.
    pub witness_index: usize,
    pub witness_v: Vec<C64>,
    pub witness_w: Vec<C64>,
    /// Largest closed-form vs. dense deviation over the cross-checked
    /// samples, if any were checked.
    pub dense_check_defect: Option<f64>,
}

fn probe_pair(d: usize, seed: u64, index: usize) -> (Vec<C64>, Vec<C64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let v = random_unit_vector(d, &mut rng);
    let w = random_unit_vector(d, &mut rng);
    (v.iter().copied().collect(), w.iter().copied().collect())
}

/// Evaluates the closed form on `n_samples` Haar-random probe pairs. Sample
/// `k` uses its own ChaCha stream `k`, so results do not depend on `exec`.
/// For `d ≤ 16` the first ten samples are also evaluated densely.
pub fn local_range_sample(
    t: &MatrixTriple,
    n_samples: usize,
    seed: u64,
    exec: Execution,
) -> Result<LocalRangeSample> {
    if n_samples == 0 {
        return Err(Error::InvalidArgument("n_samples must be positive".into()));
    }
    let d = t.dim();
    let values = map_indexed(exec, n_samples, |k| {
        let (v, w) = probe_pair(d, seed, k);
        local_range_value(t, &v, &w).expect("probe dimensions match")
    });
    let dense_check_defect = (d <= DENSE_CHECK_MAX_DIM).then(|| {
        (0..n_samples.min(10))
            .map(|k| {
                let (v, w) = probe_pair(d, seed, k);
                (local_range_value_dense(t, &v, &w) - values[k]).norm()
            })
            .fold(0.0, f64::max)
    });
    if let Some(defect) = dense_check_defect {
        if defect > 1e-10 {
            return Err(Error::Numeric(format!(
                "closed-form local range value deviates from dense evaluation by {defect:.3e}"
            )));
        }
    }
    let (witness_index, min_abs) =
        values
            .iter()
            .map(|z| z.norm())
            .enumerate()
            .fold(
                (0, f64::INFINITY),
                |best, (k, m)| if m < best.1 { (k, m) } else { best },
            );
    let (witness_v, witness_w) = probe_pair(d, seed, witness_index);
    Ok(LocalRangeSample {
        values,
        min_abs,
        witness_index,
        witness_v,
        witness_w,
        dense_check_defect,
    })
}
