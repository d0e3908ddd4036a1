//! Operator entanglement, entangling power and gate typicality.
//!
//! For unitary `X(A,B,C)` the realignment is `X(B,A,C)` and `XS` is
//! `X(C,B,A)`, so both `E(X)` and `E(XS)` reduce to sums over the blocks of
//! the realigned operators.

use serde::Serialize;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::embed::{dense_pt, dense_realign, embed};
use crate::linalg::random_unit_vector;
use crate::par::{map_indexed, Execution};
use crate::unitary::{check_unitary, Field};
use crate::{CMatrix, Error, MatrixTriple, Result, C64, EPS_U};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntanglementProfile {
    /// `E(X)`
    pub e_op: f64,
    /// `E(XS)`
    pub e_op_swapped: f64,
    /// `e_p(X) = (E(X) + E(XS) − E(S)) / E(S)`
    pub e_power: f64,
    /// `g_t(X) = (E(X) − E(XS) + E(S)) / (2E(S))`
    pub typicality: f64,
}

/// `E(S) = 1 − 1/d²`.
pub fn swap_entanglement(d: usize) -> f64 {
    1.0 - 1.0 / (d * d) as f64
}

fn profile_from(d: usize, e_op: f64, e_op_swapped: f64) -> EntanglementProfile {
    let es = swap_entanglement(d);
    EntanglementProfile {
        e_op,
        e_op_swapped,
        e_power: (e_op + e_op_swapped - es) / es,
        typicality: (e_op - e_op_swapped + es) / (2.0 * es),
    }
}

fn require_unitary(t: &MatrixTriple) -> Result<()> {
    if t.dim() < 2 {
        return Err(Error::InvalidArgument(
            "entangling power is undefined for d = 1".into(),
        ));
    }
    let r = check_unitary(t, Field::Complex);
    if !r.is_unitary {
        return Err(Error::NotUnitary {
            defect: r.b_defect.max(r.condition_defect),
        });
    }
    Ok(())
}

/// `Tr[(MM†)²]`
fn gram_square_trace(m: &CMatrix) -> f64 {
    let g = m * m.adjoint();
    g.iter().map(|z| z.norm_sqr()).sum()
}

/// `Tr[(PP†)²] + Σ_{i≠j} [(|Q_ij|² + |R_ij|²)² + |Q_ij·conj(R_ji) + conj(Q_ji)·R_ij|²]`,
/// the Gram trace of the realignment of `X(Q,P,R)`.
fn block_gram_sum(p: &CMatrix, q: &CMatrix, r: &CMatrix) -> f64 {
    let d = p.nrows();
    let mut acc = gram_square_trace(p);
    for i in 0..d {
        for j in 0..d {
            if i == j {
                continue;
            }
            let diag = q[(i, j)].norm_sqr() + r[(i, j)].norm_sqr();
            let off = q[(i, j)] * r[(j, i)].conj() + q[(j, i)].conj() * r[(i, j)];
            acc += diag * diag + off.norm_sqr();
        }
    }
    acc
}

/// Closed-form profile of a unitary LDOI triple.
pub fn profile_closed_form(t: &MatrixTriple) -> Result<EntanglementProfile> {
    require_unitary(t)?;
    let d4 = (t.dim() as f64).powi(4);
    let e = 1.0 - block_gram_sum(t.a(), t.b(), t.c()) / d4;
    let es = 1.0 - block_gram_sum(t.c(), t.b(), t.a()) / d4;
    Ok(profile_from(t.dim(), e, es))
}

/// Profile from the dense realignment and partial transposition.
pub fn profile_oracle(t: &MatrixTriple) -> Result<EntanglementProfile> {
    require_unitary(t)?;
    let x = embed(t);
    let d4 = (t.dim() as f64).powi(4);
    let e = 1.0 - gram_square_trace(dense_realign(&x).matrix()) / d4;
    let es = 1.0 - gram_square_trace(dense_pt(&x).matrix()) / d4;
    Ok(profile_from(t.dim(), e, es))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MaxEntanglingPower {
    pub e_power: f64,
    /// `CC† = d𝟙` within `ε_u·d`.
    pub is_max: bool,
}

/// Entangling power of the dual LDUI triple `(diag C, diag C, C)` for a
/// unimodular `C`: `e_p = E(XS)/E(S)` with `E(XS) = 1 − Tr[(CC†)²]/d⁴`.
pub fn max_ep_dual_ldui(c: &CMatrix) -> Result<MaxEntanglingPower> {
    let d = c.nrows();
    if !c.is_square() || d < 2 {
        return Err(Error::InvalidArgument(
            "C must be square with d >= 2".into(),
        ));
    }
    if let Some(z) = c.iter().find(|z| (z.norm() - 1.0).abs() > EPS_U) {
        return Err(Error::InvalidArgument(format!(
            "C must be unimodular, found an entry of modulus {}",
            z.norm()
        )));
    }
    let d4 = (d as f64).powi(4);
    let e_swapped = 1.0 - gram_square_trace(c) / d4;
    let gram = c * c.adjoint() - CMatrix::identity(d, d) * crate::linalg::c(d as f64, 0.0);
    Ok(MaxEntanglingPower {
        e_power: e_swapped / swap_entanglement(d),
        is_max: gram.norm() <= EPS_U * d as f64,
    })
}

/// Number of independent random streams a Monte-Carlo run is split into.
pub const MONTE_CARLO_STREAMS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonteCarloEstimate {
    pub e_power: f64,
    pub standard_error: f64,
    pub samples: usize,
}

/// Linear entropy `1 − Tr ρ²` of the reduced state of a pure state on
/// `ℂ^d ⊗ ℂ^d`, given in the product basis `|ij⟩ ↦ i·d + j`.
pub fn linear_entropy(psi: &[C64], d: usize) -> f64 {
    let m = CMatrix::from_fn(d, d, |i, j| psi[i * d + j]);
    let rho = &m * m.adjoint();
    let norm = rho.trace().re;
    let purity: f64 = rho.iter().map(|z| z.norm_sqr()).sum();
    1.0 - purity / (norm * norm)
}

/// Haar Monte-Carlo estimate of `e_p`: `(d+1)/(d−1)` times the mean linear
/// entropy of `X|φ⟩|ψ⟩` over independent Haar product states. Stream `k` of
/// [`MONTE_CARLO_STREAMS`] is ChaCha stream `k` of `seed`, so the estimate
/// does not depend on `exec`.
pub fn monte_carlo_e_power(
    t: &MatrixTriple,
    samples: usize,
    seed: u64,
    exec: Execution,
) -> Result<MonteCarloEstimate> {
    require_unitary(t)?;
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be positive".into()));
    }
    let d = t.dim();
    let x = embed(t).into_matrix();
    let sums = map_indexed(exec, MONTE_CARLO_STREAMS, |k| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(k as u64);
        let n = samples / MONTE_CARLO_STREAMS + usize::from(k < samples % MONTE_CARLO_STREAMS);
        let (mut s, mut s2) = (0.0, 0.0);
        for _ in 0..n {
            let phi = random_unit_vector(d, &mut rng);
            let chi = random_unit_vector(d, &mut rng);
            let out = &x * phi.kronecker(&chi);
            let e = linear_entropy(out.as_slice(), d);
            s += e;
            s2 += e * e;
        }
        (s, s2)
    });
    let (s, s2) = sums
        .iter()
        .fold((0.0, 0.0), |acc, v| (acc.0 + v.0, acc.1 + v.1));
    let n = samples as f64;
    let mean = s / n;
    let var = (s2 / n - mean * mean).max(0.0);
    let scale = (d as f64 + 1.0) / (d as f64 - 1.0);
    Ok(MonteCarloEstimate {
        e_power: scale * mean,
        standard_error: scale * (var / n).sqrt(),
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ones, real_matrix};
    use crate::special::fourier_matrix;

    #[test]
    fn linear_entropy_extremes() {
        let product = [
            C64::new(1.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
        ];
        assert!(linear_entropy(&product, 2).abs() < 1e-15);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = [
            C64::new(h, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(h, 0.0),
        ];
        assert!((linear_entropy(&bell, 2) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn monte_carlo_is_execution_independent() {
        let t = crate::unitary::random_unitary(2, crate::InvarianceClass::Ldoi, Field::Complex, 1)
            .unwrap();
        let a = monte_carlo_e_power(&t, 1000, 5, Execution::Sequential).unwrap();
        let b = monte_carlo_e_power(&t, 1000, 5, Execution::Parallel { workers: Some(3) }).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn swap_profile() {
        for d in 2..=5 {
            let p = profile_closed_form(&MatrixTriple::swap(d)).unwrap();
            assert!((p.e_op - swap_entanglement(d)).abs() < 1e-12);
            assert!(p.e_op_swapped.abs() < 1e-12);
            assert!(p.e_power.abs() < 1e-12);
            assert!((p.typicality - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn identity_profile() {
        let p = profile_oracle(&MatrixTriple::identity(3)).unwrap();
        assert!(p.e_op.abs() < 1e-12 && p.e_power.abs() < 1e-12 && p.typicality.abs() < 1e-12);
    }

    #[test]
    fn fourier_is_maximal() {
        for d in 2..=6 {
            let r = max_ep_dual_ldui(&fourier_matrix(d)).unwrap();
            assert!((r.e_power - d as f64 / (d as f64 + 1.0)).abs() < 1e-12);
            assert!(r.is_max);
        }
    }

    #[test]
    fn all_ones_is_minimal() {
        let r = max_ep_dual_ldui(&ones(4)).unwrap();
        assert!(r.e_power.abs() < 1e-12 && !r.is_max);
    }

    #[test]
    fn real_hadamard_d2() {
        let r = max_ep_dual_ldui(&real_matrix(&[&[1.0, 1.0], &[1.0, -1.0]])).unwrap();
        assert!((r.e_power - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn non_unitary_is_rejected() {
        let t = MatrixTriple::new(ones(2), ones(2), ones(2)).unwrap();
        assert!(profile_closed_form(&t).is_err());
        assert!(profile_closed_form(&MatrixTriple::swap(1)).is_err());
    }
}
