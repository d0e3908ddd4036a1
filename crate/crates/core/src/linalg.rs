//! Numerical helpers shared by the modules: numerical rank, spectra, Haar
//! sampling and an exact integer rank.

use nalgebra::{DVector, Matrix2, Schur, SymmetricEigen};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::{CMatrix, C64};

/// Relative cutoff used by [`numerical_rank`].
pub const RANK_RTOL: f64 = 1e-12;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn real_matrix(rows: &[&[f64]]) -> CMatrix {
    let n = rows.len();
    let m = rows.first().map_or(0, |r| r.len());
    CMatrix::from_fn(n, m, |i, j| c(rows[i][j], 0.0))
}

pub fn frobenius(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `‖M†M − 𝟙‖_F` for a square matrix.
pub fn unitarity_defect(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let g = m.adjoint() * m;
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { 1.0 } else { 0.0 };
            acc += (g[(i, j)] - c(target, 0.0)).norm_sqr();
        }
    }
    acc.sqrt()
}

/// Largest absolute imaginary part of any entry.
pub fn max_imag(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
}

/// Singular values in descending order.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    let mut sv: Vec<f64> = m.clone().singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Rank cutoff for singular values `sv` (descending) of a matrix with `rows`
/// rows, in a problem of local dimension `d`.
pub fn rank_cutoff(sv: &[f64], rows: usize, d: usize) -> f64 {
    let smax = sv.first().copied().unwrap_or(0.0);
    (d * d).max(rows) as f64 * smax * RANK_RTOL
}

/// Numerical rank: singular values above `max(d², rows) · σ_max · 1e−12`.
pub fn numerical_rank(m: &CMatrix, d: usize) -> usize {
    let sv = singular_values(m);
    let cut = rank_cutoff(&sv, m.nrows(), d);
    sv.iter().filter(|&&s| s > cut && s > 0.0).count()
}

/// Eigenvalues of a 2×2 complex matrix.
pub fn eigenvalues_2x2(m: &Matrix2<C64>) -> [C64; 2] {
    // Centred form: no cancellation between tr² and 4·det near degeneracy.
    let mean = (m[(0, 0)] + m[(1, 1)]) * 0.5;
    let half_gap = (m[(0, 0)] - m[(1, 1)]) * 0.5;
    let disc = (half_gap * half_gap + m[(0, 1)] * m[(1, 0)]).sqrt();
    [mean + disc, mean - disc]
}

/// Eigenvalues of a square complex matrix via the complex Schur form.
pub fn eigenvalues(m: &CMatrix) -> Vec<C64> {
    let n = m.nrows();
    match n {
        0 => Vec::new(),
        1 => vec![m[(0, 0)]],
        2 => {
            let m2 = Matrix2::new(m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
            eigenvalues_2x2(&m2).to_vec()
        }
        _ => {
            let (_, t) = Schur::new(m.clone()).unpack();
            (0..n).map(|i| t[(i, i)]).collect()
        }
    }
}

/// Eigenphases in `(−π, π]` of a unitary matrix, without a Schur iteration.
///
/// The Hermitian part `(U + U†)/2` has eigenvalues `cos φ`, so `±acos` of
/// them is a superset of the spectrum. Rotating the midpoint of its largest
/// gap to `−1` keeps `𝟙 + V` (with `V = e^{−iβ}U`) invertible with margin
/// `≥ π/(2n)`. The Cayley transform `H = i(𝟙 − V)(𝟙 + V)⁻¹` is Hermitian with
/// eigenvalues `tan((φ − β)/2)`.
pub fn unitary_eigenphases(u: &CMatrix) -> Vec<f64> {
    let n = u.nrows();
    if n == 0 {
        return Vec::new();
    }
    let herm = (u + u.adjoint()) * c(0.5, 0.0);
    let mut candidates: Vec<f64> = SymmetricEigen::new(herm)
        .eigenvalues
        .iter()
        .flat_map(|&x| {
            let a = x.clamp(-1.0, 1.0).acos();
            [a, -a]
        })
        .collect();
    candidates.sort_by(f64::total_cmp);
    let tau = std::f64::consts::TAU;
    let mut gap = (
        candidates[0] + tau - candidates[candidates.len() - 1],
        candidates[candidates.len() - 1],
    );
    for w in candidates.windows(2) {
        if w[1] - w[0] > gap.0 {
            gap = (w[1] - w[0], w[0]);
        }
    }
    // Midpoint of the gap is sent to −1, i.e. β = midpoint − π.
    let beta = gap.1 + gap.0 / 2.0 - std::f64::consts::PI;
    let v = u * C64::from_polar(1.0, -beta);
    let id = identity(n);
    let inv = (&id + &v)
        .try_inverse()
        .expect("the rotation keeps −1 away from the spectrum");
    let h = (&id - &v) * inv * c(0.0, 1.0);
    let h = (&h + h.adjoint()) * c(0.5, 0.0);
    SymmetricEigen::new(h)
        .eigenvalues
        .iter()
        .map(|&t| {
            let phi = beta + 2.0 * t.atan();
            C64::from_polar(1.0, phi).arg()
        })
        .collect()
}

pub fn gaussian_c64<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    c(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn gaussian_real<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

/// Uniform phase `e^{iφ}`.
pub fn random_phase<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let phi = rng.random::<f64>() * std::f64::consts::TAU;
    C64::from_polar(1.0, phi)
}

pub fn random_sign<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    if rng.random::<bool>() {
        1.0
    } else {
        -1.0
    }
}

/// QR of a Gaussian matrix with the phases of `diag R` moved into `Q`.
fn phase_corrected_q(g: CMatrix) -> CMatrix {
    let n = g.nrows();
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        let rjj = r[(j, j)];
        let ph = if rjj.norm() > 0.0 {
            rjj / rjj.norm()
        } else {
            c(1.0, 0.0)
        };
        for i in 0..n {
            q[(i, j)] *= ph;
        }
    }
    q
}

/// Haar-distributed element of `U(n)`.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let g = CMatrix::from_fn(n, n, |_, _| gaussian_c64(rng));
    phase_corrected_q(g)
}

/// Haar-distributed element of `O(n)`, stored with zero imaginary parts.
pub fn haar_orthogonal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let g = CMatrix::from_fn(n, n, |_, _| c(gaussian_real(rng), 0.0));
    let mut q = phase_corrected_q(g);
    // Householder QR of a real matrix stays real up to roundoff.
    q.iter_mut().for_each(|z| z.im = 0.0);
    q
}

/// Haar-random unit vector in `ℂⁿ`.
pub fn random_unit_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DVector<C64> {
    let v = DVector::from_fn(n, |_, _| gaussian_c64(rng));
    let norm = v.norm();
    v / c(norm, 0.0)
}

/// All-ones `n × n` matrix.
pub fn ones(n: usize) -> CMatrix {
    CMatrix::from_element(n, n, c(1.0, 0.0))
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

/// Diagonal part of `m` as a matrix.
pub fn diag_part(m: &CMatrix) -> CMatrix {
    let n = m.nrows();
    CMatrix::from_fn(n, n, |i, j| if i == j { m[(i, i)] } else { c(0.0, 0.0) })
}

/// Kronecker product.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Principal square root of a unimodular phase.
pub fn principal_sqrt(z: C64) -> C64 {
    z.sqrt()
}

/// Exact rank of an integer matrix by fraction-free (Bareiss) elimination.
///
/// Returns `None` if an intermediate value overflows `i128`.
pub fn exact_rank(rows: &[Vec<i64>]) -> Option<usize> {
    let nrows = rows.len();
    if nrows == 0 {
        return Some(0);
    }
    let ncols = rows[0].len();
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut rank = 0;
    let mut prev_pivot: i128 = 1;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col];
        for r in (rank + 1)..nrows {
            let factor = m[r][col];
            let (upper, lower) = m.split_at_mut(r);
            for (x, &y) in lower[0][col..ncols]
                .iter_mut()
                .zip(&upper[rank][col..ncols])
            {
                let num = x.checked_mul(pivot)?.checked_sub(y.checked_mul(factor)?)?;
                *x = num / prev_pivot;
            }
        }
        prev_pivot = pivot;
        rank += 1;
    }
    Some(rank)
}
