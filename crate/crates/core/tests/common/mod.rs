//! Shared fixtures and independent oracles for the integration tests.
#![allow(dead_code)]

use ldoi::embed::pairs;
use ldoi::linalg::{c, gaussian_c64, haar_unitary};
use ldoi::unitary::random_unitary;
use ldoi::{CMatrix, Field, InvarianceClass, MatrixTriple, C64};
use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Generic, typically non-unitary, LDOI triple with Gaussian entries.
pub fn random_triple<R: Rng>(d: usize, rng: &mut R) -> MatrixTriple {
    let a = CMatrix::from_fn(d, d, |_, _| gaussian_c64(rng));
    let mut b = CMatrix::from_fn(d, d, |_, _| gaussian_c64(rng));
    let mut cm = CMatrix::from_fn(d, d, |_, _| gaussian_c64(rng));
    for i in 0..d {
        b[(i, i)] = a[(i, i)];
        cm[(i, i)] = a[(i, i)];
    }
    MatrixTriple::new(a, b, cm).unwrap()
}

pub fn random_unitary_triple<R: Rng>(d: usize, rng: &mut R) -> MatrixTriple {
    random_unitary(d, InvarianceClass::Ldoi, Field::Complex, rng.random()).unwrap()
}

/// Unitary LDOI triple whose eigenphases all lie in `[0, max_angle]`:
/// `B = V·diag(e^{iφ})·V†` and every pair block `W·diag(e^{iψ})·W†` with Haar
/// `V`, `W`. The extreme phases `0` and `max_angle` are both attained.
pub fn unitary_with_phase_range<R: Rng>(d: usize, max_angle: f64, rng: &mut R) -> MatrixTriple {
    let mut phases: Vec<f64> = (0..d * d)
        .map(|_| rng.random::<f64>() * max_angle)
        .collect();
    phases[0] = 0.0;
    phases[d * d - 1] = max_angle;
    let spectral = |u: &CMatrix, ph: &[f64]| {
        let diag = CMatrix::from_diagonal(&DVector::from_iterator(
            ph.len(),
            ph.iter().map(|&p| C64::from_polar(1.0, p)),
        ));
        u * diag * u.adjoint()
    };
    let b = spectral(&haar_unitary(d, rng), &phases[..d]);
    let mut a = CMatrix::zeros(d, d);
    let mut cm = CMatrix::zeros(d, d);
    for i in 0..d {
        a[(i, i)] = b[(i, i)];
        cm[(i, i)] = b[(i, i)];
    }
    for (n, (i, j)) in pairs(d).enumerate() {
        let w = spectral(&haar_unitary(2, rng), &phases[d + 2 * n..d + 2 * n + 2]);
        a[(i, j)] = w[(0, 0)];
        cm[(i, j)] = w[(0, 1)];
        cm[(j, i)] = w[(1, 0)];
        a[(j, i)] = w[(1, 1)];
    }
    MatrixTriple::new(a, b, cm).unwrap()
}

/// Largest distance in a greedy nearest-neighbour matching of two multisets
/// of complex numbers, or `INFINITY` if their sizes differ.
pub fn multiset_distance(x: &[C64], y: &[C64]) -> f64 {
    if x.len() != y.len() {
        return f64::INFINITY;
    }
    let mut used = vec![false; y.len()];
    let mut worst = 0.0_f64;
    for a in x {
        let (k, dist) = y
            .iter()
            .enumerate()
            .filter(|(k, _)| !used[*k])
            .map(|(k, b)| (k, (a - b).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .unwrap();
        used[k] = true;
        worst = worst.max(dist);
    }
    worst
}

/// The DOC map `Z ↦ diag(A·diag Z) + B̃⊙Z + C̃⊙Zᵀ` of a triple.
pub fn doc_map(t: &MatrixTriple, z: &CMatrix) -> CMatrix {
    let d = t.dim();
    let zd: Vec<C64> = (0..d).map(|i| z[(i, i)]).collect();
    CMatrix::from_fn(d, d, |i, j| {
        if i == j {
            (0..d).map(|k| t.a()[(i, k)] * zd[k]).sum()
        } else {
            t.b()[(i, j)] * z[(i, j)] + t.c()[(i, j)] * z[(j, i)]
        }
    })
}

/// Reads back the triple of a DOC map given as a closure, by evaluating it
/// on matrix units.
pub fn triple_of_doc_map(d: usize, map: impl Fn(&CMatrix) -> CMatrix) -> MatrixTriple {
    let unit = |k: usize, l: usize| {
        let mut e = CMatrix::zeros(d, d);
        e[(k, l)] = c(1.0, 0.0);
        e
    };
    let mut a = CMatrix::zeros(d, d);
    let mut b = CMatrix::zeros(d, d);
    let mut cm = CMatrix::zeros(d, d);
    for k in 0..d {
        let img = map(&unit(k, k));
        for i in 0..d {
            a[(i, k)] = img[(i, i)];
        }
    }
    for k in 0..d {
        for l in 0..d {
            if k != l {
                let img = map(&unit(k, l));
                b[(k, l)] = img[(k, l)];
                cm[(l, k)] = img[(l, k)];
            }
        }
    }
    for i in 0..d {
        b[(i, i)] = a[(i, i)];
        cm[(i, i)] = a[(i, i)];
    }
    MatrixTriple::new(a, b, cm).unwrap()
}

/// Number of coordinates `(i, j, k, l)` of a `d²×d²` operator left invariant
/// by the local diagonal group of `class`, counted from the characters:
/// `{i,j} = {k,l}` for `U⊗U`, `{i,l} = {j,k}` for `U⊗Ū`, every index
/// appearing an even number of times for `O⊗O`.
pub fn invariant_coordinate_count(d: usize, class: InvarianceClass) -> usize {
    let mut n = 0;
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                for l in 0..d {
                    if coordinate_invariant(class, i, j, k, l) {
                        n += 1;
                    }
                }
            }
        }
    }
    n
}

pub fn coordinate_invariant(
    class: InvarianceClass,
    i: usize,
    j: usize,
    k: usize,
    l: usize,
) -> bool {
    let same = |p: (usize, usize), q: (usize, usize)| p == q || p == (q.1, q.0);
    match class {
        InvarianceClass::Ldui => same((i, j), (k, l)),
        InvarianceClass::Cldui => same((i, l), (j, k)),
        InvarianceClass::Ldoi => {
            let mut idx = [i, j, k, l];
            idx.sort_unstable();
            idx[0] == idx[1] && idx[2] == idx[3]
        }
    }
}

/// Unit triples spanning the class: shared-diagonal units plus one unit per
/// free off-diagonal entry of A, B (not LDUI) and C (not CLDUI).
pub fn unit_basis(d: usize, class: InvarianceClass) -> Vec<MatrixTriple> {
    let one = c(1.0, 0.0);
    let mut out = Vec::new();
    for i in 0..d {
        let mut z = MatrixTriple::zeros(d).into_parts();
        z.0[(i, i)] = one;
        z.1[(i, i)] = one;
        z.2[(i, i)] = one;
        out.push(MatrixTriple::new(z.0, z.1, z.2).unwrap());
    }
    for i in 0..d {
        for j in 0..d {
            if i == j {
                continue;
            }
            for slot in 0..3 {
                if (slot == 1 && class == InvarianceClass::Ldui)
                    || (slot == 2 && class == InvarianceClass::Cldui)
                {
                    continue;
                }
                let mut z = MatrixTriple::zeros(d).into_parts();
                match slot {
                    0 => z.0[(i, j)] = one,
                    1 => z.1[(i, j)] = one,
                    _ => z.2[(i, j)] = one,
                }
                out.push(MatrixTriple::new(z.0, z.1, z.2).unwrap());
            }
        }
    }
    out
}
