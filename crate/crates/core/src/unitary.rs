//! Unitarity of LDOI triples and sampling of the unitary subgroups.
//!
//! `X(A,B,C)` is unitary iff `B` is unitary and, for each `i < j`, there is a
//! phase `ω_ij` with `A_ji = ω_ij·conj(A_ij)`, `C_ji = −ω_ij·conj(C_ij)` and
//! `|A_ij|² + |C_ij|² = 1`. Equivalently every 2×2 block
//! `[[A_ij, C_ij], [C_ji, A_ji]]` is unitary. Both forms are evaluated by
//! [`check_unitary`].

use nalgebra::Matrix2;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::embed::{embed, pair_block, pairs};
use crate::linalg::{
    self, c, haar_orthogonal, haar_unitary, random_phase, random_sign, unitarity_defect,
};
use crate::{CMatrix, Error, InvarianceClass, MatrixTriple, Result, C64, EPS_EQ, EPS_U};

/// Scalar field for unitary (complex) or orthogonal (real) questions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Complex,
    Real,
}

impl std::str::FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "c" | "complex" => Ok(Field::Complex),
            "r" | "real" => Ok(Field::Real),
            other => Err(Error::Parse(format!(
                "unknown field `{other}` (expected c or r)"
            ))),
        }
    }
}

/// Recovered phase `ω_ij` for one off-diagonal pair.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseWitness {
    pub i: usize,
    pub j: usize,
    /// `[re, im]`
    pub omega: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnitarityReport {
    pub is_unitary: bool,
    pub field: Field,
    /// `‖B†B − 𝟙‖_F`.
    pub b_defect: f64,
    /// Pair with the largest 2×2 block defect, if `d ≥ 2`.
    pub worst_pair: Option<(usize, usize)>,
    /// `‖W†W − 𝟙‖_F` of that block.
    pub pair_defect: f64,
    /// Largest defect of the phase/modulus conditions over all pairs.
    pub condition_defect: f64,
    /// Largest imaginary part of any entry (relevant for `Field::Real`).
    pub imag_defect: f64,
    pub phase_witnesses: Vec<PhaseWitness>,
    /// Whether the condition-list verdict matches the block-unitarity verdict.
    pub paths_agree: bool,
}

/// Defect of the pair conditions for one `(i, j)`, together with the phase
/// that best explains the entries.
///
/// The phase is read off the larger of `|M_ij|` and `|N_ij|` so that it is
/// never recovered from a vanishing entry.
pub(crate) fn pair_condition(
    m: &CMatrix,
    n: &CMatrix,
    i: usize,
    j: usize,
    field: Field,
) -> (f64, Option<C64>) {
    let (mij, mji, nij, nji) = (m[(i, j)], m[(j, i)], n[(i, j)], n[(j, i)]);
    let norm_ij = (mij.norm_sqr() + nij.norm_sqr() - 1.0).abs();
    let norm_ji = (mji.norm_sqr() + nji.norm_sqr() - 1.0).abs();
    let mut defect = norm_ij.max(norm_ji);
    // Both entries vanish: the modulus condition already fails, ω is undefined.
    if mij.norm() <= EPS_U && nij.norm() <= EPS_U {
        return (defect.max(1.0), None);
    }
    let omega = if mij.norm() >= nij.norm() {
        mji / mij.conj()
    } else {
        -nji / nij.conj()
    };
    defect = defect
        .max((omega.norm() - 1.0).abs())
        .max((mji - omega * mij.conj()).norm())
        .max((nji + omega * nij.conj()).norm());
    if field == Field::Real {
        defect = defect.max(omega.im.abs());
    }
    (defect, Some(omega))
}

fn block_defect(w: &Matrix2<C64>) -> f64 {
    let g = w.adjoint() * w - Matrix2::identity();
    g.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Evaluates the unitarity (orthogonality for `Field::Real`) conditions.
pub fn check_unitary(t: &MatrixTriple, field: Field) -> UnitarityReport {
    let d = t.dim();
    let b_defect = unitarity_defect(t.b());
    let imag_defect = [t.a(), t.b(), t.c()]
        .iter()
        .map(|m| linalg::max_imag(m))
        .fold(0.0, f64::max);
    let mut worst_pair = None;
    let mut pair_defect = 0.0;
    let mut condition_defect = 0.0_f64;
    let mut phase_witnesses = Vec::new();
    for (i, j) in pairs(d) {
        let bd = block_defect(&pair_block(t.a(), t.c(), i, j));
        if worst_pair.is_none() || bd > pair_defect {
            worst_pair = Some((i, j));
            pair_defect = bd;
        }
        let (cd, omega) = pair_condition(t.a(), t.c(), i, j, field);
        condition_defect = condition_defect.max(cd);
        if let Some(w) = omega {
            phase_witnesses.push(PhaseWitness {
                i,
                j,
                omega: [w.re, w.im],
            });
        }
    }
    let real_ok = field == Field::Complex || imag_defect <= EPS_EQ;
    let by_conditions = real_ok && b_defect <= EPS_U && condition_defect <= EPS_U;
    let by_blocks = real_ok && b_defect <= EPS_U && pair_defect <= EPS_U;
    UnitarityReport {
        is_unitary: by_conditions,
        field,
        b_defect,
        worst_pair,
        pair_defect,
        condition_defect,
        imag_defect,
        phase_witnesses,
        paths_agree: by_conditions == by_blocks,
    }
}

/// `‖X†X − 𝟙‖_F` of the dense embedding.
pub fn dense_unitarity_defect(t: &MatrixTriple) -> f64 {
    unitarity_defect(embed(t).matrix())
}

/// Samples a unitary (orthogonal for `Field::Real`) member of `class`
/// through its block parametrization.
///
/// - LDOI: `B` Haar in `U(d)` / `O(d)`, each pair block Haar in `U(2)` / `O(2)`.
/// - LDUI: `B` diagonal with uniform phases / signs, pair blocks as above.
/// - CLDUI: `B` Haar, `C = diag B`, each off-diagonal `A_ij` a uniform phase / sign.
///
/// The diagonals of `A` and `C` are copied from `B`.
pub fn random_unitary(
    d: usize,
    class: InvarianceClass,
    field: Field,
    seed: u64,
) -> Result<MatrixTriple> {
    if d == 0 {
        return Err(Error::InvalidArgument(
            "dimension must be at least 1".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let haar = |n: usize, rng: &mut ChaCha8Rng| match field {
        Field::Complex => haar_unitary(n, rng),
        Field::Real => haar_orthogonal(n, rng),
    };
    let phase = |rng: &mut ChaCha8Rng| match field {
        Field::Complex => random_phase(rng),
        Field::Real => c(random_sign(rng), 0.0),
    };

    let b = match class {
        InvarianceClass::Ldoi | InvarianceClass::Cldui => haar(d, &mut rng),
        InvarianceClass::Ldui => {
            let mut b = CMatrix::zeros(d, d);
            for i in 0..d {
                b[(i, i)] = phase(&mut rng);
            }
            b
        }
    };
    let mut a = CMatrix::zeros(d, d);
    let mut cm = CMatrix::zeros(d, d);
    for i in 0..d {
        a[(i, i)] = b[(i, i)];
        cm[(i, i)] = b[(i, i)];
    }
    for (i, j) in pairs(d) {
        match class {
            InvarianceClass::Ldoi | InvarianceClass::Ldui => {
                let w = haar(2, &mut rng);
                a[(i, j)] = w[(0, 0)];
                cm[(i, j)] = w[(0, 1)];
                cm[(j, i)] = w[(1, 0)];
                a[(j, i)] = w[(1, 1)];
            }
            InvarianceClass::Cldui => {
                a[(i, j)] = phase(&mut rng);
                a[(j, i)] = phase(&mut rng);
            }
        }
    }
    MatrixTriple::new(a, b, cm)
}

/// Real dimension of the unitary subgroup of `class` in `U(d²)`:
/// `U(d) × U(2)^{d(d−1)/2}` for LDOI, `U(1)^d × U(2)^{d(d−1)/2}` for LDUI
/// and `U(d) × U(1)^{d(d−1)}` for CLDUI.
pub fn subgroup_dims(d: usize, class: InvarianceClass) -> usize {
    let npairs = d * d.saturating_sub(1) / 2;
    match class {
        InvarianceClass::Ldoi => d * d + 4 * npairs,
        InvarianceClass::Ldui => d + 4 * npairs,
        InvarianceClass::Cldui => d * d + 2 * npairs,
    }
}

/// One complex coordinate of a class subspace.
#[derive(Debug, Clone, Copy)]
enum Coord {
    Diag(usize),
    A(usize, usize),
    B(usize, usize),
    C(usize, usize),
}

fn class_coords(d: usize, class: InvarianceClass) -> Vec<Coord> {
    let mut out: Vec<Coord> = (0..d).map(Coord::Diag).collect();
    for i in 0..d {
        for j in 0..d {
            if i == j {
                continue;
            }
            out.push(Coord::A(i, j));
            if class != InvarianceClass::Ldui {
                out.push(Coord::B(i, j));
            }
            if class != InvarianceClass::Cldui {
                out.push(Coord::C(i, j));
            }
        }
    }
    out
}

fn triple_from_coords(d: usize, coords: &[Coord], values: &[C64]) -> MatrixTriple {
    let mut a = CMatrix::zeros(d, d);
    let mut b = CMatrix::zeros(d, d);
    let mut cm = CMatrix::zeros(d, d);
    for (coord, &v) in coords.iter().zip(values) {
        match *coord {
            Coord::Diag(i) => {
                a[(i, i)] = v;
                b[(i, i)] = v;
                cm[(i, i)] = v;
            }
            Coord::A(i, j) => a[(i, j)] = v,
            Coord::B(i, j) => b[(i, j)] = v,
            Coord::C(i, j) => cm[(i, j)] = v,
        }
    }
    MatrixTriple::new(a, b, cm).expect("square by construction")
}

fn coords_of(t: &MatrixTriple, coords: &[Coord]) -> Vec<C64> {
    coords
        .iter()
        .map(|coord| match *coord {
            Coord::Diag(i) => t.a()[(i, i)],
            Coord::A(i, j) => t.a()[(i, j)],
            Coord::B(i, j) => t.b()[(i, j)],
            Coord::C(i, j) => t.c()[(i, j)],
        })
        .collect()
}

/// Dimension of the tangent space of the unitary subgroup at a random point,
/// probed numerically: the kernel of the central-difference Jacobian of
/// `x ↦ X(x)†X(x) − 𝟙` over the real coordinates of the class subspace.
pub fn tangent_dimension(d: usize, class: InvarianceClass, seed: u64) -> Result<usize> {
    let point = random_unitary(d, class, Field::Complex, seed)?;
    let coords = class_coords(d, class);
    let base = coords_of(&point, &coords);
    let nreal = 2 * base.len();
    let h = 1e-6;
    let constraint = |vals: &[C64]| -> Vec<f64> {
        let x = embed(&triple_from_coords(d, &coords, vals));
        let g = x.matrix().adjoint() * x.matrix();
        g.iter().flat_map(|z| [z.re, z.im]).collect()
    };
    let nrows = 2 * d.pow(4);
    let mut jac = nalgebra::DMatrix::<f64>::zeros(nrows, nreal);
    for p in 0..nreal {
        let step = if p % 2 == 0 { c(h, 0.0) } else { c(0.0, h) };
        let mut plus = base.clone();
        let mut minus = base.clone();
        plus[p / 2] += step;
        minus[p / 2] -= step;
        let fp = constraint(&plus);
        let fm = constraint(&minus);
        for r in 0..nrows {
            jac[(r, p)] = (fp[r] - fm[r]) / (2.0 * h);
        }
    }
    let sv = jac.singular_values();
    let smax = sv.iter().copied().fold(0.0, f64::max);
    let rank = sv.iter().filter(|&&s| s > smax * 1e-6).count();
    Ok(nreal - rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ones;

    #[test]
    fn swap_and_identity_are_unitary() {
        for d in 1..=4 {
            let r = check_unitary(&MatrixTriple::swap(d), Field::Complex);
            assert!(r.is_unitary && r.paths_agree);
            // C_ji = 1 = −ω·conj(C_ij) forces ω = −1.
            for w in &r.phase_witnesses {
                assert!((w.omega[0] + 1.0).abs() < 1e-15 && w.omega[1].abs() < 1e-15);
            }
            assert!(check_unitary(&MatrixTriple::identity(d), Field::Real).is_unitary);
        }
    }

    #[test]
    fn norm_condition_violation() {
        let mut cm = crate::linalg::identity(3);
        cm[(0, 1)] = c(1.0, 0.0);
        let t = MatrixTriple::new(ones(3), crate::linalg::identity(3), cm).unwrap();
        let r = check_unitary(&t, Field::Complex);
        assert!(!r.is_unitary);
        assert!(r.condition_defect >= 1.0 - 1e-12);
        assert_eq!(r.worst_pair, Some((0, 1)));
        assert!(r.paths_agree);
    }

    #[test]
    fn complex_triple_is_not_orthogonal() {
        let t = random_unitary(3, InvarianceClass::Ldoi, Field::Complex, 11).unwrap();
        assert!(check_unitary(&t, Field::Complex).is_unitary);
        assert!(!check_unitary(&t, Field::Real).is_unitary);
    }

    #[test]
    fn ldui_sample_has_unimodular_diagonal_b() {
        let t = random_unitary(4, InvarianceClass::Ldui, Field::Complex, 5).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                if i == j {
                    assert!((t.b()[(i, i)].norm() - 1.0).abs() < 1e-14);
                } else {
                    assert_eq!(t.b()[(i, j)], c(0.0, 0.0));
                }
            }
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let t1 = random_unitary(4, InvarianceClass::Cldui, Field::Real, 99).unwrap();
        let t2 = random_unitary(4, InvarianceClass::Cldui, Field::Real, 99).unwrap();
        assert_eq!(t1, t2);
        let t3 = random_unitary(4, InvarianceClass::Cldui, Field::Real, 100).unwrap();
        assert_ne!(t1, t3);
    }

    #[test]
    fn subgroup_dimension_formulas() {
        assert_eq!(subgroup_dims(2, InvarianceClass::Ldoi), 8);
        assert_eq!(subgroup_dims(3, InvarianceClass::Ldui), 15);
        assert_eq!(subgroup_dims(3, InvarianceClass::Ldoi), 21);
        assert_eq!(subgroup_dims(3, InvarianceClass::Cldui), 15);
    }

    #[test]
    fn tangent_probe_matches_formula() {
        for d in 2..=3 {
            for class in InvarianceClass::ALL {
                assert_eq!(
                    tangent_dimension(d, class, 1).unwrap(),
                    subgroup_dims(d, class),
                    "d={d} {class:?}"
                );
            }
        }
    }

    #[test]
    fn field_parsing() {
        assert_eq!("c".parse::<Field>().unwrap(), Field::Complex);
        assert_eq!("real".parse::<Field>().unwrap(), Field::Real);
        assert!("q".parse::<Field>().is_err());
    }
}
