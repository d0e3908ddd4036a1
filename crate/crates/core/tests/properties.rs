//! Property-based checks of the structural invariants.

mod common;

use common::rng;
use ldoi::discriminate::{k_copies, local_range_sample, local_range_value};
use ldoi::embed::embed;
use ldoi::entangle::profile_closed_form;
use ldoi::hadamardness::{h_measure_complex, h_measure_sign, SignMatrix};
use ldoi::linalg::random_unit_vector;
use ldoi::par::Execution;
use ldoi::schmidt::{schmidt_rank, schmidt_rank_dense};
use ldoi::triples::{symmetry, triple_product, validate};
use ldoi::unitary::{check_unitary, dense_unitarity_defect, random_unitary};
use ldoi::{Field, InvarianceClass, MatrixTriple, Symmetry, C64, EPS_U};
use proptest::prelude::*;

fn class() -> impl Strategy<Value = InvarianceClass> {
    prop_oneof![
        Just(InvarianceClass::Ldoi),
        Just(InvarianceClass::Ldui),
        Just(InvarianceClass::Cldui)
    ]
}

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Complex), Just(Field::Real)]
}

fn triple(max_d: usize) -> impl Strategy<Value = MatrixTriple> {
    (1..=max_d, any::<u64>()).prop_map(|(d, seed)| common::random_triple(d, &mut rng(seed)))
}

fn unitary(max_d: usize) -> impl Strategy<Value = MatrixTriple> {
    (1..=max_d, class(), field(), any::<u64>())
        .prop_map(|(d, cl, f, seed)| random_unitary(d, cl, f, seed).unwrap())
}

fn sign_matrix(max_d: usize) -> impl Strategy<Value = SignMatrix> {
    (1..=max_d).prop_flat_map(|d| {
        prop::collection::vec(any::<u64>(), d).prop_map(move |rows| {
            SignMatrix::from_bits(d, rows.into_iter().map(|r| r & ((1 << d) - 1)).collect())
                .unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn symmetries_are_involutions(t in triple(5)) {
        for op in Symmetry::ALL {
            prop_assert_eq!(symmetry(&symmetry(&t, op), op), t.clone());
        }
    }

    #[test]
    fn symmetries_preserve_validity(t in triple(5)) {
        for op in Symmetry::ALL {
            prop_assert!(validate(&symmetry(&t, op), InvarianceClass::Ldoi).is_ok());
        }
    }

    #[test]
    fn product_is_closed_in_each_class(
        d in 1usize..=5, cl in class(), f in field(), s1 in any::<u64>(), s2 in any::<u64>()
    ) {
        let t1 = random_unitary(d, cl, f, s1).unwrap();
        let t2 = random_unitary(d, cl, f, s2).unwrap();
        let p = triple_product(&t1, &t2).unwrap();
        let rep = validate(&p, cl);
        prop_assert!(rep.is_ok(), "{:?}", rep);
        prop_assert!(check_unitary(&p, f).is_unitary);
    }

    #[test]
    fn unitarity_verdict_matches_dense(t in unitary(5)) {
        let d = t.dim() as f64;
        prop_assert!(check_unitary(&t, Field::Complex).is_unitary);
        prop_assert!(dense_unitarity_defect(&t) <= EPS_U * d);
    }

    #[test]
    fn generic_triples_are_not_unitary(t in triple(5)) {
        let verdict = check_unitary(&t, Field::Complex).is_unitary;
        prop_assert_eq!(verdict, dense_unitarity_defect(&t) <= EPS_U);
    }

    #[test]
    fn schmidt_paths_agree(t in triple(5)) {
        prop_assert_eq!(schmidt_rank(&t), schmidt_rank_dense(&t));
    }

    #[test]
    fn entangling_power_and_typicality_in_unit_interval(
        d in 2usize..=6, cl in class(), f in field(), seed in any::<u64>()
    ) {
        let p = profile_closed_form(&random_unitary(d, cl, f, seed).unwrap()).unwrap();
        let tol = 1e-12;
        prop_assert!((-tol..=1.0 + tol).contains(&p.e_power), "{:?}", p);
        prop_assert!((-tol..=1.0 + tol).contains(&p.typicality), "{:?}", p);
    }

    #[test]
    fn hadamardness_is_invariant_under_sign_flips(
        m in sign_matrix(8), rows in prop::collection::vec(0usize..8, 0..4),
        cols in prop::collection::vec(0usize..8, 0..4)
    ) {
        let h = h_measure_sign(&m);
        let mut flipped = m.clone();
        for r in rows { flipped.flip_row(r % m.dim()); }
        for c in cols { flipped.flip_col(c % m.dim()); }
        prop_assert_eq!(h_measure_sign(&flipped), h);
    }

    #[test]
    fn hadamardness_integer_matches_float(m in sign_matrix(10)) {
        let d = m.dim() as u64;
        let h = h_measure_sign(&m);
        prop_assert_eq!(h as f64, h_measure_complex(&m.to_matrix()));
        prop_assert!(h >= d.pow(3));
    }

    #[test]
    fn local_range_values_lie_in_unit_disc(t in unitary(5), seed in any::<u64>()) {
        let d = t.dim();
        let mut r = rng(seed);
        let v: Vec<C64> = random_unit_vector(d, &mut r).iter().copied().collect();
        let w: Vec<C64> = random_unit_vector(d, &mut r).iter().copied().collect();
        prop_assert!(local_range_value(&t, &v, &w).unwrap().norm() <= 1.0 + 1e-12);
    }

    #[test]
    fn local_range_sample_is_execution_independent(t in unitary(4), seed in any::<u64>()) {
        let seq = local_range_sample(&t, 40, seed, Execution::Sequential).unwrap();
        let par = local_range_sample(&t, 40, seed, Execution::Parallel { workers: Some(2) }).unwrap();
        prop_assert_eq!(seq, par);
    }

    #[test]
    fn copy_count_is_symmetric(d in 2usize..=5, s1 in any::<u64>(), s2 in any::<u64>()) {
        let t1 = random_unitary(d, InvarianceClass::Ldoi, Field::Complex, s1).unwrap();
        let t2 = random_unitary(d, InvarianceClass::Ldoi, Field::Complex, s2).unwrap();
        prop_assert_eq!(k_copies(&t1, &t2).unwrap(), k_copies(&t2, &t1).unwrap());
    }

    #[test]
    fn adjoint_symmetrization_is_hermitian(t in triple(4)) {
        let herm = symmetry(&t, Symmetry::Adjoint);
        let sum = t.linear_combination(C64::new(1.0, 0.0), &herm, C64::new(1.0, 0.0)).unwrap();
        let x = embed(&sum);
        prop_assert!((x.matrix() - x.matrix().adjoint()).norm() < 1e-12);
    }
}
