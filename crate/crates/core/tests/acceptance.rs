//! Acceptance suite: every criterion at its pinned tolerance, one
//! `PASS`/`FAIL` line each. Exits non-zero if any criterion fails.

mod common;

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use common::*;
use ldoi::discriminate::{arc, arc_dense, k_bound, k_copies, spectrum};
use ldoi::embed::embed;
use ldoi::entangle::{
    max_ep_dual_ldui, monte_carlo_e_power, profile_closed_form, profile_oracle, swap_entanglement,
};
use ldoi::hadamardness::{exhaustive_min, SignMatrix};
use ldoi::linalg::{c, eigenvalues, exact_rank, kron, random_phase};
use ldoi::par::Execution;
use ldoi::schmidt::catalog::catalog;
use ldoi::schmidt::{make_rank, schmidt_rank, schmidt_rank_dense};
use ldoi::special::{
    check_special, fourier_matrix, make_dual, perfect_witness, Certificate, DualFamily,
};
use ldoi::triples::{symmetry, triple_compose, triple_product, validate};
use ldoi::unitary::{check_unitary, dense_unitarity_defect, random_unitary};
use ldoi::{CMatrix, Field, InvarianceClass, MatrixTriple, Symmetry, C64};
use rand::Rng;

/// Outcome of one criterion: a pass flag and a summary of measured values.
type Outcome = (bool, String);

fn hadamardness_minima() -> Outcome {
    let expected = [(3, 33, 6), (5, 145, 120), (6, 264, 28800)];
    let mut ok = true;
    let mut parts = Vec::new();
    for (d, min, count) in expected {
        let r = exhaustive_min(d).unwrap();
        ok &= r.min_value == min && r.argmin_count == count;
        parts.push(format!(
            "d={d}: min {} (#{}) in {:.2}s",
            r.min_value,
            r.argmin_count,
            r.elapsed.as_secs_f64()
        ));
        if d == 3 {
            let printed =
                SignMatrix::from_signs(&[vec![1, 1, 1], vec![1, 1, -1], vec![1, -1, 1]]).unwrap();
            let same = r.first_argmin == printed;
            ok &= same;
            parts.push(format!("first argmin matches printed: {same}"));
        }
    }
    (ok, parts.join("; "))
}

fn max_entangling_power() -> Outcome {
    let mut ok = true;
    let mut worst = 0.0_f64;
    let mut min_drop = f64::INFINITY;
    for d in 2..=8usize {
        let f = fourier_matrix(d);
        let t = make_dual(&DualFamily::LduiPhases { c: f.clone() }).unwrap();
        let e_p = profile_closed_form(&t).unwrap().e_power;
        let target = d as f64 / (d as f64 + 1.0);
        worst = worst.max((e_p - target).abs());
        let shortcut = max_ep_dual_ldui(&f).unwrap();
        ok &= shortcut.is_max && (shortcut.e_power - target).abs() <= 1e-10;

        let mut perturbed = f.clone();
        perturbed[(0, 1)] *= C64::from_polar(1.0, 0.1);
        let tp = make_dual(&DualFamily::LduiPhases {
            c: perturbed.clone(),
        })
        .unwrap();
        ok &= check_special(&tp).is_dual;
        let drop = e_p - profile_closed_form(&tp).unwrap().e_power;
        ok &= !max_ep_dual_ldui(&perturbed).unwrap().is_max;
        min_drop = min_drop.min(drop);
    }
    ok &= worst <= 1e-10 && min_drop > 0.0;
    (
        ok,
        format!("max |e_p − d/(d+1)| = {worst:.2e}; smallest decrease after perturbation = {min_drop:.3e}"),
    )
}

fn schmidt_coverage() -> Outcome {
    let start = Instant::now();
    let mut ok = true;
    let mut failures = Vec::new();
    for d in 3..=5usize {
        for target in 1..=d * d {
            let t = make_rank(d, target, 2024).unwrap();
            let real = t.is_real(0.0);
            let orth = check_unitary(&t, Field::Real).is_unitary;
            let (closed, dense) = (schmidt_rank(&t), schmidt_rank_dense(&t));
            if !(real && orth && closed == target && dense == target) {
                ok = false;
                failures.push(format!("d={d} Ω={target}: closed {closed} dense {dense}"));
            }
        }
    }
    let entries = catalog();
    let count = |d| entries.iter().filter(|e| e.dim == d).count();
    for e in &entries {
        let (closed, dense) = (schmidt_rank(&e.triple), schmidt_rank_dense(&e.triple));
        if closed != e.rank || dense != e.rank || !check_unitary(&e.triple, Field::Real).is_unitary
        {
            ok = false;
            failures.push(format!("{}: closed {closed} dense {dense}", e.name));
        }
    }
    ok &= count(4) == 8 && count(3) >= 2 && count(5) == 3;
    let secs = start.elapsed().as_secs_f64();
    ok &= secs < 30.0;
    (
        ok,
        format!(
            "all Ω in 1..=d² for d=3,4,5; catalogue d3×{} d4×{} d5×{}; {secs:.2}s{}",
            count(3),
            count(4),
            count(5),
            if failures.is_empty() {
                String::new()
            } else {
                format!("; failures: {failures:?}")
            }
        ),
    )
}

fn perfect_nonexistence() -> Outcome {
    let mut r = rng(4);
    let mut counterexamples = 0;
    for n in 0..10_000 {
        let d = 2 + n % 5;
        let t = random_unitary(d, InvarianceClass::Ldoi, Field::Complex, r.random()).unwrap();
        if !perfect_witness(&t).is_contradiction() {
            counterexamples += 1;
        }
    }
    let mut analytic_ok = true;
    for d in 2..=4 {
        let m = CMatrix::from_fn(d, d, |i, j| {
            if i == j {
                c(1.0, 0.0)
            } else {
                c(FRAC_1_SQRT_2, 0.0)
            }
        });
        let t = MatrixTriple::new(m.clone(), m.clone(), m).unwrap();
        analytic_ok &= match perfect_witness(&t) {
            Certificate::PhaseContradiction { omega, lambda, .. } => omega == lambda,
            _ => false,
        };
    }
    (
        counterexamples == 0 && analytic_ok,
        format!("{counterexamples} counterexamples in 10^4 samples (d=2..6); all-1/√2 case certified by ω = λ = −λ: {analytic_ok}"),
    )
}

fn homomorphism() -> Outcome {
    let mut r = rng(5);
    let (mut worst_prod, mut worst_comp) = (0.0_f64, 0.0_f64);
    let mut ok = true;
    for _ in 0..500 {
        let d = r.random_range(1..=6usize);
        let (t1, t2) = (random_triple(d, &mut r), random_triple(d, &mut r));
        let dense = embed(&t1).mul(&embed(&t2)).unwrap();
        let err = (embed(&triple_product(&t1, &t2).unwrap()).matrix() - dense.matrix()).norm();
        ok &= err <= 1e-9 * (d * d) as f64;
        worst_prod = worst_prod.max(err);
        let oracle = triple_of_doc_map(d, |z| doc_map(&t1, &doc_map(&t2, z)));
        let err = triple_compose(&t1, &t2).unwrap().max_abs_diff(&oracle);
        ok &= err <= 1e-12;
        worst_comp = worst_comp.max(err);
    }
    (
        ok,
        format!("500 pairs: max ‖embed(t1·t2) − X1X2‖ = {worst_prod:.2e}, max |t1∘t2 − DOC oracle| = {worst_comp:.2e}"),
    )
}

fn unitarity() -> Outcome {
    let mut ok = true;
    let mut worst = 0.0_f64;
    let mut r = rng(6);
    for class in InvarianceClass::ALL {
        for field in [Field::Complex, Field::Real] {
            for _ in 0..200 {
                let d = r.random_range(1..=6usize);
                let t = random_unitary(d, class, field, r.random()).unwrap();
                let defect = dense_unitarity_defect(&t);
                worst = worst.max(defect);
                ok &= validate(&t, class).is_ok()
                    && check_unitary(&t, field).is_unitary
                    && defect <= 1e-10;
            }
        }
    }
    let mut inconsistent = 0;
    for _ in 0..200 {
        let d = r.random_range(1..=6usize);
        let t = random_triple(d, &mut r);
        let closed = check_unitary(&t, Field::Complex).is_unitary;
        let dense = dense_unitarity_defect(&t) <= ldoi::EPS_U;
        if closed || dense {
            inconsistent += 1;
        }
    }
    ok &= inconsistent == 0;
    (
        ok,
        format!("1200 block-parametrized unitaries, max dense defect {worst:.2e}; {inconsistent} of 200 generic triples accepted by either path"),
    )
}

fn entanglement() -> Outcome {
    let mut r = rng(7);
    let mut worst = 0.0_f64;
    for _ in 0..200 {
        let d = r.random_range(2..=6usize);
        let t = random_unitary_triple(d, &mut r);
        let (p, q) = (
            profile_closed_form(&t).unwrap(),
            profile_oracle(&t).unwrap(),
        );
        for (x, y) in [
            (p.e_op, q.e_op),
            (p.e_op_swapped, q.e_op_swapped),
            (p.e_power, q.e_power),
            (p.typicality, q.typicality),
        ] {
            worst = worst.max((x - y).abs());
        }
    }
    let mut swap_dev = 0.0_f64;
    for d in 2..=8 {
        let p = profile_closed_form(&MatrixTriple::swap(d)).unwrap();
        swap_dev = swap_dev
            .max((p.e_op - swap_entanglement(d)).abs())
            .max(p.e_power.abs())
            .max((p.typicality - 1.0).abs());
    }
    let mut mc = Vec::new();
    let mut mc_ok = true;
    for d in [2usize, 3] {
        let t = random_unitary_triple(d, &mut r);
        let exact = profile_closed_form(&t).unwrap().e_power;
        let (estimate, se) = {
            let m =
                monte_carlo_e_power(&t, 1_000_000, 100 + d as u64, Execution::default()).unwrap();
            (m.e_power, m.standard_error)
        };
        let rel = (estimate - exact).abs() / exact;
        mc_ok &= rel <= 5e-3;
        mc.push(format!("d={d}: {estimate:.5} ± {se:.1e} vs {exact:.5}"));
    }
    (
        worst <= 1e-9 && swap_dev <= 1e-12 && mc_ok,
        format!(
            "closed vs oracle max dev {worst:.2e} (200 unitaries); swap dev {swap_dev:.1e}; Monte Carlo 10^6 samples {}",
            mc.join(", ")
        ),
    )
}

fn sorted_by_angle(mut v: Vec<C64>) -> Vec<C64> {
    v.sort_by(|a, b| {
        a.arg()
            .rem_euclid(2.0 * PI)
            .total_cmp(&b.arg().rem_euclid(2.0 * PI))
    });
    v
}

fn discrimination() -> Outcome {
    let mut r = rng(8);
    let mut spec_dev = 0.0_f64;
    for _ in 0..100 {
        let d = r.random_range(2..=6usize);
        let t = random_unitary_triple(d, &mut r);
        let blocks = sorted_by_angle(spectrum(&t));
        let dense = sorted_by_angle(eigenvalues(embed(&t).matrix()));
        let dev = blocks
            .iter()
            .zip(&dense)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        spec_dev = spec_dev.max(dev);
    }
    let mut bound_violations = 0;
    for _ in 0..100 {
        let d = r.random_range(2..=6usize);
        let (t1, t2) = (
            random_unitary_triple(d, &mut r),
            random_unitary_triple(d, &mut r),
        );
        let k = k_copies(&t1, &t2).unwrap().copies();
        let b = k_bound(&t1, &t2).unwrap().copies();
        let within = match (k, b) {
            (Some(k), Some(b)) => k <= b,
            (_, None) => true,
            (None, Some(_)) => false,
        };
        if !within {
            bound_violations += 1;
        }
    }
    let mut law_dev = 0.0_f64;
    for theta in [0.25, 0.7, 1.1, 1.5] {
        let t2 = random_unitary_triple(2, &mut r);
        let w = unitary_with_phase_range(2, theta, &mut r);
        let t1 = triple_product(&t2, &w).unwrap();
        let rel = triple_product(&symmetry(&t2, Symmetry::Adjoint), &t1).unwrap();
        law_dev = law_dev.max((arc(&rel).unwrap().theta - theta).abs());
        let x = embed(&rel).into_matrix();
        let mut power = x.clone();
        for k in 1..=3usize {
            if k > 1 {
                power = kron(&power, &x);
            }
            law_dev = law_dev.max((arc_dense(&power).unwrap().theta - k as f64 * theta).abs());
        }
    }
    let mut cldui_d2 = true;
    for _ in 0..50 {
        let z = c(0.0, 0.0);
        let a = CMatrix::from_row_slice(2, 2, &[z, random_phase(&mut r), random_phase(&mut r), z]);
        let b = CMatrix::from_row_slice(2, 2, &[z, random_phase(&mut r), random_phase(&mut r), z]);
        let t = MatrixTriple::new(a, b, CMatrix::zeros(2, 2)).unwrap();
        let rep = check_special(&t);
        cldui_d2 &= validate(&t, InvarianceClass::Cldui).is_ok() && rep.is_dual && rep.paths_agree;
    }
    let cldui_d3_dual = (0..200)
        .filter(|_| {
            let t = random_unitary(3, InvarianceClass::Cldui, Field::Complex, r.random()).unwrap();
            check_special(&t).is_dual
        })
        .count();
    (
        spec_dev <= 1e-9 && bound_violations == 0 && law_dev <= 1e-9 && cldui_d2 && cldui_d3_dual == 0,
        format!(
            "spectrum dev {spec_dev:.2e}; {bound_violations} k_copies > k_bound; tensor-power law dev {law_dev:.2e} (d=2, k≤3); d=2 CLDUI family dual: {cldui_d2}; d=3 CLDUI dual: {cldui_d3_dual}/200"
        ),
    )
}

fn subspace_dimensions() -> Outcome {
    let mut ok = true;
    let mut ranks = Vec::new();
    for d in 2..=6usize {
        for class in InvarianceClass::ALL {
            let rows: Vec<Vec<i64>> = unit_basis(d, class)
                .iter()
                .map(|t| embed(t).into_matrix().iter().map(|z| z.re as i64).collect())
                .collect();
            let rank = exact_rank(&rows).unwrap();
            let expected = match class {
                InvarianceClass::Ldoi => 3 * d * d - 2 * d,
                _ => 2 * d * d - d,
            };
            ok &= rank == expected && rank == invariant_coordinate_count(d, class);
            if class != InvarianceClass::Cldui {
                ranks.push(format!("d={d} {class:?}={rank}"));
            }
        }
    }
    (ok, ranks.join(", "))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("hadamardness minima", hadamardness_minima),
        ("max entangling power", max_entangling_power),
        ("Schmidt-rank coverage", schmidt_coverage),
        ("perfect nonexistence", perfect_nonexistence),
        ("algebra homomorphism", homomorphism),
        ("unitarity characterization", unitarity),
        ("entanglement dual path", entanglement),
        ("discrimination", discrimination),
        ("subspace dimensions", subspace_dimensions),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (pass, detail) = catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|e| (false, format!("panicked: {:?}", e.downcast_ref::<String>())));
        let verdict = if pass { "PASS" } else { "FAIL" };
        println!(
            "{verdict} [{}] {name} ({:.2}s): {detail}",
            n + 1,
            start.elapsed().as_secs_f64()
        );
        failed += usize::from(!pass);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
