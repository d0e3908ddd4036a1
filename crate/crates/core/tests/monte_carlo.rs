//! Haar Monte-Carlo estimate of the entangling power against the closed form.

mod common;

use common::rng;
use ldoi::entangle::{monte_carlo_e_power, profile_closed_form};
use ldoi::par::Execution;
use ldoi::special::{fourier_matrix, make_dual, DualFamily};
use ldoi::MatrixTriple;

fn assert_close(t: &MatrixTriple, samples: usize, seed: u64) {
    let exact = profile_closed_form(t).unwrap().e_power;
    let m = monte_carlo_e_power(t, samples, seed, Execution::default()).unwrap();
    let (estimate, se) = (m.e_power, m.standard_error);
    assert!(
        (estimate - exact).abs() <= 5.0 * se + 1e-12,
        "estimate {estimate} ± {se}, exact {exact}"
    );
}

#[test]
fn random_unitaries() {
    let mut r = rng(21);
    for d in [2, 3] {
        let t = common::random_unitary_triple(d, &mut r);
        assert_close(&t, 64_000, d as u64);
    }
}

#[test]
fn swap_and_fourier_dual() {
    let swap = MatrixTriple::swap(3);
    let m = monte_carlo_e_power(&swap, 6_400, 1, Execution::default()).unwrap();
    assert!(m.e_power.abs() < 1e-12);
    let t = make_dual(&DualFamily::LduiPhases {
        c: fourier_matrix(3),
    })
    .unwrap();
    assert_close(&t, 64_000, 2);
}
