use cvgauss::io::{state_from_json, state_to_json};
use cvgauss::linalg::{max_abs_diff, RMat, RVec};
use cvgauss::measures::{three_mode_reduced_e2, MeasureResult};
use cvgauss::state::{random_state_with, PurityClass};
use cvgauss::{
    apply, classical_correlations_j2, condition, discord_d2, displace, embed, entanglement_e2_two_mode,
    euler_decompose, gate_matrix, is_symplectic, mutual_information_renyi2, omega, renyi2_entropy, renyi_entropy,
    seed, symplectic_invariants, symplectic_spectrum, three_mode_pure, two_mode_standard_form, Bipartition,
    Direction, GateKind, GaussianState, SymplecticMatrix, TwoModeStandardForm,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn state(n: usize, mixed: bool, seed: u64) -> GaussianState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let class = if mixed { PurityClass::Mixed } else { PurityClass::Pure };
    random_state_with(n, class, true, &mut rng).unwrap().0
}

/// Product of single-mode squeezers and rotations on each mode.
fn local_symplectic(params: &[(f64, f64, f64)]) -> SymplecticMatrix {
    let n = params.len();
    let mut total = SymplecticMatrix::identity(n);
    for (k, &(phi, s, theta)) in params.iter().enumerate() {
        for kind in [GateKind::Phase { phi }, GateKind::Squeeze { s, theta }] {
            let g = embed(&gate_matrix(&kind).unwrap(), &[k], n).unwrap();
            total = g.compose(&total).unwrap();
        }
    }
    total
}

fn local_params() -> impl Strategy<Value = Vec<(f64, f64, f64)>> {
    prop::collection::vec((-3.0..3.0f64, -1.0..1.0f64, -3.0..3.0f64), 2)
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

fn value(r: cvgauss::Result<MeasureResult>) -> f64 {
    r.unwrap().value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_states_are_physical(n in 1usize..4, mixed: bool, seed: u64) {
        let st = state(n, mixed, seed);
        prop_assert!(st.is_physical(1e-9));
        prop_assert!(st.spectrum().unwrap().min() >= 1.0 - 1e-9);
    }

    #[test]
    fn symplectic_action_keeps_spectrum(seed: u64, params in local_params(), tau in 0.0..1.0f64) {
        let st = state(2, true, seed);
        let bs = gate_matrix(&GateKind::BeamSplitter { tau }).unwrap();
        let s = bs.compose(&local_symplectic(&params)).unwrap();
        prop_assert!(is_symplectic(s.matrix(), 1e-9).unwrap());
        let out = apply(&st, &s).unwrap();
        prop_assert!(out.is_physical(1e-9));
        let (a, b) = (st.spectrum().unwrap().nu, out.spectrum().unwrap().nu);
        for (x, y) in a.iter().zip(&b) {
            prop_assert!(close(*x, *y, 1e-8), "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn measures_are_local_invariants(seed: u64, params in local_params(), shift in prop::array::uniform4(-2.0..2.0f64)) {
        let st = state(2, true, seed);
        let moved = displace(&apply(&st, &local_symplectic(&params)).unwrap(), &RVec::from_row_slice(&shift)).unwrap();
        let cut = Bipartition::single(0, 2).unwrap();
        prop_assert!(close(mutual_information_renyi2(&st, &cut).unwrap(), mutual_information_renyi2(&moved, &cut).unwrap(), 1e-8));
        prop_assert!(close(renyi2_entropy(&st), renyi2_entropy(&moved), 1e-8));
        prop_assert!(close(value(entanglement_e2_two_mode(&st)), value(entanglement_e2_two_mode(&moved)), 1e-8));
        for dir in [Direction::AB, Direction::BA] {
            prop_assert!(close(value(classical_correlations_j2(&st, dir)), value(classical_correlations_j2(&moved, dir)), 1e-8));
            prop_assert!(close(value(discord_d2(&st, dir)), value(discord_d2(&moved, dir)), 1e-7));
        }
        let (i, j) = (symplectic_invariants(&st).unwrap(), symplectic_invariants(&moved).unwrap());
        prop_assert!(close(i.i1, j.i1, 1e-8) && close(i.i2, j.i2, 1e-8));
        prop_assert!(close(i.i3, j.i3, 1e-8) && close(i.i4, j.i4, 1e-8));
    }

    #[test]
    fn standard_form_reproduces_invariants(seed: u64) {
        let st = state(2, true, seed);
        let f = two_mode_standard_form(&st).unwrap();
        let (i, j) = (symplectic_invariants(&st).unwrap(), f.invariants());
        prop_assert!(close(i.i1, j.i1, 1e-9) && close(i.i2, j.i2, 1e-9));
        prop_assert!(close(i.i3, j.i3, 1e-8) && close(i.i4, j.i4, 1e-8));
        let g = TwoModeStandardForm::from_invariants(&i).unwrap();
        prop_assert!(close(f.a, g.a, 1e-9) && close(f.b, g.b, 1e-9));
        prop_assert!(close(f.c_plus, g.c_plus, 1e-5) && close(f.c_minus, g.c_minus, 1e-5));
    }

    #[test]
    fn renyi_decreases_with_alpha(seed: u64, n in 1usize..3) {
        let st = state(n, true, seed);
        let alphas = [0.5, 1.0, 2.0, 3.0, 50.0];
        let s: Vec<f64> = alphas.iter().map(|&a| renyi_entropy(&st, a).unwrap()).collect();
        for w in s.windows(2) {
            prop_assert!(w[0] >= w[1] - 1e-12, "{s:?}");
        }
        prop_assert!(close(s[2], renyi2_entropy(&st), 1e-10));
    }

    #[test]
    fn conditioning_never_increases_determinant(seed: u64, lambda in 1e-3..1e3f64, phi in 0.0..6.3f64) {
        let st = state(2, true, seed);
        let before = st.partial_trace(&[0]).unwrap().determinant();
        for s in [seed_pure(lambda, phi), cvgauss::MeasurementSeed::heterodyne()] {
            let after = condition(&st, &[1], &s).unwrap();
            prop_assert!(after.is_physical(1e-9));
            prop_assert!(after.determinant() <= before * (1.0 + 1e-10));
        }
    }

    #[test]
    fn euler_factors_are_orthogonal_symplectic(seed: u64, n in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = cvgauss::state::random_hamiltonian(n, &mut rng);
        let s = cvgauss::symplectic_from_hamiltonian(&h).unwrap().into_matrix();
        let e = euler_decompose(&s).unwrap();
        let id = RMat::identity(2 * n, 2 * n);
        for o in [&e.o, &e.o_prime] {
            prop_assert!(max_abs_diff(&(o * o.transpose()), &id) < 1e-8);
            prop_assert!(is_symplectic(o, 1e-8).unwrap());
        }
        prop_assert!(max_abs_diff(&e.reconstruct(), &s) < 1e-8 * (1.0 + s.norm()));
        let om = omega(n);
        prop_assert!(max_abs_diff(&(&e.z * &om * e.z.transpose()), &om) < 1e-8 * (1.0 + e.z.norm()));
    }

    #[test]
    fn spectrum_matches_determinant(seed: u64, n in 1usize..4) {
        let st = state(n, true, seed);
        let nu = symplectic_spectrum(st.sigma()).unwrap();
        let prod: f64 = nu.nu.iter().map(|v| v * v).product();
        prop_assert!(close(prod, st.determinant(), 1e-8));
    }

    #[test]
    fn e2_of_reduced_pair_matches_three_mode_formula(a1 in 1.0..5.0f64, a2 in 1.0..5.0f64, t in 0.0..1.0f64) {
        // a3 inside the allowed interval |a1 − a2| + 1 ≤ a3 ≤ a1 + a2 − 1
        let (lo, hi) = ((a1 - a2).abs() + 1.0, a1 + a2 - 1.0);
        prop_assume!(hi >= lo);
        let a3 = lo + t * (hi - lo);
        let st = three_mode_pure(a1, a2, a3).unwrap();
        let pair = st.partial_trace(&[0, 1]).unwrap();
        let exact = three_mode_reduced_e2(a1, a2, a3).unwrap();
        prop_assert!((value(entanglement_e2_two_mode(&pair)) - exact).abs() < 1e-7);
    }

    #[test]
    fn e2_bounded_by_mutual_information(seed: u64) {
        let st = state(2, true, seed);
        let e2 = value(entanglement_e2_two_mode(&st));
        let i2 = mutual_information_renyi2(&st, &Bipartition::single(0, 2).unwrap()).unwrap();
        prop_assert!(e2 >= 0.0 && e2 <= i2 + 1e-9);
    }

    #[test]
    fn e2_never_exceeds_a_pure_decomposition(seed: u64, noise in prop::collection::vec(-1.0..1.0f64, 8)) {
        // σ = γ + P with γ pure and P ⪰ 0 is a mixture of displaced copies of γ,
        // so the convex roof is at most the entanglement of γ.
        let pure = state(2, false, seed);
        let u = RMat::from_row_slice(4, 2, &noise);
        let sigma = pure.sigma() + &u * u.transpose();
        let mixed = GaussianState::from_covariance(sigma).unwrap();
        let bound = 0.5 * pure.partial_trace(&[0]).unwrap().determinant().ln();
        prop_assert!(value(entanglement_e2_two_mode(&mixed)) <= bound + 1e-9);
    }

    #[test]
    fn json_round_trip_is_exact(seed: u64, n in 1usize..4) {
        let st = state(n, true, seed);
        let back = state_from_json(&state_to_json(&st), false).unwrap();
        prop_assert_eq!(back, st);
    }
}

fn seed_pure(lambda: f64, phi: f64) -> cvgauss::MeasurementSeed {
    seed("pure", Some(lambda), Some(phi)).unwrap()
}
