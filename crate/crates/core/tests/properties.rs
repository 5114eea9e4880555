mod common;

use dimwit::classical::{
    canonical_form, classical_bound, enumerate_vertices, membership, raw_strategy_count, DEFAULT_CAP,
};
use dimwit::quantum::cmatrix::{CMatrix, C64};
use dimwit::quantum::stiefel::{basis_gradient, basis_objective};
use dimwit::quantum::{eigh, load_strategy, quantum_behavior, run_restart, strategy_to_string, SeesawConfig};
use dimwit::rational::Rational;
use dimwit::{validate_behavior, Behavior, Scenario};
use proptest::prelude::*;
use rand::Rng;

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 1000,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn eigh_reconstructs(seed in any::<u64>(), d in 1usize..=4) {
        let mut rng = common::rng(seed);
        let h = common::random_hermitian(d, &mut rng);
        let e = eigh(&h);
        let diag: Vec<C64> = e.values.iter().map(|&v| C64::new(v, 0.0)).collect();
        let back = &(&e.vectors * &CMatrix::diag(&diag)) * &e.vectors.adjoint();
        prop_assert!(back.max_abs_diff(&h) <= 1e-10);
        prop_assert!((&e.vectors.adjoint() * &e.vectors).max_abs_diff(&CMatrix::identity(d)) <= 1e-10);
        prop_assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn quantum_behaviors_validate(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let sc = common::random_scenario(&mut rng, 3);
        let entangled = !sc.is_line() && rng.random_bool(0.5);
        let s = common::random_quantum_strategy(&sc, &mut rng, entangled);
        let p = quantum_behavior(&s, &sc).unwrap();
        prop_assert!(validate_behavior(&sc, &p).unwrap().is_valid());
    }

    #[test]
    fn classical_behaviors_validate(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let sc = common::random_scenario(&mut rng, 3);
        let p = common::random_classical_strategy(&sc, &mut rng).behavior(&sc).unwrap();
        prop_assert!(validate_behavior(&sc, &p).unwrap().is_valid());
    }

    #[test]
    fn bound_search_matches_vertex_maximum(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let sc = common::random_scenario(&mut rng, 1);
        let dims = [rng.random_range(1..=3), rng.random_range(1..=3)];
        prop_assume!(raw_strategy_count(&sc, dims) <= 20_000);
        let w = common::random_witness(&sc, 5, &mut rng);
        let (bound, strategy) = classical_bound(&w, &sc, dims).unwrap();
        let vs = enumerate_vertices(&sc, dims, DEFAULT_CAP).unwrap();
        let max = vs.vertices().iter().map(|v| w.exact_value_on_vertex(v)).max().unwrap();
        prop_assert_eq!(&bound, &max);
        let attained = w.exact_value_on_vertex(&strategy.vertex(&sc.with_dims(dims).unwrap()));
        prop_assert_eq!(&attained, &max);
    }

    #[test]
    fn bounds_grow_with_dimension(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let sc = common::random_scenario(&mut rng, 1);
        let w = common::random_witness(&sc, 4, &mut rng);
        let vals: Vec<Rational> = (1..=3).map(|d| classical_bound(&w, &sc, [d, d]).unwrap().0).collect();
        prop_assert!(vals.windows(2).all(|p| p[0] <= p[1]));
    }

    #[test]
    fn canonical_form_is_orbit_invariant(seed in any::<u64>(), which in 0usize..3) {
        let mut rng = common::rng(seed);
        let sc = match which {
            0 => Scenario::line(3, 2, 1, 2, 2, [2, 2]).unwrap(),
            1 => Scenario::two_prep(3, 3, 1, 2, [2, 2]).unwrap(),
            _ => Scenario::line(2, 2, 2, 1, 2, [2, 2]).unwrap(),
        };
        let w = common::random_witness(&sc, 3, &mut rng);
        let v = common::random_relabeling(&w, &mut rng);
        let (a, b) = (canonical_form(&w).unwrap(), canonical_form(&v).unwrap());
        prop_assert_eq!(a.coefficients(), b.coefficients());
    }

    #[test]
    fn seesaw_traces_never_decrease(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let sc = if rng.random_bool(0.5) {
            Scenario::line(2, 2, 1, 2, 2, [2, 2]).unwrap()
        } else {
            Scenario::two_prep(2, 2, 2, 2, [2, 2]).unwrap()
        };
        let w = common::random_witness(&sc, 3, &mut rng);
        let cfg = SeesawConfig {
            restarts: 1,
            max_iters: 6,
            seed,
            shared_entanglement: !sc.is_line() && rng.random_bool(0.3),
            ..SeesawConfig::default()
        };
        let r = run_restart(&w, &sc, [2, 2], &cfg, 0).unwrap();
        for pair in r.trace.windows(2) {
            prop_assert!(pair[1] >= pair[0] - 1e-12, "{:?}", r.trace);
        }
        let p = quantum_behavior(&r.strategy, &sc).unwrap();
        prop_assert!((w.value(&p) - r.value).abs() <= 1e-12);
    }

    #[test]
    fn basis_gradient_matches_differences(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let d = rng.random_range(2..=4);
        let k = rng.random_range(2..=3);
        let ops: Vec<_> = (0..k).map(|_| common::random_hermitian(d, &mut rng)).collect();
        let u = dimwit::quantum::states::haar_unitary(d, &mut rng);
        let assign: Vec<usize> = (0..d).map(|_| rng.random_range(0..k)).collect();
        let dir = common::gaussian(d, d, &mut rng);
        let g = basis_gradient(&u, &assign, &ops);
        let analytic = g.inner_re(&dir);
        let h = 1e-5;
        let (mut plus, mut minus) = (u.clone(), u.clone());
        plus.add_scaled(&dir, h);
        minus.add_scaled(&dir, -h);
        let fd = (basis_objective(&plus, &assign, &ops) - basis_objective(&minus, &assign, &ops)) / (2.0 * h);
        let scale = analytic.abs().max(g.norm_sq().sqrt() * dir.norm_sq().sqrt());
        prop_assert!((fd - analytic).abs() <= 1e-5 * scale);
    }

    #[test]
    fn strategy_text_round_trips(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let sc = common::random_scenario(&mut rng, 3);
        let entangled = !sc.is_line() && rng.random_bool(0.5);
        let s = common::random_quantum_strategy(&sc, &mut rng, entangled);
        let back = load_strategy(&strategy_to_string(&s)).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn mixtures_of_vertices_are_inside(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let sc = Scenario::line(2, 2, 1, 2, 2, [2, 2]).unwrap();
        let vs = enumerate_vertices(&sc, [2, 2], DEFAULT_CAP).unwrap();
        let k = rng.random_range(1..=4);
        let picks: Vec<usize> = (0..k).map(|_| rng.random_range(0..vs.len())).collect();
        let weights: Vec<f64> = (0..k).map(|_| rng.random_range(0.1..1.0)).collect();
        let total: f64 = weights.iter().sum();
        let mut p = vec![0.0; sc.dim()];
        for (&i, w) in picks.iter().zip(&weights) {
            for (a, &v) in p.iter_mut().zip(&vs.vertices()[i]) {
                *a += w / total * f64::from(v);
            }
        }
        let m = membership(&Behavior::new(sc, p).unwrap(), &vs).unwrap();
        prop_assert!(m.is_inside());
    }
}
