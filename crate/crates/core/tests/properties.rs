use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tripartite::catalog::{concurrence_w_closed, pi_ghz_closed, pi_w1_closed};
use tripartite::channel::{evolve_local_kraus, evolve_three_direct, evolve_three_kraus};
use tripartite::decoherence::{amplitude, amplitude_markovian, Amplitude, ReservoirParams};
use tripartite::linalg::{
    hermitian_eigenvalues, kron_all, partial_trace, partial_transpose, pauli, random_density,
    random_hermitian, random_pure, trace_norm, validate_density, DensityMatrix, Qubit,
};
use tripartite::measures::{
    measure_report, negativity, pair_concurrences, pi_tangle, residual_pure,
};
use tripartite::states::{
    make_ghz, make_mixture, make_w, tau_mixture, GhzFamily, GhzFamilySpec, MixtureSpec, WFamily,
    WFamilySpec,
};
use tripartite::Complex64;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn ratio() -> impl Strategy<Value = f64> {
    prop_oneof![0.001f64..1.99, 2.01f64..20.0, Just(2.0)]
}

fn w_squares() -> impl Strategy<Value = (f64, f64, f64)> {
    (0.0f64..1.0, 0.0f64..1.0, 0.0f64..1.0)
        .prop_filter("not all zero", |(x, y, z)| x + y + z > 1e-3)
        .prop_map(|(x, y, z)| {
            let s = x + y + z;
            (x / s, y / s, z / s)
        })
}

fn x_on(slots: [bool; 3]) -> tripartite::linalg::ComplexMatrix {
    kron_all(&slots.map(|on| {
        if on {
            pauli::sigma_x()
        } else {
            pauli::identity()
        }
    }))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn amplitude_bounded_and_starts_at_one(r in ratio(), t in 0.0f64..200.0) {
        let res = ReservoirParams::from_ratio(r).unwrap();
        prop_assert_eq!(amplitude(0.0, &res).unwrap().value(), 1.0);
        prop_assert!(amplitude(t, &res).unwrap().value().abs() <= 1.0);
    }

    #[test]
    fn markovian_amplitude_positive_and_nonincreasing(r in 2.01f64..50.0, t in 0.0f64..100.0, dt in 0.0f64..5.0) {
        let res = ReservoirParams::from_ratio(r).unwrap();
        let p = amplitude(t, &res).unwrap().value();
        prop_assert!(p > 0.0);
        prop_assert!(amplitude(t + dt, &res).unwrap().value() <= p);
    }

    #[test]
    fn boundary_is_limit_of_markovian(t in 0.0f64..30.0) {
        let at = amplitude(t, &ReservoirParams::from_ratio(2.0).unwrap()).unwrap().value();
        let near = amplitude_markovian(t, &ReservoirParams::from_ratio(2.0 + 1e-6).unwrap()).unwrap().value();
        prop_assert!((at - near).abs() <= 1e-4);
    }

    #[test]
    fn partial_transpose_keeps_trace_and_hermiticity(seed in any::<u64>(), q in 0usize..3) {
        let rho = random_density(&mut rng(seed), 3);
        let pt = partial_transpose(&rho, [Qubit::A, Qubit::B, Qubit::C][q]).unwrap();
        prop_assert_eq!(pt.trace(), rho.matrix().trace());
        prop_assert_eq!(pt.hermiticity_deviation(), 0.0);
        prop_assert!(trace_norm(&pt).unwrap() >= 1.0 - 1e-12);
    }

    #[test]
    fn eigenvalues_keep_trace_and_frobenius(seed in any::<u64>()) {
        let h = random_hermitian(&mut rng(seed), 8);
        let ev = hermitian_eigenvalues(&h).unwrap();
        let sum: f64 = ev.iter().sum();
        let sq: f64 = ev.iter().map(|x| x * x).sum();
        prop_assert!((sum - h.trace().re).abs() <= 1e-10);
        prop_assert!((sq - h.frobenius_norm().powi(2)).abs() <= 1e-10 * sq.max(1.0));
    }

    #[test]
    fn direct_map_matches_kraus_and_stays_physical(seed in any::<u64>(), p in -1.0f64..=1.0) {
        let rho = random_density(&mut rng(seed), 3);
        let direct = evolve_three_direct(&rho, Amplitude(p)).unwrap();
        let kraus = evolve_three_kraus(&rho, Amplitude(p)).unwrap();
        prop_assert!(direct.matrix().max_abs_diff(kraus.matrix()) <= 1e-13);
        prop_assert!(validate_density(direct.matrix()).is_valid());
    }

    #[test]
    fn tracing_out_commutes_with_damping(seed in any::<u64>(), p in -1.0f64..=1.0, keep in 0usize..3) {
        let rho = random_density(&mut rng(seed), 3);
        let pair = [[Qubit::A, Qubit::B], [Qubit::A, Qubit::C], [Qubit::B, Qubit::C]][keep];
        let evolved = evolve_three_direct(&rho, Amplitude(p)).unwrap();
        let lhs = partial_trace(&evolved, &pair).unwrap();
        let rhs = evolve_local_kraus(&partial_trace(&rho, &pair).unwrap(), Amplitude(p)).unwrap();
        prop_assert!(lhs.matrix().max_abs_diff(rhs.matrix()) <= 1e-12);
    }

    #[test]
    fn negativities_in_unit_interval(seed in any::<u64>(), q in 0usize..3) {
        let rho = random_density(&mut rng(seed), 3);
        let n = negativity(&rho, [Qubit::A, Qubit::B, Qubit::C][q]).unwrap();
        prop_assert!((0.0..=1.0 + 1e-12).contains(&n));
        let pure = DensityMatrix::from_pure(&random_pure(&mut rng(seed ^ 1), 8)).unwrap();
        let n = negativity(&pure, Qubit::A).unwrap();
        prop_assert!((0.0..=1.0 + 1e-12).contains(&n));
    }

    #[test]
    fn product_states_have_no_pi(seed in any::<u64>()) {
        let mut g = rng(seed);
        let factors: Vec<_> = (0..3).map(|_| random_density(&mut g, 1).into_matrix()).collect();
        let rho = DensityMatrix::new(kron_all(&factors)).unwrap();
        prop_assert!(pi_tangle(&rho).unwrap().pi.abs() <= 1e-10);
    }

    #[test]
    fn residual_ignores_global_phase(seed in any::<u64>(), phi in 0.0f64..std::f64::consts::TAU) {
        let v = random_pure(&mut rng(seed), 8);
        let rotated: Vec<Complex64> = v.iter().map(|z| z * Complex64::from_polar(1.0, phi)).collect();
        prop_assert!((residual_pure(&v).unwrap() - residual_pure(&rotated).unwrap()).abs() <= 1e-12);
    }

    #[test]
    fn ghz_types_agree_at_t0(a2 in 0.0f64..=1.0, delta in -3.2f64..3.2) {
        let reports: Vec<_> = GhzFamily::ALL
            .iter()
            .map(|&f| measure_report(&make_ghz(&GhzFamilySpec::from_a2(f, a2, delta).unwrap()).unwrap()).unwrap())
            .collect();
        for r in &reports[1..] {
            prop_assert!((r.pi - reports[0].pi).abs() <= 1e-12);
            for k in 0..3 {
                prop_assert!((r.n_one_vs_rest[k] - reports[0].n_one_vs_rest[k]).abs() <= 1e-12);
                prop_assert!((r.concurrences[k] - reports[0].concurrences[k]).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn ghz_lu_relations(a2 in 0.0f64..=1.0, delta in -3.2f64..3.2) {
        let one = make_ghz(&GhzFamilySpec::from_a2(GhzFamily::I, a2, delta).unwrap()).unwrap();
        let two = make_ghz(&GhzFamilySpec::from_a2(GhzFamily::II, a2, delta).unwrap()).unwrap();
        let three = make_ghz(&GhzFamilySpec::from_a2(GhzFamily::III, a2, delta).unwrap()).unwrap();
        prop_assert!(two.matrix().conjugate_by(&x_on([false, false, true])).max_abs_diff(one.matrix()) <= 1e-15);
        prop_assert!(three.matrix().conjugate_by(&x_on([false, true, true])).max_abs_diff(one.matrix()) <= 1e-15);
    }

    #[test]
    fn w_types_agree_at_t0((a2, b2, c2) in w_squares(), d1 in -3.2f64..3.2, d2 in -3.2f64..3.2) {
        let s1 = WFamilySpec::from_squares(WFamily::W1, a2, b2, c2, d1, d2).unwrap();
        let s2 = WFamilySpec::from_squares(WFamily::W2, a2, b2, c2, d1, d2).unwrap();
        let w1 = make_w(&s1).unwrap();
        let w2 = make_w(&s2).unwrap();
        prop_assert!(w1.matrix().conjugate_by(&x_on([true; 3])).max_abs_diff(w2.matrix()) <= 1e-15);
        let (r1, r2) = (measure_report(&w1).unwrap(), measure_report(&w2).unwrap());
        prop_assert!((r1.pi - r2.pi).abs() <= 1e-12);
        for k in 0..3 {
            prop_assert!((r1.concurrences[k] - r2.concurrences[k]).abs() <= 1e-12);
        }
    }

    #[test]
    fn constructors_emit_valid_states(a2 in 0.0f64..=1.0, (x, y, z) in w_squares(), p in 0.0f64..=1.0) {
        let ghz = make_ghz(&GhzFamilySpec::from_a2(GhzFamily::III, a2, 0.4).unwrap()).unwrap();
        let w = make_w(&WFamilySpec::from_squares(WFamily::W2, x, y, z, 0.3, -1.0).unwrap()).unwrap();
        let mix = make_mixture(&MixtureSpec { p }).unwrap();
        for rho in [ghz, w, mix] {
            let d = validate_density(rho.matrix());
            prop_assert!(d.is_valid());
            prop_assert!(d.min_eigenvalue >= -1e-15);
        }
    }

    #[test]
    fn w1_pair_concurrences_follow_closed_form((a2, b2, c2) in w_squares(), r in ratio(), t in 0.0f64..50.0) {
        let spec = WFamilySpec::from_squares(WFamily::W1, a2, b2, c2, 0.0, 0.0).unwrap();
        let p = amplitude(t, &ReservoirParams::from_ratio(r).unwrap()).unwrap();
        let rho = evolve_three_direct(&make_w(&spec).unwrap(), p).unwrap();
        let numeric = pair_concurrences(&rho).unwrap();
        let closed = concurrence_w_closed(WFamily::W1, spec.a, spec.b, spec.c, p).unwrap();
        let p2 = p.squared();
        let explicit = [2.0 * spec.b * spec.c * p2, 2.0 * spec.a * spec.c * p2, 2.0 * spec.a * spec.b * p2];
        for k in 0..3 {
            prop_assert!((numeric[k] - closed[k]).abs() <= 1e-10);
            prop_assert!((closed[k] - explicit[k]).abs() <= 1e-12);
        }
    }

    #[test]
    fn closed_pi_matches_engine(a2 in 0.0f64..=1.0, (x, y, z) in w_squares(), r in ratio(), t in 0.0f64..50.0) {
        let p = amplitude(t, &ReservoirParams::from_ratio(r).unwrap()).unwrap();
        for f in GhzFamily::ALL {
            let rho = evolve_three_direct(&make_ghz(&GhzFamilySpec::from_a2(f, a2, 0.0).unwrap()).unwrap(), p).unwrap();
            prop_assert!((pi_ghz_closed(f, a2, p).unwrap().pi - pi_tangle(&rho).unwrap().pi).abs() <= 1e-9);
        }
        let spec = WFamilySpec::from_squares(WFamily::W1, x, y, z, 0.0, 0.0).unwrap();
        let rho = evolve_three_direct(&make_w(&spec).unwrap(), p).unwrap();
        prop_assert!((pi_w1_closed(spec.a, spec.b, spec.c, p).unwrap().pi - pi_tangle(&rho).unwrap().pi).abs() <= 1e-9);
    }

    #[test]
    fn tau_mixture_nondecreasing_past_first_knee(p in 0.626f64..1.0, dp in 0.0f64..0.05) {
        let hi = (p + dp).min(1.0);
        prop_assert!(tau_mixture(hi).unwrap() + 1e-15 >= tau_mixture(p).unwrap());
    }
}
