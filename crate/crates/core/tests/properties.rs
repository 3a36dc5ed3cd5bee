mod common;

use proptest::prelude::*;

use clusterbounds::bounds::{self, verify_report, ChebyParams, LanczosRun};
use clusterbounds::experiment::{from_csv, to_csv, ExperimentRow, Panel};
use clusterbounds::filters::{chebyshev_eval, chebyshev_recurrence, make_shifted_chebyshev};
use clusterbounds::linalg::{orthonormalize, singular_values};
use clusterbounds::majorization::{sort_desc, weakly_majorizes, Tolerance};
use clusterbounds::rng::SampleRng;
use clusterbounds::subspaces::{
    biorthogonal_basis, biorthogonality_residual, principal_angles, principal_angles_cosine, principal_tangents, squared_cosines,
    IndexSet, Subspace,
};
use clusterbounds::Complex64;

use common::{admissible_filter, hermitian_instance, random_start};

fn tuple() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0f64..10.0, 1..8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn weak_majorization_is_reflexive_and_monotone(a in tuple(), bump in 0.0f64..1.0) {
        let t = sort_desc(&a).unwrap();
        prop_assert!(weakly_majorizes(&t, &t, 1e-12).unwrap().holds);
        let bigger = sort_desc(&a.iter().map(|x| x + bump).collect::<Vec<_>>()).unwrap();
        prop_assert!(weakly_majorizes(&bigger, &t, 1e-12).unwrap().holds);
    }

    #[test]
    fn permutations_do_not_change_majorization(a in tuple(), seed in any::<u64>()) {
        let mut b = a.clone();
        let mut rng = SampleRng::for_stream(seed, 0);
        for j in (1..b.len()).rev() {
            b.swap(j, rng.int_in(0, j));
        }
        let (ta, tb) = (sort_desc(&a).unwrap(), sort_desc(&b).unwrap());
        prop_assert_eq!(ta.values(), tb.values());
        prop_assert!(weakly_majorizes(&ta, &tb, 0.0).unwrap().holds);
    }

    #[test]
    fn entrywise_domination_gives_pair_verdict(a in tuple(), shrink in 0.0f64..1.0) {
        let lower: Vec<f64> = a.iter().map(|x| x * shrink).collect();
        let v = clusterbounds::majorization::MajorizationVerdict::from_pairs(lower, a, Tolerance::new(0.0, 0.0));
        prop_assert!(v.holds);
    }

    #[test]
    fn chebyshev_forms_agree(l in 0usize..40, x in -1.0f64..1.0) {
        let direct = chebyshev_eval(l, x);
        prop_assert!(direct.abs() <= 1.0 + 1e-12);
        prop_assert!((direct - (l as f64 * x.acos()).cos()).abs() < 1e-9);
        prop_assert!((direct - chebyshev_recurrence(l, x)).abs() < 1e-9);
    }

    #[test]
    fn chebyshev_grows_outside_the_interval(l in 1usize..30, x in 1.0f64..5.0) {
        let v = chebyshev_eval(l, x);
        prop_assert!(v >= 1.0 - 1e-12);
        prop_assert!(((x + (x * x - 1.0).sqrt()).powi(l as i32) * 0.5 - v).abs() <= 1e-9 * v.max(1.0) + 0.5 * (x - (x * x - 1.0).sqrt()).powi(l as i32));
    }

    #[test]
    fn index_sets_round_trip(mut v in prop::collection::btree_set(1usize..40, 1..10)) {
        let idx: Vec<usize> = std::mem::take(&mut v).into_iter().collect();
        let set = IndexSet::new(idx.clone()).unwrap();
        let back: IndexSet = set.to_string().parse().unwrap();
        prop_assert_eq!(back.indices(), &idx[..]);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn angles_are_basis_independent(seed in any::<u64>(), n in 6usize..30, s in 1usize..3, extra in 0usize..3) {
        let mut rng = SampleRng::for_stream(seed, 1);
        let t = s + extra;
        let u = random_start::<Complex64>(&mut rng, n, s);
        let v = random_start::<Complex64>(&mut rng, n, t);
        let mixed = Subspace::new(v.basis().matmul(&rng.gaussian_matrix::<Complex64>(t, t))).unwrap();
        let a = principal_angles(&u, &v).unwrap();
        let b = principal_angles(&u, &mixed).unwrap();
        for (x, y) in a.angles().values().iter().zip(b.angles().values()) {
            prop_assert!((x - y).abs() < 1e-9);
            prop_assert!(*x >= 0.0 && *x < std::f64::consts::FRAC_PI_2);
        }
        let c = principal_angles_cosine(&u, &v).unwrap();
        for (x, y) in a.angles().values().iter().zip(c.angles().values()) {
            prop_assert!((x - y).abs() < 1e-7);
        }
    }

    #[test]
    fn equal_dimensions_give_symmetric_angles(seed in any::<u64>(), n in 6usize..30, s in 1usize..4) {
        let mut rng = SampleRng::for_stream(seed, 2);
        let u = random_start::<f64>(&mut rng, n, s);
        let v = random_start::<f64>(&mut rng, n, s);
        let a = principal_angles(&u, &v).unwrap();
        let b = principal_angles(&v, &u).unwrap();
        for (x, y) in a.angles().values().iter().zip(b.angles().values()) {
            prop_assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn enlarging_the_target_shrinks_angles(seed in any::<u64>(), n in 8usize..30, s in 1usize..3) {
        let mut rng = SampleRng::for_stream(seed, 3);
        let u = random_start::<f64>(&mut rng, n, s);
        let v = random_start::<f64>(&mut rng, n, s + 1);
        let w = v.sum(&random_start::<f64>(&mut rng, n, 2)).unwrap();
        let small = squared_cosines(&u, &v).unwrap();
        let large = squared_cosines(&u, &w).unwrap();
        for (a, b) in small.iter().zip(&large) {
            prop_assert!(*b >= *a - 1e-12);
        }
        let tv = principal_tangents(&u, &v).unwrap();
        let tw = principal_tangents(&u, &w).unwrap();
        for (a, b) in tw.values().iter().zip(tv.values()) {
            prop_assert!(*a <= *b * (1.0 + 1e-9) + 1e-12);
        }
    }

    #[test]
    fn biorthogonal_basis_is_dual(seed in any::<u64>(), n in 8usize..40, p in 1usize..5) {
        let mut rng = SampleRng::for_stream(seed, 4);
        let x = Subspace::from_orthonormal(rng.orthonormal::<Complex64>(n, p)).unwrap();
        let yt = random_start::<Complex64>(&mut rng, n, p);
        let y = biorthogonal_basis(&x, &yt).unwrap();
        prop_assert!(biorthogonality_residual(x.basis(), &y) < 1e-10);
        let same = principal_angles(&Subspace::new(y).unwrap(), &yt).unwrap();
        prop_assert!(same.largest() < 1e-7);
    }

    #[test]
    fn orthonormalization_preserves_the_span(seed in any::<u64>(), n in 4usize..30, k in 1usize..4) {
        let mut rng = SampleRng::for_stream(seed, 5);
        let m = rng.gaussian_matrix::<f64>(n, k.min(n));
        let q = orthonormalize(&m).unwrap();
        prop_assert!(q.orthonormality_residual() < 1e-12);
        let back = &q.matmul(&q.adjoint_mul(&m)) - &m;
        prop_assert!(back.frobenius_norm() <= 1e-10 * m.frobenius_norm());
        let sv = singular_values(&q).unwrap();
        prop_assert!(sv.iter().all(|s| (s - 1.0).abs() < 1e-12));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn filter_bounds_hold(seed in any::<u64>(), n in 10usize..40, p in 1usize..5, kind in 0usize..3) {
        let mut rng = SampleRng::for_stream(seed, 6);
        let spec = hermitian_instance::<Complex64>(&mut rng, n, p);
        let y = random_start::<Complex64>(&mut rng, n, p);
        let f = admissible_filter(&mut rng, &spec, kind);
        let i = rng.int_in(1, p);
        let reports = [
            bounds::bound_filtered_tangent(&spec, &f, &y).unwrap(),
            bounds::bound_filtered_ritz(&spec, &f, &y).unwrap(),
            bounds::bound_multiangle_major(&spec, &f, &IndexSet::leading(i).unwrap(), &y).unwrap(),
            bounds::bound_ritz_major(&spec, &f, i, &y).unwrap(),
        ];
        for r in &reports {
            prop_assert!(r.applicable);
            prop_assert!(verify_report(r, bounds::default_tolerance::<f64>()).holds, "{}", r.name);
        }
    }

    #[test]
    fn lanczos_beats_chebyshev_and_keeps_decreasing(seed in any::<u64>(), n in 12usize..40, p in 1usize..4) {
        let mut rng = SampleRng::for_stream(seed, 7);
        let spec = hermitian_instance::<f64>(&mut rng, n, p);
        let y = random_start::<f64>(&mut rng, n, p);
        let tau = IndexSet::leading(p).unwrap();
        let k_max = 5;
        let run = LanczosRun::new(&spec, &y, k_max, ChebyParams::Eigen).unwrap();
        let mut prev = f64::INFINITY;
        for k in 1..=k_max {
            let ours: f64 = run.krylov_tangents(k, &tau).unwrap().iter().sum();
            prop_assert!(ours <= prev * (1.0 + 1e-10) + 1e-14);
            prev = ours;
            let f = make_shifted_chebyshev(spec.lambda(p + 1), spec.lambda_min(), k).unwrap();
            let cheb = bounds::bound_multiangle_major(&spec, &f, &tau, &y).unwrap().measured_sum();
            prop_assert!(ours <= cheb * (1.0 + 1e-8) + 1e-14);
            let new = run.angles(k, &tau).unwrap().bound_sum();
            let lz = run.lz_angles(k, &tau).unwrap().bound_sum();
            prop_assert!(new <= lz * (1.0 + 1e-12));
        }
    }

    #[test]
    fn csv_round_trip_is_exact(vals in prop::collection::vec((any::<f64>(), any::<f64>(), 0.0f64..1e300, 0.0f64..1e300), 0..6)) {
        let rows: Vec<ExperimentRow> = vals
            .iter()
            .enumerate()
            .filter(|(_, v)| v.0.is_finite() && v.1.is_finite())
            .map(|(k, v)| ExperimentRow {
                k: k + 1,
                measure_mean: v.0,
                chebyshev_mean: v.1,
                bound_new_mean: v.2,
                bound_lz_mean: v.3,
                violations: k,
                bound_new_raw_mean: v.2,
                bound_lz_raw_mean: v.3,
            })
            .collect();
        for panel in [Panel::Angles, Panel::Ritz] {
            let back = from_csv(&to_csv(&rows, panel), panel).unwrap();
            prop_assert_eq!(&back, &rows);
        }
    }
}
