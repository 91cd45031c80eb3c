use fpp_core::certificates::{
    coherence_phi_lower, mutual_coherence, solve_certificate, spectral_phi_lower,
    verify_certificate,
};
use fpp_core::dynamics::{apply, minimal_displacement, orbit, MapSpec, Scheme};
use fpp_core::pressure::{
    evaluate_combination, inner_signed_min, inner_unsigned_min, phi_k, phi_k_separated, psi_k,
    InnerMethod, PressureQuery, SearchMode,
};
use fpp_core::vectorspace::{
    gaussian_solve, operator_norm, pairwise_diameter, power_iteration, sym_eigen_2x2, Matrix,
};
use fpp_core::{NormSpec, PointSet, Vector};
use proptest::prelude::*;

fn norms() -> impl Strategy<Value = NormSpec> {
    prop_oneof![Just(NormSpec::L1), Just(NormSpec::L2), Just(NormSpec::Linf)]
}

fn all_norms() -> impl Strategy<Value = NormSpec> {
    prop_oneof![
        Just(NormSpec::L1),
        Just(NormSpec::L2),
        Just(NormSpec::Linf),
        Just(NormSpec::Lp(1.5)),
        Just(NormSpec::Lp(3.0)),
    ]
}

fn coords(d: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0..1.0_f64, d)
}

fn vector(d: usize) -> impl Strategy<Value = Vector> {
    coords(d).prop_map(|c| Vector::new(c).unwrap())
}

/// A small finite set with a base point, `m <= max_m`, `d <= max_d`.
fn finite_set(max_m: usize, max_d: usize) -> impl Strategy<Value = (PointSet, Vector)> {
    (1..=max_m, 1..=max_d, norms()).prop_flat_map(|(m, d, n)| {
        (prop::collection::vec(coords(d), m), vector(d))
            .prop_map(move |(rows, base)| (PointSet::from_rows(rows, n).unwrap(), base))
    })
}

fn has_spread(set: &PointSet, base: &Vector) -> bool {
    set.with_point(base.clone())
        .map(|s| pairwise_diameter(&s) > 1e-3)
        .unwrap_or(false)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn norm_axioms(n in all_norms(), (x, y) in (1..6usize).prop_flat_map(|d| (coords(d), coords(d))), c in -5.0..5.0_f64) {
        let (x, y) = (Vector::new(x).unwrap(), Vector::new(y).unwrap());
        let nx = n.eval(x.as_slice());
        prop_assert!(n.eval(x.add(&y).as_slice()) <= nx + n.eval(y.as_slice()) + 1e-12);
        prop_assert!((n.eval(x.scale(c).as_slice()) - c.abs() * nx).abs() <= 1e-12 * (1.0 + c.abs()));
    }

    #[test]
    fn eigen_2x2_trace_and_determinant(a in -3.0..3.0_f64, b in -3.0..3.0_f64, c in -3.0..3.0_f64) {
        let m = Matrix::from_rows(vec![vec![a, b], vec![b, c]]).unwrap();
        let (l1, l2) = sym_eigen_2x2(&m).unwrap();
        prop_assert!((a * c - b * b - l1 * l2).abs() <= 1e-12 * (1.0 + l1.abs() * l2.abs()).max(1.0) * 10.0);
        prop_assert!((a + c - l1 - l2).abs() <= 1e-12 * 10.0);
    }

    #[test]
    fn power_iteration_matches_closed_form(entries in coords(4), seed in any::<u64>()) {
        let b = Matrix::from_rows(vec![entries[..2].to_vec(), entries[2..].to_vec()]).unwrap();
        let psd = b.gram_of_columns();
        let (hi, lo) = sym_eigen_2x2(&psd).unwrap();
        prop_assume!(hi - lo > 1e-3 * hi.max(1e-12));
        let est = power_iteration(&psd, 1e-14, 100_000, seed).unwrap();
        prop_assert!((est.value - hi).abs() <= 1e-8 * (1.0 + hi), "{} vs {}", est.value, hi);
    }

    #[test]
    fn gaussian_solve_residual(d in 1..=16usize, seed_rows in prop::collection::vec(coords(16), 16), rhs in coords(16)) {
        // diagonal dominance keeps the condition number small
        let rows: Vec<Vec<f64>> = (0..d)
            .map(|i| (0..d).map(|j| seed_rows[i][j] + if i == j { 2.0 * d as f64 } else { 0.0 }).collect())
            .collect();
        let a = Matrix::from_rows(rows).unwrap();
        let b = Vector::new(rhs[..d].to_vec()).unwrap();
        let x = gaussian_solve(&a, &b).unwrap();
        let ax = a.mul_vec(x.as_slice()).unwrap();
        let bmax = b.as_slice().iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        let resid = ax.iter().zip(b.as_slice()).fold(0.0_f64, |m, (p, q)| m.max((p - q).abs()));
        prop_assert!(resid <= 1e-10 * (1.0 + bmax));
    }

    #[test]
    fn spectral_norm_squared_is_top_eigenvalue(entries in coords(4)) {
        let a = Matrix::from_rows(vec![entries[..2].to_vec(), entries[2..].to_vec()]).unwrap();
        let (hi, _) = sym_eigen_2x2(&a.gram_of_columns()).unwrap();
        let s = operator_norm(&a, NormSpec::L2).unwrap();
        prop_assert!((s * s - hi).abs() <= 1e-9);
    }

    #[test]
    fn diameter_translation_and_scaling((set, shift) in finite_set(6, 4), lambda in 0.1..10.0_f64) {
        let moved = PointSet::new(
            set.points().iter().map(|p| p.scale(lambda).add(&shift)).collect(),
            set.norm(),
        ).unwrap();
        let d = pairwise_diameter(&set);
        prop_assert!((pairwise_diameter(&moved) - lambda * d).abs() <= 1e-12 * (1.0 + lambda * d) * 10.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn phi_is_monotone_and_dominated_by_psi((set, base) in finite_set(4, 3)) {
        prop_assume!(has_spread(&set, &base));
        let q = PressureQuery::new(set.clone(), base);
        let mut prev = f64::INFINITY;
        for k in 1..=set.len() + 1 {
            let phi = phi_k(&q, k, SearchMode::Exhaustive).unwrap().value;
            let psi = psi_k(&q, k, SearchMode::Exhaustive).unwrap().value;
            prop_assert!(phi <= prev + 1e-9, "k = {k}: {phi} > {prev}");
            prop_assert!(psi >= phi - 1e-9, "k = {k}: psi {psi} < phi {phi}");
            prev = phi;
        }
        prop_assert_eq!(prev, 0.0);
    }

    #[test]
    fn separation_orders_values((set, base) in finite_set(5, 3), e1 in 0.05..1.0_f64, e2 in 0.05..1.0_f64, k in 1..4usize) {
        prop_assume!(has_spread(&set, &base));
        let (lo, hi) = if e1 <= e2 { (e1, e2) } else { (e2, e1) };
        let q = PressureQuery::new(set, base);
        let full = phi_k(&q, k, SearchMode::Exhaustive).unwrap().value;
        let loose = phi_k_separated(&q.clone().with_eta(lo), k).unwrap();
        let tight = phi_k_separated(&q.clone().with_eta(hi), k).unwrap();
        prop_assert!(loose.value <= full + 1e-9);
        prop_assert!(tight.value <= loose.value + 1e-9);
        // every tuple admissible at the tighter level is admissible at the looser one
        prop_assert!(!tight.admissible || loose.admissible);
    }

    #[test]
    fn phi_translation_scaling_invariance((set, base) in finite_set(4, 3), shift in vector(3), lambda in 0.1..10.0_f64, k in 1..4usize) {
        prop_assume!(has_spread(&set, &base));
        let d = set.dim();
        let shift = Vector::new(shift.as_slice()[..d].to_vec()).unwrap();
        let q = PressureQuery::new(set.clone(), base.clone());
        let moved_set = PointSet::new(
            set.points().iter().map(|p| base.add(&p.sub(&base).scale(lambda)).add(&shift)).collect(),
            set.norm(),
        ).unwrap();
        let moved = PressureQuery::new(moved_set, base.add(&shift));
        let a = phi_k(&q, k, SearchMode::Exhaustive).unwrap().value;
        let b = phi_k(&moved, k, SearchMode::Exhaustive).unwrap().value;
        prop_assert!((a - b).abs() <= 1e-9, "{a} vs {b}");
    }

    #[test]
    fn inner_solutions_are_self_consistent((set, _) in finite_set(4, 3)) {
        let n = set.norm();
        for sol in [
            inner_signed_min(set.points(), n, InnerMethod::ExactSignPatterns).unwrap(),
            inner_unsigned_min(set.points(), n).unwrap(),
        ] {
            let v = evaluate_combination(set.points(), &sol.coefficients, n).unwrap();
            prop_assert!((v - sol.value).abs() <= 1e-9);
        }
    }

    #[test]
    fn exact_signed_matches_grid_oracle(k in 1..=3usize, d in 1..=3usize, n in norms(), rows in prop::collection::vec(coords(3), 3)) {
        let vs: Vec<Vector> = rows[..k].iter().map(|r| Vector::new(r[..d].to_vec()).unwrap()).collect();
        let exact = inner_signed_min(&vs, n, InnerMethod::ExactSignPatterns).unwrap().value;
        let grid = inner_signed_min(&vs, n, InnerMethod::GridOracle { resolution: 200 }).unwrap().value;
        prop_assert!(exact <= grid + 1e-12);
        prop_assert!(grid - exact <= 2.0 / 200.0);
    }

    #[test]
    fn euclidean_duality((set, _) in finite_set(6, 6).prop_filter("l2", |(s, _)| s.norm() == NormSpec::L2)) {
        let cert = solve_certificate(set.points(), NormSpec::L2).unwrap();
        let primal = inner_unsigned_min(set.points(), NormSpec::L2).unwrap().value;
        prop_assert!((cert.gamma - primal).abs() <= 1e-8, "{} vs {primal}", cert.gamma);
    }

    #[test]
    fn solved_certificates_verify((set, _) in finite_set(6, 4)) {
        let cert = solve_certificate(set.points(), set.norm()).unwrap();
        let check = verify_certificate(&cert, set.points()).unwrap();
        prop_assert!(check.level_ok && check.dual_norm_ok);
    }

    #[test]
    fn coherence_rescaling_invariance(rows in prop::collection::vec(coords(3), 2..6), scales in prop::collection::vec(0.1..10.0_f64, 6)) {
        prop_assume!(rows.iter().all(|r| r.iter().map(|x| x * x).sum::<f64>() > 1e-6));
        let set = PointSet::from_rows(rows.clone(), NormSpec::L2).unwrap();
        let scaled = PointSet::from_rows(
            rows.iter().zip(&scales).map(|(r, s)| r.iter().map(|x| x * s).collect()).collect(),
            NormSpec::L2,
        ).unwrap();
        prop_assert!((mutual_coherence(&set).unwrap() - mutual_coherence(&scaled).unwrap()).abs() <= 1e-12);
    }

    #[test]
    fn spectral_bound_below_full_tuple(rows in prop::collection::vec(coords(4), 1..5)) {
        let set = PointSet::from_rows(rows, NormSpec::L2).unwrap();
        let q = PressureQuery::new(set.clone(), Vector::zeros(4));
        prop_assume!(q.resolved_delta().is_ok());
        let delta = q.resolved_delta().unwrap();
        let bound = spectral_phi_lower(&set, delta).unwrap();
        let normalized = q.normalized().unwrap();
        let inner = inner_signed_min(normalized.points(), NormSpec::L2, InnerMethod::ExactSignPatterns).unwrap().value;
        prop_assert!(bound <= inner + 1e-8, "{bound} > {inner}");
    }

    #[test]
    fn coherence_bound_below_phi_for_low_coherence_frames(m in 2..=5usize, noise in prop::collection::vec(coords(6), 5), amp in 0.0..0.3_f64) {
        // perturbed orthonormal frames in R^6
        let rows: Vec<Vec<f64>> = (0..m)
            .map(|i| {
                let mut r: Vec<f64> = noise[i].iter().map(|x| amp * x).collect();
                r[i] += 1.0;
                let len = r.iter().map(|x| x * x).sum::<f64>().sqrt();
                r.iter().map(|x| x / len).collect()
            })
            .collect();
        let set = PointSet::from_rows(rows, NormSpec::L2).unwrap();
        let mu = mutual_coherence(&set).unwrap();
        prop_assume!(mu < 1.0 / (m as f64 - 1.0));
        let bound = coherence_phi_lower(m, mu).unwrap().phi_lower;
        let q = PressureQuery::new(set, Vector::zeros(6));
        for k in 1..=m {
            let phi = phi_k(&q, k, SearchMode::Exhaustive).unwrap().value;
            prop_assert!(bound <= phi + 1e-8, "k = {k}: {bound} > {phi}");
        }
    }
}

fn nonexpansive_affine(n: NormSpec) -> impl Strategy<Value = MapSpec> {
    (1..=4usize).prop_flat_map(move |d| {
        (
            prop::collection::vec(coords(d), d),
            vector(d),
            0.05..1.0_f64,
        )
            .prop_map(move |(rows, b, target)| {
                let a = Matrix::from_rows(rows).unwrap();
                let norm = operator_norm(&a, n).unwrap();
                let a = if norm > 0.0 {
                    a.scale(target / norm)
                } else {
                    a
                };
                MapSpec::affine(a, b, n).unwrap()
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn flagged_maps_are_nonexpansive(m in norms().prop_flat_map(nonexpansive_affine), seed in coords(8)) {
        prop_assert!(m.is_nonexpansive().unwrap());
        let d = m.dim();
        let x = Vector::new(seed[..d].to_vec()).unwrap();
        let y = Vector::new(seed[4..4 + d].to_vec()).unwrap();
        let n = m.ambient_norm;
        let lhs = n.eval(apply(&m, &x).unwrap().sub(&apply(&m, &y).unwrap()).as_slice());
        prop_assert!(lhs <= n.eval(x.sub(&y).as_slice()) + 1e-10);
    }

    #[test]
    fn krasnoselskii_residuals_nonincreasing(m in norms().prop_flat_map(nonexpansive_affine), start in coords(4), steps in 0..60usize) {
        let x0 = Vector::new(start[..m.dim()].to_vec()).unwrap();
        let o = orbit(&m, &x0, steps, Scheme::Krasnoselskii).unwrap();
        prop_assert!(o.residuals.iter().all(|r| *r >= 0.0));
        prop_assert!(o.residuals.windows(2).all(|w| w[1] <= w[0] + 1e-10));
    }

    #[test]
    fn contraction_rate(m in nonexpansive_affine(NormSpec::L2), start in coords(4), steps in 1..40usize) {
        let x0 = Vector::new(start[..m.dim()].to_vec()).unwrap();
        let fpp_core::dynamics::MapKind::Affine { a, .. } = &m.kind else { unreachable!() };
        let q = (1.0 + operator_norm(a, NormSpec::L2).unwrap()) / 2.0;
        prop_assume!(q < 1.0);
        let o = orbit(&m, &x0, steps, Scheme::Krasnoselskii).unwrap();
        let bound = o.residuals[0] * q.powi(steps as i32);
        prop_assert!(*o.residuals.last().unwrap() <= 10.0 * bound + 1e-15);
    }

    #[test]
    fn translation_residuals_constant(b in vector(3), start in vector(3), n in norms(), steps in 0..30usize) {
        let m = MapSpec::translation(b.clone(), n);
        let o = orbit(&m, &start, steps, Scheme::Plain).unwrap();
        let nb = n.eval(b.as_slice());
        prop_assert!(o.residuals.iter().all(|r| *r == nb));
    }

    #[test]
    fn displacement_below_diameter(m in norms().prop_flat_map(nonexpansive_affine), start in coords(4), steps in 1..20usize) {
        // an orbit segment contains T x for every point but its last, which
        // is the self-map setting the bound needs
        let x0 = Vector::new(start[..m.dim()].to_vec()).unwrap();
        let o = orbit(&m, &x0, steps, Scheme::Plain).unwrap();
        let region = PointSet::new(o.iterates, m.ambient_norm).unwrap();
        let delta = minimal_displacement(&m, region.points()).unwrap();
        prop_assert!(delta <= pairwise_diameter(&region) + 1e-9);
    }
}
