use proptest::prelude::*;

use hellmann::curves::{coupling_is_monotone, energy_curve};
use hellmann::envelope::{
    envelope_energy, envelope_energy_in_s, optimal_tangent, substitution_check,
    tangent_bound_energy, tangent_potential,
};
use hellmann::model::{
    convexity_class, evaluate_potential, g_second_derivative, hydrogenic_energy,
    potential_derivative, reduce_scale, transform_g,
};
use hellmann::oracle::{solve, solve_eigenvalue, RadialGrid, DEFAULT_TOL};
use hellmann::{BoundDirection, Convexity, HellmannParams, QuantumNumbers};

fn params() -> impl Strategy<Value = HellmannParams> {
    (0.2f64..5.0, -3.0f64..3.0, 0.2f64..3.0, 0.3f64..3.0)
        .prop_map(|(a, b, c, w)| HellmannParams::with_omega(a, b, c, w).unwrap())
}

fn states() -> impl Strategy<Value = QuantumNumbers> {
    (1u32..=4, 0u32..=3).prop_map(|(n, l)| QuantumNumbers::new(n, l).unwrap())
}

fn low_states() -> impl Strategy<Value = QuantumNumbers> {
    prop_oneof![Just((1, 0)), Just((2, 0)), Just((1, 1)), Just((3, 0))]
        .prop_map(|(n, l)| QuantumNumbers::new(n, l).unwrap())
}

fn log_radius() -> impl Strategy<Value = f64> {
    (-3.0f64..3.0).prop_map(|e| 10f64.powf(e))
}

proptest! {
    #[test]
    fn transform_composes_to_potential(p in params(), r in log_radius()) {
        let v = evaluate_potential(&p, r).unwrap();
        let g = transform_g(&p, -1.0 / r).unwrap();
        prop_assert!((g - v).abs() <= 1e-12 * v.abs().max(1.0 / r));
    }

    #[test]
    fn potential_lies_between_coulomb_envelopes(p in params(), r in log_radius()) {
        let v = evaluate_potential(&p, r).unwrap();
        let (a, b, c) = (p.a(), p.b(), p.c());
        let bare = -a / r;
        let unscreened = -(a - b) / r;
        let linear = unscreened - b * c;
        let slack = 1e-12 * (a + b.abs()) / r;
        if b >= 0.0 {
            prop_assert!(bare <= v + slack && v <= unscreened + slack && linear <= v + slack);
        } else {
            prop_assert!(unscreened <= v + slack && v <= bare + slack && v <= linear + slack);
        }
    }

    #[test]
    fn g_curvature_sign_follows_b(p in params(), r in log_radius()) {
        let g2 = g_second_derivative(&p, r).unwrap();
        match convexity_class(&p) {
            Convexity::Convex => prop_assert!(g2 >= 0.0),
            Convexity::Concave => prop_assert!(g2 <= 0.0),
            Convexity::Affine => prop_assert!(g2 == 0.0),
        }
    }

    #[test]
    fn derivative_matches_central_difference(p in params(), r in (-1.0f64..1.5).prop_map(|e| 10f64.powf(e))) {
        let h = 1e-5 * r;
        let fd = (evaluate_potential(&p, r + h).unwrap() - evaluate_potential(&p, r - h).unwrap()) / (2.0 * h);
        let d = potential_derivative(&p, r).unwrap();
        prop_assert!((fd - d).abs() <= 1e-6 * d.abs().max(1.0));
    }

    #[test]
    fn scale_reduction_round_trips(p in params()) {
        let back = reduce_scale(&p).reconstruct(p.c(), p.omega()).unwrap();
        for (x, y) in [(p.a(), back.a()), (p.b(), back.b()), (p.c(), back.c()), (p.omega(), back.omega())] {
            prop_assert!((x - y).abs() <= 1e-14 * x.abs().max(1.0));
        }
    }

    #[test]
    fn envelope_scales_like_the_hamiltonian(p in params(), q in states()) {
        let s = reduce_scale(&p);
        let full = envelope_energy(&p, &q).unwrap().energy;
        let reduced = envelope_energy(&s.reduced().unwrap(), &q).unwrap().energy;
        prop_assert!((full - s.multiplier * reduced).abs() <= 1e-9 * full.abs());
    }

    #[test]
    fn envelope_increases_with_b(p in params(), q in states(), db in 0.01f64..1.0) {
        let lo = envelope_energy(&p, &q).unwrap().energy;
        let hi = envelope_energy(&p.with_b(p.b() + db).unwrap(), &q).unwrap().energy;
        prop_assert!(hi >= lo - 1e-12 * lo.abs());
    }

    #[test]
    fn envelope_increases_with_principal_number(p in params(), q in states()) {
        let e = envelope_energy(&p, &q).unwrap().energy;
        let up = QuantumNumbers::new(q.n() + 1, q.ell()).unwrap();
        let side = QuantumNumbers::new(q.n(), q.ell() + 1).unwrap();
        let e_up = envelope_energy(&p, &up).unwrap().energy;
        let e_side = envelope_energy(&p, &side).unwrap().energy;
        prop_assert!(e_up > e);
        prop_assert!(e_side > e);
        prop_assert!((e_up - e_side).abs() <= 1e-12 * e_up.abs());
    }

    #[test]
    fn envelope_two_routes_agree(p in params(), q in states()) {
        let e = envelope_energy(&p, &q).unwrap().energy;
        let e_s = envelope_energy_in_s(&p, &q).unwrap();
        prop_assert!((e - e_s).abs() <= 1e-9 * e.abs());
    }

    #[test]
    fn tangent_lines_bound_the_potential(p in params(), t in log_radius(), r in log_radius()) {
        let tan = tangent_potential(&p, t).unwrap();
        let v = evaluate_potential(&p, r).unwrap();
        let w = tan.value_at(r);
        let slack = 1e-10 * (v.abs() + w.abs() + p.a() / r);
        match convexity_class(&p) {
            Convexity::Convex => prop_assert!(w <= v + slack),
            Convexity::Concave => prop_assert!(w >= v - slack),
            Convexity::Affine => prop_assert!((w - v).abs() <= slack),
        }
    }

    #[test]
    fn optimal_tangent_beats_other_contacts(p in params(), q in states(), t in (-1.0f64..1.0).prop_map(|e| 10f64.powf(e))) {
        let best = optimal_tangent(&p, &q).unwrap().energy;
        if let Ok(other) = tangent_bound_energy(&p, &q, t) {
            let slack = 1e-10 * best.abs();
            match convexity_class(&p).direction() {
                BoundDirection::Lower => prop_assert!(other <= best + slack),
                BoundDirection::Upper => prop_assert!(other >= best - slack),
                BoundDirection::Exact => prop_assert!((other - best).abs() <= slack),
            }
        }
    }

    #[test]
    fn substitution_is_an_identity(p in params(), q in states(), r in log_radius()) {
        let c = substitution_check(&p, &q, r).unwrap();
        let scale = c.objective_in_r.abs().max(p.omega() * c.s);
        prop_assert!((c.objective_in_s - c.objective_in_r).abs() <= 1e-12 * scale);
    }

    #[test]
    fn coupling_grows_along_the_curve(b in 0.05f64..1.0, c in 0.3f64..2.0) {
        let p = HellmannParams::new(2.0, b, c).unwrap();
        let pts = energy_curve(&p, &QuantumNumbers::ground(), 0.2, 5.0, 40).unwrap();
        prop_assert!(coupling_is_monotone(&pts));
    }

    #[test]
    fn pure_coulomb_curve_is_flat(a in 0.2f64..5.0, w in 0.3f64..3.0, q in states()) {
        let p = HellmannParams::with_omega(a, 0.0, 1.0, w).unwrap();
        let flat = hydrogenic_energy(a, w, f64::from(q.principal()));
        for pt in energy_curve(&p, &q, 0.2, 5.0, 20).unwrap() {
            prop_assert!((pt.scaled - flat).abs() <= 1e-12 * flat.abs());
        }
    }
}

#[test]
fn coulomb_envelope_is_exact() {
    for &a in &[0.5, 1.0, 2.0, 5.0] {
        let p = HellmannParams::new(a, 0.0, 1.0).unwrap();
        for big_n in 1..=6u32 {
            for l in 0..big_n {
                let q = QuantumNumbers::new(big_n - l, l).unwrap();
                let exact = hydrogenic_energy(a, 1.0, f64::from(big_n));
                let e = envelope_energy(&p, &q).unwrap();
                assert!(
                    (e.energy - exact).abs() <= 1e-10 * exact.abs(),
                    "A={a} N={big_n}"
                );
                assert_eq!(e.direction, BoundDirection::Exact);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn oracle_is_grid_independent(b in -1.5f64..1.5, q in low_states()) {
        let p = HellmannParams::new(2.0, b, 1.0).unwrap();
        let coarse = RadialGrid::for_problem(&p, &q, 15_001).unwrap();
        let fine = RadialGrid::for_problem(&p, &q, 30_001).unwrap();
        let e1 = solve_eigenvalue(&p, &q, coarse, DEFAULT_TOL).unwrap().energy;
        let e2 = solve_eigenvalue(&p, &q, fine, DEFAULT_TOL).unwrap().energy;
        prop_assert!((e1 - e2).abs() <= 10.0 * DEFAULT_TOL, "{e1} vs {e2}");
    }

    #[test]
    fn oracle_levels_are_ordered(b in -1.5f64..1.5) {
        let p = HellmannParams::new(2.0, b, 1.0).unwrap();
        let e = |n, l| solve(&p, &QuantumNumbers::new(n, l).unwrap(), DEFAULT_TOL).unwrap().energy;
        let (e10, e20, e11) = (e(1, 0), e(2, 0), e(1, 1));
        prop_assert!(e10 < e20 && e10 < e11);
        prop_assert!(e20 < 0.0 && e11 < 0.0);
    }

    #[test]
    fn envelope_brackets_oracle(b in -2.0f64..2.0, q in low_states()) {
        let p = HellmannParams::new(2.0, b, 1.0).unwrap();
        let bound = envelope_energy(&p, &q).unwrap();
        let e = solve(&p, &q, DEFAULT_TOL).unwrap().energy;
        prop_assert!(bound.direction.holds(bound.energy, e, 1e-6), "{} vs {e}", bound.energy);
    }
}

#[test]
fn oracle_scaling_grid() {
    let q = QuantumNumbers::ground();
    for &omega in &[0.5, 1.0, 2.0] {
        for &c in &[0.5, 1.0, 2.0] {
            let p = HellmannParams::with_omega(2.0, 0.7, c, omega).unwrap();
            let s = reduce_scale(&p);
            let full = solve(&p, &q, DEFAULT_TOL).unwrap().energy;
            let reduced = solve(&s.reduced().unwrap(), &q, DEFAULT_TOL)
                .unwrap()
                .energy;
            let threshold = 10.0 * DEFAULT_TOL * s.multiplier.max(1.0);
            assert!(
                (full - s.multiplier * reduced).abs() <= threshold,
                "omega={omega} C={c}: {full} vs {}",
                s.multiplier * reduced
            );
        }
    }
}
