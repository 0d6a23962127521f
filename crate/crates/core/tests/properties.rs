use planar_switch::collinearity::{discriminant_delta, q_coefficients, q_of, quadratic_q_formula};
use planar_switch::invariants::compute_invariants;
use planar_switch::linalg2::{expm_normal, expm_reference};
use planar_switch::sampling::{realize, NfParams, ALL_CASES};
use planar_switch::{classify, normal_form, CaseTag, Mat2, SystemPair, Tolerances, Vec2};
use proptest::prelude::*;

fn rot(th: f64) -> Mat2 {
    let (s, c) = th.sin_cos();
    Mat2::new(c, -s, s, c)
}

fn params() -> impl Strategy<Value = NfParams> {
    (0usize..5, -3.0f64..-0.2, 0.0f64..1.0, 0.05f64..5.0, any::<bool>()).prop_map(|(ci, eta, u, kmag, neg)| {
        let case = ALL_CASES[ci];
        let rho = match case {
            CaseTag::R1 | CaseTag::S1 | CaseTag::Sminus1 => -1.1 - 1.9 * u,
            _ => -0.2 - 2.8 * u,
        };
        let k = if !case.is_regular() {
            0.0
        } else if neg {
            -kmag
        } else {
            kmag
        };
        NfParams::new(case, eta, rho, k)
    })
}

fn similarity() -> impl Strategy<Value = Mat2> {
    (-3.2f64..3.2, -3.2f64..3.2, 1.0f64..100.0, 0.5f64..2.0, any::<bool>()).prop_map(|(t1, t2, c, s, flip)| {
        let f = if flip { -1.0 } else { 1.0 };
        rot(t1) * Mat2::diag(s, f * s * c) * rot(t2)
    })
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

proptest! {
    #[test]
    fn closed_form_exponentials_match_series(p in params(), t in 0.0f64..4.0) {
        let pair = p.pair();
        for m in [pair.a, pair.b] {
            let exact = expm_normal(&m, t).unwrap();
            let series = expm_reference(&m, t);
            prop_assert!(exact.max_abs_diff(&series) <= 1e-12 * series.max_abs().max(1.0));
        }
    }

    #[test]
    fn flows_compose(p in params(), s in 0.0f64..2.0, t in 0.0f64..2.0) {
        let m = p.pair().b;
        let lhs = expm_normal(&m, s + t).unwrap();
        let rhs = expm_normal(&m, s).unwrap() * expm_normal(&m, t).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-13 * lhs.max_abs().max(1.0));
    }

    #[test]
    fn liouville(p in params(), t in 0.0f64..3.0) {
        let pair = p.pair();
        for m in [pair.a, pair.b] {
            let d = expm_normal(&m, t).unwrap().det();
            prop_assert!(rel(d, (m.trace() * t).exp()) <= 1e-12);
        }
    }

    #[test]
    fn invariants_survive_similarity_and_scale(p in params(), t in similarity(), tau in 0.1f64..10.0) {
        let tol = Tolerances::default();
        let base = compute_invariants(&p.pair(), &tol);
        let moved = compute_invariants(&realize(&p.pair(), &t, tau), &tol);
        // without δ to normalize by, R0 invariants carry the time scale
        let (s1, s2) = if p.case == CaseTag::R0 { (tau, tau * tau) } else { (1.0, 1.0) };
        prop_assert!(rel(moved.eta, s1 * base.eta) <= 1e-7);
        prop_assert!(rel(moved.rho, s1 * base.rho) <= 1e-7);
        prop_assert!(rel(moved.k, s2 * base.k) <= 1e-7);
        prop_assert_eq!(moved.delta_sign, base.delta_sign);
    }

    #[test]
    fn verdict_ignores_separate_time_scales(p in params(), t in similarity(), ta in 0.1f64..10.0, tb in 0.1f64..10.0) {
        let pair = realize(&p.pair(), &t, 1.0);
        let v0 = classify(&pair);
        let v1 = classify(&pair.scaled(ta, tb));
        match (v0, v1) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a.kind, b.kind),
            (a, b) => prop_assert!(false, "classification failed: {:?} / {:?}", a, b),
        }
    }

    #[test]
    fn verdict_ignores_order(p in params(), t in similarity()) {
        let pair = realize(&p.pair(), &t, 1.0);
        let a = classify(&pair).unwrap();
        let b = classify(&pair.swapped()).unwrap();
        prop_assert_eq!(a.kind, b.kind);
    }

    #[test]
    fn q_formula_matches_determinant(p in params(), x1 in -2.0f64..2.0, x2 in -2.0f64..2.0) {
        let nf = normal_form(&p.pair(), &Tolerances::default()).unwrap();
        let x = Vec2::new(x1, x2);
        let direct = q_of(&nf.a_nf, &nf.b_nf, x);
        let formula = quadratic_q_formula(&nf.inv, nf.case, x);
        prop_assert!((direct - formula).abs() <= 1e-12 * (1.0 + direct.abs()));
    }

    #[test]
    fn q_discriminant_is_big_delta(p in params()) {
        let nf = normal_form(&p.pair(), &Tolerances::default()).unwrap();
        let (c11, c12, c22) = q_coefficients(&nf.inv, nf.case);
        let disc = c12 * c12 - 4.0 * c11 * c22;
        let expected = match nf.case {
            CaseTag::S1 | CaseTag::Sminus1 => 4.0 * nf.inv.eta * nf.inv.eta,
            _ => discriminant_delta(&nf.inv),
        };
        prop_assert!((disc - expected).abs() <= 1e-10 * expected.abs().max(1.0));
    }
}

#[test]
fn jordan_pairs_always_get_exactly_one_verdict() {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut classified = 0;
    while classified < 100_000 {
        let eta = rng.random_range(-3.0..-0.05);
        let p = Mat2::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
        if p.condition_number() > 100.0 {
            continue;
        }
        let a = Mat2::new(eta, 1.0, 0.0, eta).conjugate_by(&p).unwrap();
        let b = Mat2::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
        if !(b.trace() < 0.0 && b.det() > 1e-3) {
            continue;
        }
        let pair = SystemPair::new(a, b);
        match classify(&pair) {
            Ok(_) => classified += 1,
            Err(e) => panic!("no verdict for {pair:?}: {e}"),
        }
    }
}
