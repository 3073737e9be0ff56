use cohomone::curvature::curvature_trace;
use cohomone::metric::{
    preset_round, preset_stiefel, random_admissible, smoothness_check, Ansatz, Curve, Functions, MetricProfile,
};
use cohomone::Error;
use std::f64::consts::{FRAC_PI_2, SQRT_2};

/// `h2 = cos(πt/2L)` approximated by a polynomial, `h1 ≡ 1`, `f1 = (√2/d)t`.
fn simple_profile(d: u32, h2_end: f64) -> MetricProfile {
    let l = 1.0;
    let c = FRAC_PI_2 / l;
    // cos(ct) to degree 8, then shifted so that h2(L) = h2_end.
    let mut h2: Vec<f64> = vec![1.0, 0.0, -c * c / 2.0, 0.0, c.powi(4) / 24.0, 0.0, -c.powi(6) / 720.0, 0.0, c.powi(8) / 40320.0];
    let at_l: f64 = h2.iter().enumerate().map(|(k, a)| a * l.powi(k as i32)).sum();
    h2[8] += (h2_end - at_l) / l.powi(8);
    let f = Functions {
        f1: Curve::poly(vec![0.0, SQRT_2 / f64::from(d)]),
        f2: Curve::constant(1.0),
        f12: Curve::constant(0.0),
        h1: Curve::constant(1.0),
        h2: Curve::poly(h2),
        h12: Curve::constant(0.0),
    };
    MetricProfile::new(4, d, l, f, true).unwrap()
}

#[test]
fn smoothness_target_and_residuals() {
    let r = smoothness_check(&simple_profile(3, 0.0), 1e-8);
    assert!((r.f1_slope_target - SQRT_2 / 3.0).abs() < 1e-15);
    assert!((r.f1_slope_target - 0.4714).abs() < 1e-4);
    assert!(r.passed, "{r:?}");

    let r = smoothness_check(&simple_profile(3, 0.1), 1e-8);
    assert!(!r.passed);
    let c = r.clause("h2(L)=0").unwrap();
    assert!((c.residual - 0.1).abs() < 1e-12);
    assert_eq!(r.failed().count(), 1);
}

#[test]
fn presets_pass_their_boundary_conditions() {
    for n in 4..=6 {
        let round = preset_round(n).unwrap();
        assert_eq!(round.d, 1);
        assert!(smoothness_check(&round, 1e-8).passed);
        let st = preset_stiefel(n).unwrap();
        assert_eq!(st.d, 2);
        let r = smoothness_check(&st, 1e-8);
        assert!(r.passed);
        assert!(r.clause("h2(L)=0").unwrap().residual < 1e-8);
        assert!((r.clause("f1'(0)=sqrt2/d").unwrap().actual - SQRT_2 / 2.0).abs() < 1e-8);
    }
}

#[test]
fn round_preset_functions_are_bounded() {
    let p = preset_round(5).unwrap();
    for i in 0..=500 {
        let j = p.jet(p.length * i as f64 / 500.0);
        for v in [j.f1.v, j.f2.v, j.f12.v, j.h1.v, j.h2.v, j.h12.v] {
            assert!(v.abs() <= 2.0);
        }
    }
}

#[test]
fn stiefel_catalog_is_nonnegative() {
    let p = preset_stiefel(4).unwrap();
    for row in curvature_trace(&p, 400).unwrap() {
        assert!(row.sectional >= -1e-9, "{row:?}");
    }
}

#[test]
fn normalize_examples() {
    let mut f = simple_profile(3, 0.0).functions;
    f.h1 = Curve::constant(2.0);
    let q = MetricProfile::new(4, 3, 1.0, f, false).unwrap();
    let nq = q.normalize().unwrap();
    assert!((nq.length - 0.5).abs() < 1e-15);
    assert!((nq.functions.h1.jet(0.0).v - 1.0).abs() < 1e-15);
    assert!((nq.functions.f1.jet(0.0).d1 - q.functions.f1.jet(0.0).d1).abs() < 1e-15);

    let s = simple_profile(3, 0.0);
    assert_eq!(s.normalize().unwrap(), s);
    let twice = nq.normalize().unwrap();
    assert_eq!(twice, nq);
}

#[test]
fn normalize_rejects_degenerate_h1() {
    let mut p = simple_profile(3, 0.0);
    p.functions.h1 = Curve::constant(0.0);
    assert!(matches!(p.normalize(), Err(Error::DegenerateMetric(_))));
}

#[test]
fn random_profiles() {
    let p = random_admissible(4, 3, 1, Ansatz::Reduced).unwrap();
    assert!(smoothness_check(&p, 1e-8).passed);
    assert_eq!(p, random_admissible(4, 3, 1, Ansatz::Reduced).unwrap());
    let q = random_admissible(5, 4, 7, Ansatz::Reduced).unwrap();
    assert_eq!(q.functions.f1.jet(0.0).d1, SQRT_2 / 4.0);
    let g = random_admissible(5, 4, 7, Ansatz::General).unwrap();
    assert!(smoothness_check(&g, 1e-8).passed);
    assert!(!g.reduced_model_holds(1e-6));
    assert!(matches!(random_admissible(4, 2, 0, Ansatz::Reduced), Err(Error::Input(_))));
}

#[test]
fn json_round_trip_is_bit_stable() {
    for p in [preset_round(4).unwrap(), random_admissible(6, 5, 3, Ansatz::General).unwrap()] {
        let text = p.to_json();
        let back = MetricProfile::from_json(&text).unwrap();
        assert_eq!(back, p);
        assert_eq!(back.to_json(), text);
    }
}

#[test]
fn malformed_json_reports_location() {
    let err = MetricProfile::from_json("{\n \"family\": \"brieskorn\",\n \"n\": 4,\n").unwrap_err();
    assert!(err.to_string().contains("line"), "{err}");
    let bad = preset_round(4).unwrap().to_json().replace("\"brieskorn\"", "\"lens\"");
    assert!(MetricProfile::from_json(&bad).is_err());
}

#[test]
fn positive_definite_on_fine_grid() {
    for seed in 0..5 {
        let p = random_admissible(4, 3, seed, Ansatz::General).unwrap();
        assert_eq!(p.positive_definite_violation(1000), None);
    }
    assert_eq!(preset_stiefel(5).unwrap().positive_definite_violation(1000), None);
}
