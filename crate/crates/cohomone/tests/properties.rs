use cohomone::curvature::{orbit_curvature_tensor, orbit_plane_curvature, plane_area2, BrieskornEngine};
use cohomone::liealg::{bracket, q_inner, AlgElement, QFormParams};
use cohomone::metric::{preset_round, preset_stiefel, random_admissible, Ansatz, MetricProfile};
use cohomone::scalar::{Rational, Scalar};
use proptest::prelude::*;

fn element<S: Scalar>(n: usize, so2: i64, mat: &[i64]) -> AlgElement<S> {
    let mut m = vec![S::from_i64(0); n * n];
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            let v = S::from_ratio(mat[k], 1 + (k as i64 % 3));
            m[i * n + j] = v.clone();
            m[j * n + i] = -v;
            k += 1;
        }
    }
    AlgElement::from_parts(S::from_ratio(so2, 2), m, n).unwrap()
}

fn triple() -> impl Strategy<Value = (usize, [(i64, Vec<i64>); 3])> {
    (3usize..=5).prop_flat_map(|n| {
        let e = || (-5i64..=5, prop::collection::vec(-6i64..=6, n * (n - 1) / 2));
        (Just(n), [e(), e(), e()])
    })
}

fn profile(n: usize, d: u32, seed: u64, general: bool) -> MetricProfile {
    let ansatz = if general { Ansatz::General } else { Ansatz::Reduced };
    random_admissible(n, d, seed, ansatz).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exact_bracket_identities((n, [a, b, c]) in triple(), d in 1u32..6) {
        let x: AlgElement<Rational> = element(n, a.0, &a.1);
        let y: AlgElement<Rational> = element(n, b.0, &b.1);
        let z: AlgElement<Rational> = element(n, c.0, &c.1);
        let br = |u: &AlgElement<Rational>, v: &AlgElement<Rational>| bracket(u, v).unwrap();
        prop_assert!((br(&x, &y) + br(&y, &x)).is_zero());
        let jac = br(&x, &br(&y, &z)) + br(&y, &br(&z, &x)) + br(&z, &br(&x, &y));
        prop_assert!(jac.is_zero());
        let q = QFormParams::new(d, n).unwrap();
        let lhs = q_inner(&br(&x, &y), &z, &q).unwrap();
        let rhs = q_inner(&y, &br(&x, &z), &q).unwrap();
        prop_assert_eq!(lhs, -rhs);
        prop_assert_eq!(q_inner(&x, &y, &q).unwrap(), q_inner(&y, &x, &q).unwrap());
    }

    #[test]
    fn float_jacobi((n, [a, b, c]) in triple()) {
        let x: AlgElement<f64> = element(n, a.0, &a.1);
        let y: AlgElement<f64> = element(n, b.0, &b.1);
        let z: AlgElement<f64> = element(n, c.0, &c.1);
        let br = |u: &AlgElement<f64>, v: &AlgElement<f64>| bracket(u, v).unwrap();
        let jac = br(&x, &br(&y, &z)) + br(&y, &br(&z, &x)) + br(&z, &br(&x, &y));
        prop_assert!(jac.max_abs() < 1e-10);
    }

    #[test]
    fn orbit_curvature_symmetries(
        n in 4usize..=5, d in 3u32..=5, seed in 0u64..1000, general: bool,
        s in 0.05f64..0.95, coords in prop::collection::vec(-1.0f64..1.0, 64),
    ) {
        let p = profile(n, d, seed, general);
        let engine = BrieskornEngine::for_profile(&p).unwrap();
        let m = engine.operator(&p.jet(s * p.length)).unwrap();
        let dim = engine.dim();
        let v: Vec<Vec<f64>> = (0..4).map(|k| coords[k * 16..k * 16 + dim].to_vec()).collect();
        let r = |a: usize, b: usize, c: usize, e: usize| orbit_curvature_tensor(&engine.space, &m, &v[a], &v[b], &v[c], &v[e]);
        let scale = 1.0 + r(0, 1, 1, 0).abs() + r(0, 1, 2, 3).abs();
        prop_assert!((r(0, 1, 2, 3) + r(1, 0, 2, 3)).abs() < 1e-10 * scale);
        prop_assert!((r(0, 1, 2, 3) + r(0, 1, 3, 2)).abs() < 1e-10 * scale);
        prop_assert!((r(0, 1, 2, 3) - r(2, 3, 0, 1)).abs() < 1e-10 * scale);
        prop_assert!((r(0, 1, 2, 3) + r(1, 2, 0, 3) + r(2, 0, 1, 3)).abs() < 1e-10 * scale);
        let plane = orbit_plane_curvature(&engine.space, &m, &v[0], &v[1]);
        prop_assert!((plane - r(0, 1, 1, 0)).abs() < 1e-10 * scale);
        // sectional curvature depends only on the plane
        let w: Vec<f64> = v[0].iter().zip(&v[1]).map(|(a, b)| 2.0 * a - 3.0 * b).collect();
        let k1 = plane / plane_area2(&m, &v[0], &v[1]);
        let k2 = orbit_plane_curvature(&engine.space, &m, &w, &v[1]) / plane_area2(&m, &w, &v[1]);
        prop_assert!((k1 - k2).abs() < 1e-8 * (1.0 + k1.abs()));
    }

    #[test]
    fn jets_match_finite_differences(n in 4usize..=6, d in 3u32..=5, seed in 0u64..1000, general: bool, s in 0.1f64..0.9) {
        let p = profile(n, d, seed, general);
        let t = s * p.length;
        let h = 1e-5 * p.length;
        let (lo, mid, hi) = (p.jet(t - h), p.jet(t), p.jet(t + h));
        let pairs = |j: &cohomone::metric::MetricJet| [j.f1, j.f2, j.f12, j.h1, j.h2, j.h12];
        for ((a, b), c) in pairs(&lo).iter().zip(pairs(&mid)).zip(pairs(&hi)) {
            let d1 = (c.v - a.v) / (2.0 * h);
            let d2 = (c.v - 2.0 * b.v + a.v) / (h * h);
            prop_assert!((d1 - b.d1).abs() < 1e-6 * (1.0 + b.d1.abs()), "{} vs {}", d1, b.d1);
            prop_assert!((d2 - b.d2).abs() < 1e-3 * (1.0 + b.d2.abs()), "{} vs {}", d2, b.d2);
        }
    }

    #[test]
    fn normalize_is_idempotent(n in 4usize..=6, d in 3u32..=5, seed in 0u64..1000, scale in 0.3f64..3.0) {
        let p = profile(n, d, seed, false);
        let mut q = p.clone();
        q.functions = q.functions.map(|c| c.rescaled(scale));
        q.length *= scale;
        let once = q.normalize().unwrap();
        prop_assert!(once.is_normalized(1e-12));
        prop_assert!((once.length - p.length).abs() < 1e-12 * p.length);
        let twice = once.normalize().unwrap();
        for i in 0..=10 {
            let t = once.length * i as f64 / 10.0;
            let (a, b) = (once.jet(t), twice.jet(t));
            for (x, y) in [(a.f1, b.f1), (a.f2, b.f2), (a.f12, b.f12), (a.h1, b.h1), (a.h2, b.h2), (a.h12, b.h12)] {
                prop_assert!((x.v - y.v).abs() < 1e-12 && (x.d1 - y.d1).abs() < 1e-11 && (x.d2 - y.d2).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn profile_json_round_trip(n in 4usize..=6, d in 3u32..=5, seed in 0u64..1000, general: bool) {
        let p = profile(n, d, seed, general);
        let text = p.to_json();
        let back = MetricProfile::from_json(&text).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(back.to_json(), text);
    }
}

#[test]
fn preset_json_round_trip() {
    for p in [preset_round(4).unwrap(), preset_stiefel(5).unwrap()] {
        assert_eq!(MetricProfile::from_json(&p.to_json()).unwrap(), p);
    }
}
