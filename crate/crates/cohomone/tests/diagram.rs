use cohomone::diagram::{
    brieskorn_diagram, check_theorem31_conditions, harmonic_dimension, harmonic_rep, theorem31_diagram, Family,
};
use cohomone::liealg::{bracket, q_weighted};
use cohomone::Error;

#[test]
fn brieskorn_complement_is_orthonormal_after_scaling() {
    let g = brieskorn_diagram(5, 3).unwrap();
    let fr = g.float_frame();
    for (i, a) in fr.complement.iter().enumerate() {
        for (j, b) in fr.complement.iter().enumerate() {
            let q = q_weighted(a, b, &fr.so2_weight);
            assert!((q - f64::from(u8::from(i == j))).abs() < 1e-14, "({i},{j}) {q}");
        }
        for h in &fr.h {
            assert!(q_weighted(a, h, &fr.so2_weight).abs() < 1e-14);
        }
    }
}

#[test]
fn brieskorn_json_is_rational() {
    let js = serde_json::to_value(brieskorn_diagram(4, 3).unwrap().to_json()).unwrap();
    assert_eq!(js["so2_weight"], "9/1");
    assert_eq!(js["complement_basis"].as_array().unwrap().len(), 6);
}

#[test]
fn harmonic_dimensions() {
    for (l, m, k) in [(3, 2, 5), (3, 3, 7), (4, 2, 9), (3, 1, 3)] {
        assert_eq!(harmonic_dimension(l, m), k);
        let rep = harmonic_rep(l, m).unwrap();
        assert_eq!(rep.k, k);
        assert!(rep.is_skew_for_norms());
        assert!(rep.satisfies_bracket_relations());
    }
}

#[test]
fn harmonic_rep_guards() {
    assert!(matches!(harmonic_rep(2, 2), Err(Error::Input(_))));
    assert!(matches!(harmonic_rep(12, 30), Err(Error::Resource(_))));
}

#[test]
fn conditions_for_the_examples() {
    let rep = harmonic_rep(3, 2).unwrap();
    let c = check_theorem31_conditions(&rep, 7);
    assert!(c.all_pass(), "{c:?}");
    assert_eq!(c.cond_a.fixed_dim, 1);
    assert_eq!(c.cond_c.multiplicity, 0);

    let c = check_theorem31_conditions(&rep, 5);
    assert_eq!(c.failures(), vec!["d"]);

    let c = check_theorem31_conditions(&harmonic_rep(3, 1).unwrap(), 5);
    assert!(!c.cond_b.passes);
    assert!(c.cond_b.matched.is_some());
}

#[test]
fn theorem31_diagram_shape() {
    let rep = harmonic_rep(3, 2).unwrap();
    let g = theorem31_diagram(&rep, 7).unwrap();
    assert!(matches!(g.family, Family::Theorem31 { l: 3, m: 2, k: 5 }));
    assert_eq!(g.codims, (3, 3));
    let w: usize = g.blocks.iter().filter(|b| b.label.starts_with('W')).map(|b| b.indices.len()).sum();
    assert_eq!(w, 10);
    g.verify_invariants(1e-10).unwrap();
    // so(n−k) ⊂ h preserves each W row.
    for b in g.blocks.iter().filter(|b| b.label.starts_with('W')) {
        for h in g.h_basis.iter().filter(|h| (0..5).all(|i| (0..g.n).all(|j| *h.entry(i, j) == 0.0))) {
            for &i in &b.indices {
                let br = bracket(h, &g.complement[i]).unwrap();
                let rest: f64 = g
                    .complement
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| !b.indices.contains(j))
                    .map(|(_, c)| q_weighted(&br, c, &0.0).abs())
                    .sum();
                assert!(rest < 1e-12);
            }
        }
    }
}

#[test]
fn theorem31_diagram_rejects_failed_conditions() {
    let rep = harmonic_rep(3, 1).unwrap();
    assert!(matches!(theorem31_diagram(&rep, 5), Err(Error::HypothesisFailure(_))));
}
