use cohomone::liealg::{basis_element, bracket, q_inner, AlgElement, QFormParams};
use cohomone::scalar::{Rational, Scalar};
use cohomone::Error;

fn e(i: usize, j: usize, n: usize) -> AlgElement<Rational> {
    basis_element(i, j, n).unwrap()
}

fn r(num: i64, den: i64) -> Rational {
    Rational::from_ratio(num, den)
}

#[test]
fn basis_element_layout() {
    let a = e(1, 2, 3);
    let want = [[0, 1, 0], [-1, 0, 0], [0, 0, 0]];
    for (i, row) in want.iter().enumerate() {
        for (j, w) in row.iter().enumerate() {
            assert_eq!(*a.entry(i, j), Rational::from_i64(*w));
        }
    }
    let b = e(2, 3, 4);
    assert_eq!(b.mat_part().iter().filter(|x| **x != Rational::from_i64(0)).count(), 2);
    let c = e(1, 3, 3) + e(1, 3, 3);
    assert_eq!(*c.entry(0, 2), r(2, 1));
}

#[test]
fn basis_element_rejects_bad_indices() {
    for (i, j, n) in [(0, 1, 3), (2, 2, 3), (3, 2, 3), (1, 4, 3)] {
        assert!(matches!(basis_element::<Rational>(i, j, n), Err(Error::Input(_))));
    }
}

#[test]
fn bracket_examples() {
    assert_eq!(bracket(&e(1, 2, 3), &e(2, 3, 3)).unwrap(), e(1, 3, 3));
    let x = e(1, 3, 4) + e(2, 4, 4) * r(3, 7);
    assert!(bracket(&x, &x).unwrap().is_zero());
    let central = AlgElement::so2(r(1, 1), 3);
    assert!(bracket(&central, &e(1, 2, 3)).unwrap().is_zero());
    assert!(bracket(&e(1, 2, 3), &e(1, 2, 4)).is_err());
}

#[test]
fn q_form_examples() {
    for d in 1..=5u32 {
        let n = 4;
        let p = QFormParams::new(d, n).unwrap();
        let inv_d = r(1, i64::from(d));
        let x2 = AlgElement::so2(inv_d.clone(), n) + e(1, 2, n);
        let y2 = AlgElement::so2(inv_d, n) - e(1, 2, n);
        // X = X2/√2, so Q(X,X) = Q(X2,X2)/2.
        assert_eq!(q_inner(&x2, &x2, &p).unwrap(), r(2, 1));
        assert_eq!(q_inner(&x2, &y2, &p).unwrap(), r(0, 1));
    }
    let p = QFormParams::new(3, 4).unwrap();
    assert_eq!(q_inner(&e(1, 3, 4), &e(1, 3, 4), &p).unwrap(), r(1, 1));
    assert_eq!(q_inner(&e(1, 3, 4), &e(1, 4, 4), &p).unwrap(), r(0, 1));
    assert!(q_inner(&e(1, 3, 3), &e(1, 3, 3), &p).is_err());
    assert!(QFormParams::new(0, 4).is_err());
}

#[test]
fn from_parts_rejects_non_antisymmetric() {
    let m = vec![r(0, 1), r(1, 1), r(1, 1), r(0, 1)];
    assert!(AlgElement::from_parts(r(0, 1), m, 2).is_err());
    let m = vec![r(1, 1), r(0, 1), r(0, 1), r(0, 1)];
    assert!(AlgElement::from_parts(r(0, 1), m, 2).is_err());
}

#[test]
fn float_mode_matches_exact_mode() {
    let a = e(1, 2, 4) + e(3, 4, 4) * r(2, 3);
    let b = e(2, 3, 4) - e(1, 4, 4) * r(5, 2);
    let exact = bracket(&a, &b).unwrap().to_f64();
    let float = bracket(&a.to_f64(), &b.to_f64()).unwrap();
    for (x, y) in exact.mat_part().iter().zip(float.mat_part()) {
        assert!((x - y).abs() < 1e-15);
    }
}
