//! Closed-form curvature expressions for the reduced Brieskorn model and the
//! class-one family.

use crate::diagram::GroupDiagram;
use crate::error::{Error, Result};
use crate::liealg::{basis_element, bracket, AlgElement};
use crate::metric::MetricJet;
use crate::scalar::Scalar;

use super::operator::MetricOperator;

/// `R(A,B,B,A)` for `A = E_1+F_2`, `B = E_2+F_1`:
/// `½δ²(f1²+f2²+2f12)/(f1²f2²−f12²) − h2²h2′²`.
pub fn closed_form_ef(jet: &MetricJet) -> Result<f64> {
    ef_with(jet, jet.f12.v)
}

/// The same expression with `f12` entering the numerator quadratically as
/// `−2f12²`. Agrees with [`closed_form_ef`] only when `f12 = 0`.
pub fn closed_form_ef_quadratic(jet: &MetricJet) -> Result<f64> {
    ef_with(jet, -jet.f12.v * jet.f12.v)
}

fn ef_with(jet: &MetricJet, cross: f64) -> Result<f64> {
    let (f1, f2, f12) = (jet.f1.v, jet.f2.v, jet.f12.v);
    let den = f1 * f1 * f2 * f2 - f12 * f12;
    if den == 0.0 {
        return Err(Error::DegenerateMetric(format!("f1²f2² − f12² = 0 at t = {}", jet.t)));
    }
    let delta = jet.delta();
    let h2 = jet.h2;
    Ok(0.5 * delta * delta * (f1 * f1 + f2 * f2 + 2.0 * cross) / den - h2.v * h2.v * h2.d1 * h2.d1)
}

/// `[[R(X,F1,F1,X), R(X,F1,F1,Y)], [R(X,F1,F1,Y), R(Y,F1,F1,Y)]]`.
///
/// With `Y` replaced by `−Y` (so `f12 ↦ −f12` and the off-diagonal entry
/// changes sign) these are the expressions
/// `−⅛δ(4−2f1²−2f12−δ) + ⅛(f1²+f12)² + ½f1f1′δ′` and its companions.
pub fn closed_form_xf1(jet: &MetricJet) -> [[f64; 2]; 2] {
    xf1_with(jet, jet.delta(), jet.delta_prime())
}

/// The same matrix with `δ`, `δ′` supplied independently of `h2`.
pub fn xf1_with(jet: &MetricJet, d: f64, dp: f64) -> [[f64; 2]; 2] {
    let (f1, f2) = (jet.f1, jet.f2);
    // reference orientation, Y ↦ −Y
    let c = -jet.f12.v;
    let cp = -jet.f12.d1;
    let (a1, a2) = (f1.v * f1.v, f2.v * f2.v);
    let xx = -0.125 * d * (4.0 - 2.0 * a1 - 2.0 * c - d) + 0.125 * (a1 + c).powi(2) + 0.5 * f1.v * f1.d1 * dp;
    let yy = -0.125 * d * (4.0 - 2.0 * a2 - 2.0 * c - d) + 0.125 * (a2 + c).powi(2) + 0.5 * f2.v * f2.d1 * dp;
    let xy = -0.125 * d * (4.0 - a1 - a2 - 2.0 * c - d) + 0.125 * (a1 + c) * (a2 + c) + 0.25 * cp * dp;
    [[xx, -xy], [-xy, yy]]
}

/// `w = [Y_2, X_2] − [X_1, Y_1]` with `X_i = Ad_a E_{k−1,k+i}`, `Y_i = E_{k,k+i}`
/// and `a ∈ SO(k−1)` acting on the first `k−1` coordinates.
pub fn thm31_w<S: Scalar>(k: usize, n: usize, a: &[Vec<S>]) -> Result<AlgElement<S>> {
    if k < 2 || n < k + 2 {
        return Err(Error::Input(format!("need n ≥ k + 2 (k = {k}, n = {n})")));
    }
    if a.len() != k - 1 || a.iter().any(|r| r.len() != k - 1) {
        return Err(Error::Input(format!("a must be {0}×{0}", k - 1)));
    }
    let conj = |e: AlgElement<S>| -> AlgElement<S> {
        // a·E·aᵀ on the top-left block, identity elsewhere.
        let mut mat = e.mat_part().to_vec();
        let full = |i: usize, j: usize| -> S {
            if i < k - 1 && j < k - 1 {
                a[i][j].clone()
            } else if i == j {
                S::one()
            } else {
                S::zero()
            }
        };
        let src = e.mat_part();
        for i in 0..n {
            for j in 0..n {
                let mut acc = S::zero();
                for p in 0..n {
                    let aip = full(i, p);
                    if aip.is_zero() {
                        continue;
                    }
                    for q in 0..n {
                        let s = &src[p * n + q];
                        if s.is_zero() {
                            continue;
                        }
                        acc = acc + aip.clone() * s.clone() * full(j, q);
                    }
                }
                mat[i * n + j] = acc;
            }
        }
        AlgElement::from_parts(S::zero(), mat, n).expect("conjugate of antisymmetric is antisymmetric")
    };
    let e = |i, j| basis_element::<S>(i, j, n);
    let x1 = conj(e(k - 1, k + 1)?);
    let x2 = conj(e(k - 1, k + 2)?);
    let y1 = e(k, k + 1)?;
    let y2 = e(k, k + 2)?;
    Ok(bracket(&y2, &x2)? - bracket(&x1, &y1)?)
}

/// `¼δ²Q(w, P⁻¹w) − ¼δ′²`. The operator is the Gram matrix of `g_t` on
/// `span{E_{1,k}, …, E_{k−1,k}}` in that order.
pub fn closed_form_thm31(
    diagram: &GroupDiagram<f64>,
    block: &MetricOperator,
    delta: f64,
    delta_prime: f64,
    a: &[Vec<f64>],
) -> Result<f64> {
    let k = match diagram.family {
        crate::diagram::Family::Theorem31 { k, .. } => k,
        _ => return Err(Error::Input("closed_form_thm31 needs a class-one diagram".into())),
    };
    let n = diagram.n;
    let w = thm31_w(k, n, a)?;
    if block.dim() != k - 1 {
        return Err(Error::Input(format!("block metric has size {}, expected {}", block.dim(), k - 1)));
    }
    let coords: Vec<f64> = (0..k - 1).map(|s| *w.entry(s, k - 1)).collect();
    let v = nalgebra::DVector::from_column_slice(&coords);
    let q = v.dot(&(&block.g_inv * &v));
    Ok(0.25 * delta * delta * q - 0.25 * delta_prime * delta_prime)
}
