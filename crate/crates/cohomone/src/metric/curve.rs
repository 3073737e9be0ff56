//! One-dimensional curves with two derivatives.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `(value, first derivative, second derivative)` at one parameter.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Jet {
    pub v: f64,
    pub d1: f64,
    pub d2: f64,
}

impl Jet {
    pub fn constant(v: f64) -> Self {
        Self { v, d1: 0.0, d2: 0.0 }
    }
}

/// A profile function on `[0, L]`.
///
/// `Poly` stores coefficients in `t` (lowest degree first). `Spline` is a
/// piecewise Hermite interpolant: cubic when only first derivatives are
/// given, quintic when second derivatives are stored too.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Curve {
    Poly {
        coeffs: Vec<f64>,
    },
    Spline {
        knots: Vec<f64>,
        values: Vec<f64>,
        derivs: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        derivs2: Option<Vec<f64>>,
    },
}

impl Curve {
    pub fn constant(c: f64) -> Self {
        Curve::Poly { coeffs: vec![c] }
    }

    pub fn poly(coeffs: Vec<f64>) -> Self {
        Curve::Poly { coeffs }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Curve::Poly { coeffs } => {
                if coeffs.is_empty() || coeffs.iter().any(|c| !c.is_finite()) {
                    return Err(Error::Format("polynomial needs finite coefficients".into()));
                }
            }
            Curve::Spline { knots, values, derivs, derivs2 } => {
                if knots.len() < 2 {
                    return Err(Error::Format("spline needs at least two knots".into()));
                }
                if values.len() != knots.len() || derivs.len() != knots.len() {
                    return Err(Error::Format("spline arrays must match the knot count".into()));
                }
                if let Some(d2) = derivs2 {
                    if d2.len() != knots.len() {
                        return Err(Error::Format("derivs2 must match the knot count".into()));
                    }
                }
                if knots.windows(2).any(|w| w[1] <= w[0]) {
                    return Err(Error::Format("spline knots must be strictly increasing".into()));
                }
            }
        }
        Ok(())
    }

    pub fn jet(&self, t: f64) -> Jet {
        match self {
            Curve::Poly { coeffs } => {
                let (mut v, mut d1, mut d2) = (0.0, 0.0, 0.0);
                for &c in coeffs.iter().rev() {
                    d2 = d2 * t + 2.0 * d1;
                    d1 = d1 * t + v;
                    v = v * t + c;
                }
                Jet { v, d1, d2 }
            }
            Curve::Spline { knots, values, derivs, derivs2 } => {
                let last = knots.len() - 2;
                let i = match knots.binary_search_by(|k| k.total_cmp(&t)) {
                    Ok(i) => i.min(last),
                    Err(0) => 0,
                    Err(i) => (i - 1).min(last),
                };
                let h = knots[i + 1] - knots[i];
                let s = (t - knots[i]) / h;
                match derivs2 {
                    None => hermite3(s, h, values[i], values[i + 1], derivs[i], derivs[i + 1]),
                    Some(dd) => hermite5(
                        s,
                        h,
                        [values[i], derivs[i], dd[i]],
                        [values[i + 1], derivs[i + 1], dd[i + 1]],
                    ),
                }
            }
        }
    }

    /// `t ↦ a·f(t/a)`.
    pub fn rescaled(&self, a: f64) -> Curve {
        match self {
            Curve::Poly { coeffs } => Curve::Poly {
                coeffs: coeffs.iter().enumerate().map(|(j, c)| a * c * a.powi(-(j as i32))).collect(),
            },
            Curve::Spline { knots, values, derivs, derivs2 } => Curve::Spline {
                knots: knots.iter().map(|k| k * a).collect(),
                values: values.iter().map(|v| v * a).collect(),
                derivs: derivs.clone(),
                derivs2: derivs2.as_ref().map(|d| d.iter().map(|x| x / a).collect()),
            },
        }
    }
}

fn hermite3(s: f64, h: f64, p0: f64, p1: f64, m0: f64, m1: f64) -> Jet {
    let (s2, s3) = (s * s, s * s * s);
    let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    let h10 = s3 - 2.0 * s2 + s;
    let h01 = -2.0 * s3 + 3.0 * s2;
    let h11 = s3 - s2;
    let v = h00 * p0 + h10 * h * m0 + h01 * p1 + h11 * h * m1;
    let d00 = 6.0 * s2 - 6.0 * s;
    let d10 = 3.0 * s2 - 4.0 * s + 1.0;
    let d01 = -6.0 * s2 + 6.0 * s;
    let d11 = 3.0 * s2 - 2.0 * s;
    let d1 = (d00 * p0 + d01 * p1) / h + d10 * m0 + d11 * m1;
    let e00 = 12.0 * s - 6.0;
    let e10 = 6.0 * s - 4.0;
    let e01 = -12.0 * s + 6.0;
    let e11 = 6.0 * s - 2.0;
    let d2 = (e00 * p0 + e01 * p1) / (h * h) + (e10 * m0 + e11 * m1) / h;
    Jet { v, d1, d2 }
}

/// Quintic Hermite on one interval: matches value, slope and curvature at both ends.
fn hermite5(s: f64, h: f64, a: [f64; 3], b: [f64; 3]) -> Jet {
    // Basis polynomials on [0,1] and their first two derivatives.
    let basis = |s: f64| -> [[f64; 3]; 6] {
        let s2 = s * s;
        let s3 = s2 * s;
        let s4 = s3 * s;
        let s5 = s4 * s;
        [
            [
                1.0 - 10.0 * s3 + 15.0 * s4 - 6.0 * s5,
                -30.0 * s2 + 60.0 * s3 - 30.0 * s4,
                -60.0 * s + 180.0 * s2 - 120.0 * s3,
            ],
            [
                s - 6.0 * s3 + 8.0 * s4 - 3.0 * s5,
                1.0 - 18.0 * s2 + 32.0 * s3 - 15.0 * s4,
                -36.0 * s + 96.0 * s2 - 60.0 * s3,
            ],
            [
                0.5 * s2 - 1.5 * s3 + 1.5 * s4 - 0.5 * s5,
                s - 4.5 * s2 + 6.0 * s3 - 2.5 * s4,
                1.0 - 9.0 * s + 18.0 * s2 - 10.0 * s3,
            ],
            [
                10.0 * s3 - 15.0 * s4 + 6.0 * s5,
                30.0 * s2 - 60.0 * s3 + 30.0 * s4,
                60.0 * s - 180.0 * s2 + 120.0 * s3,
            ],
            [
                -4.0 * s3 + 7.0 * s4 - 3.0 * s5,
                -12.0 * s2 + 28.0 * s3 - 15.0 * s4,
                -24.0 * s + 84.0 * s2 - 60.0 * s3,
            ],
            [
                0.5 * s3 - s4 + 0.5 * s5,
                1.5 * s2 - 4.0 * s3 + 2.5 * s4,
                3.0 * s - 12.0 * s2 + 10.0 * s3,
            ],
        ]
    };
    let bs = basis(s);
    let w = [a[0], a[1] * h, a[2] * h * h, b[0], b[1] * h, b[2] * h * h];
    let mut out = [0.0; 3];
    for (wi, bi) in w.iter().zip(bs.iter()) {
        for k in 0..3 {
            out[k] += wi * bi[k];
        }
    }
    Jet {
        v: out[0],
        d1: out[1] / h,
        d2: out[2] / (h * h),
    }
}
