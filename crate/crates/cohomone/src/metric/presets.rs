//! Profiles read off from Killing fields along explicit normal geodesics.

use nalgebra::{Complex, DMatrix, DVector};

use crate::diagram::{brieskorn_diagram, brieskorn_t0, BrieskornIndex};
use crate::error::{Error, Result};
use crate::liealg::AlgElement;

use super::curve::Curve;
use super::profile::{Functions, MetricProfile};

type C = Complex<f64>;

/// Knots per preset spline.
pub const PRESET_KNOTS: usize = 400;

/// The round unit sphere `S^{2n−1} ⊂ Cⁿ` under `(e^{iθ}, A)·Z = e^{iθ}AZ` (`d = 1`).
pub fn preset_round(n: usize) -> Result<MetricProfile> {
    let length = std::f64::consts::FRAC_PI_4;
    let gamma = move |t: f64, k: usize| -> DVector<C> {
        // γ(t) = (cos(π/4 − t), −i sin(π/4 − t), 0, …)
        let u = std::f64::consts::FRAC_PI_4 - t;
        let (c, s) = trig_derivative(u, k, -1.0);
        let mut z = DVector::from_element(n, C::new(0.0, 0.0));
        z[0] = C::new(c, 0.0);
        z[1] = C::new(0.0, -s);
        z
    };
    let killing = move |u: &AlgElement<f64>| -> DMatrix<C> {
        let mut m = real_matrix(u, n);
        for i in 0..n {
            m[(i, i)] += C::new(0.0, *u.so2_part());
        }
        m
    };
    build(n, 1, length, gamma, killing)
}

/// The normal homogeneous metric on `M_2 ⊂ C^{n+1}`, the unit tangent bundle of `Sⁿ` (`d = 2`).
pub fn preset_stiefel(n: usize) -> Result<MetricProfile> {
    let w = std::f64::consts::SQRT_2;
    let length = std::f64::consts::PI / (2.0 * w);
    let gamma = move |t: f64, k: usize| -> DVector<C> {
        // γ(t) = (−i sin(√2 t), 1, −i cos(√2 t), 0, …)/√2
        let scale = w.powi(k as i32) / w;
        let (c, s) = trig_derivative(w * t, k, 1.0);
        let mut z = DVector::from_element(n + 1, C::new(0.0, 0.0));
        z[0] = C::new(0.0, -s * scale);
        if k == 0 {
            z[1] = C::new(1.0 / w, 0.0);
        }
        z[2] = C::new(0.0, -c * scale);
        z
    };
    let killing = move |u: &AlgElement<f64>| -> DMatrix<C> {
        let a = *u.so2_part();
        let mut m = DMatrix::from_element(n + 1, n + 1, C::new(0.0, 0.0));
        m[(0, 0)] = C::new(0.0, 2.0 * a);
        m.view_mut((1, 1), (n, n)).copy_from(&real_matrix(u, n));
        for i in 1..=n {
            m[(i, i)] += C::new(0.0, 2.0 * a);
        }
        m
    };
    build(n, 2, length, gamma, killing)
}

/// `k`-th derivatives of `(cos x, sin x)` with respect to `t` where `dx/dt = sign`.
fn trig_derivative(x: f64, k: usize, sign: f64) -> (f64, f64) {
    let (s, c) = x.sin_cos();
    let (c, s) = match k % 4 {
        0 => (c, s),
        1 => (-s, c),
        2 => (-c, -s),
        _ => (s, -c),
    };
    let f = sign.powi(k as i32);
    (c * f, s * f)
}

fn real_matrix(u: &AlgElement<f64>, n: usize) -> DMatrix<C> {
    DMatrix::from_fn(n, n, |i, j| C::new(*u.entry(i, j), 0.0))
}

fn build(
    n: usize,
    d: u32,
    length: f64,
    gamma: impl Fn(f64, usize) -> DVector<C>,
    killing: impl Fn(&AlgElement<f64>) -> DMatrix<C>,
) -> Result<MetricProfile> {
    if n < 4 {
        return Err(Error::Unsupported(format!("presets need n ≥ 4 (got {n})")));
    }
    let frame = brieskorn_diagram(n, d)?.float_frame();
    let idx = BrieskornIndex { n };
    let pick = [BrieskornIndex::X, BrieskornIndex::Y, idx.e(1), idx.f(1)];
    let ms: Vec<DMatrix<C>> = pick.iter().map(|&i| killing(&frame.complement[i])).collect();

    // Gram derivatives g^{(k)}_{ab}, k ≤ 3, by Leibniz on Re⟨M_a γ, M_b γ⟩.
    let gram = |t: f64| -> [[[f64; 4]; 4]; 4] {
        let g: Vec<DVector<C>> = (0..4).map(|k| gamma(t, k)).collect();
        let mut out = [[[0.0; 4]; 4]; 4];
        let binom = [[1.0, 0.0, 0.0, 0.0], [1.0, 1.0, 0.0, 0.0], [1.0, 2.0, 1.0, 0.0], [1.0, 3.0, 3.0, 1.0]];
        for a in 0..4 {
            let ka: Vec<DVector<C>> = g.iter().map(|v| &ms[a] * v).collect();
            for b in a..4 {
                let kb: Vec<DVector<C>> = g.iter().map(|v| &ms[b] * v).collect();
                for k in 0..4 {
                    let mut acc = 0.0;
                    for j in 0..=k {
                        acc += binom[k][j] * ka[j].dotc(&kb[k - j]).re;
                    }
                    out[a][b][k] = acc;
                    out[b][a][k] = acc;
                }
            }
        }
        out
    };

    let knots: Vec<f64> = (0..=PRESET_KNOTS).map(|i| length * i as f64 / PRESET_KNOTS as f64).collect();
    let mut samples: Vec<[[f64; 3]; 6]> = Vec::with_capacity(knots.len());
    for (i, &t) in knots.iter().enumerate() {
        let q = gram(t);
        let sign = if i == PRESET_KNOTS { -1.0 } else { 1.0 };
        let f1 = sqrt_jet(q[0][0], sign);
        let f2 = sqrt_jet(q[1][1], sign);
        let h1 = sqrt_jet(q[2][2], sign);
        let h2 = sqrt_jet(q[3][3], sign);
        let take = |v: [f64; 4]| [v[0], v[1], v[2]];
        samples.push([f1, f2, take(q[0][1]), h1, h2, take(q[2][3])]);
    }
    let curve = |slot: usize| Curve::Spline {
        knots: knots.clone(),
        values: samples.iter().map(|s| s[slot][0]).collect(),
        derivs: samples.iter().map(|s| s[slot][1]).collect(),
        derivs2: Some(samples.iter().map(|s| s[slot][2]).collect()),
    };
    let functions = Functions {
        f1: curve(0),
        f2: curve(1),
        f12: curve(2),
        h1: curve(3),
        h2: curve(4),
        h12: curve(5),
    };
    let mut p = MetricProfile::new(n, d, length, functions, false)?;
    p.t0 = Some(brieskorn_t0(d));
    Ok(p)
}

/// Jet of `√q` from the jet `(q, q′, q″, q‴)`; at a simple zero of `f` uses
/// `f′ = ±√(q″/2)`, `f″ = q‴/(6f′)`.
fn sqrt_jet(q: [f64; 4], sign: f64) -> [f64; 3] {
    if q[0] > 1e-20 {
        let f = q[0].sqrt();
        let f1 = q[1] / (2.0 * f);
        [f, f1, (q[2] - 2.0 * f1 * f1) / (2.0 * f)]
    } else {
        let f1 = sign * (q[2].max(0.0) / 2.0).sqrt();
        let f2 = if f1 == 0.0 { 0.0 } else { q[3] / (6.0 * f1) };
        [0.0, f1, f2]
    }
}
