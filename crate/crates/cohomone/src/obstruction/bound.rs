use serde::{Deserialize, Serialize};

use crate::curvature::xf1_with;
use crate::error::{Error, Result};
use crate::metric::MetricProfile;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum BoundVerdict {
    Contradiction,
    NoContradiction,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundPoint {
    pub t: f64,
    pub delta: f64,
    /// `(log δ)′` of the profile itself.
    pub log_delta_prime: f64,
    /// Upper envelope from the orbit-plane inequality.
    pub u: f64,
    /// Lower envelope from the determinant condition (`∞` if infeasible).
    pub v: f64,
    /// `U·f1/√2 − 1`.
    pub eta_u: f64,
    /// `V·f1·f1′ − 1`.
    pub eta_v: f64,
    /// `f1′·V/U`; the sandwich `V ≤ U` holds iff `f1′ ≥` this value.
    pub implied: f64,
    pub feasible: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundAnalysis {
    pub eps: f64,
    pub points: Vec<BoundPoint>,
    /// Implied lower bound on `f1′(0)`, read at the smallest grid point.
    pub implied_bound: f64,
    /// `√2/d`.
    pub target: f64,
    pub verdict: BoundVerdict,
    pub diagnostics: Vec<String>,
}

const LEVELS: usize = 48;

/// Evaluates the envelopes `V ≤ (log δ)′ ≤ U` on a geometric grid in `(0, ε]`
/// and the lower bound they impose on `f1′(0)`.
pub fn bound_analysis(p: &MetricProfile, eps: f64, tol: f64) -> BoundAnalysis {
    let target = std::f64::consts::SQRT_2 / f64::from(p.d);
    let mut diagnostics = Vec::new();
    let not_applicable = |diagnostics: Vec<String>| BoundAnalysis {
        eps,
        points: Vec::new(),
        implied_bound: f64::NAN,
        target,
        verdict: BoundVerdict::NotApplicable,
        diagnostics,
    };
    if !p.reduced_model_holds(1e-10) {
        diagnostics.push("profile is outside the reduced model (h1 ≡ 1, h12 ≡ 0); envelopes not defined".into());
        return not_applicable(diagnostics);
    }
    let mut points = Vec::new();
    let mut zero_run = 0usize;
    for i in 0..=LEVELS {
        let t = eps * 2f64.powf(-(i as f64) / 4.0);
        let j = p.jet(t);
        let delta = j.delta();
        if delta <= 0.0 {
            zero_run += 1;
            continue;
        }
        let (f1, f2, f12) = (j.f1.v, j.f2.v, j.f12.v);
        let den = f1 * f1 * f2 * f2 - f12 * f12;
        let u = (2.0 * (f1 * f1 + f2 * f2 + 2.0 * f12) / den).sqrt();
        let v = lower_envelope(&j, delta);
        let implied = j.f1.d1 * v / u;
        points.push(BoundPoint {
            t,
            delta,
            log_delta_prime: j.delta_prime() / delta,
            u,
            v,
            eta_u: u * f1 / std::f64::consts::SQRT_2 - 1.0,
            eta_v: v * f1 * j.f1.d1 - 1.0,
            implied,
            feasible: v <= u,
        });
    }
    if zero_run > 0 {
        diagnostics.push(format!(
            "δ vanishes at {zero_run} grid points of (0, ε]: the positivity step (log δ)′ bounded from above fails numerically"
        ));
    }
    let Some(last) = points.last() else {
        diagnostics.push("δ ≤ 0 on the whole grid".into());
        return not_applicable(diagnostics);
    };
    let implied_bound = last.implied;
    if points.iter().any(|pt| !pt.feasible) {
        diagnostics.push("V > U somewhere in (0, ε]: no admissible (log δ)′ exists there".into());
    }
    let verdict = if implied_bound > target + tol {
        BoundVerdict::Contradiction
    } else {
        BoundVerdict::NoContradiction
    };
    BoundAnalysis {
        eps,
        points,
        implied_bound,
        target,
        verdict,
        diagnostics,
    }
}

/// Smallest `λ ≥ 0` with `det M(λ) ≥ 0` where `δ′ = λδ`.
fn lower_envelope(j: &crate::metric::MetricJet, delta: f64) -> f64 {
    let m0 = xf1_with(j, delta, 0.0);
    let m1 = xf1_with(j, delta, delta);
    let lin = |p: usize, q: usize| (m0[p][q], m1[p][q] - m0[p][q]);
    let (a0, a1) = lin(0, 0);
    let (c0, c1) = lin(1, 1);
    let (b0, b1) = lin(0, 1);
    // det(λ) = k0 + k1 λ + k2 λ²
    let k0 = a0 * c0 - b0 * b0;
    let k1 = a0 * c1 + a1 * c0 - 2.0 * b0 * b1;
    let k2 = a1 * c1 - b1 * b1;
    if k0 >= 0.0 {
        return 0.0;
    }
    let roots: Vec<f64> = if k2.abs() < 1e-300 {
        if k1 != 0.0 {
            vec![-k0 / k1]
        } else {
            vec![]
        }
    } else {
        let disc = k1 * k1 - 4.0 * k2 * k0;
        if disc < 0.0 {
            vec![]
        } else {
            let s = disc.sqrt();
            // numerically stable pair
            let q = -0.5 * (k1 + k1.signum() * s);
            let mut r = vec![q / k2];
            if q != 0.0 {
                r.push(k0 / q);
            }
            r
        }
    };
    roots
        .into_iter()
        .filter(|r| *r > 0.0 && r.is_finite())
        .fold(f64::INFINITY, f64::min)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegularityReport {
    pub d: u32,
    pub alpha: f64,
    pub eps: f64,
    /// Whether `δ(t) ≥ t^α` on the grid sub-interval next to 0.
    pub holds: bool,
    pub holds_on: Option<[f64; 2]>,
    /// Slope of `log δ` against `log t` over the smallest decade.
    pub fitted_exponent: f64,
    /// `max t·(log δ)′/d` on the grid.
    pub upper_ratio: f64,
}

/// Compares `δ` with `t^α` near 0 on a profile (`d` odd, `d ≥ 3`).
pub fn regularity_diagnostic(p: &MetricProfile, alpha: f64, eps: f64) -> Result<RegularityReport> {
    if p.d < 3 || p.d.is_multiple_of(2) {
        return Err(Error::Input(format!("the regularity diagnostic needs odd d ≥ 3 (got {})", p.d)));
    }
    let delta = |t: f64| p.jet(t).delta();
    Ok(regularity_from_delta(delta, p.d, alpha, eps))
}

pub fn regularity_from_delta(delta: impl Fn(f64) -> f64, d: u32, alpha: f64, eps: f64) -> RegularityReport {
    let ts: Vec<f64> = (0..=60).map(|i| eps * 10f64.powf(-(i as f64) / 10.0)).collect();
    let vals: Vec<f64> = ts.iter().map(|&t| delta(t)).collect();
    // contiguous run from the smallest t upward
    let n = ts.len();
    let mut top = None;
    for i in (0..n).rev() {
        if vals[i] >= ts[i].powf(alpha) {
            top = Some(ts[i]);
        } else {
            break;
        }
    }
    let holds_on = top.map(|hi| [ts[n - 1], hi]);
    let fit: Vec<(f64, f64)> = ts[n - 11..]
        .iter()
        .zip(&vals[n - 11..])
        .filter(|(_, v)| **v > 0.0)
        .map(|(t, v)| (t.ln(), v.ln()))
        .collect();
    let fitted_exponent = if fit.len() >= 2 {
        let m = fit.len() as f64;
        let (sx, sy) = fit.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0, a.1 + p.1));
        let (mx, my) = (sx / m, sy / m);
        let num: f64 = fit.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let den: f64 = fit.iter().map(|p| (p.0 - mx).powi(2)).sum();
        num / den
    } else {
        f64::NAN
    };
    let mut upper_ratio = f64::NEG_INFINITY;
    for w in ts.windows(2) {
        let (hi, lo) = (w[0], w[1]);
        let (dh, dl) = (delta(hi), delta(lo));
        if dh > 0.0 && dl > 0.0 {
            let slope = (dh.ln() - dl.ln()) / (hi - lo);
            upper_ratio = upper_ratio.max(0.5 * (hi + lo) * slope / f64::from(d));
        }
    }
    RegularityReport {
        d,
        alpha,
        eps,
        holds: holds_on.is_some(),
        holds_on,
        fitted_exponent,
        upper_ratio,
    }
}
