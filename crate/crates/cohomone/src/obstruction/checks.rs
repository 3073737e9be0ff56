use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curvature::{closed_form_xf1, BrieskornEngine, PlaneSpec};
use crate::error::{Error, Result};
use crate::metric::{MetricJet, MetricProfile};

use super::{Tolerances, WitnessCertificate, WitnessKind};

/// `δ = 1 − h2²` and `δ′` on a grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltaTrace {
    pub t: Vec<f64>,
    pub delta: Vec<f64>,
    pub delta_prime: Vec<f64>,
    /// One character per grid point: `+`, `0` or `-`.
    pub signs: String,
}

impl DeltaTrace {
    pub fn all_nonnegative(&self, tol: f64) -> bool {
        self.delta.iter().all(|d| *d >= -tol)
    }
}

/// Uniform grid `0 = t_0 < … < t_grid = L`.
pub fn delta_trace(p: &MetricProfile, grid: usize) -> Result<DeltaTrace> {
    if !p.is_normalized(1e-8) {
        return Err(Error::Input(format!(
            "profile is not normalized (h1(0) = {}); apply normalize first",
            p.functions.h1.jet(0.0).v
        )));
    }
    let grid = grid.max(1);
    let t: Vec<f64> = (0..=grid).map(|i| p.length * i as f64 / grid as f64).collect();
    let jets: Vec<MetricJet> = t.iter().map(|&s| p.jet(s)).collect();
    let delta: Vec<f64> = jets.iter().map(MetricJet::delta).collect();
    let delta_prime = jets.iter().map(MetricJet::delta_prime).collect();
    let signs = delta
        .iter()
        .map(|d| if d.abs() <= 1e-12 { '0' } else if *d > 0.0 { '+' } else { '-' })
        .collect();
    Ok(DeltaTrace { t, delta, delta_prime, signs })
}

/// Outcome of a grid scan for one inequality.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub passed: bool,
    pub points: usize,
    pub violations: usize,
    pub worst_t: Option<f64>,
    pub worst_residual: Option<f64>,
    pub witness: Option<WitnessCertificate>,
}

pub(crate) fn interior_grid(length: f64, grid: usize) -> Vec<f64> {
    let grid = grid.max(2);
    (1..grid).map(|i| length * i as f64 / grid as f64).collect()
}

/// Whether the jet sits in the reduced model at this parameter.
pub(crate) fn jet_is_reduced(j: &MetricJet) -> bool {
    j.is_reduced(1e-13)
}

/// Runs `residual` on the grid, confirms violations with `confirm`, and
/// keeps the most negative confirmed plane.
fn scan(
    ts: &[f64],
    tol: &Tolerances,
    residual: impl Fn(f64) -> Option<f64> + Sync,
    confirm: impl Fn(f64) -> Option<WitnessCertificate> + Sync,
) -> CheckOutcome {
    let residuals: Vec<Option<f64>> = ts.par_iter().map(|&t| residual(t)).collect();
    let violating: Vec<(f64, f64)> = ts
        .iter()
        .zip(&residuals)
        .filter_map(|(&t, r)| r.filter(|r| *r > tol.inequality).map(|r| (t, r)))
        .collect();
    let worst = violating.iter().copied().max_by(|a, b| a.1.total_cmp(&b.1));
    let confirmed: Vec<WitnessCertificate> = violating
        .par_iter()
        .filter_map(|&(t, r)| {
            confirm(t).map(|mut c| {
                c.residual = Some(r);
                c
            })
        })
        .collect();
    let witness = confirmed
        .into_iter()
        .filter(|c| c.value < -tol.confirm)
        .min_by(|a, b| a.value.total_cmp(&b.value));
    CheckOutcome {
        passed: witness.is_none(),
        points: ts.len(),
        violations: violating.len(),
        worst_t: worst.map(|w| w.0),
        worst_residual: worst.map(|w| w.1),
        witness,
    }
}

/// Concavity of `h2`, i.e. `sec(γ′, F_1) = −h2″/h2 ≥ 0` where `h2 > 0`.
pub fn check_concavity(p: &MetricProfile, grid: usize, tol: &Tolerances) -> Result<CheckOutcome> {
    let engine = BrieskornEngine::for_profile(p)?;
    let ts = interior_grid(p.length, grid);
    let plane = PlaneSpec::Radial { v: engine.f(1) };
    Ok(scan(
        &ts,
        tol,
        |t| {
            let h2 = p.functions.h2.jet(t);
            (h2.v > 0.0).then_some(h2.d2)
        },
        |t| {
            let sec = engine.sectional(p, t, &plane).ok()?;
            Some(WitnessCertificate::plane(WitnessKind::Concavity, t, plane.clone(), sec, tol.confirm))
        },
    ))
}

/// `(δ′)² − 2(f1²+f2²+2f12)/(f1²f2²−f12²)·δ²`; positive means the plane
/// `E_1+F_2, E_2+F_1` has negative curvature (in the reduced model).
pub fn check_cond2(p: &MetricProfile, t: f64) -> Result<f64> {
    cond2_residual(&p.jet(t))
}

pub(crate) fn cond2_residual(j: &MetricJet) -> Result<f64> {
    let (f1, f2, f12) = (j.f1.v, j.f2.v, j.f12.v);
    let den = f1 * f1 * f2 * f2 - f12 * f12;
    if den <= 0.0 {
        return Err(Error::DegenerateMetric(format!("X–Y block degenerate at t = {}: det = {den:e}", j.t)));
    }
    let d = j.delta();
    let dp = j.delta_prime();
    Ok(dp * dp - 2.0 * (f1 * f1 + f2 * f2 + 2.0 * f12) / den * d * d)
}

pub(crate) fn scan_cond2(p: &MetricProfile, engine: &BrieskornEngine, tol: &Tolerances) -> CheckOutcome {
    let ts = interior_grid(p.length, tol.grid);
    let (a, b) = engine.ef_plane();
    let plane = PlaneSpec::Orbit { a, b };
    scan(
        &ts,
        tol,
        |t| {
            let j = p.jet(t);
            if jet_is_reduced(&j) {
                cond2_residual(&j).ok()
            } else {
                // outside the reduced model the engine decides directly
                let sec = engine.sectional(p, t, &plane).ok()?;
                Some(-sec)
            }
        },
        |t| {
            let sec = engine.sectional(p, t, &plane).ok()?;
            Some(WitnessCertificate::plane(WitnessKind::OrbitPlane, t, plane.clone(), sec, tol.confirm))
        },
    )
}

/// `R_XY² − R_XX·R_YY` for the `(X, Y; F_1)` planes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeterminantResidual {
    pub t: f64,
    pub residual: f64,
    pub matrix: [[f64; 2]; 2],
    pub closed_form: bool,
}

pub fn check_determinant(p: &MetricProfile, t: f64) -> Result<DeterminantResidual> {
    let engine = BrieskornEngine::for_profile(p)?;
    determinant_at(&engine, p, t)
}

pub(crate) fn determinant_at(engine: &BrieskornEngine, p: &MetricProfile, t: f64) -> Result<DeterminantResidual> {
    let j = p.jet(t);
    let closed = jet_is_reduced(&j);
    let m = if closed {
        closed_form_xf1(&j)
    } else {
        engine.xf1_matrix(&engine.operator(&j)?)
    };
    Ok(DeterminantResidual {
        t,
        residual: m[0][1] * m[0][1] - m[0][0] * m[1][1],
        matrix: m,
        closed_form: closed,
    })
}

/// Scans `A_r = X + rY` against `F_1` at `t` and returns the most negative
/// plane, confirmed by the engine.
pub fn determinant_witness(engine: &BrieskornEngine, p: &MetricProfile, t: f64, tol: &Tolerances) -> Result<Option<WitnessCertificate>> {
    let res = determinant_at(engine, p, t)?;
    let [[rxx, rxy], [_, ryy]] = res.matrix;
    let j = p.jet(t);
    let op = engine.operator(&j)?;
    let (x, y) = (engine.x(), engine.y());
    let sec = |r: f64| {
        let a: Vec<f64> = x.iter().zip(&y).map(|(u, v)| u + r * v).collect();
        let num = rxx + 2.0 * r * rxy + r * r * ryy;
        num / (op.inner(&a, &a) * j.h2.v * j.h2.v)
    };
    // coarse scan on an asinh-spaced grid, then golden-section refinement
    let mut cands: Vec<f64> = (-400..=400).map(|i| (i as f64 / 40.0).sinh()).collect();
    if ryy.abs() > 0.0 {
        cands.push(-rxy / ryy);
    }
    let best = cands.iter().copied().min_by(|a, b| sec(*a).total_cmp(&sec(*b))).unwrap_or(0.0);
    let r = golden_min(&sec, best - 0.05 * (1.0 + best.abs()), best + 0.05 * (1.0 + best.abs()));
    let r = if sec(r) <= sec(best) { r } else { best };
    let a: Vec<f64> = x.iter().zip(&y).map(|(u, v)| u + r * v).collect();
    let plane = PlaneSpec::Orbit { a, b: engine.f(1) };
    let value = engine.sectional_at(&op, &plane);
    if value < -tol.confirm {
        let mut c = WitnessCertificate::plane(WitnessKind::Determinant, t, plane, value, tol.confirm);
        c.r = Some(r);
        c.residual = Some(res.residual);
        Ok(Some(c))
    } else {
        Ok(None)
    }
}

fn golden_min(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..80 {
        let a = hi - g * (hi - lo);
        let b = lo + g * (hi - lo);
        if f(a) < f(b) {
            hi = b;
        } else {
            lo = a;
        }
    }
    0.5 * (lo + hi)
}

pub(crate) fn scan_determinant(p: &MetricProfile, engine: &BrieskornEngine, tol: &Tolerances) -> CheckOutcome {
    let ts = interior_grid(p.length, tol.grid);
    scan(
        &ts,
        tol,
        |t| determinant_at(engine, p, t).ok().map(|r| r.residual),
        |t| determinant_witness(engine, p, t, tol).ok().flatten(),
    )
}
