use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::curvature::{radial_curvature, transport_with, BrieskornEngine, MetricOperator, PlaneSpec};
use crate::error::{Error, Result};
use crate::metric::{smoothness_check, MetricProfile};

use super::{Tolerances, WitnessCertificate, WitnessKind};

/// Segments used to sample the transported field.
pub const SECVAR_SEGMENTS: usize = 400;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SecondVariationReport {
    pub passed: bool,
    /// `∫ R(Ẽ, γ′, γ′, Ẽ) dt` over the transport interval.
    pub integral: f64,
    pub min_k: f64,
    pub min_t: f64,
    /// First and last sample where `K < −tol`.
    pub negative_interval: Option<[f64; 2]>,
    /// Largest `|g(Ẽ, F_1)|/h2` along the path.
    pub m2_leak: f64,
    /// Both checks hold, so `h1` is constant and `h12 ≡ 0` along `γ`.
    pub reduced_justified: bool,
    pub interval: [f64; 2],
    pub witness: Option<WitnessCertificate>,
}

/// The `(E_1, F_1)` block of `g_t`.
fn block_operator(p: &MetricProfile, t: f64) -> Result<MetricOperator> {
    let j = p.jet(t);
    let sq = |f: crate::metric::Jet| (f.v * f.v, 2.0 * f.v * f.d1, 2.0 * (f.d1 * f.d1 + f.v * f.d2));
    let (a, da, dda) = sq(j.h1);
    let (b, db, ddb) = sq(j.h2);
    let c = j.h12;
    MetricOperator::new(
        t,
        DMatrix::from_row_slice(2, 2, &[a, c.v, c.v, b]),
        DMatrix::from_row_slice(2, 2, &[da, c.d1, c.d1, db]),
        DMatrix::from_row_slice(2, 2, &[dda, c.d2, c.d2, ddb]),
    )
}

pub(crate) struct TransportCurvature {
    pub ts: Vec<f64>,
    pub ks: Vec<f64>,
    pub fields: Vec<[f64; 2]>,
    pub integral: f64,
    pub leak: f64,
}

/// Transports `E_1/h1(b)` from `b` down to `a` and samples `K` on the way.
pub(crate) fn transport_curvature(p: &MetricProfile, a: f64, b: f64, tol: f64) -> Result<TransportCurvature> {
    let n = SECVAR_SEGMENTS;
    let ts: Vec<f64> = (0..=n).map(|i| b + (a - b) * i as f64 / n as f64).collect();
    let start = block_operator(p, b)?;
    let mut c = vec![1.0 / start.g[(0, 0)].sqrt(), 0.0];
    let mut ks = Vec::with_capacity(n + 1);
    let mut fields = Vec::with_capacity(n + 1);
    let mut leak: f64 = 0.0;
    for (i, &t) in ts.iter().enumerate() {
        if i > 0 {
            let tr = transport_with(|s| block_operator(p, s), ts[i - 1], t, &c, tol.max(1e-13))?;
            c = tr.v;
        }
        let op = block_operator(p, t)?;
        ks.push(radial_curvature(&op, &c));
        fields.push([c[0], c[1]]);
        let h2 = op.g[(1, 1)].sqrt();
        if h2 > 0.0 {
            let gf = op.g[(1, 0)] * c[0] + op.g[(1, 1)] * c[1];
            leak = leak.max(gf.abs() / h2);
        }
    }
    let step = (b - a) / n as f64;
    let integral = step * (ks.iter().sum::<f64>() - 0.5 * (ks[0] + ks[n]));
    Ok(TransportCurvature { ts, ks, fields, integral, leak })
}

/// Transports a unit `m1` vector from near `L` back to near `0` and checks
/// pointwise `K ≥ −tol` and `∫K ≤ tol`.
pub fn second_variation_check(p: &MetricProfile, tol: &Tolerances) -> Result<SecondVariationReport> {
    if p.d < 3 {
        return Err(Error::Input(format!(
            "the second-variation argument needs a totally geodesic B−, i.e. d ≥ 3 (got d = {})",
            p.d
        )));
    }
    let smooth = smoothness_check(p, 1e-8);
    if !smooth.passed {
        let failed: Vec<String> = smooth.failed().map(|c| c.name.clone()).collect();
        return Err(Error::Input(format!("profile fails boundary conditions: {}", failed.join(", "))));
    }
    let tau = p.length / SECVAR_SEGMENTS as f64 * 1e-2;
    let (a, b) = (tau, p.length - tau);
    let tc = transport_curvature(p, a, b, 1e-12)?;
    let (imin, &min_k) = tc
        .ks
        .iter()
        .enumerate()
        .min_by(|x, y| x.1.total_cmp(y.1))
        .expect("non-empty samples");
    let min_t = tc.ts[imin];
    let neg: Vec<f64> = tc
        .ts
        .iter()
        .zip(&tc.ks)
        .filter(|(_, k)| **k < -tol.inequality)
        .map(|(t, _)| *t)
        .collect();
    let negative_interval = if neg.is_empty() {
        None
    } else {
        let lo = neg.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = neg.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Some([lo, hi])
    };
    let pointwise_ok = negative_interval.is_none();
    let integral_ok = tc.integral <= tol.inequality;
    let passed = pointwise_ok && integral_ok;

    let engine = BrieskornEngine::for_profile(p)?;
    let witness = if !pointwise_ok {
        let [ce, cf] = tc.fields[imin];
        let v = engine.vector(&[(engine.index.e(1), ce), (engine.index.f(1), cf)]);
        let plane = PlaneSpec::Radial { v };
        let sec = engine.sectional(p, min_t, &plane)?;
        let mut c = WitnessCertificate::plane(WitnessKind::SecondVariation, min_t, plane, sec, tol.confirm);
        c.interval = negative_interval;
        c.residual = Some(tc.integral);
        Some(c)
    } else if !integral_ok {
        Some(WitnessCertificate {
            kind: WitnessKind::SecondVariation,
            t: min_t,
            interval: Some([a, b]),
            plane: None,
            r: None,
            value: tc.integral,
            residual: None,
            tol: 1e-12,
            class_one: None,
        })
    } else {
        None
    };
    Ok(SecondVariationReport {
        passed,
        integral: tc.integral,
        min_k,
        min_t,
        negative_interval,
        m2_leak: tc.leak,
        reduced_justified: passed,
        interval: [a, b],
        witness,
    })
}

