use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::metric::MetricProfile;

use super::closed::{closed_form_ef, closed_form_xf1};
use super::{orbit_plane_curvature, plane_area2, radial_curvature, BrieskornEngine};

/// One row of a curvature trace. `residual` is the engine value minus the
/// closed form, in unnormalized `R(A,B,B,A)` units, where a closed form applies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub t: f64,
    pub plane: String,
    pub sectional: f64,
    pub residual: Option<f64>,
}

/// Sectional curvature of the catalog planes at `grid − 1` interior points.
///
/// Planes: `ef` (`E1+F2, E2+F1`), `xf1`, `yf1`, `radial-e1`, `radial-f1`.
pub fn curvature_trace(p: &MetricProfile, grid: usize) -> Result<Vec<TraceRow>> {
    let engine = BrieskornEngine::for_profile(p)?;
    let (a, b) = engine.ef_plane();
    let (x, y, e1, f1) = (engine.x(), engine.y(), engine.e(1), engine.f(1));
    let mut rows = Vec::with_capacity(5 * grid);
    for i in 1..grid {
        let t = p.length * i as f64 / grid as f64;
        let jet = p.jet(t);
        let m = engine.operator(&jet)?;
        let reduced = jet.is_reduced(1e-13);
        let diagonal = jet.h12.v == 0.0 && jet.h12.d1 == 0.0 && jet.h12.d2 == 0.0;
        let mut push = |plane: &str, r: f64, area: f64, closed: Option<f64>| {
            rows.push(TraceRow {
                t,
                plane: plane.into(),
                sectional: r / area,
                residual: closed.map(|c| r - c),
            });
        };
        let ef = orbit_plane_curvature(&engine.space, &m, &a, &b);
        push("ef", ef, plane_area2(&m, &a, &b), if reduced { Some(closed_form_ef(&jet)?) } else { None });
        let xf = closed_form_xf1(&jet);
        for (name, v, k) in [("xf1", &x, 0), ("yf1", &y, 1)] {
            let r = orbit_plane_curvature(&engine.space, &m, v, &f1);
            push(name, r, plane_area2(&m, v, &f1), reduced.then_some(xf[k][k]));
        }
        let h1 = jet.h1;
        let h2 = jet.h2;
        let r = radial_curvature(&m, &e1);
        push("radial-e1", r, m.inner(&e1, &e1), diagonal.then_some(-h1.d2 * h1.v));
        let r = radial_curvature(&m, &f1);
        push("radial-f1", r, m.inner(&f1, &f1), diagonal.then_some(-h2.d2 * h2.v));
    }
    Ok(rows)
}
