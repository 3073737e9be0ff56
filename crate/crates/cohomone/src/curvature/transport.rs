use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::metric::MetricProfile;

use super::operator::{metric_operator, MetricOperator};

/// `R(V, γ′, γ′, V) = −g((S′ + S²)V, V)` (unnormalized; `γ′` is unit).
pub fn radial_curvature(op: &MetricOperator, v: &[f64]) -> f64 {
    let s = op.shape();
    let m = op.shape_prime() + &s * &s;
    let mv = &m * DVector::from_column_slice(v);
    -op.inner(mv.as_slice(), v)
}

/// Result of integrating `c′ = −S_t c`.
#[derive(Debug, Clone)]
pub struct Transported {
    pub v: Vec<f64>,
    pub steps: usize,
    /// Richardson estimate of the remaining error (max norm).
    pub error: f64,
}

pub const TRANSPORT_TOL: f64 = 1e-10;
const MAX_STEPS: usize = 1 << 16;

/// Parallel transport along `γ` from `t0` to `t1` in the Killing frame.
pub fn parallel_transport(p: &MetricProfile, t0: f64, t1: f64, v: &[f64]) -> Result<Transported> {
    transport_with(|t| metric_operator(p.n, &p.jet(t)), t0, t1, v, TRANSPORT_TOL)
}

/// Transport for an arbitrary operator path; fixed-step RK4 with step doubling
/// until two successive runs agree to `tol`.
pub fn transport_with(
    op_at: impl Fn(f64) -> Result<MetricOperator>,
    t0: f64,
    t1: f64,
    v: &[f64],
    tol: f64,
) -> Result<Transported> {
    let rhs = |t: f64, c: &DVector<f64>| -> Result<DVector<f64>> { Ok(-(op_at(t)?.shape() * c)) };
    let run = |steps: usize| -> Result<DVector<f64>> {
        let h = (t1 - t0) / steps as f64;
        let mut c = DVector::from_column_slice(v);
        for i in 0..steps {
            let t = t0 + h * i as f64;
            let k1 = rhs(t, &c)?;
            let k2 = rhs(t + 0.5 * h, &(&c + &k1 * (0.5 * h)))?;
            let k3 = rhs(t + 0.5 * h, &(&c + &k2 * (0.5 * h)))?;
            let k4 = rhs(t + h, &(&c + &k3 * h))?;
            c += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
        }
        Ok(c)
    };
    let mut steps = 32;
    let mut coarse = run(steps)?;
    loop {
        let fine = run(2 * steps)?;
        let err = (&fine - &coarse).amax() / 15.0;
        if err <= tol {
            let extrapolated = &fine + (&fine - &coarse) / 15.0;
            return Ok(Transported {
                v: extrapolated.as_slice().to_vec(),
                steps: 2 * steps,
                error: err,
            });
        }
        steps *= 2;
        if steps > MAX_STEPS {
            return Err(Error::Integration(format!(
                "transport from t = {t0} to t = {t1} did not converge: error {err:e} with {steps} steps"
            )));
        }
        coarse = fine;
    }
}
