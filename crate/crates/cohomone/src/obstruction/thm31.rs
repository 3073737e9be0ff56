use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::curvature::{closed_form_thm31, thm31_w, MetricOperator};
use crate::diagram::{Family, GroupDiagram};
use crate::error::{Error, Result};
use crate::metric::Curve;

use super::{BoundVerdict, ClassOneData, Tolerances, WitnessCertificate, WitnessKind};

/// The part of a class-one metric that the bound consumes: `h(t)` on the
/// `W2` row and the Gram data on `span{E_{s,k}}`, modelled as
/// `(1+αt²)` off the collapsing directions and `(ct)²` on them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockProfile {
    #[serde(rename = "L")]
    pub length: f64,
    pub h: Curve,
    pub alpha: f64,
    pub c: f64,
}

impl BlockProfile {
    /// `h(0) = 1`, `h′(0) = 0`, `h(L) = 0`, `h` concave, Gram positive on `(0, L]`.
    pub fn validate(&self, tol: f64) -> Result<()> {
        let j0 = self.h.jet(0.0);
        let jl = self.h.jet(self.length);
        let fail = |m: String| Err(Error::Input(format!("block profile rejected: {m}")));
        if (j0.v - 1.0).abs() > tol || j0.d1.abs() > tol {
            return fail(format!("needs h(0) = 1, h′(0) = 0 (got {}, {})", j0.v, j0.d1));
        }
        if jl.v.abs() > tol {
            return fail(format!("needs h(L) = 0 (got {})", jl.v));
        }
        for i in 0..=200 {
            let t = self.length * i as f64 / 200.0;
            if self.h.jet(t).d2 > tol {
                return fail(format!("h is not concave at t = {t}"));
            }
        }
        if 1.0 + self.alpha * self.length * self.length <= 0.0 || self.c <= 0.0 {
            return fail("Gram data is not positive".into());
        }
        Ok(())
    }

    fn gram(&self, t: f64, par: &DMatrix<f64>) -> DMatrix<f64> {
        let dim = par.nrows();
        let perp = DMatrix::identity(dim, dim) - par;
        perp * (1.0 + self.alpha * t * t) + par * (self.c * t).powi(2)
    }
}

/// `h = 1 − (1−b)s² − bs⁴` with `s = t/L`, concave for `b ∈ [0, 1]`.
pub fn random_block_profile(seed: u64) -> BlockProfile {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let length: f64 = rng.random_range(0.8..1.6);
    let b: f64 = rng.random_range(0.0..0.8);
    let alpha = rng.random_range(-0.3..0.5);
    let c = rng.random_range(0.5..2.0);
    let l2 = length * length;
    BlockProfile {
        length,
        h: Curve::poly(vec![1.0, 0.0, -(1.0 - b) / l2, 0.0, -b / (l2 * l2)]),
        alpha,
        c,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Thm31Report {
    pub l: usize,
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub eps: f64,
    /// `a ∈ SO(k−1)` with `w ⊥ k−`.
    pub a: Vec<Vec<f64>>,
    /// `max |w − 2u|` for the chosen unit vector `u`.
    pub w_residual: f64,
    /// `sup Q(w, P_t⁻¹w)` on the grid in `(0, ε]`.
    pub c_bound: f64,
    /// `max (log δ)′` on the same grid; non-negative curvature needs `≤ √C`.
    pub max_log_delta_prime: f64,
    pub verdict: BoundVerdict,
    pub witness: Option<WitnessCertificate>,
}

/// Runs the class-one bound on a block profile.
pub fn thm31_certify(diagram: &GroupDiagram<f64>, block: &BlockProfile, tol: &Tolerances) -> Result<Thm31Report> {
    let (l, m, k) = match diagram.family {
        Family::Theorem31 { l, m, k } => (l, m, k),
        _ => return Err(Error::Input("thm31_certify needs a class-one diagram".into())),
    };
    let n = diagram.n;
    if n < k + 2 {
        return Err(Error::Input(format!("need n ≥ k + 2 (k = {k}, n = {n})")));
    }
    block.validate(1e-8)?;
    let dim = k - 1;

    // Projections of k− onto span{E_{s,k}}, orthonormalized.
    let mut vs: Vec<DVector<f64>> = Vec::new();
    for z in &diagram.kminus_basis {
        let mut v = DVector::from_fn(dim, |s, _| *z.entry(s, k - 1));
        for o in &vs {
            v -= o * o.dot(&v);
        }
        let nv = v.norm();
        if nv > 1e-10 {
            vs.push(v / nv);
        }
    }
    let mut par = DMatrix::zeros(dim, dim);
    for v in &vs {
        par += v * v.transpose();
    }
    let perp = DMatrix::identity(dim, dim) - &par;
    let (best, norm) = (0..dim)
        .map(|s| (s, perp.column(s).norm()))
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .expect("k ≥ 2");
    if norm < 1e-9 {
        return Err(Error::Configuration(
            "no direction in the last column is perpendicular to k−; the sphere action is transitive".into(),
        ));
    }
    let u: DVector<f64> = perp.column(best) / norm;
    let a = rotation_with_last_column(&u);
    let a_rows: Vec<Vec<f64>> = (0..dim).map(|i| (0..dim).map(|j| a[(i, j)]).collect()).collect();
    let w = thm31_w(k, n, &a_rows)?;
    let w_residual = (0..dim)
        .map(|s| (w.entry(s, k - 1) - 2.0 * u[s]).abs())
        .fold(0.0, f64::max);

    let eps = tol.eps_for(block.length);
    let pts = (tol.grid / 10).max(20);
    let mut c_bound: f64 = 0.0;
    let mut max_ld: f64 = f64::NEG_INFINITY;
    let mut worst: Option<(f64, f64, ClassOneData)> = None;
    for i in 1..=pts {
        let t = eps * i as f64 / pts as f64;
        let h = block.h.jet(t);
        let delta = 1.0 - h.v * h.v;
        let dp = -2.0 * h.v * h.d1;
        let g = block.gram(t, &par);
        let op = MetricOperator::constant(g.clone())?;
        let wv = DVector::from_fn(dim, |s, _| *w.entry(s, k - 1));
        c_bound = c_bound.max(wv.dot(&(&op.g_inv * &wv)));
        if delta > 0.0 {
            max_ld = max_ld.max(dp / delta);
        }
        let r = closed_form_thm31(diagram, &op, delta, dp, &a_rows)?;
        let area = (1.0 + h.v * h.v).powi(2);
        let sec = r / area;
        if worst.as_ref().is_none_or(|w| sec < w.1) {
            let data = ClassOneData {
                l,
                m,
                n,
                a: a_rows.clone(),
                gram: (0..dim).map(|i| (0..dim).map(|j| g[(i, j)]).collect()).collect(),
                delta,
                delta_prime: dp,
                area,
            };
            worst = Some((t, sec, data));
        }
    }
    let contradiction = max_ld > c_bound.sqrt() + tol.inequality;
    let witness = worst.and_then(|(t, sec, data)| {
        (sec < -tol.confirm).then_some(WitnessCertificate {
            kind: WitnessKind::Thm31Bound,
            t,
            interval: Some([0.0, eps]),
            plane: None,
            r: None,
            value: sec,
            residual: None,
            tol: 1e-12,
            class_one: Some(data),
        })
    });
    let verdict = if contradiction || witness.is_some() {
        BoundVerdict::Contradiction
    } else {
        BoundVerdict::NoContradiction
    };
    Ok(Thm31Report {
        l,
        m,
        n,
        k,
        eps,
        a: a_rows,
        w_residual,
        c_bound,
        max_log_delta_prime: max_ld,
        verdict,
        witness,
    })
}

/// An element of `SO(dim)` whose last column is the unit vector `u`.
fn rotation_with_last_column(u: &DVector<f64>) -> DMatrix<f64> {
    let dim = u.len();
    let mut e = DVector::zeros(dim);
    e[dim - 1] = 1.0;
    let w = &e - u;
    if w.norm() < 1e-14 {
        return DMatrix::identity(dim, dim);
    }
    // Householder reflection swapping e and u, then fix the determinant.
    let mut h = DMatrix::identity(dim, dim) - (&w * w.transpose()) * (2.0 / w.dot(&w));
    if dim >= 2 {
        h.column_mut(0).neg_mut();
    } else {
        h = -h;
    }
    h
}
