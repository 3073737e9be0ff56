//! Curvature of cohomogeneity-one metrics: the homogeneous tensor of the
//! principal orbit, the Gauss correction, radial planes and transport.

mod closed;
mod operator;
mod space;
mod trace;
mod transport;

use serde::{Deserialize, Serialize};

pub use closed::{closed_form_ef, closed_form_ef_quadratic, closed_form_thm31, closed_form_xf1, thm31_w, xf1_with};
pub use operator::{metric_operator, MetricOperator};
pub use space::HomogeneousSpace;
pub use trace::{curvature_trace, TraceRow};
pub use transport::{parallel_transport, radial_curvature, transport_with, Transported, TRANSPORT_TOL};

use crate::diagram::{brieskorn_diagram, BrieskornIndex};
use crate::error::Result;
use crate::metric::{MetricJet, MetricProfile};

/// A 2-plane at parameter `t`, either tangent to the orbit or containing `γ′`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum PlaneSpec {
    Orbit { a: Vec<f64>, b: Vec<f64> },
    Radial { v: Vec<f64> },
}

pub fn homogeneous_curvature(
    space: &HomogeneousSpace,
    m: &MetricOperator,
    a: &[f64],
    b: &[f64],
    c: &[f64],
    d: &[f64],
) -> f64 {
    space.curvature(m, a, b, c, d)
}

/// `R(A,B,B,A)` of the cohomogeneity-one metric for Killing fields `A`, `B`.
pub fn orbit_plane_curvature(space: &HomogeneousSpace, m: &MetricOperator, a: &[f64], b: &[f64]) -> f64 {
    let gab = m.inner_prime(a, b);
    space.biquadratic(m, a, b) - 0.25 * m.inner_prime(a, a) * m.inner_prime(b, b) + 0.25 * gab * gab
}

/// `R(A,B,C,D)` of the cohomogeneity-one metric on orbit-tangent vectors.
pub fn orbit_curvature_tensor(
    space: &HomogeneousSpace,
    m: &MetricOperator,
    a: &[f64],
    b: &[f64],
    c: &[f64],
    d: &[f64],
) -> f64 {
    let gp = |x: &[f64], y: &[f64]| m.inner_prime(x, y);
    space.curvature(m, a, b, c, d) - 0.25 * (gp(a, d) * gp(b, c) - gp(a, c) * gp(b, d))
}

/// `R(A1,B,B,A2)` from the biquadratic form.
pub fn orbit_mixed(space: &HomogeneousSpace, m: &MetricOperator, a1: &[f64], a2: &[f64], b: &[f64]) -> f64 {
    let sum: Vec<f64> = a1.iter().zip(a2).map(|(x, y)| x + y).collect();
    0.5 * (orbit_plane_curvature(space, m, &sum, b)
        - orbit_plane_curvature(space, m, a1, b)
        - orbit_plane_curvature(space, m, a2, b))
}

/// `|A|²|B|² − g(A,B)²`.
pub fn plane_area2(m: &MetricOperator, a: &[f64], b: &[f64]) -> f64 {
    m.inner(a, a) * m.inner(b, b) - m.inner(a, b).powi(2)
}

/// Curvature engine bound to one Brieskorn diagram `(n, d)`.
#[derive(Debug, Clone)]
pub struct BrieskornEngine {
    pub n: usize,
    pub d: u32,
    pub space: HomogeneousSpace,
    pub index: BrieskornIndex,
}

impl BrieskornEngine {
    pub fn new(n: usize, d: u32) -> Result<Self> {
        let diagram = brieskorn_diagram(n, d)?;
        Ok(Self {
            n,
            d,
            space: HomogeneousSpace::new(&diagram),
            index: BrieskornIndex { n },
        })
    }

    pub fn for_profile(p: &MetricProfile) -> Result<Self> {
        Self::new(p.n, p.d)
    }

    pub fn dim(&self) -> usize {
        self.index.dim()
    }

    /// Coordinate vector with the given `(slot, coefficient)` entries.
    pub fn vector(&self, entries: &[(usize, f64)]) -> Vec<f64> {
        let mut v = vec![0.0; self.dim()];
        for &(i, c) in entries {
            v[i] += c;
        }
        v
    }

    pub fn x(&self) -> Vec<f64> {
        self.vector(&[(BrieskornIndex::X, 1.0)])
    }

    pub fn y(&self) -> Vec<f64> {
        self.vector(&[(BrieskornIndex::Y, 1.0)])
    }

    pub fn e(&self, i: usize) -> Vec<f64> {
        self.vector(&[(self.index.e(i), 1.0)])
    }

    pub fn f(&self, i: usize) -> Vec<f64> {
        self.vector(&[(self.index.f(i), 1.0)])
    }

    /// `(E_1 + F_2, E_2 + F_1)`.
    pub fn ef_plane(&self) -> (Vec<f64>, Vec<f64>) {
        let a = self.vector(&[(self.index.e(1), 1.0), (self.index.f(2), 1.0)]);
        let b = self.vector(&[(self.index.e(2), 1.0), (self.index.f(1), 1.0)]);
        (a, b)
    }

    pub fn operator(&self, jet: &MetricJet) -> Result<MetricOperator> {
        metric_operator(self.n, jet)
    }

    /// Sectional curvature of a plane at `t`.
    pub fn sectional(&self, p: &MetricProfile, t: f64, plane: &PlaneSpec) -> Result<f64> {
        let m = self.operator(&p.jet(t))?;
        Ok(self.sectional_at(&m, plane))
    }

    pub fn sectional_at(&self, m: &MetricOperator, plane: &PlaneSpec) -> f64 {
        match plane {
            PlaneSpec::Orbit { a, b } => orbit_plane_curvature(&self.space, m, a, b) / plane_area2(m, a, b),
            PlaneSpec::Radial { v } => radial_curvature(m, v) / m.inner(v, v),
        }
    }

    /// `[[R(X,F1,F1,X), R(X,F1,F1,Y)], [·, R(Y,F1,F1,Y)]]` from the engine.
    pub fn xf1_matrix(&self, m: &MetricOperator) -> [[f64; 2]; 2] {
        let (x, y, f) = (self.x(), self.y(), self.f(1));
        let xx = orbit_plane_curvature(&self.space, m, &x, &f);
        let yy = orbit_plane_curvature(&self.space, m, &y, &f);
        let xy = orbit_mixed(&self.space, m, &x, &y, &f);
        [[xx, xy], [xy, yy]]
    }
}
