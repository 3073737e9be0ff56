//! Obstruction logic: inequality checks, replayable witnesses and the
//! bounds that rule out non-negative curvature.

mod bound;
mod checks;
mod search;
mod secvar;
mod thm31;

use serde::{Deserialize, Serialize};

pub use bound::{bound_analysis, regularity_diagnostic, regularity_from_delta, BoundAnalysis, BoundPoint, BoundVerdict, RegularityReport};
pub use checks::{
    check_concavity, check_cond2, check_determinant, delta_trace, determinant_witness, CheckOutcome, DeltaTrace,
    DeterminantResidual,
};
pub use search::{find_witness, Coverage, SearchParams, Verdict, WitnessReport};
pub use secvar::{second_variation_check, SecondVariationReport};
pub use thm31::{random_block_profile, thm31_certify, BlockProfile, Thm31Report};

use crate::curvature::{closed_form_thm31, BrieskornEngine, MetricOperator, PlaneSpec};
use crate::diagram::{harmonic_rep, theorem31_diagram};
use crate::error::{Error, Result};
use crate::metric::MetricProfile;

/// Tolerances recorded in every report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Inequality residuals beyond this count as violations.
    pub inequality: f64,
    /// A witness plane must have sectional curvature below `−confirm`.
    pub confirm: f64,
    /// Fixed `ε`; `None` means `min(0.1·L, 0.05)`.
    pub eps: Option<f64>,
    pub grid: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            inequality: 1e-7,
            confirm: 1e-9,
            eps: None,
            grid: 2000,
        }
    }
}

impl Tolerances {
    pub fn eps_for(&self, length: f64) -> f64 {
        self.eps.unwrap_or_else(|| (0.1 * length).min(0.05))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    OrbitPlane,
    Determinant,
    Concavity,
    SecondVariation,
    Thm31Bound,
}

/// Data needed to re-evaluate a class-one bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassOneData {
    pub l: usize,
    pub m: usize,
    pub n: usize,
    pub a: Vec<Vec<f64>>,
    /// Gram matrix of `g_t` on `span{E_{s,k}}`.
    pub gram: Vec<Vec<f64>>,
    pub delta: f64,
    pub delta_prime: f64,
    /// `|A|²|B|² − g(A,B)²` for the plane `A = X_1+Y_2`, `B = X_2+Y_1`.
    pub area: f64,
}

/// A replayable record of a negative curvature configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessCertificate {
    pub kind: WitnessKind,
    pub t: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interval: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plane: Option<PlaneSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    /// Sectional curvature of the plane, or `∫K` for an integral-only
    /// second-variation record.
    pub value: f64,
    /// Inequality residual that led to the plane, when there is one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    pub tol: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_one: Option<ClassOneData>,
}

impl WitnessCertificate {
    pub(crate) fn plane(kind: WitnessKind, t: f64, plane: PlaneSpec, value: f64, tol: f64) -> Self {
        Self {
            kind,
            t,
            interval: None,
            plane: Some(plane),
            r: None,
            value,
            residual: None,
            tol,
            class_one: None,
        }
    }

    /// Whether the certificate names a concrete 2-plane.
    pub fn is_planar(&self) -> bool {
        self.plane.is_some() || self.class_one.is_some()
    }

    /// Re-evaluates the cited quantity on `p`.
    pub fn replay(&self, p: &MetricProfile) -> Result<f64> {
        if let Some(plane) = &self.plane {
            return BrieskornEngine::for_profile(p)?.sectional(p, self.t, plane);
        }
        match (self.kind, self.interval) {
            (WitnessKind::SecondVariation, Some([a, b])) => {
                let rep = secvar::transport_curvature(p, a, b, self.tol)?;
                Ok(rep.integral)
            }
            _ => self.replay_class_one(),
        }
    }

    /// Re-evaluates a class-one bound from the stored data alone.
    pub fn replay_class_one(&self) -> Result<f64> {
        let data = self
            .class_one
            .as_ref()
            .ok_or_else(|| Error::Input("certificate carries no class-one data".into()))?;
        let rep = harmonic_rep(data.l, data.m)?;
        let diagram = theorem31_diagram(&rep, data.n)?;
        let dim = data.gram.len();
        let g = nalgebra::DMatrix::from_fn(dim, dim, |i, j| data.gram[i][j]);
        let op = MetricOperator::constant(g)?;
        Ok(closed_form_thm31(&diagram, &op, data.delta, data.delta_prime, &data.a)? / data.area)
    }

    /// `|replay − value| ≤ tol`.
    pub fn verify(&self, p: Option<&MetricProfile>) -> Result<bool> {
        let v = match p {
            Some(p) => self.replay(p)?,
            None => self.replay_class_one()?,
        };
        Ok((v - self.value).abs() <= self.tol.max(1e-12))
    }
}
