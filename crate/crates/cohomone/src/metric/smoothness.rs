use serde::{Deserialize, Serialize};

use super::MetricProfile;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Clause {
    pub name: String,
    pub required: f64,
    pub actual: f64,
    pub residual: f64,
    /// Clauses that come from total geodesy of `B−` only apply for `d ≥ 3`.
    pub applicable: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmoothnessReport {
    pub d: u32,
    pub tol: f64,
    /// `√2/d`, the required `f1′(0)`.
    pub f1_slope_target: f64,
    pub clauses: Vec<Clause>,
    pub positive_definite: bool,
    /// First grid point where positive definiteness fails.
    pub pd_violation: Option<f64>,
    pub passed: bool,
}

impl SmoothnessReport {
    pub fn clause(&self, name: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.name == name)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Clause> {
        self.clauses.iter().filter(|c| c.applicable && !c.passed)
    }
}

pub const PD_GRID: usize = 1000;

/// Evaluates the boundary conditions at `t = 0` and `t = L` plus positive
/// definiteness on a 1000-point grid. Never fails; failed clauses are reported.
pub fn smoothness_check(p: &MetricProfile, tol: f64) -> SmoothnessReport {
    let j0 = p.jet(0.0);
    let jl = p.jet(p.length);
    let target = std::f64::consts::SQRT_2 / f64::from(p.d);
    let geodesic_clauses = p.d >= 3;
    let mut clauses = Vec::new();
    let mut push = |name: &str, actual: f64, required: f64, applicable: bool| {
        let residual = (actual - required).abs();
        clauses.push(Clause {
            name: name.to_string(),
            required,
            actual,
            residual,
            applicable,
            passed: residual <= tol,
        });
    };
    push("f1(0)=0", j0.f1.v, 0.0, true);
    push("f1'(0)=sqrt2/d", j0.f1.d1, target, true);
    push("f12(0)=0", j0.f12.v, 0.0, true);
    push("f12'(0)=0", j0.f12.d1, 0.0, true);
    push("h1(0)=h2(0)", j0.h1.v - j0.h2.v, 0.0, true);
    push("h1'(0)=0", j0.h1.d1, 0.0, geodesic_clauses);
    push("h2'(0)=0", j0.h2.d1, 0.0, geodesic_clauses);
    push("h12(0)=0", j0.h12.v, 0.0, true);
    push("h12'(0)=0", j0.h12.d1, 0.0, true);
    push("h1'(L)=0", jl.h1.d1, 0.0, true);
    push("h2(L)=0", jl.h2.v, 0.0, true);
    let pd_violation = p.positive_definite_violation(PD_GRID);
    let positive_definite = pd_violation.is_none();
    let passed = positive_definite && clauses.iter().all(|c| !c.applicable || c.passed);
    SmoothnessReport {
        d: p.d,
        tol,
        f1_slope_target: target,
        clauses,
        positive_definite,
        pd_violation,
        passed,
    }
}
