use serde::{Deserialize, Serialize};

use crate::curvature::BrieskornEngine;
use crate::error::Result;
use crate::metric::{smoothness_check, MetricProfile};

use super::bound::{bound_analysis, BoundVerdict};
use super::checks::{check_concavity, scan_cond2, scan_determinant, CheckOutcome};
use super::secvar::second_variation_check;
use super::{Tolerances, WitnessCertificate};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SearchParams {
    pub tol: Tolerances,
    /// Run every check and keep every certificate instead of stopping at the first.
    pub exhaustive: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum Verdict {
    Witness,
    None,
    NotApplicable,
}

/// What each stage looked at.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Coverage {
    pub stages: Vec<StageSummary>,
    pub grid_points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageSummary {
    pub stage: String,
    pub ran: bool,
    pub passed: Option<bool>,
    pub violations: usize,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub verdict: Verdict,
    pub certificate: Option<WitnessCertificate>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<WitnessCertificate>,
    pub coverage: Coverage,
    pub tolerances: Tolerances,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl WitnessReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn stage(name: &str, out: &CheckOutcome) -> StageSummary {
    StageSummary {
        stage: name.into(),
        ran: true,
        passed: Some(out.passed),
        violations: out.violations,
        note: None,
    }
}

/// Runs the checks in proof order: smoothness gate, second variation,
/// concavity, the orbit-plane inequality, the determinant with an `r`-scan,
/// and the endgame bound. Planar certificates win over integral-only ones.
pub fn find_witness(p: &MetricProfile, params: &SearchParams) -> Result<WitnessReport> {
    let tol = params.tol;
    let mut coverage = Coverage {
        stages: Vec::new(),
        grid_points: tol.grid.saturating_sub(1),
    };
    let mut notes = Vec::new();
    let mut found: Vec<WitnessCertificate> = Vec::new();
    let report = |verdict, found: Vec<WitnessCertificate>, coverage, notes| {
        let certificate = found
            .iter()
            .find(|c| c.is_planar())
            .or_else(|| found.first())
            .cloned();
        WitnessReport {
            verdict,
            certificate,
            certificates: if params.exhaustive { found } else { Vec::new() },
            coverage,
            tolerances: tol,
            notes,
        }
    };

    let smooth = smoothness_check(p, 1e-8);
    coverage.stages.push(StageSummary {
        stage: "smoothness".into(),
        ran: true,
        passed: Some(smooth.passed),
        violations: smooth.failed().count() + usize::from(!smooth.positive_definite),
        note: None,
    });
    if !smooth.passed {
        let failed: Vec<String> = smooth.failed().map(|c| format!("{} (residual {:e})", c.name, c.residual)).collect();
        notes.push(format!("boundary conditions fail: {}", failed.join(", ")));
        return Ok(report(Verdict::NotApplicable, found, coverage, notes));
    }
    let engine = BrieskornEngine::for_profile(p)?;
    let done = |found: &Vec<WitnessCertificate>| !params.exhaustive && found.iter().any(|c| c.is_planar());

    if p.d >= 3 {
        let sv = second_variation_check(p, &tol)?;
        coverage.stages.push(StageSummary {
            stage: "second-variation".into(),
            ran: true,
            passed: Some(sv.passed),
            violations: usize::from(!sv.passed),
            note: Some(format!("integral {:e}, min K {:e}", sv.integral, sv.min_k)),
        });
        found.extend(sv.witness);
    } else {
        coverage.stages.push(StageSummary {
            stage: "second-variation".into(),
            ran: false,
            passed: None,
            violations: 0,
            note: Some("needs d ≥ 3".into()),
        });
    }

    if !done(&found) {
        let c = check_concavity(p, tol.grid, &tol)?;
        coverage.stages.push(stage("concavity", &c));
        found.extend(c.witness);
    }
    if !done(&found) {
        let c = scan_cond2(p, &engine, &tol);
        coverage.stages.push(stage("orbit-plane", &c));
        found.extend(c.witness);
    }
    if !done(&found) {
        let c = scan_determinant(p, &engine, &tol);
        coverage.stages.push(stage("determinant", &c));
        found.extend(c.witness);
    }
    if !done(&found) {
        let b = bound_analysis(p, tol.eps_for(p.length), tol.inequality);
        coverage.stages.push(StageSummary {
            stage: "bound".into(),
            ran: b.verdict != BoundVerdict::NotApplicable,
            passed: Some(b.verdict != BoundVerdict::Contradiction),
            violations: usize::from(b.verdict == BoundVerdict::Contradiction),
            note: Some(if b.implied_bound.is_finite() {
                format!("implied f1'(0) ≥ {:.6}, target {:.6}", b.implied_bound, b.target)
            } else {
                b.diagnostics.first().cloned().unwrap_or_else(|| "not applicable".into())
            }),
        });
        if b.verdict == BoundVerdict::Contradiction {
            notes.push("endgame bound contradicts f1'(0) = √2/d but no catalog plane was confirmed".into());
        }
    }
    let verdict = if found.is_empty() { Verdict::None } else { Verdict::Witness };
    Ok(report(verdict, found, coverage, notes))
}
