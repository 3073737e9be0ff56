//! Oracle suites for the curvature engine.
//!
//! Each suite compares the engine with an independent answer: the
//! bi-invariant formula on `SO(3)` and `SO(4)`, the unit sphere, the closed
//! forms of the reduced Brieskorn model, and exact bracket identities.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::curvature::{
    closed_form_ef, closed_form_xf1, homogeneous_curvature, orbit_plane_curvature, parallel_transport, plane_area2,
    thm31_w, BrieskornEngine, HomogeneousSpace, MetricOperator,
};
use crate::diagram::{brieskorn_diagram, FloatFrame};
use crate::error::{Error, Result};
use crate::liealg::{basis_element, bracket, AlgElement};
use crate::metric::{preset_round, Jet, MetricJet};
use crate::scalar::{Rational, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    BiInvariant,
    Sphere,
    ClosedForm,
    Brackets,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::BiInvariant, Suite::Sphere, Suite::ClosedForm, Suite::Brackets];

    pub fn name(self) -> &'static str {
        match self {
            Suite::BiInvariant => "bi-invariant",
            Suite::Sphere => "sphere",
            Suite::ClosedForm => "closed-form",
            Suite::Brackets => "brackets",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Input(format!("unknown suite {s:?}")))
    }
}

/// Deliberate defects, used to check that the suites can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    #[default]
    None,
    /// Replaces the shape operator `S` by `−S` in radial curvature.
    ShapeSign,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: bool,
    pub cases: usize,
    pub failures: usize,
    /// Largest error seen, in the suite's own measure.
    pub worst: f64,
    pub tol: f64,
    pub detail: String,
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {} cases, {} failures, worst {:.3e} (tol {:.0e}){}",
            if self.passed { "PASS" } else { "FAIL" },
            self.suite,
            self.cases,
            self.failures,
            self.worst,
            self.tol,
            if self.detail.is_empty() { String::new() } else { format!("; {}", self.detail) }
        )
    }
}

#[derive(Default)]
struct Tally {
    cases: usize,
    failures: usize,
    worst: f64,
}

impl Tally {
    fn record(&mut self, err: f64, tol: f64) {
        self.cases += 1;
        if !(err <= tol) {
            self.failures += 1;
        }
        if err.is_nan() || err > self.worst {
            self.worst = err;
        }
    }

    fn finish(self, suite: Suite, tol: f64, detail: String) -> SuiteReport {
        SuiteReport {
            suite,
            passed: self.failures == 0 && self.cases > 0,
            cases: self.cases,
            failures: self.failures,
            worst: self.worst,
            tol,
            detail,
        }
    }
}

pub fn run_suite(suite: Suite, seed: u64, fault: Fault) -> Result<SuiteReport> {
    match suite {
        Suite::BiInvariant => bi_invariant(seed),
        Suite::Sphere => sphere(seed, fault),
        Suite::ClosedForm => closed_forms(seed),
        Suite::Brackets => brackets(seed),
    }
}

pub fn run_all(seed: u64, fault: Fault) -> Result<Vec<SuiteReport>> {
    Suite::ALL.into_iter().map(|s| run_suite(s, seed, fault)).collect()
}

fn gaussian_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-1.0..1.0)).collect()
}

/// `SO(n)` with `Q = −½ tr`, as a homogeneous space with trivial isotropy.
fn group_space(n: usize) -> Result<(HomogeneousSpace, Vec<AlgElement<f64>>)> {
    let mut basis = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            basis.push(basis_element::<f64>(i, j, n)?);
        }
    }
    let frame = FloatFrame {
        n,
        so2_weight: 1.0,
        complement: basis.clone(),
        h: Vec::new(),
    };
    Ok((HomogeneousSpace::from_frame(&frame), basis))
}

const BI_INVARIANT_TOL: f64 = 1e-10;

fn bi_invariant(seed: u64) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = Tally::default();
    for n in [3, 4] {
        let (space, basis) = group_space(n)?;
        let dim = basis.len();
        let m = MetricOperator::constant(DMatrix::identity(dim, dim))?;
        for _ in 0..100 {
            let a = gaussian_vec(&mut rng, dim);
            let b = gaussian_vec(&mut rng, dim);
            let area = plane_area2(&m, &a, &b);
            let sec = homogeneous_curvature(&space, &m, &a, &b, &b, &a) / area;
            let expected = 0.25 * space.bracket_norm2(&a, &b) / area;
            tally.record((sec - expected).abs() / expected.abs().max(1e-300), BI_INVARIANT_TOL);
        }
    }
    Ok(tally.finish(Suite::BiInvariant, BI_INVARIANT_TOL, "SO(3), SO(4), relative error".into()))
}

const SPHERE_TOL: f64 = 1e-6;

fn sphere(seed: u64, fault: Fault) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = Tally::default();
    let mut holonomy = 0.0f64;
    for n in [4, 5] {
        let p = preset_round(n)?;
        let engine = BrieskornEngine::for_profile(&p)?;
        let dim = engine.dim();
        for _ in 0..60 {
            let t = p.length * rng.random_range(0.05..0.95);
            let m = engine.operator(&p.jet(t))?;
            let a = gaussian_vec(&mut rng, dim);
            let b = gaussian_vec(&mut rng, dim);
            let sec = orbit_plane_curvature(&engine.space, &m, &a, &b) / plane_area2(&m, &a, &b);
            tally.record((sec - 1.0).abs(), SPHERE_TOL);
            let v = gaussian_vec(&mut rng, dim);
            let sec = radial(&m, &v, fault) / m.inner(&v, &v);
            tally.record((sec - 1.0).abs(), SPHERE_TOL);
        }
        let (t0, t1) = (0.1 * p.length, 0.9 * p.length);
        for _ in 0..3 {
            let v = gaussian_vec(&mut rng, dim);
            let there = parallel_transport(&p, t0, t1, &v)?;
            let back = parallel_transport(&p, t1, t0, &there.v)?;
            let drift = v.iter().zip(&back.v).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
            holonomy = holonomy.max(drift);
            tally.record(drift, SPHERE_TOL);
        }
    }
    Ok(tally.finish(
        Suite::Sphere,
        SPHERE_TOL,
        format!("round preset n = 4, 5; holonomy drift {holonomy:.1e}"),
    ))
}

fn radial(m: &MetricOperator, v: &[f64], fault: Fault) -> f64 {
    let sign = match fault {
        Fault::None => 1.0,
        Fault::ShapeSign => -1.0,
    };
    let s = m.shape() * sign;
    let op = m.shape_prime() * sign + &s * &s;
    -m.inner((op * DVector::from_column_slice(v)).as_slice(), v)
}

const CLOSED_FORM_TOL: f64 = 1e-8;

/// A random jet of the reduced model with positive definite metric.
pub fn random_reduced_jet(rng: &mut impl Rng) -> MetricJet {
    let mut jet = |lo: f64, hi: f64| Jet {
        v: rng.random_range(lo..hi),
        d1: rng.random_range(-1.0..1.0),
        d2: rng.random_range(-1.0..1.0),
    };
    let f1 = jet(0.2, 1.5);
    let f2 = jet(0.4, 1.5);
    let mut f12 = jet(-1.0, 1.0);
    f12.v *= 0.8 * f1.v * f2.v;
    let h2 = jet(0.05, 1.0);
    MetricJet::reduced(0.5, f1, f2, f12, h2)
}

fn closed_forms(seed: u64) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = Tally::default();
    let rel = |x: f64, y: f64| (x - y).abs() / y.abs().max(1e-6);
    for (n, d) in [(4, 1), (4, 3), (5, 2), (6, 5)] {
        let engine = BrieskornEngine::new(n, d)?;
        let (a, b) = engine.ef_plane();
        if !engine.space.commute(&a, &b, 0.0) {
            return Err(Error::Input(format!("[A, B] ≠ 0 for n = {n}, d = {d}")));
        }
        for _ in 0..30 {
            let jet = random_reduced_jet(&mut rng);
            let m = engine.operator(&jet)?;
            tally.record(rel(orbit_plane_curvature(&engine.space, &m, &a, &b), closed_form_ef(&jet)?), CLOSED_FORM_TOL);
            let got = engine.xf1_matrix(&m);
            let want = closed_form_xf1(&jet);
            for (i, j) in [(0, 0), (0, 1), (1, 1)] {
                tally.record(rel(got[i][j], want[i][j]), CLOSED_FORM_TOL);
            }
        }
    }
    Ok(tally.finish(Suite::ClosedForm, CLOSED_FORM_TOL, "EF plane and XF1 block, relative error".into()))
}

fn identity(size: usize) -> Vec<Vec<Rational>> {
    (0..size)
        .map(|i| (0..size).map(|j| Rational::from_i64(i64::from(i == j))).collect())
        .collect()
}

/// A rational rotation in `SO(size)`: a product of Givens rotations with
/// Pythagorean cosines.
pub fn rational_rotation(size: usize, rng: &mut impl Rng) -> Vec<Vec<Rational>> {
    let mut a = identity(size);
    for _ in 0..size + 2 {
        let i = rng.random_range(0..size);
        let j = (i + rng.random_range(1..size)) % size;
        let p: i64 = rng.random_range(1..6);
        let q: i64 = rng.random_range(1..6) * if rng.random_bool(0.5) { 1 } else { -1 };
        let den = p * p + q * q;
        let c = Rational::from_ratio(p * p - q * q, den);
        let s = Rational::from_ratio(2 * p * q, den);
        for row in a.iter_mut() {
            let (x, y) = (row[i].clone(), row[j].clone());
            row[i] = c.clone() * x.clone() - s.clone() * y.clone();
            row[j] = s.clone() * x + c.clone() * y;
        }
    }
    a
}

fn brackets(seed: u64) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = Tally::default();
    for k in [5usize, 7, 9] {
        let n = k + 2;
        for trial in 0..12 {
            let a = if trial == 0 { identity(k - 1) } else { rational_rotation(k - 1, &mut rng) };
            let w = thm31_w::<Rational>(k, n, &a)?;
            let mut expected = AlgElement::<Rational>::zero(n);
            for s in 0..k - 1 {
                let coeff = a[s][k - 2].clone() * Rational::from_i64(2);
                expected = expected + basis_element::<Rational>(s + 1, k, n)? * coeff;
            }
            tally.record(if w == expected { 0.0 } else { 1.0 }, 0.0);
        }
    }
    // Jacobi on the Brieskorn algebra, exactly.
    let diagram = brieskorn_diagram(4, 3)?;
    let basis: Vec<&AlgElement<Rational>> = diagram.complement.iter().chain(diagram.h_basis.iter()).collect();
    for x in &basis {
        for y in &basis {
            for z in &basis {
                let j = bracket(x, &bracket(y, z)?)? + bracket(y, &bracket(z, x)?)? + bracket(z, &bracket(x, y)?)?;
                tally.record(if j.is_zero() { 0.0 } else { 1.0 }, 0.0);
            }
        }
    }
    Ok(tally.finish(Suite::Brackets, 0.0, "exact: w identity for k = 5, 7, 9 and Jacobi".into()))
}
