use nalgebra::DMatrix;

use crate::diagram::BrieskornIndex;
use crate::error::{Error, Result};
use crate::metric::MetricJet;

/// `G_t`, its inverse and two `t`-derivatives in a Q-orthonormal complement basis.
#[derive(Debug, Clone)]
pub struct MetricOperator {
    pub t: f64,
    pub g: DMatrix<f64>,
    pub g_inv: DMatrix<f64>,
    pub dg: DMatrix<f64>,
    pub ddg: DMatrix<f64>,
}

impl MetricOperator {
    pub fn new(t: f64, g: DMatrix<f64>, dg: DMatrix<f64>, ddg: DMatrix<f64>) -> Result<Self> {
        let dim = g.nrows();
        if g.ncols() != dim || dg.shape() != (dim, dim) || ddg.shape() != (dim, dim) {
            return Err(Error::Input("metric blocks must be square and of equal size".into()));
        }
        let chol = g.clone().cholesky().ok_or_else(|| degenerate(&g, t))?;
        let g_inv = chol.inverse();
        Ok(Self { t, g, g_inv, dg, ddg })
    }

    /// A `t`-independent metric.
    pub fn constant(g: DMatrix<f64>) -> Result<Self> {
        let z = DMatrix::zeros(g.nrows(), g.ncols());
        Self::new(0.0, g, z.clone(), z)
    }

    pub fn dim(&self) -> usize {
        self.g.nrows()
    }

    pub fn inner(&self, a: &[f64], b: &[f64]) -> f64 {
        bilinear(&self.g, a, b)
    }

    pub fn inner_prime(&self, a: &[f64], b: &[f64]) -> f64 {
        bilinear(&self.dg, a, b)
    }

    /// Shape operator `S = ½ G⁻¹G′`.
    pub fn shape(&self) -> DMatrix<f64> {
        &self.g_inv * &self.dg * 0.5
    }

    /// `S′ = ½(G⁻¹G″ − G⁻¹G′G⁻¹G′)`.
    pub fn shape_prime(&self) -> DMatrix<f64> {
        let a = &self.g_inv * &self.dg;
        (&self.g_inv * &self.ddg - &a * &a) * 0.5
    }
}

pub(crate) fn bilinear(m: &DMatrix<f64>, a: &[f64], b: &[f64]) -> f64 {
    let mut acc = 0.0;
    for i in 0..m.nrows() {
        if a[i] == 0.0 {
            continue;
        }
        let mut row = 0.0;
        for j in 0..m.ncols() {
            row += m[(i, j)] * b[j];
        }
        acc += a[i] * row;
    }
    acc
}

fn degenerate(g: &DMatrix<f64>, t: f64) -> Error {
    let dim = g.nrows();
    for k in 1..=dim {
        let minor = g.view((0, 0), (k, k)).determinant();
        if !(minor > 0.0) {
            return Error::DegenerateMetric(format!(
                "G_t is not positive definite at t = {t}: leading {k}×{k} minor = {minor:e}"
            ));
        }
    }
    Error::DegenerateMetric(format!("G_t is numerically singular at t = {t}"))
}

/// Gram matrix of the Brieskorn complement `[X, Y, E_i…, F_i…]` from a profile jet.
pub fn metric_operator(n: usize, jet: &MetricJet) -> Result<MetricOperator> {
    let idx = BrieskornIndex { n };
    let dim = idx.dim();
    let mut g = DMatrix::zeros(dim, dim);
    let mut dg = DMatrix::zeros(dim, dim);
    let mut ddg = DMatrix::zeros(dim, dim);
    let mut square = |i: usize, f: crate::metric::Jet| {
        g[(i, i)] = f.v * f.v;
        dg[(i, i)] = 2.0 * f.v * f.d1;
        ddg[(i, i)] = 2.0 * (f.d1 * f.d1 + f.v * f.d2);
    };
    square(BrieskornIndex::X, jet.f1);
    square(BrieskornIndex::Y, jet.f2);
    for i in 1..=n - 2 {
        square(idx.e(i), jet.h1);
        square(idx.f(i), jet.h2);
    }
    let mut cross = |i: usize, j: usize, f: crate::metric::Jet| {
        for (m, v) in [(&mut g, f.v), (&mut dg, f.d1), (&mut ddg, f.d2)] {
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    };
    cross(BrieskornIndex::X, BrieskornIndex::Y, jet.f12);
    for i in 1..=n - 2 {
        cross(idx.e(i), idx.f(i), jet.h12);
    }
    MetricOperator::new(jet.t, g, dg, ddg)
}
