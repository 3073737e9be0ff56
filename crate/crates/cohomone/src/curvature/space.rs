use nalgebra::DMatrix;

use crate::diagram::{FloatFrame, GroupDiagram};
use crate::liealg::{bracket_unchecked, q_weighted, AlgElement};
use crate::scalar::Scalar;

use super::operator::MetricOperator;

/// Structure constants of `g = n ⊕ h` in a Q-orthonormal basis whose first
/// `dim` vectors span the complement `n`.
#[derive(Debug, Clone)]
pub struct HomogeneousSpace {
    dim: usize,
    total: usize,
    /// `c[(a·total + j)·total + k] = Q([b_a, b_j], b_k)` for `a < dim`.
    c: Vec<f64>,
}

impl HomogeneousSpace {
    pub fn from_frame(frame: &FloatFrame) -> Self {
        let mut basis: Vec<AlgElement<f64>> = frame.complement.clone();
        basis.extend(frame.h.iter().cloned());
        let dim = frame.complement.len();
        let total = basis.len();
        let mut c = vec![0.0; dim * total * total];
        for a in 0..dim {
            for j in 0..total {
                let br = bracket_unchecked(&basis[a], &basis[j]);
                if br.is_zero() {
                    continue;
                }
                for (k, bk) in basis.iter().enumerate() {
                    c[(a * total + j) * total + k] = q_weighted(&br, bk, &frame.so2_weight);
                }
            }
        }
        Self { dim, total, c }
    }

    pub fn new<S: Scalar>(diagram: &GroupDiagram<S>) -> Self {
        Self::from_frame(&diagram.float_frame())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn coeff(&self, a: usize, j: usize, k: usize) -> f64 {
        self.c[(a * self.total + j) * self.total + k]
    }

    /// `[X, Y]` in `g`-coordinates (complement first, then `h`).
    pub fn bracket(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.total];
        for a in 0..self.dim {
            if x[a] == 0.0 {
                continue;
            }
            for b in 0..self.dim {
                if y[b] == 0.0 {
                    continue;
                }
                let s = x[a] * y[b];
                for (k, o) in out.iter_mut().enumerate() {
                    *o += s * self.coeff(a, b, k);
                }
            }
        }
        out
    }

    /// `[X, Z]_n` for `X ∈ n` and `Z ∈ g`.
    fn bracket_n(&self, x: &[f64], z: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        for a in 0..self.dim {
            if x[a] == 0.0 {
                continue;
            }
            for (j, &zj) in z.iter().enumerate() {
                if zj == 0.0 {
                    continue;
                }
                let s = x[a] * zj;
                for (k, o) in out.iter_mut().enumerate() {
                    *o += s * self.coeff(a, j, k);
                }
            }
        }
        out
    }

    /// Matrix of `Z ↦ [Z, P]_n` on `n`.
    fn ad_right(&self, p: &[f64]) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for k in 0..self.dim {
            for a in 0..self.dim {
                if p[a] == 0.0 {
                    continue;
                }
                for l in 0..self.dim {
                    m[(l, k)] += p[a] * self.coeff(k, a, l);
                }
            }
        }
        m
    }

    /// `U(P,Q)` with `2g(U(P,Q), Z) = g([Z,P]_n, Q) + g(P, [Z,Q]_n)`.
    fn u_tensor(&self, m: &MetricOperator, p: &[f64], q: &[f64]) -> Vec<f64> {
        let gp = &m.g * nalgebra::DVector::from_column_slice(p);
        let gq = &m.g * nalgebra::DVector::from_column_slice(q);
        let b = (self.ad_right(p).transpose() * gq + self.ad_right(q).transpose() * gp) * 0.5;
        (&m.g_inv * b).as_slice().to_vec()
    }

    /// Unnormalized sectional curvature `R̄(X,Y,Y,X)` of the homogeneous metric.
    pub fn biquadratic(&self, m: &MetricOperator, x: &[f64], y: &[f64]) -> f64 {
        let z = self.bracket(x, y);
        let zn = &z[..self.dim];
        let mut k = -0.75 * m.inner(zn, zn);
        k -= 0.5 * m.inner(&self.bracket_n(x, &z), y);
        k += 0.5 * m.inner(&self.bracket_n(y, &z), x);
        let uxy = self.u_tensor(m, x, y);
        let uxx = self.u_tensor(m, x, x);
        let uyy = self.u_tensor(m, y, y);
        k + m.inner(&uxy, &uxy) - m.inner(&uxx, &uyy)
    }

    /// `R̄(A,B,C,D)` by polarization of the biquadratic form.
    pub fn curvature(&self, m: &MetricOperator, a: &[f64], b: &[f64], c: &[f64], d: &[f64]) -> f64 {
        polarize(|x, y| self.biquadratic(m, x, y), a, b, c, d)
    }

    pub fn commute(&self, x: &[f64], y: &[f64], tol: f64) -> bool {
        self.bracket(x, y).iter().all(|v| v.abs() <= tol)
    }

    /// `Q`-norm squared of `[X, Y]` in `g`.
    pub fn bracket_norm2(&self, x: &[f64], y: &[f64]) -> f64 {
        self.bracket(x, y).iter().map(|v| v * v).sum()
    }
}

/// Recovers a curvature tensor from its biquadratic form `K(X,Y) = R(X,Y,Y,X)`.
pub(crate) fn polarize(k: impl Fn(&[f64], &[f64]) -> f64, a: &[f64], b: &[f64], c: &[f64], d: &[f64]) -> f64 {
    let comb = |s: f64, u: &[f64], v: &[f64]| -> Vec<f64> { u.iter().zip(v).map(|(x, y)| x + s * y).collect() };
    let mixed = |x: &[f64], w: &[f64], y: &[f64], z: &[f64]| -> f64 {
        let (xp, xm) = (comb(1.0, x, w), comb(-1.0, x, w));
        let (yp, ym) = (comb(1.0, y, z), comb(-1.0, y, z));
        (k(&xp, &yp) - k(&xp, &ym) - k(&xm, &yp) + k(&xm, &ym)) / 4.0
    };
    (mixed(a, d, b, c) - mixed(a, c, b, d)) / 6.0
}

