//! Exact and floating arithmetic in `so(2) ⊕ so(n)`.
//!
//! An element `a·I + A` stores the coefficient `a` of the `so(2)` generator
//! `I` and the antisymmetric `n×n` matrix `A`. The basis matrix `E_{ij}`
//! (`i < j`) sends `e_j ↦ e_i` and `e_i ↦ −e_j`, i.e. it has `+1` at `(i,j)`
//! and `−1` at `(j,i)`.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{input, Result};
use crate::scalar::{Scalar, ScalarMode};

#[derive(Debug, Clone, PartialEq)]
pub struct AlgElement<S> {
    so2: S,
    mat: Vec<S>,
    n: usize,
}

impl<S: Scalar> AlgElement<S> {
    pub fn zero(n: usize) -> Self {
        Self {
            so2: S::zero(),
            mat: vec![S::zero(); n * n],
            n,
        }
    }

    /// The `so(2)` generator `I` scaled by `a`.
    pub fn so2(a: S, n: usize) -> Self {
        let mut z = Self::zero(n);
        z.so2 = a;
        z
    }

    /// Builds an element from a row-major matrix, rejecting non-antisymmetric input.
    pub fn from_parts(so2: S, mat: Vec<S>, n: usize) -> Result<Self> {
        if mat.len() != n * n {
            return input(format!("matrix has {} entries, expected {}", mat.len(), n * n));
        }
        for i in 0..n {
            if !mat[i * n + i].is_zero() {
                return input(format!("nonzero diagonal entry at ({i},{i})"));
            }
            for j in (i + 1)..n {
                if mat[i * n + j] != -mat[j * n + i].clone() {
                    return input(format!("entries ({i},{j}) and ({j},{i}) are not opposite"));
                }
            }
        }
        Ok(Self { so2, mat, n })
    }

    /// Like [`AlgElement::from_parts`] but only checks antisymmetry up to `tol`;
    /// used for float matrices produced by orthogonalization.
    pub fn from_parts_approx(so2: S, mut mat: Vec<S>, n: usize, tol: f64) -> Result<Self> {
        if mat.len() != n * n {
            return input(format!("matrix has {} entries, expected {}", mat.len(), n * n));
        }
        let two = S::from_i64(2);
        for i in 0..n {
            if !mat[i * n + i].is_negligible(tol) {
                return input(format!("diagonal entry at ({i},{i}) exceeds tolerance"));
            }
            mat[i * n + i] = S::zero();
            for j in (i + 1)..n {
                let s = mat[i * n + j].clone() + mat[j * n + i].clone();
                if !s.is_negligible(tol) {
                    return input(format!("entries ({i},{j}) and ({j},{i}) are not opposite"));
                }
                let a = (mat[i * n + j].clone() - mat[j * n + i].clone()) / two.clone();
                mat[j * n + i] = -a.clone();
                mat[i * n + j] = a;
            }
        }
        Ok(Self { so2, mat, n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> ScalarMode {
        S::MODE
    }

    pub fn so2_part(&self) -> &S {
        &self.so2
    }

    pub fn mat_part(&self) -> &[S] {
        &self.mat
    }

    /// Matrix entry, zero-based.
    pub fn entry(&self, i: usize, j: usize) -> &S {
        &self.mat[i * self.n + j]
    }

    pub fn is_zero(&self) -> bool {
        self.so2.is_zero() && self.mat.iter().all(|x| x.is_zero())
    }

    pub fn scale(&self, c: &S) -> Self {
        Self {
            so2: self.so2.clone() * c.clone(),
            mat: self.mat.iter().map(|x| x.clone() * c.clone()).collect(),
            n: self.n,
        }
    }

    pub fn to_f64(&self) -> AlgElement<f64> {
        AlgElement {
            so2: self.so2.to_f64(),
            mat: self.mat.iter().map(Scalar::to_f64).collect(),
            n: self.n,
        }
    }

    /// Largest absolute coefficient, used for float comparisons.
    pub fn max_abs(&self) -> f64 {
        self.mat
            .iter()
            .map(|x| x.to_f64().abs())
            .fold(self.so2.to_f64().abs(), f64::max)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return input(format!("mismatched sizes so({}) and so({})", self.n, other.n));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.clone() + other.clone())
    }
}

impl<S: Scalar> Add for AlgElement<S> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.n, rhs.n, "mismatched algebra sizes");
        Self {
            so2: self.so2 + rhs.so2,
            mat: self.mat.into_iter().zip(rhs.mat).map(|(a, b)| a + b).collect(),
            n: self.n,
        }
    }
}

impl<S: Scalar> Sub for AlgElement<S> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<S: Scalar> Neg for AlgElement<S> {
    type Output = Self;

    fn neg(self) -> Self {
        Self {
            so2: -self.so2,
            mat: self.mat.into_iter().map(|x| -x).collect(),
            n: self.n,
        }
    }
}

impl<S: Scalar> Mul<S> for AlgElement<S> {
    type Output = Self;

    fn mul(self, c: S) -> Self {
        self.scale(&c)
    }
}

/// Weighted bi-invariant form `Q(a+A, b+B) = d²ab − ½ tr(AB)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QFormParams {
    pub d: u32,
    pub n: usize,
}

impl QFormParams {
    pub fn new(d: u32, n: usize) -> Result<Self> {
        if d < 1 || n < 2 {
            return input(format!("Q-form needs d ≥ 1 and n ≥ 2, got d = {d}, n = {n}"));
        }
        Ok(Self { d, n })
    }

    pub fn so2_weight<S: Scalar>(&self) -> S {
        S::from_i64(i64::from(self.d) * i64::from(self.d))
    }
}

/// `E_{ij}` with one-based indices `1 ≤ i < j ≤ n`.
pub fn basis_element<S: Scalar>(i: usize, j: usize, n: usize) -> Result<AlgElement<S>> {
    if i == 0 || i >= j || j > n {
        return input(format!("E_{{{i}{j}}} is not a basis element of so({n})"));
    }
    let mut z = AlgElement::zero(n);
    z.mat[(i - 1) * n + (j - 1)] = S::one();
    z.mat[(j - 1) * n + (i - 1)] = -S::one();
    Ok(z)
}

/// Commutator; the `so(2)` factor is central and drops out.
pub fn bracket<S: Scalar>(a: &AlgElement<S>, b: &AlgElement<S>) -> Result<AlgElement<S>> {
    a.check_same(b)?;
    Ok(bracket_unchecked(a, b))
}

pub(crate) fn bracket_unchecked<S: Scalar>(a: &AlgElement<S>, b: &AlgElement<S>) -> AlgElement<S> {
    let n = a.n;
    let mut mat = vec![S::zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = &a.mat[i * n + k];
            let bik = &b.mat[i * n + k];
            let a_nz = !aik.is_zero();
            let b_nz = !bik.is_zero();
            if !a_nz && !b_nz {
                continue;
            }
            for j in 0..n {
                if a_nz {
                    let bkj = &b.mat[k * n + j];
                    if !bkj.is_zero() {
                        mat[i * n + j] = mat[i * n + j].clone() + aik.clone() * bkj.clone();
                    }
                }
                if b_nz {
                    let akj = &a.mat[k * n + j];
                    if !akj.is_zero() {
                        mat[i * n + j] = mat[i * n + j].clone() - bik.clone() * akj.clone();
                    }
                }
            }
        }
    }
    AlgElement {
        so2: S::zero(),
        mat,
        n,
    }
}

/// `−½ tr(AB)` on the matrix parts; for antisymmetric matrices this is `½ Σ a_ij b_ij`.
pub fn trace_form<S: Scalar>(a: &AlgElement<S>, b: &AlgElement<S>) -> S {
    let mut acc = S::zero();
    for (x, y) in a.mat.iter().zip(&b.mat) {
        if !x.is_zero() && !y.is_zero() {
            acc = acc + x.clone() * y.clone();
        }
    }
    acc / S::from_i64(2)
}

/// `Q` with an explicit `so(2)` weight (`d²` on the Brieskorn family).
pub fn q_weighted<S: Scalar>(a: &AlgElement<S>, b: &AlgElement<S>, so2_weight: &S) -> S {
    so2_weight.clone() * a.so2.clone() * b.so2.clone() + trace_form(a, b)
}

pub fn q_inner<S: Scalar>(a: &AlgElement<S>, b: &AlgElement<S>, p: &QFormParams) -> Result<S> {
    a.check_same(b)?;
    if a.n != p.n {
        return input(format!("form is on so({}) but elements are in so({})", p.n, a.n));
    }
    Ok(q_weighted(a, b, &p.so2_weight()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};
    use num_traits::Zero;

    fn e(i: usize, j: usize, n: usize) -> AlgElement<Rational> {
        basis_element(i, j, n).unwrap()
    }

    #[test]
    fn basis_element_layout() {
        let b = e(1, 2, 3);
        let expect: Vec<Rational> = [0, 1, 0, -1, 0, 0, 0, 0, 0].iter().map(|&v| rat(v, 1)).collect();
        assert_eq!(b.mat_part(), &expect[..]);
        assert!(b.so2_part().is_zero());
        let b = e(2, 3, 4);
        assert_eq!(b.mat_part().iter().filter(|x| !x.is_zero()).count(), 2);
        let s = e(1, 3, 3) + e(1, 3, 3);
        assert_eq!(s.entry(0, 2), &rat(2, 1));
    }

    #[test]
    fn basis_element_rejects_bad_indices() {
        assert!(basis_element::<f64>(2, 2, 3).is_err());
        assert!(basis_element::<f64>(3, 2, 3).is_err());
        assert!(basis_element::<f64>(1, 4, 3).is_err());
        assert!(basis_element::<f64>(0, 1, 3).is_err());
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(bracket(&e(1, 2, 3), &e(2, 3, 3)).unwrap(), e(1, 3, 3));
        let x = e(1, 2, 4) + e(3, 4, 4) * rat(3, 2);
        assert!(bracket(&x, &x).unwrap().is_zero());
        let i = AlgElement::so2(rat(1, 1), 3);
        assert!(bracket(&i, &e(1, 2, 3)).unwrap().is_zero());
        assert!(bracket(&e(1, 2, 3), &e(1, 2, 4)).is_err());
    }

    #[test]
    fn q_inner_examples() {
        let d = 3;
        let p = QFormParams::new(d, 4).unwrap();
        let two = rat(2, 1);
        // X and Y scaled by √2 to stay rational: Q(X', X') = 2.
        let xs = AlgElement::so2(rat(1, d as i64), 4) + e(1, 2, 4);
        let ys = AlgElement::so2(rat(1, d as i64), 4) - e(1, 2, 4);
        assert_eq!(q_inner(&xs, &xs, &p).unwrap(), two);
        assert_eq!(q_inner(&ys, &ys, &p).unwrap(), two);
        assert!(q_inner(&xs, &ys, &p).unwrap().is_zero());
        assert_eq!(q_inner(&e(1, 3, 4), &e(1, 3, 4), &p).unwrap(), rat(1, 1));
        assert!(q_inner(&e(1, 3, 4), &e(1, 4, 4), &p).unwrap().is_zero());
        // float X, Y are orthonormal
        let r2 = 2f64.sqrt();
        let xf = (AlgElement::so2(1.0 / 3.0, 4) + basis_element(1, 2, 4).unwrap()) * (1.0 / r2);
        let yf = (AlgElement::so2(1.0 / 3.0, 4) - basis_element(1, 2, 4).unwrap()) * (1.0 / r2);
        assert!((q_inner(&xf, &xf, &p).unwrap() - 1.0).abs() < 1e-15);
        assert!(q_inner(&xf, &yf, &p).unwrap().abs() < 1e-15);
    }

    #[test]
    fn from_parts_rejects_symmetric() {
        let m = vec![rat(0, 1), rat(1, 1), rat(1, 1), rat(0, 1)];
        assert!(AlgElement::from_parts(rat(0, 1), m, 2).is_err());
    }
}
