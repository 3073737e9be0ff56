//! Class-one representations of `SO(ℓ)` on harmonic polynomials.
//!
//! `so(ℓ)` acts on degree-`m` polynomials through `E_ij ↦ x_i∂_j − x_j∂_i`.
//! The harmonic subspace is the exact kernel of the Laplacian. Its basis is
//! orthogonalized for the Bombieri form `⟨x^α, x^β⟩ = δ_αβ α!/|α|!`, for
//! which every generator acts skew-adjointly, and the zonal harmonic (the
//! `SO(ℓ−1)`-fixed vector, `SO(ℓ−1)` acting on variables `2..ℓ`) is placed
//! last, so `μ(so(ℓ−1))` lives in the upper `(k−1)×(k−1)` block.
//!
//! The orthogonal basis is not normalized (norms involve square roots), so
//! the exact generator images satisfy `N·M + Mᵀ·N = 0` with `N` the diagonal
//! of norms²; [`RepData::orthonormal_images`] gives the antisymmetric float
//! matrices.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::nullspace;
use crate::liealg::{basis_element, bracket_unchecked, AlgElement};
use crate::scalar::{Rational, Scalar};

/// Upper bound on the number of degree-`m` monomials handled exactly.
pub const MAX_MONOMIALS: usize = 4000;

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// `dim H_m(ℓ) = C(m+ℓ−1, ℓ−1) − C(m+ℓ−3, ℓ−1)`.
pub fn harmonic_dimension(l: usize, m: usize) -> usize {
    let all = binom(m + l - 1, l - 1);
    let lower = if m >= 2 { binom(m + l - 3, l - 1) } else { 0 };
    all - lower
}

fn monomials(l: usize, m: usize) -> Vec<Vec<u32>> {
    fn rec(l: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == l - 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for a in (0..=left).rev() {
            cur.push(a);
            rec(l, left - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(l, m as u32, &mut Vec::new(), &mut out);
    out
}

fn factorial(n: u32) -> Rational {
    (1..=n).fold(Rational::one(), |acc, i| acc * Rational::from_i64(i64::from(i)))
}

#[derive(Debug, Clone)]
pub struct RepData {
    pub l: usize,
    pub m: usize,
    pub k: usize,
    /// Degree-`m` monomials (exponent vectors) indexing the coefficient lists below.
    pub monomials: Vec<Vec<u32>>,
    /// Orthogonal basis of `H_m(ℓ)`; the last vector is the zonal harmonic.
    pub basis: Vec<Vec<Rational>>,
    /// Bombieri norms² of the basis vectors.
    pub norms: Vec<Rational>,
    /// `(i, j)` (one-based, `i < j`) and the `k×k` image of `E_ij`.
    pub generator_images: Vec<((usize, usize), Vec<Vec<Rational>>)>,
}

struct MonomialSpace {
    mons: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl MonomialSpace {
    fn new(l: usize, m: usize) -> Self {
        let mons = monomials(l, m);
        let index = mons.iter().enumerate().map(|(i, a)| (a.clone(), i)).collect();
        Self { mons, index }
    }

    /// Applies `x_a∂_b − x_b∂_a` (zero-based `a`, `b`) to a coefficient vector.
    fn apply_generator(&self, a: usize, b: usize, p: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.mons.len()];
        for (idx, alpha) in self.mons.iter().enumerate() {
            if p[idx].is_zero() {
                continue;
            }
            if alpha[b] > 0 {
                let mut beta = alpha.clone();
                beta[b] -= 1;
                beta[a] += 1;
                let c = Rational::from_i64(i64::from(alpha[b]));
                let t = self.index[&beta];
                out[t] = out[t].clone() + c * p[idx].clone();
            }
            if alpha[a] > 0 {
                let mut beta = alpha.clone();
                beta[a] -= 1;
                beta[b] += 1;
                let c = Rational::from_i64(i64::from(alpha[a]));
                let t = self.index[&beta];
                out[t] = out[t].clone() - c * p[idx].clone();
            }
        }
        out
    }

    fn bombieri_weights(&self, m: usize) -> Vec<Rational> {
        let mf = factorial(m as u32);
        self.mons
            .iter()
            .map(|a| a.iter().fold(Rational::one(), |acc, &e| acc * factorial(e)) / mf.clone())
            .collect()
    }
}

fn dot_w(p: &[Rational], q: &[Rational], w: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for ((a, b), c) in p.iter().zip(q).zip(w) {
        if !a.is_zero() && !b.is_zero() {
            acc += a.clone() * b.clone() * c.clone();
        }
    }
    acc
}

/// Builds `μ_m` on `H_m(ℓ)` in exact arithmetic.
pub fn harmonic_rep(l: usize, m: usize) -> Result<RepData> {
    if l < 3 || m < 1 {
        return Err(Error::Input(format!("harmonic_rep needs ℓ ≥ 3 and m ≥ 1, got ({l}, {m})")));
    }
    let count = binom(m + l - 1, l - 1);
    if count > MAX_MONOMIALS {
        return Err(Error::Resource(format!(
            "degree-{m} monomials in {l} variables number {count} > {MAX_MONOMIALS}"
        )));
    }
    let space = MonomialSpace::new(l, m);
    let dim = space.mons.len();

    // Laplacian rows indexed by degree m−2 monomials.
    let harmonic: Vec<Vec<Rational>> = if m < 2 {
        (0..dim)
            .map(|i| {
                let mut v = vec![Rational::zero(); dim];
                v[i] = Rational::one();
                v
            })
            .collect()
    } else {
        let lower = MonomialSpace::new(l, m - 2);
        let mut rows = vec![vec![Rational::zero(); dim]; lower.mons.len()];
        for (c, alpha) in space.mons.iter().enumerate() {
            for i in 0..l {
                if alpha[i] >= 2 {
                    let mut beta = alpha.clone();
                    beta[i] -= 2;
                    let r = lower.index[&beta];
                    rows[r][c] += Rational::from_i64(i64::from(alpha[i] * (alpha[i] - 1)));
                }
            }
        }
        nullspace(&rows, dim)
    };
    let k = harmonic.len();
    debug_assert_eq!(k, harmonic_dimension(l, m));

    // Zonal harmonic: kernel of so(ℓ−1) (variables 2..ℓ) on span(harmonic).
    let mut eqs: Vec<Vec<Rational>> = Vec::new();
    let images: Vec<Vec<Vec<Rational>>> = (1..l)
        .flat_map(|a| ((a + 1)..l).map(move |b| (a, b)))
        .map(|(a, b)| harmonic.iter().map(|h| space.apply_generator(a, b, h)).collect())
        .collect();
    for img in &images {
        for row in 0..dim {
            eqs.push(img.iter().map(|col| col[row].clone()).collect());
        }
    }
    let fixed = nullspace(&eqs, k);
    if fixed.len() != 1 {
        return Err(Error::Input(format!(
            "expected a one-dimensional SO(ℓ−1)-fixed subspace, found {}",
            fixed.len()
        )));
    }
    let combine = |c: &[Rational]| -> Vec<Rational> {
        let mut v = vec![Rational::zero(); dim];
        for (ci, h) in c.iter().zip(&harmonic) {
            if ci.is_zero() {
                continue;
            }
            for (vj, hj) in v.iter_mut().zip(h) {
                if !hj.is_zero() {
                    *vj += ci.clone() * hj.clone();
                }
            }
        }
        v
    };
    let zonal = combine(&fixed[0]);

    let w = space.bombieri_weights(m);
    let mut ortho: Vec<Vec<Rational>> = Vec::new();
    let mut norms: Vec<Rational> = Vec::new();
    for v in std::iter::once(zonal).chain(harmonic) {
        let mut u = v;
        for (o, no) in ortho.iter().zip(&norms) {
            let c = dot_w(&u, o, &w) / no.clone();
            if !c.is_zero() {
                for (ui, oi) in u.iter_mut().zip(o) {
                    *ui -= c.clone() * oi.clone();
                }
            }
        }
        let nu = dot_w(&u, &u, &w);
        if !nu.is_zero() {
            ortho.push(u);
            norms.push(nu);
        }
    }
    debug_assert_eq!(ortho.len(), k);
    ortho.rotate_left(1);
    norms.rotate_left(1);

    let mut generator_images = Vec::new();
    for a in 0..l {
        for b in (a + 1)..l {
            let mut mat = vec![vec![Rational::zero(); k]; k];
            for (col, vb) in ortho.iter().enumerate() {
                let img = space.apply_generator(a, b, vb);
                for (row, va) in ortho.iter().enumerate() {
                    mat[row][col] = dot_w(&img, va, &w) / norms[row].clone();
                }
            }
            generator_images.push(((a + 1, b + 1), mat));
        }
    }
    Ok(RepData {
        l,
        m,
        k,
        monomials: space.mons,
        basis: ortho,
        norms,
        generator_images,
    })
}

fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let mut out = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += aik.clone() * b[k][j].clone();
                }
            }
        }
    }
    out
}

impl RepData {
    pub fn image(&self, i: usize, j: usize) -> Option<&Vec<Vec<Rational>>> {
        self.generator_images.iter().find(|(ij, _)| *ij == (i, j)).map(|(_, m)| m)
    }

    /// Generators of `so(ℓ−1)` (indices `2..ℓ`).
    pub fn subgroup_generators(&self) -> impl Iterator<Item = &Vec<Vec<Rational>>> {
        self.generator_images.iter().filter(|((i, _), _)| *i >= 2).map(|(_, m)| m)
    }

    /// `N·M + Mᵀ·N = 0` for every generator.
    pub fn is_skew_for_norms(&self) -> bool {
        self.generator_images.iter().all(|(_, m)| {
            (0..self.k).all(|a| {
                (0..self.k).all(|b| (self.norms[a].clone() * m[a][b].clone() + self.norms[b].clone() * m[b][a].clone()).is_zero())
            })
        })
    }

    /// Image of an arbitrary element of `so(ℓ)` given as a matrix in the `E_ij` basis.
    pub fn image_of(&self, xi: &AlgElement<Rational>) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.k]; self.k];
        for ((i, j), m) in &self.generator_images {
            let c = xi.entry(i - 1, j - 1);
            if c.is_zero() {
                continue;
            }
            for (orow, mrow) in out.iter_mut().zip(m) {
                for (o, x) in orow.iter_mut().zip(mrow) {
                    *o += c.clone() * x.clone();
                }
            }
        }
        out
    }

    /// Checks `[μ(ξ), μ(η)] = μ([ξ, η])` for every pair of generators.
    pub fn satisfies_bracket_relations(&self) -> bool {
        for ((i1, j1), m1) in &self.generator_images {
            for ((i2, j2), m2) in &self.generator_images {
                let a = basis_element::<Rational>(*i1, *j1, self.l).expect("generator");
                let b = basis_element::<Rational>(*i2, *j2, self.l).expect("generator");
                let rhs = self.image_of(&bracket_unchecked(&a, &b));
                let p = mat_mul(m1, m2);
                let q = mat_mul(m2, m1);
                for r in 0..self.k {
                    for c in 0..self.k {
                        if p[r][c].clone() - q[r][c].clone() != rhs[r][c] {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Generator images in the normalized basis: antisymmetric `f64` matrices.
    pub fn orthonormal_images(&self) -> Vec<((usize, usize), Vec<Vec<f64>>)> {
        let s: Vec<f64> = self.norms.iter().map(|x| x.to_f64().sqrt()).collect();
        self.generator_images
            .iter()
            .map(|(ij, m)| {
                let mm = (0..self.k)
                    .map(|a| (0..self.k).map(|b| m[a][b].to_f64() * s[a] / s[b]).collect())
                    .collect();
                (*ij, mm)
            })
            .collect()
    }

    /// Human-readable polynomial for basis vector `i`.
    pub fn describe_basis(&self, i: usize) -> String {
        let mut terms = Vec::new();
        for (c, alpha) in self.basis[i].iter().zip(&self.monomials) {
            if c.is_zero() {
                continue;
            }
            let mono: Vec<String> = alpha
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| if e == 1 { format!("x{}", v + 1) } else { format!("x{}^{e}", v + 1) })
                .collect();
            terms.push(format!("({})·{}", c.to_rational_string(), mono.join("")));
        }
        terms.join(" + ")
    }
}
