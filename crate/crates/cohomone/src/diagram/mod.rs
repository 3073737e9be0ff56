//! Group diagrams `H ⊂ {K−, K+} ⊂ G` at the Lie algebra level.
//!
//! A diagram stores bases of the isotropy algebra `h`, of `k±`, and a
//! Q-orthogonal basis of the reductive complement `n = h^⊥`, partitioned
//! into named `Ad(H)`-invariant blocks. Complement vectors are stored
//! unnormalized together with their Q-norms² so that the Brieskorn frame
//! (whose `X`, `Y` carry a `1/√2`) stays rational; [`GroupDiagram::float_frame`]
//! produces the orthonormal frame the curvature engine consumes.

mod conditions;
mod harmonic;
mod theorem31;

pub use conditions::{check_theorem31_conditions, transitive_sphere_action, ConditionReport, CondA, CondB, CondC, CondD};
pub use harmonic::{harmonic_dimension, harmonic_rep, RepData, MAX_MONOMIALS};
pub use theorem31::theorem31_diagram;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::liealg::{basis_element, bracket_unchecked, q_weighted, AlgElement};
use crate::scalar::{rat, Rational, Scalar};

/// Family tag and its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum Family {
    Brieskorn { d: u32 },
    Theorem31 { l: usize, m: usize, k: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub label: String,
    /// Indices into the complement basis.
    pub indices: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct GroupDiagram<S> {
    pub family: Family,
    /// `G = SO(2)SO(n)` (Brieskorn) or `SO(n)` (class-one family).
    pub n: usize,
    /// Weight of the `so(2)` factor in `Q` (`d²`, or `0` when `G = SO(n)`).
    pub so2_weight: S,
    pub h_basis: Vec<AlgElement<S>>,
    pub kminus_basis: Vec<AlgElement<S>>,
    pub kplus_basis: Vec<AlgElement<S>>,
    pub complement: Vec<AlgElement<S>>,
    /// `Q(c_i, c_i)` for each complement vector.
    pub complement_norms: Vec<S>,
    pub blocks: Vec<Block>,
    /// Codimensions `(ℓ−, ℓ+)` of the singular orbits.
    pub codims: (usize, usize),
}

/// Orthonormal float frame of `g = n ⊕ h` used by the curvature engine.
#[derive(Debug, Clone)]
pub struct FloatFrame {
    pub n: usize,
    pub so2_weight: f64,
    pub complement: Vec<AlgElement<f64>>,
    pub h: Vec<AlgElement<f64>>,
}

impl<S: Scalar> GroupDiagram<S> {
    pub fn q(&self, a: &AlgElement<S>, b: &AlgElement<S>) -> S {
        q_weighted(a, b, &self.so2_weight)
    }

    pub fn block(&self, label: &str) -> Option<&Block> {
        self.blocks.iter().find(|b| b.label == label)
    }

    pub fn complement_dim(&self) -> usize {
        self.complement.len()
    }

    pub fn float_frame(&self) -> FloatFrame {
        let w = self.so2_weight.to_f64();
        let complement = self
            .complement
            .iter()
            .zip(&self.complement_norms)
            .map(|(c, nrm)| c.to_f64().scale(&(1.0 / nrm.to_f64().sqrt())))
            .collect();
        let h = gram_schmidt_f64(self.h_basis.iter().map(AlgElement::to_f64).collect(), w);
        FloatFrame {
            n: self.n,
            so2_weight: w,
            complement,
            h,
        }
    }

    fn coords(&self, a: &AlgElement<S>) -> Vec<S> {
        let n = self.n;
        let mut v = Vec::with_capacity(1 + n * (n - 1) / 2);
        v.push(a.so2_part().clone());
        for i in 0..n {
            for j in (i + 1)..n {
                v.push(a.entry(i, j).clone());
            }
        }
        v
    }

    fn span_rank(&self, elems: &[&AlgElement<S>], tol: f64) -> usize {
        let rows: Vec<Vec<f64>> = elems.iter().map(|e| self.coords(e).iter().map(Scalar::to_f64).collect()).collect();
        match S::MODE {
            crate::scalar::ScalarMode::Exact => {
                let rrows: Vec<Vec<Rational>> = elems
                    .iter()
                    .map(|e| self.coords(e).iter().map(|x| to_rational(x)).collect())
                    .collect();
                let ncols = rrows.first().map_or(0, Vec::len);
                crate::exact::rank(&rrows, ncols)
            }
            crate::scalar::ScalarMode::Float => float_rank(&rows, tol),
        }
    }

    fn in_span(&self, v: &AlgElement<S>, basis: &[AlgElement<S>], tol: f64) -> bool {
        let refs: Vec<&AlgElement<S>> = basis.iter().collect();
        let r0 = self.span_rank(&refs, tol);
        let mut with = refs.clone();
        with.push(v);
        self.span_rank(&with, tol) == r0
    }

    /// Checks every structural invariant: nesting, Q-orthogonality of the
    /// complement, and `Ad(H)`-invariance of each block. `tol` only applies
    /// in float mode.
    pub fn verify_invariants(&self, tol: f64) -> Result<()> {
        let fail = |m: String| Err(Error::Input(m));
        for (i, h) in self.h_basis.iter().enumerate() {
            if !self.in_span(h, &self.kminus_basis, tol) {
                return fail(format!("h generator {i} not in k−"));
            }
            if !self.in_span(h, &self.kplus_basis, tol) {
                return fail(format!("h generator {i} not in k+"));
            }
        }
        for (a, ca) in self.complement.iter().enumerate() {
            for (b, cb) in self.complement.iter().enumerate() {
                let q = self.q(ca, cb);
                let expect = if a == b { self.complement_norms[a].clone() } else { S::zero() };
                if !(q - expect).is_negligible(tol) {
                    return fail(format!("complement vectors {a}, {b} violate Q-orthogonality"));
                }
            }
            for (i, h) in self.h_basis.iter().enumerate() {
                if !self.q(ca, h).is_negligible(tol) {
                    return fail(format!("complement vector {a} not Q-orthogonal to h generator {i}"));
                }
            }
        }
        let mut covered = vec![false; self.complement.len()];
        for block in &self.blocks {
            let basis: Vec<AlgElement<S>> = block.indices.iter().map(|&i| self.complement[i].clone()).collect();
            for &i in &block.indices {
                covered[i] = true;
            }
            for h in &self.h_basis {
                for b in &basis {
                    let br = bracket_unchecked(h, b);
                    if !self.in_span(&br, &basis, tol) {
                        return fail(format!("block {} is not Ad(H)-invariant", block.label));
                    }
                }
            }
        }
        if covered.iter().any(|c| !c) {
            return fail("blocks do not cover the complement".into());
        }
        let dim_g = if self.so2_weight.is_zero() { 0 } else { 1 } + self.n * (self.n - 1) / 2;
        if self.complement.len() + self.h_basis.len() != dim_g {
            return fail(format!(
                "dim n + dim h = {} + {} ≠ dim g = {dim_g}",
                self.complement.len(),
                self.h_basis.len()
            ));
        }
        Ok(())
    }

    pub fn to_json(&self) -> DiagramJson {
        let enc = |e: &AlgElement<S>| ElementJson {
            so2: e.so2_part().to_rational_string(),
            mat: (0..self.n)
                .map(|i| (0..self.n).map(|j| e.entry(i, j).to_rational_string()).collect())
                .collect(),
        };
        DiagramJson {
            family: self.family,
            n: self.n,
            mode: S::MODE,
            so2_weight: self.so2_weight.to_rational_string(),
            h_basis: self.h_basis.iter().map(enc).collect(),
            kminus_basis: self.kminus_basis.iter().map(enc).collect(),
            kplus_basis: self.kplus_basis.iter().map(enc).collect(),
            complement_basis: self.complement.iter().map(enc).collect(),
            complement_norms: self.complement_norms.iter().map(Scalar::to_rational_string).collect(),
            blocks: self.blocks.clone(),
            codims: self.codims,
        }
    }
}

fn to_rational<S: Scalar>(x: &S) -> Rational {
    crate::scalar::parse_rational(&x.to_rational_string()).expect("scalar renders as p/q")
}

pub(crate) fn float_rank(rows: &[Vec<f64>], tol: f64) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let m = nalgebra::DMatrix::from_fn(rows.len(), rows[0].len(), |i, j| rows[i][j]);
    m.svd(false, false).singular_values.iter().filter(|&&s| s > tol).count()
}

pub(crate) fn gram_schmidt_f64(vs: Vec<AlgElement<f64>>, w: f64) -> Vec<AlgElement<f64>> {
    let mut out: Vec<AlgElement<f64>> = Vec::new();
    for v in vs {
        let mut u = v;
        for _ in 0..2 {
            for o in &out {
                let c = q_weighted(&u, o, &w);
                u = u - o.scale(&c);
            }
        }
        let nrm = q_weighted(&u, &u, &w).sqrt();
        if nrm > 1e-12 {
            out.push(u.scale(&(1.0 / nrm)));
        }
    }
    out
}

/// Serialized diagram: every scalar as a `"p/q"` string.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiagramJson {
    #[serde(flatten)]
    pub family: Family,
    pub n: usize,
    pub mode: crate::scalar::ScalarMode,
    pub so2_weight: String,
    pub h_basis: Vec<ElementJson>,
    pub kminus_basis: Vec<ElementJson>,
    pub kplus_basis: Vec<ElementJson>,
    pub complement_basis: Vec<ElementJson>,
    pub complement_norms: Vec<String>,
    pub blocks: Vec<Block>,
    pub codims: (usize, usize),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ElementJson {
    pub so2: String,
    pub mat: Vec<Vec<String>>,
}

/// Complement layout of the Brieskorn frame: `[X, Y, E_1..E_{n−2}, F_1..F_{n−2}]`.
#[derive(Debug, Clone, Copy)]
pub struct BrieskornIndex {
    pub n: usize,
}

impl BrieskornIndex {
    pub const X: usize = 0;
    pub const Y: usize = 1;

    /// `E_i`, one-based `i`.
    pub fn e(&self, i: usize) -> usize {
        1 + i
    }

    /// `F_i`, one-based `i`.
    pub fn f(&self, i: usize) -> usize {
        1 + (self.n - 2) + i
    }

    pub fn dim(&self) -> usize {
        2 + 2 * (self.n - 2)
    }
}

/// The Brieskorn diagram of `SO(2)SO(n)` acting on `M_d^{2n−1}`.
///
/// Complement: `X' = I/d + E_12`, `Y' = I/d − E_12` (Q-norm² 2),
/// `E_i = E_{1,i+2}`, `F_i = E_{2,i+2}`; `h = so(n−2)` on indices `3..n`,
/// `k− = h + p1`, `k+ = h + m2`.
pub fn brieskorn_diagram(n: usize, d: u32) -> Result<GroupDiagram<Rational>> {
    if n < 4 {
        return Err(Error::Unsupported(format!(
            "the Brieskorn plane catalog uses E_2 and F_2 and needs n ≥ 4 (got n = {n})"
        )));
    }
    if d < 1 {
        return Err(Error::Input("d must be ≥ 1".into()));
    }
    let e = |i, j| basis_element::<Rational>(i, j, n).expect("valid indices");
    let inv_d = rat(1, i64::from(d));
    let x = AlgElement::so2(inv_d.clone(), n) + e(1, 2);
    let y = AlgElement::so2(inv_d, n) - e(1, 2);
    let mut h_basis = Vec::new();
    for i in 3..=n {
        for j in (i + 1)..=n {
            h_basis.push(e(i, j));
        }
    }
    let es: Vec<_> = (3..=n).map(|j| e(1, j)).collect();
    let fs: Vec<_> = (3..=n).map(|j| e(2, j)).collect();
    let mut complement = vec![x.clone(), y];
    complement.extend(es);
    complement.extend(fs.iter().cloned());
    let mut complement_norms = vec![rat(2, 1), rat(2, 1)];
    complement_norms.extend(std::iter::repeat_n(rat(1, 1), 2 * (n - 2)));
    let idx = BrieskornIndex { n };
    let blocks = vec![
        Block { label: "p1".into(), indices: vec![BrieskornIndex::X] },
        Block { label: "p2".into(), indices: vec![BrieskornIndex::Y] },
        Block { label: "m1".into(), indices: (1..=n - 2).map(|i| idx.e(i)).collect() },
        Block { label: "m2".into(), indices: (1..=n - 2).map(|i| idx.f(i)).collect() },
    ];
    let mut kminus_basis = h_basis.clone();
    kminus_basis.push(x);
    let mut kplus_basis = h_basis.clone();
    kplus_basis.extend(fs);
    let dd = i64::from(d);
    Ok(GroupDiagram {
        family: Family::Brieskorn { d },
        n,
        so2_weight: rat(dd * dd, 1),
        h_basis,
        kminus_basis,
        kplus_basis,
        complement,
        complement_norms,
        blocks,
        codims: (2, n - 1),
    })
}

/// The positive root of `t^d + t² = 1` (maximum of `|z_0|` on `M_d`), by bisection.
pub fn brieskorn_t0(d: u32) -> f64 {
    let f = |t: f64| t.powi(d as i32) + t * t - 1.0;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > 1e-15 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::bracket;
    use num_traits::Zero;

    #[test]
    fn brieskorn_dimensions() {
        let g = brieskorn_diagram(4, 3).unwrap();
        assert_eq!(g.h_basis.len(), 1);
        assert_eq!(g.complement_dim(), 6);
        let sizes: Vec<usize> = g.blocks.iter().map(|b| b.indices.len()).collect();
        assert_eq!(sizes, vec![1, 1, 2, 2]);
        assert_eq!(g.codims, (2, 3));
        let g = brieskorn_diagram(5, 3).unwrap();
        assert_eq!(g.codims, (2, 4));
        assert_eq!(g.complement_dim(), 8);
    }

    #[test]
    fn brieskorn_invariants_exact() {
        for n in 4..=6 {
            for d in 1..=4 {
                brieskorn_diagram(n, d).unwrap().verify_invariants(0.0).unwrap();
            }
        }
    }

    #[test]
    fn brieskorn_rejects_small_n() {
        assert!(matches!(brieskorn_diagram(3, 3), Err(Error::Unsupported(_))));
    }

    #[test]
    fn h_preserves_m1() {
        let g = brieskorn_diagram(6, 3).unwrap();
        let m1 = g.block("m1").unwrap();
        for h in &g.h_basis {
            for &i in &m1.indices {
                let br = bracket(h, &g.complement[i]).unwrap();
                // [h, E_i] has support only on row 1, columns ≥ 3
                for r in 0..g.n {
                    for c in 0..g.n {
                        let on_m1 = (r == 0 && c >= 2) || (c == 0 && r >= 2);
                        if !on_m1 {
                            assert!(br.entry(r, c).is_zero());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn t0_solves_equation() {
        for d in 1..6 {
            let t = brieskorn_t0(d);
            assert!((t.powi(d as i32) + t * t - 1.0).abs() < 1e-13);
        }
        assert!((brieskorn_t0(2) - 0.5f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn float_frame_is_orthonormal() {
        let g = brieskorn_diagram(5, 3).unwrap();
        let f = g.float_frame();
        let all: Vec<_> = f.complement.iter().chain(&f.h).collect();
        for (i, a) in all.iter().enumerate() {
            for (j, b) in all.iter().enumerate() {
                let q = q_weighted(a, b, &f.so2_weight);
                assert!((q - if i == j { 1.0 } else { 0.0 }).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn json_uses_rational_strings() {
        let js = brieskorn_diagram(4, 3).unwrap().to_json();
        assert_eq!(js.complement_basis[0].so2, "1/3");
        assert_eq!(js.complement_norms[0], "2/1");
        let s = serde_json::to_string(&js).unwrap();
        assert!(s.contains("\"family\":\"brieskorn\""));
        assert!(!Rational::zero().to_rational_string().is_empty());
    }
}
