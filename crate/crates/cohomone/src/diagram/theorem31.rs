//! The `SO(n)` diagrams `H = μ(H')·SO(n−k) ⊂ K± ⊂ SO(n)` built from a
//! representation `μ: K' → SO(k)` placed in the upper `k×k` block.
//!
//! The `μ(H')` generators are only antisymmetric after normalizing the
//! Bombieri basis, so these diagrams are built in `f64`.

use crate::error::{Error, Result};
use crate::liealg::{basis_element, AlgElement};

use super::{check_theorem31_conditions, gram_schmidt_f64, Block, Family, GroupDiagram, RepData};

fn embed(mat: &[Vec<f64>], n: usize) -> AlgElement<f64> {
    let k = mat.len();
    let mut m = vec![0.0; n * n];
    for a in 0..k {
        for b in 0..k {
            m[a * n + b] = mat[a][b];
        }
    }
    AlgElement::from_parts_approx(0.0, m, n, 1e-12).expect("orthonormal images are antisymmetric")
}

/// Complement order: `W1` (rows `1..k−1`), `W2` (row `k`), then the rest of
/// `so(k)`, starting with `E_{1,k}, …, E_{k−1,k}`.
pub fn theorem31_diagram(rep: &RepData, n: usize) -> Result<GroupDiagram<f64>> {
    let report = check_theorem31_conditions(rep, n);
    if !report.all_pass() {
        let js = serde_json::to_string(&report).unwrap_or_default();
        return Err(Error::HypothesisFailure(js));
    }
    let k = rep.k;
    let e = |i, j| basis_element::<f64>(i, j, n).expect("valid indices");
    let images = rep.orthonormal_images();
    let mu_h: Vec<AlgElement<f64>> = images.iter().filter(|((i, _), _)| *i >= 2).map(|(_, m)| embed(m, n)).collect();
    let mu_k: Vec<AlgElement<f64>> = images.iter().map(|(_, m)| embed(m, n)).collect();
    let so = |lo: usize| -> Vec<AlgElement<f64>> {
        let mut v = Vec::new();
        for i in lo..=n {
            for j in (i + 1)..=n {
                v.push(e(i, j));
            }
        }
        v
    };
    let mut h_basis = mu_h.clone();
    h_basis.extend(so(k + 1));
    let mut kminus_basis = mu_k;
    kminus_basis.extend(so(k + 1));
    let mut kplus_basis = mu_h.clone();
    kplus_basis.extend(so(k));

    let mut complement = Vec::new();
    for i in 1..k {
        for j in (k + 1)..=n {
            complement.push(e(i, j));
        }
    }
    let w1_len = complement.len();
    for j in (k + 1)..=n {
        complement.push(e(k, j));
    }
    let w2_len = n - k;
    let mut candidates: Vec<AlgElement<f64>> = gram_schmidt_f64(mu_h, 0.0);
    let h_dim = candidates.len();
    for s in 1..k {
        candidates.push(e(s, k));
    }
    for i in 1..k {
        for j in (i + 1)..k {
            candidates.push(e(i, j));
        }
    }
    let rest: Vec<_> = gram_schmidt_f64(candidates, 0.0).into_iter().skip(h_dim).collect();
    let rest_len = rest.len();
    complement.extend(rest);
    let norms = vec![1.0; complement.len()];
    let blocks = vec![
        Block { label: "W1".into(), indices: (0..w1_len).collect() },
        Block { label: "W2".into(), indices: (w1_len..w1_len + w2_len).collect() },
        Block { label: "rest".into(), indices: (w1_len + w2_len..w1_len + w2_len + rest_len).collect() },
    ];
    Ok(GroupDiagram {
        family: Family::Theorem31 { l: rep.l, m: rep.m, k },
        n,
        so2_weight: 0.0,
        h_basis,
        kminus_basis,
        kplus_basis,
        complement,
        complement_norms: norms,
        blocks,
        codims: (rep.l, n - k + 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::harmonic_rep;

    #[test]
    fn class_one_diagram() {
        let rep = harmonic_rep(3, 2).unwrap();
        let g = theorem31_diagram(&rep, 7).unwrap();
        let w = g.block("W1").unwrap().indices.len() + g.block("W2").unwrap().indices.len();
        assert_eq!(w, 10);
        assert_eq!(g.codims, (3, 3));
        g.verify_invariants(1e-9).unwrap();
        // the rest block starts with the last column E_{s,k}
        let rest = &g.block("rest").unwrap().indices;
        let first = &g.complement[rest[0]];
        assert!((first.entry(0, 4) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_failed_conditions() {
        let rep = harmonic_rep(3, 1).unwrap();
        match theorem31_diagram(&rep, 5) {
            Err(Error::HypothesisFailure(js)) => assert!(js.contains("cond_b")),
            other => panic!("unexpected {other:?}"),
        }
    }
}
