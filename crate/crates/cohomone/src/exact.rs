//! Exact rational row reduction.

use num_traits::{One, Zero};

use crate::scalar::Rational;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<Rational>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r >= rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x = x.clone() * inv.clone();
            }
        }
        let pivot_row = rows[r].clone();
        let nz: Vec<usize> = (0..ncols).filter(|&j| !pivot_row[j].is_zero()).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &nz {
                row[j] = row[j].clone() - f.clone() * pivot_row[j].clone();
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// Basis of `{x : M x = 0}`, one vector per free column.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let pivots = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Streams equations into an incrementally reduced system so large sparse
/// equivariance systems never need to be stored in full.
#[derive(Debug, Clone)]
pub struct IncrementalEchelon {
    ncols: usize,
    rows: Vec<(usize, Vec<Rational>)>,
}

impl IncrementalEchelon {
    pub fn new(ncols: usize) -> Self {
        Self { ncols, rows: Vec::new() }
    }

    /// Adds one equation; returns true if it raised the rank.
    pub fn push(&mut self, mut row: Vec<Rational>) -> bool {
        debug_assert_eq!(row.len(), self.ncols);
        for (pc, prow) in &self.rows {
            if row[*pc].is_zero() {
                continue;
            }
            let f = row[*pc].clone();
            for (j, pv) in prow.iter().enumerate().skip(*pc) {
                if !pv.is_zero() {
                    row[j] = row[j].clone() - f.clone() * pv.clone();
                }
            }
        }
        let Some(pc) = (0..self.ncols).find(|&j| !row[j].is_zero()) else {
            return false;
        };
        let inv = Rational::one() / row[pc].clone();
        for x in row.iter_mut().skip(pc) {
            if !x.is_zero() {
                *x = x.clone() * inv.clone();
            }
        }
        self.rows.push((pc, row));
        true
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn nullity(&self) -> usize {
        self.ncols - self.rows.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn row(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x, 1)).collect()
    }

    #[test]
    fn nullspace_of_rank_one() {
        let m = vec![row(&[1, 2, 3]), row(&[2, 4, 6])];
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let dot: Rational = v.iter().zip(&m[0]).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
        assert_eq!(rank(&m, 3), 1);
    }

    #[test]
    fn incremental_matches_batch() {
        let m = vec![row(&[1, 0, 1, 0]), row(&[0, 1, 1, 0]), row(&[1, 1, 2, 0]), row(&[0, 0, 0, 5])];
        let mut inc = IncrementalEchelon::new(4);
        for r in &m {
            inc.push(r.clone());
        }
        assert_eq!(inc.rank(), rank(&m, 4));
        assert_eq!(inc.nullity(), nullspace(&m, 4).len());
    }
}
