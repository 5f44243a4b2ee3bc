//! Small dense exact linear algebra over the rationals: incremental row
//! bases for rank computations and a reusable solver (factor once, solve for
//! many right-hand sides).

use crate::polyalg::Rat;
use num::Zero;

/// Incrementally built row-echelon basis.
#[derive(Default)]
pub struct RowBasis {
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl RowBasis {
    pub fn new() -> Self {
        Self::default()
    }

    /// Reduce `row` against the basis; the residual is zero iff `row` is in
    /// the span.
    pub fn reduce(&self, mut row: Vec<Rat>) -> Vec<Rat> {
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if !row[p].is_zero() {
                let f = row[p].clone() / r[p].clone();
                for (a, b) in row.iter_mut().zip(r) {
                    *a -= &f * b;
                }
            }
        }
        row
    }

    /// Insert a row; returns true if it enlarged the span.
    pub fn insert(&mut self, row: Vec<Rat>) -> bool {
        let red = self.reduce(row);
        match red.iter().position(|c| !c.is_zero()) {
            Some(p) => {
                self.rows.push(red);
                self.pivots.push(p);
                true
            }
            None => false,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, row: Vec<Rat>) -> bool {
        self.reduce(row).iter().all(|c| c.is_zero())
    }
}

/// Rank of a list of rows.
pub fn rank(rows: impl IntoIterator<Item = Vec<Rat>>) -> usize {
    let mut b = RowBasis::new();
    for r in rows {
        b.insert(r);
    }
    b.rank()
}

/// Solver for `A c = b` with a fixed matrix `A` given by columns; factors
/// once (Gauss-Jordan with a recorded transformation) and then answers any
/// number of right-hand sides. Free unknowns are set to zero.
pub struct LinSolver {
    nrows: usize,
    ncols: usize,
    /// transformation with trans * A in reduced row-echelon form
    trans: Vec<Vec<Rat>>,
    /// pivots[k] = column of the k-th pivot row
    pivots: Vec<usize>,
}

impl LinSolver {
    pub fn new(cols: &[Vec<Rat>]) -> Self {
        let ncols = cols.len();
        let nrows = cols.first().map(|c| c.len()).unwrap_or(0);
        let mut a: Vec<Vec<Rat>> = (0..nrows)
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect();
        let mut t: Vec<Vec<Rat>> = (0..nrows)
            .map(|i| {
                let mut row = vec![Rat::zero(); nrows];
                row[i] = num::One::one();
                row
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            let Some(pr) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, pr);
            t.swap(r, pr);
            let inv = a[r][c].clone();
            for v in a[r].iter_mut() {
                *v /= inv.clone();
            }
            for v in t[r].iter_mut() {
                *v /= inv.clone();
            }
            for i in 0..nrows {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for k in 0..ncols {
                        let sub = &f * &a[r][k];
                        a[i][k] -= sub;
                    }
                    for k in 0..nrows {
                        let sub = &f * &t[r][k];
                        t[i][k] -= sub;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == nrows {
                break;
            }
        }
        LinSolver {
            nrows,
            ncols,
            trans: t,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(b.len(), self.nrows);
        let tb: Vec<Rat> = self
            .trans
            .iter()
            .map(|row| {
                row.iter()
                    .zip(b)
                    .fold(Rat::zero(), |acc, (t, v)| acc + t * v)
            })
            .collect();
        // consistency on zero rows of rref
        for i in self.pivots.len()..self.nrows {
            if !tb[i].is_zero() {
                return None;
            }
        }
        let mut c = vec![Rat::zero(); self.ncols];
        for (row, &p) in self.pivots.iter().enumerate() {
            // with the free unknowns at 0, each echelon row pins its pivot
            c[p] = tb[row].clone();
        }
        Some(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::rat;

    #[test]
    fn rank_and_membership() {
        let mut b = RowBasis::new();
        assert!(b.insert(vec![rat(1), rat(2), rat(3)]));
        assert!(b.insert(vec![rat(0), rat(1), rat(1)]));
        assert!(!b.insert(vec![rat(1), rat(3), rat(4)]));
        assert_eq!(b.rank(), 2);
        assert!(b.contains(vec![rat(2), rat(5), rat(7)]));
        assert!(!b.contains(vec![rat(0), rat(0), rat(1)]));
    }

    #[test]
    fn solver_roundtrip() {
        // A with columns (1,0,1), (0,1,1)
        let cols = vec![vec![rat(1), rat(0), rat(1)], vec![rat(0), rat(1), rat(1)]];
        let s = LinSolver::new(&cols);
        assert_eq!(s.rank(), 2);
        let b = vec![rat(3), rat(4), rat(7)];
        let c = s.solve(&b).unwrap();
        assert_eq!(c, vec![rat(3), rat(4)]);
        assert!(s.solve(&[rat(1), rat(1), rat(0)]).is_none());
    }

    #[test]
    fn solver_underdetermined() {
        // columns (1,1), (2,2), (0,1): rank 2, free column in the middle
        let cols = vec![
            vec![rat(1), rat(1)],
            vec![rat(2), rat(2)],
            vec![rat(0), rat(1)],
        ];
        let s = LinSolver::new(&cols);
        assert_eq!(s.rank(), 2);
        let c = s.solve(&[rat(1), rat(3)]).unwrap();
        // verify A c = b
        let a0 = &cols[0];
        let acc: Vec<Rat> = (0..2)
            .map(|i| {
                &c[0] * &a0[i] + &c[1] * &cols[1][i] + &c[2] * &cols[2][i]
            })
            .collect();
        assert_eq!(acc, vec![rat(1), rat(3)]);
    }
}
