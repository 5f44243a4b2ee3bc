//! Matrix encodings of elementary chicken-foot diagrams: N-matrices with
//! prescribed row/column sums, partition-enhanced matrices (ParMat), the
//! bounded "flat" variant, and the matrix of a semistandard tableau.
//!
//! A `ParMat` stores its matrices at flattened granularity: one row per part
//! of the top multicomposition, one column per part of the bottom one (empty
//! components contribute nothing). The block structure is recovered from the
//! stored shapes; this is the forgetful bijection between block and flat
//! presentations.

use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    enumerate_partitions, MultiComposition, Partition, SemistandardTableau,
};
use crate::error::{domain, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NMatrix(pub Vec<Vec<u32>>);

impl NMatrix {
    pub fn nrows(&self) -> usize {
        self.0.len()
    }

    pub fn ncols(&self) -> usize {
        self.0.first().map(|r| r.len()).unwrap_or(0)
    }

    pub fn row_sums(&self) -> Vec<u32> {
        self.0.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<u32> {
        let mut s = vec![0; self.ncols()];
        for row in &self.0 {
            for (j, &v) in row.iter().enumerate() {
                s[j] += v;
            }
        }
        s
    }
}

/// All matrices with given row and column sums (contingency tables), in a
/// deterministic row-by-row lexicographic order.
pub fn enumerate_nmatrices(row_sums: &[u32], col_sums: &[u32]) -> Result<Vec<NMatrix>> {
    if row_sums.iter().sum::<u32>() != col_sums.iter().sum::<u32>() {
        return domain("row and column sums disagree");
    }
    let nr = row_sums.len();
    let nc = col_sums.len();
    let mut out = Vec::new();
    let mut rows: Vec<Vec<u32>> = Vec::new();
    let mut col_left = col_sums.to_vec();
    fn go(
        i: usize,
        nr: usize,
        nc: usize,
        row_sums: &[u32],
        rows: &mut Vec<Vec<u32>>,
        col_left: &mut Vec<u32>,
        out: &mut Vec<NMatrix>,
    ) {
        if i == nr {
            if col_left.iter().all(|&c| c == 0) {
                out.push(NMatrix(rows.clone()));
            }
            return;
        }
        let mut row = Vec::with_capacity(nc);
        fn fill(
            j: usize,
            rem: u32,
            i: usize,
            nr: usize,
            nc: usize,
            row_sums: &[u32],
            row: &mut Vec<u32>,
            rows: &mut Vec<Vec<u32>>,
            col_left: &mut Vec<u32>,
            out: &mut Vec<NMatrix>,
        ) {
            if j == nc {
                if rem == 0 {
                    rows.push(row.clone());
                    go(i + 1, nr, nc, row_sums, rows, col_left, out);
                    rows.pop();
                }
                return;
            }
            let hi = rem.min(col_left[j]);
            for v in (0..=hi).rev() {
                row.push(v);
                col_left[j] -= v;
                fill(j + 1, rem - v, i, nr, nc, row_sums, row, rows, col_left, out);
                col_left[j] += v;
                row.pop();
            }
        }
        fill(
            0,
            row_sums[i],
            i,
            nr,
            nc,
            row_sums,
            &mut row,
            rows,
            col_left,
            out,
        );
    }
    go(0, nr, nc, row_sums, &mut rows, &mut col_left, &mut out);
    Ok(out)
}

/// Partition-enhanced matrix: thicknesses `A` plus a dot packet (partition
/// with parts ≤ the thickness) on every leg. `top`/`bot` are the target and
/// source multicompositions; rows of `A` correspond to parts of `top`,
/// columns to parts of `bot`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ParMat {
    pub top: MultiComposition,
    pub bot: MultiComposition,
    pub a: NMatrix,
    pub p: Vec<Vec<Partition>>,
}

impl ParMat {
    pub fn validate(&self) -> Result<()> {
        let rs = self.top.flatten();
        let cs = self.bot.flatten();
        if self.a.nrows() != rs.len() || (!rs.is_empty() && self.a.ncols() != cs.len()) {
            return domain("matrix shape disagrees with block shapes");
        }
        if self.a.row_sums() != rs || self.a.col_sums() != cs {
            return domain("row/column sums disagree with shapes");
        }
        for (arow, prow) in self.a.0.iter().zip(&self.p) {
            for (&aij, eta) in arow.iter().zip(prow) {
                if eta.0.first().copied().unwrap_or(0) > aij {
                    return domain("dot packet part exceeds leg thickness");
                }
                if aij == 0 && !eta.is_empty() {
                    return domain("dot packet on an absent leg");
                }
            }
        }
        Ok(())
    }

    /// Total dot weight.
    pub fn degree(&self) -> u32 {
        self.p.iter().flatten().map(|eta| eta.size()).sum()
    }

    /// Block index (0-based component) of flattened row `i`.
    pub fn row_block(&self, i: usize) -> usize {
        block_of(&self.top, i)
    }

    pub fn col_block(&self, j: usize) -> usize {
        block_of(&self.bot, j)
    }

    /// Flat bound: treating components as blocks 1..level, every packet must
    /// have length ≤ min(row_block, col_block) - 1.
    pub fn is_flat(&self) -> bool {
        for (i, prow) in self.p.iter().enumerate() {
            for (j, eta) in prow.iter().enumerate() {
                let bound = (self.row_block(i) + 1).min(self.col_block(j) + 1) - 1;
                if eta.len() > bound {
                    return false;
                }
            }
        }
        true
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "A": self.a.0,
            "P": self.p.iter().map(|r| r.iter().map(|p| p.0.clone()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "row_blocks": self.top.comps,
            "col_blocks": self.bot.comps,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<ParMat> {
        let parse = || -> Option<ParMat> {
            let a: Vec<Vec<u32>> = serde_json::from_value(v.get("A")?.clone()).ok()?;
            let p: Vec<Vec<Vec<u32>>> = serde_json::from_value(v.get("P")?.clone()).ok()?;
            let top: Vec<Vec<u32>> = serde_json::from_value(v.get("row_blocks")?.clone()).ok()?;
            let bot: Vec<Vec<u32>> = serde_json::from_value(v.get("col_blocks")?.clone()).ok()?;
            Some(ParMat {
                top: MultiComposition { comps: top },
                bot: MultiComposition { comps: bot },
                a: NMatrix(a),
                p: p
                    .into_iter()
                    .map(|r| r.into_iter().map(Partition).collect())
                    .collect(),
            })
        };
        let pm = parse().ok_or_else(|| crate::Error::Domain("malformed ParMat JSON".into()))?;
        pm.validate()?;
        Ok(pm)
    }
}

fn block_of(mc: &MultiComposition, flat_index: usize) -> usize {
    let mut k = flat_index;
    for (c, comp) in mc.comps.iter().enumerate() {
        if k < comp.len() {
            return c;
        }
        k -= comp.len();
    }
    panic!("flat index out of range");
}

/// All ParMat over the given shapes with total dot weight ≤ `degree_cap`.
/// (The affine basis is infinite; the cap is an artifact device.)
pub fn enumerate_parmat(
    top: &MultiComposition,
    bot: &MultiComposition,
    degree_cap: u32,
) -> Vec<ParMat> {
    enumerate_parmat_with(top, bot, degree_cap, None)
}

/// All flat ParMat (intrinsically finite: packet lengths bounded by the block
/// indices, parts by the thickness).
pub fn enumerate_parmat_flat(top: &MultiComposition, bot: &MultiComposition) -> Vec<ParMat> {
    if top.size() != bot.size() {
        return Vec::new();
    }
    // max conceivable dot weight: every leg of thickness a in blocks (p,q)
    // carries at most a * (min(p,q)-1)
    let cap = top.size() * (top.level().min(bot.level()) as u32);
    enumerate_parmat_with(top, bot, cap, Some(()))
        .into_iter()
        .collect()
}

fn enumerate_parmat_with(
    top: &MultiComposition,
    bot: &MultiComposition,
    degree_cap: u32,
    flat: Option<()>,
) -> Vec<ParMat> {
    if top.size() != bot.size() {
        return Vec::new();
    }
    let rs = top.flatten();
    let cs = bot.flatten();
    let mats = enumerate_nmatrices(&rs, &cs).expect("sums agree");
    let mut out = Vec::new();
    for a in mats {
        // choose a packet per entry within the degree budget
        let entries: Vec<(usize, usize, u32)> = a
            .0
            .iter()
            .enumerate()
            .flat_map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .filter(|&(_, &v)| v > 0)
                    .map(move |(j, &v)| (i, j, v))
            })
            .collect();
        let skeleton = ParMat {
            top: top.clone(),
            bot: bot.clone(),
            a: a.clone(),
            p: a
                .0
                .iter()
                .map(|row| row.iter().map(|_| Partition::empty()).collect())
                .collect(),
        };
        fn go(
            k: usize,
            budget: u32,
            entries: &[(usize, usize, u32)],
            cur: &mut ParMat,
            flat: Option<()>,
            out: &mut Vec<ParMat>,
        ) {
            if k == entries.len() {
                out.push(cur.clone());
                return;
            }
            let (i, j, aij) = entries[k];
            let len_cap = if flat.is_some() {
                let bound = (cur.row_block(i) + 1).min(cur.col_block(j) + 1) - 1;
                Some(bound)
            } else {
                None
            };
            for d in 0..=budget {
                for eta in enumerate_partitions(d, Some(aij), len_cap) {
                    if len_cap == Some(0) && d > 0 {
                        continue;
                    }
                    cur.p[i][j] = eta;
                    go(k + 1, budget - d, entries, cur, flat, out);
                    cur.p[i][j] = Partition::empty();
                }
            }
        }
        let mut cur = skeleton;
        go(0, degree_cap, &entries, &mut cur, flat, &mut out);
    }
    out.sort();
    out.dedup();
    out
}

/// The matrix `A_T` of a semistandard tableau `T` of shape `lambda` and type
/// `mu`: rows indexed by the parts of `mu` (pairs `(p,i)`), columns by the
/// parts of `lambda` (pairs `(q,j)`), entry = multiplicity of `i_p` in row
/// `j` of `T^{(q)}`. Dot packets are empty. As a diagram this lives in
/// Hom(lambda, mu): bottom = lambda, top = mu.
pub fn a_matrix_of_sst(t: &SemistandardTableau, mu: &MultiComposition) -> ParMat {
    let lam = &t.shape;
    let rs = mu.flatten();
    let mut row_index = Vec::new(); // (p,i) 1-based per flat row
    for (p, comp) in mu.comps.iter().enumerate() {
        for i in 0..comp.len() {
            row_index.push((p as u32 + 1, i as u32 + 1));
        }
    }
    let mut cols = Vec::new(); // (q, j) per flat column
    for (q, comp) in lam.comps.iter().enumerate() {
        for j in 0..comp.len() {
            cols.push((q, j));
        }
    }
    let mut a = vec![vec![0u32; cols.len()]; rs.len()];
    for (r, &(p, i)) in row_index.iter().enumerate() {
        for (c, &(q, j)) in cols.iter().enumerate() {
            a[r][c] = t.rows[q][j]
                .iter()
                .filter(|e| e.i == i && e.p == p)
                .count() as u32;
        }
    }
    ParMat {
        top: mu.clone(),
        bot: lam.clone(),
        a: NMatrix(a),
        p: (0..rs.len())
            .map(|_| (0..cols.len()).map(|_| Partition::empty()).collect())
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{enumerate_sst, t_lambda_sst, TableauEntry};

    fn mc(comps: &[&[u32]]) -> MultiComposition {
        MultiComposition::new(comps.iter().map(|c| c.to_vec()).collect()).unwrap()
    }

    #[test]
    fn nmatrix_enumeration() {
        assert_eq!(
            enumerate_nmatrices(&[1, 1], &[1, 1]).unwrap().len(),
            2
        );
        assert_eq!(enumerate_nmatrices(&[3], &[3]).unwrap().len(), 1);
        let m = enumerate_nmatrices(&[2], &[1, 1]).unwrap();
        assert_eq!(m, vec![NMatrix(vec![vec![1, 1]])]);
        assert!(enumerate_nmatrices(&[1], &[2]).is_err());
    }

    #[test]
    fn parmat_enumeration_caps() {
        let one = mc(&[&[1]]);
        // packets on a thickness-1 leg with degree cap 2: {}, (1), (1,1)
        let all = enumerate_parmat(&one, &one, 2);
        assert_eq!(all.len(), 3);
        let two = mc(&[&[2]]);
        let all2 = enumerate_parmat(&two, &two, 2);
        // packets of weight <= 2, parts <= 2: {}, (1), (2), (1,1)
        assert_eq!(all2.len(), 4);
        assert!(enumerate_parmat(&one, &two, 2).is_empty());
    }

    #[test]
    fn flat_enumeration_level1_is_nmatrices() {
        let nu = mc(&[&[1, 1]]);
        let flats = enumerate_parmat_flat(&nu, &nu);
        assert_eq!(flats.len(), 2);
        assert!(flats.iter().all(|f| f.degree() == 0));
    }

    #[test]
    fn a_matrix_of_the_worked_example() {
        // the displayed tableau of shape ((3,2),(2,2),(2,1)) and type
        // ((2,1),(1,1,2),(1,1,1,2)) gives the 9x6 matrix below
        let lam = mc(&[&[3, 2], &[2, 2], &[2, 1]]);
        let mu = mc(&[&[2, 1], &[1, 1, 2], &[1, 1, 1, 2]]);
        let e = |i: u32, p: u32| TableauEntry { i, p };
        let t = SemistandardTableau {
            shape: lam.clone(),
            rows: vec![
                vec![vec![e(1, 1), e(1, 1), e(1, 2)], vec![e(2, 1), e(1, 3)]],
                vec![vec![e(2, 2), e(3, 2)], vec![e(3, 2), e(4, 3)]],
                vec![vec![e(2, 3), e(3, 3)], vec![e(4, 3)]],
            ],
        };
        assert!(t.is_semistandard());
        assert!(t.has_type(&mu));
        assert!(enumerate_sst(&lam, &mu).contains(&t));
        let a = a_matrix_of_sst(&t, &mu);
        let expect = vec![
            vec![2, 0, 0, 0, 0, 0],
            vec![0, 1, 0, 0, 0, 0],
            vec![1, 0, 0, 0, 0, 0],
            vec![0, 0, 1, 0, 0, 0],
            vec![0, 0, 1, 1, 0, 0],
            vec![0, 1, 0, 0, 0, 0],
            vec![0, 0, 0, 0, 1, 0],
            vec![0, 0, 0, 0, 1, 0],
            vec![0, 0, 0, 1, 0, 1],
        ];
        assert_eq!(a.a.0, expect);
        assert_eq!(a.a.row_sums(), mu.flatten());
        assert_eq!(a.a.col_sums(), lam.flatten());
        a.validate().unwrap();
    }

    #[test]
    fn a_matrix_of_canonical_is_diagonal() {
        for lam in [mc(&[&[2, 1]]), mc(&[&[3], &[1, 1]])] {
            let t = t_lambda_sst(&lam);
            let a = a_matrix_of_sst(&t, &lam);
            let flat = lam.flatten();
            for (i, row) in a.a.0.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    assert_eq!(v, if i == j { flat[i] } else { 0 });
                }
            }
        }
    }

    #[test]
    fn row_col_sums_over_all_sst() {
        for m in 1..=4u32 {
            let lams = crate::combinatorics::enumerate_multipartitions(m, 2);
            let mus = crate::combinatorics::enumerate_multicompositions(m, 2);
            for lam in &lams {
                for mu in &mus {
                    for t in enumerate_sst(lam, mu) {
                        let a = a_matrix_of_sst(&t, mu);
                        assert_eq!(a.a.row_sums(), mu.flatten());
                        assert_eq!(a.a.col_sums(), lam.flatten());
                    }
                }
            }
        }
    }

    #[test]
    fn degree_and_json_roundtrip() {
        let nu = mc(&[&[2], &[2]]);
        let flats = enumerate_parmat_flat(&nu, &nu);
        for f in &flats {
            assert!(f.is_flat());
            let j = f.to_json();
            assert_eq!(&ParMat::from_json(&j).unwrap(), f);
        }
        // a single packet (3,1) has degree 4
        let pm = ParMat {
            top: mc(&[&[4]]),
            bot: mc(&[&[4]]),
            a: NMatrix(vec![vec![4]]),
            p: vec![vec![Partition(vec![3, 1])]],
        };
        assert_eq!(pm.degree(), 4);
    }
}
