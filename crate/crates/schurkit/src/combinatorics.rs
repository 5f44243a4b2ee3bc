//! Partitions, compositions, multicompositions, permutations and tableaux.
//!
//! Conventions used throughout the crate:
//! * multicomposition components are strict compositions (all parts > 0),
//!   but a whole component may be empty; empty components are retained in
//!   storage because positions relative to red strands matter — the
//!   forgetful flattening is a separate view;
//! * permutations act on positions `0..m` internally and are composed
//!   left-to-right: `(v * w)(i) = w(v(i))`, i.e. `v` is applied first;
//! * tableau entries `(i, p)` are ordered by `(p, i)`.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

use crate::error::{domain, Result};

// ---------------------------------------------------------------------------
// Partitions and compositions
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(pub Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return domain("partition parts must be weakly decreasing");
            }
        }
        if parts.iter().any(|&p| p == 0) {
            return domain("partition parts must be positive");
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part with 1-based index, zero-padded beyond the length.
    pub fn part(&self, k: usize) -> u32 {
        self.0.get(k - 1).copied().unwrap_or(0)
    }
}

/// Conjugate (transpose of the Young diagram).
pub fn dual_partition(nu: &Partition) -> Partition {
    let mut parts = Vec::new();
    let mut col = 1;
    loop {
        let n = nu.0.iter().filter(|&&p| p >= col).count() as u32;
        if n == 0 {
            break;
        }
        parts.push(n);
        col += 1;
    }
    Partition(parts)
}

/// All partitions of `n` with parts bounded by `max_part` (and optionally at
/// most `max_len` parts), largest-first order.
pub fn enumerate_partitions(n: u32, max_part: Option<u32>, max_len: Option<usize>) -> Vec<Partition> {
    let cap = max_part.unwrap_or(n).min(n);
    let len_cap = max_len.unwrap_or(usize::MAX);
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(rem: u32, cap: u32, len_left: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if len_left == 0 {
            return;
        }
        for p in (1..=cap.min(rem)).rev() {
            cur.push(p);
            go(rem - p, p, len_left - 1, cur, out);
            cur.pop();
        }
    }
    if n == 0 {
        return vec![Partition::empty()];
    }
    go(n, cap.max(0), len_cap, &mut cur, &mut out);
    out
}

/// Strict compositions of `n` (ordered sequences of positive parts); `n = 0`
/// yields just the empty composition.
pub fn enumerate_strict_compositions(n: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(rem: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for p in 1..=rem {
            cur.push(p);
            go(rem - p, cur, out);
            cur.pop();
        }
    }
    go(n, &mut cur, &mut out);
    out
}

// ---------------------------------------------------------------------------
// Multicompositions
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiComposition {
    pub comps: Vec<Vec<u32>>,
}

pub type MultiPartition = MultiComposition;

impl MultiComposition {
    pub fn new(comps: Vec<Vec<u32>>) -> Result<Self> {
        for c in &comps {
            if c.iter().any(|&p| p == 0) {
                return domain("components must be strict (positive parts)");
            }
        }
        Ok(MultiComposition { comps })
    }

    pub fn level(&self) -> usize {
        self.comps.len()
    }

    pub fn size(&self) -> u32 {
        self.comps.iter().flatten().sum()
    }

    /// Forgetful flattening: concatenation of all parts (empty components
    /// disappear because they contribute no parts).
    pub fn flatten(&self) -> Vec<u32> {
        self.comps.iter().flatten().copied().collect()
    }

    pub fn is_multipartition(&self) -> bool {
        self.comps
            .iter()
            .all(|c| c.windows(2).all(|w| w[0] >= w[1]))
    }

    /// Number of parts before component `q` (0-based), used for variable
    /// offsets and tableau numbering.
    pub fn parts_before(&self, q: usize) -> usize {
        self.comps[..q].iter().map(|c| c.len()).sum()
    }
}

/// All level-`level` strict multicompositions of `m`.
pub fn enumerate_multicompositions(m: u32, level: usize) -> Vec<MultiComposition> {
    let mut out = Vec::new();
    let mut cur: Vec<Vec<u32>> = Vec::new();
    fn go(rem: u32, slots: usize, cur: &mut Vec<Vec<u32>>, out: &mut Vec<MultiComposition>) {
        if slots == 0 {
            if rem == 0 {
                out.push(MultiComposition { comps: cur.clone() });
            }
            return;
        }
        for k in 0..=rem {
            for c in enumerate_strict_compositions(k) {
                cur.push(c);
                go(rem - k, slots - 1, cur, out);
                cur.pop();
            }
        }
    }
    go(m, level, &mut cur, &mut out);
    out
}

/// All level-`level` multipartitions of `m`.
pub fn enumerate_multipartitions(m: u32, level: usize) -> Vec<MultiPartition> {
    let mut out = Vec::new();
    let mut cur: Vec<Vec<u32>> = Vec::new();
    fn go(rem: u32, slots: usize, cur: &mut Vec<Vec<u32>>, out: &mut Vec<MultiPartition>) {
        if slots == 0 {
            if rem == 0 {
                out.push(MultiComposition { comps: cur.clone() });
            }
            return;
        }
        for k in 0..=rem {
            for p in enumerate_partitions(k, None, None) {
                cur.push(p.0);
                go(rem - k, slots - 1, cur, out);
                cur.pop();
            }
        }
    }
    go(m, level, &mut cur, &mut out);
    out
}

/// Dominance order on multicompositions of equal size and level:
/// `lam ⊴ mu` iff for every component index `j` and row `l`,
/// `Σ_{i<j} |lam^{(i)}| + Σ_{h≤l} lam^{(j)}_h  ≤` the same for `mu`.
pub fn dominance_leq(lam: &MultiComposition, mu: &MultiComposition) -> Result<bool> {
    if lam.size() != mu.size() || lam.level() != mu.level() {
        return domain("dominance requires equal size and level");
    }
    let prefix = |x: &MultiComposition, j: usize, l: usize| -> u64 {
        let before: u64 = x.comps[..j].iter().flatten().map(|&p| p as u64).sum();
        let within: u64 = x.comps[j].iter().take(l).map(|&p| p as u64).sum();
        before + within
    };
    for j in 0..lam.level() {
        let rows = lam.comps[j].len().max(mu.comps[j].len());
        for l in 1..=rows.max(1) {
            if prefix(lam, j, l) > prefix(mu, j, l) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Permutations
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation(pub Vec<usize>);

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Permutation((0..m).collect())
    }

    /// Adjacent transposition `s_i` (1-based `i`, swapping positions i, i+1).
    pub fn s(i: usize, m: usize) -> Self {
        let mut v: Vec<usize> = (0..m).collect();
        v.swap(i - 1, i);
        Permutation(v)
    }

    pub fn m(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// `self` first, then `other`.
    pub fn mul(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&i| other.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut v = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            v[j] = i;
        }
        Permutation(v)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn n_inversions(&self) -> usize {
        let v = &self.0;
        let mut n = 0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] {
                    n += 1;
                }
            }
        }
        n
    }

    /// Reduced word as 1-based indices `[i1, i2, ...]` with
    /// `w = s_{i1} · s_{i2} · ...` in the left-to-right product convention.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::new();
        'outer: loop {
            for i in 0..w.0.len().saturating_sub(1) {
                if w.0[i] > w.0[i + 1] {
                    word.push(i + 1);
                    w.0.swap(i, i + 1);
                    continue 'outer;
                }
            }
            break;
        }
        word
    }

    /// All permutations of `m` letters (lexicographic on one-line notation).
    pub fn all(m: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut v: Vec<usize> = (0..m).collect();
        loop {
            out.push(Permutation(v.clone()));
            // next lexicographic permutation
            let mut i = m.wrapping_sub(2);
            while i != usize::MAX && v[i] >= v[i + 1] {
                i = i.wrapping_sub(1);
            }
            if i == usize::MAX {
                break;
            }
            let mut j = m - 1;
            while v[j] <= v[i] {
                j -= 1;
            }
            v.swap(i, j);
            v[i + 1..].reverse();
        }
        out
    }
}

/// Minimal-length coset representatives of `S_{a+b} / (S_a × S_b)` embedded at
/// `offset` inside `S_m`: choose which `a` positions receive the first block.
pub fn min_coset_reps(a: usize, b: usize, offset: usize, m: usize) -> Vec<Permutation> {
    let n = a + b;
    assert!(offset + n <= m);
    let mut out = Vec::new();
    // iterate over a-subsets of {0..n}
    let mut subset: Vec<usize> = (0..a).collect();
    loop {
        let mut img: Vec<usize> = (0..m).collect();
        // positions in `subset` get values 0..a (in increasing order), the
        // rest get a..n — this is w^{-1} sorted-within-blocks; the coset rep
        // itself sends value-slots to those positions.
        let mut w_inv = vec![0usize; n];
        let mut next_lo = 0;
        let mut next_hi = a;
        let in_subset: Vec<bool> = {
            let mut v = vec![false; n];
            for &s in &subset {
                v[s] = true;
            }
            v
        };
        for (pos, &is_in) in in_subset.iter().enumerate() {
            if is_in {
                w_inv[pos] = next_lo;
                next_lo += 1;
            } else {
                w_inv[pos] = next_hi;
                next_hi += 1;
            }
        }
        // w = inverse of w_inv (as map position -> position)
        for (pos, &val) in w_inv.iter().enumerate() {
            img[offset + val] = offset + pos;
        }
        out.push(Permutation(img));
        if a == 0 || subset[0] == n - a {
            break;
        }
        // next a-subset in colex-ish order
        let mut i = a - 1;
        loop {
            if subset[i] < n - (a - i) {
                subset[i] += 1;
                for j in i + 1..a {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
            if i == 0 {
                return out;
            }
            i -= 1;
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Tableaux
// ---------------------------------------------------------------------------

/// Ordered entry `(i, p)` = "row i of component p" (both 1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TableauEntry {
    pub i: u32,
    pub p: u32,
}

impl PartialOrd for TableauEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TableauEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.p, self.i).cmp(&(other.p, other.i))
    }
}

/// Standard tableau: cells filled bijectively with 1..m. Stored as
/// `rows[comp][row][col]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StandardTableau {
    pub shape: MultiComposition,
    pub rows: Vec<Vec<Vec<u32>>>,
}

impl StandardTableau {
    pub fn entries_in_order(&self) -> Vec<u32> {
        self.rows.iter().flatten().flatten().copied().collect()
    }

    pub fn is_standard(&self) -> bool {
        // rows increase left to right, columns increase top to bottom
        for comp in &self.rows {
            for row in comp {
                if row.windows(2).any(|w| w[0] >= w[1]) {
                    return false;
                }
            }
            for r in 1..comp.len() {
                for c in 0..comp[r].len() {
                    if c >= comp[r - 1].len() || comp[r - 1][c] >= comp[r][c] {
                        return false;
                    }
                }
            }
        }
        let mut all = self.entries_in_order();
        all.sort_unstable();
        all == (1..=all.len() as u32).collect::<Vec<_>>()
    }
}

/// Row-reading canonical tableau `t^lambda`: 1..m inserted component by
/// component, row by row.
pub fn canonical_tableau(shape: &MultiComposition) -> StandardTableau {
    let mut n = 0u32;
    let rows = shape
        .comps
        .iter()
        .map(|comp| {
            comp.iter()
                .map(|&len| {
                    (0..len)
                        .map(|_| {
                            n += 1;
                            n
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    StandardTableau {
        shape: shape.clone(),
        rows,
    }
}

/// The coset representative `d(t)` with `t = t^lambda · d(t)`: as a
/// permutation it sends `k` to the entry of `t` in the cell where
/// `t^lambda` holds `k` (0-based internally).
pub fn minimal_coset_rep(t: &StandardTableau) -> Result<Permutation> {
    if !t.is_standard() {
        return domain("minimal_coset_rep requires a standard tableau");
    }
    let entries = t.entries_in_order();
    Ok(Permutation(
        entries.iter().map(|&e| (e - 1) as usize).collect(),
    ))
}

/// All standard tableaux of a multipartition shape.
pub fn enumerate_standard_tableaux(shape: &MultiPartition) -> Vec<StandardTableau> {
    let m = shape.size() as usize;
    // cells in a fixed order; place values 1..m by choosing, at each step,
    // any cell whose left and upper neighbours are filled.
    #[derive(Clone)]
    struct Cell {
        comp: usize,
        row: usize,
        col: usize,
    }
    let mut cells = Vec::new();
    for (ci, comp) in shape.comps.iter().enumerate() {
        for (ri, &len) in comp.iter().enumerate() {
            for col in 0..len as usize {
                cells.push(Cell {
                    comp: ci,
                    row: ri,
                    col,
                });
            }
        }
    }
    let mut grid: Vec<Vec<Vec<u32>>> = shape
        .comps
        .iter()
        .map(|c| c.iter().map(|&len| vec![0; len as usize]).collect())
        .collect();
    let mut out = Vec::new();
    fn go(
        next: u32,
        m: usize,
        cells: &[Cell],
        grid: &mut Vec<Vec<Vec<u32>>>,
        shape: &MultiComposition,
        out: &mut Vec<StandardTableau>,
    ) {
        if next as usize > m {
            out.push(StandardTableau {
                shape: shape.clone(),
                rows: grid.clone(),
            });
            return;
        }
        for cell in cells {
            if grid[cell.comp][cell.row][cell.col] != 0 {
                continue;
            }
            let left_ok = cell.col == 0 || grid[cell.comp][cell.row][cell.col - 1] != 0;
            let up_ok = cell.row == 0 || grid[cell.comp][cell.row - 1][cell.col] != 0;
            if left_ok && up_ok {
                grid[cell.comp][cell.row][cell.col] = next;
                go(next + 1, m, cells, grid, shape, out);
                grid[cell.comp][cell.row][cell.col] = 0;
            }
        }
    }
    go(1, m, &cells, &mut grid, shape, &mut out);
    out
}

/// Semistandard tableau of multipartition shape with `(i,p)` entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SemistandardTableau {
    pub shape: MultiPartition,
    pub rows: Vec<Vec<Vec<TableauEntry>>>,
}

impl SemistandardTableau {
    /// Content: the multicomposition `mu` with `mu^{(p)}_i` = multiplicity of
    /// the entry `(i,p)`; needs the expected type to know the length of each
    /// component.
    pub fn has_type(&self, mu: &MultiComposition) -> bool {
        let mut counts: Vec<Vec<u32>> = mu.comps.iter().map(|c| vec![0; c.len()]).collect();
        for e in self.rows.iter().flatten().flatten() {
            let p = (e.p - 1) as usize;
            let i = (e.i - 1) as usize;
            if p >= counts.len() || i >= counts[p].len() {
                return false;
            }
            counts[p][i] += 1;
        }
        counts
            .iter()
            .zip(&mu.comps)
            .all(|(row, exp)| row == exp)
    }

    pub fn is_semistandard(&self) -> bool {
        for (ci, comp) in self.rows.iter().enumerate() {
            for row in comp {
                if row.windows(2).any(|w| w[0] > w[1]) {
                    return false;
                }
                if row.iter().any(|e| (e.p as usize) < ci + 1) {
                    return false;
                }
            }
            for r in 1..comp.len() {
                for c in 0..comp[r].len() {
                    if c >= comp[r - 1].len() || comp[r - 1][c] >= comp[r][c] {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut cells = Vec::new();
        for (ci, comp) in self.rows.iter().enumerate() {
            for (ri, row) in comp.iter().enumerate() {
                for (col, e) in row.iter().enumerate() {
                    cells.push(serde_json::json!({
                        "comp": ci + 1,
                        "row": ri + 1,
                        "col": col + 1,
                        "entry": [e.i, e.p],
                    }));
                }
            }
        }
        serde_json::json!({ "shape": self.shape.comps, "cells": cells })
    }
}

/// All semistandard lambda-tableaux of type mu. Empty unless `lambda ⊵ mu`.
pub fn enumerate_sst(lam: &MultiPartition, mu: &MultiComposition) -> Vec<SemistandardTableau> {
    if lam.size() != mu.size() || lam.level() != mu.level() {
        return Vec::new();
    }
    if !lam.is_multipartition() {
        return Vec::new();
    }
    // available entries with multiplicities, sorted by (p,i)
    let mut supply: Vec<(TableauEntry, u32)> = Vec::new();
    for (p, comp) in mu.comps.iter().enumerate() {
        for (i, &mult) in comp.iter().enumerate() {
            supply.push((
                TableauEntry {
                    i: i as u32 + 1,
                    p: p as u32 + 1,
                },
                mult,
            ));
        }
    }
    let mut grid: Vec<Vec<Vec<TableauEntry>>> = lam
        .comps
        .iter()
        .map(|c| {
            c.iter()
                .map(|&len| vec![TableauEntry { i: 0, p: 0 }; len as usize])
                .collect()
        })
        .collect();
    // cells in row-reading order, component by component
    let mut cells: Vec<(usize, usize, usize)> = Vec::new();
    for (ci, comp) in lam.comps.iter().enumerate() {
        for (ri, &len) in comp.iter().enumerate() {
            for col in 0..len as usize {
                cells.push((ci, ri, col));
            }
        }
    }
    let mut counts: Vec<u32> = supply.iter().map(|&(_, c)| c).collect();
    let mut out = Vec::new();
    fn go(
        k: usize,
        cells: &[(usize, usize, usize)],
        supply: &[(TableauEntry, u32)],
        counts: &mut Vec<u32>,
        grid: &mut Vec<Vec<Vec<TableauEntry>>>,
        lam: &MultiComposition,
        out: &mut Vec<SemistandardTableau>,
    ) {
        if k == cells.len() {
            out.push(SemistandardTableau {
                shape: lam.clone(),
                rows: grid.clone(),
            });
            return;
        }
        let (ci, ri, col) = cells[k];
        for (si, &(e, _)) in supply.iter().enumerate() {
            if counts[si] == 0 {
                continue;
            }
            if (e.p as usize) < ci + 1 {
                continue;
            }
            if col > 0 && grid[ci][ri][col - 1] > e {
                continue;
            }
            if ri > 0 && grid[ci][ri - 1][col] >= e {
                continue;
            }
            counts[si] -= 1;
            grid[ci][ri][col] = e;
            go(k + 1, cells, supply, counts, grid, lam, out);
            counts[si] += 1;
        }
    }
    go(0, &cells, &supply, &mut counts, &mut grid, lam, &mut out);
    out
}

/// The tableau `mu(s)`: replace each entry `n` of the standard tableau `s`
/// by `(i, p)` where `n` sits in row `i` of component `p` of `t^mu`.
pub fn mu_of_standard(s: &StandardTableau, mu: &MultiComposition) -> SemistandardTableau {
    // map n -> (i,p) via the canonical tableau of mu
    let tmu = canonical_tableau(mu);
    let mut lookup = vec![TableauEntry { i: 0, p: 0 }; mu.size() as usize + 1];
    for (p, comp) in tmu.rows.iter().enumerate() {
        for (i, row) in comp.iter().enumerate() {
            for &n in row {
                lookup[n as usize] = TableauEntry {
                    i: i as u32 + 1,
                    p: p as u32 + 1,
                };
            }
        }
    }
    SemistandardTableau {
        shape: s.shape.clone(),
        rows: s
            .rows
            .iter()
            .map(|comp| {
                comp.iter()
                    .map(|row| row.iter().map(|&n| lookup[n as usize]).collect())
                    .collect()
            })
            .collect(),
    }
}

/// The fiber `mu^{-1}(S)`: all standard tableaux of the shape of `S` mapping
/// to `S` under `mu(·)`.
pub fn mu_fiber(s: &SemistandardTableau, mu: &MultiComposition) -> Vec<StandardTableau> {
    enumerate_standard_tableaux(&s.shape)
        .into_iter()
        .filter(|t| mu_of_standard(t, mu) == *s)
        .collect()
}

/// The unique semistandard lambda-tableau of type lambda.
pub fn t_lambda_sst(lam: &MultiPartition) -> SemistandardTableau {
    mu_of_standard(&canonical_tableau(lam), lam)
}
