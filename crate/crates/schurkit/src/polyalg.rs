//! Exact multivariate polynomials over the rationals in x-variables and
//! parameter indeterminates u, with the Demazure (degenerate affine Hecke)
//! action of the symmetric group.
//!
//! Monomial order: graded lexicographic with `x1 > x2 > ... > xm > u1 > ...`,
//! so the grlex-leading term of a polynomial is the maximal key.

use num::{BigInt, BigRational, One, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::combinatorics::{min_coset_reps, Partition, Permutation};
use crate::error::{domain, Result};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn factorial(n: u32) -> Rat {
    let mut r = Rat::one();
    for k in 2..=n as i64 {
        r *= rat(k);
    }
    r
}

pub fn binom(n: u32, k: u32) -> Rat {
    if k > n {
        return Rat::zero();
    }
    let mut r = Rat::one();
    for i in 0..k as i64 {
        r *= rat(n as i64 - i);
        r /= rat(i + 1);
    }
    r
}

/// Exponent vector over x1..xm followed by u1..ul.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        // grlex: by total degree, then lexicographically (a larger exponent
        // on an earlier variable wins)
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.0.iter().zip(&other.0) {
            match a.cmp(b) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyElt {
    pub nx: usize,
    pub nu: usize,
    pub terms: BTreeMap<Mono, Rat>,
}

impl PolyElt {
    pub fn zero(nx: usize, nu: usize) -> Self {
        PolyElt {
            nx,
            nu,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nx: usize, nu: usize, c: Rat) -> Self {
        let mut p = PolyElt::zero(nx, nu);
        if !c.is_zero() {
            p.terms.insert(Mono(vec![0; nx + nu]), c);
        }
        p
    }

    pub fn one(nx: usize, nu: usize) -> Self {
        Self::constant(nx, nu, Rat::one())
    }

    /// The variable `x_i` (1-based).
    pub fn x(nx: usize, nu: usize, i: usize) -> Self {
        assert!(1 <= i && i <= nx);
        let mut e = vec![0; nx + nu];
        e[i - 1] = 1;
        let mut p = PolyElt::zero(nx, nu);
        p.terms.insert(Mono(e), Rat::one());
        p
    }

    /// The parameter `u_j` (1-based).
    pub fn u(nx: usize, nu: usize, j: usize) -> Self {
        assert!(1 <= j && j <= nu);
        let mut e = vec![0; nx + nu];
        e[nx + j - 1] = 1;
        let mut p = PolyElt::zero(nx, nu);
        p.terms.insert(Mono(e), Rat::one());
        p
    }

    pub fn monomial(nx: usize, nu: usize, exps: Vec<u32>, c: Rat) -> Self {
        assert_eq!(exps.len(), nx + nu);
        let mut p = PolyElt::zero(nx, nu);
        if !c.is_zero() {
            p.terms.insert(Mono(exps), c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &PolyElt) -> PolyElt {
        assert_eq!((self.nx, self.nu), (other.nx, other.nu));
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &PolyElt) -> PolyElt {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> PolyElt {
        if c.is_zero() {
            return PolyElt::zero(self.nx, self.nu);
        }
        PolyElt {
            nx: self.nx,
            nu: self.nu,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &PolyElt) -> PolyElt {
        assert_eq!((self.nx, self.nu), (other.nx, other.nu));
        let mut r = PolyElt::zero(self.nx, self.nu);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let e: Vec<u32> = m1.0.iter().zip(&m2.0).map(|(a, b)| a + b).collect();
                r.add_term(Mono(e), c1 * c2);
            }
        }
        r
    }

    pub fn leading(&self) -> Option<(&Mono, &Rat)> {
        self.terms.last_key_value()
    }

    pub fn total_x_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.0[..self.nx].iter().sum())
            .max()
            .unwrap_or(0)
    }

    /// Substitute exact rational values for the parameters u.
    pub fn subst_u(&self, vals: &[Rat]) -> PolyElt {
        assert_eq!(vals.len(), self.nu);
        let mut r = PolyElt::zero(self.nx, 0);
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            for (j, v) in vals.iter().enumerate() {
                for _ in 0..m.0[self.nx + j] {
                    coeff *= v;
                }
            }
            r.add_term(Mono(m.0[..self.nx].to_vec()), coeff);
        }
        r
    }

    /// Plain variable permutation `f^w`: substitutes `x_i -> x_{w(i)}`.
    pub fn act_perm(&self, w: &Permutation) -> PolyElt {
        assert_eq!(w.m(), self.nx);
        let mut r = PolyElt::zero(self.nx, self.nu);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            for i in 0..self.nx {
                e[w.apply(i)] = m.0[i];
            }
            r.add_term(Mono(e), c.clone());
        }
        r
    }

    /// Exact division by `(x_i - x_j)` with `i < j` (1-based). Panics if the
    /// division is not exact — callers only divide guaranteed multiples.
    pub fn div_exact_xdiff(&self, i: usize, j: usize) -> PolyElt {
        assert!(i < j && j <= self.nx);
        let mut rem = self.clone();
        let mut q = PolyElt::zero(self.nx, self.nu);
        while let Some((m, c)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            assert!(
                m.0[i - 1] > 0,
                "inexact division by (x{i} - x{j}): leading term has no x{i}"
            );
            let mut e = m.0.clone();
            e[i - 1] -= 1;
            let qm = Mono(e);
            // rem -= c * x^qm * (x_i - x_j)
            let mut ei = qm.0.clone();
            ei[i - 1] += 1;
            rem.add_term(Mono(ei), -c.clone());
            let mut ej = qm.0.clone();
            ej[j - 1] += 1;
            rem.add_term(Mono(ej), c.clone());
            q.add_term(qm, c);
        }
        q
    }

    /// Demazure action of `s_j`: `s_j.f = f^{s_j} + (f - f^{s_j})/(x_j - x_{j+1})`.
    pub fn demazure_s(&self, j: usize) -> PolyElt {
        assert!(1 <= j && j < self.nx);
        let fs = self.act_perm(&Permutation::s(j, self.nx));
        let diff = self.sub(&fs);
        fs.add(&diff.div_exact_xdiff(j, j + 1))
    }

    /// Demazure action of a whole permutation: the algebra element
    /// `w = s_{i1} · s_{i2} · ... · s_{ik}` acts as the composite
    /// `s_{i1}.(s_{i2}.( ... (s_{ik}.f)))` (rightmost letter first).
    pub fn act_perm_demazure(&self, w: &Permutation) -> PolyElt {
        let word = w.reduced_word();
        let mut f = self.clone();
        for &i in word.iter().rev() {
            f = f.demazure_s(i);
        }
        f
    }

    /// Multiply by `x_i`.
    pub fn mul_x(&self, i: usize) -> PolyElt {
        self.mul(&PolyElt::x(self.nx, self.nu, i))
    }

    pub fn display(&self) -> String {
        format!("{self}")
    }
}

impl fmt::Display for PolyElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let mut vars = String::new();
            for (k, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = if k < self.nx {
                    format!("x{}", k + 1)
                } else {
                    format!("u{}", k + 1 - self.nx)
                };
                vars.push('*');
                vars.push_str(&name);
                if e > 1 {
                    vars.push_str(&format!("^{e}"));
                }
            }
            if first {
                write!(f, "{c}{vars}")?;
                first = false;
            } else {
                write!(f, " + {c}{vars}")?;
            }
        }
        Ok(())
    }
}

/// One step of a Hecke word acting on polynomials.
#[derive(Clone, Copy, Debug)]
pub enum HeckeTok {
    /// Demazure operator of `s_j`.
    S(usize),
    /// Multiplication by `x_i`.
    X(usize),
}

/// Left-to-right composition: the first token is applied first.
/// Re-embed a coefficient polynomial (nx = 0) into `nx` x-variables.
pub fn embed_coeff(c: &PolyElt, nx: usize) -> PolyElt {
    assert_eq!(c.nx, 0);
    let mut out = PolyElt::zero(nx, c.nu);
    for (mono, v) in &c.terms {
        let mut e = vec![0u32; nx];
        e.extend_from_slice(&mono.0);
        out.add_term(Mono(e), v.clone());
    }
    out
}

pub fn act_hecke_word(f: &PolyElt, word: &[HeckeTok]) -> PolyElt {
    let mut g = f.clone();
    for tok in word {
        g = match *tok {
            HeckeTok::S(j) => g.demazure_s(j),
            HeckeTok::X(i) => g.mul_x(i),
        };
    }
    g
}

/// Is `f` symmetric in each consecutive block of x-variables starting at
/// `offset` (0-based) with the given block sizes? Plain variable swaps.
pub fn is_symmetric_blocks(f: &PolyElt, offset: usize, blocks: &[u32]) -> bool {
    let mut pos = offset;
    for &b in blocks {
        for j in pos + 1..pos + b as usize {
            if f.act_perm(&Permutation::s(j, f.nx)) != *f {
                return false;
            }
        }
        pos += b as usize;
    }
    true
}

/// `sigma_{a,b}` action at `offset` (0-based): sum of the Demazure actions of
/// the minimal coset representatives of `S_{a+b}/(S_a × S_b)`. Requires the
/// input to be symmetric in the two blocks separately; the output is
/// symmetric in the merged block.
pub fn sigma_action(f: &PolyElt, a: u32, b: u32, offset: usize) -> Result<PolyElt> {
    if !is_symmetric_blocks(f, offset, &[a, b]) {
        return domain("sigma_action input not of symmetry type (a,b)");
    }
    let mut r = PolyElt::zero(f.nx, f.nu);
    for w in min_coset_reps(a as usize, b as usize, offset, f.nx) {
        // act_perm_demazure composes letters in algebra order; the operator
        // sum needs the function-composition order, i.e. the inverse word
        r = r.add(&f.act_perm_demazure(&w.inverse()));
    }
    Ok(r)
}

/// Monomial symmetric polynomial `m_nu` in the block of `len` x-variables
/// starting at `offset` (0-based), embedded into (nx, nu) ambient variables.
pub fn monomial_symmetric(nx: usize, nu: usize, offset: usize, len: usize, nu_part: &Partition) -> PolyElt {
    let mut p = PolyElt::zero(nx, nu);
    if nu_part.len() > len {
        return p;
    }
    // distinct permutations of the padded exponent vector
    let mut exps: Vec<u32> = nu_part.0.clone();
    exps.resize(len, 0);
    exps.sort_unstable();
    let mut seen = std::collections::BTreeSet::new();
    loop {
        if seen.insert(exps.clone()) {
            let mut e = vec![0; nx + nu];
            e[offset..offset + len].copy_from_slice(&exps);
            p.add_term(Mono(e), Rat::one());
        }
        // next permutation
        let n = exps.len();
        let mut i = n.wrapping_sub(2);
        while i != usize::MAX && exps[i] >= exps[i + 1] {
            i = i.wrapping_sub(1);
        }
        if i == usize::MAX {
            break;
        }
        let mut j = n - 1;
        while exps[j] <= exps[i] {
            j -= 1;
        }
        exps.swap(i, j);
        exps[i + 1..].reverse();
    }
    p
}
