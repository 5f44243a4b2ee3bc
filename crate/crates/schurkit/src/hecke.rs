//! The degenerate affine Hecke algebra in PBW normal form x^α·w, its
//! cyclotomic quotient, the cell-theoretic elements (𝓍_λ, π_λ, m_λ, m_st,
//! m_St, m_ST), the * anti-involution, and permutation modules.
//!
//! The cyclotomic reduction is a rewriting system: x_k^ℓ is replaced by
//! c_k = x_k^ℓ − g_k, where g_1 is the cyclotomic polynomial and
//! g_k = s_{k-1} g_{k-1} s_{k-1}. Each g_k lies in the two-sided ideal and
//! has leading symbol x_k^ℓ, so every substitution strictly lowers the
//! degree multiset and the loop terminates. [`certify_dimension`] turns the
//! span of bounded monomials into a module over the presented algebra by
//! verifying all defining relations as operator identities, which pins the
//! quotient dimension at ℓ^m·m! and makes the reduction canonical.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::combinatorics::{
    enumerate_multipartitions, enumerate_sst, enumerate_standard_tableaux, min_coset_reps,
    minimal_coset_rep, mu_fiber, MultiComposition, Permutation, SemistandardTableau,
    StandardTableau,
};
use crate::error::{domain, Error, Result};
use crate::linalg::LinSolver;
use crate::par::maybe_par_map;
use crate::polyalg::{PolyElt, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffHeckeElt {
    pub m: usize,
    /// number of u-indeterminates in the coefficients (0 in numeric mode)
    pub nu: usize,
    /// normal form: coefficient on x^α·w
    pub terms: BTreeMap<(Vec<u32>, Permutation), PolyElt>,
}

/// Divided difference of a monomial in the variables at positions k, k+1
/// (1-based k): (x^α − s_k x^α) / (x_k − x_{k+1}), a signed sum of monomials.
fn ddiff_mono(alpha: &[u32], k: usize) -> Vec<(Vec<u32>, i64)> {
    let a = alpha[k - 1];
    let b = alpha[k];
    if a == b {
        return Vec::new();
    }
    let (lo, hi, sign) = if a > b { (b, a, 1) } else { (a, b, -1) };
    (lo..hi)
        .map(|i| {
            let mut g = alpha.to_vec();
            g[k - 1] = i;
            g[k] = hi + lo - 1 - i;
            (g, sign)
        })
        .collect()
}

use crate::polyalg::embed_coeff;

impl AffHeckeElt {
    pub fn zero(m: usize, nu: usize) -> Self {
        AffHeckeElt {
            m,
            nu,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(m: usize, nu: usize) -> Self {
        Self::x_mono(m, nu, vec![0; m])
    }

    pub fn x_mono(m: usize, nu: usize, alpha: Vec<u32>) -> Self {
        let mut e = Self::zero(m, nu);
        e.add_term(alpha, Permutation::identity(m), PolyElt::one(0, nu));
        e
    }

    pub fn x(m: usize, nu: usize, j: usize) -> Self {
        let mut alpha = vec![0; m];
        alpha[j - 1] = 1;
        Self::x_mono(m, nu, alpha)
    }

    pub fn s(m: usize, nu: usize, i: usize) -> Self {
        Self::from_perm(nu, &Permutation::s(i, m))
    }

    pub fn from_perm(nu: usize, w: &Permutation) -> Self {
        let m = w.m();
        let mut e = Self::zero(m, nu);
        e.add_term(vec![0; m], w.clone(), PolyElt::one(0, nu));
        e
    }

    fn add_term(&mut self, alpha: Vec<u32>, w: Permutation, c: PolyElt) {
        if c.is_zero() {
            return;
        }
        let key = (alpha, w);
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_x_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|(a, _)| a.iter().sum())
            .max()
            .unwrap_or(0)
    }

    pub fn add(&self, other: &AffHeckeElt) -> AffHeckeElt {
        assert_eq!((self.m, self.nu), (other.m, other.nu));
        let mut out = self.clone();
        for ((a, w), c) in &other.terms {
            out.add_term(a.clone(), w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &AffHeckeElt) -> AffHeckeElt {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> AffHeckeElt {
        self.scale_poly(&PolyElt::constant(0, self.nu, c.clone()))
    }

    pub fn scale_poly(&self, c: &PolyElt) -> AffHeckeElt {
        let mut out = Self::zero(self.m, self.nu);
        for ((a, w), v) in &self.terms {
            out.add_term(a.clone(), w.clone(), v.mul(c));
        }
        out
    }

    /// Left multiplication by s_k: s_k · x^α w = (s_k x^α) s_k w
    /// = x^{s_k α} s_k w + ∂_k(x^α) w.
    pub fn left_mul_s(&self, k: usize) -> AffHeckeElt {
        let sk = Permutation::s(k, self.m);
        let mut out = Self::zero(self.m, self.nu);
        for ((alpha, w), c) in &self.terms {
            let mut swapped = alpha.clone();
            swapped.swap(k - 1, k);
            out.add_term(swapped, sk.mul(w), c.clone());
            for (gamma, sign) in ddiff_mono(alpha, k) {
                out.add_term(
                    gamma,
                    w.clone(),
                    c.scale(&Rat::from_integer(sign.into())),
                );
            }
        }
        out
    }

    pub fn left_mul_x(&self, j: usize) -> AffHeckeElt {
        let mut alpha = vec![0; self.m];
        alpha[j - 1] = 1;
        self.left_mul_mono(&alpha)
    }

    pub fn left_mul_mono(&self, beta: &[u32]) -> AffHeckeElt {
        let mut out = Self::zero(self.m, self.nu);
        for ((alpha, w), c) in &self.terms {
            let summed: Vec<u32> = alpha.iter().zip(beta).map(|(a, b)| a + b).collect();
            out.add_term(summed, w.clone(), c.clone());
        }
        out
    }

    pub fn left_mul_perm(&self, v: &Permutation) -> AffHeckeElt {
        let mut out = self.clone();
        for &k in v.reduced_word().iter().rev() {
            out = out.left_mul_s(k);
        }
        out
    }

    /// Right multiplication by a plain permutation (free in normal form).
    pub fn right_mul_perm(&self, w: &Permutation) -> AffHeckeElt {
        let mut out = Self::zero(self.m, self.nu);
        for ((a, v), c) in &self.terms {
            out.add_term(a.clone(), v.mul(w), c.clone());
        }
        out
    }

    /// Action on polynomials: x_j multiplies, s_i acts by the Demazure-type
    /// operator f ↦ f^{s_i} + ∂_i f.
    pub fn act_poly(&self, f: &PolyElt) -> PolyElt {
        assert_eq!(f.nx, self.m);
        assert_eq!(f.nu, self.nu);
        let mut out = PolyElt::zero(self.m, self.nu);
        for ((alpha, w), c) in &self.terms {
            let mut g = f.act_perm_demazure(w);
            let mut e = alpha.clone();
            e.extend(vec![0u32; self.nu]);
            g = g.mul(&PolyElt::monomial(self.m, self.nu, e, Rat::one()));
            g = g.mul(&embed_coeff(c, self.m));
            out = out.add(&g);
        }
        out
    }
}

/// Product in normal form.
pub fn aff_mul(a: &AffHeckeElt, b: &AffHeckeElt) -> AffHeckeElt {
    assert_eq!((a.m, a.nu), (b.m, b.nu));
    let mut out = AffHeckeElt::zero(a.m, a.nu);
    for ((alpha, v), c) in &a.terms {
        let t = b.left_mul_perm(v).left_mul_mono(alpha).scale_poly(c);
        out = out.add(&t);
    }
    out
}

/// The anti-involution fixing all generators: (x^α w)* = w^{-1} x^α.
pub fn anti_involution(a: &AffHeckeElt) -> AffHeckeElt {
    let mut out = AffHeckeElt::zero(a.m, a.nu);
    for ((alpha, w), c) in &a.terms {
        let t = AffHeckeElt::x_mono(a.m, a.nu, alpha.clone())
            .left_mul_perm(&w.inverse())
            .scale_poly(c);
        out = out.add(&t);
    }
    out
}

/// Σ_{w ∈ 𝔖_λ} w over the Young subgroup of the flattened blocks.
pub fn x_lambda(lam: &MultiComposition, m: usize, nu: usize) -> AffHeckeElt {
    let blocks = lam.flatten();
    assert_eq!(blocks.iter().sum::<u32>() as usize, m);
    let mut members = vec![Permutation::identity(m)];
    let mut offset = 0usize;
    for &b in &blocks {
        let b = b as usize;
        let mut next = Vec::with_capacity(members.len() * (1..=b).product::<usize>());
        for sigma in Permutation::all(b) {
            let mut emb: Vec<usize> = (0..m).collect();
            for (i, &v) in sigma.0.iter().enumerate() {
                emb[offset + i] = offset + v;
            }
            let emb = Permutation(emb);
            for w in &members {
                next.push(w.mul(&emb));
            }
        }
        members = next;
        offset += b;
    }
    let mut out = AffHeckeElt::zero(m, nu);
    for w in members {
        out.add_term(vec![0; m], w, PolyElt::one(0, nu));
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub enum CycParams {
    Generic,
    Numeric(Vec<Rat>),
}

/// Cyclotomic quotient context: size, level, parameters, and the cached
/// rewriting elements c_k = x_k^ℓ − g_k.
pub struct CycContext {
    pub m: usize,
    pub ell: usize,
    pub params: CycParams,
    cs: Vec<AffHeckeElt>,
}

impl CycContext {
    pub fn new(m: usize, ell: usize, params: CycParams) -> Self {
        if let CycParams::Numeric(v) = &params {
            assert_eq!(v.len(), ell);
        }
        let nu = match params {
            CycParams::Generic => ell,
            CycParams::Numeric(_) => 0,
        };
        let mut ctx = CycContext {
            m,
            ell,
            params,
            cs: Vec::new(),
        };
        let mut cs = Vec::with_capacity(m);
        let mut g = AffHeckeElt::one(m, nu);
        for i in 1..=ell {
            let factor = AffHeckeElt::x(m, nu, 1)
                .sub(&AffHeckeElt::one(m, nu).scale_poly(&ctx.u_coeff(i)));
            g = aff_mul(&g, &factor);
        }
        for k in 1..=m {
            if k > 1 {
                let s = AffHeckeElt::s(m, nu, k - 1);
                g = aff_mul(&s, &aff_mul(&g, &s));
            }
            let mut alpha = vec![0; m];
            alpha[k - 1] = ell as u32;
            cs.push(AffHeckeElt::x_mono(m, nu, alpha).sub(&g));
        }
        ctx.cs = cs;
        ctx
    }

    pub fn nu(&self) -> usize {
        match self.params {
            CycParams::Generic => self.ell,
            CycParams::Numeric(_) => 0,
        }
    }

    /// The parameter u_i (1-based) as a coefficient polynomial.
    pub fn u_coeff(&self, i: usize) -> PolyElt {
        match &self.params {
            CycParams::Generic => PolyElt::u(0, self.ell, i),
            CycParams::Numeric(v) => PolyElt::constant(0, 0, v[i - 1].clone()),
        }
    }

    /// ∏_{1≤i≤ℓ}(x₁ − u_i), the generator of the defining ideal.
    pub fn cyclotomic_poly(&self) -> AffHeckeElt {
        let mut alpha = vec![0; self.m];
        alpha[0] = self.ell as u32;
        AffHeckeElt::x_mono(self.m, self.nu(), alpha).sub(&self.cs[0])
    }
}

/// Canonical representative modulo the cyclotomic ideal: all exponents end
/// up < ℓ. Each substitution replaces a term by strictly lower-degree terms.
pub fn cyc_reduce(a: &AffHeckeElt, ctx: &CycContext) -> AffHeckeElt {
    assert_eq!((a.m, a.nu), (ctx.m, ctx.nu()));
    let ell = ctx.ell as u32;
    let mut e = a.clone();
    loop {
        let mut found = None;
        for ((alpha, w), c) in &e.terms {
            if let Some(k) = alpha.iter().position(|&v| v >= ell) {
                found = Some((alpha.clone(), w.clone(), c.clone(), k));
                break;
            }
        }
        let Some((alpha, w, c, k)) = found else {
            return e;
        };
        e.terms.remove(&(alpha.clone(), w.clone()));
        let mut beta = alpha;
        beta[k] -= ell;
        let repl = ctx.cs[k]
            .right_mul_perm(&w)
            .left_mul_mono(&beta)
            .scale_poly(&c);
        e = e.add(&repl);
    }
}

/// π_λ = ∏_{1≤i≤ℓ−1} ∏_{1≤j≤a_i} (x_j − u_{i+1}), a_i = |λ^{(1)}|+…+|λ^{(i)}|.
pub fn pi_lambda(lam: &MultiComposition, ctx: &CycContext) -> AffHeckeElt {
    let m = lam.size() as usize;
    let nu = ctx.nu();
    let mut out = AffHeckeElt::one(m, nu);
    let mut a = 0u32;
    for i in 1..lam.level() {
        a += lam.comps[i - 1].iter().sum::<u32>();
        for j in 1..=a as usize {
            let factor = AffHeckeElt::x(m, nu, j)
                .sub(&AffHeckeElt::one(m, nu).scale_poly(&ctx.u_coeff(i + 1)));
            out = aff_mul(&out, &factor);
        }
    }
    out
}

pub fn m_lambda(lam: &MultiComposition, ctx: &CycContext) -> AffHeckeElt {
    let m = lam.size() as usize;
    aff_mul(&pi_lambda(lam, ctx), &x_lambda(lam, m, ctx.nu()))
}

/// m_{𝔰𝔱} = d(𝔰)* m_λ d(𝔱).
pub fn m_st(s: &StandardTableau, t: &StandardTableau, ctx: &CycContext) -> Result<AffHeckeElt> {
    if s.shape != t.shape {
        return domain("standard tableaux have different shapes");
    }
    let ds = minimal_coset_rep(s)?;
    let dt = minimal_coset_rep(t)?;
    let ml = m_lambda(&s.shape, ctx);
    Ok(aff_mul(
        &AffHeckeElt::from_perm(ctx.nu(), &ds.inverse()),
        &aff_mul(&ml, &AffHeckeElt::from_perm(ctx.nu(), &dt)),
    ))
}

/// m_{𝐒𝔱} = Σ_{𝔰 ∈ μ^{-1}(𝐒)} m_{𝔰𝔱}.
pub fn m_st_upper(
    s: &SemistandardTableau,
    t: &StandardTableau,
    mu: &MultiComposition,
    ctx: &CycContext,
) -> Result<AffHeckeElt> {
    let mut out = AffHeckeElt::zero(ctx.m, ctx.nu());
    for frak_s in mu_fiber(s, mu) {
        out = out.add(&m_st(&frak_s, t, ctx)?);
    }
    Ok(out)
}

/// m_{𝐒𝐓} = Σ_{𝔰 ∈ μ^{-1}(𝐒), 𝔱 ∈ ν^{-1}(𝐓)} m_{𝔰𝔱}.
pub fn m_st_double(
    s: &SemistandardTableau,
    t: &SemistandardTableau,
    mu: &MultiComposition,
    nu: &MultiComposition,
    ctx: &CycContext,
) -> Result<AffHeckeElt> {
    let mut out = AffHeckeElt::zero(ctx.m, ctx.nu());
    for frak_s in mu_fiber(s, mu) {
        for frak_t in mu_fiber(t, nu) {
            out = out.add(&m_st(&frak_s, &frak_t, ctx)?);
        }
    }
    Ok(out)
}

/// σ_{a,b} = Σ over minimal coset representatives of 𝔖_{a+b}/(𝔖_a × 𝔖_b),
/// embedded at `offset` inside 𝔖_m.
pub fn sigma_elt(a: u32, b: u32, offset: usize, m: usize, nu: usize) -> AffHeckeElt {
    let mut out = AffHeckeElt::zero(m, nu);
    for w in min_coset_reps(a as usize, b as usize, offset, m) {
        out.add_term(vec![0; m], w, PolyElt::one(0, nu));
    }
    out
}

pub fn sigma_star_elt(a: u32, b: u32, offset: usize, m: usize, nu: usize) -> AffHeckeElt {
    anti_involution(&sigma_elt(a, b, offset, m, nu))
}

/// Left-multiplier of the dot ω_{a,r} on a thickness-a strand at x-offset
/// `offset`: σ*_{r,a−r} · x_{offset+1}⋯x_{offset+r}.
pub fn omega_elt(a: u32, r: u32, offset: usize, m: usize, nu: usize) -> AffHeckeElt {
    if r == 0 {
        return AffHeckeElt::one(m, nu);
    }
    assert!(r <= a);
    let mut alpha = vec![0u32; m];
    for k in 0..r as usize {
        alpha[offset + k] = 1;
    }
    aff_mul(
        &sigma_star_elt(r, a - r, offset, m, nu),
        &AffHeckeElt::x_mono(m, nu, alpha),
    )
}

/// g_r(u) = Σ_{0≤q≤r} (−1)^q (u)(u+1)⋯(u+q−1) · ω_{r,r−q}, as a
/// left-multiplier on a thickness-r strand at x-offset `offset`.
pub fn g_r_u_elt(r: u32, u: &PolyElt, offset: usize, m: usize, nu: usize) -> AffHeckeElt {
    let mut out = AffHeckeElt::zero(m, nu);
    for q in 0..=r {
        let mut coeff = PolyElt::one(0, nu);
        for j in 0..q {
            coeff = coeff.mul(&u.add(&PolyElt::constant(0, nu, Rat::from_integer(j.into()))));
        }
        if q % 2 == 1 {
            coeff = coeff.scale(&-Rat::one());
        }
        out = out.add(&omega_elt(r, r - q, offset, m, nu).scale_poly(&coeff));
    }
    out
}

/// g_{r,i} = ∏_{1≤j≤i} g_r(u_j) (empty product for i = 0).
pub fn g_r_element(r: u32, i: usize, offset: usize, ctx: &CycContext) -> AffHeckeElt {
    let mut out = AffHeckeElt::one(ctx.m, ctx.nu());
    for j in 1..=i {
        out = aff_mul(&out, &g_r_u_elt(r, &ctx.u_coeff(j), offset, ctx.m, ctx.nu()));
    }
    out
}

/// Ordered basis of bounded normal-form monomials x^α w, α_k < ℓ.
pub struct BoundedBasis {
    pub pairs: Vec<(Vec<u32>, Permutation)>,
    index: BTreeMap<(Vec<u32>, Permutation), usize>,
}

impl BoundedBasis {
    pub fn new(ctx: &CycContext) -> Self {
        let perms = Permutation::all(ctx.m);
        let mut pairs = Vec::new();
        let mut alpha = vec![0u32; ctx.m];
        loop {
            for w in &perms {
                pairs.push((alpha.clone(), w.clone()));
            }
            // next mixed-radix vector, digits < ell
            let mut k = 0;
            loop {
                if k == ctx.m {
                    let index = pairs
                        .iter()
                        .cloned()
                        .enumerate()
                        .map(|(i, p)| (p, i))
                        .collect();
                    return BoundedBasis { pairs, index };
                }
                alpha[k] += 1;
                if (alpha[k] as usize) < ctx.ell {
                    break;
                }
                alpha[k] = 0;
                k += 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Coordinates of a reduced element with constant coefficients.
    pub fn coords(&self, e: &AffHeckeElt) -> Result<Vec<Rat>> {
        let mut v = vec![Rat::zero(); self.pairs.len()];
        for ((alpha, w), c) in &e.terms {
            let idx = self
                .index
                .get(&(alpha.clone(), w.clone()))
                .ok_or_else(|| Error::Domain("element is not reduced".into()))?;
            let val = match c.terms.iter().next() {
                None => Rat::zero(),
                Some((mono, r)) if mono.0.iter().all(|&x| x == 0) && c.terms.len() == 1 => {
                    r.clone()
                }
                _ => return domain("coefficients must be numeric"),
            };
            v[*idx] = val;
        }
        Ok(v)
    }
}

/// Verify all defining relations of the cyclotomic quotient as operator
/// identities on the span of bounded monomials. On success this certifies
/// dim H_{m,u} = ℓ^m·m! and that [`cyc_reduce`] is canonical; returns that
/// dimension.
pub fn certify_dimension(ctx: &CycContext, parallel: bool) -> Result<u64> {
    let basis = BoundedBasis::new(ctx);
    let m = ctx.m;
    let nu = ctx.nu();
    let cyc = ctx.cyclotomic_poly();
    let checks = maybe_par_map(basis.pairs.clone(), parallel, |(alpha, w)| {
        let e = AffHeckeElt::x_mono(m, nu, alpha).right_mul_perm(&w);
        let red = |x: &AffHeckeElt| cyc_reduce(x, ctx);
        let ls = |i: usize, x: &AffHeckeElt| red(&x.left_mul_s(i));
        let lx = |j: usize, x: &AffHeckeElt| red(&x.left_mul_x(j));
        for i in 1..m {
            if ls(i, &ls(i, &e)) != e {
                return Err(Error::Invariant(format!("s_{i}^2 != 1 on a basis vector")));
            }
            // s_i x_i = x_{i+1} s_i + 1
            let lhs = ls(i, &lx(i, &e));
            let rhs = lx(i + 1, &ls(i, &e)).add(&e);
            if lhs != rhs {
                return Err(Error::Invariant(format!("s_{i} x_{i} relation fails")));
            }
            for j in 1..=m {
                if j != i && j != i + 1 && ls(i, &lx(j, &e)) != lx(j, &ls(i, &e)) {
                    return Err(Error::Invariant(format!("s_{i} x_{j} should commute")));
                }
            }
        }
        for i in 1..m.saturating_sub(1) {
            let lhs = ls(i, &ls(i + 1, &ls(i, &e)));
            let rhs = ls(i + 1, &ls(i, &ls(i + 1, &e)));
            if lhs != rhs {
                return Err(Error::Invariant(format!("braid relation fails at {i}")));
            }
        }
        for i in 1..m {
            for j in i + 2..m {
                if ls(i, &ls(j, &e)) != ls(j, &ls(i, &e)) {
                    return Err(Error::Invariant(format!("s_{i} s_{j} should commute")));
                }
            }
        }
        for k in 1..=m {
            for l in k + 1..=m {
                if lx(k, &lx(l, &e)) != lx(l, &lx(k, &e)) {
                    return Err(Error::Invariant(format!("x_{k} x_{l} should commute")));
                }
            }
        }
        if !red(&aff_mul(&cyc, &e)).is_zero() {
            return Err(Error::Invariant(
                "cyclotomic polynomial does not annihilate".into(),
            ));
        }
        Ok(())
    });
    for c in checks {
        c?;
    }
    Ok(basis.len() as u64)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PermModuleElt {
    pub mu: MultiComposition,
    pub coords: Vec<Rat>,
}

/// The basis {m_{𝐒𝔱}} of the permutation module M^μ = m_μ·H, with a cached
/// solver for coordinate expansion. Requires a numeric context.
pub struct PermModuleBasis {
    pub mu: MultiComposition,
    pub labels: Vec<(SemistandardTableau, StandardTableau)>,
    pub elements: Vec<AffHeckeElt>,
    pub bounded: BoundedBasis,
    solver: LinSolver,
}

pub fn perm_module_basis(mu: &MultiComposition, ctx: &CycContext) -> Result<PermModuleBasis> {
    if !matches!(ctx.params, CycParams::Numeric(_)) {
        return domain("permutation module expansion needs numeric parameters");
    }
    let m = mu.size() as usize;
    if m != ctx.m {
        return domain("size mismatch with context");
    }
    let bounded = BoundedBasis::new(ctx);
    let mut labels = Vec::new();
    let mut elements = Vec::new();
    let mut cols = Vec::new();
    for lam in enumerate_multipartitions(mu.size(), mu.level()) {
        let ssts = enumerate_sst(&lam, mu);
        if ssts.is_empty() {
            continue;
        }
        let sts = enumerate_standard_tableaux(&lam);
        for s in &ssts {
            for t in &sts {
                let e = cyc_reduce(&m_st_upper(s, t, mu, ctx)?, ctx);
                cols.push(bounded.coords(&e)?);
                labels.push((s.clone(), t.clone()));
                elements.push(e);
            }
        }
    }
    let solver = LinSolver::new(&cols);
    if solver.rank() != labels.len() {
        return Err(Error::Invariant(
            "claimed permutation-module basis is linearly dependent".into(),
        ));
    }
    Ok(PermModuleBasis {
        mu: mu.clone(),
        labels,
        elements,
        bounded,
        solver,
    })
}

pub fn perm_module_expand(
    xi: &AffHeckeElt,
    basis: &PermModuleBasis,
    ctx: &CycContext,
) -> Result<PermModuleElt> {
    let red = cyc_reduce(xi, ctx);
    let v = basis.bounded.coords(&red)?;
    let coords = basis
        .solver
        .solve(&v)
        .ok_or_else(|| Error::Domain("element is not in the permutation module".into()))?;
    Ok(PermModuleElt {
        mu: basis.mu.clone(),
        coords,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::rat;

    fn mc(comps: &[&[u32]]) -> MultiComposition {
        MultiComposition::new(comps.iter().map(|c| c.to_vec()).collect()).unwrap()
    }

    fn gens(m: usize) -> Vec<AffHeckeElt> {
        let mut v = Vec::new();
        for j in 1..=m {
            v.push(AffHeckeElt::x(m, 0, j));
        }
        for i in 1..m {
            v.push(AffHeckeElt::s(m, 0, i));
        }
        v
    }

    #[test]
    fn normal_form_basics() {
        let m = 2;
        let x1 = AffHeckeElt::x(m, 0, 1);
        let x2 = AffHeckeElt::x(m, 0, 2);
        let s1 = AffHeckeElt::s(m, 0, 1);
        // x1 s1 is already normal
        let p = aff_mul(&x1, &s1);
        assert_eq!(p.terms.len(), 1);
        // s1 x1 = x2 s1 + 1
        let q = aff_mul(&s1, &x1);
        let expect = aff_mul(&x2, &s1).add(&AffHeckeElt::one(m, 0));
        assert_eq!(q, expect);
        // s1 s1 = 1
        assert_eq!(aff_mul(&s1, &s1), AffHeckeElt::one(m, 0));
        // s1 x2 = x1 s1 - 1
        let r = aff_mul(&s1, &x2);
        let expect = aff_mul(&x1, &s1).sub(&AffHeckeElt::one(m, 0));
        assert_eq!(r, expect);
    }

    #[test]
    fn mul_matches_polynomial_action() {
        let m = 3;
        let gs = gens(m);
        let monos = [
            PolyElt::one(m, 0),
            PolyElt::x(m, 0, 1),
            PolyElt::x(m, 0, 2).mul(&PolyElt::x(m, 0, 3)),
            PolyElt::x(m, 0, 1).mul(&PolyElt::x(m, 0, 1)),
        ];
        for a in &gs {
            for b in &gs {
                let ab = aff_mul(a, b);
                for f in &monos {
                    assert_eq!(ab.act_poly(f), a.act_poly(&b.act_poly(f)));
                }
            }
        }
    }

    #[test]
    fn mul_is_associative() {
        let m = 3;
        let gs = gens(m);
        for a in &gs {
            for b in &gs {
                for c in &gs {
                    assert_eq!(
                        aff_mul(&aff_mul(a, b), c),
                        aff_mul(a, &aff_mul(b, c))
                    );
                }
            }
        }
    }

    #[test]
    fn anti_involution_properties() {
        let m = 3;
        let gs = gens(m);
        for g in &gs {
            assert_eq!(&anti_involution(g), g); // generators fixed
        }
        for a in &gs {
            for b in &gs {
                let ab = aff_mul(a, b);
                assert_eq!(anti_involution(&ab), aff_mul(&anti_involution(b), &anti_involution(a)));
                assert_eq!(anti_involution(&anti_involution(&ab)), ab);
            }
        }
        // (x1 s1)* = s1 x1 = x2 s1 + 1
        let m = 2;
        let star = anti_involution(&aff_mul(&AffHeckeElt::x(m, 0, 1), &AffHeckeElt::s(m, 0, 1)));
        let expect = aff_mul(&AffHeckeElt::x(m, 0, 2), &AffHeckeElt::s(m, 0, 1))
            .add(&AffHeckeElt::one(m, 0));
        assert_eq!(star, expect);
    }

    #[test]
    fn x_and_pi_lambda_examples() {
        let e = x_lambda(&mc(&[&[2]]), 2, 0);
        assert_eq!(e.terms.len(), 2); // 1 + s1
        assert_eq!(x_lambda(&mc(&[&[1, 1]]), 2, 0), AffHeckeElt::one(2, 0));
        let e3 = x_lambda(&mc(&[&[2, 1]]), 3, 0);
        assert_eq!(e3.terms.len(), 2);

        let ctx = CycContext::new(1, 2, CycParams::Generic);
        let p = pi_lambda(&mc(&[&[1], &[]]), &ctx);
        let expect = AffHeckeElt::x(1, 2, 1)
            .sub(&AffHeckeElt::one(1, 2).scale_poly(&PolyElt::u(0, 2, 2)));
        assert_eq!(p, expect);
        let ctx3 = CycContext::new(3, 2, CycParams::Generic);
        assert_eq!(
            pi_lambda(&mc(&[&[], &[1, 1, 1]]), &ctx3),
            AffHeckeElt::one(3, 2)
        );
        let ctx1 = CycContext::new(2, 1, CycParams::Generic);
        assert_eq!(pi_lambda(&mc(&[&[2]]), &ctx1), AffHeckeElt::one(2, 1));
    }

    #[test]
    fn m_lambda_properties() {
        let ctx1 = CycContext::new(2, 1, CycParams::Generic);
        let ml = m_lambda(&mc(&[&[2]]), &ctx1);
        assert_eq!(ml, x_lambda(&mc(&[&[2]]), 2, 1));
        // pi and x commute, * fixes m_lambda, m_{t^λ t^λ} = m_λ
        for m in 1..=3u32 {
            for lam in enumerate_multipartitions(m, 2) {
                let ctx = CycContext::new(m as usize, 2, CycParams::Generic);
                let ml = m_lambda(&lam, &ctx);
                let other = aff_mul(
                    &x_lambda(&lam, m as usize, 2),
                    &pi_lambda(&lam, &ctx),
                );
                assert_eq!(ml, other, "pi and x do not commute for {lam:?}");
                assert_eq!(anti_involution(&ml), ml);
                let tl = crate::combinatorics::canonical_tableau(&lam);
                assert_eq!(m_st(&tl, &tl, &ctx).unwrap(), ml);
            }
        }
    }

    #[test]
    fn m_st_star_swaps() {
        for m in 1..=3u32 {
            for lam in enumerate_multipartitions(m, 2) {
                let ctx = CycContext::new(m as usize, 2, CycParams::Generic);
                let sts = enumerate_standard_tableaux(&lam);
                for s in &sts {
                    for t in &sts {
                        let a = m_st(s, t, &ctx).unwrap();
                        let b = m_st(t, s, &ctx).unwrap();
                        assert_eq!(anti_involution(&a), b);
                    }
                }
            }
        }
    }

    #[test]
    fn cyc_reduce_examples() {
        let ctx = CycContext::new(1, 2, CycParams::Generic);
        assert!(cyc_reduce(&ctx.cyclotomic_poly(), &ctx).is_zero());
        let x1sq = AffHeckeElt::x_mono(1, 2, vec![2]);
        let red = cyc_reduce(&x1sq, &ctx);
        // (u1+u2) x1 - u1 u2
        let u1 = PolyElt::u(0, 2, 1);
        let u2 = PolyElt::u(0, 2, 2);
        let expect = AffHeckeElt::x(1, 2, 1)
            .scale_poly(&u1.add(&u2))
            .sub(&AffHeckeElt::one(1, 2).scale_poly(&u1.mul(&u2)));
        assert_eq!(red, expect);
        // idempotent
        assert_eq!(cyc_reduce(&red, &ctx), red);
    }

    #[test]
    fn cyc_reduce_is_module_map() {
        let ctx = CycContext::new(2, 2, CycParams::Generic);
        let samples = [
            AffHeckeElt::x_mono(2, 2, vec![2, 1]),
            aff_mul(
                &AffHeckeElt::s(2, 2, 1),
                &AffHeckeElt::x_mono(2, 2, vec![0, 3]),
            ),
            AffHeckeElt::x_mono(2, 2, vec![1, 2]),
        ];
        for a in &samples {
            for b in &samples {
                let lhs = cyc_reduce(&aff_mul(a, b), &ctx);
                let rhs = cyc_reduce(&aff_mul(&cyc_reduce(a, &ctx), b), &ctx);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn dimension_certificates_small() {
        for (m, ell) in [(1, 1), (1, 3), (2, 1), (2, 2), (3, 2)] {
            let ctx = CycContext::new(m, ell, CycParams::Generic);
            let dim = certify_dimension(&ctx, false).unwrap();
            assert_eq!(
                dim,
                (ell as u64).pow(m as u32) * (1..=m as u64).product::<u64>()
            );
        }
    }

    #[test]
    fn g_r_examples() {
        let ctx = CycContext::new(1, 2, CycParams::Generic);
        // g_1(u_1) = x_1 - u_1
        let g = g_r_u_elt(1, &ctx.u_coeff(1), 0, 1, 2);
        let expect = AffHeckeElt::x(1, 2, 1)
            .sub(&AffHeckeElt::one(1, 2).scale_poly(&PolyElt::u(0, 2, 1)));
        assert_eq!(g, expect);
        assert_eq!(g_r_element(1, 0, 0, &ctx), AffHeckeElt::one(1, 2));
        // g_{1,ℓ} is the cyclotomic polynomial, so it reduces to zero
        let g12 = g_r_element(1, 2, 0, &ctx);
        assert!(cyc_reduce(&g12, &ctx).is_zero());
    }

    #[test]
    fn perm_module_basis_small() {
        let u = vec![rat(0)];
        let ctx = CycContext::new(2, 1, CycParams::Numeric(u));
        let mu = mc(&[&[2]]);
        let basis = perm_module_basis(&mu, &ctx).unwrap();
        assert_eq!(basis.labels.len(), 1);
        let mmu = m_lambda(&mu, &ctx);
        let e = perm_module_expand(&mmu, &basis, &ctx).unwrap();
        assert_eq!(e.coords, vec![rat(1)]);
        assert!(perm_module_expand(&AffHeckeElt::zero(2, 0), &basis, &ctx)
            .unwrap()
            .coords
            .iter()
            .all(|c| c.is_zero()));
        // something outside M^mu = span{1 + s1}
        let s1 = AffHeckeElt::s(2, 0, 1);
        assert!(perm_module_expand(&s1, &basis, &ctx).is_err());
    }

    #[test]
    fn perm_module_spans() {
        // {m_{S t}} spans m_mu · H, level 2, m = 2
        let ctx = CycContext::new(2, 2, CycParams::Numeric(vec![rat(0), rat(1)]));
        for mu in crate::combinatorics::enumerate_multicompositions(2, 2) {
            let basis = perm_module_basis(&mu, &ctx).unwrap();
            let mmu = m_lambda(&mu, &ctx);
            for (alpha, w) in BoundedBasis::new(&ctx).pairs {
                let h = AffHeckeElt::x_mono(2, 0, alpha).right_mul_perm(&w);
                let xi = aff_mul(&mmu, &h);
                perm_module_expand(&xi, &basis, &ctx).unwrap();
            }
        }
    }
}
