//! Polynomial representation of the affine Schur category.
//!
//! Objects are words of thick strands (widths) and red strands (one per
//! parameter `u_j`); a word acts on polynomials that are symmetric within
//! each thick block. Morphisms are *programs*: sequences of generator
//! operations (splits, merges, thick crossings, thick dots, red traversals)
//! applied at token positions. Evaluation realizes every generator as an
//! exact operator on polynomials, which gives:
//!
//! * verification sweeps for the defining and derived relations,
//! * compilation of a partition-enhanced matrix into a program, and
//! * the leading-term analysis underlying linear independence of the
//!   compiled diagrams.

use num::{One, Zero};

use crate::combinatorics::{
    dual_partition, enumerate_partitions, MultiComposition, Permutation,
};
use crate::error::{domain, Error, Result};
use crate::par::maybe_par_map;
use crate::parmat::ParMat;
use crate::polyalg::{
    binom, embed_coeff, factorial, is_symmetric_blocks, monomial_symmetric, rat, sigma_action,
    Mono, PolyElt, Rat,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Token {
    /// Thick strand of the given width. Width 0 is allowed and acts as the
    /// empty object; it lets relation schemas keep fixed positions when a
    /// summation term degenerates.
    Thick(u32),
    /// Red strand carrying the parameter `u_j` (1-based).
    Red(usize),
}

impl Token {
    pub fn width(&self) -> usize {
        match self {
            Token::Thick(a) => *a as usize,
            Token::Red(_) => 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObjectWord(pub Vec<Token>);

impl ObjectWord {
    pub fn total_width(&self) -> usize {
        self.0.iter().map(Token::width).sum()
    }

    /// Index (0-based) of the first x-variable governed by the token at
    /// `pos`.
    pub fn x_offset(&self, pos: usize) -> usize {
        self.0[..pos].iter().map(Token::width).sum()
    }

    /// Positive thick widths with their variable offsets, in word order.
    pub fn blocks(&self) -> Vec<(usize, u32)> {
        let mut out = Vec::new();
        let mut off = 0;
        for t in &self.0 {
            if let Token::Thick(a) = t {
                if *a > 0 {
                    out.push((off, *a));
                }
                off += *a as usize;
            }
        }
        out
    }

    /// Largest red index in the word (0 if none).
    pub fn max_red(&self) -> usize {
        self.0
            .iter()
            .filter_map(|t| match t {
                Token::Red(j) => Some(*j),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenOp {
    /// `(a+b) -> (a, b)`.
    Split(u32, u32),
    /// `(a, b) -> (a+b)`.
    Merge(u32, u32),
    /// `(a, b) -> (b, a)`.
    Crossing(u32, u32),
    /// Thick dot `ω_{a,r}` on a strand of width `a` (`r ≤ a`; `r = 0` is the
    /// identity).
    Dot(u32, u32),
    /// Thick strand of width `a` passes right over the red strand `u_j`.
    TraverseUp(u32, usize),
    /// Red strand `u_j` passes right over the thick strand (the thick strand
    /// moves left and picks up the factor `∏_k (x_k - u_j)`).
    TraverseDown(u32, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PosOp {
    pub op: GenOp,
    pub pos: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramProgram {
    pub source: ObjectWord,
    pub ops: Vec<PosOp>,
}

fn bad_word<T>(op: &PosOp) -> Result<T> {
    domain(format!("operation {op:?} does not match the object word"))
}

/// Apply one generator to the object word (pure typechecking).
pub fn apply_gen(word: &ObjectWord, po: &PosOp) -> Result<ObjectWord> {
    let mut toks = word.0.clone();
    let pos = po.pos;
    let at = |k: usize| toks.get(k).copied();
    match po.op {
        GenOp::Split(a, b) => {
            if at(pos) != Some(Token::Thick(a + b)) {
                return bad_word(po);
            }
            toks.splice(pos..=pos, [Token::Thick(a), Token::Thick(b)]);
        }
        GenOp::Merge(a, b) => {
            if at(pos) != Some(Token::Thick(a)) || at(pos + 1) != Some(Token::Thick(b)) {
                return bad_word(po);
            }
            toks.splice(pos..=pos + 1, [Token::Thick(a + b)]);
        }
        GenOp::Crossing(a, b) => {
            if at(pos) != Some(Token::Thick(a)) || at(pos + 1) != Some(Token::Thick(b)) {
                return bad_word(po);
            }
            toks.swap(pos, pos + 1);
        }
        GenOp::Dot(a, r) => {
            if at(pos) != Some(Token::Thick(a)) || r > a {
                return bad_word(po);
            }
        }
        GenOp::TraverseUp(a, j) => {
            if at(pos) != Some(Token::Thick(a)) || at(pos + 1) != Some(Token::Red(j)) {
                return bad_word(po);
            }
            toks.swap(pos, pos + 1);
        }
        GenOp::TraverseDown(a, j) => {
            if at(pos) != Some(Token::Red(j)) || at(pos + 1) != Some(Token::Thick(a)) {
                return bad_word(po);
            }
            toks.swap(pos, pos + 1);
        }
    }
    Ok(ObjectWord(toks))
}

/// The block permutation swapping an `a`-block past a `b`-block, embedded at
/// x-offset `off` inside `S_nx`.
fn block_swap(a: u32, b: u32, off: usize, nx: usize) -> Permutation {
    let (a, b) = (a as usize, b as usize);
    let mut v: Vec<usize> = (0..nx).collect();
    for i in 0..a {
        v[off + i] = off + b + i;
    }
    for i in 0..b {
        v[off + a + i] = off + i;
    }
    Permutation(v)
}

/// Evaluate one generator on a polynomial; `word` is the object word *before*
/// the operation.
pub fn eval_gen(word: &ObjectWord, po: &PosOp, f: &PolyElt) -> Result<PolyElt> {
    let off = word.x_offset(po.pos);
    match po.op {
        GenOp::Split(a, b) => {
            if !is_symmetric_blocks(f, off, &[a + b]) {
                return domain("split input not symmetric in the block");
            }
            Ok(f.clone())
        }
        GenOp::Merge(a, b) => sigma_action(f, a, b, off),
        GenOp::Crossing(a, b) => {
            if !is_symmetric_blocks(f, off, &[a, b]) {
                return domain("crossing input not symmetric in the blocks");
            }
            Ok(f.act_perm_demazure(&block_swap(a, b, off, f.nx).inverse()))
        }
        GenOp::Dot(a, r) => {
            if r == 0 {
                return Ok(f.clone());
            }
            if !is_symmetric_blocks(f, off, &[a]) {
                return domain("dot input not symmetric in the block");
            }
            let mut g = f.clone();
            for k in 1..=r as usize {
                g = g.mul_x(off + k);
            }
            sigma_action(&g, r, a - r, off)
        }
        GenOp::TraverseUp(a, _) => {
            if !is_symmetric_blocks(f, off, &[a]) {
                return domain("traverse input not symmetric in the block");
            }
            Ok(f.clone())
        }
        GenOp::TraverseDown(a, j) => {
            if j > f.nu {
                return domain("red strand index exceeds parameter count");
            }
            let mut g = f.clone();
            for k in 1..=a as usize {
                let factor = PolyElt::x(f.nx, f.nu, off + k).sub(&PolyElt::u(f.nx, f.nu, j));
                g = g.mul(&factor);
            }
            Ok(g)
        }
    }
}

impl DiagramProgram {
    pub fn identity(source: ObjectWord) -> Self {
        DiagramProgram {
            source,
            ops: Vec::new(),
        }
    }

    pub fn target(&self) -> Result<ObjectWord> {
        let mut w = self.source.clone();
        for po in &self.ops {
            w = apply_gen(&w, po)?;
        }
        Ok(w)
    }

    pub fn eval(&self, f: &PolyElt) -> Result<PolyElt> {
        if f.nx != self.source.total_width() {
            return domain("polynomial variable count disagrees with the word");
        }
        let mut word = self.source.clone();
        let mut g = f.clone();
        for po in &self.ops {
            g = eval_gen(&word, po, &g)?;
            word = apply_gen(&word, po)?;
        }
        Ok(g)
    }

    pub fn then(&self, next: &DiagramProgram) -> Result<DiagramProgram> {
        if self.target()? != next.source {
            return domain("program composition: words disagree");
        }
        let mut ops = self.ops.clone();
        ops.extend_from_slice(&next.ops);
        Ok(DiagramProgram {
            source: self.source.clone(),
            ops,
        })
    }
}

/// Mirror a program across the horizontal axis: reverse the operations,
/// swapping split/merge and the two traversal directions. The mirror of a
/// `source -> target` program runs `target -> source`.
pub fn reflect(p: &DiagramProgram) -> Result<DiagramProgram> {
    let source = p.target()?;
    let ops = p
        .ops
        .iter()
        .rev()
        .map(|po| {
            let op = match po.op {
                GenOp::Split(a, b) => GenOp::Merge(a, b),
                GenOp::Merge(a, b) => GenOp::Split(a, b),
                GenOp::Crossing(a, b) => GenOp::Crossing(b, a),
                GenOp::Dot(a, r) => GenOp::Dot(a, r),
                GenOp::TraverseUp(a, j) => GenOp::TraverseDown(a, j),
                GenOp::TraverseDown(a, j) => GenOp::TraverseUp(a, j),
            };
            PosOp { op, pos: po.pos }
        })
        .collect();
    Ok(DiagramProgram { source, ops })
}

/// One side of a relation: a formal combination of programs with
/// `u`-polynomial coefficients (`nx = 0`).
#[derive(Clone, Debug)]
pub struct Side(pub Vec<(PolyElt, DiagramProgram)>);

impl Side {
    pub fn eval(&self, f: &PolyElt) -> Result<PolyElt> {
        let mut acc = PolyElt::zero(f.nx, f.nu);
        for (c, p) in &self.0 {
            let g = p.eval(f)?;
            acc = acc.add(&g.mul(&embed_coeff(c, f.nx)));
        }
        Ok(acc)
    }

    fn reflect(&self) -> Result<Side> {
        Ok(Side(
            self.0
                .iter()
                .map(|(c, p)| Ok((c.clone(), reflect(p)?)))
                .collect::<Result<Vec<_>>>()?,
        ))
    }
}

#[derive(Clone, Debug)]
pub struct RelationInstance {
    pub name: String,
    pub lhs: Side,
    pub rhs: Side,
}

impl RelationInstance {
    fn mirrored(&self, name: &str) -> Result<RelationInstance> {
        Ok(RelationInstance {
            name: name.to_string(),
            lhs: self.lhs.reflect()?,
            rhs: self.rhs.reflect()?,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// The defining relations of the thick presentation.
    Full,
    /// Consequences used elsewhere (red strands sliding past crossings,
    /// dots past traversals).
    Derived,
    /// The thin presentation: relations among width-1 generators plus the
    /// balloon identity defining thick dots.
    Reduced,
}

// Coefficients live in Q[u]; every relation instance uses a single symbolic
// parameter.
const NU: usize = 1;

fn uvar() -> PolyElt {
    PolyElt::u(0, NU, 1)
}

fn cst(c: Rat) -> PolyElt {
    PolyElt::constant(0, NU, c)
}

fn word(toks: &[Token]) -> ObjectWord {
    ObjectWord(toks.to_vec())
}

fn prog(src: &ObjectWord, ops: &[(GenOp, usize)]) -> DiagramProgram {
    DiagramProgram {
        source: src.clone(),
        ops: ops.iter().map(|&(op, pos)| PosOp { op, pos }).collect(),
    }
}

fn single(src: &ObjectWord, ops: &[(GenOp, usize)]) -> Side {
    Side(vec![(cst(Rat::one()), prog(src, ops))])
}

fn rel(name: String, lhs: Side, rhs: Side) -> RelationInstance {
    RelationInstance { name, lhs, rhs }
}

/// Generate all instances of a relation suite with parameters up to
/// `max_thickness`.
pub fn relation_suite(suite: Suite, max_thickness: u32) -> Result<Vec<RelationInstance>> {
    use GenOp::*;
    use Token::{Red, Thick};
    let cap = max_thickness;
    let mut out = Vec::new();

    match suite {
        Suite::Full => {
            for a in 1..=cap {
                for b in 1..=cap {
                    for c in 1..=cap {
                        let src = word(&[Thick(a + b + c)]);
                        out.push(rel(
                            format!("assoc-split({a},{b},{c})"),
                            single(&src, &[(Split(a, b + c), 0), (Split(b, c), 1)]),
                            single(&src, &[(Split(a + b, c), 0), (Split(a, b), 0)]),
                        ));
                        let src = word(&[Thick(a), Thick(b), Thick(c)]);
                        out.push(rel(
                            format!("assoc-merge({a},{b},{c})"),
                            single(&src, &[(Merge(a, b), 0), (Merge(a + b, c), 0)]),
                            single(&src, &[(Merge(b, c), 1), (Merge(a, b + c), 0)]),
                        ));
                    }
                }
            }
            for a in 1..=cap {
                for c in 1..=cap {
                    for b in 1..=(a + c - 1).min(cap) {
                        let d = a + c - b;
                        if d > cap {
                            continue;
                        }
                        let src = word(&[Thick(a), Thick(c)]);
                        let lhs = single(&src, &[(Merge(a, c), 0), (Split(b, d), 0)]);
                        let mut terms = Vec::new();
                        for s in 0..=a.min(b) {
                            if s + d < a {
                                continue;
                            }
                            let t = s + d - a;
                            if t > c.min(d) {
                                continue;
                            }
                            terms.push((
                                cst(Rat::one()),
                                prog(
                                    &src,
                                    &[
                                        (Split(s, a - s), 0),
                                        (Split(c - t, t), 2),
                                        (Crossing(a - s, c - t), 1),
                                        (Merge(s, c - t), 0),
                                        (Merge(a - s, t), 1),
                                    ],
                                ),
                            ));
                        }
                        out.push(rel(
                            format!("merge-split({a},{c};{b},{d})"),
                            lhs,
                            Side(terms),
                        ));
                    }
                }
            }
            for a in 1..=cap {
                for b in 1..=cap {
                    let src = word(&[Thick(a + b)]);
                    out.push(rel(
                        format!("split-merge({a},{b})"),
                        single(&src, &[(Split(a, b), 0), (Merge(a, b), 0)]),
                        Side(vec![(cst(binom(a + b, a)), prog(&src, &[]))]),
                    ));

                    let src = word(&[Thick(a), Thick(b)]);
                    let lhs = single(&src, &[(Crossing(a, b), 0), (Dot(b, b), 0)]);
                    let mut terms = Vec::new();
                    for t in 0..=a.min(b) {
                        terms.push((
                            cst(factorial(t)),
                            prog(
                                &src,
                                &[
                                    (Split(t, a - t), 0),
                                    (Split(b - t, t), 2),
                                    (Dot(b - t, b - t), 2),
                                    (Crossing(a - t, b - t), 1),
                                    (Merge(t, b - t), 0),
                                    (Merge(a - t, t), 1),
                                ],
                            ),
                        ));
                    }
                    let dmc = rel(format!("dot-move-crossing({a},{b})"), lhs, Side(terms));
                    out.push(dmc.mirrored(&format!("dot-move-crossing-mirror({a},{b})"))?);
                    out.push(dmc);

                    let src = word(&[Thick(a + b)]);
                    let dms = rel(
                        format!("dot-move-split({a},{b})"),
                        single(&src, &[(Dot(a + b, a + b), 0), (Split(a, b), 0)]),
                        single(&src, &[(Split(a, b), 0), (Dot(a, a), 0), (Dot(b, b), 1)]),
                    );
                    out.push(dms.mirrored(&format!("dot-move-merge({a},{b})"))?);
                    out.push(dms);

                    let src = word(&[Thick(a), Thick(b)]);
                    out.push(rel(
                        format!("crossing-involution({a},{b})"),
                        single(&src, &[(Crossing(a, b), 0), (Crossing(b, a), 0)]),
                        single(&src, &[]),
                    ));
                    out.push(rel(
                        format!("crossing-absorb-merge({a},{b})"),
                        single(&src, &[(Crossing(a, b), 0), (Merge(b, a), 0)]),
                        single(&src, &[(Merge(a, b), 0)]),
                    ));
                    let src = word(&[Thick(a + b)]);
                    out.push(rel(
                        format!("crossing-absorb-split({a},{b})"),
                        single(&src, &[(Split(b, a), 0), (Crossing(b, a), 0)]),
                        single(&src, &[(Split(a, b), 0)]),
                    ));

                    let src = word(&[Thick(a), Thick(b)]);
                    let mut terms = Vec::new();
                    for t in 0..=a.min(b) {
                        let sign = if t % 2 == 0 { Rat::one() } else { -Rat::one() };
                        terms.push((
                            cst(sign),
                            prog(
                                &src,
                                &[
                                    (Split(t, a - t), 0),
                                    (Merge(a - t, b), 1),
                                    (Split(b - t, a), 1),
                                    (Merge(t, b - t), 0),
                                ],
                            ),
                        ));
                    }
                    out.push(rel(
                        format!("crossing-resolution({a},{b})"),
                        single(&src, &[(Crossing(a, b), 0)]),
                        Side(terms),
                    ));
                }
            }
            for a in 1..=cap {
                let src = word(&[Thick(a)]);
                let mut ops: Vec<(GenOp, usize)> = Vec::new();
                for i in 0..(a - 1) as usize {
                    ops.push((Split(1, a - 1 - i as u32), i));
                }
                for k in 0..a as usize {
                    ops.push((Dot(1, 1), k));
                }
                for k in 2..=a {
                    ops.push((Merge(k - 1, 1), 0));
                }
                out.push(rel(
                    format!("balloon({a})"),
                    single(&src, &ops),
                    Side(vec![(cst(factorial(a)), prog(&src, &[(Dot(a, a), 0)]))]),
                ));
            }
            for b in 1..=cap {
                for c in 1..=cap {
                    if b + c > cap {
                        continue;
                    }
                    for a in 1..=cap {
                        let src = word(&[Thick(b + c), Thick(a)]);
                        out.push(rel(
                            format!("slide-split-left({a},{b},{c})"),
                            single(&src, &[(Crossing(b + c, a), 0), (Split(b, c), 1)]),
                            single(
                                &src,
                                &[(Split(b, c), 0), (Crossing(c, a), 1), (Crossing(b, a), 0)],
                            ),
                        ));
                        let src = word(&[Thick(a), Thick(b + c)]);
                        out.push(rel(
                            format!("slide-split-right({a},{b},{c})"),
                            single(&src, &[(Crossing(a, b + c), 0), (Split(b, c), 0)]),
                            single(
                                &src,
                                &[(Split(b, c), 1), (Crossing(a, b), 0), (Crossing(a, c), 1)],
                            ),
                        ));
                        let src = word(&[Thick(b), Thick(c), Thick(a)]);
                        out.push(rel(
                            format!("slide-merge-left({a},{b},{c})"),
                            single(&src, &[(Merge(b, c), 0), (Crossing(b + c, a), 0)]),
                            single(
                                &src,
                                &[(Crossing(c, a), 1), (Crossing(b, a), 0), (Merge(b, c), 1)],
                            ),
                        ));
                        let src = word(&[Thick(a), Thick(b), Thick(c)]);
                        out.push(rel(
                            format!("slide-merge-right({a},{b},{c})"),
                            single(&src, &[(Merge(b, c), 1), (Crossing(a, b + c), 0)]),
                            single(
                                &src,
                                &[(Crossing(a, b), 0), (Crossing(a, c), 1), (Merge(b, c), 0)],
                            ),
                        ));
                    }
                }
            }
            for r in 1..=cap {
                out.push(adaptor_relation(r, false));
                out.push(adaptor_relation(r, true));
            }
            for a in 1..=cap {
                for b in 1..=cap {
                    let amc = adaptor_move_crossing(a, b);
                    out.push(amc.mirrored(&format!("red-move-crossing-mirror({a},{b})"))?);
                    out.push(amc);

                    let src = word(&[Red(1), Thick(a), Thick(b)]);
                    let m1 = rel(
                        format!("red-move-merge({a},{b})"),
                        single(&src, &[(Merge(a, b), 1), (TraverseDown(a + b, 1), 0)]),
                        single(
                            &src,
                            &[
                                (TraverseDown(a, 1), 0),
                                (TraverseDown(b, 1), 1),
                                (Merge(a, b), 0),
                            ],
                        ),
                    );
                    let src = word(&[Red(1), Thick(a + b)]);
                    let m2 = rel(
                        format!("red-move-split({a},{b})"),
                        single(&src, &[(TraverseDown(a + b, 1), 0), (Split(a, b), 0)]),
                        single(
                            &src,
                            &[
                                (Split(a, b), 1),
                                (TraverseDown(a, 1), 0),
                                (TraverseDown(b, 1), 1),
                            ],
                        ),
                    );
                    out.push(m1.mirrored(&format!("red-move-split-up({a},{b})"))?);
                    out.push(m2.mirrored(&format!("red-move-merge-up({a},{b})"))?);
                    out.push(m1);
                    out.push(m2);
                }
            }
        }
        Suite::Derived => {
            for a in 1..=cap {
                for b in 1..=cap {
                    let src = word(&[Red(1), Thick(a), Thick(b)]);
                    let v1 = rel(
                        format!("red-past-crossing({a},{b})"),
                        single(
                            &src,
                            &[
                                (TraverseDown(a, 1), 0),
                                (TraverseDown(b, 1), 1),
                                (Crossing(a, b), 0),
                            ],
                        ),
                        single(
                            &src,
                            &[
                                (Crossing(a, b), 1),
                                (TraverseDown(b, 1), 0),
                                (TraverseDown(a, 1), 1),
                            ],
                        ),
                    );
                    out.push(v1.mirrored(&format!("red-past-crossing-mirror({a},{b})"))?);
                    out.push(v1);
                }
                for r in 0..=a {
                    let src = word(&[Thick(a), Red(1)]);
                    out.push(rel(
                        format!("dot-past-up({a},{r})"),
                        single(&src, &[(Dot(a, r), 0), (TraverseUp(a, 1), 0)]),
                        single(&src, &[(TraverseUp(a, 1), 0), (Dot(a, r), 1)]),
                    ));
                    let src = word(&[Red(1), Thick(a)]);
                    out.push(rel(
                        format!("dot-past-down({a},{r})"),
                        single(&src, &[(Dot(a, r), 1), (TraverseDown(a, 1), 0)]),
                        single(&src, &[(TraverseDown(a, 1), 0), (Dot(a, r), 0)]),
                    ));
                }
            }
        }
        Suite::Reduced => {
            let src = word(&[Thick(1), Thick(1)]);
            out.push(rel(
                "thin-dot-crossing-1".into(),
                single(&src, &[(Crossing(1, 1), 0), (Dot(1, 1), 0)]),
                Side(vec![
                    (
                        cst(Rat::one()),
                        prog(&src, &[(Dot(1, 1), 1), (Crossing(1, 1), 0)]),
                    ),
                    (cst(Rat::one()), prog(&src, &[(Crossing(1, 1), 0), (Crossing(1, 1), 0)])),
                ]),
            ));
            out.push(rel(
                "thin-dot-crossing-2".into(),
                single(&src, &[(Crossing(1, 1), 0), (Dot(1, 1), 1)]),
                Side(vec![
                    (
                        cst(Rat::one()),
                        prog(&src, &[(Dot(1, 1), 0), (Crossing(1, 1), 0)]),
                    ),
                    (cst(-Rat::one()), prog(&src, &[(Crossing(1, 1), 0), (Crossing(1, 1), 0)])),
                ]),
            ));
            let src = word(&[Thick(1), Red(1)]);
            out.push(rel(
                "thin-adaptor-ud".into(),
                single(&src, &[(TraverseUp(1, 1), 0), (TraverseDown(1, 1), 0)]),
                Side(vec![
                    (cst(Rat::one()), prog(&src, &[(Dot(1, 1), 0)])),
                    (uvar().scale(&-Rat::one()), prog(&src, &[])),
                ]),
            ));
            let src = word(&[Red(1), Thick(1)]);
            out.push(rel(
                "thin-adaptor-du".into(),
                single(&src, &[(TraverseDown(1, 1), 0), (TraverseUp(1, 1), 0)]),
                Side(vec![
                    (cst(Rat::one()), prog(&src, &[(Dot(1, 1), 1)])),
                    (uvar().scale(&-Rat::one()), prog(&src, &[])),
                ]),
            ));
            out.push(adaptor_move_crossing(1, 1));
            {
                let src = word(&[Red(1), Thick(1), Thick(1)]);
                out.push(rel(
                    "thin-red-move-merge".into(),
                    single(&src, &[(Merge(1, 1), 1), (TraverseDown(2, 1), 0)]),
                    single(
                        &src,
                        &[
                            (TraverseDown(1, 1), 0),
                            (TraverseDown(1, 1), 1),
                            (Merge(1, 1), 0),
                        ],
                    ),
                ));
                let src = word(&[Red(1), Thick(2)]);
                out.push(rel(
                    "thin-red-move-split".into(),
                    single(&src, &[(TraverseDown(2, 1), 0), (Split(1, 1), 0)]),
                    single(
                        &src,
                        &[
                            (Split(1, 1), 1),
                            (TraverseDown(1, 1), 0),
                            (TraverseDown(1, 1), 1),
                        ],
                    ),
                ));
            }
            for r in 1..=cap {
                // the thick dot is determined by thin generators
                let src = word(&[Thick(r)]);
                let mut ops: Vec<(GenOp, usize)> = Vec::new();
                for i in 0..(r - 1) as usize {
                    ops.push((Split(1, r - 1 - i as u32), i));
                }
                for k in 0..r as usize {
                    ops.push((Dot(1, 1), k));
                }
                for k in 2..=r {
                    ops.push((Merge(k - 1, 1), 0));
                }
                out.push(rel(
                    format!("thin-dot-definition({r})"),
                    single(&src, &[(Dot(r, r), 0)]),
                    Side(vec![(
                        cst(Rat::one() / factorial(r)),
                        prog(&src, &ops),
                    )]),
                ));
            }
        }
    }
    Ok(out)
}

fn adaptor_relation(r: u32, red_left: bool) -> RelationInstance {
    use GenOp::*;
    use Token::{Red, Thick};
    let (src, updown, dotpos, tag) = if red_left {
        (
            word(&[Red(1), Thick(r)]),
            vec![(TraverseDown(r, 1), 0), (TraverseUp(r, 1), 0)],
            1,
            "du",
        )
    } else {
        (
            word(&[Thick(r), Red(1)]),
            vec![(TraverseUp(r, 1), 0), (TraverseDown(r, 1), 0)],
            0,
            "ud",
        )
    };
    let mut terms = Vec::new();
    for i in 0..=r {
        // (-1)^i * u(u+1)...(u+i-1)
        let mut c = cst(if i % 2 == 0 { Rat::one() } else { -Rat::one() });
        for j in 0..i as i64 {
            c = c.mul(&uvar().add(&cst(rat(j))));
        }
        terms.push((c, prog(&src, &[(Dot(r, r - i), dotpos)])));
    }
    rel(
        format!("adaptor-{tag}({r})"),
        single(&src, &updown),
        Side(terms),
    )
}

fn adaptor_move_crossing(a: u32, b: u32) -> RelationInstance {
    use GenOp::*;
    use Token::{Red, Thick};
    let src = word(&[Thick(a), Red(1), Thick(b)]);
    let lhs = single(
        &src,
        &[
            (TraverseUp(a, 1), 0),
            (Crossing(a, b), 1),
            (TraverseDown(b, 1), 0),
        ],
    );
    let mut terms = vec![(
        cst(Rat::one()),
        prog(
            &src,
            &[
                (TraverseDown(b, 1), 1),
                (Crossing(a, b), 0),
                (TraverseUp(a, 1), 1),
            ],
        ),
    )];
    for t in 1..=a.min(b) {
        terms.push((
            cst(factorial(t)),
            prog(
                &src,
                &[
                    (Split(b - t, t), 2),
                    (TraverseDown(b - t, 1), 1),
                    (Split(t, a - t), 0),
                    (Crossing(a - t, b - t), 1),
                    (Merge(t, b - t), 0),
                    (TraverseUp(a - t, 1), 1),
                    (Merge(a - t, t), 2),
                ],
            ),
        ));
    }
    rel(format!("red-move-crossing({a},{b})"), lhs, Side(terms))
}

/// Products of monomial symmetric polynomials, one per thick block, of total
/// degree ≤ `max_degree`; a spanning set of the word's polynomial space up to
/// that degree.
pub fn spanning_set(word: &ObjectWord, nu: usize, max_degree: u32) -> Vec<PolyElt> {
    let nx = word.total_width();
    let blocks = word.blocks();
    let mut out = Vec::new();
    fn go(
        k: usize,
        budget: u32,
        acc: &PolyElt,
        blocks: &[(usize, u32)],
        nx: usize,
        nu: usize,
        out: &mut Vec<PolyElt>,
    ) {
        if k == blocks.len() {
            out.push(acc.clone());
            return;
        }
        let (off, width) = blocks[k];
        for d in 0..=budget {
            for part in enumerate_partitions(d, None, Some(width as usize)) {
                let m = monomial_symmetric(nx, nu, off, width as usize, &part);
                go(k + 1, budget - d, &acc.mul(&m), blocks, nx, nu, out);
            }
        }
    }
    go(
        0,
        max_degree,
        &PolyElt::one(nx, nu),
        &blocks,
        nx,
        nu,
        &mut out,
    );
    out
}

/// Check one relation instance on the full spanning set.
pub fn verify_instance(inst: &RelationInstance, max_degree: u32) -> Result<()> {
    let progs: Vec<&DiagramProgram> = inst
        .lhs
        .0
        .iter()
        .chain(inst.rhs.0.iter())
        .map(|(_, p)| p)
        .collect();
    let Some(first) = progs.first() else {
        return domain("empty relation");
    };
    let src = &first.source;
    let tgt = first.target()?;
    for p in &progs[1..] {
        if p.source != *src || p.target()? != tgt {
            return Err(Error::Invariant(format!(
                "relation {}: sides are not parallel",
                inst.name
            )));
        }
    }
    for f in spanning_set(src, NU, max_degree) {
        let l = inst.lhs.eval(&f)?;
        let r = inst.rhs.eval(&f)?;
        if l != r {
            return Err(Error::Invariant(format!(
                "relation {} fails on {}",
                inst.name, f
            )));
        }
    }
    Ok(())
}

#[derive(Debug)]
pub struct VerifyReport {
    pub instances: usize,
}

/// Verify a whole suite; returns the number of instances checked.
pub fn verify_relations(
    suite: Suite,
    max_thickness: u32,
    max_degree: u32,
    parallel: bool,
) -> Result<VerifyReport> {
    let instances = relation_suite(suite, max_thickness)?;
    let n = instances.len();
    let results = maybe_par_map(instances, parallel, |inst| verify_instance(&inst, max_degree));
    for r in results {
        r?;
    }
    Ok(VerifyReport { instances: n })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordStyle {
    /// Red strands separate consecutive components: `λ⁰ u₁ λ¹ u₂ λ² ...`.
    Affine,
    /// A red strand precedes every component: `u₁ λ⁰ u₂ λ¹ ...`.
    Cyclotomic,
}

pub fn object_word(mc: &MultiComposition, style: WordStyle) -> ObjectWord {
    let mut toks = Vec::new();
    for (c, comp) in mc.comps.iter().enumerate() {
        match style {
            WordStyle::Affine => {
                if c > 0 {
                    toks.push(Token::Red(c));
                }
            }
            WordStyle::Cyclotomic => toks.push(Token::Red(c + 1)),
        }
        for &a in comp {
            toks.push(Token::Thick(a));
        }
    }
    ObjectWord(toks)
}

#[derive(Clone, Copy, Debug)]
enum MItem {
    Leg { row: usize, col: usize, a: u32 },
    Red(usize),
}

/// Compile a partition-enhanced matrix into a program `bot -> top`: split
/// each source strand into its legs (applying the dot packets), sort the legs
/// and red strands into target order (emitting crossings and traversals), and
/// merge the legs of each target strand.
pub fn compile_parmat(x: &ParMat, style: WordStyle) -> Result<DiagramProgram> {
    x.validate()?;
    let src = object_word(&x.bot, style);
    let nrows = x.top.flatten().len();
    let mut ops: Vec<PosOp> = Vec::new();
    let mut items: Vec<MItem> = Vec::new();

    // bottom: split source strands into legs, apply dot packets
    let mut col = 0usize;
    let mut pos = 0usize;
    for tok in &src.0 {
        match tok {
            Token::Red(j) => {
                items.push(MItem::Red(*j));
                pos += 1;
            }
            Token::Thick(muj) => {
                let j = col;
                col += 1;
                let legs: Vec<(usize, u32)> = (0..nrows)
                    .filter_map(|i| {
                        let a = x.a.0[i][j];
                        (a > 0).then_some((i, a))
                    })
                    .collect();
                let mut rem = *muj;
                for (t, &(_, a)) in legs.iter().enumerate() {
                    if t + 1 < legs.len() {
                        ops.push(PosOp {
                            op: GenOp::Split(a, rem - a),
                            pos: pos + t,
                        });
                    }
                    rem -= a;
                }
                for (t, &(i, a)) in legs.iter().enumerate() {
                    for &part in &x.p[i][j].0 {
                        ops.push(PosOp {
                            op: GenOp::Dot(a, part),
                            pos: pos + t,
                        });
                    }
                }
                for &(i, a) in &legs {
                    items.push(MItem::Leg { row: i, col: j, a });
                }
                pos += legs.len();
            }
        }
    }

    // middle: sort into target order; the word now has one token per item
    let tgt = object_word(&x.top, style);
    let mut row_rank = vec![0usize; nrows];
    let mut red_rank = vec![0usize; tgt.max_red() + 1];
    {
        let mut row = 0usize;
        for (r, tok) in tgt.0.iter().enumerate() {
            match tok {
                Token::Red(j) => red_rank[*j] = r,
                Token::Thick(_) => {
                    row_rank[row] = r;
                    row += 1;
                }
            }
        }
    }
    let key = |it: &MItem| match it {
        MItem::Leg { row, col, .. } => (row_rank[*row], col + 1),
        MItem::Red(j) => (red_rank[*j], 0),
    };
    loop {
        let mut swapped = false;
        for idx in 0..items.len().saturating_sub(1) {
            if key(&items[idx]) > key(&items[idx + 1]) {
                let op = match (&items[idx], &items[idx + 1]) {
                    (MItem::Leg { a, .. }, MItem::Red(j)) => GenOp::TraverseUp(*a, *j),
                    (MItem::Red(j), MItem::Leg { a, .. }) => GenOp::TraverseDown(*a, *j),
                    (MItem::Leg { a: al, .. }, MItem::Leg { a: ar, .. }) => {
                        GenOp::Crossing(*al, *ar)
                    }
                    (MItem::Red(_), MItem::Red(_)) => {
                        return Err(Error::Invariant("red strands out of order".into()))
                    }
                };
                ops.push(PosOp { op, pos: idx });
                items.swap(idx, idx + 1);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }

    // top: merge the legs of each target strand, left to right
    let mut idx = 0usize;
    while idx < items.len() {
        let merged = match (&items[idx], items.get(idx + 1)) {
            (
                MItem::Leg { row: r1, a: a1, .. },
                Some(MItem::Leg { row: r2, a: a2, .. }),
            ) if r1 == r2 => {
                ops.push(PosOp {
                    op: GenOp::Merge(*a1, *a2),
                    pos: idx,
                });
                Some(a1 + a2)
            }
            _ => None,
        };
        match merged {
            Some(a) => {
                if let MItem::Leg { a: w, .. } = &mut items[idx] {
                    *w = a;
                }
                items.remove(idx + 1);
            }
            None => idx += 1,
        }
    }

    let program = DiagramProgram { source: src, ops };
    if program.target()? != tgt {
        return Err(Error::Invariant("compiled program misses its target".into()));
    }
    Ok(program)
}

/// The separating test monomial: the k-th source strand's variables all carry
/// exponent `k·n`.
pub fn staircase_monomial(mu: &MultiComposition, nu: usize, n: u32) -> PolyElt {
    let flat = mu.flatten();
    let mut exps = Vec::new();
    for (k, &w) in flat.iter().enumerate() {
        for _ in 0..w {
            exps.push((k as u32 + 1) * n);
        }
    }
    let nx = exps.len();
    exps.extend(std::iter::repeat(0).take(nu));
    PolyElt::monomial(nx, nu, exps, Rat::one())
}

/// A staircase step size large enough to keep the leading terms of the
/// Hom-space diagrams separated.
pub fn default_staircase_step(diagrams: &[ParMat]) -> u32 {
    let m = diagrams.first().map(|x| x.bot.size()).unwrap_or(0);
    let dot = diagrams.iter().map(|x| x.degree()).max().unwrap_or(0);
    let thick = diagrams
        .iter()
        .flat_map(|x| x.a.0.iter().flatten())
        .copied()
        .max()
        .unwrap_or(0);
    m + dot + thick + 1
}

/// The predicted leading x-exponents of the compiled diagram on the staircase
/// monomial with step `n`: target strands left to right, legs within a strand
/// by decreasing source strand, each leg of thickness `a` from source strand
/// `j` contributing `j·n + η'_k + r` where `η'` is the dual dot packet
/// (padded to length `a`) and `r` counts the leg's downward red traversals.
pub fn leading_exponents(x: &ParMat, n: u32) -> Vec<u32> {
    let mut exps = Vec::new();
    for i in 0..x.a.nrows() {
        for j in (0..x.a.ncols()).rev() {
            let a = x.a.0[i][j];
            if a == 0 {
                continue;
            }
            let dual = dual_partition(&x.p[i][j]);
            let r = x.col_block(j).saturating_sub(x.row_block(i)) as u32;
            for k in 0..a as usize {
                let d = dual.0.get(k).copied().unwrap_or(0);
                exps.push((j as u32 + 1) * n + d + r);
            }
        }
    }
    exps
}

/// Evaluate the compiled diagram on the staircase monomial and compare its
/// grlex-leading monomial with the predicted exponents.
pub fn leading_term_check(x: &ParMat, style: WordStyle, n: u32) -> Result<bool> {
    let program = compile_parmat(x, style)?;
    let nu = program.source.max_red().max(program.target()?.max_red());
    let f = staircase_monomial(&x.bot, nu, n);
    let g = program.eval(&f)?;
    let mut expected = leading_exponents(x, n);
    expected.extend(std::iter::repeat(0).take(nu));
    match g.leading() {
        Some((mono, coeff)) => Ok(mono.0 == expected && !coeff.is_zero()),
        None => Ok(false),
    }
}

#[derive(Debug)]
pub struct FaithReport {
    pub diagrams: usize,
    pub leading_ok: bool,
    pub distinct_leading: bool,
    pub rank: usize,
}

/// Full linear-independence audit of one Hom-space family: every compiled
/// diagram's leading term matches the prediction, the leading terms are
/// pairwise distinct, and the evaluations at the staircase monomial have full
/// rank.
pub fn faithfulness_check(
    top: &MultiComposition,
    bot: &MultiComposition,
    degree_cap: u32,
    style: WordStyle,
    parallel: bool,
) -> Result<FaithReport> {
    let diagrams = crate::parmat::enumerate_parmat(top, bot, degree_cap);
    let count = diagrams.len();
    if count == 0 {
        return Ok(FaithReport {
            diagrams: 0,
            leading_ok: true,
            distinct_leading: true,
            rank: 0,
        });
    }
    let n = default_staircase_step(&diagrams);
    let evals: Vec<Result<(Vec<u32>, PolyElt)>> = maybe_par_map(diagrams, parallel, |x| {
        let program = compile_parmat(&x, style)?;
        let nu = program.source.max_red().max(program.target()?.max_red());
        let f = staircase_monomial(&x.bot, nu, n);
        let g = program.eval(&f)?;
        Ok((leading_exponents(&x, n), g))
    });
    let mut leading_ok = true;
    let mut seen: std::collections::BTreeSet<Vec<u32>> = Default::default();
    let mut distinct = true;
    // honest rank of the evaluations: sparse row echelon keyed by the
    // leading monomial, so distinct leading terms insert without fill-in
    let mut echelon: std::collections::BTreeMap<Mono, std::collections::BTreeMap<Mono, Rat>> =
        Default::default();
    for r in evals {
        let (mut expected, g) = r?;
        let nu = g.nu;
        expected.extend(std::iter::repeat(0).take(nu));
        match g.leading() {
            Some((mono, _)) => {
                if mono.0 != expected {
                    leading_ok = false;
                }
            }
            None => leading_ok = false,
        }
        if !seen.insert(expected) {
            distinct = false;
        }
        let mut row = g.terms;
        while let Some(piv) = row.keys().next_back().cloned() {
            let Some(er) = echelon.get(&piv) else {
                echelon.insert(piv, row);
                break;
            };
            let f = row[&piv].clone() / er[&piv].clone();
            let er = er.clone();
            for (m, c) in er {
                let v = row.remove(&m).unwrap_or_else(Rat::zero) - f.clone() * c;
                if !v.is_zero() {
                    row.insert(m, v);
                }
            }
        }
    }
    Ok(FaithReport {
        diagrams: count,
        leading_ok,
        distinct_leading: distinct,
        rank: echelon.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{enumerate_multicompositions, Partition};
    use GenOp::*;
    use Token::{Red, Thick};

    fn sym2() -> PolyElt {
        // x1 + x2
        PolyElt::x(2, 0, 1).add(&PolyElt::x(2, 0, 2))
    }

    #[test]
    fn generator_evaluation() {
        // merge of two thin strands symmetrizes
        let src = word(&[Thick(1), Thick(1)]);
        let p = prog(&src, &[(Merge(1, 1), 0)]);
        let f = PolyElt::x(2, 0, 1);
        assert_eq!(p.eval(&f).unwrap(), sym2().add(&PolyElt::one(2, 0)));

        // split then merge is the binomial scalar
        let src = word(&[Thick(3)]);
        let p = prog(&src, &[(Split(1, 2), 0), (Merge(1, 2), 0)]);
        let f = PolyElt::one(3, 0);
        assert_eq!(p.eval(&f).unwrap(), PolyElt::constant(3, 0, rat(3)));

        // crossing twice is the identity
        let src = word(&[Thick(1), Thick(2)]);
        let p = prog(&src, &[(Crossing(1, 2), 0), (Crossing(2, 1), 0)]);
        let f = PolyElt::x(3, 0, 2).add(&PolyElt::x(3, 0, 3));
        assert_eq!(p.eval(&f).unwrap(), f);

        // a red traversal down multiplies by (x - u)
        let src = word(&[Red(1), Thick(1)]);
        let p = prog(&src, &[(TraverseDown(1, 1), 0)]);
        let f = PolyElt::one(1, 1);
        let expect = PolyElt::x(1, 1, 1).sub(&PolyElt::u(1, 1, 1));
        assert_eq!(p.eval(&f).unwrap(), expect);

        // non-symmetric input into a merge is rejected
        let src = word(&[Thick(2)]);
        let p = prog(&src, &[(Split(1, 1), 0), (Merge(1, 1), 0)]);
        assert!(p.eval(&PolyElt::x(2, 0, 1)).is_err());
    }

    #[test]
    fn reflect_roundtrip() {
        let src = word(&[Thick(2), Red(1), Thick(1)]);
        let p = prog(
            &src,
            &[
                (TraverseUp(2, 1), 0),
                (Crossing(2, 1), 1),
                (TraverseDown(1, 1), 0),
            ],
        );
        let r = reflect(&p).unwrap();
        assert_eq!(r.source, p.target().unwrap());
        assert_eq!(r.target().unwrap(), p.source);
        assert_eq!(reflect(&r).unwrap(), p);
    }

    #[test]
    fn full_relations_small() {
        let report = verify_relations(Suite::Full, 2, 3, false).unwrap();
        assert!(report.instances > 50);
    }

    #[test]
    fn selected_relations_thickness_three() {
        // spot-check the heavier instances at the acceptance scale
        for inst in relation_suite(Suite::Full, 3).unwrap() {
            if inst.name == "crossing-resolution(3,3)"
                || inst.name == "dot-move-crossing(3,2)"
                || inst.name == "red-move-crossing(2,3)"
                || inst.name == "merge-split(3,3;3,3)"
            {
                verify_instance(&inst, 3).unwrap();
            }
        }
    }

    #[test]
    fn derived_relations_small() {
        let report = verify_relations(Suite::Derived, 2, 3, false).unwrap();
        assert!(report.instances > 10);
    }

    #[test]
    fn reduced_relations() {
        let report = verify_relations(Suite::Reduced, 3, 4, false).unwrap();
        assert!(report.instances >= 10);
    }

    #[test]
    fn dot_closed_form_discrepancy() {
        // On symmetric inputs the dot ω_{a,r} agrees with multiplication by
        // σ(x1..xr); as an operator on all polynomials it does not, because
        // the Demazure sum produces lower-degree correction terms.
        let src = word(&[Thick(2)]);
        let dot = prog(&src, &[(Dot(2, 1), 0)]);
        let sigma_x1 = {
            // σ_{1,1}.(x1) = x1 + x2 + 1
            PolyElt::x(2, 0, 1)
                .add(&PolyElt::x(2, 0, 2))
                .add(&PolyElt::one(2, 0))
        };
        for f in spanning_set(&src, 0, 3) {
            assert_eq!(dot.eval(&f).unwrap(), f.mul(&sigma_x1));
        }
        // the operators differ off the symmetric subspace
        let f = PolyElt::x(2, 0, 1);
        let composite = sigma_action(&f.mul_x(1), 1, 1, 0).unwrap();
        assert_ne!(composite, f.mul(&sigma_x1));
        // and at r = a both reduce to plain multiplication
        let full = prog(&src, &[(Dot(2, 2), 0)]);
        for f in spanning_set(&src, 0, 3) {
            let expect = f.mul_x(1).mul_x(2);
            assert_eq!(full.eval(&f).unwrap(), expect);
        }
    }

    #[test]
    fn compile_simple_cases() {
        // the identity matrix compiles to the empty program
        let mc = MultiComposition {
            comps: vec![vec![2, 1], vec![3]],
        };
        let x = ParMat {
            top: mc.clone(),
            bot: mc.clone(),
            a: crate::parmat::NMatrix(vec![
                vec![2, 0, 0],
                vec![0, 1, 0],
                vec![0, 0, 3],
            ]),
            p: vec![vec![Partition::empty(); 3]; 3],
        };
        let p = compile_parmat(&x, WordStyle::Affine).unwrap();
        assert!(p.ops.is_empty());

        // a 2x2 antidiagonal is a single thin crossing
        let mc = MultiComposition {
            comps: vec![vec![1, 1]],
        };
        let x = ParMat {
            top: mc.clone(),
            bot: mc.clone(),
            a: crate::parmat::NMatrix(vec![vec![0, 1], vec![1, 0]]),
            p: vec![vec![Partition::empty(); 2]; 2],
        };
        let p = compile_parmat(&x, WordStyle::Affine).unwrap();
        assert_eq!(p.ops.len(), 1);
        assert_eq!(p.ops[0].op, Crossing(1, 1));
    }

    fn frozen_example() -> ParMat {
        let top = MultiComposition {
            comps: vec![vec![], vec![9], vec![7]],
        };
        let bot = MultiComposition {
            comps: vec![vec![5], vec![5], vec![6]],
        };
        let pack = |v: &[u32]| Partition(v.to_vec());
        ParMat {
            top,
            bot,
            a: crate::parmat::NMatrix(vec![vec![2, 3, 4], vec![3, 2, 2]]),
            p: vec![
                vec![pack(&[2, 1]), pack(&[3, 3, 2, 1]), pack(&[4, 4, 4, 3, 2, 1])],
                vec![pack(&[3, 2, 1]), pack(&[2, 2, 2, 2, 1]), pack(&[2, 2, 2, 2, 2, 2, 1])],
            ],
        }
    }

    #[test]
    fn leading_exponent_formula_frozen() {
        let x = frozen_example();
        x.validate().unwrap();
        let n = 100;
        let expected: Vec<u32> = vec![
            3 * n + 7,
            3 * n + 6,
            3 * n + 5,
            3 * n + 4,
            2 * n + 4,
            2 * n + 3,
            2 * n + 2,
            n + 2,
            n + 1,
            3 * n + 7,
            3 * n + 6,
            2 * n + 5,
            2 * n + 4,
            n + 3,
            n + 2,
            n + 1,
        ];
        assert_eq!(leading_exponents(&x, n), expected);
        let p = compile_parmat(&x, WordStyle::Affine).unwrap();
        let downs = p
            .ops
            .iter()
            .filter(|po| matches!(po.op, TraverseDown(..)))
            .count();
        assert_eq!(downs, 1);
    }

    #[test]
    fn leading_term_evaluation_three_levels() {
        // same shape of traffic as the frozen example (legs over three
        // levels, one downward traversal) at a size where full evaluation
        // is cheap
        let x = ParMat {
            top: MultiComposition {
                comps: vec![vec![], vec![3], vec![2]],
            },
            bot: MultiComposition {
                comps: vec![vec![2], vec![1], vec![2]],
            },
            a: crate::parmat::NMatrix(vec![vec![1, 1, 1], vec![1, 0, 1]]),
            p: vec![
                vec![Partition(vec![1]), Partition::empty(), Partition::empty()],
                vec![Partition::empty(), Partition::empty(), Partition(vec![1])],
            ],
        };
        x.validate().unwrap();
        let p = compile_parmat(&x, WordStyle::Affine).unwrap();
        let downs = p
            .ops
            .iter()
            .filter(|po| matches!(po.op, TraverseDown(..)))
            .count();
        assert_eq!(downs, 1);
        let n = default_staircase_step(std::slice::from_ref(&x));
        assert!(leading_term_check(&x, WordStyle::Affine, n).unwrap());
    }

    #[test]
    fn leading_term_with_dots_and_reds() {
        // small two-level case exercising a dot and a downward traversal
        let top = MultiComposition {
            comps: vec![vec![2], vec![1]],
        };
        let bot = MultiComposition {
            comps: vec![vec![1], vec![2]],
        };
        for x in crate::parmat::enumerate_parmat(&top, &bot, 2) {
            let n = default_staircase_step(std::slice::from_ref(&x));
            assert!(
                leading_term_check(&x, WordStyle::Affine, n).unwrap(),
                "leading term mismatch for {:?}",
                x
            );
        }
    }

    #[test]
    fn faithfulness_small() {
        // every Hom space between level-2 shapes of 2 has independent
        // compiled diagrams up to dot degree 1
        let shapes = enumerate_multicompositions(2, 2);
        for top in &shapes {
            for bot in &shapes {
                let rep =
                    faithfulness_check(top, bot, 1, WordStyle::Affine, false).unwrap();
                assert!(rep.leading_ok, "{top:?} {bot:?}");
                assert!(rep.distinct_leading, "{top:?} {bot:?}");
                assert_eq!(rep.rank, rep.diagrams, "{top:?} {bot:?}");
            }
        }
    }

    #[test]
    fn compile_respects_composition() {
        // compiled diagram of a product of two SST matrices evaluates like
        // the composite program
        let mc = MultiComposition {
            comps: vec![vec![1], vec![2]],
        };
        let x = ParMat {
            top: MultiComposition {
                comps: vec![vec![], vec![3]],
            },
            bot: mc.clone(),
            a: crate::parmat::NMatrix(vec![vec![1, 2]]),
            p: vec![vec![Partition::empty(), Partition::empty()]],
        };
        let p = compile_parmat(&x, WordStyle::Affine).unwrap();
        assert_eq!(
            p.target().unwrap(),
            object_word(&x.top, WordStyle::Affine)
        );
        // the leg moving from component 0 up to 1 traverses the red strand
        // without picking up a factor
        let ups = p
            .ops
            .iter()
            .filter(|po| matches!(po.op, TraverseUp(..)))
            .count();
        let downs = p
            .ops
            .iter()
            .filter(|po| matches!(po.op, TraverseDown(..)))
            .count();
        assert_eq!((ups, downs), (1, 0));
        let f = staircase_monomial(&mc, 1, 10);
        let g = p.eval(&f).unwrap();
        let mut expected = leading_exponents(&x, 10);
        expected.push(0);
        assert_eq!(g.leading().unwrap().0 .0, expected);
    }
}
