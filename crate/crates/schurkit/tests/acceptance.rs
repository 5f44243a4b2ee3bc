//! End-to-end acceptance gate: ten independent criteria, one line each.
//!
//! Every criterion re-derives its expected values from scratch (independent
//! enumerators, frozen worked-example data, closed-form dimension counts) so
//! a pass certifies the library against external facts, not against itself.

use std::time::Instant;

use schurkit::combinatorics::{
    enumerate_multicompositions, enumerate_multipartitions, enumerate_sst,
    enumerate_standard_tableaux, MultiComposition, Partition,
};
use schurkit::error::Result;
use schurkit::hecke::{certify_dimension, perm_module_basis, CycContext, CycParams};
use schurkit::par::maybe_par_map;
use schurkit::parmat::{enumerate_parmat_flat, NMatrix, ParMat};
use schurkit::polyalg::Rat;
use schurkit::rsk::{phi, phi_inverse, reduce_level};
use schurkit::schurdjm::{
    algebra_dimension, cellularity_check, cyclotomic_vanishing_check, eval_parmat,
    maps_functor_check, parmat_flat_rank, phi_st, star_morphism, verify_relations_djm,
};
use schurkit::schurrep::{
    faithfulness_check, relation_suite, verify_instance, verify_relations, Suite, WordStyle,
};

fn numeric(m: usize, ell: usize) -> CycContext {
    let params = (0..ell)
        .map(|i| Rat::from_integer((i as i64).into()))
        .collect();
    CycContext::new(m, ell, CycParams::Numeric(params))
}

fn invariant(msg: String) -> schurkit::error::Error {
    schurkit::error::Error::Invariant(msg)
}

/// Per-level SST counts: shape index → (weight index → tableaux).
fn sst_table(
    m: u32,
    ell: usize,
) -> (
    Vec<MultiComposition>,
    Vec<Vec<Vec<schurkit::combinatorics::SemistandardTableau>>>,
) {
    let weights = enumerate_multicompositions(m, ell);
    let shapes = enumerate_multipartitions(m, ell);
    let table = shapes
        .iter()
        .map(|lam| weights.iter().map(|mu| enumerate_sst(lam, mu)).collect())
        .collect();
    (weights, table)
}

/// Criteria 1 and 2 share one sweep: cardinality identity per weight pair,
/// plus the φ round trip in both directions over the same enumerations.
fn criteria_1_2() -> Result<(String, String)> {
    let mut pairs = 0usize;
    let mut diagrams = 0usize;
    let mut scales: Vec<(u32, usize)> = Vec::new();
    for m in 0..=5 {
        for ell in 1..=2 {
            scales.push((m, ell));
        }
    }
    for m in 0..=3 {
        scales.push((m, 3));
    }
    for (m, ell) in scales {
        let (weights, table) = sst_table(m, ell);
        let idx: Vec<(usize, usize)> = (0..weights.len())
            .flat_map(|i| (0..weights.len()).map(move |j| (i, j)))
            .collect();
        let checked = maybe_par_map(idx, true, |(i, j)| -> Result<usize> {
            let (nu, mu) = (&weights[i], &weights[j]);
            let flats = enumerate_parmat_flat(nu, mu);
            let by_sst: usize = table.iter().map(|row| row[i].len() * row[j].len()).sum();
            if flats.len() != by_sst {
                return Err(invariant(format!(
                    "cardinality mismatch at m={m} ell={ell}: {} flats vs {} SST pairs",
                    flats.len(),
                    by_sst
                )));
            }
            for x in &flats {
                let (s, t) = phi(x)?;
                if !s.is_semistandard() || !t.is_semistandard() {
                    return Err(invariant("phi produced a non-semistandard tableau".into()));
                }
                if !s.has_type(nu) || !t.has_type(mu) {
                    return Err(invariant("phi produced tableaux of the wrong type".into()));
                }
                if &phi_inverse(&s, &t)? != x {
                    return Err(invariant("phi_inverse . phi != id".into()));
                }
            }
            for row in &table {
                for s in &row[i] {
                    for t in &row[j] {
                        let x = phi_inverse(s, t)?;
                        if phi(&x)? != (s.clone(), t.clone()) {
                            return Err(invariant("phi . phi_inverse != id".into()));
                        }
                    }
                }
            }
            Ok(flats.len())
        });
        for c in checked {
            diagrams += c?;
            pairs += 1;
        }
    }
    Ok((
        format!("|ParMatFlat| = |SST^2| on {pairs} weight pairs ({diagrams} diagrams)"),
        format!("phi round trips both ways on the same {pairs} pairs"),
    ))
}

/// The frozen level-reduction worked example, reproduced bit-exactly.
fn criterion_3() -> Result<String> {
    let mc = |comps: &[&[u32]]| {
        MultiComposition::new(comps.iter().map(|c| c.to_vec()).collect()).unwrap()
    };
    let e = Partition::empty;
    let pt = |v: &[u32]| Partition::new(v.to_vec()).unwrap();
    let x = ParMat {
        top: mc(&[&[2, 6, 6], &[12, 9, 10]]),
        bot: mc(&[&[8, 4], &[5, 10, 12, 6]]),
        a: NMatrix(vec![
            vec![2, 0, 0, 0, 0, 0],
            vec![3, 1, 0, 2, 0, 0],
            vec![0, 1, 0, 0, 5, 0],
            vec![3, 0, 2, 4, 0, 3],
            vec![0, 0, 3, 1, 5, 0],
            vec![0, 2, 0, 3, 2, 3],
        ]),
        p: vec![
            vec![e(), e(), e(), e(), e(), e()],
            vec![e(), e(), e(), e(), e(), e()],
            vec![e(), e(), e(), e(), e(), e()],
            vec![e(), e(), pt(&[1]), pt(&[3]), e(), pt(&[2])],
            vec![e(), e(), e(), e(), e(), e()],
            vec![e(), e(), e(), pt(&[3]), e(), pt(&[2])],
        ],
    };
    x.validate()?;
    let r = reduce_level(&x)?;
    let ok = r.b == vec![9, 0, 7]
        && r.c == vec![1, 8, 5, 4]
        && r.hat_nu == vec![3, 9, 3]
        && r.hat_mu == vec![4, 2, 7, 2]
        && r.hat.0 == vec![vec![1, 1, 0, 1], vec![3, 1, 5, 0], vec![0, 0, 2, 1]];
    if !ok {
        return Err(invariant(format!(
            "worked example drifted: b={:?} c={:?} hat_nu={:?} hat_mu={:?} hat={:?}",
            r.b, r.c, r.hat_nu, r.hat_mu, r.hat.0
        )));
    }
    let (s, t) = phi(&x)?;
    if phi_inverse(&s, &t)? != x {
        return Err(invariant("worked example does not round trip".into()));
    }
    Ok("b=(9,0,7), c=(1,8,5,4), hat shapes and matrix reproduced bit-exactly".into())
}

fn criterion_4() -> Result<String> {
    let full = verify_relations(Suite::Full, 3, 4, true)?;
    let derived = verify_relations(Suite::Derived, 3, 4, true)?;
    let reduced = verify_relations(Suite::Reduced, 3, 4, true)?;
    Ok(format!(
        "{} full + {} derived + {} reduced instances at thickness <= 3, degree <= 4",
        full.instances, derived.instances, reduced.instances
    ))
}

/// The thick crossing acts by the Demazure action of w_{a,b}; the resolution
/// instances pit that action against the split/merge composite.
fn criterion_5() -> Result<String> {
    let insts: Vec<_> = relation_suite(Suite::Full, 3)?
        .into_iter()
        .filter(|inst| inst.name.starts_with("crossing-resolution("))
        .collect();
    if insts.is_empty() {
        return Err(invariant("no crossing-resolution instances found".into()));
    }
    let n = insts.len();
    for c in maybe_par_map(insts, true, |inst| verify_instance(&inst, 4)) {
        c?;
    }
    Ok(format!(
        "{n} crossing resolutions match the Demazure action at degree <= 4"
    ))
}

fn criterion_6() -> Result<String> {
    let mut diagrams = 0usize;
    for m in 1..=4u32 {
        let weights = enumerate_multicompositions(m, 2);
        for nu in &weights {
            for mu in &weights {
                let r = faithfulness_check(nu, mu, 2, WordStyle::Affine, true)?;
                if !r.leading_ok || !r.distinct_leading || r.rank != r.diagrams {
                    return Err(invariant(format!(
                        "faithfulness fails on {nu:?} -> {mu:?}: rank {} of {}",
                        r.rank, r.diagrams
                    )));
                }
                diagrams += r.diagrams;
            }
        }
    }
    Ok(format!(
        "{diagrams} level-2 diagrams of dot degree <= 2 are linearly independent, m <= 4"
    ))
}

fn criterion_7() -> Result<String> {
    let mut dims = Vec::new();
    for m in 1..=3usize {
        for ell in 1..=3usize {
            let ctx = CycContext::new(m, ell, CycParams::Generic);
            let dim = certify_dimension(&ctx, true)?;
            let expected = (ell as u64).pow(m as u32) * (1..=m as u64).product::<u64>();
            if dim != expected {
                return Err(invariant(format!(
                    "dim H({m},{ell}) = {dim}, expected {expected}"
                )));
            }
            dims.push(dim);
        }
    }
    let mut bases = 0usize;
    for m in 1..=3u32 {
        for ell in 1..=2usize {
            let ctx = numeric(m as usize, ell);
            let shapes = enumerate_multipartitions(m, ell);
            for mu in enumerate_multicompositions(m, ell) {
                let predicted: usize = shapes
                    .iter()
                    .map(|lam| {
                        enumerate_sst(lam, &mu).len() * enumerate_standard_tableaux(lam).len()
                    })
                    .sum();
                let basis = perm_module_basis(&mu, &ctx)?;
                if basis.labels.len() != predicted {
                    return Err(invariant(format!(
                        "permutation module basis of {mu:?} has {} elements, predicted {predicted}",
                        basis.labels.len()
                    )));
                }
                bases += 1;
            }
        }
    }
    Ok(format!(
        "operator relations hold, dims {dims:?} = ell^m*m!, {bases} permutation-module bases"
    ))
}

fn criterion_8() -> Result<String> {
    // star anti-involution swaps labels, for every label at m <= 3, ell <= 2
    let mut star_checks = 0usize;
    for m in 1..=3u32 {
        for ell in 1..=2usize {
            let ctx = numeric(m as usize, ell);
            let (weights, table) = sst_table(m, ell);
            for row in &table {
                for (i, nu) in weights.iter().enumerate() {
                    for (j, mu) in weights.iter().enumerate() {
                        for s in &row[i] {
                            for t in &row[j] {
                                let f = phi_st(s, t, nu, mu, &ctx)?;
                                let g = phi_st(t, s, mu, nu, &ctx)?;
                                let fs = star_morphism(&f, &ctx);
                                if fs.image != g.image
                                    || fs.source != g.source
                                    || fs.target != g.target
                                {
                                    return Err(invariant(format!(
                                        "star of phi_ST is not phi_TS at m={m} ell={ell}"
                                    )));
                                }
                                star_checks += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    // triangular product expansions (full sweeps at the affordable scales)
    let mut products = 0usize;
    for (m, ell) in [(2u32, 1usize), (2, 2), (3, 1)] {
        let r = cellularity_check(m, ell, &numeric(m as usize, ell), true)?;
        products += r.products;
    }
    // dimension two ways, with the frozen value at (m, ell) = (2, 1)
    for m in 1..=3u32 {
        for ell in 1..=2usize {
            let ctx = numeric(m as usize, ell);
            let d = algebra_dimension(m, ell, &ctx)?;
            if d.by_sst != d.by_rank {
                return Err(invariant(format!(
                    "dimension counts disagree at m={m} ell={ell}: {} vs {}",
                    d.by_sst, d.by_rank
                )));
            }
            if (m, ell) == (2, 1) && d.by_sst != 5 {
                return Err(invariant(format!(
                    "level-1 m=2 Schur algebra dimension {} != 5",
                    d.by_sst
                )));
            }
        }
    }
    Ok(format!(
        "{star_checks} star identities, {products} triangular products, dimensions agree"
    ))
}

fn criterion_9() -> Result<String> {
    let mut labels = 0usize;
    for m in 1..=3u32 {
        for ell in 1..=2usize {
            labels += maps_functor_check(m, ell, true)?;
        }
    }
    let rel = verify_relations_djm(3, true)?;
    let vanishing = cyclotomic_vanishing_check(2, 2)?;
    // zero-object rule: a box in component 0 kills the morphism
    let mc = |comps: &[&[u32]]| {
        MultiComposition::new(comps.iter().map(|c| c.to_vec()).collect()).unwrap()
    };
    let x = ParMat {
        top: mc(&[&[1], &[]]),
        bot: mc(&[&[1], &[]]),
        a: NMatrix(vec![vec![1]]),
        p: vec![vec![Partition::empty()]],
    };
    if !eval_parmat(&x, &numeric(1, 1))?.is_zero() {
        return Err(invariant("zero-object rule fails".into()));
    }
    Ok(format!(
        "functor matches the cell basis on {labels} labels; {rel} relations and {vanishing} vanishing identities hold in the Hecke model"
    ))
}

fn criterion_10() -> Result<String> {
    let mut diagrams = 0usize;
    for m in 1..=3u32 {
        for ell in 1..=2usize {
            let ctx = numeric(m as usize, ell);
            let weights = enumerate_multicompositions(m, ell);
            for nu in &weights {
                for mu in &weights {
                    let r = parmat_flat_rank(nu, mu, &ctx, true)?;
                    if r.rank != r.diagrams || r.rank != r.sst_pairs {
                        return Err(invariant(format!(
                            "flat basis degenerates on {nu:?} -> {mu:?}: {} diagrams, {} SST pairs, rank {}",
                            r.diagrams, r.sst_pairs, r.rank
                        )));
                    }
                    diagrams += r.diagrams;
                }
            }
        }
    }
    Ok(format!(
        "{diagrams} lowered flat diagrams are linearly independent with matching counts"
    ))
}

/// Write straight to the process stdout so the per-criterion lines survive
/// the harness capture even on a passing run.
fn report(k: u32, r: std::result::Result<String, String>, t: Instant) -> bool {
    use std::io::Write;
    let elapsed = t.elapsed();
    let (ok, line) = match r {
        Ok(msg) => (true, format!("PASS criterion {k:2} [{elapsed:6.1?}]: {msg}")),
        Err(msg) => (false, format!("FAIL criterion {k:2} [{elapsed:6.1?}]: {msg}")),
    };
    let _ = writeln!(std::io::stdout(), "{line}");
    ok
}

#[test]
fn acceptance_criteria() {
    let t0 = Instant::now();
    let mut failed = 0;

    let t = Instant::now();
    match criteria_1_2() {
        Ok((a, b)) => {
            report(1, Ok(a), t);
            report(2, Ok(b), t);
        }
        Err(e) => {
            report(1, Err(e.to_string()), t);
            report(2, Err("blocked by criterion 1".into()), t);
            failed += 2;
        }
    }
    let rest: [(u32, fn() -> Result<String>); 8] = [
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    for (k, f) in rest {
        let t = Instant::now();
        if !report(k, f().map_err(|e| e.to_string()), t) {
            failed += 1;
        }
    }
    {
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), "acceptance finished in {:.1?}", t0.elapsed());
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
