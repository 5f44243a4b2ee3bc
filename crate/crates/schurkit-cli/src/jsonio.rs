//! JSON conversions for the CLI: multicompositions, tableaux, Hecke
//! elements, and the textual polynomial coefficients.

use std::str::FromStr;

use num::BigRational;
use serde_json::{json, Value};

use schurkit::combinatorics::{MultiComposition, Permutation, SemistandardTableau};
use schurkit::error::{Error, Result};
use schurkit::hecke::AffHeckeElt;
use schurkit::polyalg::{PolyElt, Rat};

fn bad(msg: &str) -> Error {
    Error::Domain(msg.to_string())
}

pub fn mc_to_json(mc: &MultiComposition) -> Value {
    json!(mc.comps)
}

pub fn mc_from_value(v: &Value) -> Result<MultiComposition> {
    let comps: Vec<Vec<u32>> =
        serde_json::from_value(v.clone()).map_err(|_| bad("expected an array of compositions"))?;
    MultiComposition::new(comps)
}

pub fn mc_from_str(s: &str) -> Result<MultiComposition> {
    let v: Value = serde_json::from_str(s).map_err(|_| bad("malformed JSON"))?;
    mc_from_value(&v)
}

pub fn sst_to_json(t: &SemistandardTableau) -> Value {
    let rows: Vec<Vec<Vec<[u32; 2]>>> = t
        .rows
        .iter()
        .map(|comp| {
            comp.iter()
                .map(|row| row.iter().map(|e| [e.i, e.p]).collect())
                .collect()
        })
        .collect();
    json!({"shape": t.shape.comps, "rows": rows})
}

pub fn rat_from_str(s: &str) -> Result<Rat> {
    BigRational::from_str(s.trim()).map_err(|_| bad("cannot parse rational"))
}

pub fn parse_rationals(s: &str) -> Result<Vec<Rat>> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(rat_from_str)
        .collect()
}

/// Parse the coefficient format produced by [`PolyElt::display`]:
/// terms joined by " + ", each a rational optionally followed by
/// `*x<k>^<e>` / `*u<k>^<e>` factors.
pub fn parse_poly(s: &str, nx: usize, nu: usize) -> Result<PolyElt> {
    let s = s.trim();
    if s.is_empty() || s == "0" {
        return Ok(PolyElt::zero(nx, nu));
    }
    let mut out = PolyElt::zero(nx, nu);
    for term in s.split(" + ") {
        let mut factors = term.split('*');
        let c = rat_from_str(factors.next().ok_or_else(|| bad("empty term"))?)?;
        let mut t = PolyElt::constant(nx, nu, c);
        for f in factors {
            let (name, exp) = match f.split_once('^') {
                Some((n, e)) => (n, e.parse::<u32>().map_err(|_| bad("bad exponent"))?),
                None => (f, 1),
            };
            let idx: usize = name[1..].parse().map_err(|_| bad("bad variable"))?;
            let var = match name.as_bytes().first() {
                Some(b'x') => PolyElt::x(nx, nu, idx),
                Some(b'u') => PolyElt::u(nx, nu, idx),
                _ => return Err(bad("unknown variable")),
            };
            for _ in 0..exp {
                t = t.mul(&var);
            }
        }
        out = out.add(&t);
    }
    Ok(out)
}

/// Serialize in PBW normal form; `w` is the 1-based one-line notation.
pub fn elt_to_json(e: &AffHeckeElt) -> Value {
    let terms: Vec<Value> = e
        .terms
        .iter()
        .map(|((alpha, w), c)| {
            let w1: Vec<usize> = w.0.iter().map(|&k| k + 1).collect();
            json!({"alpha": alpha, "w": w1, "coeff": c.display()})
        })
        .collect();
    json!(terms)
}

pub fn elt_from_json(v: &Value, m: usize, nu: usize) -> Result<AffHeckeElt> {
    let arr = v.as_array().ok_or_else(|| bad("expected a term array"))?;
    let mut out = AffHeckeElt::zero(m, nu);
    for t in arr {
        let alpha: Vec<u32> = serde_json::from_value(
            t.get("alpha").cloned().unwrap_or(Value::Null),
        )
        .map_err(|_| bad("bad alpha"))?;
        let w1: Vec<usize> =
            serde_json::from_value(t.get("w").cloned().unwrap_or(Value::Null))
                .map_err(|_| bad("bad w"))?;
        if alpha.len() != m || w1.len() != m {
            return Err(bad("term length disagrees with m"));
        }
        let w0: Vec<usize> = w1.iter().map(|&k| k.wrapping_sub(1)).collect();
        let mut seen = vec![false; m];
        for &k in &w0 {
            if k >= m || seen[k] {
                return Err(bad("w is not a permutation"));
            }
            seen[k] = true;
        }
        let coeff = parse_poly(
            t.get("coeff").and_then(Value::as_str).unwrap_or("1"),
            0,
            nu,
        )?;
        let term = AffHeckeElt::x_mono(m, nu, alpha)
            .right_mul_perm(&Permutation(w0))
            .scale_poly(&coeff);
        out = out.add(&term);
    }
    Ok(out)
}
