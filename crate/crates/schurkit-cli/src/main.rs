//! schurkit: enumeration, verification, RSK, and rendering for the affine
//! and cyclotomic Schur categories.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage/parse error,
//! 3 resource cap exceeded (with a partial report on stdout).

mod jsonio;
mod render;

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use schurkit::combinatorics::{
    enumerate_multicompositions, enumerate_multipartitions, enumerate_partitions, enumerate_sst,
};
use schurkit::error::Error;
use schurkit::hecke::{aff_mul, CycContext, CycParams};
use schurkit::parmat::{enumerate_parmat, enumerate_parmat_flat, ParMat};
use schurkit::polyalg::{rat, Rat};
use schurkit::rsk::phi;
use schurkit::schurdjm::{
    algebra_dimension, cellularity_check, compose, parmat_flat_rank, phi_st,
    verify_relations_djm,
};
use schurkit::schurrep::{verify_relations, Suite};

use jsonio::*;

#[derive(Parser)]
#[command(name = "schurkit", version, about = "Exact toolkit for affine and cyclotomic Schur categories")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Worker threads for verification sweeps (env SCHURKIT_JOBS overrides)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed for sampled checks; recorded in the report
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Copy, Clone, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(Args)]
struct ReportOpts {
    /// Report format
    #[arg(long, value_enum, default_value = "json")]
    format: ReportFormat,
}

#[derive(Subcommand)]
enum Cmd {
    /// Stream combinatorial objects as JSON lines in canonical order
    Enumerate {
        #[command(subcommand)]
        what: EnumCmd,
    },
    /// Run a verification suite; exit 0 iff zero mismatches
    Verify {
        #[command(subcommand)]
        what: VerifyCmd,
    },
    /// Render a ParMat diagram
    Render {
        /// ParMat JSON file ("-" for stdin)
        #[arg(long)]
        input: String,
        #[arg(long, value_enum, default_value = "ascii")]
        format: RenderFormat,
    },
    /// Apply the level-ℓ RSK bijection to a flat ParMat
    Rsk {
        /// ParMat JSON file ("-" for stdin)
        #[arg(long)]
        input: String,
        /// Expected level (consistency check)
        #[arg(long)]
        level: Option<usize>,
        #[command(flatten)]
        report: ReportOpts,
    },
    /// Degenerate cyclotomic Hecke algebra operations
    Hecke {
        #[command(subcommand)]
        what: HeckeCmd,
    },
    /// Cyclotomic Schur algebra operations
    Djm {
        #[command(subcommand)]
        what: DjmCmd,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum RenderFormat {
    Ascii,
    Svg,
}

#[derive(Subcommand)]
enum EnumCmd {
    Partitions {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        max_part: Option<u32>,
        #[arg(long)]
        max_len: Option<usize>,
    },
    Multicompositions {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        ell: usize,
    },
    Multipartitions {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        ell: usize,
    },
    /// Semistandard tableaux of a given shape and type
    Sst {
        /// Shape as JSON, e.g. '[[2],[1]]'
        #[arg(long)]
        shape: String,
        /// Type as JSON, e.g. '[[1,1],[1]]'
        #[arg(long = "type")]
        type_: String,
    },
    /// Partition-enhanced matrices up to a dot-degree cap
    Parmat {
        #[arg(long)]
        top: String,
        #[arg(long)]
        bot: String,
        #[arg(long, default_value = "2")]
        max_degree: u32,
    },
    /// The flat (bounded) diagram basis
    ParmatFlat {
        #[arg(long)]
        top: String,
        #[arg(long)]
        bot: String,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Defining + derived relations of the thick calculus, polynomial model
    PolyRelations {
        #[arg(long, default_value = "2")]
        max_thickness: u32,
        #[arg(long, default_value = "3")]
        max_degree: u32,
        #[command(flatten)]
        report: ReportOpts,
    },
    /// The thin presentation and its consequences
    ReducedRelations {
        #[arg(long, default_value = "3")]
        max_thickness: u32,
        #[arg(long, default_value = "4")]
        max_degree: u32,
        #[command(flatten)]
        report: ReportOpts,
    },
    /// Relations instantiated in the Hecke model
    DjmRelations {
        #[arg(long, default_value = "3")]
        max_width: usize,
        #[command(flatten)]
        report: ReportOpts,
    },
    /// Round trip and counting of the level-ℓ RSK bijection
    RskBijection {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        ell: usize,
        #[command(flatten)]
        report: ReportOpts,
    },
    /// Rank of the lowered flat basis over all weight pairs
    RankFlat {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        ell: usize,
        /// Numeric parameters "u1,u2,…"; defaults to 0,1,…,ℓ−1
        #[arg(long)]
        u: Option<String>,
        #[command(flatten)]
        report: ReportOpts,
    },
    /// Cellularity: star, triangularity, structure constants
    Cellularity {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        u: Option<String>,
        #[command(flatten)]
        report: ReportOpts,
    },
    /// Algebra dimension two ways, plus sampled associativity
    Dim {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        u: Option<String>,
        #[command(flatten)]
        report: ReportOpts,
    },
}

#[derive(Subcommand)]
enum HeckeCmd {
    /// Multiply two elements given in PBW normal form
    Mul {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        ell: usize,
        /// Numeric parameters; omit for generic u₁,…,u_ℓ
        #[arg(long)]
        u: Option<String>,
        /// Reduce the product modulo the cyclotomic ideal
        #[arg(long)]
        reduce: bool,
        a: String,
        b: String,
    },
}

#[derive(Subcommand)]
enum DjmCmd {
    Dim {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        u: Option<String>,
        #[command(flatten)]
        report: ReportOpts,
    },
    CellCheck {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        u: Option<String>,
        #[command(flatten)]
        report: ReportOpts,
    },
    Rank {
        /// Source weight, JSON file or inline JSON
        #[arg(long)]
        nu: String,
        /// Target weight, JSON file or inline JSON
        #[arg(long)]
        mu: String,
        #[arg(long)]
        u: Option<String>,
        #[command(flatten)]
        report: ReportOpts,
    },
}

enum CliError {
    Usage(String),
    Verify(String),
    Cap(Value),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(m) => CliError::Usage(m),
            Error::Invariant(m) => CliError::Verify(m),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

/// Guard desk-scale resource limits; exceeding them yields exit 3 and a
/// partial report naming the limit.
fn cap(cond: bool, what: &str, limit: &str) -> CliResult<()> {
    if cond {
        Ok(())
    } else {
        Err(CliError::Cap(json!({
            "status": "resource-cap",
            "exceeded": what,
            "limit": limit,
        })))
    }
}

fn read_input(path_or_json: &str) -> CliResult<String> {
    if path_or_json == "-" {
        use std::io::Read;
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(s)
    } else if path_or_json.trim_start().starts_with('[') {
        Ok(path_or_json.to_string())
    } else {
        fs::read_to_string(path_or_json).map_err(|e| CliError::Usage(e.to_string()))
    }
}

fn read_parmat(path: &str) -> CliResult<ParMat> {
    let s = read_input(path)?;
    let v: Value =
        serde_json::from_str(&s).map_err(|_| CliError::Usage("malformed JSON".into()))?;
    Ok(ParMat::from_json(&v)?)
}

fn params(ell: usize, u: &Option<String>) -> CliResult<Vec<Rat>> {
    let v = match u {
        Some(s) => parse_rationals(s)?,
        None => (0..ell as i64).map(rat).collect(),
    };
    if v.len() != ell {
        return usage("expected ℓ parameters");
    }
    Ok(v)
}

fn numeric_ctx(m: u32, ell: usize, u: &Option<String>) -> CliResult<(CycContext, Vec<Rat>)> {
    let ps = params(ell, u)?;
    Ok((
        CycContext::new(m as usize, ell, CycParams::Numeric(ps.clone())),
        ps,
    ))
}

fn emit_report(opts: &ReportOpts, v: &Value) {
    match opts.format {
        ReportFormat::Json => println!("{v}"),
        ReportFormat::Text => {
            if let Some(obj) = v.as_object() {
                for (k, val) in obj {
                    println!("{k}: {val}");
                }
            } else {
                println!("{v}");
            }
        }
    }
}

fn u_strings(ps: &[Rat]) -> Vec<String> {
    ps.iter().map(|r| r.to_string()).collect()
}

/// SplitMix64: a tiny fixed generator so that sampled checks are
/// byte-reproducible across platforms and dependency versions.
struct SplitMix64(u64);

impl SplitMix64 {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn below(&mut self, n: usize) -> usize {
        (self.next() % n as u64) as usize
    }
}

fn configure_jobs(jobs: Option<usize>) -> bool {
    let jobs = std::env::var("SCHURKIT_JOBS")
        .ok()
        .and_then(|s| s.parse().ok())
        .or(jobs);
    if let Some(n) = jobs {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
        n != 1
    } else {
        true
    }
}

/// Stream one JSON line; a closed pipe (e.g. `| head`) ends the run cleanly.
fn stream_line(v: &Value) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if writeln!(out, "{v}").is_err() {
        std::process::exit(0);
    }
}

fn cmd_enumerate(what: &EnumCmd) -> CliResult<()> {
    match what {
        EnumCmd::Partitions { n, max_part, max_len } => {
            for p in enumerate_partitions(*n, *max_part, *max_len) {
                stream_line(&json!(p.0));
            }
        }
        EnumCmd::Multicompositions { m, ell } => {
            for mc in enumerate_multicompositions(*m, *ell) {
                stream_line(&mc_to_json(&mc));
            }
        }
        EnumCmd::Multipartitions { m, ell } => {
            for mp in enumerate_multipartitions(*m, *ell) {
                stream_line(&mc_to_json(&mp));
            }
        }
        EnumCmd::Sst { shape, type_ } => {
            let lam = mc_from_str(shape)?;
            let mu = mc_from_str(type_)?;
            for t in enumerate_sst(&lam, &mu) {
                stream_line(&sst_to_json(&t));
            }
        }
        EnumCmd::Parmat { top, bot, max_degree } => {
            let top = mc_from_str(top)?;
            let bot = mc_from_str(bot)?;
            for x in enumerate_parmat(&top, &bot, *max_degree) {
                stream_line(&x.to_json());
            }
        }
        EnumCmd::ParmatFlat { top, bot } => {
            let top = mc_from_str(top)?;
            let bot = mc_from_str(bot)?;
            for x in enumerate_parmat_flat(&top, &bot) {
                stream_line(&x.to_json());
            }
        }
    }
    Ok(())
}

fn verify_rsk(m: u32, ell: usize) -> CliResult<Value> {
    cap(m <= 6 && ell <= 3, "m/ell", "m ≤ 6, ℓ ≤ 3")?;
    let mcs = enumerate_multicompositions(m, ell);
    let lams = enumerate_multipartitions(m, ell);
    let mut pairs_checked = 0usize;
    let mut diagrams = 0usize;
    for nu in &mcs {
        for mu in &mcs {
            let flats = enumerate_parmat_flat(nu, mu);
            for x in &flats {
                let (s, t) = phi(x)?;
                if schurkit::rsk::phi_inverse(&s, &t)? != *x {
                    return Err(CliError::Verify(format!("round trip fails on {x:?}")));
                }
            }
            let expected: usize = lams
                .iter()
                .map(|l| enumerate_sst(l, nu).len() * enumerate_sst(l, mu).len())
                .sum();
            if flats.len() != expected {
                return Err(CliError::Verify(format!(
                    "count mismatch at nu={nu:?} mu={mu:?}"
                )));
            }
            diagrams += flats.len();
            pairs_checked += 1;
        }
    }
    Ok(json!({
        "suite": "rsk-bijection", "m": m, "ell": ell,
        "pairs_checked": pairs_checked, "diagrams": diagrams, "mismatches": 0,
    }))
}

fn verify_rank_flat(m: u32, ell: usize, u: &Option<String>, parallel: bool) -> CliResult<Value> {
    cap(m <= 4 && ell <= 3, "m/ell", "m ≤ 4, ℓ ≤ 3")?;
    let (ctx, ps) = numeric_ctx(m, ell, u)?;
    let mcs = enumerate_multicompositions(m, ell);
    let mut pairs = 0usize;
    let mut rank_total = 0usize;
    for nu in &mcs {
        for mu in &mcs {
            let r = parmat_flat_rank(nu, mu, &ctx, parallel)?;
            rank_total += r.rank;
            pairs += 1;
        }
    }
    Ok(json!({
        "suite": "rank-flat", "m": m, "ell": ell, "u": u_strings(&ps),
        "pairs": pairs, "rank_total": rank_total, "mismatches": 0,
    }))
}

fn verify_cellularity(m: u32, ell: usize, u: &Option<String>, parallel: bool) -> CliResult<Value> {
    cap(m as usize + ell <= 4, "m/ell", "m + ℓ ≤ 4")?;
    let (ctx, ps) = numeric_ctx(m, ell, u)?;
    let r = cellularity_check(m, ell, &ctx, parallel)?;
    Ok(json!({
        "suite": "cellularity", "m": m, "ell": ell, "u": u_strings(&ps),
        "star_checks": r.star_checks, "products": r.products, "mismatches": 0,
    }))
}

fn verify_dim(m: u32, ell: usize, u: &Option<String>, seed: Option<u64>) -> CliResult<Value> {
    cap(m <= 3 && ell <= 3 && (m as usize) * ell <= 6, "m/ell", "m ≤ 3, ℓ ≤ 3, m·ℓ ≤ 6")?;
    let (ctx, ps) = numeric_ctx(m, ell, u)?;
    let r = algebra_dimension(m, ell, &ctx)?;

    // sampled associativity, seeded and recorded
    let seed = seed.unwrap_or(0);
    let mut rng = SplitMix64(seed);
    let mcs = enumerate_multicompositions(m, ell);
    let mut homs = Vec::new();
    for lam in enumerate_multipartitions(m, ell) {
        for mu in &mcs {
            for s in enumerate_sst(&lam, mu) {
                for nu in &mcs {
                    for t in enumerate_sst(&lam, nu) {
                        homs.push(phi_st(&s, &t, mu, nu, &ctx)?);
                    }
                }
            }
        }
    }
    let mut samples = 0usize;
    for _ in 0..200 {
        if samples >= 20 || homs.is_empty() {
            break;
        }
        let f = &homs[rng.below(homs.len())];
        let gs: Vec<_> = homs.iter().filter(|g| g.source == f.target).collect();
        if gs.is_empty() {
            continue;
        }
        let g = gs[rng.below(gs.len())];
        let hs: Vec<_> = homs.iter().filter(|h| h.source == g.target).collect();
        if hs.is_empty() {
            continue;
        }
        let h = hs[rng.below(hs.len())];
        let lhs = compose(&compose(f, g, &ctx)?, h, &ctx)?;
        let rhs = compose(f, &compose(g, h, &ctx)?, &ctx)?;
        if lhs != rhs {
            return Err(CliError::Verify("sampled associativity fails".into()));
        }
        samples += 1;
    }
    Ok(json!({
        "suite": "dim", "m": m, "ell": ell, "u": u_strings(&ps),
        "count1": r.by_sst, "count2": r.by_rank,
        "seed": seed, "assoc_samples": samples, "mismatches": 0,
    }))
}

fn cmd_verify(what: &VerifyCmd, parallel: bool, seed: Option<u64>) -> CliResult<()> {
    match what {
        VerifyCmd::PolyRelations { max_thickness, max_degree, report } => {
            cap(*max_thickness <= 3 && *max_degree <= 4, "caps", "thickness ≤ 3, degree ≤ 4")?;
            let full = verify_relations(Suite::Full, *max_thickness, *max_degree, parallel)?;
            let derived = verify_relations(Suite::Derived, *max_thickness, *max_degree, parallel)?;
            emit_report(report, &json!({
                "suite": "poly-relations",
                "max_thickness": max_thickness, "max_degree": max_degree,
                "instances": full.instances + derived.instances, "mismatches": 0,
            }));
        }
        VerifyCmd::ReducedRelations { max_thickness, max_degree, report } => {
            cap(*max_thickness <= 3 && *max_degree <= 4, "caps", "thickness ≤ 3, degree ≤ 4")?;
            let r = verify_relations(Suite::Reduced, *max_thickness, *max_degree, parallel)?;
            emit_report(report, &json!({
                "suite": "reduced-relations",
                "max_thickness": max_thickness, "max_degree": max_degree,
                "instances": r.instances, "mismatches": 0,
            }));
        }
        VerifyCmd::DjmRelations { max_width, report } => {
            cap(*max_width <= 4, "max-width", "≤ 4")?;
            let n = verify_relations_djm(*max_width, parallel)?;
            emit_report(report, &json!({
                "suite": "djm-relations", "max_width": max_width,
                "instances": n, "mismatches": 0,
            }));
        }
        VerifyCmd::RskBijection { m, ell, report } => {
            emit_report(report, &verify_rsk(*m, *ell)?);
        }
        VerifyCmd::RankFlat { m, ell, u, report } => {
            emit_report(report, &verify_rank_flat(*m, *ell, u, parallel)?);
        }
        VerifyCmd::Cellularity { m, ell, u, report } => {
            emit_report(report, &verify_cellularity(*m, *ell, u, parallel)?);
        }
        VerifyCmd::Dim { m, ell, u, report } => {
            emit_report(report, &verify_dim(*m, *ell, u, seed)?);
        }
    }
    Ok(())
}

fn cmd_hecke(what: &HeckeCmd) -> CliResult<()> {
    match what {
        HeckeCmd::Mul { m, ell, u, reduce, a, b } => {
            let (params, nu) = match u {
                Some(s) => {
                    let ps = parse_rationals(s)?;
                    if ps.len() != *ell {
                        return usage("expected ℓ parameters");
                    }
                    (CycParams::Numeric(ps), 0)
                }
                None => (CycParams::Generic, *ell),
            };
            let ea = elt_from_json(
                &serde_json::from_str(&read_input(a)?)
                    .map_err(|_| CliError::Usage("malformed JSON".into()))?,
                *m,
                nu,
            )?;
            let eb = elt_from_json(
                &serde_json::from_str(&read_input(b)?)
                    .map_err(|_| CliError::Usage("malformed JSON".into()))?,
                *m,
                nu,
            )?;
            let mut prod = aff_mul(&ea, &eb);
            if *reduce {
                let ctx = CycContext::new(*m, *ell, params);
                prod = schurkit::hecke::cyc_reduce(&prod, &ctx);
            }
            println!("{}", elt_to_json(&prod));
        }
    }
    Ok(())
}

fn cmd_djm(what: &DjmCmd, parallel: bool, seed: Option<u64>) -> CliResult<()> {
    match what {
        DjmCmd::Dim { m, ell, u, report } => {
            emit_report(report, &verify_dim(*m, *ell, u, seed)?);
        }
        DjmCmd::CellCheck { m, ell, u, report } => {
            emit_report(report, &verify_cellularity(*m, *ell, u, parallel)?);
        }
        DjmCmd::Rank { nu, mu, u, report } => {
            let nu = mc_from_str(&read_input(nu)?)?;
            let mu = mc_from_str(&read_input(mu)?)?;
            if nu.size() != mu.size() || nu.level() != mu.level() {
                return usage("weights must have equal size and level");
            }
            let m = nu.size();
            let ell = nu.level();
            cap(m <= 4 && ell <= 3, "m/ell", "m ≤ 4, ℓ ≤ 3")?;
            let (ctx, ps) = numeric_ctx(m, ell, u)?;
            let r = parmat_flat_rank(&nu, &mu, &ctx, parallel)?;
            emit_report(report, &json!({
                "suite": "rank", "nu": nu.comps, "mu": mu.comps, "u": u_strings(&ps),
                "diagrams": r.diagrams, "sst_pairs": r.sst_pairs, "rank": r.rank,
                "mismatches": 0,
            }));
        }
    }
    Ok(())
}

fn run(cli: &Cli, parallel: bool) -> CliResult<()> {
    match &cli.cmd {
        Cmd::Enumerate { what } => cmd_enumerate(what),
        Cmd::Verify { what } => cmd_verify(what, parallel, cli.seed),
        Cmd::Render { input, format } => {
            let x = read_parmat(input)?;
            x.validate()?;
            match format {
                RenderFormat::Ascii => print!("{}", render::ascii(&x)),
                RenderFormat::Svg => print!("{}", render::svg(&x)),
            }
            Ok(())
        }
        Cmd::Rsk { input, level, report } => {
            let x = read_parmat(input)?;
            if let Some(l) = level {
                if x.top.level() != *l {
                    return usage("diagram level disagrees with --level");
                }
            }
            let (s, t) = phi(&x)?;
            emit_report(report, &json!({"S": sst_to_json(&s), "T": sst_to_json(&t)}));
            Ok(())
        }
        Cmd::Hecke { what } => cmd_hecke(what),
        Cmd::Djm { what } => cmd_djm(what, parallel, cli.seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let parallel = configure_jobs(cli.jobs);
    match run(&cli, parallel) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Verify(msg)) => {
            println!("{}", json!({"status": "failed", "reason": msg}));
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Cap(v)) => {
            println!("{v}");
            ExitCode::from(3)
        }
    }
}
