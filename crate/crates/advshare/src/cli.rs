//! Command-line verbs. `run` is a pure function of its arguments, the
//! environment limit and the files it reads, so it can be tested in-process.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use advshare_core::classical::{dealer_forgets_experiment, ClassicalScheme};
use advshare_core::field::Fq;
use advshare_core::fixtures;
use advshare_core::gv::{
    approx, asymptotic_feasible, epsilon_root, existence_check, gv_exponent, gv_lhs, gv_search, AsymptoticParams,
    Deltas, GvParams,
};
use advshare_core::rs::{build_rs_scheme, rs_thresholds, table1, RsParams, Table1Row, Thresholds};
use advshare_core::scheme::{advance_sufficient, build_scheme, classify, is_advance_shareable, leakage_dim, Scheme};
use advshare_core::sim::{encode_states, phi_state, verify_protocol, QuantumState};
use advshare_core::symplectic::form_matrix;
use advshare_core::symplectic::{coset_distance, random_triple};
use advshare_core::{CodeTriple, EnumLimit, Layout, MatrixFq, ShareSet, Subspace};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;
use serde_json::{json, Value};

use crate::format::{self, FormatError, TripleFile};
use crate::report::Report;

pub const ENV_MAX_DIM: &str = "ADVSHARE_MAX_DIM";

#[derive(Parser, Debug)]
#[command(name = "advshare", version, about = "Secret sharing with advance-shareable quantum shares")]
pub struct Cli {
    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized verbs; echoed in every report.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the inclusions and dimensions of a triple file.
    Validate { file: PathBuf },
    /// Leakage dimension and access class of share subsets.
    Classify {
        file: PathBuf,
        #[command(flatten)]
        sel: Selection,
    },
    /// Exact and sufficient advance-shareability tests for one set.
    AdvanceCheck {
        file: PathBuf,
        /// 1-based share list such as `1,2`; defaults to the file's `advance` line.
        #[arg(long)]
        set: Option<String>,
    },
    /// Coset representative supported outside the advance set.
    AdvanceRep {
        file: PathBuf,
        #[arg(long)]
        secret: String,
        #[arg(long = "rand")]
        randomness: String,
        #[arg(long)]
        set: Option<String>,
    },
    /// Reed–Solomon triple with n = q, written in the triple format.
    RsBuild {
        q: u32,
        k: usize,
        s: usize,
        #[arg(long)]
        relax_parity: bool,
        /// Advance set recorded in the output file.
        #[arg(long)]
        advance: Option<String>,
    },
    /// Quantum scheme against ramp Shamir with the same secret and shares.
    Table1 { q: u32, k: usize, s: usize },
    /// Certify secrecy and reconstruction with the state-vector simulator.
    VerifySim {
        file: PathBuf,
        /// `all` or subsets separated by `;`, e.g. `1,2;3`.
        #[arg(long, default_value = "all")]
        subsets: String,
    },
    /// Advance-shareable versus forbidden and the dealer-forgets experiment.
    ClassicalCompare {
        file: PathBuf,
        /// Sets for the dealer-forgets experiment; defaults to every nonempty forbidden set.
        #[arg(long)]
        sets: Option<String>,
    },
    /// Evaluate the existence bound at one distance triple.
    GvCheck {
        q: u32,
        n: usize,
        k: usize,
        s: usize,
        /// Distance targets δ_q, δ_f, δ_t.
        dq: usize,
        df: usize,
        dt: usize,
        /// Also search all chains for one meeting the distances.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Maximal distance triples satisfying the bound.
    GvSearch { q: u32, n: usize, k: usize, s: usize },
    /// Rate conditions for large n.
    GvAsymptotic {
        q: u32,
        /// Secret rate k/n.
        r: f64,
        /// Randomness rate s/n.
        s: f64,
        /// Relative distances; give all three.
        #[arg(long)]
        eps_q: Option<f64>,
        #[arg(long)]
        eps_f: Option<f64>,
        #[arg(long)]
        eps_t: Option<f64>,
        /// Solve h_q(ε) + ε log_q(q² − 1) = 1.
        #[arg(long)]
        find_root: bool,
    },
    /// Random valid triple drawn with `--seed`.
    RandomTriple { q: u32, n: usize, k: usize, s: usize },
    /// Built-in worked examples.
    Demo { which: DemoName },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct Selection {
    /// 1-based share list; may be repeated.
    #[arg(long)]
    subset: Vec<String>,
    #[arg(long)]
    all: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum DemoName {
    Gottesman,
    Example3b,
}

/// Exit status and captured streams of one invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain {
        name: &'static str,
        message: String,
    },
    /// The verb ran but what it checked does not hold.
    Invalid(Value),
}

impl From<advshare_core::Error> for Failure {
    fn from(e: advshare_core::Error) -> Self {
        Failure::Domain { name: e.name(), message: e.to_string() }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::Domain { name: e.name(), message: e.to_string() }
    }
}

type Res<T> = Result<T, Failure>;

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            };
        }
    };
    let limit = match enum_limit() {
        Ok(l) => l,
        Err(msg) => return Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") },
    };
    let (name, inputs) = describe(&cli.command);
    let result = dispatch(&cli, limit);
    let (code, results, stderr) = match result {
        Ok(v) => (0, v, String::new()),
        Err(Failure::Usage(msg)) => {
            return Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") };
        }
        Err(Failure::Domain { name, message }) => {
            (1, json!({ "error": { "name": name, "message": message } }), format!("error[{name}]: {message}\n"))
        }
        Err(Failure::Invalid(v)) => (1, v, String::new()),
    };
    let report = Report::new(name, inputs, results, cli.seed);
    let stdout = if cli.json {
        report.to_json()
    } else if let (Command::RsBuild { .. }, Some(Value::String(f))) = (&cli.command, report.results.get("file")) {
        f.clone()
    } else if code == 0 || report.results.get("error").is_none() {
        report.to_text()
    } else {
        String::new()
    };
    Outcome { code, stdout, stderr }
}

fn enum_limit() -> Result<EnumLimit, String> {
    match std::env::var(ENV_MAX_DIM) {
        Ok(v) => {
            let bits: u32 = v.trim().parse().map_err(|_| format!("{ENV_MAX_DIM}={v} is not a bit count"))?;
            Ok(EnumLimit { max_log2: bits.min(EnumLimit::UNLIMITED.max_log2) })
        }
        Err(_) => Ok(EnumLimit::default()),
    }
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

fn describe(c: &Command) -> (&'static str, Value) {
    match c {
        Command::Validate { file } => ("validate", json!({ "file": path_str(file) })),
        Command::Classify { file, sel } => {
            ("classify", json!({ "file": path_str(file), "subsets": sel.subset, "all": sel.all }))
        }
        Command::AdvanceCheck { file, set } => ("advance-check", json!({ "file": path_str(file), "set": set })),
        Command::AdvanceRep { file, secret, randomness, set } => {
            ("advance-rep", json!({ "file": path_str(file), "secret": secret, "rand": randomness, "set": set }))
        }
        Command::RsBuild { q, k, s, relax_parity, advance } => {
            ("rs-build", json!({ "q": q, "k": k, "s": s, "relax_parity": relax_parity, "advance": advance }))
        }
        Command::Table1 { q, k, s } => ("table1", json!({ "q": q, "k": k, "s": s })),
        Command::VerifySim { file, subsets } => ("verify-sim", json!({ "file": path_str(file), "subsets": subsets })),
        Command::ClassicalCompare { file, sets } => {
            ("classical-compare", json!({ "file": path_str(file), "sets": sets }))
        }
        Command::GvCheck { q, n, k, s, dq, df, dt, exhaustive } => (
            "gv-check",
            json!({ "q": q, "n": n, "k": k, "s": s, "delta_q": dq, "delta_f": df, "delta_t": dt, "exhaustive": exhaustive }),
        ),
        Command::GvSearch { q, n, k, s } => ("gv-search", json!({ "q": q, "n": n, "k": k, "s": s })),
        Command::GvAsymptotic { q, r, s, eps_q, eps_f, eps_t, find_root } => (
            "gv-asymptotic",
            json!({ "q": q, "R": r, "S": s, "eps_q": eps_q, "eps_f": eps_f, "eps_t": eps_t, "find_root": find_root }),
        ),
        Command::RandomTriple { q, n, k, s } => ("random-triple", json!({ "q": q, "n": n, "k": k, "s": s })),
        Command::Demo { which } => ("demo", json!({ "which": demo_name(*which) })),
    }
}

fn demo_name(d: DemoName) -> &'static str {
    match d {
        DemoName::Gottesman => "gottesman",
        DemoName::Example3b => "example3b",
    }
}

fn dispatch(cli: &Cli, limit: EnumLimit) -> Res<Value> {
    match &cli.command {
        Command::Validate { file } => cmd_validate(file),
        Command::Classify { file, sel } => cmd_classify(file, sel, limit),
        Command::AdvanceCheck { file, set } => cmd_advance_check(file, set.as_deref(), limit),
        Command::AdvanceRep { file, secret, randomness, set } => {
            cmd_advance_rep(file, secret, randomness, set.as_deref())
        }
        Command::RsBuild { q, k, s, relax_parity, advance } => {
            cmd_rs_build(*q, *k, *s, *relax_parity, advance.as_deref())
        }
        Command::Table1 { q, k, s } => cmd_table1(*q, *k, *s),
        Command::VerifySim { file, subsets } => cmd_verify_sim(file, subsets),
        Command::ClassicalCompare { file, sets } => cmd_classical_compare(file, sets.as_deref(), limit),
        Command::GvCheck { q, n, k, s, dq, df, dt, exhaustive } => cmd_gv_check(
            GvParams { q: *q, n: *n, k: *k, s: *s, delta: Deltas { q: *dq, f: *df, t: *dt } },
            *exhaustive,
            limit,
        ),
        Command::GvSearch { q, n, k, s } => cmd_gv_search(*q, *n, *k, *s),
        Command::GvAsymptotic { q, r, s, eps_q, eps_f, eps_t, find_root } => {
            cmd_gv_asymptotic(*q, *r, *s, [*eps_q, *eps_f, *eps_t], *find_root)
        }
        Command::RandomTriple { q, n, k, s } => cmd_random_triple(*q, *n, *k, *s, cli.seed),
        Command::Demo { which: DemoName::Gottesman } => demo_gottesman(),
        Command::Demo { which: DemoName::Example3b } => demo_example3b(),
    }
}

fn read(path: &Path) -> Res<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Domain { name: "IoError", message: format!("{}: {e}", path.display()) })
}

fn load_triple(path: &Path) -> Res<TripleFile> {
    Ok(format::parse_triple(&read(path)?)?)
}

/// `1,2,3` as a 1-based share list; `-` or an empty string is the empty set.
pub fn parse_set(s: &str, n: usize) -> Result<ShareSet, String> {
    let s = s.trim();
    if s.is_empty() || s == "-" || s == "{}" {
        return Ok(ShareSet::EMPTY);
    }
    let mut idx = Vec::new();
    for tok in s.trim_matches(|c| c == '{' || c == '}').split(',') {
        let i: usize = tok.trim().parse().map_err(|_| format!("bad share index `{tok}` in `{s}`"))?;
        if i == 0 || i > n {
            return Err(format!("share index {i} outside 1..={n}"));
        }
        idx.push(i);
    }
    Ok(ShareSet::from_one_based(&idx))
}

fn parse_elements(s: &str, q: u32, flag: &str) -> Res<Vec<Fq>> {
    if s.trim().is_empty() || s.trim() == "-" {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| match t.trim().parse::<u32>() {
            Ok(v) if v < q => Ok(Fq(v)),
            _ => Err(Failure::Usage(format!("{flag}: `{t}` is not an element of GF({q})"))),
        })
        .collect()
}

fn set_arg(flag: &str, s: &str, n: usize) -> Res<ShareSet> {
    parse_set(s, n).map_err(|m| Failure::Usage(format!("{flag}: {m}")))
}

fn vec_str(v: &[Fq], symplectic: bool) -> String {
    let half = v.len() / 2;
    let mut parts = Vec::new();
    for (i, x) in v.iter().enumerate() {
        if symplectic && i == half {
            parts.push("|".to_string());
        }
        parts.push(x.0.to_string());
    }
    parts.join(" ")
}

fn matrix_rows(m: &MatrixFq, symplectic: bool) -> Vec<String> {
    m.iter_rows().map(|r| vec_str(r, symplectic)).collect()
}

fn rational(r: &BigRational) -> Value {
    json!({ "exact": r.to_string(), "decimal": approx(r) })
}

fn triple_summary(t: &CodeTriple) -> Value {
    json!({
        "q": t.field.order(),
        "n": t.n,
        "k": t.k,
        "s": t.s,
        "dim_C_S": t.c_s.dim(),
        "dim_C_R": t.c_r.dim(),
        "dim_C_MAX": t.c_max.dim(),
        "css": t.is_css(),
        "deterministic": t.is_deterministic(),
    })
}

fn cmd_validate(file: &Path) -> Res<Value> {
    match format::parse_triple(&read(file)?) {
        Ok(tf) => Ok(json!({ "valid": true, "triple": triple_summary(&tf.triple), "violations": [] })),
        Err(FormatError::Core(advshare_core::Error::InvalidTriple(vs))) => {
            let vs: Vec<Value> = vs.iter().map(|v| json!({ "name": v.name(), "detail": v.to_string() })).collect();
            Err(Failure::Invalid(json!({ "valid": false, "violations": vs })))
        }
        Err(e) => Err(e.into()),
    }
}

fn subset_record(t: &CodeTriple, a: ShareSet, d_s: usize) -> Res<Value> {
    let l = leakage_dim(t, a)?;
    Ok(json!({
        "subset": a.to_string(),
        "leakage_dim": l,
        "class": classify(t, a)?.name(),
        "advance_shareable": is_advance_shareable(t, a)?,
        "sufficient_bound_holds": a.len() < d_s,
    }))
}

fn cmd_classify(file: &Path, sel: &Selection, limit: EnumLimit) -> Res<Value> {
    let t = load_triple(file)?.triple;
    let sets: Vec<ShareSet> = if sel.all {
        ShareSet::all(t.n).collect()
    } else {
        sel.subset.iter().map(|s| set_arg("--subset", s, t.n)).collect::<Res<_>>()?
    };
    let d_s = coset_distance(&t.field, &t.c_max, &t.c_s, limit)?;
    let rows = sets.iter().map(|&a| subset_record(&t, a, d_s)).collect::<Res<Vec<_>>>()?;
    Ok(json!({ "coset_distance": d_s, "subsets": rows }))
}

fn advance_set(tf: &TripleFile, set: Option<&str>) -> Res<ShareSet> {
    match (set, tf.advance) {
        (Some(s), _) => set_arg("--set", s, tf.triple.n),
        (None, Some(b)) => Ok(b),
        (None, None) => Err(Failure::Usage("--set is required when the file has no `advance` line".into())),
    }
}

fn cmd_advance_check(file: &Path, set: Option<&str>, limit: EnumLimit) -> Res<Value> {
    let tf = load_triple(file)?;
    let b = advance_set(&tf, set)?;
    let t = &tf.triple;
    let d_s = coset_distance(&t.field, &t.c_max, &t.c_s, limit)?;
    let rec = subset_record(t, b, d_s)?;
    Ok(json!({ "coset_distance": d_s, "sufficient": advance_sufficient(t, b, limit)?, "record": rec }))
}

fn cmd_advance_rep(file: &Path, secret: &str, randomness: &str, set: Option<&str>) -> Res<Value> {
    let tf = load_triple(file)?;
    let b = advance_set(&tf, set)?;
    let q = tf.triple.field.order();
    let m = parse_elements(secret, q, "--secret")?;
    let r = parse_elements(randomness, q, "--rand")?;
    let sch = build_scheme(&tf.triple, b)?;
    let label = sch.encode_label(&m, &r)?;
    let z = sch.advance_rep(&label.vector)?;
    let n = sch.n();
    let outside = b.indices().iter().all(|&i| z[i].is_zero() && z[n + i].is_zero());
    Ok(json!({
        "advance_set": b.to_string(),
        "label": vec_str(&label.vector, true),
        "representative": vec_str(&z, true),
        "same_coset": sch.same_coset(&label.vector, &z),
        "supported_outside_advance_set": outside,
    }))
}

fn cmd_rs_build(q: u32, k: usize, s: usize, relax: bool, advance: Option<&str>) -> Res<Value> {
    let t = build_rs_scheme(&RsParams { q, k, s }, relax)?;
    let b = advance.map(|a| set_arg("--advance", a, t.n)).transpose()?;
    let th = rs_thresholds(t.n, k, s).ok();
    Ok(json!({
        "triple": triple_summary(&t),
        "thresholds": th.map(|th| thresholds_json(&th)),
        "file": format::write_triple(&t, b),
    }))
}

fn thresholds_json(t: &Thresholds) -> Value {
    json!({
        "forbidden_max": t.forbidden_max,
        "qualified_min": t.qualified_min,
        "advance_max": t.advance_max,
        "advance_guaranteed": t.advance_guaranteed,
    })
}

fn row_json(r: &Table1Row) -> Value {
    json!({
        "scheme": r.scheme,
        "secret_size": r.symbolic[0],
        "share_size": r.symbolic[1],
        "qualified": r.symbolic[2],
        "forbidden": r.symbolic[3],
        "advance_shareable": r.symbolic[4],
        "secret_bits": r.secret_bits,
        "share_size_value": format!("{} {}", r.share_size, r.share_unit),
        "forbidden_max": r.thresholds.forbidden_max,
        "qualified_min": r.thresholds.qualified_min,
        "advance_max": r.thresholds.advance_max,
        "advance_guaranteed": r.thresholds.advance_guaranteed,
    })
}

fn cmd_table1(q: u32, k: usize, s: usize) -> Res<Value> {
    let t = table1(q, k, s)?;
    Ok(json!({
        "n": t.n,
        "k": t.k,
        "s": t.s,
        "q": t.q,
        "rows": [row_json(&t.quantum), row_json(&t.shamir)],
        "advantage": t.advantage,
        "advantage_guaranteed": t.advantage_guaranteed,
    }))
}

fn cmd_verify_sim(file: &Path, subsets: &str) -> Res<Value> {
    let tf = load_triple(file)?;
    let t = &tf.triple;
    let sets: Vec<ShareSet> = if subsets.trim() == "all" {
        ShareSet::all(t.n).collect()
    } else {
        subsets.split(';').map(|s| set_arg("--subsets", s, t.n)).collect::<Res<_>>()?
    };
    let sch = build_scheme(t, tf.advance.unwrap_or(ShareSet::EMPTY))?;
    let rep = verify_protocol(&sch, &sets)?;
    let mut ok = true;
    let rows: Vec<Value> = rep
        .subsets
        .iter()
        .map(|c| {
            let class = classify(t, c.set).map(|a| a.name()).unwrap_or("?");
            let pass = (c.chi - c.leakage as f64).abs() < 1e-6
                && match class {
                    "forbidden" => c.secrecy < 1e-9,
                    "qualified" => c.distinguishability < 1e-9,
                    _ => true,
                };
            ok &= pass;
            json!({
                "subset": c.set.to_string(),
                "leakage_dim": c.leakage,
                "class": class,
                "chi": round(c.chi),
                "secrecy": round(c.secrecy),
                "distinguishability": round(c.distinguishability),
                "pass": pass,
            })
        })
        .collect();
    if let Some(d) = rep.advance_invariance {
        ok &= d < 1e-9;
    }
    let out = json!({
        "advance_set": sch.advance.to_string(),
        "advance_invariance": rep.advance_invariance.map(round),
        "subsets": rows,
        "certified": ok,
    });
    if ok {
        Ok(out)
    } else {
        Err(Failure::Invalid(out))
    }
}

/// Rounded to 12 decimals so that reports do not depend on the last bits of
/// floating-point summation order.
fn round(x: f64) -> f64 {
    let r = (x * 1e12).round() / 1e12;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn cmd_classical_compare(file: &Path, sets: Option<&str>, limit: EnumLimit) -> Res<Value> {
    let sch: ClassicalScheme = format::parse_classical(&read(file)?)?;
    let n = sch.n();
    let mut ok = true;
    let mut lemma = Vec::new();
    for a in ShareSet::all(n) {
        let f = sch.forbidden(a)?;
        let adv = sch.advance_shareable(a, limit)?;
        ok &= f == adv;
        lemma.push(json!({ "subset": a.to_string(), "forbidden": f, "advance_shareable": adv, "agree": f == adv }));
    }
    let targets: Vec<ShareSet> = match sets {
        Some(s) => s.split(';').map(|x| set_arg("--sets", x, n)).collect::<Res<_>>()?,
        None => ShareSet::all(n).filter(|b| !b.is_empty() && sch.forbidden(*b).unwrap_or(false)).collect(),
    };
    let mut forgets = Vec::new();
    for b in targets {
        let r = dealer_forgets_experiment(&sch, b, limit)?;
        ok &= r.holds();
        forgets.push(json!({
            "set": b.to_string(),
            "pairs": r.pairs,
            "exact_equalities": r.exact_equalities,
            "holds": r.holds(),
        }));
    }
    let out =
        json!({ "q": sch.field.order(), "n": n, "k": sch.k(), "lemma": lemma, "dealer_forgets": forgets, "pass": ok });
    if ok {
        Ok(out)
    } else {
        Err(Failure::Invalid(out))
    }
}

fn cmd_gv_check(p: GvParams, exhaustive: bool, limit: EnumLimit) -> Res<Value> {
    let lhs = gv_lhs(&p)?;
    let feasible = lhs < BigRational::from_integer(1.into());
    let mut out = json!({ "lhs": rational(&lhs), "feasible": feasible });
    if exhaustive {
        let found = existence_check(p.q, p.n, p.k, p.s, limit)?;
        let achieved = found.iter().find(|(d, _)| *d == p.delta).map(|(_, ok)| *ok);
        out["exhaustive"] = json!({
            "feasible_triples": found.len(),
            "all_realized": found.iter().all(|(_, ok)| *ok),
            "this_triple_realized": achieved,
        });
    }
    Ok(out)
}

fn cmd_gv_search(q: u32, n: usize, k: usize, s: usize) -> Res<Value> {
    let front = gv_search(q, n, k, s)?;
    let rows = front
        .iter()
        .map(|&d| {
            let lhs = gv_lhs(&GvParams { q, n, k, s, delta: d })?;
            Ok(json!({ "delta_q": d.q, "delta_f": d.f, "delta_t": d.t, "lhs": lhs.to_string(), "lhs_decimal": approx(&lhs) }))
        })
        .collect::<Res<Vec<_>>>()?;
    Ok(json!({ "frontier": rows }))
}

fn cmd_gv_asymptotic(q: u32, r: f64, s: f64, eps: [Option<f64>; 3], find_root: bool) -> Res<Value> {
    let mut out = serde_json::Map::new();
    if find_root {
        let root = epsilon_root(q)?;
        out.insert("epsilon_root".into(), json!(root));
        out.insert("residual".into(), json!(gv_exponent(q, root)? - 1.0));
    }
    match eps {
        [Some(eq), Some(ef), Some(et)] => {
            let rep = asymptotic_feasible(&AsymptoticParams { q, r, s, eps_q: eq, eps_f: ef, eps_t: et })?;
            let names = ["secrecy", "advance", "forbidden"];
            let conds: Vec<Value> = names
                .iter()
                .zip(rep.conditions)
                .map(|(n, (l, rr))| json!({ "condition": n, "left": l, "right": rr, "holds": l < rr }))
                .collect();
            out.insert("conditions".into(), json!(conds));
            out.insert("feasible".into(), json!(rep.feasible));
        }
        [None, None, None] if find_root => {}
        _ => return Err(Failure::Usage("give all of --eps-q, --eps-f, --eps-t, or --find-root".into())),
    }
    Ok(Value::Object(out))
}

fn cmd_random_triple(q: u32, n: usize, k: usize, s: usize, seed: u64) -> Res<Value> {
    let f = advshare_core::Field::with_order(q)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = random_triple(&f, n, k, s, &mut rng)?;
    Ok(json!({ "triple": triple_summary(&t), "file": format::write_triple(&t, None) }))
}

fn amplitudes(s: &QuantumState) -> Vec<Value> {
    s.amplitudes().iter().map(|a| json!(format!("{}{:+}i", round(a.re), round(a.im)))).collect()
}

fn demo_gottesman() -> Res<Value> {
    let t = fixtures::gottesman();
    let b = ShareSet::prefix(1);
    let sch = build_scheme(&t, b)?;
    let phi = phi_state(&t)?;
    let enc = encode_states(&sch, false)?;
    let flat: Vec<&QuantumState> = enc.states.iter().flatten().collect();
    let mut max_overlap: f64 = 0.0;
    for i in 0..flat.len() {
        for j in i + 1..flat.len() {
            max_overlap = max_overlap.max(flat[i].inner(flat[j])?.norm());
        }
    }
    let rep = verify_protocol(&sch, &[b])?;
    Ok(json!({
        "file": format::write_triple(&t, Some(b)),
        "phi": amplitudes(&phi),
        "max_encoding_overlap": round(max_overlap),
        "secrecy_share_1": round(rep.subsets[0].secrecy),
        "advance_shareable_exact": is_advance_shareable(&t, b)?,
        "advance_shareable_sufficient": advance_sufficient(&t, b, EnumLimit::default())?,
    }))
}

fn demo_example3b() -> Res<Value> {
    let t = fixtures::example3b();
    let b = ShareSet::prefix(2);
    let sch: Scheme = build_scheme(&t, b)?;
    let f = &t.field;
    let mut solver = Vec::new();
    let mut all_match = true;
    for a1 in 0..3u32 {
        for a2 in 0..3u32 {
            for m1 in 0..3u32 {
                for m2 in 0..3u32 {
                    let label: Vec<Fq> = [a1, a1, 0, m1, a2, a2, 0, m2].iter().map(|&x| Fq(x)).collect();
                    let z = sch.advance_rep(&label)?;
                    let want: Vec<Fq> = [0, 0, 2 * a1 % 3, m1, 0, 0, 2 * a2 % 3, m2].iter().map(|&x| Fq(x)).collect();
                    let ok = sch.same_coset(&z, &want) && sch.same_coset(&label, &want);
                    all_match &= ok;
                    solver.push(json!({
                        "a1": a1, "a2": a2, "m1": m1, "m2": m2,
                        "representative": vec_str(&z, true),
                        "closed_form": vec_str(&want, true),
                        "same_coset": ok,
                    }));
                }
            }
        }
    }
    // C_max basis ordered (v1|0), (0|v1), (v2|0), (0|v2)
    let z = [0u32; 4];
    let rows: Vec<Vec<u32>> = [(&fixtures::V1, &z), (&z, &fixtures::V1), (&fixtures::V2, &z), (&z, &fixtures::V2)]
        .iter()
        .map(|(a, b)| a.iter().chain(b.iter()).copied().collect())
        .collect();
    let refs: Vec<&[u32]> = rows.iter().map(|r| r.as_slice()).collect();
    let h_v = form_matrix(f, &MatrixFq::from_u32_rows(8, &refs)?);
    let same_span = Subspace::span(f, Layout::Plain, &h_v) == Subspace::span(f, Layout::Plain, &sch.h);
    let d_s = coset_distance(f, &t.c_max, &t.c_s, EnumLimit::default())?;
    let classes = ShareSet::all(t.n).map(|a| subset_record(&t, a, d_s)).collect::<Res<Vec<_>>>()?;
    Ok(json!({
        "file": format::write_triple(&t, Some(b)),
        "H": matrix_rows(&sch.h, true),
        "H_from_v_basis": matrix_rows(&h_v, true),
        "H_same_row_space": same_span,
        "solver": solver,
        "solver_matches_closed_form": all_match,
        "subsets": classes,
    }))
}
