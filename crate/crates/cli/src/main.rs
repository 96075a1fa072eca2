//! `wrank`: weighted matroid ranks, their polytope checks and entropic
//! constructions from the command line.
//!
//! Exit codes: 0 the claim holds, 1 the claim was verified false, 2 usage,
//! parse or precondition error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use wrank::construct::{
    build_binary, build_graphic_zk, verify_binary_entropic, verify_graphic_zk, Method,
    VerifyOptions, DEFAULT_BINARY_CAP_BITS, DEFAULT_ZK_CAP_ASSIGNMENTS,
};
use wrank::figures::{figure2, REDUCTION_NOTE};
use wrank::io::{float_vector_json, rational_vector_json, set_function_json, MatroidFile};
use wrank::report::Report;
use wrank::setfunc::{
    check_submodular, gamma_polytope, is_extreme_point, search_decomposition, uniform_anchors,
    MAX_POLYTOPE_N,
};
use wrank::{EntropyValue, Error, Matroid, SetFunctionVector, Subset, WeightFunction};

/// Random segments tried against a certified vertex.
const FALSIFIER_SAMPLES: usize = 200;

#[derive(Parser, Debug)]
#[command(
    name = "wrank",
    version,
    about = "Weighted matroid rank functions and their entropic constructions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    output: Output,

    /// Slack allowed between brute-force entropies and exact values.
    #[arg(long, global = true, default_value_t = 1e-9, value_parser = positive_f64)]
    tolerance: f64,

    /// Which entropy oracle to run.
    #[arg(long, global = true, value_enum, default_value_t = MethodArg::Both)]
    method: MethodArg,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Largest F2 bit space enumerated by brute force.
    #[arg(long, global = true, env = "WRANK_BINARY_CAP_BITS", default_value_t = DEFAULT_BINARY_CAP_BITS,
          value_parser = positive_usize)]
    binary_cap_bits: usize,

    /// Largest number of Zk vertex assignments enumerated by brute force.
    #[arg(long, global = true, env = "WRANK_ZK_CAP_ASSIGNMENTS", default_value_t = DEFAULT_ZK_CAP_ASSIGNMENTS,
          value_parser = positive_u64)]
    zk_cap_assignments: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank and weighted rank of a subset (default: the whole ground set).
    Rank {
        file: PathBuf,
        /// Hex mask (0x5) or 1-based element list (1,3).
        #[arg(long)]
        subset: Option<String>,
    },
    /// Every circuit, ordered by size then mask.
    Circuits { file: PathBuf },
    /// Entropy of every nonempty subset next to the weighted rank.
    EntropyVector {
        file: PathBuf,
        /// Use the Zk difference construction on a graphic matroid.
        #[arg(long)]
        k: Option<u64>,
    },
    /// Check a claim over all subsets; exit 0 iff it holds.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum)]
        claim: Claim,
        /// Alphabet size for the zk claim.
        #[arg(long)]
        k: Option<u64>,
    },
    /// Full-set entropies of the weight-2 triangle, its subdivision and its doubling.
    Figure2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Algebraic,
    #[value(name = "bruteforce", alias = "brute-force")]
    BruteForce,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Claim {
    Submodular,
    Vertex,
    Entropic,
    Zk,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Algebraic => Method::Algebraic,
            MethodArg::BruteForce => Method::BruteForce,
            MethodArg::Both => Method::Both,
        }
    }
}

fn positive_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        _ => Err(format!("expected a positive number, got {s:?}")),
    }
}

fn positive_usize(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(x) if x > 0 => Ok(x),
        _ => Err(format!("expected a positive integer, got {s:?}")),
    }
}

fn positive_u64(s: &str) -> Result<u64, String> {
    match s.parse::<u64>() {
        Ok(x) if x > 0 => Ok(x),
        _ => Err(format!("expected a positive integer, got {s:?}")),
    }
}

/// What a command produced: a document to print and whether its claim holds.
struct Outcome {
    json: Value,
    text: String,
    pass: bool,
}

impl Outcome {
    fn info(json: Value, text: String) -> Self {
        Outcome {
            json,
            text,
            pass: true,
        }
    }
}

struct UsageError(String);

impl From<Error> for UsageError {
    fn from(e: Error) -> Self {
        UsageError(e.to_string())
    }
}

type CmdResult = Result<Outcome, UsageError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            match cli.output {
                Output::Json => print!("{}", pretty(&outcome.json)),
                Output::Text => print!("{}", outcome.text),
            }
            if outcome.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(UsageError(message)) => {
            eprintln!("wrank: error: {message}");
            ExitCode::from(2)
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n"
}

fn run(cli: &Cli) -> CmdResult {
    let opts = VerifyOptions {
        tolerance: cli.tolerance,
        method: cli.method.into(),
        binary_cap_bits: cli.binary_cap_bits,
        zk_cap_assignments: cli.zk_cap_assignments,
    };
    match &cli.command {
        Command::Rank { file, subset } => cmd_rank(file, subset.as_deref()),
        Command::Circuits { file } => cmd_circuits(file),
        Command::EntropyVector { file, k } => cmd_entropy_vector(file, *k, &opts),
        Command::Verify { file, claim, k } => cmd_verify(file, *claim, *k, &opts, cli.seed),
        Command::Figure2 => cmd_figure2(),
    }
}

fn load(path: &PathBuf) -> Result<(Matroid, WeightFunction), UsageError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
    MatroidFile::from_json(&text)
        .and_then(|f| f.parts())
        .map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn elements_json(s: Subset) -> Value {
    Value::from(s.elements().map(|e| e + 1).collect::<Vec<_>>())
}

fn cmd_rank(path: &PathBuf, subset: Option<&str>) -> CmdResult {
    let (m, w) = load(path)?;
    let s = match subset {
        Some(text) => {
            let s = Subset::parse(text)?;
            s.check_within(m.len())?;
            s
        }
        None => m.ground_set(),
    };
    let rank = m.rank(s);
    let phi = m.weighted_rank(&w, s);
    Ok(Outcome::info(
        json!({
            "subset": s.to_hex(),
            "elements": elements_json(s),
            "rank": rank,
            "weighted_rank": phi.to_string(),
        }),
        format!("subset {s}\nrank {rank}\nweighted rank {phi}\n"),
    ))
}

fn cmd_circuits(path: &PathBuf) -> CmdResult {
    let (m, _) = load(path)?;
    let circuits = m.circuits()?;
    let list: Vec<Value> = circuits
        .iter()
        .map(|&c| json!({ "subset": c.to_hex(), "elements": elements_json(c) }))
        .collect();
    let mut text = String::new();
    for c in circuits.iter() {
        text.push_str(&format!("{c}\n"));
    }
    Ok(Outcome::info(
        json!({ "count": circuits.len(), "circuits": list }),
        text,
    ))
}

fn vector_text(rows: &[(&str, &Value)]) -> String {
    let mut text = String::new();
    let Some(keys) = rows.iter().find_map(|(_, v)| v.as_object()) else {
        return text;
    };
    for key in keys.keys() {
        text.push_str(key);
        for (label, v) in rows {
            let cell = match &v[key] {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            text.push_str(&format!("  {label}={cell}"));
        }
        text.push('\n');
    }
    text
}

fn cmd_entropy_vector(path: &PathBuf, k: Option<u64>, opts: &VerifyOptions) -> CmdResult {
    let (m, w) = load(path)?;
    let n = m.len();
    let mut doc = Map::new();
    let mut warnings = Vec::new();
    let (algebraic, brute_force, phi) = match k {
        None => {
            let c = build_binary(&m, &w)?.with_brute_force_cap(opts.binary_cap_bits);
            doc.insert("construction".into(), "binary".into());
            doc.insert("bit_space_dim".into(), c.bit_space_dim().into());
            let dist = if !opts.method.brute_force() {
                None
            } else if c.brute_force_within_cap() {
                Some(c.brute_force_distribution()?.entropy_vector()?)
            } else if opts.method == Method::BruteForce {
                return Err(UsageError(format!(
                    "bit space dimension {} exceeds the brute-force cap {}",
                    c.bit_space_dim(),
                    opts.binary_cap_bits
                )));
            } else {
                warnings.push(format!(
                    "bit space dimension {} exceeds the brute-force cap {}; algebraic only",
                    c.bit_space_dim(),
                    opts.binary_cap_bits
                ));
                None
            };
            let exact = (opts.method.algebraic() || dist.is_none())
                .then(|| SetFunctionVector::from_fn(n, |s| c.algebraic_entropy(s)));
            (exact, dist, rational_vector_json(&m.phi_vector(&w)?))
        }
        Some(k) => {
            let Matroid::Graphic(g) = &m else {
                return Err(UsageError("--k requires a graphic matroid".into()));
            };
            if !w.is_unit() {
                warnings.push(format!(
                    "file weights ignored; every edge has weight log2({k})"
                ));
            }
            let c = build_graphic_zk(g, k)?;
            doc.insert("construction".into(), "zk".into());
            doc.insert("k".into(), k.into());
            let dist = if !opts.method.brute_force() {
                None
            } else if c.assignment_count() <= opts.zk_cap_assignments {
                Some(
                    c.brute_force_distribution(opts.zk_cap_assignments)?
                        .entropy_vector()?,
                )
            } else if opts.method == Method::BruteForce {
                return Err(UsageError(format!(
                    "k^|V| = {} exceeds the brute-force cap {}",
                    c.assignment_count(),
                    opts.zk_cap_assignments
                )));
            } else {
                warnings.push(format!(
                    "k^|V| = {} exceeds the brute-force cap {}; algebraic only",
                    c.assignment_count(),
                    opts.zk_cap_assignments
                ));
                None
            };
            let exact = (opts.method.algebraic() || dist.is_none())
                .then(|| SetFunctionVector::from_fn(n, |s| c.algebraic_entropy(s)));
            let phi =
                SetFunctionVector::from_fn(n, |s| EntropyValue::log2_multiple(m.rank(s) as u64, k));
            let phi = set_function_json(&phi, |x| match x {
                Ok(v) => Value::String(v.to_string()),
                Err(_) => Value::Null,
            });
            (exact, dist, phi)
        }
    };
    let mut columns: Vec<(&str, Value)> = Vec::new();
    if let Some(exact) = &algebraic {
        columns.push((
            "algebraic",
            set_function_json(exact, |h| Value::String(h.to_string())),
        ));
    }
    if let Some(bf) = &brute_force {
        columns.push(("brute_force", float_vector_json(bf)));
    }
    columns.push(("phi", phi));
    let text = vector_text(&columns.iter().map(|(l, v)| (*l, v)).collect::<Vec<_>>());
    for (label, v) in columns {
        doc.insert(label.into(), v);
    }
    if !warnings.is_empty() {
        doc.insert("warnings".into(), warnings.clone().into());
    }
    let mut text = text;
    for warning in &warnings {
        text.push_str(&format!("warning: {warning}\n"));
    }
    Ok(Outcome::info(Value::Object(doc), text))
}

fn report_outcome(report: Report) -> Outcome {
    let mut text = format!(
        "claim {}: {}\n",
        report.claim,
        if report.pass { "pass" } else { "fail" }
    );
    for (key, value) in &report.details {
        text.push_str(&format!("{key}: {value}\n"));
    }
    if !report.checks.is_empty() {
        let failed = report.checks.iter().filter(|c| !c.pass).count();
        text.push_str(&format!(
            "subsets checked: {}, failed: {failed}\n",
            report.checks.len()
        ));
    }
    if let Some(witness) = &report.first_failure {
        text.push_str(&format!("first failure: {witness}\n"));
    }
    for warning in &report.warnings {
        text.push_str(&format!("warning: {warning}\n"));
    }
    let json = serde_json::to_value(&report).expect("report serializes");
    Outcome {
        json,
        text,
        pass: report.pass,
    }
}

fn cmd_verify(
    path: &PathBuf,
    claim: Claim,
    k: Option<u64>,
    opts: &VerifyOptions,
    seed: u64,
) -> CmdResult {
    let (m, w) = load(path)?;
    let report = match claim {
        Claim::Submodular => verify_submodular(&m, &w)?,
        Claim::Vertex => verify_vertex(&m, &w, seed)?,
        Claim::Entropic => verify_binary_entropic(&m, &w, opts)?,
        Claim::Zk => {
            let k = k.ok_or_else(|| UsageError("--claim zk requires --k".into()))?;
            let Matroid::Graphic(g) = &m else {
                return Err(UsageError("--claim zk requires a graphic matroid".into()));
            };
            let mut report = verify_graphic_zk(g, k, opts)?;
            if !w.is_unit() {
                report.warnings.push(format!(
                    "file weights ignored; every edge has weight log2({k})"
                ));
            }
            report
        }
    };
    Ok(report_outcome(report))
}

fn verify_submodular(m: &Matroid, w: &WeightFunction) -> Result<Report, UsageError> {
    let phi = m.phi_vector(w)?;
    let mut report = Report::new("submodular");
    if let Err(v) = check_submodular(&phi) {
        report.fail(format!(
            "phi(A+{i}) + phi(A+{j}) < phi(A+{i}+{j}) + phi(A) at A = {a}",
            i = v.i + 1,
            j = v.j + 1,
            a = v.base
        ));
    }
    report.detail("phi", rational_vector_json(&phi));
    Ok(report)
}

fn verify_vertex(m: &Matroid, w: &WeightFunction, seed: u64) -> Result<Report, UsageError> {
    if m.len() > MAX_POLYTOPE_N {
        return Err(Error::SizeBound {
            what: "ground set for the vertex check",
            actual: m.len(),
            limit: MAX_POLYTOPE_N,
        }
        .into());
    }
    let phi = m.phi_vector(w)?;
    let desc = gamma_polytope(m.len(), w)?;
    let mut report = Report::new("vertex");
    report.detail("phi", rational_vector_json(&phi));
    let cert = match is_extreme_point(&desc, &phi) {
        Ok(cert) => cert,
        Err(Error::Infeasible { constraint }) => {
            report.fail(format!(
                "phi violates constraint {constraint} of the polytope"
            ));
            return Ok(report);
        }
        Err(e) => return Err(e.into()),
    };
    report.detail("tight_constraints", cert.tight.len());
    report.detail("tight_rank", cert.rank);
    report.detail("dimension", cert.dim);
    if !cert.is_vertex {
        report.fail(format!(
            "tight constraints have rank {} < {}",
            cert.rank, cert.dim
        ));
        return Ok(report);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let found = search_decomposition(
        &desc,
        &phi,
        &uniform_anchors(w),
        FALSIFIER_SAMPLES,
        &mut rng,
    )?;
    report.detail("falsifier_seed", seed);
    report.detail("falsifier_samples", FALSIFIER_SAMPLES);
    if let Some(dec) = found {
        report.fail(format!(
            "phi = {}·a + (1 − {0})·b for feasible a ≠ b",
            dec.alpha
        ));
    }
    Ok(report)
}

fn cmd_figure2() -> CmdResult {
    let rows = figure2()?;
    let mut text = String::new();
    for r in &rows {
        text.push_str(&format!(
            "({}) {}: {} bits (brute force {})\n",
            r.label, r.description, r.algebraic, r.brute_force
        ));
    }
    text.push_str(&format!("note: {REDUCTION_NOTE}\n"));
    Ok(Outcome::info(
        json!({ "figures": serde_json::to_value(&rows).expect("rows serialize"), "note": REDUCTION_NOTE }),
        text,
    ))
}
