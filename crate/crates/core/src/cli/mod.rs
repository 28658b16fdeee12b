//! The `pfaflab` command line: verification checks, conjecture scans,
//! evaluation, tables, networks and the coefficient cache.
//!
//! Exit codes: 0 when everything checked holds, 1 on a mathematical failure,
//! 2 on a usage error.

mod checks;
mod registry;
mod tables;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub use checks::{nested_pair_expected, network_identities, Params, BOOLEAN_CONE_GENERATORS};
pub use registry::{lookup, Entry, Kind, REGISTRY};
pub use tables::{build_table, TableData};

use crate::diagrams::{enumerate_matchings, Matching, OrdinaryTLDiagram, SymTLDiagram, DEFAULT_MATCHING_BOUND};
use crate::error::{Error, Result};
use crate::exact_poly::ExactPolynomial;
use crate::immanants::tl_immanant;
use crate::networks::{construct_network_of_diagram, hat_pfaf_prime_all, path_weight_matrix, random_grid, Network};
use crate::pfaffian_core::{pfaffian_full, GeneralMatrix, SkewArray};
use crate::pfaffinants::{check_pfafprime_in_span, PfaffinantFunctional, VerificationReport};
use crate::schur_q::{
    expand_in_q_basis, max_strict_length, parse_shape, scan_cell_transfer, scan_con1, scan_sort, schur_q, summarize,
    write_jsonl, ScanRecord, SkewShiftedShape,
};
use crate::uncross::{f_coefficient, load_or_compute};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "pfaflab", version, about = "Exact pfaffinant computations and identity checks")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, Args)]
pub struct RunConfig {
    /// Size parameter: matrices are 2n x 2n, diagrams live on 2n points
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Number of variables for Schur Q-functions
    #[arg(long, global = true)]
    pub k: Option<usize>,
    /// Size bound of a check or scan (shape size, sample size or grid count)
    #[arg(long, global = true, visible_alias = "max-size")]
    pub bound: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Directory of cached coefficient tables
    #[arg(long, global = true, env = "PFAFLAB_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Seed of the chord embeddings and of random placements
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Ignore the cache directory
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Worker threads (default: one per core)
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

impl RunConfig {
    pub fn cache(&self) -> Option<&Path> {
        if self.no_cache { None } else { self.cache_dir.as_deref() }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a verification check; see `list`
    Verify {
        id: String,
        /// Also write the JSON report here
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Run a conjecture scanner and emit one JSON record per instance
    Scan {
        id: String,
        /// Write the records here and print only the summary
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Evaluate one object on the generic matrix
    Eval {
        #[command(subcommand)]
        object: EvalObject,
    },
    /// Print a table
    Table { id: String },
    /// Build, evaluate or check planar networks
    Network {
        #[command(subcommand)]
        action: NetworkAction,
    },
    /// Manage the coefficient cache
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
    /// List checks, scans and tables with their aliases
    List,
}

#[derive(Debug, Subcommand)]
pub enum EvalObject {
    /// Pfaf'_D (or Pfaf_D with --tl) of the generic 2n x 2n array
    Pfaffinant {
        #[arg(long)]
        diagram: String,
        #[arg(long)]
        tl: bool,
    },
    /// pf of the generic 2n x 2n array
    Pfaffian,
    /// f_D(π) for every D
    FCoefficient {
        #[arg(long)]
        matching: String,
    },
    /// Q_{λ/μ} in k variables
    SchurQ {
        #[arg(long)]
        shape: String,
    },
    /// Product of Schur Q-functions in the Q basis
    QProduct {
        #[arg(long, required = true)]
        shape: Vec<String>,
    },
    /// Imm_d of the generic n x n matrix
    Immanant {
        #[arg(long)]
        diagram: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum NetworkAction {
    /// The separating network N(D) as JSON
    Construct {
        #[arg(long)]
        diagram: String,
    },
    /// A random grid network as JSON
    Grid {
        #[arg(long, default_value_t = 3)]
        width: usize,
        #[arg(long, default_value_t = 0.8)]
        keep: f64,
        /// Random integer weights instead of one variable per edge
        #[arg(long)]
        numeric: bool,
    },
    /// A(N) and hatPfaf'_D(N) of a network file
    Evaluate { file: PathBuf },
    /// Network identities for every even D and every even I
    Check { file: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum CacheAction {
    /// Compute and store the f tables for size n
    Build,
    /// Recompute every stored table for size n and compare
    Verify,
    /// Delete the stored tables
    Clear,
    /// Print the cache directory
    Path,
}

/// Parses `args` and runs the command, writing results to `out`.
pub fn run_from<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    run(&cli, out)
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> i32 {
    let result = match cli.config.jobs {
        Some(0) => Err(Error::Precondition("--jobs must be positive".into())),
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j).build() {
            Ok(pool) => {
                let mut buf = Vec::new();
                let r = pool.install(|| dispatch(cli, &mut buf));
                out.write_all(&buf).map_err(Error::from).and(r)
            }
            Err(e) => Err(Error::Precondition(e.to_string())),
        },
        None => dispatch(cli, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("pfaflab: {e}");
            match e {
                Error::IdentityFailure(_) => 1,
                _ => 2,
            }
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let c = &cli.config;
    match &cli.command {
        Command::Verify { id, report } => verify(c, id, report.as_deref(), out),
        Command::Scan { id, output } => scan(c, id, output.as_deref(), out),
        Command::Table { id } => {
            let entry = find(Kind::Table, id)?;
            let table = build_table(entry, &params(c, entry)?)?;
            table.write(c.format.unwrap_or(Format::Csv), out)?;
            Ok(0)
        }
        Command::Eval { object } => eval(c, object, out),
        Command::Network { action } => network(c, action, out),
        Command::Cache { action } => cache(c, action, out),
        Command::List => {
            for e in REGISTRY {
                let kind = match e.kind {
                    Kind::Check => "verify",
                    Kind::Scan => "scan",
                    Kind::Table => "table",
                };
                let aliases = if e.aliases.is_empty() { String::new() } else { format!(" ({})", e.aliases.join(", ")) };
                writeln!(out, "{kind:6} {}{aliases}: {}", e.name, e.summary)?;
            }
            Ok(0)
        }
    }
}

fn find(kind: Kind, id: &str) -> Result<&'static Entry> {
    lookup(kind, id).ok_or_else(|| Error::Precondition(format!("unknown id {id:?}; see `pfaflab list`")))
}

/// Fills in the entry's defaults and enforces its limits.
pub fn params(c: &RunConfig, e: &Entry) -> Result<Params> {
    let n = c.n.unwrap_or(e.n.0);
    if n > e.n.1 || (n == 0 && e.n.1 > 0) {
        return Err(Error::BoundExceeded { what: "n", got: n, bound: e.n.1 });
    }
    let bound = c.bound.unwrap_or(e.bound.0);
    if bound > e.bound.1 {
        return Err(Error::BoundExceeded { what: "bound", got: bound, bound: e.bound.1 });
    }
    let k = c.k.unwrap_or(e.k);
    if k == 0 {
        return Err(Error::InsufficientVariables { k, degree: bound });
    }
    Ok(Params { n, k, bound, seed: c.seed, cache: c.cache().map(Path::to_path_buf) })
}

/// Runs the check registered as `id`.
pub fn run_check(id: &str, c: &RunConfig) -> Result<VerificationReport> {
    let entry = find(Kind::Check, id)?;
    let run = entry.run.expect("checks carry a runner");
    run(&params(c, entry)?)
}

fn verify(c: &RunConfig, id: &str, report_path: Option<&Path>, out: &mut dyn Write) -> Result<i32> {
    let report = run_check(id, c)?;
    if let Some(path) = report_path {
        std::fs::write(path, serde_json::to_string_pretty(&report)?)?;
    }
    match c.format.unwrap_or(Format::Text) {
        Format::Json => writeln!(out, "{}", serde_json::to_string(&report)?)?,
        _ => {
            let status = if report.passed() { "PASS" } else { "FAIL" };
            writeln!(out, "{} (n = {}): {status}, {} cases, {} failed", report.theorem, report.n, report.cases, report.failures.len())?;
            for f in &report.failures {
                writeln!(out, "  {f}")?;
            }
        }
    }
    Ok(if report.passed() { 0 } else { 1 })
}

#[derive(Serialize)]
struct SpanRecord {
    diagram: String,
    in_span: bool,
    coefficients: Vec<String>,
}

fn scan(c: &RunConfig, id: &str, output: Option<&Path>, out: &mut dyn Write) -> Result<i32> {
    let entry = find(Kind::Scan, id)?;
    let p = params(c, entry)?;
    if entry.name == "pfafprime-span" {
        let records: Vec<SpanRecord> = check_pfafprime_in_span(p.n)?
            .into_iter()
            .map(|(d, s)| SpanRecord {
                diagram: d.key(),
                in_span: s.coefficients().is_some(),
                coefficients: s.coefficients().map(|v| v.iter().map(|x| x.to_string()).collect()).unwrap_or_default(),
            })
            .collect();
        for r in &records {
            writeln!(out, "{}", serde_json::to_string(r)?)?;
        }
        return Ok(0);
    }
    let records: Vec<ScanRecord> = match entry.name {
        "generator-positivity" => scan_con1(p.n, p.bound)?,
        "cell-transfer" => scan_cell_transfer(p.bound)?,
        _ => scan_sort(p.bound)?,
    };
    let summary = summarize(&records);
    match output {
        Some(path) => {
            write_jsonl(&records, std::io::BufWriter::new(std::fs::File::create(path)?))?;
            writeln!(out, "{}", serde_json::to_string(&summary)?)?;
        }
        None if c.format == Some(Format::Text) => {
            writeln!(
                out,
                "{}: {} instances, {} positive, {} counterexamples, {} not in the Q-span",
                entry.name, summary.instances, summary.positive, summary.counterexamples, summary.not_in_q_span
            )?;
        }
        None => write_jsonl(&records, &mut *out)?,
    }
    Ok(0)
}

fn print_value(c: &RunConfig, value: &str, out: &mut dyn Write) -> Result<()> {
    match c.format.unwrap_or(Format::Text) {
        Format::Json => writeln!(out, "{}", serde_json::json!({ "value": value }))?,
        _ => writeln!(out, "{value}")?,
    }
    Ok(())
}

fn size(c: &RunConfig, max: usize) -> Result<usize> {
    let n = c.n.unwrap_or(2);
    if n == 0 || n > max {
        return Err(Error::BoundExceeded { what: "n", got: n, bound: max });
    }
    Ok(n)
}

fn eval(c: &RunConfig, object: &EvalObject, out: &mut dyn Write) -> Result<i32> {
    match object {
        EvalObject::Pfaffinant { diagram, tl } => {
            let n = size(c, 4)?;
            let d = SymTLDiagram::parse_key(n, diagram)?;
            let f = if *tl {
                PfaffinantFunctional::of_tl_diagram_with(&d, c.seed, c.cache())?
            } else {
                PfaffinantFunctional::of_diagram_with(&d, c.seed, c.cache())?
            };
            print_value(c, &f.evaluate(&SkewArray::symbolic(n))?.to_string(), out)?;
        }
        EvalObject::Pfaffian => {
            let n = size(c, 5)?;
            print_value(c, &pfaffian_full(&SkewArray::symbolic(n))?.to_string(), out)?;
        }
        EvalObject::FCoefficient { matching } => {
            let n = size(c, 4)?;
            let pi = Matching::parse_key(n, matching)?;
            let rows = f_coefficient(&pi, c.seed)?.into_iter().map(|(d, w)| vec![d.key(), w.to_string()]).collect();
            TableData::new(&["diagram", "coefficient"], rows).write(c.format.unwrap_or(Format::Csv), out)?;
        }
        EvalObject::SchurQ { shape } => {
            let shape = parse_shape(shape)?;
            print_value(c, &schur_q(&shape, c.k.unwrap_or(3).max(1))?.to_string(), out)?;
        }
        EvalObject::QProduct { shape } => {
            let shapes: Vec<SkewShiftedShape> = shape.iter().map(|s| parse_shape(s)).collect::<Result<_>>()?;
            let degree: usize = shapes.iter().map(SkewShiftedShape::size).sum();
            let k = c.k.unwrap_or(max_strict_length(degree)).max(1);
            let mut f = ExactPolynomial::one();
            for s in &shapes {
                f = &f * &schur_q(s, k)?;
            }
            let e = expand_in_q_basis(&f, k, degree)?;
            let mut terms: Vec<String> = e.rendered().into_iter().map(|(l, c)| format!("{c}*Q{l}")).collect();
            if let Some(r) = &e.remainder {
                terms.push(format!("remainder {r}"));
            }
            print_value(c, &if terms.is_empty() { "0".into() } else { terms.join(" + ") }, out)?;
        }
        EvalObject::Immanant { diagram } => {
            let n = size(c, 6)?;
            let d = OrdinaryTLDiagram::parse_key(n, diagram)?;
            print_value(c, &tl_immanant(&d, &GeneralMatrix::symbolic_block(n))?.to_string(), out)?;
        }
    }
    Ok(0)
}

fn read_network(path: &Path) -> Result<Network> {
    Network::from_json(&std::fs::read_to_string(path)?)
}

fn network(c: &RunConfig, action: &NetworkAction, out: &mut dyn Write) -> Result<i32> {
    match action {
        NetworkAction::Construct { diagram } => {
            let n = size(c, 4)?;
            writeln!(out, "{}", construct_network_of_diagram(&SymTLDiagram::parse_key(n, diagram)?).to_json()?)?;
        }
        NetworkAction::Grid { width, keep, numeric } => {
            let n = size(c, 4)?;
            if !(0.0..=1.0).contains(keep) {
                return Err(Error::Precondition(format!("--keep {keep} is not a probability")));
            }
            writeln!(out, "{}", random_grid(n, *width, c.seed, *keep, !numeric).to_json()?)?;
        }
        NetworkAction::Evaluate { file } => {
            let net = read_network(file)?;
            let a = path_weight_matrix(&net);
            let mut rows = Vec::new();
            for i in 1..=a.dim() {
                for j in i + 1..=a.dim() {
                    rows.push(vec![format!("a[{i},{j}]"), a.entry(i, j).to_string()]);
                }
            }
            for (d, p) in hat_pfaf_prime_all(&net)? {
                rows.push(vec![format!("hatPfaf'{}", d.key()), p.to_string()]);
            }
            TableData::new(&["quantity", "value"], rows).write(c.format.unwrap_or(Format::Csv), out)?;
        }
        NetworkAction::Check { file } => {
            let net = read_network(file)?;
            let mut report = VerificationReport::new("network-identities", net.n());
            network_identities(&net, &file.display().to_string(), &mut report)?;
            let status = if report.passed() { "PASS" } else { "FAIL" };
            writeln!(out, "network-identities: {status}, {} cases", report.cases)?;
            for f in &report.failures {
                writeln!(out, "  {f}")?;
            }
            return Ok(if report.passed() { 0 } else { 1 });
        }
    }
    Ok(0)
}

fn cache_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    if dir.exists() {
        for entry in std::fs::read_dir(dir)? {
            let path = entry?.path();
            let name = path.file_name().and_then(|s| s.to_str()).unwrap_or("");
            if name.starts_with("f-n") && name.ends_with(".json") {
                files.push(path);
            }
        }
    }
    files.sort();
    Ok(files)
}

fn cache(c: &RunConfig, action: &CacheAction, out: &mut dyn Write) -> Result<i32> {
    let dir = c
        .cache()
        .ok_or_else(|| Error::Precondition("no cache directory: pass --cache-dir or set PFAFLAB_CACHE_DIR".into()))?;
    match action {
        CacheAction::Build | CacheAction::Verify => {
            let n = size(c, 4)?;
            let verify = matches!(action, CacheAction::Verify);
            let matchings = enumerate_matchings(n, DEFAULT_MATCHING_BOUND)?;
            for pi in &matchings {
                load_or_compute(dir, pi, c.seed, verify)?;
            }
            let verb = if verify { "verified" } else { "stored" };
            writeln!(out, "{verb} {} tables for n = {n}, seed {} in {}", matchings.len(), c.seed, dir.display())?;
        }
        CacheAction::Clear => {
            let files = cache_files(dir)?;
            for f in &files {
                std::fs::remove_file(f)?;
            }
            writeln!(out, "removed {} tables from {}", files.len(), dir.display())?;
        }
        CacheAction::Path => writeln!(out, "{}", dir.display())?,
    }
    Ok(0)
}
