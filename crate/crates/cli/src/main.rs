use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use specht_coho::golden::{verify, GoldenTable, RowCheck};
use specht_coho::graph::{build_graph, check_structure, to_dot, to_json, verify_path_lemmas, CheckOutcome, GraphKind};
use specht_coho::partition::{is_prime, Partition};
use specht_coho::report::{conjecture_rows, conjecture_table, table_tsv, ConjectureStatus};
use specht_coho::store::ResultStore;
use specht_coho::sweep::{run_partitions, run_sweep, SweepOptions, SweepSummary};
use specht_coho::theory::{conjecture_values, predictions_for, two_part_comp_series};
use specht_coho::zassenhaus::{SnfStrategy, SolveOptions};

const EXIT_MISMATCH: u8 = 2;
const EXIT_PARTIAL: u8 = 3;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "specht-coho", version, about = "Cohomology of symmetric groups with Specht module coefficients")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Elementary divisor strategy.
    #[arg(long, global = true, default_value = "auto", value_parser = parse_strategy)]
    snf: SnfStrategy,
    /// Primes for mod-p dimensions, replacing the principal-block candidates.
    #[arg(long, global = true, value_delimiter = ',')]
    primes: Option<Vec<u64>>,
    /// Skip partitions whose relation matrix has more entries than this.
    #[arg(long, global = true)]
    size_limit: Option<usize>,
    /// Worker threads for sweeps (default: available cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Result store directory.
    #[arg(long, global = true, default_value = "specht-store")]
    store: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Compute cohomology groups of one Specht module.
    Compute(ComputeArgs),
    /// Compute every partition up to a given size into the store.
    Sweep(SweepArgs),
    /// Compare stored degree-2 results with a reference table.
    Verify(VerifyArgs),
    /// Print stored degree-2 results as a reference-style TSV table.
    Table,
    /// Export a membership graph as DOT (stdout) and optionally JSON.
    Graph(GraphArgs),
    /// Print theoretical predictions for one partition and prime as JSON.
    Predict(PredictArgs),
    /// Compare conjectured families with computed values.
    CheckConjectures(ConjectureArgs),
}

#[derive(Args)]
struct ComputeArgs {
    #[arg(long)]
    n: usize,
    /// Partition, e.g. `3,1,1` or `3,1^2`.
    #[arg(long)]
    lambda: String,
    #[arg(long)]
    h0: bool,
    #[arg(long)]
    h1: bool,
    #[arg(long)]
    h2: bool,
    /// Also report mod-p dimensions (candidate primes unless --primes is set).
    #[arg(long)]
    dims: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    max_n: usize,
    #[arg(long, default_value_t = 2)]
    min_n: usize,
    #[arg(long, value_delimiter = ',', default_value = "2")]
    degrees: Vec<u8>,
    /// Record mod-p dimensions with the degree 0 and 1 results.
    #[arg(long)]
    dims: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Reference TSV; the bundled table if omitted.
    #[arg(long)]
    golden: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    min_n: usize,
    /// Largest n to check (default: largest n in the store).
    #[arg(long)]
    max_n: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Integral,
    ModP,
}

#[derive(Args)]
struct GraphArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 2)]
    degree: u8,
    /// Largest n (default: largest n in the store).
    #[arg(long)]
    max_n: Option<usize>,
    #[arg(long, value_enum, default_value = "integral")]
    kind: KindArg,
    /// Write the JSON adjacency here.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write DOT here instead of stdout.
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Args)]
struct PredictArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    lambda: String,
    #[arg(long)]
    p: u64,
}

#[derive(Args)]
struct ConjectureArgs {
    #[arg(long)]
    max_n: usize,
    /// Only report stored values; do not compute missing ones.
    #[arg(long)]
    no_compute: bool,
}

fn parse_strategy(s: &str) -> Result<SnfStrategy, String> {
    s.parse()
}

/// Usage errors exit with code 64.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn parse_partition(n: usize, text: &str) -> Result<Partition> {
    let lambda: Partition = text.parse().map_err(|e| usage(format!("not a partition: {text:?}: {e}")))?;
    if lambda.n() != n {
        return Err(usage(format!("parts sum to {} ≠ {n}", lambda.n())));
    }
    Ok(lambda)
}

fn check_primes(primes: &Option<Vec<u64>>) -> Result<()> {
    if let Some(bad) = primes.iter().flatten().find(|&&p| !is_prime(p)) {
        return Err(usage(format!("{bad} is not prime")));
    }
    Ok(())
}

impl Global {
    fn solve(&self) -> SolveOptions {
        SolveOptions { strategy: self.snf, ..Default::default() }
    }

    fn sweep(&self, degrees: Vec<u8>, mod_p: bool) -> SweepOptions {
        let mut opts = SweepOptions {
            degrees,
            solve: self.solve(),
            size_limit: self.size_limit,
            mod_p,
            primes: self.primes.clone(),
            ..Default::default()
        };
        if let Some(j) = self.jobs {
            opts.jobs = j.max(1);
        }
        opts
    }

    fn open_store(&self) -> Result<ResultStore> {
        ResultStore::open(&self.store).with_context(|| format!("opening store {}", self.store.display()))
    }

    fn open_existing_store(&self) -> Result<ResultStore> {
        let store = self.open_store()?;
        if store.is_empty() {
            bail!("store {} is empty; run `specht-coho sweep` first", self.store.display());
        }
        Ok(store)
    }
}

fn print_summary(s: &SweepSummary) -> u8 {
    eprintln!("computed {}, cached {}, skipped {}, failed {}", s.computed, s.cached, s.skipped, s.failed);
    for f in &s.failures {
        eprintln!("  {f}");
    }
    if s.is_partial() {
        EXIT_PARTIAL
    } else {
        0
    }
}

fn cmd_compute(g: &Global, args: &ComputeArgs) -> Result<u8> {
    let lambda = parse_partition(args.n, &args.lambda)?;
    if args.n < 2 {
        return Err(usage("n must be at least 2"));
    }
    let mut degrees: Vec<u8> = [(0u8, args.h0), (1, args.h1), (2, args.h2)]
        .iter()
        .filter(|(_, on)| *on)
        .map(|(d, _)| *d)
        .collect();
    if degrees.is_empty() {
        degrees = vec![0, 1, 2];
    }
    let mod_p = args.dims || g.primes.is_some();
    if mod_p {
        for d in [0, 1] {
            if !degrees.contains(&d) {
                degrees.push(d);
            }
        }
        degrees.sort_unstable();
    }
    let mut store = g.open_store()?;
    let opts = SweepOptions { jobs: 1, ..g.sweep(degrees.clone(), mod_p) };
    let summary = run_partitions(&mut store, std::slice::from_ref(&lambda), &opts)?;
    for &d in &degrees {
        let rec = store.get(&lambda, d).expect("record written by the sweep");
        match &rec.integral {
            Some(h) => println!("H{d} = {}, k={}", h.group_notation(), rec.meta.k),
            None => println!("H{d} not computed: {}", rec.note.as_deref().unwrap_or("")),
        }
    }
    if mod_p {
        let (r0, r1) = (store.get(&lambda, 0), store.get(&lambda, 1));
        if let (Some(r0), Some(r1)) = (r0, r1) {
            for (p, d1) in &r1.modp_dims {
                let d0 = r0.modp_dims.get(p).copied().unwrap_or(0);
                println!("p={p}: d0={d0}, d1={d1}");
            }
        }
    }
    Ok(if summary.is_partial() { EXIT_PARTIAL } else { 0 })
}

fn cmd_sweep(g: &Global, args: &SweepArgs) -> Result<u8> {
    if args.degrees.iter().any(|&d| d > 2) {
        return Err(usage("degrees must be 0, 1 or 2"));
    }
    let mut store = g.open_store()?;
    let opts = SweepOptions { min_n: args.min_n, max_n: args.max_n, ..g.sweep(args.degrees.clone(), args.dims) };
    let summary = run_sweep(&mut store, &opts)?;
    Ok(print_summary(&summary))
}

fn cmd_verify(g: &Global, args: &VerifyArgs) -> Result<u8> {
    let store = g.open_existing_store()?;
    let golden = match &args.golden {
        Some(p) => GoldenTable::load(p).with_context(|| format!("reading {}", p.display()))?,
        None => GoldenTable::reference(),
    };
    let max_n = args.max_n.unwrap_or_else(|| store.max_n());
    let report = verify(&golden, &store, args.min_n..=max_n);
    for m in &report.mismatches {
        if let RowCheck::Mismatch { field, expected, got } = &m.check {
            println!("MISMATCH ({}) {field}: expected {expected}, got {got}", m.lambda.to_exponent_string());
        }
    }
    println!("{}", report.summary());
    Ok(if report.ok() { 0 } else { EXIT_MISMATCH })
}

fn cmd_table(g: &Global) -> Result<u8> {
    let store = g.open_existing_store()?;
    print!("{}", table_tsv(&store));
    Ok(0)
}

fn cmd_graph(g: &Global, args: &GraphArgs) -> Result<u8> {
    if !is_prime(args.p) {
        return Err(usage(format!("{} is not prime", args.p)));
    }
    if args.degree > 2 {
        return Err(usage("degree must be 1 or 2"));
    }
    let store = g.open_existing_store()?;
    let kind = match args.kind {
        KindArg::Integral => GraphKind::Integral,
        KindArg::ModP => GraphKind::ModP,
    };
    let max_n = args.max_n.unwrap_or_else(|| store.max_n());
    let records: Vec<_> = store.records().into_iter().cloned().collect();
    let graph = build_graph(&records, args.p, args.degree, max_n, kind).map_err(|e| usage(e.to_string()))?;
    match &args.dot {
        Some(path) => write_file(path, &to_dot(&graph))?,
        None => print!("{}", to_dot(&graph)),
    }
    if let Some(path) = &args.json {
        write_file(path, &(serde_json::to_string_pretty(&to_json(&graph))? + "\n"))?;
    }
    let structure = check_structure(&graph);
    let paths = verify_path_lemmas(&graph);
    for v in &structure.violations {
        eprintln!("violation: ({}) {:?}", v.lambda, v.kind);
    }
    for c in paths.checks.iter().filter(|c| c.outcome == CheckOutcome::Fail) {
        eprintln!("path check failed: {}: {}", c.name, c.detail);
    }
    eprintln!(
        "{}: {} vertices, {} edges, {} unknown; {} structure violations; {} path checks passed",
        graph.title(),
        graph.vertices.len(),
        graph.edges.len(),
        graph.unknown.len(),
        structure.violations.len(),
        paths.passed()
    );
    Ok(if structure.ok() && paths.ok() { 0 } else { EXIT_MISMATCH })
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn cmd_predict(args: &PredictArgs) -> Result<u8> {
    let lambda = parse_partition(args.n, &args.lambda)?;
    if !is_prime(args.p) {
        return Err(usage(format!("{} is not prime", args.p)));
    }
    let mut out = serde_json::json!({
        "lambda": lambda.to_string(),
        "p": args.p,
        "predictions": predictions_for(&lambda, args.p),
    });
    let parts = lambda.parts();
    if parts.len() == 2 && parts[1] as u64 == args.p && args.p % 2 == 1 {
        if let Ok(series) = two_part_comp_series(args.p, args.n) {
            out["two_part_case"] = serde_json::to_value(series.case)?;
        }
    }
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(0)
}

fn cmd_check_conjectures(g: &Global, args: &ConjectureArgs) -> Result<u8> {
    let mut store = g.open_store()?;
    if !args.no_compute {
        let family: Vec<Partition> =
            (2..=args.max_n).flat_map(Partition::all).filter(|l| conjecture_values(l).conjecture).collect();
        let summary = run_partitions(&mut store, &family, &g.sweep(vec![2], false))?;
        print_summary(&summary);
    } else if store.is_empty() {
        bail!("store {} is empty; run `specht-coho sweep` first", g.store.display());
    }
    let rows = conjecture_rows(&store, args.max_n);
    print!("{}", conjecture_table(&rows));
    if rows.iter().any(|r| r.status == ConjectureStatus::Mismatch) {
        Ok(EXIT_MISMATCH)
    } else if rows.iter().any(|r| r.status == ConjectureStatus::NotComputed) {
        Ok(EXIT_PARTIAL)
    } else {
        Ok(0)
    }
}

fn run(cli: Cli) -> Result<u8> {
    check_primes(&cli.global.primes)?;
    let g = &cli.global;
    match &cli.command {
        Command::Compute(a) => cmd_compute(g, a),
        Command::Sweep(a) => cmd_sweep(g, a),
        Command::Verify(a) => cmd_verify(g, a),
        Command::Table => cmd_table(g),
        Command::Graph(a) => cmd_graph(g, a),
        Command::Predict(a) => cmd_predict(a),
        Command::CheckConjectures(a) => cmd_check_conjectures(g, a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if e.is::<Usage>() { EXIT_USAGE } else { 1 })
        }
    }
}
