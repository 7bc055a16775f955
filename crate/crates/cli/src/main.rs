//! `modwidth` command-line front end.
//!
//! Exit codes: 0 success or "yes", 1 "no", 2 bad input or usage, 3 oracle
//! mismatch in `check`, 4 solver failure.

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use log::warn;
use modwidth::coloring::{coloring_witness_with, ColoringOptions};
use modwidth::diversity::neighborhood_diversity;
use modwidth::format::{self, Format};
use modwidth::gen::{connected_graphs, gen_gnp, gen_named, rng, MwGenerator};
use modwidth::ham::{
    hamiltonian_cycle_witness_with, path_partition_witness_with, CutMode, HamOptions, LSearch,
};
use modwidth::oracles::{
    brute_chromatic, brute_modular_width, brute_path_partition, check_coloring,
    check_hamiltonian_cycle, check_path_partition, held_karp_hamiltonian, Limits,
};
use modwidth::{modular_decomposition, modular_width, Graph};
use rand::Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

const EXIT_NO: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_MISMATCH: u8 = 3;
const EXIT_SOLVER: u8 = 4;

#[derive(Parser)]
#[command(
    name = "modwidth",
    version,
    about = "Graph problems parameterized by modular-width"
)]
struct Cli {
    /// Worker threads for `check` and `bench` (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the modular decomposition tree as JSON, or DOT with --dot.
    Decompose {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        dot: bool,
    },
    /// Print the modular-width.
    Width {
        #[command(flatten)]
        input: Input,
    },
    /// Print the neighborhood diversity.
    Nd {
        #[command(flatten)]
        input: Input,
    },
    /// Chromatic number as JSON.
    Color {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        solver: Solver,
        #[arg(long)]
        witness: bool,
    },
    /// Fewest vertex-disjoint covering paths as JSON.
    Paths {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        solver: Solver,
        #[arg(long)]
        witness: bool,
    },
    /// "yes" (exit 0) or "no" (exit 1): has a Hamiltonian path.
    Hampath {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        solver: Solver,
        /// Also print the path.
        #[arg(long)]
        witness: bool,
    },
    /// "yes" (exit 0) or "no" (exit 1): has a Hamiltonian cycle.
    Hamcycle {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        solver: Solver,
        /// Also print the cycle.
        #[arg(long)]
        witness: bool,
    },
    /// Write a generated graph to stdout.
    Gen(GenArgs),
    /// Compare every solver against the brute-force oracles.
    Check(CheckArgs),
    /// Time the solvers on generated graphs; CSV on stdout.
    Bench(BenchArgs),
}

#[derive(Args)]
struct Input {
    /// Input file, `-` for stdin.
    #[arg(default_value = "-")]
    path: PathBuf,
    /// Input format; guessed from the first byte when omitted.
    #[arg(long, value_parser = parse_format)]
    format: Option<Format>,
}

#[derive(Args, Clone, Copy)]
struct Solver {
    /// Add every connectivity cut up front.
    #[arg(long, conflicts_with = "lazy_cuts")]
    eager_cuts: bool,
    /// Add connectivity cuts on demand (default).
    #[arg(long)]
    lazy_cuts: bool,
    /// Use the transform-based partition solver.
    #[arg(long)]
    fast_mwp: bool,
    /// Scan universal-vertex counts upward instead of bisecting.
    #[arg(long)]
    linear_scan: bool,
}

impl Solver {
    fn coloring(&self) -> ColoringOptions {
        ColoringOptions {
            fast_mwp: self.fast_mwp,
            ..ColoringOptions::default()
        }
    }

    fn ham(&self) -> HamOptions {
        HamOptions {
            cuts: if self.eager_cuts {
                CutMode::Eager
            } else {
                CutMode::Lazy
            },
            search: if self.linear_scan {
                LSearch::Linear
            } else {
                LSearch::Binary
            },
            ..HamOptions::default()
        }
    }
}

#[derive(Args)]
struct GenArgs {
    /// Number of vertices of a bounded-width graph.
    #[arg(short, long, default_value_t = 20)]
    n: usize,
    /// Largest quotient of the random expression.
    #[arg(long, default_value_t = 4)]
    width: usize,
    /// Edge probability; switches to a G(n, p) graph.
    #[arg(long)]
    p: Option<f64>,
    /// A named family instead, e.g. "cycle 5" or "petersen".
    #[arg(long)]
    named: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// How many graphs, with seeds seed, seed+1, ...
    #[arg(long, default_value_t = 1)]
    count: u64,
    #[arg(long, value_parser = parse_format, default_value = "graph6")]
    format: Format,
}

#[derive(Args)]
struct CheckArgs {
    /// Every connected graph with 1..=max-n vertices.
    #[arg(long)]
    all_connected: bool,
    /// This many seeded G(n, p) graphs with n <= max-n.
    #[arg(long)]
    random: Option<usize>,
    /// Otherwise graph6 records, one per line, from this file (`-` = stdin).
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 7)]
    max_n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    solver: Solver,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 8)]
    width: usize,
    /// Comma-separated vertex counts.
    #[arg(long, value_delimiter = ',', default_value = "250,500,1000,2000")]
    sizes: Vec<usize>,
    /// Graphs per size.
    #[arg(long, default_value_t = 3)]
    repeats: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Which solvers to time: chromatic, ham or both.
    #[arg(long, default_value = "both", value_parser = ["chromatic", "ham", "both"])]
    problem: String,
    #[command(flatten)]
    solver: Solver,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: modwidth::Error| e.to_string())
}

/// Failure of a subcommand, mapped to an exit code.
enum Failure {
    Input(String),
    Solver(String),
}

impl From<modwidth::Error> for Failure {
    fn from(e: modwidth::Error) -> Self {
        match e {
            modwidth::Error::Parse { .. } | modwidth::Error::Argument(_) => {
                Failure::Input(e.to_string())
            }
            _ => Failure::Solver(e.to_string()),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn read_input(input: &Input) -> Result<Graph, Failure> {
    let bytes = read_path(&input.path)?;
    let format = match input.format {
        Some(f) => f,
        None => {
            let f = format::detect(&bytes).ok_or_else(|| {
                Failure::Input("cannot guess the input format; pass --format".into())
            })?;
            warn!("no --format given, reading the input as {f}");
            f
        }
    };
    Ok(format::parse(format, &bytes)?)
}

fn read_path(path: &PathBuf) -> Result<Vec<u8>, Failure> {
    let mut bytes = Vec::new();
    let res = if path.as_os_str() == "-" {
        io::stdin().read_to_end(&mut bytes).map(|_| ())
    } else {
        std::fs::read(path).map(|b| bytes = b)
    };
    res.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(bytes)
}

fn print_json(v: &Value) {
    println!("{v}");
}

fn g6(g: &Graph) -> String {
    format::to_graph6(g)
}

fn yes_no(answer: bool) -> u8 {
    println!("{}", if answer { "yes" } else { "no" });
    if answer {
        0
    } else {
        EXIT_NO
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Decompose { input, dot } => {
            let g = read_input(&input)?;
            let t = modular_decomposition(&g)?;
            if dot {
                print!("{}", t.to_dot());
            } else {
                print_json(&json!({
                    "schema": "modwidth.decompose/1",
                    "n": g.n(),
                    "width": modular_width(&t),
                    "tree": t.to_json(),
                }));
            }
            Ok(0)
        }
        Command::Width { input } => {
            let g = read_input(&input)?;
            println!("{}", modular_width(&modular_decomposition(&g)?));
            Ok(0)
        }
        Command::Nd { input } => {
            let g = read_input(&input)?;
            println!("{}", neighborhood_diversity(&g)?.0);
            Ok(0)
        }
        Command::Color {
            input,
            solver,
            witness,
        } => {
            let g = read_input(&input)?;
            let opts = solver.coloring();
            let mut out = json!({ "schema": "modwidth.color/1", "n": g.n() });
            if witness {
                let w = coloring_witness_with(&g, &opts)?;
                out["chi"] = json!(w.count);
                out["colors"] = json!(w.colors);
            } else {
                out["chi"] = json!(modwidth::coloring::chromatic_number_with(&g, &opts)?);
            }
            print_json(&out);
            Ok(0)
        }
        Command::Paths {
            input,
            solver,
            witness,
        } => {
            let g = read_input(&input)?;
            let opts = solver.ham();
            let mut out = json!({ "schema": "modwidth.paths/1", "n": g.n() });
            if witness {
                let paths = path_partition_witness_with(&g, &opts)?;
                out["ham"] = json!(paths.len());
                out["paths"] = json!(paths);
            } else {
                out["ham"] = json!(modwidth::ham::ham_number_with(&g, &opts)?);
            }
            print_json(&out);
            Ok(0)
        }
        Command::Hampath {
            input,
            solver,
            witness,
        } => {
            let g = read_input(&input)?;
            let opts = solver.ham();
            if witness {
                let paths = path_partition_witness_with(&g, &opts)?;
                let code = yes_no(paths.len() == 1);
                if paths.len() == 1 {
                    print_json(&json!(paths[0]));
                }
                Ok(code)
            } else {
                Ok(yes_no(modwidth::ham::ham_number_with(&g, &opts)? == 1))
            }
        }
        Command::Hamcycle {
            input,
            solver,
            witness,
        } => {
            let g = read_input(&input)?;
            let opts = solver.ham();
            if witness {
                let cycle = hamiltonian_cycle_witness_with(&g, &opts)?;
                let code = yes_no(cycle.is_some());
                if let Some(c) = cycle {
                    print_json(&json!(c));
                }
                Ok(code)
            } else {
                Ok(yes_no(modwidth::ham::hamiltonian_cycle_with(&g, &opts)?))
            }
        }
        Command::Gen(args) => gen(&args),
        Command::Check(args) => check(&args),
        Command::Bench(args) => bench(&args),
    }
}

fn gen(args: &GenArgs) -> Outcome {
    let mut stdout = io::stdout().lock();
    for i in 0..args.count {
        let seed = args.seed + i;
        let g = match (&args.named, args.p) {
            (Some(name), _) => gen_named(name)?,
            (None, Some(p)) => gen_gnp(args.n, p, seed)?,
            (None, None) => MwGenerator::new(args.width).generate(args.n, seed)?,
        };
        stdout
            .write_all(&format::emit(&g, args.format))
            .map_err(|e| Failure::Solver(e.to_string()))?;
    }
    Ok(0)
}

/// Every disagreement between the solvers and the oracles on `g`.
fn check_graph(g: &Graph, solver: &Solver) -> Result<Vec<String>, modwidth::Error> {
    let limits = Limits::default();
    let mut bad = Vec::new();
    let coloring = coloring_witness_with(g, &solver.coloring())?;
    let chi = brute_chromatic(g)?;
    if coloring.count != chi {
        bad.push(format!(
            "chromatic number {} vs oracle {chi}",
            coloring.count
        ));
    }
    if let Err(e) = check_coloring(g, &coloring.colors, coloring.count) {
        bad.push(format!("coloring witness: {e}"));
    }
    let opts = solver.ham();
    let paths = path_partition_witness_with(g, &opts)?;
    let ham = brute_path_partition(g)?;
    if paths.len() != ham {
        bad.push(format!("ham {} vs oracle {ham}", paths.len()));
    }
    if let Err(e) = check_path_partition(g, &paths) {
        bad.push(format!("path witness: {e}"));
    }
    let cycle = hamiltonian_cycle_witness_with(g, &opts)?;
    if cycle.is_some() != held_karp_hamiltonian(g, false)? {
        bad.push(format!("Hamiltonian cycle {} vs oracle", cycle.is_some()));
    }
    if let Some(c) = &cycle {
        if let Err(e) = check_hamiltonian_cycle(g, c) {
            bad.push(format!("cycle witness: {e}"));
        }
    }
    let width = modular_width(&modular_decomposition(g)?);
    if g.n() <= limits.modular_width {
        let want = brute_modular_width(g)?;
        if width != want {
            bad.push(format!("modular-width {width} vs oracle {want}"));
        }
    }
    let (nd, _) = neighborhood_diversity(g)?;
    if width > nd {
        bad.push(format!(
            "modular-width {width} exceeds neighborhood diversity {nd}"
        ));
    }
    Ok(bad)
}

fn check_corpus(args: &CheckArgs) -> Result<Vec<Graph>, Failure> {
    let mut graphs = Vec::new();
    if args.all_connected {
        for n in 1..=args.max_n {
            graphs.extend(connected_graphs(n)?);
        }
    }
    if let Some(count) = args.random {
        let mut r = rng(args.seed);
        for _ in 0..count {
            let n = r.gen_range(1..=args.max_n.max(1));
            graphs.push(gen_gnp(n, r.gen_range(0.1..0.9), r.gen())?);
        }
    }
    if let Some(path) = &args.input {
        let bytes = read_path(path)?;
        for line in bytes
            .split(|&b| b == b'\n')
            .filter(|l| !l.trim_ascii().is_empty())
        {
            graphs.push(format::parse_graph6(line)?);
        }
    }
    if graphs.is_empty() {
        return Err(Failure::Input(
            "nothing to check; pass --all-connected, --random or --input".into(),
        ));
    }
    Ok(graphs)
}

fn check(args: &CheckArgs) -> Outcome {
    let graphs = check_corpus(args)?;
    let start = Instant::now();
    let results: Vec<(String, Result<Vec<String>, modwidth::Error>)> = graphs
        .par_iter()
        .map(|g| (g6(g), check_graph(g, &args.solver)))
        .collect();
    let mut mismatches = Vec::new();
    let mut errors = Vec::new();
    for (code, res) in results {
        match res {
            Ok(bad) if bad.is_empty() => {}
            Ok(bad) => mismatches.push(json!({ "graph6": code, "problems": bad })),
            Err(e) => errors.push(json!({ "graph6": code, "error": e.to_string() })),
        }
    }
    for m in &mismatches {
        eprintln!("mismatch: {}", m["graph6"].as_str().unwrap_or_default());
    }
    print_json(&json!({
        "schema": "modwidth.check/1",
        "graphs": graphs.len(),
        "mismatches": mismatches,
        "errors": errors,
        "seconds": start.elapsed().as_secs_f64(),
    }));
    Ok(if !mismatches.is_empty() {
        EXIT_MISMATCH
    } else if !errors.is_empty() {
        EXIT_SOLVER
    } else {
        0
    })
}

fn bench(args: &BenchArgs) -> Outcome {
    let chromatic = args.problem != "ham";
    let ham = args.problem != "chromatic";
    let opts = (args.solver.coloring(), args.solver.ham());
    let cases: Vec<(usize, u64)> = args
        .sizes
        .iter()
        .flat_map(|&n| (0..args.repeats).map(move |r| (n, args.seed + r)))
        .collect();
    let rows: Vec<Result<Vec<String>, modwidth::Error>> = cases
        .par_iter()
        .map(|&(n, seed)| {
            let g = MwGenerator::new(args.width).generate(n, seed)?;
            let mw = modular_width(&modular_decomposition(&g)?);
            let mut rows = Vec::new();
            if chromatic {
                let start = Instant::now();
                modwidth::coloring::chromatic_number_with(&g, &opts.0)?;
                rows.push(format!(
                    "chromatic,{n},{mw},{seed},{:.6}",
                    start.elapsed().as_secs_f64()
                ));
            }
            if ham {
                let start = Instant::now();
                modwidth::ham::ham_number_with(&g, &opts.1)?;
                rows.push(format!(
                    "ham,{n},{mw},{seed},{:.6}",
                    start.elapsed().as_secs_f64()
                ));
            }
            Ok(rows)
        })
        .collect();
    println!("problem,n,mw,seed,seconds");
    for row in rows {
        for line in row? {
            println!("{line}");
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INPUT);
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Solver(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_SOLVER)
        }
    }
}
