use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use sensilab_core::constructions::{parse_function_file, tradeoff, tradeoff_sweep};
use sensilab_core::measures::spectral::DENSE_CAP;
use sensilab_core::measures::{
    measure, s0, s1, spectral_sensitivity, Caps, Measure, SensitivityGraph, SpectralOptions,
};
use sensilab_core::verify::{self, ClaimResult};
use sensilab_core::{
    BooleanFunction, CertificateCollection, Descriptor, PartialAssignment, SpectralMethod,
};

#[derive(Parser)]
#[command(name = "sensilab", version, about = "Boolean functions with small spectral sensitivity")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value = "0x5EED", value_parser = parse_u64)]
    seed: u64,
    /// Convergence tolerance of the iterative eigensolvers.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,
    /// Worker threads; defaults to all available cores.
    #[arg(long, global = true, env = "SENSILAB_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a construction and write it as a truth table or JSON descriptor.
    Construct(ConstructArgs),
    /// Compute complexity measures of a function file.
    Measure(MeasureArgs),
    /// Run a verification suite; exits 1 if any claim fails.
    Verify(VerifyArgs),
    /// Write the sensitivity graph as DOT or an edge list.
    ExportGraph(ExportArgs),
    /// Closed-form parameter sweeps.
    Sweep {
        #[command(subcommand)]
        kind: SweepKind,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Haf,
    Chaf,
    Maf,
    Address,
    Tradeoff,
}

#[derive(Args)]
struct ConstructArgs {
    family: Family,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long, value_delimiter = ',')]
    rs: Vec<u32>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long = "as", value_delimiter = ',')]
    outer: Vec<u32>,
    #[arg(long = "bs", value_delimiter = ',')]
    inner: Vec<u32>,
    /// `.json` writes a descriptor; anything else a truth table.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct MeasureArgs {
    #[arg(long = "fn")]
    function: PathBuf,
    #[arg(long, default_value = "s0,s1,s,deg,lambda")]
    measures: String,
    /// dense, matfree, components or analytic; by default dense up to 13
    /// variables and components above.
    #[arg(long)]
    method: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(subcommand)]
    suite: Suite,
    /// Tolerance for approximate claims.
    #[arg(long, global = true, default_value_t = 1e-6)]
    claim_tol: f64,
    /// Also write the JSON report here.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Write a CSV summary here.
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Suite {
    Theorem1 {
        #[arg(long)]
        r: u32,
    },
    Simon {
        #[arg(long)]
        n: usize,
    },
    Subgraph {
        #[arg(long)]
        n: usize,
        /// Random vertex sets; defaults to 0 up to n = 4 and 100000 above.
        #[arg(long)]
        samples: Option<u64>,
    },
    /// Lemma chain and edge bound for one function, or over random functions.
    Lemmas {
        #[arg(long = "fn")]
        function: Option<PathBuf>,
        #[arg(long, default_value = "4..10", value_parser = parse_range)]
        arities: (u32, u32),
        #[arg(long, default_value_t = 1000)]
        count: usize,
    },
    Desens {
        #[arg(long = "fn")]
        function: PathBuf,
        /// Comma-separated 1-certificates, e.g. `1*,01`.
        #[arg(long, value_delimiter = ',')]
        certs: Vec<String>,
    },
    Tradeoff {
        #[arg(long = "as", value_delimiter = ',', required = true)]
        outer: Vec<u32>,
        #[arg(long = "bs", value_delimiter = ',')]
        inner: Vec<u32>,
    },
    Maf {
        #[arg(long)]
        k: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Dot,
    Edges,
}

#[derive(Args)]
struct ExportArgs {
    #[arg(long = "fn")]
    function: PathBuf,
    #[arg(long, value_enum, default_value = "edges")]
    format: GraphFormat,
    /// Index of a single connected component (ordered by smallest vertex).
    #[arg(long)]
    component: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum SweepKind {
    Tradeoff {
        /// Inclusive range of g, e.g. `0..3`.
        #[arg(long, value_parser = parse_range)]
        g_range: (u32, u32),
        /// Number of outer and inner codes, `l:m`.
        #[arg(long, default_value = "1:1", value_parser = parse_ratio)]
        ratio: (usize, usize),
        /// Code parameter at g = 0.
        #[arg(long, default_value_t = 2)]
        base: u32,
        /// Measure rows small enough to enumerate and add a `source` column.
        #[arg(long)]
        measured: bool,
    },
}

fn parse_u64(s: &str) -> Result<u64, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| e.to_string())
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| format!("expected a..b, got {s:?}"))?;
    let num = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("{t:?}: {e}"));
    Ok((num(a)?, num(b)?))
}

fn parse_ratio(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected l:m, got {s:?}"))?;
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    Ok((num(a)?, num(b)?))
}

fn read_function(path: &Path) -> Result<BooleanFunction> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_function_file(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn construct(args: &ConstructArgs) -> Result<()> {
    let need_r = || args.r.ok_or_else(|| anyhow!("--r is required"));
    let need_k = || args.k.ok_or_else(|| anyhow!("--k is required"));
    let descriptor = match args.family {
        Family::Haf => Descriptor::Haf { r: need_r()? },
        Family::Chaf => {
            if args.rs.is_empty() {
                bail!("--rs is required");
            }
            Descriptor::Chaf { rs: args.rs.clone() }
        }
        Family::Maf => Descriptor::Maf { k: need_k()? },
        Family::Address => Descriptor::Address { k: need_k()? },
        Family::Tradeoff => {
            if args.outer.is_empty() {
                bail!("--as is required");
            }
            Descriptor::Tradeoff {
                outer: args.outer.clone(),
                inner: args.inner.clone(),
            }
        }
    };
    let f = descriptor.build()?;
    let as_json = args.out.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
    let text = if as_json {
        descriptor.to_json() + "\n"
    } else {
        f.materialize()
            .with_context(|| format!("arity {} is too large for a table; use a .json output", f.arity()))?
            .to_file_string()
    };
    write_output(Some(&args.out), &text)
}

fn default_method(arity: usize) -> SpectralMethod {
    if arity <= DENSE_CAP {
        SpectralMethod::Dense
    } else {
        SpectralMethod::ComponentWise
    }
}

fn run_measure(args: &MeasureArgs, options: &SpectralOptions) -> Result<()> {
    let f = read_function(&args.function)?;
    let measures = Measure::parse_list(&args.measures)?;
    let method = match &args.method {
        Some(m) => m.parse()?,
        None => default_method(f.arity()),
    };
    let report = measure(&f, &measures, method, options, &Caps::default());
    println!("{}", report.to_json());
    Ok(())
}

fn run_verify(args: &VerifyArgs, cli: &Cli, options: &SpectralOptions) -> Result<bool> {
    let tol = args.claim_tol;
    if tol.is_nan() || tol < 0.0 {
        bail!("--claim-tol must be non-negative");
    }
    let claims: Vec<ClaimResult> = match &args.suite {
        Suite::Theorem1 { r } => verify::verify_theorem1(*r, tol, options)?,
        Suite::Simon { n } => verify::verify_simon(*n)?.claims,
        Suite::Subgraph { n, samples } => {
            let samples = samples.unwrap_or(if *n <= 4 { 0 } else { 100_000 });
            verify::verify_subgraph_lemma(*n, samples, cli.seed)?.claims
        }
        Suite::Lemmas {
            function: Some(path),
            ..
        } => {
            let f = read_function(path)?;
            let table = f.materialize()?;
            let mut claims =
                verify::verify_lemma_chain(&table, tol, default_method(f.arity()), options)?;
            claims.push(verify::verify_edge_bound(&table));
            claims
        }
        Suite::Lemmas {
            function: None,
            arities: (a, b),
            count,
        } => {
            let arities: Vec<usize> = (*a..=*b).map(|n| n as usize).collect();
            verify::verify_lemma_chain_random(&arities, *count, cli.seed, tol, options)?
        }
        Suite::Desens { function, certs } => {
            let f = read_function(function)?;
            let certs = certs
                .iter()
                .map(|c| c.parse::<PartialAssignment>())
                .collect::<Result<Vec<_>, _>>()?;
            let set = CertificateCollection::new(true, certs, true);
            verify::verify_desensitization(&f, &set, tol, options)?
        }
        Suite::Tradeoff { outer, inner } => verify::verify_tradeoff(outer, inner, tol, options)?,
        Suite::Maf { k } => verify::verify_maf_proposition(*k, tol, options)?,
    };
    let json = verify::to_json(&claims);
    println!("{json}");
    if let Some(path) = &args.json {
        write_output(Some(path), &(json + "\n"))?;
    }
    if let Some(path) = &args.csv {
        write_output(Some(path), &verify::to_csv(&claims))?;
    }
    let passed = verify::all_passed(&claims);
    eprintln!(
        "{}/{} claims passed",
        claims.iter().filter(|c| c.passed()).count(),
        claims.len()
    );
    Ok(passed)
}

fn export_graph(args: &ExportArgs) -> Result<()> {
    let f = read_function(&args.function)?;
    let graph = SensitivityGraph::new(f.materialize()?);
    let components;
    let selected = match args.component {
        Some(i) => {
            components = graph.components();
            Some(components.get(i).ok_or_else(|| {
                anyhow!("component {i} out of range; the graph has {}", components.len())
            })?)
        }
        None => None,
    };
    let text = match args.format {
        GraphFormat::Dot => graph.to_dot(selected)?,
        GraphFormat::Edges => graph.to_edge_list(selected)?,
    };
    write_output(args.out.as_deref(), &text)
}

/// Largest arity measured by `sweep --measured`.
const SWEEP_MEASURE_CAP: usize = 22;

fn sweep(kind: &SweepKind, options: &SpectralOptions) -> Result<()> {
    let SweepKind::Tradeoff {
        g_range: (a, b),
        ratio: (l, m),
        base,
        measured,
    } = kind;
    let rows = tradeoff_sweep(*a, *b, *l, *m, *base)?;
    let mut out = String::from("n,s0,s1,lambda_sq,c_hat");
    out.push_str(if *measured { ",source\n" } else { "\n" });
    for row in rows {
        let p = row.prediction;
        let n = p.arity.expect("sweep rows carry their arity");
        if *measured && n <= SWEEP_MEASURE_CAP as u128 {
            let table = tradeoff(&row.outer, &row.inner)?.materialize()?;
            let (x, y) = (s0(&table).value, s1(&table).value);
            let lambda = spectral_sensitivity(&table, default_method(table.arity()), options)?.value;
            let c_hat = f64::from(x) / f64::from(x + y);
            out.push_str(&format!("{n},{x},{y},{:.9},{c_hat},measured\n", lambda * lambda));
        } else {
            out.push_str(&format!("{n},{},{},{},{}", p.s0, p.s1, p.lambda_sq, p.c_hat()));
            out.push_str(if *measured { ",analytic\n" } else { "\n" });
        }
    }
    print!("{out}");
    Ok(())
}

fn run(cli: &Cli) -> Result<bool> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("configuring the thread pool")?;
    }
    if cli.tolerance.is_nan() || cli.tolerance <= 0.0 {
        bail!("--tolerance must be positive");
    }
    let options = SpectralOptions {
        tolerance: cli.tolerance,
        seed: cli.seed,
        ..SpectralOptions::default()
    };
    match &cli.command {
        Command::Construct(args) => construct(args)?,
        Command::Measure(args) => run_measure(args, &options)?,
        Command::Verify(args) => return run_verify(args, cli, &options),
        Command::ExportGraph(args) => export_graph(args)?,
        Command::Sweep { kind } => sweep(kind, &options)?,
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
