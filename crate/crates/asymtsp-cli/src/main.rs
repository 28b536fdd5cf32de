//! Command-line harness for the asymtsp solver suite.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use asymtsp::christofides_kernel::{self, CoverMode};
use asymtsp::generators::{gen_cycle_family, gen_gk, gen_random_metric, metric_lift};
use asymtsp::harness::{
    beta_from_fraction, default_fractions, emit_csv, emit_json, emit_pivot, parse_tour_text, solve_report,
    sweep, Algorithm, SweepOptions,
};
use asymtsp::instance::{asymmetry_report, tour_cost};
use asymtsp::metric::metric_closure;
use asymtsp::oracles::oracle_battery;
use asymtsp::tree_doubling;
use asymtsp::tsplib::{parse_tsplib_file, write_tsplib_string, OptimaRegistry};
use asymtsp::weight::{frac_to_decimal, parse_frac, Beta, Frac};
use asymtsp::{Error, IntInstance};

#[derive(Parser)]
#[command(name = "asymtsp", about = "Parameterized approximation algorithms for metric ATSP", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Asymmetry statistics of instance closures (symmetric pairs, median
    /// and maximum asymmetry factor, zero-cost edges)
    Analyze {
        /// TSPLIB ATSP files
        files: Vec<PathBuf>,
    },
    /// Run one algorithm on one instance
    Solve {
        /// Algorithm: gc (cover-kernelized Christofides) or gtd
        /// (generalized tree doubling)
        #[arg(long)]
        alg: String,
        /// Fraction of asymmetric pairs to keep (e.g. 1, 1/4, 0); mapped to
        /// a beta threshold
        #[arg(long, conflicts_with = "beta")]
        fraction: Option<String>,
        /// Asymmetry threshold beta >= 1, or `inf`
        #[arg(long)]
        beta: Option<String>,
        #[command(flatten)]
        run: RunArgs,
        /// Write the kernel instance to this TSPLIB file instead of solving
        #[arg(long)]
        emit_kernel: Option<PathBuf>,
        /// Accept an externally computed kernel tour (whitespace-separated
        /// 0-based indices over the kernel instance) and lift it; the ratio
        /// guarantee becomes gamma plus the kernelization's additive term
        #[arg(long, requires = "kernel_tour")]
        allow_gamma: bool,
        #[arg(long, requires = "allow_gamma")]
        kernel_tour: Option<PathBuf>,
        /// Output format
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        file: PathBuf,
    },
    /// Batch experiments: instances x fractions x algorithms, CSV/JSON out
    Sweep {
        /// Comma-separated fractions (default 1,1/4,1/16,1/64,0)
        #[arg(long)]
        fractions: Option<String>,
        /// Comma-separated algorithms (default gc,gtd)
        #[arg(long, default_value = "gc,gtd")]
        algs: String,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Emit a kernel/ratio pivot table instead of flat rows
        #[arg(long)]
        pivot: bool,
        /// Write output here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        files: Vec<PathBuf>,
    },
    /// Construct instances: adversarial families, random metric, lifts
    #[command(subcommand)]
    Generate(GenerateCmd),
    /// Validate a tour file against an instance and print its cost
    Verify {
        file: PathBuf,
        tourfile: PathBuf,
        /// Check the tour against the instance's metric closure instead of
        /// the raw costs
        #[arg(long)]
        closure: bool,
    },
    /// Cross-check the exact solvers against enumeration oracles
    OracleCheck {
        #[arg(long, default_value_t = 200)]
        seeds: u64,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Arborescence root for tree doubling
    #[arg(long, default_value_t = 0)]
    root: usize,
    /// Minimize arborescence cost over all roots
    #[arg(long)]
    best_root: bool,
    /// Vertex cap for the exact kernel solver
    #[arg(long, default_value_t = 22)]
    kernel_limit: usize,
    /// Vertex cover mode for gc
    #[arg(long, value_enum, default_value_t = Cover::Exact)]
    cover: Cover,
    /// Substitute for zero costs in factor computations (fraction), or
    /// `none`
    #[arg(long, default_value = "1/10")]
    zero_substitute: String,
    /// Record wall times (makes CSV output non-reproducible)
    #[arg(long)]
    timing: bool,
    /// Known-optima registry file
    #[arg(long)]
    registry: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Cover {
    Exact,
    Approx,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum GenerateCmd {
    /// Two-cycle adversarial family (2k vertices, optimum 2k)
    Gk {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Directed-cycle tightness family (2m vertices, optimum 2m)
    Cycle {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded random metric instance
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Per-direction asymmetric perturbation as a fraction of the base
        /// cost
        #[arg(long, default_value = "1/2")]
        strength: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Metric lift of an instance (n(n-1) vertices, input is a minor)
    Lift {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run_options(args: &RunArgs) -> Result<SweepOptions, Error> {
    let zero_substitute = if args.zero_substitute.eq_ignore_ascii_case("none") {
        None
    } else {
        Some(parse_frac(&args.zero_substitute).map_err(Error::Validation)?)
    };
    Ok(SweepOptions {
        kernel_limit: args.kernel_limit,
        cover_exact: matches!(args.cover, Cover::Exact),
        root: args.root,
        best_root: args.best_root,
        zero_substitute,
        timing: args.timing,
        auto_closure: true,
    })
}

fn load_registry(path: &Option<PathBuf>) -> Result<OptimaRegistry, Error> {
    match path {
        Some(p) => OptimaRegistry::load_file(p),
        None => {
            let default = Path::new("data/optima.txt");
            if default.exists() {
                OptimaRegistry::load_file(default)
            } else {
                Ok(OptimaRegistry::empty())
            }
        }
    }
}

fn write_out(path: &Option<PathBuf>, content: &str) -> Result<(), Error> {
    match path {
        Some(p) => {
            std::fs::write(p, content)?;
            Ok(())
        }
        None => {
            std::io::stdout().write_all(content.as_bytes())?;
            Ok(())
        }
    }
}

fn emit_instance(inst: &IntInstance, out: &Option<PathBuf>) -> Result<(), Error> {
    write_out(out, &write_tsplib_string(inst))
}

fn real_main() -> Result<(), Error> {
    if let Ok(threads) = std::env::var("ASYMTSP_THREADS") {
        let threads: usize = threads
            .parse()
            .map_err(|_| Error::validation(format!("bad ASYMTSP_THREADS value {:?}", threads)))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Error::validation(format!("thread pool: {}", e)))?;
    }
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze { files } => {
            println!("instance,n,symmetric_pairs_pct,median_factor,max_factor,zero_cost_edges_pct,raw_metric");
            for file in files {
                let raw = parse_tsplib_file(&file)?;
                let raw_metric = raw.verify_metric(1).is_empty();
                let closed = metric_closure(&raw);
                let rep = asymmetry_report(&closed, None);
                let pct = |f: &Frac| frac_to_decimal(&(*f * Frac::from_integer(100)), 2);
                println!(
                    "{},{},{},{},{},{},{}",
                    closed.name(),
                    closed.n(),
                    pct(&rep.symmetric_pair_fraction),
                    rep.median_factor.as_ref().map(|f| frac_to_decimal(f, 2)).unwrap_or_default(),
                    rep.max_factor.as_ref().map(|f| frac_to_decimal(f, 2)).unwrap_or_default(),
                    pct(&rep.zero_cost_edge_fraction),
                    raw_metric,
                );
            }
            Ok(())
        }
        Command::Solve { alg, fraction, beta, run, emit_kernel, allow_gamma, kernel_tour, format, file } => {
            let algorithm = Algorithm::parse(&alg)?;
            let opts = run_options(&run)?;
            let registry = load_registry(&run.registry)?;
            let raw = parse_tsplib_file(&file)?;
            let fraction = fraction.as_deref().map(parse_frac).transpose().map_err(Error::Validation)?;
            if let Some(f) = &fraction {
                if *f < Frac::from_integer(0) || *f > Frac::from_integer(1) {
                    return Err(Error::validation(format!("fraction {} outside [0, 1]", f)));
                }
            }
            let beta_arg: Option<Beta> =
                beta.as_deref().map(|s| s.parse().map_err(Error::Validation)).transpose()?;

            if emit_kernel.is_some() || allow_gamma {
                return solve_kernel_io(
                    &raw, algorithm, fraction.as_ref(), beta_arg.as_ref(), &opts, emit_kernel, kernel_tour,
                );
            }
            let report = solve_report(&raw, algorithm, fraction.as_ref(), beta_arg.as_ref(), &registry, &opts)?;
            let text = match format {
                Format::Csv => emit_csv(std::slice::from_ref(&report)),
                Format::Json => emit_json(std::slice::from_ref(&report)),
            };
            print!("{}", text);
            if let Some(e) = report.error {
                if report.error_code == Some(3) {
                    return Err(Error::Capacity {
                        size: report.kernel_size.unwrap_or_default(),
                        limit: run.kernel_limit,
                    });
                }
                return Err(Error::Validation(e));
            }
            Ok(())
        }
        Command::Sweep { fractions, algs, run, format, pivot, out, files } => {
            let opts = run_options(&run)?;
            let registry = load_registry(&run.registry)?;
            let fractions: Vec<Frac> = match fractions {
                Some(list) => list
                    .split(',')
                    .map(|s| parse_frac(s).map_err(Error::Validation))
                    .collect::<Result<_, _>>()?,
                None => default_fractions(),
            };
            for f in &fractions {
                if *f < Frac::from_integer(0) || *f > Frac::from_integer(1) {
                    return Err(Error::validation(format!("fraction {} outside [0, 1]", f)));
                }
            }
            let algorithms: Vec<Algorithm> =
                algs.split(',').map(Algorithm::parse).collect::<Result<_, _>>()?;
            let mut instances = Vec::new();
            for file in &files {
                instances.push(parse_tsplib_file(file)?);
            }
            let reports = sweep(&instances, &fractions, &algorithms, &registry, &opts)?;
            let text = if pivot {
                emit_pivot(&reports)
            } else {
                match format {
                    Format::Csv => emit_csv(&reports),
                    Format::Json => emit_json(&reports),
                }
            };
            write_out(&out, &text)
        }
        Command::Generate(cmd) => match cmd {
            GenerateCmd::Gk { k, out } => emit_instance(&gen_gk(k)?.instance, &out),
            GenerateCmd::Cycle { m, out } => emit_instance(&gen_cycle_family(m)?.instance, &out),
            GenerateCmd::Random { n, seed, strength, out } => {
                let strength = parse_frac(&strength).map_err(Error::Validation)?;
                if strength < Frac::from_integer(0) {
                    return Err(Error::validation("strength must be non-negative"));
                }
                emit_instance(&gen_random_metric(n, seed, strength), &out)
            }
            GenerateCmd::Lift { file, out } => {
                let raw = parse_tsplib_file(&file)?;
                let (lifted, _) = metric_lift(&raw)?;
                emit_instance(&lifted, &out)
            }
        },
        Command::Verify { file, tourfile, closure } => {
            let raw = parse_tsplib_file(&file)?;
            let inst = if closure { metric_closure(&raw) } else { raw };
            let text = std::fs::read_to_string(&tourfile)?;
            let tour = parse_tour_text(&text)?;
            let cost = tour_cost(&inst, &tour)?;
            println!("instance {} n {} tour_cost {}", inst.name(), inst.n(), cost);
            Ok(())
        }
        Command::OracleCheck { seeds } => {
            let outcomes = oracle_battery(seeds);
            let mut all_ok = true;
            for o in &outcomes {
                println!(
                    "{}: {} over {} cases{}",
                    if o.passed() { "PASS" } else { "FAIL" },
                    o.name,
                    o.cases,
                    if o.passed() { String::new() } else { format!(" ({})", o.detail) }
                );
                all_ok &= o.passed();
            }
            if all_ok {
                Ok(())
            } else {
                Err(Error::validation("oracle check failed"))
            }
        }
    }
}

/// Kernel import/export paths for `solve`: write the kernel instance, or
/// lift an externally supplied kernel tour with gamma accounting.
fn solve_kernel_io(
    raw: &IntInstance,
    algorithm: Algorithm,
    fraction: Option<&Frac>,
    beta: Option<&Beta>,
    opts: &SweepOptions,
    emit_kernel: Option<PathBuf>,
    kernel_tour: Option<PathBuf>,
) -> Result<(), Error> {
    let instance = if raw.is_metric() { raw.clone() } else { metric_closure(raw) };
    let sub = opts.zero_substitute.as_ref();
    let beta_val: Beta = match (fraction, beta) {
        (Some(p), _) => beta_from_fraction(&instance, p, sub).0,
        (None, Some(b)) => b.clone(),
        (None, None) => Beta::ONE,
    };
    let cover_mode = if opts.cover_exact { CoverMode::Exact } else { CoverMode::Approx };
    match algorithm {
        Algorithm::GenChristofides => {
            let kernel = christofides_kernel::kernelize(&instance, &beta_val, cover_mode, sub)?;
            if let Some(path) = emit_kernel {
                std::fs::write(&path, write_tsplib_string(&kernel.kernel_instance))?;
                eprintln!(
                    "kernel of {} vertices (cover {}) written to {}",
                    kernel.size(),
                    kernel.parameter_z,
                    path.display()
                );
            }
            if let Some(path) = kernel_tour {
                let tour = parse_tour_text(&std::fs::read_to_string(&path)?)?;
                let kernel_cost = tour_cost(&kernel.kernel_instance, &tour)?;
                let lifted = christofides_kernel::lift(&instance, &kernel, &tour, None)?;
                let cost = tour_cost(&instance, &lifted)?;
                println!(
                    "kernel_tour_cost {} lifted_cost {} guarantee gamma+(3/4)(1+beta), beta {}",
                    kernel_cost, cost, beta_val
                );
            }
            Ok(())
        }
        Algorithm::GenTreeDoubling => {
            let arb = if opts.best_root {
                asymtsp::spanning::msa_best_root(&instance)?
            } else {
                asymtsp::spanning::msa(&instance, opts.root)?
            };
            let kernel =
                tree_doubling::kernelize(&instance, &arb, &beta_val, tree_doubling::RepMode::Lowest, sub)?;
            if let Some(path) = emit_kernel {
                std::fs::write(&path, write_tsplib_string(&kernel.kernel_instance))?;
                eprintln!(
                    "kernel of {} vertices (k = {}) written to {}",
                    kernel.kernel_instance.n(),
                    kernel.parameter_k,
                    path.display()
                );
            }
            if let Some(path) = kernel_tour {
                let tour = parse_tour_text(&std::fs::read_to_string(&path)?)?;
                let kernel_cost = tour_cost(&kernel.kernel_instance, &tour)?;
                let lifted = tree_doubling::lift(&instance, &kernel, &tour)?;
                let cost = tour_cost(&instance, &lifted)?;
                println!(
                    "kernel_tour_cost {} lifted_cost {} guarantee gamma+2, beta {}",
                    kernel_cost, cost, beta_val
                );
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match real_main() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
