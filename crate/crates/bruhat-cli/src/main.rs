//! `bruhat` — weak-order interval counting from the command line.
//!
//! Exit codes: 0 success; 1 selftest failure; 2 malformed input or usage;
//! 3 the two permutations do not bound an interval; 4 a resource cap or the
//! DP state budget was exceeded. Errors go to stderr, results to stdout.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bruhat::perm::MAX_PARSE_SIZE;
use bruhat::{
    block_decompose, count_from_identity_with, count_interval_with, count_le_bruteforce,
    enumerate_linear_extensions, ingest_poset_file, intrinsic_width, max_antichain_bruteforce,
    phi, random_permutation, runtime_scaling_experiment_with, sample_rng, weak_interval,
    width_statistics, Error, Permutation, Strategy, DEFAULT_STATE_BUDGET,
};

#[derive(Parser)]
#[command(
    name = "bruhat",
    version,
    about = "Exact sizes of weak Bruhat intervals via linear-extension counting",
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Auto,
    Brute,
    WidthDp,
    Decomposition,
}

impl From<StrategyArg> for Strategy {
    fn from(arg: StrategyArg) -> Strategy {
        match arg {
            StrategyArg::Auto => Strategy::Auto,
            StrategyArg::Brute => Strategy::Brute,
            StrategyArg::WidthDp => Strategy::WidthDP,
            StrategyArg::Decomposition => Strategy::Decomposition,
        }
    }
}

#[derive(Args)]
struct CountOpts {
    /// Counting strategy; auto picks per size and intrinsic width
    #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
    strategy: StrategyArg,
    /// Abort the width DP after storing this many states
    #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
    budget: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Size of the interval [LOWER, UPPER] in the weak order
    CountInterval {
        lower: Permutation,
        upper: Permutation,
        #[command(flatten)]
        opts: CountOpts,
    },
    /// Linear extensions of Φ(permutation) — equivalently |[id, permutation]| —
    /// or of a poset file (brute force, n ≤ 14)
    CountLe {
        /// Permutation in one-line notation
        #[arg(long)]
        perm: Option<Permutation>,
        /// Poset file: first line n, then one "a b" relation per line
        #[arg(long, value_name = "FILE")]
        poset: Option<PathBuf>,
        #[command(flatten)]
        opts: CountOpts,
    },
    /// Length of the longest decreasing subsequence
    Width { perm: Permutation },
    /// Intrinsic width (1 exactly for separable permutations)
    Iwidth { perm: Permutation },
    /// Block decomposition tree
    Decompose {
        perm: Permutation,
        /// JSON instead of the indented text tree
        #[arg(long)]
        json: bool,
    },
    /// Upper covers in the weak order, one per line
    Covers { perm: Permutation },
    /// Brute-force counterparts of the counting commands
    Oracle {
        #[command(subcommand)]
        oracle: OracleCommand,
    },
    /// A seeded uniformly random permutation
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        /// Sample index within the seed's stream
        #[arg(long, default_value_t = 0)]
        index: u64,
    },
    /// Random-permutation experiments, CSV on stdout or --out
    Experiment {
        #[command(subcommand)]
        experiment: ExperimentCommand,
    },
    /// Run the built-in invariant suite; exit 0 iff everything passes
    Selftest,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Linear-extension count by downset DP (n ≤ 14)
    CountLe {
        #[arg(long)]
        perm: Option<Permutation>,
        #[arg(long, value_name = "FILE")]
        poset: Option<PathBuf>,
    },
    /// Interval size by BFS over upper covers (n ≤ 10)
    CountInterval { lower: Permutation, upper: Permutation },
    /// Width of Φ(permutation) as its largest antichain (n ≤ 20)
    Width { perm: Permutation },
    /// Every linear extension of Φ(permutation), one per line (n ≤ 10)
    Extensions { perm: Permutation },
}

#[derive(Subcommand)]
enum ExperimentCommand {
    /// Width statistics of random permutations, one CSV row per size
    Width {
        /// Permutation size; repeat for several rows
        #[arg(long = "n", value_name = "N", required = true)]
        sizes: Vec<usize>,
        #[arg(long)]
        samples: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Fraction of samples with |width − mean| ≥ n^alpha
    Concentration {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        samples: u64,
        /// Tail exponent, 1/3 < alpha ≤ 1/2
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Width-DP cost (states, time) on random permutations per size
    Scaling {
        #[arg(long = "n", value_name = "N", required = true)]
        sizes: Vec<usize>,
        #[arg(long)]
        samples: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
        budget: u64,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Lib(Error),
    Usage(String),
    SelftestFailed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Lib(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::SelftestFailed) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::NotAnInterval => 3,
                Error::SizeCapExceeded { .. } | Error::StateBudgetExceeded { .. } => 4,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::CountInterval { lower, upper, opts } => {
            let count = count_interval_with(&lower, &upper, opts.strategy.into(), opts.budget)?;
            println!("{count}");
            Ok(())
        }
        Command::CountLe { perm, poset, opts } => match pick_input(perm, poset)? {
            Input::Perm(p) => {
                let count = count_from_identity_with(&p, opts.strategy.into(), opts.budget)?;
                println!("{count}");
                Ok(())
            }
            Input::Poset(path) => {
                if !matches!(opts.strategy, StrategyArg::Auto | StrategyArg::Brute) {
                    return Err(Failure::Usage(format!(
                        "poset files are counted by brute force only; \
                         --strategy {} requires --perm",
                        Strategy::from(opts.strategy)
                    )));
                }
                let poset = ingest_poset_file(&read_input(&path)?)?;
                println!("{}", count_le_bruteforce(&poset)?);
                Ok(())
            }
        },
        Command::Width { perm } => {
            println!("{}", perm.lds_width());
            Ok(())
        }
        Command::Iwidth { perm } => {
            println!("{}", intrinsic_width(&perm));
            Ok(())
        }
        Command::Decompose { perm, json } => {
            let tree = block_decompose(&perm);
            if json {
                let text = serde_json::to_string_pretty(&tree)
                    .expect("decomposition trees serialize infallibly");
                println!("{text}");
            } else {
                print!("{tree}");
            }
            Ok(())
        }
        Command::Covers { perm } => {
            for cover in perm.upper_covers() {
                println!("{cover}");
            }
            Ok(())
        }
        Command::Oracle { oracle } => run_oracle(oracle),
        Command::Gen { n, seed, index } => {
            check_size(n)?;
            let mut rng = sample_rng(seed, n, index);
            println!("{}", random_permutation(n, &mut rng));
            Ok(())
        }
        Command::Experiment { experiment } => run_experiment(experiment),
        Command::Selftest => {
            let results = bruhat::selftest::run_all();
            for r in &results {
                if r.passed {
                    println!("ok   {}", r.name);
                } else {
                    println!("FAIL {}: {}", r.name, r.detail);
                }
            }
            let passed = results.iter().filter(|r| r.passed).count();
            println!("{passed}/{} checks passed", results.len());
            if passed == results.len() {
                Ok(())
            } else {
                Err(Failure::SelftestFailed)
            }
        }
    }
}

fn run_oracle(oracle: OracleCommand) -> Result<(), Failure> {
    match oracle {
        OracleCommand::CountLe { perm, poset } => {
            let count = match pick_input(perm, poset)? {
                Input::Perm(p) => count_le_bruteforce(&phi(&p))?,
                Input::Poset(path) => {
                    count_le_bruteforce(&ingest_poset_file(&read_input(&path)?)?)?
                }
            };
            println!("{count}");
            Ok(())
        }
        OracleCommand::CountInterval { lower, upper } => {
            if !lower.weak_leq(&upper)? {
                return Err(Failure::Lib(Error::NotAnInterval));
            }
            println!("{}", weak_interval(&lower, &upper)?.len());
            Ok(())
        }
        OracleCommand::Width { perm } => {
            println!("{}", max_antichain_bruteforce(&phi(&perm))?);
            Ok(())
        }
        OracleCommand::Extensions { perm } => {
            for ext in enumerate_linear_extensions(&phi(&perm))? {
                let words: Vec<String> = ext.iter().map(|v| v.to_string()).collect();
                println!("{}", words.join(" "));
            }
            Ok(())
        }
    }
}

fn run_experiment(experiment: ExperimentCommand) -> Result<(), Failure> {
    match experiment {
        ExperimentCommand::Width {
            sizes,
            samples,
            seed,
            out,
        } => {
            check_experiment(&sizes, samples)?;
            let rows: Vec<_> = sizes
                .iter()
                .map(|&n| width_statistics(n, samples, seed))
                .collect();
            emit_csv(&rows, out.as_deref())
        }
        ExperimentCommand::Concentration {
            n,
            samples,
            alpha,
            seed,
            out,
        } => {
            check_experiment(&[n], samples)?;
            let row = bruhat::concentration_report(n, samples, alpha, seed)?;
            emit_csv(&[row], out.as_deref())
        }
        ExperimentCommand::Scaling {
            sizes,
            samples,
            seed,
            budget,
            out,
        } => {
            check_experiment(&sizes, samples)?;
            let rows = runtime_scaling_experiment_with(&sizes, samples, seed, budget)?;
            for row in &rows {
                if row.budget_exhausted > 0 {
                    eprintln!(
                        "note: {} of {} samples at n={} exceeded the state budget",
                        row.budget_exhausted, row.samples, row.n
                    );
                }
            }
            emit_csv(&rows, out.as_deref())
        }
    }
}

enum Input {
    Perm(Permutation),
    Poset(PathBuf),
}

fn pick_input(perm: Option<Permutation>, poset: Option<PathBuf>) -> Result<Input, Failure> {
    match (perm, poset) {
        (Some(p), None) => Ok(Input::Perm(p)),
        (None, Some(path)) => Ok(Input::Poset(path)),
        (Some(_), Some(_)) => Err(Failure::Usage(
            "--perm and --poset are mutually exclusive".into(),
        )),
        (None, None) => Err(Failure::Usage("one of --perm or --poset is required".into())),
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn check_size(n: usize) -> Result<(), Failure> {
    if n == 0 {
        return Err(Failure::Usage("n must be at least 1".into()));
    }
    if n > MAX_PARSE_SIZE {
        return Err(Failure::Usage(format!("n must be at most {MAX_PARSE_SIZE}")));
    }
    Ok(())
}

fn check_experiment(sizes: &[usize], samples: u64) -> Result<(), Failure> {
    for &n in sizes {
        check_size(n)?;
    }
    if samples == 0 {
        return Err(Failure::Usage("--samples must be at least 1".into()));
    }
    Ok(())
}

fn emit_csv(rows: &[bruhat::ExperimentRow], out: Option<&Path>) -> Result<(), Failure> {
    let text = bruhat::csv_string(rows);
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
