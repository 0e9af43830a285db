use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand};

use whispers::classical::SearchLimits;
use whispers::game::MinimaxOptions;
use whispers::report::{
    cmd_chain, cmd_classical_search, cmd_minimax, cmd_sweep, cmd_trit, cmd_two_party, ChainRequest, ChainSource,
    ExperimentReport, Mode, MonteCarlo, SweepConfig,
};
use whispers::Error;

const EXIT_VALIDATION: u8 = 2;
const EXIT_RESOURCE: u8 = 3;
const EXIT_UNCONVERGED: u8 = 4;

/// Quantum and classical protocols for the jump / no-jump promise problem
/// and the whispers chain. Reports are JSON on stdout; summaries go to stderr.
#[derive(Parser)]
#[command(name = "whispers", version)]
struct Cli {
    /// Worker threads (results do not depend on this).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Entanglement-assisted one-bit protocol for two parties.
    TwoParty {
        #[arg(long)]
        n: u32,
        /// Alice's dot; requires --y.
        #[arg(long, requires = "y")]
        x: Option<u32>,
        /// Bob's dot; requires --x.
        #[arg(long, requires = "x")]
        y: Option<u32>,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Exhaustive search for the best one-bit colouring.
    ClassicalSearch {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        no_symmetry: bool,
        /// Largest ring half-size the search accepts.
        #[arg(long, default_value_t = SearchLimits::default().max_half)]
        cap: u32,
    },
    /// Zero-error three-colour protocol and its code length.
    Trit {
        #[arg(long)]
        n: u32,
    },
    /// Value of the protocol-versus-adversary game.
    Minimax {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = MinimaxOptions::default().max_iterations)]
        max_iterations: u64,
        #[arg(long, default_value_t = MinimaxOptions::default().tolerance)]
        tolerance: f64,
        /// Exit with status 4 if the duality gap stays above tolerance.
        #[arg(long)]
        strict: bool,
    },
    /// The multiparty whispers chain.
    Chain {
        #[arg(long, required_unless_present = "links_file")]
        m: Option<usize>,
        #[arg(long, required_unless_present = "links_file")]
        n: Option<u32>,
        #[arg(long, default_value = "quantum")]
        mode: Mode,
        /// Per-link colouring for classical mode, e.g. BBBWWW.
        #[arg(long)]
        coloring: Option<String>,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        /// JSON chain record; replaces --m, --n and random generation.
        #[arg(long, conflicts_with_all = ["m", "n"])]
        links_file: Option<PathBuf>,
    },
    /// Grid of experiments from a TOML config.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Write one CSV row per cell here.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

enum Failure {
    Lib(Error),
    Unconverged,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn fresh_seed() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_nanos() as u64).unwrap_or(0)
}

fn read(path: &PathBuf) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))
}

fn emit(report: &ExperimentReport) {
    println!("{}", report.to_json());
    eprint!("{}", report.summary());
}

fn run(cli: Cli) -> Result<(), Failure> {
    let mc = |trials: Option<u64>, seed: Option<u64>| {
        trials.map(|trials| MonteCarlo {
            trials,
            seed: seed.unwrap_or_else(fresh_seed),
        })
    };
    match cli.command {
        Command::TwoParty { n, x, y, trials, seed } => {
            let pair = x.zip(y);
            emit(&cmd_two_party(n, pair, mc(trials, seed))?);
        }
        Command::ClassicalSearch { n, no_symmetry, cap } => {
            let start = Instant::now();
            let (report, _) = cmd_classical_search(n, !no_symmetry, SearchLimits { max_half: cap })?;
            emit(&report);
            eprintln!("  elapsed_seconds = {:.3}", start.elapsed().as_secs_f64());
        }
        Command::Trit { n } => emit(&cmd_trit(n)?),
        Command::Minimax {
            n,
            max_iterations,
            tolerance,
            strict,
        } => {
            let options = MinimaxOptions {
                max_iterations,
                tolerance,
                ..MinimaxOptions::default()
            };
            let (report, converged) = cmd_minimax(n, options)?;
            emit(&report);
            if !converged {
                eprintln!("warning: duality gap above tolerance after {max_iterations} iterations");
                if strict {
                    return Err(Failure::Unconverged);
                }
            }
        }
        Command::Chain {
            m,
            n,
            mode,
            coloring,
            trials,
            seed,
            links_file,
        } => {
            let source = match links_file {
                Some(path) => ChainSource::File {
                    text: read(&path)?,
                    path: path.display().to_string(),
                },
                None => ChainSource::Generated {
                    m: m.expect("required by clap"),
                    n: n.expect("required by clap"),
                    seed: seed.unwrap_or_else(fresh_seed),
                },
            };
            // A generated chain and its simulation share one seed.
            let seed = match &source {
                ChainSource::Generated { seed, .. } => Some(*seed),
                ChainSource::File { .. } => seed,
            };
            let req = ChainRequest {
                source,
                mode,
                coloring,
                mc: mc(trials, seed),
            };
            emit(&cmd_chain(&req)?);
        }
        Command::Sweep { config, csv } => {
            let config = SweepConfig::from_toml(&read(&config)?)?;
            let out = cmd_sweep(&config)?;
            if let Some(path) = csv {
                let file = std::fs::File::create(&path)
                    .map_err(|e| Error::Invalid(format!("cannot create {}: {e}", path.display())))?;
                out.write_csv(file)?;
            }
            println!("{}", out.to_json());
            for r in &out.reports {
                eprint!("{}", r.summary());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_VALIDATION);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Unconverged) => ExitCode::from(EXIT_UNCONVERGED),
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::ResourceCap(_) => EXIT_RESOURCE,
                _ => EXIT_VALIDATION,
            })
        }
    }
}
