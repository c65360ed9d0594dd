use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use graphsim::bench::{bench, BenchReport, Workload};
use graphsim::dense::MAX_DENSE_QUBITS;
use graphsim::fuzz::{fuzz, FuzzConfig};
use graphsim::selftest::selftest;
use graphsim::{parse_circuit, EngineKind, Error};

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "graphsim",
    version,
    about = "Stabilizer circuit simulation on graph states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a circuit file and print one line per measurement.
    Run {
        file: PathBuf,
        #[arg(long, default_value = "graph")]
        engine: EngineKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also print the final stabilizer tableau in canonical form.
        #[arg(long)]
        tableau: bool,
    },
    /// Cross-check the graph engine against the tableau and dense engines.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        iters: u64,
        #[arg(long, default_value_t = 1)]
        min_qubits: usize,
        #[arg(long, default_value_t = 8)]
        max_qubits: usize,
        #[arg(long, default_value_t = 1)]
        min_len: usize,
        #[arg(long, default_value_t = 40)]
        max_len: usize,
        /// Compare tableaus every this many instructions.
        #[arg(long, default_value_t = 1000)]
        cadence: usize,
    },
    /// Time the graph engine on scaling workloads and print CSV.
    Bench {
        /// linear_cluster or random_dense; both when omitted.
        #[arg(long)]
        workload: Option<Workload>,
        #[arg(long, value_delimiter = ',', default_value = "1000,10000,100000")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        reps: usize,
    },
    /// Check every lookup table entry against matrix arithmetic.
    Selftest,
}

fn run_file(file: &PathBuf, engine: EngineKind, seed: u64, tableau: bool) -> ExitCode {
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("graphsim: {}: {e}", file.display());
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let circuit = match parse_circuit(&text) {
        Ok(c) => c,
        Err(Error::Parse { line, message }) => {
            eprintln!("graphsim: {}:{line}: {message}", file.display());
            return ExitCode::from(EXIT_USAGE);
        }
        Err(e) => {
            eprintln!("graphsim: {}: {e}", file.display());
            return ExitCode::from(EXIT_USAGE);
        }
    };
    if engine == EngineKind::Dense {
        if tableau {
            eprintln!("graphsim: --tableau is not available with the dense engine");
            return ExitCode::from(EXIT_USAGE);
        }
        if circuit.num_qubits() > MAX_DENSE_QUBITS {
            eprintln!(
                "graphsim: the dense engine handles at most {MAX_DENSE_QUBITS} qubits, circuit has {}",
                circuit.num_qubits()
            );
            return ExitCode::from(EXIT_USAGE);
        }
    }
    match graphsim::run(&circuit, seed, engine, tableau) {
        Ok(transcript) => {
            print!("{transcript}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("graphsim: {e}");
            ExitCode::from(EXIT_FAILURE)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run {
            file,
            engine,
            seed,
            tableau,
        } => run_file(&file, engine, seed, tableau),
        Command::Fuzz {
            seed,
            iters,
            min_qubits,
            max_qubits,
            min_len,
            max_len,
            cadence,
        } => {
            let config = FuzzConfig {
                seed,
                iterations: iters,
                min_qubits,
                max_qubits,
                min_len,
                max_len,
                tableau_cadence: cadence,
                ..FuzzConfig::default()
            };
            if let Err(e) = config.validate() {
                eprintln!("graphsim: {e}");
                return ExitCode::from(EXIT_USAGE);
            }
            let report = fuzz(&config);
            println!("{report}");
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAILURE)
            }
        }
        Command::Bench {
            workload,
            sizes,
            reps,
        } => {
            let workloads = match workload {
                Some(w) => vec![w],
                None => vec![Workload::LinearCluster, Workload::RandomDense],
            };
            let mut report = BenchReport::default();
            for w in workloads {
                match bench(w, &sizes, reps) {
                    Ok(r) => report.rows.extend(r.rows),
                    Err(e) => {
                        eprintln!("graphsim: {e}");
                        return ExitCode::from(EXIT_USAGE);
                    }
                }
            }
            print!("{}", report.to_csv());
            ExitCode::SUCCESS
        }
        Command::Selftest => {
            let report = selftest();
            println!("{report}");
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAILURE)
            }
        }
    }
}
