use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use genfilter_cli::{build, query, recheck, run_suite, BuildOptions, Certificate, CliError, Kind, QueryOptions, Suite};

/// Build and check isomorphisms between countable structures by generic
/// filters.
#[derive(Parser)]
#[command(name = "genfilter", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an isomorphism, verify a prefix, and emit a certificate.
    Build {
        kind: Kind,
        source: String,
        target: String,
        /// Prefix length verified in both directions.
        #[arg(long, default_value_t = 100)]
        steps: usize,
        /// Seed for sampled checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Candidate limit for search-based graph witnesses.
        #[arg(long)]
        bound: Option<u64>,
        /// Sampled pairs for the Boolean homomorphism check.
        #[arg(long, default_value_t = 1000)]
        pairs: usize,
        /// Write the certificate here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Re-read the emitted certificate and recheck it independently.
        #[arg(long)]
        recheck: bool,
    },
    /// Print the image of one point under the generic map.
    Query {
        kind: Kind,
        source: String,
        target: String,
        #[arg(allow_hyphen_values = true)]
        point: String,
        /// Largest builder stage the query may reach.
        #[arg(long, default_value_t = 1 << 20)]
        steps: usize,
        /// Query the inverse map; the point is a target token.
        #[arg(long)]
        inverse: bool,
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Run a property suite and print one line per check.
    Verify {
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Recheck a certificate file from the structure oracles alone.
    Recheck {
        file: PathBuf,
        #[arg(long)]
        bound: Option<u64>,
    },
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn recheck_file(path: &PathBuf, bound: Option<u64>) -> Result<bool, CliError> {
    let cert = Certificate::from_json(&read(path)?)?;
    let report = recheck(&cert, bound)?;
    print!("{report}");
    Ok(report.passed())
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Build {
            kind,
            source,
            target,
            steps,
            seed,
            bound,
            pairs,
            out,
            recheck: again,
        } => {
            let opts = BuildOptions {
                steps,
                seed,
                bound,
                pair_samples: pairs,
            };
            let cert = build(kind, &source, &target, &opts)?;
            let json = cert.to_json();
            for check in cert.checks.iter().filter(|c| !c.pass) {
                eprintln!("{check}");
            }
            let mut passed = cert.passed();
            match &out {
                Some(path) => {
                    std::fs::write(path, &json).map_err(|source| CliError::Io {
                        path: path.display().to_string(),
                        source,
                    })?;
                    if again {
                        passed &= recheck_file(path, bound)?;
                    }
                }
                None => {
                    print!("{json}");
                    if again {
                        let report = recheck(&Certificate::from_json(&json)?, bound)?;
                        eprint!("{report}");
                        passed &= report.passed();
                    }
                }
            }
            Ok(passed)
        }
        Command::Query {
            kind,
            source,
            target,
            point,
            steps,
            inverse,
            bound,
        } => {
            let opts = QueryOptions {
                steps_cap: steps,
                inverse,
                bound,
            };
            println!("{}", query(kind, &source, &target, &point, &opts)?);
            Ok(true)
        }
        Command::Verify { suite, seed } => {
            let report = run_suite(suite, seed);
            print!("{report}");
            Ok(report.passed())
        }
        Command::Recheck { file, bound } => recheck_file(&file, bound),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
