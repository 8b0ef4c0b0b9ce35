use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use bracket_core::abstraction::{translate, translate_traced, AlgorithmId};
use bracket_core::lab::{check_many, differential, shrink, GeneratorConfig, Source, Verdict};
use bracket_core::metrics::{emit_csv, growth_experiment, FamilyId};
use bracket_core::reduce::{is_beta_normal, Fuel};
use bracket_core::syntax::{parse_lambda, parse_lambda_corpus, print_cl};
use bracket_core::term::LambdaTerm;
use clap::{ArgGroup, CommandFactory, FromArgMatches, Parser, Subcommand};

const EXIT_DISTINGUISHED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_UNKNOWN: u8 = 3;

/// Unknown verdicts at or above this rate make `check` exit with status 3.
const UNKNOWN_RATE_LIMIT: f64 = 0.05;

const STACK_SIZE: usize = 256 * 1024 * 1024;

/// Translate lambda terms to combinatory logic and compare abstraction algorithms.
#[derive(Parser)]
#[command(name = "bracket", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the translation of a lambda term.
    Translate {
        #[arg(long)]
        alg: AlgorithmId,
        /// Also print every fired equation and optimisation.
        #[arg(long)]
        trace: bool,
        /// Read the term from a file.
        #[arg(long, conflicts_with = "term")]
        in_file: Option<PathBuf>,
        /// The term; `-` reads standard input.
        term: Option<String>,
    },
    /// Search for a term the two algorithms translate differently.
    #[command(group(ArgGroup::new("source").required(true).args(["normal_forms", "all_terms", "corpus"])))]
    Compare {
        #[arg(long)]
        alg_a: AlgorithmId,
        #[arg(long)]
        alg_b: AlgorithmId,
        /// Random beta-normal terms.
        #[arg(long)]
        normal_forms: bool,
        /// Random terms, redexes included.
        #[arg(long)]
        all_terms: bool,
        /// One lambda term per line.
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 40)]
        max_size: usize,
        /// Shrink a distinguishing witness before reporting it.
        #[arg(long)]
        shrink: bool,
    },
    /// Check the free-variable law and beta-eta correctness on random terms.
    Check {
        #[arg(long)]
        alg: AlgorithmId,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 40)]
        max_size: usize,
        /// Reduction steps allowed per normal form.
        #[arg(long, default_value_t = Fuel::DEFAULT.0)]
        fuel: u64,
    },
    /// Measure translation size over a term family and write CSV.
    Bench {
        #[arg(long)]
        alg: AlgorithmId,
        /// `fan` or `nested`.
        #[arg(long)]
        family: FamilyId,
        #[arg(long, default_value_t = 40)]
        max_n: usize,
        /// Write the CSV here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure with an exit status.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

fn usage(error: anyhow::Error) -> Failure {
    Failure {
        code: EXIT_USAGE,
        error,
    }
}

fn algorithm_table() -> String {
    let mut table = String::from("Algorithms:\n");
    for alg in AlgorithmId::ALL {
        table += &format!("  {:<10} {}\n", alg.cli_name(), alg.display_name());
    }
    table
}

fn read_term(term: Option<String>, in_file: Option<PathBuf>) -> Result<String> {
    match (term, in_file) {
        (_, Some(path)) => {
            fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))
        }
        (Some(t), None) if t == "-" => {
            let mut buf = String::new();
            io::stdin()
                .read_to_string(&mut buf)
                .context("reading standard input")?;
            Ok(buf)
        }
        (Some(t), None) => Ok(t),
        (None, None) => anyhow::bail!(
            "no term given (pass it as an argument, `-` for standard input, or --in-file)"
        ),
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Translate {
            alg,
            trace,
            in_file,
            term,
        } => {
            let text = read_term(term, in_file).map_err(usage)?;
            let t = parse_lambda(text.trim()).map_err(|e| usage(e.into()))?;
            if trace {
                let (out, steps) = translate_traced(alg, &t);
                println!("{}", print_cl(&out));
                print!("{steps}");
            } else {
                println!("{}", print_cl(&translate(alg, &t)));
            }
            Ok(0)
        }
        Command::Compare {
            alg_a,
            alg_b,
            normal_forms,
            corpus,
            trials,
            seed,
            max_size,
            shrink: shrinking,
            ..
        } => {
            let cfg = GeneratorConfig::new(seed, max_size);
            let (source, trials) = match corpus {
                Some(path) => {
                    let text = fs::read_to_string(&path)
                        .with_context(|| format!("reading {}", path.display()))
                        .map_err(usage)?;
                    let terms = parse_lambda_corpus(&text)
                        .with_context(|| format!("parsing {}", path.display()))
                        .map_err(usage)?;
                    let n = terms.len();
                    (Source::Corpus(terms), n)
                }
                None if normal_forms => (Source::BetaNormal(cfg), trials),
                None => (Source::Arbitrary(cfg), trials),
            };
            let verdict = differential(alg_a, alg_b, &source, trials);
            print!("{}", verdict.render(alg_a, alg_b));
            match verdict {
                Verdict::Equal { .. } => Ok(0),
                Verdict::Distinguished { witness, .. } => {
                    if shrinking {
                        let keep_normal = matches!(source, Source::BetaNormal(_));
                        let differs = |t: &LambdaTerm| {
                            (!keep_normal || is_beta_normal(t))
                                && translate(alg_a, t) != translate(alg_b, t)
                        };
                        let small = shrink(&witness, differs);
                        println!("shrunk-witness: {small}");
                        println!("shrunk-output-a: {}", translate(alg_a, &small));
                        println!("shrunk-output-b: {}", translate(alg_b, &small));
                    }
                    Ok(EXIT_DISTINGUISHED)
                }
                Verdict::Unknown { .. } => Ok(EXIT_UNKNOWN),
            }
        }
        Command::Check {
            alg,
            trials,
            seed,
            max_size,
            fuel,
        } => {
            let summary = check_many(
                alg,
                &GeneratorConfig::new(seed, max_size),
                trials,
                Fuel(fuel),
            );
            println!("algorithm: {}", alg.cli_name());
            print!("{summary}");
            Ok(if summary.failures() > 0 {
                EXIT_DISTINGUISHED
            } else if summary.unknown_rate() >= UNKNOWN_RATE_LIMIT {
                EXIT_UNKNOWN
            } else {
                0
            })
        }
        Command::Bench {
            alg,
            family,
            max_n,
            out,
        } => {
            let report = growth_experiment(alg, family, max_n).map_err(|e| usage(e.into()))?;
            let csv = emit_csv(&report);
            match out {
                Some(path) => {
                    fs::write(&path, csv)
                        .with_context(|| format!("writing {}", path.display()))
                        .map_err(usage)?;
                    println!("slope={:.4}", report.fitted_slope);
                }
                None => print!("{csv}"),
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let matches = Cli::command().after_help(algorithm_table()).get_matches();
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    // Trials run on the rayon pool, which needs the same deep stacks.
    rayon::ThreadPoolBuilder::new()
        .stack_size(STACK_SIZE)
        .build_global()
        .expect("global thread pool is configured once");
    let worker = std::thread::Builder::new()
        .stack_size(STACK_SIZE)
        .spawn(move || run(cli.command))
        .expect("spawning the worker thread");
    match worker.join() {
        Ok(Ok(code)) => ExitCode::from(code),
        Ok(Err(Failure { code, error })) => {
            eprintln!("error: {error:#}");
            ExitCode::from(code)
        }
        Err(_) => ExitCode::FAILURE,
    }
}
