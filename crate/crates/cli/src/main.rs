use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use realtoric::fan::FanJson;
use realtoric::gluing::GluingRule;
use realtoric::moment::moment_check;
use realtoric::{
    build_real_complex, build_real_complex_from_polytope, corpus, find_ample, intersection_numbers,
    polygon_from_divisor, predict_theorem, verify, verify_all, Error, Fan, ToricDivisor,
};
use serde::Serialize;
use serde_json::{json, Value};

/// Topology of the real points of smooth complete toric surfaces.
#[derive(Parser)]
#[command(name = "realtoric", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and canonicalize a fan.
    Validate { fan: PathBuf },
    /// Build the real complex, compute homology and print the report.
    Classify { fan: PathBuf },
    /// Classification predicted from the fan alone.
    Predict { fan: PathBuf },
    /// Like classify, exiting with status 2 on any inconsistency.
    Verify { fan: PathBuf },
    /// Self-intersection numbers of the invariant curves.
    Selfint { fan: PathBuf },
    /// Blow up, blow down, or contract to a minimal model.
    #[command(group(ArgGroup::new("op").required(true).args(["blow_up", "blow_down", "minimal"])))]
    Surgery {
        fan: PathBuf,
        /// Cone index to blow up.
        #[arg(long)]
        blow_up: Option<usize>,
        /// Ray index to blow down.
        #[arg(long)]
        blow_down: Option<usize>,
        #[arg(long)]
        minimal: bool,
    },
    /// Export the glued cell complex.
    Complex {
        fan: PathBuf,
        #[arg(long, value_enum, default_value = "parallel")]
        rule: Rule,
        /// Divisor JSON; required for the affine rule.
        #[arg(long)]
        divisor: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Compare both gluing rules over the constructed ample polygon.
    GkzDemo { fan: PathBuf },
    /// Print an ample divisor with its intersection numbers and polygon.
    Ample { fan: PathBuf },
    /// Generate and verify a seeded corpus of random fans.
    Corpus {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        max_blowups: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Numeric checks of sign profiles and the moment map.
    MomentCheck {
        fan: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Samples per sign homomorphism.
        #[arg(long, default_value_t = 1024)]
        samples: usize,
        #[arg(long)]
        divisor: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Rule {
    Parallel,
    Affine,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

enum Failure {
    /// Bad input: exit status 1.
    Input { code: String, detail: String },
    /// The pipeline contradicted itself: exit status 2.
    Mismatch,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input {
            code: e.code().to_string(),
            detail: e.to_string(),
        }
    }
}

fn input_error(code: &str, detail: impl ToString) -> Failure {
    Failure::Input {
        code: code.to_string(),
        detail: detail.to_string(),
    }
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| input_error("Io", format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| input_error("InvalidJson", format!("{}: {e}", path.display())))
}

fn read_fan(path: &Path) -> Result<Fan, Failure> {
    let raw: FanJson = serde_json::from_value(read_json(path)?)
        .map_err(|e| input_error("InvalidJson", format!("{}: {e}", path.display())))?;
    Ok(Fan::try_from(raw)?)
}

fn read_divisor(path: &Path) -> Result<ToricDivisor, Failure> {
    serde_json::from_value(read_json(path)?)
        .map_err(|e| input_error("InvalidJson", format!("{}: {e}", path.display())))
}

fn emit(value: &impl Serialize) {
    println!(
        "{}",
        serde_json::to_string(value).expect("serializable output")
    );
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Validate { fan } => emit(&read_fan(&fan)?),
        Command::Classify { fan } => emit(&verify(&read_fan(&fan)?)?),
        Command::Verify { fan } => {
            let report = verify(&read_fan(&fan)?)?;
            emit(&report);
            if !report.all_consistent {
                return Err(Failure::Mismatch);
            }
        }
        Command::Predict { fan } => {
            let fan = read_fan(&fan)?;
            let predicted = predict_theorem(&fan);
            emit(&json!({
                "fan": fan,
                "d": fan.len(),
                "recognized": fan.recognize(),
                "predicted": predicted,
                "euler_characteristic": predicted.euler_characteristic(),
            }));
        }
        Command::Selfint { fan } => {
            let fan = read_fan(&fan)?;
            emit(&json!({ "fan": fan, "self_intersections": fan.self_intersections() }));
        }
        Command::Surgery {
            fan,
            blow_up,
            blow_down,
            minimal,
        } => {
            let fan = read_fan(&fan)?;
            if let Some(i) = blow_up {
                emit(&fan.blow_up(i)?);
            } else if let Some(i) = blow_down {
                emit(&fan.blow_down(i)?);
            } else if minimal {
                let (min, steps) = fan.minimal_model();
                emit(&json!({ "fan": min, "recognized": min.recognize(), "steps": steps }));
            }
        }
        Command::Complex {
            fan,
            rule,
            divisor,
            format,
        } => {
            let fan = read_fan(&fan)?;
            let complex = match (rule, divisor) {
                (Rule::Parallel, None) => build_real_complex(&fan),
                (Rule::Affine, None) => {
                    return Err(input_error(
                        "MissingDivisor",
                        "the affine rule needs --divisor",
                    ));
                }
                (rule, Some(path)) => {
                    let poly = polygon_from_divisor(&fan, &read_divisor(&path)?)?;
                    let rule = match rule {
                        Rule::Parallel => GluingRule::ParallelSubgroup,
                        Rule::Affine => GluingRule::AffineSpan,
                    };
                    build_real_complex_from_polytope(&fan, &poly, rule)?
                }
            };
            match format {
                Format::Json => emit(&complex.to_json()),
                Format::Dot => print!("{}", complex.to_dot()),
            }
        }
        Command::GkzDemo { fan } => {
            let fan = read_fan(&fan)?;
            let divisor = find_ample(&fan);
            let poly = polygon_from_divisor(&fan, &divisor)?;
            let parallel =
                build_real_complex_from_polytope(&fan, &poly, GluingRule::ParallelSubgroup)?;
            let affine = build_real_complex_from_polytope(&fan, &poly, GluingRule::AffineSpan)?;
            let (pc, ac) = (
                parallel.euler_characteristic(),
                affine.euler_characteristic(),
            );
            emit(&json!({
                "fan": fan,
                "divisor": divisor,
                "parallel_cells": <[usize; 3]>::from(parallel.counts()),
                "affine_cells": <[usize; 3]>::from(affine.counts()),
                "parallel_chi": pc,
                "affine_chi": ac,
                "verdict": if pc == ac { "rules agree" } else { "rules disagree" },
            }));
        }
        Command::Ample { fan } => {
            let fan = read_fan(&fan)?;
            let divisor = find_ample(&fan);
            emit(&json!({
                "fan": fan,
                "divisor": divisor,
                "intersection_numbers": intersection_numbers(&fan, &divisor)?,
                "polygon": polygon_from_divisor(&fan, &divisor)?,
            }));
        }
        Command::Corpus {
            seed,
            count,
            max_blowups,
            jobs,
        } => return run_corpus(seed, count, max_blowups, jobs),
        Command::MomentCheck {
            fan,
            seed,
            samples,
            divisor,
        } => {
            let fan = read_fan(&fan)?;
            let divisor = match divisor {
                Some(path) => read_divisor(&path)?,
                None => find_ample(&fan),
            };
            emit(&moment_check(&fan, &divisor, seed, samples)?);
        }
    }
    Ok(())
}

fn run_corpus(seed: u64, count: usize, max_blowups: usize, jobs: usize) -> Result<(), Failure> {
    let fans = corpus(seed, count, max_blowups);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| input_error("ThreadPool", e))?;
    let reports = pool.install(|| verify_all(&fans));
    let mut consistent = 0usize;
    for (fan, report) in fans.iter().zip(&reports) {
        match report {
            Ok(r) => {
                consistent += usize::from(r.all_consistent);
                emit(r);
            }
            Err(e) => emit(&json!({ "fan": fan, "error": e.code(), "detail": e.to_string() })),
        }
    }
    emit(&json!({
        "summary": {
            "seed": seed,
            "count": count,
            "max_blowups": max_blowups,
            "consistent": consistent,
            "inconsistent": count - consistent,
        }
    }));
    if consistent == count {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input { code, detail }) => {
            eprintln!("{}", json!({ "error": code, "detail": detail }));
            ExitCode::from(1)
        }
        Err(Failure::Mismatch) => {
            eprintln!(
                "{}",
                json!({ "error": "VerificationMismatch", "detail": "computed topology disagrees with the prediction" })
            );
            ExitCode::from(2)
        }
    }
}
