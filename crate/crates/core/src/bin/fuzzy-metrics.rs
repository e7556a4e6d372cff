use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use fuzzy_metrics::fuzzy::{estimate_p0, FuzzyError, DEFAULT_TAU};
use fuzzy_metrics::generators::{gen_random_interval, gen_u0, gen_un};
use fuzzy_metrics::harness::{self, TheoremConfig, DEFAULT_LEVELS, DEFAULT_TOL, IMPLICATIONS};
use fuzzy_metrics::io::{self as fio, FileError};
use fuzzy_metrics::metrics::{self, MetricError};
use fuzzy_metrics::{FuzzySet, IntervalUnion, LevelGrid};

#[derive(Parser)]
#[command(
    name = "fuzzy-metrics",
    version,
    about = "Distances between fuzzy sets on the real line"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Metric {
    /// Hausdorff distance of the 0-cuts
    Hausdorff0,
    /// Supremum of cut-wise Hausdorff distances
    Dinf,
    /// Endograph metric (box metric on the product)
    Dend,
    /// Skorokhod metric
    D0,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    U0,
    Un,
    Random,
    Crisp,
}

#[derive(Subcommand)]
enum Command {
    /// Print one distance between two fuzzy-set files
    Dist {
        #[arg(value_enum)]
        metric: Metric,
        file_a: PathBuf,
        file_b: PathBuf,
        #[arg(long = "levels", default_value_t = DEFAULT_LEVELS)]
        levels: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Tabulate all distances between u_n and u_0 for n = 1..=n_max
    ExamplePaper {
        #[arg(long, default_value_t = 20)]
        n_max: u32,
        #[arg(long = "levels", default_value_t = DEFAULT_LEVELS)]
        levels: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Output CSV path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Randomized check that Skorokhod closeness bounds cut and endograph distances
    VerifyTheorem1 {
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long = "levels", default_value_t = DEFAULT_LEVELS)]
        levels: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = 0.1)]
        max_distortion: f64,
        #[arg(long, default_value_t = 0.1)]
        max_perturbation: f64,
    },
    /// Print the estimated jump levels of a fuzzy set (K vs 2K refinement)
    Jumps {
        file: PathBuf,
        #[arg(long = "levels", default_value_t = DEFAULT_LEVELS)]
        levels: usize,
        #[arg(long, default_value_t = DEFAULT_TAU)]
        tau: f64,
    },
    /// Write a generated fuzzy set to a file
    Generate {
        #[arg(value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        smoothness: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        lo: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        hi: f64,
        #[arg(long = "levels", default_value_t = DEFAULT_LEVELS)]
        levels: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

enum Failure {
    Validation(String),
    Grid(String),
    Other(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Validation(_) => 2,
            Failure::Grid(_) => 3,
            Failure::Other(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Validation(m) | Failure::Grid(m) | Failure::Other(m) => m,
        }
    }
}

impl From<FileError> for Failure {
    fn from(e: FileError) -> Self {
        match e {
            FileError::Parse { .. } | FileError::Validation { .. } => {
                Failure::Validation(e.to_string())
            }
            FileError::Grid(_) => Failure::Grid(e.to_string()),
            FileError::Io { .. } => Failure::Other(e.to_string()),
        }
    }
}

impl From<MetricError> for Failure {
    fn from(e: MetricError) -> Self {
        match e {
            MetricError::InvariantViolation(_) => Failure::Other(e.to_string()),
            _ => Failure::Grid(e.to_string()),
        }
    }
}

impl From<FuzzyError> for Failure {
    fn from(e: FuzzyError) -> Self {
        match e {
            FuzzyError::NestingViolation(_) | FuzzyError::LengthMismatch { .. } => {
                Failure::Validation(e.to_string())
            }
            _ => Failure::Grid(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Other(e.to_string())
    }
}

fn check_tol(tol: f64) -> Result<(), Failure> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(MetricError::BadTolerance(tol).into())
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Dist {
            metric,
            file_a,
            file_b,
            levels,
            tol,
        } => {
            LevelGrid::new(levels)?;
            let u = fio::load(&file_a, levels)?;
            let v = fio::load(&file_b, levels)?;
            let value = match metric {
                Metric::Hausdorff0 => u.support().hausdorff(v.support()),
                Metric::Dinf => metrics::d_infty(&u, &v)?,
                Metric::Dend => metrics::h_end(&u, &v)?,
                Metric::D0 => {
                    check_tol(tol)?;
                    metrics::d0(&u, &v, tol)?
                }
            };
            println!("{value:.6}");
        }
        Command::ExamplePaper {
            n_max,
            levels,
            tol,
            out,
        } => {
            check_tol(tol)?;
            if levels < 2 {
                return Err(FuzzyError::BadResolution(levels).into());
            }
            let rows = harness::example_paper(n_max.max(1), levels, tol)?;
            match out {
                Some(path) => {
                    let mut w = BufWriter::new(File::create(&path)?);
                    harness::write_table(&rows, &mut w)?;
                    w.flush()?;
                }
                None => harness::write_table(&rows, io::stdout().lock())?,
            }
        }
        Command::VerifyTheorem1 {
            trials,
            seed,
            levels,
            tol,
            max_distortion,
            max_perturbation,
        } => {
            check_tol(tol)?;
            if levels < 2 {
                return Err(FuzzyError::BadResolution(levels).into());
            }
            let config = TheoremConfig {
                trials: trials.max(1),
                seed,
                resolution: levels,
                tol,
                max_distortion,
                max_perturbation,
                ..TheoremConfig::default()
            };
            let summary = harness::verify_theorem(&config)?;
            println!(
                "passed {}/{} trials (K = {levels}, slack = {:.6})",
                summary.passed(),
                summary.outcomes.len(),
                summary.slack
            );
            if let Some((margin, trial, part)) = summary.worst_margin() {
                println!(
                    "worst margin {margin:.6} in trial {trial} ({})",
                    IMPLICATIONS[part]
                );
            }
            for o in summary.outcomes.iter().filter(|o| !o.passed()) {
                println!("FAILED trial {}: margins {:?}", o.index, o.margins);
            }
            if !summary.all_passed() {
                return Err(Failure::Other("theorem check failed".into()));
            }
        }
        Command::Jumps { file, levels, tau } => {
            LevelGrid::new(levels)?;
            let table = fio::read(&file)?;
            let coarse = table.to_fuzzy_set(levels)?;
            let fine = table.to_fuzzy_set(2 * levels)?;
            for level in estimate_p0(&coarse, &fine, tau)? {
                println!("{level:.6}");
            }
        }
        Command::Generate {
            kind,
            n,
            seed,
            smoothness,
            lo,
            hi,
            levels,
            out,
        } => {
            if levels < 2 {
                return Err(FuzzyError::BadResolution(levels).into());
            }
            let u = match kind {
                Kind::U0 => gen_u0(levels),
                Kind::Un => gen_un(n.max(1), levels),
                Kind::Random => gen_random_interval(seed, levels, smoothness.max(0.0)),
                Kind::Crisp => {
                    let set = IntervalUnion::interval(lo, hi)
                        .map_err(|e| Failure::Validation(e.to_string()))?;
                    FuzzySet::crisp(LevelGrid::new(levels)?, set)
                }
            };
            fio::save(&u, &out)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
