use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use norden::field::{Mode, Rational};
use norden::format::{export, RawSpec};
use norden::search::{hunt, HuntConfig, Target, DEFAULT_BUDGET, DEFAULT_MAX_HITS};
use norden::structure::validate;
use norden::verify::{load_raw, verify_raw, VerifyError};

#[derive(Parser)]
#[command(name = "norden", version, about = "Verify curvature identities of Norden structures on Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a file describes a valid structure.
    Validate {
        file: PathBuf,
        #[arg(long, env = "NORDEN_MODE")]
        mode: Option<Mode>,
    },
    /// Run the identity catalogue on a file, or on every `.norden` file in a directory.
    Verify {
        path: PathBuf,
        /// Comma-separated check ids; default is the whole catalogue.
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<String>>,
        #[arg(long, env = "NORDEN_MODE")]
        mode: Option<Mode>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Search for certified examples and write them to a directory.
    Search {
        #[arg(long)]
        target: Target,
        #[arg(long, default_value_t = 4)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_HITS)]
        max_hits: usize,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Print the canonical form of a valid file.
    Export { file: PathBuf },
}

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Validate { file, mode } => cmd_validate(&file, mode),
        Command::Verify { path, checks, mode, format } => cmd_verify(&path, checks.as_deref(), mode, format),
        Command::Search { target, dim, seed, budget, max_hits, out_dir } => {
            let mut cfg = HuntConfig::new(target, dim, seed);
            cfg.budget = budget;
            cfg.max_hits = max_hits;
            match hunt(&cfg, &out_dir) {
                Ok(summary) => {
                    print!("{}", summary.render());
                    ExitCode::SUCCESS
                }
                Err(e) => input_error(e),
            }
        }
        Command::Export { file } => cmd_export(&file),
    }
}

fn input_error(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(EXIT_INPUT)
}

fn effective_mode(flag: Option<Mode>, raw: &RawSpec) -> Mode {
    flag.unwrap_or(raw.mode)
}

fn cmd_validate(file: &Path, mode: Option<Mode>) -> ExitCode {
    let raw = match load_raw(file) {
        Ok(r) => r,
        Err(e) => return input_error(e),
    };
    let result = match effective_mode(mode, &raw) {
        Mode::Rational => validate::<Rational>(&raw).map(|s| s.signature),
        Mode::Float => validate::<f64>(&raw).map(|s| s.signature),
    };
    match result {
        Ok((p, q)) => {
            println!("valid: dim {}, signature ({p},{q})", raw.dim);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("invalid: {e}");
            ExitCode::from(EXIT_FAIL)
        }
    }
}

fn verify_one(path: &Path, checks: Option<&[String]>, mode: Option<Mode>) -> Result<norden::report::IdentityReport, VerifyError> {
    let raw = load_raw(path)?;
    verify_raw(&raw, effective_mode(mode, &raw), checks)
}

fn cmd_verify(path: &Path, checks: Option<&[String]>, mode: Option<Mode>, format: Format) -> ExitCode {
    let files = if path.is_dir() {
        let mut v: Vec<PathBuf> = match std::fs::read_dir(path) {
            Ok(d) => d.filter_map(|e| e.ok().map(|e| e.path())).filter(|p| p.extension().is_some_and(|x| x == "norden")).collect(),
            Err(e) => return input_error(format!("cannot read {}: {e}", path.display())),
        };
        v.sort();
        v
    } else {
        vec![path.to_path_buf()]
    };
    let many = path.is_dir();
    let results: Vec<_> = files.par_iter().map(|f| verify_one(f, checks, mode)).collect();
    let mut failed = false;
    for (f, r) in files.iter().zip(results) {
        let report = match r {
            Ok(r) => r,
            Err(e) => return input_error(format!("{}: {e}", f.display())),
        };
        if many {
            println!("# file {}", f.file_name().unwrap_or_default().to_string_lossy());
        }
        match format {
            Format::Text => print!("{}", report.to_text()),
            Format::Machine => print!("{}", report.to_machine()),
        }
        failed |= report.has_failures();
    }
    if failed {
        ExitCode::from(EXIT_FAIL)
    } else {
        ExitCode::SUCCESS
    }
}

fn cmd_export(file: &Path) -> ExitCode {
    let raw = match load_raw(file) {
        Ok(r) => r,
        Err(e) => return input_error(e),
    };
    let checked = match raw.mode {
        Mode::Rational => validate::<Rational>(&raw).map(|_| ()),
        Mode::Float => validate::<f64>(&raw).map(|_| ()),
    };
    if let Err(e) = checked {
        return input_error(e);
    }
    print!("{}", export(&raw));
    ExitCode::SUCCESS
}
