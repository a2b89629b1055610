use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod report;
mod run;

use report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Tsv => "tsv",
            Format::Json => "json",
        }
    }
}

/// Exact billiard words in the unit cube.
#[derive(Debug, Parser)]
#[command(name = "cubeword", version)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Tsv, global = true)]
    pub format: Format,
    /// Report file; defaults to standard output, or to `$CUBEWORD_OUTPUT_DIR/<command>.<ext>` when set.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for sample schedules.
    #[arg(long, default_value_t = cubeword::acceptance::SEED, global = true)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Billiard word and crossing times.
    Trace {
        /// Start point `x,y,z`.
        #[arg(long)]
        m: String,
        #[arg(long, default_value = "1/2")]
        r: String,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        letters: u64,
    },
    /// Factor complexity, fitted affine law and bispecial identity.
    Complexity {
        #[arg(long)]
        m: String,
        #[arg(long, default_value = "1/2")]
        r: String,
        #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..))]
        n_max: u64,
        /// Traced length; defaults to twice the certified prefix.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        prefix: Option<u64>,
    },
    /// Return words of `a` against translated cell predictions.
    Returns {
        #[arg(long)]
        m: String,
        #[arg(long, default_value = "1/2")]
        r: String,
        /// Number of return words compared.
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
    },
    /// Circle section, coded orbit and slope prediction.
    Rotation {
        /// Circle invariant `y + z mod 1`.
        #[arg(long)]
        s: String,
        /// Orbit start; defaults to a valid rational point of the circle.
        #[arg(long)]
        y0: Option<String>,
        #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u64).range(1..))]
        n_max: u64,
        /// Coded letters shown.
        #[arg(long, default_value_t = 40, value_parser = clap::value_parser!(u64).range(1..))]
        letters: u64,
    },
    /// Per-class laws and the union of sampled languages.
    Directional {
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
        n_max: u64,
        #[arg(long, default_value_t = 20_000, value_parser = clap::value_parser!(u64).range(1..))]
        prefix: u64,
    },
    /// Runs the acceptance checks.
    Verify {
        /// `all` or a comma-separated list of criterion numbers.
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Trace { .. } => "trace",
            Command::Complexity { .. } => "complexity",
            Command::Returns { .. } => "returns",
            Command::Rotation { .. } => "rotation",
            Command::Directional { .. } => "directional",
            Command::Verify { .. } => "verify",
        }
    }
}

#[derive(Debug)]
pub enum Failure {
    /// Bad input, with a short reason code.
    Invalid { reason: String, message: String },
    Acceptance(Report),
    Io(std::io::Error),
}

fn emit(cli: &Cli, report: &Report) -> Result<(), Failure> {
    let text = match cli.format {
        Format::Tsv => report.tsv(),
        Format::Json => report.json(),
    };
    let path = cli.out.clone().or_else(|| {
        std::env::var_os("CUBEWORD_OUTPUT_DIR").map(|dir| {
            PathBuf::from(dir).join(format!("{}.{}", cli.command.name(), cli.format.extension()))
        })
    });
    match path {
        Some(p) => {
            if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent).map_err(Failure::Io)?;
            }
            std::fs::write(&p, text).map_err(Failure::Io)
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = run::run(&cli).and_then(|r| emit(&cli, &r));
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid { reason, message }) => {
            eprintln!("error: {reason}: {message}");
            ExitCode::from(1)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: io: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Acceptance(report)) => {
            if let Err(Failure::Io(e)) = emit(&cli, &report) {
                eprintln!("error: io: {e}");
            }
            eprintln!("acceptance failure");
            ExitCode::from(2)
        }
    }
}
