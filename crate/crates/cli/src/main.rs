use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cospectral::corpus::DEFAULT_SEED;
use cospectral_cli::commands::{analyze_report, cubelike_report, cubelike_spec, hetero_report, selftest};
use cospectral_cli::report::ReportFile;
use cospectral_cli::spec_file::{GraphSpecFile, InputError};

/// Strongly cospectral subgroups of abelian Cayley graphs.
#[derive(Parser, Debug)]
#[command(name = "cospectral", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for spectrum computation (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone)]
struct CubelikeArgs {
    /// Number of blocks, using the smallest dimensions that meet the bound.
    #[arg(long, conflicts_with = "dims")]
    levels: Option<usize>,
    /// Explicit block dimensions, e.g. 5,17.
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<u32>>,
    /// Accept dimensions that violate the separation bound.
    #[arg(long)]
    force: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Heterocyclic construction on a product of cyclic 2-groups.
    Hetero {
        #[arg(long, value_delimiter = ',', required = true)]
        exponents: Vec<u32>,
        #[arg(long)]
        verify_oracle: bool,
    },
    /// Quadric construction on F_2^n.
    Cubelike {
        #[command(flatten)]
        args: CubelikeArgs,
        #[arg(long)]
        verify_oracle: bool,
    },
    /// Analyze a graph given as a JSON specification file.
    Analyze {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        verify_oracle: bool,
    },
    /// Run the numeric oracles on a graph file or a construction.
    Oracle {
        #[arg(long, conflicts_with_all = ["exponents", "levels", "dims"])]
        input: Option<PathBuf>,
        #[arg(long, value_delimiter = ',')]
        exponents: Option<Vec<u32>>,
        #[command(flatten)]
        args: CubelikeArgs,
    },
    /// Check the constructions and a random corpus against the oracles.
    Selftest {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Number of random graphs.
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
}

enum Output {
    Report(Box<ReportFile>),
    Selftest(cospectral_cli::commands::SelftestReport),
}

fn run(command: Command) -> Result<Output, InputError> {
    let report = match command {
        Command::Hetero { exponents, verify_oracle } => hetero_report(exponents, verify_oracle)?,
        Command::Cubelike { args, verify_oracle } => {
            cubelike_report(&cubelike_spec(args.levels, args.dims, args.force)?, verify_oracle)?
        }
        Command::Analyze { input, verify_oracle } => analyze_report(&GraphSpecFile::read(&input)?, verify_oracle, "analyze")?,
        Command::Oracle { input, exponents, args } => {
            let mut r = match (input, exponents) {
                (Some(path), None) => analyze_report(&GraphSpecFile::read(&path)?, true, "oracle")?,
                (None, Some(j)) if args.levels.is_none() && args.dims.is_none() => hetero_report(j, true)?,
                (None, None) => cubelike_report(&cubelike_spec(args.levels, args.dims, args.force)?, true)?,
                _ => return Err(InputError("give one of --input, --exponents, --levels or --dims".into())),
            };
            r.command = "oracle".into();
            r
        }
        Command::Selftest { seed, count } => return Ok(Output::Selftest(selftest(seed, count)?)),
    };
    Ok(Output::Report(Box::new(report)))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| run(cli.command)),
            Err(e) => Err(InputError(format!("cannot start {n} threads: {e}"))),
        },
        None => run(cli.command),
    };
    let output = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let (text, ok) = match (&output, cli.format) {
        (Output::Report(r), Format::Json) => (r.to_json() + "\n", r.verdict),
        (Output::Report(r), Format::Text) => (r.to_text(), r.verdict),
        (Output::Selftest(s), Format::Json) => (serde_json::to_string_pretty(s).expect("serializes") + "\n", s.passed),
        (Output::Selftest(s), Format::Text) => (s.to_text(), s.passed),
    };
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}
