use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use choquet_rn::spec::{parse_spec, SpecFile};
use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use choquet_rn_cli::commands::{self, Names};
use choquet_rn_cli::registry::{self, ExampleId};
use choquet_rn_cli::report::{Input, RunReport};

/// Exact Choquet integrals, decomposition checks and Radon-Nikodym
/// derivatives for monotone measures on finite spaces.
#[derive(Debug, Parser)]
#[command(name = "choquet-rn", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Spec file (JSON) with atoms, measures, functions, family or truncations.
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Name of the measure playing the role of mu.
    #[arg(long, global = true, default_value = "mu")]
    mu: String,

    /// Name of the reference measure nu.
    #[arg(long, global = true, default_value = "nu")]
    nu: String,

    #[arg(long, global = true, default_value = "f")]
    f: String,

    #[arg(long, global = true, default_value = "g")]
    g: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Null-additivity classifiers and absolute continuity of mu w.r.t. nu.
    Props,
    /// Choquet integral of f against nu over a set, with its layer breakdown.
    Integrate {
        /// Comma-separated atoms; defaults to the whole space.
        #[arg(long)]
        set: Option<String>,
    },
    /// Whether f and g are comonotone.
    Comonotone,
    /// Check the family's two-sided inequalities and tail condition.
    CheckDecomposition,
    /// Derivative read off the family.
    Derive,
    /// Dyadic approximant of the derived function.
    Dyadic {
        #[arg(long, default_value_t = 4)]
        n: u32,
    },
    /// Check mu(A) = integral of f over A against nu for every set A.
    Verify,
    /// Decide whether any derivative exists; certificate either way.
    Solve,
    /// Additive pairs: Hahn sets, ratio derivative and the general solver.
    Classical,
    /// Glue derivatives over nested truncations and verify them.
    SigmaFinite {
        /// Depth to truncate the model to.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Run a named worked example.
    Example {
        id: ExampleId,
        /// Truncation depth for ex-4-4.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Randomized consistency checks.
    Suite {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
}

enum Failure {
    Usage(String),
    Input(String),
}

impl From<choquet_rn::Error> for Failure {
    fn from(e: choquet_rn::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn digest(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

fn read_input(path: &PathBuf) -> Result<(Input, SpecFile), Failure> {
    let bytes = fs::read(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone()).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let spec = parse_spec(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let input = Input {
        source: path.display().to_string(),
        sha256: digest(&bytes),
    };
    Ok((input, spec))
}

fn execute(cli: &Cli, argv: Vec<String>) -> Result<RunReport, Failure> {
    let names = Names {
        mu: cli.mu.clone(),
        nu: cli.nu.clone(),
        f: cli.f.clone(),
        g: cli.g.clone(),
    };
    match &cli.command {
        Command::Suite { seed, count } => {
            let outcome = commands::suite(*seed, *count)?;
            return Ok(RunReport::new(argv, None, None, outcome));
        }
        Command::Example { id, n } => {
            if cli.input.is_some() {
                return Err(Failure::Usage("example takes no --input".into()));
            }
            let spec = registry::spec(*id, *n);
            let canonical = serde_json::to_vec(&spec).expect("spec serializes");
            let input = Input {
                source: format!("example {}", id.to_possible_value().expect("named").get_name()),
                sha256: digest(&canonical),
            };
            let outcome = registry::run(*id, &spec)?;
            return Ok(RunReport::new(argv, Some(input), Some(spec), outcome));
        }
        _ => {}
    }
    let path = cli
        .input
        .as_ref()
        .ok_or_else(|| Failure::Usage("this command needs --input <spec.json>".into()))?;
    let (input, file) = read_input(path)?;
    let spec = file
        .load()
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let outcome = match &cli.command {
        Command::Props => commands::props(&spec, &names)?,
        Command::Integrate { set } => commands::integrate(&spec, &names, set.as_deref())?,
        Command::Comonotone => commands::comonotone(&spec, &names)?,
        Command::CheckDecomposition => commands::check(&spec, &names)?,
        Command::Derive => commands::derive(&spec, &names)?,
        Command::Dyadic { n } => commands::dyadic(&spec, &names, *n)?,
        Command::Verify => commands::verify(&spec, &names)?,
        Command::Solve => commands::solve(&spec, &names)?,
        Command::Classical => commands::classical(&spec, &names)?,
        Command::SigmaFinite { n } => commands::sigma_finite(&spec, *n)?,
        Command::Example { .. } | Command::Suite { .. } => unreachable!("handled above"),
    };
    Ok(RunReport::new(argv, Some(input), Some(file), outcome))
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let report = match execute(&cli, argv[1..].to_vec()) {
        Ok(report) => report,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(3);
        }
    };
    let rendered = match cli.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, rendered) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(3);
            }
        }
        None => print!("{rendered}"),
    }
    ExitCode::from(report.exit_status)
}
