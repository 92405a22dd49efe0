mod catalog;
mod error;
mod run;
mod scenario;
mod svg;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use error::CliError;
use run::Options;
use scenario::Scenario;

#[derive(Parser)]
#[command(name = "amenact", version, about = "Entropy of amenable monoid actions on discrete abelian groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file, or a built-in scenario by name.
    Run {
        file: String,
        /// Output directory (default: amenact-out/<scenario>).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        prefix: Option<usize>,
        #[arg(long)]
        budget: Option<usize>,
        /// Base for logarithms in the printed summary; CSV files always use natural logs.
        #[arg(long, default_value_t = std::f64::consts::E)]
        log_base: f64,
    },
    /// List the built-in scenarios.
    List,
    /// Show the schema of a scenario kind.
    Describe { kind: String },
    /// Print a built-in scenario file.
    Show { name: String },
}

fn load(file: &str) -> Result<(String, String), CliError> {
    let path = Path::new(file);
    if path.exists() {
        let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "scenario".into());
        return Ok((stem, std::fs::read_to_string(path)?));
    }
    match catalog::builtin(file) {
        Some(text) => Ok((file.to_string(), text.to_string())),
        None => Err(CliError::Schema(format!("{file}: no such file or built-in scenario"))),
    }
}

fn run(file: &str, out: Option<PathBuf>, opts: Options) -> Result<(), CliError> {
    if !(opts.log_base > 0.0 && opts.log_base != 1.0) {
        return Err(CliError::Schema(format!("--log-base must be positive and not 1, got {}", opts.log_base)));
    }
    let (name, text) = load(file)?;
    let scenario = Scenario::parse(&text)?;
    let report = run::run(&scenario, &opts)?;
    println!("scenario {name} ({})", scenario.kind());
    if let Some(t) = scenario.title() {
        println!("  {t}");
    }
    for l in &report.lines {
        println!("  {l}");
    }
    let dir = out.unwrap_or_else(|| Path::new("amenact-out").join(&name));
    std::fs::create_dir_all(&dir)?;
    for (f, contents) in &report.files {
        std::fs::write(dir.join(f), contents)?;
        println!("  wrote {}", dir.join(f).display());
    }
    if let Some(f) = report.failure {
        return Err(CliError::Assertion(f));
    }
    if let Some(b) = report.budget {
        return Err(CliError::Budget(b));
    }
    println!("ok");
    Ok(())
}

fn describe(kind: &str) -> Result<(), CliError> {
    let doc = catalog::kind(kind).ok_or_else(|| {
        let known: Vec<&str> = catalog::KINDS.iter().map(|k| k.kind).collect();
        CliError::Schema(format!("unknown kind {kind:?}; kinds are {}", known.join(", ")))
    })?;
    println!("{}: {}", doc.kind, doc.summary);
    println!("fields:");
    println!("  kind = \"{}\"", doc.kind);
    for (f, d) in doc.fields {
        println!("  {f:<14} {d}");
    }
    println!("output: {}", doc.csv);
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run { file, out, prefix, budget, log_base } => run(&file, out, Options { prefix, budget, log_base }),
        Command::List => {
            for (name, text) in catalog::BUILTINS {
                let kind = Scenario::parse(text).map(|s| s.kind()).unwrap_or("?");
                println!("{name:<24} {kind:<18} {}", catalog::header(text));
            }
            Ok(())
        }
        Command::Describe { kind } => describe(&kind),
        Command::Show { name } => match catalog::builtin(&name) {
            Some(t) => {
                print!("{t}");
                Ok(())
            }
            None => Err(CliError::Schema(format!("no built-in scenario {name:?}"))),
        },
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
