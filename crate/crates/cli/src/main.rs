use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fusionaf::document::{parse, ActionDocument};
use fusionaf::multimatrix::{
    brute_force_commutant, inclusion_between_levels, relative_commutant_shape, DEFAULT_ORACLE_BOUND,
};
use fusionaf::registry;
use fusionaf::stability::{analyze, d_stability_note, AnalyzeOptions, StabilityReport};
use fusionaf::verify_action;

const EXIT_INVALID: u8 = 1;

#[derive(Parser)]
#[command(
    name = "fusionaf",
    version,
    about = "Z-stability certificates for stationary AF-actions of fusion categories"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a document: ring axioms, dual ring axioms and bimodule laws.
    Check { file: PathBuf },
    /// Run the full pipeline and print a report.
    Analyze(AnalyzeArgs),
    /// Built-in example documents.
    #[command(subcommand)]
    Examples(ExamplesCommand),
    /// Brute-force cross-checks.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(required = true)]
    files: Vec<PathBuf>,
    /// Levels to materialize; defaults to twice the primitivity bound, at least 8.
    #[arg(long, env = "FUSIONAF_HORIZON")]
    horizon: Option<usize>,
    /// Largest m for the central-capacity table.
    #[arg(long, default_value_t = 4)]
    max_m: usize,
    /// Append a containment note for a strongly self-absorbing algebra (Z, M_{q^∞}, O_2, O_∞).
    #[arg(long = "note", value_name = "D")]
    notes: Vec<String>,
    /// Write the markdown report here as well.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Write the machine-readable report here.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ExamplesCommand {
    List,
    Emit { name: String, path: PathBuf },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Relative commutant of A_n in A_{n+m}: block formula against explicit elimination.
    Commutant {
        file: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
}

fn load(path: &Path) -> Result<ActionDocument, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse(&text).map_err(|e| format!("{}:\n{e}", path.display()))
}

fn write(path: &Path, contents: &str) -> Result<(), String> {
    fs::write(path, contents).map_err(|e| format!("{}: {e}", path.display()))
}

fn doc_name(doc: &ActionDocument, path: &Path) -> String {
    doc.name.clone().unwrap_or_else(|| {
        path.file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default()
    })
}

fn check(file: &Path) -> Result<u8, String> {
    let doc = load(file)?;
    let action = doc.to_action().map_err(|e| e.to_string())?;
    let mut problems = Vec::new();
    for (what, ring) in [("ring", action.ring()), ("dual ring", action.dual_ring())] {
        problems.extend(
            ring.verify()
                .iter()
                .map(|v| format!("{what}: {}", v.describe(ring))),
        );
    }
    if problems.is_empty() {
        problems.extend(
            verify_action(&action)
                .iter()
                .map(|v| format!("action: {}", v.describe(&action))),
        );
    }
    if problems.is_empty() {
        println!("{}: ok", file.display());
        Ok(0)
    } else {
        println!("{}: {} violation(s)", file.display(), problems.len());
        for p in problems {
            println!("  {p}");
        }
        Ok(EXIT_INVALID)
    }
}

fn analyze_one(
    path: &Path,
    options: &AnalyzeOptions,
    notes: &[String],
) -> Result<StabilityReport, String> {
    let doc = load(path)?;
    let action = doc
        .to_action()
        .map_err(|e| format!("{}: {e}", path.display()))?;
    let mut report = analyze(&doc_name(&doc, path), &action, options).map_err(|e| e.to_string())?;
    for d in notes {
        report = d_stability_note(report, d).map_err(|e| e.to_string())?;
    }
    Ok(report)
}

fn run_analyze(args: &AnalyzeArgs) -> Result<u8, String> {
    let options = AnalyzeOptions {
        horizon: args.horizon,
        max_m: args.max_m,
        ..AnalyzeOptions::default()
    };
    let results: Vec<Result<StabilityReport, String>> = std::thread::scope(|s| {
        let handles: Vec<_> = args
            .files
            .iter()
            .map(|f| s.spawn(|| analyze_one(f, &options, &args.notes)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("analysis thread panicked"))
            .collect()
    });

    let mut code = 0u8;
    let mut markdown = String::new();
    let mut json = Vec::new();
    for r in results {
        match r {
            Ok(report) => {
                let c = u8::try_from(report.verdict.exit_code()).expect("small exit code");
                code = worst(code, c);
                if !markdown.is_empty() {
                    markdown.push('\n');
                }
                markdown.push_str(&report.render_markdown());
                json.push(report);
            }
            Err(e) => {
                eprintln!("{e}");
                code = EXIT_INVALID;
            }
        }
    }
    print!("{markdown}");
    if let Some(path) = &args.report {
        write(path, &markdown)?;
    }
    if let Some(path) = &args.json {
        let text = if json.len() == 1 {
            json[0].to_json()
        } else {
            serde_json::to_string_pretty(&json).expect("reports serialize") + "\n"
        };
        write(path, &text)?;
    }
    Ok(code)
}

/// Invalid input dominates inconclusive, which dominates stable.
fn worst(a: u8, b: u8) -> u8 {
    let rank = |c: u8| match c {
        0 => 0,
        10 => 1,
        _ => 2,
    };
    if rank(b) > rank(a) {
        b
    } else {
        a
    }
}

fn examples(cmd: &ExamplesCommand) -> Result<u8, String> {
    match cmd {
        ExamplesCommand::List => {
            for e in registry::examples() {
                println!("{:<22} {}", e.name, e.description);
            }
            Ok(0)
        }
        ExamplesCommand::Emit { name, path } => {
            let e = registry::example(name).ok_or_else(|| format!("unknown example: {name}"))?;
            write(path, &e.document.emit())?;
            Ok(0)
        }
    }
}

fn oracle(cmd: &OracleCommand) -> Result<u8, String> {
    let OracleCommand::Commutant { file, n, m } = cmd;
    let doc = load(file)?;
    let action = doc.to_action().map_err(|e| e.to_string())?;
    let inc = inclusion_between_levels(&action, *n, *m, n + m).map_err(|e| e.to_string())?;
    let formula = relative_commutant_shape(&inc).total_dimension();
    println!("formula dimension: {formula}");
    match brute_force_commutant(&inc, DEFAULT_ORACLE_BOUND) {
        Ok(d) => println!("brute-force dimension: {d}"),
        Err(e) => println!("brute-force dimension: refused ({e})"),
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check { file } => check(file),
        Command::Analyze(args) => run_analyze(args),
        Command::Examples(cmd) => examples(cmd),
        Command::Oracle(cmd) => oracle(cmd),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INVALID)
        }
    }
}
