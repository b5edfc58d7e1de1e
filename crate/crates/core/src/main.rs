use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use loopsing::cli::{run, Check, FunctionSource, OutputFormat, RunConfig};

/// Loop-space functional, Milnor number and renormalized nearby cohomology
/// of a homogeneous polynomial.
#[derive(Parser, Debug)]
#[command(name = "loopsing", version)]
struct Args {
    /// Polynomial expression, e.g. "x^3 + y^3".
    #[arg(
        short = 'f',
        long,
        conflicts_with = "file",
        required_unless_present = "file"
    )]
    function: Option<String>,

    /// File holding one expression; lines starting with '#' are ignored.
    #[arg(long)]
    file: Option<PathBuf>,

    /// Window bottom b: poles of order at most b.
    #[arg(long, default_value_t = 1)]
    window: u32,

    /// Last truncation X^n used for cohomology.
    #[arg(long, default_value_t = 4)]
    n_max: u32,

    /// Comma-separated checks to run.
    #[arg(long, value_delimiter = ',', default_values_t = Check::ALL.to_vec(), value_enum)]
    checks: Vec<Check>,

    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,

    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,

    /// Include the full Λ(F) polynomial in the report.
    #[arg(long)]
    emit_lambda: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let function_source = match (args.function, args.file) {
        (Some(expr), _) => FunctionSource::Expression(expr),
        (None, Some(path)) => FunctionSource::File(path),
        (None, None) => unreachable!("clap requires one source"),
    };
    let config = RunConfig {
        function_source,
        window_bottom: args.window,
        n_max: args.n_max,
        checks: args.checks.into_iter().collect(),
        output_format: args.format,
        output_path: args.output,
        emit_lambda: args.emit_lambda,
        cache_dir: None,
    };

    let report = match run(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = match config.output_format {
        OutputFormat::Text => report.to_text(),
        OutputFormat::Structured => report.to_json() + "\n",
    };
    match &config.output_path {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
