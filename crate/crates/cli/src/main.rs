use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use involution::FieldSpec;
use involution_cli::{parse_script, random_suite, render, run_script, Report, Style};

#[derive(Parser)]
#[command(name = "involution", version, about = "Verify involution claims, run property suites, draw diagrams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every claim in a script.
    Verify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Run the randomized property suite.
    Random {
        /// `q` or `fp:<prime>`.
        #[arg(long, value_parser = parse_field)]
        field: FieldSpec,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        cases: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Draw the pairs of a script as an SVG number line.
    Render {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    if s.eq_ignore_ascii_case("q") {
        return Ok(FieldSpec::RATIONALS);
    }
    let p = s
        .strip_prefix("fp:")
        .ok_or_else(|| format!("expected `q` or `fp:<p>`, got `{s}`"))?
        .parse::<u64>()
        .map_err(|e| e.to_string())?;
    FieldSpec::prime(p).map_err(|e| e.to_string())
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn load(file: &PathBuf) -> Result<involution_cli::dsl::ast::Script, ExitCode> {
    let text = std::fs::read_to_string(file).map_err(|e| usage_error(format!("{}: {e}", file.display())))?;
    parse_script(&text).map_err(|e| usage_error(format!("{}:{e}", file.display())))
}

fn emit(report: &Report, json: bool) -> ExitCode {
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{report}");
    }
    ExitCode::from(report.exit_code() as u8)
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Verify { file, json } => match load(&file) {
            Ok(script) => emit(&run_script(&script), json),
            Err(code) => code,
        },
        Command::Random { field, cases, seed, json } => emit(&random_suite(field, cases as usize, seed), json),
        Command::Render { file, output } => {
            let script = match load(&file) {
                Ok(s) => s,
                Err(code) => return code,
            };
            match render(&script, &Style::default()) {
                Ok(svg) => match std::fs::write(&output, svg) {
                    Ok(()) => ExitCode::SUCCESS,
                    Err(e) => usage_error(format!("{}: {e}", output.display())),
                },
                Err(e) => usage_error(format!("{}: {e}", e.kind())),
            }
        }
    }
}
