use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use triple_defect_cli::{dims, exit_code, parse_weights, run, JobSpec, Mode, Output, RunConfig};
use triple_defect_core::Error;

/// Defect and Hodge numbers of hypersurfaces with ordinary triple points.
#[derive(Parser)]
#[command(name = "triple-defect", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find and certify the triple points, then report defect and Hodge numbers.
    Analyze(JobArgs),
    /// List the singular points over a finite field.
    FindSingular(JobArgs),
    /// Certify the listed points as ordinary triple points.
    Verify(JobArgs),
    /// Compute dim I_eq and the defect only.
    Defect(JobArgs),
    /// Analyze the triple cover x4^3 = g of a surface g in P^3.
    TripleCover(JobArgs),
    /// Number of monomials of a given weighted degree.
    Dims(DimsArgs),
}

#[derive(Args)]
struct JobArgs {
    /// Job file with key=value lines.
    #[arg(long)]
    input: PathBuf,
    /// Run both the quotient method and the oracle and require agreement.
    #[arg(long)]
    cross_validate: bool,
    /// Largest degree tried when certifying tangent cones.
    #[arg(long = "kmax")]
    k_max: Option<u32>,
    /// Also write JSON here; `-` prints JSON instead of the table.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Worker threads for the singular point scan.
    #[arg(long)]
    threads: Option<usize>,
    /// Homogenize affine input with this variable.
    #[arg(long)]
    homogenize: Option<String>,
}

#[derive(Args)]
struct DimsArgs {
    #[arg(long, default_value = "1,1,1,1,1")]
    weights: String,
    #[arg(long, allow_hyphen_values = true)]
    degree: i64,
    #[arg(long)]
    json: Option<PathBuf>,
}

fn emit(out: &Output, json: Option<&PathBuf>) -> Result<(), Error> {
    match json {
        Some(p) if p.as_os_str() == "-" => {
            println!(
                "{}",
                serde_json::to_string_pretty(&out.to_json()).expect("serializable")
            );
        }
        Some(p) => {
            print!("{}", out.table());
            let text = serde_json::to_string_pretty(&out.to_json()).expect("serializable");
            std::fs::write(p, text + "\n")
                .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", p.display())))?;
        }
        None => print!("{}", out.table()),
    }
    Ok(())
}

fn job_command(mode: Mode, args: JobArgs) -> Result<(), Error> {
    let text = std::fs::read_to_string(&args.input)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", args.input.display())))?;
    let job = JobSpec::parse(&text)?;
    let mut cfg = RunConfig {
        cross_validate: args.cross_validate,
        k_max: args.k_max,
        homogenize_var: args.homogenize,
        ..RunConfig::default()
    };
    if let Some(t) = args.threads {
        cfg.threads = t;
    }
    let out = run(mode, job, &cfg)?;
    emit(&out, args.json.as_ref())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze(a) => job_command(Mode::Analyze, a),
        Command::FindSingular(a) => job_command(Mode::FindSingular, a),
        Command::Verify(a) => job_command(Mode::Verify, a),
        Command::Defect(a) => job_command(Mode::Defect, a),
        Command::TripleCover(a) => job_command(Mode::TripleCover, a),
        Command::Dims(a) => parse_weights(&a.weights)
            .and_then(|w| dims(&w, a.degree))
            .and_then(|out| emit(&out, a.json.as_ref())),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
