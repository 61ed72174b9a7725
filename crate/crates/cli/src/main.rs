mod commands;
mod functional;
mod report;

use std::io::Write;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use functional::FunctionalArg;

#[derive(Parser, Debug)]
#[command(name = "locdet", version, about = "Exact f-vector functionals and local-determinability checks")]
struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// f-vector, Euler characteristic, Charney–Davis value and structural flags.
    Fvector { file: PathBuf },
    /// Build a named complex and write it in the JSON complex format.
    Construct(ConstructArgs),
    /// Residuals of a vertex-local formula over a family.
    VerifyLocal(VerifyLocalArgs),
    /// Decide local determinability over a family and print the witness or certificate.
    SolveLd(SolveLdArgs),
    /// Exhaustive check of the binomial coefficient identities.
    Identities {
        #[arg(long, default_value_t = 3)]
        pmax: u32,
    },
    /// Embedded-complex checks.
    Geometry {
        #[command(subcommand)]
        command: GeometryCommand,
    },
}

#[derive(Args, Debug)]
struct ConstructArgs {
    /// Attach coordinates (cycle, simplex-boundary, tst).
    #[arg(long, global = true)]
    embed: bool,
    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    kind: ConstructKind,
}

#[derive(Subcommand, Debug)]
pub enum ConstructKind {
    Cycle {
        #[arg(long)]
        n: u32,
    },
    SimplexBoundary {
        #[arg(long)]
        k: u32,
    },
    Suspension {
        #[arg(long)]
        input: PathBuf,
    },
    ZeroSphere,
    /// Join of `s` copies of C_n and `t` copies of C_m.
    Tst {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        t: u32,
        #[arg(long, default_value_t = 4)]
        n: u32,
        #[arg(long, default_value_t = 5)]
        m: u32,
    },
}

#[derive(Args, Debug)]
struct VerifyLocalArgs {
    #[arg(long)]
    functional: FunctionalArg,
    #[arg(long, num_args = 1.., required = true)]
    family: Vec<PathBuf>,
    /// Formula for families sharing Euler characteristic E (nonzero).
    #[arg(long, value_name = "E", conflicts_with = "part2")]
    part1: Option<String>,
    /// Formula for functionals with zero constant term.
    #[arg(long)]
    part2: bool,
}

#[derive(Args, Debug)]
struct SolveLdArgs {
    #[arg(long)]
    functional: FunctionalArg,
    #[arg(long, num_args = 1.., conflicts_with = "demo", required_unless_present = "demo")]
    family: Vec<PathBuf>,
    /// Counterexample family T_{p-u,u}, u = 0..=p.
    #[arg(long, num_args = 3, value_names = ["P", "N", "M"])]
    demo: Option<Vec<u32>>,
    /// Unknowns are star-isometry classes of embedded complexes.
    #[arg(long)]
    geometric: bool,
    /// Distance tolerance for star isometries.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Subcommand, Debug)]
enum GeometryCommand {
    /// Gram relation per facet, Σφ residual and star classes.
    Check {
        file: PathBuf,
        #[arg(long, default_value = "euler")]
        functional: FunctionalArg,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Fvector { file } => commands::fvector(&file),
        Command::Construct(a) => commands::construct(&a.kind, a.embed, a.out.as_deref()),
        Command::VerifyLocal(a) => commands::verify_local(&a.functional, &a.family, a.part1.as_deref(), a.part2),
        Command::SolveLd(a) => commands::solve_ld(&a.functional, &a.family, a.demo.as_deref(), a.geometric, a.tol),
        Command::Identities { pmax } => commands::identities(pmax),
        Command::Geometry { command: GeometryCommand::Check { file, functional, tol, seed, samples } } => {
            commands::geometry_check(&file, &functional, tol, seed, samples)
        }
    };
    match result {
        Ok(commands::Output::Report(report, code)) => {
            let text = if cli.json { format!("{}\n", report.to_json()) } else { report.to_table() };
            emit(&text);
            ExitCode::from(code)
        }
        Ok(commands::Output::Raw(text)) => {
            emit(&format!("{text}\n"));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

// a closed pipe (e.g. `| head`) is not an error worth a panic
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}
