use clap::{Parser, Subcommand, ValueEnum};
use h7kit::exactcore::text::to_text;
use h7kit_cli::registry::{parse_override, RunError};
use h7kit_cli::{checks, report_json, resolve_suites, run_suites, Status};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "h7kit", version, about = "Exact and numeric certificates for level-7 Heisenberg-invariant geometry")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the checks of one or more suites.
    Verify {
        /// heisenberg, septimics, apolarity, vsp, moore, degen, theta or all (repeatable).
        #[arg(long = "suite", default_value = "all")]
        suites: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Tolerance override CHECK_ID=VALUE (repeatable).
        #[arg(long = "tol", value_parser = parse_override)]
        tol: Vec<(String, f64)>,
        /// Write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Print only the summary line.
        #[arg(long)]
        quiet: bool,
    },
    /// Write a polynomial object in the text format.
    Dump {
        #[arg(long, value_enum)]
        object: DumpObject,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the registered checks.
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum DumpObject {
    SeptimicBasis,
    KleinQuartic,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::List => {
            for c in checks() {
                println!("{}\t{}\t{}\t{}", c.id, c.suite, c.description, c.paper_ref);
            }
            ExitCode::SUCCESS
        }
        Command::Dump { object, out } => {
            let text = match object {
                DumpObject::SeptimicBasis => {
                    h7kit::septimics::system().basis.iter().map(|p| to_text(p) + "\n").collect::<String>()
                }
                DumpObject::KleinQuartic => to_text(&h7kit::apolarity::klein().k4p.form) + "\n",
            };
            match out {
                Some(p) => {
                    if let Err(e) = std::fs::write(&p, text) {
                        eprintln!("cannot write {}: {e}", p.display());
                        return ExitCode::from(1);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::SUCCESS
        }
        Command::Verify { suites, seed, tol, json, quiet } => {
            let names = match resolve_suites(&suites) {
                Ok(n) => n,
                Err(e) => return usage(e),
            };
            let overrides: BTreeMap<String, f64> = tol.into_iter().collect();
            let results = match run_suites(&names, seed, &overrides) {
                Ok(r) => r,
                Err(e) => return usage(e),
            };
            if !quiet {
                for r in &results {
                    let status = match r.status {
                        Status::Pass => "PASS",
                        Status::Fail => "FAIL",
                        Status::Skip => "SKIP",
                    };
                    let res = r.residual.map_or_else(|| "-".to_string(), |x| format!("{x:.2e}"));
                    println!("{status}  {:<38} {res:>9}  {}", r.check_id, r.witness);
                }
            }
            let failed = results.iter().filter(|r| r.status == Status::Fail).count();
            println!("{} checks, {} passed, {failed} failed", results.len(), results.len() - failed);
            if let Some(p) = json {
                if let Err(e) = std::fs::write(&p, report_json(&names, seed, &results)) {
                    eprintln!("cannot write {}: {e}", p.display());
                    return ExitCode::from(1);
                }
            }
            if failed == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn usage(e: RunError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(2)
}
