use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use symcoh_core::data::Constants;
use symcoh_core::degeneration::strata_table;
use symcoh_core::expr::{evaluate, parse_expression};
use symcoh_core::monomial::Monomial;
use symcoh_core::ring::basis;
use symcoh_core::verify::{parse_suites, run, VerifyOptions};
use symcoh_core::{CohClass, Error, SpaceSpec, Q};

#[derive(Parser)]
#[command(name = "symcoh", version, about = "Exact cohomology of symmetric products of curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression and print its normal form.
    Eval {
        /// Space on which generators are read, e.g. "sym(5,3) x sym(5,4)".
        #[arg(long)]
        space: String,
        expr: String,
        /// Print the term list as JSON.
        #[arg(long)]
        json: bool,
    },
    /// List the normal-form basis of H^K(C^(N)) for a genus-G curve.
    Basis {
        g: u32,
        n: u32,
        k: u32,
        #[arg(long)]
        json: bool,
    },
    /// Run reproduction checks: ring, gysin, chern, hilbert, cycle, aj, degeneration or all.
    Verify {
        suites: Vec<String>,
        /// Write the report as JSON to this path.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Include the brute-force oracle checks.
        #[arg(long)]
        oracle: bool,
    },
    /// Print a table.
    Table {
        which: TableKind,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKind {
    Strata,
}

const USAGE: u8 = 2;
const FAILURE: u8 = 1;

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    match e {
        Error::Parse { .. } | Error::InvalidSpace(_) => ExitCode::from(USAGE),
        _ => ExitCode::from(FAILURE),
    }
}

fn json_out<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Eval { space, expr, json } => {
            let s: SpaceSpec = match space.parse() {
                Ok(s) => s,
                Err(e) => return fail(&e),
            };
            let e = match parse_expression(&expr) {
                Ok(e) => e,
                Err(e) => return fail(&e),
            };
            match evaluate(&e, &s) {
                Ok(v) if json => println!("{}", json_out(&v.to_json())),
                Ok(v) => println!("{v}"),
                Err(e) => return fail(&e),
            }
        }
        Command::Basis { g, n, k, json } => {
            if n == 0 || k > 2 * n {
                eprintln!("error: need n >= 1 and k <= 2n");
                return ExitCode::from(USAGE);
            }
            let s = SpaceSpec::sym(g, n);
            let monos: Vec<String> = basis(g, n, k)
                .into_iter()
                .map(|m| CohClass::from_terms(&s, [(Monomial::single(m), Q::from_integer(1.into()))]).to_monomial_string())
                .collect();
            if json {
                println!("{}", json_out(&serde_json::json!({ "space": s.to_string(), "degree": k, "basis": monos })));
            } else {
                println!("# H^{k}({s}): {} monomials", monos.len());
                for m in monos {
                    println!("{m}");
                }
            }
        }
        Command::Verify { suites, json, oracle } => {
            let suites = match parse_suites(&suites) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {e}; expected ring, gysin, chern, hilbert, cycle, aj, degeneration or all");
                    return ExitCode::from(USAGE);
                }
            };
            let constants = match Constants::load() {
                Ok(c) => c,
                Err(e) => return fail(&e),
            };
            let report = run(&suites, &VerifyOptions { oracle, constants });
            print!("{}", report.render_text());
            if let Some(path) = json {
                if let Err(e) = std::fs::write(&path, json_out(&report)) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(FAILURE);
                }
            }
            if !report.ok() {
                return ExitCode::from(FAILURE);
            }
        }
        Command::Table { which: TableKind::Strata, json } => {
            let rows = strata_table();
            if json {
                println!("{}", json_out(&rows));
            } else {
                println!("{:<10} {}", "", (0..9).map(|k| format!("{:>5}", format!("h{k}"))).collect::<String>());
                for r in rows {
                    println!("{:<10} {}", r.name, r.betti.iter().map(|b| format!("{b:>5}")).collect::<String>());
                }
            }
        }
    }
    ExitCode::SUCCESS
}
