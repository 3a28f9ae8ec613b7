//! Command-line front end: generate Saito matrices, verify the divisor
//! families, print bracket tables, and run the numerical factorizations.

use clap::{Parser, Subcommand};
use freediv::factor::{self, ComplexMatrix, FactorError, FactorKind, FactorOptions};
use freediv::saito::{self, VerifyReport};
use freediv::spaces::{build_family, Family, ALL_FAMILIES};
use freediv::vfields;

#[derive(Parser)]
#[command(name = "freediv", version, about = "Towers of free divisors on matrix spaces")]
struct Cli {
    /// Pretty-print JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Assemble the Saito matrix and divisor report for one family.
    TowerGen {
        #[arg(long)]
        family: String,
        #[arg(long)]
        m: u32,
    },
    /// Run the full verification pipeline.
    Verify {
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        family: Option<String>,
        #[arg(long, requires = "family")]
        m: Option<u32>,
        /// Verify every family at every admissible size up to --max-m.
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 5, requires = "all")]
        max_m: u32,
    },
    /// Print the Lie bracket table of the generating vector fields.
    BracketTable {
        #[arg(long)]
        family: String,
        #[arg(long)]
        m: u32,
    },
    /// Factor a complex matrix read from a JSON file.
    Factor {
        #[arg(long = "type")]
        kind: String,
        #[arg(long)]
        input: std::path::PathBuf,
    },
    /// Evaluate the existence minors of a factorization at a matrix.
    Conditions {
        #[arg(long = "type")]
        kind: String,
        #[arg(long)]
        input: std::path::PathBuf,
    },
}

fn emit<T: serde::Serialize>(value: &T, pretty: bool) {
    // Round-trip through Value so object keys are sorted and the output
    // is byte-stable.
    let v = serde_json::to_value(value).expect("serializable");
    let s = if pretty {
        serde_json::to_string_pretty(&v).unwrap()
    } else {
        serde_json::to_string(&v).unwrap()
    };
    use std::io::Write;
    // Ignore broken pipes so output can be piped into `head` etc.
    let _ = writeln!(std::io::stdout(), "{}", s);
}

fn usage_error(msg: &str) -> ! {
    eprintln!("error: {}", msg);
    std::process::exit(2);
}

fn parse_family(name: &str) -> Family {
    Family::from_cli_name(name).unwrap_or_else(|_| {
        usage_error(&format!(
            "unknown family '{}'; expected one of: {}",
            name,
            ALL_FAMILIES
                .iter()
                .map(|f| f.cli_name())
                .collect::<Vec<_>>()
                .join(", ")
        ))
    })
}

fn parse_kind(name: &str) -> FactorKind {
    FactorKind::from_cli_name(name).unwrap_or_else(|| {
        usage_error(&format!(
            "unknown factorization type '{}'; expected one of: \
             cholesky, lu, skew-cholesky, mod-lu, mod-lu-rect",
            name
        ))
    })
}

fn read_matrix(path: &std::path::Path) -> ComplexMatrix {
    let text = std::fs::read_to_string(path)
        .unwrap_or_else(|e| usage_error(&format!("cannot read {}: {}", path.display(), e)));
    serde_json::from_str(&text)
        .unwrap_or_else(|e| usage_error(&format!("invalid matrix JSON in {}: {}", path.display(), e)))
}

fn factor_exit(err: FactorError) -> ! {
    eprintln!("error: {}", err);
    match err {
        FactorError::ExistenceConditionViolated { .. } => std::process::exit(3),
        _ => std::process::exit(2),
    }
}

fn fail(err: impl std::fmt::Display) -> ! {
    eprintln!("error: {}", err);
    std::process::exit(1);
}

fn main() {
    let cli = Cli::parse();
    match cli.command {
        Command::TowerGen { family, m } => {
            let family = parse_family(&family);
            let spec = build_family(family, m).unwrap_or_else(|e| usage_error(&e.to_string()));
            let s = saito::assemble(&spec).unwrap_or_else(|e| fail(e));
            let divisor = saito::classify(&s, &spec).unwrap_or_else(|e| fail(e));
            emit(
                &serde_json::json!({ "saito_matrix": s, "divisor": divisor }),
                cli.pretty,
            );
        }
        Command::Verify {
            family,
            m,
            all,
            max_m,
        } => {
            let targets: Vec<(Family, u32)> = if all {
                ALL_FAMILIES
                    .iter()
                    .flat_map(|&f| (f.min_m()..=max_m).map(move |m| (f, m)))
                    .collect()
            } else {
                let f = parse_family(family.as_deref().unwrap());
                let m = m.unwrap_or_else(|| usage_error("--m is required with --family"));
                vec![(f, m)]
            };
            let mut reports: Vec<VerifyReport> = Vec::new();
            for (f, m) in targets {
                match saito::verify_family(f, m) {
                    Ok(r) => reports.push(r),
                    Err(e) => {
                        if all {
                            fail(format!("{} m={}: {}", f.cli_name(), m, e))
                        } else {
                            usage_error(&e.to_string())
                        }
                    }
                }
            }
            let ok = reports.iter().all(|r| r.ok);
            if all {
                emit(&serde_json::json!({ "ok": ok, "results": reports }), cli.pretty);
            } else {
                emit(&reports[0], cli.pretty);
            }
            std::process::exit(if ok { 0 } else { 1 });
        }
        Command::BracketTable { family, m } => {
            let family = parse_family(&family);
            let table = vfields::bracket_table(family, m).unwrap_or_else(|e| fail(e));
            emit(&table, cli.pretty);
        }
        Command::Factor { kind, input } => {
            let kind = parse_kind(&kind);
            let a = read_matrix(&input);
            let opts = FactorOptions::from_env();
            let f = factor::factorize(kind, &a, &opts).unwrap_or_else(|e| factor_exit(e));
            emit(&f, cli.pretty);
        }
        Command::Conditions { kind, input } => {
            let kind = parse_kind(&kind);
            let a = read_matrix(&input);
            let conditions = factor::existence_conditions(kind, &a)
                .unwrap_or_else(|e| factor_exit(e));
            let listed: Vec<(String, [f64; 2])> = conditions
                .into_iter()
                .map(|(n, z)| (n, [z.re, z.im]))
                .collect();
            emit(
                &serde_json::json!({ "kind": kind, "conditions": listed }),
                cli.pretty,
            );
        }
    }
}
