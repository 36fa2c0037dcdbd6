use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use binmat::catalog::{Catalog, Fixtures};
use binmat::enumerate::has_minor;
use binmat::iso::{canonical_form, is_isomorphic};
use binmat::verify::{check_ids, run_many, Report};
use binmat::BinaryMatroid;

const EXIT_FAIL: u8 = 1;
const EXIT_CONFIG: u8 = 2;

#[derive(Parser)]
#[command(name = "binmat")]
#[command(about = "Binary matroid computations and table verification")]
#[command(version)]
struct Cli {
    /// Read fixtures from this directory instead of the built-in copies
    #[arg(long, global = true)]
    fixtures: Option<PathBuf>,

    #[command(subcommand)]
    command: Commands,
}

#[derive(Subcommand)]
enum Commands {
    /// Run registered checks
    Verify {
        #[command(subcommand)]
        action: VerifyAction,
    },
    /// Inspect the named matroids
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Look for a minor of M isomorphic to N
    Minor {
        /// Catalog name or matroid file
        m: String,
        /// Catalog name or matroid file
        n: String,
    },
    /// Decide whether M and N are isomorphic
    Iso { m: String, n: String },
}

#[derive(Subcommand)]
enum VerifyAction {
    /// Run one check
    Run {
        check_id: String,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run every check
    All {
        /// Worker threads (0 = one per core)
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// List check ids
    List,
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Show { name: String },
}

/// Error that maps to the configuration exit code.
struct ConfigError(String);

impl<E: std::fmt::Display> From<E> for ConfigError {
    fn from(e: E) -> Self {
        ConfigError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(ConfigError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_CONFIG)
        }
    }
}

fn load(fixtures: Option<PathBuf>) -> Result<Catalog, ConfigError> {
    let f = fixtures.map(Fixtures::Dir).unwrap_or_default();
    Ok(Catalog::from_fixtures(f)?)
}

/// A catalog name, or failing that a path to a matroid file.
fn resolve(cat: &Catalog, arg: &str) -> Result<BinaryMatroid, ConfigError> {
    if let Ok(m) = cat.matroid(arg) {
        return Ok(m.clone());
    }
    let text = fs::read_to_string(arg).map_err(|e| {
        ConfigError(format!(
            "{arg:?} is neither a catalog name nor a readable file: {e}"
        ))
    })?;
    text.parse().map_err(|e| ConfigError(format!("{arg}: {e}")))
}

fn report(r: &Report, json_path: Option<PathBuf>) -> Result<bool, ConfigError> {
    for c in &r.results {
        let status = if c.passed() { "PASS" } else { "FAIL" };
        println!("{status} {} ({:.2}s)", c.check_id, c.runtime);
    }
    println!("{} passed, {} failed", r.passed, r.failed);
    if let Some(p) = json_path {
        fs::write(&p, r.to_json(true) + "\n")
            .map_err(|e| ConfigError(format!("{}: {e}", p.display())))?;
    }
    Ok(r.all_passed())
}

fn run(cli: Cli) -> Result<bool, ConfigError> {
    match cli.command {
        Commands::Verify { action } => match action {
            VerifyAction::List => {
                for id in check_ids() {
                    println!("{id}");
                }
                Ok(true)
            }
            VerifyAction::Run { check_id, json } => {
                if !check_ids().contains(&check_id.as_str()) {
                    return Err(ConfigError(format!("unknown check {check_id:?}")));
                }
                let cat = load(cli.fixtures)?;
                report(&run_many(&cat, &[check_id.as_str()], 1), json)
            }
            VerifyAction::All { jobs, json } => {
                let cat = load(cli.fixtures)?;
                report(&run_many(&cat, &check_ids(), jobs), json)
            }
        },
        Commands::Catalog { action } => {
            let cat = load(cli.fixtures)?;
            match action {
                CatalogAction::List => {
                    for e in cat.entries() {
                        println!(
                            "{:<28} rank {:>2}  size {:>2}  {}",
                            e.name,
                            e.matroid.rank(),
                            e.matroid.len(),
                            e.provenance
                        );
                    }
                }
                CatalogAction::Show { name } => {
                    let e = cat.get(&name)?;
                    println!("# {}", e.provenance);
                    println!("# expected {}", serde_json::to_string(&e.expected)?);
                    println!("# fingerprint {}", canonical_form(&e.matroid)?.to_hex());
                    print!("{}", e.matroid.to_text());
                }
            }
            Ok(true)
        }
        Commands::Minor { m, n } => {
            let cat = load(cli.fixtures)?;
            let (a, b) = (resolve(&cat, &m)?, resolve(&cat, &n)?);
            match has_minor(&a, &b) {
                Some(w) => {
                    let out = json!({
                        "minor": true,
                        "contract": w.contract_set.to_string(),
                        "delete": w.delete_set.to_string(),
                        "map": w.iso.map,
                    });
                    println!("{}", serde_json::to_string_pretty(&out)?);
                    Ok(true)
                }
                None => {
                    println!("{}", json!({ "minor": false }));
                    Ok(false)
                }
            }
        }
        Commands::Iso { m, n } => {
            let cat = load(cli.fixtures)?;
            let (a, b) = (resolve(&cat, &m)?, resolve(&cat, &n)?);
            match is_isomorphic(&a, &b) {
                Some(iso) => {
                    let out = json!({ "isomorphic": true, "map": iso.map });
                    println!("{}", serde_json::to_string_pretty(&out)?);
                    Ok(true)
                }
                None => {
                    println!("{}", json!({ "isomorphic": false }));
                    Ok(false)
                }
            }
        }
    }
}
