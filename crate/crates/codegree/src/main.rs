//! Command-line front end: character tables, codegree sets, case verdicts,
//! generator printing, and catalog verification.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use codegree::builders::{self, BuiltGroup};
use codegree::catalog;
use codegree::chartab;
use codegree::classify;
use codegree::dsl::{self, GroupSpec};
use codegree::error::{Error, Result};
use codegree::group;

#[derive(Parser)]
#[command(name = "codegree", version, about = "Exact character codegrees of finite permutation groups")]
struct Cli {
    /// Output format for machine or human consumption
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Cap on exhaustive element listings (default 100000)
    #[arg(long, global = true)]
    capacity: Option<usize>,
    /// Threads for catalog verification (0 = all cores)
    #[arg(long, default_value_t = 0, global = true)]
    jobs: usize,
    /// Extra seed for randomized fallbacks
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Character table summary: degrees, classes, codegrees
    Table { spec: String },
    /// The set of distinct codegrees only
    Cod { spec: String },
    /// Which four-codegree case the group satisfies
    Classify { spec: String },
    /// Print the generators of a constructed group in cycle notation
    Construct { spec: String },
    /// Check every catalog entry against its annotations
    Verify { path: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(c) = cli.capacity {
        if c == 0 {
            eprintln!("error: --capacity must be at least 1");
            return ExitCode::from(2);
        }
        group::set_default_capacity(c);
    }
    if let Some(s) = cli.seed {
        group::set_rng_seed(s);
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

/// Inline DSL text, or a path to a file holding one spec.
fn load_spec(arg: &str) -> Result<GroupSpec> {
    let trimmed = arg.trim();
    let source = if std::path::Path::new(trimmed).is_file() {
        std::fs::read_to_string(trimmed)
            .map_err(|e| Error::Input(format!("cannot read {}: {}", trimmed, e)))?
    } else {
        trimmed.to_string()
    };
    dsl::parse_spec(&source)
}

fn build_spec(arg: &str) -> Result<BuiltGroup> {
    builders::build(&load_spec(arg)?)
}

fn fmt_set(s: &[u64]) -> String {
    let inner: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", inner.join(", "))
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Table { spec } => {
            let built = build_spec(spec)?;
            let report = chartab::codegree_report(&built.group)?.json_report();
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string(&report)
                        .map_err(|e| Error::Invariant(format!("serialization: {}", e)))?
                ),
                Format::Text => {
                    println!("order      {}", report.order);
                    println!("exponent   {}", report.exponent);
                    println!("classes    {}", report.class_count);
                    println!(
                        "degrees    {}",
                        report
                            .degrees
                            .iter()
                            .map(|d| d.to_string())
                            .collect::<Vec<_>>()
                            .join(" ")
                    );
                    println!("codSet     {}", fmt_set(&report.cod_set));
                    println!("{:>8} {:>10} {:>10}", "degree", "kerOrder", "codegree");
                    for k in &report.kernels {
                        println!("{:>8} {:>10} {:>10}", k.degree, k.kernel_order, k.codegree);
                    }
                }
            }
            Ok(0)
        }
        Command::Cod { spec } => {
            let built = build_spec(spec)?;
            let report = chartab::codegree_report(&built.group)?;
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string(&report.cod_set)
                        .map_err(|e| Error::Invariant(format!("serialization: {}", e)))?
                ),
                Format::Text => println!("{}", fmt_set(&report.cod_set)),
            }
            Ok(0)
        }
        Command::Classify { spec } => {
            let built = build_spec(spec)?;
            let verdict = classify::classify_built(&built)?;
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string(&verdict)
                        .map_err(|e| Error::Invariant(format!("serialization: {}", e)))?
                ),
                Format::Text => {
                    println!("label     {}", verdict.label);
                    println!("codSet    {}", fmt_set(&verdict.cod_set));
                    for e in &verdict.evidence {
                        match &e.witness {
                            Some(w) => println!("  {} = {}  [{}]", e.predicate, e.result, w),
                            None => println!("  {} = {}", e.predicate, e.result),
                        }
                    }
                }
            }
            Ok(0)
        }
        Command::Construct { spec } => {
            let built = build_spec(spec)?;
            let gens: Vec<String> = built
                .group
                .generators()
                .iter()
                .map(|g| g.to_cycle_string())
                .collect();
            match cli.format {
                Format::Json => {
                    let obj = serde_json::json!({
                        "family": built.family,
                        "degree": built.group.degree(),
                        "order": built.group.order(),
                        "generators": gens,
                    });
                    println!(
                        "{}",
                        serde_json::to_string(&obj)
                            .map_err(|e| Error::Invariant(format!("serialization: {}", e)))?
                    );
                }
                Format::Text => {
                    println!("# {} of order {} on {} points", built.family, built.group.order(), built.group.degree());
                    for g in gens {
                        println!("{}", g);
                    }
                }
            }
            Ok(0)
        }
        Command::Verify { path } => {
            let entries = catalog::load_catalog(path)?;
            let report = catalog::classification_round_trip(&entries, cli.jobs)?;
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string(&report)
                        .map_err(|e| Error::Invariant(format!("serialization: {}", e)))?
                ),
                Format::Text => {
                    for r in &report.results {
                        if r.failures.is_empty() {
                            println!(
                                "ok   line {:>3}  {}  -> {}",
                                r.line,
                                r.entry,
                                r.label.as_deref().unwrap_or("?")
                            );
                        } else {
                            println!("FAIL line {:>3}  {}", r.line, r.entry);
                            for f in &r.failures {
                                println!("     {}", f);
                            }
                        }
                    }
                    println!(
                        "{} entries, {} failures",
                        report.results.len(),
                        report.failures
                    );
                }
            }
            Ok(if report.failures == 0 { 0 } else { 1 })
        }
    }
}
