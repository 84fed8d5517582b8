use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use opineq_core::harness::fuzz::{fuzz, Suite};
use opineq_core::harness::output::{
    reports_csv, reports_markdown, summary_csv, summary_markdown, table_csv, table_markdown,
};
use opineq_core::harness::{
    conjecture_search, reproduce_tables, EnsembleKind, EnsembleSpec, SearchConfig,
};
use opineq_core::inequalities::{
    aluthge_reports, beta_reports, block_positivity, eq14_report, newbound_reports, thm7_reports,
    BoundReport, Derived,
};
use opineq_core::{numerical_radius, ComplexMatrix, SweepConfig};

#[derive(Parser)]
#[command(name = "opineq", version, about = "Numerical radius and operator inequality checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Md,
}

#[derive(Subcommand)]
enum Command {
    /// Numerical radius of a matrix given as JSON.
    Radius {
        matrix: PathBuf,
        #[arg(long, default_value_t = 720)]
        grid: usize,
        #[arg(long, default_value_t = 1e-11)]
        tol: f64,
    },
    /// Evaluate bound families on one matrix.
    Bounds {
        matrix: PathBuf,
        /// Comma-separated: thm7, newbound, beta, aluthge, eq14 (needs --second).
        #[arg(long, default_value = "thm7,newbound,beta,aluthge")]
        suite: String,
        /// Second matrix for eq14.
        #[arg(long)]
        second: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Recompute the published comparison tables.
    Tables {
        /// Write one file per table into this directory instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Positivity of the block matrix [[A, C*], [C, B]].
    Positivity {
        a: PathBuf,
        b: PathBuf,
        c: PathBuf,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Run inequality suites over a random ensemble.
    Fuzz {
        /// Comma-separated suite names, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 4)]
        dim: usize,
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value = "integer-complex")]
        kind: String,
        /// Draw each trial's size uniformly from 1..=dim.
        #[arg(long)]
        vary_dim: bool,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Search for T with w((|T|-|T*|)/2 + i Re T) > w(T).
    Conjecture {
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 10_000)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value = "integer-complex")]
        kind: String,
    },
}

enum Status {
    Ok,
    Violation,
}

fn read_matrix(path: &Path) -> Result<ComplexMatrix> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    ComplexMatrix::from_json_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn render_reports(reports: &[BoundReport], format: Format) -> Result<String> {
    Ok(match format {
        Format::Csv => reports_csv(reports)?,
        Format::Md => reports_markdown(reports),
    })
}

fn status_of(reports: &[BoundReport]) -> Status {
    if reports.iter().all(|r| r.holds) {
        Status::Ok
    } else {
        Status::Violation
    }
}

fn run(cli: Cli) -> Result<Status> {
    let cfg = SweepConfig::default();
    match cli.command {
        Command::Radius { matrix, grid, tol } => {
            let t = read_matrix(&matrix)?;
            let cfg = SweepConfig {
                grid_points: grid,
                tol,
                ..cfg
            };
            let r = numerical_radius(&t, &cfg)?;
            let out = json!({
                "omega": r.omega,
                "theta_star": r.theta_star,
                "witness": ComplexMatrix::column_vector(&r.witness).to_json_value(),
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
            Ok(Status::Ok)
        }
        Command::Bounds {
            matrix,
            suite,
            second,
            format,
        } => {
            let t = read_matrix(&matrix)?;
            let d = Derived::new(&t, &cfg)?;
            let mut reports = Vec::new();
            for name in suite.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                match name {
                    "thm7" => reports.extend(thm7_reports(&d)?),
                    "newbound" => {
                        let (a, b) = newbound_reports(&d)?;
                        reports.extend([a, b]);
                    }
                    "beta" => reports.extend(beta_reports(&d)?),
                    "aluthge" => reports.extend(aluthge_reports(&d)?.reports),
                    "eq14" => {
                        let Some(path) = &second else {
                            bail!("suite eq14 needs --second <B.json>");
                        };
                        reports.push(eq14_report(&t, &read_matrix(path)?, &cfg)?);
                    }
                    other => bail!("unknown suite `{other}` for a single matrix"),
                }
            }
            print!("{}", render_reports(&reports, format)?);
            Ok(status_of(&reports))
        }
        Command::Tables { out, format } => {
            let tables = reproduce_tables(&cfg)?;
            let ext = match format {
                Format::Csv => "csv",
                Format::Md => "md",
            };
            if let Some(dir) = &out {
                fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            }
            for (k, table) in tables.iter().enumerate() {
                let text = match format {
                    Format::Csv => table_csv(table)?,
                    Format::Md => table_markdown(table),
                };
                match &out {
                    Some(dir) => {
                        let path = dir.join(format!("{}.{ext}", table.name));
                        fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
                    }
                    None => {
                        if k > 0 {
                            println!();
                        }
                        print!("{text}");
                    }
                }
            }
            let bad: Vec<_> = tables
                .iter()
                .flat_map(|t| t.mismatches().map(move |r| format!("{} row {}", t.name, r.label)))
                .collect();
            if bad.is_empty() {
                Ok(Status::Ok)
            } else {
                eprintln!("mismatched rows: {}", bad.join(", "));
                Ok(Status::Violation)
            }
        }
        Command::Positivity {
            a,
            b,
            c,
            samples,
            seed,
        } => {
            let v = block_positivity(&read_matrix(&a)?, &read_matrix(&b)?, &read_matrix(&c)?, samples, seed)?;
            println!("{}", serde_json::to_string_pretty(&v)?);
            Ok(Status::Ok)
        }
        Command::Fuzz {
            suite,
            dim,
            count,
            seed,
            kind,
            vary_dim,
            format,
        } => {
            let suites = Suite::parse_list(&suite)?;
            let kind: EnsembleKind = kind.parse()?;
            let spec = EnsembleSpec::new(kind, dim, count, seed).with_vary_dim(vary_dim);
            let summary = fuzz(&suites, &spec, &cfg)?;
            match format {
                Format::Csv => print!("{}", summary_csv(&summary)?),
                Format::Md => print!("{}", summary_markdown(&summary)),
            }
            for s in &summary.suites {
                for f in &s.failures {
                    eprintln!("violation: suite {} trial {}: {}", s.suite, f.trial, serde_json::to_string(&f.report)?);
                }
            }
            Ok(if summary.violations() == 0 {
                Status::Ok
            } else {
                Status::Violation
            })
        }
        Command::Conjecture {
            dim,
            count,
            seed,
            kind,
        } => {
            let kind: EnsembleKind = kind.parse()?;
            let spec = EnsembleSpec::new(kind, dim, count, seed);
            let r = conjecture_search(&spec, &SearchConfig::default(), &cfg)?;
            println!("{}", serde_json::to_string_pretty(&r)?);
            Ok(if r.violated { Status::Violation } else { Status::Ok })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Violation) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
