use std::path::PathBuf;
use std::process::ExitCode;

use aaa_lawson::catalog;
use aaa_lawson::driver::{run_problem, run_samples, ApproxReport, Overrides, RunOptions, Winding};
use aaa_lawson::io::{self, Format};
use aaa_lawson::{DomainSpec, Error, SampleSet};
use clap::{Args, Parser, Subcommand};

/// `println!` that tolerates a closed pipe.
macro_rules! outln {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

const EXIT_INPUT: u8 = 2;
const EXIT_REVERTED: u8 = 3;
const EXIT_STUB: u8 = 4;
const EXIT_NUMERICAL: u8 = 5;

/// Rational minimax approximation by AAA followed by Lawson iteration.
#[derive(Parser)]
#[command(name = "aaa-lawson", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Approximate a catalog problem or sampled data.
    Approx {
        #[command(subcommand)]
        source: Source,
    },
    /// Build a grid from a DomainSpec JSON file and print its points as CSV.
    Grid {
        spec: PathBuf,
        /// Write the CSV here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Inspect the problem catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum Source {
    /// Run a named catalog problem.
    Problem {
        name: String,
        #[arg(long)]
        degree: Option<usize>,
        #[command(flatten)]
        run: RunArgs,
        /// Seed for problems on random points.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run on samples from a CSV (re z, im z, re f, im f) or SampleSet JSON file.
    File {
        path: PathBuf,
        #[arg(long)]
        degree: usize,
        #[command(flatten)]
        run: RunArgs,
        /// Treat the samples as an ordered closed curve (enables the winding number).
        #[arg(long)]
        closed: bool,
        /// Dense matrix CSV for f(z) = c^T (zI - A)^-1 b; the input file then only needs points.
        #[arg(long, requires = "vectors")]
        resolvent: Option<PathBuf>,
        /// Two-line CSV holding b and c.
        #[arg(long, requires = "resolvent")]
        vectors: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Take exactly this many Lawson steps.
    #[arg(long = "lawson", value_name = "NSTEPS")]
    nsteps: Option<usize>,
    /// Exponent of the weight update.
    #[arg(long)]
    exponent: Option<f64>,
    /// Directory for exported files.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Comma-separated subset of json,error_csv,history_csv,svg.
    #[arg(long, value_delimiter = ',', default_value = "json,error_csv,history_csv,svg")]
    formats: Vec<String>,
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Print problem names, one per line.
    List {
        /// Print every entry as JSON instead.
        #[arg(long)]
        json: bool,
    },
    /// Write catalog.json into a directory.
    Export {
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Stub { .. } => EXIT_STUB,
        Error::Numerical(_) | Error::WindingUndefined(_) | Error::WindingUnresolved(_) | Error::Consistency(_) => {
            EXIT_NUMERICAL
        }
        _ => EXIT_INPUT,
    }
}

fn formats(list: &[String]) -> Result<Vec<Format>, Error> {
    list.iter().map(|s| s.parse()).collect()
}

fn print_report(r: &ApproxReport) {
    outln!("problem      {}", r.name);
    outln!("degree       {}", r.degree);
    outln!("samples      {}", r.m);
    outln!("aaa error    {:.6e}", r.aaa_max_error);
    outln!("lawson error {:.6e}", r.lawson_max_error);
    outln!("steps        {} ({:?})", r.history.len(), r.stop);
    outln!("reverted     {}", r.reverted);
    match r.winding {
        Winding::Resolved { value } => outln!("winding      {value}"),
        w => outln!("winding      {w:?}"),
    }
    if let Some(f) = r.failure {
        outln!("failure      {f:?}");
    }
    for c in &r.checks {
        outln!("check        {} {} ({})", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
}

fn finish(report: &ApproxReport, run: &RunArgs) -> Result<u8, Error> {
    let fmts = formats(&run.formats)?;
    print_report(report);
    if let Some(dir) = &run.out {
        for p in io::export(report, dir, &fmts)? {
            outln!("wrote        {}", p.display());
        }
    }
    Ok(if report.reverted {
        EXIT_REVERTED
    } else if report.failure.is_some() {
        EXIT_NUMERICAL
    } else {
        0
    })
}

fn options(run: &RunArgs) -> RunOptions {
    let d = RunOptions::default();
    RunOptions {
        nsteps: run.nsteps.unwrap_or(d.nsteps),
        exponent: run.exponent.unwrap_or(d.exponent),
        extend: None,
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Approx {
            source: Source::Problem { name, degree, run, seed },
        } => {
            formats(&run.formats)?;
            let overrides = Overrides {
                degree,
                nsteps: run.nsteps,
                exponent: run.exponent,
                seed,
            };
            let report = run_problem(&name, &overrides)?;
            finish(&report, &run)
        }
        Command::Approx {
            source:
                Source::File {
                    path,
                    degree,
                    run,
                    closed,
                    resolvent,
                    vectors,
                },
        } => {
            formats(&run.formats)?;
            let samples = match (resolvent, vectors) {
                (Some(a), Some(bc)) => {
                    let f = io::load_resolvent(&a, &bc)?;
                    SampleSet::from_fn(io::read_points(&path)?, closed, |z| f.eval(z))?
                }
                _ => {
                    let s = io::read_samples(&path)?;
                    if closed {
                        SampleSet::new(s.points().to_vec(), s.values().to_vec(), true)?
                    } else {
                        s
                    }
                }
            };
            let report = run_samples(&path.display().to_string(), &samples, degree, &options(&run))?;
            finish(&report, &run)
        }
        Command::Grid { spec, out } => {
            let spec: DomainSpec = serde_json::from_str(&std::fs::read_to_string(&spec)?)?;
            let csv = io::points_csv(&spec.build::<f64>()?.points);
            match out {
                Some(p) => std::fs::write(p, csv)?,
                None => {
                    use std::io::Write;
                    let _ = std::io::stdout().write_all(csv.as_bytes());
                }
            }
            Ok(0)
        }
        Command::Catalog {
            action: CatalogAction::List { json },
        } => {
            if json {
                outln!("{}", catalog::to_json());
            } else {
                for e in catalog::entries() {
                    match &e.stub {
                        Some(_) => outln!("{:20} (stub) {}", e.name, e.description),
                        None => outln!("{:20} {}", e.name, e.description),
                    }
                }
            }
            Ok(0)
        }
        Command::Catalog {
            action: CatalogAction::Export { out },
        } => {
            std::fs::create_dir_all(&out)?;
            let path = out.join("catalog.json");
            std::fs::write(&path, catalog::to_json())?;
            outln!("wrote {}", path.display());
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
