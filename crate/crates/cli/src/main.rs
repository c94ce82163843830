mod cache;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use frozen_asm::asymptotics::{
    boundary_cdf, ellipse_residual, sample_curve, tw_convergence_probe, tw_f2, PrecisionConfig,
};
use frozen_asm::method::{MethodOptions, Registry};
use frozen_asm::verify::{run_verify_with, ExternalValue, VerifyMode, VerifyOptions};
use frozen_asm::Error;
use serde_json::{json, Value};

use cache::{Cache, ResultRecord};

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INTEGRITY: u8 = 3;
const EXIT_NUMERIC: u8 = 4;

#[derive(Parser)]
#[command(
    name = "frozen-asm",
    version,
    about = "Count ASMs with a frozen s x s corner"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute B(n, s) with one method.
    Count(CountArgs),
    /// Cross-check methods, golden tables and identities.
    Verify(VerifyArgs),
    /// Large-n quantities.
    #[command(subcommand)]
    Asymp(AsympCommand),
    /// List the available counting methods.
    Methods,
    /// Inspect the result cache.
    #[command(subcommand)]
    Cache(CacheCommand),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct CountArgs {
    #[arg(long, short = 'm', default_value = "conjecture")]
    method: String,
    #[arg(short = 'n')]
    n: u32,
    #[arg(short = 's')]
    s: u32,
    /// Do not append the result to the cache.
    #[arg(long)]
    no_cache: bool,
    /// Lift the size guards of the oracle and mir methods.
    #[arg(long)]
    allow_large: bool,
    /// Print a record instead of the bare value.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 12)]
    n_max: u32,
    /// Compare each method only against the embedded tables.
    #[arg(long, conflicts_with = "conjecture_vs_golden")]
    golden_only: bool,
    /// Compare the determinant route alone against the embedded tables.
    #[arg(long)]
    conjecture_vs_golden: bool,
    /// Let the oracle run up to n = 16.
    #[arg(long)]
    slow: bool,
    /// Ignore cached records.
    #[arg(long)]
    no_cache: bool,
}

#[derive(Args, Clone)]
struct NumericArgs {
    /// Starting significand in bits (default scales with n).
    #[arg(long)]
    bits: Option<u32>,
    /// Starting Gauss-Legendre node count.
    #[arg(long, default_value_t = 64)]
    nodes: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

impl NumericArgs {
    fn config(&self) -> PrecisionConfig {
        PrecisionConfig {
            bits: self.bits,
            nodes: self.nodes,
            ..PrecisionConfig::default()
        }
    }
}

#[derive(Subcommand)]
enum AsympCommand {
    /// Sample the arctic curve.
    Arctic {
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[command(flatten)]
        num: NumericArgs,
    },
    /// P(boundary > s) for one n.
    Cdf {
        #[arg(short = 'n')]
        n: u32,
        /// Largest s in the table (default floor(n/2) + 1).
        #[arg(long)]
        s_max: Option<u32>,
        #[command(flatten)]
        num: NumericArgs,
    },
    /// Tracy-Widom F2 on a grid.
    Tw {
        #[arg(long, default_value_t = -6.0, allow_negative_numbers = true)]
        from: f64,
        #[arg(long, default_value_t = 6.0, allow_negative_numbers = true)]
        to: f64,
        #[arg(long, default_value_t = 25)]
        points: usize,
        #[command(flatten)]
        num: NumericArgs,
    },
    /// Finite-n boundary distribution against F2 at the edge scaling.
    Probe {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        sigma: f64,
        #[arg(long = "n", value_delimiter = ',', default_values_t = [50, 100, 200])]
        ns: Vec<u32>,
        #[command(flatten)]
        num: NumericArgs,
    },
}

#[derive(Subcommand)]
enum CacheCommand {
    /// Print the cache file location.
    Path,
    /// Print every cached record.
    Show {
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
}

/// Failure with its exit status.
struct Fail(u8, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Integrity(_) => EXIT_INTEGRITY,
            Error::Precision(_) | Error::Convergence(_) => EXIT_NUMERIC,
            Error::Domain(_) | Error::Usage(_) | Error::Guard(_) | Error::Validation(_) => {
                EXIT_USAGE
            }
        };
        Fail(code, e.to_string())
    }
}

type CmdResult = Result<(), Fail>;

fn print_table(format: Format, headers: &[&str], rows: &[Vec<Value>]) {
    match format {
        Format::Csv => {
            println!("{}", headers.join(","));
            for row in rows {
                let cells: Vec<String> = row
                    .iter()
                    .map(|v| match v {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    })
                    .collect();
                println!("{}", cells.join(","));
            }
        }
        Format::Json => {
            let objs: Vec<Value> = rows
                .iter()
                .map(|row| {
                    Value::Object(
                        headers
                            .iter()
                            .map(|h| h.to_string())
                            .zip(row.iter().cloned())
                            .collect(),
                    )
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&objs).expect("json"));
        }
    }
}

fn cmd_count(a: &CountArgs) -> CmdResult {
    let reg = Registry::standard(&MethodOptions {
        allow_large: a.allow_large,
        ..MethodOptions::default()
    });
    let counter = reg.get(&a.method)?;
    counter.admit(a.n, a.s)?;
    let start = Instant::now();
    let value = counter.count(a.n, a.s)?;
    let rec = ResultRecord::new(
        counter.name(),
        a.n,
        a.s,
        &value,
        start.elapsed().as_secs_f64(),
    );
    if !a.no_cache {
        let cache = Cache::from_env();
        if let Err(e) = cache.append(&rec) {
            eprintln!("warning: could not write {}: {e}", cache.path().display());
        }
    }
    match a.format {
        None => println!("{}", rec.value),
        Some(Format::Csv) => {
            println!("n,s,method,value");
            println!("{},{},{},{}", rec.n, rec.s, rec.method, rec.value);
        }
        Some(Format::Json) => println!("{}", serde_json::to_string(&rec).expect("json")),
    }
    Ok(())
}

fn cmd_verify(a: &VerifyArgs) -> CmdResult {
    let mode = if a.golden_only {
        VerifyMode::GoldenOnly
    } else if a.conjecture_vs_golden {
        VerifyMode::ConjectureVsGolden
    } else {
        VerifyMode::Full
    };
    let mut extra = Vec::new();
    if !a.no_cache {
        let records = Cache::from_env().load().map_err(|e| Fail(EXIT_USAGE, e))?;
        for r in records.iter().filter(|r| r.n <= a.n_max) {
            let value = r.integer().map_err(|e| Fail(EXIT_USAGE, e))?;
            let label = format!("cache:{}", r.method);
            // Identical repeats collapse; a conflicting repeat gets its own label.
            let clash = extra.iter().any(|e: &ExternalValue| {
                e.n == r.n && e.s == r.s && e.label == label && e.value != value
            });
            let label = if clash {
                format!("{label}#{}", extra.len())
            } else {
                label
            };
            extra.push(ExternalValue {
                n: r.n,
                s: r.s,
                label,
                value,
            });
        }
    }
    let opts = VerifyOptions {
        n_max: a.n_max,
        mode,
        slow: a.slow,
    };
    let report = run_verify_with(&opts, &extra);
    print!("{}", report.render());
    if report.passed() {
        Ok(())
    } else {
        Err(Fail(EXIT_MISMATCH, "verification failed".into()))
    }
}

fn cmd_asymp(c: &AsympCommand) -> CmdResult {
    match c {
        AsympCommand::Arctic { samples, num } => {
            let rows: Vec<Vec<Value>> = sample_curve(*samples)?
                .into_iter()
                .map(|p| {
                    vec![
                        json!(p.omega),
                        json!(p.x),
                        json!(p.y),
                        json!(ellipse_residual(p.x, p.y)),
                    ]
                })
                .collect();
            print_table(num.format, &["omega", "x", "y", "residual"], &rows);
        }
        AsympCommand::Cdf { n, s_max, num } => {
            let cfg = num.config();
            let top = s_max.unwrap_or(n / 2 + 1).min(*n);
            let mut rows = Vec::new();
            for s in 1..=top {
                let e = boundary_cdf(*n, s, &cfg)?;
                rows.push(vec![
                    json!(n),
                    json!(s),
                    json!(e.value),
                    json!(e.error),
                    json!(e.bits),
                ]);
            }
            print_table(
                num.format,
                &["n", "s", "p_boundary", "error", "bits"],
                &rows,
            );
        }
        AsympCommand::Tw {
            from,
            to,
            points,
            num,
        } => {
            let cfg = num.config();
            let mut rows = Vec::new();
            for k in 0..*points {
                let t = if *points > 1 {
                    k as f64 / (*points - 1) as f64
                } else {
                    0.0
                };
                let v = tw_f2(from + (to - from) * t, &cfg)?;
                rows.push(vec![
                    json!(v.sigma),
                    json!(v.value),
                    json!(v.error),
                    json!(v.nodes),
                ]);
            }
            print_table(num.format, &["sigma", "f2", "error", "nodes"], &rows);
        }
        AsympCommand::Probe { sigma, ns, num } => {
            let rows: Vec<Vec<Value>> = tw_convergence_probe(*sigma, ns, &num.config())?
                .into_iter()
                .map(|p| {
                    vec![
                        json!(p.sigma),
                        json!(p.n),
                        json!(p.s),
                        json!(p.cdf.value),
                        json!(p.tw.value),
                        json!(p.gap),
                        json!(p.cdf.error),
                    ]
                })
                .collect();
            print_table(
                num.format,
                &["sigma", "n", "s_scaled", "p_boundary", "f2", "gap", "error"],
                &rows,
            );
        }
    }
    Ok(())
}

fn cmd_cache(c: &CacheCommand) -> CmdResult {
    let cache = Cache::from_env();
    match c {
        CacheCommand::Path => println!("{}", cache.path().display()),
        CacheCommand::Show { format } => {
            let rows: Vec<Vec<Value>> = cache
                .load()
                .map_err(|e| Fail(EXIT_USAGE, e))?
                .into_iter()
                .map(|r| {
                    vec![
                        json!(r.n),
                        json!(r.s),
                        json!(r.method),
                        json!(r.value),
                        json!(r.wall_time),
                        json!(r.tool_version),
                    ]
                })
                .collect();
            print_table(
                *format,
                &["n", "s", "method", "value", "wall_time", "tool_version"],
                &rows,
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.command {
        Command::Count(a) => cmd_count(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Asymp(c) => cmd_asymp(c),
        Command::Methods => {
            for c in Registry::standard(&MethodOptions::default()).iter() {
                println!("{:<12} {}", c.name(), c.summary());
            }
            Ok(())
        }
        Command::Cache(c) => cmd_cache(c),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
