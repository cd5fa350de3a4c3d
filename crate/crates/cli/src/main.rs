mod error;
mod expr;
mod suites;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use error::CliError;
use suites::{Skipped, Suite, SuiteConfig, SuiteRun};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(
    name = "qgrass",
    version,
    about = "Exact verification suites for quantum grassmannians"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a verification suite
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Degree bound for the domain probe
        #[arg(long, default_value_t = 2)]
        degree_bound: usize,
        /// Seed for sampled checks
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Number of sampled triples or pairs in sampled checks
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Record wall-clock time per suite (output is then not reproducible)
        #[arg(long)]
        timing: bool,
    },
    /// Evaluate an expression over maximal minors to normal form
    Compute {
        expr: String,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Serialize)]
struct CheckOut<'a> {
    name: &'a str,
    suite: &'a str,
    status: qgrass::Status,
    elapsed_ms: u128,
    params: &'a Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<&'a str>,
}

fn render_json(cfg: &SuiteConfig, runs: &[SuiteRun], skipped: &[Skipped], timing: bool) -> Result<String, CliError> {
    let checks: Vec<CheckOut> = runs
        .iter()
        .flat_map(|run| {
            run.report.checks.iter().map(move |c| CheckOut {
                name: &c.check,
                suite: run.suite.name(),
                status: c.status,
                elapsed_ms: if timing { run.elapsed_ms } else { 0 },
                params: &c.params,
                witness: c.witness.as_deref(),
            })
        })
        .collect();
    let failed = checks.iter().filter(|c| c.status == qgrass::Status::Fail).count();
    let doc = json!({
        "version": VERSION,
        "params": { "m": cfg.m, "n": cfg.n, "suite": cfg.suite, "seed": cfg.seed, "degree_bound": cfg.degree_bound },
        "checks": checks,
        "skipped": skipped,
        "summary": { "total": checks.len(), "failed": failed },
    });
    Ok(serde_json::to_string_pretty(&doc)? + "\n")
}

fn render_text(cfg: &SuiteConfig, runs: &[SuiteRun], skipped: &[Skipped], timing: bool) -> String {
    let mut out = format!(
        "qgrass {VERSION} verify suite={} m={} n={}\n",
        cfg.suite.name(),
        cfg.m,
        cfg.n
    );
    let (mut total, mut failed) = (0, 0);
    for run in runs {
        for c in &run.report.checks {
            total += 1;
            let status = if c.passed() { "ok  " } else { "FAIL" };
            failed += usize::from(!c.passed());
            out.push_str(&format!("{status} {:<10} {} {}", run.suite.name(), c.check, c.params));
            if let Some(w) = &c.witness {
                out.push_str(&format!("  :: {w}"));
            }
            out.push('\n');
        }
        if timing {
            out.push_str(&format!("time {:<10} {} ms\n", run.suite.name(), run.elapsed_ms));
        }
    }
    for s in skipped {
        out.push_str(&format!("skip {:<10} {}\n", s.suite.name(), s.reason));
    }
    out.push_str(&format!("summary: {total} checks, {failed} failed\n"));
    out
}

fn execute(cli: Cli) -> Result<bool, CliError> {
    let mut stdout = std::io::stdout().lock();
    match cli.command {
        Command::Verify {
            suite,
            m,
            n,
            format,
            degree_bound,
            seed,
            samples,
            timing,
        } => {
            let cfg = SuiteConfig {
                m,
                n,
                suite,
                degree_bound,
                seed,
                samples,
            };
            let (runs, skipped) = suites::run(&cfg)?;
            let text = match format {
                Format::Json => render_json(&cfg, &runs, &skipped, timing)?,
                Format::Text => render_text(&cfg, &runs, &skipped, timing),
            };
            stdout.write_all(text.as_bytes())?;
            Ok(runs.iter().all(|r| r.report.all_ok()))
        }
        Command::Compute { expr, m, n, format } => {
            if m == 0 || m >= n || n > u8::MAX as usize {
                return Err(CliError::Config(format!(
                    "need 1 <= m < n <= 255, got m = {m}, n = {n}"
                )));
            }
            let value = expr::evaluate(&expr, m, n)?;
            let text = match format {
                Format::Text => format!("{value}\n"),
                Format::Json => {
                    let doc = json!({
                        "version": VERSION,
                        "params": { "m": m, "n": n },
                        "expr": expr,
                        "value": value.to_string(),
                        "terms": value.len(),
                    });
                    serde_json::to_string_pretty(&doc)? + "\n"
                }
            };
            stdout.write_all(text.as_bytes())?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
