//! Batch verification runner: executes named checks at configured
//! precision and prints one report record per check, as a fixed-width
//! table or as JSON.  Exit code 0 means every selected check passed,
//! 1 means at least one failed, 2 means the invocation itself was bad.

use clap::{ArgMatches, CommandFactory, FromArgMatches, Parser, ValueEnum};
use morava2::checks::{render_text, run_checks, CheckConfig, CheckStatus};
use morava2::error::Error;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "morava2",
    version,
    about = "Exact verification of the curve, stabilizer, pairing, and q-expansion formula layer"
)]
struct Cli {
    /// 2-adic working precision N: Witt coefficients live mod 2^N
    #[arg(long, default_value_t = 12)]
    precision_2adic: u32,

    /// u1-adic order M: deformation coefficients live mod u1^M
    #[arg(long, default_value_t = 8)]
    u1_order: u32,

    /// Total-degree cap for z-series (terms of degree >= cap are dropped)
    #[arg(long, default_value_t = 10)]
    series_cap: u32,

    /// q-expansion truncation order Q: q-series live mod q^Q
    #[arg(long, default_value_t = 6)]
    q_order: u32,

    /// Largest x-degree kept in q-expansion series
    #[arg(long, default_value_t = 9)]
    x_degree: u32,

    /// Check id to run (repeatable; defaults to the full battery)
    #[arg(long = "check", value_name = "ID")]
    check: Vec<String>,

    /// Report format
    #[arg(long, value_enum, default_value = "text")]
    format: Format,

    /// Seed for the pseudorandom property samples
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Maximum number of checks run in parallel
    #[arg(long, default_value_t = 1)]
    jobs: usize,

    /// Write the report to this file instead of standard output
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,

    /// Flat key=value config file (keys are the long flag names);
    /// flags given on the command line win over file values
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
}

fn main() -> ExitCode {
    match real_main() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn real_main() -> Result<bool, Box<dyn std::error::Error>> {
    let matches = Cli::command().get_matches();
    let mut cli = Cli::from_arg_matches(&matches)?;
    if let Some(path) = cli.config.clone() {
        merge_config(&mut cli, &matches, &path)?;
    }
    let cfg = CheckConfig {
        n: cli.precision_2adic,
        m: cli.u1_order,
        cap: cli.series_cap,
        q: cli.q_order,
        dx: cli.x_degree,
        seed: cli.seed,
    };
    let reports = run_checks(&cli.check, &cfg, cli.jobs)?;
    let rendered = match cli.format {
        Format::Text => render_text(&reports),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&reports)?;
            s.push('\n');
            s
        }
    };
    match &cli.output {
        Some(path) => std::fs::write(path, &rendered)?,
        None => print!("{rendered}"),
    }
    Ok(reports.iter().all(|r| r.status != CheckStatus::Fail))
}

/// Applies `key=value` lines from `path` to every knob the command
/// line did not set explicitly.
fn merge_config(cli: &mut Cli, matches: &ArgMatches, path: &Path) -> Result<(), Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidConfig(format!("{}: {e}", path.display())))?;
    let from_flag =
        |id: &str| matches.value_source(id) == Some(clap::parser::ValueSource::CommandLine);
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::InvalidConfig(format!("line {}: expected key=value", idx + 1)))?;
        let (key, value) = (key.trim(), value.trim());
        let bad = |e: &dyn std::fmt::Display| Error::InvalidConfig(format!("{key}: {e}"));
        match key {
            "precision-2adic" => {
                if !from_flag("precision_2adic") {
                    cli.precision_2adic = value.parse().map_err(|e| bad(&e))?;
                }
            }
            "u1-order" => {
                if !from_flag("u1_order") {
                    cli.u1_order = value.parse().map_err(|e| bad(&e))?;
                }
            }
            "series-cap" => {
                if !from_flag("series_cap") {
                    cli.series_cap = value.parse().map_err(|e| bad(&e))?;
                }
            }
            "q-order" => {
                if !from_flag("q_order") {
                    cli.q_order = value.parse().map_err(|e| bad(&e))?;
                }
            }
            "x-degree" => {
                if !from_flag("x_degree") {
                    cli.x_degree = value.parse().map_err(|e| bad(&e))?;
                }
            }
            "seed" => {
                if !from_flag("seed") {
                    cli.seed = value.parse().map_err(|e| bad(&e))?;
                }
            }
            "jobs" => {
                if !from_flag("jobs") {
                    cli.jobs = value.parse().map_err(|e| bad(&e))?;
                }
            }
            "format" => {
                if !from_flag("format") {
                    cli.format = Format::from_str(value, true).map_err(|e| bad(&e))?;
                }
            }
            "check" => {
                if !from_flag("check") {
                    cli.check = value
                        .split(',')
                        .map(|s| s.trim().to_string())
                        .filter(|s| !s.is_empty())
                        .collect();
                }
            }
            "output" => {
                if !from_flag("output") {
                    cli.output = Some(PathBuf::from(value));
                }
            }
            _ => return Err(Error::InvalidConfig(format!("unknown config key `{key}`"))),
        }
    }
    Ok(())
}
