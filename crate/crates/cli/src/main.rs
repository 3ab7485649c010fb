//! `dppcount`: counting statistics of determinantal point processes.
//!
//! Exit codes: 0 on success, 1 when a numerical validation fails, 2 on
//! usage errors.

// `!(x > 0.0)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod output;

use anyhow::Result;
use clap::{ArgGroup, Args, Parser, Subcommand};
use commands::Artifact;
use dppcount::fredholm::Region;
use dppcount::quadrature::DEFAULT_TRUNCATION;
use dppcount::Error;
use output::{Format, Output};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "dppcount", version, about = "Counting statistics of determinantal point processes")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Quadrature order (default: chosen from the interval length and kernel bandwidth)
    #[arg(long, global = true)]
    order: Option<usize>,

    /// Upper cut-off T replacing +∞ for soft-edge intervals
    #[arg(long, global = true, default_value_t = DEFAULT_TRUNCATION, allow_hyphen_values = true)]
    truncation: f64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Operator spectrum λ_l with μ_l = λ_l/(1−λ_l) and generating-function zeros
    #[command(group(ArgGroup::new("region").required(true).args(["interval", "radius"])))]
    Eigs {
        /// Kernel id: sine, sine-plus, sine-minus, airy, airy-conditioned:<s>,
        /// sine-conditioned:<p1>[,<p2>], ginibre-disk
        #[arg(long)]
        kernel: String,
        /// Interval a:b
        #[arg(long, allow_hyphen_values = true)]
        interval: Option<String>,
        /// Disk radius
        #[arg(long)]
        radius: Option<f64>,
    },
    /// Counting distribution E(k; J) with Gaussian comparison and diagnostics
    Count {
        /// Ensemble id: gue-bulk, gue-soft, goe-bulk, gse-bulk, ginibre-disk
        #[arg(long)]
        ensemble: String,
        /// Region parameter: (0, s) in the bulk, (−s, T) at the soft edge, disk radius for Ginibre
        #[arg(long, visible_alias = "radius", allow_hyphen_values = true)]
        s: f64,
    },
    /// Exact distributions beside their Gaussian forms for the reference tables
    Reproduce {
        #[arg(value_enum)]
        artifact: Artifact,
    },
    /// LCLT and CLT distances across a comma-separated list of s values
    Lclt {
        #[arg(long)]
        ensemble: String,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
    },
    /// Spacing density p(k; s) tabulated over a grid of s
    Spacing {
        /// spacing-bulk or kth-largest-soft
        #[arg(long)]
        ensemble: String,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        /// Grid 0..smax
        #[arg(long, conflicts_with = "srange")]
        smax: Option<f64>,
        /// Grid a:b
        #[arg(long, allow_hyphen_values = true)]
        srange: Option<String>,
        #[arg(long, default_value_t = 0.02)]
        step: f64,
    },
}

fn usage(msg: String) -> anyhow::Error {
    Error::InvalidArgument(msg).into()
}

fn parse_pair(label: &str, text: &str) -> Result<(f64, f64)> {
    let (a, b) = text
        .split_once(':')
        .ok_or_else(|| usage(format!("{label} must look like a:b, got `{text}`")))?;
    let parse = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|_| usage(format!("bad number `{t}` in {label} `{text}`")))
    };
    Ok((parse(a)?, parse(b)?))
}

fn parse_list(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<f64>().map_err(|_| usage(format!("bad number `{t}` in s-list"))))
        .collect()
}

fn run(cli: Cli) -> Result<Output> {
    let Common { order, truncation, .. } = cli.common;
    match cli.command {
        Command::Eigs {
            kernel,
            interval,
            radius,
        } => {
            let region = match (interval, radius) {
                (Some(text), None) => {
                    let (a, b) = parse_pair("--interval", &text)?;
                    Region::Interval { a, b }
                }
                (None, Some(radius)) => Region::Disk { radius },
                _ => return Err(usage("give exactly one of --interval or --radius".into())),
            };
            commands::eigs(&kernel, region, order, truncation)
        }
        Command::Count { ensemble, s } => commands::count(&ensemble, s, order, truncation),
        Command::Reproduce { artifact } => commands::reproduce(artifact, order, truncation),
        Command::Lclt { ensemble, s } => commands::lclt(&ensemble, &parse_list(&s)?, order, truncation),
        Command::Spacing {
            ensemble,
            k,
            smax,
            srange,
            step,
        } => {
            let k = usize::try_from(k).map_err(|_| usage(format!("--k must be nonnegative, got {k}")))?;
            let (start, end) = match (smax, srange) {
                (Some(smax), _) => (0.0, smax),
                (None, Some(text)) => parse_pair("--srange", &text)?,
                (None, None) if ensemble == "kth-largest-soft" => (-6.0, 6.0),
                (None, None) => (0.0, 6.0),
            };
            let grid = commands::grid(start, end, step)?;
            commands::spacing(&ensemble, k, &grid, order, truncation)
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(e) if e.is_usage() => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.common.format;
    let out = cli.common.out.clone();
    let result = run(cli).and_then(|output| {
        let bytes = output.render(format)?;
        match out {
            Some(path) => std::fs::write(&path, bytes)?,
            None => std::io::stdout().lock().write_all(&bytes)?,
        }
        Ok(())
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("dppcount: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
