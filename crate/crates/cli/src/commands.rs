//! Subcommand implementations.

use crate::output::{finite, flag, prob, sum, Metadata, Output, RegionOut, RunRecord, Table};
use anyhow::Result;
use dppcount::counting::{
    count_distribution, lclt_report, mean_variance, DEFAULT_LOG_CONCAVITY_FLOOR,
};
use dppcount::ensembles::{
    kth_largest_location, trapezoid, EnsembleParams, EnsembleRegistry, EnsembleResult,
    SpacingParams,
};
use dppcount::fredholm::Region;
use dppcount::sources::KernelRegistry;
use dppcount::special::gaussian_pdf;
use dppcount::Error;
use rayon::prelude::*;
use std::sync::Arc;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

fn region_out(region: &Region) -> RegionOut {
    match *region {
        Region::Interval { a, b } => RegionOut { a, b },
        Region::Disk { radius } => RegionOut { a: 0.0, b: radius },
    }
}

fn metadata(truncation: f64, clamped: usize) -> Metadata {
    Metadata {
        truncation,
        clamped,
        version: VERSION,
    }
}

fn ensemble_record(command: &str, r: &EnsembleResult, truncation: f64) -> RunRecord {
    let d = &r.distribution;
    let (lambdas, clamped) = match r.spectrum() {
        Some(s) => (s.lambdas.clone(), s.clamp_report.clamped),
        None => (Vec::new(), 0),
    };
    RunRecord {
        command: command.into(),
        kernel: r.ensemble.clone(),
        region: Some(region_out(&r.region)),
        order: r.order,
        lambdas,
        mu: Some(d.mu),
        sigma2: Some(d.sigma2),
        e: d.probabilities.clone(),
        lclt_sup: Some(r.lclt.lclt_sup),
        clt_sup: Some(r.lclt.clt_sup),
        log_concave: Some(r.lclt.log_concave),
        metadata: metadata(truncation, clamped),
        s: Some(r.s),
        gaussian: Some(r.lclt.per_k.iter().map(|row| row.gaussian).collect()),
        zeros: None,
        density: None,
        integral: None,
    }
}

fn run_ensemble(id: &str, s: f64, order: Option<usize>, truncation: f64) -> Result<EnsembleResult> {
    let registry = EnsembleRegistry::with_builtins();
    let ensemble = registry.ensemble(id)?;
    let params = EnsembleParams { s, order, truncation };
    Ok(ensemble.run(&params)?)
}

/// Operator spectrum with μ_l = λ_l/(1 − λ_l) and Ξ zeros z_l = −1/μ_l.
pub fn eigs(kernel: &str, region: Region, order: Option<usize>, truncation: f64) -> Result<Output> {
    let source = KernelRegistry::with_builtins().resolve(kernel)?;
    let spectrum = Arc::new(source.spectrum(&region, order)?);
    let lambdas = spectrum.lambdas.clone();
    let mus = spectrum.mus();
    let zeros: Vec<f64> = lambdas.iter().map(|&l| -(1.0 - l) / l).collect();

    let (mu, sigma2) = mean_variance(&lambdas)?;
    let dist = count_distribution(spectrum.clone())?;
    let report = lclt_report(&dist, DEFAULT_LOG_CONCAVITY_FLOOR).ok();

    let mut table = Table::new(vec!["l", "lambda", "mu_l", "zero"]);
    for (l, ((&lam, &m), &z)) in lambdas.iter().zip(&mus).zip(&zeros).enumerate() {
        table.push(vec![l.to_string(), sum(lam), sum(m), sum(z)]);
    }
    let record = RunRecord {
        command: "eigs".into(),
        kernel: source.name(),
        region: Some(region_out(&region)),
        order: spectrum.quad_order,
        lambdas,
        mu: Some(mu),
        sigma2: Some(sigma2),
        e: dist.probabilities.clone(),
        lclt_sup: report.as_ref().map(|r| r.lclt_sup),
        clt_sup: report.as_ref().map(|r| r.clt_sup),
        log_concave: report.as_ref().map(|r| r.log_concave),
        metadata: metadata(truncation, spectrum.clamp_report.clamped),
        s: None,
        gaussian: None,
        zeros: Some(zeros.into_iter().map(finite).collect()),
        density: None,
        integral: None,
    };
    Ok(Output {
        json: serde_json::to_value(record)?,
        table,
    })
}

/// Counting distribution with its Gaussian comparison and diagnostics.
pub fn count(ensemble: &str, s: f64, order: Option<usize>, truncation: f64) -> Result<Output> {
    let r = run_ensemble(ensemble, s, order, truncation)?;
    let d = &r.distribution;
    let mut table = Table::new(vec![
        "k", "E", "gaussian", "difference", "mu", "sigma2", "lclt_sup", "clt_sup", "log_concave",
    ]);
    for row in &r.lclt.per_k {
        table.push(vec![
            row.k.to_string(),
            prob(row.probability),
            prob(row.gaussian),
            prob(row.difference),
            sum(d.mu),
            sum(d.sigma2),
            prob(r.lclt.lclt_sup),
            prob(r.lclt.clt_sup),
            flag(r.lclt.log_concave),
        ]);
    }
    let record = ensemble_record("count", &r, truncation);
    Ok(Output {
        json: serde_json::to_value(record)?,
        table,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Artifact {
    Table1,
    Table2,
    Softedge,
}

/// Exact E(k) beside the Gaussian form built from the computed μ and σ².
pub fn reproduce(artifact: Artifact, order: Option<usize>, truncation: f64) -> Result<Output> {
    let (runs, ks): (Vec<(&str, f64)>, Vec<usize>) = match artifact {
        Artifact::Table1 => (vec![("gue-bulk", 10.0)], (7..=13).collect()),
        Artifact::Table2 => (vec![("goe-bulk", 10.0), ("gse-bulk", 10.0)], (7..=13).collect()),
        Artifact::Softedge => (vec![("gue-soft", kth_largest_location(10.0))], (8..=12).collect()),
    };
    let results = runs
        .par_iter()
        .map(|&(id, s)| run_ensemble(id, s, order, truncation))
        .collect::<Result<Vec<_>>>()?;

    let mut table = Table::new(vec!["ensemble", "k", "exact", "gaussian", "mu", "sigma2"]);
    let mut records = Vec::new();
    for r in &results {
        let d = &r.distribution;
        for &k in &ks {
            let g = gaussian_pdf((k as f64 - d.mu) / d.sigma()) / d.sigma();
            table.push(vec![
                r.ensemble.clone(),
                k.to_string(),
                prob(d.get(k)),
                prob(g),
                sum(d.mu),
                sum(d.sigma2),
            ]);
        }
        records.push(ensemble_record("reproduce", r, truncation));
    }
    Ok(Output {
        json: serde_json::to_value(records)?,
        table,
    })
}

/// Per-s LCLT and CLT distances, computed in parallel and ordered by input.
pub fn lclt(ensemble: &str, s_list: &[f64], order: Option<usize>, truncation: f64) -> Result<Output> {
    if s_list.is_empty() {
        return Err(Error::InvalidArgument("the s-list is empty".into()).into());
    }
    EnsembleRegistry::with_builtins().ensemble(ensemble)?;
    let results = s_list
        .par_iter()
        .map(|&s| run_ensemble(ensemble, s, order, truncation))
        .collect::<Result<Vec<_>>>()?;

    let mut table = Table::new(vec![
        "s", "order", "mu", "sigma2", "lclt_sup", "clt_sup", "log_concave",
    ]);
    let mut records = Vec::new();
    for r in &results {
        table.push(vec![
            sum(r.s),
            r.order.to_string(),
            sum(r.distribution.mu),
            sum(r.distribution.sigma2),
            prob(r.lclt.lclt_sup),
            prob(r.lclt.clt_sup),
            flag(r.lclt.log_concave),
        ]);
        records.push(ensemble_record("lclt", r, truncation));
    }
    Ok(Output {
        json: serde_json::to_value(records)?,
        table,
    })
}

/// Grid `start, start + step, …` up to `end` inclusive (within half a step).
pub fn grid(start: f64, end: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0 && step.is_finite()) || !(end >= start) || !start.is_finite() || !end.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "invalid grid {start}:{end} with step {step}"
        ))
        .into());
    }
    let n = ((end - start) / step + 0.5).floor() as usize;
    Ok((0..=n).map(|i| start + i as f64 * step).collect())
}

/// Density table for a spacing distribution over a grid of s.
pub fn spacing(
    id: &str,
    k: usize,
    grid: &[f64],
    order: Option<usize>,
    truncation: f64,
) -> Result<Output> {
    let registry = EnsembleRegistry::with_builtins();
    let density = registry.spacing(id)?;
    let params = SpacingParams { order, truncation };
    let values = grid
        .par_iter()
        .map(|&s| density.density(k, s, &params))
        .collect::<dppcount::Result<Vec<_>>>()?;
    let integral = trapezoid(grid, &values);

    let mut table = Table::new(vec!["s", "density"]);
    for (&s, &p) in grid.iter().zip(&values) {
        table.push(vec![sum(s), prob(p)]);
    }
    let record = RunRecord {
        command: "spacing".into(),
        kernel: id.into(),
        region: Some(RegionOut {
            a: grid[0],
            b: *grid.last().expect("nonempty grid"),
        }),
        order: order.unwrap_or(0),
        lambdas: Vec::new(),
        mu: None,
        sigma2: None,
        e: Vec::new(),
        lclt_sup: None,
        clt_sup: None,
        log_concave: None,
        metadata: metadata(truncation, 0),
        s: None,
        gaussian: None,
        zeros: None,
        density: Some(grid.iter().zip(&values).map(|(&s, &p)| [s, p]).collect()),
        integral: Some(integral),
    };
    Ok(Output {
        json: serde_json::to_value(record)?,
        table,
    })
}
