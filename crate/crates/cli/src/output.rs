//! Run records and their CSV/JSON renderings.

use serde::Serialize;
use std::io::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct RegionOut {
    pub a: f64,
    pub b: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Metadata {
    pub truncation: f64,
    /// Number of eigenvalues clamped into [0, 1].
    pub clamped: usize,
    pub version: &'static str,
}

/// One computation, serialized as a JSON object.
///
/// Non-finite numbers serialize as `null`.
#[derive(Debug, Clone, Serialize)]
pub struct RunRecord {
    pub command: String,
    pub kernel: String,
    pub region: Option<RegionOut>,
    pub order: usize,
    pub lambdas: Vec<f64>,
    pub mu: Option<f64>,
    pub sigma2: Option<f64>,
    #[serde(rename = "E")]
    pub e: Vec<f64>,
    pub lclt_sup: Option<f64>,
    pub clt_sup: Option<f64>,
    pub log_concave: Option<bool>,
    pub metadata: Metadata,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
    /// Gaussian approximation φ((k − μ)/σ)/σ aligned with `E`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gaussian: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zeros: Option<Vec<Option<f64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub density: Option<Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub integral: Option<f64>,
}

/// Finite values pass through, non-finite values become `None`.
pub fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

/// A CSV table with a fixed header.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Self {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write_to<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Output of one CLI command in both renderings.
pub struct Output {
    pub json: serde_json::Value,
    pub table: Table,
}

impl Output {
    pub fn render(&self, format: Format) -> anyhow::Result<Vec<u8>> {
        let mut buf = Vec::new();
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut buf, &self.json)?;
                buf.push(b'\n');
            }
            Format::Csv => self.table.write_to(&mut buf)?,
        }
        Ok(buf)
    }
}

/// Probability-scale value with 6 significant digits.
pub fn prob(x: f64) -> String {
    significant(x, 6)
}

/// Sum- or trace-scale value with 12 significant digits.
pub fn sum(x: f64) -> String {
    significant(x, 12)
}

pub fn flag(b: bool) -> String {
    b.to_string()
}

/// Fixed notation for moderate magnitudes, scientific otherwise, with
/// trailing zeros removed.
pub fn significant(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if (-5..(digits as i32)).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        format!("{}e{}", trim_zeros(mantissa.to_string()), exp)
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}
