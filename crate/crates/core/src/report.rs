//! Machine-readable output: verification rows as JSON/CSV, run manifests and
//! the `alpha dalpha` table of the critical-dimension curve.
//!
//! Floats are written in shortest round-trip form, so reading a file back
//! reproduces every value bit for bit.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::sweep::{MatchedBranch, VerificationRecord};
use crate::theory::{critical_dimension, CriticalDimension};

/// Flat form of a [`VerificationRecord`], one per `(d, α)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub d: usize,
    pub alpha: f64,
    pub m_num: f64,
    pub m_two_point: f64,
    pub m_spread: f64,
    pub delta1: f64,
    pub delta2: f64,
    pub matched_branch: MatchedBranch,
    pub confirmed: bool,
    /// `k0:k1:k2` of the winning split.
    pub best_split: String,
    /// Circle parameter of the winner; absent for the two-value family.
    pub best_t: Option<f64>,
}

impl From<&VerificationRecord> for ReportRow {
    fn from(r: &VerificationRecord) -> Self {
        Self {
            d: r.d,
            alpha: r.alpha,
            m_num: r.m_numeric,
            m_two_point: r.theory_two_point,
            m_spread: r.theory_spread,
            delta1: r.delta1,
            delta2: r.delta2,
            matched_branch: r.matched_branch,
            confirmed: r.confirmed,
            best_split: r.best_candidate.split.to_string(),
            best_t: r.best_candidate.t,
        }
    }
}

pub fn rows(records: &[VerificationRecord]) -> Vec<ReportRow> {
    records.iter().map(ReportRow::from).collect()
}

pub fn write_json<W: Write>(mut w: W, rows: &[ReportRow]) -> Result<()> {
    serde_json::to_writer_pretty(&mut w, rows)?;
    writeln!(w)?;
    Ok(())
}

pub fn read_json<R: Read>(r: R) -> Result<Vec<ReportRow>> {
    Ok(serde_json::from_reader(r)?)
}

pub fn write_csv<W: Write>(w: W, rows: &[ReportRow]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for row in rows {
        out.serialize(row)?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(r: R) -> Result<Vec<ReportRow>> {
    let mut rdr = csv::Reader::from_reader(r);
    rdr.deserialize()
        .map(|row| row.map_err(Into::into))
        .collect()
}

/// Which report files to emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Both,
}

impl Format {
    pub fn json(self) -> bool {
        matches!(self, Self::Json | Self::Both)
    }

    pub fn csv(self) -> bool {
        matches!(self, Self::Csv | Self::Both)
    }
}

/// `prefix` with `suffix` appended to its file name.
pub fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

/// Everything needed to rerun a command and compare its output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: Vec<String>,
    pub config: serde_json::Value,
    pub seed: u64,
    pub version: String,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
    pub records: Vec<ReportRow>,
}

impl RunManifest {
    pub fn new(
        command: Vec<String>,
        config: serde_json::Value,
        seed: u64,
        records: Vec<ReportRow>,
    ) -> Self {
        Self {
            command,
            config,
            seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map_or(0, |d| d.as_secs()),
            records,
        }
    }

    pub fn write<W: Write>(&self, mut w: W) -> Result<()> {
        serde_json::to_writer_pretty(&mut w, self)?;
        writeln!(w)?;
        Ok(())
    }
}

/// Rounds to `digits` significant digits.
fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits - 1, x).parse().unwrap_or(x)
}

/// One `alpha dalpha` row; `d(α)` is rounded to 10 significant digits and the
/// unbounded case is written as `inf`.
pub fn dcurve_row(alpha: f64) -> Result<String> {
    let d = match critical_dimension(alpha)? {
        CriticalDimension::Infinite => "inf".to_string(),
        CriticalDimension::Finite(v) => format!("{}", round_sig(v, 10)),
    };
    Ok(format!("{alpha} {d}"))
}

/// Whitespace-separated table with header `alpha dalpha`.
pub fn dcurve_table(alphas: &[f64]) -> Result<String> {
    let mut out = String::from("alpha dalpha\n");
    for &a in alphas {
        out.push_str(&dcurve_row(a)?);
        out.push('\n');
    }
    Ok(out)
}

/// `n` evenly spaced points of `[lo, hi]`, end points included.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|i| {
                let v = lo + (hi - lo) * i as f64 / (n - 1) as f64;
                round_sig(v, 12)
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sweep::{m_numeric, SweepConfig};

    fn sample() -> Vec<ReportRow> {
        let cfg = SweepConfig::default();
        let recs: Vec<_> = [(3, 2.0), (5, 0.3), (7, 1.5), (4, 3.0)]
            .iter()
            .map(|&(d, a)| m_numeric(d, a, &cfg).unwrap())
            .collect();
        rows(&recs)
    }

    #[test]
    fn csv_and_json_agree() {
        let rows = sample();
        let mut j = Vec::new();
        write_json(&mut j, &rows).unwrap();
        let mut c = Vec::new();
        write_csv(&mut c, &rows).unwrap();
        let from_json = read_json(j.as_slice()).unwrap();
        let from_csv = read_csv(c.as_slice()).unwrap();
        assert_eq!(from_json, rows);
        assert_eq!(from_csv, rows);
        let text = String::from_utf8(c).unwrap();
        assert!(text.starts_with(
            "d,alpha,m_num,m_two_point,m_spread,delta1,delta2,matched_branch,confirmed,best_split,best_t\n"
        ));
    }

    #[test]
    fn dcurve_rows() {
        assert_eq!(dcurve_row(2.0).unwrap(), "2 3");
        assert_eq!(dcurve_row(0.4).unwrap(), "0.4 inf");
        let row = dcurve_row(1.000001).unwrap();
        let d: f64 = row.split_whitespace().nth(1).unwrap().parse().unwrap();
        assert!((d - 6.47).abs() < 5e-3);
        assert!(dcurve_table(&[0.0]).is_err());
    }

    #[test]
    fn linspace_end_points() {
        let v = linspace(0.3, 3.0, 28);
        assert_eq!(v.first(), Some(&0.3));
        assert_eq!(v.last(), Some(&3.0));
        assert_eq!(v[1], 0.4);
    }
}
