//! CSV tables and sample batches with a JSON sidecar.
//!
//! Numbers are written with 17 significant digits so they read back to the
//! same `f64`.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sampling::Construction;

pub fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Header row plus one record per row; every row must match the header.
pub fn write_table<P: AsRef<Path>, S: AsRef<str>>(path: P, columns: &[S], rows: &[Vec<f64>]) -> Result<()> {
    write_table_to(fs::File::create(path)?, columns, rows)
}

pub fn write_table_to<W: std::io::Write, S: AsRef<str>>(out: W, columns: &[S], rows: &[Vec<f64>]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(columns.iter().map(|c| c.as_ref()))?;
    for (i, row) in rows.iter().enumerate() {
        if row.len() != columns.len() {
            return Err(Error::input(format!("row {i} has {} values for {} columns", row.len(), columns.len())));
        }
        w.write_record(row.iter().map(|v| format_f64(*v)))?;
    }
    w.flush()?;
    Ok(())
}

/// Header and rows of a numeric CSV table.
pub fn read_table<P: AsRef<Path>>(path: P) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let mut r = csv::Reader::from_path(path)?;
    let columns = r.headers()?.iter().map(str::to_string).collect();
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let row = rec
            .iter()
            .map(|f| f.trim().parse::<f64>().map_err(|e| Error::input(format!("bad number '{f}': {e}"))))
            .collect::<Result<_>>()?;
        rows.push(row);
    }
    Ok((columns, rows))
}

/// Everything needed to regenerate a sample file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSidecar {
    pub construction: Construction,
    pub seed: u64,
    pub n_samples: usize,
    /// Sampler parameters (a `SpikeConfig` or an operator configuration).
    pub config: serde_json::Value,
    pub columns: Vec<String>,
    /// Command line that produced the file, if any.
    pub command: Vec<String>,
    pub version: String,
}

/// `<path>.json` next to a sample file `<path>`.
pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

/// Writes the rows as CSV and the sidecar beside them.
pub fn write_samples(path: &Path, rows: &[Vec<f64>], sidecar: &SampleSidecar) -> Result<PathBuf> {
    if sidecar.n_samples != rows.len() {
        return Err(Error::input("sidecar sample count does not match the rows"));
    }
    write_table(path, &sidecar.columns, rows)?;
    let side = sidecar_path(path);
    fs::write(&side, serde_json::to_string_pretty(sidecar)? + "\n")?;
    Ok(side)
}

pub fn read_sidecar(path: &Path) -> Result<SampleSidecar> {
    let text = fs::read_to_string(sidecar_path(path))?;
    Ok(serde_json::from_str(&text)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_round_trip_exactly() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("t.csv");
        let rows = vec![vec![0.1, 1.0 / 3.0], vec![-2.5e-300, std::f64::consts::PI]];
        write_table(&p, &["a", "b"], &rows).unwrap();
        let (cols, back) = read_table(&p).unwrap();
        assert_eq!(cols, ["a", "b"]);
        assert_eq!(back, rows);
        assert!(write_table(&p, &["a"], &rows).is_err());
    }

    #[test]
    fn sidecar_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("s.csv");
        let side = SampleSidecar {
            construction: Construction::Pencil,
            seed: 9,
            n_samples: 1,
            config: serde_json::json!({"beta": 2.0}),
            columns: vec!["lambda_1".into()],
            command: vec![],
            version: "0".into(),
        };
        write_samples(&p, &[vec![1.5]], &side).unwrap();
        assert_eq!(read_sidecar(&p).unwrap(), side);
    }
}
