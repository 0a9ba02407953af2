//! CSV and manifest writers. Every artifact is stamped with the config
//! hash and the seeds that produced it, and numeric formatting is the
//! shortest round-trip form so re-runs are byte-identical.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Result, RingsimError};

/// A table of named columns destined for one CSV file.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: Vec<S>) -> Self {
        Table {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, cells: Vec<String>) -> Result<()> {
        if cells.len() != self.columns.len() {
            return Err(RingsimError::DimensionMismatch(format!(
                "row with {} cells in a table of {} columns",
                cells.len(),
                self.columns.len()
            )));
        }
        self.rows.push(cells);
        Ok(())
    }
}

/// Shortest round-trip decimal form; deterministic across runs.
pub fn fmt(v: f64) -> String {
    if v.is_finite() {
        format!("{v}")
    } else {
        "nan".into()
    }
}

/// Write a CSV with `# key = value` header comments for provenance.
pub fn write_csv(path: &Path, table: &Table, provenance: &[(String, String)]) -> Result<()> {
    let mut text = String::new();
    for (k, v) in provenance {
        writeln!(text, "# {k} = {v}").expect("infallible string write");
    }
    writeln!(text, "{}", table.columns.join(",")).expect("infallible string write");
    for row in &table.rows {
        writeln!(text, "{}", row.join(",")).expect("infallible string write");
    }
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    std::fs::write(path, text)?;
    Ok(())
}

/// Run manifest: one JSON file tying artifacts to config and seeds.
#[derive(Clone, Debug, Serialize)]
pub struct Manifest {
    pub config_hash: String,
    pub config_toml: String,
    pub overrides: Vec<String>,
    pub seeds: Vec<u64>,
    pub files: Vec<PathBuf>,
    pub version: String,
}

impl Manifest {
    pub fn new(config_hash: String, config_toml: String) -> Self {
        Manifest {
            config_hash,
            config_toml,
            overrides: Vec::new(),
            seeds: Vec::new(),
            files: Vec::new(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent)?;
        }
        let text = serde_json::to_string_pretty(self)
            .map_err(|e| RingsimError::Config(e.to_string()))?;
        std::fs::write(path, text)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip_is_deterministic() {
        let mut t = Table::new(vec!["x", "y"]);
        t.push_row(vec![fmt(0.1), fmt(1.0 / 3.0)]).unwrap();
        t.push_row(vec![fmt(2e-17), fmt(f64::NAN)]).unwrap();
        let dir = std::env::temp_dir().join("ringsim_output_test");
        let p1 = dir.join("a.csv");
        let p2 = dir.join("b.csv");
        let prov = vec![("config_hash".to_string(), "abc".to_string())];
        write_csv(&p1, &t, &prov).unwrap();
        write_csv(&p2, &t, &prov).unwrap();
        let a = std::fs::read(&p1).unwrap();
        let b = std::fs::read(&p2).unwrap();
        assert_eq!(a, b);
        let text = String::from_utf8(a).unwrap();
        assert!(text.starts_with("# config_hash = abc\n"));
        assert!(text.contains("0.1,0.3333333333333333"));
        // shortest round-trip: parse back to exactly the same bits
        assert_eq!("0.3333333333333333".parse::<f64>().unwrap(), 1.0 / 3.0);
    }

    #[test]
    fn ragged_rows_rejected() {
        let mut t = Table::new(vec!["x", "y"]);
        assert!(t.push_row(vec![fmt(1.0)]).is_err());
    }
}
