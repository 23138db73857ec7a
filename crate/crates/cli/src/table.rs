//! Grid specifications and CSV tables.

use std::fs::File;
use std::path::Path;

/// Formats a real with 17 significant digits, independent of locale.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

/// `lo:hi:step`, inclusive of `hi` when it lies on the grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        let span = (self.hi - self.lo) / self.step;
        let count = (span + 1e-9).floor() as usize + 1;
        (0..count).map(|i| self.lo + i as f64 * self.step).collect()
    }
}

impl std::str::FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let parse = |p: &str| {
            p.trim()
                .parse::<f64>()
                .map_err(|e| format!("bad number '{p}': {e}"))
        };
        let grid = match parts.as_slice() {
            [single] => {
                let v = parse(single)?;
                Grid {
                    lo: v,
                    hi: v,
                    step: 1.0,
                }
            }
            [lo, hi, step] => Grid {
                lo: parse(lo)?,
                hi: parse(hi)?,
                step: parse(step)?,
            },
            _ => return Err(format!("expected lo:hi:step or a single value, got '{s}'")),
        };
        if grid.step.is_nan()
            || grid.step <= 0.0
            || !grid.lo.is_finite()
            || !grid.hi.is_finite()
            || grid.hi < grid.lo
        {
            return Err(format!("need finite lo <= hi and step > 0, got '{s}'"));
        }
        Ok(grid)
    }
}

/// Header plus real-valued rows, written as comma-separated LF-terminated
/// lines.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    header: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        assert_eq!(
            row.len(),
            self.header.len(),
            "row arity must match the header"
        );
        self.rows.push(row);
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn write(&self, path: &Path) -> std::io::Result<()> {
        let file = File::create(path)?;
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(file);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|&x| fmt_real(x)))?;
        }
        w.flush()
    }
}
