//! Deterministic CSV and sidecar writing.
//!
//! All reals are written with 17 significant digits so files reproduce
//! byte-identically across runs; lines end with a bare LF.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::Result;

/// Full-precision text form of a float (17 significant digits).
pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

/// One CSV cell; empty for a failed sweep cell.
#[derive(Debug, Clone, Copy)]
pub enum Cell {
    Value(f64),
    Empty,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Value(x)
    }
}

pub fn write_csv<P, R>(path: P, header: &str, rows: R) -> Result<()>
where
    P: AsRef<Path>,
    R: IntoIterator,
    R::Item: IntoIterator<Item = Cell>,
{
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(header.as_bytes())?;
    w.write_all(b"\n")?;
    for row in rows {
        let mut first = true;
        for cell in row {
            if !first {
                w.write_all(b",")?;
            }
            first = false;
            if let Cell::Value(x) = cell {
                w.write_all(format_real(x).as_bytes())?;
            }
        }
        w.write_all(b"\n")?;
    }
    w.flush()?;
    Ok(())
}

/// Plain-text sidecar recording the parameters behind a CSV.
pub fn write_sidecar<P: AsRef<Path>>(path: P, lines: &[String]) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    for line in lines {
        w.write_all(line.as_bytes())?;
        w.write_all(b"\n")?;
    }
    w.flush()?;
    Ok(())
}
