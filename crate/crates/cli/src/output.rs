//! CSV emission. Values are written with Rust's shortest round-trip float
//! formatting (plain decimal, up to 17 significant digits), so files
//! re-parse to bit-identical doubles.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::CliError;

pub struct CsvSink {
    inner: Box<dyn Write>,
}

impl CsvSink {
    pub fn create(path: Option<&Path>) -> Result<Self, CliError> {
        let inner: Box<dyn Write> = match path {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(std::io::stdout().lock()),
        };
        Ok(Self { inner })
    }

    /// A `#` comment line (configuration echo, footers).
    pub fn comment(&mut self, text: &str) -> Result<(), CliError> {
        writeln!(self.inner, "# {text}")?;
        Ok(())
    }

    /// One raw CSV line.
    pub fn line(&mut self, text: &str) -> Result<(), CliError> {
        writeln!(self.inner, "{text}")?;
        Ok(())
    }

    pub fn row(&mut self, cells: &[String]) -> Result<(), CliError> {
        self.line(&cells.join(","))
    }

    pub fn finish(mut self) -> Result<(), CliError> {
        self.inner.flush()?;
        Ok(())
    }
}

/// Shortest round-trip decimal form.
pub fn cell(x: f64) -> String {
    format!("{x}")
}

pub fn cells(xs: &[f64]) -> Vec<String> {
    xs.iter().map(|&x| cell(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cells_round_trip() {
        for x in [0.0, 1.2, 0.1 + 0.2, 1.0 / 3.0, -7.25e-5] {
            let s = cell(x);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back.to_bits(), x.to_bits(), "{s}");
        }
    }
}
