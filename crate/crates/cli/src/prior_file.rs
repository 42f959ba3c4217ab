//! Prior file loading.
//!
//! Format: a CSV with header `theta,weight,mu_1,...,mu_k`, one atom per row,
//! theta in {0, 1}. Raw weights within each theta group are normalized to
//! sum to one after loading; beta is the theta=0 share of the total raw
//! weight. Blank lines and `#` comments are skipped. Violations are reported
//! with their line number.

use std::path::Path;

use vrsp_core::bayes::SymmetricDiscretePrior;

use crate::CliError;

pub fn load_prior(path: &Path, k: usize) -> Result<SymmetricDiscretePrior, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read prior file {}: {e}", path.display())))?;
    parse_prior(&text, k).map_err(|msg| {
        CliError::usage(format!("prior file {}: {msg}", path.display()))
    })
}

fn parse_prior(text: &str, k: usize) -> Result<SymmetricDiscretePrior, String> {
    let mut atoms0: Vec<(f64, Vec<f64>)> = Vec::new();
    let mut atoms1: Vec<(f64, Vec<f64>)> = Vec::new();
    let mut raw0 = 0.0f64;
    let mut raw1 = 0.0f64;
    let mut saw_header = false;
    for (line_no, raw_line) in text.lines().enumerate() {
        let line_no = line_no + 1;
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !saw_header {
            let want = header(k);
            if line != want {
                return Err(format!("line {line_no}: header must be '{want}', got '{line}'"));
            }
            saw_header = true;
            continue;
        }
        let cells: Vec<&str> = line.split(',').map(str::trim).collect();
        if cells.len() != k + 2 {
            return Err(format!(
                "line {line_no}: expected {} cells (theta,weight,mu_1..mu_{k}), got {}",
                k + 2,
                cells.len()
            ));
        }
        let theta: u8 = match cells[0] {
            "0" => 0,
            "1" => 1,
            other => return Err(format!("line {line_no}: theta must be 0 or 1, got '{other}'")),
        };
        let weight: f64 = cells[1]
            .parse()
            .map_err(|_| format!("line {line_no}: weight '{}' is not a number", cells[1]))?;
        if !(weight.is_finite() && weight > 0.0) {
            return Err(format!("line {line_no}: weight must be positive, got {weight}"));
        }
        let mut mean = Vec::with_capacity(k);
        for (i, cell) in cells[2..].iter().enumerate() {
            let value: f64 = cell
                .parse()
                .map_err(|_| format!("line {line_no}: mu_{} '{cell}' is not a number", i + 1))?;
            if !(value >= 0.0) {
                return Err(format!(
                    "line {line_no}: mu_{} must be nonnegative, got {value}",
                    i + 1
                ));
            }
            mean.push(value);
        }
        if theta == 0 {
            raw0 += weight;
            atoms0.push((weight, mean));
        } else {
            raw1 += weight;
            atoms1.push((weight, mean));
        }
    }
    if !saw_header {
        return Err("empty prior file".into());
    }
    let total = raw0 + raw1;
    if total <= 0.0 {
        return Err("prior file has no atoms".into());
    }
    let beta = raw0 / total;
    SymmetricDiscretePrior::new(beta, atoms0, atoms1).map_err(|e| e.to_string())
}

pub fn header(k: usize) -> String {
    let mus: Vec<String> = (1..=k).map(|i| format!("mu_{i}")).collect();
    format!("theta,weight,{}", mus.join(","))
}
