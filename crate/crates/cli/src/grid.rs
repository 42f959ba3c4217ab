//! Grid and list parsing for flag values.

use crate::CliError;

/// An inclusive lo:hi:steps grid specification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl GridSpec {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(CliError::usage(format!(
                "grid must be lo:hi:steps, got '{text}'"
            )));
        }
        let lo = parse_f64(parts[0], "grid lo")?;
        let hi = parse_f64(parts[1], "grid hi")?;
        let steps: usize = parts[2]
            .parse()
            .map_err(|_| CliError::usage(format!("grid steps must be an integer, got '{}'", parts[2])))?;
        if steps == 0 {
            return Err(CliError::usage("grid needs at least one step"));
        }
        if steps > 1 && !(lo < hi) {
            return Err(CliError::usage(format!("grid needs lo < hi, got {lo}:{hi}")));
        }
        Ok(Self { lo, hi, steps })
    }

    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.lo];
        }
        (0..self.steps)
            .map(|i| self.lo + (self.hi - self.lo) * i as f64 / (self.steps - 1) as f64)
            .collect()
    }
}

/// A lo:hi interval.
pub fn parse_range(text: &str) -> Result<(f64, f64), CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 2 {
        return Err(CliError::usage(format!("range must be lo:hi, got '{text}'")));
    }
    Ok((parse_f64(parts[0], "range lo")?, parse_f64(parts[1], "range hi")?))
}

/// Comma-separated decimals.
pub fn parse_list(text: &str, what: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|part| parse_f64(part.trim(), what))
        .collect()
}

pub fn parse_f64(text: &str, what: &str) -> Result<f64, CliError> {
    text.parse()
        .map_err(|_| CliError::usage(format!("{what}: '{text}' is not a number")))
}

/// Row-major product grid: the last coordinate varies fastest.
pub fn product_grid(axis: &[f64], dims: usize) -> Vec<Vec<f64>> {
    let mut rows = Vec::with_capacity(axis.len().pow(dims as u32));
    let mut index = vec![0usize; dims];
    loop {
        rows.push(index.iter().map(|&i| axis[i]).collect());
        let mut d = dims;
        loop {
            if d == 0 {
                return rows;
            }
            d -= 1;
            index[d] += 1;
            if index[d] < axis.len() {
                break;
            }
            index[d] = 0;
        }
    }
}
