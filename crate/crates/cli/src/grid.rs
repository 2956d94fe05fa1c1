//! `start:stop:step` range parsing, with an optional trailing `nm` or `ghz`
//! unit (GHz when omitted). Wavelength ranges are converted point by point
//! and returned as an ascending frequency grid.

use crate::config::nm_to_ghz;
use crate::error::{CliError, Result};

const MAX_POINTS: usize = 5_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RangeUnit {
    Ghz,
    Nm,
    /// Plain numbers without frequency meaning (powers, detunings).
    Plain,
}

/// Parses `start:stop:step[unit]` into the raw inclusive sequence.
pub fn parse_range(spec: &str, default_unit: RangeUnit) -> Result<(Vec<f64>, RangeUnit)> {
    let trimmed = spec.trim();
    let lower = trimmed.to_ascii_lowercase();
    let (body, unit) = if let Some(stripped) = lower.strip_suffix("nm") {
        (stripped, RangeUnit::Nm)
    } else if let Some(stripped) = lower.strip_suffix("ghz") {
        (stripped, RangeUnit::Ghz)
    } else {
        (lower.as_str(), default_unit)
    };
    if unit != default_unit && default_unit == RangeUnit::Plain {
        return Err(CliError::usage(format!(
            "range `{spec}`: units are not accepted here"
        )));
    }

    let parts: Vec<&str> = body.trim().split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::usage(format!(
            "range `{spec}`: expected start:stop:step with an optional nm/ghz suffix"
        )));
    }
    let nums: Vec<f64> = parts
        .iter()
        .enumerate()
        .map(|(i, p)| {
            p.trim().parse::<f64>().map_err(|_| {
                CliError::usage(format!("range `{spec}`: field {} is not a number", i + 1))
            })
        })
        .collect::<Result<_>>()?;
    let (start, stop, step) = (nums[0], nums[1], nums[2]);
    if !start.is_finite() || !stop.is_finite() || !step.is_finite() {
        return Err(CliError::usage(format!(
            "range `{spec}`: values must be finite"
        )));
    }
    if step <= 0.0 {
        return Err(CliError::usage(format!(
            "range `{spec}`: step must be positive"
        )));
    }
    if stop < start {
        return Err(CliError::usage(format!(
            "range `{spec}`: stop must not precede start"
        )));
    }
    let count = ((stop - start) / step).floor() as usize + 1;
    if count > MAX_POINTS {
        return Err(CliError::usage(format!(
            "range `{spec}`: {count} points is too many"
        )));
    }
    // inclusive of `stop` up to half-step rounding
    let mut values = Vec::with_capacity(count + 1);
    let mut k = 0usize;
    loop {
        let v = start + step * k as f64;
        if v > stop + step * 1e-9 {
            break;
        }
        values.push(v);
        k += 1;
    }
    Ok((values, unit))
}

/// Parses a frequency range and returns a strictly increasing GHz grid.
pub fn parse_frequency_grid(spec: &str) -> Result<Vec<f64>> {
    let (values, unit) = parse_range(spec, RangeUnit::Ghz)?;
    let mut ghz: Vec<f64> = match unit {
        RangeUnit::Nm => values.iter().map(|&nm| nm_to_ghz(nm)).collect(),
        _ => values,
    };
    if unit == RangeUnit::Nm {
        ghz.reverse(); // ascending wavelength is descending frequency
    }
    if ghz.iter().any(|v| *v <= 0.0) {
        return Err(CliError::usage(format!(
            "range `{spec}`: frequencies must be positive"
        )));
    }
    Ok(ghz)
}

/// Parses a plain (unitless) range, e.g. powers in µW or detunings in GHz.
pub fn parse_plain_range(spec: &str) -> Result<Vec<f64>> {
    let (values, _) = parse_range(spec, RangeUnit::Plain)?;
    Ok(values)
}
