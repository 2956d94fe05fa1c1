//! Spectrum CSV input and `--data` specification parsing.

use std::path::{Path, PathBuf};

use dotgate::{Polarization, PolarizationPair, QdState, Spectrum64, SpectrumPoint};

use crate::config::nm_to_ghz;
use crate::error::{CliError, Result};

/// Reads a spectrum CSV. The header must name an `intensity` column and one
/// of `frequency_ghz` / `wavelength_nm`; a `sigma` column is optional and may
/// be empty per row. Rows are sorted into ascending frequency.
pub fn read_spectrum_csv(path: &Path) -> Result<Spectrum64> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| CliError::usage(format!("{}: empty file", path.display())))?;
    let columns: Vec<&str> = header.split(',').map(str::trim).collect();
    let find = |name: &str| columns.iter().position(|c| c.eq_ignore_ascii_case(name));
    let freq_col = find("frequency_ghz");
    let wl_col = find("wavelength_nm");
    let intensity_col = find("intensity").ok_or_else(|| {
        CliError::usage(format!(
            "{}: header has no `intensity` column",
            path.display()
        ))
    })?;
    if freq_col.is_none() && wl_col.is_none() {
        return Err(CliError::usage(format!(
            "{}: header needs a `frequency_ghz` or `wavelength_nm` column",
            path.display()
        )));
    }
    let sigma_col = find("sigma");

    let parse_field = |row: usize, col: usize, field: &str| -> Result<f64> {
        field.trim().parse::<f64>().map_err(|_| {
            CliError::usage(format!(
                "{}: row {}, column {}: `{}` is not a number",
                path.display(),
                row + 1,
                col + 1,
                field.trim()
            ))
        })
    };

    let mut points: Vec<SpectrumPoint<f64>> = Vec::new();
    for (row, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        let need = intensity_col.max(freq_col.or(wl_col).unwrap());
        if fields.len() <= need {
            return Err(CliError::usage(format!(
                "{}: row {}: expected at least {} columns, found {}",
                path.display(),
                row + 1,
                need + 1,
                fields.len()
            )));
        }
        let frequency_ghz = match freq_col {
            Some(c) => parse_field(row, c, fields[c])?,
            None => {
                let c = wl_col.unwrap();
                let nm = parse_field(row, c, fields[c])?;
                if nm <= 0.0 {
                    return Err(CliError::usage(format!(
                        "{}: row {}: wavelength must be positive",
                        path.display(),
                        row + 1
                    )));
                }
                nm_to_ghz(nm)
            }
        };
        let intensity = parse_field(row, intensity_col, fields[intensity_col])?;
        let sigma = match sigma_col {
            Some(c) if c < fields.len() && !fields[c].trim().is_empty() => {
                Some(parse_field(row, c, fields[c])?)
            }
            _ => None,
        };
        points.push(SpectrumPoint {
            frequency_ghz,
            intensity,
            sigma,
        });
    }
    points.sort_by(|a, b| a.frequency_ghz.partial_cmp(&b.frequency_ghz).unwrap());
    Spectrum64::new(points).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

/// One `--data` argument: a spectrum file plus its channel and state labels.
#[derive(Debug, Clone)]
pub struct DataSpec {
    pub path: PathBuf,
    pub state: QdState<f64>,
    pub pair: PolarizationPair,
    pub probe_fwhm_ghz: f64,
    pub scale: f64,
}

/// Parses `path=FILE,state=g|minus|mixture,in=H|V,out=H|V[,fwhm=GHZ][,scale=X]`.
/// The first token may be a bare path. Mixtures start at `default_alpha`.
pub fn parse_data_spec(spec: &str, default_alpha: f64) -> Result<DataSpec> {
    let mut path: Option<PathBuf> = None;
    let mut state: Option<QdState<f64>> = None;
    let mut input: Option<Polarization> = None;
    let mut output: Option<Polarization> = None;
    let mut fwhm = 0.0;
    let mut scale = 1.0;

    for (i, token) in spec.split(',').enumerate() {
        let token = token.trim();
        if token.is_empty() {
            continue;
        }
        match token.split_once('=') {
            None if i == 0 => path = Some(PathBuf::from(token)),
            None => {
                return Err(CliError::usage(format!(
                    "--data `{spec}`: token `{token}` is not key=value"
                )))
            }
            Some((key, value)) => match key.trim() {
                "path" => path = Some(PathBuf::from(value.trim())),
                "state" => {
                    state = Some(match value.trim() {
                        "g" | "ground" => QdState::Ground,
                        "minus" => QdState::Minus,
                        "mixture" => QdState::Mixture(default_alpha),
                        other => {
                            return Err(CliError::usage(format!(
                                "--data `{spec}`: unknown state `{other}` (use g, minus or mixture)"
                            )))
                        }
                    })
                }
                "in" => {
                    input = Some(
                        value
                            .trim()
                            .parse()
                            .map_err(|e| CliError::usage(format!("--data `{spec}`: {e}")))?,
                    )
                }
                "out" => {
                    output = Some(
                        value
                            .trim()
                            .parse()
                            .map_err(|e| CliError::usage(format!("--data `{spec}`: {e}")))?,
                    )
                }
                "fwhm" => {
                    fwhm = value.trim().parse::<f64>().map_err(|_| {
                        CliError::usage(format!("--data `{spec}`: fwhm `{value}` is not a number"))
                    })?;
                    if !(fwhm >= 0.0) {
                        return Err(CliError::usage(format!(
                            "--data `{spec}`: fwhm must be nonnegative"
                        )));
                    }
                }
                "scale" => {
                    scale = value.trim().parse::<f64>().map_err(|_| {
                        CliError::usage(format!("--data `{spec}`: scale `{value}` is not a number"))
                    })?;
                    if !(scale > 0.0) {
                        return Err(CliError::usage(format!(
                            "--data `{spec}`: scale must be positive"
                        )));
                    }
                }
                other => {
                    return Err(CliError::usage(format!(
                        "--data `{spec}`: unknown key `{other}`"
                    )))
                }
            },
        }
    }

    let path =
        path.ok_or_else(|| CliError::usage(format!("--data `{spec}`: missing file path")))?;
    let state = state.ok_or_else(|| {
        CliError::usage(format!("--data `{spec}`: missing state=g|minus|mixture"))
    })?;
    let input = input.ok_or_else(|| CliError::usage(format!("--data `{spec}`: missing in=H|V")))?;
    let output =
        output.ok_or_else(|| CliError::usage(format!("--data `{spec}`: missing out=H|V")))?;
    Ok(DataSpec {
        path,
        state,
        pair: PolarizationPair::new(input, output),
        probe_fwhm_ghz: fwhm,
        scale,
    })
}
