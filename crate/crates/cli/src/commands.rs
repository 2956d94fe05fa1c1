//! Subcommand implementations.

use std::path::Path;

use dotgate::{
    channel_curves, excitation_probability, fit, qubit_lifetime, spectrum_scan, truth_table,
    BackgroundPoly64, ChannelBackgrounds64, DiffusionQuadrature64, Error as ModelError, FitDataset,
    FitOptions, FitProblem, ParamId, Polarization, PolarizationPair, PulseSpectrum64, QdState,
};

use crate::config::{ghz_to_nm, Config};
use crate::data::{parse_data_spec, read_spectrum_csv, DataSpec};
use crate::error::{CliError, Result};
use crate::grid::{parse_frequency_grid, parse_plain_range};
use crate::output::{sig12, write_csv};

/// Control-state selector for spectrum scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum StateArg {
    /// Ground state (coupled response).
    G,
    /// Shelved |−⟩ state (bare cavity).
    Minus,
    /// Incoherent mixture with the configured alpha.
    Mixture,
}

/// Polarization selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum PolArg {
    H,
    V,
}

impl From<PolArg> for Polarization {
    fn from(p: PolArg) -> Self {
        match p {
            PolArg::H => Polarization::H,
            PolArg::V => Polarization::V,
        }
    }
}

fn numerical(e: ModelError) -> CliError {
    CliError::numerical(e.to_string())
}

/// Fractions of the channel contrast |I_∞ − I_0| used as default constant
/// backgrounds when the config does not provide explicit coefficients.
const DEFAULT_CROSS_BACKGROUND: f64 = 0.01;
const DEFAULT_CO_BACKGROUND: f64 = 0.19;

pub fn cmd_spectrum(
    config: &Config,
    state: StateArg,
    input: PolArg,
    output: PolArg,
    grid_spec: &str,
    csv: Option<&Path>,
) -> Result<()> {
    let device = config.device()?;
    let quad = config.quadrature()?;
    let probe = config.probe()?;
    let grid = parse_frequency_grid(grid_spec)?;
    let pair = PolarizationPair::new(input.into(), output.into());
    let qd_state = match state {
        StateArg::G => QdState::Ground,
        StateArg::Minus => QdState::Minus,
        StateArg::Mixture => QdState::Mixture(config.gate.alpha),
    };
    let background = config
        .explicit_backgrounds()
        .map(|b| *b.get(pair))
        .unwrap_or_else(BackgroundPoly64::zero);

    let spectrum = spectrum_scan(&grid, &probe, pair, qd_state, &device, &quad, &background)
        .map_err(numerical)?;

    let clamped = grid
        .iter()
        .filter(|&&nu| background.eval(nu, device.nu_cavity()).1)
        .count();
    if clamped > 0 {
        eprintln!("warning: background clamped at zero on {clamped} grid points");
    }

    let rows: Vec<String> = spectrum
        .points()
        .iter()
        .map(|p| {
            format!(
                "{},{},{}",
                sig12(p.frequency_ghz),
                sig12(ghz_to_nm(p.frequency_ghz)),
                sig12(p.intensity)
            )
        })
        .collect();
    write_csv(csv, "frequency_ghz,wavelength_nm,intensity", &rows)
}

/// Derives the default per-channel backgrounds from the no-background model
/// curves at the operating point.
pub fn default_backgrounds(
    config: &Config,
    quad: &DiffusionQuadrature64,
) -> Result<ChannelBackgrounds64> {
    let device = config.device()?;
    let probe = config.probe()?;
    let nu_op = config.operating_nu_ghz()?;
    let mut out = ChannelBackgrounds64::zero();
    for pair in PolarizationPair::ALL {
        let curves = channel_curves(&device, &probe, nu_op, pair, quad).map_err(numerical)?;
        let contrast = (curves.w_inf - curves.w_minus).abs();
        let fraction = if pair.is_cross() {
            DEFAULT_CROSS_BACKGROUND
        } else {
            DEFAULT_CO_BACKGROUND
        };
        let poly = BackgroundPoly64::new(fraction * contrast, 0.0, 0.0);
        match pair {
            PolarizationPair::VV => out.vv = poly,
            PolarizationPair::VH => out.vh = poly,
            PolarizationPair::HV => out.hv = poly,
            PolarizationPair::HH => out.hh = poly,
        }
    }
    Ok(out)
}

pub fn cmd_truth_table(config: &Config, ideal: bool, csv: Option<&Path>) -> Result<()> {
    let quad = config.quadrature()?;
    let nu_op = config.operating_nu_ghz()?;
    let (device, probe, alpha, backgrounds) = if ideal {
        let device = config.device()?.with_g_scaled(1e4);
        let probe = PulseSpectrum64::monochromatic(nu_op, config.probe.energy)
            .map_err(|e| CliError::usage(e.to_string()))?;
        (device, probe, 1.0, ChannelBackgrounds64::zero())
    } else {
        let backgrounds = match config.explicit_backgrounds() {
            Some(b) => b,
            None => default_backgrounds(config, &quad)?,
        };
        (
            config.device()?,
            config.probe()?,
            config.gate.alpha,
            backgrounds,
        )
    };

    let table =
        truth_table(&device, &probe, alpha, &backgrounds, nu_op, &quad).map_err(numerical)?;
    let rows: Vec<String> = table
        .iter()
        .map(|(control, pair, entry)| {
            format!(
                "{},{},{},{}",
                control.label(),
                pair.input,
                pair.output,
                sig12(entry.probability)
            )
        })
        .collect();
    write_csv(csv, "control_state,in_pol,out_pol,probability", &rows)
}

pub fn cmd_lifetime(config: &Config, delta_range: &str, csv: Option<&Path>) -> Result<()> {
    let model = config.lifetime_model()?;
    let deltas = parse_plain_range(delta_range)?;
    let rows: Vec<String> = deltas
        .iter()
        .map(|&d| format!("{},{}", sig12(d), sig12(qubit_lifetime(d, &model))))
        .collect();
    write_csv(csv, "delta_ghz,lifetime_ps", &rows)
}

pub fn cmd_rabi(config: &Config, power_range: &str, csv: Option<&Path>) -> Result<()> {
    let model = config.rabi_model()?;
    let powers = parse_plain_range(power_range)?;
    if powers.iter().any(|p| *p < 0.0) {
        return Err(CliError::usage("power range must be nonnegative"));
    }
    let rows: Vec<String> = powers
        .iter()
        .map(|&p| {
            let alpha = excitation_probability(p, &model).map_err(numerical)?;
            Ok(format!("{},{}", sig12(p), sig12(alpha)))
        })
        .collect::<Result<_>>()?;
    write_csv(csv, "power_uw,excitation_probability", &rows)
}

fn expand_free_tokens(spec: &str, n_datasets: usize) -> Result<Vec<ParamId>> {
    let mut free = Vec::new();
    for token in spec.split(',') {
        let token = token.trim();
        if token.is_empty() {
            continue;
        }
        match token {
            "g" => free.push(ParamId::Coupling),
            "kappa" => free.push(ParamId::CavityDecay),
            "gamma_inhom" => free.push(ParamId::InhomWidth),
            "nu_qd" => free.push(ParamId::QdFrequency),
            "nu_cavity" => free.push(ParamId::CavityFrequency),
            "alpha" => free.push(ParamId::Alpha),
            "w0" => free.extend((0..n_datasets).map(ParamId::Scale)),
            "a0" => free.extend((0..n_datasets).map(ParamId::Bg0)),
            "a1" => free.extend((0..n_datasets).map(ParamId::Bg1)),
            "a2" => free.extend((0..n_datasets).map(ParamId::Bg2)),
            other => {
                return Err(CliError::usage(format!(
                    "--free: unknown parameter `{other}` (expected g, kappa, gamma_inhom, nu_qd, nu_cavity, alpha, w0, a0, a1, a2)"
                )))
            }
        }
    }
    if free.is_empty() {
        return Err(CliError::usage("--free: no parameters given"));
    }
    Ok(free)
}

fn auto_bounds(
    id: ParamId,
    problem: &FitProblem<f64>,
    span_ghz: f64,
    max_intensity: f64,
) -> (f64, f64) {
    let init = |v: f64| v;
    match id {
        ParamId::Coupling => (0.0, (5.0 * problem.device.g_ghz()).max(100.0)),
        ParamId::CavityDecay => {
            let k = problem.device.kappa_ghz();
            ((k / 10.0).max(1e-3), 10.0 * k)
        }
        ParamId::InhomWidth => (0.0, (5.0 * problem.device.gamma_inhom_ghz()).max(50.0)),
        ParamId::QdFrequency => {
            let c = problem.device.nu_qd();
            (c - span_ghz, c + span_ghz)
        }
        ParamId::CavityFrequency => {
            let c = problem.device.nu_cavity();
            (c - span_ghz, c + span_ghz)
        }
        ParamId::Alpha => (0.0, 1.0),
        ParamId::Scale(k) => {
            let s = init(problem.datasets[k].scale);
            ((s / 100.0).max(1e-9), s * 100.0)
        }
        ParamId::Bg0(_) | ParamId::Bg1(_) | ParamId::Bg2(_) => {
            (-10.0 * max_intensity, 10.0 * max_intensity)
        }
    }
}

pub fn cmd_fit(
    config: &Config,
    data_specs: &[String],
    free_spec: &str,
    csv: Option<&Path>,
) -> Result<()> {
    if data_specs.is_empty() {
        return Err(CliError::usage("fit needs at least one --data argument"));
    }
    let device = config.device()?;
    let quad = config.quadrature()?;

    let mut datasets = Vec::with_capacity(data_specs.len());
    for spec in data_specs {
        let DataSpec {
            path,
            state,
            pair,
            probe_fwhm_ghz,
            scale,
        } = parse_data_spec(spec, config.gate.alpha)?;
        let spectrum = read_spectrum_csv(&path)?;
        datasets.push(FitDataset {
            spectrum,
            pair,
            state,
            scale,
            background: BackgroundPoly64::zero(),
            probe_fwhm_ghz,
        });
    }

    let free = expand_free_tokens(free_spec, datasets.len())?;
    let span_ghz = datasets
        .iter()
        .map(|d| {
            let pts = d.spectrum.points();
            pts.last().unwrap().frequency_ghz - pts[0].frequency_ghz
        })
        .fold(10.0f64, f64::max);
    let max_intensity = datasets
        .iter()
        .flat_map(|d| d.spectrum.points().iter().map(|p| p.intensity))
        .fold(1e-12f64, f64::max);

    let mut problem = FitProblem {
        device,
        datasets,
        free: free.clone(),
        bounds: Vec::new(),
        quad,
        options: FitOptions::default(),
    };
    problem.bounds = free
        .iter()
        .map(|&id| auto_bounds(id, &problem, span_ghz, max_intensity))
        .collect();
    problem
        .validate()
        .map_err(|e| CliError::usage(e.to_string()))?;

    let result = fit(&problem).map_err(numerical)?;
    eprintln!(
        "fit: converged = {}, iterations = {}, residual norm = {:.6e}",
        result.converged, result.iterations, result.residual_norm
    );

    let mut rows: Vec<String> = result
        .names
        .iter()
        .zip(result.estimates.iter().zip(&result.ci95))
        .map(|(id, (est, ci))| format!("{},{},{}", id.label(), sig12(*est), sig12(*ci)))
        .collect();
    rows.push(format!("residual_norm,{},", sig12(result.residual_norm)));
    rows.push(format!("iterations,{},", result.iterations));
    rows.push(format!("converged,{},", result.converged));
    write_csv(csv, "parameter,estimate,ci95", &rows)
}
