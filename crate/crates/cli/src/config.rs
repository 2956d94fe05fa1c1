//! JSON configuration: schema, defaults, and conversion into model types.
//!
//! Every section (and the whole file) is optional; omitted fields fall back
//! to the built-in device. Frequencies accept exactly one of `{"nm": ...}`
//! or `{"ghz": ...}`.

use std::path::Path;

use serde::Deserialize;

use dotgate::{
    BackgroundPoly64, ChannelBackgrounds64, DeviceParams64, DiffusionQuadrature64, LifetimeModel64,
    PulseSpectrum64, RabiModel64,
};

use crate::error::{CliError, Result};

/// ν(GHz) = C_NM_GHZ / λ(nm), exact by definition of the metre.
pub const C_NM_GHZ: f64 = dotgate::SPEED_OF_LIGHT_NM_GHZ;

pub fn nm_to_ghz(nm: f64) -> f64 {
    C_NM_GHZ / nm
}

pub fn ghz_to_nm(ghz: f64) -> f64 {
    C_NM_GHZ / ghz
}

/// Environment variable overriding the quadrature order (testing hook).
pub const QUAD_NODES_ENV: &str = "CQED_QUAD_NODES";

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct FrequencyInput {
    #[serde(default)]
    pub nm: Option<f64>,
    #[serde(default)]
    pub ghz: Option<f64>,
}

impl FrequencyInput {
    fn from_nm(nm: f64) -> Self {
        Self {
            nm: Some(nm),
            ghz: None,
        }
    }

    pub fn to_ghz(&self, field: &str) -> Result<f64> {
        match (self.nm, self.ghz) {
            (Some(nm), None) => {
                if nm <= 0.0 || !nm.is_finite() {
                    return Err(CliError::usage(format!(
                        "{field}: wavelength must be positive"
                    )));
                }
                Ok(nm_to_ghz(nm))
            }
            (None, Some(ghz)) => {
                if ghz <= 0.0 || !ghz.is_finite() {
                    return Err(CliError::usage(format!(
                        "{field}: frequency must be positive"
                    )));
                }
                Ok(ghz)
            }
            (Some(_), Some(_)) => Err(CliError::usage(format!(
                "{field}: give exactly one of `nm` or `ghz`, not both"
            ))),
            (None, None) => Err(CliError::usage(format!(
                "{field}: give one of `nm` or `ghz`"
            ))),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DeviceConfig {
    pub g_ghz: f64,
    pub kappa_ghz: f64,
    pub gamma_inhom_ghz: f64,
    pub qd_lifetime_ps: f64,
    pub t2_pure_ps: Option<f64>,
    pub cavity: FrequencyInput,
    pub qd: FrequencyInput,
}

impl Default for DeviceConfig {
    fn default() -> Self {
        Self {
            g_ghz: 12.9,
            kappa_ghz: 31.9,
            gamma_inhom_ghz: 5.2,
            qd_lifetime_ps: 530.0,
            t2_pure_ps: None,
            cavity: FrequencyInput::from_nm(920.97),
            qd: FrequencyInput::from_nm(920.96),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ProbeConfig {
    pub center: FrequencyInput,
    pub fwhm_ghz: f64,
    pub energy: f64,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        Self {
            center: FrequencyInput::from_nm(920.96),
            fwhm_ghz: 4.2,
            energy: 1.0,
        }
    }
}

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct BackgroundsConfig {
    #[serde(default)]
    pub vv: Option<[f64; 3]>,
    #[serde(default)]
    pub vh: Option<[f64; 3]>,
    #[serde(default)]
    pub hv: Option<[f64; 3]>,
    #[serde(default)]
    pub hh: Option<[f64; 3]>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GateConfig {
    pub alpha: f64,
    pub operating: FrequencyInput,
    /// Per-channel (a0, a1, a2). When omitted, spectrum scans use zero
    /// background and the truth table derives the default offsets (1% of the
    /// channel contrast on cross channels, 19% on co-polarized ones).
    pub backgrounds: Option<BackgroundsConfig>,
}

impl Default for GateConfig {
    fn default() -> Self {
        Self {
            alpha: 0.93,
            operating: FrequencyInput::from_nm(920.96),
            backgrounds: None,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct QuadConfig {
    pub nodes: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self { nodes: 40 }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RabiConfig {
    pub p_pi_uw: f64,
    pub damping: f64,
}

impl Default for RabiConfig {
    fn default() -> Self {
        Self {
            p_pi_uw: 0.12,
            damping: 0.0,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LifetimeConfig {
    pub gamma0_inv_ps: f64,
}

impl Default for LifetimeConfig {
    fn default() -> Self {
        Self {
            gamma0_inv_ps: 530.0,
        }
    }
}

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
pub struct Config {
    pub device: DeviceConfig,
    pub probe: ProbeConfig,
    pub gate: GateConfig,
    pub quad: QuadConfig,
    pub rabi: RabiConfig,
    pub lifetime: LifetimeConfig,
}

impl Config {
    /// Loads a config file, or the built-in defaults when no path is given.
    /// Parse errors carry the line and column from the JSON reader.
    pub fn load(path: Option<&Path>) -> Result<Self> {
        match path {
            None => Ok(Self::default()),
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| {
                    CliError::usage(format!("cannot read config {}: {e}", p.display()))
                })?;
                let cfg: Config = serde_json::from_str(&text).map_err(|e| {
                    CliError::usage(format!(
                        "config {}: line {}, column {}: {e}",
                        p.display(),
                        e.line(),
                        e.column()
                    ))
                })?;
                cfg.validate()?;
                Ok(cfg)
            }
        }
    }

    fn validate(&self) -> Result<()> {
        self.device.cavity.to_ghz("device.cavity")?;
        self.device.qd.to_ghz("device.qd")?;
        self.probe.center.to_ghz("probe.center")?;
        self.gate.operating.to_ghz("gate.operating")?;
        if !(0.0..=1.0).contains(&self.gate.alpha) {
            return Err(CliError::usage("gate.alpha: must lie in [0, 1]"));
        }
        if self.quad.nodes == 0 {
            return Err(CliError::usage("quad.nodes: must be at least 1"));
        }
        Ok(())
    }

    pub fn device(&self) -> Result<DeviceParams64> {
        let d = &self.device;
        let mut params = DeviceParams64::from_ghz(
            d.g_ghz,
            d.kappa_ghz,
            d.gamma_inhom_ghz,
            d.qd_lifetime_ps,
            d.cavity.to_ghz("device.cavity")?,
            d.qd.to_ghz("device.qd")?,
        )
        .map_err(|e| CliError::usage(format!("device: {e}")))?;
        if let Some(t2_ps) = d.t2_pure_ps {
            params = params
                .with_t2_pure_ns(t2_ps / 1000.0)
                .map_err(|e| CliError::usage(format!("device.t2_pure_ps: {e}")))?;
        }
        Ok(params)
    }

    pub fn probe(&self) -> Result<PulseSpectrum64> {
        PulseSpectrum64::new(
            self.probe.center.to_ghz("probe.center")?,
            self.probe.fwhm_ghz,
            self.probe.energy,
        )
        .map_err(|e| CliError::usage(format!("probe: {e}")))
    }

    /// Quadrature order from config, overridable via `CQED_QUAD_NODES`.
    pub fn quadrature(&self) -> Result<DiffusionQuadrature64> {
        let nodes = match std::env::var(QUAD_NODES_ENV) {
            Ok(v) => v
                .trim()
                .parse::<usize>()
                .ok()
                .filter(|n| *n >= 1)
                .ok_or_else(|| {
                    CliError::usage(format!(
                        "{QUAD_NODES_ENV}: expected a positive integer, got `{v}`"
                    ))
                })?,
            Err(_) => self.quad.nodes,
        };
        DiffusionQuadrature64::new(nodes).map_err(|e| CliError::usage(format!("quad.nodes: {e}")))
    }

    pub fn operating_nu_ghz(&self) -> Result<f64> {
        self.gate.operating.to_ghz("gate.operating")
    }

    /// Explicit per-channel backgrounds, when the config carries them.
    pub fn explicit_backgrounds(&self) -> Option<ChannelBackgrounds64> {
        let cfg = self.gate.backgrounds.as_ref()?;
        let poly = |c: &Option<[f64; 3]>| match c {
            Some([a0, a1, a2]) => BackgroundPoly64::new(*a0, *a1, *a2),
            None => BackgroundPoly64::zero(),
        };
        Some(ChannelBackgrounds64 {
            vv: poly(&cfg.vv),
            vh: poly(&cfg.vh),
            hv: poly(&cfg.hv),
            hh: poly(&cfg.hh),
        })
    }

    pub fn rabi_model(&self) -> Result<RabiModel64> {
        RabiModel64::new(self.rabi.p_pi_uw, self.rabi.damping)
            .map_err(|e| CliError::usage(format!("rabi: {e}")))
    }

    pub fn lifetime_model(&self) -> Result<LifetimeModel64> {
        LifetimeModel64::from_ghz(
            self.device.g_ghz,
            self.device.kappa_ghz,
            self.lifetime.gamma0_inv_ps,
        )
        .map_err(|e| CliError::usage(format!("lifetime: {e}")))
    }
}
