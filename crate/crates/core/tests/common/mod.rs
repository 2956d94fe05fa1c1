//! Shared fixtures for the integration tests.

use dotgate::{DeviceParams, PulseSpectrum, SPEED_OF_LIGHT_NM_GHZ};

/// The fitted device: g/2π 12.9 GHz, κ/2π 31.9 GHz, γ_I/2π 5.2 GHz, 530 ps
/// lifetime, cavity at 920.97 nm, dot at 920.96 nm.
#[allow(dead_code)]
pub fn fitted_device() -> DeviceParams<f64> {
    DeviceParams::from_ghz(
        12.9,
        31.9,
        5.2,
        530.0,
        SPEED_OF_LIGHT_NM_GHZ / 920.97,
        SPEED_OF_LIGHT_NM_GHZ / 920.96,
    )
    .unwrap()
}

/// Same rates with the cavity tuned onto the dot.
#[allow(dead_code)]
pub fn symmetric_device() -> DeviceParams<f64> {
    let nu = SPEED_OF_LIGHT_NM_GHZ / 920.96;
    DeviceParams::from_ghz(12.9, 31.9, 5.2, 530.0, nu, nu).unwrap()
}

/// Device whose β-average stays on the Gauss-Hermite path (γ ≥ γ_I/20).
#[allow(dead_code)]
pub fn narrow_diffusion_device() -> DeviceParams<f64> {
    let nu = SPEED_OF_LIGHT_NM_GHZ / 920.96;
    DeviceParams::from_ghz(12.0, 30.0, 2.0, 530.0, nu - 2.0, nu).unwrap()
}

/// The 4.2 GHz-FWHM probe at unit energy.
#[allow(dead_code)]
pub fn reference_probe(center_ghz: f64) -> PulseSpectrum<f64> {
    PulseSpectrum::new(center_ghz, 4.2, 1.0).unwrap()
}
