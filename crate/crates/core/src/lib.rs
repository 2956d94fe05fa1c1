//! Cavity-QED model of a quantum-dot polarization cNOT gate.
//!
//! A single quantum dot strongly coupled to a one-sided photonic-crystal
//! cavity conditionally flips the polarization of a reflected photon: with
//! the dot shelved in its |−⟩ state the bare cavity imposes r = −1 (bit
//! flip), while the coupled ground state pushes r toward +1 (identity).
//! This crate provides
//!
//! - the conditional reflection amplitudes and a transient mean-field
//!   integrator that independently verifies them ([`model`]),
//! - polarization intensity kernels with spectral-diffusion and probe
//!   bandwidth averaging, and full spectrum scans ([`spectra`]),
//! - the 2×4 conditional probability table of the gate ([`gate`]),
//! - Rabi preparation and Purcell-lifetime models ([`dynamics`]),
//! - Levenberg-Marquardt parameter estimation from spectra ([`fit`][mod@fit]).
//!
//! The model is generic over the scalar type (`f32`/`f64`) through
//! [`Scalar`]; concrete `f64` and `f32` aliases for the main types live at
//! the crate root.

// Validation guards of the form `!(x > 0)` are NaN-rejecting on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dynamics;
pub mod error;
pub mod fit;
pub mod gate;
pub mod model;
pub mod quad;
pub mod scalar;
pub mod spectra;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub use model::{
    cooperativity, homogeneous_linewidth, mean_field_steady_state, mean_field_transient,
    reflection, reflection_bare, reflection_coupled, ComplexAmplitude, Detuning, DeviceParams,
    MeanFieldSample, MeanFieldTrajectory, QdState,
};

pub use spectra::{
    averaged_kernel, diffusion_density, pulse_averaged_intensity, spectrum_scan, transfer_kernel,
    BackgroundPoly, DiffusionQuadrature, Polarization, PolarizationPair, PulseSpectrum, Spectrum,
    SpectrumPoint,
};

pub use gate::{
    channel_curves, mixture_intensity, polarization_transfer, probability_from_intensities,
    truth_table, ChannelBackgrounds, ChannelCurves, ControlState, GateEntry, GateTable,
    IntensityQuadruple, JonesVector, Orientation,
};

pub use dynamics::{
    excitation_probability, qubit_lifetime, survival_alpha, LifetimeModel, RabiModel,
};

pub use fit::{
    fit, fit_alpha, synthesize, synthesize_channel, DiffScheme, FitDataset, FitOptions, FitProblem,
    FitResult, NoiseSpec, ParamId,
};

/// Exact vacuum speed of light expressed in nm·GHz (ν in GHz = c / λ in nm).
pub const SPEED_OF_LIGHT_NM_GHZ: f64 = 299_792_458.0;

// Concrete aliases at the default precision.
pub type DeviceParams64 = model::DeviceParams<f64>;
pub type QdState64 = model::QdState<f64>;
pub type Detuning64 = model::Detuning<f64>;
pub type ComplexAmplitude64 = model::ComplexAmplitude<f64>;
pub type Spectrum64 = spectra::Spectrum<f64>;
pub type PulseSpectrum64 = spectra::PulseSpectrum<f64>;
pub type DiffusionQuadrature64 = spectra::DiffusionQuadrature<f64>;
pub type BackgroundPoly64 = spectra::BackgroundPoly<f64>;
pub type JonesVector64 = gate::JonesVector<f64>;
pub type GateTable64 = gate::GateTable<f64>;
pub type ChannelBackgrounds64 = gate::ChannelBackgrounds<f64>;
pub type RabiModel64 = dynamics::RabiModel<f64>;
pub type LifetimeModel64 = dynamics::LifetimeModel<f64>;
pub type FitProblem64 = fit::FitProblem<f64>;
pub type FitResult64 = fit::FitResult<f64>;

// Single-precision variants.
pub type DeviceParams32 = model::DeviceParams<f32>;
pub type QdState32 = model::QdState<f32>;
pub type Spectrum32 = spectra::Spectrum<f32>;
pub type PulseSpectrum32 = spectra::PulseSpectrum<f32>;

#[cfg(test)]
pub(crate) mod testing {
    //! Shared device fixtures for unit tests.

    use crate::model::DeviceParams;
    use crate::spectra::PulseSpectrum;
    use crate::SPEED_OF_LIGHT_NM_GHZ;

    /// The fitted device: g/2π 12.9 GHz, κ/2π 31.9 GHz, γ_I/2π 5.2 GHz,
    /// 530 ps exciton lifetime, cavity at 920.97 nm, dot at 920.96 nm.
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
    pub fn symmetric_device() -> DeviceParams<f64> {
        let nu = SPEED_OF_LIGHT_NM_GHZ / 920.96;
        DeviceParams::from_ghz(12.9, 31.9, 5.2, 530.0, nu, nu).unwrap()
    }

    /// A device whose diffusion width is small enough that the β-average
    /// stays on the Gauss-Hermite path (γ ≥ γ_I/20).
    pub fn narrow_diffusion_device() -> DeviceParams<f64> {
        let nu = SPEED_OF_LIGHT_NM_GHZ / 920.96;
        DeviceParams::from_ghz(12.0, 30.0, 2.0, 530.0, nu - 2.0, nu).unwrap()
    }

    /// The 4.2 GHz-FWHM probe at unit energy.
    pub fn reference_probe(center_ghz: f64) -> PulseSpectrum<f64> {
        PulseSpectrum::new(center_ghz, 4.2, 1.0).unwrap()
    }
}
