//! Intensity transfer in the H/V basis, spectral-diffusion averaging, probe
//! bandwidth integration, and full spectrum scans.
//!
//! The probed quantity is always a reflected energy: the polarization kernel
//! |(1∓r)/2|² weighted by the probe power spectrum and by the Gaussian
//! distribution of spectral-diffusion offsets β.

use crate::error::{Error, Result};
use crate::model::{reflection, Detuning, DeviceParams, QdState};
use crate::quad::{adaptive_simpson, GaussHermite};
use crate::scalar::Scalar;

/// Linear polarization label in the ±45° qubit basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarization {
    H,
    V,
}

impl Polarization {
    pub fn label(&self) -> &'static str {
        match self {
            Polarization::H => "H",
            Polarization::V => "V",
        }
    }
}

impl std::fmt::Display for Polarization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for Polarization {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim() {
            "H" | "h" => Ok(Polarization::H),
            "V" | "v" => Ok(Polarization::V),
            other => Err(format!("unknown polarization `{other}` (expected H or V)")),
        }
    }
}

/// Input → output polarization channel of a measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PolarizationPair {
    pub input: Polarization,
    pub output: Polarization,
}

impl PolarizationPair {
    pub const VV: Self = Self {
        input: Polarization::V,
        output: Polarization::V,
    };
    pub const VH: Self = Self {
        input: Polarization::V,
        output: Polarization::H,
    };
    pub const HV: Self = Self {
        input: Polarization::H,
        output: Polarization::V,
    };
    pub const HH: Self = Self {
        input: Polarization::H,
        output: Polarization::H,
    };

    /// All four channels in table order.
    pub const ALL: [Self; 4] = [Self::VV, Self::VH, Self::HV, Self::HH];

    pub fn new(input: Polarization, output: Polarization) -> Self {
        Self { input, output }
    }

    /// True when input and output polarizations are orthogonal.
    pub fn is_cross(&self) -> bool {
        self.input != self.output
    }
}

impl std::fmt::Display for PolarizationPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}->{}", self.input, self.output)
    }
}

/// One point of a measured or modelled spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumPoint<T> {
    pub frequency_ghz: T,
    pub intensity: T,
    pub sigma: Option<T>,
}

/// Ordered spectrum: strictly increasing frequencies, nonnegative finite
/// intensities, optional per-point uncertainties.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T> {
    points: Vec<SpectrumPoint<T>>,
}

impl<T: Scalar> Spectrum<T> {
    pub fn new(points: Vec<SpectrumPoint<T>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidSpectrum("spectrum has no points".into()));
        }
        for (i, p) in points.iter().enumerate() {
            if !p.frequency_ghz.is_finite() || !p.intensity.is_finite() {
                return Err(Error::InvalidSpectrum(format!(
                    "non-finite value at point {i}"
                )));
            }
            if p.intensity < T::zero() {
                return Err(Error::InvalidSpectrum(format!(
                    "negative intensity at point {i}"
                )));
            }
            if let Some(s) = p.sigma {
                if !(s >= T::zero()) || !s.is_finite() {
                    return Err(Error::InvalidSpectrum(format!(
                        "invalid sigma at point {i}"
                    )));
                }
            }
            if i > 0 && !(points[i - 1].frequency_ghz < p.frequency_ghz) {
                return Err(Error::InvalidSpectrum(format!(
                    "frequencies not strictly increasing at point {i}"
                )));
            }
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[SpectrumPoint<T>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Probe pulse described in the spectral domain: center, full width at half
/// maximum of the power spectrum, and total pulse energy. Zero width means a
/// monochromatic probe.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseSpectrum<T> {
    pub center_ghz: T,
    pub fwhm_ghz: T,
    pub total_energy: T,
}

impl<T: Scalar> PulseSpectrum<T> {
    pub fn new(center_ghz: T, fwhm_ghz: T, total_energy: T) -> Result<Self> {
        if !center_ghz.is_finite() || !fwhm_ghz.is_finite() || !(fwhm_ghz >= T::zero()) {
            return Err(Error::InvalidParameter {
                name: "fwhm_ghz",
                reason: "pulse width must be finite and nonnegative".into(),
            });
        }
        if !(total_energy > T::zero()) || !total_energy.is_finite() {
            return Err(Error::InvalidParameter {
                name: "total_energy",
                reason: "pulse energy must be positive and finite".into(),
            });
        }
        Ok(Self {
            center_ghz,
            fwhm_ghz,
            total_energy,
        })
    }

    pub fn monochromatic(center_ghz: T, total_energy: T) -> Result<Self> {
        Self::new(center_ghz, T::zero(), total_energy)
    }

    /// Same pulse re-centred at another frequency.
    pub fn recentred(&self, center_ghz: T) -> Self {
        Self {
            center_ghz,
            ..*self
        }
    }

    /// Standard deviation of the Gaussian power spectrum.
    pub fn sigma_ghz(&self) -> T {
        // FWHM = 2 sqrt(2 ln 2) sigma
        self.fwhm_ghz / T::of(2.354_820_045_030_949_3)
    }
}

/// Gauss-Hermite order used for both Gaussian averages (β offsets and probe
/// spectrum). The rule is precomputed at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct DiffusionQuadrature<T> {
    rule: GaussHermite<T>,
}

impl<T: Scalar> DiffusionQuadrature<T> {
    pub const DEFAULT_NODES: usize = 40;

    pub fn new(node_count: usize) -> Result<Self> {
        Ok(Self {
            rule: GaussHermite::new(node_count)?,
        })
    }

    pub fn default_order() -> Self {
        Self::new(Self::DEFAULT_NODES).expect("default order is valid")
    }

    pub fn node_count(&self) -> usize {
        self.rule.order()
    }

    pub fn rule(&self) -> &GaussHermite<T> {
        &self.rule
    }
}

/// Quadratic additive background I_B = a₀ + a₁(ν−ν_cav) + a₂(ν−ν_cav)².
///
/// Models the direct surface reflection that bypasses the cavity in
/// co-polarized channels; coefficients come from fits and may dip below zero
/// at grid edges, in which case the evaluation clamps at zero and reports it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BackgroundPoly<T> {
    pub a0: T,
    pub a1: T,
    pub a2: T,
}

impl<T: Scalar> BackgroundPoly<T> {
    pub fn new(a0: T, a1: T, a2: T) -> Self {
        Self { a0, a1, a2 }
    }

    pub fn zero() -> Self {
        Self {
            a0: T::zero(),
            a1: T::zero(),
            a2: T::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a0 == T::zero() && self.a1 == T::zero() && self.a2 == T::zero()
    }

    /// Background intensity at `nu`, clamped at zero. The flag reports
    /// whether clamping occurred.
    pub fn eval(&self, nu_ghz: T, nu_cavity_ghz: T) -> (T, bool) {
        let d = nu_ghz - nu_cavity_ghz;
        let raw = self.a0 + self.a1 * d + self.a2 * d * d;
        if raw < T::zero() {
            (T::zero(), true)
        } else {
            (raw, false)
        }
    }
}

/// Gaussian probability density of the spectral-diffusion offset β:
/// P(β) = (2π γ_I²)^(−1/2) exp(−β²/2γ_I²), in ns/rad.
pub fn diffusion_density<T: Scalar>(beta: T, gamma_inhom: T) -> Result<T> {
    if !gamma_inhom.is_finite() || gamma_inhom < T::zero() {
        return Err(Error::InvalidParameter {
            name: "gamma_inhom",
            reason: "width must be finite and nonnegative".into(),
        });
    }
    if gamma_inhom == T::zero() {
        return Err(Error::DegenerateWidth);
    }
    let z = beta / gamma_inhom;
    let norm = (T::tau() * gamma_inhom * gamma_inhom).sqrt();
    Ok((-z * z / T::of(2.0)).exp() / norm)
}

/// Polarization intensity kernel at fixed probe frequency and offset:
/// |(1−r)/2|² for cross-polarized channels, |(1+r)/2|² for co-polarized.
pub fn transfer_kernel<T: Scalar>(
    nu_ghz: T,
    beta: T,
    pair: PolarizationPair,
    state: QdState<T>,
    params: &DeviceParams<T>,
) -> Result<T> {
    let r = reflection(nu_ghz, beta, state, params)?;
    let one = num_complex::Complex::new(T::one(), T::zero());
    let amp = if pair.is_cross() { one - r } else { one + r };
    Ok(amp.norm_sqr() / T::of(4.0))
}

/// Relative stiffness at which the β-average switches from Gauss-Hermite to
/// the graded adaptive Simpson rule (γ < γ_I / 20).
const STIFF_RATIO: f64 = 1.0 / 20.0;

/// Absolute tolerance of the graded Simpson β-average (the integrand is a
/// probability density times a kernel bounded by 1, so absolute ≈ relative).
const SIMPSON_TOL: f64 = 1e-11;

const SIMPSON_BASE_PANELS: usize = 16;
const SIMPSON_SPAN_SIGMAS: f64 = 8.0;

/// Averages `f(β)` over the diffusion distribution.
///
/// Gauss-Hermite handles the generic case; when the homogeneous linewidth is
/// much narrower than γ_I the integrand develops a near-delta feature at
/// β = −Δ_a⁰ that equally spaced Gauss nodes miss, so the average switches to
/// adaptive Simpson on ±8γ_I with panels graded around the feature.
fn beta_average<T: Scalar, F: FnMut(T) -> T>(
    gamma_inhom: T,
    gamma: T,
    delta_a0: T,
    quad: &DiffusionQuadrature<T>,
    mut f: F,
) -> T {
    if gamma_inhom == T::zero() {
        return f(T::zero());
    }
    if gamma >= gamma_inhom * T::of(STIFF_RATIO) {
        return quad.rule().gaussian_mean(T::zero(), gamma_inhom, f);
    }

    let span = gamma_inhom * T::of(SIMPSON_SPAN_SIGMAS);
    let lo = -span;
    let hi = span;
    let feature = -delta_a0;
    let feature_scale = gamma.max(gamma_inhom * T::of(1e-4));

    let mut cuts: Vec<T> = Vec::with_capacity(SIMPSON_BASE_PANELS + 12);
    for i in 0..=SIMPSON_BASE_PANELS {
        let t = T::of(i as f64 / SIMPSON_BASE_PANELS as f64);
        cuts.push(lo + (hi - lo) * t);
    }
    if feature > lo - feature_scale * T::of(64.0) && feature < hi + feature_scale * T::of(64.0) {
        for radius in [1.0, 4.0, 16.0, 64.0, 256.0] {
            for sign in [-1.0, 1.0] {
                let p = feature + feature_scale * T::of(radius * sign);
                if p > lo && p < hi {
                    cuts.push(p);
                }
            }
        }
        if feature > lo && feature < hi {
            cuts.push(feature);
        }
    }
    cuts.sort_by(|a, b| a.partial_cmp(b).expect("finite breakpoints"));
    cuts.dedup_by(|a, b| (*a - *b).abs() < gamma_inhom * T::of(1e-13));

    let norm = (T::tau() * gamma_inhom * gamma_inhom).sqrt();
    let mut density_kernel = |beta: T| {
        let z = beta / gamma_inhom;
        (-z * z / T::of(2.0)).exp() / norm * f(beta)
    };
    let tol_total = T::of(SIMPSON_TOL).max(T::epsilon() * T::of(100.0));
    let width = hi - lo;
    let mut total = T::zero();
    for w in cuts.windows(2) {
        let tol = tol_total * (w[1] - w[0]) / width;
        total += adaptive_simpson(&mut density_kernel, w[0], w[1], tol, 40);
    }
    total
}

/// Diffusion-averaged kernel ⟨|(1∓r(ν, β))/2|²⟩_β.
///
/// The bare-cavity response does not depend on β, so the shelved state
/// returns the plain kernel; mixtures combine the two branches by weight.
pub fn averaged_kernel<T: Scalar>(
    nu_ghz: T,
    pair: PolarizationPair,
    state: QdState<T>,
    params: &DeviceParams<T>,
    quad: &DiffusionQuadrature<T>,
) -> Result<T> {
    state.validate()?;
    match state {
        QdState::Minus => transfer_kernel(nu_ghz, T::zero(), pair, state, params),
        QdState::Ground => {
            let gamma = crate::model::homogeneous_linewidth(params);
            let delta_a0 = Detuning::of(nu_ghz, T::zero(), params).delta_a0;
            let mut failure = None;
            let value = beta_average(params.gamma_inhom(), gamma, delta_a0, quad, |beta| {
                match transfer_kernel(nu_ghz, beta, pair, QdState::Ground, params) {
                    Ok(v) => v,
                    Err(e) => {
                        failure.get_or_insert(e);
                        T::zero()
                    }
                }
            });
            match failure {
                Some(e) => Err(e),
                None => Ok(value),
            }
        }
        QdState::Mixture(alpha) => {
            let minus = averaged_kernel(nu_ghz, pair, QdState::Minus, params, quad)?;
            let ground = averaged_kernel(nu_ghz, pair, QdState::Ground, params, quad)?;
            Ok(alpha * minus + (T::one() - alpha) * ground)
        }
    }
}

/// Reflected energy W_{i→j} for a probe pulse: the kernel integrated over the
/// Gaussian power spectrum and the diffusion distribution.
///
/// A zero-width pulse reduces exactly to `total_energy ×`[`averaged_kernel`]
/// at the pulse center.
pub fn pulse_averaged_intensity<T: Scalar>(
    pulse: &PulseSpectrum<T>,
    pair: PolarizationPair,
    state: QdState<T>,
    params: &DeviceParams<T>,
    quad: &DiffusionQuadrature<T>,
) -> Result<T> {
    state.validate()?;
    if pulse.fwhm_ghz == T::zero() {
        return Ok(
            pulse.total_energy * averaged_kernel(pulse.center_ghz, pair, state, params, quad)?
        );
    }
    match state {
        QdState::Mixture(alpha) => {
            let minus = pulse_averaged_intensity(pulse, pair, QdState::Minus, params, quad)?;
            let ground = pulse_averaged_intensity(pulse, pair, QdState::Ground, params, quad)?;
            Ok(alpha * minus + (T::one() - alpha) * ground)
        }
        pure => {
            let sigma = pulse.sigma_ghz();
            let mut failure = None;
            let mean =
                quad.rule().gaussian_mean(pulse.center_ghz, sigma, |nu| {
                    match averaged_kernel(nu, pair, pure, params, quad) {
                        Ok(v) => v,
                        Err(e) => {
                            failure.get_or_insert(e);
                            T::zero()
                        }
                    }
                });
            match failure {
                Some(e) => Err(e),
                None => Ok(pulse.total_energy * mean),
            }
        }
    }
}

/// Scans the probe across `grid`, re-centring the pulse at every frequency,
/// and adds the channel background. Mixtures are blended at the intensity
/// level point by point.
pub fn spectrum_scan<T: Scalar>(
    grid: &[T],
    probe: &PulseSpectrum<T>,
    pair: PolarizationPair,
    state: QdState<T>,
    params: &DeviceParams<T>,
    quad: &DiffusionQuadrature<T>,
    background: &BackgroundPoly<T>,
) -> Result<Spectrum<T>> {
    if grid.is_empty() {
        return Err(Error::InvalidGrid("empty grid".into()));
    }
    for (i, nu) in grid.iter().enumerate() {
        if !nu.is_finite() {
            return Err(Error::InvalidGrid(format!(
                "non-finite frequency at index {i}"
            )));
        }
        if i > 0 && !(grid[i - 1] < *nu) {
            return Err(Error::InvalidGrid(format!(
                "not strictly increasing at index {i}"
            )));
        }
    }
    state.validate()?;
    let mut points = Vec::with_capacity(grid.len());
    for &nu in grid {
        let w = pulse_averaged_intensity(&probe.recentred(nu), pair, state, params, quad)?;
        let (bg, _) = background.eval(nu, params.nu_cavity());
        points.push(SpectrumPoint {
            frequency_ghz: nu,
            intensity: w + bg,
            sigma: None,
        });
    }
    Spectrum::new(points)
}
