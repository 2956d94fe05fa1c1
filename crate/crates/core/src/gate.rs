//! Polarization-qubit transfer and the conditional-NOT probability table.
//!
//! The photonic qubit lives in the ±45° H/V basis; only the cavity-axis
//! component acquires the conditional reflection amplitude. Incoherent
//! control-state mixtures combine reflected intensities, never amplitudes.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::model::{DeviceParams, QdState};
use crate::scalar::Scalar;
use crate::spectra::{
    pulse_averaged_intensity, BackgroundPoly, DiffusionQuadrature, PolarizationPair, PulseSpectrum,
};

/// Coupling multiplier used to realize the infinite-cooperativity reference
/// response; doubling it shifts the table by far less than any tolerance.
const INF_COUPLING_SCALE: f64 = 1e4;

/// Photon polarization amplitudes in the cavity-axis basis (x ∥ cavity).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JonesVector<T> {
    pub a_x: Complex<T>,
    pub a_y: Complex<T>,
}

impl<T: Scalar> JonesVector<T> {
    pub fn new(a_x: Complex<T>, a_y: Complex<T>) -> Self {
        Self { a_x, a_y }
    }

    /// |H⟩ = (|x⟩ + |y⟩)/√2
    pub fn h() -> Self {
        let s = T::of(std::f64::consts::FRAC_1_SQRT_2);
        Self {
            a_x: Complex::new(s, T::zero()),
            a_y: Complex::new(s, T::zero()),
        }
    }

    /// |V⟩ = (|y⟩ − |x⟩)/√2
    pub fn v() -> Self {
        let s = T::of(std::f64::consts::FRAC_1_SQRT_2);
        Self {
            a_x: Complex::new(-s, T::zero()),
            a_y: Complex::new(s, T::zero()),
        }
    }

    pub fn from_polarization(p: crate::spectra::Polarization) -> Self {
        match p {
            crate::spectra::Polarization::H => Self::h(),
            crate::spectra::Polarization::V => Self::v(),
        }
    }

    /// Amplitude along H: (a_x + a_y)/√2.
    pub fn h_amplitude(&self) -> Complex<T> {
        (self.a_x + self.a_y).scale(T::of(std::f64::consts::FRAC_1_SQRT_2))
    }

    /// Amplitude along V: (a_y − a_x)/√2.
    pub fn v_amplitude(&self) -> Complex<T> {
        (self.a_y - self.a_x).scale(T::of(std::f64::consts::FRAC_1_SQRT_2))
    }

    /// Total intensity |a_x|² + |a_y|².
    pub fn intensity(&self) -> T {
        self.a_x.norm_sqr() + self.a_y.norm_sqr()
    }
}

/// Reflects a Jones vector off the cavity: the cavity-axis component picks up
/// the reflection amplitude, the orthogonal component returns unchanged.
pub fn polarization_transfer<T: Scalar>(input: &JonesVector<T>, r: Complex<T>) -> JonesVector<T> {
    JonesVector {
        a_x: r * input.a_x,
        a_y: input.a_y,
    }
}

/// Incoherent mixture of reflected energies:
/// W = α·W⁻ + (1−α)·W^g.
pub fn mixture_intensity<T: Scalar>(alpha: T, w_minus: T, w_ground: T) -> Result<T> {
    QdState::Mixture(alpha).validate()?;
    Ok(alpha * w_minus + (T::one() - alpha) * w_ground)
}

/// The four reference intensities a probability is computed from, all taken
/// at the operating frequency of one polarization channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntensityQuadruple<T> {
    /// Control relaxed to the ground state (long-delay curve).
    pub i_g: T,
    /// Control prepared by a π pulse (short-delay mixture curve).
    pub i_pi: T,
    /// Infinite-coupling reference curve.
    pub i_inf: T,
    /// Fully decoupled (bare-cavity) reference curve.
    pub i_0: T,
}

/// Which prepared control state a probability refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ControlState {
    Ground,
    Minus,
}

impl ControlState {
    pub fn label(&self) -> &'static str {
        match self {
            ControlState::Ground => "g",
            ControlState::Minus => "minus",
        }
    }
}

/// Channel orientation: cross-polarized (i ≠ j) or co-polarized (i = j).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Cross,
    Same,
}

impl Orientation {
    pub fn of(pair: PolarizationPair) -> Self {
        if pair.is_cross() {
            Orientation::Cross
        } else {
            Orientation::Same
        }
    }
}

/// Converts reference intensities into a detection probability:
/// (I − I_∞)/(I_0 − I_∞) for cross channels, (I − I_0)/(I_∞ − I_0) for
/// co-polarized ones, with I = I_g or I_π by control state.
pub fn probability_from_intensities<T: Scalar>(
    q: &IntensityQuadruple<T>,
    which: ControlState,
    orientation: Orientation,
) -> Result<T> {
    let i = match which {
        ControlState::Ground => q.i_g,
        ControlState::Minus => q.i_pi,
    };
    let (num, denom) = match orientation {
        Orientation::Cross => (i - q.i_inf, q.i_0 - q.i_inf),
        Orientation::Same => (i - q.i_0, q.i_inf - q.i_0),
    };
    let scale = q
        .i_g
        .abs()
        .max(q.i_pi.abs())
        .max(q.i_inf.abs())
        .max(q.i_0.abs());
    if denom.abs() < T::of(1e-12) * scale.max(T::one() * T::epsilon()) {
        return Err(Error::DegenerateContrast);
    }
    Ok(num / denom)
}

/// One probability entry with its uncertainty (zero unless propagated from a
/// fit covariance).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GateEntry<T> {
    pub probability: T,
    pub uncertainty: T,
}

/// The 2×4 conditional probability table over control states {g, −} and the
/// four polarization channels.
#[derive(Debug, Clone, PartialEq)]
pub struct GateTable<T> {
    entries: [[GateEntry<T>; 4]; 2],
}

impl<T: Scalar> GateTable<T> {
    fn control_index(control: ControlState) -> usize {
        match control {
            ControlState::Ground => 0,
            ControlState::Minus => 1,
        }
    }

    fn pair_index(pair: PolarizationPair) -> usize {
        PolarizationPair::ALL
            .iter()
            .position(|p| *p == pair)
            .expect("pair is one of the four channels")
    }

    pub fn get(&self, control: ControlState, pair: PolarizationPair) -> GateEntry<T> {
        self.entries[Self::control_index(control)][Self::pair_index(pair)]
    }

    /// Rows in fixed order: ground state first, then the pumped row, each
    /// over the channels V→V, V→H, H→V, H→H.
    pub fn iter(
        &self,
    ) -> impl Iterator<Item = (ControlState, PolarizationPair, GateEntry<T>)> + '_ {
        [ControlState::Ground, ControlState::Minus]
            .into_iter()
            .enumerate()
            .flat_map(move |(ci, control)| {
                PolarizationPair::ALL
                    .into_iter()
                    .enumerate()
                    .map(move |(pi, pair)| (control, pair, self.entries[ci][pi]))
            })
    }
}

/// Additive background per polarization channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelBackgrounds<T> {
    pub vv: BackgroundPoly<T>,
    pub vh: BackgroundPoly<T>,
    pub hv: BackgroundPoly<T>,
    pub hh: BackgroundPoly<T>,
}

impl<T: Scalar> ChannelBackgrounds<T> {
    pub fn zero() -> Self {
        Self {
            vv: BackgroundPoly::zero(),
            vh: BackgroundPoly::zero(),
            hv: BackgroundPoly::zero(),
            hh: BackgroundPoly::zero(),
        }
    }

    pub fn get(&self, pair: PolarizationPair) -> &BackgroundPoly<T> {
        match (pair.input, pair.output) {
            (crate::spectra::Polarization::V, crate::spectra::Polarization::V) => &self.vv,
            (crate::spectra::Polarization::V, crate::spectra::Polarization::H) => &self.vh,
            (crate::spectra::Polarization::H, crate::spectra::Polarization::V) => &self.hv,
            (crate::spectra::Polarization::H, crate::spectra::Polarization::H) => &self.hh,
        }
    }
}

/// The no-background model curve values of one channel at the operating
/// frequency: ground, bare, infinite-coupling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelCurves<T> {
    pub w_ground: T,
    pub w_minus: T,
    pub w_inf: T,
}

/// Evaluates the three reference curves of a channel at `operating_nu`.
pub fn channel_curves<T: Scalar>(
    params: &DeviceParams<T>,
    probe: &PulseSpectrum<T>,
    operating_nu_ghz: T,
    pair: PolarizationPair,
    quad: &DiffusionQuadrature<T>,
) -> Result<ChannelCurves<T>> {
    channel_curves_with_scale(
        params,
        probe,
        operating_nu_ghz,
        pair,
        quad,
        T::of(INF_COUPLING_SCALE),
    )
}

pub(crate) fn channel_curves_with_scale<T: Scalar>(
    params: &DeviceParams<T>,
    probe: &PulseSpectrum<T>,
    operating_nu_ghz: T,
    pair: PolarizationPair,
    quad: &DiffusionQuadrature<T>,
    inf_scale: T,
) -> Result<ChannelCurves<T>> {
    let at_op = probe.recentred(operating_nu_ghz);
    let w_ground = pulse_averaged_intensity(&at_op, pair, QdState::Ground, params, quad)?;
    let w_minus = pulse_averaged_intensity(&at_op, pair, QdState::Minus, params, quad)?;
    let inf_device = params.with_g_scaled(inf_scale);
    let w_inf = pulse_averaged_intensity(&at_op, pair, QdState::Ground, &inf_device, quad)?;
    Ok(ChannelCurves {
        w_ground,
        w_minus,
        w_inf,
    })
}

/// Builds the full 2×4 probability table at the operating frequency.
///
/// Per channel the four curve intensities (ground, π-pulse mixture,
/// infinite-coupling, bare) are evaluated with the channel background added,
/// then converted to probabilities per orientation. Uncertainties are zero;
/// they are populated only when probabilities are propagated from fits.
pub fn truth_table<T: Scalar>(
    params: &DeviceParams<T>,
    probe: &PulseSpectrum<T>,
    alpha: T,
    backgrounds: &ChannelBackgrounds<T>,
    operating_nu_ghz: T,
    quad: &DiffusionQuadrature<T>,
) -> Result<GateTable<T>> {
    truth_table_with_inf_scale(
        params,
        probe,
        alpha,
        backgrounds,
        operating_nu_ghz,
        quad,
        T::of(INF_COUPLING_SCALE),
    )
}

pub(crate) fn truth_table_with_inf_scale<T: Scalar>(
    params: &DeviceParams<T>,
    probe: &PulseSpectrum<T>,
    alpha: T,
    backgrounds: &ChannelBackgrounds<T>,
    operating_nu_ghz: T,
    quad: &DiffusionQuadrature<T>,
    inf_scale: T,
) -> Result<GateTable<T>> {
    QdState::Mixture(alpha).validate()?;
    if !operating_nu_ghz.is_finite() || operating_nu_ghz <= T::zero() {
        return Err(Error::InvalidParameter {
            name: "operating_nu_ghz",
            reason: "operating frequency must be positive and finite".into(),
        });
    }
    let zero = GateEntry {
        probability: T::zero(),
        uncertainty: T::zero(),
    };
    let mut entries = [[zero; 4]; 2];
    for (pi, pair) in PolarizationPair::ALL.into_iter().enumerate() {
        let curves =
            channel_curves_with_scale(params, probe, operating_nu_ghz, pair, quad, inf_scale)?;
        let w_pi = mixture_intensity(alpha, curves.w_minus, curves.w_ground)?;
        let (bg, _) = backgrounds
            .get(pair)
            .eval(operating_nu_ghz, params.nu_cavity());
        let q = IntensityQuadruple {
            i_g: curves.w_ground + bg,
            i_pi: w_pi + bg,
            i_inf: curves.w_inf + bg,
            i_0: curves.w_minus + bg,
        };
        let orientation = Orientation::of(pair);
        let p_g = probability_from_intensities(&q, ControlState::Ground, orientation)?;
        let p_pi = probability_from_intensities(&q, ControlState::Minus, orientation)?;
        entries[0][pi] = GateEntry {
            probability: p_g,
            uncertainty: T::zero(),
        };
        entries[1][pi] = GateEntry {
            probability: p_pi,
            uncertainty: T::zero(),
        };
    }
    Ok(GateTable { entries })
}
