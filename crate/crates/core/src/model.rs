//! Conditional cavity reflection model.
//!
//! A one-sided photonic-crystal cavity is strongly coupled to the σ₊
//! transition of a quantum dot. The dot's qubit state selects the cavity
//! response seen by an x-polarized probe: the ground state couples the
//! transition (split polariton response), while the shelved |−⟩ state leaves
//! a bare cavity whose on-resonance reflection is −1.
//!
//! All user-facing frequencies are linear ("divided-by-2π") GHz values;
//! rates convert to angular rad/ns exactly once, inside [`DeviceParams`].

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Complex field amplitude / reflection coefficient.
pub type ComplexAmplitude<T> = Complex<T>;

/// Response denominators below this magnitude are reported as degenerate.
const DEGENERATE_DENOM: f64 = 1e-30;

/// Control-qubit state of the dot.
///
/// `Ground` couples the σ₊ transition to the cavity; `Minus` shelves the
/// exciton so the probe sees the bare cavity. `Mixture(alpha)` is the
/// incoherent blend prepared by an imperfect π pulse: |−⟩ with probability
/// `alpha`, ground otherwise. Mixtures combine at the intensity level only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QdState<T> {
    Ground,
    Minus,
    Mixture(T),
}

impl<T: Scalar> QdState<T> {
    /// Validates the mixture weight.
    pub fn validate(&self) -> Result<()> {
        if let QdState::Mixture(alpha) = *self {
            if !(alpha >= T::zero() && alpha <= T::one()) {
                return Err(Error::MixtureWeightOutOfRange {
                    alpha: alpha.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        Ok(())
    }
}

/// Physical device parameters, stored angular (rad/ns) with frequencies in GHz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeviceParams<T> {
    g: T,
    kappa: T,
    gamma_spont: T,
    t2_pure: Option<T>,
    gamma_inhom: T,
    nu_cavity: T,
    nu_qd: T,
}

impl<T: Scalar> DeviceParams<T> {
    /// Builds a device from linear-frequency quantities as they are quoted:
    /// coupling, cavity decay and inhomogeneous width in GHz, the exciton
    /// lifetime in ps, and the cavity / mean σ₊ frequencies in GHz.
    ///
    /// Pure dephasing defaults to none (infinite T₂); see
    /// [`with_t2_pure_ns`](Self::with_t2_pure_ns).
    pub fn from_ghz(
        g_ghz: T,
        kappa_ghz: T,
        gamma_inhom_ghz: T,
        qd_lifetime_ps: T,
        nu_cavity_ghz: T,
        nu_qd_ghz: T,
    ) -> Result<Self> {
        let tau = T::tau();
        let check = |name: &'static str, v: T, allow_zero: bool| -> Result<()> {
            if !v.is_finite() {
                return Err(Error::InvalidParameter {
                    name,
                    reason: "must be finite".into(),
                });
            }
            if v < T::zero() || (!allow_zero && v == T::zero()) {
                return Err(Error::InvalidParameter {
                    name,
                    reason: if allow_zero {
                        "must be nonnegative"
                    } else {
                        "must be positive"
                    }
                    .into(),
                });
            }
            Ok(())
        };
        check("g_ghz", g_ghz, true)?;
        check("kappa_ghz", kappa_ghz, false)?;
        check("gamma_inhom_ghz", gamma_inhom_ghz, true)?;
        check("nu_cavity_ghz", nu_cavity_ghz, false)?;
        check("nu_qd_ghz", nu_qd_ghz, false)?;
        if !(qd_lifetime_ps > T::zero()) {
            return Err(Error::InvalidParameter {
                name: "qd_lifetime_ps",
                reason: "must be positive (may be infinite)".into(),
            });
        }
        let gamma_spont = if qd_lifetime_ps.is_infinite() {
            T::zero()
        } else {
            T::of(1000.0) / qd_lifetime_ps
        };
        Ok(Self {
            g: tau * g_ghz,
            kappa: tau * kappa_ghz,
            gamma_spont,
            t2_pure: None,
            gamma_inhom: tau * gamma_inhom_ghz,
            nu_cavity: nu_cavity_ghz,
            nu_qd: nu_qd_ghz,
        })
    }

    /// Adds a finite pure-dephasing time in ns.
    pub fn with_t2_pure_ns(mut self, t2_ns: T) -> Result<Self> {
        if !(t2_ns > T::zero()) {
            return Err(Error::InvalidParameter {
                name: "t2_pure_ns",
                reason: "must be positive (omit for infinite)".into(),
            });
        }
        self.t2_pure = if t2_ns.is_infinite() {
            None
        } else {
            Some(t2_ns)
        };
        Ok(self)
    }

    /// Same device with the coupling multiplied by `factor`.
    ///
    /// `factor = 0` decouples the dot; a large factor realizes the
    /// infinite-cooperativity reference response.
    pub fn with_g_scaled(&self, factor: T) -> Self {
        let mut out = *self;
        out.g = self.g * factor.abs();
        out
    }

    /// Coupling g (rad/ns).
    pub fn g(&self) -> T {
        self.g
    }

    /// Cavity energy decay rate κ (rad/ns).
    pub fn kappa(&self) -> T {
        self.kappa
    }

    /// Spontaneous emission rate Γ_spont (1/ns).
    pub fn gamma_spont(&self) -> T {
        self.gamma_spont
    }

    /// Pure dephasing time T₂ in ns; `None` means infinite.
    pub fn t2_pure_ns(&self) -> Option<T> {
        self.t2_pure
    }

    /// Inhomogeneous (spectral-diffusion) width γ_I (rad/ns).
    pub fn gamma_inhom(&self) -> T {
        self.gamma_inhom
    }

    /// Cavity resonance (GHz).
    pub fn nu_cavity(&self) -> T {
        self.nu_cavity
    }

    /// Mean σ₊ transition frequency (GHz).
    pub fn nu_qd(&self) -> T {
        self.nu_qd
    }

    pub fn g_ghz(&self) -> T {
        self.g / T::tau()
    }

    pub fn kappa_ghz(&self) -> T {
        self.kappa / T::tau()
    }

    pub fn gamma_inhom_ghz(&self) -> T {
        self.gamma_inhom / T::tau()
    }

    /// Exciton lifetime 1/Γ_spont in ps (infinite when Γ_spont = 0).
    pub fn qd_lifetime_ps(&self) -> T {
        if self.gamma_spont == T::zero() {
            T::infinity()
        } else {
            T::of(1000.0) / self.gamma_spont
        }
    }

    /// Strong-coupling predicate g > κ/4. Derived, never assumed.
    pub fn is_strongly_coupled(&self) -> bool {
        self.g > self.kappa / T::of(4.0)
    }
}

/// Probe detunings entering the response, all angular (rad/ns).
///
/// Sign convention: Δ_c = ω_c − ω and Δ_a⁰ = ω₀ − ω, with the diffusion
/// offset β entering as Δ_a = Δ_a⁰ + β. The offset distribution is even, so
/// observable spectra are insensitive to the β sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Detuning<T> {
    pub delta_c: T,
    pub delta_a0: T,
    pub beta: T,
}

impl<T: Scalar> Detuning<T> {
    pub fn of(nu_probe_ghz: T, beta: T, params: &DeviceParams<T>) -> Self {
        let tau = T::tau();
        Self {
            delta_c: tau * (params.nu_cavity - nu_probe_ghz),
            delta_a0: tau * (params.nu_qd - nu_probe_ghz),
            beta,
        }
    }

    /// Total atomic detuning Δ_a⁰ + β.
    pub fn delta_a(&self) -> T {
        self.delta_a0 + self.beta
    }
}

/// Homogeneous linewidth γ = Γ_spont/2 + 1/T₂ (1/ns).
pub fn homogeneous_linewidth<T: Scalar>(params: &DeviceParams<T>) -> T {
    let dephasing = match params.t2_pure {
        Some(t2) => T::one() / t2,
        None => T::zero(),
    };
    params.gamma_spont / T::of(2.0) + dephasing
}

/// Atomic cooperativity C = 2g²/(γκ).
pub fn cooperativity<T: Scalar>(params: &DeviceParams<T>) -> T {
    let gamma = homogeneous_linewidth(params);
    T::of(2.0) * params.g * params.g / (gamma * params.kappa)
}

/// Reflection amplitude with the dot coupled (ground state), including the
/// spectral-diffusion offset `beta` (rad/ns):
///
/// r = 1 − κ·(i(Δ_a⁰+β) + γ) / [ (iΔ_c + κ/2)(i(Δ_a⁰+β) + γ) + g² ]
pub fn reflection_coupled<T: Scalar>(
    nu_probe_ghz: T,
    beta: T,
    params: &DeviceParams<T>,
) -> Result<ComplexAmplitude<T>> {
    let det = Detuning::of(nu_probe_ghz, beta, params);
    let gamma = homogeneous_linewidth(params);
    let atom = Complex::new(gamma, det.delta_a());
    let cav = Complex::new(params.kappa / T::of(2.0), det.delta_c);
    let denom = cav * atom + Complex::new(params.g * params.g, T::zero());
    if denom.norm() < T::of(DEGENERATE_DENOM) {
        return Err(Error::DegenerateParameters);
    }
    Ok(Complex::new(T::one(), T::zero()) - atom.scale(params.kappa) / denom)
}

/// Bare-cavity reflection amplitude r = 1 − κ/(iΔ_c + κ/2) (dot shelved in |−⟩).
pub fn reflection_bare<T: Scalar>(
    nu_probe_ghz: T,
    params: &DeviceParams<T>,
) -> ComplexAmplitude<T> {
    let det = Detuning::of(nu_probe_ghz, T::zero(), params);
    let cav = Complex::new(params.kappa / T::of(2.0), det.delta_c);
    Complex::new(T::one(), T::zero()) - Complex::new(params.kappa, T::zero()) / cav
}

/// Reflection amplitude for a definite control state.
///
/// Mixtures have no single amplitude; they must be combined at the intensity
/// level and are rejected here.
pub fn reflection<T: Scalar>(
    nu_probe_ghz: T,
    beta: T,
    state: QdState<T>,
    params: &DeviceParams<T>,
) -> Result<ComplexAmplitude<T>> {
    match state {
        QdState::Ground => reflection_coupled(nu_probe_ghz, beta, params),
        QdState::Minus => Ok(reflection_bare(nu_probe_ghz, params)),
        QdState::Mixture(_) => Err(Error::MixtureNotCoherent),
    }
}

/// One sample of the driven transient: time, cavity amplitude ⟨â⟩, dipole ⟨ŝ⟩.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanFieldSample<T> {
    pub time_ns: T,
    pub cavity: ComplexAmplitude<T>,
    pub dipole: ComplexAmplitude<T>,
}

/// Fixed-step RK4 trajectory of the weak-field mean-field equations.
#[derive(Debug, Clone, PartialEq)]
pub struct MeanFieldTrajectory<T> {
    pub samples: Vec<MeanFieldSample<T>>,
}

impl<T: Scalar> MeanFieldTrajectory<T> {
    pub fn final_sample(&self) -> MeanFieldSample<T> {
        *self
            .samples
            .last()
            .expect("trajectory has at least the initial sample")
    }

    /// Reflection amplitude implied by the final cavity field,
    /// 1 − √κ ⟨â⟩ / drive.
    pub fn implied_reflection(
        &self,
        params: &DeviceParams<T>,
        drive: ComplexAmplitude<T>,
    ) -> ComplexAmplitude<T> {
        let a = self.final_sample().cavity;
        Complex::new(T::one(), T::zero()) - a.scale(params.kappa.sqrt()) / drive
    }
}

/// Integrates the driven mean-field equations from an empty cavity and
/// unexcited dot under a constant drive:
///
/// d⟨â⟩/dt = −(iΔ_c + κ/2)⟨â⟩ − ig⟨ŝ⟩ + √κ·drive
/// d⟨ŝ⟩/dt = −(iΔ_a + γ)⟨ŝ⟩ − ig⟨â⟩
///
/// Serves as the independent transient oracle for the closed-form steady
/// state. Refuses to run when `dt` exceeds 0.01 / max(κ, g, |Δ_c|, |Δ_a|).
pub fn mean_field_transient<T: Scalar>(
    params: &DeviceParams<T>,
    drive: ComplexAmplitude<T>,
    nu_probe_ghz: T,
    t_end_ns: T,
    dt_ns: T,
) -> Result<MeanFieldTrajectory<T>> {
    if !(dt_ns > T::zero()) || !(t_end_ns >= T::zero()) {
        return Err(Error::InvalidParameter {
            name: "dt_ns",
            reason: "time step and horizon must be positive".into(),
        });
    }
    let det = Detuning::of(nu_probe_ghz, T::zero(), params);
    let gamma = homogeneous_linewidth(params);
    let fastest = params
        .kappa
        .max(params.g)
        .max(det.delta_c.abs())
        .max(det.delta_a().abs());
    let max_dt = if fastest > T::zero() {
        T::of(0.01) / fastest
    } else {
        T::infinity()
    };
    if dt_ns > max_dt {
        return Err(Error::StepSizeTooLarge {
            dt: dt_ns.to_f64().unwrap_or(f64::NAN),
            max_dt: max_dt.to_f64().unwrap_or(f64::NAN),
        });
    }

    let cav_rate = Complex::new(params.kappa / T::of(2.0), det.delta_c);
    let atom_rate = Complex::new(gamma, det.delta_a());
    let ig = Complex::new(T::zero(), params.g);
    let pump = drive.scale(params.kappa.sqrt());
    let deriv = |a: Complex<T>, s: Complex<T>| -> (Complex<T>, Complex<T>) {
        (-cav_rate * a - ig * s + pump, -atom_rate * s - ig * a)
    };

    let steps = (t_end_ns / dt_ns).ceil().to_f64().unwrap_or(0.0) as usize;
    let mut samples = Vec::with_capacity(steps + 1);
    let mut a = Complex::new(T::zero(), T::zero());
    let mut s = Complex::new(T::zero(), T::zero());
    let mut t = T::zero();
    samples.push(MeanFieldSample {
        time_ns: t,
        cavity: a,
        dipole: s,
    });
    let half = T::of(0.5);
    let sixth = T::of(1.0 / 6.0);
    let two = T::of(2.0);
    for step in 0..steps {
        // final step may be shorter so the trajectory lands exactly on t_end
        let h = if step + 1 == steps {
            t_end_ns - t
        } else {
            dt_ns
        };
        let (k1a, k1s) = deriv(a, s);
        let (k2a, k2s) = deriv(a + k1a.scale(h * half), s + k1s.scale(h * half));
        let (k3a, k3s) = deriv(a + k2a.scale(h * half), s + k2s.scale(h * half));
        let (k4a, k4s) = deriv(a + k3a.scale(h), s + k3s.scale(h));
        a += (k1a + k2a.scale(two) + k3a.scale(two) + k4a).scale(h * sixth);
        s += (k1s + k2s.scale(two) + k3s.scale(two) + k4s).scale(h * sixth);
        t += h;
        samples.push(MeanFieldSample {
            time_ns: t,
            cavity: a,
            dipole: s,
        });
    }
    Ok(MeanFieldTrajectory { samples })
}

/// Closed-form steady state of the driven mean-field cavity amplitude.
pub fn mean_field_steady_state<T: Scalar>(
    params: &DeviceParams<T>,
    drive: ComplexAmplitude<T>,
    nu_probe_ghz: T,
) -> Result<ComplexAmplitude<T>> {
    let det = Detuning::of(nu_probe_ghz, T::zero(), params);
    let gamma = homogeneous_linewidth(params);
    let atom = Complex::new(gamma, det.delta_a());
    let cav = Complex::new(params.kappa / T::of(2.0), det.delta_c);
    let denom = cav * atom + Complex::new(params.g * params.g, T::zero());
    if denom.norm() < T::of(DEGENERATE_DENOM) {
        return Err(Error::DegenerateParameters);
    }
    Ok(atom.scale(params.kappa.sqrt()) * drive / denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    use crate::testing::fitted_device;

    #[test]
    fn linewidth_from_lifetime() {
        let d = fitted_device();
        // 530 ps lifetime, no pure dephasing
        assert_relative_eq!(
            homogeneous_linewidth(&d),
            1000.0 / 530.0 / 2.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(homogeneous_linewidth(&d), 0.9434, epsilon = 5e-5);

        let lossless =
            DeviceParams::from_ghz(12.9, 31.9, 5.2, f64::INFINITY, 325518.0, 325521.0).unwrap();
        assert_eq!(homogeneous_linewidth(&lossless), 0.0);

        // gamma_spont = 2 /ns (lifetime 500 ps), T2 = 1 ns -> gamma = 2
        let dephased = DeviceParams::from_ghz(10.0, 30.0, 0.0, 500.0, 325518.0, 325518.0)
            .unwrap()
            .with_t2_pure_ns(1.0)
            .unwrap();
        assert_relative_eq!(homogeneous_linewidth(&dephased), 2.0, epsilon = 1e-15);
    }

    #[test]
    fn cooperativity_of_fitted_device() {
        let d = fitted_device();
        // independent arithmetic: 2 (2π 12.9)^2 / ((1/0.53/2)(2π 31.9))
        assert_relative_eq!(cooperativity(&d), 69.48714476400127, max_relative = 1e-12);
        let decoupled = d.with_g_scaled(0.0);
        assert_eq!(cooperativity(&decoupled), 0.0);
    }

    #[test]
    fn resonant_reflection_equals_cooperativity_form() {
        // symmetric device so the probe hits both resonances at once
        let d = crate::testing::symmetric_device();
        let r = reflection_coupled(d.nu_qd(), 0.0, &d).unwrap();
        let c = cooperativity(&d);
        let expected = (c - 1.0) / (c + 1.0);
        assert_relative_eq!(r.re, expected, max_relative = 1e-12);
        assert_abs_diff_eq!(r.im, 0.0, epsilon = 1e-15);
        // value pinned by a 50-digit evaluation of the closed form
        #[allow(clippy::excessive_precision)]
        let pinned = 0.9716260318573518561938054;
        assert_relative_eq!(r.re, pinned, max_relative = 1e-9);
    }

    #[test]
    fn bare_reflection_special_points() {
        let d = fitted_device();
        let r0 = reflection_bare(d.nu_cavity(), &d);
        assert_abs_diff_eq!(r0.re, -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r0.im, 0.0, epsilon = 1e-14);

        // far detuned the cavity is a plain mirror
        let far = reflection_bare(d.nu_cavity() + 1e7, &d);
        assert_abs_diff_eq!((far - Complex::new(1.0, 0.0)).norm(), 0.0, epsilon = 1e-3);

        // delta_c = kappa/2 (probe red of the cavity): r = 1 - 2/(1+i) = +i
        let nu = d.nu_cavity() - d.kappa_ghz() / 2.0;
        let r = reflection_bare(nu, &d);
        assert_abs_diff_eq!(r.re, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.im, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.norm(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn coupled_reduces_to_bare_when_decoupled() {
        let d = fitted_device();
        let decoupled = d.with_g_scaled(0.0);
        for k in 0..100 {
            let nu = d.nu_cavity() + (k as f64 - 50.0) * 1.7;
            let rc = reflection_coupled(nu, 0.0, &decoupled).unwrap();
            let rb = reflection_bare(nu, &decoupled);
            assert_abs_diff_eq!((rc - rb).norm(), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn coupled_approaches_bare_when_dot_far_detuned() {
        let d = fitted_device();
        // move the dot 1e6 kappa away
        let far = DeviceParams::from_ghz(
            d.g_ghz(),
            d.kappa_ghz(),
            d.gamma_inhom_ghz(),
            530.0,
            d.nu_cavity(),
            d.nu_cavity() + 1e6 * d.kappa_ghz(),
        )
        .unwrap();
        let nu = d.nu_cavity() + 3.0;
        let rc = reflection_coupled(nu, 0.0, &far).unwrap();
        let rb = reflection_bare(nu, &far);
        assert!((rc - rb).norm() < 1e-4);
    }

    #[test]
    fn reflection_dispatch() {
        let d = fitted_device();
        let r = reflection(d.nu_cavity(), 0.0, QdState::Minus, &d).unwrap();
        assert_abs_diff_eq!(r.re, -1.0, epsilon = 1e-14);
        for k in 0..100 {
            let nu = d.nu_cavity() + (k as f64) * 0.83 - 40.0;
            let a = reflection(nu, 0.0, QdState::Minus, &d).unwrap();
            let b = reflection_bare(nu, &d);
            assert_eq!(a, b);
        }
        assert_eq!(
            reflection(d.nu_cavity(), 0.0, QdState::Mixture(0.5), &d),
            Err(Error::MixtureNotCoherent)
        );
    }

    #[test]
    fn mixture_weight_validation() {
        assert!(QdState::Mixture(0.93f64).validate().is_ok());
        assert!(QdState::Mixture(-0.1f64).validate().is_err());
        assert!(QdState::Mixture(1.1f64).validate().is_err());
        assert!(QdState::<f64>::Ground.validate().is_ok());
    }

    #[test]
    fn transient_zero_drive_stays_at_rest() {
        let d = fitted_device();
        let traj =
            mean_field_transient(&d, Complex::new(0.0, 0.0), d.nu_cavity(), 0.05, 1e-5).unwrap();
        for s in &traj.samples {
            assert_eq!(s.cavity, Complex::new(0.0, 0.0));
            assert_eq!(s.dipole, Complex::new(0.0, 0.0));
        }
    }

    #[test]
    fn transient_reaches_closed_form_steady_state() {
        let d = fitted_device();
        let drive = Complex::new(1.0, 0.0);
        let nu = d.nu_cavity();
        // The slow transient decays at ~kappa/4 but is dipole-dominated and
        // ~g/gamma times the cavity steady amplitude, so the horizon must be
        // generous: 100/kappa leaves a relative residual below 1e-9.
        let t_end = 100.0 / d.kappa();
        let dt = 0.009 / d.kappa();
        let traj = mean_field_transient(&d, drive, nu, t_end, dt).unwrap();
        let a_expected = mean_field_steady_state(&d, drive, nu).unwrap();
        let a = traj.final_sample().cavity;
        assert!((a - a_expected).norm() / a_expected.norm() < 1e-6);

        let r_implied = traj.implied_reflection(&d, drive);
        let r_closed = reflection_coupled(nu, 0.0, &d).unwrap();
        assert!((r_implied - r_closed).norm() < 1e-6);
    }

    #[test]
    fn transient_bare_cavity_steady_state() {
        let d = fitted_device().with_g_scaled(0.0);
        let drive = Complex::new(0.4, -0.3);
        let nu = d.nu_cavity() + 7.0;
        let t_end = 120.0 / d.kappa();
        let dt = 0.009 / (d.kappa().max(2.0 * std::f64::consts::PI * 7.0));
        let traj = mean_field_transient(&d, drive, nu, t_end, dt).unwrap();
        let det = Detuning::of(nu, 0.0, &d);
        let expected = drive.scale(d.kappa().sqrt()) / Complex::new(d.kappa() / 2.0, det.delta_c);
        assert!((traj.final_sample().cavity - expected).norm() / expected.norm() < 1e-6);
    }

    #[test]
    fn transient_rejects_coarse_step() {
        let d = fitted_device();
        let err = mean_field_transient(&d, Complex::new(1.0, 0.0), d.nu_cavity(), 1.0, 0.1);
        assert!(matches!(err, Err(Error::StepSizeTooLarge { .. })));
    }

    #[test]
    fn conjugate_symmetry_for_symmetric_device() {
        let d = crate::testing::symmetric_device();
        for k in 1..40 {
            let delta = k as f64 * 1.3;
            for beta in [0.0, 11.0, -4.5] {
                let plus = reflection_coupled(d.nu_qd() + delta, beta, &d).unwrap();
                let minus = reflection_coupled(d.nu_qd() - delta, -beta, &d).unwrap();
                assert_abs_diff_eq!(plus.re, minus.re, epsilon = 1e-12);
                assert_abs_diff_eq!(plus.im, -minus.im, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn f32_device_works() {
        let d: DeviceParams<f32> =
            DeviceParams::from_ghz(12.9, 31.9, 5.2, 530.0, 325518.16, 325521.7).unwrap();
        let r = reflection_bare(d.nu_cavity(), &d);
        assert!((r.re + 1.0).abs() < 1e-4);
        assert!(d.is_strongly_coupled());
    }

    #[test]
    fn parameter_validation() {
        assert!(DeviceParams::from_ghz(-1.0, 31.9, 5.2, 530.0, 1.0, 1.0).is_err());
        assert!(DeviceParams::from_ghz(12.9, 0.0, 5.2, 530.0, 1.0, 1.0).is_err());
        assert!(DeviceParams::from_ghz(12.9, 31.9, -5.2, 530.0, 1.0, 1.0).is_err());
        assert!(DeviceParams::from_ghz(12.9, 31.9, 5.2, 0.0, 1.0, 1.0).is_err());
        assert!(DeviceParams::from_ghz(12.9, 31.9, 5.2, 530.0, 1.0, 1.0).is_ok());
        assert!(DeviceParams::from_ghz(0.0, 31.9, 0.0, f64::INFINITY, 1.0, 1.0).is_ok());
    }
}
