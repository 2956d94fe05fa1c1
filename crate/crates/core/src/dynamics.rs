//! Control-qubit preparation and lifetime: Rabi oscillation versus pump
//! power, and the Purcell-modified decay of the shelved state versus
//! cavity detuning.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Rabi preparation model: pump power at the π condition plus an optional
/// phenomenological dephasing envelope on the coherent term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RabiModel<T> {
    /// Average pump power at the π-pulse condition (µW).
    pub p_pi_uw: T,
    /// Dimensionless damping coefficient η ≥ 0 multiplying e^(−ηθ).
    pub damping: T,
}

impl<T: Scalar> RabiModel<T> {
    pub fn new(p_pi_uw: T, damping: T) -> Result<Self> {
        if !(p_pi_uw > T::zero()) || !p_pi_uw.is_finite() {
            return Err(Error::InvalidParameter {
                name: "p_pi_uw",
                reason: "π-pulse power must be positive and finite".into(),
            });
        }
        if !(damping >= T::zero()) || !damping.is_finite() {
            return Err(Error::InvalidParameter {
                name: "damping",
                reason: "damping must be nonnegative and finite".into(),
            });
        }
        Ok(Self { p_pi_uw, damping })
    }
}

/// Excitation probability right after the pump pulse:
/// θ = π√(P/P_π), α₀ = ½(1 − cos θ · e^(−ηθ)).
///
/// With η = 0 this is the undamped sin²(θ/2) Rabi fringe.
pub fn excitation_probability<T: Scalar>(p_avg_uw: T, model: &RabiModel<T>) -> Result<T> {
    if !(p_avg_uw >= T::zero()) || !p_avg_uw.is_finite() {
        return Err(Error::InvalidParameter {
            name: "p_avg_uw",
            reason: "pump power must be nonnegative and finite".into(),
        });
    }
    let theta = T::PI() * (p_avg_uw / model.p_pi_uw).sqrt();
    let envelope = (-model.damping * theta).exp();
    Ok((T::one() - theta.cos() * envelope) / T::of(2.0))
}

/// Purcell lifetime model of the shelved σ₋ exciton: coupling and cavity
/// decay (angular rad/ns) plus a residual decay rate Γ₀ (1/ns).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LifetimeModel<T> {
    pub g: T,
    pub kappa: T,
    pub gamma0: T,
}

impl<T: Scalar> LifetimeModel<T> {
    /// From the quoted linear quantities: g and κ in GHz, residual lifetime
    /// 1/Γ₀ in ps.
    pub fn from_ghz(g_ghz: T, kappa_ghz: T, gamma0_inv_ps: T) -> Result<Self> {
        if !(g_ghz > T::zero()) || !(kappa_ghz > T::zero()) || !(gamma0_inv_ps > T::zero()) {
            return Err(Error::InvalidParameter {
                name: "lifetime_model",
                reason: "g, κ and 1/Γ₀ must all be positive".into(),
            });
        }
        Ok(Self {
            g: T::tau() * g_ghz,
            kappa: T::tau() * kappa_ghz,
            gamma0: T::of(1000.0) / gamma0_inv_ps,
        })
    }
}

/// Shelved-state lifetime at a σ₋–cavity detuning Δ (given divided-by-2π, in
/// GHz): 1 / (4g²κ/(4Δ² + κ²) + Γ₀), returned in ps.
pub fn qubit_lifetime<T: Scalar>(delta_ghz: T, model: &LifetimeModel<T>) -> T {
    let delta = T::tau() * delta_ghz;
    let four = T::of(4.0);
    let rate = four * model.g * model.g * model.kappa
        / (four * delta * delta + model.kappa * model.kappa)
        + model.gamma0;
    T::of(1000.0) / rate
}

/// Optional exponential-decay estimate of the preparation probability that
/// survives until the photon arrives: α = α₀ e^(−delay/lifetime).
///
/// The gate pipeline takes α directly from fits; this helper only offers the
/// obvious decay model for cross-checks.
pub fn survival_alpha<T: Scalar>(alpha0: T, delay_ps: T, lifetime_ps: T) -> Result<T> {
    if !(delay_ps >= T::zero()) {
        return Err(Error::InvalidParameter {
            name: "delay_ps",
            reason: "delay must be nonnegative".into(),
        });
    }
    if !(lifetime_ps > T::zero()) {
        return Err(Error::InvalidParameter {
            name: "lifetime_ps",
            reason: "lifetime must be positive".into(),
        });
    }
    crate::model::QdState::Mixture(alpha0).validate()?;
    Ok(alpha0 * (-delay_ps / lifetime_ps).exp())
}
