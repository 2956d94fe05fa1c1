//! Nonlinear least-squares estimation of model parameters from reflection
//! spectra, plus a deterministic synthetic-spectrum generator for round-trip
//! validation.
//!
//! The minimizer is a plain Levenberg-Marquardt loop: forward-difference
//! Jacobian, multiplicative damping on the normal-equation diagonal, λ×10 on
//! rejected steps and λ/10 on accepted ones. Confidence intervals come from
//! the residual-variance-scaled inverse of JᵀJ at the solution.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::model::{DeviceParams, QdState};
use crate::scalar::Scalar;
use crate::spectra::{
    averaged_kernel, pulse_averaged_intensity, spectrum_scan, BackgroundPoly, DiffusionQuadrature,
    PolarizationPair, PulseSpectrum, Spectrum, SpectrumPoint,
};

/// A fittable parameter. Device parameters are global; per-curve scales and
/// background coefficients are indexed by dataset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParamId {
    /// Coupling g (GHz).
    Coupling,
    /// Cavity decay κ (GHz).
    CavityDecay,
    /// Inhomogeneous width γ_I (GHz).
    InhomWidth,
    /// Mean transition frequency (GHz).
    QdFrequency,
    /// Cavity resonance (GHz).
    CavityFrequency,
    /// Mixture weight of every mixture-state dataset.
    Alpha,
    /// Per-curve energy scale W₀ of dataset i.
    Scale(usize),
    /// Background a₀ of dataset i.
    Bg0(usize),
    /// Background a₁ of dataset i.
    Bg1(usize),
    /// Background a₂ of dataset i.
    Bg2(usize),
}

impl ParamId {
    pub fn label(&self) -> String {
        match self {
            ParamId::Coupling => "g".into(),
            ParamId::CavityDecay => "kappa".into(),
            ParamId::InhomWidth => "gamma_inhom".into(),
            ParamId::QdFrequency => "nu_qd".into(),
            ParamId::CavityFrequency => "nu_cavity".into(),
            ParamId::Alpha => "alpha".into(),
            ParamId::Scale(i) => format!("w0[{i}]"),
            ParamId::Bg0(i) => format!("a0[{i}]"),
            ParamId::Bg1(i) => format!("a1[{i}]"),
            ParamId::Bg2(i) => format!("a2[{i}]"),
        }
    }
}

/// One measured curve: the spectrum plus the channel and control-state labels
/// under which the model reproduces it.
#[derive(Debug, Clone, PartialEq)]
pub struct FitDataset<T> {
    pub spectrum: Spectrum<T>,
    pub pair: PolarizationPair,
    pub state: QdState<T>,
    /// Per-curve energy scale W₀ (initial value; fit via `ParamId::Scale`).
    pub scale: T,
    /// Additive background (initial values; fit via `ParamId::Bg*`).
    pub background: BackgroundPoly<T>,
    /// Probe power-spectrum FWHM in GHz; zero models a monochromatic probe.
    pub probe_fwhm_ghz: T,
}

/// Levenberg-Marquardt controls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions<T> {
    pub max_iterations: usize,
    pub lambda0: T,
    pub lambda_factor: T,
    /// Relative residual-change convergence threshold.
    pub ftol: T,
    /// Gradient infinity-norm convergence threshold.
    pub gtol: T,
    /// Relative forward-difference step.
    pub jacobian_rel_step: T,
    /// Absolute floor of the forward-difference step.
    pub jacobian_abs_floor: T,
}

impl<T: Scalar> Default for FitOptions<T> {
    fn default() -> Self {
        Self {
            max_iterations: 500,
            lambda0: T::of(1e-3),
            lambda_factor: T::of(10.0),
            ftol: T::of(1e-10),
            gtol: T::of(1e-12),
            jacobian_rel_step: T::of(1e-6),
            jacobian_abs_floor: T::of(1e-12),
        }
    }
}

/// A complete least-squares problem: data, free parameters with bounds, and
/// the quadrature order shared by every model evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct FitProblem<T> {
    pub device: DeviceParams<T>,
    pub datasets: Vec<FitDataset<T>>,
    pub free: Vec<ParamId>,
    /// Finite `[lo, hi]` box per free parameter, parallel to `free`.
    pub bounds: Vec<(T, T)>,
    pub quad: DiffusionQuadrature<T>,
    pub options: FitOptions<T>,
}

/// Fit outputs: estimates in quoted units (GHz for frequencies), the scaled
/// covariance, half-width 95% intervals, and the accepted-step objective
/// trace (strictly decreasing by construction).
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult<T> {
    pub names: Vec<ParamId>,
    pub estimates: Vec<T>,
    pub covariance: Vec<Vec<T>>,
    pub ci95: Vec<T>,
    pub residual_norm: T,
    pub iterations: usize,
    pub converged: bool,
    pub objective_trace: Vec<T>,
}

impl<T: Scalar> FitResult<T> {
    pub fn estimate(&self, id: ParamId) -> Option<T> {
        self.names
            .iter()
            .position(|n| *n == id)
            .map(|i| self.estimates[i])
    }

    pub fn ci95_of(&self, id: ParamId) -> Option<T> {
        self.names
            .iter()
            .position(|n| *n == id)
            .map(|i| self.ci95[i])
    }
}

impl<T: Scalar> FitProblem<T> {
    pub fn validate(&self) -> Result<()> {
        if self.free.is_empty() {
            return Err(Error::InvalidFitProblem("no free parameters".into()));
        }
        if self.bounds.len() != self.free.len() {
            return Err(Error::InvalidFitProblem(
                "bounds length must match free parameters".into(),
            ));
        }
        for (i, id) in self.free.iter().enumerate() {
            if self.free[i + 1..].contains(id) {
                return Err(Error::InvalidFitProblem(format!(
                    "duplicate parameter {}",
                    id.label()
                )));
            }
            match id {
                ParamId::Scale(k) | ParamId::Bg0(k) | ParamId::Bg1(k) | ParamId::Bg2(k) => {
                    if *k >= self.datasets.len() {
                        return Err(Error::InvalidFitProblem(format!(
                            "parameter {} refers to a missing dataset",
                            id.label()
                        )));
                    }
                }
                ParamId::Alpha
                    if !self
                        .datasets
                        .iter()
                        .any(|d| matches!(d.state, QdState::Mixture(_))) =>
                {
                    return Err(Error::InvalidFitProblem(
                        "alpha is free but no dataset has a mixture state".into(),
                    ));
                }
                _ => {}
            }
        }
        let init = self.initial_values();
        for ((id, &(lo, hi)), &x0) in self.free.iter().zip(&self.bounds).zip(&init) {
            if !lo.is_finite() || !hi.is_finite() || !(lo < hi) {
                return Err(Error::InvalidFitProblem(format!(
                    "parameter {} needs finite bounds with lo < hi",
                    id.label()
                )));
            }
            if x0 < lo || x0 > hi {
                return Err(Error::InvalidFitProblem(format!(
                    "initial value of {} lies outside its bounds",
                    id.label()
                )));
            }
            let physical_lo_ok = match id {
                ParamId::Coupling | ParamId::InhomWidth => lo >= T::zero(),
                ParamId::CavityDecay | ParamId::QdFrequency | ParamId::CavityFrequency => {
                    lo > T::zero()
                }
                ParamId::Alpha => lo >= T::zero() && hi <= T::one(),
                _ => true,
            };
            if !physical_lo_ok {
                return Err(Error::InvalidFitProblem(format!(
                    "bounds of {} extend outside the physical domain",
                    id.label()
                )));
            }
        }
        let n_points: usize = self.datasets.iter().map(|d| d.spectrum.len()).sum();
        if n_points < self.free.len() {
            return Err(Error::InvalidFitProblem(format!(
                "{} data points cannot constrain {} parameters",
                n_points,
                self.free.len()
            )));
        }
        for (i, d) in self.datasets.iter().enumerate() {
            d.state.validate()?;
            if !(d.probe_fwhm_ghz >= T::zero()) {
                return Err(Error::InvalidFitProblem(format!(
                    "dataset {i} has a negative probe width"
                )));
            }
            for p in d.spectrum.points() {
                if let Some(s) = p.sigma {
                    if !(s > T::zero()) {
                        return Err(Error::InvalidFitProblem(format!(
                            "dataset {i} has a non-positive sigma; drop the column for unit weights"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Current values of the free parameters, in quoted units.
    pub fn initial_values(&self) -> Vec<T> {
        self.free
            .iter()
            .map(|id| match id {
                ParamId::Coupling => self.device.g_ghz(),
                ParamId::CavityDecay => self.device.kappa_ghz(),
                ParamId::InhomWidth => self.device.gamma_inhom_ghz(),
                ParamId::QdFrequency => self.device.nu_qd(),
                ParamId::CavityFrequency => self.device.nu_cavity(),
                ParamId::Alpha => self
                    .datasets
                    .iter()
                    .find_map(|d| match d.state {
                        QdState::Mixture(a) => Some(a),
                        _ => None,
                    })
                    .unwrap_or_else(|| T::of(0.5)),
                ParamId::Scale(k) => self.datasets[*k].scale,
                ParamId::Bg0(k) => self.datasets[*k].background.a0,
                ParamId::Bg1(k) => self.datasets[*k].background.a1,
                ParamId::Bg2(k) => self.datasets[*k].background.a2,
            })
            .collect()
    }

    fn total_points(&self) -> usize {
        self.datasets.iter().map(|d| d.spectrum.len()).sum()
    }

    /// Weighted residual vector (model − data)/σ at the given parameter values.
    fn residuals(&self, values: &[T]) -> Result<Vec<T>> {
        let mut g = self.device.g_ghz();
        let mut kappa = self.device.kappa_ghz();
        let mut gamma_inhom = self.device.gamma_inhom_ghz();
        let mut nu_qd = self.device.nu_qd();
        let mut nu_cavity = self.device.nu_cavity();
        let mut alpha_override = None;
        let mut scales: Vec<T> = self.datasets.iter().map(|d| d.scale).collect();
        let mut backgrounds: Vec<BackgroundPoly<T>> =
            self.datasets.iter().map(|d| d.background).collect();
        for (id, &v) in self.free.iter().zip(values) {
            match id {
                ParamId::Coupling => g = v,
                ParamId::CavityDecay => kappa = v,
                ParamId::InhomWidth => gamma_inhom = v,
                ParamId::QdFrequency => nu_qd = v,
                ParamId::CavityFrequency => nu_cavity = v,
                ParamId::Alpha => alpha_override = Some(v),
                ParamId::Scale(k) => scales[*k] = v,
                ParamId::Bg0(k) => backgrounds[*k].a0 = v,
                ParamId::Bg1(k) => backgrounds[*k].a1 = v,
                ParamId::Bg2(k) => backgrounds[*k].a2 = v,
            }
        }
        let mut device = DeviceParams::from_ghz(
            g,
            kappa,
            gamma_inhom,
            self.device.qd_lifetime_ps(),
            nu_cavity,
            nu_qd,
        )?;
        if let Some(t2) = self.device.t2_pure_ns() {
            device = device.with_t2_pure_ns(t2)?;
        }

        let mut out = Vec::with_capacity(self.total_points());
        for (k, dataset) in self.datasets.iter().enumerate() {
            let state = match (dataset.state, alpha_override) {
                (QdState::Mixture(_), Some(a)) => QdState::Mixture(a),
                (s, _) => s,
            };
            state.validate()?;
            for point in dataset.spectrum.points() {
                let nu = point.frequency_ghz;
                let w = if dataset.probe_fwhm_ghz == T::zero() {
                    scales[k] * averaged_kernel(nu, dataset.pair, state, &device, &self.quad)?
                } else {
                    let pulse = PulseSpectrum::new(nu, dataset.probe_fwhm_ghz, scales[k])?;
                    pulse_averaged_intensity(&pulse, dataset.pair, state, &device, &self.quad)?
                };
                let model = w + backgrounds[k].eval(nu, device.nu_cavity()).0;
                let sigma = point.sigma.unwrap_or_else(T::one);
                out.push((model - point.intensity) / sigma);
            }
        }
        Ok(out)
    }
}

/// Finite-difference scheme for the Jacobian.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiffScheme {
    Forward,
    Central,
}

/// Numerical Jacobian columns ∂r/∂xⱼ of the weighted residual vector.
///
/// Forward differences reuse `base` (the residuals at `values`); steps flip
/// direction at the upper bound so candidates stay inside the box.
pub fn numerical_jacobian<T: Scalar>(
    problem: &FitProblem<T>,
    values: &[T],
    base: &[T],
    scheme: DiffScheme,
) -> Result<Vec<Vec<T>>> {
    let n = values.len();
    let mut columns = Vec::with_capacity(n);
    for j in 0..n {
        let h0 = problem
            .options
            .jacobian_rel_step
            .mul_add(values[j].abs(), T::zero())
            .max(problem.options.jacobian_abs_floor);
        let (lo, hi) = problem.bounds[j];
        let col = match scheme {
            DiffScheme::Forward => {
                let h = if values[j] + h0 > hi { -h0 } else { h0 };
                let mut stepped = values.to_vec();
                stepped[j] += h;
                let r = problem.residuals(&stepped)?;
                r.iter()
                    .zip(base)
                    .map(|(&rp, &r0)| (rp - r0) / h)
                    .collect::<Vec<T>>()
            }
            DiffScheme::Central => {
                let h = h0
                    .min((hi - values[j]).max(T::zero()))
                    .min((values[j] - lo).max(T::zero()));
                let h = if h > T::zero() { h } else { h0 };
                let mut plus = values.to_vec();
                plus[j] += h;
                let mut minus = values.to_vec();
                minus[j] -= h;
                let rp = problem.residuals(&plus)?;
                let rm = problem.residuals(&minus)?;
                rp.iter()
                    .zip(&rm)
                    .map(|(&a, &b)| (a - b) / (h + h))
                    .collect::<Vec<T>>()
            }
        };
        columns.push(col);
    }
    Ok(columns)
}

fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

/// Cholesky factorization of a symmetric positive-definite matrix (row-major).
/// Returns the failing pivot column on a non-positive pivot.
fn cholesky<T: Scalar>(a: &[Vec<T>]) -> std::result::Result<Vec<Vec<T>>, usize> {
    let n = a.len();
    let mut l = vec![vec![T::zero(); n]; n];
    for i in 0..n {
        for j in 0..=i {
            let mut sum = a[i][j];
            for (lik, ljk) in l[i][..j].iter().zip(&l[j][..j]) {
                sum -= *lik * *ljk;
            }
            if i == j {
                if !(sum > T::zero()) {
                    return Err(i);
                }
                l[i][j] = sum.sqrt();
            } else {
                l[i][j] = sum / l[j][j];
            }
        }
    }
    Ok(l)
}

fn cholesky_solve<T: Scalar>(l: &[Vec<T>], b: &[T]) -> Vec<T> {
    let n = b.len();
    let mut y = vec![T::zero(); n];
    for i in 0..n {
        let mut s = b[i];
        for k in 0..i {
            s -= l[i][k] * y[k];
        }
        y[i] = s / l[i][i];
    }
    let mut x = vec![T::zero(); n];
    for i in (0..n).rev() {
        let mut s = y[i];
        for k in i + 1..n {
            s -= l[k][i] * x[k];
        }
        x[i] = s / l[i][i];
    }
    x
}

fn cholesky_inverse<T: Scalar>(l: &[Vec<T>]) -> Vec<Vec<T>> {
    let n = l.len();
    let mut inv = vec![vec![T::zero(); n]; n];
    for col in 0..n {
        let mut e = vec![T::zero(); n];
        e[col] = T::one();
        let x = cholesky_solve(l, &e);
        for row in 0..n {
            inv[row][col] = x[row];
        }
    }
    inv
}

fn normal_matrix<T: Scalar>(columns: &[Vec<T>]) -> Vec<Vec<T>> {
    let n = columns.len();
    let mut jtj = vec![vec![T::zero(); n]; n];
    for i in 0..n {
        for j in 0..=i {
            let v = dot(&columns[i], &columns[j]);
            jtj[i][j] = v;
            jtj[j][i] = v;
        }
    }
    jtj
}

/// Names the parameters spanning the (near-)null space of JᵀJ.
fn null_space_params<T: Scalar>(
    problem: &FitProblem<T>,
    jtj: &[Vec<T>],
    pivot: usize,
) -> Vec<String> {
    let n = jtj.len();
    let max_diag = (0..n).map(|i| jtj[i][i]).fold(T::zero(), T::max);
    let threshold = max_diag * T::epsilon() * T::of(n as f64);
    let mut names: Vec<String> = (0..n)
        .filter(|&i| jtj[i][i] <= threshold || i == pivot)
        .map(|i| problem.free[i].label())
        .collect();
    names.dedup();
    names
}

/// Levenberg-Marquardt minimization of Σ((model − data)/σ)².
///
/// Accepted steps strictly decrease the objective; the loop stops on a
/// relative residual change below `ftol`, a gradient norm below `gtol`, or at
/// the iteration cap (best-so-far result with `converged = false`).
pub fn fit<T: Scalar>(problem: &FitProblem<T>) -> Result<FitResult<T>> {
    problem.validate()?;
    let opts = problem.options;
    let mut x = problem.initial_values();
    let mut residuals = problem.residuals(&x)?;
    let mut cost = dot(&residuals, &residuals);
    let mut trace = vec![cost];
    let mut lambda = opts.lambda0;
    let lambda_cap = T::of(1e14);
    let mut converged = false;
    let mut accepted_steps = 0usize;

    for _outer in 0..opts.max_iterations {
        let columns = numerical_jacobian(problem, &x, &residuals, DiffScheme::Forward)?;
        let jtj = normal_matrix(&columns);
        let jtr: Vec<T> = columns.iter().map(|c| dot(c, &residuals)).collect();

        let grad_norm = jtr.iter().fold(T::zero(), |m, &v| m.max(v.abs()));
        if grad_norm < opts.gtol {
            converged = true;
            break;
        }

        let mut stalled = true;
        while lambda <= lambda_cap {
            let mut damped = jtj.clone();
            let floor = damped
                .iter()
                .enumerate()
                .map(|(i, row)| row[i])
                .fold(T::zero(), T::max)
                * T::epsilon();
            for (i, row) in damped.iter_mut().enumerate() {
                let d = row[i].max(floor).max(T::min_positive_value());
                row[i] += lambda * d;
            }
            let l = match cholesky(&damped) {
                Ok(l) => l,
                Err(_) => {
                    lambda *= opts.lambda_factor;
                    continue;
                }
            };
            let neg_jtr: Vec<T> = jtr.iter().map(|&v| -v).collect();
            let step = cholesky_solve(&l, &neg_jtr);
            let mut candidate: Vec<T> = x.iter().zip(&step).map(|(&xi, &si)| xi + si).collect();
            for (c, &(lo, hi)) in candidate.iter_mut().zip(&problem.bounds) {
                *c = (*c).max(lo).min(hi);
            }
            match problem.residuals(&candidate) {
                Ok(r_new) => {
                    let cost_new = dot(&r_new, &r_new);
                    if cost_new < cost {
                        let rel_drop = (cost - cost_new) / cost.max(T::min_positive_value());
                        x = candidate;
                        residuals = r_new;
                        cost = cost_new;
                        trace.push(cost);
                        accepted_steps += 1;
                        lambda = (lambda / opts.lambda_factor).max(T::of(1e-13));
                        stalled = false;
                        if rel_drop < opts.ftol {
                            converged = true;
                        }
                        break;
                    }
                    lambda *= opts.lambda_factor;
                }
                // candidate outside the model's physical domain: reject
                Err(_) => lambda *= opts.lambda_factor,
            }
        }
        if converged || stalled {
            break;
        }
    }

    // linearized covariance at the solution
    let columns = numerical_jacobian(problem, &x, &residuals, DiffScheme::Forward)?;
    let jtj = normal_matrix(&columns);
    let l = match cholesky(&jtj) {
        Ok(l) => l,
        Err(pivot) => {
            return Err(Error::NonIdentifiable {
                params: null_space_params(problem, &jtj, pivot),
            })
        }
    };
    let inv = cholesky_inverse(&l);
    let n_points = problem.total_points();
    let dof = n_points.saturating_sub(x.len()).max(1);
    let s2 = cost / T::of(dof as f64);
    let covariance: Vec<Vec<T>> = inv
        .iter()
        .map(|row| row.iter().map(|&v| v * s2).collect())
        .collect();
    let ci95: Vec<T> = (0..x.len())
        .map(|i| T::of(1.96) * covariance[i][i].max(T::zero()).sqrt())
        .collect();

    Ok(FitResult {
        names: problem.free.clone(),
        estimates: x,
        covariance,
        ci95,
        residual_norm: cost,
        iterations: accepted_steps,
        converged,
        objective_trace: trace,
    })
}

/// One-parameter fit of the mixture weight α with every other parameter
/// frozen at the values of a converged long-delay fit.
#[allow(clippy::too_many_arguments)]
pub fn fit_alpha<T: Scalar>(
    data_short_delay: &Spectrum<T>,
    pair: PolarizationPair,
    device: &DeviceParams<T>,
    scale: T,
    background: &BackgroundPoly<T>,
    probe_fwhm_ghz: T,
    quad: &DiffusionQuadrature<T>,
    options: FitOptions<T>,
) -> Result<FitResult<T>> {
    let problem = FitProblem {
        device: *device,
        datasets: vec![FitDataset {
            spectrum: data_short_delay.clone(),
            pair,
            state: QdState::Mixture(T::of(0.5)),
            scale,
            background: *background,
            probe_fwhm_ghz,
        }],
        free: vec![ParamId::Alpha],
        bounds: vec![(T::zero(), T::one())],
        quad: quad.clone(),
        options,
    };
    fit(&problem)
}

/// Noise applied by [`synthesize`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NoiseSpec<T> {
    None,
    /// Intensity ← intensity·(1 + σ_rel·z); records σ = σ_rel·intensity.
    Multiplicative {
        sigma_rel: T,
    },
    /// Intensity ← intensity + σ_abs·z; records σ = σ_abs.
    Additive {
        sigma_abs: T,
    },
}

/// Deterministic synthetic spectrum: the model scan plus seeded Gaussian
/// noise. `NoiseSpec::None` reproduces [`spectrum_scan`] exactly; noisy
/// variants clamp at zero and fill the per-point σ column.
#[allow(clippy::too_many_arguments)]
pub fn synthesize<T: Scalar>(
    params: &DeviceParams<T>,
    state: QdState<T>,
    probe: &PulseSpectrum<T>,
    grid: &[T],
    background: &BackgroundPoly<T>,
    noise: NoiseSpec<T>,
    seed: u64,
    quad: &DiffusionQuadrature<T>,
) -> Result<Spectrum<T>>
where
    StandardNormal: Distribution<T>,
{
    let clean = spectrum_scan(
        grid,
        probe,
        PolarizationPair::VH,
        state,
        params,
        quad,
        background,
    )?;
    synthesize_from_scan(clean, noise, seed)
}

/// Same as [`synthesize`] but for an arbitrary channel.
#[allow(clippy::too_many_arguments)]
pub fn synthesize_channel<T: Scalar>(
    params: &DeviceParams<T>,
    state: QdState<T>,
    pair: PolarizationPair,
    probe: &PulseSpectrum<T>,
    grid: &[T],
    background: &BackgroundPoly<T>,
    noise: NoiseSpec<T>,
    seed: u64,
    quad: &DiffusionQuadrature<T>,
) -> Result<Spectrum<T>>
where
    StandardNormal: Distribution<T>,
{
    let clean = spectrum_scan(grid, probe, pair, state, params, quad, background)?;
    synthesize_from_scan(clean, noise, seed)
}

fn synthesize_from_scan<T: Scalar>(
    clean: Spectrum<T>,
    noise: NoiseSpec<T>,
    seed: u64,
) -> Result<Spectrum<T>>
where
    StandardNormal: Distribution<T>,
{
    match noise {
        NoiseSpec::None => Ok(clean),
        NoiseSpec::Multiplicative { sigma_rel } => {
            if !(sigma_rel >= T::zero()) {
                return Err(Error::InvalidParameter {
                    name: "sigma_rel",
                    reason: "noise level must be nonnegative".into(),
                });
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let points = clean
                .points()
                .iter()
                .map(|p| {
                    let z: T = StandardNormal.sample(&mut rng);
                    let noisy = p.intensity * (T::one() + sigma_rel * z);
                    SpectrumPoint {
                        frequency_ghz: p.frequency_ghz,
                        intensity: noisy.max(T::zero()),
                        sigma: Some(sigma_rel * p.intensity),
                    }
                })
                .collect();
            Spectrum::new(points)
        }
        NoiseSpec::Additive { sigma_abs } => {
            if !(sigma_abs >= T::zero()) {
                return Err(Error::InvalidParameter {
                    name: "sigma_abs",
                    reason: "noise level must be nonnegative".into(),
                });
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let points = clean
                .points()
                .iter()
                .map(|p| {
                    let z: T = StandardNormal.sample(&mut rng);
                    SpectrumPoint {
                        frequency_ghz: p.frequency_ghz,
                        intensity: (p.intensity + sigma_abs * z).max(T::zero()),
                        sigma: Some(sigma_abs),
                    }
                })
                .collect();
            Spectrum::new(points)
        }
    }
}
