//! Numerical integration primitives: Gauss-Hermite rules and adaptive Simpson.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Gauss-Hermite quadrature rule for ∫ e^(-x²) f(x) dx over (-∞, ∞).
///
/// Nodes and weights come from Newton iteration on the orthonormal Hermite
/// recurrence; weights sum to √π. Nodes are stored in ascending order.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussHermite<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Scalar> GaussHermite<T> {
    pub fn new(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidParameter {
                name: "order",
                reason: "Gauss-Hermite order must be at least 1".into(),
            });
        }
        let n = order;
        let mut nodes = vec![T::zero(); n];
        let mut weights = vec![T::zero(); n];
        let pim4 = T::of(std::f64::consts::PI.powf(-0.25));
        let tol = T::epsilon() * T::of(8.0);
        let nf = n as f64;

        let m = n.div_ceil(2);
        let mut z = T::zero();
        for i in 0..m {
            // Stroud-Secrest style starting guesses, refined by Newton.
            let guess = match i {
                0 => {
                    let a = (2.0 * nf + 1.0).sqrt();
                    a - 1.85575 * (2.0 * nf + 1.0).powf(-1.0 / 6.0)
                }
                1 => z.to_f64().unwrap() - 1.14 * nf.powf(0.426) / z.to_f64().unwrap(),
                2 => 1.86 * z.to_f64().unwrap() - 0.86 * nodes[n - 1].to_f64().unwrap(),
                3 => 1.91 * z.to_f64().unwrap() - 0.91 * nodes[n - 2].to_f64().unwrap(),
                _ => 2.0 * z.to_f64().unwrap() - nodes[n - i + 1].to_f64().unwrap(),
            };
            z = T::of(guess);

            let mut pp = T::one();
            for _ in 0..200 {
                let mut p1 = pim4;
                let mut p2 = T::zero();
                for j in 1..=n {
                    let p3 = p2;
                    p2 = p1;
                    let jf = T::of(j as f64);
                    p1 = z * (T::of(2.0) / jf).sqrt() * p2 - ((jf - T::one()) / jf).sqrt() * p3;
                }
                pp = (T::of(2.0) * T::of(nf)).sqrt() * p2;
                let z1 = z;
                z = z1 - p1 / pp;
                if (z - z1).abs() <= tol * T::one().max(z.abs()) {
                    break;
                }
            }
            // largest root first; mirror into the lower half
            nodes[n - 1 - i] = z;
            nodes[i] = -z;
            let w = T::of(2.0) / (pp * pp);
            weights[n - 1 - i] = w;
            weights[i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = T::zero();
        }
        Ok(Self { nodes, weights })
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    /// ∫ e^(-x²) f(x) dx.
    pub fn integrate<F: FnMut(T) -> T>(&self, mut f: F) -> T {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Mean of `f` under a Gaussian with the given mean and standard deviation:
    /// ∫ N(x; mean, sigma) f(x) dx = π^(-1/2) Σ wᵢ f(mean + √2 σ xᵢ).
    pub fn gaussian_mean<F: FnMut(T) -> T>(&self, mean: T, sigma: T, mut f: F) -> T {
        let sqrt2 = T::of(std::f64::consts::SQRT_2);
        let inv_sqrt_pi = T::one() / T::PI().sqrt();
        self.integrate(|x| f(mean + sqrt2 * sigma * x)) * inv_sqrt_pi
    }
}

/// Adaptive Simpson integration of `f` over [a, b] to the absolute tolerance.
///
/// Classic bisection scheme with the 15·ε acceptance test and Richardson
/// correction on the accepted panels. `max_depth` caps the recursion.
pub fn adaptive_simpson<T: Scalar, F: FnMut(T) -> T>(
    f: &mut F,
    a: T,
    b: T,
    abs_tol: T,
    max_depth: u32,
) -> T {
    let m = (a + b) * T::of(0.5);
    let fa = f(a);
    let fm = f(m);
    let fb = f(b);
    let whole = simpson_panel(a, b, fa, fm, fb);
    simpson_recurse(f, a, b, fa, fm, fb, whole, abs_tol, max_depth)
}

fn simpson_panel<T: Scalar>(a: T, b: T, fa: T, fm: T, fb: T) -> T {
    (b - a) / T::of(6.0) * (fa + T::of(4.0) * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn simpson_recurse<T: Scalar, F: FnMut(T) -> T>(
    f: &mut F,
    a: T,
    b: T,
    fa: T,
    fm: T,
    fb: T,
    whole: T,
    tol: T,
    depth: u32,
) -> T {
    let m = (a + b) * T::of(0.5);
    let lm = (a + m) * T::of(0.5);
    let rm = (m + b) * T::of(0.5);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson_panel(a, m, fa, flm, fm);
    let right = simpson_panel(m, b, fm, frm, fb);
    let err = left + right - whole;
    if depth == 0 || err.abs() <= T::of(15.0) * tol {
        return left + right + err / T::of(15.0);
    }
    let half = tol * T::of(0.5);
    simpson_recurse(f, a, m, fa, flm, fm, left, half, depth - 1)
        + simpson_recurse(f, m, b, fm, frm, fb, right, half, depth - 1)
}
