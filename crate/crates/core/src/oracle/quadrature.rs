//! Radial quadrature of the Gaussian-smeared Minkowski vacuum Wightman
//! function.
//!
//! With `F~(k) = exp(-k^2 sigma^2 / 4) / (2 pi)^{3/2}` the angular
//! integrals are trivial and
//! `W(f_i, f_j) = lambda_i lambda_j / (4 pi^2) * integral_0^inf k exp(-k^2 sigma^2 / 2) exp(i k dtau_ij) dk`
//! with `dtau_ij = tau_j - tau_i`.

use num_complex::Complex64;

use crate::algebra::{moment_set_from_kernel, TabulatedKernel};
use crate::{Error, MomentSet, Result};

/// Composite rule on equally spaced nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadratureRule {
    Trapezoid,
    Simpson,
}

impl QuadratureRule {
    /// Convergence order on smooth integrands.
    pub fn order(self) -> u32 {
        match self {
            QuadratureRule::Trapezoid => 2,
            QuadratureRule::Simpson => 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Momentum cutoff in units of `1 / sigma`.
    pub k_max: f64,
    /// Node count. Simpson rounds up to an odd count.
    pub n_points: usize,
    pub rule: QuadratureRule,
    /// Allowed change between `n_points` and `2 n_points`, relative to
    /// the diagonal integral.
    pub target: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            k_max: 14.0,
            n_points: 2048,
            rule: QuadratureRule::Simpson,
            target: 1e-9,
        }
    }
}

impl QuadratureSpec {
    fn validate(&self) -> Result<()> {
        if !(self.k_max > 0.0 && self.k_max.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "k_max",
                value: self.k_max,
                reason: "must be positive",
            });
        }
        if self.n_points < 16 {
            return Err(Error::InvalidParameter {
                name: "n_points",
                value: self.n_points as f64,
                reason: "need at least 16 nodes",
            });
        }
        if !(self.target > 0.0) {
            return Err(Error::InvalidParameter {
                name: "target",
                value: self.target,
                reason: "must be positive",
            });
        }
        Ok(())
    }
}

/// `integral_0^k_max f(k) dk` on `n_points` equally spaced nodes.
pub fn integrate<F>(f: F, k_max: f64, n_points: usize, rule: QuadratureRule) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let mut intervals = n_points.max(2) - 1;
    if rule == QuadratureRule::Simpson && intervals % 2 == 1 {
        intervals += 1;
    }
    let h = k_max / intervals as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for i in 0..=intervals {
        let w = match rule {
            QuadratureRule::Trapezoid => {
                if i == 0 || i == intervals {
                    0.5
                } else {
                    1.0
                }
            }
            QuadratureRule::Simpson => {
                if i == 0 || i == intervals {
                    1.0 / 3.0
                } else if i % 2 == 1 {
                    4.0 / 3.0
                } else {
                    2.0 / 3.0
                }
            }
        };
        sum += f(i as f64 * h) * w;
    }
    sum * h
}

/// `integral_0^k_max k exp(-k^2 sigma^2 / 2) exp(i k dtau) dk`.
fn radial(sigma: f64, dtau: f64, k_max: f64, n: usize, rule: QuadratureRule) -> Complex64 {
    let a = 0.5 * sigma * sigma;
    integrate(
        |k| Complex64::from_polar(k * (-a * k * k).exp(), k * dtau),
        k_max,
        n,
        rule,
    )
}

/// Wightman kernel of the two kicks by direct quadrature.
///
/// The cutoff must satisfy `k_max sigma >= 12`, which leaves a tail below
/// 1e-6 of the diagonal integral. The integrals are evaluated at `n_points`
/// and `2 n_points` nodes and must agree within `target`.
pub fn quadrature_kernel(
    lambda1: f64,
    lambda2: f64,
    sigma: f64,
    dtau: f64,
    spec: &QuadratureSpec,
) -> Result<TabulatedKernel<f64>> {
    spec.validate()?;
    if !(sigma > 0.0) {
        return Err(Error::InvalidParameter {
            name: "sigma",
            value: sigma,
            reason: "must be positive",
        });
    }
    if spec.k_max * sigma < 12.0 {
        return Err(Error::InvalidParameter {
            name: "k_max",
            value: spec.k_max,
            reason: "k_max * sigma must be at least 12",
        });
    }
    for (name, v) in [("lambda1", lambda1), ("lambda2", lambda2), ("dtau", dtau)] {
        if !(v >= 0.0 && v.is_finite()) {
            return Err(Error::InvalidParameter {
                name,
                value: v,
                reason: "must be finite and non-negative",
            });
        }
    }
    let coarse_diag = radial(sigma, 0.0, spec.k_max, spec.n_points, spec.rule);
    let coarse_cross = radial(sigma, dtau, spec.k_max, spec.n_points, spec.rule);
    let diag = radial(sigma, 0.0, spec.k_max, 2 * spec.n_points, spec.rule);
    let cross = radial(sigma, dtau, spec.k_max, 2 * spec.n_points, spec.rule);
    let scale = diag.re.abs();
    let difference = ((coarse_diag - diag).norm()).max((coarse_cross - cross).norm()) / scale;
    if difference > spec.target {
        return Err(Error::Accuracy {
            difference,
            target: spec.target,
        });
    }
    let prefactor = 1.0 / (4.0 * std::f64::consts::PI.powi(2));
    Ok(TabulatedKernel {
        w11: prefactor * lambda1 * lambda1 * diag.re,
        w22: prefactor * lambda2 * lambda2 * diag.re,
        w12: cross * (prefactor * lambda1 * lambda2),
    })
}

/// [`quadrature_kernel`] reduced to a moment set.
pub fn quadrature_minkowski_moments(
    lambda1: f64,
    lambda2: f64,
    sigma: f64,
    dtau: f64,
    spec: &QuadratureSpec,
) -> Result<MomentSet<f64>> {
    moment_set_from_kernel(&quadrature_kernel(lambda1, lambda2, sigma, dtau, spec)?)
}
