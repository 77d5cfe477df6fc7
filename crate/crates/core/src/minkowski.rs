//! Analytic kernel for an inertial detector with Gaussian smearing
//! `F(x) = exp(-|x|^2 / sigma^2) / (sqrt(pi) sigma)^3` coupled to the
//! massless Minkowski vacuum in 3+1 dimensions.

use crate::cycle::{extracted_work, CycleConfig, InteractionEvent};
use crate::{dawson, theta, Error, MomentSet, Result, Scalar};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinkowskiParams<T> {
    /// Effective coupling of the first kick.
    pub lambda1: T,
    /// Effective coupling of the second kick.
    pub lambda2: T,
    /// Gaussian width.
    pub sigma: T,
    /// `tau2 - tau1`.
    pub dtau: T,
}

impl<T: Scalar> MinkowskiParams<T> {
    pub fn new(lambda1: T, lambda2: T, sigma: T, dtau: T) -> Result<Self> {
        let check = |name, value: T, ok: bool, reason| {
            if value.is_finite() && ok {
                Ok(())
            } else {
                Err(Error::InvalidParameter {
                    name,
                    value: value.as_f64(),
                    reason,
                })
            }
        };
        check(
            "lambda1",
            lambda1,
            lambda1 >= T::zero(),
            "must be non-negative",
        )?;
        check(
            "lambda2",
            lambda2,
            lambda2 >= T::zero(),
            "must be non-negative",
        )?;
        check("sigma", sigma, sigma > T::zero(), "must be positive")?;
        check("dtau", dtau, dtau >= T::zero(), "must be non-negative")?;
        Ok(Self {
            lambda1,
            lambda2,
            sigma,
            dtau,
        })
    }
}

/// Closed-form `(nu1, nu2, e12, mu12)` for the Gaussian-smeared vacuum kernel.
///
/// With `x = dtau / (sqrt(2) sigma)`:
/// `nu_j = exp(-lambda_j^2 / (2 pi^2 sigma^2))`,
/// `e12 = lambda1 lambda2 / (2 pi^{3/2} sigma^2) * x exp(-x^2)`,
/// `mu12 = lambda1 lambda2 / (4 pi^2 sigma^2) * (1 - 2 x D(x))`.
pub fn minkowski_moments<T: Scalar>(params: &MinkowskiParams<T>) -> Result<MomentSet<T>> {
    let pi = T::PI();
    let two = T::two();
    let s2 = params.sigma * params.sigma;
    let nu = |lambda: T| (-(lambda * lambda) / (two * pi * pi * s2)).exp();
    let product = params.lambda1 * params.lambda2;
    let x = params.dtau / (T::SQRT_2() * params.sigma);
    let e12 = product / (two * pi * pi.sqrt() * s2) * x * (-x * x).exp();
    let mu12 = product / (T::lit(4.0) * pi * pi * s2) * (T::one() - two * x * dawson(x));
    MomentSet::new(nu(params.lambda1), nu(params.lambda2), e12, mu12)
}

/// Extracted work along a grid of second-kick times, everything in units
/// of the Gaussian width (`sigma = 1`).
///
/// Returns `(tau2, w_ext)` pairs; degenerate cycles contribute zero.
pub fn figure4a_curve<T: Scalar>(
    omega1: T,
    omega2: T,
    tau1: T,
    lambda1: T,
    lambda2: T,
    tau2_grid: &[T],
) -> Result<Vec<(T, T)>> {
    for pair in tau2_grid.windows(2) {
        if pair[1] <= pair[0] {
            return Err(Error::InvalidParameter {
                name: "tau2_grid",
                value: pair[1].as_f64(),
                reason: "grid must be strictly increasing",
            });
        }
    }
    let one = T::one();
    let first = InteractionEvent::new(tau1, omega1, lambda1, one)?;
    tau2_grid
        .iter()
        .map(|&tau2| {
            let second = InteractionEvent::new(tau2, omega2, lambda2, one)?;
            let config = CycleConfig::new(first, second, None)?;
            let params = MinkowskiParams::new(lambda1, lambda2, one, tau2 - tau1)?;
            let m = minkowski_moments(&params)?;
            let w = extracted_work(&m, theta(&config), config.delta_omega())?;
            Ok((tau2, w.work))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alpha_factor;
    use std::f64::consts::PI;

    fn params(l1: f64, l2: f64, dtau: f64) -> MinkowskiParams<f64> {
        MinkowskiParams::new(l1, l2, 1.0, dtau).unwrap()
    }

    #[test]
    fn parameter_validation() {
        assert!(MinkowskiParams::new(-1.0, 1.0, 1.0, 0.0).is_err());
        assert!(MinkowskiParams::new(1.0, 1.0, 0.0, 0.0).is_err());
        assert!(MinkowskiParams::new(1.0, 1.0, 1.0, -0.1).is_err());
    }

    #[test]
    fn absent_first_kick() {
        let m = minkowski_moments(&params(0.0, 2.0, 1.3)).unwrap();
        assert_eq!(m.nu1(), 1.0);
        assert!((m.nu2() - (-4.0 / (2.0 * PI * PI)).exp()).abs() < 1e-16);
        assert_eq!(m.e12(), 0.0);
        assert_eq!(m.mu12(), 0.0);
    }

    #[test]
    fn equal_time_kicks_do_not_signal() {
        let m = minkowski_moments(&params(1.5, 2.0, 0.0)).unwrap();
        assert_eq!(m.e12(), 0.0);
        assert!((m.mu12() - 3.0 / (4.0 * PI * PI)).abs() < 1e-16);
    }

    #[test]
    fn closed_form_at_unit_separation() {
        // (1 / (2 pi^{3/2})) (1/sqrt 2) e^{-1/2}, 40-digit evaluation.
        let m = minkowski_moments(&params(1.0, 1.0, 1.0)).unwrap();
        assert!((m.e12() - 0.038_510_836_890_748_94).abs() < 1e-16);
    }

    #[test]
    fn width_scaling() {
        // Everything depends on lambda / sigma and dtau / sigma only.
        let a = minkowski_moments(&MinkowskiParams::new(2.0, 1.0, 2.0, 3.0).unwrap()).unwrap();
        let b = minkowski_moments(&params(1.0, 0.5, 1.5)).unwrap();
        for (x, y) in [
            (a.nu1(), b.nu1()),
            (a.nu2(), b.nu2()),
            (a.e12(), b.e12()),
            (a.mu12(), b.mu12()),
        ] {
            assert!((x - y).abs() < 1e-15);
        }
    }

    #[test]
    fn signal_peaks_at_one_width() {
        let grid: Vec<f64> = (1..4000).map(|i| i as f64 * 1e-3).collect();
        let best = grid
            .iter()
            .copied()
            .max_by(|&a, &b| {
                let ea = minkowski_moments(&params(1.0, 1.0, a)).unwrap().e12();
                let eb = minkowski_moments(&params(1.0, 1.0, b)).unwrap().e12();
                ea.partial_cmp(&eb).unwrap()
            })
            .unwrap();
        assert!((best - 1.0).abs() <= 1e-3);
    }

    #[test]
    fn correlations_decay_and_mu_changes_sign() {
        let m0 = minkowski_moments(&params(1.0, 1.0, 0.0)).unwrap();
        assert!(m0.mu12() > 0.0);
        let far = minkowski_moments(&params(1.0, 1.0, 40.0)).unwrap();
        assert!(far.e12().abs() < 1e-100);
        // mu12 ~ -product / (4 pi^2) / (2 x^2) for large x.
        let x = 40.0 / 2f64.sqrt();
        assert!((far.mu12() / (-1.0 / (4.0 * PI * PI) / (2.0 * x * x)) - 1.0).abs() < 1e-2);
        // Sign change where 2 x D(x) = 1, x = 0.92413887...
        let root = 0.924_138_873_004_591_8 * 2f64.sqrt();
        assert!(
            minkowski_moments(&params(1.0, 1.0, root - 1e-6))
                .unwrap()
                .mu12()
                > 0.0
        );
        assert!(
            minkowski_moments(&params(1.0, 1.0, root + 1e-6))
                .unwrap()
                .mu12()
                < 0.0
        );
        assert_eq!(m0.nu1(), far.nu1());
    }

    #[test]
    fn moments_are_kernel_consistent() {
        for l1 in [0.5, 5.0, 30.0, 100.0] {
            for l2 in [0.5, 1.0, 2.0, 10.0] {
                for dtau in [0.0, 0.3, 1.0, 2.5, 6.0] {
                    let m = minkowski_moments(&params(l1, l2, dtau)).unwrap();
                    for theta in [-4.5, -1.0, 0.0, 2.0] {
                        alpha_factor(&m, theta).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn curve_vanishes_without_second_coupling() {
        let grid: Vec<f64> = (1..50).map(|i| i as f64 * 0.1).collect();
        let curve = figure4a_curve(1.0, 3.0, 0.0, 100.0, 0.0, &grid).unwrap();
        assert!(curve.iter().all(|&(_, w)| w == 0.0));
    }

    #[test]
    fn curve_signs_follow_sign_law() {
        let grid: Vec<f64> = (1..400).map(|i| i as f64 * 0.01).collect();
        let curve = figure4a_curve(1.0, 3.0, 0.0, 100.0, 1.0, &grid).unwrap();
        let delta: f64 = 1.0 - 3.0;
        for &(tau2, w) in &curve {
            let m = minkowski_moments(&params(100.0, 1.0, tau2)).unwrap();
            let s = (2.0 * m.e12()).sin() * (-3.0 * tau2).sin();
            if s != 0.0 {
                assert_eq!(w.signum(), -(s * delta).signum(), "tau2 = {tau2}");
            }
        }
        // Several sign changes inside the signalling window.
        let flips = curve.windows(2).filter(|p| p[0].1 * p[1].1 < 0.0).count();
        assert!(flips >= 2);
    }

    #[test]
    fn curve_decays_once_signal_is_gone() {
        let grid: Vec<f64> = (0..=40).map(|i| 6.5 + i as f64 * 0.05).collect();
        let curve = figure4a_curve(1.0, 3.0, 0.0, 100.0, 1.0, &grid).unwrap();
        assert!(curve.iter().all(|&(_, w)| w.abs() < 1e-6));
    }

    #[test]
    fn curve_rejects_bad_grids() {
        assert!(figure4a_curve(1.0, 3.0, 0.0, 1.0, 1.0, &[1.0, 1.0]).is_err());
        assert!(figure4a_curve(1.0, 3.0, 0.0, 1.0, 1.0, &[2.0, 1.0]).is_err());
        assert!(figure4a_curve(1.0, 3.0, 1.0, 1.0, 1.0, &[0.5, 2.0]).is_err());
    }
}
