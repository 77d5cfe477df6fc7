//! Random ensembles of physically realizable inputs.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;

use super::fock::{FockParams, DEFAULT_DIM};
use crate::algebra::{moment_set_from_kernel, TabulatedKernel};
use crate::cycle::{CycleConfig, InteractionEvent};
use crate::MomentSet;

/// A two-smearing kernel with `|W12|^2 <= W11 W22`, which is exactly the
/// condition for some quasi-free state to realize it.
pub fn random_kernel<R: Rng + ?Sized>(rng: &mut R) -> TabulatedKernel<f64> {
    let w11 = rng.gen_range(0.0..3.0);
    let w22 = rng.gen_range(0.0..3.0);
    let r: f64 = rng.gen_range(0.0..=1.0);
    let phase = rng.gen_range(-PI..PI);
    TabulatedKernel {
        w11,
        w22,
        w12: Complex64::from_polar(r * (w11 * w22).sqrt(), phase),
    }
}

pub fn random_moment_set<R: Rng + ?Sized>(rng: &mut R) -> MomentSet<f64> {
    moment_set_from_kernel(&random_kernel(rng)).expect("sampled kernels satisfy the contract")
}

/// Moment set with no signal between the kicks.
pub fn random_silent_moment_set<R: Rng + ?Sized>(rng: &mut R) -> MomentSet<f64> {
    let m = random_moment_set(rng);
    MomentSet::new(m.nu1(), m.nu2(), 0.0, m.mu12()).expect("valid")
}

/// Two kicks with unit width, random times and gaps, cyclic initial state.
pub fn random_cycle<R: Rng + ?Sized>(rng: &mut R) -> CycleConfig<f64> {
    let tau1 = rng.gen_range(-5.0..5.0);
    let tau2 = tau1 + rng.gen_range(0.01..10.0);
    let first = InteractionEvent::new(tau1, rng.gen_range(0.1..5.0), 1.0, 1.0).expect("valid");
    let second = InteractionEvent::new(tau2, rng.gen_range(0.1..5.0), 1.0, 1.0).expect("valid");
    CycleConfig::new(first, second, None).expect("valid")
}

/// Single-mode oracle case with `|alpha_j| <= max_coupling` and `nbar` in {0, 1}.
pub fn random_fock_params<R: Rng + ?Sized>(rng: &mut R, max_coupling: f64) -> FockParams {
    let mut alpha =
        || Complex64::from_polar(rng.gen_range(0.0..=max_coupling), rng.gen_range(-PI..PI));
    let alpha1 = alpha();
    let alpha2 = alpha();
    let nbar = if rng.gen_bool(0.5) { 0.0 } else { 1.0 };
    FockParams {
        alpha1,
        alpha2,
        nbar,
        dim: DEFAULT_DIM,
    }
}
