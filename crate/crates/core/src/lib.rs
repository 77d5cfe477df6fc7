//! Work extraction by a delta-coupled Unruh-DeWitt detector running a
//! quantum Otto cycle against a quasi-free scalar field.
//!
//! Every field state, geometry and trajectory enters the cycle through a
//! [`MomentSet`]: the two single-kick decoherence factors `nu1`, `nu2`, the
//! smeared causal propagator `e12` and the smeared symmetric correlator
//! `mu12`. The [`algebra`] and [`cycle`] modules turn a `MomentSet` into
//! populations, stroke-by-stroke work and heat, and the extracted work.
//! [`minkowski`] supplies the analytic kernel for an inertial,
//! Gaussian-smeared detector in the massless Minkowski vacuum, and
//! [`oracle`] re-derives all of it by brute force (truncated Fock space
//! and radial quadrature).
//!
//! The closed-form layers are generic over the floating point type
//! through [`Scalar`]; the oracles are `f64` only.

// Range checks are written negated so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod cycle;
pub mod dawson;
mod error;
pub mod minkowski;
pub mod oracle;
mod scalar;

pub use crate::algebra::{
    alpha_factor, combined_nu, moment_set_from_kernel, p_after_first, p_after_second, weyl_moments,
    Combination, MomentSet, QuasiFreeKernel, Slot, TabulatedKernel, WeylMoments,
};
pub use crate::cycle::{
    cyclic_initial_population, extracted_work, positive_work_condition, stroke_ledger, theta,
    CycleConfig, ExtractedWork, InteractionEvent, WorkReport,
};
pub use crate::dawson::dawson;
pub use crate::error::{Error, Result};
pub use crate::minkowski::{figure4a_curve, minkowski_moments, MinkowskiParams};
pub use crate::scalar::Scalar;

pub type MomentSet64 = MomentSet<f64>;
pub type MomentSet32 = MomentSet<f32>;
pub type WeylMoments64 = WeylMoments<f64>;
pub type InteractionEvent64 = InteractionEvent<f64>;
pub type CycleConfig64 = CycleConfig<f64>;
pub type WorkReport64 = WorkReport<f64>;
pub type MinkowskiParams64 = MinkowskiParams<f64>;
pub type TabulatedKernel64 = TabulatedKernel<f64>;
