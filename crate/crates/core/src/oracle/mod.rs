//! Independent brute-force checks of the closed forms.
//!
//! [`fock`] evolves the qubit and one truncated bosonic mode exactly,
//! [`quadrature`] integrates the Minkowski Wightman function numerically and
//! [`special`] evaluates the Dawson function by routes that share nothing
//! with [`crate::dawson()`].

pub mod fock;
pub mod quadrature;
pub mod sampling;
pub mod special;

pub use fock::{
    simulate_cycle_fock, single_mode_kernel, verify_weyl_moments, FockCycle, FockParams,
};
pub use quadrature::{
    quadrature_kernel, quadrature_minkowski_moments, QuadratureRule, QuadratureSpec,
};
pub use sampling::{
    random_cycle, random_fock_params, random_kernel, random_moment_set, random_silent_moment_set,
};
