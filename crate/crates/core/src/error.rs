use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid kernel: {what} is not finite ({value})")]
    InvalidKernel { what: &'static str, value: f64 },

    #[error("kernel contract violated: Re W({slot},{slot}) = {value} < 0")]
    ContractViolation { slot: usize, value: f64 },

    #[error("invalid {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("{name} = {value} outside [0, 1]")]
    Domain { name: &'static str, value: f64 },

    #[error("range error: |4 mu12| = {value} exceeds the overflow guard")]
    Range { value: f64 },

    #[error(
        "kernel inconsistency: {what} = {value} (no quasi-free state realizes this moment set)"
    )]
    KernelInconsistency { what: &'static str, value: f64 },

    #[error("degenerate cycle: nu1*nu2*alpha = {product} is 1 to within 1e-12")]
    DegenerateCycle { product: f64 },

    #[error(
        "Fock truncation too small: top level population {top_population:e} at dim {dim}; \
         retry with dim >= {suggested_dim}"
    )]
    Truncation {
        dim: usize,
        top_population: f64,
        suggested_dim: usize,
    },

    #[error("quadrature did not converge: successive refinements differ by {difference:e} (target {target:e})")]
    Accuracy { difference: f64, target: f64 },
}
