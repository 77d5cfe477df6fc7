//! Otto-cycle bookkeeping for two delta kicks.
//!
//! Stroke order: adiabatic expansion `gap2 -> gap1` (work `w1`), first kick
//! at gap `gap1` (heat `q2`), adiabatic compression `gap1 -> gap2` (work
//! `w3`), second kick at gap `gap2` (heat `q4`). The cycle closes when the
//! population after the second kick equals the initial one.
//!
//! `delta_omega = gap1 - gap2` is used with whatever sign it has. The
//! textbook engine has `gap1 > gap2`; the Minkowski figure parameters do
//! not, and reproduce as given.

use crate::algebra::{contraction, p_after_first, p_after_second, signal_term, POPULATION_TOL};
use crate::{Error, MomentSet, Result, Scalar};

/// `|nu1 nu2 alpha - 1|` below this means neither kick did anything.
pub const DEGENERACY_TOL: f64 = 1e-12;

/// One delta kick.
///
/// In units where the smearing width is 1: `tau` in units of the width,
/// `gap` in inverse width, `coupling` (the effective `lambda * eta`) in
/// units of the width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InteractionEvent<T> {
    pub tau: T,
    pub gap: T,
    pub coupling: T,
    pub width: T,
}

impl<T: Scalar> InteractionEvent<T> {
    pub fn new(tau: T, gap: T, coupling: T, width: T) -> Result<Self> {
        let finite = |name, value: T| {
            if value.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidParameter {
                    name,
                    value: value.as_f64(),
                    reason: "not finite",
                })
            }
        };
        finite("tau", tau)?;
        finite("gap", gap)?;
        finite("coupling", coupling)?;
        finite("width", width)?;
        if gap <= T::zero() {
            return Err(Error::InvalidParameter {
                name: "gap",
                value: gap.as_f64(),
                reason: "must be positive",
            });
        }
        if coupling < T::zero() {
            return Err(Error::InvalidParameter {
                name: "coupling",
                value: coupling.as_f64(),
                reason: "must be non-negative",
            });
        }
        if width <= T::zero() {
            return Err(Error::InvalidParameter {
                name: "width",
                value: width.as_f64(),
                reason: "must be positive",
            });
        }
        Ok(Self {
            tau,
            gap,
            coupling,
            width,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleConfig<T> {
    pub first: InteractionEvent<T>,
    pub second: InteractionEvent<T>,
    /// Initial excited population. `None` lets the cyclicity condition fix it.
    pub initial_p: Option<T>,
}

impl<T: Scalar> CycleConfig<T> {
    pub fn new(
        first: InteractionEvent<T>,
        second: InteractionEvent<T>,
        initial_p: Option<T>,
    ) -> Result<Self> {
        if second.tau <= first.tau {
            return Err(Error::InvalidParameter {
                name: "second.tau",
                value: second.tau.as_f64(),
                reason: "second kick must come after the first",
            });
        }
        if let Some(p) = initial_p {
            if !(p >= T::zero() && p <= T::one()) {
                return Err(Error::Domain {
                    name: "initial_p",
                    value: p.as_f64(),
                });
            }
        }
        Ok(Self {
            first,
            second,
            initial_p,
        })
    }

    /// `gap1 - gap2`.
    pub fn delta_omega(&self) -> T {
        self.first.gap - self.second.gap
    }
}

/// Monopole phase difference `gap1 tau1 - gap2 tau2`.
pub fn theta<T: Scalar>(config: &CycleConfig<T>) -> T {
    config.first.gap * config.first.tau - config.second.gap * config.second.tau
}

fn non_degenerate_denominator<T: Scalar>(m: &MomentSet<T>, theta: T) -> Result<T> {
    let denom = contraction(m, theta)? - T::one();
    if denom.abs() < T::tol(DEGENERACY_TOL) {
        return Err(Error::DegenerateCycle {
            product: (denom + T::one()).as_f64(),
        });
    }
    Ok(denom)
}

/// The initial excited population that the two kicks map back onto itself.
///
/// Returns [`Error::DegenerateCycle`] when the kicks act trivially; such a
/// cycle is a no-op and extracts no work.
pub fn cyclic_initial_population<T: Scalar>(m: &MomentSet<T>, theta: T) -> Result<T> {
    let denom = non_degenerate_denominator(m, theta)?;
    let p = T::half() - T::half() * signal_term(m, theta) / denom;
    let tol = T::tol(POPULATION_TOL);
    if !(p >= -tol && p <= T::one() + tol) {
        return Err(Error::KernelInconsistency {
            what: "cyclic p",
            value: p.as_f64(),
        });
    }
    Ok(p.max(T::zero()).min(T::one()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtractedWork<T> {
    pub work: T,
    /// Set when the kicks act trivially; `work` is then exactly zero.
    pub degenerate: bool,
}

/// Work extracted over one closed cycle, in units of `delta_omega`.
pub fn extracted_work<T: Scalar>(
    m: &MomentSet<T>,
    theta: T,
    delta_omega: T,
) -> Result<ExtractedWork<T>> {
    if !delta_omega.is_finite() {
        return Err(Error::InvalidParameter {
            name: "delta_omega",
            value: delta_omega.as_f64(),
            reason: "not finite",
        });
    }
    let denom = match non_degenerate_denominator(m, theta) {
        Ok(d) => d,
        Err(Error::DegenerateCycle { .. }) => {
            return Ok(ExtractedWork {
                work: T::zero(),
                degenerate: true,
            })
        }
        Err(e) => return Err(e),
    };
    let numerator = T::half() * signal_term(m, theta) * (T::one() - m.nu1());
    Ok(ExtractedWork {
        work: numerator / denom * delta_omega,
        degenerate: false,
    })
}

/// Sign criterion for positive work, assuming `delta_omega > 0`:
/// `sin(2 e12) sin(theta) < 0` and the first kick is not trivial.
pub fn positive_work_condition<T: Scalar>(m: &MomentSet<T>, theta: T) -> bool {
    (T::two() * m.e12()).sin() * theta.sin() < T::zero() && m.nu1() < T::one()
}

/// Per-stroke ledger of one cycle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WorkReport<T> {
    pub p: T,
    pub p1: T,
    pub p2: T,
    /// Work done on the qubit while expanding the gap.
    pub w1: T,
    /// Work done on the qubit while compressing the gap.
    pub w3: T,
    /// Heat absorbed during the first kick.
    pub q2: T,
    /// Heat absorbed during the second kick.
    pub q4: T,
    /// Extracted work; `None` when a supplied `initial_p` does not close the cycle.
    pub w_ext: Option<T>,
    pub q_total: T,
    /// `w_ext / q2`, when both exist and `q2 != 0`.
    pub efficiency: Option<T>,
    /// `w_ext > 0`.
    pub pwc: bool,
    pub degenerate: bool,
    pub closed: bool,
}

pub fn stroke_ledger<T: Scalar>(
    config: &CycleConfig<T>,
    m: &MomentSet<T>,
) -> Result<WorkReport<T>> {
    let theta = theta(config);
    let delta = config.delta_omega();
    let zero = T::zero();

    let p = match config.initial_p {
        Some(p) => p,
        None => match cyclic_initial_population(m, theta) {
            Ok(p) => p,
            Err(Error::DegenerateCycle { .. }) => {
                return Ok(degenerate_report(T::half()));
            }
            Err(e) => return Err(e),
        },
    };
    if config.initial_p.is_some() {
        match non_degenerate_denominator(m, theta) {
            Err(Error::DegenerateCycle { .. }) => return Ok(degenerate_report(p)),
            Err(e) => return Err(e),
            Ok(_) => {}
        }
    }

    let p1 = p_after_first(p, m)?;
    let p2 = p_after_second(p, m, theta)?;
    let w1 = p * delta;
    let w3 = -p1 * delta;
    let q2 = config.first.gap * (p1 - p);
    let q4 = config.second.gap * (p2 - p1);
    let closed = (p2 - p).abs() < T::tol(POPULATION_TOL);
    let w_ext = closed.then(|| -(w1 + w3));
    let efficiency = w_ext.and_then(|w| (q2 != zero).then(|| w / q2));
    Ok(WorkReport {
        p,
        p1,
        p2,
        w1,
        w3,
        q2,
        q4,
        w_ext,
        q_total: q2 + q4,
        efficiency,
        pwc: w_ext.is_some_and(|w| w > zero),
        degenerate: false,
        closed,
    })
}

fn degenerate_report<T: Scalar>(p: T) -> WorkReport<T> {
    let zero = T::zero();
    WorkReport {
        p,
        p1: p,
        p2: p,
        w1: zero,
        w3: zero,
        q2: zero,
        q4: zero,
        w_ext: Some(zero),
        q_total: zero,
        efficiency: None,
        pwc: false,
        degenerate: true,
        closed: true,
    }
}
