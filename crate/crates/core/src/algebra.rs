//! Quasi-free kernel contract, the six Weyl moments of the second kick and
//! the population maps `p -> p1 -> p2`.
//!
//! Conventions: the smeared Wightman function splits as
//! `W(f1, f2) = mu12 + (i/2) e12`, so `e12 = 2 Im W(f1, f2)` is the smeared
//! causal propagator and `mu12 = Re W(f1, f2)` the symmetric correlator.
//! A single kick decoheres by `nu_j = exp(-2 W(f_j, f_j))`.

use num_complex::Complex;

use crate::{Error, Result, Scalar};

/// Slack on the `nu1 * nu2 * alpha <= 1` bound; values inside it are clamped.
pub const KERNEL_CONSISTENCY_TOL: f64 = 1e-9;

/// Slack on the population simplex before a result is treated as inconsistent.
pub const POPULATION_TOL: f64 = 1e-12;

/// `|4 mu12|` beyond this is rejected instead of overflowing `cosh`/`exp`.
pub const MAX_EXPONENT: f64 = 700.0;

/// The four smeared two-point numbers that fully determine the cycle.
///
/// `nu1` and `nu2` lie in `[0, 1]`. Zero is only reachable when
/// `exp(-2 W(f, f))` underflows for very strong couplings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentSet<T> {
    nu1: T,
    nu2: T,
    e12: T,
    mu12: T,
}

impl<T: Scalar> MomentSet<T> {
    pub fn new(nu1: T, nu2: T, e12: T, mu12: T) -> Result<Self> {
        for (name, value) in [("nu1", nu1), ("nu2", nu2), ("e12", e12), ("mu12", mu12)] {
            if !value.is_finite() {
                return Err(Error::InvalidParameter {
                    name,
                    value: value.as_f64(),
                    reason: "not finite",
                });
            }
        }
        for (name, value) in [("nu1", nu1), ("nu2", nu2)] {
            if value < T::zero() || value > T::one() {
                return Err(Error::Domain {
                    name,
                    value: value.as_f64(),
                });
            }
        }
        Ok(Self {
            nu1,
            nu2,
            e12,
            mu12,
        })
    }

    /// No interaction at all: `(1, 1, 0, 0)`.
    pub fn identity() -> Self {
        Self {
            nu1: T::one(),
            nu2: T::one(),
            e12: T::zero(),
            mu12: T::zero(),
        }
    }

    pub fn nu1(&self) -> T {
        self.nu1
    }

    pub fn nu2(&self) -> T {
        self.nu2
    }

    pub fn e12(&self) -> T {
        self.e12
    }

    pub fn mu12(&self) -> T {
        self.mu12
    }

    fn checked_exponent(&self) -> Result<T> {
        let x = T::lit(4.0) * self.mu12;
        if x.abs() > T::lit(MAX_EXPONENT) || !x.exp().is_finite() || !(-x).exp().is_finite() {
            return Err(Error::Range { value: x.as_f64() });
        }
        Ok(x)
    }
}

/// Which of the two kicks a smearing belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Slot {
    First,
    Second,
}

/// A quasi-free state restricted to the two kick smearings.
///
/// Implementors must return a Hermitian form: `W(f, f)` real and
/// non-negative, `W(f2, f1) = conj(W(f1, f2))`.
pub trait QuasiFreeKernel<T: Scalar> {
    /// Smeared Wightman function `W(f_i, f_j)`.
    fn wightman(&self, i: Slot, j: Slot) -> Complex<T>;
}

/// Kernel given directly by its three independent entries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TabulatedKernel<T> {
    pub w11: T,
    pub w22: T,
    pub w12: Complex<T>,
}

impl<T: Scalar> QuasiFreeKernel<T> for TabulatedKernel<T> {
    fn wightman(&self, i: Slot, j: Slot) -> Complex<T> {
        match (i, j) {
            (Slot::First, Slot::First) => Complex::new(self.w11, T::zero()),
            (Slot::Second, Slot::Second) => Complex::new(self.w22, T::zero()),
            (Slot::First, Slot::Second) => self.w12,
            (Slot::Second, Slot::First) => self.w12.conj(),
        }
    }
}

impl<T: Scalar, K: QuasiFreeKernel<T> + ?Sized> QuasiFreeKernel<T> for &K {
    fn wightman(&self, i: Slot, j: Slot) -> Complex<T> {
        (**self).wightman(i, j)
    }
}

fn finite_entry<T: Scalar>(what: &'static str, w: Complex<T>) -> Result<Complex<T>> {
    for v in [w.re, w.im] {
        if !v.is_finite() {
            return Err(Error::InvalidKernel {
                what,
                value: v.as_f64(),
            });
        }
    }
    Ok(w)
}

pub fn moment_set_from_kernel<T: Scalar, K: QuasiFreeKernel<T> + ?Sized>(
    kernel: &K,
) -> Result<MomentSet<T>> {
    let w11 = finite_entry("W(f1,f1)", kernel.wightman(Slot::First, Slot::First))?;
    let w22 = finite_entry("W(f2,f2)", kernel.wightman(Slot::Second, Slot::Second))?;
    let w12 = finite_entry("W(f1,f2)", kernel.wightman(Slot::First, Slot::Second))?;
    for (slot, w) in [(1, w11), (2, w22)] {
        if w.re < T::zero() {
            return Err(Error::ContractViolation {
                slot,
                value: w.re.as_f64(),
            });
        }
    }
    let two = T::two();
    MomentSet::new(
        (-two * w11.re).exp(),
        (-two * w22.re).exp(),
        two * w12.im,
        w12.re,
    )
}

/// Sum or difference of the two smearings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Combination {
    Sum,
    Difference,
}

/// `nu` of the combined smearing `f1 + f2` or `f1 - f2`, expanded by
/// bilinearity of the kernel.
pub fn combined_nu<T: Scalar, K: QuasiFreeKernel<T> + ?Sized>(
    kernel: &K,
    combination: Combination,
) -> Result<T> {
    let w11 = finite_entry("W(f1,f1)", kernel.wightman(Slot::First, Slot::First))?;
    let w22 = finite_entry("W(f2,f2)", kernel.wightman(Slot::Second, Slot::Second))?;
    let w12 = finite_entry("W(f1,f2)", kernel.wightman(Slot::First, Slot::Second))?;
    let w21 = finite_entry("W(f2,f1)", kernel.wightman(Slot::Second, Slot::First))?;
    let cross = match combination {
        Combination::Sum => w12 + w21,
        Combination::Difference => -(w12 + w21),
    };
    let w = w11 + w22 + cross;
    Ok((-T::two() * w.re).exp())
}

/// The six distinct field expectation values entering the state after
/// the second kick, with `C_j = cos(phi_j)` and `S_j = sin(phi_j)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeylMoments<T> {
    /// `w(C1 C2^2 C1)`
    pub cccc: T,
    /// `w(C1 S2^2 C1)`
    pub cssc: T,
    /// `w(S1 C2^2 S1)`
    pub sccs: T,
    /// `w(S1 S2^2 S1)`
    pub ssss: T,
    /// `w(C1 S2 C2 S1)`
    pub csc_s: Complex<T>,
    /// `w(S1 S2 C2 C1)`
    pub ssc_c: Complex<T>,
}

impl<T: Scalar> WeylMoments<T> {
    /// The four real moments, which partition `w(1) = 1`.
    pub fn real_sum(&self) -> T {
        self.cccc + self.cssc + self.sccs + self.ssss
    }
}

pub fn weyl_moments<T: Scalar>(m: &MomentSet<T>) -> Result<WeylMoments<T>> {
    let x = m.checked_exponent()?;
    let quarter = T::lit(0.25);
    let (nu1, nu2) = (m.nu1, m.nu2);
    let ch = nu1 * nu2 * x.cosh();
    let sh = nu1 * x.sinh();
    let (s, c) = (T::two() * m.e12).sin_cos();
    let c = nu2 * c;
    let one = T::one();
    let q = nu2 * quarter;
    Ok(WeylMoments {
        cccc: quarter * (one + nu1 + ch + c),
        cssc: quarter * (one + nu1 - ch - c),
        sccs: quarter * (one - nu1 - ch + c),
        ssss: quarter * (one - nu1 + ch - c),
        csc_s: Complex::new(q * sh, -q * s),
        ssc_c: Complex::new(q * sh, q * s),
    })
}

fn check_probability<T: Scalar>(name: &'static str, p: T) -> Result<()> {
    if !(p >= T::zero() && p <= T::one()) {
        return Err(Error::Domain {
            name,
            value: p.as_f64(),
        });
    }
    Ok(())
}

/// Excited population after the first kick.
pub fn p_after_first<T: Scalar>(p: T, m: &MomentSet<T>) -> Result<T> {
    check_probability("p", p)?;
    let half = T::half();
    Ok(half + (p - half) * m.nu1)
}

/// `alpha = e^{4 mu12} sin^2(theta/2) + e^{-4 mu12} cos^2(theta/2)`.
///
/// Fails when `nu1 nu2 alpha` exceeds 1 by more than
/// [`KERNEL_CONSISTENCY_TOL`]; just above 1 it is clamped so the product
/// is exactly 1.
pub fn alpha_factor<T: Scalar>(m: &MomentSet<T>, theta: T) -> Result<T> {
    if !theta.is_finite() {
        return Err(Error::InvalidParameter {
            name: "theta",
            value: theta.as_f64(),
            reason: "not finite",
        });
    }
    let x = m.checked_exponent()?;
    let (s, c) = (theta * T::half()).sin_cos();
    let alpha = x.exp() * s * s + (-x).exp() * c * c;
    let product = m.nu1 * m.nu2 * alpha;
    if product > T::one() + T::tol(KERNEL_CONSISTENCY_TOL) {
        return Err(Error::KernelInconsistency {
            what: "nu1*nu2*alpha",
            value: product.as_f64(),
        });
    }
    if product > T::one() {
        return Ok(T::one() / (m.nu1 * m.nu2));
    }
    Ok(alpha)
}

/// `nu1 nu2 alpha`, the contraction of the population offset over the
/// two kicks when there is no signalling.
pub(crate) fn contraction<T: Scalar>(m: &MomentSet<T>, theta: T) -> Result<T> {
    Ok(m.nu1 * m.nu2 * alpha_factor(m, theta)?)
}

/// `nu2 sin(2 e12) sin(theta)`, the part of `2 p2 - 1` carried by the
/// signal from the first kick.
pub(crate) fn signal_term<T: Scalar>(m: &MomentSet<T>, theta: T) -> T {
    m.nu2 * (T::two() * m.e12).sin() * theta.sin()
}

/// Excited population after the second kick, starting from `p` before the
/// first one. `theta = gap1 * tau1 - gap2 * tau2`.
pub fn p_after_second<T: Scalar>(p: T, m: &MomentSet<T>, theta: T) -> Result<T> {
    check_probability("p", p)?;
    let k = contraction(m, theta)?;
    let one = T::one();
    let p2 = T::half() * (one + signal_term(m, theta) + (T::two() * p - one) * k);
    let tol = T::tol(POPULATION_TOL);
    if !(p2 >= -tol && p2 <= one + tol) {
        return Err(Error::KernelInconsistency {
            what: "p2",
            value: p2.as_f64(),
        });
    }
    Ok(p2.max(T::zero()).min(one))
}
