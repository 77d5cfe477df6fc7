//! Exact evolution of the qubit coupled to one truncated bosonic mode.
//!
//! The smeared field at kick `j` is realized as `phi_j = a_j a + conj(a_j) a^dag`
//! on a mode in the vacuum or a thermal state. Such a mode is a quasi-free
//! state with `W(f_j, f_k) = a_j conj(a_k) (nbar + 1) + conj(a_j) a_k nbar`,
//! so any moment set it produces can be checked against the closed forms.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::algebra::{moment_set_from_kernel, weyl_moments, TabulatedKernel};
use crate::{Error, Result};

/// Highest-level population allowed in any state the oracle touches.
pub const TRUNCATION_GUARD: f64 = 1e-10;

pub const DEFAULT_DIM: usize = 60;

type Matrix = DMatrix<Complex64>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockParams {
    pub alpha1: Complex64,
    pub alpha2: Complex64,
    /// Thermal occupation `<a^dag a>`.
    pub nbar: f64,
    /// Number of Fock levels kept.
    pub dim: usize,
}

impl FockParams {
    pub fn new(alpha1: Complex64, alpha2: Complex64, nbar: f64, dim: usize) -> Result<Self> {
        for (name, v) in [
            ("alpha1.re", alpha1.re),
            ("alpha1.im", alpha1.im),
            ("alpha2.re", alpha2.re),
            ("alpha2.im", alpha2.im),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter {
                    name,
                    value: v,
                    reason: "not finite",
                });
            }
        }
        if !(nbar >= 0.0 && nbar.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "nbar",
                value: nbar,
                reason: "must be finite and non-negative",
            });
        }
        if dim < 2 {
            return Err(Error::InvalidParameter {
                name: "dim",
                value: dim as f64,
                reason: "need at least two Fock levels",
            });
        }
        Ok(Self {
            alpha1,
            alpha2,
            nbar,
            dim,
        })
    }

    pub fn vacuum(alpha1: Complex64, alpha2: Complex64) -> Self {
        Self {
            alpha1,
            alpha2,
            nbar: 0.0,
            dim: DEFAULT_DIM,
        }
    }
}

/// Two-point function of the mode restricted to the two kick smearings.
pub fn single_mode_kernel(fp: &FockParams) -> TabulatedKernel<f64> {
    let w = |x: Complex64, y: Complex64| x * y.conj() * (fp.nbar + 1.0) + x.conj() * y * fp.nbar;
    TabulatedKernel {
        w11: w(fp.alpha1, fp.alpha1).re,
        w22: w(fp.alpha2, fp.alpha2).re,
        w12: w(fp.alpha1, fp.alpha2),
    }
}

/// Excited populations after each kick, plus diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockCycle {
    pub p1: f64,
    pub p2: f64,
    /// `|tr rho - 1|` of the final joint state.
    pub trace_error: f64,
    /// Largest top-level population seen across the evolved field states.
    pub top_population: f64,
}

struct Mode {
    dim: usize,
    rho: Matrix,
    cos: [Matrix; 2],
    sin: [Matrix; 2],
}

fn field_operator(alpha: Complex64, dim: usize) -> Matrix {
    let mut phi = Matrix::zeros(dim, dim);
    for n in 1..dim {
        let s = (n as f64).sqrt();
        phi[(n - 1, n)] = alpha * s;
        phi[(n, n - 1)] = alpha.conj() * s;
    }
    phi
}

/// `cos(phi)` and `sin(phi)` of a Hermitian matrix from its eigendecomposition.
fn cos_sin(phi: Matrix) -> (Matrix, Matrix) {
    let eig = phi.symmetric_eigen();
    let q = &eig.eigenvectors;
    let qh = q.adjoint();
    let scaled = |f: fn(f64) -> f64| {
        let mut m = q.clone();
        for (j, &lambda) in eig.eigenvalues.iter().enumerate() {
            let v = Complex64::new(f(lambda), 0.0);
            for x in m.column_mut(j).iter_mut() {
                *x *= v;
            }
        }
        &m * &qh
    };
    (scaled(f64::cos), scaled(f64::sin))
}

fn thermal_state(nbar: f64, dim: usize) -> Matrix {
    let mut rho = Matrix::zeros(dim, dim);
    if nbar == 0.0 {
        rho[(0, 0)] = Complex64::new(1.0, 0.0);
        return rho;
    }
    let ratio = nbar / (nbar + 1.0);
    let weights: Vec<f64> = (0..dim).map(|n| ratio.powi(n as i32)).collect();
    let total: f64 = weights.iter().sum();
    for (n, w) in weights.into_iter().enumerate() {
        rho[(n, n)] = Complex64::new(w / total, 0.0);
    }
    rho
}

impl Mode {
    fn new(fp: &FockParams) -> Result<Self> {
        let fp = FockParams::new(fp.alpha1, fp.alpha2, fp.nbar, fp.dim)?;
        let (c1, s1) = cos_sin(field_operator(fp.alpha1, fp.dim));
        let (c2, s2) = cos_sin(field_operator(fp.alpha2, fp.dim));
        Ok(Self {
            dim: fp.dim,
            rho: thermal_state(fp.nbar, fp.dim),
            cos: [c1, c2],
            sin: [s1, s2],
        })
    }

    fn top(&self, rho: &Matrix) -> f64 {
        rho[(self.dim - 1, self.dim - 1)].re
    }

    fn guard(&self, top_population: f64) -> Result<()> {
        if top_population > TRUNCATION_GUARD {
            return Err(Error::Truncation {
                dim: self.dim,
                top_population,
                suggested_dim: 2 * self.dim,
            });
        }
        Ok(())
    }

    fn expect(&self, ops: [&Matrix; 4]) -> Complex64 {
        let product = ops[0] * ops[1] * ops[2] * ops[3];
        (&self.rho * product).trace()
    }

    /// Kick unitary `1 (x) C - i mu(phase) (x) S` in the `(g, e)` block order,
    /// with `mu = e^{i phase} |e><g| + h.c.`.
    fn kick(&self, j: usize, phase: f64) -> Matrix {
        let d = self.dim;
        let c = &self.cos[j];
        let s = &self.sin[j];
        let mut u = Matrix::zeros(2 * d, 2 * d);
        let minus_i = Complex64::new(0.0, -1.0);
        let up = minus_i * Complex64::from_polar(1.0, -phase);
        let down = minus_i * Complex64::from_polar(1.0, phase);
        u.view_mut((0, 0), (d, d)).copy_from(c);
        u.view_mut((d, d), (d, d)).copy_from(c);
        u.view_mut((0, d), (d, d)).copy_from(&(s * up));
        u.view_mut((d, 0), (d, d)).copy_from(&(s * down));
        u
    }

    fn excited(&self, joint: &Matrix) -> f64 {
        let d = self.dim;
        joint.view((d, d), (d, d)).trace().re
    }

    fn reduced_top(&self, joint: &Matrix) -> f64 {
        let d = self.dim;
        (joint[(d - 1, d - 1)] + joint[(2 * d - 1, 2 * d - 1)]).re
    }
}

/// Evolves `diag(1 - p, p) (x) rho_field` through both kicks exactly.
///
/// The first kick carries monopole phase `omega1 tau1`, the second
/// `omega2 tau2`. Fails with [`Error::Truncation`] when any evolved field
/// state puts more than [`TRUNCATION_GUARD`] on the top Fock level.
pub fn simulate_cycle_fock(
    fp: &FockParams,
    omega1: f64,
    omega2: f64,
    tau1: f64,
    tau2: f64,
    p: f64,
) -> Result<FockCycle> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain {
            name: "p",
            value: p,
        });
    }
    if !(tau2 > tau1) {
        return Err(Error::InvalidParameter {
            name: "tau2",
            value: tau2,
            reason: "second kick must come after the first",
        });
    }
    let mode = Mode::new(fp)?;
    let d = mode.dim;
    let mut joint = Matrix::zeros(2 * d, 2 * d);
    joint
        .view_mut((0, 0), (d, d))
        .copy_from(&(&mode.rho * Complex64::new(1.0 - p, 0.0)));
    joint
        .view_mut((d, d), (d, d))
        .copy_from(&(&mode.rho * Complex64::new(p, 0.0)));

    let mut top = mode.top(&mode.rho);
    let u1 = mode.kick(0, omega1 * tau1);
    let joint1 = &u1 * &joint * u1.adjoint();
    top = top.max(mode.reduced_top(&joint1));
    let u2 = mode.kick(1, omega2 * tau2);
    let joint2 = &u2 * &joint1 * u2.adjoint();
    top = top.max(mode.reduced_top(&joint2));
    mode.guard(top)?;

    Ok(FockCycle {
        p1: mode.excited(&joint1),
        p2: mode.excited(&joint2),
        trace_error: (joint2.trace() - Complex64::new(1.0, 0.0)).norm(),
        top_population: top,
    })
}

/// Largest deviation between the six Weyl moments computed as truncated
/// matrix expectation values and their closed forms.
pub fn verify_weyl_moments(fp: &FockParams) -> Result<f64> {
    let mode = Mode::new(fp)?;
    let (c1, s1) = (&mode.cos[0], &mode.sin[0]);
    let (c2, s2) = (&mode.cos[1], &mode.sin[1]);

    let mut top = mode.top(&mode.rho);
    for (a, b) in [(c2, c1), (s2, c1), (c2, s1), (s2, s1)] {
        let m = a * b;
        top = top.max(mode.top(&(&m * &mode.rho * m.adjoint())));
    }
    mode.guard(top)?;

    let closed = weyl_moments(&moment_set_from_kernel(&single_mode_kernel(fp))?)?;
    let pairs = [
        (
            mode.expect([c1, c2, c2, c1]),
            Complex64::new(closed.cccc, 0.0),
        ),
        (
            mode.expect([c1, s2, s2, c1]),
            Complex64::new(closed.cssc, 0.0),
        ),
        (
            mode.expect([s1, c2, c2, s1]),
            Complex64::new(closed.sccs, 0.0),
        ),
        (
            mode.expect([s1, s2, s2, s1]),
            Complex64::new(closed.ssss, 0.0),
        ),
        (mode.expect([c1, s2, c2, s1]), closed.csc_s),
        (mode.expect([s1, s2, c2, c1]), closed.ssc_c),
    ];
    Ok(pairs
        .iter()
        .map(|(fock, formula)| (fock - formula).norm())
        .fold(0.0, f64::max))
}
