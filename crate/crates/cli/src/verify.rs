//! The oracle suite behind `ottoqft verify`.

use std::fmt;

use num_complex::Complex64;
use ottoqft::oracle::{
    quadrature_minkowski_moments, random_cycle, random_fock_params, random_kernel,
    random_moment_set, random_silent_moment_set, simulate_cycle_fock, single_mode_kernel,
    special::{dawson_quadrature, dawson_series_dd},
    verify_weyl_moments, FockParams, QuadratureSpec,
};
use ottoqft::{
    combined_nu, dawson, extracted_work, minkowski_moments, moment_set_from_kernel, p_after_first,
    p_after_second, stroke_ledger, theta, weyl_moments, Combination, CycleConfig64,
    MinkowskiParams, MomentSet64,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Reference value of the Dawson function at one.
pub const DAWSON_AT_ONE: f64 = 0.538_079_506_912_768_4;

#[derive(Debug, Clone, PartialEq)]
pub struct VerifySettings {
    pub seed: u64,
    pub fock_cases: usize,
    pub fock_dim: usize,
    /// Cap on `|alpha|` for the single-mode cases.
    pub fock_coupling: f64,
    /// Size of the random cycle ensemble.
    pub ensemble: usize,
    /// Number of random kernels for the moment identities.
    pub kernels: usize,
    pub tolerances: Vec<(&'static str, f64)>,
}

impl VerifySettings {
    pub const KEYS: &'static [&'static str] = &[
        "seed",
        "fock_cases",
        "fock_dim",
        "fock_coupling",
        "ensemble",
        "kernels",
        "tol_fock_p1",
        "tol_fock_p2",
        "tol_weyl",
        "tol_partition",
        "tol_identity",
        "tol_quadrature",
        "tol_dawson_series",
        "tol_dawson_asymptotic",
        "tol_dawson_one",
        "tol_first_law",
        "tol_fixed_point",
        "tol_thermal",
    ];

    pub fn tolerance(&self, key: &str) -> f64 {
        self.tolerances
            .iter()
            .find(|(k, _)| *k == key)
            .map(|&(_, v)| v)
            .unwrap_or_else(|| panic!("no tolerance named {key}"))
    }
}

impl Default for VerifySettings {
    fn default() -> Self {
        Self {
            seed: 20_240_601,
            fock_cases: 50,
            fock_dim: 60,
            fock_coupling: 0.5,
            ensemble: 10_000,
            kernels: 1_000,
            tolerances: vec![
                ("tol_fock_p1", 1e-8),
                ("tol_fock_p2", 1e-6),
                ("tol_weyl", 1e-8),
                ("tol_partition", 1e-12),
                ("tol_identity", 1e-12),
                ("tol_quadrature", 1e-3),
                ("tol_dawson_series", 1e-12),
                ("tol_dawson_asymptotic", 1e-10),
                ("tol_dawson_one", 1e-12),
                ("tol_first_law", 1e-12),
                ("tol_fixed_point", 1e-12),
                ("tol_thermal", 1e-15),
            ],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    /// Largest deviation seen, or a count of violations.
    pub measured: f64,
    pub threshold: f64,
    pub passed: bool,
    pub note: Option<String>,
}

impl Check {
    /// Passes when `measured < threshold`.
    fn below(name: &'static str, measured: f64, threshold: f64) -> Self {
        Self {
            name,
            measured,
            threshold,
            passed: measured < threshold,
            note: None,
        }
    }

    /// Passes only when `measured` is exactly zero.
    fn exact(name: &'static str, measured: f64) -> Self {
        Self {
            name,
            measured,
            threshold: 0.0,
            passed: measured == 0.0,
            note: None,
        }
    }

    fn failed(name: &'static str, threshold: f64, note: String) -> Self {
        Self {
            name,
            measured: f64::NAN,
            threshold,
            passed: false,
            note: Some(note),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            let relation = if c.threshold == 0.0 { "==" } else { "<" };
            write!(
                f,
                "{status}  {:<24} measured = {:.3e}  required {relation} {:.1e}",
                c.name, c.measured, c.threshold
            )?;
            if let Some(note) = &c.note {
                write!(f, "  ({note})")?;
            }
            writeln!(f)?;
        }
        let failed = self.failures().count();
        if failed == 0 {
            writeln!(f, "all {} checks passed", self.checks.len())
        } else {
            let names: Vec<_> = self.failures().map(|c| c.name).collect();
            writeln!(
                f,
                "{failed} of {} checks failed: {}",
                self.checks.len(),
                names.join(", ")
            )
        }
    }
}

struct FockCase {
    params: FockParams,
    omega1: f64,
    omega2: f64,
    tau1: f64,
    tau2: f64,
    p: f64,
}

fn fock_cases(rng: &mut ChaCha8Rng, s: &VerifySettings) -> Vec<FockCase> {
    (0..s.fock_cases)
        .map(|_| {
            let mut params = random_fock_params(rng, s.fock_coupling);
            params.dim = s.fock_dim;
            let tau1 = rng.gen_range(-2.0..2.0);
            FockCase {
                params,
                omega1: rng.gen_range(0.1..5.0),
                omega2: rng.gen_range(0.1..5.0),
                tau1,
                tau2: tau1 + rng.gen_range(0.01..4.0),
                p: rng.gen_range(0.0..=1.0),
            }
        })
        .collect()
}

fn max_of(values: impl Iterator<Item = f64>) -> f64 {
    values.fold(0.0, f64::max)
}

/// Collapses per-case results into one check; the first error fails it.
fn collect_check(name: &'static str, threshold: f64, results: Vec<Result<f64, String>>) -> Check {
    let mut worst = 0.0f64;
    for r in results {
        match r {
            Ok(v) => worst = worst.max(v),
            Err(e) => return Check::failed(name, threshold, e),
        }
    }
    Check::below(name, worst, threshold)
}

fn fock_checks(cases: &[FockCase], s: &VerifySettings) -> Vec<Check> {
    let populations: Vec<Result<(f64, f64), String>> = cases
        .par_iter()
        .map(|c| {
            let m = moment_set_from_kernel(&single_mode_kernel(&c.params))
                .map_err(|e| e.to_string())?;
            let th = c.omega1 * c.tau1 - c.omega2 * c.tau2;
            let p1 = p_after_first(c.p, &m).map_err(|e| e.to_string())?;
            let p2 = p_after_second(c.p, &m, th).map_err(|e| e.to_string())?;
            let fock = simulate_cycle_fock(&c.params, c.omega1, c.omega2, c.tau1, c.tau2, c.p)
                .map_err(|e| e.to_string())?;
            Ok(((p1 - fock.p1).abs(), (p2 - fock.p2).abs()))
        })
        .collect();
    let weyl: Vec<Result<f64, String>> = cases
        .par_iter()
        .map(|c| verify_weyl_moments(&c.params).map_err(|e| e.to_string()))
        .collect();
    vec![
        collect_check(
            "fock_p1",
            s.tolerance("tol_fock_p1"),
            populations.iter().map(|r| r.clone().map(|d| d.0)).collect(),
        ),
        collect_check(
            "fock_p2",
            s.tolerance("tol_fock_p2"),
            populations.into_iter().map(|r| r.map(|d| d.1)).collect(),
        ),
        collect_check("weyl_moments", s.tolerance("tol_weyl"), weyl),
    ]
}

fn kernel_checks(rng: &mut ChaCha8Rng, cases: &[FockCase], s: &VerifySettings) -> Vec<Check> {
    let mut partition = Vec::new();
    let mut identity = Vec::new();
    for _ in 0..s.kernels {
        let k = random_kernel(rng);
        let r = (|| {
            let m = moment_set_from_kernel(&k)?;
            let w = weyl_moments(&m)?;
            let plus = combined_nu(&k, Combination::Sum)?;
            let minus = combined_nu(&k, Combination::Difference)?;
            let x = 4.0 * m.mu12();
            let base = 2.0 * m.nu1() * m.nu2();
            let ident = (minus + plus - base * x.cosh())
                .abs()
                .max((minus - plus - base * x.sinh()).abs());
            Ok::<_, ottoqft::Error>(((w.real_sum() - 1.0).abs(), ident))
        })()
        .map_err(|e| e.to_string());
        partition.push(r.clone().map(|v| v.0));
        identity.push(r.map(|v| v.1));
    }
    for c in cases {
        let r = moment_set_from_kernel(&single_mode_kernel(&c.params))
            .and_then(|m| weyl_moments(&m))
            .map(|w| (w.real_sum() - 1.0).abs())
            .map_err(|e| e.to_string());
        partition.push(r);
    }
    vec![
        collect_check("weyl_partition", s.tolerance("tol_partition"), partition),
        collect_check("appendix_cosh_sinh", s.tolerance("tol_identity"), identity),
    ]
}

fn relative(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs()
    }
}

fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|i| start + (stop - start) * i as f64 / (count - 1) as f64)
        .collect()
}

/// Largest relative deviation between quadrature and closed-form moments
/// on the (lambda1, lambda2, dtau) grid, with `sigma = 1`.
pub fn quadrature_deviation(lambda1: &[f64], lambda2: &[f64], dtau: &[f64]) -> Result<f64, String> {
    let mut points = Vec::new();
    for &l1 in lambda1 {
        for &l2 in lambda2 {
            for &d in dtau {
                points.push((l1, l2, d));
            }
        }
    }
    let spec = QuadratureSpec::default();
    let results: Vec<Result<f64, String>> = points
        .par_iter()
        .map(|&(l1, l2, d)| {
            let q =
                quadrature_minkowski_moments(l1, l2, 1.0, d, &spec).map_err(|e| e.to_string())?;
            let params = MinkowskiParams::new(l1, l2, 1.0, d).map_err(|e| e.to_string())?;
            let a = minkowski_moments(&params).map_err(|e| e.to_string())?;
            Ok(max_of(
                [
                    relative(q.nu1(), a.nu1()),
                    relative(q.nu2(), a.nu2()),
                    relative(q.e12(), a.e12()),
                    relative(q.mu12(), a.mu12()),
                ]
                .into_iter(),
            ))
        })
        .collect();
    results
        .into_iter()
        .try_fold(0.0f64, |acc, r| r.map(|v| acc.max(v)))
}

fn quadrature_check(s: &VerifySettings) -> Check {
    let threshold = s.tolerance("tol_quadrature");
    match quadrature_deviation(
        &linspace(0.5, 100.0, 5),
        &linspace(0.5, 2.0, 5),
        &linspace(0.25, 3.0, 5),
    ) {
        Ok(v) => Check::below("quadrature_vs_analytic", v, threshold),
        Err(e) => Check::failed("quadrature_vs_analytic", threshold, e),
    }
}

fn dawson_checks(s: &VerifySettings) -> Vec<Check> {
    let series = max_of(
        linspace(-6.0, 6.0, 200)
            .into_iter()
            .map(|x| (dawson(x) - dawson_series_dd(x)).abs()),
    );
    let asymptotic = max_of(
        linspace(6.0, 50.0, 200)
            .into_iter()
            .map(|x| relative(dawson(x), dawson_quadrature(x))),
    );
    vec![
        Check::below("dawson_series", series, s.tolerance("tol_dawson_series")),
        Check::below(
            "dawson_asymptotic",
            asymptotic,
            s.tolerance("tol_dawson_asymptotic"),
        ),
        Check::below(
            "dawson_at_one",
            (dawson(1.0f64) - DAWSON_AT_ONE).abs(),
            s.tolerance("tol_dawson_one"),
        ),
    ]
}

fn ensemble_checks(rng: &mut ChaCha8Rng, s: &VerifySettings) -> Vec<Check> {
    let ensemble: Vec<(CycleConfig64, MomentSet64)> = (0..s.ensemble)
        .map(|_| (random_cycle(rng), random_moment_set(rng)))
        .collect();
    let mut first_law = Vec::new();
    let mut fixed_point = Vec::new();
    let mut violations = 0.0;
    for (config, m) in &ensemble {
        let th = theta(config);
        let r = stroke_ledger(config, m).map_err(|e| e.to_string());
        let report = match r {
            Ok(report) => report,
            Err(e) => {
                first_law.push(Err(e.clone()));
                fixed_point.push(Err(e));
                continue;
            }
        };
        if report.degenerate {
            continue;
        }
        let Some(w) = report.w_ext else {
            first_law.push(Err(format!("open cycle at p = {}", report.p)));
            continue;
        };
        let delta = config.delta_omega();
        first_law.push(Ok((w - (report.q2 + report.q4))
            .abs()
            .max((w - (report.p1 - report.p) * delta).abs())));
        fixed_point.push(
            p_after_second(report.p, m, th)
                .map_err(|e| e.to_string())
                .and_then(|p2| {
                    if (0.0..=1.0).contains(&report.p) {
                        Ok((p2 - report.p).abs())
                    } else {
                        Err(format!("p* = {} outside [0, 1]", report.p))
                    }
                }),
        );
        let signal = (2.0 * m.e12()).sin() * th.sin();
        if delta > 0.0 && m.nu1() < 1.0 && signal != 0.0 && w.signum() != -signal.signum() {
            violations += 1.0;
        }
    }

    let mut silent_work = 0.0f64;
    let mut silent_error = None;
    for _ in 0..s.kernels {
        let m = random_silent_moment_set(rng);
        let config = random_cycle(rng);
        match extracted_work(&m, theta(&config), config.delta_omega()) {
            Ok(w) => silent_work = silent_work.max(w.work.abs()),
            Err(e) => silent_error = Some(e.to_string()),
        }
    }

    vec![
        collect_check("first_law", s.tolerance("tol_first_law"), first_law),
        collect_check("fixed_point", s.tolerance("tol_fixed_point"), fixed_point),
        Check::exact("sign_law_violations", violations),
        match silent_error {
            Some(e) => Check::failed("no_signal_no_work", 0.0, e),
            None => Check::exact("no_signal_no_work", silent_work),
        },
    ]
}

/// Spread of `e12` across thermal occupations at fixed couplings.
pub fn thermal_signal_spread(alpha1: Complex64, alpha2: Complex64, nbars: &[f64]) -> f64 {
    let e: Vec<f64> = nbars
        .iter()
        .map(|&nbar| {
            let fp = FockParams {
                alpha1,
                alpha2,
                nbar,
                dim: 2,
            };
            2.0 * single_mode_kernel(&fp).w12.im
        })
        .collect();
    max_of(e.iter().map(|x| (x - e[0]).abs()))
}

fn thermal_check(s: &VerifySettings) -> Check {
    let spread = thermal_signal_spread(
        Complex64::new(0.31, -0.12),
        Complex64::from_polar(0.45, 2.1),
        &[0.0, 0.5, 1.0, 5.0],
    );
    Check::below(
        "thermal_signal_invariance",
        spread,
        s.tolerance("tol_thermal"),
    )
}

/// Runs every cross-check. Deterministic for a given seed.
pub fn run_verify(settings: &VerifySettings) -> VerifyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    let cases = fock_cases(&mut rng, settings);
    let mut checks = fock_checks(&cases, settings);
    checks.extend(kernel_checks(&mut rng, &cases, settings));
    checks.push(quadrature_check(settings));
    checks.extend(dawson_checks(settings));
    checks.extend(ensemble_checks(&mut rng, settings));
    checks.push(thermal_check(settings));
    VerifyReport { checks }
}
