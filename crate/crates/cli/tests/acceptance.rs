//! Acceptance criteria, one test each. Every test writes a single
//! `criterion N: PASS|FAIL ...` line to stderr (bypassing capture) before
//! asserting.

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use ottoqft::oracle::special::{dawson_quadrature, dawson_series_dd};
use ottoqft::oracle::{
    quadrature_minkowski_moments, random_cycle, random_fock_params, random_kernel,
    random_moment_set, random_silent_moment_set, simulate_cycle_fock, single_mode_kernel,
    verify_weyl_moments, FockParams, QuadratureSpec,
};
use ottoqft::{
    combined_nu, dawson, extracted_work, figure4a_curve, minkowski_moments, moment_set_from_kernel,
    p_after_first, p_after_second, stroke_ledger, theta, weyl_moments, Combination, CycleConfig64,
    MinkowskiParams, MomentSet64,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(n: u32, passed: bool, detail: String) {
    let status = if passed { "PASS" } else { "FAIL" };
    let line = format!("criterion {n:>2}: {status}  {detail}\n");
    let _ = std::io::stderr().write_all(line.as_bytes());
}

fn timed<R>(f: impl FnOnce() -> R) -> (R, Duration) {
    let start = Instant::now();
    let r = f();
    (r, start.elapsed())
}

fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|i| start + (stop - start) * i as f64 / (count - 1) as f64)
        .collect()
}

fn ensemble() -> Vec<(CycleConfig64, MomentSet64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    (0..10_000)
        .map(|_| (random_cycle(&mut rng), random_moment_set(&mut rng)))
        .collect()
}

struct FockCase {
    params: FockParams,
    omega1: f64,
    omega2: f64,
    tau1: f64,
    tau2: f64,
    p: f64,
}

fn fock_cases() -> Vec<FockCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    (0..50)
        .map(|_| {
            let params = random_fock_params(&mut rng, 0.5);
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

#[test]
fn criterion_01_no_signal_no_work() {
    let (nonzero, elapsed) = timed(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        (0..1000)
            .filter(|_| {
                let m = random_silent_moment_set(&mut rng);
                let config = random_cycle(&mut rng);
                let w = extracted_work(&m, theta(&config), config.delta_omega()).unwrap();
                w.work != 0.0
            })
            .count()
    });
    let passed = nonzero == 0 && elapsed < Duration::from_secs(1);
    report(
        1,
        passed,
        format!("nonzero work in {nonzero} of 1000 silent cases, {elapsed:.2?}"),
    );
    assert!(passed);
}

#[test]
fn criterion_02_signal_cutoff() {
    let (result, elapsed) = timed(|| {
        let late = figure4a_curve(1.0, 3.0, 0.0, 100.0, 1.0, &linspace(4.5, 8.0, 701)).unwrap();
        let early =
            figure4a_curve(1.0, 3.0, 0.0, 100.0, 1.0, &linspace(0.2, 3.0, 562)[1..561]).unwrap();
        (late, early)
    });
    let (late, early) = result;
    let (late_tau, late_max) = late
        .iter()
        .map(|&(t, w)| (t, w.abs()))
        .fold((0.0, 0.0), |a, b| if b.1 > a.1 { b } else { a });
    let early_max = early.iter().map(|&(_, w)| w.abs()).fold(0.0, f64::max);
    let flips = early.windows(2).filter(|p| p[0].1 * p[1].1 < 0.0).count();
    let passed =
        late_max < 1e-6 && early_max > 1e-4 && flips >= 1 && elapsed < Duration::from_secs(1);
    report(
        2,
        passed,
        format!(
            "max |W| on [4.5, 8] = {late_max:.3e} at tau2 = {late_tau} (need < 1e-6), \
             max |W| on (0.2, 3) = {early_max:.3e}, {flips} sign changes, {elapsed:.2?}"
        ),
    );
    assert!(passed);
}

#[test]
fn criterion_03_first_law() {
    let cycles = ensemble();
    let (worst, elapsed) = timed(|| {
        let mut worst = (0.0f64, 0.0f64);
        for (config, m) in &cycles {
            let r = stroke_ledger(config, m).unwrap();
            if r.degenerate {
                continue;
            }
            let w = r.w_ext.expect("cyclic state closes");
            worst.0 = worst.0.max((w - (r.q2 + r.q4)).abs());
            worst.1 = worst.1.max((w - (r.p1 - r.p) * config.delta_omega()).abs());
        }
        worst
    });
    let passed = worst.0 < 1e-12 && worst.1 < 1e-12 && elapsed < Duration::from_secs(1);
    report(
        3,
        passed,
        format!(
            "max |w - (q2 + q4)| = {:.3e}, max |w - (p1 - p) dOmega| = {:.3e}, {elapsed:.2?}",
            worst.0, worst.1
        ),
    );
    assert!(passed);
}

#[test]
fn criterion_04_fixed_point() {
    let mut worst = 0.0f64;
    let mut outside = 0;
    for (config, m) in ensemble() {
        let r = stroke_ledger(&config, &m).unwrap();
        if !(0.0..=1.0).contains(&r.p) {
            outside += 1;
        }
        let p2 = p_after_second(r.p, &m, theta(&config)).unwrap();
        worst = worst.max((p2 - r.p).abs());
    }
    let passed = worst < 1e-12 && outside == 0;
    report(
        4,
        passed,
        format!("max |p2(p*) - p*| = {worst:.3e}, {outside} of 10000 p* outside [0, 1]"),
    );
    assert!(passed);
}

#[test]
fn criterion_05_sign_law() {
    let mut considered = 0;
    let mut violations = 0;
    for (config, m) in ensemble() {
        let th = theta(&config);
        let signal = (2.0 * m.e12()).sin() * th.sin();
        if !(config.delta_omega() > 0.0 && m.nu1() < 1.0 && signal != 0.0) {
            continue;
        }
        considered += 1;
        let w = extracted_work(&m, th, config.delta_omega()).unwrap().work;
        if w.signum() != -signal.signum() || w == 0.0 {
            violations += 1;
        }
    }
    let passed = violations == 0 && considered > 1000;
    report(
        5,
        passed,
        format!("{violations} violations in {considered} cycles"),
    );
    assert!(passed);
}

#[test]
fn criterion_06_fock_equivalence() {
    let cases = fock_cases();
    let (worst, elapsed) = timed(|| {
        let mut worst = (0.0f64, 0.0f64);
        for c in &cases {
            let m = moment_set_from_kernel(&single_mode_kernel(&c.params)).unwrap();
            let th = c.omega1 * c.tau1 - c.omega2 * c.tau2;
            let fock =
                simulate_cycle_fock(&c.params, c.omega1, c.omega2, c.tau1, c.tau2, c.p).unwrap();
            worst.0 = worst
                .0
                .max((p_after_first(c.p, &m).unwrap() - fock.p1).abs());
            worst.1 = worst
                .1
                .max((p_after_second(c.p, &m, th).unwrap() - fock.p2).abs());
        }
        worst
    });
    let passed = worst.0 < 1e-8 && worst.1 < 1e-6 && elapsed < Duration::from_secs(30);
    report(
        6,
        passed,
        format!(
            "max |dp1| = {:.3e}, max |dp2| = {:.3e} over 50 cases, {elapsed:.2?}",
            worst.0, worst.1
        ),
    );
    assert!(passed);
}

#[test]
fn criterion_07_weyl_moments() {
    let cases = fock_cases();
    let weyl = cases
        .iter()
        .map(|c| verify_weyl_moments(&c.params).unwrap())
        .fold(0.0, f64::max);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let partition = cases
        .iter()
        .map(|c| single_mode_kernel(&c.params))
        .chain((0..1000).map(|_| random_kernel(&mut rng)))
        .map(|k| {
            let w = weyl_moments(&moment_set_from_kernel(&k).unwrap()).unwrap();
            (w.real_sum() - 1.0).abs()
        })
        .fold(0.0, f64::max);
    let passed = weyl < 1e-8 && partition < 1e-12;
    report(
        7,
        passed,
        format!("max Weyl deviation = {weyl:.3e}, max partition defect = {partition:.3e}"),
    );
    assert!(passed);
}

#[test]
fn criterion_08_cosh_sinh_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = (0.0f64, 0.0f64);
    for _ in 0..1000 {
        let k = random_kernel(&mut rng);
        let m = moment_set_from_kernel(&k).unwrap();
        let plus = combined_nu(&k, Combination::Sum).unwrap();
        let minus = combined_nu(&k, Combination::Difference).unwrap();
        let x = 4.0 * m.mu12();
        let base = 2.0 * m.nu1() * m.nu2();
        worst.0 = worst.0.max((minus + plus - base * x.cosh()).abs());
        worst.1 = worst.1.max((minus - plus - base * x.sinh()).abs());
    }
    let passed = worst.0 < 1e-12 && worst.1 < 1e-12;
    report(
        8,
        passed,
        format!(
            "cosh identity {:.3e}, sinh identity {:.3e}",
            worst.0, worst.1
        ),
    );
    assert!(passed);
}

#[test]
fn criterion_09_quadrature_vs_analytic() {
    let rel = |a: f64, b: f64| if a == b { 0.0 } else { (a - b).abs() / b.abs() };
    let (worst, elapsed) = timed(|| {
        let spec = QuadratureSpec::default();
        let mut worst = 0.0f64;
        for l1 in linspace(0.5, 100.0, 5) {
            for l2 in linspace(0.5, 2.0, 5) {
                for d in linspace(0.25, 3.0, 5) {
                    let q = quadrature_minkowski_moments(l1, l2, 1.0, d, &spec).unwrap();
                    let a =
                        minkowski_moments(&MinkowskiParams::new(l1, l2, 1.0, d).unwrap()).unwrap();
                    for (x, y) in [
                        (q.nu1(), a.nu1()),
                        (q.nu2(), a.nu2()),
                        (q.e12(), a.e12()),
                        (q.mu12(), a.mu12()),
                    ] {
                        worst = worst.max(rel(x, y));
                    }
                }
            }
        }
        worst
    });
    let passed = worst < 1e-3 && elapsed < Duration::from_secs(10);
    report(
        9,
        passed,
        format!("max relative deviation = {worst:.3e} on 125 points, {elapsed:.2?}"),
    );
    assert!(passed);
}

/// Large-argument expansion `D(x) ~ (1/2x) sum (2n-1)!! / (2x^2)^n`,
/// truncated at its smallest term.
fn dawson_asymptotic_oracle(x: f64) -> f64 {
    let y = 1.0 / (2.0 * x * x);
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 1..200 {
        let next = term * (2 * n - 1) as f64 * y;
        if next.abs() >= term.abs() || next < 1e-18 * sum {
            break;
        }
        term = next;
        sum += term;
    }
    sum / (2.0 * x)
}

#[test]
fn criterion_10_dawson() {
    let series = linspace(-6.0, 6.0, 200)
        .into_iter()
        .map(|x| (dawson(x) - dawson_series_dd(x)).abs())
        .fold(0.0, f64::max);
    let asymptotic = linspace(6.0, 50.0, 200)
        .into_iter()
        .map(|x| {
            let d = dawson(x);
            ((d / dawson_asymptotic_oracle(x) - 1.0).abs())
                .max((d / dawson_quadrature(x) - 1.0).abs())
        })
        .fold(0.0, f64::max);
    let at_one = (dawson(1.0f64) - 0.538_079_506_912_768).abs();
    let passed = series < 1e-12 && asymptotic < 1e-10 && at_one <= 1e-12;
    report(
        10,
        passed,
        format!(
            "series {series:.3e}, asymptotic relative {asymptotic:.3e}, |D(1) - ref| = {at_one:.3e}"
        ),
    );
    assert!(passed);
}

#[test]
fn criterion_11_thermal_signal_invariance() {
    let alpha1 = Complex64::new(0.31, -0.12);
    let alpha2 = Complex64::from_polar(0.45, 2.1);
    let e: Vec<f64> = [0.0, 0.5, 1.0, 5.0]
        .iter()
        .map(|&nbar| {
            let fp = FockParams::new(alpha1, alpha2, nbar, 60).unwrap();
            moment_set_from_kernel(&single_mode_kernel(&fp))
                .unwrap()
                .e12()
        })
        .collect();
    let spread = e.iter().map(|x| (x - e[0]).abs()).fold(0.0, f64::max);
    let passed = spread < 1e-15 && e[0] != 0.0;
    report(
        11,
        passed,
        format!("E12 = {:.17e}, spread over nbar = {spread:.3e}", e[0]),
    );
    assert!(passed);
}

const FIG4A: &str = "\
mode = curve-tau2
omega1 = 1
omega2 = 3
tau1 = 0
lambda1 = 100
lambda2 = 1
tau2_start = 0.05
tau2_stop = 8
tau2_count = 800
";

#[test]
fn criterion_12_cli_determinism() {
    let bin = env!("CARGO_BIN_EXE_ottoqft");
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("fig4a.cfg");
    std::fs::write(&config, FIG4A).unwrap();
    let run = |name: &str, jobs: &str| {
        let out = dir.path().join(name);
        let status = Command::new(bin)
            .arg("sweep")
            .arg("--config")
            .arg(&config)
            .arg("--set")
            .arg(format!("output={}", out.display()))
            .args(["--jobs", jobs])
            .status()
            .unwrap();
        assert!(status.success());
        std::fs::read(out).unwrap()
    };
    let first = run("a.csv", "1");
    let second = run("b.csv", "4");
    let identical = first == second && first.len() > 1000;
    let verify = Command::new(bin).arg("verify").output().unwrap();
    let code = verify.status.code();
    let passed = identical && code == Some(0);
    report(
        12,
        passed,
        format!(
            "sweep outputs identical: {identical} ({} bytes), verify exit code {code:?}",
            first.len()
        ),
    );
    if code != Some(0) {
        eprintln!("{}", String::from_utf8_lossy(&verify.stdout));
    }
    assert!(passed);
}
