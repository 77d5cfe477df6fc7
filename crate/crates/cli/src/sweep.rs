//! Grid evaluation and CSV rendering.

use ottoqft::{
    cyclic_initial_population, extracted_work, minkowski_moments, p_after_first, stroke_ledger,
    theta, CycleConfig64, Error, InteractionEvent64, MinkowskiParams, MomentSet64, Result,
    WorkReport64,
};
use rayon::prelude::*;

use crate::config::{Axis, Mode};

pub const CURVE_HEADER: &str = "tau2_over_sigma,theta,nu1,nu2,E12,mu12,p_cyclic,p1,w_ext_sigma,pwc";
pub const GRID_HEADER: &str = "lambda1_over_sigma,lambda2_over_sigma,w_ext_sigma,pwc";

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_number(v: f64) -> String {
    format!("{v:.16e}")
}

/// One Minkowski cycle with unit width and the cyclic initial state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kicks {
    pub omega1: f64,
    pub omega2: f64,
    pub tau1: f64,
    pub tau2: f64,
    pub lambda1: f64,
    pub lambda2: f64,
}

impl Kicks {
    pub fn config(&self, initial_p: Option<f64>) -> Result<CycleConfig64> {
        let first = InteractionEvent64::new(self.tau1, self.omega1, self.lambda1, 1.0)?;
        let second = InteractionEvent64::new(self.tau2, self.omega2, self.lambda2, 1.0)?;
        CycleConfig64::new(first, second, initial_p)
    }

    pub fn moments(&self) -> Result<MomentSet64> {
        minkowski_moments(&MinkowskiParams::new(
            self.lambda1,
            self.lambda2,
            1.0,
            self.tau2 - self.tau1,
        )?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub theta: f64,
    pub moments: MomentSet64,
    pub p: f64,
    pub p1: f64,
    pub work: f64,
    pub pwc: bool,
}

/// Cyclic-state quantities at one point. Degenerate cycles sit at
/// `p = p1 = 1/2` with zero work.
pub fn curve_point(kicks: &Kicks) -> Result<CurvePoint> {
    let config = kicks.config(None)?;
    let m = kicks.moments()?;
    let th = theta(&config);
    let w = extracted_work(&m, th, config.delta_omega())?;
    let (p, p1) = if w.degenerate {
        (0.5, 0.5)
    } else {
        let p = cyclic_initial_population(&m, th)?;
        (p, p_after_first(p, &m)?)
    };
    Ok(CurvePoint {
        theta: th,
        moments: m,
        p,
        p1,
        work: w.work,
        pwc: w.work > 0.0,
    })
}

fn pool(jobs: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|_| Error::InvalidParameter {
        name: "jobs",
        value: jobs.unwrap_or(0) as f64,
        reason: "cannot start worker pool",
    })
}

/// Evaluates rows in parallel and joins them in input order.
fn rows<P, F>(header: &str, points: Vec<P>, jobs: Option<usize>, row: F) -> Result<String>
where
    P: Send + Sync,
    F: Fn(&P) -> Result<String> + Send + Sync,
{
    let lines: Vec<String> =
        pool(jobs)?.install(|| points.par_iter().map(&row).collect::<Result<Vec<_>>>())?;
    let mut out =
        String::with_capacity(header.len() + 1 + lines.iter().map(|l| l.len() + 1).sum::<usize>());
    out.push_str(header);
    out.push('\n');
    for line in lines {
        out.push_str(&line);
        out.push('\n');
    }
    Ok(out)
}

fn curve_csv(base: Kicks, tau2: &Axis, jobs: Option<usize>) -> Result<String> {
    rows(CURVE_HEADER, tau2.values(), jobs, |&t| {
        let c = curve_point(&Kicks { tau2: t, ..base })?;
        let m = c.moments;
        let fields = [
            t,
            c.theta,
            m.nu1(),
            m.nu2(),
            m.e12(),
            m.mu12(),
            c.p,
            c.p1,
            c.work,
        ];
        let mut line: Vec<String> = fields.iter().map(|&v| format_number(v)).collect();
        line.push(c.pwc.to_string());
        Ok(line.join(","))
    })
}

fn grid_csv(base: Kicks, lambda1: &Axis, lambda2: &Axis, jobs: Option<usize>) -> Result<String> {
    let points: Vec<(f64, f64)> = lambda1
        .values()
        .into_iter()
        .flat_map(|l1| lambda2.values().into_iter().map(move |l2| (l1, l2)))
        .collect();
    rows(GRID_HEADER, points, jobs, |&(l1, l2)| {
        let c = curve_point(&Kicks {
            lambda1: l1,
            lambda2: l2,
            ..base
        })?;
        Ok(format!(
            "{},{},{},{}",
            format_number(l1),
            format_number(l2),
            format_number(c.work),
            c.pwc
        ))
    })
}

/// CSV for a swept mode; `None` for modes without a grid.
pub fn run_sweep(mode: &Mode, jobs: Option<usize>) -> Option<Result<String>> {
    match *mode {
        Mode::CurveTau2 {
            omega1,
            omega2,
            tau1,
            lambda1,
            lambda2,
            ref tau2,
        } => {
            let base = Kicks {
                omega1,
                omega2,
                tau1,
                tau2: f64::NAN,
                lambda1,
                lambda2,
            };
            Some(curve_csv(base, tau2, jobs))
        }
        Mode::GridCouplings {
            omega1,
            omega2,
            tau1,
            tau2,
            ref lambda1,
            ref lambda2,
        } => {
            let base = Kicks {
                omega1,
                omega2,
                tau1,
                tau2,
                lambda1: f64::NAN,
                lambda2: f64::NAN,
            };
            Some(grid_csv(base, lambda1, lambda2, jobs))
        }
        Mode::SinglePoint { .. } | Mode::Verify(_) => None,
    }
}

/// Stroke ledger of one cycle as `key = value` lines.
pub fn point_report(kicks: &Kicks, initial_p: Option<f64>) -> Result<String> {
    let config = kicks.config(initial_p)?;
    let m = kicks.moments()?;
    let r: WorkReport64 = stroke_ledger(&config, &m)?;
    let optional = |v: Option<f64>| v.map_or_else(|| "none".to_string(), format_number);
    let lines = [
        ("theta", format_number(theta(&config))),
        ("nu1", format_number(m.nu1())),
        ("nu2", format_number(m.nu2())),
        ("E12", format_number(m.e12())),
        ("mu12", format_number(m.mu12())),
        ("p", format_number(r.p)),
        ("p1", format_number(r.p1)),
        ("p2", format_number(r.p2)),
        ("w1", format_number(r.w1)),
        ("q2", format_number(r.q2)),
        ("w3", format_number(r.w3)),
        ("q4", format_number(r.q4)),
        ("w_ext", optional(r.w_ext)),
        ("q_total", format_number(r.q_total)),
        ("efficiency", optional(r.efficiency)),
        ("pwc", r.pwc.to_string()),
        ("degenerate", r.degenerate.to_string()),
        ("closed", r.closed.to_string()),
    ];
    Ok(lines.iter().map(|(k, v)| format!("{k} = {v}\n")).collect())
}
