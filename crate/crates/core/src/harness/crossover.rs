//! Locating where two scenarios' outage curves cross along one axis.

use crate::params::{validate, Axis, Scenario, SystemParams};
use crate::simcore::{estimate_sop_many, OutageDef};

use super::{analytic_for, HarnessError, SweepMethod};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CrossoverMode {
    /// Compare the scenarios' reference analytic values.
    Analytic,
    /// Compare Monte Carlo estimates. Both scenarios at a probe share one set
    /// of trials, and every probe reuses the same seed.
    MonteCarlo { n_trials: u64, seed: u64, outage_def: OutageDef },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Probe {
    pub x: f64,
    pub a: f64,
    pub b: f64,
    /// Confidence intervals (equal to the value for analytic probes).
    pub a_ci: (f64, f64),
    pub b_ci: (f64, f64),
    /// Sign of a − b, or `None` when the Monte Carlo intervals overlap.
    pub sign: Option<i8>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Crossover {
    /// Midpoint of the final bracket.
    pub estimate: f64,
    pub lo: f64,
    pub hi: f64,
    /// True when bisection stopped because a probe could not tell the curves
    /// apart statistically rather than because the bracket reached `tol`.
    pub stopped_by_noise: bool,
    pub probes: Vec<Probe>,
}

fn probe(base: &SystemParams, axis: Axis, x: f64, pair: (Scenario, Scenario), mode: CrossoverMode) -> Result<Probe, HarnessError> {
    let p = validate(&axis.set(base, x))?;
    match mode {
        CrossoverMode::Analytic => {
            let a = analytic_for(SweepMethod::Analytic, &p.with_scenario(pair.0), 1.0)?.value;
            let b = analytic_for(SweepMethod::Analytic, &p.with_scenario(pair.1), 1.0)?.value;
            let diff = a - b;
            let sign = if diff > 0.0 { 1 } else if diff < 0.0 { -1 } else { 0 };
            Ok(Probe { x, a, b, a_ci: (a, a), b_ci: (b, b), sign: Some(sign) })
        }
        CrossoverMode::MonteCarlo { n_trials, seed, outage_def } => {
            let est = estimate_sop_many(&p, &[pair.0, pair.1], n_trials, seed, outage_def)?;
            let (ea, eb) = (est[0], est[1]);
            let sign = if ea.ci_low > eb.ci_high {
                Some(1)
            } else if ea.ci_high < eb.ci_low {
                Some(-1)
            } else {
                None
            };
            Ok(Probe {
                x,
                a: ea.p_hat,
                b: eb.p_hat,
                a_ci: (ea.ci_low, ea.ci_high),
                b_ci: (eb.ci_low, eb.ci_high),
                sign,
            })
        }
    }
}

/// Bisects on the sign of SOP(pair.0) − SOP(pair.1) along `axis` until the
/// bracket is narrower than `tol`. In Monte Carlo mode a sign only counts
/// when the two confidence intervals are disjoint; the endpoints must be
/// separated in opposite directions, and bisection stops early at a probe
/// where the curves are statistically indistinguishable.
pub fn crossover_search(
    base: &SystemParams,
    axis: Axis,
    lo: f64,
    hi: f64,
    pair: (Scenario, Scenario),
    mode: CrossoverMode,
    tol: f64,
) -> Result<Crossover, HarnessError> {
    if !(lo < hi) || !(tol > 0.0) {
        return Err(HarnessError::InvalidSpec(format!("crossover needs lo < hi and tol > 0, got [{lo}, {hi}], tol {tol}")));
    }
    let no_change = || HarnessError::NoSignChange { lo, hi };
    let p_lo = probe(base, axis, lo, pair, mode)?;
    let p_hi = probe(base, axis, hi, pair, mode)?;
    let (s_lo, s_hi) = match (p_lo.sign, p_hi.sign) {
        (Some(a), Some(b)) if a != 0 && b != 0 && a != b => (a, b),
        _ => return Err(no_change()),
    };
    debug_assert_ne!(s_lo, s_hi);
    let mut probes = vec![p_lo, p_hi];
    let (mut a, mut b) = (lo, hi);
    let mut stopped_by_noise = false;
    for _ in 0..200 {
        if b - a <= tol {
            break;
        }
        let mid = 0.5 * (a + b);
        let pm = probe(base, axis, mid, pair, mode)?;
        let s = pm.sign;
        probes.push(pm);
        match s {
            Some(0) => {
                a = mid;
                b = mid;
                break;
            }
            Some(s) if s == s_lo => a = mid,
            Some(_) => b = mid,
            None => {
                stopped_by_noise = true;
                break;
            }
        }
    }
    Ok(Crossover {
        estimate: 0.5 * (a + b),
        lo: a,
        hi: b,
        stopped_by_noise,
        probes,
    })
}
