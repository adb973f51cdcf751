//! Parameter sweeps over the analytic engines and the simulator, trend and
//! saturation checks, crossover search, CSV/plot output and the built-in
//! figure recipes.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analytic::{self, AnalyticError, AnalyticResult, DEFAULT_VARRHO};
use crate::params::{validate, Axis, Duplex, EdModel, ParamErrors, Scenario, SystemParams, ValidatedParams};
use crate::simcore::{self, rng::splitmix64, OutageDef, SimError};

pub mod crossover;
pub mod csvio;
pub mod plot;
pub mod recipes;
pub mod table2;
pub mod trend;

pub use crossover::{crossover_search, Crossover, CrossoverMode};
pub use csvio::{emit_csv, parse_csv, write_csv};
pub use plot::emit_plot_script;
pub use recipes::{builtin_recipe, builtin_recipes, Recipe};
pub use trend::{saturation_check, trend_check, SaturationReport, Trend, TrendReport};

/// What a sweep row reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepMethod {
    /// The scenario's reference expression (exact, approximation or bound).
    Analytic,
    /// The bound for the scenario: the large-K lower bound for HD/independent,
    /// the upper bounds for the two full-duplex scenarios.
    Bound,
    /// The closed-form approximations: HD/independent and, at α = 2,
    /// FD/colluding.
    Approximation,
    MonteCarlo,
}

impl SweepMethod {
    pub const ALL: [SweepMethod; 4] =
        [SweepMethod::Analytic, SweepMethod::Bound, SweepMethod::Approximation, SweepMethod::MonteCarlo];

    pub fn as_str(&self) -> &'static str {
        match self {
            SweepMethod::Analytic => "analytic",
            SweepMethod::Bound => "bound",
            SweepMethod::Approximation => "approximation",
            SweepMethod::MonteCarlo => "monte_carlo",
        }
    }
}

impl fmt::Display for SweepMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SweepMethod {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.to_ascii_lowercase().replace('-', "_");
        SweepMethod::ALL
            .into_iter()
            .find(|m| m.as_str() == key || (key == "mc" && *m == SweepMethod::MonteCarlo))
            .ok_or_else(|| format!("unknown sweep method `{s}` (analytic, bound, approximation, monte_carlo)"))
    }
}

/// `kind` column value for Monte Carlo rows.
pub const MC_KIND: &str = "estimate";

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub base: SystemParams,
    pub axis: Axis,
    pub values: Vec<f64>,
    pub scenarios: Vec<Scenario>,
    pub methods: Vec<SweepMethod>,
    pub n_trials: u64,
    pub seed: u64,
    pub outage_def: OutageDef,
    /// Split radius for the α = 2 FD/colluding approximation.
    pub varrho: f64,
}

impl SweepSpec {
    pub fn new(base: SystemParams, axis: Axis, values: Vec<f64>) -> Self {
        SweepSpec {
            base,
            axis,
            values,
            scenarios: vec![Scenario::HD_INDEPENDENT],
            methods: vec![SweepMethod::Analytic],
            n_trials: 100_000,
            seed: 42,
            outage_def: OutageDef::ExactCapacity,
            varrho: DEFAULT_VARRHO,
        }
    }

    pub fn with_scenarios(mut self, s: &[Scenario]) -> Self {
        self.scenarios = s.to_vec();
        self
    }

    pub fn with_methods(mut self, m: &[SweepMethod]) -> Self {
        self.methods = m.to_vec();
        self
    }

    pub fn with_trials(mut self, n_trials: u64, seed: u64) -> Self {
        self.n_trials = n_trials;
        self.seed = seed;
        self
    }

    pub fn check(&self) -> Result<(), HarnessError> {
        if self.values.is_empty() {
            return Err(HarnessError::InvalidSpec("sweep needs at least one axis value".into()));
        }
        if self.values.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(HarnessError::InvalidSpec("axis values must be strictly increasing".into()));
        }
        if self.scenarios.is_empty() || self.methods.is_empty() {
            return Err(HarnessError::InvalidSpec("sweep needs at least one scenario and one method".into()));
        }
        if self.methods.contains(&SweepMethod::MonteCarlo) && self.n_trials == 0 {
            return Err(HarnessError::InvalidSpec("Monte Carlo rows need n_trials ≥ 1".into()));
        }
        Ok(())
    }

    /// Parameters at one axis value for one scenario.
    pub fn point(&self, value: f64, scenario: Scenario) -> Result<ValidatedParams, ParamErrors> {
        let p = self.axis.set(&self.base, value).with_scenario(scenario);
        validate(&p)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub axis_name: String,
    pub axis_value: f64,
    pub duplex: Duplex,
    pub ed_model: EdModel,
    pub method: SweepMethod,
    /// Analytic kind (`exact`, `approximation`, `upper_bound`, `lower_bound`)
    /// or `estimate` for Monte Carlo rows.
    pub kind: String,
    pub value: f64,
    pub raw_value: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub n_trials: u64,
    pub seed: u64,
}

impl SweepRow {
    pub fn scenario(&self) -> Scenario {
        Scenario::new(self.duplex, self.ed_model)
    }

    pub fn half_width(&self) -> f64 {
        0.5 * (self.ci_high - self.ci_low)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointFailure {
    pub axis_value: f64,
    pub scenario: Scenario,
    pub method: SweepMethod,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub failures: Vec<PointFailure>,
}

impl SweepResult {
    /// Rows of one (scenario, method) series in axis order.
    pub fn series(&self, scenario: Scenario, method: SweepMethod) -> Vec<SweepRow> {
        self.rows
            .iter()
            .filter(|r| r.scenario() == scenario && r.method == method)
            .cloned()
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HarnessError {
    #[error("invalid sweep: {0}")]
    InvalidSpec(String),
    #[error("parameters rejected: {0}")]
    Params(#[from] ParamErrors),
    #[error(transparent)]
    Analytic(#[from] AnalyticError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error("{method} is not defined for {scenario}")]
    NotApplicable { method: SweepMethod, scenario: Scenario },
    #[error("trend check needs at least 3 points, got {0}")]
    InsufficientPoints(usize),
    #[error("the two curves do not change order between {lo} and {hi}")]
    NoSignChange { lo: f64, hi: f64 },
    #[error("recipe: {0}")]
    Recipe(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error("csv: {0}")]
    Csv(String),
}

/// Seed for one Monte Carlo point: depends only on the sweep seed, the axis
/// value and the scenario, so adding axis values leaves other points intact.
pub fn derive_point_seed(seed: u64, axis_value: f64, scenario: Scenario) -> u64 {
    let tag = Scenario::ALL.iter().position(|s| *s == scenario).unwrap_or(0) as u64;
    splitmix64(seed ^ splitmix64(axis_value.to_bits() ^ splitmix64(tag.wrapping_add(1))))
}

/// The analytic evaluator behind a (method, scenario) pair.
pub fn analytic_for(method: SweepMethod, p: &ValidatedParams, varrho: f64) -> Result<AnalyticResult, HarnessError> {
    let s = p.scenario();
    let na = || HarnessError::NotApplicable { method, scenario: s };
    let r = match (method, s.duplex, s.ed_model) {
        (SweepMethod::Analytic, _, _) => analytic::evaluate(p)?,
        (SweepMethod::Bound, Duplex::HalfDuplex, EdModel::Independent) => analytic::sop_hd_independent_lower_bound(p)?,
        (SweepMethod::Bound, Duplex::FullDuplex, EdModel::Independent) => analytic::sop_fd_independent_bound(p)?,
        (SweepMethod::Bound, Duplex::FullDuplex, EdModel::Colluding) => analytic::sop_fd_colluding_bound(p)?,
        (SweepMethod::Approximation, Duplex::HalfDuplex, EdModel::Independent) => analytic::sop_hd_independent(p)?,
        (SweepMethod::Approximation, Duplex::FullDuplex, EdModel::Colluding) => {
            analytic::sop_fd_colluding_approx_alpha2(p, varrho)?
        }
        _ => return Err(na()),
    };
    Ok(r)
}

fn evaluate_point(spec: &SweepSpec, value: f64, scenario: Scenario, method: SweepMethod) -> Result<SweepRow, HarnessError> {
    let p = spec.point(value, scenario)?;
    let mk = |kind: String, value_: f64, raw: f64, lo: f64, hi: f64, n: u64, seed: u64| SweepRow {
        axis_name: spec.axis.name().to_string(),
        axis_value: value,
        duplex: scenario.duplex,
        ed_model: scenario.ed_model,
        method,
        kind,
        value: value_,
        raw_value: raw,
        ci_low: lo,
        ci_high: hi,
        n_trials: n,
        seed,
    };
    if method == SweepMethod::MonteCarlo {
        let seed = derive_point_seed(spec.seed, value, scenario);
        let est = simcore::estimate_sop(&p, scenario, spec.n_trials, seed, spec.outage_def)?;
        Ok(mk(MC_KIND.into(), est.p_hat, est.p_hat, est.ci_low, est.ci_high, est.n_trials, seed))
    } else {
        let r = analytic_for(method, &p, spec.varrho)?;
        Ok(mk(r.kind.to_string(), r.value, r.raw_value, r.value, r.value, 0, 0))
    }
}

/// Evaluates every (value × scenario × method) point. Points run
/// concurrently; rows come back in axis, scenario, method order no matter how
/// the work was scheduled. Failing points are collected, not fatal.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult, HarnessError> {
    spec.check()?;
    let mut jobs = Vec::new();
    for (vi, &v) in spec.values.iter().enumerate() {
        for (si, &s) in spec.scenarios.iter().enumerate() {
            for (mi, &m) in spec.methods.iter().enumerate() {
                jobs.push(((vi, si, mi), v, s, m));
            }
        }
    }
    let mut outcomes: Vec<_> = jobs
        .into_par_iter()
        .map(|(key, v, s, m)| (key, v, s, m, evaluate_point(spec, v, s, m)))
        .collect();
    outcomes.sort_by(|a, b| a.0.cmp(&b.0));
    let mut result = SweepResult::default();
    for (_, v, s, m, outcome) in outcomes {
        match outcome {
            Ok(row) => result.rows.push(row),
            Err(e) => result.failures.push(PointFailure {
                axis_value: v,
                scenario: s,
                method: m,
                message: e.to_string(),
            }),
        }
    }
    Ok(result)
}


#[cfg(test)]
mod tests;
