//! Built-in sweep recipes. Each recipe is a checked-in TOML file describing
//! the sweep and the trend checks its output must pass.

use serde::Deserialize;

use crate::params::{Axis, ParamOverrides, Scenario, SystemParams};
use crate::simcore::OutageDef;

use super::plot::PlotLayout;
use super::trend::{saturation_check, trend_check, Trend};
use super::{run_sweep, HarnessError, SweepMethod, SweepResult, SweepSpec};

const BUILTIN: [(&str, &str); 6] = [
    ("fig2", include_str!("../../recipes/fig2.toml")),
    ("fig3", include_str!("../../recipes/fig3.toml")),
    ("fig4", include_str!("../../recipes/fig4.toml")),
    ("fig5a", include_str!("../../recipes/fig5a.toml")),
    ("fig5b", include_str!("../../recipes/fig5b.toml")),
    ("fig6", include_str!("../../recipes/fig6.toml")),
];

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RecipeFile {
    name: String,
    description: String,
    axis: String,
    values: Vec<f64>,
    scenarios: Vec<String>,
    methods: Vec<String>,
    #[serde(default = "default_trials")]
    n_trials: u64,
    #[serde(default = "default_seed")]
    seed: u64,
    #[serde(default)]
    outage_def: Option<String>,
    #[serde(default)]
    varrho: Option<f64>,
    #[serde(default)]
    base: ParamOverrides,
    #[serde(default)]
    plot: PlotFile,
    #[serde(default)]
    check: Vec<CheckFile>,
}

fn default_trials() -> u64 {
    100_000
}

fn default_seed() -> u64 {
    42
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct PlotFile {
    title: Option<String>,
    x_label: Option<String>,
    log_y: Option<bool>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct CheckFile {
    scenario: String,
    method: String,
    trend: String,
    #[serde(default)]
    saturation: Option<SaturationFile>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
struct SaturationFile {
    tail_steps: usize,
    max_tail_ratio: f64,
}

/// One expectation attached to a recipe.
#[derive(Debug, Clone, PartialEq)]
pub struct RecipeCheck {
    pub scenario: Scenario,
    pub method: SweepMethod,
    pub trend: Trend,
    /// `(tail_steps, max_tail_ratio)` for an additional saturation check.
    pub saturation: Option<(usize, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub check: RecipeCheck,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Recipe {
    pub name: String,
    pub description: String,
    pub spec: SweepSpec,
    pub plot: PlotLayout,
    pub checks: Vec<RecipeCheck>,
}

fn rerr(name: &str, msg: impl std::fmt::Display) -> HarnessError {
    HarnessError::Recipe(format!("{name}: {msg}"))
}

impl Recipe {
    pub fn from_toml(text: &str) -> Result<Recipe, HarnessError> {
        let f: RecipeFile = toml::from_str(text).map_err(|e| HarnessError::Recipe(e.to_string()))?;
        let name = f.name.clone();
        let axis: Axis = f.axis.parse().map_err(|e| rerr(&name, e))?;
        let scenarios = f
            .scenarios
            .iter()
            .map(|s| s.parse::<Scenario>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| rerr(&name, e))?;
        let methods = f
            .methods
            .iter()
            .map(|s| s.parse::<SweepMethod>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| rerr(&name, e))?;
        let outage_def = match &f.outage_def {
            Some(s) => s.parse::<OutageDef>().map_err(|e| rerr(&name, e))?,
            None => OutageDef::ExactCapacity,
        };
        let base = f.base.apply(&SystemParams::default());
        let mut spec = SweepSpec::new(base, axis, f.values.clone())
            .with_scenarios(&scenarios)
            .with_methods(&methods)
            .with_trials(f.n_trials, f.seed);
        spec.outage_def = outage_def;
        if let Some(v) = f.varrho {
            spec.varrho = v;
        }
        spec.check()?;
        let checks = f
            .check
            .iter()
            .map(|c| -> Result<RecipeCheck, HarnessError> {
                Ok(RecipeCheck {
                    scenario: c.scenario.parse().map_err(|e| rerr(&name, e))?,
                    method: c.method.parse().map_err(|e| rerr(&name, e))?,
                    trend: c.trend.parse().map_err(|e| rerr(&name, e))?,
                    saturation: c.saturation.map(|s| (s.tail_steps, s.max_tail_ratio)),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let defaults = PlotLayout::default();
        let plot = PlotLayout {
            title: f.plot.title.unwrap_or_else(|| f.description.clone()),
            x_label: f.plot.x_label.unwrap_or_else(|| axis.name().to_string()),
            log_y: f.plot.log_y.unwrap_or(defaults.log_y),
            image: format!("{name}.png"),
        };
        Ok(Recipe {
            name,
            description: f.description,
            spec,
            plot,
            checks,
        })
    }

    pub fn run(&self) -> Result<SweepResult, HarnessError> {
        run_sweep(&self.spec)
    }

    /// Applies the recipe's checks to a result produced by [`Recipe::run`].
    pub fn evaluate_checks(&self, result: &SweepResult) -> Vec<CheckOutcome> {
        self.checks
            .iter()
            .map(|c| {
                let series = result.series(c.scenario, c.method);
                let mut pass = true;
                let mut detail = String::new();
                match trend_check(&series, c.trend) {
                    Ok(r) => {
                        pass &= r.pass;
                        detail.push_str(&r.to_string());
                    }
                    Err(e) => {
                        pass = false;
                        detail.push_str(&e.to_string());
                    }
                }
                if let Some((tail, ratio)) = c.saturation {
                    match saturation_check(&series, tail, ratio) {
                        Ok(s) => {
                            pass &= s.pass;
                            detail.push_str(&format!(
                                "; saturation {} (tail ratio {:.3}, limit ≈ {:.4e})",
                                if s.pass { "ok" } else { "violated" },
                                s.tail_ratio,
                                s.limit_estimate
                            ));
                        }
                        Err(e) => {
                            pass = false;
                            detail.push_str(&format!("; {e}"));
                        }
                    }
                }
                CheckOutcome { check: c.clone(), pass, detail }
            })
            .collect()
    }
}

/// Every built-in recipe, in presentation order.
pub fn builtin_recipes() -> Result<Vec<Recipe>, HarnessError> {
    BUILTIN.iter().map(|(_, text)| Recipe::from_toml(text)).collect()
}

pub fn builtin_recipe(name: &str) -> Result<Recipe, HarnessError> {
    let (_, text) = BUILTIN
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| {
            let names: Vec<&str> = BUILTIN.iter().map(|(n, _)| *n).collect();
            HarnessError::Recipe(format!("no built-in recipe `{name}` (available: {})", names.join(", ")))
        })?;
    Recipe::from_toml(text)
}

pub fn builtin_names() -> Vec<&'static str> {
    BUILTIN.iter().map(|(n, _)| *n).collect()
}

/// The TOML text of a built-in recipe.
pub fn builtin_recipe_source(name: &str) -> Option<&'static str> {
    BUILTIN.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}
