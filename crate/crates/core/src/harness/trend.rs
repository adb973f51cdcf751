//! Qualitative checks on one sweep series: direction of change and
//! saturation.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{HarnessError, SweepMethod, SweepRow};

/// Analytic "flat" series may differ by at most this much.
pub const ANALYTIC_FLAT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Trend {
    Increasing,
    Decreasing,
    Flat,
}

impl Trend {
    pub fn as_str(&self) -> &'static str {
        match self {
            Trend::Increasing => "increasing",
            Trend::Decreasing => "decreasing",
            Trend::Flat => "flat",
        }
    }
}

impl fmt::Display for Trend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Trend {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "increasing" | "up" => Ok(Trend::Increasing),
            "decreasing" | "down" => Ok(Trend::Decreasing),
            "flat" | "constant" => Ok(Trend::Flat),
            other => Err(format!("unknown trend `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrendReport {
    pub expected: Trend,
    pub pass: bool,
    /// Human-readable description of every offending step.
    pub violations: Vec<String>,
    /// For flat series: max − min of the compared values.
    pub spread: f64,
}

impl fmt::Display for TrendReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.expected, if self.pass { "ok" } else { "violated" })?;
        if self.expected == Trend::Flat {
            write!(f, " (spread {:e})", self.spread)?;
        }
        for v in &self.violations {
            write!(f, "; {v}")?;
        }
        Ok(())
    }
}

fn sorted(rows: &[SweepRow]) -> Vec<SweepRow> {
    let mut rows = rows.to_vec();
    rows.sort_by(|a, b| a.axis_value.total_cmp(&b.axis_value));
    rows
}

/// Checks the direction of one series.
///
/// Analytic rows are judged strictly on their raw (unclamped) values: every
/// step must move in the expected direction, and a flat series may not vary
/// by more than 1e-12. Monte Carlo rows fail a step only when it moves the
/// wrong way by more than the two confidence half-widths combined, and a
/// flat series may spread by at most twice the largest half-width.
pub fn trend_check(rows: &[SweepRow], expected: Trend) -> Result<TrendReport, HarnessError> {
    if rows.len() < 3 {
        return Err(HarnessError::InsufficientPoints(rows.len()));
    }
    let rows = sorted(rows);
    let mc = rows.iter().any(|r| r.method == SweepMethod::MonteCarlo);
    let val = |r: &SweepRow| if mc { r.value } else { r.raw_value };
    let mut violations = Vec::new();
    let values: Vec<f64> = rows.iter().map(val).collect();
    let spread = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        - values.iter().cloned().fold(f64::INFINITY, f64::min);
    match expected {
        Trend::Flat => {
            let tol = if mc {
                2.0 * rows.iter().map(SweepRow::half_width).fold(0.0, f64::max)
            } else {
                ANALYTIC_FLAT_TOL
            };
            if !(spread <= tol) {
                violations.push(format!("spread {spread:e} exceeds {tol:e}"));
            }
        }
        Trend::Increasing | Trend::Decreasing => {
            let sign = if expected == Trend::Increasing { 1.0 } else { -1.0 };
            for w in rows.windows(2) {
                let step = sign * (val(&w[1]) - val(&w[0]));
                let slack = if mc { w[0].half_width() + w[1].half_width() } else { 0.0 };
                let bad = if mc { step < -slack } else { !(step > 0.0) };
                if bad {
                    violations.push(format!(
                        "{} {} → {}: {:.6e} → {:.6e}",
                        w[0].axis_name,
                        w[0].axis_value,
                        w[1].axis_value,
                        val(&w[0]),
                        val(&w[1])
                    ));
                }
            }
        }
    }
    Ok(TrendReport {
        expected,
        pass: violations.is_empty(),
        violations,
        spread,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SaturationReport {
    pub pass: bool,
    /// |last step| / largest |step| over the series.
    pub tail_ratio: f64,
    /// Whether the step magnitudes shrink over the tail.
    pub tail_contracting: bool,
    pub limit_estimate: f64,
}

/// Checks that a series levels off toward a finite limit: over the last
/// `tail_steps` steps the step sizes, normalized by the axis spacing, must
/// not grow, and the final normalized step must be at most `max_tail_ratio`
/// of the largest normalized step in the series.
pub fn saturation_check(rows: &[SweepRow], tail_steps: usize, max_tail_ratio: f64) -> Result<SaturationReport, HarnessError> {
    if rows.len() < 3 || tail_steps + 1 > rows.len() {
        return Err(HarnessError::InsufficientPoints(rows.len()));
    }
    let rows = sorted(rows);
    let slopes: Vec<f64> = rows
        .windows(2)
        .map(|w| ((w[1].value - w[0].value) / (w[1].axis_value - w[0].axis_value)).abs())
        .collect();
    let largest = slopes.iter().cloned().fold(0.0, f64::max);
    let last = *slopes.last().unwrap_or(&0.0);
    let tail_ratio = if largest == 0.0 { 0.0 } else { last / largest };
    let tail = &slopes[slopes.len() - tail_steps..];
    let tail_contracting = tail.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-9) + 1e-15);
    let limit_estimate = rows.last().map(|r| r.value).unwrap_or(f64::NAN);
    Ok(SaturationReport {
        pass: tail_contracting && tail_ratio <= max_tail_ratio && limit_estimate.is_finite(),
        tail_ratio,
        tail_contracting,
        limit_estimate,
    })
}
