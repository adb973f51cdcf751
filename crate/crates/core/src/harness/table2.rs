//! The parameter-effect table: for each scenario, the direction in which the
//! outage moves when one parameter grows, checked on analytic sweeps.

use crate::params::{Axis, Duplex, Scenario, SystemParams};

use super::trend::{saturation_check, trend_check, Trend};
use super::{run_sweep, HarnessError, SweepMethod, SweepSpec};

/// Shared base point: α = 2, d = 5 m, R = 50 m, ρ = 0.001, K = 3, 50 dB powers.
pub fn table2_base() -> SystemParams {
    SystemParams {
        k_antennas: 3,
        rho_e: 0.001,
        radius: 50.0,
        d_bu: 5.0,
        alpha: 2.0,
        beta: 1.0,
        epsilon: 0.0,
        pb_over_n0_db: 50.0,
        pu_over_n0_db: 50.0,
        lambda_uu_db: 0.0,
        ed_noise: false,
        ..SystemParams::default()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table2Row {
    pub axis: Axis,
    pub values: Vec<f64>,
    pub hd: Trend,
    pub fd: Trend,
    /// Also require the series to level off (path-loss exponent row).
    pub saturates: bool,
    /// Changes to the base point for this row only.
    pub base: SystemParams,
}

impl Table2Row {
    pub fn expected(&self, scenario: Scenario) -> Trend {
        match scenario.duplex {
            Duplex::HalfDuplex => self.hd,
            Duplex::FullDuplex => self.fd,
        }
    }
}

/// The eight rows, in table order.
pub fn table2_rows() -> Vec<Table2Row> {
    let b = table2_base();
    let row = |axis, values: &[f64], hd, fd| Table2Row {
        axis,
        values: values.to_vec(),
        hd,
        fd,
        saturates: false,
        base: b.clone(),
    };
    use Trend::*;
    vec![
        row(Axis::KAntennas, &[1.0, 2.0, 3.0, 4.0, 6.0, 8.0], Decreasing, Decreasing),
        row(Axis::RhoE, &[0.0005, 0.001, 0.002, 0.003, 0.005], Increasing, Increasing),
        row(Axis::Beta, &[1.0, 1.5, 2.0, 3.0, 4.0], Increasing, Increasing),
        row(Axis::DBu, &[2.5, 5.0, 10.0, 20.0], Increasing, Increasing),
        Table2Row {
            saturates: true,
            // Single antenna: the benchmark configuration for this row.
            base: SystemParams { k_antennas: 1, ..b.clone() },
            ..row(Axis::Alpha, &[2.0, 2.5, 3.0, 3.5, 4.0, 5.0, 6.0, 8.0], Decreasing, Increasing)
        },
        row(Axis::LambdaUuDb, &[-10.0, -5.0, 0.0, 5.0, 10.0], Flat, Increasing),
        row(Axis::PuOverN0Db, &[30.0, 40.0, 50.0, 60.0], Flat, Decreasing),
        row(Axis::PbOverN0Db, &[30.0, 40.0, 50.0, 60.0], Flat, Flat),
    ]
}

/// Saturation parameters used for the path-loss exponent row.
pub const SATURATION_TAIL_STEPS: usize = 3;
pub const SATURATION_MAX_TAIL_RATIO: f64 = 0.25;

#[derive(Debug, Clone, PartialEq)]
pub struct Table2Outcome {
    pub scenario: Scenario,
    pub axis: Axis,
    pub expected: Trend,
    pub pass: bool,
    /// For flat rows: whether every value is bit-for-bit identical.
    pub bit_identical: Option<bool>,
    pub values: Vec<f64>,
    pub detail: String,
}

/// Runs all eight rows for one scenario.
pub fn run_table2(scenario: Scenario) -> Result<Vec<Table2Outcome>, HarnessError> {
    table2_rows().into_iter().map(|row| run_table2_row(scenario, &row)).collect()
}

pub fn run_table2_row(scenario: Scenario, row: &Table2Row) -> Result<Table2Outcome, HarnessError> {
    let spec = SweepSpec::new(row.base.clone(), row.axis, row.values.clone())
        .with_scenarios(&[scenario])
        .with_methods(&[SweepMethod::Analytic]);
    let result = run_sweep(&spec)?;
    let expected = row.expected(scenario);
    let series = result.series(scenario, SweepMethod::Analytic);
    let values: Vec<f64> = series.iter().map(|r| r.raw_value).collect();
    let mut detail = String::new();
    let mut pass = result.failures.is_empty() && series.len() == row.values.len();
    for f in &result.failures {
        detail.push_str(&format!("failed at {} = {}: {}; ", row.axis, f.axis_value, f.message));
    }
    match trend_check(&series, expected) {
        Ok(r) => {
            pass &= r.pass;
            detail.push_str(&r.to_string());
        }
        Err(e) => {
            pass = false;
            detail.push_str(&e.to_string());
        }
    }
    let bit_identical = (expected == Trend::Flat)
        .then(|| values.windows(2).all(|w| w[0].to_bits() == w[1].to_bits()));
    if bit_identical == Some(false) {
        pass = false;
        detail.push_str("; values are not bit-identical");
    }
    if row.saturates {
        match saturation_check(&series, SATURATION_TAIL_STEPS, SATURATION_MAX_TAIL_RATIO) {
            Ok(s) => {
                pass &= s.pass;
                detail.push_str(&format!(
                    "; saturation {} (tail ratio {:.3})",
                    if s.pass { "ok" } else { "violated" },
                    s.tail_ratio
                ));
            }
            Err(e) => {
                pass = false;
                detail.push_str(&format!("; {e}"));
            }
        }
    }
    Ok(Table2Outcome {
        scenario,
        axis: row.axis,
        expected,
        pass,
        bit_identical,
        values,
        detail,
    })
}
