//! Closed-form and single/double-integral expressions for the secrecy outage
//! probability of the four duplex × eavesdropper scenarios.
//!
//! Every evaluator returns the value clamped into [0, 1] together with the raw
//! number it computed, so sweeps that cross the validity edge of an
//! approximation still produce rows.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::mathkit::{CompensatedSum, MathError};
use crate::params::{Duplex, EdModel, Scenario, ValidatedParams};

mod fd;
mod hd;

pub use fd::{
    omega_step_c_integral, omega_term, sop_fd_colluding_approx_alpha2,
    sop_fd_colluding_approx_alpha2_rederived, sop_fd_colluding_bound, sop_fd_independent_bound,
    sop_fd_independent_bound_via, PsiPath, DEFAULT_VARRHO,
};
pub use hd::{
    sop_hd_colluding, sop_hd_colluding_via, sop_hd_independent, sop_hd_independent_lower_bound,
    sop_hd_independent_via, ColludingPath, IndependentPath,
};

/// Largest K for alternating sums whose terms come from adaptive quadrature.
///
/// The k-th term carries a factor C(K, k); with terms accurate to ~1e-12 the
/// sum stays accurate to ~1e-8 up to K = 16 and degrades quickly beyond.
pub const MAX_K_QUADRATURE: u32 = 16;
/// Largest K for alternating sums whose terms are elementary closed forms.
pub const MAX_K_CLOSED_FORM: u32 = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Exact,
    Approximation,
    UpperBound,
    LowerBound,
}

impl Kind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Kind::Exact => "exact",
            Kind::Approximation => "approximation",
            Kind::UpperBound => "upper_bound",
            Kind::LowerBound => "lower_bound",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        [Kind::Exact, Kind::Approximation, Kind::UpperBound, Kind::LowerBound]
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown kind '{s}'"))
    }
}

/// Numerical route taken by an evaluator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Binomial expansion over per-antenna Laplace-type integrals.
    LaplaceIntegral,
    /// Single integral against the density of the strongest of K fades; no
    /// alternating sum, so it serves any K.
    OrderStatistic,
    BesselAlpha2,
    Hyp2F1,
    ClosedAlpha2,
    ClosedAlpha4,
    PsiBound,
    E1Bound,
    /// The printed small/large-argument expansion with its Ω term.
    OmegaApprox,
    /// The same expansion with the first term re-derived and Ω replaced by
    /// quadrature of the integral it stands for.
    OmegaRederived,
    LargeKBound,
}

impl Method {
    pub const ALL: [Method; 11] = [
        Method::LaplaceIntegral,
        Method::OrderStatistic,
        Method::BesselAlpha2,
        Method::Hyp2F1,
        Method::ClosedAlpha2,
        Method::ClosedAlpha4,
        Method::PsiBound,
        Method::E1Bound,
        Method::OmegaApprox,
        Method::OmegaRederived,
        Method::LargeKBound,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Method::LaplaceIntegral => "laplace_integral",
            Method::OrderStatistic => "order_statistic",
            Method::BesselAlpha2 => "bessel_alpha2",
            Method::Hyp2F1 => "hyp2f1",
            Method::ClosedAlpha2 => "closed_alpha2",
            Method::ClosedAlpha4 => "closed_alpha4",
            Method::PsiBound => "psi_bound",
            Method::E1Bound => "e1_bound",
            Method::OmegaApprox => "omega_approx",
            Method::OmegaRederived => "omega_rederived",
            Method::LargeKBound => "large_k_bound",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown method '{s}'"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnalyticResult {
    /// `raw_value` clamped into [0, 1].
    pub value: f64,
    pub raw_value: f64,
    pub clamped: bool,
    pub kind: Kind,
    pub method: Method,
}

impl AnalyticResult {
    pub(crate) fn new(raw_value: f64, kind: Kind, method: Method) -> Self {
        let value = raw_value.clamp(0.0, 1.0);
        AnalyticResult {
            value,
            raw_value,
            clamped: value != raw_value,
            kind,
            method,
        }
    }

    fn logged(self, p: &ValidatedParams) -> Self {
        if self.clamped {
            log::warn!(
                "{} ({}) left [0, 1]: raw {:e} clamped to {}; parameters {:?}",
                self.method,
                self.kind,
                self.raw_value,
                self.value,
                p.get()
            );
        }
        self
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalyticError {
    #[error(transparent)]
    Math(#[from] MathError),
    #[error("{what} applies to the {expected} scenario, not {got}")]
    WrongScenario {
        what: &'static str,
        expected: &'static str,
        got: Scenario,
    },
    #[error(
        "K = {k} exceeds {max} for {method}: the alternating binomial sum would lose all precision"
    )]
    TooManyAntennas { k: u32, max: u32, method: Method },
    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, AnalyticError>;

pub(crate) fn require(
    p: &ValidatedParams,
    what: &'static str,
    duplex: Option<Duplex>,
    ed: Option<EdModel>,
    expected: &'static str,
) -> Result<()> {
    let s = p.scenario();
    let ok = duplex.map_or(true, |d| d == s.duplex) && ed.map_or(true, |e| e == s.ed_model);
    if ok {
        Ok(())
    } else {
        Err(AnalyticError::WrongScenario { what, expected, got: s })
    }
}

pub(crate) fn check_k(k: u32, max: u32, method: Method) -> Result<()> {
    if k > max {
        Err(AnalyticError::TooManyAntennas { k, max, method })
    } else {
        Ok(())
    }
}

/// C(n, k) as a float (exact for the n ≤ 64 used here).
pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut c = 1.0;
    for i in 0..k {
        c = c * f64::from(n - i) / f64::from(i + 1);
    }
    c.round()
}

/// Σ_{k=1}^{K} (−1)^{k+1} C(K, k) · term(k), accumulated in increasing k with
/// compensated summation.
pub(crate) fn alternating_sum<F>(big_k: u32, mut term: F) -> Result<f64>
where
    F: FnMut(u32) -> Result<f64>,
{
    let mut acc = CompensatedSum::new();
    for k in 1..=big_k {
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        acc.add(sign * binomial(big_k, k) * term(k)?);
    }
    Ok(acc.value())
}

/// The evaluator the scenario is normally reported with: the approximation
/// for HD/independent, the exact expression for HD/colluding, and the upper
/// bounds for the two FD scenarios.
pub fn evaluate(p: &ValidatedParams) -> Result<AnalyticResult> {
    match (p.duplex(), p.ed_model()) {
        (Duplex::HalfDuplex, EdModel::Independent) => sop_hd_independent(p),
        (Duplex::HalfDuplex, EdModel::Colluding) => sop_hd_colluding(p),
        (Duplex::FullDuplex, EdModel::Independent) => sop_fd_independent_bound(p),
        (Duplex::FullDuplex, EdModel::Colluding) => sop_fd_colluding_bound(p),
    }
}
