//! Monte Carlo estimation of the secrecy outage probability by direct
//! simulation of the downlink: PPP eavesdroppers in a disk, Rayleigh fading,
//! transmit antenna selection at the BS and optional full-duplex jamming.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Distribution, Exp1, Poisson};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::params::{Duplex, EdModel, Scenario, ValidatedParams};

pub mod rng;
pub mod stats;

use rng::TrialStreams;
pub use stats::{ks_test, wilson_interval, KsOutcome, Z_95};

/// Eavesdropper positions in polar coordinates around the BS.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct EdRealization {
    /// `(r, θ)` pairs in metres and radians.
    pub points: Vec<(f64, f64)>,
}

impl EdRealization {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Fading and self-interference gains for one trial.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TrialDraw {
    /// |h_{B_k U}|², one per BS antenna.
    pub ue_gains: Vec<f64>,
    /// |h_{B_* E_e}|², one per eavesdropper.
    pub ed_bs_gains: Vec<f64>,
    /// |h_{U E_e}|², one per eavesdropper (used by full-duplex only).
    pub ed_ue_gains: Vec<f64>,
    /// |g_UU|²: residual self-interference power over noise, mean λ_UU
    /// (used by full-duplex only).
    pub self_interference: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutageDef {
    /// log₂(1 + γ_BU) − log₂(1 + γ_BE) < ε.
    #[default]
    ExactCapacity,
    /// γ_BU / γ_BE < β; no outage when there is no eavesdropper.
    SnrRatio,
}

impl OutageDef {
    pub fn as_str(&self) -> &'static str {
        match self {
            OutageDef::ExactCapacity => "exact_capacity",
            OutageDef::SnrRatio => "snr_ratio",
        }
    }
}

impl fmt::Display for OutageDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for OutageDef {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "exact_capacity" | "exact" | "capacity" => Ok(OutageDef::ExactCapacity),
            "snr_ratio" | "ratio" | "snr" => Ok(OutageDef::SnrRatio),
            other => Err(format!("unknown outage definition `{other}` (expected exact-capacity or snr-ratio)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SopEstimate {
    pub p_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub outages: u64,
    pub n_trials: u64,
    pub seed: u64,
    pub outage_def: OutageDef,
}

impl SopEstimate {
    pub fn from_counts(outages: u64, n_trials: u64, seed: u64, outage_def: OutageDef) -> Self {
        let (ci_low, ci_high) = wilson_interval(outages, n_trials, Z_95);
        SopEstimate {
            p_hat: if n_trials == 0 { 0.0 } else { outages as f64 / n_trials as f64 },
            ci_low,
            ci_high,
            outages,
            n_trials,
            seed,
            outage_def,
        }
    }

    pub fn half_width(&self) -> f64 {
        0.5 * (self.ci_high - self.ci_low)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.ci_low <= x && x <= self.ci_high
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("tas_select needs at least one gain")]
    EmptyInput,
    #[error("n_trials must be at least 1")]
    NoTrials,
}

/// Poisson number of points, uniform on the disk of radius `radius`
/// (r = R√u, θ = 2πv). Points are appended to `out`, which is cleared first.
pub fn sample_ppp_disk_into<R: Rng + ?Sized>(rho_e: f64, radius: f64, rng: &mut R, out: &mut EdRealization) {
    out.points.clear();
    let mean = rho_e * PI * radius * radius;
    if !(mean > 0.0) {
        return;
    }
    let n = Poisson::new(mean).map(|d| d.sample(rng) as usize).unwrap_or(0);
    out.points.reserve(n);
    for _ in 0..n {
        let u: f64 = rng.random();
        let v: f64 = rng.random();
        out.points.push((radius * u.sqrt(), 2.0 * PI * v));
    }
}

pub fn sample_ppp_disk<R: Rng + ?Sized>(rho_e: f64, radius: f64, rng: &mut R) -> EdRealization {
    let mut out = EdRealization::default();
    sample_ppp_disk_into(rho_e, radius, rng, &mut out);
    out
}

/// Index and value of the strongest gain; ties go to the lowest index.
pub fn tas_select(ue_gains: &[f64]) -> Result<(usize, f64), SimError> {
    let (&first, rest) = ue_gains.split_first().ok_or(SimError::EmptyInput)?;
    let mut best = (0, first);
    for (i, &g) in rest.iter().enumerate() {
        if g > best.1 {
            best = (i + 1, g);
        }
    }
    Ok(best)
}

/// UE SNR γ_BU after antenna selection.
pub fn gamma_bu(p: &ValidatedParams, draw: &TrialDraw) -> f64 {
    let (_, max_gain) = tas_select(&draw.ue_gains).unwrap_or((0, 0.0));
    let si = if p.duplex() == Duplex::FullDuplex { draw.self_interference } else { 0.0 };
    p.pb() * max_gain * p.d_bu().powf(-p.alpha()) / (si + 1.0)
}

/// Effective eavesdropper SINR γ_BE*: the strongest eavesdropper for
/// independent EDs, the sum for colluding EDs, zero with no eavesdroppers.
pub fn gamma_be(p: &ValidatedParams, realization: &EdRealization, draw: &TrialDraw) -> f64 {
    let alpha = p.alpha();
    let d = p.d_bu();
    let jam = if p.duplex() == Duplex::FullDuplex { p.pu() } else { 0.0 };
    let noise = if p.ed_noise() { 1.0 } else { 0.0 };
    let mut acc = 0.0_f64;
    for (e, &(r, theta)) in realization.points.iter().enumerate() {
        let signal = p.pb() * draw.ed_bs_gains[e] * r.powf(-alpha);
        let interference = if jam > 0.0 {
            let (s, c) = theta.sin_cos();
            let d_ue2 = (r * c - d).powi(2) + (r * s).powi(2);
            jam * draw.ed_ue_gains[e] * d_ue2.powf(-0.5 * alpha)
        } else {
            0.0
        };
        let denom = interference + noise;
        let sinr = if signal.is_infinite() {
            // An eavesdropper on top of the BS: unbounded signal wins unless
            // it also sits on the UE, a probability-zero event.
            f64::INFINITY
        } else if denom == 0.0 {
            if signal > 0.0 { f64::INFINITY } else { 0.0 }
        } else {
            signal / denom
        };
        match p.ed_model() {
            EdModel::Independent => acc = acc.max(sinr),
            EdModel::Colluding => acc += sinr,
        }
    }
    acc
}

/// Outage indicator for one trial.
///
/// ExactCapacity declares outage when C_BU − C_BE < ε, i.e.
/// ln(1 + γ_BU) < ln β + ln(1 + γ_BE). The difference is not clipped at zero
/// before the comparison, so at ε = 0 the event is C_BU < C_BE rather than
/// the impossible [C_BU − C_BE]⁺ < 0; for ε > 0 the two readings coincide.
pub fn trial_outage(p: &ValidatedParams, realization: &EdRealization, draw: &TrialDraw, outage_def: OutageDef) -> bool {
    let g_bu = gamma_bu(p, draw);
    let g_be = gamma_be(p, realization, draw);
    match outage_def {
        OutageDef::ExactCapacity => g_bu.ln_1p() < p.beta().ln() + g_be.ln_1p(),
        OutageDef::SnrRatio => !realization.is_empty() && g_bu < p.beta() * g_be,
    }
}

/// Per-worker scratch space.
#[derive(Debug, Default)]
struct Scratch {
    realization: EdRealization,
    draw: TrialDraw,
}

/// Draws trial `trial` into `scratch`. Every random quantity is drawn for
/// every scenario (ED-to-UE fades and self-interference even for half
/// duplex), so scenarios evaluated from the same seed share their randomness.
fn draw_trial(p: &ValidatedParams, streams: &TrialStreams, trial: u64, scratch: &mut Scratch) {
    let mut g = streams.geometry.for_trial(trial);
    sample_ppp_disk_into(p.rho_e(), p.radius(), &mut g, &mut scratch.realization);

    let d = &mut scratch.draw;
    let mut u = streams.ue_fading.for_trial(trial);
    d.ue_gains.clear();
    d.ue_gains.extend((0..p.k()).map(|_| -> f64 { u.sample(Exp1) }));

    let mut e = streams.ed_fading.for_trial(trial);
    let n = scratch.realization.len();
    d.ed_bs_gains.clear();
    d.ed_ue_gains.clear();
    for _ in 0..n {
        d.ed_bs_gains.push(e.sample(Exp1));
        d.ed_ue_gains.push(e.sample(Exp1));
    }

    let mut s = streams.self_interference.for_trial(trial);
    let unit: f64 = s.sample(Exp1);
    d.self_interference = unit * p.lambda_uu();
}

/// One full trial, reproducible from `(seed, trial)` alone.
pub fn simulate_trial(p: &ValidatedParams, seed: u64, trial: u64) -> (EdRealization, TrialDraw) {
    let streams = TrialStreams::new(seed);
    let mut scratch = Scratch::default();
    draw_trial(p, &streams, trial, &mut scratch);
    (scratch.realization, scratch.draw)
}

/// SOP estimate for `scenario` (overriding the scenario stored in `params`).
/// The result depends only on the arguments, never on the worker count.
pub fn estimate_sop(
    params: &ValidatedParams,
    scenario: Scenario,
    n_trials: u64,
    seed: u64,
    outage_def: OutageDef,
) -> Result<SopEstimate, SimError> {
    Ok(estimate_sop_many(params, &[scenario], n_trials, seed, outage_def)?[0])
}

/// Estimates for several scenarios from one shared set of trials.
pub fn estimate_sop_many(
    params: &ValidatedParams,
    scenarios: &[Scenario],
    n_trials: u64,
    seed: u64,
    outage_def: OutageDef,
) -> Result<Vec<SopEstimate>, SimError> {
    if n_trials == 0 {
        return Err(SimError::NoTrials);
    }
    let per_scenario: Vec<ValidatedParams> = scenarios.iter().map(|&s| params.with_scenario(s)).collect();
    let streams = TrialStreams::new(seed);
    let zero = || vec![0u64; scenarios.len()];
    let counts = (0..n_trials)
        .into_par_iter()
        .map_init(Scratch::default, |scratch, trial| {
            draw_trial(params, &streams, trial, scratch);
            per_scenario
                .iter()
                .map(|p| u64::from(trial_outage(p, &scratch.realization, &scratch.draw, outage_def)))
                .collect::<Vec<u64>>()
        })
        .reduce(zero, |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        });
    Ok(counts
        .into_iter()
        .map(|c| SopEstimate::from_counts(c, n_trials, seed, outage_def))
        .collect())
}

#[cfg(test)]
mod tests;
