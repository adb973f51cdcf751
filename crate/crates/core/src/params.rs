//! Scenario parameterization, validation and unit conventions.
//!
//! Powers are configured in dB relative to the thermal noise power and
//! converted to linear ratios on validation; the noise power itself is the
//! unit of power (σ_n² = 1).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Relative tolerance for the `beta == 2^epsilon` consistency rule.
pub const BETA_EPSILON_RTOL: f64 = 1e-12;
/// Largest denominator considered when expressing `alpha` as `p/q`.
pub const MAX_ALPHA_DENOMINATOR: u64 = 100;

/// Converts a dB value to a linear power ratio.
pub fn linear_power(x_db: f64) -> f64 {
    10f64.powf(x_db / 10.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Duplex {
    #[serde(rename = "hd", alias = "HalfDuplex")]
    HalfDuplex,
    #[serde(rename = "fd", alias = "FullDuplex")]
    FullDuplex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdModel {
    #[serde(rename = "independent", alias = "Independent")]
    Independent,
    #[serde(rename = "colluding", alias = "Colluding")]
    Colluding,
}

impl Duplex {
    pub fn as_str(self) -> &'static str {
        match self {
            Duplex::HalfDuplex => "hd",
            Duplex::FullDuplex => "fd",
        }
    }
}

impl EdModel {
    pub fn as_str(self) -> &'static str {
        match self {
            EdModel::Independent => "independent",
            EdModel::Colluding => "colluding",
        }
    }
}

impl fmt::Display for Duplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Display for EdModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Duplex {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "hd" | "half" | "halfduplex" | "half-duplex" => Ok(Duplex::HalfDuplex),
            "fd" | "full" | "fullduplex" | "full-duplex" => Ok(Duplex::FullDuplex),
            other => Err(format!("unknown duplex mode `{other}` (expected hd or fd)")),
        }
    }
}

impl FromStr for EdModel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "independent" | "ie" | "ind" => Ok(EdModel::Independent),
            "colluding" | "ce" | "col" => Ok(EdModel::Colluding),
            other => Err(format!(
                "unknown eavesdropper model `{other}` (expected independent or colluding)"
            )),
        }
    }
}

/// One of the four receiver/eavesdropper combinations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Scenario {
    pub duplex: Duplex,
    pub ed_model: EdModel,
}

impl Scenario {
    pub const HD_INDEPENDENT: Scenario = Scenario::new(Duplex::HalfDuplex, EdModel::Independent);
    pub const HD_COLLUDING: Scenario = Scenario::new(Duplex::HalfDuplex, EdModel::Colluding);
    pub const FD_INDEPENDENT: Scenario = Scenario::new(Duplex::FullDuplex, EdModel::Independent);
    pub const FD_COLLUDING: Scenario = Scenario::new(Duplex::FullDuplex, EdModel::Colluding);

    pub const ALL: [Scenario; 4] = [
        Scenario::HD_INDEPENDENT,
        Scenario::FD_INDEPENDENT,
        Scenario::HD_COLLUDING,
        Scenario::FD_COLLUDING,
    ];

    pub const fn new(duplex: Duplex, ed_model: EdModel) -> Self {
        Scenario { duplex, ed_model }
    }

    /// Short label such as `hd-independent`.
    pub fn label(&self) -> String {
        format!("{}-{}", self.duplex, self.ed_model)
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.duplex, self.ed_model)
    }
}

impl FromStr for Scenario {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (d, e) = s
            .split_once(['-', ':', '/'])
            .ok_or_else(|| format!("scenario `{s}` must look like hd-independent"))?;
        Ok(Scenario::new(d.parse()?, e.parse()?))
    }
}

/// Full scenario parameterization. Field names double as configuration keys.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemParams {
    /// Number of BS antennas available for transmit antenna selection.
    pub k_antennas: u32,
    /// Eavesdropper intensity inside the disk, per m².
    pub rho_e: f64,
    /// Disk radius around the BS, m.
    pub radius: f64,
    /// BS to UE distance, m.
    pub d_bu: f64,
    /// Path loss exponent.
    pub alpha: f64,
    /// Target secrecy SNR ratio, `2^epsilon`.
    pub beta: f64,
    /// Target secrecy rate, bits/s/Hz.
    pub epsilon: f64,
    /// BS transmit power over noise, dB.
    pub pb_over_n0_db: f64,
    /// UE jamming power over noise, dB (full duplex only).
    pub pu_over_n0_db: f64,
    /// Mean residual self-interference after cancellation, dB relative to the noise power (full duplex only).
    pub lambda_uu_db: f64,
    pub duplex: Duplex,
    pub ed_model: EdModel,
    /// Whether eavesdropper receivers see thermal noise.
    pub ed_noise: bool,
}

/// Configuration keys, in declaration order, with their units.
pub const FIELDS: [(&str, &str); 13] = [
    ("k_antennas", "count"),
    ("rho_e", "1/m^2"),
    ("radius", "m"),
    ("d_bu", "m"),
    ("alpha", "dimensionless"),
    ("beta", "ratio"),
    ("epsilon", "bit/s/Hz"),
    ("pb_over_n0_db", "dB"),
    ("pu_over_n0_db", "dB"),
    ("lambda_uu_db", "dB"),
    ("duplex", "hd|fd"),
    ("ed_model", "independent|colluding"),
    ("ed_noise", "bool"),
];

impl Default for SystemParams {
    /// Simulation defaults: P_B/σ² = 50 dB, β = 1, with the geometry of the `fig5a`/`fig5b` recipes.
    fn default() -> Self {
        SystemParams {
            k_antennas: 5,
            rho_e: 0.001,
            radius: 50.0,
            d_bu: 10.0,
            alpha: 2.0,
            beta: 1.0,
            epsilon: 0.0,
            pb_over_n0_db: 50.0,
            pu_over_n0_db: 50.0,
            lambda_uu_db: 0.0,
            duplex: Duplex::HalfDuplex,
            ed_model: EdModel::Independent,
            ed_noise: true,
        }
    }
}

/// A single violated constraint.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamError {
    #[error("`{field}` must be positive")]
    NonPositive { field: &'static str },
    #[error("`{field}` must be non-negative")]
    Negative { field: &'static str },
    #[error("`{field}` must be finite")]
    NonFinite { field: &'static str },
    #[error("beta = {beta} is inconsistent with epsilon = {epsilon} (beta must equal 2^epsilon)")]
    InconsistentBetaEpsilon { beta: f64, epsilon: f64 },
    #[error("d_bu = {d_bu} must lie strictly inside the eavesdropper disk of radius {radius}")]
    UeOutsideDisk { d_bu: f64, radius: f64 },
    #[error("alpha = {alpha} has no reduced p/q form with q <= {max_den} within 1e-12")]
    AlphaRationalMismatch { alpha: f64, max_den: u64 },
}

impl ParamError {
    /// A one-line hint naming how to fix the violation.
    pub fn fix_hint(&self) -> String {
        match self {
            ParamError::NonPositive { field } => format!("set `{field}` to a value > 0"),
            ParamError::Negative { field } => format!("set `{field}` to a value >= 0"),
            ParamError::NonFinite { field } => format!("set `{field}` to a finite number"),
            ParamError::InconsistentBetaEpsilon { .. } => {
                "give only one of `beta`/`epsilon`, or make beta = 2^epsilon".to_string()
            }
            ParamError::UeOutsideDisk { radius, .. } => {
                format!("choose d_bu < radius ({radius}) or enlarge the radius")
            }
            ParamError::AlphaRationalMismatch { .. } => {
                "use a path loss exponent with a short decimal expansion".to_string()
            }
        }
    }
}

/// Every violated constraint of a parameter set.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("{}", self.0.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; "))]
pub struct ParamErrors(pub Vec<ParamError>);

impl SystemParams {
    pub fn scenario(&self) -> Scenario {
        Scenario::new(self.duplex, self.ed_model)
    }

    pub fn with_scenario(mut self, scenario: Scenario) -> Self {
        self.duplex = scenario.duplex;
        self.ed_model = scenario.ed_model;
        self
    }

    /// Sets `beta` and keeps `epsilon` consistent.
    pub fn set_beta(&mut self, beta: f64) {
        self.beta = beta;
        self.epsilon = beta.log2();
    }

    /// Sets `epsilon` and keeps `beta` consistent.
    pub fn set_epsilon(&mut self, epsilon: f64) {
        self.epsilon = epsilon;
        self.beta = epsilon.exp2();
    }

    pub fn validate(&self) -> Result<ValidatedParams, ParamErrors> {
        validate(self)
    }
}

/// Checks every constraint and reports all violations at once.
pub fn validate(params: &SystemParams) -> Result<ValidatedParams, ParamErrors> {
    let mut errs = Vec::new();
    let finite = [
        ("rho_e", params.rho_e),
        ("radius", params.radius),
        ("d_bu", params.d_bu),
        ("alpha", params.alpha),
        ("beta", params.beta),
        ("epsilon", params.epsilon),
        ("pb_over_n0_db", params.pb_over_n0_db),
        ("pu_over_n0_db", params.pu_over_n0_db),
        ("lambda_uu_db", params.lambda_uu_db),
    ];
    for (field, v) in finite {
        if !v.is_finite() {
            errs.push(ParamError::NonFinite { field });
        }
    }
    if params.k_antennas == 0 {
        errs.push(ParamError::NonPositive { field: "k_antennas" });
    }
    for (field, v) in [("radius", params.radius), ("d_bu", params.d_bu), ("alpha", params.alpha)] {
        if v.is_finite() && v <= 0.0 {
            errs.push(ParamError::NonPositive { field });
        }
    }
    for (field, v) in [("rho_e", params.rho_e), ("epsilon", params.epsilon)] {
        if v.is_finite() && v < 0.0 {
            errs.push(ParamError::Negative { field });
        }
    }
    if params.beta.is_finite() && params.beta <= 0.0 {
        errs.push(ParamError::NonPositive { field: "beta" });
    }
    if params.beta.is_finite() && params.epsilon.is_finite() && params.beta > 0.0 {
        let expect = params.epsilon.exp2();
        if ((params.beta - expect) / expect).abs() > BETA_EPSILON_RTOL {
            errs.push(ParamError::InconsistentBetaEpsilon {
                beta: params.beta,
                epsilon: params.epsilon,
            });
        }
    }
    if params.d_bu > 0.0 && params.radius > 0.0 && params.d_bu >= params.radius {
        errs.push(ParamError::UeOutsideDisk {
            d_bu: params.d_bu,
            radius: params.radius,
        });
    }

    if !errs.is_empty() {
        return Err(ParamErrors(errs));
    }
    Ok(ValidatedParams {
        pb: linear_power(params.pb_over_n0_db),
        pu: linear_power(params.pu_over_n0_db),
        lambda_uu: linear_power(params.lambda_uu_db),
        raw: params.clone(),
    })
}

/// Parameters that passed validation, with linear power ratios precomputed.
///
/// Immutable; share freely across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidatedParams {
    raw: SystemParams,
    pb: f64,
    pu: f64,
    lambda_uu: f64,
}

impl ValidatedParams {
    pub fn get(&self) -> &SystemParams {
        &self.raw
    }

    pub fn into_inner(self) -> SystemParams {
        self.raw
    }

    pub fn k(&self) -> u32 {
        self.raw.k_antennas
    }

    pub fn rho_e(&self) -> f64 {
        self.raw.rho_e
    }

    pub fn radius(&self) -> f64 {
        self.raw.radius
    }

    pub fn d_bu(&self) -> f64 {
        self.raw.d_bu
    }

    pub fn alpha(&self) -> f64 {
        self.raw.alpha
    }

    pub fn beta(&self) -> f64 {
        self.raw.beta
    }

    pub fn epsilon(&self) -> f64 {
        self.raw.epsilon
    }

    /// Linear P_B/σ².
    pub fn pb(&self) -> f64 {
        self.pb
    }

    /// Linear P_U/σ².
    pub fn pu(&self) -> f64 {
        self.pu
    }

    /// Linear mean residual self-interference power over σ².
    pub fn lambda_uu(&self) -> f64 {
        self.lambda_uu
    }

    pub fn scenario(&self) -> Scenario {
        self.raw.scenario()
    }

    pub fn duplex(&self) -> Duplex {
        self.raw.duplex
    }

    pub fn ed_model(&self) -> EdModel {
        self.raw.ed_model
    }

    pub fn ed_noise(&self) -> bool {
        self.raw.ed_noise
    }

    /// Same parameters under another scenario. Scenario fields carry no constraints.
    pub fn with_scenario(&self, scenario: Scenario) -> ValidatedParams {
        let mut out = self.clone();
        out.raw.duplex = scenario.duplex;
        out.raw.ed_model = scenario.ed_model;
        out
    }

    pub fn with_ed_noise(&self, ed_noise: bool) -> ValidatedParams {
        let mut out = self.clone();
        out.raw.ed_noise = ed_noise;
        out
    }

    /// Reduced `(p, q)` with `p/q == alpha` within 1e-12 and `q <= 100`.
    pub fn alpha_rational(&self) -> Result<(u64, u64), ParamError> {
        alpha_rational(self.raw.alpha, MAX_ALPHA_DENOMINATOR)
    }
}

/// Best rational approximation of `x > 0` with denominator at most `max_den`,
/// accepted only when it reproduces `x` to 1e-12.
pub fn alpha_rational(x: f64, max_den: u64) -> Result<(u64, u64), ParamError> {
    let err = ParamError::AlphaRationalMismatch { alpha: x, max_den };
    if !(x.is_finite() && x > 0.0) {
        return Err(err);
    }
    // Continued fraction convergents.
    let (mut p0, mut q0, mut p1, mut q1) = (0u64, 1u64, 1u64, 0u64);
    let mut rem = x;
    for _ in 0..64 {
        let a = rem.floor();
        if a > 1e15 {
            break;
        }
        let a = a as u64;
        let (p2, q2) = (a * p1 + p0, a * q1 + q0);
        if q2 > max_den {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = rem - a as f64;
        if frac.abs() < 1e-13 {
            break;
        }
        rem = 1.0 / frac;
    }
    if q1 == 0 || (p1 as f64 / q1 as f64 - x).abs() > 1e-12 * x.max(1.0) {
        return Err(err);
    }
    Ok((p1, q1))
}

/// Sparse overrides applied on top of a base parameter set, as read from a
/// configuration file. Unknown keys are rejected.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamOverrides {
    pub k_antennas: Option<u32>,
    pub rho_e: Option<f64>,
    pub radius: Option<f64>,
    pub d_bu: Option<f64>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub epsilon: Option<f64>,
    pub pb_over_n0_db: Option<f64>,
    pub pu_over_n0_db: Option<f64>,
    pub lambda_uu_db: Option<f64>,
    pub duplex: Option<Duplex>,
    pub ed_model: Option<EdModel>,
    pub ed_noise: Option<bool>,
}

impl ParamOverrides {
    pub fn from_toml(text: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(text)
    }

    /// Layers `other` over `self`; fields set in `other` win.
    pub fn merged_with(&self, other: &ParamOverrides) -> ParamOverrides {
        macro_rules! pick {
            ($($f:ident),*) => { ParamOverrides { $($f: other.$f.or(self.$f)),* } };
        }
        let mut out = pick!(
            k_antennas, rho_e, radius, d_bu, alpha, pb_over_n0_db, pu_over_n0_db, lambda_uu_db,
            duplex, ed_model, ed_noise, beta, epsilon
        );
        // A beta or epsilon given at the upper layer replaces the pair below it.
        if other.beta.is_some() || other.epsilon.is_some() {
            out.beta = other.beta;
            out.epsilon = other.epsilon;
        }
        out
    }

    /// Applies the overrides. When only one of `beta`/`epsilon` is present the
    /// other is derived from it; when both are present they are kept as given
    /// so that validation can flag an inconsistency.
    pub fn apply(&self, base: &SystemParams) -> SystemParams {
        let mut p = base.clone();
        macro_rules! set {
            ($($f:ident),*) => { $( if let Some(v) = self.$f { p.$f = v; } )* };
        }
        set!(
            k_antennas, rho_e, radius, d_bu, alpha, pb_over_n0_db, pu_over_n0_db, lambda_uu_db,
            duplex, ed_model, ed_noise
        );
        match (self.beta, self.epsilon) {
            (Some(b), Some(e)) => {
                p.beta = b;
                p.epsilon = e;
            }
            (Some(b), None) => p.set_beta(b),
            (None, Some(e)) => p.set_epsilon(e),
            (None, None) => {}
        }
        p
    }
}

/// Numeric fields that a sweep can vary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    KAntennas,
    RhoE,
    Radius,
    DBu,
    Alpha,
    Beta,
    Epsilon,
    PbOverN0Db,
    PuOverN0Db,
    LambdaUuDb,
}

impl Axis {
    pub const ALL: [Axis; 10] = [
        Axis::KAntennas,
        Axis::RhoE,
        Axis::Radius,
        Axis::DBu,
        Axis::Alpha,
        Axis::Beta,
        Axis::Epsilon,
        Axis::PbOverN0Db,
        Axis::PuOverN0Db,
        Axis::LambdaUuDb,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axis::KAntennas => "k_antennas",
            Axis::RhoE => "rho_e",
            Axis::Radius => "radius",
            Axis::DBu => "d_bu",
            Axis::Alpha => "alpha",
            Axis::Beta => "beta",
            Axis::Epsilon => "epsilon",
            Axis::PbOverN0Db => "pb_over_n0_db",
            Axis::PuOverN0Db => "pu_over_n0_db",
            Axis::LambdaUuDb => "lambda_uu_db",
        }
    }

    pub fn get(self, p: &SystemParams) -> f64 {
        match self {
            Axis::KAntennas => p.k_antennas as f64,
            Axis::RhoE => p.rho_e,
            Axis::Radius => p.radius,
            Axis::DBu => p.d_bu,
            Axis::Alpha => p.alpha,
            Axis::Beta => p.beta,
            Axis::Epsilon => p.epsilon,
            Axis::PbOverN0Db => p.pb_over_n0_db,
            Axis::PuOverN0Db => p.pu_over_n0_db,
            Axis::LambdaUuDb => p.lambda_uu_db,
        }
    }

    /// Returns a copy of `p` with this field set to `v`. `beta` and `epsilon`
    /// move together.
    pub fn set(self, p: &SystemParams, v: f64) -> SystemParams {
        let mut p = p.clone();
        match self {
            Axis::KAntennas => p.k_antennas = v.round().max(0.0) as u32,
            Axis::RhoE => p.rho_e = v,
            Axis::Radius => p.radius = v,
            Axis::DBu => p.d_bu = v,
            Axis::Alpha => p.alpha = v,
            Axis::Beta => p.set_beta(v),
            Axis::Epsilon => p.set_epsilon(v),
            Axis::PbOverN0Db => p.pb_over_n0_db = v,
            Axis::PuOverN0Db => p.pu_over_n0_db = v,
            Axis::LambdaUuDb => p.lambda_uu_db = v,
        }
        p
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.replace('-', "_").to_ascii_lowercase();
        Axis::ALL
            .iter()
            .copied()
            .find(|a| a.name() == key || (key == "k" && *a == Axis::KAntennas))
            .ok_or_else(|| format!("`{s}` is not a numeric parameter"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fig5() -> SystemParams {
        SystemParams {
            k_antennas: 5,
            rho_e: 0.001,
            radius: 50.0,
            d_bu: 10.0,
            alpha: 2.0,
            beta: 1.0,
            epsilon: 0.0,
            ..SystemParams::default()
        }
    }

    #[test]
    fn fig5_caption_parameters_are_valid() {
        assert!(validate(&fig5()).is_ok());
    }

    #[test]
    fn negative_radius_is_reported() {
        let p = SystemParams { radius: -1.0, ..fig5() };
        let errs = validate(&p).unwrap_err().0;
        assert!(errs.contains(&ParamError::NonPositive { field: "radius" }));
    }

    #[test]
    fn beta_epsilon_mismatch_is_reported() {
        let p = SystemParams { beta: 1.0, epsilon: 1.0, ..fig5() };
        let errs = validate(&p).unwrap_err().0;
        assert!(matches!(errs[0], ParamError::InconsistentBetaEpsilon { .. }));
    }

    #[test]
    fn all_violations_are_collected() {
        let p = SystemParams {
            k_antennas: 0,
            rho_e: -1.0,
            radius: 5.0,
            d_bu: 10.0,
            ..fig5()
        };
        let errs = validate(&p).unwrap_err().0;
        assert_eq!(errs.len(), 3, "{errs:?}");
    }

    #[test]
    fn ue_must_be_inside_disk() {
        let p = SystemParams { d_bu: 50.0, ..fig5() };
        assert!(matches!(
            validate(&p).unwrap_err().0[0],
            ParamError::UeOutsideDisk { .. }
        ));
    }

    #[test]
    fn db_conversion_is_exact_at_decades() {
        for (db, lin) in [(0.0, 1.0), (10.0, 10.0), (20.0, 100.0)] {
            assert!((linear_power(db) - lin).abs() <= 1e-12 * lin);
        }
    }

    #[test]
    fn rational_alpha() {
        assert_eq!(alpha_rational(2.0, 100).unwrap(), (2, 1));
        assert_eq!(alpha_rational(3.5, 100).unwrap(), (7, 2));
        assert_eq!(alpha_rational(2.7, 100).unwrap(), (27, 10));
        assert!(alpha_rational(std::f64::consts::PI, 100).is_err());
    }

    #[test]
    fn overrides_derive_the_missing_rate_field() {
        let o = ParamOverrides::from_toml("epsilon = 1.0\nk_antennas = 3").unwrap();
        let p = o.apply(&fig5());
        assert_eq!(p.beta, 2.0);
        assert_eq!(p.k_antennas, 3);
        assert!(ParamOverrides::from_toml("kk = 1").is_err());
    }

    #[test]
    fn axis_names_round_trip() {
        for a in Axis::ALL {
            assert_eq!(a.name().parse::<Axis>().unwrap(), a);
        }
    }

    proptest! {
        #[test]
        fn serialization_round_trip(
            k in 1u32..64, rho in 0.0f64..0.1, r in 1.0f64..500.0, frac in 0.01f64..0.99,
            alpha in 1.5f64..6.0, eps in 0.0f64..4.0, pb in -20.0f64..80.0,
            pu in -20.0f64..80.0, lam in -30.0f64..30.0, fd in any::<bool>(),
            col in any::<bool>(), noise in any::<bool>()
        ) {
            let mut p = SystemParams {
                k_antennas: k, rho_e: rho, radius: r, d_bu: r * frac, alpha,
                pb_over_n0_db: pb, pu_over_n0_db: pu, lambda_uu_db: lam,
                duplex: if fd { Duplex::FullDuplex } else { Duplex::HalfDuplex },
                ed_model: if col { EdModel::Colluding } else { EdModel::Independent },
                ed_noise: noise, ..SystemParams::default()
            };
            p.set_epsilon(eps);
            let v = validate(&p).unwrap();
            let text = toml::to_string(v.get()).unwrap();
            let back: SystemParams = toml::from_str(&text).unwrap();
            prop_assert_eq!(&back, v.get());
            prop_assert_eq!(validate(&back).unwrap(), v);
        }
    }
}
