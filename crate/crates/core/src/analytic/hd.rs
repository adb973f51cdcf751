//! Half-duplex UE: independent eavesdroppers (approximation and large-K lower
//! bound) and colluding eavesdroppers (exact).

use std::f64::consts::{E, PI};

use crate::mathkit::special::laplace_outage_integral;
use crate::mathkit::{
    bessel_k1, gamma_fn, hyp2f1_special, integrate_1d_with_breaks, QuadratureSpec,
};
use crate::params::{Duplex, EdModel, ValidatedParams};

use super::{
    alternating_sum, check_k, require, AnalyticError, AnalyticResult, Kind, Method, Result,
    MAX_K_CLOSED_FORM, MAX_K_QUADRATURE,
};

/// Route for the HD/independent approximation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IndependentPath {
    /// Bessel form at α = 2 and K ≤ 16, binomial Laplace integrals at other α
    /// and K ≤ 16, order-statistic integral beyond.
    #[default]
    Auto,
    Laplace,
    Bessel,
    OrderStatistic,
}

/// Route for the HD/colluding exact expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ColludingPath {
    /// Elementary reductions at α = 2 and α = 4, hypergeometric otherwise.
    #[default]
    Auto,
    General,
}

fn quad_spec() -> QuadratureSpec {
    QuadratureSpec::new(1e-12, 1e-16).with_max_subdivisions(4000)
}

/// b·d² where b = πρΓ(1 + 2/α)β^{2/α}: the scale of the per-antenna integral.
fn b_times_d2(p: &ValidatedParams) -> Result<f64> {
    let two_over_alpha = 2.0 / p.alpha();
    Ok(PI * p.rho_e() * gamma_fn(1.0 + two_over_alpha)? * p.beta().powf(two_over_alpha) * p.d_bu().powi(2))
}

/// Half-duplex UE, independent eavesdroppers (large-R approximation).
pub fn sop_hd_independent(p: &ValidatedParams) -> Result<AnalyticResult> {
    sop_hd_independent_via(p, IndependentPath::Auto)
}

/// Outage = Σ_k (−1)^{k+1} C(K,k) ∫₀^∞ e^{−t}(1 − exp(−B_k t^{−2/α})) dt with
/// B_k = b (k d^α)^{2/α}; each integral equals 1 − a_k I(a_k, b, 2/α), where
/// I(a, b, c) = ∫₀^∞ e^{−ax − b x^{−c}} dx and a_k = k d^α.
pub fn sop_hd_independent_via(p: &ValidatedParams, path: IndependentPath) -> Result<AnalyticResult> {
    require(p, "sop_hd_independent", Some(Duplex::HalfDuplex), Some(EdModel::Independent), "hd-independent")?;
    let big_k = p.k();
    let c = 2.0 / p.alpha();
    let path = match path {
        IndependentPath::Auto if big_k > MAX_K_QUADRATURE => IndependentPath::OrderStatistic,
        IndependentPath::Auto if p.alpha() == 2.0 => IndependentPath::Bessel,
        IndependentPath::Auto => IndependentPath::Laplace,
        other => other,
    };
    let method = match path {
        IndependentPath::Bessel => Method::BesselAlpha2,
        IndependentPath::OrderStatistic => Method::OrderStatistic,
        _ => Method::LaplaceIntegral,
    };
    let bd2 = b_times_d2(p)?;
    if bd2 == 0.0 {
        return Ok(AnalyticResult::new(0.0, Kind::Approximation, method));
    }
    let spec = quad_spec();
    let raw = match path {
        IndependentPath::Bessel => {
            if p.alpha() != 2.0 {
                return Err(AnalyticError::Domain(format!(
                    "the Bessel reduction needs α = 2, got {}",
                    p.alpha()
                )));
            }
            check_k(big_k, MAX_K_QUADRATURE, method)?;
            // 1 − a_k I_k = 1 − 2√(B_k) K₁(2√(B_k)), B_k = k b d².
            alternating_sum(big_k, |k| {
                let s = 2.0 * (f64::from(k) * bd2).sqrt();
                Ok(1.0 - s * bessel_k1(s)?)
            })?
        }
        IndependentPath::Laplace => {
            check_k(big_k, MAX_K_QUADRATURE, method)?;
            alternating_sum(big_k, |k| {
                let big_b = bd2 * f64::from(k).powf(c);
                Ok(laplace_outage_integral(big_b, c, &spec)?)
            })?
        }
        IndependentPath::OrderStatistic | IndependentPath::Auto => {
            order_statistic_integral(big_k, bd2, c, &spec)?
        }
    };
    Ok(AnalyticResult::new(raw, Kind::Approximation, method).logged(p))
}

/// ∫₀^∞ K(1 − e^{−t})^{K−1} e^{−t} (1 − exp(−B t^{−c})) dt: the same outage
/// averaged directly over the density of the largest of K unit-mean
/// exponential fades.
fn order_statistic_integral(big_k: u32, big_b: f64, c: f64, spec: &QuadratureSpec) -> Result<f64> {
    let kf = f64::from(big_k);
    let km1 = kf - 1.0;
    let f = |t: f64| {
        if t <= 0.0 {
            return 0.0;
        }
        let cdf_term = if km1 == 0.0 { 1.0 } else { (km1 * (-(-t).exp_m1()).ln()).exp() };
        kf * cdf_term * (-t).exp() * -(-big_b * t.powf(-c)).exp_m1()
    };
    let ln_k = kf.ln();
    let knee = big_b.powf(1.0 / c);
    let mut breaks = vec![ln_k.max(1e-3), knee * 0.1, knee, knee * 10.0];
    breaks.extend([ln_k + 5.0, ln_k + 20.0]);
    let est = integrate_1d_with_breaks(f, 0.0, ln_k + 750.0, &breaks, spec)?;
    Ok(est.value)
}

/// Leading-order lower bound on the HD/independent outage for large K:
/// πρd²β^{2/α}Γ(1 + 2/α) / (e (ln K)^{2/α}).
pub fn sop_hd_independent_lower_bound(p: &ValidatedParams) -> Result<AnalyticResult> {
    require(
        p,
        "sop_hd_independent_lower_bound",
        Some(Duplex::HalfDuplex),
        Some(EdModel::Independent),
        "hd-independent",
    )?;
    if p.k() < 2 {
        return Err(AnalyticError::Domain(format!(
            "the large-K bound needs K ≥ 2 (ln K > 0), got K = {}",
            p.k()
        )));
    }
    let raw = b_times_d2(p)? / (E * f64::from(p.k()).ln().powf(2.0 / p.alpha()));
    Ok(AnalyticResult::new(raw, Kind::LowerBound, Method::LargeKBound).logged(p))
}

/// Half-duplex UE, colluding eavesdroppers:
/// Σ_k (−1)^{k+1} C(K,k) (1 − exp(−πR²ρ F(1, 2/α; 1 + 2/α; −R^α/(kβd^α)))).
pub fn sop_hd_colluding(p: &ValidatedParams) -> Result<AnalyticResult> {
    sop_hd_colluding_via(p, ColludingPath::Auto)
}

pub fn sop_hd_colluding_via(p: &ValidatedParams, path: ColludingPath) -> Result<AnalyticResult> {
    require(p, "sop_hd_colluding", Some(Duplex::HalfDuplex), Some(EdModel::Colluding), "hd-colluding")?;
    let (alpha, beta, d, r, rho) = (p.alpha(), p.beta(), p.d_bu(), p.radius(), p.rho_e());
    let method = match path {
        ColludingPath::Auto if alpha == 2.0 => Method::ClosedAlpha2,
        ColludingPath::Auto if alpha == 4.0 => Method::ClosedAlpha4,
        _ => Method::Hyp2F1,
    };
    let max_k = if method == Method::Hyp2F1 { MAX_K_QUADRATURE } else { MAX_K_CLOSED_FORM };
    check_k(p.k(), max_k, method)?;
    if rho == 0.0 {
        return Ok(AnalyticResult::new(0.0, Kind::Exact, method));
    }
    // Each term is −expm1(−exponent_k); only the exponent differs by route.
    let exponent = |k: u32| -> Result<f64> {
        let kb = f64::from(k) * beta;
        Ok(match method {
            // F(1,1;2;−z) = ln(1+z)/z, so the exponent is πρkβd² ln(1 + R²/(kβd²)).
            Method::ClosedAlpha2 => PI * rho * kb * d * d * (r * r / (kb * d * d)).ln_1p(),
            // F(1,½;3/2;−z) = arctan(√z)/√z with √z = R²/(d²√(kβ)).
            Method::ClosedAlpha4 => {
                let s = d * d * kb.sqrt();
                PI * rho * s * (r * r / s).atan()
            }
            _ => {
                let z = (r / d).powf(alpha) / kb;
                PI * r * r * rho * hyp2f1_special(2.0 / alpha, z)?
            }
        })
    };
    let raw = alternating_sum(p.k(), |k| Ok(-(-exponent(k)?).exp_m1()))?;
    Ok(AnalyticResult::new(raw, Kind::Exact, method).logged(p))
}
