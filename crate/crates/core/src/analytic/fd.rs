//! Full-duplex UE: jamming-aware upper bounds for independent and colluding
//! eavesdroppers, and the α = 2 closed-form approximation of the colluding
//! bound.

use std::f64::consts::PI;

use crate::mathkit::{
    exp_scaled_e1, integrate_1d_with_breaks, integrate_2d_polar_with, psi_alpha2_closed,
    psi_kernel, Pchip, PolarOptions, QuadratureSpec, EULER_GAMMA,
};
use crate::params::{Duplex, EdModel, ValidatedParams};

use super::{
    alternating_sum, check_k, require, AnalyticError, AnalyticResult, Kind, Method, Result,
    MAX_K_CLOSED_FORM, MAX_K_QUADRATURE,
};

/// Split radius used by the α = 2 approximation unless told otherwise, m.
pub const DEFAULT_VARRHO: f64 = 1.0;

/// How Ψ(y; α, δ) is obtained inside the independent-eavesdropper bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PsiPath {
    /// Closed form at α = 2, tabulated kernel quadrature otherwise.
    #[default]
    Auto,
    ClosedAlpha2,
    Kernel,
}

/// Upper end of the normalized outer variable u; e^{−u} is negligible beyond.
const U_MAX: f64 = 60.0;
/// Below this u the integrand is replaced by a power-law extrapolation of Ψ.
const U_MIN_TABLE: f64 = 1e-8;
const PSI_TABLE_NODES: usize = 64;
/// Relative accuracy demanded of the tabulated Ψ at every interval midpoint.
const PSI_TABLE_RTOL: f64 = 1e-7;
const PSI_TABLE_MAX_ROUNDS: usize = 8;

/// Ψ(y) tabulated on a log grid and interpolated as ln Ψ against ln y, which
/// keeps the power-law behaviour at small y and the saturation at large y.
struct PsiTable {
    interp: Pchip,
    ln_y_min: f64,
    ln_y_max: f64,
    /// Log-log slope on the first interval, for extrapolation below the table.
    head_slope: f64,
}

impl PsiTable {
    fn build(alpha: f64, delta: f64, y_min: f64, y_max: f64) -> Result<PsiTable> {
        let spec = QuadratureSpec::new(1e-10, f64::MIN_POSITIVE).with_max_subdivisions(4000);
        let eval = |ln_y: f64| -> Result<f64> { Ok(psi_kernel(ln_y.exp(), alpha, delta, &spec)?.ln()) };
        let (lo, hi) = (y_min.ln(), y_max.ln());
        let mut xs: Vec<f64> = (0..PSI_TABLE_NODES)
            .map(|i| lo + (hi - lo) * i as f64 / (PSI_TABLE_NODES - 1) as f64)
            .collect();
        let mut ys = xs.iter().map(|&x| eval(x)).collect::<Result<Vec<f64>>>()?;
        for _ in 0..PSI_TABLE_MAX_ROUNDS {
            let interp = Pchip::new(xs.clone(), ys.clone())?;
            let mut inserts = Vec::new();
            for w in xs.windows(2) {
                let mid = 0.5 * (w[0] + w[1]);
                let exact = eval(mid)?;
                if (interp.eval(mid) - exact).abs() > PSI_TABLE_RTOL {
                    inserts.push((mid, exact));
                }
            }
            if inserts.is_empty() {
                break;
            }
            let mut merged: Vec<(f64, f64)> = xs.iter().copied().zip(ys.iter().copied()).chain(inserts).collect();
            merged.sort_by(|a, b| a.0.total_cmp(&b.0));
            xs = merged.iter().map(|p| p.0).collect();
            ys = merged.iter().map(|p| p.1).collect();
        }
        let head_slope = (ys[1] - ys[0]) / (xs[1] - xs[0]);
        Ok(PsiTable {
            interp: Pchip::new(xs, ys)?,
            ln_y_min: lo,
            ln_y_max: hi,
            head_slope,
        })
    }

    fn eval(&self, y: f64) -> f64 {
        if y <= 0.0 {
            return 0.0;
        }
        let ln_y = y.ln();
        if ln_y < self.ln_y_min {
            let y0 = self.interp.eval(self.ln_y_min);
            return (y0 + self.head_slope * (ln_y - self.ln_y_min)).exp();
        }
        self.interp.eval(ln_y.min(self.ln_y_max)).exp()
    }
}

fn fd_independent_spec() -> QuadratureSpec {
    QuadratureSpec::new(1e-11, 1e-15).with_max_subdivisions(4000)
}

/// Full-duplex UE, independent eavesdroppers, interference-limited receivers.
pub fn sop_fd_independent_bound(p: &ValidatedParams) -> Result<AnalyticResult> {
    sop_fd_independent_bound_via(p, PsiPath::Auto)
}

/// Upper bound
/// 1 − e^{−ρπR²} Σ_k (−1)^{k+1} k C(K,k) ∫₀^∞ g_k(x) exp(ρR²Ψ(x/β; α, d/R) − k d^α x/P_U) dx,
/// g_k(x) = (P(1+λ) + kxλ)/(P + kxλ)², P = P_U/d^α.
///
/// With u = k d^α x / P_U the k-th integral becomes
/// ∫₀^∞ (1+λ+uλ)/(1+uλ)² e^{−u} exp(−ρR²(π − Ψ(uP/(kβ)))) du, and since the
/// weight (1+λ+uλ)/(1+uλ)² e^{−u} integrates to one, the bound is evaluated as
/// Σ_k (−1)^{k+1} C(K,k) ∫₀^∞ weight(u) (1 − exp(−ρR²(π − Ψ))) du, which has no
/// cancellation between the leading 1 and the sum.
pub fn sop_fd_independent_bound_via(p: &ValidatedParams, path: PsiPath) -> Result<AnalyticResult> {
    require(p, "sop_fd_independent_bound", Some(Duplex::FullDuplex), Some(EdModel::Independent), "fd-independent")?;
    check_k(p.k(), MAX_K_QUADRATURE, Method::PsiBound)?;
    let (alpha, beta, d, r, rho) = (p.alpha(), p.beta(), p.d_bu(), p.radius(), p.rho_e());
    if rho == 0.0 {
        return Ok(AnalyticResult::new(0.0, Kind::UpperBound, Method::PsiBound));
    }
    let lam = p.lambda_uu();
    let big_p = p.pu() / d.powf(alpha);
    let delta = d / r;
    let use_closed = match path {
        PsiPath::Auto => alpha == 2.0,
        PsiPath::ClosedAlpha2 => {
            if alpha != 2.0 {
                return Err(AnalyticError::Domain(format!(
                    "the closed form of Ψ needs α = 2, got {alpha}"
                )));
            }
            true
        }
        PsiPath::Kernel => false,
    };
    let table = if use_closed {
        None
    } else {
        let y_min = U_MIN_TABLE * big_p / (f64::from(p.k()) * beta);
        let y_max = U_MAX * big_p / beta;
        Some(PsiTable::build(alpha, delta, y_min, y_max)?)
    };
    let psi = |y: f64| -> f64 {
        if y <= 0.0 {
            return 0.0;
        }
        match &table {
            None => psi_alpha2_closed(y, delta).unwrap_or(f64::NAN),
            Some(t) => t.eval(y),
        }
    };
    let rho_r2 = rho * r * r;
    let spec = fd_independent_spec();
    let raw = alternating_sum(p.k(), |k| {
        let scale = big_p / (f64::from(k) * beta);
        let f = |u: f64| {
            let weight = (1.0 + lam + u * lam) / (1.0 + u * lam).powi(2) * (-u).exp();
            let gap = (PI - psi(u * scale)).max(0.0);
            weight * -(-rho_r2 * gap).exp_m1()
        };
        let est = integrate_1d_with_breaks(f, 0.0, U_MAX, &[1e-6, 1e-3, 0.1, 1.0, 10.0], &spec)?;
        Ok(est.value)
    })?;
    Ok(AnalyticResult::new(raw, Kind::UpperBound, Method::PsiBound).logged(p))
}

fn fd_colluding_spec() -> QuadratureSpec {
    QuadratureSpec::new(1e-10, 1e-10).with_max_subdivisions(4000)
}

/// A e^A E₁(A), which lies in (A/(A+1), 1); zero at A = 0.
fn e1_factor(a: f64) -> f64 {
    if a <= 0.0 {
        0.0
    } else if a.is_infinite() {
        1.0
    } else {
        a * exp_scaled_e1(a).unwrap_or(f64::NAN)
    }
}

/// Squared UE-to-point distance, written as a sum of squares so it never
/// goes negative through rounding.
fn dist2_to_ue(r: f64, theta: f64, d: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    (r * c - d).powi(2) + (r * s).powi(2)
}

/// ∫₀^R∫₀^{2π} A e^A E₁(A) r dθ dr with A = s (d_UE/r)^α.
fn e1_disk_integral(s: f64, alpha: f64, d: f64, r_max: f64) -> Result<f64> {
    let half_alpha = 0.5 * alpha;
    let f = |r: f64, theta: f64| {
        if r == 0.0 {
            return 1.0;
        }
        let a = s * (dist2_to_ue(r, theta, d) / (r * r)).powf(half_alpha);
        e1_factor(a)
    };
    let opts = PolarOptions {
        radial_breaks: vec![d],
        mirror_symmetric: true,
        r_min: 0.0,
    };
    Ok(integrate_2d_polar_with(f, r_max, &opts, &fd_colluding_spec())?.value)
}

/// Full-duplex UE, colluding eavesdroppers, interference-limited receivers:
/// 1 + Σ_k C(K,k)(−1)^k exp(−ρ ∫₀^R∫₀^{2π} A_k e^{A_k} E₁(A_k) r dθ dr),
/// A_k = s_k (d_UE/r)^α, s_k = (1 + λ_UU) kβ d^α / P_U.
///
/// The residual self-interference enters through its mean: the UE's SNR is
/// P_B·max|h|²·d^{−α}/(1 + λ_UU), so the 1 + λ_UU factor equals 2 at 0 dB.
pub fn sop_fd_colluding_bound(p: &ValidatedParams) -> Result<AnalyticResult> {
    require(p, "sop_fd_colluding_bound", Some(Duplex::FullDuplex), Some(EdModel::Colluding), "fd-colluding")?;
    check_k(p.k(), MAX_K_QUADRATURE, Method::E1Bound)?;
    let rho = p.rho_e();
    if rho == 0.0 {
        return Ok(AnalyticResult::new(0.0, Kind::UpperBound, Method::E1Bound));
    }
    let (alpha, d) = (p.alpha(), p.d_bu());
    let raw = alternating_sum(p.k(), |k| {
        let s = s_k(p, k);
        let integral = e1_disk_integral(s, alpha, d, p.radius())?;
        Ok(-(-rho * integral).exp_m1())
    })?;
    Ok(AnalyticResult::new(raw, Kind::UpperBound, Method::E1Bound).logged(p))
}

fn s_k(p: &ValidatedParams, k: u32) -> f64 {
    (1.0 + p.lambda_uu()) * f64::from(k) * p.beta() * p.d_bu().powf(p.alpha()) / p.pu()
}

fn check_varrho(p: &ValidatedParams, varrho: f64) -> Result<()> {
    if p.alpha() != 2.0 {
        return Err(AnalyticError::Domain(format!(
            "the closed-form approximation needs α = 2, got {}",
            p.alpha()
        )));
    }
    if !(varrho > 0.0 && varrho < p.radius() && varrho < p.d_bu()) {
        return Err(AnalyticError::Domain(format!(
            "split radius ϱ = {varrho} must satisfy 0 < ϱ < min(R, d_BU) = {}",
            p.radius().min(p.d_bu())
        )));
    }
    Ok(())
}

/// α = 2 approximation of the colluding bound, as printed:
/// 1 + Σ_k C(K,k)(−1)^k exp(−ρ(πϱ² − (πd²/A₀)((ϱ/d)² − ln(1 − (ϱ/d)²)) + Ω)),
/// A₀ = (1 + λ_UU) kβd²/P_U (so πd²/A₀ = πP_U/(2kβ) at λ_UU = 0 dB).
pub fn sop_fd_colluding_approx_alpha2(p: &ValidatedParams, varrho: f64) -> Result<AnalyticResult> {
    require(
        p,
        "sop_fd_colluding_approx_alpha2",
        Some(Duplex::FullDuplex),
        Some(EdModel::Colluding),
        "fd-colluding",
    )?;
    check_varrho(p, varrho)?;
    check_k(p.k(), MAX_K_CLOSED_FORM, Method::OmegaApprox)?;
    let (d, r, beta, rho) = (p.d_bu(), p.radius(), p.beta(), p.rho_e());
    if rho == 0.0 {
        return Ok(AnalyticResult::new(0.0, Kind::Approximation, Method::OmegaApprox));
    }
    let x2 = (varrho / d).powi(2);
    let raw = alternating_sum(p.k(), |k| {
        let a0 = s_k(p, k);
        let inner = PI * varrho * varrho - (PI * d * d / a0) * (x2 - (-x2).ln_1p());
        let omega = omega_term(beta, d, r, a0, varrho)?;
        Ok(-(-rho * (inner + omega)).exp_m1())
    })?;
    Ok(AnalyticResult::new(raw, Kind::Approximation, Method::OmegaApprox).logged(p))
}

/// The same split-radius approximation with the inner-disk term re-derived,
/// πϱ² − (πd²/A₀)(−(ϱ/d)² − ln(1 − (ϱ/d)²)), and the outer-annulus term
/// taken by quadrature of the small-A expansion it approximates
/// ([`omega_step_c_integral`]) instead of the closed form [`omega_term`].
pub fn sop_fd_colluding_approx_alpha2_rederived(p: &ValidatedParams, varrho: f64) -> Result<AnalyticResult> {
    require(
        p,
        "sop_fd_colluding_approx_alpha2_rederived",
        Some(Duplex::FullDuplex),
        Some(EdModel::Colluding),
        "fd-colluding",
    )?;
    check_varrho(p, varrho)?;
    check_k(p.k(), MAX_K_QUADRATURE, Method::OmegaRederived)?;
    let (d, r, rho) = (p.d_bu(), p.radius(), p.rho_e());
    if rho == 0.0 {
        return Ok(AnalyticResult::new(0.0, Kind::Approximation, Method::OmegaRederived));
    }
    let x2 = (varrho / d).powi(2);
    let raw = alternating_sum(p.k(), |k| {
        let a0 = s_k(p, k);
        let inner = PI * varrho * varrho - (PI * d * d / a0) * (-x2 - (-x2).ln_1p());
        let outer = omega_step_c_integral(d, r, a0, varrho)?;
        Ok(-(-rho * (inner + outer)).exp_m1())
    })?;
    Ok(AnalyticResult::new(raw, Kind::Approximation, Method::OmegaRederived).logged(p))
}

/// Ω(β; d, R, A₀) transcribed term by term, with κ the Euler–Mascheroni
/// constant. `_beta` is part of the signature only: β reaches Ω through A₀.
pub fn omega_term(_beta: f64, d: f64, r: f64, a0: f64, varrho: f64) -> Result<f64> {
    if !(varrho > 0.0 && varrho < r && varrho < d) || !(a0 > 0.0) {
        return Err(AnalyticError::Domain(format!(
            "Ω needs 0 < ϱ < min(R, d) and A₀ > 0; got ϱ = {varrho}, R = {r}, d = {d}, A₀ = {a0}"
        )));
    }
    let kappa = EULER_GAMMA;
    let ln = f64::ln;
    let (r2, r4) = (r * r, r.powi(4));
    let (q2, q4) = (varrho * varrho, varrho.powi(4));
    let (d2, d4, d6) = (d * d, d.powi(4), d.powi(6));

    let t1 = 4.0 * r4 * q4 * d2 * (a0 + 0.25)
        * (ln(varrho).powi(2) + 2.0 * ln(a0 * d) * ln(r / varrho) - ln(r).powi(2));
    let c8 = 8.0 * (a0 * kappa - 2.25 * a0 * a0 + 0.25 * kappa + 0.25);
    let t2 = r4 * q4 * ln(varrho) * ((a0 + 1.0) * q2 - c8 * d2 - d4 * a0 / q4);
    let t3 = -r4 * q4 * ln(r) * ((a0 + 1.0) * r2 - c8 * d2 - d4 * a0);
    let inner = q2 * (r2 * (a0 + 1.0) * q2 + d4 * a0) * r2 * ln(a0)
        + q2 * (r2 * (a0 + 1.0) * q2 + d4 * a0) * r2 * ln(d)
        + r4 * (-a0 * a0 + (kappa + 1.0) * a0 + kappa + 1.5) * q4
        + a0 * ((kappa - 9.0 * a0) * r2 - 0.5 * d2 * a0) * d4 * q2
        - 0.5 * r2 * d6 * a0 * a0;
    let t4 = (r2 - q2) * inner;
    Ok(-(a0 * PI / (q4 * r4)) * (t1 + t2 + t3 + t4))
}

/// ∫_ϱ^R∫₀^{2π} A(A + 1)(A − ln A − κ) r dθ dr with A = A₀ d_UE²/r²: the
/// outer-annulus integral that Ω is meant to evaluate in closed form.
pub fn omega_step_c_integral(d: f64, r_max: f64, a0: f64, varrho: f64) -> Result<f64> {
    if !(varrho > 0.0 && varrho < r_max) || !(a0 > 0.0) {
        return Err(AnalyticError::Domain(format!(
            "annulus needs 0 < ϱ < R and A₀ > 0; got ϱ = {varrho}, R = {r_max}, A₀ = {a0}"
        )));
    }
    let f = |r: f64, theta: f64| {
        let a = a0 * dist2_to_ue(r, theta, d) / (r * r);
        if a <= 0.0 {
            0.0
        } else {
            a * (a + 1.0) * (a - a.ln() - EULER_GAMMA)
        }
    };
    let opts = PolarOptions {
        radial_breaks: vec![d],
        mirror_symmetric: true,
        r_min: varrho,
    };
    let spec = QuadratureSpec::new(1e-11, 1e-12).with_max_subdivisions(4000);
    Ok(integrate_2d_polar_with(f, r_max, &opts, &spec)?.value)
}
