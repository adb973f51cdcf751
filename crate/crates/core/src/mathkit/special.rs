//! Special functions. Γ and the regularized incomplete gamma come from
//! `statrs`; the rest are evaluated here with methods chosen for the ranges the
//! outage expressions actually visit.

use statrs::function::gamma::{gamma, gamma_ur};

use super::quad::{integrate_1d_with_breaks, QuadratureSpec};
use super::{MathError, EULER_GAMMA};

fn domain(msg: String) -> MathError {
    MathError::Domain(msg)
}

/// Γ(x) for x > 0.
pub fn gamma_fn(x: f64) -> Result<f64, MathError> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(domain(format!("gamma requires x > 0, got {x}")));
    }
    Ok(gamma(x))
}

/// Upper incomplete gamma Γ(s, x) = ∫ₓ^∞ t^{s−1} e^{−t} dt.
pub fn gamma_upper_inc(s: f64, x: f64) -> Result<f64, MathError> {
    if !(s > 0.0 && s.is_finite()) || !(x >= 0.0) {
        return Err(domain(format!("upper incomplete gamma requires s > 0, x ≥ 0; got ({s}, {x})")));
    }
    if x == 0.0 {
        return Ok(gamma(s));
    }
    if x.is_infinite() {
        return Ok(0.0);
    }
    Ok(gamma_ur(s, x) * gamma(s))
}

/// Below this argument K₁ is taken from its two-term small-x expansion.
const K1_SMALL: f64 = 1e-6;

/// Modified Bessel function of the second kind, order one.
///
/// Uses e^x K₁(x) = ∫₀^∞ exp(−x(cosh t − 1)) cosh t dt, which is smooth and
/// positive, so the quadrature is well conditioned for every x ≥ 1e-6.
pub fn bessel_k1(x: f64) -> Result<f64, MathError> {
    Ok(bessel_k1_scaled(x)? * (-x).exp())
}

/// e^x K₁(x), finite for every x > 0.
pub fn bessel_k1_scaled(x: f64) -> Result<f64, MathError> {
    if !(x > 0.0) || x.is_nan() {
        return Err(domain(format!("K1 requires x > 0, got {x}")));
    }
    if x.is_infinite() {
        return Ok(0.0);
    }
    if x < K1_SMALL {
        let k1 = 1.0 / x + 0.5 * x * ((0.5 * x).ln() + EULER_GAMMA - 0.5);
        return Ok(k1 * x.exp());
    }
    // Beyond t_max the integrand is below e^{-745} of its peak.
    let t_max = (1.0 + 745.0 / x).acosh();
    // Most of the mass sits at cosh t − 1 ≈ 1/x.
    let knee = (1.0 + 1.0 / x).acosh();
    let spec = QuadratureSpec::new(1e-13, 1e-300).with_max_subdivisions(4000);
    let est = integrate_1d_with_breaks(
        |t| (-x * (t.cosh() - 1.0)).exp() * t.cosh(),
        0.0,
        t_max,
        &[knee],
        &spec,
    )?;
    Ok(est.value)
}

/// e^x E₁(x), stable for 0 < x ≤ 1e8 and beyond.
///
/// Power series with an explicit factor e^x for x < 1; modified Lentz
/// evaluation of the continued fraction otherwise.
pub fn exp_scaled_e1(x: f64) -> Result<f64, MathError> {
    if !(x > 0.0) || x.is_nan() {
        return Err(domain(format!("E1 requires x > 0, got {x}")));
    }
    if x.is_infinite() {
        return Ok(0.0);
    }
    if x < 1.0 {
        // E₁(x) = −γ − ln x − Σ_{n≥1} (−x)^n / (n·n!)
        let mut sum = 0.0;
        let mut term = 1.0;
        for n in 1..200 {
            term *= -x / n as f64;
            let add = term / n as f64;
            sum += add;
            if add.abs() < 1e-17 * sum.abs().max(1e-300) {
                break;
            }
        }
        return Ok(x.exp() * (-EULER_GAMMA - x.ln() - sum));
    }
    // e^x E₁(x) = 1/(x + 1 − 1/(x + 3 − 4/(x + 5 − …)))
    let tiny = 1e-300;
    let mut b = x + 1.0;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..10_000 {
        let an = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            return Ok(h);
        }
    }
    Ok(h)
}

/// Gauss hypergeometric F(1, b; 1+b; −z) for b ∈ (0, 1], z ≥ 0.
///
/// F = b∫₀¹ t^{b−1}/(1+zt) dt; substituting u = t^b removes the endpoint
/// singularity, leaving ∫₀¹ du / (1 + z u^{1/b}) whose knee sits at u = z^{−b}.
pub fn hyp2f1_special(b: f64, z: f64) -> Result<f64, MathError> {
    if !(b > 0.0 && b <= 1.0) {
        return Err(domain(format!("hyp2f1_special requires b in (0, 1], got {b}")));
    }
    if !(z >= 0.0) || z.is_infinite() {
        return Err(domain(format!("hyp2f1_special requires finite z ≥ 0, got {z}")));
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    if b == 1.0 {
        return Ok(z.ln_1p() / z);
    }
    let inv_b = 1.0 / b;
    let spec = QuadratureSpec::new(1e-13, 1e-300).with_max_subdivisions(4000);
    let knee = z.powf(-b);
    let breaks: Vec<f64> = if knee < 1.0 { vec![knee] } else { Vec::new() };
    let est = integrate_1d_with_breaks(|u| 1.0 / (1.0 + z * u.powf(inv_b)), 0.0, 1.0, &breaks, &spec)?;
    Ok(est.value)
}

/// ∫₀^∞ e^{−t}(1 − exp(−B t^{−c})) dt, the per-antenna integral of the
/// half-duplex independent outage, with `c > 0`.
///
/// Both factors are bounded by one, so the integrand never overflows.
pub fn laplace_outage_integral(big_b: f64, c: f64, spec: &QuadratureSpec) -> Result<f64, MathError> {
    if !(big_b >= 0.0) || !(c > 0.0) {
        return Err(domain(format!("invalid (B, c) = ({big_b}, {c})")));
    }
    if big_b == 0.0 {
        return Ok(0.0);
    }
    // The inner factor switches from ≈1 to ≈B t^{-c} around t = B^{1/c}.
    let knee = big_b.powf(1.0 / c);
    let f = |t: f64| {
        if t == 0.0 {
            return 1.0;
        }
        -(-big_b * t.powf(-c)).exp_m1() * (-t).exp()
    };
    // e^{-t} is below the smallest normal double past t = 750.
    let upper = 750.0;
    let mut breaks = vec![];
    for m in [0.1, 1.0, 10.0] {
        let p = knee * m;
        if p > 0.0 && p < upper {
            breaks.push(p);
        }
    }
    let est = integrate_1d_with_breaks(f, 0.0, upper, &breaks, spec)?;
    Ok(est.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn gamma_examples() {
        assert!(rel(gamma_fn(1.0).unwrap(), 1.0) < 1e-12);
        assert!(rel(gamma_fn(1.5).unwrap(), PI.sqrt() / 2.0) < 1e-12);
        assert!(rel(gamma_fn(2.0 / 4.0).unwrap(), PI.sqrt()) < 1e-12);
        assert!(gamma_fn(0.0).is_err());
        assert!(gamma_fn(-1.0).is_err());
    }

    #[test]
    fn upper_incomplete_gamma_examples() {
        for s in [0.3, 0.5, 1.0, 2.5] {
            assert!(rel(gamma_upper_inc(s, 0.0).unwrap(), gamma_fn(s).unwrap()) < 1e-12);
        }
        for x in [0.1, 1.0, 7.0] {
            assert!(rel(gamma_upper_inc(1.0, x).unwrap(), (-x).exp()) < 1e-10);
        }
        let oracle = oracle::gamma_upper_series_cf(0.5, 2.0, 200);
        assert!(rel(gamma_upper_inc(0.5, 2.0).unwrap(), oracle) < 1e-10);
        assert!(rel(gamma_upper_inc(0.5, 2.0).unwrap(), 0.080_647_117_960_317_69) < 1e-10);
        for (s, x) in [(0.25, 0.1), (0.8, 3.0), (0.5, 20.0), (1.5, 0.7)] {
            let o = oracle::gamma_upper_series_cf(s, x, 200);
            assert!(rel(gamma_upper_inc(s, x).unwrap(), o) < 1e-10, "({s}, {x})");
        }
        assert!(gamma_upper_inc(0.0, 1.0).is_err());
        assert!(gamma_upper_inc(1.0, -1.0).is_err());
    }

    #[test]
    fn bessel_k1_examples() {
        assert!(rel(bessel_k1(1e-8).unwrap(), 1e8) < 1e-6);
        let series = oracle::bessel_k1_series(1.0, 40);
        assert!(rel(bessel_k1(1.0).unwrap(), series) < 1e-10);
        assert!(rel(bessel_k1(1.0).unwrap(), 0.601_907_230_197_234_6) < 1e-10);
        let lead = (-50f64).exp() * (PI / 100.0).sqrt();
        assert!(rel(bessel_k1(50.0).unwrap(), lead) < 0.01);
        // The ascending series cancels badly past x ≈ 5, so the oracle stops there.
        for x in [1e-5, 0.01, 0.3, 2.0, 5.0] {
            let o = oracle::bessel_k1_series(x, 80);
            assert!(rel(bessel_k1(x).unwrap(), o) < 1e-10, "x={x}");
        }
        assert!(rel(bessel_k1(5.0).unwrap(), 0.004_044_613_445_452_164) < 1e-10);
        assert!(bessel_k1(0.0).is_err());
    }

    #[test]
    fn exp_scaled_e1_examples() {
        let x = 1e6;
        assert!((x * exp_scaled_e1(x).unwrap() - 1.0).abs() < 1e-5);
        let oracle = 1f64.exp() * oracle::e1_series(1.0, 60);
        assert!(rel(exp_scaled_e1(1.0).unwrap(), oracle) < 1e-12);
        let direct = 0.01f64.exp() * (-EULER_GAMMA - 0.01f64.ln() + 0.01 - 0.01f64.powi(2) / 4.0
            + 0.01f64.powi(3) / 18.0);
        assert!((exp_scaled_e1(0.01).unwrap() - direct).abs() < 1e-8);
        assert!(rel(exp_scaled_e1(0.01).unwrap(), 4.078_511_443_456_426) < 1e-12);
        assert!(exp_scaled_e1(1e8).unwrap().is_finite());
        assert!(exp_scaled_e1(0.0).is_err());
    }

    #[test]
    fn hyp2f1_examples() {
        assert_eq!(hyp2f1_special(0.4, 0.0).unwrap(), 1.0);
        assert!(rel(hyp2f1_special(1.0, 1.0).unwrap(), 2f64.ln()) < 1e-14);
        // b∫₀¹ t^{b−1}/(1+zt) dt with the tanh–sinh rule.
        let o = 0.5 * oracle::tanh_sinh(|t| t.powf(-0.5) / (1.0 + 10.0 * t), 0.0, 1.0, 1e-14);
        assert!(rel(hyp2f1_special(0.5, 10.0).unwrap(), o) < 1e-10);
        assert!(rel(hyp2f1_special(0.5, 10.0).unwrap(), 0.399_876_005_055_766_1) < 1e-10);
        // Closed form at b = 1/2:
        // F(1, 1/2; 3/2; −z) = arctan(√z)/√z.
        for z in [1e-3f64, 0.7, 40.0, 1e4, 1e8] {
            let exact = z.sqrt().atan() / z.sqrt();
            assert!(rel(hyp2f1_special(0.5, z).unwrap(), exact) < 1e-10, "z={z}");
        }
        assert!(hyp2f1_special(0.0, 1.0).is_err());
        assert!(hyp2f1_special(1.5, 1.0).is_err());
        assert!(hyp2f1_special(0.5, -1.0).is_err());
    }

    #[test]
    fn laplace_integral_matches_bessel_form_at_c_one() {
        // ∫₀^∞ e^{-t}(1 − e^{-B/t}) dt = 1 − 2√B K₁(2√B)
        let spec = QuadratureSpec::new(1e-12, 1e-15);
        for b in [1e-6, 0.01, 0.3, 2.0, 40.0] {
            let q = laplace_outage_integral(b, 1.0, &spec).unwrap();
            let s = 2.0 * b.sqrt();
            let closed = 1.0 - s * bessel_k1(s).unwrap();
            assert!((q - closed).abs() < 1e-10 * closed.max(1e-300) + 1e-15, "B={b}: {q} vs {closed}");
        }
    }

    proptest! {
        #[test]
        fn e1_sandwich(x in 1e-6f64..1e7) {
            let v = exp_scaled_e1(x).unwrap();
            prop_assert!(v > 1.0 / (x + 1.0));
            prop_assert!(v < 1.0 / x);
        }

        #[test]
        fn hyp2f1_decreasing_in_unit_interval(b in 0.05f64..=1.0, z in 0.0f64..1e4, dz in 1e-3f64..10.0) {
            let f1 = hyp2f1_special(b, z).unwrap();
            let f2 = hyp2f1_special(b, z + dz).unwrap();
            prop_assert!(f1 > 0.0 && f1 <= 1.0);
            prop_assert!(f2 < f1);
        }
    }
}
