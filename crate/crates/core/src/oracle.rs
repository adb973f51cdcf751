//! Slow, deliberately simple reference implementations used only to check the
//! production routines. Each one takes a different numerical route from the
//! code it checks.

use std::f64::consts::PI;

use crate::mathkit::EULER_GAMMA;

/// K₁(x) from its ascending series
/// K₁(x) = 1/x + I₁(x) ln(x/2) − (x/4) Σ_k [ψ(k+1) + ψ(k+2)] (x²/4)^k / (k!(k+1)!).
pub fn bessel_k1_series(x: f64, terms: usize) -> f64 {
    let q = 0.25 * x * x;
    let mut i1 = 0.0;
    let mut tail = 0.0;
    // term_k = (x²/4)^k / (k!(k+1)!)
    let mut term = 1.0;
    let mut psi_k1 = -EULER_GAMMA; // ψ(k+1)
    for k in 0..terms {
        let kf = k as f64;
        if k > 0 {
            term *= q / (kf * (kf + 1.0));
            psi_k1 += 1.0 / kf;
        }
        let psi_k2 = psi_k1 + 1.0 / (kf + 1.0);
        i1 += term;
        tail += (psi_k1 + psi_k2) * term;
    }
    1.0 / x + 0.5 * x * i1 * (0.5 * x).ln() - 0.25 * x * tail
}

/// E₁(x) from the alternating series −γ − ln x − Σ_{n≥1} (−x)^n/(n·n!).
pub fn e1_series(x: f64, terms: usize) -> f64 {
    let mut sum = 0.0;
    let mut term = 1.0;
    for n in 1..=terms {
        term *= -x / n as f64;
        sum += term / n as f64;
    }
    -EULER_GAMMA - x.ln() - sum
}

/// ln Γ(x), x > 0, by upward recurrence to x ≥ 20 and the Stirling series.
pub fn ln_gamma_stirling(mut x: f64) -> f64 {
    let mut shift = 0.0;
    while x < 20.0 {
        shift -= x.ln();
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let series = inv
        * (1.0 / 12.0
            - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 * (1.0 / 1680.0 - inv2 / 1188.0))));
    shift + (x - 0.5) * x.ln() - x + 0.5 * (2.0 * PI).ln() + series
}

/// Γ(s, x): lower-gamma power series (`terms` terms) subtracted from Γ(s) when
/// x < s + 1, Legendre continued fraction (`terms` levels, evaluated
/// bottom-up) otherwise.
pub fn gamma_upper_series_cf(s: f64, x: f64, terms: usize) -> f64 {
    let gamma_s = ln_gamma_stirling(s).exp();
    if x == 0.0 {
        return gamma_s;
    }
    let prefactor = (s * x.ln() - x).exp();
    if x < s + 1.0 {
        let mut term = 1.0 / s;
        let mut sum = term;
        for n in 1..terms {
            term *= x / (s + n as f64);
            sum += term;
        }
        gamma_s - prefactor * sum
    } else {
        // Γ(s,x) = e^{-x} x^s / (x + 1 − s − 1·(1−s)/(x + 3 − s − 2·(2−s)/(…)))
        let mut frac = 0.0;
        for n in (1..terms).rev() {
            let nf = n as f64;
            frac = nf * (nf - s) / (x + 2.0 * nf + 1.0 - s - frac);
        }
        prefactor / (x + 1.0 - s - frac)
    }
}

/// Tanh–sinh (double exponential) quadrature on a finite interval, halving the
/// step until two successive levels agree to `tol` relative.
pub fn tanh_sinh<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    let half = 0.5 * (b - a);
    let t_max = 4.0;
    let node = |t: f64| {
        let u = 0.5 * PI * t.sinh();
        let x = u.tanh();
        let w = 0.5 * PI * t.cosh() / (u.cosh() * u.cosh());
        // Distance to the nearest endpoint, kept exact near ±1.
        let gap = 1.0 / (u.abs().exp() * u.cosh());
        (x, w, gap)
    };
    let eval = |t: f64| -> f64 {
        let (x, w, gap) = node(t);
        if w == 0.0 || gap == 0.0 {
            return 0.0;
        }
        let xs = if x >= 0.0 { b - half * gap } else { a + half * gap };
        let v = f(xs);
        if v.is_finite() {
            v * w
        } else {
            0.0
        }
    };
    let mut h = 1.0;
    let mut sum = eval(0.0);
    let mut k = 1;
    while (k as f64) * h <= t_max {
        let t = k as f64 * h;
        sum += eval(t) + eval(-t);
        k += 1;
    }
    let mut prev = sum * h * half;
    for _ in 0..12 {
        h *= 0.5;
        let mut k = 1;
        while (k as f64) * h <= t_max {
            let t = k as f64 * h;
            sum += eval(t) + eval(-t);
            k += 2;
        }
        let cur = sum * h * half;
        if (cur - prev).abs() <= tol * cur.abs() {
            return cur;
        }
        prev = cur;
    }
    prev
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracles_reproduce_reference_constants() {
        assert!((bessel_k1_series(1.0, 40) - 0.601_907_230_197_234_6).abs() < 1e-15);
        assert!((bessel_k1_series(0.01, 40) - 99.973_894_118_296_25).abs() < 1e-11);
        assert!((e1_series(1.0, 60) * 1f64.exp() - 0.596_347_362_323_194_1).abs() < 1e-15);
        assert!((gamma_upper_series_cf(0.5, 2.0, 200) - 0.080_647_117_960_317_69).abs() < 1e-15);
        assert!((ln_gamma_stirling(0.5).exp() - PI.sqrt()).abs() < 1e-14);
        let f = tanh_sinh(|t| t.powf(-0.5) / (1.0 + 10.0 * t), 0.0, 1.0, 1e-14) * 0.5;
        assert!((f - 0.399_876_005_055_766_1).abs() < 1e-13, "{f}");
    }
}
