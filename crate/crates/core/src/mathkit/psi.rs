//! The Ψ(y; α, δ) kernel: the PGFL exponent of jammed eavesdroppers around a
//! full-duplex UE, with distances normalized by the disk radius.

use std::f64::consts::PI;

use super::quad::{integrate_1d_with_breaks, QuadratureSpec};
use super::MathError;

/// Ψ(y; α, δ) = ∫₀^{2π}∫₀¹ y z^{α+1} / (y z^α + (z² + δ² − 2zδ cos θ)^{α/2}) dz dθ.
///
/// The integrand never exceeds z, even at z = δ, θ = 0 where the distance to
/// the UE vanishes, so no singularity handling is needed; the knee at the
/// closest approach z = δ cos θ is passed to the quadrature as a breakpoint.
pub fn psi_kernel(y: f64, alpha: f64, delta: f64, spec: &QuadratureSpec) -> Result<f64, MathError> {
    if !(y >= 0.0) || y.is_infinite() || !(alpha > 0.0) || !(delta > 0.0) {
        return Err(MathError::Domain(format!(
            "psi_kernel requires y ≥ 0, α > 0, δ > 0; got ({y}, {alpha}, {delta})"
        )));
    }
    if y == 0.0 {
        return Ok(0.0);
    }
    let half_alpha = 0.5 * alpha;
    let inner_spec = QuadratureSpec {
        rel_tol: spec.rel_tol * 0.1,
        abs_tol: spec.abs_tol * 0.1,
        max_subdivisions: spec.max_subdivisions,
    };
    let mut failure = None;
    let outer = integrate_1d_with_breaks(
        |theta| {
            let (s, c) = theta.sin_cos();
            let integrand = |z: f64| {
                if z == 0.0 {
                    return 0.0;
                }
                // z² + δ² − 2zδ cos θ written as a sum of squares: never negative.
                let dist2 = (z - delta * c).powi(2) + (delta * s).powi(2);
                let za = z.powf(alpha);
                y * za * z / (y * za + dist2.powf(half_alpha))
            };
            let knee = delta * c;
            let breaks = if knee > 0.0 && knee < 1.0 { vec![knee] } else { Vec::new() };
            match integrate_1d_with_breaks(integrand, 0.0, 1.0, &breaks, &inner_spec) {
                Ok(e) => e.value,
                Err(e) => {
                    let v = match &e {
                        MathError::NoConvergence { estimate, .. } => *estimate,
                        _ => f64::NAN,
                    };
                    failure.get_or_insert(e);
                    v
                }
            }
        },
        0.0,
        PI,
        &[],
        spec,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(2.0 * outer.value)
}

/// Closed form of Ψ(y; 2, δ):
/// π y/(y+1)³ · [ (y+1)(ψ − δ²) + δ²(y−1) ln( 2δ²y / (δ²(y−1) + (y+1)(ψ+y+1)) ) ]
/// with ψ = √(δ⁴ + 2δ²(y−1) + (y+1)²).
pub fn psi_alpha2_closed(y: f64, delta: f64) -> Result<f64, MathError> {
    if !(y > 0.0) || y.is_infinite() || !(delta > 0.0) || delta.is_infinite() {
        return Err(MathError::Domain(format!(
            "psi_alpha2_closed requires y > 0, δ > 0; got ({y}, {delta})"
        )));
    }
    let d2 = delta * delta;
    let yp1 = y + 1.0;
    let ym1 = y - 1.0;
    // ψ − δ² = (ψ² − δ⁴)/(ψ + δ²) avoids cancellation when δ is large.
    let radicand_rest = 2.0 * d2 * ym1 + yp1 * yp1;
    let psi = (d2 * d2 + radicand_rest).sqrt();
    let psi_minus_d2 = radicand_rest / (psi + d2);
    let log_den = d2 * ym1 + yp1 * (psi + yp1);
    let log_term = if ym1 == 0.0 {
        0.0
    } else {
        d2 * ym1 * (2.0 * d2 * y / log_den).ln()
    };
    Ok(PI * y / (yp1 * yp1 * yp1) * (yp1 * psi_minus_d2 + log_term))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::new(1e-11, 1e-14).with_max_subdivisions(4000)
    }

    #[test]
    fn zero_argument_gives_zero() {
        assert_eq!(psi_kernel(0.0, 3.0, 0.4, &spec()).unwrap(), 0.0);
    }

    #[test]
    fn bounded_by_pi() {
        let v = psi_kernel(10.0, 2.0, 0.1, &spec()).unwrap();
        assert!(v > 0.0 && v <= PI, "{v}");
    }

    #[test]
    fn closed_form_matches_kernel() {
        for (y, d) in [(1.0, 0.1), (1.0, 1.0), (2.0, 0.2), (0.01, 0.5), (100.0, 0.3), (3.0, 0.999)] {
            let k = psi_kernel(y, 2.0, d, &spec()).unwrap();
            let c = psi_alpha2_closed(y, d).unwrap();
            assert!((k - c).abs() <= 1e-7 * (1.0 + c), "y={y} δ={d}: {k} vs {c}");
        }
    }

    #[test]
    fn small_delta_limit() {
        for y in [0.3, 1.0, 4.0] {
            let k = psi_kernel(y, 2.0, 1e-4, &spec()).unwrap();
            let c = psi_alpha2_closed(y, 1e-4).unwrap();
            assert!((k - c).abs() <= 1e-4, "y={y}: {k} vs {c}");
        }
    }

    #[test]
    fn monotone_in_y() {
        let a = psi_alpha2_closed(1.0, 0.2).unwrap();
        let b = psi_alpha2_closed(2.0, 0.2).unwrap();
        assert!(b > a);
        let ka = psi_kernel(1.0, 2.0, 0.2, &spec()).unwrap();
        let kb = psi_kernel(2.0, 2.0, 0.2, &spec()).unwrap();
        assert!(kb > ka);
    }

    #[test]
    fn near_singular_point_is_finite() {
        // ED sitting on the UE: z = δ, θ = 0 is inside the domain.
        let v = psi_kernel(1e-6, 4.0, 0.5, &spec()).unwrap();
        assert!(v.is_finite() && v >= 0.0);
    }
}
