//! Built-in self-checks: special functions against independent reference
//! implementations, distribution tests of the simulator's draws, and
//! agreement between alternative evaluation routes of the same quantity.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analytic::{
    sop_hd_colluding_via, sop_hd_independent_via, ColludingPath, IndependentPath,
};
use crate::mathkit::{
    bessel_k1, exp_scaled_e1, gamma_upper_inc, hyp2f1_special, psi_alpha2_closed, psi_kernel, QuadratureSpec,
};
use crate::oracle;
use crate::params::{Duplex, EdModel, SystemParams, ValidatedParams};
use crate::simcore::{ks_test, simulate_trial};

/// Significance level of the distribution tests.
pub const KS_ALPHA: f64 = 0.01;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// Worst relative error over `cases`, each yielding (computed, reference).
fn worst<I: IntoIterator<Item = Result<(f64, f64), String>>>(name: &str, tol: f64, cases: I) -> Check {
    let mut max = 0.0f64;
    let mut n = 0;
    for c in cases {
        match c {
            Ok((a, b)) => {
                let e = rel_err(a, b);
                max = if e.is_nan() { f64::INFINITY } else { max.max(e) };
                n += 1;
            }
            Err(msg) => {
                return Check { name: name.into(), pass: false, detail: msg };
            }
        }
    }
    Check {
        name: name.into(),
        pass: max <= tol,
        detail: format!("max relative error {max:.2e} over {n} cases (tolerance {tol:.0e})"),
    }
}

pub fn special_function_checks() -> Vec<Check> {
    let k1 = worst(
        "bessel K1 vs ascending series",
        1e-10,
        [0.01, 0.1, 0.5, 1.0, 2.0, 5.0]
            .map(|x| bessel_k1(x).map(|v| (v, oracle::bessel_k1_series(x, 80))).map_err(|e| e.to_string())),
    );
    // e^x E1(x) = ∫₀¹ du / ((1-u)² (x + u/(1-u))) · e^{-u/(1-u)}
    let e1 = worst(
        "scaled E1 vs double-exponential quadrature",
        1e-10,
        [0.01, 0.3, 1.0, 3.0, 10.0, 50.0].map(|x| {
            let reference = oracle::tanh_sinh(
                |u| {
                    let t = u / (1.0 - u);
                    (-t).exp() / ((x + t) * (1.0 - u) * (1.0 - u))
                },
                0.0,
                1.0,
                1e-14,
            );
            exp_scaled_e1(x).map(|v| (v, reference)).map_err(|e| e.to_string())
        }),
    );
    let gamma = worst(
        "upper incomplete gamma vs series/continued fraction",
        1e-10,
        [(0.5, 2.0), (1.5, 0.3), (0.25, 4.0), (2.0, 1.0), (0.75, 10.0)].map(|(s, x)| {
            gamma_upper_inc(s, x)
                .map(|v| (v, oracle::gamma_upper_series_cf(s, x, 300)))
                .map_err(|e| e.to_string())
        }),
    );
    // ₂F₁(1, b; 1+b; −z) = b ∫₀¹ t^{b−1} / (1 + z t) dt = ∫₀¹ du / (1 + z u^{1/b})
    let f21 = worst(
        "2F1(1,b;1+b;-z) vs integral representation",
        1e-10,
        [(0.5, 10.0), (0.25, 0.1), (2.0 / 3.0, 1e3), (0.4, 3.0), (0.5, 1e-3)].map(|(b, z)| {
            let reference = oracle::tanh_sinh(|u| 1.0 / (1.0 + z * u.powf(1.0 / b)), 0.0, 1.0, 1e-14);
            hyp2f1_special(b, z).map(|v| (v, reference)).map_err(|e| e.to_string())
        }),
    );
    vec![k1, e1, gamma, f21]
}

fn fixed_params(k: u32, rho: f64, alpha: f64) -> ValidatedParams {
    SystemParams { k_antennas: k, rho_e: rho, alpha, radius: 50.0, d_bu: 10.0, ..SystemParams::default() }
        .validate()
        .expect("self-check parameters are valid")
}

/// KS tests on simulator draws and the mean eavesdropper count.
pub fn distribution_checks(seed: u64) -> Vec<Check> {
    let p = fixed_params(4, 0.005, 4.0);
    let n = 20_000u64;
    let mut radii = Vec::new();
    let mut maxima = Vec::with_capacity(n as usize);
    let mut count = 0usize;
    for trial in 0..n {
        let (real, draw) = simulate_trial(&p, seed, trial);
        count += real.len();
        radii.extend(real.points.iter().map(|pt| pt.0));
        maxima.push(draw.ue_gains.iter().copied().fold(0.0, f64::max));
    }
    let expected_mean = 0.005 * std::f64::consts::PI * 50.0 * 50.0;
    let mean = count as f64 / n as f64;
    let mean_err = (mean - expected_mean).abs() / expected_mean;
    radii.truncate(50_000);
    let radial = ks_test(&mut radii, |r| (r / 50.0).powi(2));
    let tas = ks_test(&mut maxima, |x| (-(-x).exp_m1()).powi(4));
    vec![
        Check {
            name: "eavesdropper count mean".into(),
            pass: mean_err <= 0.015,
            detail: format!("{mean:.3} vs {expected_mean:.3} over {n} draws"),
        },
        Check {
            name: "eavesdropper radial law r²/R²".into(),
            pass: radial.p_value > KS_ALPHA,
            detail: format!("KS D = {:.4}, p = {:.3}, n = {}", radial.statistic, radial.p_value, radial.n),
        },
        Check {
            name: "selected-antenna gain law (1-e^-x)^K".into(),
            pass: tas.p_value > KS_ALPHA,
            detail: format!("KS D = {:.4}, p = {:.3}, n = {}", tas.statistic, tas.p_value, tas.n),
        },
    ]
}

fn draw_params(rng: &mut ChaCha8Rng, alpha: f64, ed_model: EdModel) -> ValidatedParams {
    let radius = rng.random_range(20.0..200.0);
    SystemParams {
        k_antennas: rng.random_range(1..=8),
        rho_e: 10f64.powf(rng.random_range(-4.0..-2.0)),
        radius,
        d_bu: rng.random_range(0.05..0.5) * radius,
        alpha,
        beta: rng.random_range(1.0..4.0),
        epsilon: 0.0,
        duplex: Duplex::HalfDuplex,
        ed_model,
        ..SystemParams::default()
    }
    .with_beta_consistent()
}

trait BetaConsistent {
    fn with_beta_consistent(self) -> ValidatedParams;
}

impl BetaConsistent for SystemParams {
    fn with_beta_consistent(mut self) -> ValidatedParams {
        let b = self.beta;
        self.set_beta(b);
        self.validate().expect("drawn parameters are valid")
    }
}

/// Alternative routes to the same quantity must agree.
pub fn equivalence_checks(seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bessel = worst(
        "independent HD: Laplace integral vs Bessel form",
        1e-8,
        (0..20)
            .map(|_| draw_params(&mut rng, 2.0, EdModel::Independent))
            .collect::<Vec<_>>()
            .iter()
            .map(|p| {
                let a = sop_hd_independent_via(p, IndependentPath::Laplace).map_err(|e| e.to_string())?;
                let b = sop_hd_independent_via(p, IndependentPath::Bessel).map_err(|e| e.to_string())?;
                Ok((a.raw_value, b.raw_value))
            }),
    );
    let mut colluding = Vec::new();
    for alpha in [2.0, 4.0] {
        let params: Vec<_> = (0..20).map(|_| draw_params(&mut rng, alpha, EdModel::Colluding)).collect();
        let mut max = 0.0f64;
        let mut error = None;
        for p in &params {
            match (sop_hd_colluding_via(p, ColludingPath::General), sop_hd_colluding_via(p, ColludingPath::Auto)) {
                (Ok(a), Ok(b)) => max = max.max((a.raw_value - b.raw_value).abs()),
                (Err(e), _) | (_, Err(e)) => error = Some(e.to_string()),
            }
        }
        colluding.push(Check {
            name: format!("colluding HD: hypergeometric vs α = {alpha} reduction"),
            pass: error.is_none() && max <= 1e-10,
            detail: error.unwrap_or_else(|| format!("max absolute difference {max:.2e} over 20 draws (tolerance 1e-10)")),
        });
    }
    let spec = QuadratureSpec::new(1e-10, 1e-14).with_max_subdivisions(4000);
    let mut max = 0.0f64;
    let mut error = None;
    for _ in 0..100 {
        let y = 10f64.powf(rng.random_range(-3.0..3.0));
        let delta = rng.random_range(0.01..0.99);
        match (psi_kernel(y, 2.0, delta, &spec), psi_alpha2_closed(y, delta)) {
            (Ok(a), Ok(b)) => max = max.max((a - b).abs()),
            (Err(e), _) | (_, Err(e)) => error = Some(e.to_string()),
        }
    }
    let psi = Check {
        name: "jamming kernel: quadrature vs α = 2 closed form".into(),
        pass: error.is_none() && max <= 1e-6,
        detail: error.unwrap_or_else(|| format!("max absolute difference {max:.2e} over 100 draws (tolerance 1e-6)")),
    };
    let mut all = vec![bessel];
    all.extend(colluding);
    all.push(psi);
    all
}

/// Every self-check, in a fixed order.
pub fn run_all(seed: u64) -> Vec<Check> {
    let mut all = special_function_checks();
    all.extend(distribution_checks(seed));
    all.extend(equivalence_checks(seed));
    all
}
