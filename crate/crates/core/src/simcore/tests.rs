use super::*;
use crate::analytic;
use crate::params::{validate, SystemParams};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn vp(p: SystemParams) -> ValidatedParams {
    validate(&p).expect("valid parameters")
}

fn fig2(k: u32, rho: f64) -> ValidatedParams {
    vp(SystemParams { k_antennas: k, rho_e: rho, radius: 100.0, d_bu: 10.0, alpha: 4.0, ..SystemParams::default() })
}

#[test]
fn empty_disk_never_outages() {
    let p = fig2(3, 0.0);
    for s in Scenario::ALL {
        for def in [OutageDef::ExactCapacity, OutageDef::SnrRatio] {
            let est = estimate_sop(&p, s, 2000, 1, def).unwrap();
            assert_eq!(est.p_hat, 0.0);
            assert_eq!(est.outages, 0);
        }
    }
}

#[test]
fn tas_examples() {
    assert_eq!(tas_select(&[0.4]).unwrap(), (0, 0.4));
    assert_eq!(tas_select(&[0.1, 0.9, 0.3]).unwrap(), (1, 0.9));
    assert_eq!(tas_select(&[0.5, 0.5]).unwrap(), (0, 0.5));
    assert_eq!(tas_select(&[]), Err(SimError::EmptyInput));
}

#[test]
fn no_eavesdropper_means_no_outage_at_zero_rate() {
    let p = fig2(1, 0.001);
    let draw = TrialDraw { ue_gains: vec![1e-9], ..TrialDraw::default() };
    let empty = EdRealization::default();
    assert!(!trial_outage(&p, &empty, &draw, OutageDef::ExactCapacity));
    assert!(!trial_outage(&p, &empty, &draw, OutageDef::SnrRatio));
}

#[test]
fn jamming_eventually_protects_against_an_ed_on_the_ue() {
    let mk = |pu_db: f64| {
        vp(SystemParams {
            pu_over_n0_db: pu_db,
            ed_noise: false,
            duplex: Duplex::FullDuplex,
            d_bu: 10.0,
            ..SystemParams::default()
        })
    };
    // ED slightly off the UE position so the jamming path loss stays finite.
    let realization = EdRealization { points: vec![(10.5, 0.0)] };
    let draw = TrialDraw { ue_gains: vec![1.0], ed_bs_gains: vec![1.0], ed_ue_gains: vec![1.0], self_interference: 0.0 };
    let outcomes: Vec<bool> = [-40.0, -20.0, 0.0, 20.0, 40.0]
        .iter()
        .map(|&pu| trial_outage(&mk(pu), &realization, &draw, OutageDef::ExactCapacity))
        .collect();
    assert!(outcomes[0], "{outcomes:?}");
    assert!(!outcomes[4], "{outcomes:?}");
    assert!(outcomes.windows(2).all(|w| w[0] >= w[1]), "{outcomes:?}");
}

#[test]
fn colluding_indicator_dominates_independent() {
    let p = fig2(2, 0.003);
    let hd_ie = p.with_scenario(Scenario::HD_INDEPENDENT);
    let hd_ce = p.with_scenario(Scenario::HD_COLLUDING);
    let fd_ie = p.with_scenario(Scenario::FD_INDEPENDENT);
    let fd_ce = p.with_scenario(Scenario::FD_COLLUDING);
    for t in 0..3000 {
        let (real, draw) = simulate_trial(&p, 11, t);
        for def in [OutageDef::ExactCapacity, OutageDef::SnrRatio] {
            assert!(trial_outage(&hd_ce, &real, &draw, def) >= trial_outage(&hd_ie, &real, &draw, def));
            assert!(trial_outage(&fd_ce, &real, &draw, def) >= trial_outage(&fd_ie, &real, &draw, def));
        }
    }
}

#[test]
fn estimates_are_identical_across_thread_counts() {
    let p = fig2(3, 0.002);
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| estimate_sop_many(&p, &Scenario::ALL, 20_000, 42, OutageDef::ExactCapacity).unwrap())
    };
    let a = run(1);
    let b = run(3);
    assert_eq!(a, b);
    let c = estimate_sop_many(&p, &Scenario::ALL, 20_000, 43, OutageDef::ExactCapacity).unwrap();
    assert_ne!(a, c);
}

#[test]
fn ppp_mean_count_and_radial_law() {
    let key = rng::StreamKey::new(5, rng::GEOMETRY);
    let mut total = 0usize;
    let mut radii = Vec::new();
    for t in 0..100_000u64 {
        let mut g = key.for_trial(t);
        let real = sample_ppp_disk(0.005, 50.0, &mut g);
        total += real.len();
        if radii.len() < 100_000 {
            radii.extend(real.points.iter().map(|p| p.0));
        }
    }
    let mean = total as f64 / 100_000.0;
    assert!((mean - 39.27).abs() < 0.5, "{mean}");
    radii.truncate(100_000);
    let ks = ks_test(&mut radii, |r| (r / 50.0).powi(2));
    assert!(ks.p_value > 0.01, "{ks:?}");
}

#[test]
fn max_of_k_exponentials_matches_its_cdf() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut maxima: Vec<f64> = (0..100_000)
        .map(|_| {
            let g: Vec<f64> = (0..4).map(|_| -> f64 { rng.sample(Exp1) }).collect();
            tas_select(&g).unwrap().1
        })
        .collect();
    let ks = ks_test(&mut maxima, |x| (-(-x).exp_m1()).powi(4));
    assert!(ks.p_value > 0.01, "{ks:?}");
}

#[test]
fn interval_narrows_like_root_n() {
    let p = fig2(1, 0.002);
    let a = estimate_sop(&p, Scenario::HD_INDEPENDENT, 50_000, 9, OutageDef::ExactCapacity).unwrap();
    let b = estimate_sop(&p, Scenario::HD_INDEPENDENT, 100_000, 9, OutageDef::ExactCapacity).unwrap();
    let ratio = (a.ci_high - a.ci_low) / (b.ci_high - b.ci_low);
    assert!((ratio - 2f64.sqrt()).abs() < 0.1 * 2f64.sqrt(), "{ratio}");
    assert!(a.ci_low <= a.p_hat && a.p_hat <= a.ci_high);
}

#[test]
fn outage_definitions_agree_at_high_snr() {
    for k in [1, 3, 5] {
        for rho in [0.0005, 0.002, 0.005] {
            let p = fig2(k, rho);
            for s in [Scenario::HD_INDEPENDENT, Scenario::HD_COLLUDING] {
                let a = estimate_sop(&p, s, 20_000, 21, OutageDef::ExactCapacity).unwrap().p_hat;
                let b = estimate_sop(&p, s, 20_000, 21, OutageDef::SnrRatio).unwrap().p_hat;
                assert!((a - b).abs() <= 0.01, "K={k} ρ={rho} {s}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn fig2_points_agree_with_analytic_values() {
    let p = fig2(1, 0.002);
    for s in [Scenario::HD_INDEPENDENT, Scenario::HD_COLLUDING] {
        let est = estimate_sop(&p, s, 100_000, 42, OutageDef::ExactCapacity).unwrap();
        let a = analytic::evaluate(&p.with_scenario(s)).unwrap().value;
        assert!(est.contains(a) || (est.p_hat - a).abs() < 0.02, "{s}: {est:?} vs {a}");
    }
}
