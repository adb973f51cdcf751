use super::*;
use crate::params::SystemParams;

fn hd_spec() -> SweepSpec {
    let base = SystemParams { k_antennas: 3, alpha: 4.0, d_bu: 10.0, radius: 100.0, ..SystemParams::default() };
    SweepSpec::new(base, Axis::RhoE, vec![0.0005, 0.001, 0.002, 0.005])
        .with_scenarios(&[Scenario::HD_INDEPENDENT, Scenario::HD_COLLUDING])
        .with_methods(&[SweepMethod::Analytic, SweepMethod::MonteCarlo])
        .with_trials(5_000, 42)
}

#[test]
fn single_value_analytic_sweep_has_one_row_per_scenario() {
    let spec = SweepSpec::new(SystemParams::default(), Axis::RhoE, vec![0.002])
        .with_scenarios(&Scenario::ALL)
        .with_methods(&[SweepMethod::Analytic]);
    let r = run_sweep(&spec).unwrap();
    assert_eq!(r.rows.len(), 4);
    assert!(r.failures.is_empty());
}

#[test]
fn sweep_shape_and_determinism() {
    let spec = hd_spec();
    let a = run_sweep(&spec).unwrap();
    assert_eq!(a.rows.len(), 2 * 2 * 4);
    let b = run_sweep(&spec).unwrap();
    assert_eq!(emit_csv(&a).unwrap(), emit_csv(&b).unwrap());
}

#[test]
fn inserting_axis_values_keeps_existing_estimates() {
    let spec = hd_spec();
    let mut wider = spec.clone();
    wider.values = vec![0.0005, 0.0007, 0.001, 0.002, 0.005];
    let a = run_sweep(&spec).unwrap();
    let b = run_sweep(&wider).unwrap();
    for row in &a.rows {
        assert!(b.rows.contains(row), "{row:?}");
    }
}

#[test]
fn inapplicable_points_are_reported_not_fatal() {
    let spec = SweepSpec::new(SystemParams::default(), Axis::RhoE, vec![0.001, 0.002])
        .with_scenarios(&[Scenario::HD_COLLUDING, Scenario::HD_INDEPENDENT])
        .with_methods(&[SweepMethod::Bound]);
    let r = run_sweep(&spec).unwrap();
    assert_eq!(r.rows.len(), 2);
    assert_eq!(r.failures.len(), 2);
    assert!(r.failures.iter().all(|f| f.scenario == Scenario::HD_COLLUDING));
}

#[test]
fn empty_result_is_header_only_and_csv_round_trips() {
    let empty = SweepResult::default();
    let text = emit_csv(&empty).unwrap();
    assert_eq!(text.trim_end(), csvio::CSV_COLUMNS.join(","));
    assert_eq!(parse_csv(&text).unwrap().rows.len(), 0);

    let r = run_sweep(&hd_spec()).unwrap();
    let text = emit_csv(&r).unwrap();
    assert!(text.starts_with("axis_name,axis_value,duplex,ed_model,method,kind,value,raw_value,ci_low,ci_high,n_trials,seed\n"));
    let back = parse_csv(&text).unwrap();
    assert_eq!(back.rows, r.rows);
}

#[test]
fn trend_checks() {
    let r = run_sweep(&hd_spec()).unwrap();
    for s in [Scenario::HD_INDEPENDENT, Scenario::HD_COLLUDING] {
        for m in [SweepMethod::Analytic, SweepMethod::MonteCarlo] {
            let rep = trend_check(&r.series(s, m), Trend::Increasing).unwrap();
            assert!(rep.pass, "{s} {m}: {rep}");
        }
    }
    let two = &r.series(Scenario::HD_INDEPENDENT, SweepMethod::Analytic)[..2];
    assert!(matches!(trend_check(two, Trend::Flat), Err(HarnessError::InsufficientPoints(2))));

    let flat = SweepSpec::new(SystemParams::default(), Axis::PbOverN0Db, vec![30.0, 40.0, 50.0, 60.0])
        .with_methods(&[SweepMethod::Analytic]);
    let fr = run_sweep(&flat).unwrap();
    assert!(trend_check(&fr.rows, Trend::Flat).unwrap().pass);
    assert!(!trend_check(&fr.rows, Trend::Increasing).unwrap().pass);
}

#[test]
fn beta_and_lambda_trends() {
    let spec = SweepSpec::new(SystemParams::default(), Axis::Beta, vec![1.0, 2.0, 4.0])
        .with_scenarios(&Scenario::ALL)
        .with_methods(&[SweepMethod::Analytic]);
    let r = run_sweep(&spec).unwrap();
    for s in Scenario::ALL {
        assert!(trend_check(&r.series(s, SweepMethod::Analytic), Trend::Increasing).unwrap().pass, "{s}");
    }
    let spec = SweepSpec::new(SystemParams::default(), Axis::LambdaUuDb, vec![-10.0, 0.0, 10.0])
        .with_scenarios(&[Scenario::FD_INDEPENDENT, Scenario::FD_COLLUDING])
        .with_methods(&[SweepMethod::Analytic]);
    let r = run_sweep(&spec).unwrap();
    for s in [Scenario::FD_INDEPENDENT, Scenario::FD_COLLUDING] {
        assert!(trend_check(&r.series(s, SweepMethod::Analytic), Trend::Increasing).unwrap().pass, "{s}");
    }
}

#[test]
fn identical_scenarios_never_cross() {
    let base = SystemParams::default();
    let e = crossover_search(
        &base,
        Axis::LambdaUuDb,
        -10.0,
        20.0,
        (Scenario::HD_INDEPENDENT, Scenario::HD_INDEPENDENT),
        CrossoverMode::Analytic,
        0.1,
    );
    assert!(matches!(e, Err(HarnessError::NoSignChange { .. })));
    let e = crossover_search(
        &base,
        Axis::LambdaUuDb,
        -10.0,
        20.0,
        (Scenario::HD_INDEPENDENT, Scenario::HD_INDEPENDENT),
        CrossoverMode::MonteCarlo { n_trials: 2000, seed: 1, outage_def: OutageDef::ExactCapacity },
        0.1,
    );
    assert!(matches!(e, Err(HarnessError::NoSignChange { .. })));
}

#[test]
fn analytic_crossover_brackets_a_sign_change() {
    let base = SystemParams {
        k_antennas: 5,
        alpha: 4.0,
        d_bu: 10.0,
        radius: 50.0,
        rho_e: 0.001,
        pu_over_n0_db: 60.0,
        ..SystemParams::default()
    };
    let c = crossover_search(
        &base,
        Axis::LambdaUuDb,
        -10.0,
        30.0,
        (Scenario::HD_COLLUDING, Scenario::FD_COLLUDING),
        CrossoverMode::Analytic,
        0.01,
    )
    .unwrap();
    assert!(c.hi - c.lo <= 0.01);
    assert!(!c.stopped_by_noise);
}

#[test]
fn seeds_depend_on_value_and_scenario_only() {
    let a = derive_point_seed(42, 0.001, Scenario::HD_INDEPENDENT);
    assert_eq!(a, derive_point_seed(42, 0.001, Scenario::HD_INDEPENDENT));
    assert_ne!(a, derive_point_seed(42, 0.002, Scenario::HD_INDEPENDENT));
    assert_ne!(a, derive_point_seed(42, 0.001, Scenario::HD_COLLUDING));
    assert_ne!(a, derive_point_seed(43, 0.001, Scenario::HD_INDEPENDENT));
}

#[test]
fn plot_script_reads_the_csv_on_a_log_axis() {
    let s = emit_plot_script("out/fig2.csv", &plot::PlotLayout::default());
    assert!(s.contains("\"out/fig2.csv\""));
    assert!(s.contains("set_yscale(\"log\")"));
    assert!(s.contains("LOG_Y = True"));
}

#[test]
fn builtin_recipes_parse() {
    let all = builtin_recipes().unwrap();
    let names: Vec<&str> = all.iter().map(|r| r.name.as_str()).collect();
    assert_eq!(names, ["fig2", "fig3", "fig4", "fig5a", "fig5b", "fig6"]);
    assert!(builtin_recipe("nope").is_err());
    for r in &all {
        assert!(!r.checks.is_empty(), "{}", r.name);
    }
}
