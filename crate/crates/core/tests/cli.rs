use std::process::{Command, Output};

use tas_sop::analytic;
use tas_sop::harness::csvio::CSV_COLUMNS;
use tas_sop::harness::parse_csv;
use tas_sop::params::{Duplex, EdModel, SystemParams};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tas-sop"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

const FIG2_POINT: [&str; 16] = [
    "--duplex", "hd", "--ed", "independent", "--k", "3", "--alpha", "4", "--d-bu", "10", "--radius", "100",
    "--rho-e", "0.001", "--beta", "1",
];

#[test]
fn analytic_row_equals_library_value() {
    let mut args = vec!["analytic", "--format", "csv"];
    args.extend(FIG2_POINT);
    let o = bin(&args);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let value: f64 = row[4].parse().unwrap();
    let p = SystemParams {
        k_antennas: 3,
        alpha: 4.0,
        d_bu: 10.0,
        radius: 100.0,
        rho_e: 0.001,
        beta: 1.0,
        duplex: Duplex::HalfDuplex,
        ed_model: EdModel::Independent,
        ..SystemParams::default()
    };
    let expected = analytic::evaluate(&p.validate().unwrap()).unwrap().value;
    assert_eq!(value, expected);
    assert!((0.0..=1.0).contains(&value));
}

#[test]
fn simulate_is_byte_identical_across_runs_and_thread_counts() {
    let mut args = vec!["simulate", "--trials", "100000", "--seed", "42", "--format", "csv"];
    args.extend(FIG2_POINT);
    let a = bin(&args);
    let b = bin(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let mut one = vec!["--threads", "1"];
    one.extend(&args);
    let mut three = vec!["--threads", "3"];
    three.extend(&args);
    assert_eq!(bin(&one).stdout, a.stdout);
    assert_eq!(bin(&three).stdout, a.stdout);
}

#[test]
fn sweep_writes_harness_csv_and_plot_script() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("fig2.csv");
    let plot = dir.path().join("fig2.py");
    let o = bin(&[
        "sweep",
        "--recipe",
        "fig2",
        "--trials",
        "2000",
        "--out",
        csv.to_str().unwrap(),
        "--plot",
        plot.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().next().unwrap(), CSV_COLUMNS.join(","));
    let parsed = parse_csv(&text).unwrap();
    assert_eq!(parsed.rows.len(), 6 * 2 * 2);
    assert!(parsed.rows.iter().all(|r| r.n_trials == 0 || r.n_trials == 2000));
    let script = std::fs::read_to_string(&plot).unwrap();
    assert!(script.contains(csv.to_str().unwrap()));
}

#[test]
fn flags_override_the_configuration_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("p.toml");
    std::fs::write(&cfg, "k_antennas = 3\nalpha = 4.0\nd_bu = 10.0\nradius = 100.0\nrho_e = 0.5\n").unwrap();
    let from_file = bin(&["analytic", "--format", "csv", "--config", cfg.to_str().unwrap(), "--rho-e", "0.001"]);
    let mut args = vec!["analytic", "--format", "csv"];
    args.extend(FIG2_POINT);
    assert_eq!(from_file.stdout, bin(&args).stdout, "{}", stderr(&from_file));
}

#[test]
fn usage_errors_exit_2_and_name_the_flag() {
    let o = bin(&["analytic", "--alpha", "abc"]);
    assert_eq!(o.status.code(), Some(2));
    let e = stderr(&o);
    assert!(e.contains("--alpha") && e.contains("fix:"), "{e}");

    let o = bin(&["analytic", "--rho-e", "-1"]);
    assert_eq!(o.status.code(), Some(2));
    let e = stderr(&o);
    assert!(e.contains("--rho-e") && e.contains("fix:"), "{e}");

    let o = bin(&["analytic", "--d-bu", "60", "--radius", "50"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--d-bu"));

    let o = bin(&["analytic", "--method", "monte_carlo"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--method"));

    let o = bin(&["sweep", "--recipe", "nope"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--recipe"));

    let o = bin(&["sweep"]);
    assert_eq!(o.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "bogus = 1\n").unwrap();
    let o = bin(&["analytic", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bogus"));
}

#[test]
fn validate_passes_and_exits_zero() {
    let o = bin(&["validate"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn compare_reports_per_point_verdicts() {
    let mut args = vec!["compare", "--trials", "20000", "--axis", "rho_e", "--values", "0.001,0.005", "--format", "csv"];
    args.extend(&FIG2_POINT[..14]);
    let o = bin(&args);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 3, "{text}{}", stderr(&o));
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn recipes_lists_every_builtin() {
    let o = bin(&["recipes"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for name in tas_sop::harness::recipes::builtin_names() {
        assert!(text.contains(&format!("{name}: ")), "{name}");
    }
    let o = bin(&["recipes", "--show", "fig6"]);
    assert!(stdout(&o).contains("axis = \"alpha\""));
}

#[test]
fn help_lists_every_field_with_its_unit() {
    let o = bin(&["analytic", "--help"]);
    let text = stdout(&o);
    for (field, unit) in tas_sop::params::FIELDS {
        let line = text.lines().find(|l| l.contains(field) && l.contains(&format!("[{unit}]")));
        assert!(line.is_some(), "{field} [{unit}] missing from help");
    }
}

#[test]
fn in_process_runner_matches_the_binary() {
    let mut args = vec!["tas-sop", "analytic", "--format", "csv"];
    args.extend(FIG2_POINT);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = tas_sop::cli::run_from(args.clone(), &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(out, bin(&args[1..]).stdout);
}
