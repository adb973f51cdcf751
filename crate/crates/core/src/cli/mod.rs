//! Command-line front end: parameter flags and configuration files, the
//! analytic and Monte Carlo engines, sweeps and the built-in self-checks.
//!
//! Every [`SystemParams`](crate::params::SystemParams) field has a flag whose
//! argument id is the field name and whose help text names its unit:
//!
//! ```
//! use clap::CommandFactory;
//! use tas_sop::cli::Cli;
//! use tas_sop::params::FIELDS;
//!
//! let cmd = Cli::command();
//! for sub in ["analytic", "simulate", "compare"] {
//!     let sub = cmd.find_subcommand(sub).unwrap();
//!     let params: Vec<_> = sub
//!         .get_arguments()
//!         .filter(|a| FIELDS.iter().any(|(f, _)| a.get_id() == *f))
//!         .collect();
//!     assert_eq!(params.len(), FIELDS.len());
//!     for (field, unit) in FIELDS {
//!         let arg = params.iter().find(|a| a.get_id() == field).unwrap();
//!         let help = arg.get_help().unwrap().to_string();
//!         assert!(help.contains(&format!("[{unit}]")), "{field}: {help}");
//!     }
//! }
//! ```

pub mod validate;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::{ContextKind, ContextValue, ErrorKind};
use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::analytic::{AnalyticError, Kind, DEFAULT_VARRHO};
use crate::harness::recipes::{builtin_recipe_source, builtin_recipes};
use crate::harness::{
    self, analytic_for, emit_csv, emit_plot_script, Recipe, SweepMethod, SweepSpec,
};
use crate::params::{
    Axis, Duplex, EdModel, ParamError, ParamOverrides, SystemParams, ValidatedParams, FIELDS,
};
use crate::simcore::{self, OutageDef, SimError, SopEstimate};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const FIELD_HELP: &str = "\
Parameters (flag -> configuration key [unit]):
  --k              k_antennas     [count]
  --rho-e          rho_e          [1/m^2]
  --radius         radius         [m]
  --d-bu           d_bu           [m]
  --alpha          alpha          [dimensionless]
  --beta           beta           [ratio]
  --epsilon        epsilon        [bit/s/Hz]
  --pb-over-n0-db  pb_over_n0_db  [dB]
  --pu-over-n0-db  pu_over_n0_db  [dB]
  --lambda-uu-db   lambda_uu_db   [dB]
  --duplex         duplex         [hd|fd]
  --ed             ed_model       [independent|colluding]
  --ed-noise       ed_noise       [bool]
A --config TOML file may set the same keys; flags win over the file.";

#[derive(Debug, Parser)]
#[command(
    name = "tas-sop",
    version,
    about = "Secrecy outage of a transmit-antenna-selection downlink with a half- or full-duplex receiver",
    after_help = FIELD_HELP
)]
pub struct Cli {
    /// Worker threads (default: all available). Results do not depend on it.
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a closed-form / quadrature expression at one parameter point.
    #[command(after_help = FIELD_HELP)]
    Analytic(AnalyticArgs),
    /// Monte Carlo estimate with a 95% Wilson interval at one parameter point.
    #[command(after_help = FIELD_HELP)]
    Simulate(SimulateArgs),
    /// Run a sweep from a built-in recipe or a recipe file and write CSV.
    Sweep(SweepArgs),
    /// Analytic value next to the Monte Carlo estimate, with a pass/fail per point.
    #[command(after_help = FIELD_HELP)]
    Compare(CompareArgs),
    /// Run the built-in numerical and statistical self-checks.
    Validate(ValidateArgs),
    /// List the built-in sweep recipes.
    Recipes(RecipesArgs),
}

/// Parameter flags shared by the single-point commands. Argument ids equal
/// the configuration keys.
#[derive(Debug, Clone, Default, Args)]
pub struct ParamArgs {
    /// TOML file of parameter keys; flags override its values.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Number of BS antennas [count]
    #[arg(long = "k", value_name = "K")]
    pub k_antennas: Option<u32>,
    /// Eavesdropper density [1/m^2]
    #[arg(long, value_name = "RHO", allow_negative_numbers = true)]
    pub rho_e: Option<f64>,
    /// Eavesdropper disk radius [m]
    #[arg(long, value_name = "R", allow_negative_numbers = true)]
    pub radius: Option<f64>,
    /// BS-UE distance [m]
    #[arg(long, value_name = "D", allow_negative_numbers = true)]
    pub d_bu: Option<f64>,
    /// Path loss exponent [dimensionless]
    #[arg(long, value_name = "ALPHA", allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Secrecy SNR ratio threshold 2^epsilon [ratio]
    #[arg(long, value_name = "BETA", allow_negative_numbers = true)]
    pub beta: Option<f64>,
    /// Target secrecy rate [bit/s/Hz]
    #[arg(long, value_name = "EPS", allow_negative_numbers = true)]
    pub epsilon: Option<f64>,
    /// BS power over noise [dB]
    #[arg(long, value_name = "DB", allow_negative_numbers = true)]
    pub pb_over_n0_db: Option<f64>,
    /// UE jamming power over noise [dB]
    #[arg(long, value_name = "DB", allow_negative_numbers = true)]
    pub pu_over_n0_db: Option<f64>,
    /// Residual self-interference over noise [dB]
    #[arg(long, value_name = "DB", allow_negative_numbers = true)]
    pub lambda_uu_db: Option<f64>,
    /// UE duplex mode [hd|fd]
    #[arg(long, value_name = "MODE")]
    pub duplex: Option<Duplex>,
    /// Eavesdropper model [independent|colluding]
    #[arg(long = "ed", value_name = "MODEL")]
    pub ed_model: Option<EdModel>,
    /// Whether eavesdroppers see thermal noise [bool]
    #[arg(long, value_name = "BOOL")]
    pub ed_noise: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Csv,
}

#[derive(Debug, Args)]
pub struct AnalyticArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Expression to evaluate: analytic, bound or approximation.
    #[arg(long, default_value = "analytic")]
    pub method: SweepMethod,
    /// Split radius of the full-duplex colluding approximation [m]
    #[arg(long, default_value_t = DEFAULT_VARRHO)]
    pub varrho: f64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Output file (default: standard output).
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct McArgs {
    /// Monte Carlo trials per point.
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    /// Seed for every random draw.
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Outage event: exact_capacity or snr_ratio.
    #[arg(long, default_value = "exact_capacity")]
    pub outage_def: OutageDef,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub mc: McArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Output file (default: standard output).
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["recipe", "spec"]))]
pub struct SweepArgs {
    /// Name of a built-in recipe (see `recipes`).
    #[arg(long)]
    pub recipe: Option<String>,
    /// Recipe TOML file.
    #[arg(long, value_name = "FILE")]
    pub spec: Option<PathBuf>,
    /// Override the recipe's trial count.
    #[arg(long)]
    pub trials: Option<u64>,
    /// Override the recipe's seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// CSV output file (default: standard output).
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Also write a matplotlib script plotting the CSV (requires --out).
    #[arg(long, value_name = "FILE")]
    pub plot: Option<PathBuf>,
    /// Evaluate the recipe's trend checks; exit 1 if any fails.
    #[arg(long)]
    pub check: bool,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub mc: McArgs,
    /// Parameter to vary (configuration key, e.g. rho_e).
    #[arg(long, requires = "values")]
    pub axis: Option<Axis>,
    /// Comma-separated axis values.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, requires = "axis")]
    pub values: Vec<f64>,
    /// Expression compared against the estimate: analytic, bound or approximation.
    #[arg(long, default_value = "analytic")]
    pub method: SweepMethod,
    /// Absolute agreement accepted outside the interval for exact and approximate values.
    #[arg(long, default_value_t = 0.02)]
    pub tol: f64,
    #[arg(long, default_value_t = DEFAULT_VARRHO)]
    pub varrho: f64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Seed for the statistical checks.
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct RecipesArgs {
    /// Print the TOML source of one recipe.
    #[arg(long, value_name = "NAME")]
    pub show: Option<String>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{flag}: {message}\n  fix: {fix}")]
    Usage { flag: String, message: String, fix: String },
    #[error(transparent)]
    Harness(#[from] harness::HarnessError),
    #[error(transparent)]
    Analytic(#[from] AnalyticError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error("{0}")]
    Io(String),
    /// A check or comparison ran and did not pass.
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage { .. } => EXIT_USAGE,
            _ => EXIT_FAILURE,
        }
    }

    fn usage(flag: &str, message: impl Into<String>, fix: impl Into<String>) -> Self {
        CliError::Usage { flag: flag.to_string(), message: message.into(), fix: fix.into() }
    }
}

/// The flag that sets a configuration key.
pub fn flag_for_field(field: &str) -> String {
    match field {
        "k_antennas" => "--k".to_string(),
        "ed_model" => "--ed".to_string(),
        f => format!("--{}", f.replace('_', "-")),
    }
}

fn flag_for_error(e: &ParamError) -> String {
    match e {
        ParamError::NonPositive { field } | ParamError::Negative { field } | ParamError::NonFinite { field } => {
            flag_for_field(field)
        }
        ParamError::InconsistentBetaEpsilon { .. } => "--beta/--epsilon".into(),
        ParamError::UeOutsideDisk { .. } => "--d-bu".into(),
        ParamError::AlphaRationalMismatch { .. } => "--alpha".into(),
    }
}

impl ParamArgs {
    fn overrides(&self) -> ParamOverrides {
        ParamOverrides {
            k_antennas: self.k_antennas,
            rho_e: self.rho_e,
            radius: self.radius,
            d_bu: self.d_bu,
            alpha: self.alpha,
            beta: self.beta,
            epsilon: self.epsilon,
            pb_over_n0_db: self.pb_over_n0_db,
            pu_over_n0_db: self.pu_over_n0_db,
            lambda_uu_db: self.lambda_uu_db,
            duplex: self.duplex,
            ed_model: self.ed_model,
            ed_noise: self.ed_noise,
        }
    }

    /// Defaults, then the configuration file, then the flags.
    pub fn resolve(&self) -> Result<SystemParams, CliError> {
        let file = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    CliError::usage("--config", format!("cannot read {}: {e}", path.display()), "pass an existing TOML file")
                })?;
                ParamOverrides::from_toml(&text).map_err(|e| {
                    let keys: Vec<&str> = FIELDS.iter().map(|(f, _)| *f).collect();
                    CliError::usage(
                        "--config",
                        format!("{}: {}", path.display(), e.message()),
                        format!("use only these keys: {}", keys.join(", ")),
                    )
                })?
            }
            None => ParamOverrides::default(),
        };
        Ok(file.merged_with(&self.overrides()).apply(&SystemParams::default()))
    }

    pub fn validated(&self) -> Result<ValidatedParams, CliError> {
        validated(&self.resolve()?)
    }
}

fn validated(p: &SystemParams) -> Result<ValidatedParams, CliError> {
    p.validate().map_err(|errs| {
        let first = &errs.0[0];
        let mut message = errs.to_string();
        if errs.0.len() > 1 {
            message = format!("{message} ({} problems)", errs.0.len());
        }
        CliError::usage(&flag_for_error(first), message, first.fix_hint())
    })
}

fn check_method(method: SweepMethod) -> Result<(), CliError> {
    if method == SweepMethod::MonteCarlo {
        return Err(CliError::usage(
            "--method",
            "monte_carlo is not an analytic expression",
            "use --method analytic, bound or approximation (or the `simulate` command)",
        ));
    }
    Ok(())
}

fn write_output(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string())),
    }
}

/// Parses `args` and runs the command, writing results to `out` and
/// diagnostics to `err`. Returns the process exit code.
pub fn run_from<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => return report_clap_error(&e, out, err),
    };
    let outcome = match cli.threads {
        Some(0) => Err(CliError::usage("--threads", "must be at least 1", "pass --threads N with N >= 1, or omit it")),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => {
                // Output streams need not be `Send`; buffer inside the pool.
                let (mut o, mut e) = (Vec::new(), Vec::new());
                let r = pool.install(|| dispatch(&cli.command, &mut o, &mut e));
                let _ = out.write_all(&o);
                let _ = err.write_all(&e);
                r
            }
            Err(e) => Err(CliError::Io(format!("cannot start worker threads: {e}"))),
        },
        None => dispatch(&cli.command, out, err),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn report_clap_error(e: &clap::Error, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if !e.use_stderr() {
        let _ = write!(out, "{}", e.render());
        return EXIT_OK;
    }
    let _ = write!(err, "{}", e.render());
    let flag = match e.get(ContextKind::InvalidArg) {
        Some(ContextValue::String(s)) => Some(s.split_whitespace().next().unwrap_or(s).to_string()),
        _ => None,
    };
    let fix = match (e.kind(), &flag) {
        (ErrorKind::InvalidValue | ErrorKind::ValueValidation, Some(f)) => {
            format!("give {f} a value of the kind shown in `--help`")
        }
        (ErrorKind::UnknownArgument, _) => "run with --help to list the accepted flags".to_string(),
        (ErrorKind::MissingRequiredArgument, _) => "add the missing flag shown above".to_string(),
        _ => "run with --help for usage".to_string(),
    };
    let _ = writeln!(err, "  fix: {fix}");
    EXIT_USAGE
}

fn dispatch(cmd: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match cmd {
        Command::Analytic(a) => cmd_analytic(a, out),
        Command::Simulate(a) => cmd_simulate(a, out),
        Command::Sweep(a) => cmd_sweep(a, out, err),
        Command::Compare(a) => cmd_compare(a, out),
        Command::Validate(a) => cmd_validate(a, out),
        Command::Recipes(a) => cmd_recipes(a, out),
    }
}

pub fn cmd_analytic(a: &AnalyticArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    check_method(a.method)?;
    let p = a.params.validated()?;
    let r = analytic_for(a.method, &p, a.varrho)?;
    let s = p.scenario();
    let text = match a.format {
        Format::Csv => format!(
            "duplex,ed_model,method,kind,value,raw_value,clamped\n{},{},{},{},{},{},{}\n",
            s.duplex, s.ed_model, r.method, r.kind, r.value, r.raw_value, r.clamped
        ),
        Format::Text => {
            let mut t = format!("{s}: sop = {} ({}, {})", r.value, r.kind, r.method);
            if r.clamped {
                let _ = write!(t, " [clamped from {}]", r.raw_value);
            }
            t + "\n"
        }
    };
    write_output(out, a.out.as_deref(), &text)?;
    Ok(EXIT_OK)
}

fn estimate_text(s: crate::params::Scenario, e: &SopEstimate, format: Format) -> String {
    match format {
        Format::Csv => format!(
            "duplex,ed_model,p_hat,ci_low,ci_high,outages,n_trials,seed,outage_def\n{},{},{},{},{},{},{},{},{}\n",
            s.duplex, s.ed_model, e.p_hat, e.ci_low, e.ci_high, e.outages, e.n_trials, e.seed, e.outage_def
        ),
        Format::Text => format!(
            "{s}: sop ~ {} (95% CI [{}, {}]); {} outages in {} trials, seed {}, {}\n",
            e.p_hat, e.ci_low, e.ci_high, e.outages, e.n_trials, e.seed, e.outage_def
        ),
    }
}

pub fn cmd_simulate(a: &SimulateArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let p = a.params.validated()?;
    if a.mc.trials == 0 {
        return Err(CliError::usage("--trials", "must be at least 1", "pass --trials N with N >= 1"));
    }
    let e = simcore::estimate_sop(&p, p.scenario(), a.mc.trials, a.mc.seed, a.mc.outage_def)?;
    write_output(out, a.out.as_deref(), &estimate_text(p.scenario(), &e, a.format))?;
    Ok(EXIT_OK)
}

fn load_recipe(a: &SweepArgs) -> Result<Recipe, CliError> {
    let mut recipe = match (&a.recipe, &a.spec) {
        (Some(name), _) => harness::builtin_recipe(name).map_err(|e| {
            CliError::usage("--recipe", e.to_string(), "run `tas-sop recipes` to list the built-in names")
        })?,
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                CliError::usage("--spec", format!("cannot read {}: {e}", path.display()), "pass an existing recipe TOML file")
            })?;
            Recipe::from_toml(&text).map_err(|e| {
                CliError::usage("--spec", e.to_string(), "compare the file with `tas-sop recipes --show fig2`")
            })?
        }
        (None, None) => unreachable!("clap requires one of --recipe/--spec"),
    };
    if let Some(n) = a.trials {
        if n == 0 {
            return Err(CliError::usage("--trials", "must be at least 1", "pass --trials N with N >= 1"));
        }
        recipe.spec.n_trials = n;
    }
    if let Some(s) = a.seed {
        recipe.spec.seed = s;
    }
    Ok(recipe)
}

pub fn cmd_sweep(a: &SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    if a.plot.is_some() && a.out.is_none() {
        return Err(CliError::usage("--plot", "needs a CSV file to plot", "add --out FILE.csv"));
    }
    let recipe = load_recipe(a)?;
    let result = recipe.run()?;
    for f in &result.failures {
        let _ = writeln!(
            err,
            "warning: {} = {} ({}, {}): {}",
            recipe.spec.axis, f.axis_value, f.scenario, f.method, f.message
        );
    }
    write_output(out, a.out.as_deref(), &emit_csv(&result)?)?;
    if let (Some(plot), Some(csv)) = (&a.plot, &a.out) {
        let script = emit_plot_script(&csv.to_string_lossy(), &recipe.plot);
        std::fs::write(plot, script).map_err(|e| CliError::Io(format!("cannot write {}: {e}", plot.display())))?;
    }
    if a.check {
        let outcomes = recipe.evaluate_checks(&result);
        let mut failed = 0;
        for o in &outcomes {
            let _ = writeln!(
                err,
                "{} {} {} {}: {}",
                if o.pass { "PASS" } else { "FAIL" },
                o.check.scenario,
                o.check.method,
                o.check.trend,
                o.detail
            );
            failed += usize::from(!o.pass);
        }
        if failed > 0 {
            return Err(CliError::Failed(format!("{failed} of {} recipe checks failed", outcomes.len())));
        }
    }
    Ok(EXIT_OK)
}

/// Whether an estimate is consistent with an analytic value of the given kind.
pub fn compare_verdict(kind: Kind, value: f64, e: &SopEstimate, tol: f64) -> bool {
    let hw = e.half_width();
    match kind {
        Kind::Exact | Kind::Approximation => e.contains(value) || (value - e.p_hat).abs() <= tol,
        Kind::UpperBound => e.p_hat <= value + hw,
        Kind::LowerBound => e.p_hat >= value - hw,
    }
}

pub fn cmd_compare(a: &CompareArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    check_method(a.method)?;
    let base = a.params.resolve()?;
    let p = validated(&base)?;
    let scenario = p.scenario();
    let (axis, values) = match a.axis {
        Some(axis) => (axis, a.values.clone()),
        None => (Axis::RhoE, vec![base.rho_e]),
    };
    for &v in &values {
        validated(&axis.set(&base, v))?;
    }
    let mut spec = SweepSpec::new(base, axis, values)
        .with_scenarios(&[scenario])
        .with_methods(&[a.method, SweepMethod::MonteCarlo])
        .with_trials(a.mc.trials, a.mc.seed);
    spec.outage_def = a.mc.outage_def;
    spec.varrho = a.varrho;
    let result = harness::run_sweep(&spec)?;
    if let Some(f) = result.failures.first() {
        return Err(CliError::Failed(format!("{} = {}: {}", axis, f.axis_value, f.message)));
    }
    let analytic = result.series(scenario, a.method);
    let mc = result.series(scenario, SweepMethod::MonteCarlo);
    let mut text = String::new();
    if a.format == Format::Csv {
        text.push_str("axis_name,axis_value,duplex,ed_model,kind,value,p_hat,ci_low,ci_high,n_trials,seed,pass\n");
    }
    let mut failed = 0;
    for (an, m) in analytic.iter().zip(&mc) {
        let kind: Kind = an.kind.parse().map_err(CliError::Failed)?;
        let e = SopEstimate::from_counts(
            (m.value * m.n_trials as f64).round() as u64,
            m.n_trials,
            m.seed,
            a.mc.outage_def,
        );
        let pass = compare_verdict(kind, an.value, &e, a.tol);
        failed += usize::from(!pass);
        match a.format {
            Format::Csv => {
                let _ = writeln!(
                    text,
                    "{},{},{},{},{},{},{},{},{},{},{},{}",
                    axis, an.axis_value, scenario.duplex, scenario.ed_model, kind, an.value, m.value, m.ci_low,
                    m.ci_high, m.n_trials, m.seed, pass
                );
            }
            Format::Text => {
                let _ = writeln!(
                    text,
                    "{axis} = {:<10} {kind} {:.6}  mc {:.6} [{:.6}, {:.6}]  {}",
                    an.axis_value,
                    an.value,
                    m.value,
                    m.ci_low,
                    m.ci_high,
                    if pass { "PASS" } else { "FAIL" }
                );
            }
        }
    }
    write_output(out, a.out.as_deref(), &text)?;
    if failed > 0 {
        return Err(CliError::Failed(format!("{failed} of {} points disagree", analytic.len())));
    }
    Ok(EXIT_OK)
}

pub fn cmd_validate(a: &ValidateArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let checks = validate::run_all(a.seed);
    let mut failed = 0;
    for c in &checks {
        let _ = writeln!(out, "{} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
        failed += usize::from(!c.pass);
    }
    if failed > 0 {
        return Err(CliError::Failed(format!("{failed} of {} self-checks failed", checks.len())));
    }
    let _ = writeln!(out, "all {} self-checks passed", checks.len());
    Ok(EXIT_OK)
}

pub fn cmd_recipes(a: &RecipesArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    if let Some(name) = &a.show {
        let text = builtin_recipe_source(name).ok_or_else(|| {
            CliError::usage("--show", format!("no built-in recipe `{name}`"), "run `tas-sop recipes` to list the names")
        })?;
        write_output(out, None, text)?;
        return Ok(EXIT_OK);
    }
    let defaults = SystemParams::default();
    let mut text = String::new();
    for r in builtin_recipes()? {
        let s = &r.spec;
        let _ = writeln!(text, "{}: {}", r.name, r.description);
        let values: Vec<String> = s.values.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(text, "  sweep {} over [{}]", s.axis, values.join(", "));
        let scen: Vec<String> = s.scenarios.iter().map(|x| x.to_string()).collect();
        let meth: Vec<&str> = s.methods.iter().map(|m| m.as_str()).collect();
        let _ = writeln!(text, "  scenarios {}; methods {}", scen.join(", "), meth.join(", "));
        if s.methods.contains(&SweepMethod::MonteCarlo) {
            let _ = writeln!(text, "  {} trials per point, seed {}, {}", s.n_trials, s.seed, s.outage_def);
        }
        let _ = writeln!(text, "  parameters: {}", describe_params(&s.base, &defaults));
    }
    write_output(out, None, &text)?;
    Ok(EXIT_OK)
}

/// `key=value` for every field, marking the ones that differ from the defaults.
fn describe_params(p: &SystemParams, defaults: &SystemParams) -> String {
    let pairs = [
        ("k_antennas", p.k_antennas.to_string(), defaults.k_antennas.to_string()),
        ("rho_e", p.rho_e.to_string(), defaults.rho_e.to_string()),
        ("radius", p.radius.to_string(), defaults.radius.to_string()),
        ("d_bu", p.d_bu.to_string(), defaults.d_bu.to_string()),
        ("alpha", p.alpha.to_string(), defaults.alpha.to_string()),
        ("beta", p.beta.to_string(), defaults.beta.to_string()),
        ("epsilon", p.epsilon.to_string(), defaults.epsilon.to_string()),
        ("pb_over_n0_db", p.pb_over_n0_db.to_string(), defaults.pb_over_n0_db.to_string()),
        ("pu_over_n0_db", p.pu_over_n0_db.to_string(), defaults.pu_over_n0_db.to_string()),
        ("lambda_uu_db", p.lambda_uu_db.to_string(), defaults.lambda_uu_db.to_string()),
        ("duplex", p.duplex.to_string(), defaults.duplex.to_string()),
        ("ed_model", p.ed_model.to_string(), defaults.ed_model.to_string()),
        ("ed_noise", p.ed_noise.to_string(), defaults.ed_noise.to_string()),
    ];
    pairs
        .iter()
        .map(|(k, v, d)| if v == d { format!("{k}={v}") } else { format!("{k}={v}*") })
        .collect::<Vec<_>>()
        .join(" ")
        + "  (* = set by the recipe)"
}

/// Process entry point: initializes logging and runs with the real
/// command line and standard streams.
pub fn main_entry() -> i32 {
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).try_init();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_from(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
