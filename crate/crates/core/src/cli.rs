//! Command-line surface: layered configuration and the calibrate, mass,
//! table and verify commands.
//!
//! Every command returns a [`CommandOutput`] instead of printing, so the
//! binary stays a thin wrapper and the commands can be tested in-process.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::amplitudes::verify_identities;
use crate::calibrate::{
    build_v, epsilon_modulus, eta_parameter, isovector_a, isovector_exact, l_column, mu2_minimum, nucleon_mass,
    proton_neutron_ratio, zbarz_from_sum_rule, ModelParams,
};
use crate::error::{Error, Result};
use crate::physops::verify_algebra;
use crate::report::{
    attach, bundled_experimental, compare_with_tolerance, default_sweep_grid, generate_table, ingest_experimental,
    mu2_sweep, render, render_sweep, Format,
};
use crate::specfun::verify_specfun;
use crate::spectrum::{mass_squared, virton_mass_squared, Family, Model, QuantumNumbers};
use crate::verify::VerificationReport;

/// Environment variable naming the config file.
pub const CONFIG_ENV: &str = "BISPEC_CONFIG";
/// μ² used by the table when none is configured.
pub const TABLE_MU2: f64 = 0.065;
/// Within-tolerance threshold reported by `table --compare`.
pub const DEFAULT_TOLERANCE_GEV: f64 = 0.02;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Fully resolved settings for one run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub model: Model,
    /// `None` lets each command use its own default.
    pub mu2: Option<f64>,
    pub lambda2: u32,
    pub chi: f64,
    pub n_max: u32,
    pub format: Format,
    /// `bundled` selects the packaged data.
    pub experimental_path: Option<PathBuf>,
    pub output_path: Option<PathBuf>,
    pub tolerance_gev: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            model: Model::H16,
            mu2: None,
            lambda2: 136,
            chi: 0.0,
            n_max: 10,
            format: Format::Markdown,
            experimental_path: None,
            output_path: None,
            tolerance_gev: DEFAULT_TOLERANCE_GEV,
        }
    }
}

/// One partial source of settings: a config file or the command line.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigLayer {
    pub model: Option<Model>,
    pub mu2: Option<f64>,
    pub lambda2: Option<u32>,
    pub chi: Option<f64>,
    pub n_max: Option<u32>,
    pub format: Option<Format>,
    pub experimental_path: Option<PathBuf>,
    pub output_path: Option<PathBuf>,
    pub tolerance_gev: Option<f64>,
}

impl RunConfig {
    /// Applies layers over the defaults; later layers win.
    pub fn layered(layers: &[ConfigLayer]) -> Result<Self> {
        let mut c = RunConfig::default();
        for l in layers {
            if let Some(v) = l.model {
                c.model = v;
            }
            if let Some(v) = l.mu2 {
                c.mu2 = Some(v);
            }
            if let Some(v) = l.lambda2 {
                c.lambda2 = v;
            }
            if let Some(v) = l.chi {
                c.chi = v;
            }
            if let Some(v) = l.n_max {
                c.n_max = v;
            }
            if let Some(v) = l.format {
                c.format = v;
            }
            if let Some(v) = &l.experimental_path {
                c.experimental_path = Some(v.clone());
            }
            if let Some(v) = &l.output_path {
                c.output_path = Some(v.clone());
            }
            if let Some(v) = l.tolerance_gev {
                c.tolerance_gev = v;
            }
        }
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(mu2) = self.mu2 {
            if !(mu2 > 0.0) || !mu2.is_finite() {
                return Err(Error::InvalidInput(format!("mu2 must be finite and > 0, got {mu2}")));
            }
        }
        if self.lambda2 < 2 {
            return Err(Error::InvalidInput(format!("lambda2 must be >= 2, got {}", self.lambda2)));
        }
        if !self.chi.is_finite() {
            return Err(Error::InvalidInput("chi must be finite".into()));
        }
        if !(self.tolerance_gev > 0.0) {
            return Err(Error::InvalidInput(format!("tolerance_gev must be > 0, got {}", self.tolerance_gev)));
        }
        Ok(())
    }
}

/// Reads a JSON config layer.
pub fn load_layer(path: &Path) -> Result<ConfigLayer> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    if text.trim().is_empty() {
        return Ok(ConfigLayer::default());
    }
    serde_json::from_str(&text).map_err(|e| Error::Parse { line: e.line(), msg: format!("{}: {e}", path.display()) })
}

/// The config file in effect: the flag wins over the environment.
pub fn config_path(flag: Option<&Path>, env: Option<OsString>) -> Option<PathBuf> {
    flag.map(Path::to_path_buf).or_else(|| env.filter(|v| !v.is_empty()).map(PathBuf::from))
}

/// Exit status of a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) | Error::Parse { .. } | Error::DuplicateCell { .. } | Error::UnknownFamily { .. } => EXIT_IO,
        Error::ConstraintViolation(_) | Error::CancellationFailure(_) | Error::DecompositionResidual(_) => EXIT_VERIFY,
        _ => EXIT_DOMAIN,
    }
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq)]
pub struct CommandOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutput {
    fn ok(stdout: String) -> Self {
        CommandOutput { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn json(code: i32, v: &Value) -> Self {
        let mut stdout = serde_json::to_string_pretty(v).expect("serializable");
        stdout.push('\n');
        CommandOutput { code, stdout, stderr: String::new() }
    }

    /// JSON error report on stdout, one-line message on stderr.
    pub fn error(e: &Error) -> Self {
        let code = exit_code(e);
        let mut report = json!({ "error": error_kind(e), "message": e.to_string() });
        if let Error::ComplexBranch { discriminant } = e {
            report["discriminant"] = json!(discriminant);
        }
        let mut out = CommandOutput::json(code, &report);
        out.stderr = format!("error: {e}\n");
        out
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidInput(_) => "invalid_input",
        Error::NonConvergent { .. } => "non_convergent",
        Error::DegreeCapExceeded { .. } => "degree_cap_exceeded",
        Error::InvalidModel(_) => "invalid_model",
        Error::DomainError(_) => "domain_error",
        Error::DegenerateGram => "degenerate_gram",
        Error::CancellationFailure(_) => "cancellation_failure",
        Error::ComplexBranch { .. } => "complex_branch",
        Error::BracketFailure { .. } => "bracket_failure",
        Error::NoPhysicalRoot => "no_physical_root",
        Error::DegenerateRoot(_) => "degenerate_root",
        Error::ConstraintViolation(_) => "constraint_violation",
        Error::DecompositionResidual(_) => "decomposition_residual",
        Error::SingularMatrix => "singular_matrix",
        Error::InvalidWeights(_) => "invalid_weights",
        Error::Parse { .. } => "parse_error",
        Error::DuplicateCell { .. } => "duplicate_cell",
        Error::UnknownFamily { .. } => "unknown_family",
        Error::Io(_) => "io_error",
    }
}

fn check(name: &str, passed: bool, value: Value) -> Value {
    json!({ "check": name, "passed": passed, "value": value })
}

/// Minimum principle, sum rule, temperatures, η, ε and the V constraints.
pub fn cmd_calibrate(config: &RunConfig) -> CommandOutput {
    match calibrate_report(config) {
        Ok((passed, report)) => CommandOutput::json(if passed { EXIT_OK } else { EXIT_VERIFY }, &report),
        Err(e) => CommandOutput::error(&e),
    }
}

fn calibrate_report(config: &RunConfig) -> Result<(bool, Value)> {
    let mu2 = config.mu2.unwrap_or_else(mu2_minimum);
    let m_n = nucleon_mass(mu2)?;
    let zbar_z = zbarz_from_sum_rule(m_n, mu2)?;
    let params = ModelParams::from_mu2_zbarz(mu2, zbar_z, config.lambda2, config.chi)?;
    let eta = eta_parameter(&params);
    let eps = epsilon_modulus(config.lambda2)?;
    let ratio = proton_neutron_ratio(config.lambda2)?;
    let rot = build_v(config.lambda2, config.chi)?;
    let a = isovector_a(&rot)?;
    let l = l_column(&rot)?;
    let exact = isovector_exact(config.lambda2)?;

    let l2 = config.lambda2 as f64;
    let big = (l2 * l2 - 1.0).sqrt();
    let l2q = crate::symcore::Q::from_integer((config.lambda2 as i64).into());
    let one = crate::symcore::Q::from_integer(1.into());
    let expected_ratio = (&l2q + &one) / (&l2q - &one);
    let checks = vec![
        check("params_valid", params.validate().is_ok(), Value::Null),
        check("det_V_equals_1", rot.det_residual() <= 1e-12, json!(rot.det_residual())),
        check("V_squared_equals_minus_I", rot.square_residual() <= 1e-12 * l2, json!(rot.square_residual())),
        check("eps_modulus_sq_exact", eps.radicand == expected_ratio, json!(eps.radicand.to_string())),
        check("Wp_over_Wn_equals_eps_sq", ratio == eps.radicand, json!(ratio.to_string())),
        check("A0_equals_lambda2", (a.a0 - l2).abs() <= 1e-12 * l2, json!(a.a0)),
        check("A3_zero", a.a3.abs() <= 1e-12 * l2, json!(a.a3)),
        check(
            "A_minkowski_norm_one",
            exact.minkowski_norm() == one && exact.a0 == l2q && exact.a3 == crate::symcore::Q::from_integer(0.into()),
            json!({ "exact": exact.minkowski_norm().to_string(), "float": a.minkowski_norm() }),
        ),
        check("L00_equals_lambda2", (l.l00.re - l2).abs() <= 1e-9 && l.l00.im.abs() <= 1e-9, json!(l.l00.re)),
        check("L30_zero", l.l30.norm() <= 1e-9, json!(l.l30.norm())),
        check("L_plus_modulus", (l.l_plus.norm() - big).abs() <= 1e-9, json!(l.l_plus.norm())),
        check("L_minus_modulus", (l.l_minus.norm() - big).abs() <= 1e-9, json!(l.l_minus.norm())),
    ];
    let passed = checks.iter().all(|c| c["passed"] == json!(true));
    let report = json!({
        "command": "calibrate",
        "params": params,
        "nucleon_mass_gev": m_n,
        "eta": eta,
        "eps_modulus_sq": eps.radicand.to_string(),
        "wp_over_wn": ratio.to_string(),
        "isovector": a,
        "l_column": {
            "l00": [l.l00.re, l.l00.im],
            "l30": [l.l30.re, l.l30.im],
            "l_plus": [l.l_plus.re, l.l_plus.im],
            "l_minus": [l.l_minus.re, l.l_minus.im],
        },
        "checks": checks,
        "passed": passed,
    });
    Ok((passed, report))
}

/// Both branches for one multiplet, the physical one, and the virton for F = 1.
pub fn cmd_mass(config: &RunConfig, qn: &QuantumNumbers) -> CommandOutput {
    let mu2 = config.mu2.unwrap_or_else(mu2_minimum);
    let sol = match mass_squared(config.model, qn, mu2, 1.0) {
        Ok(s) => s,
        Err(e) => return CommandOutput::error(&e),
    };
    let virton = if qn.f == 1 {
        match virton_mass_squared(qn, config.lambda2) {
            Ok(m2) => json!({ "second_space_m2": m2, "x_space_m2": -m2 }),
            Err(e) => return CommandOutput::error(&e),
        }
    } else {
        Value::Null
    };
    let report = json!({
        "command": "mass",
        "model": config.model,
        "mu2": mu2,
        "quantum_numbers": qn,
        "m2_baryon": sol.m2_baryon,
        "m2_meson": sol.m2_meson,
        "discriminant": sol.discriminant,
        "physical_branch": if qn.f == 1 { "baryon" } else { "meson" },
        "physical_m2": sol.physical_m2(qn.f),
        "physical_mass_gev": sol.physical_mass(qn.f).ok(),
        "virton": virton,
    });
    CommandOutput::json(EXIT_OK, &report)
}

/// Mass table with optional comparison, or the μ² sweep.
pub fn cmd_table(config: &RunConfig, sweep: bool) -> CommandOutput {
    match table_text(config, sweep) {
        Ok(text) => CommandOutput::ok(text),
        Err(e) => CommandOutput::error(&e),
    }
}

fn table_text(config: &RunConfig, sweep: bool) -> Result<String> {
    if config.model != Model::H16 {
        return Err(Error::InvalidModel(format!("the mass table is built in h16, not {}", config.model)));
    }
    if sweep {
        return Ok(render_sweep(&mu2_sweep(&default_sweep_grid(), config.n_max), config.format));
    }
    let mu2 = config.mu2.unwrap_or(TABLE_MU2);
    let rows = generate_table(mu2, config.n_max, &Family::all());
    match &config.experimental_path {
        None => Ok(render(&rows, None, mu2, config.format)),
        Some(path) => {
            let reference =
                if path.as_os_str() == "bundled" { bundled_experimental() } else { ingest_experimental(path)? };
            let stats = compare_with_tolerance(&rows, &reference, config.tolerance_gev);
            Ok(render(&attach(&rows, &reference), Some(&stats), mu2, config.format))
        }
    }
}

/// Verification suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Algebra,
    Specfun,
    Identities,
    All,
}

/// Runs the checks of a suite.
pub fn suite_checks(suite: Suite) -> Vec<VerificationReport> {
    match suite {
        Suite::Algebra => verify_algebra(),
        Suite::Specfun => verify_specfun(),
        Suite::Identities => verify_identities(),
        Suite::All => {
            let mut all = verify_algebra();
            all.extend(verify_specfun());
            all.extend(verify_identities());
            all
        }
    }
}

/// Aggregated suite report; timings appear only on request so that repeated
/// runs print identical output.
pub fn cmd_verify(suite: Suite, timings: bool) -> CommandOutput {
    let reports = suite_checks(suite);
    let passed = reports.iter().all(|r| r.passed);
    let checks: Vec<Value> = reports
        .iter()
        .map(|r| {
            let mut v = json!({ "check": r.check_id, "passed": r.passed, "residuals": r.residual_terms });
            if timings {
                v["timing_ms"] = json!(r.timing_ms);
            }
            v
        })
        .collect();
    let report = json!({
        "command": "verify",
        "suite": suite,
        "passed": passed,
        "failed": reports.iter().filter(|r| !r.passed).count(),
        "checks": checks,
    });
    CommandOutput::json(if passed { EXIT_OK } else { EXIT_VERIFY }, &report)
}

/// The resolved configuration as JSON.
pub fn cmd_params(config: &RunConfig) -> CommandOutput {
    CommandOutput::json(EXIT_OK, &json!(config))
}

#[derive(Debug, Parser)]
#[command(name = "bispec", version, about = "Bare hadron masses, parameter calibration and exact algebra checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Debug, Args, Default)]
pub struct GlobalArgs {
    /// h8 or h16.
    #[arg(long, global = true)]
    pub model: Option<Model>,
    #[arg(long, global = true)]
    pub mu2: Option<f64>,
    #[arg(long, global = true)]
    pub lambda2: Option<u32>,
    /// Phase of ε in radians.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub chi: Option<f64>,
    #[arg(long = "n-max", global = true)]
    pub n_max: Option<u32>,
    /// csv, json or markdown.
    #[arg(long, global = true)]
    pub format: Option<Format>,
    /// Write the result to a file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// JSON config file; BISPEC_CONFIG is used when absent.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Tolerance for the within count of a comparison.
    #[arg(long = "tolerance-gev", global = true)]
    pub tolerance_gev: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Calibrate the free parameters and check the V constraints.
    Calibrate,
    /// Mass of one multiplet.
    Mass(MassArgs),
    /// Mass table for every family.
    Table(TableArgs),
    /// Run the exact verification suites.
    Verify(VerifyArgs),
    /// Print the resolved configuration.
    Params,
}

#[derive(Debug, Args)]
pub struct MassArgs {
    /// Fermion charge, 0 or 1.
    #[arg(long = "F")]
    pub f: i32,
    /// Isotonic number.
    #[arg(long = "N", allow_hyphen_values = true)]
    pub n: i32,
    /// Isospin, a multiple of 1/2.
    #[arg(long = "i", allow_hyphen_values = true)]
    pub i: f64,
    /// Hypercharge; defaults to the largest value ≤ 2i with the parity of N.
    #[arg(long = "Y", allow_hyphen_values = true)]
    pub y: Option<i32>,
    /// Isospin projection; defaults to i.
    #[arg(long = "i3", allow_hyphen_values = true)]
    pub i3: Option<f64>,
    /// Accept calibration-only points such as N = -1, i = -1/2.
    #[arg(long)]
    pub synthetic: bool,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Experimental CSV to compare against, or `bundled`.
    #[arg(long)]
    pub compare: Option<PathBuf>,
    /// Fit quality of the table over the default μ² grid instead of the table.
    #[arg(long = "mu2-sweep")]
    pub mu2_sweep: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
    /// Include per-check timings.
    #[arg(long)]
    pub timings: bool,
}

fn doubled(x: f64, what: &str) -> Result<i32> {
    let d = 2.0 * x;
    if !d.is_finite() || (d - d.round()).abs() > 1e-9 {
        return Err(Error::InvalidInput(format!("{what} must be a multiple of 1/2, got {x}")));
    }
    Ok(d.round() as i32)
}

impl MassArgs {
    pub fn quantum_numbers(&self) -> Result<QuantumNumbers> {
        let two_i = doubled(self.i, "i")?;
        let y = self.y.unwrap_or(if (self.n - two_i).rem_euclid(2) == 0 { two_i } else { two_i - 1 });
        let mut qn = QuantumNumbers::new(self.f, self.n, y, two_i);
        if let Some(i3) = self.i3 {
            qn = qn.with_i3(doubled(i3, "i3")?);
        }
        if self.synthetic {
            qn = qn.synthetic();
        }
        qn.validate()?;
        Ok(qn)
    }
}

impl GlobalArgs {
    fn layer(&self) -> ConfigLayer {
        ConfigLayer {
            model: self.model,
            mu2: self.mu2,
            lambda2: self.lambda2,
            chi: self.chi,
            n_max: self.n_max,
            format: self.format,
            experimental_path: None,
            output_path: self.output.clone(),
            tolerance_gev: self.tolerance_gev,
        }
    }
}

/// Resolves the configuration for a parsed command line.
pub fn resolve_config(cli: &Cli, env_config: Option<OsString>) -> Result<RunConfig> {
    let mut layers = Vec::new();
    if let Some(path) = config_path(cli.global.config.as_deref(), env_config) {
        layers.push(load_layer(&path)?);
    }
    let mut flags = cli.global.layer();
    if let Command::Table(t) = &cli.command {
        flags.experimental_path = t.compare.clone();
    }
    layers.push(flags);
    RunConfig::layered(&layers)
}

/// Runs a parsed command line.
pub fn run(cli: &Cli, env_config: Option<OsString>) -> CommandOutput {
    let config = match resolve_config(cli, env_config) {
        Ok(c) => c,
        Err(e) => return CommandOutput::error(&e),
    };
    let out = match &cli.command {
        Command::Calibrate => cmd_calibrate(&config),
        Command::Mass(m) => match m.quantum_numbers() {
            Ok(qn) => cmd_mass(&config, &qn),
            Err(e) => CommandOutput::error(&e),
        },
        Command::Table(t) => cmd_table(&config, t.mu2_sweep),
        Command::Verify(v) => cmd_verify(v.suite, v.timings),
        Command::Params => cmd_params(&config),
    };
    match &config.output_path {
        Some(path) if out.code == EXIT_OK || out.code == EXIT_VERIFY => match fs::write(path, &out.stdout) {
            Ok(()) => CommandOutput { stdout: String::new(), ..out },
            Err(e) => CommandOutput::error(&Error::Io(format!("{}: {e}", path.display()))),
        },
        _ => out,
    }
}

/// Parses arguments and runs; usage errors keep clap's own exit status.
pub fn run_from_args<I, T>(args: I, env_config: Option<OsString>) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, env_config),
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            if code == 0 {
                CommandOutput { code, stdout: text, stderr: String::new() }
            } else {
                CommandOutput { code, stdout: String::new(), stderr: text }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> CommandOutput {
        run_from_args(std::iter::once("bispec").chain(args.iter().copied()), None)
    }

    fn parse(out: &CommandOutput) -> Value {
        serde_json::from_str(&out.stdout).unwrap()
    }

    #[test]
    fn empty_layer_gives_defaults() {
        let c = RunConfig::layered(&[serde_json::from_str("{}").unwrap()]).unwrap();
        assert_eq!(c, RunConfig::default());
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(serde_json::from_str::<ConfigLayer>(r#"{"mu": 1}"#).is_err());
    }

    #[test]
    fn nucleon_mass_command() {
        let out = run_args(&["mass", "--F", "1", "--N", "1", "--i", "0.5", "--mu2", "0.067"]);
        assert_eq!(out.code, 0);
        let v = parse(&out);
        assert!((v["physical_mass_gev"].as_f64().unwrap() - 1.144).abs() < 1e-3);
        assert!(v["virton"]["second_space_m2"].as_f64().unwrap() > 0.0);
    }

    #[test]
    fn rho_mass_command() {
        let out = run_args(&["mass", "--F", "0", "--N", "2", "--i", "1", "--mu2", "0.065"]);
        let v = parse(&out);
        assert!((v["physical_mass_gev"].as_f64().unwrap() - 0.727).abs() < 1e-3);
        assert!(v["virton"].is_null());
    }

    #[test]
    fn synthetic_point() {
        let mu2 = 0.067271_f64;
        let out = run_args(&["mass", "--F", "1", "--N", "-1", "--i", "-0.5", "--synthetic", "--mu2", "0.067271"]);
        assert_eq!(out.code, 0, "{}", out.stdout);
        let want = 2.0 * mu2 * (5.0 - mu2 + (mu2 * mu2 - 10.0 * mu2 + 1.0).sqrt());
        assert!((parse(&out)["m2_baryon"].as_f64().unwrap() - want).abs() < 1e-12);
        assert_eq!(run_args(&["mass", "--F", "1", "--N", "-1", "--i", "-0.5"]).code, EXIT_DOMAIN);
    }

    #[test]
    fn complex_branch_exit_code() {
        let out = run_args(&["mass", "--F", "1", "--N", "-1", "--i", "-0.5", "--synthetic", "--mu2", "1"]);
        assert_eq!(out.code, EXIT_DOMAIN);
        assert_eq!(parse(&out)["error"], "complex_branch");
    }

    #[test]
    fn missing_compare_file() {
        let out = run_args(&["table", "--compare", "/nonexistent/x.csv"]);
        assert_eq!(out.code, EXIT_IO);
    }

    #[test]
    fn non_half_integer_isospin() {
        assert_eq!(run_args(&["mass", "--F", "1", "--N", "1", "--i", "0.3"]).code, EXIT_DOMAIN);
    }

    #[test]
    fn usage_error_keeps_clap_code() {
        assert_eq!(run_args(&["mass"]).code, 2);
        assert_eq!(run_args(&["--help"]).code, 0);
    }
}
