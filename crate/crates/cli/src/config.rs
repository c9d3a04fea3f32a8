//! Config-file handling and option resolution.
//!
//! Precedence: command-line flags override the key=value config file,
//! which overrides built-in defaults.

use std::fs;
use std::path::PathBuf;

use qmeas_core::correlations::Cut;

use crate::args::{Cli, Command, CommonArgs};
use crate::CliError;

/// Fully resolved options; per-command defaults already applied.
#[derive(Debug, Clone)]
pub struct Options {
    pub v0: f64,
    pub delta_e: f64,
    pub tau: f64,
    /// Single-point back-action rate from --lambda-t / --e-r, if any.
    pub fixed_lambda_t: Option<f64>,
    pub b: f64,
    pub a_phase: f64,
    pub b_phase: f64,
    pub cuts: Vec<Cut>,
    pub t_min: f64,
    pub t_max: f64,
    pub t_steps: usize,
    pub lt_min: f64,
    pub lt_max: f64,
    pub lt_steps: usize,
    pub b_min: f64,
    pub b_max: f64,
    pub b_steps: usize,
    pub fig3: bool,
    pub verify: bool,
    pub scan_tau: Option<(f64, f64, usize)>,
    pub out: Option<PathBuf>,
}

/// Raw values from the config file, same shape as the flag set.
#[derive(Debug, Default)]
struct FileValues {
    v0: Option<f64>,
    delta_e: Option<f64>,
    tau: Option<f64>,
    e_r: Option<f64>,
    lambda_t: Option<f64>,
    b: Option<f64>,
    a_phase: Option<f64>,
    b_phase: Option<f64>,
    cut: Option<String>,
    t_min: Option<f64>,
    t_max: Option<f64>,
    t_steps: Option<usize>,
    lt_min: Option<f64>,
    lt_max: Option<f64>,
    lt_steps: Option<usize>,
    b_min: Option<f64>,
    b_max: Option<f64>,
    b_steps: Option<usize>,
    out: Option<PathBuf>,
}

fn parse_file(path: &PathBuf) -> Result<FileValues, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let mut v = FileValues::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("{}:{}: expected key=value", path.display(), lineno + 1))
        })?;
        let (key, value) = (key.trim(), value.trim());
        let bad = |e: String| {
            CliError::Usage(format!("{}:{}: {key}: {e}", path.display(), lineno + 1))
        };
        let f = |v: &str| v.parse::<f64>().map_err(|e| bad(e.to_string()));
        let n = |v: &str| v.parse::<usize>().map_err(|e| bad(e.to_string()));
        match key {
            "v0" => v.v0 = Some(f(value)?),
            "delta_e" => v.delta_e = Some(f(value)?),
            "tau" => v.tau = Some(f(value)?),
            "e_r" => v.e_r = Some(f(value)?),
            "lambda_t" => v.lambda_t = Some(f(value)?),
            "b" => v.b = Some(f(value)?),
            "a_phase" => v.a_phase = Some(f(value)?),
            "b_phase" => v.b_phase = Some(f(value)?),
            "cut" => v.cut = Some(value.to_string()),
            "t_min" => v.t_min = Some(f(value)?),
            "t_max" => v.t_max = Some(f(value)?),
            "t_steps" => v.t_steps = Some(n(value)?),
            "lt_min" => v.lt_min = Some(f(value)?),
            "lt_max" => v.lt_max = Some(f(value)?),
            "lt_steps" => v.lt_steps = Some(n(value)?),
            "b_min" => v.b_min = Some(f(value)?),
            "b_max" => v.b_max = Some(f(value)?),
            "b_steps" => v.b_steps = Some(n(value)?),
            "out" => v.out = Some(PathBuf::from(value)),
            other => {
                return Err(CliError::Usage(format!(
                    "{}:{}: unknown config key `{other}`",
                    path.display(),
                    lineno + 1
                )))
            }
        }
    }
    Ok(v)
}

fn parse_cuts(s: &str) -> Result<Vec<Cut>, CliError> {
    match s {
        "s" => Ok(vec![Cut::System]),
        "r" => Ok(vec![Cut::Source]),
        "d" => Ok(vec![Cut::Detector]),
        "all" => Ok(vec![Cut::System, Cut::Source, Cut::Detector]),
        other => Err(CliError::Usage(format!("invalid cut `{other}` (expected s|r|d|all)"))),
    }
}

pub fn resolve(cli: &Cli) -> Result<Options, CliError> {
    let a: &CommonArgs = cli.command.args();
    let file = match &cli.config {
        Some(path) => parse_file(path)?,
        None => FileValues::default(),
    };

    // Flags beat file entries; within one source the pair is exclusive.
    if a.e_r.is_none() && a.lambda_t.is_none() && file.e_r.is_some() && file.lambda_t.is_some() {
        return Err(CliError::Usage(
            "config file sets both e_r and lambda_t; they are mutually exclusive".into(),
        ));
    }

    let v0 = a.v0.or(file.v0).unwrap_or(1.0);
    let delta_e = a.delta_e.or(file.delta_e).unwrap_or(1.0);
    let tau_default = match cli.command {
        Command::Correlations(_) => 8.0,
        _ => 2.0,
    };
    let tau = a.tau.or(file.tau).unwrap_or(tau_default);

    if !(v0 > 0.0) {
        return Err(CliError::Usage(format!("v0 must be positive, got {v0}")));
    }
    if !(delta_e > 0.0) {
        return Err(CliError::Usage(format!("delta_e must be positive, got {delta_e}")));
    }
    if !(tau > 0.0) {
        return Err(CliError::Usage(format!("tau must be positive, got {tau}")));
    }

    // A point value of lambda_t (direct, or through e_r) suppresses the
    // lambda_t sweep axis.
    let fixed_lambda_t = match (a.lambda_t.or(if a.e_r.is_some() { None } else { file.lambda_t }),
                                a.e_r.or(file.e_r)) {
        (Some(lt), _) => {
            if !(lt >= 0.0) {
                return Err(CliError::Usage(format!("lambda_t must be >= 0, got {lt}")));
            }
            Some(lt)
        }
        (None, Some(e_r)) => {
            if !(e_r > 0.0) {
                return Err(CliError::Usage(format!("e_r must be positive, got {e_r}")));
            }
            Some(delta_e * delta_e / (2.0 * tau * e_r * e_r))
        }
        (None, None) => None,
    };

    let b = a.b.or(file.b).unwrap_or(0.75);
    if !(0.0..=1.0).contains(&b) {
        return Err(CliError::Usage(format!("b must lie in [0, 1], got {b}")));
    }

    let cuts = parse_cuts(a.cut.as_deref().or(file.cut.as_deref()).unwrap_or("all"))?;

    let scan_tau = match (a.scan_tau_min, a.scan_tau_max) {
        (Some(lo), Some(hi)) => Some((lo, hi, a.scan_tau_steps.unwrap_or(50))),
        (None, None) => None,
        _ => {
            return Err(CliError::Usage(
                "--scan-tau-min and --scan-tau-max must be given together".into(),
            ))
        }
    };

    let (lt_min_default, lt_max_default, lt_steps_default) = match cli.command {
        Command::PassageTime(_) => (0.1, 12.0, 120),
        Command::Correlations(_) => (0.1, 4.0, 40),
        _ => (0.0, 8.0, 5),
    };

    Ok(Options {
        v0,
        delta_e,
        tau,
        fixed_lambda_t,
        b,
        a_phase: a.a_phase.or(file.a_phase).unwrap_or(0.0),
        b_phase: a.b_phase.or(file.b_phase).unwrap_or(0.0),
        cuts,
        t_min: a.t_min.or(file.t_min).unwrap_or(0.0),
        t_max: a.t_max.or(file.t_max).unwrap_or(tau),
        t_steps: a.t_steps.or(file.t_steps).unwrap_or(match cli.command {
            Command::Correlations(_) => 81,
            _ => 201,
        }),
        lt_min: a.lt_min.or(file.lt_min).unwrap_or(lt_min_default),
        lt_max: a.lt_max.or(file.lt_max).unwrap_or(lt_max_default),
        lt_steps: a.lt_steps.or(file.lt_steps).unwrap_or(lt_steps_default),
        b_min: a.b_min.or(file.b_min).unwrap_or(0.0),
        b_max: a.b_max.or(file.b_max).unwrap_or(1.0),
        b_steps: a.b_steps.or(file.b_steps).unwrap_or(51),
        fig3: a.fig3,
        verify: a.verify,
        scan_tau,
        out: a.out.clone().or(file.out),
    })
}
