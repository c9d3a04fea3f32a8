//! Command-line surface.

use std::path::PathBuf;

use clap::{Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "qmeas",
    version,
    about = "Continuously measured two-level system: passage times, transition \
             probabilities and correlation transfer across the exceptional point"
)]
pub struct Cli {
    /// Plain-text key=value config file; flags override its entries.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Passage time versus the measurement back-action rate lambda_t (CSV).
    PassageTime(CommonArgs),
    /// Transition probabilities over a t x lambda_t grid (CSV).
    Probabilities(CommonArgs),
    /// Concurrence and quantum correlation per cut over t x lambda_t,
    /// or t x b at fixed lambda_t with --fig3 (CSV).
    Correlations(CommonArgs),
    /// Critical measurement precision report, optionally scanning tau.
    EpLocate(CommonArgs),
    /// Run every closed-form-versus-oracle comparison; exits 2 on failure.
    Verify(CommonArgs),
}

impl Command {
    pub fn args(&self) -> &CommonArgs {
        match self {
            Command::PassageTime(a)
            | Command::Probabilities(a)
            | Command::Correlations(a)
            | Command::EpLocate(a)
            | Command::Verify(a) => a,
        }
    }
}

#[derive(clap::Args, Debug, Default)]
pub struct CommonArgs {
    /// Coupling amplitude V0 (> 0).
    #[arg(long)]
    pub v0: Option<f64>,

    /// Level splitting E2 - E1 (> 0).
    #[arg(long)]
    pub delta_e: Option<f64>,

    /// Measurement duration.
    #[arg(long)]
    pub tau: Option<f64>,

    /// Measurement precision; fixes a single back-action rate.
    #[arg(long, conflicts_with = "lambda_t")]
    pub e_r: Option<f64>,

    /// Back-action rate lambda_t; replaces the lambda_t sweep axis with
    /// this single value.
    #[arg(long)]
    pub lambda_t: Option<f64>,

    /// Initial pair amplitude magnitude b in [0, 1] (a = sqrt(1 - b^2)).
    #[arg(long)]
    pub b: Option<f64>,

    /// Phase of a in radians (cancels in every reported quantity).
    #[arg(long)]
    pub a_phase: Option<f64>,

    /// Phase of b in radians (cancels in every reported quantity).
    #[arg(long)]
    pub b_phase: Option<f64>,

    /// Correlation cut: s (system), r (source), d (detector) or all.
    #[arg(long)]
    pub cut: Option<String>,

    #[arg(long)]
    pub t_min: Option<f64>,
    #[arg(long)]
    pub t_max: Option<f64>,
    #[arg(long)]
    pub t_steps: Option<usize>,

    #[arg(long)]
    pub lt_min: Option<f64>,
    #[arg(long)]
    pub lt_max: Option<f64>,
    #[arg(long)]
    pub lt_steps: Option<usize>,

    #[arg(long)]
    pub b_min: Option<f64>,
    #[arg(long)]
    pub b_max: Option<f64>,
    #[arg(long)]
    pub b_steps: Option<usize>,

    /// Fixed lambda_t, sweep t x b instead of t x lambda_t.
    #[arg(long)]
    pub fig3: bool,

    /// Re-check every emitted row against the integrating oracle.
    #[arg(long)]
    pub verify: bool,

    /// Scan tau over [min, max] instead of printing a single report.
    #[arg(long)]
    pub scan_tau_min: Option<f64>,
    #[arg(long)]
    pub scan_tau_max: Option<f64>,
    #[arg(long)]
    pub scan_tau_steps: Option<usize>,

    /// Output CSV path (stdout when omitted).
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}
