//! `probabilities`: P11, P10 and the detector share over a t x lambda_t
//! grid; `--verify` re-checks every row against the integrating oracle.

use nalgebra::Vector2;
use qmeas_core::dynamics::{transition_probabilities, MeasurementRates, SystemConfig};
use qmeas_core::oracles::{ode_amplitudes_at, IntegratorSettings};
use qmeas_core::Complex64;

use crate::config::Options;
use crate::output::{num, row, CsvWriter};
use crate::sweep::Axis;
use crate::CliError;

const ORACLE_TOL: f64 = 1e-8;

pub fn run(opts: &Options) -> Result<(), CliError> {
    let times = Axis::new("t", opts.t_min, opts.t_max, opts.t_steps)?.values();
    let lts = super::lambda_t_values(opts)?;

    let mut w =
        CsvWriter::create(opts.out.as_deref(), "t,lambda_t,p11,p10,p_detector,regime")?;
    for &t in &times {
        for &lt in &lts {
            let rates = MeasurementRates::resonant_from_lambda_t(lt, opts.v0)?;
            let (p11, p10) = transition_probabilities(&rates, opts.v0, t)?;
            w.line(&row(&[
                num(t),
                num(lt),
                num(p11),
                num(p10),
                num(1.0 - p11 - p10),
                rates.regime(opts.v0).to_string(),
            ]))?;
        }
    }
    w.finish()?;

    if opts.verify {
        let max_dev = oracle_deviation(opts, &times, &lts)?;
        if max_dev > ORACLE_TOL {
            return Err(CliError::Verification(format!(
                "closed-form probabilities deviate from the integrating oracle by {max_dev:.3e} \
                 (tolerance {ORACLE_TOL:.0e})"
            )));
        }
        eprintln!("verify: probabilities match the integrating oracle (max dev {max_dev:.3e})");
    }
    Ok(())
}

fn oracle_deviation(opts: &Options, times: &[f64], lts: &[f64]) -> Result<f64, CliError> {
    let settings = IntegratorSettings::default();
    let c0 = Vector2::new(Complex64::ZERO, Complex64::ONE);
    // The sweep's tau only bounds the nominal measurement window; the
    // rate lambda_t fixes the dynamics, so reuse it for the oracle run.
    let mut max_dev: f64 = 0.0;
    for &lt in lts {
        let cfg =
            SystemConfig::resonant_from_lambda_t(opts.delta_e, opts.v0, opts.tau, lt)?;
        let rates = cfg.rates()?;
        let amps = ode_amplitudes_at(&cfg, c0, times, &settings)?;
        for (t, a) in times.iter().zip(&amps) {
            let (p11, p10) = transition_probabilities(&rates, opts.v0, *t)?;
            max_dev = max_dev.max((a[1].norm_sqr() - p11).abs());
            max_dev = max_dev.max((a[0].norm_sqr() - p10).abs());
        }
    }
    Ok(max_dev)
}
