//! `ep-locate`: critical measurement precision report and optional
//! (tau, E_c) scan.

use qmeas_core::dynamics::{passage_time, SystemConfig};

use crate::config::Options;
use crate::output::{num, row, CsvWriter};
use crate::sweep::Axis;
use crate::CliError;

pub fn run(opts: &Options) -> Result<(), CliError> {
    if let Some((lo, hi, steps)) = opts.scan_tau {
        let taus = Axis::new("tau", lo, hi, steps)?.values();
        let mut w = CsvWriter::create(opts.out.as_deref(), "tau,e_c")?;
        for tau in taus {
            let cfg = SystemConfig::resonant(opts.delta_e, opts.v0, tau, 1.0)?;
            w.line(&row(&[num(tau), num(cfg.critical_precision()?)]))?;
        }
        return w.finish();
    }

    let cfg = SystemConfig::resonant(opts.delta_e, opts.v0, opts.tau, 1.0)?;
    let e_c = cfg.critical_precision()?;
    let at_ec = SystemConfig::resonant(opts.delta_e, opts.v0, opts.tau, e_c)?;
    let rates = at_ec.rates()?;
    let tau_p = passage_time(&rates, opts.v0)?;

    println!("critical precision   E_c  = {e_c}");
    println!("  (delta_e = {}, tau = {}, v0 = {})", opts.delta_e, opts.tau, opts.v0);
    println!("back-action rate at E_c   = {} (= 4 v0 = {})", rates.lambda_t, 4.0 * opts.v0);
    println!("regime at E_c             = {}", rates.regime(opts.v0));
    println!("passage time at E_c       = {tau_p}");
    println!("ratio to duration tau     = {}", tau_p / opts.tau);
    Ok(())
}
