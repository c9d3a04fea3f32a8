//! `correlations`: concurrence and quantum correlation per cut.
//!
//! Default mode sweeps t x lambda_t at fixed b; `--fig3` fixes lambda_t
//! (at the exceptional point unless overridden) and sweeps t x b.

use qmeas_core::correlations::{
    concurrence_closed_form, quantum_correlation_closed_form, tripartite_amplitudes,
};
use qmeas_core::dynamics::MeasurementRates;

use crate::config::Options;
use crate::output::{num, row, CsvWriter};
use crate::sweep::Axis;
use crate::CliError;

pub fn run(opts: &Options) -> Result<(), CliError> {
    let times = Axis::new("t", opts.t_min, opts.t_max, opts.t_steps)?.values();

    let mut header = String::from("t,lambda_t,b");
    for cut in &opts.cuts {
        header.push_str(&format!(",q_{0},c_{0}", cut.as_str()));
    }
    let mut w = CsvWriter::create(opts.out.as_deref(), &header)?;

    if opts.fig3 {
        let lt = opts.fixed_lambda_t.unwrap_or(4.0 * opts.v0);
        let bs = Axis::new("b", opts.b_min, opts.b_max, opts.b_steps)?.values();
        for &t in &times {
            for &b in &bs {
                emit(&mut w, opts, t, lt, b)?;
            }
        }
    } else {
        let lts = super::lambda_t_values(opts)?;
        for &t in &times {
            for &lt in &lts {
                emit(&mut w, opts, t, lt, opts.b)?;
            }
        }
    }
    w.finish()
}

fn emit(w: &mut CsvWriter, opts: &Options, t: f64, lt: f64, b: f64) -> Result<(), CliError> {
    let rates = MeasurementRates::resonant_from_lambda_t(lt, opts.v0)?;
    let amps = tripartite_amplitudes(&rates, opts.v0, t)?;
    let pair = super::initial_pair(b, opts.a_phase, opts.b_phase)?;
    let mut fields = vec![num(t), num(lt), num(b)];
    for cut in &opts.cuts {
        let amp = amps.for_cut(*cut);
        fields.push(num(quantum_correlation_closed_form(&pair, amp)));
        fields.push(num(concurrence_closed_form(&pair, amp)));
    }
    w.line(&row(&fields))
}
