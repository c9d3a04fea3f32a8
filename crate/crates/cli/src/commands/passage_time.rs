//! `passage-time`: tau_p versus lambda_t, with the exceptional-point row
//! inserted exactly when it falls inside the swept range.

use qmeas_core::dynamics::{passage_time, MeasurementRates};

use crate::config::Options;
use crate::output::{num, row, CsvWriter};
use crate::CliError;

pub fn run(opts: &Options) -> Result<(), CliError> {
    let mut lts = super::lambda_t_values(opts)?;
    let ep = 4.0 * opts.v0;
    if opts.fixed_lambda_t.is_none() && opts.lt_min < ep && ep < opts.lt_max {
        if !lts.contains(&ep) {
            lts.push(ep);
            lts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        }
    }

    let mut w = CsvWriter::create(opts.out.as_deref(), "lambda_t,tau_p,regime")?;
    for lt in lts {
        let rates = MeasurementRates::resonant_from_lambda_t(lt, opts.v0)?;
        let tau_p = passage_time(&rates, opts.v0)?;
        w.line(&row(&[num(lt), num(tau_p), rates.regime(opts.v0).to_string()]))?;
    }
    w.finish()
}
