pub mod correlations;
pub mod ep_locate;
pub mod passage_time;
pub mod probabilities;
pub mod verify;

use qmeas_core::correlations::InitialPair;
use qmeas_core::Complex64;

use crate::config::Options;
use crate::CliError;

/// Back-action rate values for the sweep, honoring a fixed point value.
pub fn lambda_t_values(opts: &Options) -> Result<Vec<f64>, CliError> {
    match opts.fixed_lambda_t {
        Some(lt) => Ok(vec![lt]),
        None => Ok(crate::sweep::Axis::new("lambda_t", opts.lt_min, opts.lt_max, opts.lt_steps)?
            .values()),
    }
}

/// Initial pair from magnitude `b` and the (observable-neutral) phases.
pub fn initial_pair(b: f64, a_phase: f64, b_phase: f64) -> Result<InitialPair, CliError> {
    if !(0.0..=1.0).contains(&b) {
        return Err(CliError::Usage(format!("b must lie in [0, 1], got {b}")));
    }
    let a_mag = (1.0 - b * b).sqrt();
    InitialPair::new(Complex64::from_polar(a_mag, a_phase), Complex64::from_polar(b, b_phase))
        .map_err(Into::into)
}
