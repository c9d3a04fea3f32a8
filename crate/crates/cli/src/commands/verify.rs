//! `verify`: every closed-form-versus-oracle comparison, one line each.
//! Exit status is nonzero iff any comparison exceeds its tolerance.

use nalgebra::Vector2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qmeas_core::correlations::{
    concurrence_closed_form, concurrence_closed_form_raw, entropies_and_mutual_information,
    quantum_correlation_closed_form, wootters_concurrence_general, x_state_density, InitialPair,
};
use qmeas_core::dynamics::{
    passage_time, propagator_matrix, transition_probabilities, MeasurementRates, SystemConfig,
};
use qmeas_core::oracles::{
    discord_brute_force, ode_amplitudes_at, passage_time_root_find, IntegratorSettings,
};
use qmeas_core::Complex64;

use crate::config::Options;
use crate::CliError;

struct Report {
    failures: usize,
}

impl Report {
    fn check(&mut self, name: &str, max_dev: f64, tol: f64) {
        let ok = max_dev <= tol;
        if !ok {
            self.failures += 1;
        }
        println!(
            "verify {name}: {} (max dev = {max_dev:.3e}, tolerance = {tol:.0e})",
            if ok { "PASS" } else { "FAIL" }
        );
    }
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect()
}

pub fn run(opts: &Options) -> Result<(), CliError> {
    let settings = IntegratorSettings::default();
    let v0 = opts.v0;
    let mut report = Report { failures: 0 };

    // Closed-form probabilities against the integrating oracle.
    let times = linspace(0.0, 8.0, 200);
    let c0 = Vector2::new(Complex64::ZERO, Complex64::ONE);
    let mut dev: f64 = 0.0;
    for &lt in &[0.0, 0.5, 2.0, 4.0, 6.0, 8.0] {
        let cfg = SystemConfig::resonant_from_lambda_t(opts.delta_e, v0, 8.0, lt)?;
        let rates = cfg.rates()?;
        let amps = ode_amplitudes_at(&cfg, c0, &times, &settings)?;
        for (t, a) in times.iter().zip(&amps) {
            let (p11, p10) = transition_probabilities(&rates, v0, *t)?;
            dev = dev.max((a[1].norm_sqr() - p11).abs()).max((a[0].norm_sqr() - p10).abs());
        }
    }
    report.check("probabilities vs integration (6 x 200 grid)", dev, 1e-8);

    // Passage times against the integrating root finder.
    let mut dev: f64 = 0.0;
    for &lt in &[1e-6, 0.5, 2.0, 4.0, 6.0, 8.0, 20.0] {
        let cfg = SystemConfig::resonant_from_lambda_t(opts.delta_e, v0, 2.0, lt)?;
        let closed = passage_time(&cfg.rates()?, v0)?;
        let rooted = passage_time_root_find(&cfg, &settings)?;
        dev = dev.max((closed - rooted).abs());
    }
    report.check("passage time vs root finder (7 rates)", dev, 1e-8);

    // Closed-form concurrence against the spin-flip eigenvalue method.
    let mut rng = ChaCha8Rng::seed_from_u64(0x0C0FFEE);
    let mut dev: f64 = 0.0;
    let mut clamp_mismatch = 0usize;
    for _ in 0..200 {
        let u: f64 = rng.gen();
        let pair = InitialPair::new(
            Complex64::from_polar((1.0 - u).sqrt(), rng.gen_range(0.0..6.28)),
            Complex64::from_polar(u.sqrt(), rng.gen_range(0.0..6.28)),
        )?;
        let amp = Complex64::from_polar(rng.gen::<f64>().sqrt(), rng.gen_range(0.0..6.28));
        let closed = concurrence_closed_form(&pair, amp);
        let general = wootters_concurrence_general(&x_state_density(&pair, amp));
        dev = dev.max((closed - general).abs());
        if concurrence_closed_form_raw(&pair, amp) < -1e-10 && general != 0.0 {
            clamp_mismatch += 1;
        }
    }
    report.check("concurrence closed form vs spin-flip (200 draws)", dev, 1e-10);
    report.check("concurrence clamp agreement", clamp_mismatch as f64, 0.0);

    // Quantum correlation against the measurement-optimizing search, and
    // the mutual-information split I = 2 Q.
    let mut q_dev: f64 = 0.0;
    let mut i_dev: f64 = 0.0;
    for b in linspace(0.1, 0.9, 5) {
        let pair = InitialPair::from_real_b(b)?;
        for x in linspace(0.1, 0.9, 5) {
            let amp = Complex64::from(x.sqrt());
            let rho = x_state_density(&pair, amp);
            let q = quantum_correlation_closed_form(&pair, amp);
            let d = discord_brute_force(&rho);
            let i = entropies_and_mutual_information(&rho).mutual_information;
            q_dev = q_dev.max((d.quantum - q).abs());
            i_dev = i_dev.max((i - 2.0 * q).abs());
        }
    }
    report.check("quantum correlation vs brute-force search (5 x 5 grid)", q_dev, 1e-3);
    report.check("mutual information vs 2 Q (5 x 5 grid)", i_dev, 1e-3);

    // Propagator determinant identity on random moderate draws.
    let mut dev: f64 = 0.0;
    for _ in 0..100 {
        let lt = rng.gen_range(0.0..8.0);
        let t = rng.gen_range(0.0..1.8);
        let rates = MeasurementRates::resonant_from_lambda_t(lt, v0)?;
        let m = propagator_matrix(&rates, v0, t);
        let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
        dev = dev.max((det - Complex64::ONE).norm());
    }
    report.check("propagator determinant identity (100 draws)", dev, 1e-12);

    // Critical precision round trip.
    let mut dev: f64 = 0.0;
    for &(delta_e, tau, v) in &[(1.0, 2.0, 1.0), (1.0, 8.0, 1.0), (2.0, 3.0, 0.5)] {
        let cfg = SystemConfig::resonant(delta_e, v, tau, 1.0)?;
        let e_c = cfg.critical_precision()?;
        let rates = SystemConfig::resonant(delta_e, v, tau, e_c)?.rates()?;
        dev = dev.max((rates.lambda_t - 4.0 * v).abs());
    }
    report.check("critical precision round trip", dev, 1e-12);

    if report.failures > 0 {
        return Err(CliError::Verification(format!(
            "{} oracle comparison(s) out of tolerance",
            report.failures
        )));
    }
    println!("verify: all oracle comparisons within tolerance");
    Ok(())
}
