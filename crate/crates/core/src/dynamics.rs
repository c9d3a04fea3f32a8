//! Closed-form dynamics of the measured two-level system.
//!
//! A two-level system with energies `e1`, `e2` is driven by an oscillatory
//! coupling `v0 e^{±iωt}` while its energy is continuously monitored for a
//! duration `tau` with precision (standard error) `e_r`. The measurement
//! back-action enters as imaginary level shifts with rates
//! `λ_i = (E_i − E)² / (2 τ E_r²)`, turning the generator non-Hermitian.
//!
//! At resonance (`ω = ΔE`) and with the measured energy at `e1` the
//! population transfer is governed by the single parameter
//! `λ_t = ΔE² / (2 τ E_r²)`: oscillatory (coherent tunneling) for
//! `λ_t < 4 v0`, overdamped (incoherent tunneling) for `λ_t > 4 v0`, with
//! both branches merging at the exceptional point `λ_t = 4 v0` where the
//! two dressed eigenvectors coalesce.

use nalgebra::{Matrix2, Vector2};
use num_complex::Complex64;
// Unused whenever a dependency links std (the inherent f64 methods win),
// required for the pure no_std build.
#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result};

/// Relative half-width of the band around `λ_t = 4 v0` treated as the
/// exceptional point. Inside the band the polynomial (κ₀ → 0) forms are
/// used, which are the exact limits of both tunneling branches.
pub const EP_BAND: f64 = 1e-9;

/// Physical parameters of the measured two-level system (`ħ = 1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemConfig {
    /// Energy of level `|0⟩`.
    pub e1: f64,
    /// Energy of level `|1⟩`.
    pub e2: f64,
    /// Real coupling amplitude, `v0 > 0`.
    pub v0: f64,
    /// Drive frequency of the coupling.
    pub omega: f64,
    /// Measurement duration, `tau > 0`.
    pub tau: f64,
    /// Measurement precision (standard error), `e_r > 0`. `f64::INFINITY`
    /// is accepted and reproduces the unmeasured (Rabi) limit.
    pub e_r: f64,
    /// Measured energy target. Defaults to `e1` in the constructors, which
    /// makes `λ₁ = 0` and `Ω = λ_t = λ₂`.
    pub e_meas: f64,
}

impl SystemConfig {
    /// General constructor; the measured energy defaults to `e1`.
    pub fn new(e1: f64, e2: f64, v0: f64, omega: f64, tau: f64, e_r: f64) -> Result<Self> {
        let cfg = Self { e1, e2, v0, omega, tau, e_r, e_meas: e1 };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Resonant configuration: `e1 = 0`, `e2 = ω = delta_e`.
    pub fn resonant(delta_e: f64, v0: f64, tau: f64, e_r: f64) -> Result<Self> {
        Self::new(0.0, delta_e, v0, delta_e, tau, e_r)
    }

    /// Resonant configuration built from the back-action rate `λ_t`
    /// instead of the precision; `e_r = ΔE / sqrt(2 τ λ_t)` (infinite for
    /// `λ_t = 0`).
    pub fn resonant_from_lambda_t(delta_e: f64, v0: f64, tau: f64, lambda_t: f64) -> Result<Self> {
        if !(lambda_t >= 0.0) {
            return Err(Error::InvalidParameter { name: "lambda_t", value: lambda_t });
        }
        let e_r = if lambda_t == 0.0 {
            f64::INFINITY
        } else {
            delta_e / (2.0 * tau * lambda_t).sqrt()
        };
        Self::resonant(delta_e, v0, tau, e_r)
    }

    /// Overrides the measured energy target.
    pub fn with_measured_energy(mut self, e_meas: f64) -> Self {
        self.e_meas = e_meas;
        self
    }

    /// Level splitting `ΔE = e2 − e1`.
    pub fn delta_e(&self) -> f64 {
        self.e2 - self.e1
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [
            ("e1", self.e1),
            ("e2", self.e2),
            ("omega", self.omega),
            ("e_meas", self.e_meas),
        ];
        for (name, value) in finite {
            if !value.is_finite() {
                return Err(Error::InvalidParameter { name, value });
            }
        }
        if !(self.v0 > 0.0) || !self.v0.is_finite() {
            return Err(Error::InvalidParameter { name: "v0", value: self.v0 });
        }
        if !(self.tau > 0.0) || !self.tau.is_finite() {
            return Err(Error::InvalidParameter { name: "tau", value: self.tau });
        }
        // e_r = +inf is the unmeasured limit and is allowed.
        if !(self.e_r > 0.0) {
            return Err(Error::InvalidParameter { name: "e_r", value: self.e_r });
        }
        Ok(())
    }

    /// Measurement-induced rates and propagator parameters for this
    /// configuration.
    pub fn rates(&self) -> Result<MeasurementRates> {
        self.validate()?;
        let denom = 2.0 * self.tau * self.e_r * self.e_r;
        let lambda1 = (self.e1 - self.e_meas).powi(2) / denom;
        let lambda2 = (self.e2 - self.e_meas).powi(2) / denom;
        let lambda_t = self.delta_e().powi(2) / denom;
        let omega_cap = lambda2 - lambda1;
        let q = Complex64::new(0.5 * (self.omega - self.delta_e()), 0.25 * omega_cap);
        Ok(MeasurementRates::from_q(lambda1, lambda2, lambda_t, omega_cap, q, self.v0))
    }

    /// Critical measurement precision at which the exceptional point
    /// appears: `E_c = ΔE / (2 sqrt(2 τ v0))`. Measuring more sharply than
    /// `E_c` drives the system into incoherent tunneling.
    pub fn critical_precision(&self) -> Result<f64> {
        self.validate()?;
        let delta_e = self.delta_e();
        if !(delta_e > 0.0) {
            return Err(Error::InvalidParameter { name: "delta_e", value: delta_e });
        }
        Ok(delta_e / (2.0 * (2.0 * self.tau * self.v0).sqrt()))
    }
}

/// Decay rates and complex propagator parameters derived from a
/// [`SystemConfig`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementRates {
    /// Decay rate of level `|0⟩`, `(e1 − E)² / (2 τ e_r²)`.
    pub lambda1: f64,
    /// Decay rate of level `|1⟩`, `(e2 − E)² / (2 τ e_r²)`.
    pub lambda2: f64,
    /// Precision parameter `λ_t = ΔE² / (2 τ e_r²)`.
    pub lambda_t: f64,
    /// `Ω = λ₂ − λ₁`.
    pub omega_cap: f64,
    /// Complex detuning `q = ½ (ω − ΔE + iΩ/2)`.
    pub q: Complex64,
    /// `κ = sqrt(q² + v0²)` (principal branch).
    pub kappa: Complex64,
    /// `cos θ = q / κ`. Undefined (NaN) exactly at the exceptional point
    /// where `κ = 0`; the propagator never divides by `κ`.
    pub cos_theta: Complex64,
    /// Resonant rate `κ₀ = sqrt(|v0² − (λ_t/4)²|)`, real and non-negative.
    /// The regime tag selects the trigonometric or hyperbolic branch.
    pub kappa0: f64,
}

impl MeasurementRates {
    fn from_q(
        lambda1: f64,
        lambda2: f64,
        lambda_t: f64,
        omega_cap: f64,
        q: Complex64,
        v0: f64,
    ) -> Self {
        let kappa = (q * q + v0 * v0).sqrt();
        let cos_theta = q / kappa;
        let kappa0 = (v0 * v0 - (lambda_t / 4.0).powi(2)).abs().sqrt();
        Self { lambda1, lambda2, lambda_t, omega_cap, q, kappa, cos_theta, kappa0 }
    }

    /// Rates at resonance with the measured energy at `e1`, parameterized
    /// directly by `λ_t`. Useful for sweeps where `λ_t` is the independent
    /// axis.
    pub fn resonant_from_lambda_t(lambda_t: f64, v0: f64) -> Result<Self> {
        if !(lambda_t >= 0.0) || !lambda_t.is_finite() {
            return Err(Error::InvalidParameter { name: "lambda_t", value: lambda_t });
        }
        if !(v0 > 0.0) || !v0.is_finite() {
            return Err(Error::InvalidParameter { name: "v0", value: v0 });
        }
        let q = Complex64::new(0.0, 0.25 * lambda_t);
        Ok(Self::from_q(0.0, lambda_t, lambda_t, lambda_t, q, v0))
    }

    /// Tunneling regime for coupling `v0`.
    pub fn regime(&self, v0: f64) -> Regime {
        Regime::classify(self.lambda_t, v0)
    }
}

/// Tunneling regime of the measured system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `v0 > λ_t / 4`: oscillatory population transfer.
    Coherent,
    /// `v0 < λ_t / 4`: overdamped population transfer.
    Incoherent,
    /// `|4 v0 − λ_t|` within the [`EP_BAND`]: eigenvalues and eigenvectors
    /// of the generator coalesce.
    ExceptionalPoint,
}

impl Regime {
    pub fn classify(lambda_t: f64, v0: f64) -> Self {
        let four_v0 = 4.0 * v0;
        if (four_v0 - lambda_t).abs() <= EP_BAND * four_v0.max(1.0) {
            Regime::ExceptionalPoint
        } else if lambda_t < four_v0 {
            Regime::Coherent
        } else {
            Regime::Incoherent
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Coherent => "coherent",
            Regime::Incoherent => "incoherent",
            Regime::ExceptionalPoint => "exceptional-point",
        }
    }
}

impl core::fmt::Display for Regime {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Regime-matched real factors of the resonant propagator acting on the
/// initial state `|1⟩`: returns `(u1, u0)` where the surviving amplitude is
/// `e^{-λ_t t/4} u1` and the transferred amplitude is `-i e^{-λ_t t/4} u0`.
pub(crate) fn resonant_factors(lambda_t: f64, v0: f64, t: f64) -> (f64, f64) {
    match Regime::classify(lambda_t, v0) {
        Regime::ExceptionalPoint => {
            let s = lambda_t * t / 4.0;
            (1.0 - s, v0 * t)
        }
        Regime::Coherent => {
            let k0 = (v0 * v0 - (lambda_t / 4.0).powi(2)).sqrt();
            let (sin, cos) = (k0 * t).sin_cos();
            (cos - lambda_t / (4.0 * k0) * sin, v0 / k0 * sin)
        }
        Regime::Incoherent => {
            let k0 = ((lambda_t / 4.0).powi(2) - v0 * v0).sqrt();
            let (sinh, cosh) = ((k0 * t).sinh(), (k0 * t).cosh());
            (cosh - lambda_t / (4.0 * k0) * sinh, v0 / k0 * sinh)
        }
    }
}

/// Transition probabilities `(P₁₁, P₁₀)` at resonance for the initial
/// state `|1⟩`: the probability to remain in `|1⟩` and the probability to
/// have tunneled to `|0⟩` at time `t`.
///
/// Uses the regime-matched closed forms with the common decay envelope
/// `e^{-λ_t t/2}`; `P₁₁ + P₁₀ ≤ 1`, with equality only in the unmeasured
/// limit `λ_t = 0`. Assumes the measured energy at `e1` (so `λ_t` is the
/// single effective decay parameter).
pub fn transition_probabilities(rates: &MeasurementRates, v0: f64, t: f64) -> Result<(f64, f64)> {
    if t < 0.0 || t.is_nan() {
        return Err(Error::NegativeTime { t });
    }
    if !(v0 > 0.0) || !v0.is_finite() {
        return Err(Error::InvalidParameter { name: "v0", value: v0 });
    }
    let (u1, u0) = resonant_factors(rates.lambda_t, v0, t);
    let envelope = (-rates.lambda_t * t / 2.0).exp();
    Ok((envelope * u1 * u1, envelope * u0 * u0))
}

/// Population difference `P₁₁ − P₁₀`. At the exceptional point this equals
/// `(1 − λ_t t/2) e^{-λ_t t/2}`.
pub fn population_difference(rates: &MeasurementRates, v0: f64, t: f64) -> Result<f64> {
    let (p11, p10) = transition_probabilities(rates, v0, t)?;
    Ok(p11 - p10)
}

/// `sin(κ t) / κ` with the removable singularity at `κ = 0` filled in.
fn sinc_kappa(kappa: Complex64, t: f64) -> Complex64 {
    if kappa.norm_sqr() == 0.0 {
        Complex64::new(t, 0.0)
    } else {
        (kappa * t).sin() / kappa
    }
}

/// The 2×2 propagator of the interaction-picture coefficients at time `t`,
/// valid for any drive frequency and measured energy:
///
/// ```text
/// [ cos κt − i q s(t)    −i v0 s(t)       ]          sin κt
/// [ −i v0 s(t)           cos κt + i q s(t)]   s(t) = ------
/// ```                                                  κ
///
/// Its determinant is `cos²κt + sin²κt = 1` for every complex `κ`.
pub fn propagator_matrix(rates: &MeasurementRates, v0: f64, t: f64) -> Matrix2<Complex64> {
    let cos_kt = (rates.kappa * t).cos();
    let s = sinc_kappa(rates.kappa, t);
    let i = Complex64::i();
    Matrix2::new(
        cos_kt - i * rates.q * s,
        -i * v0 * s,
        -i * v0 * s,
        cos_kt + i * rates.q * s,
    )
}

/// Applies [`propagator_matrix`] to the initial coefficient pair
/// `c0 = (C₁(0), C₂(0))` in the `{|0⟩, |1⟩}` ordering.
pub fn general_propagator(
    rates: &MeasurementRates,
    v0: f64,
    c0: Vector2<Complex64>,
    t: f64,
) -> Vector2<Complex64> {
    propagator_matrix(rates, v0, t) * c0
}

/// Full physical amplitudes `(A₁, A₂)` on `{|0⟩, |1⟩}` at time `t`,
/// including the decaying phase prefactors
/// `A₁ = e^{-i(e1 - iλ₁/2)t} e^{+iqt} C₁`,
/// `A₂ = e^{-i(e2 - iλ₂/2)t} e^{-iqt} C₂`.
///
/// Both amplitude moduli carry the common envelope `e^{-(λ₁+λ₂)t/4}`; at
/// resonance with the measured energy at `e1`, `|A₂|² = P₁₁` and
/// `|A₁|² = P₁₀`. This is the exact solution of the non-Hermitian
/// Schrödinger equation integrated by the oracle module.
pub fn amplitudes(cfg: &SystemConfig, c0: Vector2<Complex64>, t: f64) -> Result<Vector2<Complex64>> {
    let rates = cfg.rates()?;
    let u = general_propagator(&rates, cfg.v0, c0, t);
    let i = Complex64::i();
    let h1 = Complex64::new(cfg.e1, -rates.lambda1 / 2.0);
    let h2 = Complex64::new(cfg.e2, -rates.lambda2 / 2.0);
    let pref1 = (-i * h1 * t + i * rates.q * t).exp();
    let pref2 = (-i * h2 * t - i * rates.q * t).exp();
    Ok(Vector2::new(pref1 * u[0], pref2 * u[1]))
}

/// Passage time: the smallest `t > 0` at which the survival probability
/// `P₁₁` vanishes, at resonance.
///
/// - coherent: `τ_p = atan(4κ₀/λ_t) / κ₀`
/// - incoherent: `τ_p = atanh(4κ₀/λ_t) / κ₀`
/// - exceptional point: `τ_p = 4 / λ_t`
/// - `λ_t = 0` returns the Rabi limit `π / (2 v0)`.
pub fn passage_time(rates: &MeasurementRates, v0: f64) -> Result<f64> {
    if !(v0 > 0.0) || !v0.is_finite() {
        return Err(Error::InvalidParameter { name: "v0", value: v0 });
    }
    let lt = rates.lambda_t;
    if lt == 0.0 {
        return Ok(core::f64::consts::FRAC_PI_2 / v0);
    }
    Ok(match Regime::classify(lt, v0) {
        Regime::ExceptionalPoint => 4.0 / lt,
        Regime::Coherent => {
            let k0 = (v0 * v0 - (lt / 4.0).powi(2)).sqrt();
            (4.0 * k0 / lt).atan() / k0
        }
        Regime::Incoherent => {
            let k0 = ((lt / 4.0).powi(2) - v0 * v0).sqrt();
            (4.0 * k0 / lt).atanh() / k0
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn unit_rates(lambda_t: f64) -> MeasurementRates {
        MeasurementRates::resonant_from_lambda_t(lambda_t, 1.0).unwrap()
    }

    #[test]
    fn lambda_t_from_config() {
        // At E_r equal to the critical precision, λ_t = 4 v0.
        let cfg = SystemConfig::resonant(1.0, 1.0, 2.0, 0.25).unwrap();
        let rates = cfg.rates().unwrap();
        assert_abs_diff_eq!(rates.lambda_t, 4.0, epsilon = 1e-12);
        assert_eq!(rates.lambda1, 0.0);
        assert_abs_diff_eq!(rates.lambda2, rates.lambda_t, epsilon = 0.0);
        assert_abs_diff_eq!(rates.omega_cap, rates.lambda_t, epsilon = 0.0);

        let cfg = SystemConfig::resonant(1.0, 1.0, 8.0, 0.25).unwrap();
        assert_abs_diff_eq!(cfg.rates().unwrap().lambda_t, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn weak_measurement_limit() {
        let cfg = SystemConfig::resonant(1.0, 1.0, 2.0, 1e9).unwrap();
        let rates = cfg.rates().unwrap();
        assert!(rates.lambda1 == 0.0 && rates.lambda2 < 1e-18 && rates.lambda_t < 1e-18);

        let cfg = SystemConfig::resonant(1.0, 1.0, 2.0, f64::INFINITY).unwrap();
        let rates = cfg.rates().unwrap();
        assert_eq!(rates.lambda_t, 0.0);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(SystemConfig::resonant(1.0, 1.0, -2.0, 0.25).is_err());
        assert!(SystemConfig::resonant(1.0, 1.0, 2.0, 0.0).is_err());
        assert!(SystemConfig::resonant(1.0, 0.0, 2.0, 0.25).is_err());
        assert!(SystemConfig::new(0.0, 1.0, 1.0, 1.0, f64::NAN, 0.25).is_err());
    }

    #[test]
    fn regime_classification() {
        assert_eq!(Regime::classify(1.0, 1.0), Regime::Coherent);
        assert_eq!(Regime::classify(8.0, 1.0), Regime::Incoherent);
        assert_eq!(Regime::classify(4.0, 1.0), Regime::ExceptionalPoint);
        assert_eq!(Regime::classify(4.0 + 1e-10, 1.0), Regime::ExceptionalPoint);
        assert_eq!(Regime::classify(4.0 * (1.0 + 1e-6), 1.0), Regime::Incoherent);
    }

    #[test]
    fn critical_precision_values() {
        let cfg = SystemConfig::resonant(1.0, 1.0, 2.0, 1.0).unwrap();
        assert_eq!(cfg.critical_precision().unwrap(), 0.25);
        let cfg = SystemConfig::resonant(2.0, 1.0, 2.0, 1.0).unwrap();
        assert_eq!(cfg.critical_precision().unwrap(), 0.5);
        let cfg = SystemConfig::resonant(1.0, 1.0, 8.0, 1.0).unwrap();
        assert_eq!(cfg.critical_precision().unwrap(), 0.125);
        // Round trip: measuring exactly at E_c lands on the exceptional point.
        let e_c = cfg.critical_precision().unwrap();
        let rates = SystemConfig::resonant(1.0, 1.0, 8.0, e_c).unwrap().rates().unwrap();
        assert!((rates.lambda_t - 4.0).abs() <= 1e-12);
        assert_eq!(rates.regime(1.0), Regime::ExceptionalPoint);
    }

    #[test]
    fn rabi_limit_probabilities() {
        let rates = unit_rates(0.0);
        for &t in &[0.0, 0.3, 1.0, core::f64::consts::FRAC_PI_2, 2.5] {
            let (p11, p10) = transition_probabilities(&rates, 1.0, t).unwrap();
            assert_abs_diff_eq!(p11, t.cos().powi(2), epsilon = 1e-14);
            assert_abs_diff_eq!(p10, t.sin().powi(2), epsilon = 1e-14);
        }
    }

    #[test]
    fn exceptional_point_probabilities() {
        let rates = unit_rates(4.0);
        let (p11, p10) = transition_probabilities(&rates, 1.0, 1.0).unwrap();
        assert_abs_diff_eq!(p11, 0.0, epsilon = 1e-300);
        assert_abs_diff_eq!(p10, (-2.0_f64).exp(), epsilon = 1e-15);
    }

    #[test]
    fn population_difference_exceptional_point() {
        let rates = unit_rates(4.0);
        assert_eq!(population_difference(&rates, 1.0, 0.0).unwrap(), 1.0);
        assert_abs_diff_eq!(population_difference(&rates, 1.0, 0.5).unwrap(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            population_difference(&rates, 1.0, 1.0).unwrap(),
            -(-2.0_f64).exp(),
            epsilon = 1e-15
        );
        // Closed form (1 − λ_t t/2) e^{-λ_t t/2} across a time grid.
        for k in 0..=40 {
            let t = k as f64 * 0.1;
            let expect = (1.0 - 2.0 * t) * (-2.0 * t).exp();
            assert_abs_diff_eq!(
                population_difference(&rates, 1.0, t).unwrap(),
                expect,
                epsilon = 1e-13
            );
        }
    }

    #[test]
    fn coherent_probabilities_frozen() {
        // Frozen from the adaptive integrator at rel_tol 1e-12.
        let rates = unit_rates(2.0);
        let (p11, p10) = transition_probabilities(&rates, 1.0, 1.0).unwrap();
        assert_abs_diff_eq!(p11, 0.0159246627187167, epsilon = 1e-12);
        assert_abs_diff_eq!(p10, 0.2846299272391516, epsilon = 1e-12);
    }

    #[test]
    fn negative_time_rejected() {
        let rates = unit_rates(1.0);
        assert!(matches!(
            transition_probabilities(&rates, 1.0, -0.5),
            Err(Error::NegativeTime { .. })
        ));
    }

    #[test]
    fn propagator_identity_at_t0() {
        let rates = unit_rates(2.0);
        let c0 = Vector2::new(Complex64::new(0.6, 0.1), Complex64::new(0.2, -0.5));
        let c = general_propagator(&rates, 1.0, c0, 0.0);
        assert_eq!(c, c0);
    }

    #[test]
    fn propagator_rabi_limit() {
        let rates = unit_rates(0.0);
        let c0 = Vector2::new(Complex64::ZERO, Complex64::ONE);
        for &t in &[0.2, 1.0, 2.7] {
            let c = general_propagator(&rates, 1.0, c0, t);
            assert_abs_diff_eq!(c[1].norm_sqr(), t.cos().powi(2), epsilon = 1e-14);
        }
    }

    #[test]
    fn propagator_determinant_is_one() {
        // Holds for arbitrary complex parameters, including at the
        // exceptional point where κ = 0. The identity's f64 conditioning
        // degrades like e^{2|Im κt|}, so draws stay in a moderate envelope.
        for &lt in &[0.0, 0.5, 2.0, 4.0, 6.0, 8.0] {
            let rates = unit_rates(lt);
            for &t in &[0.1, 1.0, 2.0] {
                let m = propagator_matrix(&rates, 1.0, t);
                let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
                assert_abs_diff_eq!(det.re, 1.0, epsilon = 1e-12);
                assert_abs_diff_eq!(det.im, 0.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn cos_theta_identity() {
        let cfg = SystemConfig::new(0.2, 1.4, 0.8, 0.9, 3.0, 0.3).unwrap();
        let rates = cfg.rates().unwrap();
        let lhs = rates.cos_theta * rates.cos_theta
            + Complex64::from(cfg.v0 * cfg.v0) / (rates.kappa * rates.kappa);
        assert_abs_diff_eq!(lhs.re, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(lhs.im, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn amplitudes_match_closed_form_probabilities() {
        let c0 = Vector2::new(Complex64::ZERO, Complex64::ONE);
        for &lt in &[0.0, 0.5, 2.0, 4.0, 8.0] {
            let cfg = SystemConfig::resonant_from_lambda_t(1.0, 1.0, 8.0, lt).unwrap();
            let rates = cfg.rates().unwrap();
            for k in 0..=16 {
                let t = k as f64 * 0.5;
                let a = amplitudes(&cfg, c0, t).unwrap();
                let (p11, p10) = transition_probabilities(&rates, 1.0, t).unwrap();
                assert_abs_diff_eq!(a[1].norm_sqr(), p11, epsilon = 1e-12);
                assert_abs_diff_eq!(a[0].norm_sqr(), p10, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn passage_time_values() {
        let rates = unit_rates(4.0);
        assert_eq!(passage_time(&rates, 1.0).unwrap(), 1.0);

        let rates = unit_rates(0.0);
        assert_eq!(passage_time(&rates, 1.0).unwrap(), core::f64::consts::FRAC_PI_2);

        let rates = unit_rates(1e-9);
        assert_abs_diff_eq!(
            passage_time(&rates, 1.0).unwrap(),
            core::f64::consts::FRAC_PI_2,
            epsilon = 1e-9
        );

        // Incoherent branch: atanh(sqrt(3)/2) / (sqrt(3)).
        let rates = unit_rates(8.0);
        let k0 = 3.0_f64.sqrt();
        let expect = (4.0 * k0 / 8.0).atanh() / k0;
        assert_relative_eq!(passage_time(&rates, 1.0).unwrap(), expect, epsilon = 1e-15);
        // Frozen from the integrating root finder at rel_tol 1e-12.
        assert_abs_diff_eq!(expect, 0.760345996301, epsilon = 1e-9);
    }

    #[test]
    fn passage_time_zeroes_survival() {
        for &lt in &[0.5, 2.0, 3.9, 4.0, 4.1, 8.0, 25.0] {
            let rates = unit_rates(lt);
            let tp = passage_time(&rates, 1.0).unwrap();
            let (p11, _) = transition_probabilities(&rates, 1.0, tp).unwrap();
            assert!(p11 <= 1e-12, "P11({tp}) = {p11} at lambda_t = {lt}");
        }
    }

    #[test]
    fn passage_time_monotone_in_lambda_t() {
        let mut prev = f64::INFINITY;
        for k in 1..=200 {
            let lt = 40.0 * k as f64 / 200.0;
            let tp = passage_time(&unit_rates(lt), 1.0).unwrap();
            assert!(tp < prev, "tau_p not decreasing at lambda_t = {lt}");
            prev = tp;
        }
    }
}
