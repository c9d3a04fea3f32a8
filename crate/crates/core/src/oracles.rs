//! Independent numerical cross-checks for the closed forms.
//!
//! - direct adaptive Runge-Kutta integration of the non-Hermitian
//!   Schrödinger equation `i dA/dt = M(t) A` with
//!   `M = [[e1 − iλ₁/2, v0 e^{iωt}], [v0 e^{-iωt}, e2 − iλ₂/2]]`
//!   (the sign conventions reproduce Rabi oscillation at frequency `2 v0`
//!   in the unmeasured limit);
//! - bracketing/bisection passage-time search on the integrated survival
//!   amplitude;
//! - brute-force projective-measurement optimization yielding the
//!   classical correlation and the quantum correlation `Q = I − C`.
//!
//! Nothing here shares code with the closed-form evaluation paths it
//! checks.

use alloc::vec::Vec;

use nalgebra::{Matrix2, Vector2};
use num_complex::Complex64;
// Unused whenever a dependency links std (the inherent f64 methods win),
// required for the pure no_std build.
#[allow(unused_imports)]
use num_traits::Float;

use crate::correlations::{entropies_and_mutual_information, von_neumann_entropy2, TwoQubitDensity};
use crate::dynamics::SystemConfig;
use crate::{Error, Result};

/// Tolerances and step bound for the adaptive integrator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorSettings {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_step: f64,
}

impl Default for IntegratorSettings {
    fn default() -> Self {
        Self { rel_tol: 1e-10, abs_tol: 1e-12, max_step: 0.1 }
    }
}

impl IntegratorSettings {
    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("rel_tol", self.rel_tol),
            ("abs_tol", self.abs_tol),
            ("max_step", self.max_step),
        ] {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::InvalidParameter { name, value });
            }
        }
        Ok(())
    }
}

/// One sampled point of an integrated trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint {
    pub t: f64,
    /// Amplitudes on `{|0⟩, |1⟩}`.
    pub amps: Vector2<Complex64>,
}

type State = Vector2<Complex64>;

struct TwoLevelOde {
    e1: f64,
    e2: f64,
    lambda1: f64,
    lambda2: f64,
    v0: f64,
    omega: f64,
}

impl TwoLevelOde {
    fn from_config(cfg: &SystemConfig) -> Result<Self> {
        let rates = cfg.rates()?;
        Ok(Self {
            e1: cfg.e1,
            e2: cfg.e2,
            lambda1: rates.lambda1,
            lambda2: rates.lambda2,
            v0: cfg.v0,
            omega: cfg.omega,
        })
    }

    fn deriv(&self, t: f64, y: &State) -> State {
        let m11 = Complex64::new(self.e1, -self.lambda1 / 2.0);
        let m22 = Complex64::new(self.e2, -self.lambda2 / 2.0);
        let drive = Complex64::from_polar(self.v0, self.omega * t);
        let minus_i = Complex64::new(0.0, -1.0);
        Vector2::new(
            minus_i * (m11 * y[0] + drive * y[1]),
            minus_i * (drive.conj() * y[0] + m22 * y[1]),
        )
    }
}

// Dormand-Prince 5(4) coefficients.
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
// Difference between the 5th- and the embedded 4th-order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

struct Stepper<'a> {
    ode: &'a TwoLevelOde,
    settings: IntegratorSettings,
    t: f64,
    y: State,
    h: f64,
}

impl<'a> Stepper<'a> {
    fn new(ode: &'a TwoLevelOde, settings: IntegratorSettings, y0: State) -> Self {
        let h = (settings.max_step / 10.0).min(1e-3);
        Self { ode, settings, t: 0.0, y: y0, h }
    }

    /// Advances by one accepted step of size at most `h_cap`.
    fn step(&mut self, h_cap: f64) -> Result<()> {
        let mut h = self.h.min(h_cap).min(self.settings.max_step);
        loop {
            if h < 1e-14 * self.t.abs().max(1.0) {
                return Err(Error::StepSizeUnderflow { t: self.t });
            }
            let mut k = [State::zeros(); 7];
            k[0] = self.ode.deriv(self.t, &self.y);
            for s in 1..7 {
                let mut ys = self.y;
                for (j, kj) in k.iter().enumerate().take(s) {
                    let a = A[s - 1][j];
                    if a != 0.0 {
                        ys += kj * Complex64::from(a * h);
                    }
                }
                k[s] = self.ode.deriv(self.t + C[s] * h, &ys);
            }
            // Stage 7 evaluates at the 5th-order solution (FSAL layout).
            let mut y_new = self.y;
            for (j, kj) in k.iter().enumerate().take(6) {
                let a = A[5][j];
                if a != 0.0 {
                    y_new += kj * Complex64::from(a * h);
                }
            }

            let mut err_vec = State::zeros();
            for (j, kj) in k.iter().enumerate() {
                if E[j] != 0.0 {
                    err_vec += kj * Complex64::from(E[j] * h);
                }
            }
            let mut err: f64 = 0.0;
            for idx in 0..2 {
                let scale = self.settings.abs_tol
                    + self.settings.rel_tol * self.y[idx].norm().max(y_new[idx].norm());
                err = err.max(err_vec[idx].norm() / scale);
            }

            if err <= 1.0 {
                self.t += h;
                self.y = y_new;
                let grow = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
                self.h = (h * grow).min(self.settings.max_step);
                return Ok(());
            }
            h *= (0.9 * err.powf(-0.2)).clamp(0.1, 0.9);
        }
    }

    /// Integrates forward until `t_target`, landing on it exactly.
    fn advance_to(&mut self, t_target: f64) -> Result<()> {
        while self.t < t_target {
            self.step(t_target - self.t)?;
        }
        Ok(())
    }
}

/// Integrates the measured two-level amplitudes from `t = 0` to `t_end`,
/// returning every accepted step (the last point lands on `t_end`
/// exactly). The state norm is non-increasing whenever all `λᵢ ≥ 0`.
pub fn ode_integrate_amplitudes(
    cfg: &SystemConfig,
    c0: Vector2<Complex64>,
    t_end: f64,
    settings: &IntegratorSettings,
) -> Result<Vec<TrajectoryPoint>> {
    if t_end < 0.0 || !t_end.is_finite() {
        return Err(Error::NegativeTime { t: t_end });
    }
    settings.validate()?;
    let ode = TwoLevelOde::from_config(cfg)?;
    let mut stepper = Stepper::new(&ode, *settings, c0);
    let mut out = Vec::new();
    out.push(TrajectoryPoint { t: 0.0, amps: c0 });
    while stepper.t < t_end {
        stepper.step(t_end - stepper.t)?;
        out.push(TrajectoryPoint { t: stepper.t, amps: stepper.y });
    }
    Ok(out)
}

/// Integrated amplitudes at the requested times (which must be
/// non-negative and non-decreasing).
pub fn ode_amplitudes_at(
    cfg: &SystemConfig,
    c0: Vector2<Complex64>,
    times: &[f64],
    settings: &IntegratorSettings,
) -> Result<Vec<Vector2<Complex64>>> {
    settings.validate()?;
    let ode = TwoLevelOde::from_config(cfg)?;
    let mut stepper = Stepper::new(&ode, *settings, c0);
    let mut out = Vec::with_capacity(times.len());
    for &t in times {
        if t < stepper.t || !t.is_finite() {
            return Err(Error::NegativeTime { t });
        }
        stepper.advance_to(t)?;
        out.push(stepper.y);
    }
    Ok(out)
}

/// De-phased survival amplitude: real at resonance, crossing zero
/// linearly at the passage time.
fn survival_signal(e2: f64, t: f64, y: &State) -> f64 {
    (Complex64::from_polar(1.0, e2 * t) * y[1]).re
}

/// Passage time found by integrating the Schrödinger equation and
/// bisecting the first sign change of the de-phased survival amplitude.
/// Searches `t ∈ (0, 10 τ]`; the result brackets the true zero of `P₁₁`
/// to 1e-10 in `t`.
pub fn passage_time_root_find(cfg: &SystemConfig, settings: &IntegratorSettings) -> Result<f64> {
    settings.validate()?;
    let ode = TwoLevelOde::from_config(cfg)?;
    let c0 = Vector2::new(Complex64::ZERO, Complex64::ONE);
    let t_max = 10.0 * cfg.tau;

    let mut stepper = Stepper::new(&ode, *settings, c0);
    let mut t_lo = 0.0;
    let mut y_lo = c0;
    let mut g_lo = survival_signal(cfg.e2, 0.0, &c0);
    loop {
        if stepper.t >= t_max {
            return Err(Error::NoRoot { searched_up_to: t_max });
        }
        stepper.step(t_max - stepper.t)?;
        let g = survival_signal(cfg.e2, stepper.t, &stepper.y);
        if g_lo * g <= 0.0 && g != g_lo {
            let mut t_hi = stepper.t;
            // Bisect, re-integrating the short sub-interval each round.
            while t_hi - t_lo > 1e-11 {
                let t_mid = 0.5 * (t_lo + t_hi);
                let mut sub = Stepper::new(&ode, *settings, y_lo);
                sub.t = t_lo;
                sub.h = ((t_hi - t_lo) / 4.0).min(settings.max_step);
                sub.advance_to(t_mid)?;
                let g_mid = survival_signal(cfg.e2, t_mid, &sub.y);
                if g_lo * g_mid <= 0.0 {
                    t_hi = t_mid;
                } else {
                    t_lo = t_mid;
                    y_lo = sub.y;
                    g_lo = g_mid;
                }
            }
            return Ok(0.5 * (t_lo + t_hi));
        }
        t_lo = stepper.t;
        y_lo = stepper.y;
        g_lo = g;
    }
}

/// Classical and quantum correlations from the brute-force measurement
/// optimization, together with the mutual information they split.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscordResult {
    /// `C = max over projective measurements of S(ρ₁) − Σ p_j S(ρ₁|j)`.
    pub classical: f64,
    /// `Q = I − C`.
    pub quantum: f64,
    pub mutual_information: f64,
}

/// Average conditional entropy of qubit 1 after measuring qubit 2 along
/// the Bloch direction `(theta, phi)`.
fn conditional_entropy(rho: &TwoQubitDensity, theta: f64, phi: f64) -> f64 {
    let m = rho.matrix();
    let (half_sin, half_cos) = (theta / 2.0).sin_cos();
    let e_phi = Complex64::from_polar(1.0, phi);
    // Measurement kets on qubit 2 and their orthogonal complement.
    let kets = [
        [Complex64::from(half_cos), e_phi * half_sin],
        [Complex64::from(half_sin), -e_phi * half_cos],
    ];
    let mut avg = 0.0;
    for ket in kets {
        let mut cond = Matrix2::<Complex64>::zeros();
        for i in 0..2 {
            for j in 0..2 {
                let mut z = Complex64::ZERO;
                for k in 0..2 {
                    for l in 0..2 {
                        z += ket[k].conj() * m[(2 * i + k, 2 * j + l)] * ket[l];
                    }
                }
                cond[(i, j)] = z;
            }
        }
        let p = cond.trace().re;
        if p > 1e-15 {
            let normalized = cond.map(|z| z / p);
            avg += p * von_neumann_entropy2(&normalized);
        }
    }
    avg
}

/// Classical correlation `C` by exhaustive projective-measurement search
/// (64×64 angle grid plus pattern-search refinement below 1e-6 in the
/// angles) and the quantum correlation `Q = I − C`.
pub fn discord_brute_force(rho: &TwoQubitDensity) -> DiscordResult {
    discord_brute_force_with_grid(rho, 64, 64)
}

/// [`discord_brute_force`] with an explicit initial angle grid; doubling
/// the grid should not move `C` by more than the refinement tolerance.
pub fn discord_brute_force_with_grid(
    rho: &TwoQubitDensity,
    n_theta: usize,
    n_phi: usize,
) -> DiscordResult {
    let report = entropies_and_mutual_information(rho);
    let s1 = von_neumann_entropy2(&rho.trace_out_right());

    let pi = core::f64::consts::PI;
    let d_theta = pi / n_theta as f64;
    let d_phi = 2.0 * pi / n_phi as f64;

    let mut best = (0.0_f64, 0.0_f64, conditional_entropy(rho, 0.0, 0.0));
    for i in 0..=n_theta {
        let theta = i as f64 * d_theta;
        for j in 0..n_phi {
            let phi = j as f64 * d_phi;
            let s = conditional_entropy(rho, theta, phi);
            if s < best.2 {
                best = (theta, phi, s);
            }
        }
    }

    // Pattern search around the best grid node.
    let (mut theta, mut phi, mut s_min) = best;
    let (mut dt, mut dp) = (d_theta, d_phi);
    while dt > 2e-7 || dp > 2e-7 {
        let mut improved = false;
        for (et, ep) in [
            (dt, 0.0),
            (-dt, 0.0),
            (0.0, dp),
            (0.0, -dp),
            (dt, dp),
            (dt, -dp),
            (-dt, dp),
            (-dt, -dp),
        ] {
            let th = (theta + et).clamp(0.0, pi);
            let mut ph = phi + ep;
            if ph < 0.0 {
                ph += 2.0 * pi;
            } else if ph >= 2.0 * pi {
                ph -= 2.0 * pi;
            }
            let s = conditional_entropy(rho, th, ph);
            if s < s_min {
                theta = th;
                phi = ph;
                s_min = s;
                improved = true;
            }
        }
        if !improved {
            dt *= 0.5;
            dp *= 0.5;
        }
    }

    let classical = (s1 - s_min).max(0.0);
    DiscordResult {
        classical,
        quantum: report.mutual_information - classical,
        mutual_information: report.mutual_information,
    }
}
