//! Entanglement and quantum correlations of monitored qubit pairs.
//!
//! A single monitored two-level system shares one excitation between the
//! system itself (`s`), the source of the driving potential (`r`) and the
//! measurement device (`d`); the complex amplitudes of that partition are
//! [`TriAmplitudes`]. Two identical copies prepared in an entangled pair
//! state `a|00⟩ + b|11⟩` then yield, for each of the three cuts, a
//! two-qubit X-state density matrix whose concurrence and quantum
//! correlation have closed forms. The general spin-flip concurrence and
//! entropic quantities act as independent checks.

use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;
// Unused whenever a dependency links std (the inherent f64 methods win),
// required for the pure no_std build.
#[allow(unused_imports)]
use num_traits::Float;

use crate::dynamics::{resonant_factors, transition_probabilities, MeasurementRates};
use crate::{Error, Result};

/// Eigenvalues below this threshold are treated as exact zeros inside
/// entropies, removing `0·log 0` singularities.
const EIG_ZERO: f64 = 1e-14;

/// Tolerances accepted when validating a density matrix handed to the
/// library (constructed matrices satisfy much tighter bounds).
const HERMITICITY_TOL: f64 = 1e-9;
const TRACE_TOL: f64 = 1e-9;
const PSD_TOL: f64 = -1e-8;
const X_SPARSITY_TOL: f64 = 1e-12;

/// Complex amplitudes of the single-excitation partition at time `t`:
/// system excited (`xi`), source excited (`eta`), detector excited
/// (`chi`). `|xi|² + |eta|² + |chi|² = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriAmplitudes {
    pub xi: Complex64,
    pub eta: Complex64,
    pub chi: Complex64,
}

impl TriAmplitudes {
    /// Amplitude belonging to a cut.
    pub fn for_cut(&self, cut: Cut) -> Complex64 {
        match cut {
            Cut::System => self.xi,
            Cut::Source => self.eta,
            Cut::Detector => self.chi,
        }
    }
}

/// Which bipartite cut of the doubled system a reduced density matrix
/// refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cut {
    /// The two monitored qubits, `s₁s₂`.
    System,
    /// The two potential sources, `r₁r₂`.
    Source,
    /// The two detectors, `d₁d₂`.
    Detector,
}

impl Cut {
    pub fn as_str(&self) -> &'static str {
        match self {
            Cut::System => "s",
            Cut::Source => "r",
            Cut::Detector => "d",
        }
    }
}

/// Partition amplitudes of the single-excitation state at resonance.
///
/// `xi` is real (the phase convention keeps the regime-matched survival
/// factor real), `eta` carries the `-i` drive phase, and `chi` is fixed
/// real non-negative; none of the traced quantities depend on these
/// phases. `|xi|² = P₁₁` and `|eta|² = P₁₀`.
pub fn tripartite_amplitudes(rates: &MeasurementRates, v0: f64, t: f64) -> Result<TriAmplitudes> {
    let (p11, p10) = transition_probabilities(rates, v0, t)?;
    let (u1, u0) = resonant_factors(rates.lambda_t, v0, t);
    let decay = (-rates.lambda_t * t / 4.0).exp();
    let xi = Complex64::new(decay * u1, 0.0);
    let eta = Complex64::new(0.0, -decay * u0);
    let chi = Complex64::new((1.0 - p11 - p10).max(0.0).sqrt(), 0.0);
    Ok(TriAmplitudes { xi, eta, chi })
}

/// Normalized amplitude pair of the initial two-qubit state
/// `a|00⟩ + b|11⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialPair {
    a: Complex64,
    b: Complex64,
}

impl InitialPair {
    /// Requires `|a|² + |b|² = 1` within 1e-9.
    pub fn new(a: Complex64, b: Complex64) -> Result<Self> {
        let norm_sq = a.norm_sqr() + b.norm_sqr();
        if !((norm_sq - 1.0).abs() <= 1e-9) {
            return Err(Error::NonNormalizedPair { norm_sq });
        }
        Ok(Self { a, b })
    }

    /// Real parameterization `b ∈ [0, 1]`, `a = sqrt(1 - b²)`.
    pub fn from_real_b(b: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&b) {
            return Err(Error::InvalidParameter { name: "b", value: b });
        }
        Self::new(Complex64::new((1.0 - b * b).sqrt(), 0.0), Complex64::new(b, 0.0))
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }
}

/// Validated 4×4 two-qubit density matrix in the
/// `{|00⟩, |01⟩, |10⟩, |11⟩}` basis, restricted to the X-state sparsity
/// pattern (nonzero entries only on the diagonal and anti-diagonal).
#[derive(Debug, Clone, PartialEq)]
pub struct TwoQubitDensity {
    m: Matrix4<Complex64>,
}

impl TwoQubitDensity {
    /// Validates Hermiticity, unit trace, positive semidefiniteness and
    /// the X-state sparsity pattern.
    pub fn new(m: Matrix4<Complex64>) -> Result<Self> {
        let mut herm_dev: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                herm_dev = herm_dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
            }
        }
        if herm_dev > HERMITICITY_TOL {
            return Err(Error::NonPhysicalDensity { reason: "not Hermitian", value: herm_dev });
        }
        let trace = m.trace();
        if (trace.re - 1.0).abs() > TRACE_TOL || trace.im.abs() > TRACE_TOL {
            return Err(Error::NonPhysicalDensity { reason: "trace != 1", value: trace.re });
        }
        // Zero pattern of an X state, 0-indexed.
        for &(i, j) in &[(0, 1), (0, 2), (1, 0), (1, 3), (2, 0), (2, 3), (3, 1), (3, 2)] {
            let mag = m[(i, j)].norm();
            if mag > X_SPARSITY_TOL {
                return Err(Error::NonPhysicalDensity { reason: "not an X state", value: mag });
            }
        }
        let rho = Self { m };
        let min_eig = rho.min_eigenvalue();
        if min_eig < PSD_TOL {
            return Err(Error::NonPhysicalDensity {
                reason: "negative eigenvalue",
                value: min_eig,
            });
        }
        Ok(rho)
    }

    pub fn matrix(&self) -> &Matrix4<Complex64> {
        &self.m
    }

    /// Real eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> [f64; 4] {
        hermitian_eigenvalues(&self.m)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    /// Partial trace over the second qubit.
    pub fn trace_out_right(&self) -> Matrix2<Complex64> {
        let m = &self.m;
        Matrix2::new(
            m[(0, 0)] + m[(1, 1)],
            m[(0, 2)] + m[(1, 3)],
            m[(2, 0)] + m[(3, 1)],
            m[(2, 2)] + m[(3, 3)],
        )
    }

    /// Partial trace over the first qubit.
    pub fn trace_out_left(&self) -> Matrix2<Complex64> {
        let m = &self.m;
        Matrix2::new(
            m[(0, 0)] + m[(2, 2)],
            m[(0, 1)] + m[(2, 3)],
            m[(1, 0)] + m[(3, 2)],
            m[(1, 1)] + m[(3, 3)],
        )
    }
}

/// Eigenvalues of a Hermitian 4×4 matrix, ascending.
fn hermitian_eigenvalues(m: &Matrix4<Complex64>) -> [f64; 4] {
    // Symmetrize first so tiny anti-Hermitian roundoff cannot leak in.
    let h = (m + m.adjoint()).map(|z| z * 0.5);
    let mut eigs: [f64; 4] = h.symmetric_eigenvalues().into();
    eigs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    eigs
}

/// Reduced density matrix of one bipartite cut: picks the cut's amplitude
/// out of `amps` and builds the X-state matrix.
pub fn reduced_density(pair: &InitialPair, amps: &TriAmplitudes, cut: Cut) -> TwoQubitDensity {
    x_state_density(pair, amps.for_cut(cut))
}

/// The two-qubit X-state obtained by tracing the doubled single-excitation
/// state down to the subsystem carrying amplitude `amp`:
///
/// ```text
/// diag:    |a|² + |b|²(1-x)²,  |b|²x(1-x),  |b|²x(1-x),  |b|²x²
/// corners: a b* (amp*)²  and its conjugate,              x = |amp|²
/// ```
///
/// The trace is exactly 1 and the matrix is positive semidefinite for any
/// normalized pair and `|amp| ≤ 1`.
pub fn x_state_density(pair: &InitialPair, amp: Complex64) -> TwoQubitDensity {
    let x = amp.norm_sqr().min(1.0);
    let a2 = pair.a.norm_sqr();
    let b2 = pair.b.norm_sqr();
    let corner = pair.a * pair.b.conj() * amp.conj() * amp.conj();
    let zero = Complex64::ZERO;
    let m = Matrix4::new(
        Complex64::new(a2 + b2 * (1.0 - x) * (1.0 - x), 0.0),
        zero,
        zero,
        corner,
        zero,
        Complex64::new(b2 * x * (1.0 - x), 0.0),
        zero,
        zero,
        zero,
        zero,
        Complex64::new(b2 * x * (1.0 - x), 0.0),
        zero,
        corner.conj(),
        zero,
        zero,
        Complex64::new(b2 * x * x, 0.0),
    );
    TwoQubitDensity { m }
}

/// Closed-form concurrence of the X-state family:
/// `max{0, 2|b||amp|²(|a| − |b|(1 − |amp|²))}`.
pub fn concurrence_closed_form(pair: &InitialPair, amp: Complex64) -> f64 {
    concurrence_closed_form_raw(pair, amp).max(0.0)
}

/// The pre-clamp value of [`concurrence_closed_form`]; negative values
/// indicate how far inside the separable region the state sits.
pub fn concurrence_closed_form_raw(pair: &InitialPair, amp: Complex64) -> f64 {
    let x = amp.norm_sqr().min(1.0);
    let a_mag = pair.a.norm();
    let b_mag = pair.b.norm();
    2.0 * b_mag * x * (a_mag - b_mag * (1.0 - x))
}

const SY_SY: [[f64; 4]; 4] = [
    [0.0, 0.0, 0.0, -1.0],
    [0.0, 0.0, 1.0, 0.0],
    [0.0, 1.0, 0.0, 0.0],
    [-1.0, 0.0, 0.0, 0.0],
];

fn sigma_y_sigma_y() -> Matrix4<Complex64> {
    Matrix4::from_fn(|i, j| Complex64::new(SY_SY[i][j], 0.0))
}

/// Principal square root of a Hermitian PSD matrix (tiny negative
/// eigenvalues are clamped to zero).
fn hermitian_sqrt(m: &Matrix4<Complex64>) -> Matrix4<Complex64> {
    let eig = ((m + m.adjoint()).map(|z| z * 0.5)).symmetric_eigen();
    let mut root: Matrix4<Complex64> = Matrix4::zeros();
    for k in 0..4 {
        let v = eig.eigenvectors.column(k);
        root += v * v.adjoint() * Complex64::from(eig.eigenvalues[k].max(0.0).sqrt());
    }
    root
}

/// General Wootters concurrence via the spin-flip construction:
/// `C = max{0, √μ₁ − √μ₂ − √μ₃ − √μ₄}` with `μᵢ` the descending
/// eigenvalues of `ρ (σ_y⊗σ_y) ρ* (σ_y⊗σ_y)`.
///
/// Because `√ρ ρ̃ √ρ = (√ρ √ρ̃)(√ρ √ρ̃)†` shares the spectrum of `ρ ρ̃`,
/// the `√μᵢ` are computed directly as the singular values of `√ρ √ρ̃`;
/// this avoids squaring and keeps full f64 accuracy even where some `μᵢ`
/// underflow toward zero.
pub fn wootters_concurrence_general(rho: &TwoQubitDensity) -> f64 {
    let m = rho.matrix();
    let yy = sigma_y_sigma_y();
    let rho_tilde = yy * m.map(|z| z.conj()) * yy;

    let prod = hermitian_sqrt(m) * hermitian_sqrt(&rho_tilde);
    let mut r: [f64; 4] = prod.svd(false, false).singular_values.into();
    r.sort_by(|a, b| b.partial_cmp(a).unwrap());
    (r[0] - r[1] - r[2] - r[3]).max(0.0)
}

/// Binary Shannon entropy `H(x) = -x log₂ x - (1-x) log₂(1-x)`, with
/// `H(0) = H(1) = 0`.
pub fn binary_entropy(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    -(x * x.log2()) - (1.0 - x) * (1.0 - x).log2()
}

/// Closed-form quantum correlation of the X-state family:
///
/// `Q = H(|b·amp|²) − H(½[1 + √(1 − 4|b|²x(1−x))])`, `x = |amp|²`.
///
/// Every occurrence of the family's `(1 − amp²)` factor is read as the
/// population factor `(1 − |amp|²)`, keeping the entropy arguments real.
/// The classical correlation extractable by an optimal projective
/// measurement equals `Q` for this family (checked numerically against
/// [`crate::oracles::discord_brute_force`]).
pub fn quantum_correlation_closed_form(pair: &InitialPair, amp: Complex64) -> f64 {
    let x = amp.norm_sqr().min(1.0);
    let b2 = pair.b.norm_sqr();
    let s = b2 * x;
    let mut disc = 1.0 - 4.0 * s * (1.0 - x);
    if disc < 0.0 {
        // Analytically disc >= 1 - |b|² >= 0; only roundoff can undershoot.
        debug_assert!(disc > -1e-12);
        disc = 0.0;
    }
    let z = 0.5 * (1.0 + disc.sqrt());
    (binary_entropy(s) - binary_entropy(z)).max(0.0)
}

/// Von Neumann entropies of a two-qubit state and its marginals, plus the
/// quantum mutual information `I = S(ρ₁) + S(ρ₂) − S(ρ₁₂)` (base-2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyReport {
    pub s_joint: f64,
    pub s_left: f64,
    pub s_right: f64,
    pub mutual_information: f64,
}

fn entropy_from_eigs(eigs: impl IntoIterator<Item = f64>) -> f64 {
    let mut s = 0.0;
    for e in eigs {
        if e > EIG_ZERO {
            s -= e * e.log2();
        }
    }
    s
}

/// Eigenvalues of a 2×2 Hermitian matrix.
fn eigs2(m: &Matrix2<Complex64>) -> [f64; 2] {
    let half_tr = 0.5 * (m[(0, 0)].re + m[(1, 1)].re);
    let det = m[(0, 0)].re * m[(1, 1)].re - m[(0, 1)].norm_sqr();
    let gap = (half_tr * half_tr - det).max(0.0).sqrt();
    [half_tr - gap, half_tr + gap]
}

pub(crate) fn von_neumann_entropy2(m: &Matrix2<Complex64>) -> f64 {
    entropy_from_eigs(eigs2(m))
}

/// Joint and marginal entropies with the mutual information.
pub fn entropies_and_mutual_information(rho: &TwoQubitDensity) -> EntropyReport {
    let s_joint = entropy_from_eigs(rho.eigenvalues());
    let s_left = von_neumann_entropy2(&rho.trace_out_right());
    let s_right = von_neumann_entropy2(&rho.trace_out_left());
    EntropyReport { s_joint, s_left, s_right, mutual_information: s_left + s_right - s_joint }
}
