//! Supersymmetric partners of the sextic oscillators.
//!
//! With superpotential `W = beta phi^3`, `H± = p^2 + W^2 ± W'` are twice the
//! sextic single/double wells with `g = 3 beta`, `lambda = beta^2 / 2`.
//! Energies below are reported in that doubled normalisation.

use alloc::vec::Vec;

use libm::{exp, fabs, pow, sqrt, tgamma};

use crate::model::{Level, OscillatorClass, OscillatorSpec};
use crate::oracle::{converged_levels, DEFAULT_TOL};
use crate::quad::integrate;
use crate::spectrum::energy_lo;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SusyPair {
    pub beta: f64,
    pub aho_spec: OscillatorSpec,
    pub dwo_spec: OscillatorSpec,
}

impl SusyPair {
    pub fn new(beta: f64) -> Result<Self> {
        if !(beta > 0.0) || !beta.is_finite() {
            return Err(Error::InvalidParameter { name: "beta", reason: "must be positive" });
        }
        let g = 3.0 * beta;
        let lambda = 0.5 * beta * beta;
        Ok(SusyPair {
            beta,
            aho_spec: OscillatorSpec::new(OscillatorClass::SexticAho, g, lambda)?,
            dwo_spec: OscillatorSpec::new(OscillatorClass::SexticDwo, g, lambda)?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsppRow {
    pub n: u32,
    pub e_aho: f64,
    pub e_dwo_next: f64,
    pub relative_gap: f64,
}

/// Leading-order partner energies `E_n(single well)` vs `E_{n+1}(double well)`.
pub fn ispp_table(beta: f64, n_max: u32) -> Result<Vec<IsppRow>> {
    let pair = SusyPair::new(beta)?;
    (0..=n_max)
        .map(|n| {
            let e_aho = 2.0 * energy_lo(&pair.aho_spec, Level(n))?;
            let e_dwo_next = 2.0 * energy_lo(&pair.dwo_spec, Level(n + 1))?;
            Ok(IsppRow { n, e_aho, e_dwo_next, relative_gap: fabs(e_dwo_next - e_aho) / e_aho })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SusyReport {
    pub beta: f64,
    /// Exact double-well ground energy; zero for unbroken supersymmetry.
    pub dwo_ground: f64,
    /// `(n, E_n single well, E_{n+1} double well)`, exact.
    pub pairs: Vec<(u32, f64, f64)>,
    pub max_pair_deviation: f64,
}

/// Checks the exact partner relations with the Rayleigh-Ritz oracle.
pub fn susy_exact_checks(beta: f64, pairs: u32) -> Result<SusyReport> {
    let pair = SusyPair::new(beta)?;
    let count = pairs as usize;
    let aho = converged_levels(&pair.aho_spec, count.max(1), DEFAULT_TOL, None)?;
    let dwo = converged_levels(&pair.dwo_spec, count + 1, DEFAULT_TOL, None)?;
    let rows: Vec<(u32, f64, f64)> = (0..count)
        .map(|n| (n as u32, 2.0 * aho.eigenvalues[n], 2.0 * dwo.eigenvalues[n + 1]))
        .collect();
    let max_pair_deviation = rows.iter().map(|r| fabs(r.1 - r.2)).fold(0.0, f64::max);
    Ok(SusyReport { beta, dwo_ground: 2.0 * dwo.eigenvalues[0], pairs: rows, max_pair_deviation })
}

/// `amplitude * exp(-width_exponent * phi^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianState {
    pub amplitude: f64,
    pub width_exponent: f64,
}

impl GaussianState {
    /// Normalised ground state of a harmonic oscillator of frequency `omega`.
    pub fn harmonic(omega: f64) -> Self {
        GaussianState { amplitude: pow(omega / core::f64::consts::PI, 0.25), width_exponent: 0.5 * omega }
    }

    pub fn eval(&self, phi: f64) -> f64 {
        self.amplitude * exp(-self.width_exponent * phi * phi)
    }

    pub fn norm_squared(&self) -> f64 {
        self.amplitude * self.amplitude * sqrt(core::f64::consts::PI / (2.0 * self.width_exponent))
    }
}

/// `amplitude * exp(-beta phi^4 / 4)`, the zero-energy state of the double well.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuarticExpState {
    pub amplitude: f64,
    pub beta: f64,
}

impl QuarticExpState {
    pub fn normalised(beta: f64) -> Self {
        QuarticExpState { amplitude: pow(8.0 * beta, 0.125) / sqrt(tgamma(0.25)), beta }
    }

    pub fn eval(&self, phi: f64) -> f64 {
        let p2 = phi * phi;
        self.amplitude * exp(-0.25 * self.beta * p2 * p2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroundStateComparison {
    pub susy_state: QuarticExpState,
    pub ngas_state: GaussianState,
    pub overlap: f64,
}

/// Frequency of the leading-order double-well ground state.
pub fn dwo_ground_frequency(beta: f64) -> Result<f64> {
    let pair = SusyPair::new(beta)?;
    let g = pair.dwo_spec.g();
    let lambda = pair.dwo_spec.lambda();
    Ok(sqrt(0.5 * (-g + sqrt(g * g + 90.0 * lambda))))
}

/// Exact zero-energy state vs the leading-order Gaussian, with their overlap.
pub fn groundstate_comparison(beta: f64) -> Result<GroundStateComparison> {
    let susy_state = QuarticExpState::normalised(beta);
    let ngas_state = GaussianState::harmonic(dwo_ground_frequency(beta)?);
    // both states are negligible beyond the point where each exponent exceeds 50
    let reach = sqrt(100.0 / ngas_state.width_exponent.min(1.0)).max(pow(200.0 / beta, 0.25));
    let half = integrate(|x| susy_state.eval(x) * ngas_state.eval(x), 0.0, reach, 1e-14, 1e-13)?;
    Ok(GroundStateComparison { susy_state, ngas_state, overlap: 2.0 * half.value })
}
