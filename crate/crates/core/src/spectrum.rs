//! Leading-order energies, Gaussian moments and the scaling law.

use libm::{fabs, pow, sqrt};

use crate::gap::{potential_params, select_phase, solve_gap, GapSolution};
use crate::model::{Level, OscillatorClass, OscillatorSpec, Phase};
use crate::{Error, Result};

/// `<n|phi^p|n>` in the reference state of a level, plus `<p^2>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub m1: f64,
    pub m2: f64,
    pub m3: f64,
    pub m4: f64,
    pub m6: f64,
    pub m8: f64,
    pub p2: f64,
}

impl Moments {
    /// Look up an even moment by power (2, 4, 6 or 8).
    pub fn even(&self, power: u32) -> f64 {
        match power {
            2 => self.m2,
            4 => self.m4,
            6 => self.m6,
            8 => self.m8,
            _ => f64::NAN,
        }
    }
}

/// Central moments `<x^j>` of a harmonic level `xi` at frequency `omega`, j = 0..=8.
pub fn central_moments(omega: f64, xi: f64) -> [f64; 9] {
    let lf = crate::model::LevelFunctions::at(xi);
    let w = omega;
    let mut c = [0.0; 9];
    c[0] = 1.0;
    c[2] = xi / w;
    c[4] = 3.0 * (1.0 + 4.0 * xi * xi) / (8.0 * w * w);
    c[6] = 5.0 * xi * (4.0 * xi * xi + 5.0) / (8.0 * w * w * w);
    c[8] = 35.0 * xi * lf.h / (8.0 * w * w * w * w);
    c
}

pub fn moments(gap: &GapSolution, level: Level) -> Moments {
    let c = central_moments(gap.omega, level.xi());
    let s = gap.sigma;
    let shifted = |p: usize| -> f64 {
        let mut total = 0.0;
        let mut binom = 1.0;
        for j in 0..=p {
            if j % 2 == 0 {
                total += binom * pow(s, (p - j) as f64) * c[j];
            }
            binom = binom * (p - j) as f64 / (j + 1) as f64;
        }
        total
    };
    Moments {
        m1: s,
        m2: shifted(2),
        m3: shifted(3),
        m4: shifted(4),
        m6: shifted(6),
        m8: shifted(8),
        p2: gap.omega * level.xi(),
    }
}

/// `<H>` in a Gaussian-type level state of frequency `omega` centred at `sigma`.
pub fn energy_functional(spec: &OscillatorSpec, level: Level, omega: f64, sigma: f64) -> f64 {
    let gap = GapSolution {
        omega,
        sigma,
        phase: if sigma == 0.0 { Phase::SymmetryRestored } else { Phase::SymmetryBroken },
        residual: 0.0,
        rho: None,
        theta: None,
    };
    let m = moments(&gap, level);
    let s = spec.class().quadratic_sign();
    0.5 * m.p2 + 0.5 * s * spec.g() * m.m2 + spec.lambda() * m.even(spec.class().anharmonic_power())
}

/// Closed-form leading-order energy for a solved gap.
pub fn energy_closed_form(spec: &OscillatorSpec, level: Level, gap: &GapSolution) -> f64 {
    let xi = level.xi();
    let w = gap.omega;
    let g = spec.g();
    match (spec.class(), gap.phase) {
        (OscillatorClass::QuarticDwo, Phase::SymmetryBroken) => {
            0.25 * xi * (3.0 * w + 2.0 * g / w) - g * g / (16.0 * spec.lambda())
        }
        (OscillatorClass::QuarticAho, _) => 0.25 * xi * (3.0 * w + g / w),
        (OscillatorClass::QuarticDwo, _) => 0.25 * xi * (3.0 * w - g / w),
        (OscillatorClass::SexticAho, _) => xi / 3.0 * (2.0 * w + g / w),
        (OscillatorClass::SexticDwo, _) => xi / 3.0 * (2.0 * w - g / w),
        (OscillatorClass::OcticAho, _) => 0.125 * xi * (5.0 * w + 3.0 * g / w),
    }
}

/// Leading-order energy of `level` in the phase chosen by the phase map.
pub fn energy_lo(spec: &OscillatorSpec, level: Level) -> Result<f64> {
    energy_lo_in(spec, level, select_phase(spec, level))
}

/// Leading-order energy in a given phase. The closed form, the direct
/// expectation value and `omega*xi + h0` are cross-checked.
pub fn energy_lo_in(spec: &OscillatorSpec, level: Level, phase: Phase) -> Result<f64> {
    let gap = solve_gap(spec, level, phase)?;
    let e = energy_closed_form(spec, level, &gap);
    let direct = energy_functional(spec, level, gap.omega, gap.sigma);
    let via_h0 = gap.omega * level.xi() + potential_params(spec, level, &gap)?.h0;
    let scale = fabs(e).max(1.0);
    let mismatch = fabs(e - direct).max(fabs(e - via_h0)) / scale;
    if !(mismatch <= 1e-9) {
        return Err(Error::InconsistentGap { residual: mismatch });
    }
    Ok(e)
}

/// Energy of a level through successive orders of the improved expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelEnergy {
    pub e0: f64,
    pub de2: Option<f64>,
    pub de3: Option<f64>,
    pub total: f64,
}

/// Exponent `(k+1)/2` in `E(g, lambda) = sqrt(g) E(1, lambda / g^((k+1)/2))`.
pub fn scaling_exponent(class: OscillatorClass) -> f64 {
    0.5 * (class.half_power() as f64 + 1.0)
}

/// Relative violation of the scaling law
/// `E(g, lambda) = sqrt(g) E(1, lambda / g^((k+1)/2))` at leading order.
pub fn scaling_check(class: OscillatorClass, g: f64, lambda: f64, level: Level) -> Result<f64> {
    let direct = energy_lo(&OscillatorSpec::new(class, g, lambda)?, level)?;
    let reduced = OscillatorSpec::new(class, 1.0, lambda / pow(g, scaling_exponent(class)))?;
    let scaled = sqrt(g) * energy_lo(&reduced, level)?;
    Ok(fabs(direct - scaled) / fabs(direct).max(1e-300))
}
