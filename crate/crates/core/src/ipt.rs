//! Rayleigh-Schroedinger corrections around the per-level reference Hamiltonian.
//!
//! For level `n`, `H = H0(n) + lambda H'(n)` with
//! `H'(n) = phi^(2k) - (A phi^2 - B phi + C)` and `H0(n)` harmonic with the
//! frequency and shift of that level. Corrections use matrix elements in the
//! eigenbasis of `H0(n)`.

use alloc::vec::Vec;

use libm::{fabs, pow, sqrt};

use crate::gap::{potential_params, select_phase, solve_gap};
use crate::ladder::q_power_element;
use crate::model::{Level, OscillatorSpec, PotentialParams};
use crate::spectrum::{energy_lo, LevelEnergy};
use crate::{Error, Result};

/// Half-width of the intermediate-state window around `n`.
pub const WINDOW: usize = 16;

/// How the energy differences `E_n - E_m` in the denominators are formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Denominator {
    /// `(n - m) omega(n)`: the spectrum of `H0(n)` itself.
    Fixed,
    /// `E0(n) - E0(m)`: each level at its own leading-order energy.
    #[default]
    LoLevels,
}

impl Denominator {
    pub fn name(self) -> &'static str {
        match self {
            Denominator::Fixed => "fixed",
            Denominator::LoLevels => "lo-levels",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualElement {
    pub m: u32,
    pub n: u32,
    /// `lambda <m|H'(n)|n>`
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IptCorrections {
    /// First order; vanishes by construction of the reference Hamiltonian.
    pub de1: f64,
    pub de2: f64,
    pub de3: f64,
    pub denominator: Denominator,
    pub window: usize,
}

/// `<m|phi^p|n>` in a harmonic basis of frequency `omega` centred at `sigma`.
pub fn phi_power_element(m: u32, n: u32, power: u32, omega: f64, sigma: f64) -> Result<f64> {
    if !matches!(power, 1 | 2 | 3 | 4 | 6 | 8) {
        return Err(Error::UnsupportedPower(power));
    }
    if !(omega > 0.0) {
        return Err(Error::InvalidParameter { name: "omega", reason: "must be positive" });
    }
    let scale = 1.0 / sqrt(2.0 * omega);
    let mut total = 0.0;
    let mut binom = 1.0;
    for j in 0..=power {
        let q = q_power_element(m as usize, n as usize, j);
        if q != 0.0 {
            let s = if power == j { 1.0 } else { pow(sigma, (power - j) as f64) };
            total += binom * s * pow(scale, j as f64) * q;
        }
        binom = binom * (power - j) as f64 / (j + 1) as f64;
    }
    Ok(total)
}

struct Residual {
    lambda: f64,
    power: u32,
    omega: f64,
    sigma: f64,
    params: PotentialParams,
}

impl Residual {
    fn new(spec: &OscillatorSpec, level: Level) -> Result<Self> {
        let gap = solve_gap(spec, level, select_phase(spec, level))?;
        let params = potential_params(spec, level, &gap)?;
        Ok(Residual {
            lambda: spec.lambda(),
            power: spec.class().anharmonic_power(),
            omega: gap.omega,
            sigma: gap.sigma,
            params,
        })
    }

    fn element(&self, m: u32, n: u32) -> Result<f64> {
        if self.lambda == 0.0 {
            return Ok(0.0);
        }
        let p = &self.params;
        let mut v = phi_power_element(m, n, self.power, self.omega, self.sigma)?
            - p.a * phi_power_element(m, n, 2, self.omega, self.sigma)?;
        if p.b != 0.0 {
            v += p.b * phi_power_element(m, n, 1, self.omega, self.sigma)?;
        }
        if m == n {
            v -= p.c;
        }
        Ok(self.lambda * v)
    }
}

/// `lambda <m|H'(n)|n>` for the reference Hamiltonian of `level`.
pub fn residual_element(spec: &OscillatorSpec, level: Level, m: u32) -> Result<ResidualElement> {
    let r = Residual::new(spec, level)?;
    Ok(ResidualElement { m, n: level.n(), value: r.element(m, level.n())? })
}

fn sums(
    spec: &OscillatorSpec,
    level: Level,
    residual: &Residual,
    denominator: Denominator,
    window: usize,
) -> Result<(f64, f64, f64)> {
    let n = level.n() as usize;
    let lo = n.saturating_sub(window);
    let hi = n + window;
    let dim = hi - lo + 1;
    let mut v = Vec::with_capacity(dim * dim);
    for i in lo..=hi {
        for j in lo..=hi {
            v.push(if j < i { v[(j - lo) * dim + (i - lo)] } else { residual.element(i as u32, j as u32)? });
        }
    }
    let at = |i: usize, j: usize| v[(i - lo) * dim + (j - lo)];
    let e_n = match denominator {
        Denominator::Fixed => 0.0,
        Denominator::LoLevels => energy_lo(spec, level)?,
    };
    let mut delta = Vec::with_capacity(dim);
    for m in lo..=hi {
        let d = match denominator {
            Denominator::Fixed => (n as f64 - m as f64) * residual.omega,
            Denominator::LoLevels if m == n => 0.0,
            Denominator::LoLevels => e_n - energy_lo(spec, Level(m as u32))?,
        };
        if m != n && fabs(d) < 1e-12 * fabs(e_n).max(1.0) {
            return Err(Error::InvalidParameter { name: "level", reason: "degenerate energy denominator" });
        }
        delta.push(d);
    }
    let de1 = at(n, n);
    let mut de2 = 0.0;
    let mut norm2 = 0.0;
    for m in lo..=hi {
        if m == n {
            continue;
        }
        let d = delta[m - lo];
        de2 += at(n, m) * at(m, n) / d;
        norm2 += at(n, m) * at(m, n) / (d * d);
    }
    let mut de3 = -de1 * norm2;
    for m in lo..=hi {
        if m == n || at(n, m) == 0.0 {
            continue;
        }
        for k in lo..=hi {
            if k == n {
                continue;
            }
            de3 += at(n, m) * at(m, k) * at(k, n) / (delta[m - lo] * delta[k - lo]);
        }
    }
    Ok((de1, de2, de3))
}

/// First-, second- and third-order corrections for `level`.
pub fn corrections(spec: &OscillatorSpec, level: Level, denominator: Denominator) -> Result<IptCorrections> {
    let residual = Residual::new(spec, level)?;
    let (de1, de2, de3) = sums(spec, level, &residual, denominator, WINDOW)?;
    let (_, de2_wide, de3_wide) = sums(spec, level, &residual, denominator, WINDOW + 8)?;
    let change = fabs(de2 - de2_wide).max(fabs(de3 - de3_wide));
    if change > 1e-9 * fabs(de2).max(1e-12) {
        return Err(Error::TruncationNotConverged { change });
    }
    Ok(IptCorrections { de1, de2, de3, denominator, window: WINDOW })
}

pub fn correction_order2(spec: &OscillatorSpec, level: Level, denominator: Denominator) -> Result<f64> {
    Ok(corrections(spec, level, denominator)?.de2)
}

pub fn correction_order3(spec: &OscillatorSpec, level: Level, denominator: Denominator) -> Result<f64> {
    Ok(corrections(spec, level, denominator)?.de3)
}

/// Energy through `order` (0, 2 or 3).
pub fn level_energy(spec: &OscillatorSpec, level: Level, order: u32, denominator: Denominator) -> Result<LevelEnergy> {
    let e0 = energy_lo(spec, level)?;
    match order {
        0 => Ok(LevelEnergy { e0, de2: None, de3: None, total: e0 }),
        2 | 3 => {
            let c = corrections(spec, level, denominator)?;
            let de3 = (order == 3).then_some(c.de3);
            Ok(LevelEnergy { e0, de2: Some(c.de2), de3, total: e0 + c.de2 + de3.unwrap_or(0.0) })
        }
        _ => Err(Error::InvalidParameter { name: "order", reason: "must be 0, 2 or 3" }),
    }
}
