//! Vacuum structure of the quartic single well: Bogoliubov angle, the
//! condensate of free quanta, the effective potential in the field shift and
//! the energy gap below the perturbative vacuum.

use alloc::vec::Vec;

use libm::{log, sqrt};

use crate::gap::{select_phase, solve_gap};
use crate::model::{Level, OscillatorClass, OscillatorSpec};
use crate::roots::cubic_largest_root;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VacuumStructure {
    pub alpha: f64,
    pub n0: f64,
    pub omega0: f64,
    pub omega: f64,
}

impl VacuumStructure {
    fn from_frequencies(omega0: f64, omega: f64) -> Self {
        let r = omega / omega0;
        VacuumStructure { alpha: 0.5 * log(omega0 / omega), n0: 0.25 * (r + 1.0 / r - 2.0), omega0, omega }
    }
}

/// Bogoliubov parameters relating the free vacuum (frequency `sqrt(g)`) to
/// the interacting reference vacuum of `level`.
pub fn vacuum_structure(spec: &OscillatorSpec, level: Level) -> Result<VacuumStructure> {
    if spec.class().is_double_well() {
        return Err(Error::WrongClass);
    }
    let gap = solve_gap(spec, level, select_phase(spec, level))?;
    Ok(VacuumStructure::from_frequencies(sqrt(spec.g()), gap.omega))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QmEpPoint {
    pub sigma: f64,
    pub omega: f64,
    pub v_eff: f64,
}

/// Gaussian effective potential of `p^2/2 + phi^2/2 + lambda phi^4` as a
/// function of the field shift, with the frequency re-optimised at each point.
pub fn effective_potential_qm(lambda: f64, sigma_grid: &[f64]) -> Result<Vec<QmEpPoint>> {
    if !(lambda >= 0.0) || !lambda.is_finite() {
        return Err(Error::InvalidParameter { name: "lambda", reason: "must be non-negative" });
    }
    sigma_grid
        .iter()
        .map(|&sigma| {
            if !sigma.is_finite() {
                return Err(Error::InvalidParameter { name: "sigma", reason: "must be finite" });
            }
            let s2 = sigma * sigma;
            let stiffness = 1.0 + 12.0 * lambda * s2;
            let omega = cubic_largest_root(-stiffness, 6.0 * lambda);
            let residual = omega * omega * omega - stiffness * omega - 6.0 * lambda;
            if !(libm::fabs(residual) <= 1e-10 * (6.0 * lambda).max(stiffness).max(1.0)) {
                return Err(Error::InconsistentGap { residual });
            }
            let v_eff = 0.25 * omega
                + stiffness / (4.0 * omega)
                + 3.0 * lambda / (4.0 * omega * omega)
                + 0.5 * s2
                + lambda * s2 * s2;
            Ok(QmEpPoint { sigma, omega, v_eff })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityGap {
    pub lambda: f64,
    pub omega: f64,
    pub e0: f64,
    pub e0_perturbative: f64,
    pub delta_e: f64,
}

/// Ground energy of the Gaussian vacuum minus `<0|H|0>` in the free vacuum
/// (`1/2 + 3 lambda / 4`), for `g = 1`.
pub fn stability_gap(lambda: f64) -> Result<StabilityGap> {
    let spec = OscillatorSpec::with_coupling(OscillatorClass::QuarticAho, 1.0, lambda)?;
    let omega = solve_gap(&spec, Level(0), select_phase(&spec, Level(0)))?.omega;
    let e0 = 0.25 * (omega + 1.0 / omega) + 0.75 * lambda / (omega * omega);
    let e0_perturbative = 0.5 + 0.75 * lambda;
    // written as a sum of small terms to keep precision as lambda -> 0
    let eps = omega - 1.0;
    let delta_e = 0.25 * eps * eps / omega + 0.75 * lambda * (1.0 - omega * omega) / (omega * omega);
    Ok(StabilityGap { lambda, omega, e0, e0_perturbative, delta_e })
}
