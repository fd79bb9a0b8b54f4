//! Rayleigh-Ritz reference spectrum in a truncated harmonic basis.
//!
//! All matrix elements are exact projections of `H` (no products of
//! truncated matrices), so eigenvalues are variational upper bounds that
//! decrease monotonically as the basis grows. Even and odd states decouple;
//! each parity block is banded with bandwidth `k` for a `phi^(2k)` term.

use alloc::vec::Vec;

use libm::{fabs, pow};

use crate::gap::{select_phase, solve_gap};
use crate::ladder::q_power_column;
use crate::linalg::{band_eigenvalues, band_lowest, SymmetricBand};
use crate::model::{Level, OscillatorSpec};
use crate::{Error, Result};

pub const MIN_BASIS: usize = 8;
pub const START_BASIS: usize = 64;
pub const MAX_BASIS: usize = 4096;
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    /// Ascending, one per basis state.
    pub eigenvalues: Vec<f64>,
    pub basis_size: usize,
    pub basis_frequency: f64,
    pub converged: bool,
    /// Largest change of the tracked levels on the last basis doubling.
    pub tail_estimate: f64,
}

/// Frequency of the leading-order ground state, used as the default basis.
pub fn default_basis_frequency(spec: &OscillatorSpec) -> Result<f64> {
    let level = Level(0);
    Ok(solve_gap(spec, level, select_phase(spec, level))?.omega)
}

/// Hamiltonian block for one parity (`parity` 0 even, 1 odd) of an
/// `basis_size`-state harmonic basis of frequency `omega`.
pub fn parity_block(spec: &OscillatorSpec, basis_size: usize, omega: f64, parity: usize) -> SymmetricBand {
    let k = spec.class().half_power() as usize;
    let dim = (basis_size + 1 - parity) / 2;
    let mut block = SymmetricBand::zeros(dim, k);
    let s = spec.class().quadratic_sign();
    let lambda = spec.lambda();
    let x2_scale = 1.0 / (2.0 * omega);
    let anh_scale = lambda * pow(x2_scale, k as f64);
    // H = (omega/4)(2(2n+1) - q^2) + (s g / 2) q^2 / (2 omega) + lambda q^(2k) / (2 omega)^k
    let q2_coeff = -0.25 * omega + 0.5 * s * spec.g() * x2_scale;
    for col in 0..dim {
        let n = 2 * col + parity;
        let (first2, q2) = q_power_column(n, 2);
        let (firstk, qk) = q_power_column(n, 2 * k as u32);
        for off in 0..=k {
            let row = col + off;
            if row >= dim {
                break;
            }
            let m = 2 * row + parity;
            let mut h = 0.0;
            if m == n {
                h += 0.5 * omega * (2 * n + 1) as f64;
            }
            if m >= first2 && m - first2 < q2.len() {
                h += q2_coeff * q2[m - first2];
            }
            if lambda != 0.0 && m >= firstk && m - firstk < qk.len() {
                h += anh_scale * qk[m - firstk];
            }
            block.set(row, col, h);
        }
    }
    block
}

/// All eigenvalues for a fixed basis size.
pub fn diagonalize(spec: &OscillatorSpec, basis_size: usize, basis_frequency: Option<f64>) -> Result<OracleResult> {
    if basis_size < MIN_BASIS {
        return Err(Error::InvalidParameter { name: "basis_size", reason: "must be at least 8" });
    }
    let omega = match basis_frequency {
        Some(w) if w > 0.0 && w.is_finite() => w,
        Some(_) => return Err(Error::InvalidParameter { name: "basis_frequency", reason: "must be positive" }),
        None => default_basis_frequency(spec)?,
    };
    let mut eigenvalues = band_eigenvalues(parity_block(spec, basis_size, omega, 0))?;
    eigenvalues.extend(band_eigenvalues(parity_block(spec, basis_size, omega, 1))?);
    eigenvalues.sort_by(|a, b| a.total_cmp(b));
    Ok(OracleResult {
        eigenvalues,
        basis_size,
        basis_frequency: omega,
        converged: false,
        tail_estimate: f64::INFINITY,
    })
}

/// Lowest `count` eigenvalues (ascending) for a fixed basis size, taking the
/// low end of each parity block separately.
pub fn lowest_levels(spec: &OscillatorSpec, basis_size: usize, omega: f64, count: usize) -> Vec<f64> {
    let mut levels = band_lowest(parity_block(spec, basis_size, omega, 0), count);
    levels.extend(band_lowest(parity_block(spec, basis_size, omega, 1), count));
    levels.sort_by(|a, b| a.total_cmp(b));
    levels.truncate(count);
    levels
}

/// Doubles the basis from 64 until the lowest `levels` eigenvalues each move
/// by less than `tol * max(1, |E|)`. Only those levels are returned.
///
/// Low levels come from Sturm bisection on the reduced tridiagonal matrix,
/// which keeps them accurate to roughly `1e-12` relative even when the
/// truncated `phi^(2k)` matrix has a norm of order `N^k`.
pub fn converged_levels(
    spec: &OscillatorSpec,
    levels: usize,
    tol: f64,
    basis_frequency: Option<f64>,
) -> Result<OracleResult> {
    if levels == 0 {
        return Err(Error::InvalidParameter { name: "levels", reason: "must be at least 1" });
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter { name: "tol", reason: "must be positive" });
    }
    let omega = match basis_frequency {
        Some(w) if w > 0.0 && w.is_finite() => w,
        Some(_) => return Err(Error::InvalidParameter { name: "basis_frequency", reason: "must be positive" }),
        None => default_basis_frequency(spec)?,
    };
    let mut size = START_BASIS;
    while size < 4 * levels {
        size *= 2;
    }
    if size > MAX_BASIS {
        return Err(Error::InvalidParameter { name: "levels", reason: "too many levels for the largest basis" });
    }
    let mut prev = lowest_levels(spec, size, omega, levels);
    let mut iterations = 0;
    while size < MAX_BASIS {
        size *= 2;
        iterations += 1;
        let next = lowest_levels(spec, size, omega, levels);
        let change = prev.iter().zip(&next).map(|(a, b)| fabs(a - b) / fabs(*b).max(1.0)).fold(0.0, f64::max);
        prev = next;
        if change < tol {
            return Ok(OracleResult {
                eigenvalues: prev,
                basis_size: size,
                basis_frequency: omega,
                converged: true,
                tail_estimate: change,
            });
        }
    }
    Err(Error::NotConverged { what: "oracle basis", iterations })
}
