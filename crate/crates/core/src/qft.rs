//! Gaussian effective potential of lambda phi^4 in 3+1 dimensions.
//!
//! Bare quantities carry an explicit 3-momentum cutoff. The renormalised
//! potential is written in the cutoff-free variables
//! `t = M^2(sigma)/m_R^2`, `eta = -4 pi^2 / lambda_R`, `sigma / m_R`.

use alloc::vec::Vec;

use core::f64::consts::PI;

use libm::{asinh, exp, fabs, log, sqrt};

use crate::roots::{bisect, newton_bracketed};
use crate::{Error, Result};

const FOUR_PI_SQ: f64 = 4.0 * PI * PI;
const SIXTEEN_PI_SQ: f64 = 16.0 * PI * PI;

/// `lambda_R * I_-1` below which the negative-bare-coupling branch has no real solution.
pub fn branch_threshold() -> f64 {
    (60.0 + sqrt(3456.0)) / 72.0
}

/// Cutoff integrals `(1/4 pi^2) int_0^Lambda k^2 (k^2 + x^2)^{n - 1/2} dk` for n = 0, 1, -1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StevensonIntegrals {
    pub mass: f64,
    pub cutoff: f64,
    pub i0: f64,
    pub i1: f64,
    pub im1: f64,
}

pub fn stevenson_integrals(mass: f64, cutoff: f64) -> Result<StevensonIntegrals> {
    if !(mass >= 0.0) || !mass.is_finite() {
        return Err(Error::InvalidParameter { name: "mass", reason: "must be non-negative" });
    }
    if !(cutoff > 0.0) || !cutoff.is_finite() {
        return Err(Error::InvalidParameter { name: "cutoff", reason: "must be positive" });
    }
    let lam = cutoff;
    let x = mass;
    let (i0, i1, im1) = if x == 0.0 {
        (0.5 * lam * lam, 0.25 * lam * lam * lam * lam, f64::INFINITY)
    } else if lam < 0.01 * x {
        // expansions in u = Lambda / x avoid the cancellation of the closed forms
        let u = lam / x;
        let u2 = u * u;
        let u3 = u2 * u;
        let x2 = x * x;
        (
            x2 * u3 * (1.0 / 3.0 - u2 * (1.0 / 10.0 - u2 * (3.0 / 56.0 - u2 * 5.0 / 144.0))),
            x2 * x2 * u3 * (1.0 / 3.0 + u2 * (1.0 / 10.0 - u2 * (1.0 / 56.0 - u2 / 144.0))),
            u3 * (1.0 / 3.0 - u2 * (3.0 / 10.0 - u2 * (15.0 / 56.0 - u2 * 35.0 / 144.0))),
        )
    } else {
        let e = sqrt(lam * lam + x * x);
        let l = asinh(lam / x);
        let x2 = x * x;
        (
            0.5 * (lam * e - x2 * l),
            0.125 * (lam * e * (2.0 * lam * lam + x2) - x2 * x2 * l),
            l - lam / e,
        )
    };
    Ok(StevensonIntegrals {
        mass,
        cutoff,
        i0: i0 / FOUR_PI_SQ,
        i1: i1 / FOUR_PI_SQ,
        im1: im1 / FOUR_PI_SQ,
    })
}

fn integrals_at_m2(m2: f64, cutoff: f64) -> StevensonIntegrals {
    // callers validate the cutoff; m2 is clamped at zero
    stevenson_integrals(sqrt(m2.max(0.0)), cutoff).unwrap_or(StevensonIntegrals {
        mass: 0.0,
        cutoff,
        i0: f64::NAN,
        i1: f64::NAN,
        im1: f64::NAN,
    })
}

/// Self-consistent mass gap `M^2 = m^2 + 12 lambda sigma^2 + 12 lambda I0(M)`.
///
/// For `lambda >= 0` the residual is increasing and concave and the unique
/// root is found by Newton steps (the fixed-point map damped by
/// `1 / (1 + 6 lambda I_-1)`) kept inside a bracket. For `lambda < 0` the
/// residual is convex; when it has two positive roots the lower one is
/// returned, which is the branch with a positive renormalised coupling.
pub fn bare_gap(m2_bare: f64, lambda_bare: f64, sigma: f64, cutoff: f64) -> Result<f64> {
    if !(cutoff > 0.0) || !cutoff.is_finite() {
        return Err(Error::InvalidParameter { name: "cutoff", reason: "must be positive" });
    }
    if !m2_bare.is_finite() || !lambda_bare.is_finite() || !sigma.is_finite() {
        return Err(Error::InvalidParameter { name: "parameters", reason: "must be finite" });
    }
    let shift = m2_bare + 12.0 * lambda_bare * sigma * sigma;
    if lambda_bare == 0.0 {
        return if shift >= 0.0 { Ok(shift) } else { Err(Error::NoPositiveSolution) };
    }
    let residual = |m2: f64| -> (f64, f64) {
        let i = integrals_at_m2(m2, cutoff);
        (m2 - shift - 12.0 * lambda_bare * i.i0, 1.0 + 6.0 * lambda_bare * i.im1)
    };
    let r0 = residual(0.0).0;
    if lambda_bare > 0.0 {
        if r0 >= 0.0 {
            return Err(Error::NoPositiveSolution);
        }
        let hi = shift + 12.0 * lambda_bare * integrals_at_m2(0.0, cutoff).i0 + 1.0;
        return newton_bracketed(residual, 0.0, hi, 1e-15, 300);
    }
    // lambda < 0: locate the minimum of the residual, where 6|lambda| I_-1(M*) = 1
    let target = 1.0 / (6.0 * fabs(lambda_bare));
    let im1 = |ln_m: f64| integrals_at_m2(exp(2.0 * ln_m), cutoff).im1;
    let ln_lo = log(cutoff) - 300.0;
    let ln_hi = log(cutoff) + 40.0;
    let m_star2 = if im1(ln_lo) <= target {
        0.0
    } else {
        let ln_m = bisect(|l| im1(l) - target, ln_lo, ln_hi, 1e-15)?;
        exp(2.0 * ln_m)
    };
    let r_star = residual(m_star2).0;
    if r0 > 0.0 && m_star2 > 0.0 {
        if r_star > 0.0 {
            return Err(Error::NoPositiveSolution);
        }
        return newton_bracketed(residual, 0.0, m_star2, 1e-15, 300);
    }
    let hi = (shift.max(0.0) + 1.0).max(2.0 * m_star2);
    if residual(hi).0 <= 0.0 {
        return Err(Error::NoPositiveSolution);
    }
    newton_bracketed(residual, m_star2, hi, 1e-15, 300)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Renormalized {
    pub m_r: f64,
    pub lambda_r: f64,
    pub im1: f64,
}

/// Bare `(m^2, lambda)` at cutoff `Lambda` to renormalised mass and coupling.
pub fn renormalize(m2_bare: f64, lambda_bare: f64, cutoff: f64) -> Result<Renormalized> {
    let m_r2 = bare_gap(m2_bare, lambda_bare, 0.0, cutoff)?;
    if m_r2 <= 0.0 {
        return Err(Error::NoPositiveSolution);
    }
    let m_r = sqrt(m_r2);
    let im1 = stevenson_integrals(m_r, cutoff)?.im1;
    let x = lambda_bare * im1;
    let lambda_r = lambda_bare * (1.0 - 12.0 * x) / (1.0 + 6.0 * x);
    Ok(Renormalized { m_r, lambda_r, im1 })
}

/// How the bare coupling is recovered from the renormalised one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InverseOrder {
    /// Root of the quadratic `12 x^2 + (6 r - 1) x + r = 0`, `x = lambda I_-1`, `r = lambda_R I_-1`.
    Exact,
    /// `lambda = -(1 / 6 I_-1)(1 + 1 / (2 lambda_R I_-1))`, `m^2 = m_R^2 + 2 I0 / I_-1`.
    Leading,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BareParams {
    pub m2: f64,
    pub lambda: f64,
    pub order: InverseOrder,
}

/// Negative-bare-coupling branch with `|lambda| I_-1 -> 1/6` as the cutoff grows.
pub fn bare_from_renormalized(m_r: f64, lambda_r: f64, cutoff: f64, order: InverseOrder) -> Result<BareParams> {
    if !(m_r > 0.0) {
        return Err(Error::InvalidParameter { name: "m_r", reason: "must be positive" });
    }
    let ints = stevenson_integrals(m_r, cutoff)?;
    let r = lambda_r * ints.im1;
    let threshold = branch_threshold();
    if !(r >= threshold) {
        return Err(Error::BranchUnavailable { product: r, threshold });
    }
    let (lambda, m2) = match order {
        InverseOrder::Exact => {
            let disc = 36.0 * r * r - 60.0 * r + 1.0;
            let x = (1.0 - 6.0 * r + sqrt(disc.max(0.0))) / 24.0;
            let lambda = x / ints.im1;
            (lambda, m_r * m_r - 12.0 * lambda * ints.i0)
        }
        InverseOrder::Leading => {
            let lambda = -(1.0 + 0.5 / r) / (6.0 * ints.im1);
            (lambda, m_r * m_r + 2.0 * ints.i0 / ints.im1)
        }
    };
    Ok(BareParams { m2, lambda, order })
}

/// Largest `s = 16 pi^2 sigma^2 / m_R^2` for which the renormalised gap
/// equation has a solution: `e^{-eta} + eta - 1`.
pub fn solvability_edge(eta: f64) -> f64 {
    exp(-eta) + eta - 1.0
}

/// `sigma_min / m_R`, the edge of the domain of the renormalised potential.
pub fn domain_edge(eta: f64) -> f64 {
    sqrt(solvability_edge(eta) / SIXTEEN_PI_SQ)
}

fn gap_function(eta: f64, s: f64, t: f64) -> (f64, f64) {
    ((1.0 - eta) * (t - 1.0) - s - t * log(t), -eta - log(t))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapRoots {
    /// Branch continuously connected to `t = 1` at `sigma = 0`.
    pub physical: f64,
    /// The root on the far side of the tangency point, if any.
    pub other: Option<f64>,
}

/// Physical solution `t` of `(1 - eta)(t - 1) - 16 pi^2 (sigma/m_R)^2 = t ln t`.
pub fn renormalized_gap(eta: f64, sigma_over_mr: f64) -> Result<f64> {
    Ok(renormalized_gap_roots(eta, sigma_over_mr)?.physical)
}

pub fn renormalized_gap_roots(eta: f64, sigma_over_mr: f64) -> Result<GapRoots> {
    if !eta.is_finite() || !sigma_over_mr.is_finite() {
        return Err(Error::InvalidParameter { name: "eta", reason: "must be finite" });
    }
    let s = SIXTEEN_PI_SQ * sigma_over_mr * sigma_over_mr;
    let s_max = solvability_edge(eta);
    if s > s_max * (1.0 + 1e-12) + 1e-300 {
        return Err(Error::OutsideDomain { edge: domain_edge(eta) });
    }
    let t_star = exp(-eta);
    let physical = if s == 0.0 {
        1.0
    } else if s >= s_max {
        t_star
    } else {
        let (lo, hi) = if t_star < 1.0 { (t_star, 1.0) } else { (1.0, t_star) };
        newton_bracketed(|t| gap_function(eta, s, t), lo, hi, 1e-15, 300)?
    };
    let other = if s >= s_max || eta == 0.0 {
        None
    } else if t_star < 1.0 {
        // F(0+) = eta - 1 - s
        if eta - 1.0 - s < 0.0 {
            newton_bracketed(|t| gap_function(eta, s, t), 0.0, t_star, 1e-15, 300).ok()
        } else {
            None
        }
    } else {
        let mut hi = 2.0 * t_star;
        while gap_function(eta, s, hi).0 > 0.0 && hi < 1e300 {
            hi *= 2.0;
        }
        newton_bracketed(|t| gap_function(eta, s, t), t_star, hi, 1e-15, 300).ok()
    };
    Ok(GapRoots { physical, other })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpPoint {
    pub sigma: f64,
    pub t: f64,
    /// `U(sigma) - U_min`
    pub u: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EffectivePotentialCurve {
    pub eta: f64,
    pub m_r: f64,
    pub points: Vec<EpPoint>,
    /// Value of the potential at its minimum in this (cutoff-free) representation.
    pub u_min: f64,
    /// `sigma_min`
    pub domain_edge: f64,
}

/// `U(sigma) - U_min` from `t(sigma)`.
pub fn renormalized_potential(eta: f64, m_r: f64, sigma: f64, t: f64) -> f64 {
    let m2 = m_r * m_r;
    let m4 = m2 * m2;
    let d = t - 1.0;
    0.25 * t * m2 * sigma * sigma - m4 / (128.0 * PI * PI) * d * d - m4 / (64.0 * PI * PI) * d * eta
}

pub fn effective_potential(eta: f64, m_r: f64, sigma_grid: &[f64]) -> Result<EffectivePotentialCurve> {
    if !(m_r > 0.0) || !m_r.is_finite() {
        return Err(Error::InvalidParameter { name: "m_r", reason: "must be positive" });
    }
    let points = sigma_grid
        .iter()
        .map(|&sigma| {
            let t = renormalized_gap(eta, sigma / m_r)?;
            Ok(EpPoint { sigma, t, u: renormalized_potential(eta, m_r, sigma, t) })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EffectivePotentialCurve { eta, m_r, points, u_min: 0.0, domain_edge: m_r * domain_edge(eta) })
}

/// `U_min = I1(m_R) - 3 lambda I0(m_R)^2` at finite cutoff.
pub fn gaussian_vacuum_energy(m2_bare: f64, lambda_bare: f64, cutoff: f64) -> Result<f64> {
    let m2 = bare_gap(m2_bare, lambda_bare, 0.0, cutoff)?;
    let i = stevenson_integrals(sqrt(m2), cutoff)?;
    Ok(i.i1 - 3.0 * lambda_bare * i.i0 * i.i0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutoffStep {
    pub cutoff: f64,
    /// `m^2 + 12 lambda I0(m)` at the given bare coupling.
    pub m_r_bar_sq: f64,
    /// Bare coupling that holds the renormalised mass at its value at the first cutoff.
    pub lambda_for_fixed_mass: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrivialityReport {
    /// For `lambda < 0`: a field value below the perturbative vacuum.
    pub instability_sigma: Option<f64>,
    pub cutoff_steps: Vec<CutoffStep>,
    pub u_min_gaussian: Option<f64>,
    pub u_min_perturbative: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PerturbativeEp {
    /// `(sigma, U^P(sigma))`
    pub points: Vec<(f64, f64)>,
    pub m_r_bar_sq: f64,
    pub lambda_r_bar: f64,
    pub report: TrivialityReport,
}

fn perturbative_value(m2: f64, lambda: f64, ints: &StevensonIntegrals, sigma: f64) -> f64 {
    let s2 = sigma * sigma;
    0.5 * m2 * s2 + lambda * s2 * s2 + ints.i1 + 6.0 * lambda * s2 * ints.i0 + 3.0 * lambda * ints.i0 * ints.i0
}

/// Effective potential built on the free (perturbative) vacuum of mass `m`.
pub fn perturbative_ep(m2_bare: f64, lambda_bare: f64, cutoff: f64, sigma_grid: &[f64]) -> Result<PerturbativeEp> {
    if !(m2_bare >= 0.0) {
        return Err(Error::InvalidParameter { name: "m2", reason: "must be non-negative" });
    }
    let ints = stevenson_integrals(sqrt(m2_bare), cutoff)?;
    let points = sigma_grid.iter().map(|&s| (s, perturbative_value(m2_bare, lambda_bare, &ints, s))).collect();
    let m_r_bar_sq = m2_bare + 12.0 * lambda_bare * ints.i0;
    let u0 = perturbative_value(m2_bare, lambda_bare, &ints, 0.0);

    let instability_sigma = if lambda_bare < 0.0 {
        // U(sigma) - U(0) = sigma^2 (m^2/2 + 6 lambda I0) + lambda sigma^4
        let crossing = (0.5 * m2_bare + 6.0 * lambda_bare * ints.i0) / (-lambda_bare);
        let sigma = sqrt(2.0 * crossing.max(1.0));
        (perturbative_value(m2_bare, lambda_bare, &ints, sigma) < u0).then_some(sigma)
    } else {
        None
    };

    let cutoff_steps = (0..6)
        .map(|j| {
            let c = cutoff * (1u32 << j) as f64;
            let i = stevenson_integrals(sqrt(m2_bare), c)?;
            Ok(CutoffStep {
                cutoff: c,
                m_r_bar_sq: m2_bare + 12.0 * lambda_bare * i.i0,
                lambda_for_fixed_mass: (m_r_bar_sq - m2_bare) / (12.0 * i.i0),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let u_min_gaussian = gaussian_vacuum_energy(m2_bare, lambda_bare, cutoff).ok();
    Ok(PerturbativeEp {
        points,
        m_r_bar_sq,
        lambda_r_bar: lambda_bare,
        report: TrivialityReport { instability_sigma, cutoff_steps, u_min_gaussian, u_min_perturbative: u0 },
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CondensateRow {
    pub k: f64,
    pub n: f64,
    pub rho: f64,
}

/// Momentum distribution of bare quanta in the Gaussian vacuum, and the
/// cutoff-free pair-condensate profile.
pub fn condensate_density(m_bare: f64, m_r: f64, k_grid: &[f64]) -> Result<Vec<CondensateRow>> {
    if !(m_r > 0.0) || !(m_bare >= 0.0) {
        return Err(Error::InvalidParameter { name: "m_r", reason: "masses must be positive" });
    }
    Ok(k_grid
        .iter()
        .map(|&k| {
            let w = sqrt(k * k + m_bare * m_bare);
            let wr = sqrt(k * k + m_r * m_r);
            let n = (w / wr + wr / w - 2.0) / (32.0 * PI * PI * PI);
            CondensateRow { k, n, rho: 1.0 / sqrt(1.0 + k * k / (m_r * m_r)) }
        })
        .collect())
}
