//! Per-level frequency (and shift) from the stationarity of `<n|H|n>`.

use core::f64::consts::FRAC_PI_2;
use core::f64::consts::FRAC_PI_6;

use libm::{asin, cos, fabs, pow, sqrt};

use crate::model::{Level, OscillatorClass, OscillatorSpec, Phase, PotentialParams};
use crate::roots::{cubic_largest_root, newton_bracketed};
use crate::spectrum::moments;
use crate::{Error, Result};

/// Critical coupling for `g = 1, n = 0` as printed in the literature this
/// scheme comes from. It disagrees with [`critical_coupling`] (0.0907...),
/// which is what the phase map uses; kept only for comparison output.
pub const PRINTED_GROUND_CRITICAL_COUPLING: f64 = 0.0362886;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapSolution {
    pub omega: f64,
    pub sigma: f64,
    pub phase: Phase,
    /// Absolute residual of the polynomial gap equation at `omega`.
    pub residual: f64,
    /// Modulus of the trigonometric root (broken phase only).
    pub rho: Option<f64>,
    /// Angle of the trigonometric root (broken phase only).
    pub theta: Option<f64>,
}

/// Largest quartic coupling at which the broken-phase solution for `level`
/// is real: `(2g/3)^{3/2} / (3 p(xi))`.
pub fn critical_coupling(g: f64, level: Level) -> Result<f64> {
    if !(g > 0.0) || !g.is_finite() {
        return Err(Error::InvalidParameter { name: "g", reason: "must be positive" });
    }
    let lf = level.functions();
    Ok(pow(2.0 * g / 3.0, 1.5) / (3.0 * lf.p))
}

/// Broken phase for a quartic double well at or below the critical coupling,
/// restored phase everywhere else.
pub fn select_phase(spec: &OscillatorSpec, level: Level) -> Phase {
    if spec.class() != OscillatorClass::QuarticDwo {
        return Phase::SymmetryRestored;
    }
    match critical_coupling(spec.g(), level) {
        Ok(lc) if spec.lambda() <= lc => Phase::SymmetryBroken,
        _ => Phase::SymmetryRestored,
    }
}

pub fn solve_gap(spec: &OscillatorSpec, level: Level, phase: Phase) -> Result<GapSolution> {
    let g = spec.g();
    let lambda = spec.lambda();
    let lf = level.functions();
    let xi = lf.xi;

    if phase == Phase::SymmetryBroken {
        if spec.class() != OscillatorClass::QuarticDwo {
            return Err(Error::WrongClass);
        }
        let lc = critical_coupling(g, level)?;
        if lambda > lc {
            return Err(Error::PhaseNotAvailable { lambda, critical: lc });
        }
        let rho = sqrt(2.0 * g / 3.0);
        let ratio = lambda / lc;
        let omega = 2.0 * rho * cos(FRAC_PI_6 + asin(ratio) / 3.0);
        let sigma = sqrt((g - 12.0 * lambda * xi / omega) / (4.0 * lambda));
        let c = 6.0 * lambda * lf.f;
        let residual = omega * omega * omega - omega * (12.0 * lambda * sigma * sigma - g) - c;
        check_residual(residual, c)?;
        return Ok(GapSolution {
            omega,
            sigma,
            phase,
            residual: fabs(residual),
            rho: Some(rho),
            theta: Some(FRAC_PI_2 + asin(ratio)),
        });
    }

    if spec.is_free() {
        return Ok(GapSolution {
            omega: sqrt(g),
            sigma: 0.0,
            phase,
            residual: 0.0,
            rho: None,
            theta: None,
        });
    }

    let s = spec.class().quadratic_sign();
    let (omega, residual, scale) = match spec.class() {
        OscillatorClass::QuarticAho | OscillatorClass::QuarticDwo => {
            let c = 6.0 * lambda * lf.f;
            let w = cubic_largest_root(-s * g, c);
            (w, w * w * w - s * g * w - c, c)
        }
        OscillatorClass::SexticAho | OscillatorClass::SexticDwo => {
            let d = 15.0 * lambda * (5.0 + 4.0 * xi * xi);
            let root = sqrt(g * g + d);
            let w2 = if s > 0.0 { 0.5 * (g + root) } else { 0.5 * d / (g + root) };
            let w = sqrt(w2);
            (w, w2 * w2 - s * g * w2 - 0.25 * d, 0.25 * d)
        }
        OscillatorClass::OcticAho => {
            let c = 35.0 * lambda * lf.h;
            let lo = sqrt(g);
            let hi = pow(c, 0.2) + lo + 1.0;
            let w = newton_bracketed(
                |w| {
                    let w2 = w * w;
                    (w2 * w2 * w - g * w2 * w - c, 5.0 * w2 * w2 - 3.0 * g * w2)
                },
                lo,
                hi,
                1e-15,
                200,
            )?;
            let w2 = w * w;
            (w, w2 * w2 * w - g * w2 * w - c, c)
        }
    };
    check_residual(residual, scale)?;
    Ok(GapSolution { omega, sigma: 0.0, phase, residual: fabs(residual), rho: None, theta: None })
}

fn check_residual(residual: f64, scale: f64) -> Result<()> {
    if !residual.is_finite() || fabs(residual) > 1e-10 * scale.max(1.0) {
        return Err(Error::InconsistentGap { residual });
    }
    Ok(())
}

/// Coefficients of the fitted quadratic `A phi^2 - B phi + C` and the
/// constant `h0` of the reference Hamiltonian for `level`.
pub fn potential_params(spec: &OscillatorSpec, level: Level, gap: &GapSolution) -> Result<PotentialParams> {
    let lambda = spec.lambda();
    let lf = level.functions();
    let w = gap.omega;
    let sigma = gap.sigma;
    let a = match spec.class().half_power() {
        2 => 6.0 * sigma * sigma + 3.0 * lf.f / w,
        3 => 15.0 * (5.0 + 4.0 * lf.xi * lf.xi) / (8.0 * w * w),
        _ => 35.0 * lf.h / (2.0 * w * w * w),
    };
    let w2 = spec.class().quadratic_sign() * spec.g() + 2.0 * lambda * a;
    let mismatch = (w2 - w * w) / (w * w);
    if !(fabs(mismatch) <= 1e-10) {
        return Err(Error::InconsistentGap { residual: mismatch });
    }
    let b = if lambda > 0.0 { w * w * sigma / lambda } else { 0.0 };
    let m = moments(gap, level);
    let c = m.even(spec.class().anharmonic_power()) - a * m.m2 + b * m.m1;
    let h0 = lambda * c - 0.5 * w * w * sigma * sigma;
    Ok(PotentialParams { a, b, c, h0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::bisect;
    use approx::assert_relative_eq;

    fn spec(class: OscillatorClass, lambda: f64) -> OscillatorSpec {
        OscillatorSpec::new(class, 1.0, lambda).unwrap()
    }

    #[test]
    fn critical_coupling_ground_value() {
        assert_relative_eq!(critical_coupling(1.0, Level(0)).unwrap(), 0.090_721_842_325_302_89, max_relative = 1e-14);
    }

    #[test]
    fn quartic_aho_ground_strong_and_weak() {
        // omega^3 - omega - 6 = 0 has the root 2 exactly.
        let s = spec(OscillatorClass::QuarticAho, 1.0);
        let gap = solve_gap(&s, Level(0), Phase::SymmetryRestored).unwrap();
        assert_relative_eq!(gap.omega, 2.0, max_relative = 1e-15);

        let s = spec(OscillatorClass::QuarticAho, 1e-9);
        let gap = solve_gap(&s, Level(0), Phase::SymmetryRestored).unwrap();
        assert_relative_eq!(gap.omega, 1.0 + 3e-9, max_relative = 1e-15);
    }

    #[test]
    fn all_classes_match_bisection() {
        for class in OscillatorClass::ALL {
            for &lambda in &[1e-6, 0.1, 1.0, 37.0, 1e6] {
                for n in [0u32, 1, 5, 40] {
                    let s = spec(class, lambda);
                    let lf = Level(n).functions();
                    let sg = class.quadratic_sign();
                    let gap = solve_gap(&s, Level(n), Phase::SymmetryRestored).unwrap();
                    let f = |w: f64| -> f64 {
                        match class.half_power() {
                            2 => w * w * w - sg * w - 6.0 * lambda * lf.f,
                            3 => {
                                w * w * w * w - sg * w * w - 3.75 * lambda * (5.0 + 4.0 * lf.xi * lf.xi)
                            }
                            _ => libm::pow(w, 5.0) - w * w * w - 35.0 * lambda * lf.h,
                        }
                    };
                    let lo = if sg > 0.0 { 1.0 } else { 1e-12 };
                    let w = bisect(f, lo, 1e4, 1e-15).unwrap();
                    assert_relative_eq!(gap.omega, w, max_relative = 1e-12);
                }
            }
        }
    }

    #[test]
    fn broken_phase_limits() {
        let lc = critical_coupling(1.0, Level(0)).unwrap();
        let s = spec(OscillatorClass::QuarticDwo, lc);
        let gap = solve_gap(&s, Level(0), Phase::SymmetryBroken).unwrap();
        assert_relative_eq!(gap.omega, sqrt(2.0 / 3.0), max_relative = 1e-12);
        assert!(gap.sigma > 0.0);

        let s = spec(OscillatorClass::QuarticDwo, 1e-8);
        let gap = solve_gap(&s, Level(0), Phase::SymmetryBroken).unwrap();
        assert_relative_eq!(gap.omega, sqrt(2.0), max_relative = 1e-7);
        assert_relative_eq!(gap.sigma * gap.sigma, 0.25e8, max_relative = 1e-6);
    }

    #[test]
    fn broken_phase_above_critical_is_unavailable() {
        let s = spec(OscillatorClass::QuarticDwo, 0.2);
        assert!(matches!(
            solve_gap(&s, Level(0), Phase::SymmetryBroken),
            Err(Error::PhaseNotAvailable { .. })
        ));
        assert!(matches!(
            solve_gap(&spec(OscillatorClass::QuarticAho, 0.01), Level(0), Phase::SymmetryBroken),
            Err(Error::WrongClass)
        ));
    }

    #[test]
    fn phase_map_follows_critical_coupling() {
        let s = spec(OscillatorClass::QuarticDwo, 0.05);
        assert_eq!(select_phase(&s, Level(0)), Phase::SymmetryBroken);
        assert_eq!(select_phase(&s, Level(3)), Phase::SymmetryRestored);
        assert_eq!(select_phase(&spec(OscillatorClass::QuarticAho, 0.01), Level(0)), Phase::SymmetryRestored);
    }

    #[test]
    fn free_limit_is_harmonic() {
        let s = OscillatorSpec::free(OscillatorClass::OcticAho, 4.0).unwrap();
        let gap = solve_gap(&s, Level(7), Phase::SymmetryRestored).unwrap();
        assert_eq!(gap.omega, 2.0);
    }

    #[test]
    fn fitted_quadratic_reproduces_frequency() {
        for class in OscillatorClass::ALL {
            let s = spec(class, 0.7);
            let gap = solve_gap(&s, Level(3), Phase::SymmetryRestored).unwrap();
            let pp = potential_params(&s, Level(3), &gap).unwrap();
            assert_relative_eq!(
                class.quadratic_sign() + 2.0 * 0.7 * pp.a,
                gap.omega * gap.omega,
                max_relative = 1e-12
            );
            assert_eq!(pp.b, 0.0);
        }
    }
}
