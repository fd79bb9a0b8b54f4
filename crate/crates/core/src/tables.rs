//! Normalisation maps between the library's Hamiltonians and the published
//! reference tables.
//!
//! The reference tables use different Hamiltonian normalisations, so every
//! tabulated quantity gets an explicit affine map applied identically to the
//! leading-order value and to the oracle eigenvalue.

use core::fmt;
use core::str::FromStr;

use crate::model::{Level, OscillatorClass, OscillatorSpec, Phase};
use crate::oracle::converged_levels;
use crate::spectrum::energy_lo_in;
use crate::{Error, Result};

/// A tabulated energy column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tabulated {
    /// `p^2/2 + x^2/2 + lambda x^4`, level `n`.
    QuarticAho,
    /// `p^2/2 - x^2/2 + lambda x^4` in the symmetric phase, measured from the
    /// bottom of the wells (`+ 1/(16 lambda)`).
    QuarticDwoWellBottom,
    /// `p^2 + x^2 + lambda x^6`, i.e. twice the `g = 1`, `lambda/2` oscillator.
    SexticAho,
    /// `p^2 + W^2 + W'` with `W = beta x^3`, level `n` (`lambda` is `beta`).
    SusySingleWell,
    /// `p^2 + W^2 - W'`, level `n + 1` (`lambda` is `beta`).
    SusyDoubleWellNext,
    /// `p^2 + x^2 + 2 lambda x^8`, i.e. twice the `g = 1` octic oscillator.
    OcticAho,
}

impl Tabulated {
    pub const ALL: [Tabulated; 6] = [
        Tabulated::QuarticAho,
        Tabulated::QuarticDwoWellBottom,
        Tabulated::SexticAho,
        Tabulated::SusySingleWell,
        Tabulated::SusyDoubleWellNext,
        Tabulated::OcticAho,
    ];

    /// Reference table holding this column.
    pub fn table(self) -> u8 {
        match self {
            Tabulated::QuarticAho => 1,
            Tabulated::QuarticDwoWellBottom => 2,
            Tabulated::SexticAho => 3,
            Tabulated::SusySingleWell | Tabulated::SusyDoubleWellNext => 4,
            Tabulated::OcticAho => 5,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Tabulated::QuarticAho => "quartic-aho",
            Tabulated::QuarticDwoWellBottom => "quartic-dwo-well-bottom",
            Tabulated::SexticAho => "sextic-aho",
            Tabulated::SusySingleWell => "susy-single-well",
            Tabulated::SusyDoubleWellNext => "susy-double-well-next",
            Tabulated::OcticAho => "octic-aho",
        }
    }

    /// Spec, level and phase whose energy `E` maps to the tabulated value as
    /// `scale * E + offset`.
    pub fn mapping(self, lambda: f64, n: u32) -> Result<Mapping> {
        let map = |class, g, l, level, phase, scale, offset| -> Result<Mapping> {
            Ok(Mapping { spec: OscillatorSpec::new(class, g, l)?, level: Level(level), phase, scale, offset })
        };
        match self {
            Tabulated::QuarticAho => map(OscillatorClass::QuarticAho, 1.0, lambda, n, Phase::SymmetryRestored, 1.0, 0.0),
            Tabulated::QuarticDwoWellBottom => map(
                OscillatorClass::QuarticDwo,
                1.0,
                lambda,
                n,
                Phase::SymmetryRestored,
                1.0,
                1.0 / (16.0 * lambda),
            ),
            Tabulated::SexticAho => {
                map(OscillatorClass::SexticAho, 1.0, 0.5 * lambda, n, Phase::SymmetryRestored, 2.0, 0.0)
            }
            Tabulated::SusySingleWell => {
                map(OscillatorClass::SexticAho, 3.0 * lambda, 0.5 * lambda * lambda, n, Phase::SymmetryRestored, 2.0, 0.0)
            }
            Tabulated::SusyDoubleWellNext => map(
                OscillatorClass::SexticDwo,
                3.0 * lambda,
                0.5 * lambda * lambda,
                n + 1,
                Phase::SymmetryRestored,
                2.0,
                0.0,
            ),
            Tabulated::OcticAho => map(OscillatorClass::OcticAho, 1.0, lambda, n, Phase::SymmetryRestored, 2.0, 0.0),
        }
    }

    /// Leading-order value in the table's normalisation.
    pub fn leading_order(self, lambda: f64, n: u32) -> Result<f64> {
        let m = self.mapping(lambda, n)?;
        Ok(m.apply(energy_lo_in(&m.spec, m.level, m.phase)?))
    }

    /// Oracle eigenvalue in the table's normalisation.
    pub fn oracle(self, lambda: f64, n: u32, tol: f64) -> Result<f64> {
        let m = self.mapping(lambda, n)?;
        let levels = m.level.n() as usize + 1;
        let r = converged_levels(&m.spec, levels, tol, None)?;
        Ok(m.apply(r.eigenvalues[levels - 1]))
    }
}

impl fmt::Display for Tabulated {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Tabulated {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Tabulated::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or(Error::InvalidParameter { name: "column", reason: "unknown tabulated column" })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mapping {
    pub spec: OscillatorSpec,
    pub level: Level,
    pub phase: Phase,
    pub scale: f64,
    pub offset: f64,
}

impl Mapping {
    pub fn apply(&self, energy: f64) -> f64 {
        self.scale * energy + self.offset
    }
}

/// Relative tolerance for comparing against a table printed to 4-6 digits.
pub fn table_tolerance(table: u8) -> Result<f64> {
    match table {
        1 | 2 => Ok(2e-4),
        3..=5 => Ok(1e-3),
        _ => Err(Error::InvalidParameter { name: "table", reason: "must be 1..5" }),
    }
}

/// `100 |value - reference| / reference`.
pub fn percent_error(value: f64, reference: f64) -> f64 {
    100.0 * libm::fabs(value - reference) / libm::fabs(reference)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn published_spot_values() {
        // two entries per column, each to the printed digits
        let cases = [
            (Tabulated::QuarticAho, 1.0, 0, 0.8125),
            (Tabulated::QuarticAho, 100.0, 0, 3.1924),
            (Tabulated::QuarticDwoWellBottom, 0.1, 0, 0.5496),
            (Tabulated::QuarticDwoWellBottom, 1.0, 0, 0.5989),
            (Tabulated::SexticAho, 0.2, 0, 1.193),
            (Tabulated::SexticAho, 2.0, 0, 1.676),
            (Tabulated::SusySingleWell, 1.0, 0, 1.95608),
            (Tabulated::SusySingleWell, 1.0, 1, 6.37732),
            (Tabulated::SusyDoubleWellNext, 1.0, 0, 2.38721),
            (Tabulated::SusyDoubleWellNext, 1.0, 10, 80.0462),
            (Tabulated::OcticAho, 1.0, 0, 1.7794),
            (Tabulated::OcticAho, 0.1, 0, 1.3005),
        ];
        for (col, lambda, n, expected) in cases {
            let v = col.leading_order(lambda, n).unwrap();
            assert_relative_eq!(v, expected, max_relative = table_tolerance(col.table()).unwrap());
        }
    }

    #[test]
    fn oracle_under_the_same_map() {
        let e = Tabulated::QuarticAho.oracle(1.0, 0, 1e-10).unwrap();
        assert_relative_eq!(e, 0.8038, max_relative = 1e-4);
        let e = Tabulated::SusyDoubleWellNext.oracle(1.0, 0, 1e-10).unwrap();
        assert_relative_eq!(e, 1.93548, max_relative = 1e-5);
    }

    #[test]
    fn names_round_trip() {
        for t in Tabulated::ALL {
            assert_eq!(t.name().parse::<Tabulated>().unwrap(), t);
        }
        assert!("table-9".parse::<Tabulated>().is_err());
        assert!(table_tolerance(6).is_err());
    }
}
