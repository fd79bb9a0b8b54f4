//! Oscillator families, levels, phases and the fitted harmonic parameters.

use core::fmt;
use core::str::FromStr;

use crate::{Error, Result};

/// The five oscillator families. Couplings are always stored positive; the
/// double-well sign lives in [`OscillatorClass::quadratic_sign`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OscillatorClass {
    QuarticAho,
    QuarticDwo,
    SexticAho,
    SexticDwo,
    OcticAho,
}

impl OscillatorClass {
    pub const ALL: [OscillatorClass; 5] = [
        OscillatorClass::QuarticAho,
        OscillatorClass::QuarticDwo,
        OscillatorClass::SexticAho,
        OscillatorClass::SexticDwo,
        OscillatorClass::OcticAho,
    ];

    /// Half the power of the anharmonic term: 2, 3 or 4.
    pub fn half_power(self) -> u32 {
        match self {
            OscillatorClass::QuarticAho | OscillatorClass::QuarticDwo => 2,
            OscillatorClass::SexticAho | OscillatorClass::SexticDwo => 3,
            OscillatorClass::OcticAho => 4,
        }
    }

    pub fn anharmonic_power(self) -> u32 {
        2 * self.half_power()
    }

    /// +1 for single wells, -1 for double wells.
    pub fn quadratic_sign(self) -> f64 {
        if self.is_double_well() {
            -1.0
        } else {
            1.0
        }
    }

    pub fn is_double_well(self) -> bool {
        matches!(self, OscillatorClass::QuarticDwo | OscillatorClass::SexticDwo)
    }

    pub fn name(self) -> &'static str {
        match self {
            OscillatorClass::QuarticAho => "quartic-aho",
            OscillatorClass::QuarticDwo => "quartic-dwo",
            OscillatorClass::SexticAho => "sextic-aho",
            OscillatorClass::SexticDwo => "sextic-dwo",
            OscillatorClass::OcticAho => "octic-aho",
        }
    }
}

impl fmt::Display for OscillatorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OscillatorClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        OscillatorClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or(Error::InvalidParameter { name: "class", reason: "unknown oscillator class" })
    }
}

/// `H = p^2/2 + s*g*phi^2/2 + lambda*phi^(2k)` with `s = quadratic_sign`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorSpec {
    class: OscillatorClass,
    g: f64,
    lambda: f64,
}

impl OscillatorSpec {
    pub fn new(class: OscillatorClass, g: f64, lambda: f64) -> Result<Self> {
        check_positive("g", g)?;
        check_positive("lambda", lambda)?;
        Ok(OscillatorSpec { class, g, lambda })
    }

    /// The harmonic limit `lambda = 0`. Only single wells have one.
    pub fn free(class: OscillatorClass, g: f64) -> Result<Self> {
        check_positive("g", g)?;
        if class.is_double_well() {
            return Err(Error::InvalidParameter {
                name: "lambda",
                reason: "a double well needs lambda > 0 to have bound states",
            });
        }
        Ok(OscillatorSpec { class, g, lambda: 0.0 })
    }

    /// `new` for `lambda > 0`, `free` for `lambda == 0`.
    pub fn with_coupling(class: OscillatorClass, g: f64, lambda: f64) -> Result<Self> {
        if lambda == 0.0 {
            Self::free(class, g)
        } else {
            Self::new(class, g, lambda)
        }
    }

    pub fn class(&self) -> OscillatorClass {
        self.class
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn is_free(&self) -> bool {
        self.lambda == 0.0
    }
}

fn check_positive(name: &'static str, x: f64) -> Result<()> {
    if !x.is_finite() {
        return Err(Error::InvalidParameter { name, reason: "must be finite" });
    }
    if x <= 0.0 {
        return Err(Error::InvalidParameter { name, reason: "must be positive" });
    }
    Ok(())
}

/// Energy level index `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Level(pub u32);

impl Level {
    pub fn n(self) -> u32 {
        self.0
    }

    /// `xi = n + 1/2`.
    pub fn xi(self) -> f64 {
        self.0 as f64 + 0.5
    }

    pub fn functions(self) -> LevelFunctions {
        LevelFunctions::at(self.xi())
    }
}

/// The three level polynomials that enter the gap equations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelFunctions {
    pub xi: f64,
    /// `xi + 1/(4 xi)`
    pub f: f64,
    /// `5 xi - 1/(4 xi)`
    pub p: f64,
    /// `xi^3 + 7 xi/2 + 9/(16 xi)`
    pub h: f64,
}

impl LevelFunctions {
    pub fn at(xi: f64) -> Self {
        LevelFunctions {
            xi,
            f: xi + 0.25 / xi,
            p: 5.0 * xi - 0.25 / xi,
            h: xi * xi * xi + 3.5 * xi + 9.0 / (16.0 * xi),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    /// `sigma = 0`
    SymmetryRestored,
    /// `sigma != 0`, quartic double well below the critical coupling only.
    SymmetryBroken,
}

impl Phase {
    pub fn tag(self) -> &'static str {
        match self {
            Phase::SymmetryRestored => "SR",
            Phase::SymmetryBroken => "SSB",
        }
    }
}

/// `V(phi) = A phi^2 - B phi + C` fitted so that `H0 = p^2/2 + omega^2 (phi - sigma)^2 / 2 + h0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub h0: f64,
}
