use std::path::PathBuf;

use anharmonic_core::ipt::Denominator;
use anharmonic_core::OscillatorClass;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::Format;

#[derive(Debug, Parser)]
#[command(name = "anharmonic", version, about = "Gap equations, spectra and reference checks for anharmonic oscillators")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write results to a file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Exit with status 1 if any reference comparison fails.
    #[arg(long, global = true)]
    pub check: bool,
    /// Emit curves as `series,x,y` rows.
    #[arg(long, global = true)]
    pub plot_data: bool,
    #[arg(long, global = true, value_enum, default_value_t = DenominatorArg::LoLevels)]
    pub ipt_denominator: DenominatorArg,
    /// Perturbative order of reported energies.
    #[arg(long, global = true, default_value_t = 0, value_parser = parse_order)]
    pub order: u32,
    #[command(subcommand)]
    pub command: Command,
}

fn parse_order(s: &str) -> Result<u32, String> {
    match s {
        "0" => Ok(0),
        "2" => Ok(2),
        "3" => Ok(3),
        _ => Err("order must be 0, 2 or 3".into()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DenominatorArg {
    Fixed,
    LoLevels,
}

impl From<DenominatorArg> for Denominator {
    fn from(d: DenominatorArg) -> Self {
        match d {
            DenominatorArg::Fixed => Denominator::Fixed,
            DenominatorArg::LoLevels => Denominator::LoLevels,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PhaseArg {
    Sr,
    Ssb,
}

#[derive(Debug, Args)]
pub struct SpecArgs {
    /// quartic-aho, quartic-dwo, sextic-aho, sextic-dwo or octic-aho.
    #[arg(long)]
    pub class: OscillatorClass,
    #[arg(long, default_value_t = 1.0)]
    pub g: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: f64,
}

#[derive(Debug, Args)]
pub struct LevelArgs {
    /// First level.
    #[arg(long, default_value_t = 0)]
    pub n: u32,
    /// Last level (defaults to `--n`).
    #[arg(long)]
    pub n_max: Option<u32>,
    /// Force a phase instead of the energetically preferred one.
    #[arg(long, value_enum)]
    pub phase: Option<PhaseArg>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Leading-order energies with optional perturbative corrections.
    Spectrum {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        levels: LevelArgs,
    },
    /// Gap-equation solutions and the fitted quadratic potential.
    Gap {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        levels: LevelArgs,
    },
    /// First-, second- and third-order corrections.
    Ipt {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        levels: LevelArgs,
    },
    /// Converged eigenvalues from truncated-basis diagonalisation.
    Oracle {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 5)]
        levels: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        basis_frequency: Option<f64>,
    },
    /// Leading order and corrections side by side with the oracle.
    Compare {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 5)]
        levels: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Recompute a reference table and compare entry by entry.
    Table {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=5))]
        id: u8,
    },
    /// Partner spectra of the sextic oscillators.
    Susy {
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
        #[arg(long, default_value_t = 19)]
        n_max: u32,
        #[arg(long, value_enum, default_value_t = SusyView::Ispp)]
        view: SusyView,
        /// Half-width of the field range for `--plot-data`.
        #[arg(long, default_value_t = 3.0)]
        phi_max: f64,
        #[arg(long, default_value_t = 121)]
        points: usize,
    },
    /// Bogoliubov vacuum, condensate and stability of the quartic oscillator.
    Vacuum {
        #[arg(long, value_delimiter = ',', default_values_t = [1e-3, 1e-2, 0.1, 1.0, 10.0, 100.0])]
        lambda: Vec<f64>,
        /// Field range of the effective potential for `--plot-data`.
        #[arg(long, default_value_t = 2.0)]
        sigma_max: f64,
        #[arg(long, default_value_t = 81)]
        points: usize,
    },
    /// Scalar field theory in 3+1 dimensions.
    Qft {
        #[command(subcommand)]
        command: QftCommand,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SusyView {
    /// Leading-order partner energies.
    Ispp,
    /// Oracle partner energies.
    Exact,
    /// Ground-state wavefunctions and their overlap.
    Overlap,
}

#[derive(Debug, Subcommand)]
pub enum QftCommand {
    /// Renormalised effective potential across its domain.
    Ep {
        #[arg(long, allow_negative_numbers = true)]
        eta: f64,
        #[arg(long, default_value_t = 1.0)]
        mr: f64,
        #[arg(long, default_value_t = 41)]
        points: usize,
    },
    /// Mass-gap ratio at one field value.
    Gap {
        #[arg(long, allow_negative_numbers = true)]
        eta: f64,
        /// Field in units of the renormalised mass.
        #[arg(long, allow_negative_numbers = true)]
        sigma: f64,
    },
    /// Momentum distribution of the vacuum condensate.
    Condensate {
        #[arg(long, default_value_t = 1.0)]
        mr: f64,
        #[arg(long)]
        mbare: f64,
        #[arg(long, default_value_t = 10.0)]
        kmax: f64,
        #[arg(long, default_value_t = 41)]
        points: usize,
    },
    /// Effective potential on the free vacuum and its cutoff dependence.
    Triviality {
        #[arg(long, allow_negative_numbers = true)]
        lambda: f64,
        #[arg(long, default_value_t = 1.0)]
        m2: f64,
        #[arg(long, default_value_t = 10.0)]
        cutoff: f64,
        #[arg(long, default_value_t = 100.0)]
        sigma_max: f64,
        #[arg(long, default_value_t = 41)]
        points: usize,
    },
}
