//! One function per subcommand, each producing a result table.

use anharmonic_core::gap::potential_params;
use anharmonic_core::ipt::{corrections, level_energy, Denominator};
use anharmonic_core::oracle::converged_levels;
use anharmonic_core::qft::{
    condensate_density, domain_edge, effective_potential, perturbative_ep, renormalized_gap_roots,
};
use anharmonic_core::susy::{groundstate_comparison, ispp_table, susy_exact_checks};
use anharmonic_core::vacuum::{effective_potential_qm, stability_gap, vacuum_structure};
use anharmonic_core::{
    critical_coupling, select_phase, solve_gap, GapSolution, Level, OscillatorClass, OscillatorSpec, Phase,
};
use rayon::prelude::*;

use crate::args::{Cli, Command, LevelArgs, PhaseArg, QftCommand, SpecArgs, SusyView};
use crate::output::{Cell, Table};
use crate::reference::{compare_table, comparison_table};
use crate::CliError;

/// A finished command: its table, plus the check outcome where one applies.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub table: Table,
    pub check: Option<CheckOutcome>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOutcome {
    pub failed: usize,
    pub total: usize,
}

impl From<Table> for Report {
    fn from(table: Table) -> Self {
        Report { table, check: None }
    }
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let denominator: Denominator = cli.ipt_denominator.into();
    match &cli.command {
        Command::Spectrum { spec, levels } => spectrum(spec, levels, cli.order, denominator).map(Into::into),
        Command::Gap { spec, levels } => gap(spec, levels).map(Into::into),
        Command::Ipt { spec, levels } => ipt(spec, levels, denominator).map(Into::into),
        Command::Oracle { spec, levels, tol, basis_frequency } => {
            oracle(spec, *levels, *tol, *basis_frequency).map(Into::into)
        }
        Command::Compare { spec, levels, tol } => compare(spec, *levels, *tol, denominator).map(Into::into),
        Command::Table { id } => table(*id, denominator),
        Command::Susy { beta, n_max, view, phi_max, points } => {
            susy(*beta, *n_max, *view, cli.plot_data, *phi_max, *points).map(Into::into)
        }
        Command::Vacuum { lambda, sigma_max, points } => {
            vacuum(lambda, cli.plot_data, *sigma_max, *points).map(Into::into)
        }
        Command::Qft { command } => qft(command, cli.plot_data).map(Into::into),
    }
}

fn make_spec(args: &SpecArgs) -> Result<OscillatorSpec, CliError> {
    Ok(OscillatorSpec::with_coupling(args.class, args.g, args.lambda)?)
}

fn level_range(args: &LevelArgs) -> Result<Vec<Level>, CliError> {
    let last = args.n_max.unwrap_or(args.n);
    if last < args.n {
        return Err(CliError::Usage("--n-max must not be below --n".into()));
    }
    Ok((args.n..=last).map(Level).collect())
}

fn phase_for(spec: &OscillatorSpec, level: Level, forced: Option<PhaseArg>) -> Phase {
    match forced {
        Some(PhaseArg::Sr) => Phase::SymmetryRestored,
        Some(PhaseArg::Ssb) => Phase::SymmetryBroken,
        None => select_phase(spec, level),
    }
}

fn solved(spec: &OscillatorSpec, level: Level, forced: Option<PhaseArg>) -> Result<GapSolution, CliError> {
    Ok(solve_gap(spec, level, phase_for(spec, level, forced))?)
}

/// Uniform grid of `points` values on `[lo, hi]`.
pub fn grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..points).map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64).collect(),
    }
}

fn spectrum(spec: &SpecArgs, levels: &LevelArgs, order: u32, denominator: Denominator) -> Result<Table, CliError> {
    let s = make_spec(spec)?;
    let rows = level_range(levels)?
        .into_par_iter()
        .map(|level| -> Result<Vec<Cell>, CliError> {
            let gap = solved(&s, level, levels.phase)?;
            let e = if levels.phase.is_some() {
                let e0 = anharmonic_core::spectrum::energy_lo_in(&s, level, gap.phase)?;
                if order != 0 {
                    return Err(CliError::Usage("--phase only supports --order 0".into()));
                }
                anharmonic_core::LevelEnergy { e0, de2: None, de3: None, total: e0 }
            } else {
                level_energy(&s, level, order, denominator)?
            };
            Ok(vec![
                level.n().into(),
                gap.omega.into(),
                gap.sigma.into(),
                gap.phase.tag().into(),
                e.e0.into(),
                e.de2.into(),
                e.de3.into(),
                e.total.into(),
            ])
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut t = Table::new(&["n", "omega", "sigma", "phase", "e0", "de2", "de3", "total"]);
    rows.into_iter().for_each(|r| t.push(r));
    Ok(t)
}

fn gap(spec: &SpecArgs, levels: &LevelArgs) -> Result<Table, CliError> {
    let s = make_spec(spec)?;
    let mut t = Table::new(&[
        "n", "omega", "sigma", "phase", "residual", "rho", "theta", "a", "b", "c", "h0", "critical_coupling",
    ]);
    for level in level_range(levels)? {
        let gap = solved(&s, level, levels.phase)?;
        let p = potential_params(&s, level, &gap)?;
        let lambda_c = match s.class() {
            OscillatorClass::QuarticDwo => Some(critical_coupling(s.g(), level)?),
            _ => None,
        };
        t.push(vec![
            level.n().into(),
            gap.omega.into(),
            gap.sigma.into(),
            gap.phase.tag().into(),
            gap.residual.into(),
            gap.rho.into(),
            gap.theta.into(),
            p.a.into(),
            p.b.into(),
            p.c.into(),
            p.h0.into(),
            lambda_c.into(),
        ]);
    }
    Ok(t)
}

fn ipt(spec: &SpecArgs, levels: &LevelArgs, denominator: Denominator) -> Result<Table, CliError> {
    if levels.phase.is_some() {
        return Err(CliError::Usage("ipt always works in the preferred phase".into()));
    }
    let s = make_spec(spec)?;
    let rows = level_range(levels)?
        .into_par_iter()
        .map(|level| -> Result<Vec<Cell>, CliError> {
            let gap = solved(&s, level, None)?;
            let e0 = anharmonic_core::energy_lo(&s, level)?;
            let c = corrections(&s, level, denominator)?;
            Ok(vec![
                level.n().into(),
                gap.omega.into(),
                gap.sigma.into(),
                e0.into(),
                c.de1.into(),
                c.de2.into(),
                c.de3.into(),
                (e0 + c.de2).into(),
                (e0 + c.de2 + c.de3).into(),
                c.denominator.name().into(),
                c.window.into(),
            ])
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut t = Table::new(&[
        "n", "omega", "sigma", "e0", "de1", "de2", "de3", "total2", "total3", "denominator", "window",
    ]);
    rows.into_iter().for_each(|r| t.push(r));
    Ok(t)
}

fn oracle(spec: &SpecArgs, levels: usize, tol: f64, basis_frequency: Option<f64>) -> Result<Table, CliError> {
    let s = make_spec(spec)?;
    let r = converged_levels(&s, levels, tol, basis_frequency)?;
    let mut t = Table::new(&["n", "energy", "basis_size", "basis_frequency", "converged", "tail_estimate"]);
    for (n, e) in r.eigenvalues.iter().take(levels).enumerate() {
        t.push(vec![
            n.into(),
            (*e).into(),
            r.basis_size.into(),
            r.basis_frequency.into(),
            r.converged.into(),
            r.tail_estimate.into(),
        ]);
    }
    Ok(t)
}

fn percent(value: f64, exact: f64) -> f64 {
    100.0 * (value - exact).abs() / exact.abs().max(f64::MIN_POSITIVE)
}

fn compare(spec: &SpecArgs, levels: usize, tol: f64, denominator: Denominator) -> Result<Table, CliError> {
    let s = make_spec(spec)?;
    let exact = converged_levels(&s, levels, tol, None)?;
    // energies in units of lambda^(1/(k+1)), the strong-coupling scaling
    let scale = if s.is_free() { 1.0 } else { s.lambda().powf(1.0 / (s.class().half_power() as f64 + 1.0)) };
    let rows = (0..levels as u32)
        .into_par_iter()
        .map(|n| -> Result<Vec<Cell>, CliError> {
            let level = Level(n);
            let e0 = anharmonic_core::energy_lo(&s, level)?;
            let c = corrections(&s, level, denominator).ok();
            let e2 = c.map(|c| e0 + c.de2);
            let e3 = c.map(|c| e0 + c.de2 + c.de3);
            let x = exact.eigenvalues[n as usize];
            Ok(vec![
                n.into(),
                e0.into(),
                e2.into(),
                e3.into(),
                x.into(),
                percent(e0, x).into(),
                e2.map(|e| percent(e, x)).into(),
                e3.map(|e| percent(e, x)).into(),
                (e0 / scale).into(),
                (x / scale).into(),
            ])
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut t = Table::new(&[
        "n", "e0", "e2", "e3", "oracle", "e0_error_pct", "e2_error_pct", "e3_error_pct", "e0_scaled", "oracle_scaled",
    ]);
    rows.into_iter().for_each(|r| t.push(r));
    Ok(t)
}

fn table(id: u8, denominator: Denominator) -> Result<Report, CliError> {
    let rows = compare_table(id, denominator)?;
    let gating: Vec<_> = rows.iter().filter(|r| r.gating).collect();
    let check = CheckOutcome { failed: gating.iter().filter(|r| !r.pass).count(), total: gating.len() };
    Ok(Report { table: comparison_table(&rows), check: Some(check) })
}

fn plot_table() -> Table {
    Table::new(&["series", "x", "y"])
}

fn susy(beta: f64, n_max: u32, view: SusyView, plot: bool, phi_max: f64, points: usize) -> Result<Table, CliError> {
    match (view, plot) {
        (SusyView::Overlap, true) => {
            let c = groundstate_comparison(beta)?;
            let mut t = plot_table();
            for (name, f) in [("susy", 0), ("gaussian", 1)] {
                for phi in grid(-phi_max, phi_max, points) {
                    let y = if f == 0 { c.susy_state.eval(phi) } else { c.ngas_state.eval(phi) };
                    t.push(vec![name.into(), phi.into(), y.into()]);
                }
            }
            Ok(t)
        }
        (_, true) => {
            let rows = ispp_table(beta, n_max)?;
            let mut t = plot_table();
            for r in &rows {
                t.push(vec!["single-well".into(), r.n.into(), r.e_aho.into()]);
            }
            for r in &rows {
                t.push(vec!["double-well-next".into(), r.n.into(), r.e_dwo_next.into()]);
            }
            Ok(t)
        }
        (SusyView::Ispp, false) => {
            let mut t = Table::new(&["n", "e_single_well", "e_double_well_next", "relative_gap"]);
            for r in ispp_table(beta, n_max)? {
                t.push(vec![r.n.into(), r.e_aho.into(), r.e_dwo_next.into(), r.relative_gap.into()]);
            }
            Ok(t)
        }
        (SusyView::Exact, false) => {
            let r = susy_exact_checks(beta, n_max + 1)?;
            let mut t = Table::new(&["n", "e_single_well", "e_double_well_next", "difference", "double_well_ground"]);
            for (n, a, d) in &r.pairs {
                t.push(vec![(*n).into(), (*a).into(), (*d).into(), (d - a).into(), r.dwo_ground.into()]);
            }
            Ok(t)
        }
        (SusyView::Overlap, false) => {
            let c = groundstate_comparison(beta)?;
            let mut t = Table::new(&[
                "beta",
                "susy_amplitude",
                "susy_amplitude_coefficient",
                "gaussian_amplitude",
                "gaussian_amplitude_coefficient",
                "gaussian_width_exponent",
                "overlap",
            ]);
            let b8 = beta.powf(0.125);
            t.push(vec![
                beta.into(),
                c.susy_state.amplitude.into(),
                (c.susy_state.amplitude / b8).into(),
                c.ngas_state.amplitude.into(),
                (c.ngas_state.amplitude / b8).into(),
                c.ngas_state.width_exponent.into(),
                c.overlap.into(),
            ]);
            Ok(t)
        }
    }
}

fn vacuum(lambdas: &[f64], plot: bool, sigma_max: f64, points: usize) -> Result<Table, CliError> {
    if plot {
        let mut t = plot_table();
        let sigmas = grid(-sigma_max, sigma_max, points);
        for &lambda in lambdas {
            for p in effective_potential_qm(lambda, &sigmas)? {
                t.push(vec![format!("lambda={}", lambda).into(), p.sigma.into(), p.v_eff.into()]);
            }
        }
        return Ok(t);
    }
    let mut t = Table::new(&[
        "lambda", "omega", "alpha", "n0", "e0", "e0_perturbative", "delta_e", "delta_e_over_lambda_sq",
    ]);
    for &lambda in lambdas {
        let spec = OscillatorSpec::with_coupling(OscillatorClass::QuarticAho, 1.0, lambda)?;
        let v = vacuum_structure(&spec, Level(0))?;
        let g = stability_gap(lambda)?;
        let ratio = if lambda > 0.0 { Some(g.delta_e / (lambda * lambda)) } else { None };
        t.push(vec![
            lambda.into(),
            v.omega.into(),
            v.alpha.into(),
            v.n0.into(),
            g.e0.into(),
            g.e0_perturbative.into(),
            g.delta_e.into(),
            ratio.into(),
        ]);
    }
    Ok(t)
}

fn qft(command: &QftCommand, plot: bool) -> Result<Table, CliError> {
    match *command {
        QftCommand::Ep { eta, mr, points } => {
            let edge = mr * domain_edge(eta);
            let curve = effective_potential(eta, mr, &grid(-edge, edge, points))?;
            if plot {
                let mut t = plot_table();
                for p in &curve.points {
                    t.push(vec!["u".into(), p.sigma.into(), p.u.into()]);
                }
                return Ok(t);
            }
            let mut t = Table::new(&["sigma", "t", "u", "eta", "m_r", "domain_edge"]);
            for p in &curve.points {
                t.push(vec![
                    p.sigma.into(),
                    p.t.into(),
                    p.u.into(),
                    eta.into(),
                    mr.into(),
                    curve.domain_edge.into(),
                ]);
            }
            Ok(t)
        }
        QftCommand::Gap { eta, sigma } => {
            let roots = renormalized_gap_roots(eta, sigma)?;
            let mut t = Table::new(&["eta", "sigma_over_mr", "t", "other_root", "domain_edge"]);
            t.push(vec![eta.into(), sigma.into(), roots.physical.into(), roots.other.into(), domain_edge(eta).into()]);
            Ok(t)
        }
        QftCommand::Condensate { mr, mbare, kmax, points } => {
            let rows = condensate_density(mbare, mr, &grid(0.0, kmax, points))?;
            if plot {
                let mut t = plot_table();
                for r in &rows {
                    t.push(vec!["rho".into(), r.k.into(), r.rho.into()]);
                }
                for r in &rows {
                    t.push(vec!["n".into(), r.k.into(), r.n.into()]);
                }
                return Ok(t);
            }
            let mut t = Table::new(&["k", "n", "rho"]);
            for r in rows {
                t.push(vec![r.k.into(), r.n.into(), r.rho.into()]);
            }
            Ok(t)
        }
        QftCommand::Triviality { lambda, m2, cutoff, sigma_max, points } => {
            let ep = perturbative_ep(m2, lambda, cutoff, &grid(0.0, sigma_max, points))?;
            if plot {
                let mut t = plot_table();
                for (s, u) in &ep.points {
                    t.push(vec!["u_perturbative".into(), (*s).into(), (*u).into()]);
                }
                return Ok(t);
            }
            let r = &ep.report;
            let mut t = Table::new(&["quantity", "cutoff", "value"]);
            t.push(vec!["m_r_bar_sq".into(), cutoff.into(), ep.m_r_bar_sq.into()]);
            t.push(vec!["lambda_r_bar".into(), cutoff.into(), ep.lambda_r_bar.into()]);
            t.push(vec!["instability_sigma".into(), cutoff.into(), r.instability_sigma.into()]);
            t.push(vec!["u_min_perturbative".into(), cutoff.into(), r.u_min_perturbative.into()]);
            t.push(vec!["u_min_gaussian".into(), cutoff.into(), r.u_min_gaussian.into()]);
            for step in &r.cutoff_steps {
                t.push(vec!["m_r_bar_sq".into(), step.cutoff.into(), step.m_r_bar_sq.into()]);
                t.push(vec!["lambda_for_fixed_mass".into(), step.cutoff.into(), step.lambda_for_fixed_mass.into()]);
            }
            Ok(t)
        }
    }
}
