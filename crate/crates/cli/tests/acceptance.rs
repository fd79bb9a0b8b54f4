//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::time::{Duration, Instant};

use anharmonic_cli::reference::{reference_rows, ReferenceRow};
use anharmonic_core::ipt::{corrections, Denominator};
use anharmonic_core::oracle::converged_levels;
use anharmonic_core::qft::{
    condensate_density, domain_edge, effective_potential, perturbative_ep, renormalized_gap, solvability_edge,
};
use anharmonic_core::spectrum::energy_lo_in;
use anharmonic_core::susy::{groundstate_comparison, ispp_table, susy_exact_checks, SusyPair};
use anharmonic_core::tables::{percent_error, Tabulated};
use anharmonic_core::vacuum::{stability_gap, vacuum_structure};
use anharmonic_core::{energy_lo, select_phase, solve_gap, Level, OscillatorClass, OscillatorSpec, Phase};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

const ORACLE_TOL: f64 = 1e-9;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn spec(class: OscillatorClass, g: f64, lambda: f64) -> OscillatorSpec {
    OscillatorSpec::new(class, g, lambda).unwrap()
}

fn rows(table: u8, quantity: &str) -> Vec<ReferenceRow> {
    reference_rows(table).unwrap().into_iter().filter(|r| r.quantity == quantity).collect()
}

/// Compares one tabulated column; returns the worst relative error and the
/// entries outside `tol`.
fn column_errors(table: u8, quantity: &str, col: Tabulated, tol: f64) -> (usize, f64, Vec<String>) {
    let rows = rows(table, quantity);
    let mut worst: f64 = 0.0;
    let mut bad = Vec::new();
    for r in &rows {
        let v = col.leading_order(r.lambda, r.n).unwrap();
        let e = rel(v, r.value);
        worst = worst.max(e);
        if e > tol {
            bad.push(format!("(lambda={}, n={}) {:.6} vs {}", r.lambda, r.n, v, r.value));
        }
    }
    (rows.len(), worst, bad)
}

fn table_criterion(checks: &[(u8, &str, Tabulated)], tol: f64) -> Outcome {
    let mut total = 0;
    let mut worst: f64 = 0.0;
    let mut bad = Vec::new();
    for &(t, q, col) in checks {
        let (n, w, b) = column_errors(t, q, col, tol);
        total += n;
        worst = worst.max(w);
        bad.extend(b);
    }
    if bad.is_empty() {
        Ok(format!("{total} entries, worst relative error {worst:.2e} <= {tol:.0e}"))
    } else {
        Err(format!("{} of {total} entries outside {tol:.0e}: {}", bad.len(), bad.join("; ")))
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let out = f();
    let took = start.elapsed();
    match out {
        Ok(msg) if took <= limit => Ok(format!("{msg}; {:.2?}", took)),
        Ok(msg) => Err(format!("{msg}; too slow: {:.2?} > {:.0?}", took, limit)),
        Err(msg) => Err(format!("{msg}; {:.2?}", took)),
    }
}

fn c1_table1_lo() -> Outcome {
    timed(Duration::from_secs(1), || table_criterion(&[(1, "lo", Tabulated::QuarticAho)], 2e-4))
}

fn c2_table1_exact() -> Outcome {
    timed(Duration::from_secs(30), || {
        let mut bad = Vec::new();
        let mut worst_exact: f64 = 0.0;
        let mut worst_lo: f64 = 0.0;
        let lo_rows = rows(1, "lo");
        let exact_rows: Vec<_> = rows(1, "exact").into_iter().filter(|r| r.n <= 10).collect();
        for r in &exact_rows {
            let oracle = Tabulated::QuarticAho.oracle(r.lambda, r.n, ORACLE_TOL).map_err(|e| e.to_string())?;
            let e = rel(oracle, r.value);
            worst_exact = worst_exact.max(e);
            if e > 2e-4 {
                bad.push(format!("oracle (lambda={}, n={}) {:.6} vs {}", r.lambda, r.n, oracle, r.value));
            }
            let lo = lo_rows.iter().find(|l| l.lambda == r.lambda && l.n == r.n).unwrap();
            let lo_err = rel(Tabulated::QuarticAho.leading_order(lo.lambda, lo.n).unwrap(), oracle);
            worst_lo = worst_lo.max(lo_err);
            if lo_err > 0.025 {
                bad.push(format!("leading-order error (lambda={}, n={}) {:.2}%", r.lambda, r.n, 100.0 * lo_err));
            }
        }
        if bad.is_empty() {
            Ok(format!(
                "{} entries: oracle vs exact worst {worst_exact:.2e}, leading order vs oracle worst {:.2}%",
                exact_rows.len(),
                100.0 * worst_lo
            ))
        } else {
            Err(bad.join("; "))
        }
    })
}

fn c3_strong_coupling() -> Outcome {
    let lambda: f64 = 1e9;
    let s = spec(OscillatorClass::QuarticAho, 1.0, lambda);
    let scale = lambda.cbrt();
    let lo = energy_lo(&s, Level(0)).unwrap() / scale;
    let exact = converged_levels(&s, 1, ORACLE_TOL, None).map_err(|e| e.to_string())?.eigenvalues[0] / scale;
    let msg = format!("E0/lambda^(1/3): leading order {lo:.5}, oracle {exact:.5}");
    if (lo - 0.6814).abs() <= 5e-4 && (exact - 0.668).abs() <= 1e-3 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn c4_table2_lo() -> Outcome {
    table_criterion(&[(2, "lo", Tabulated::QuarticDwoWellBottom)], 2e-4)
}

fn c5_table3() -> Outcome {
    let lo = table_criterion(&[(3, "lo", Tabulated::SexticAho)], 1e-3);
    let refs = rows(3, "reference");
    let mut bad = Vec::new();
    let mut worst: f64 = 0.0;
    for p in rows(3, "error_pct") {
        let r = refs.iter().find(|r| r.lambda == p.lambda && r.n == p.n).unwrap();
        let ours = percent_error(Tabulated::SexticAho.leading_order(p.lambda, p.n).unwrap(), r.value);
        worst = worst.max((ours - p.value).abs());
        if (ours - p.value).abs() > 0.1 {
            bad.push(format!("(lambda={}, n={}) {:.3}% vs {}%", p.lambda, p.n, ours, p.value));
        }
    }
    match (lo, bad.is_empty()) {
        (Ok(m), true) => Ok(format!("{m}; percentage column worst {worst:.3} pp")),
        (Ok(_), false) => Err(format!("percentage column: {}", bad.join("; "))),
        (Err(m), _) => Err(m),
    }
}

fn c6_table4_susy() -> Outcome {
    let mut failures = Vec::new();
    let lo = table_criterion(
        &[(4, "aho", Tabulated::SusySingleWell), (4, "dwo_next", Tabulated::SusyDoubleWellNext)],
        1e-3,
    );
    if let Err(m) = &lo {
        failures.push(m.clone());
    }
    let ispp = ispp_table(1.0, 19).unwrap();
    for r in ispp.iter().filter(|r| r.n >= 8) {
        if r.relative_gap > 0.02 {
            failures.push(format!("gap {:.3}% at n={}", 100.0 * r.relative_gap, r.n));
        }
    }
    for w in ispp.windows(2).filter(|w| w[0].n >= 1) {
        if w[1].relative_gap >= w[0].relative_gap {
            failures.push(format!(
                "gap not decreasing at n={}->{}: {:.3}% -> {:.3}%",
                w[0].n,
                w[1].n,
                100.0 * w[0].relative_gap,
                100.0 * w[1].relative_gap
            ));
        }
    }
    let exact = susy_exact_checks(1.0, 20).map_err(|e| e.to_string())?;
    if exact.max_pair_deviation > 1e-6 {
        failures.push(format!("oracle partner mismatch {:.2e}", exact.max_pair_deviation));
    }
    if !(-1e-6..=1e-4).contains(&exact.dwo_ground) {
        failures.push(format!("double-well ground {:.2e}", exact.dwo_ground));
    }
    if failures.is_empty() {
        Ok(format!(
            "{}; oracle pairs agree to {:.1e}, double-well ground {:.1e}",
            lo.unwrap(),
            exact.max_pair_deviation,
            exact.dwo_ground
        ))
    } else {
        Err(failures.join("; "))
    }
}

fn c7_table5() -> Outcome {
    table_criterion(&[(5, "lo", Tabulated::OcticAho)], 1e-3)
}

fn c8_susy_wavefunction() -> Outcome {
    let round3 = |x: f64| (x * 1000.0).round() / 1000.0;
    let one = groundstate_comparison(1.0).map_err(|e| e.to_string())?;
    let sixteen = groundstate_comparison(16.0).map_err(|e| e.to_string())?;
    let a = one.susy_state.amplitude;
    let b = one.ngas_state.amplitude;
    let drift = (one.overlap - sixteen.overlap).abs();
    let msg = format!(
        "coefficients {a:.5} / {b:.5}, overlap {:.6}, beta drift {drift:.1e}",
        one.overlap
    );
    let ok = round3(a) == round3(0.68108)
        && round3(b) == round3(0.828)
        && (one.overlap - 0.984).abs() <= 0.002
        && drift <= 1e-6;
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn c9_ipt() -> Outcome {
    let d = Denominator::default();
    let mut failures = Vec::new();
    let mut worst_first: f64 = 0.0;
    for r in rows(1, "lo") {
        let s = spec(OscillatorClass::QuarticAho, 1.0, r.lambda);
        let c = corrections(&s, Level(r.n), d).map_err(|e| e.to_string())?;
        worst_first = worst_first.max(c.de1.abs());
        if c.de1.abs() > 1e-10 {
            failures.push(format!("first order {:.1e} at (lambda={}, n={})", c.de1, r.lambda, r.n));
        }
        if r.n == 0 && c.de2 >= 0.0 {
            failures.push(format!("ground-state second order {:.3e} at lambda={}", c.de2, r.lambda));
        }
    }
    for lambda in [0.1, 1.0, 10.0] {
        let s = spec(OscillatorClass::QuarticAho, 1.0, lambda);
        let exact = converged_levels(&s, 5, ORACLE_TOL, None).map_err(|e| e.to_string())?;
        for n in 0..=4u32 {
            let e0 = energy_lo(&s, Level(n)).unwrap();
            let c = corrections(&s, Level(n), d).map_err(|e| e.to_string())?;
            let x = exact.eigenvalues[n as usize];
            if (e0 + c.de2 - x).abs() >= (e0 - x).abs() {
                failures.push(format!(
                    "no improvement at (lambda={lambda}, n={n}): |E2-x|={:.2e} vs |E0-x|={:.2e}",
                    (e0 + c.de2 - x).abs(),
                    (e0 - x).abs()
                ));
            }
            if c.de3.abs() >= c.de2.abs() {
                failures.push(format!(
                    "no decay at (lambda={lambda}, n={n}): |dE3|={:.2e} vs |dE2|={:.2e}",
                    c.de3.abs(),
                    c.de2.abs()
                ));
            }
        }
    }
    if failures.is_empty() {
        Ok(format!("first order <= {worst_first:.1e}; sign, improvement and decay hold ({})", d.name()))
    } else {
        Err(format!("[{} denominators] {}", d.name(), failures.join("; ")))
    }
}

fn c10_vacuum() -> Outcome {
    let mut failures = Vec::new();
    let ratio = stability_gap(1e-3).unwrap().delta_e / 1e-6;
    if rel(ratio, -4.5) > 0.01 {
        failures.push(format!("dE/lambda^2 at 1e-3 = {ratio:.4}, expected -4.5"));
    }
    let grid: Vec<f64> = (0..=50).map(|i| 10f64.powf(-3.0 + 5.0 * i as f64 / 50.0)).collect();
    let gaps: Vec<f64> = grid.iter().map(|&l| stability_gap(l).unwrap().delta_e).collect();
    if gaps.iter().any(|&g| g >= 0.0) {
        failures.push("non-negative gap".into());
    }
    if gaps.windows(2).any(|w| w[1] >= w[0]) {
        failures.push("gap not decreasing".into());
    }
    let n0 = vacuum_structure(&spec(OscillatorClass::QuarticAho, 1.0, 1.0), Level(0)).unwrap().n0;
    if n0 != 0.125 {
        failures.push(format!("n0(1) = {n0:.17}"));
    }
    if failures.is_empty() {
        Ok(format!("dE/lambda^2 = {ratio:.4}; gap negative and decreasing; n0(1) = {n0}"))
    } else {
        Err(failures.join("; "))
    }
}

/// Largest value of `(1 - eta)(t - 1) - t ln t`, by golden-section search.
fn numeric_edge(eta: f64) -> f64 {
    let f = |t: f64| (1.0 - eta) * (t - 1.0) - t * t.ln();
    let (mut a, mut b) = (1e-12, 10.0 + 10.0 * (-eta).exp());
    let r = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..200 {
        let x1 = b - r * (b - a);
        let x2 = a + r * (b - a);
        if f(x1) < f(x2) {
            a = x1;
        } else {
            b = x2;
        }
    }
    f(0.5 * (a + b))
}

fn c11_qft() -> Outcome {
    let mut failures = Vec::new();
    for eta in [0.1, 1.0, 10.0] {
        let t = renormalized_gap(eta, 0.0).unwrap();
        let residual = (1.0 - eta) * (t - 1.0) - t * t.ln();
        if residual.abs() >= 1e-12 {
            failures.push(format!("t(0) residual {residual:.1e} at eta={eta}"));
        }
        let e = rel(numeric_edge(eta), solvability_edge(eta));
        if e > 1e-6 {
            failures.push(format!("edge mismatch {e:.1e} at eta={eta}"));
        }
        // just inside the edge solves, just outside does not
        let edge = domain_edge(eta);
        if renormalized_gap(eta, edge * (1.0 - 1e-9)).is_err() || renormalized_gap(eta, edge * (1.0 + 1e-6)).is_ok() {
            failures.push(format!("domain edge not sharp at eta={eta}"));
        }
    }
    let rho = condensate_density(2.0, 1.0, &[1.0]).unwrap()[0].rho;
    if (rho - 0.70711).abs() > 1e-5 {
        failures.push(format!("rho(m_R) = {rho}"));
    }
    let (eta, m_r) = (1.0, 1.3);
    let h = 1e-3 * m_r * domain_edge(eta);
    let curve = effective_potential(eta, m_r, &[-h, 0.0, h]).unwrap();
    let u: Vec<f64> = curve.points.iter().map(|p| p.u).collect();
    let curvature = (u[0] - 2.0 * u[1] + u[2]) / (h * h);
    if rel(curvature, m_r * m_r) > 1e-4 {
        failures.push(format!("curvature {curvature} vs {}", m_r * m_r));
    }
    let unstable = perturbative_ep(1.0, -1e-3, 10.0, &[0.0, 100.0]).unwrap();
    if unstable.report.instability_sigma.is_none() || unstable.points[1].1 >= unstable.points[0].1 {
        failures.push("no instability for negative coupling".into());
    }
    let stable = perturbative_ep(1.0, 0.1, 1e3, &[0.0]).unwrap();
    let steps = &stable.report.cutoff_steps;
    for w in steps.windows(2) {
        let growth = (w[1].m_r_bar_sq - 1.0) / (w[0].m_r_bar_sq - 1.0);
        if rel(growth, 4.0) > 1e-3 {
            failures.push(format!("mass growth {growth:.5} per cutoff doubling"));
        }
    }
    match stable.report.u_min_gaussian {
        Some(g) if g < stable.report.u_min_perturbative => {}
        other => failures.push(format!(
            "Gaussian minimum {:?} not below perturbative {}",
            other, stable.report.u_min_perturbative
        )),
    }
    if failures.is_empty() {
        Ok(format!("gap, domain edge, rho(m_R) = {rho:.6}, curvature {curvature:.6}, triviality report all hold"))
    } else {
        Err(failures.join("; "))
    }
}

/// Gap-equation residual recomputed from the polynomial for each class.
fn independent_residual(s: &OscillatorSpec, level: Level) -> (f64, f64) {
    let phase = select_phase(s, level);
    let gap = solve_gap(s, level, phase).unwrap();
    let (g, l, w) = (s.g(), s.lambda(), gap.omega);
    let xi = level.xi();
    let sign = s.class().quadratic_sign();
    match s.class() {
        OscillatorClass::QuarticAho | OscillatorClass::QuarticDwo => {
            let c = 6.0 * l * (xi + 0.25 / xi);
            let quad = if phase == Phase::SymmetryBroken { 12.0 * l * gap.sigma * gap.sigma - g } else { sign * g };
            (w.powi(3) - quad * w - c, c)
        }
        OscillatorClass::SexticAho | OscillatorClass::SexticDwo => {
            let c = 3.75 * l * (5.0 + 4.0 * xi * xi);
            (w.powi(4) - sign * g * w * w - c, c)
        }
        OscillatorClass::OcticAho => {
            let c = 35.0 * l * (xi.powi(3) + 3.5 * xi + 9.0 / (16.0 * xi));
            (w.powi(5) - g * w.powi(3) - c, c)
        }
    }
}

fn c12_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20240501);
    let mut failures = Vec::new();
    let mut worst_residual: f64 = 0.0;
    for _ in 0..500 {
        let class = OscillatorClass::ALL[rng.gen_range(0..5)];
        let g = 10f64.powf(rng.gen_range(-2.0..2.0));
        let lambda = 10f64.powf(rng.gen_range(-4.0..4.0));
        let level = Level(rng.gen_range(0..60));
        let (r, c) = independent_residual(&spec(class, g, lambda), level);
        let scaled = r.abs() / c.max(1.0);
        worst_residual = worst_residual.max(scaled);
        if scaled > 1e-10 {
            failures.push(format!("residual {r:.2e} for {class} g={g} lambda={lambda} n={}", level.n()));
        }
    }
    let mut worst_scaling: f64 = 0.0;
    for _ in 0..200 {
        let g = 10f64.powf(rng.gen_range(-2.0..2.0));
        let lambda: f64 = 10f64.powf(rng.gen_range(-3.0..3.0));
        let level = Level(rng.gen_range(0..40));
        let e = energy_lo(&spec(OscillatorClass::QuarticAho, g, lambda), level).unwrap();
        let reduced = spec(OscillatorClass::QuarticAho, g * lambda.powf(-2.0 / 3.0), 1.0);
        let scaled = lambda.cbrt() * energy_lo(&reduced, level).unwrap();
        worst_scaling = worst_scaling.max(rel(scaled, e));
    }
    if worst_scaling > 1e-9 {
        failures.push(format!("quartic scaling deviation {worst_scaling:.2e}"));
    }
    let mut worst_susy: f64 = 0.0;
    for _ in 0..50 {
        let beta: f64 = 10f64.powf(rng.gen_range(-2.0..2.0));
        let (one, this) = (SusyPair::new(1.0).unwrap(), SusyPair::new(beta).unwrap());
        for n in 0..20 {
            for (a, b) in [(one.aho_spec, this.aho_spec), (one.dwo_spec, this.dwo_spec)] {
                let e1 = energy_lo_in(&a, Level(n), Phase::SymmetryRestored).unwrap();
                let eb = energy_lo_in(&b, Level(n), Phase::SymmetryRestored).unwrap();
                worst_susy = worst_susy.max(rel(eb, beta.sqrt() * e1));
            }
        }
    }
    if worst_susy > 1e-9 {
        failures.push(format!("sextic sqrt(beta) scaling deviation {worst_susy:.2e}"));
    }
    let aho = [OscillatorClass::QuarticAho, OscillatorClass::SexticAho, OscillatorClass::OcticAho];
    let mut min_margin = f64::INFINITY;
    for _ in 0..50 {
        let class = aho[rng.gen_range(0..3)];
        let g = 10f64.powf(rng.gen_range(-1.0..1.0));
        let lambda = 10f64.powf(rng.gen_range(-2.0..2.0));
        let s = spec(class, g, lambda);
        let lo = energy_lo(&s, Level(0)).unwrap();
        let exact = converged_levels(&s, 1, ORACLE_TOL, None).map_err(|e| e.to_string())?.eigenvalues[0];
        min_margin = min_margin.min((lo - exact) / exact);
        if lo < exact {
            failures.push(format!("variational bound violated for {class} g={g} lambda={lambda}"));
        }
    }
    if failures.is_empty() {
        Ok(format!(
            "residual <= {worst_residual:.1e}, quartic scaling {worst_scaling:.1e}, sqrt(beta) scaling {worst_susy:.1e}, \
             bound margin >= {min_margin:.1e}"
        ))
    } else {
        Err(failures.join("; "))
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("quartic single-well leading order vs table 1", c1_table1_lo),
        ("oracle vs table 1 exact column", c2_table1_exact),
        ("strong-coupling limit", c3_strong_coupling),
        ("quartic double-well leading order vs table 2", c4_table2_lo),
        ("sextic single-well vs table 3", c5_table3),
        ("supersymmetric partners vs table 4", c6_table4_susy),
        ("octic single-well vs table 5", c7_table5),
        ("supersymmetric ground-state wavefunction", c8_susy_wavefunction),
        ("perturbative corrections", c9_ipt),
        ("vacuum structure and stability", c10_vacuum),
        ("field-theory effective potential", c11_qft),
        ("property suites", c12_properties),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(msg) => println!("[PASS] {:>2} {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("[FAIL] {:>2} {name}: {msg}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed, {:.2?}", criteria.len() - failed, start.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
