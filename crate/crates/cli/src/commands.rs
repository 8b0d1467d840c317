use crate::error::CliError;
use crate::input::{self, ConfigFile};
use crate::report::{CommandOutput, Report};
use polycc::central_config::{
    equal_vertex_mass, newton_sweep, residual, vertex_mass_spectral, Branch,
};
use polycc::circulant::{interaction_matrix, interaction_spectrum_check};
use polycc::dynamics::{integrate, relative_equilibrium_state, rigid_rotation_error, Method};
use polycc::euler::CollinearProblem;
use polycc::identities::sweep;
use polycc::Point;
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

fn complex_value(z: Point) -> Value {
    json!([z.re, z.im])
}

/// Both summation identities over an inclusive range of polygon sizes.
pub fn identities(
    lo: usize,
    hi: usize,
    tolerance: f64,
    seed: u64,
) -> Result<CommandOutput, CliError> {
    if lo < 2 || hi < lo || hi > 1024 {
        return Err(CliError::usage(format!(
            "the size range must satisfy 2 <= lo <= hi <= 1024, got {lo}..{hi}"
        )));
    }
    let rows = sweep(lo, hi)?;
    let pass = rows
        .iter()
        .all(|r| r.vertex.abs_difference < tolerance && r.pair_distance.abs_difference < tolerance);

    let mut table = format!("summation identities, n = {lo}..{hi} (tolerance {tolerance:.1e})\n");
    let _ = writeln!(
        table,
        "{:>6}  {:>18}  {:>14}  {:>14}",
        "n", "cosecant sum", "vertex defect", "pair defect"
    );
    for row in &rows {
        let _ = writeln!(
            table,
            "{:>6}  {:>18.12}  {:>14.3e}  {:>14.3e}",
            row.n, row.cosecant_sum, row.vertex.abs_difference, row.pair_distance.abs_difference
        );
    }
    let _ = writeln!(
        table,
        "{} of {} sizes within tolerance",
        rows.iter()
            .filter(|r| r.vertex.abs_difference < tolerance
                && r.pair_distance.abs_difference < tolerance)
            .count(),
        rows.len()
    );

    let results: Vec<Value> = rows
        .iter()
        .map(|row| {
            json!({
                "n": row.n,
                "cosecant_sum": row.cosecant_sum,
                "vertex": {
                    "lhs": complex_value(row.vertex.lhs),
                    "rhs": row.vertex.rhs,
                    "abs_difference": row.vertex.abs_difference,
                },
                "pair_distance": {
                    "lhs": complex_value(row.pair_distance.lhs),
                    "rhs": row.pair_distance.rhs,
                    "abs_difference": row.pair_distance.abs_difference,
                },
            })
        })
        .collect();

    Ok(CommandOutput::from_pass(Report {
        command: "identities".into(),
        inputs: json!({"n": format!("{lo}..{hi}"), "tolerance": tolerance, "seed": seed}),
        results: json!({"rows": results}),
        pass,
        table,
    }))
}

/// Closed-form vertex mass, cross-checked against the spectral solve for
/// n >= 4.
pub fn masses(
    n: usize,
    omega_squared: f64,
    center_mass: f64,
    tolerance: f64,
    seed: u64,
) -> Result<CommandOutput, CliError> {
    let closed = equal_vertex_mass(n, omega_squared, center_mass)?;
    let spectral = if n >= 4 {
        Some(vertex_mass_spectral(n, omega_squared, center_mass)?.masses[0])
    } else {
        None
    };
    let gap = spectral.map(|s| (s - closed).abs() / closed);
    let pass = gap.is_none_or(|g| g < tolerance);

    let mut table = format!(
        "equal vertex mass, n = {n}, omega^2 = {omega_squared}, center mass = {center_mass}\n"
    );
    let _ = writeln!(table, "  closed form:    {closed:.15e}");
    match (spectral, gap) {
        (Some(s), Some(g)) => {
            let _ = writeln!(table, "  spectral solve: {s:.15e}");
            let _ = writeln!(
                table,
                "  relative gap:   {g:.3e} (tolerance {tolerance:.1e})"
            );
        }
        _ => {
            let _ = writeln!(table, "  spectral solve: defined for n >= 4 only");
        }
    }

    Ok(CommandOutput::from_pass(Report {
        command: "masses".into(),
        inputs: json!({
            "n": n, "omega_squared": omega_squared, "center_mass": center_mass,
            "tolerance": tolerance, "seed": seed,
        }),
        results: json!({
            "vertex_mass": closed,
            "spectral_mass": spectral,
            "relative_difference": gap,
            "config": config_value(n, &vec![closed; n], center_mass, omega_squared),
        }),
        pass,
        table,
    }))
}

/// A configuration document in the input schema, suitable for `verify` and
/// `simulate`.
fn config_value(n: usize, masses: &[f64], center_mass: f64, omega_squared: f64) -> Value {
    json!({
        "n": n,
        "masses": masses,
        "center_mass": center_mass,
        "omega_squared": omega_squared,
    })
}

/// Stationarity residual of a configuration file.
pub fn verify(
    path: &Path,
    omega_flag: Option<f64>,
    tolerance: f64,
    seed: u64,
) -> Result<CommandOutput, CliError> {
    let file = input::load(path)?;
    let omega_squared = resolve_omega_squared(omega_flag, &file)?;
    let config = input::build(&file)?;
    let defect = residual(&config, omega_squared)?;
    let metrics = config.metrics()?;
    let rate_ratio = metrics.potential / metrics.inertia;
    let rate_gap = (omega_squared - rate_ratio).abs();
    let pass = defect.sup_norm < tolerance;

    let mut table = format!(
        "stationarity residual, {} bodies, omega^2 = {omega_squared} (tolerance {tolerance:.1e})\n",
        config.len()
    );
    let _ = writeln!(table, "{:>6}  {:>14}", "body", "residual");
    for (i, norm) in defect.norms().iter().enumerate() {
        let _ = writeln!(table, "{:>6}  {:>14.3e}", i + 1, norm);
    }
    let center = config.mass_center();
    let _ = writeln!(table, "  sup norm:            {:.3e}", defect.sup_norm);
    let _ = writeln!(
        table,
        "  mass center:         ({:.3e}, {:.3e})",
        center.re, center.im
    );
    let _ = writeln!(
        table,
        "  potential/inertia:   {rate_ratio:.15} (gap to omega^2: {rate_gap:.3e})"
    );
    let _ = writeln!(
        table,
        "  verdict:             {}",
        if pass { "stationary" } else { "NOT stationary" }
    );

    Ok(CommandOutput::from_pass(Report {
        command: "verify".into(),
        inputs: json!({
            "config": path.display().to_string(),
            "omega_squared": omega_squared,
            "tolerance": tolerance,
            "seed": seed,
        }),
        results: json!({
            "per_body_norms": defect.norms(),
            "sup_norm": defect.sup_norm,
            "mass_center": complex_value(center),
            "potential": metrics.potential,
            "inertia": metrics.inertia,
            "rate_ratio": rate_ratio,
            "rate_gap": rate_gap,
        }),
        pass,
        table,
    }))
}

fn resolve_omega_squared(flag: Option<f64>, file: &ConfigFile) -> Result<f64, CliError> {
    let value = flag.or(file.omega_squared).ok_or_else(|| {
        CliError::usage("no rotation rate: pass --omega2 or put omega_squared in the file")
    })?;
    if !value.is_finite() || value <= 0.0 {
        return Err(CliError::usage(format!(
            "omega squared must be finite and positive, got {value}"
        )));
    }
    Ok(value)
}

/// Randomized Newton sweep for the vertex masses.
pub fn solve(
    n: usize,
    omega_squared: f64,
    center_mass: f64,
    count: usize,
    tolerance: f64,
    seed: u64,
) -> Result<CommandOutput, CliError> {
    if count == 0 {
        return Err(CliError::usage("--seeds must be at least 1"));
    }
    let runs = newton_sweep(n, omega_squared, center_mass, count, seed)?;
    let converged: Vec<_> = runs
        .iter()
        .filter_map(|r| r.outcome.as_ref().ok())
        .collect();
    let all_equal = converged
        .iter()
        .all(|s| s.max_deviation_from_equal < tolerance);
    let pass = !converged.is_empty() && all_equal;

    let mut table = format!(
        "Newton sweep, n = {n}, omega^2 = {omega_squared}, center mass = {center_mass}, \
         {count} starts (seed {seed})\n"
    );
    let _ = writeln!(
        table,
        "{:>6}  {:>14}  {:>16}  outcome",
        "run", "branch", "deviation"
    );
    for (i, run) in runs.iter().enumerate() {
        match &run.outcome {
            Ok(solution) => {
                let _ = writeln!(
                    table,
                    "{:>6}  {:>14}  {:>16.3e}  m = {:.12e}",
                    i + 1,
                    branch_name(solution.branch),
                    solution.max_deviation_from_equal,
                    solution.masses[0],
                );
            }
            Err(error) => {
                let _ = writeln!(table, "{:>6}  {:>14}  {:>16}  {error}", i + 1, "-", "-");
            }
        }
    }
    let _ = writeln!(
        table,
        "{} of {count} runs converged; {}",
        converged.len(),
        if pass {
            "every converged run is equal-mass"
        } else if converged.is_empty() {
            "no run converged"
        } else {
            "some converged run is NOT equal-mass"
        }
    );

    let run_values: Vec<Value> = runs
        .iter()
        .map(|run| match &run.outcome {
            Ok(s) => json!({
                "initial_masses": run.initial_masses,
                "converged": {
                    "masses": s.masses,
                    "branch": branch_name(s.branch),
                    "residual_sup": s.residual_sup,
                    "max_deviation_from_equal": s.max_deviation_from_equal,
                },
            }),
            Err(error) => json!({
                "initial_masses": run.initial_masses,
                "error": error.to_string(),
            }),
        })
        .collect();
    let config = converged
        .first()
        .map(|s| config_value(n, &s.masses, center_mass, omega_squared));

    let report = Report {
        command: "solve".into(),
        inputs: json!({
            "n": n, "omega_squared": omega_squared, "center_mass": center_mass,
            "seeds": count, "tolerance": tolerance, "seed": seed,
        }),
        results: json!({
            "runs": run_values,
            "converged_count": converged.len(),
            "config": config,
        }),
        pass,
        table,
    };
    if converged.is_empty() {
        return Ok(CommandOutput { report, exit: 5 });
    }
    Ok(CommandOutput::from_pass(report))
}

fn branch_name(branch: Branch) -> &'static str {
    match branch {
        Branch::SumCondition => "sum_condition",
        Branch::OmegaCondition => "omega_condition",
    }
}

/// Interior position of the collinear three-body balance.
pub fn euler(m1: f64, m2: f64, m3: f64, seed: u64) -> Result<CommandOutput, CliError> {
    let problem = CollinearProblem::new(m1, m2, m3).map_err(|e| match e {
        // bad masses are a command-line mistake, not a computation failure
        polycc::Error::Domain(message) => CliError::usage(message),
        other => CliError::Core(other),
    })?;
    let q_star = problem.solve()?;
    let residual_at_root = problem.balance(q_star)?;
    let midpoint = problem.midpoint_balance();

    let mut table = format!("collinear balance for outer masses {m1}, {m2} and interior {m3}\n");
    let _ = writeln!(table, "  interior position Q* = {q_star:.15}");
    let _ = writeln!(table, "  balance at Q*:         {residual_at_root:.3e}");
    let _ = writeln!(table, "  balance at Q = 1/2:    {midpoint:.6e}");
    if m1 == m2 {
        let _ = writeln!(table, "  equal outer masses: the root sits at the midpoint");
    }

    Ok(CommandOutput::from_pass(Report {
        command: "euler".into(),
        inputs: json!({"m1": m1, "m2": m2, "m3": m3, "seed": seed}),
        results: json!({
            "q_star": q_star,
            "residual_at_root": residual_at_root,
            "midpoint_balance": midpoint,
        }),
        pass: true,
        table,
    }))
}

/// Integrate a configuration and certify rigid rotation; trajectory goes to
/// a CSV file.
#[allow(clippy::too_many_arguments)]
pub fn simulate(
    path: &Path,
    omega_flag: Option<f64>,
    step_flag: Option<f64>,
    steps: usize,
    method: Method,
    output: &Path,
    tolerance: f64,
    seed: u64,
) -> Result<CommandOutput, CliError> {
    let file = input::load(path)?;
    let omega = match omega_flag {
        Some(value) if value.is_finite() => value,
        Some(value) => {
            return Err(CliError::usage(format!(
                "--omega must be finite, got {value}"
            )))
        }
        None => resolve_omega_squared(None, &file)
            .map_err(|_| {
                CliError::usage("no rotation rate: pass --omega or put omega_squared in the file")
            })?
            .sqrt(),
    };
    let step = match step_flag {
        Some(value) => {
            if !value.is_finite() || value <= 0.0 {
                return Err(CliError::usage(format!(
                    "--step must be finite and positive, got {value}"
                )));
            }
            value
        }
        None if omega == 0.0 => {
            return Err(CliError::usage(
                "--step is required when the rotation rate is zero (no period to divide)",
            ))
        }
        None => std::f64::consts::TAU / omega.abs() / steps as f64,
    };
    if steps == 0 {
        return Err(CliError::usage("--steps must be at least 1"));
    }

    let config = input::build(&file)?;
    let initial = relative_equilibrium_state(&config, omega);
    let trajectory = integrate(config.masses(), &initial, step, steps, method)?;

    let writer = File::create(output).map(BufWriter::new).map_err(|e| {
        CliError::usage(format!(
            "cannot create trajectory file {}: {e}",
            output.display()
        ))
    })?;
    polycc::dynamics::write_csv(&trajectory, writer).map_err(|e| {
        CliError::usage(format!(
            "cannot write trajectory file {}: {e}",
            output.display()
        ))
    })?;

    let rigid = rigid_rotation_error(&trajectory, &config, omega);
    let energy_initial = trajectory.energy[0];
    let energy_drift = trajectory
        .energy
        .iter()
        .map(|e| (e - energy_initial).abs())
        .fold(0.0, f64::max);
    let relative_energy_drift =
        (energy_initial != 0.0).then(|| energy_drift / energy_initial.abs());
    let momentum_initial = trajectory.angular_momentum[0];
    let momentum_drift = trajectory
        .angular_momentum
        .iter()
        .map(|l| (l - momentum_initial).abs())
        .fold(0.0, f64::max);
    let linear_momentum_max = trajectory
        .linear_momentum
        .iter()
        .map(|p| p.norm())
        .fold(0.0, f64::max);
    let pass = trajectory.completed() && rigid < tolerance;

    let method_name = match method {
        Method::Rk4 => "rk4",
        Method::Leapfrog => "leapfrog",
    };
    let mut table = format!(
        "integration of {} bodies, omega = {omega}, {method_name}, step {step:.6e}, {} of {steps} steps\n",
        config.len(),
        trajectory.times.len() - 1,
    );
    let _ = writeln!(table, "  trajectory written to {}", output.display());
    let _ = writeln!(
        table,
        "  rigid-rotation error:    {rigid:.3e} (tolerance {tolerance:.1e})"
    );
    let _ = writeln!(table, "  energy drift:            {energy_drift:.3e}");
    let _ = writeln!(table, "  angular momentum drift:  {momentum_drift:.3e}");
    let _ = writeln!(
        table,
        "  linear momentum (max):   {linear_momentum_max:.3e}"
    );
    if let Some(event) = &trajectory.close_approach {
        let _ = writeln!(
            table,
            "  ABORTED: bodies {} and {} within {:.3e} at t = {:.6}",
            event.body_a, event.body_b, event.distance, event.time
        );
    }

    let close_approach = trajectory.close_approach.as_ref().map(|event| {
        json!({
            "time": event.time,
            "body_a": event.body_a,
            "body_b": event.body_b,
            "distance": event.distance,
        })
    });
    let report = Report {
        command: "simulate".into(),
        inputs: json!({
            "config": path.display().to_string(),
            "omega": omega,
            "step": step,
            "steps": steps,
            "method": method_name,
            "output": output.display().to_string(),
            "tolerance": tolerance,
            "seed": seed,
        }),
        results: json!({
            "steps_completed": trajectory.times.len() - 1,
            "rigid_rotation_error": rigid,
            "energy_initial": energy_initial,
            "energy_drift": energy_drift,
            "relative_energy_drift": relative_energy_drift,
            "angular_momentum_initial": momentum_initial,
            "angular_momentum_drift": momentum_drift,
            "linear_momentum_max": linear_momentum_max,
            "close_approach": close_approach,
        }),
        pass,
        table,
    };
    if !trajectory.completed() {
        return Ok(CommandOutput { report, exit: 6 });
    }
    Ok(CommandOutput::from_pass(report))
}

/// Eigenvalues of the interaction matrix with the zero-mode classification.
pub fn spectrum(n: usize, seed: u64) -> Result<CommandOutput, CliError> {
    let matrix = interaction_matrix(n)?;
    let eigenvalues = matrix.spectrum();
    let check = if n >= 4 {
        Some(interaction_spectrum_check(n)?)
    } else {
        None
    };
    let pass = check.as_ref().is_none_or(|c| c.pass);

    let mut table = format!("interaction matrix spectrum, n = {n}\n");
    let _ = writeln!(
        table,
        "{:>6}  {:>22}  {:>14}  class",
        "k", "eigenvalue (re, im)", "magnitude"
    );
    for (i, lambda) in eigenvalues.iter().enumerate() {
        let k = i + 1;
        let class = match &check {
            Some(c) => c
                .entries
                .iter()
                .find(|e| e.k == k)
                .map(|e| {
                    if e.expect_zero {
                        "zero mode"
                    } else {
                        "nonzero"
                    }
                })
                .unwrap_or("-"),
            None => "-",
        };
        let _ = writeln!(
            table,
            "{:>6}  ({:>9.3e}, {:>8.1e})  {:>14.3e}  {class}",
            k,
            lambda.re,
            lambda.im,
            lambda.norm()
        );
    }
    if check.is_none() {
        let _ = writeln!(table, "zero-mode classification is defined for n >= 4 only");
    } else {
        let _ = writeln!(
            table,
            "class column covers modes k = 1 through {}; the last mode carries no claim",
            n - 1
        );
    }

    let classification = check.map(|c| {
        json!({
            "entries": c.entries.iter().map(|e| json!({
                "k": e.k,
                "eigenvalue": complex_value(e.eigenvalue),
                "magnitude": e.eigenvalue.norm(),
                "expect_zero": e.expect_zero,
                "pass": e.pass,
            })).collect::<Vec<_>>(),
            "pass": c.pass,
        })
    });

    Ok(CommandOutput::from_pass(Report {
        command: "spectrum".into(),
        inputs: json!({"n": n, "seed": seed}),
        results: json!({
            "eigenvalues": eigenvalues.iter().map(|z| complex_value(*z)).collect::<Vec<_>>(),
            "classification": classification,
        }),
        pass,
        table,
    }))
}
