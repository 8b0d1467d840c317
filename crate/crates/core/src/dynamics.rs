//! Direct N-body integration for certifying relative equilibria.
//!
//! A central configuration rotating at its matched rate ω is an exact
//! solution of the equations of motion: every body traces a circle about the
//! mass center. Integrating the full nonlinear system from the rotating
//! initial state and measuring the distance to the analytic rigid rotation is
//! therefore an end-to-end certificate for the algebra in `central_config`.
//!
//! Two fixed-step integrators are provided: classical fourth-order
//! Runge–Kutta and kick-drift-kick leapfrog (symplectic, second order).

use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::geometry::{Configuration, Point, COINCIDENCE_DISTANCE};

/// Integration aborts (gracefully) when any pair gets closer than this.
pub const CLOSE_APPROACH_DISTANCE: f64 = 1e-6;

/// Position and velocity of one body.
#[derive(Debug, Clone, Copy)]
pub struct BodyState {
    pub position: Point,
    pub velocity: Point,
}

/// Fixed-step integration scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Classical fourth-order Runge–Kutta.
    Rk4,
    /// Kick-drift-kick leapfrog: symplectic, second order, exactly conserves
    /// angular and linear momentum for these pairwise central forces.
    Leapfrog,
}

/// The pair and time at which integration stopped early.
#[derive(Debug, Clone, Copy)]
pub struct CloseApproach {
    pub time: f64,
    /// 1-based body labels.
    pub body_a: usize,
    pub body_b: usize,
    pub distance: f64,
}

/// Snapshots of an integration run plus per-snapshot conserved quantities.
///
/// When a close approach aborts the run, the trajectory up to and including
/// the offending snapshot is kept and `close_approach` records the event.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    /// `states[i][j]` is body j at `times[i]`.
    pub states: Vec<Vec<BodyState>>,
    pub energy: Vec<f64>,
    pub angular_momentum: Vec<f64>,
    pub linear_momentum: Vec<Point>,
    pub close_approach: Option<CloseApproach>,
}

impl Trajectory {
    /// True when the run finished all requested steps.
    pub fn completed(&self) -> bool {
        self.close_approach.is_none()
    }
}

/// Initial state of a rigid rotation at angular velocity ω about the mass
/// center: v_j = iω(x_j − c), i.e. the position offset rotated 90° and
/// scaled. ω = 0 gives a static configuration.
pub fn relative_equilibrium_state(config: &Configuration, omega: f64) -> Vec<BodyState> {
    let center = config.mass_center();
    config
        .positions()
        .iter()
        .map(|x| {
            let offset = x - center;
            BodyState {
                position: *x,
                velocity: Point::new(-omega * offset.im, omega * offset.re),
            }
        })
        .collect()
}

/// Gravitational accelerations a_k = Σ_{j≠k} m_j (x_j − x_k)/|x_j − x_k|³.
pub fn accelerations(positions: &[Point], masses: &[f64]) -> Result<Vec<Point>> {
    if positions.len() != masses.len() {
        return Err(Error::domain(format!(
            "{} positions but {} masses",
            positions.len(),
            masses.len()
        )));
    }
    let mut out = vec![Point::new(0.0, 0.0); positions.len()];
    for k in 0..positions.len() {
        for j in 0..positions.len() {
            if j == k {
                continue;
            }
            let d = positions[j] - positions[k];
            let r = d.norm();
            if r < COINCIDENCE_DISTANCE {
                return Err(Error::Coincident {
                    body_a: k.min(j) + 1,
                    body_b: k.max(j) + 1,
                    distance: r,
                });
            }
            out[k] += d * (masses[j] / (r * r * r));
        }
    }
    Ok(out)
}

/// Total energy, z-angular momentum, and linear momentum of a state.
fn conserved_quantities(states: &[BodyState], masses: &[f64]) -> (f64, f64, Point) {
    let mut kinetic = 0.0;
    let mut potential = 0.0;
    let mut angular = 0.0;
    let mut momentum = Point::new(0.0, 0.0);
    for (s, m) in states.iter().zip(masses) {
        kinetic += 0.5 * m * s.velocity.norm_sqr();
        angular += m * (s.position.re * s.velocity.im - s.position.im * s.velocity.re);
        momentum += s.velocity * *m;
    }
    for i in 0..states.len() {
        for j in (i + 1)..states.len() {
            potential += masses[i] * masses[j] / (states[i].position - states[j].position).norm();
        }
    }
    (kinetic - potential, angular, momentum)
}

fn closest_pair(states: &[BodyState]) -> Option<(usize, usize, f64)> {
    let mut best: Option<(usize, usize, f64)> = None;
    for i in 0..states.len() {
        for j in (i + 1)..states.len() {
            let d = (states[i].position - states[j].position).norm();
            if best.is_none_or(|(_, _, b)| d < b) {
                best = Some((i, j, d));
            }
        }
    }
    best
}

fn rk4_step(states: &[BodyState], masses: &[f64], h: f64) -> Result<Vec<BodyState>> {
    let n = states.len();
    let stage = |base: &[BodyState], k: &[(Point, Point)], w: f64| -> Vec<BodyState> {
        (0..n)
            .map(|i| BodyState {
                position: base[i].position + k[i].0 * w,
                velocity: base[i].velocity + k[i].1 * w,
            })
            .collect()
    };
    let derivative = |s: &[BodyState]| -> Result<Vec<(Point, Point)>> {
        let positions: Vec<Point> = s.iter().map(|b| b.position).collect();
        let acc = accelerations(&positions, masses)?;
        Ok(s.iter().zip(acc).map(|(b, a)| (b.velocity, a)).collect())
    };
    let k1 = derivative(states)?;
    let k2 = derivative(&stage(states, &k1, h / 2.0))?;
    let k3 = derivative(&stage(states, &k2, h / 2.0))?;
    let k4 = derivative(&stage(states, &k3, h))?;
    Ok((0..n)
        .map(|i| BodyState {
            position: states[i].position
                + (k1[i].0 + (k2[i].0 + k3[i].0) * 2.0 + k4[i].0) * (h / 6.0),
            velocity: states[i].velocity
                + (k1[i].1 + (k2[i].1 + k3[i].1) * 2.0 + k4[i].1) * (h / 6.0),
        })
        .collect())
}

fn leapfrog_step(states: &[BodyState], masses: &[f64], h: f64) -> Result<Vec<BodyState>> {
    let positions: Vec<Point> = states.iter().map(|b| b.position).collect();
    let acc = accelerations(&positions, masses)?;
    let half: Vec<BodyState> = states
        .iter()
        .zip(&acc)
        .map(|(s, a)| BodyState {
            position: s.position + (s.velocity + a * (h / 2.0)) * h,
            velocity: s.velocity + a * (h / 2.0),
        })
        .collect();
    let new_positions: Vec<Point> = half.iter().map(|b| b.position).collect();
    let new_acc = accelerations(&new_positions, masses)?;
    Ok(half
        .iter()
        .zip(&new_acc)
        .map(|(s, a)| BodyState {
            position: s.position,
            velocity: s.velocity + a * (h / 2.0),
        })
        .collect())
}

/// Integrates `n_steps` fixed steps of size `step` from `initial`.
///
/// Snapshot times are i·step (no accumulation error). If any pair drops
/// below [`CLOSE_APPROACH_DISTANCE`] at a snapshot — including the initial
/// one — the run stops there and the event is recorded in the returned
/// trajectory instead of erroring, so partial output stays usable.
pub fn integrate(
    masses: &[f64],
    initial: &[BodyState],
    step: f64,
    n_steps: usize,
    method: Method,
) -> Result<Trajectory> {
    if masses.len() != initial.len() {
        return Err(Error::domain(format!(
            "{} masses but {} body states",
            masses.len(),
            initial.len()
        )));
    }
    if initial.is_empty() {
        return Err(Error::domain("cannot integrate an empty system"));
    }
    for (i, m) in masses.iter().enumerate() {
        if !m.is_finite() || *m <= 0.0 {
            return Err(Error::domain(format!(
                "mass of body {} must be finite and positive, got {m}",
                i + 1
            )));
        }
    }
    for (i, s) in initial.iter().enumerate() {
        let finite = s.position.re.is_finite()
            && s.position.im.is_finite()
            && s.velocity.re.is_finite()
            && s.velocity.im.is_finite();
        if !finite {
            return Err(Error::domain(format!(
                "state of body {} is not finite",
                i + 1
            )));
        }
    }
    if !step.is_finite() || step <= 0.0 {
        return Err(Error::domain(format!("step must be positive, got {step}")));
    }
    if n_steps == 0 {
        return Err(Error::domain("n_steps must be at least 1"));
    }

    let mut trajectory = Trajectory {
        times: Vec::with_capacity(n_steps + 1),
        states: Vec::with_capacity(n_steps + 1),
        energy: Vec::with_capacity(n_steps + 1),
        angular_momentum: Vec::with_capacity(n_steps + 1),
        linear_momentum: Vec::with_capacity(n_steps + 1),
        close_approach: None,
    };
    let record = |t: f64, states: Vec<BodyState>, traj: &mut Trajectory| {
        let (e, l, p) = conserved_quantities(&states, masses);
        traj.times.push(t);
        traj.energy.push(e);
        traj.angular_momentum.push(l);
        traj.linear_momentum.push(p);
        traj.states.push(states);
    };
    let check_close = |t: f64, states: &[BodyState], traj: &mut Trajectory| -> bool {
        if states.len() < 2 {
            return false;
        }
        if let Some((i, j, d)) = closest_pair(states) {
            if d < CLOSE_APPROACH_DISTANCE {
                traj.close_approach = Some(CloseApproach {
                    time: t,
                    body_a: i + 1,
                    body_b: j + 1,
                    distance: d,
                });
                return true;
            }
        }
        false
    };

    let mut current = initial.to_vec();
    record(0.0, current.clone(), &mut trajectory);
    if check_close(0.0, &current, &mut trajectory) {
        return Ok(trajectory);
    }
    for i in 1..=n_steps {
        current = match method {
            Method::Rk4 => rk4_step(&current, masses, step)?,
            Method::Leapfrog => leapfrog_step(&current, masses, step)?,
        };
        let t = step * i as f64;
        record(t, current.clone(), &mut trajectory);
        if check_close(t, &current, &mut trajectory) {
            break;
        }
    }
    Ok(trajectory)
}

/// Largest distance, over all snapshots and bodies, between the integrated
/// position and the analytic rigid rotation e^{iωt}(x_j(0) − c) + c of the
/// reference configuration.
pub fn rigid_rotation_error(trajectory: &Trajectory, config: &Configuration, omega: f64) -> f64 {
    let center = config.mass_center();
    let mut worst = 0.0f64;
    for (t, states) in trajectory.times.iter().zip(&trajectory.states) {
        let rotation = Point::new((omega * t).cos(), (omega * t).sin());
        for (state, x0) in states.iter().zip(config.positions()) {
            let target = center + rotation * (x0 - center);
            worst = worst.max((state.position - target).norm());
        }
    }
    worst
}

/// Writes a trajectory as CSV: header `t,body,x,y,vx,vy,energy,Lz,px,py`,
/// one row per (snapshot, body), bodies labelled from 1. Conserved
/// quantities are per snapshot and repeat across that snapshot's rows.
pub fn write_csv<W: Write>(trajectory: &Trajectory, mut out: W) -> io::Result<()> {
    writeln!(out, "t,body,x,y,vx,vy,energy,Lz,px,py")?;
    for (i, t) in trajectory.times.iter().enumerate() {
        for (j, s) in trajectory.states[i].iter().enumerate() {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                t,
                j + 1,
                s.position.re,
                s.position.im,
                s.velocity.re,
                s.velocity.im,
                trajectory.energy[i],
                trajectory.angular_momentum[i],
                trajectory.linear_momentum[i].re,
                trajectory.linear_momentum[i].im,
            )?;
        }
    }
    Ok(())
}
