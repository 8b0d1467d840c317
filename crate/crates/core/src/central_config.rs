//! Central configurations: stationarity residual, the closed-form equal-mass
//! solution for the regular polygon plus central body, a spectral solver, and
//! a damped Gauss–Newton solver over the vertex masses.
//!
//! A configuration rotating rigidly with angular velocity ω about its mass
//! center c is a relative equilibrium exactly when, for every body k,
//!
//!   Σ_{j≠k} m_j m_k (x_j − x_k)/|x_j − x_k|³ + ω² m_k (x_k − c) = 0,
//!
//! with c recomputed from the trial masses. For the regular unit n-gon with
//! equal vertex masses m and central mass m_c, the residual collapses to the
//! scalar condition m·S(n) + m_c = ω² with S(n) the cosecant sum, giving
//! m = (ω² − m_c)/S(n); the configuration is infeasible when ω² ≤ m_c.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circulant::interaction_matrix;
use crate::error::{Error, Result};
use crate::geometry::{regular_polygon_vertices, Configuration, Point};
use crate::identities::cosecant_sum;
use crate::par;

/// A mass vector counts as stationary when the sup norm of the per-body
/// residual drops below this.
pub const STATIONARITY_TOLERANCE: f64 = 1e-11;
/// Iteration cap for the Gauss–Newton solver.
pub const MAX_ITERATIONS: usize = 200;
/// Tolerance used to classify which branch of the stationarity alternative a
/// solution satisfies.
pub const BRANCH_TOLERANCE: f64 = 1e-8;

const MAX_HALVINGS: usize = 30;
const JACOBIAN_STEP: f64 = 1e-7;
/// A converged mass this much smaller than the largest one marks a boundary
/// solution (a sub-configuration with some bodies effectively massless).
const BOUNDARY_RATIO: f64 = 1e-7;
/// Accepted solutions must balance per unit mass: the sup of
/// Σ_j m_j u_kj + ω²(x_k − c₀) may not exceed this fraction of ω². The
/// all-zero mass vector solves the multiplied system exactly but leaves
/// these terms at order ω², so this is what rejects uniform collapse.
const UNIT_RESIDUAL_TOLERANCE: f64 = 1e-6;

/// Per-body stationarity defect of a configuration at a given ω².
#[derive(Debug, Clone)]
pub struct ResidualReport {
    /// Complex residual vectors, one per body, in body order.
    pub per_body: Vec<Point>,
    /// Largest per-body Euclidean norm.
    pub sup_norm: f64,
    pub omega_squared: f64,
}

impl ResidualReport {
    pub fn norms(&self) -> Vec<f64> {
        self.per_body.iter().map(|r| r.norm()).collect()
    }
}

/// Which alternative of the stationarity condition a mass vector satisfies:
/// either the weighted vertex sum Σ m_j q_j vanishes, or ω² equals the total
/// mass. Both can hold at once; the sum condition is reported in that case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    SumCondition,
    OmegaCondition,
}

/// A solved polygon mass vector plus diagnostics.
#[derive(Debug, Clone)]
pub struct MassSolution {
    pub masses: Vec<f64>,
    pub center_mass: f64,
    pub omega_squared: f64,
    pub branch: Branch,
    /// Sup norm of the stationarity residual at the solution.
    pub residual_sup: f64,
    /// max_j |m_j − mean(m)|: how far the vector is from the equal-mass ray.
    pub max_deviation_from_equal: f64,
}

/// Closed-form verification bundle for the equal-mass polygon.
#[derive(Debug, Clone)]
pub struct EqualMassCheck {
    pub vertex_mass: f64,
    pub residual: ResidualReport,
    /// |ω² − U/I|: the rotation rate must also match the potential-to-inertia
    /// ratio of the configuration.
    pub omega_gap: f64,
}

/// Stationarity residual of an arbitrary configuration.
///
/// The mass center is always recomputed from the configuration's masses; the
/// caller only chooses ω² (> 0).
pub fn residual(config: &Configuration, omega_squared: f64) -> Result<ResidualReport> {
    if !omega_squared.is_finite() || omega_squared <= 0.0 {
        return Err(Error::domain(format!(
            "omega_squared must be positive, got {omega_squared}"
        )));
    }
    let positions = config.positions();
    let masses = config.masses();
    let center = config.mass_center();
    let mut per_body = Vec::with_capacity(positions.len());
    for k in 0..positions.len() {
        let mut pull = Point::new(0.0, 0.0);
        for j in 0..positions.len() {
            if j == k {
                continue;
            }
            let d = positions[j] - positions[k];
            // pairwise distances are bounded away from zero by the
            // Configuration invariant
            pull += d * (masses[j] / d.norm().powi(3));
        }
        per_body.push((pull + (positions[k] - center) * omega_squared) * masses[k]);
    }
    let sup_norm = per_body.iter().map(|r| r.norm()).fold(0.0, f64::max);
    Ok(ResidualReport {
        per_body,
        sup_norm,
        omega_squared,
    })
}

fn validate_parameters(n: usize, omega_squared: f64, center_mass: f64) -> Result<()> {
    if n < 2 {
        return Err(Error::domain(format!(
            "polygon needs at least 2 vertices, got {n}"
        )));
    }
    if !omega_squared.is_finite() || omega_squared <= 0.0 {
        return Err(Error::domain(format!(
            "omega_squared must be positive, got {omega_squared}"
        )));
    }
    if !center_mass.is_finite() || center_mass < 0.0 {
        return Err(Error::domain(format!(
            "center mass must be non-negative, got {center_mass}"
        )));
    }
    if omega_squared <= center_mass {
        return Err(Error::infeasible(format!(
            "positive vertex masses require omega_squared > center_mass, \
             got omega_squared = {omega_squared} <= center_mass = {center_mass}"
        )));
    }
    Ok(())
}

/// The unique common vertex mass m = (ω² − m_c)/S(n) that makes the regular
/// n-gon with central mass m_c a relative equilibrium at rotation rate ω.
///
/// `center_mass` = 0 is allowed (no central body); ω² ≤ center_mass is
/// infeasible because the formula would give a non-positive mass.
pub fn equal_vertex_mass(n: usize, omega_squared: f64, center_mass: f64) -> Result<f64> {
    validate_parameters(n, omega_squared, center_mass)?;
    Ok((omega_squared - center_mass) / cosecant_sum(n)?)
}

/// Computes the closed-form vertex mass, builds the configuration, and
/// measures its stationarity residual and its ω² = U/I defect.
pub fn verify_equal_masses(
    n: usize,
    omega_squared: f64,
    center_mass: f64,
) -> Result<EqualMassCheck> {
    let vertex_mass = equal_vertex_mass(n, omega_squared, center_mass)?;
    if center_mass <= 0.0 {
        return Err(Error::domain(
            "verification builds the full configuration, which needs a strictly positive center mass",
        ));
    }
    let config = Configuration::polygon_plus_center(n, &vec![vertex_mass; n], center_mass)?;
    let report = residual(&config, omega_squared)?;
    let metrics = config.metrics()?;
    let omega_gap = (omega_squared - metrics.potential / metrics.inertia).abs();
    Ok(EqualMassCheck {
        vertex_mass,
        residual: report,
        omega_gap,
    })
}

/// Solves for the vertex mass through the interaction-matrix eigenstructure:
/// equal masses excite only the leading Fourier mode, so m = (ω² − m_c)/λ_1.
/// Defined for n ≥ 4, where the spectrum classification applies.
pub fn vertex_mass_spectral(
    n: usize,
    omega_squared: f64,
    center_mass: f64,
) -> Result<MassSolution> {
    if n < 4 {
        return Err(Error::domain(format!(
            "spectral solve is defined for n >= 4, got {n}"
        )));
    }
    validate_parameters(n, omega_squared, center_mass)?;
    let lambda = interaction_matrix(n)?.eigenvalue(1)?;
    if lambda.norm() < 1e-10 {
        return Err(Error::numerical(format!(
            "leading interaction eigenvalue is numerically singular: |lambda_1| = {:e}",
            lambda.norm()
        )));
    }
    let mass = Complex64::new(omega_squared - center_mass, 0.0) / lambda;
    if mass.im.abs() > 1e-9 * mass.re.abs().max(1.0) {
        return Err(Error::numerical(format!(
            "spectral vertex mass came out non-real: {mass}"
        )));
    }
    let system = PolygonSystem::new(n, omega_squared, center_mass)?;
    let masses = vec![mass.re; n];
    let flat = system.residual_flat(&masses);
    let unit_sup = system.unit_mass_sup(&masses);
    finalize_solution(
        n,
        omega_squared,
        center_mass,
        masses,
        sup_body_norm(&flat),
        unit_sup,
    )
}

/// Damped Gauss–Newton iteration over the n vertex masses, with the polygon
/// geometry, ω², and the central mass held fixed.
///
/// The stationarity system has 2(n+1) real equations in n unknowns; each step
/// solves the linearized least-squares problem (finite-difference Jacobian,
/// SVD) and backtracks by halving until the residual 2-norm decreases.
/// Convergence is declared when the per-body sup norm drops below
/// [`STATIONARITY_TOLERANCE`]; stationary points with a non-positive or
/// negligible component are reported as infeasible boundary solutions rather
/// than solutions, and so is uniform collapse to the all-zero vector (which
/// solves the mass-multiplied equations vacuously).
pub fn solve_vertex_masses(
    n: usize,
    omega_squared: f64,
    center_mass: f64,
    initial: &[f64],
) -> Result<MassSolution> {
    validate_parameters(n, omega_squared, center_mass)?;
    if initial.len() != n {
        return Err(Error::domain(format!(
            "expected {n} initial masses, got {}",
            initial.len()
        )));
    }
    for (i, m) in initial.iter().enumerate() {
        if !m.is_finite() || *m <= 0.0 {
            return Err(Error::domain(format!(
                "initial mass {} must be finite and positive, got {m}",
                i + 1
            )));
        }
    }
    let system = PolygonSystem::new(n, omega_squared, center_mass)?;
    let mut masses = initial.to_vec();
    let mut flat = system.residual_flat(&masses);
    let mut norm2 = l2_norm(&flat);
    let mut iterations = 0;
    while sup_body_norm(&flat) >= STATIONARITY_TOLERANCE {
        if iterations >= MAX_ITERATIONS {
            return Err(Error::NoConvergence {
                iterations,
                residual: sup_body_norm(&flat),
            });
        }
        let delta = gauss_newton_step(&system, &masses, &flat)?;
        let mut scale = 1.0;
        let mut accepted = false;
        for _ in 0..=MAX_HALVINGS {
            let trial: Vec<f64> = masses
                .iter()
                .zip(&delta)
                .map(|(m, d)| m + scale * d)
                .collect();
            let trial_flat = system.residual_flat(&trial);
            let trial_norm = l2_norm(&trial_flat);
            if trial_norm.is_finite() && trial_norm < norm2 {
                masses = trial;
                flat = trial_flat;
                norm2 = trial_norm;
                accepted = true;
                break;
            }
            scale *= 0.5;
        }
        if !accepted {
            // the line search cannot make progress: stalled short of the
            // tolerance
            return Err(Error::NoConvergence {
                iterations,
                residual: sup_body_norm(&flat),
            });
        }
        iterations += 1;
    }
    let unit_sup = system.unit_mass_sup(&masses);
    finalize_solution(
        n,
        omega_squared,
        center_mass,
        masses,
        sup_body_norm(&flat),
        unit_sup,
    )
}

/// One solver run of a sweep: the random starting point and what came of it.
#[derive(Debug, Clone)]
pub struct SweepRun {
    pub initial_masses: Vec<f64>,
    pub outcome: Result<MassSolution>,
}

/// Log-uniform starting mass vectors in [0.1, 10] per component, drawn from a
/// seeded ChaCha stream: the same `rng_seed` always yields the same guesses.
pub fn seed_masses(n: usize, count: usize, rng_seed: u64) -> Result<Vec<Vec<f64>>> {
    if n < 2 {
        return Err(Error::domain(format!(
            "polygon needs at least 2 vertices, got {n}"
        )));
    }
    if count == 0 {
        return Err(Error::domain("a sweep needs at least one starting point"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    Ok((0..count)
        .map(|_| {
            (0..n)
                .map(|_| 10f64.powf(rng.random_range(-1.0..=1.0)))
                .collect()
        })
        .collect())
}

/// Runs [`solve_vertex_masses`] from `count` seeded random starting points
/// (in parallel when the `parallel` feature is on). Starting points are drawn
/// up front from the seed, so results are deterministic and ordered by seed
/// index regardless of scheduling.
pub fn newton_sweep(
    n: usize,
    omega_squared: f64,
    center_mass: f64,
    count: usize,
    rng_seed: u64,
) -> Result<Vec<SweepRun>> {
    validate_parameters(n, omega_squared, center_mass)?;
    let seeds = seed_masses(n, count, rng_seed)?;
    Ok(par::map_items(seeds, move |initial| {
        let outcome = solve_vertex_masses(n, omega_squared, center_mass, &initial);
        SweepRun {
            initial_masses: initial,
            outcome,
        }
    }))
}

/// Fixed polygon-plus-center geometry with precomputed inverse cube
/// distances; trial mass vectors are evaluated against it.
struct PolygonSystem {
    positions: Vec<Point>,
    inv_cube: Vec<Vec<f64>>,
    omega_squared: f64,
    center_mass: f64,
}

impl PolygonSystem {
    fn new(n: usize, omega_squared: f64, center_mass: f64) -> Result<Self> {
        let mut positions = regular_polygon_vertices(n)?;
        positions.push(Point::new(0.0, 0.0));
        let len = positions.len();
        let mut inv_cube = vec![vec![0.0; len]; len];
        for k in 0..len {
            for j in 0..len {
                if j != k {
                    inv_cube[k][j] = (positions[j] - positions[k]).norm().powi(-3);
                }
            }
        }
        Ok(PolygonSystem {
            positions,
            inv_cube,
            omega_squared,
            center_mass,
        })
    }

    /// Per-body stationarity terms Σ_j m_j u_kj + ω²(x_k − c₀), *without* the
    /// m_k factor, one entry per body including the center. These must vanish
    /// at a genuine solution; multiplying by m_k gives the equations actually
    /// iterated on.
    fn stationarity_terms(&self, vertex_masses: &[f64]) -> Vec<Point> {
        let len = self.positions.len();
        let mut masses = Vec::with_capacity(len);
        masses.extend_from_slice(vertex_masses);
        masses.push(self.center_mass);
        let total: f64 = masses.iter().sum();
        let mut weighted = Point::new(0.0, 0.0);
        for (x, m) in self.positions.iter().zip(&masses) {
            weighted += x * *m;
        }
        let center = weighted / total;
        let mut out = Vec::with_capacity(len);
        for k in 0..len {
            let mut pull = Point::new(0.0, 0.0);
            for (j, m) in masses.iter().enumerate() {
                if j != k {
                    pull += (self.positions[j] - self.positions[k]) * (*m * self.inv_cube[k][j]);
                }
            }
            out.push(pull + (self.positions[k] - center) * self.omega_squared);
        }
        out
    }

    /// Flattened residual (re, im per body, 2(n+1) entries) for the given
    /// vertex masses. No positivity is assumed: line-search trials may wander
    /// through invalid mass vectors and simply score badly.
    fn residual_flat(&self, vertex_masses: &[f64]) -> Vec<f64> {
        let terms = self.stationarity_terms(vertex_masses);
        let mut masses = Vec::with_capacity(terms.len());
        masses.extend_from_slice(vertex_masses);
        masses.push(self.center_mass);
        let mut out = Vec::with_capacity(2 * terms.len());
        for (term, m) in terms.iter().zip(&masses) {
            let r = term * *m;
            out.push(r.re);
            out.push(r.im);
        }
        out
    }

    /// Sup norm of the unscaled stationarity terms. The mass-multiplied system
    /// is blind to bodies whose mass has collapsed to zero — the all-zero
    /// vector solves it exactly — so accepted solutions must also balance per
    /// unit mass.
    fn unit_mass_sup(&self, vertex_masses: &[f64]) -> f64 {
        self.stationarity_terms(vertex_masses)
            .iter()
            .map(|t| t.norm())
            .fold(0.0, f64::max)
    }
}

fn sup_body_norm(flat: &[f64]) -> f64 {
    flat.chunks_exact(2)
        .map(|c| c[0].hypot(c[1]))
        .fold(0.0, f64::max)
}

fn l2_norm(flat: &[f64]) -> f64 {
    flat.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn gauss_newton_step(system: &PolygonSystem, masses: &[f64], base: &[f64]) -> Result<Vec<f64>> {
    let rows = base.len();
    let cols = masses.len();
    let mut jacobian = DMatrix::<f64>::zeros(rows, cols);
    for l in 0..cols {
        let h = JACOBIAN_STEP * masses[l].abs().max(1.0);
        let mut bumped = masses.to_vec();
        bumped[l] += h;
        let shifted = system.residual_flat(&bumped);
        for r in 0..rows {
            jacobian[(r, l)] = (shifted[r] - base[r]) / h;
        }
    }
    let rhs = DVector::from_iterator(rows, base.iter().map(|x| -x));
    jacobian
        .svd(true, true)
        .solve(&rhs, 1e-14)
        .map(|d| d.iter().copied().collect())
        .map_err(|e| Error::numerical(format!("least-squares step failed: {e}")))
}

fn finalize_solution(
    n: usize,
    omega_squared: f64,
    center_mass: f64,
    masses: Vec<f64>,
    residual_sup: f64,
    unit_residual_sup: f64,
) -> Result<MassSolution> {
    let max = masses.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    for (i, m) in masses.iter().enumerate() {
        if *m <= 0.0 {
            return Err(Error::infeasible(format!(
                "stationary mass vector has non-positive component m_{} = {m:e}",
                i + 1
            )));
        }
    }
    if let Some((i, &min)) = masses.iter().enumerate().min_by(|a, b| a.1.total_cmp(b.1)) {
        if min < BOUNDARY_RATIO * max {
            return Err(Error::infeasible(format!(
                "boundary solution: m_{} = {min:e} is negligible against the largest mass {max:e}",
                i + 1
            )));
        }
    }
    if unit_residual_sup > UNIT_RESIDUAL_TOLERANCE * omega_squared {
        return Err(Error::infeasible(format!(
            "mass vector collapsed toward zero: the equations per unit mass stay unbalanced \
             (sup {unit_residual_sup:e} against rotation rate squared {omega_squared:e})"
        )));
    }
    let vertices = regular_polygon_vertices(n)?;
    let mut weighted = Point::new(0.0, 0.0);
    for (q, m) in vertices.iter().zip(&masses) {
        weighted += q * *m;
    }
    let total: f64 = masses.iter().sum::<f64>() + center_mass;
    let branch = if weighted.norm() < BRANCH_TOLERANCE {
        Branch::SumCondition
    } else if (omega_squared - total).abs() < BRANCH_TOLERANCE * omega_squared {
        Branch::OmegaCondition
    } else {
        return Err(Error::numerical(format!(
            "stationary mass vector satisfies neither branch: |sum m_j q_j| = {:e}, \
             |omega_squared - total mass| = {:e}",
            weighted.norm(),
            (omega_squared - total).abs()
        )));
    };
    let mean = masses.iter().sum::<f64>() / n as f64;
    let max_deviation_from_equal = masses.iter().map(|m| (m - mean).abs()).fold(0.0, f64::max);
    Ok(MassSolution {
        masses,
        center_mass,
        omega_squared,
        branch,
        residual_sup,
        max_deviation_from_equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lagrange_triangle_is_stationary_at_total_mass_rotation() {
        // Unit equilateral triangle, masses (1, 2, 3): all distances are 1,
        // so the pair pulls telescope into M(c − x_k) and ω² = M = 6 closes
        // the residual identically.
        let config = Configuration::new(
            vec![
                Point::new(0.0, 0.0),
                Point::new(1.0, 0.0),
                Point::new(0.5, 3f64.sqrt() / 2.0),
            ],
            vec![1.0, 2.0, 3.0],
        )
        .unwrap();
        let report = residual(&config, 6.0).unwrap();
        assert!(report.sup_norm < 1e-12, "sup = {:e}", report.sup_norm);
        assert_eq!(report.per_body.len(), 3);
    }

    #[test]
    fn digon_with_center_closed_form_is_stationary() {
        // n = 2: m = (ω² − m_c)/S(2) = 4(ω² − m_c).
        let m = equal_vertex_mass(2, 1.0, 0.5).unwrap();
        assert_eq!(m, 2.0);
        let config = Configuration::polygon_plus_center(2, &[m, m], 0.5).unwrap();
        assert!(residual(&config, 1.0).unwrap().sup_norm < 1e-13);
    }

    #[test]
    fn perturbing_one_mass_breaks_stationarity() {
        let n = 6;
        let m = equal_vertex_mass(n, 1.0, 0.1).unwrap();
        let mut masses = vec![m; n];
        masses[0] += 0.5;
        let config = Configuration::polygon_plus_center(n, &masses, 0.1).unwrap();
        assert!(residual(&config, 1.0).unwrap().sup_norm > 1e-3);
    }

    #[test]
    fn residual_rejects_nonpositive_rotation() {
        let config = Configuration::polygon_plus_center(3, &[1.0; 3], 0.1).unwrap();
        assert!(matches!(residual(&config, 0.0), Err(Error::Domain(_))));
        assert!(matches!(residual(&config, -1.0), Err(Error::Domain(_))));
        assert!(matches!(residual(&config, f64::NAN), Err(Error::Domain(_))));
    }

    #[test]
    fn residual_scales_quadratically_with_mass_and_rotation() {
        // Scaling every mass and ω² by s multiplies each residual term by s².
        let positions = vec![
            Point::new(0.3, -0.4),
            Point::new(1.1, 0.2),
            Point::new(-0.7, 0.9),
            Point::new(0.0, 1.8),
        ];
        let masses = vec![0.8, 1.3, 2.1, 0.5];
        let base_config = Configuration::new(positions.clone(), masses.clone()).unwrap();
        let base = residual(&base_config, 1.7).unwrap();
        for s in [0.5, 2.0, 10.0] {
            let scaled_config =
                Configuration::new(positions.clone(), masses.iter().map(|m| m * s).collect())
                    .unwrap();
            let scaled = residual(&scaled_config, 1.7 * s).unwrap();
            let scale_sup = base.sup_norm * s * s;
            for (a, b) in scaled.per_body.iter().zip(&base.per_body) {
                assert!(
                    (a - b * (s * s)).norm() < 1e-11 * scale_sup.max(1.0),
                    "s={s}"
                );
            }
        }
    }

    #[test]
    fn equal_vertex_mass_closed_forms() {
        // n = 3, no central body: m = ω²/S(3) = √3 for ω² = 1.
        assert!((equal_vertex_mass(3, 1.0, 0.0).unwrap() - 3f64.sqrt()).abs() < 1e-15);
        // The digon formula stays the exact quadruple for many parameters.
        for (w2, mc) in [(1.0, 0.1), (2.0, 0.5), (5.0, 1.0), (7.25, 3.0)] {
            let m = equal_vertex_mass(2, w2, mc).unwrap();
            let expect = 4.0 * (w2 - mc);
            assert!((m - expect).abs() <= 1e-14 * expect.abs());
        }
    }

    #[test]
    fn equal_vertex_mass_scales_linearly() {
        let base = equal_vertex_mass(5, 1.3, 0.4).unwrap();
        let doubled = equal_vertex_mass(5, 2.6, 0.8).unwrap();
        assert!((doubled - 2.0 * base).abs() < 1e-14 * doubled.abs());
    }

    #[test]
    fn infeasible_and_invalid_parameters_are_rejected() {
        assert!(matches!(
            equal_vertex_mass(4, 2.0, 2.0),
            Err(Error::Infeasible(_))
        ));
        assert!(matches!(
            equal_vertex_mass(4, 1.0, 2.0),
            Err(Error::Infeasible(_))
        ));
        assert!(matches!(
            equal_vertex_mass(4, 1.0, -0.5),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            equal_vertex_mass(1, 1.0, 0.1),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            equal_vertex_mass(4, f64::INFINITY, 0.1),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn closed_form_verification_is_tight() {
        for (n, w2, mc, tol) in [
            (2usize, 1.0, 0.5, 1e-13),
            (3, 1.0, 0.1, 1e-12),
            (12, 5.0, 1.0, 1e-11),
        ] {
            let check = verify_equal_masses(n, w2, mc).unwrap();
            assert!(
                check.residual.sup_norm < tol,
                "n={n}: {:e}",
                check.residual.sup_norm
            );
            assert!(check.omega_gap < 1e-11, "n={n}: gap {:e}", check.omega_gap);
            assert!(check.vertex_mass > 0.0);
        }
    }

    #[test]
    fn verification_requires_a_real_central_body() {
        assert!(matches!(
            verify_equal_masses(3, 1.0, 0.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn spectral_mass_matches_the_closed_form() {
        for n in 4..=32 {
            let spectral = vertex_mass_spectral(n, 2.0, 0.5).unwrap();
            let closed = equal_vertex_mass(n, 2.0, 0.5).unwrap();
            for m in &spectral.masses {
                assert!((m - closed).abs() < 1e-12 * closed, "n={n}");
            }
            assert_eq!(spectral.branch, Branch::SumCondition);
            // all components are the same f64; the deviation only sees the
            // mean's rounding
            assert!(spectral.max_deviation_from_equal < 1e-15 * closed, "n={n}");
            assert!(spectral.residual_sup < 1e-11, "n={n}");
        }
    }

    #[test]
    fn spectral_solver_guards_its_domain() {
        assert!(matches!(
            vertex_mass_spectral(3, 1.0, 0.1),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            vertex_mass_spectral(6, 1.0, 1.0),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn newton_recovers_the_equal_mass_triangle() {
        let solution = solve_vertex_masses(3, 1.0, 0.1, &[0.5, 1.5, 1.0]).unwrap();
        let expect = equal_vertex_mass(3, 1.0, 0.1).unwrap();
        for m in &solution.masses {
            assert!((m - expect).abs() < 1e-10, "got {m}, want {expect}");
        }
        assert!(solution.residual_sup < STATIONARITY_TOLERANCE);
        assert_eq!(solution.branch, Branch::SumCondition);
        assert!(solution.max_deviation_from_equal < 1e-10);
    }

    #[test]
    fn newton_recovers_the_digon_from_a_lopsided_start() {
        let solution = solve_vertex_masses(2, 1.0, 0.5, &[1.0, 3.0]).unwrap();
        for m in &solution.masses {
            assert!((m - 2.0).abs() < 1e-10);
        }
    }

    #[test]
    fn newton_from_many_seeds_agrees_wherever_it_converges() {
        let expect = equal_vertex_mass(7, 4.0, 1.0).unwrap();
        let runs = newton_sweep(7, 4.0, 1.0, 50, 123).unwrap();
        assert_eq!(runs.len(), 50);
        let mut converged = 0;
        for run in &runs {
            match &run.outcome {
                Ok(solution) => {
                    converged += 1;
                    for m in &solution.masses {
                        assert!((m - expect).abs() < 1e-9, "mass {m} vs {expect}");
                    }
                    assert!(solution.max_deviation_from_equal < 1e-9);
                }
                // Random starts can slide to a boundary stationary point
                // (some mass driven to zero) or stall the line search; both
                // are reported as failures, never blessed as solutions.
                Err(Error::Infeasible(_)) | Err(Error::NoConvergence { .. }) => {}
                Err(other) => panic!("unexpected failure kind: {other}"),
            }
        }
        assert!(converged >= 25, "only {converged}/50 runs converged");
    }

    #[test]
    fn newton_validates_its_inputs() {
        assert!(matches!(
            solve_vertex_masses(3, 1.0, 0.1, &[1.0, 1.0]),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            solve_vertex_masses(3, 1.0, 0.1, &[1.0, -1.0, 1.0]),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            solve_vertex_masses(4, 0.5, 1.0, &[1.0; 4]),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn boundary_starts_are_reported_as_infeasible_not_solutions() {
        // With two opposite square vertices nearly massless, the remaining
        // pair plus center is the digon configuration: a stationary point of
        // the full system on the boundary of the positive cone. The solver
        // must refuse to bless it.
        let digon_mass = equal_vertex_mass(2, 1.0, 0.1).unwrap();
        let result = solve_vertex_masses(4, 1.0, 0.1, &[digon_mass, 1e-9, digon_mass, 1e-9]);
        assert!(
            matches!(result, Err(Error::Infeasible(_))),
            "expected boundary rejection, got {result:?}"
        );
    }

    #[test]
    fn uniform_collapse_to_zero_is_rejected() {
        // The all-zero mass vector solves the mass-multiplied system exactly
        // (every equation carries a factor m_k), all components positive and
        // of comparable size on the way down. Small starts flow there; the
        // per-unit-mass balance check must refuse it.
        let result = solve_vertex_masses(2, 2.0, 0.5, &[0.2608238923195333, 0.18111490233484628]);
        match result {
            Err(Error::Infeasible(message)) => {
                assert!(
                    message.contains("per unit mass"),
                    "unexpected message: {message}"
                )
            }
            other => panic!("expected collapse rejection, got {other:?}"),
        }
    }

    #[test]
    fn sweep_is_deterministic_in_the_seed() {
        let a = newton_sweep(4, 2.0, 0.3, 6, 99).unwrap();
        let b = newton_sweep(4, 2.0, 0.3, 6, 99).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.initial_masses, y.initial_masses);
            match (&x.outcome, &y.outcome) {
                (Ok(s), Ok(t)) => assert_eq!(s.masses, t.masses),
                (Err(_), Err(_)) => {}
                _ => panic!("outcomes diverged between identical sweeps"),
            }
        }
        let c = newton_sweep(4, 2.0, 0.3, 6, 100).unwrap();
        assert_ne!(a[0].initial_masses, c[0].initial_masses);
    }

    #[test]
    fn seed_masses_stay_in_their_band() {
        let seeds = seed_masses(5, 20, 7).unwrap();
        assert_eq!(seeds.len(), 20);
        for v in &seeds {
            assert_eq!(v.len(), 5);
            for m in v {
                assert!((0.1..=10.0).contains(m));
            }
        }
        assert!(matches!(seed_masses(5, 0, 7), Err(Error::Domain(_))));
    }

    #[test]
    // index-heavy on purpose: the analytic Jacobian is written in the same
    // k/l subscripts as the derivation it checks
    #[allow(clippy::needless_range_loop)]
    fn finite_difference_jacobian_matches_the_analytic_one() {
        // d c/d m_l = (x_l - c)/M; away from l = k the residual of body k
        // depends on m_l through the pull term and the mass center only.
        let n = 3;
        let system = PolygonSystem::new(n, 1.3, 0.2).unwrap();
        let masses = [0.8, 1.1, 0.95];
        let base = system.residual_flat(&masses);
        let len = system.positions.len();
        let mut full: Vec<f64> = masses.to_vec();
        full.push(system.center_mass);
        let total: f64 = full.iter().sum();
        let mut weighted = Point::new(0.0, 0.0);
        for (x, m) in system.positions.iter().zip(&full) {
            weighted += x * *m;
        }
        let center = weighted / total;

        // analytic d F_k / d m_l
        let mut analytic = vec![vec![Point::new(0.0, 0.0); n]; len];
        for k in 0..len {
            let mut pull = Point::new(0.0, 0.0);
            for j in 0..len {
                if j != k {
                    pull += (system.positions[j] - system.positions[k])
                        * (full[j] * system.inv_cube[k][j]);
                }
            }
            let stationarity = pull + (system.positions[k] - center) * 1.3;
            for l in 0..n {
                let dcenter = (system.positions[l] - center) / total;
                let mut d = (Point::new(0.0, 0.0) - dcenter) * 1.3 * full[k];
                if l != k {
                    d += (system.positions[l] - system.positions[k])
                        * (full[k] * system.inv_cube[k][l]);
                }
                if l == k {
                    d += stationarity;
                }
                analytic[k][l] = d;
            }
        }

        for l in 0..n {
            let h = JACOBIAN_STEP * masses[l].abs().max(1.0);
            let mut bumped = masses.to_vec();
            bumped[l] += h;
            let shifted = system.residual_flat(&bumped);
            for k in 0..len {
                let fd = Point::new(
                    (shifted[2 * k] - base[2 * k]) / h,
                    (shifted[2 * k + 1] - base[2 * k + 1]) / h,
                );
                assert!(
                    (fd - analytic[k][l]).norm() < 1e-5,
                    "k={k} l={l}: fd={fd}, analytic={}",
                    analytic[k][l]
                );
            }
        }
    }

    #[test]
    fn solved_masses_recenter_the_configuration_at_the_origin() {
        let solution = solve_vertex_masses(5, 2.0, 0.4, &[1.0, 2.0, 0.5, 1.5, 3.0]).unwrap();
        let config =
            Configuration::polygon_plus_center(5, &solution.masses, solution.center_mass).unwrap();
        assert!(config.mass_center().norm() < 1e-13);
        let vertices = regular_polygon_vertices(5).unwrap();
        let mut weighted = Point::new(0.0, 0.0);
        for (q, m) in vertices.iter().zip(&solution.masses) {
            weighted += q * *m;
        }
        assert!(weighted.norm() < 1e-13);
    }
}
