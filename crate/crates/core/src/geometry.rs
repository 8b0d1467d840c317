//! Planar point-mass configurations.
//!
//! Positions live in the complex plane (`Point` = `Complex64`): rotating a
//! configuration is a complex multiplication and the 90° rotation used for
//! circular velocities is multiplication by `i`. Units are G = 1 throughout
//! the crate, so `omega_squared` and masses are directly comparable.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::kahan::{KahanComplexSum, KahanSum};

/// A point in the plane, represented as a complex number.
pub type Point = Complex64;

/// Two bodies closer than this are treated as coincident (invalid geometry).
pub const COINCIDENCE_DISTANCE: f64 = 1e-12;

/// exp(2πi·m/n), with the exponent reduced mod n first so the argument passed
/// to sin/cos stays small. `unity_root(n, 0)` is exactly (1, 0) and, for even
/// n, `unity_root(n, n/2)` is exactly (−1, 0); roots in the lower half-plane
/// are bitwise conjugates of their mirror images, so conjugate-pair sums over
/// the roots cancel exactly.
pub fn unity_root(n: usize, m: i64) -> Point {
    debug_assert!(n >= 1);
    let reduced = m.rem_euclid(n as i64) as usize;
    if reduced == 0 {
        return Point::new(1.0, 0.0);
    }
    if 2 * reduced == n {
        return Point::new(-1.0, 0.0);
    }
    if 2 * reduced > n {
        return unity_root(n, (n - reduced) as i64).conj();
    }
    let angle = 2.0 * PI * reduced as f64 / n as f64;
    let (sin, cos) = angle.sin_cos();
    Point::new(cos, sin)
}

/// Vertices of the regular unit n-gon: q_j = exp(2πij/n) for j = 1..n.
///
/// The angle of each vertex is computed directly as 2πj/n (never by repeated
/// rotation), so there is no error accumulation across vertices and the last
/// vertex q_n is exactly (1, 0).
pub fn regular_polygon_vertices(n: usize) -> Result<Vec<Point>> {
    if n < 2 {
        return Err(Error::domain(format!(
            "polygon needs at least 2 vertices, got {n}"
        )));
    }
    Ok((1..=n).map(|j| unity_root(n, j as i64)).collect())
}

/// Aggregate quantities of a configuration: Newtonian potential, moment of
/// inertia about the mass center, and the mass center itself.
#[derive(Debug, Clone, Copy)]
pub struct Metrics {
    /// U = Σ_{k<j} m_k m_j / |x_k − x_j|
    pub potential: f64,
    /// I = Σ_j m_j |x_j − c|², with c the mass center.
    pub inertia: f64,
    pub mass_center: Point,
}

/// A set of point masses at pairwise-distinct planar positions.
///
/// Invariants, enforced at construction: positions and masses have equal
/// length ≥ 1, every mass is finite and strictly positive, every position is
/// finite, and all pairwise distances exceed [`COINCIDENCE_DISTANCE`].
#[derive(Debug, Clone)]
pub struct Configuration {
    positions: Vec<Point>,
    masses: Vec<f64>,
}

impl Configuration {
    pub fn new(positions: Vec<Point>, masses: Vec<f64>) -> Result<Self> {
        if positions.len() != masses.len() {
            return Err(Error::domain(format!(
                "{} positions but {} masses",
                positions.len(),
                masses.len()
            )));
        }
        if positions.is_empty() {
            return Err(Error::domain("a configuration needs at least one body"));
        }
        for (i, m) in masses.iter().enumerate() {
            if !m.is_finite() || *m <= 0.0 {
                return Err(Error::domain(format!(
                    "mass of body {} must be finite and positive, got {m}",
                    i + 1
                )));
            }
        }
        for (i, p) in positions.iter().enumerate() {
            if !p.re.is_finite() || !p.im.is_finite() {
                return Err(Error::domain(format!(
                    "position of body {} is not finite",
                    i + 1
                )));
            }
        }
        for i in 0..positions.len() {
            for j in (i + 1)..positions.len() {
                let distance = (positions[i] - positions[j]).norm();
                if distance < COINCIDENCE_DISTANCE {
                    return Err(Error::Coincident {
                        body_a: i + 1,
                        body_b: j + 1,
                        distance,
                    });
                }
            }
        }
        Ok(Configuration { positions, masses })
    }

    /// Regular unit n-gon with the given per-vertex masses plus a central body
    /// at the origin. Bodies are ordered vertex 1..n, then the center.
    pub fn polygon_plus_center(n: usize, polygon_masses: &[f64], center_mass: f64) -> Result<Self> {
        if polygon_masses.len() != n {
            return Err(Error::domain(format!(
                "expected {n} polygon masses, got {}",
                polygon_masses.len()
            )));
        }
        let mut positions = regular_polygon_vertices(n)?;
        positions.push(Point::new(0.0, 0.0));
        let mut masses = polygon_masses.to_vec();
        masses.push(center_mass);
        Configuration::new(positions, masses)
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        false // invariant: at least one body
    }

    pub fn positions(&self) -> &[Point] {
        &self.positions
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn total_mass(&self) -> f64 {
        self.masses.iter().sum()
    }

    /// Mass center c = Σ m_j x_j / Σ m_j.
    pub fn mass_center(&self) -> Point {
        let mut weighted = KahanComplexSum::default();
        for (x, m) in self.positions.iter().zip(&self.masses) {
            weighted.add(x * m);
        }
        weighted.value() / self.total_mass()
    }

    /// Potential, moment of inertia about the mass center, and the mass
    /// center. For a single body both sums are empty/zero.
    pub fn metrics(&self) -> Result<Metrics> {
        let mass_center = self.mass_center();
        let mut potential = KahanSum::default();
        for i in 0..self.len() {
            for j in (i + 1)..self.len() {
                let distance = (self.positions[i] - self.positions[j]).norm();
                if distance < COINCIDENCE_DISTANCE {
                    return Err(Error::Coincident {
                        body_a: i + 1,
                        body_b: j + 1,
                        distance,
                    });
                }
                potential.add(self.masses[i] * self.masses[j] / distance);
            }
        }
        let mut inertia = KahanSum::default();
        for (x, m) in self.positions.iter().zip(&self.masses) {
            inertia.add(m * (x - mass_center).norm_sqr());
        }
        Ok(Metrics {
            potential: potential.value(),
            inertia: inertia.value(),
            mass_center,
        })
    }
}
