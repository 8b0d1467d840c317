//! Trigonometric identities of the regular polygon.
//!
//! Three quantities associated with the unit n-gon q_j = exp(2πij/n) agree:
//!
//! * the cosecant sum S(n) = (1/4) Σ_{j=1}^{n-1} csc(jπ/n),
//! * the vertex sum Σ_{j=1}^{n-1} (1 − q_j)/|1 − q_j|³ (a priori complex;
//!   its imaginary part vanishes by symmetry),
//! * the normalized pair-distance sum (1/n) Σ_{1≤j<k≤n} 1/|q_j − q_k|.
//!
//! S(n) is the proportionality constant between the net attraction felt by a
//! polygon vertex and its position vector, which is why these identities
//! certify the mass formula in `central_config`. All three are evaluated
//! independently here and compared pairwise.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::regular_polygon_vertices;
use crate::kahan::{KahanComplexSum, KahanSum};
use crate::par;

/// One checked identity: a complex left-hand side against a real right-hand
/// side. `abs_difference` is |lhs − rhs| in the complex plane, so it also
/// certifies that the imaginary part of the left-hand side vanishes.
#[derive(Debug, Clone, Copy)]
pub struct IdentityReport {
    pub n: usize,
    pub lhs: Complex64,
    pub rhs: f64,
    pub abs_difference: f64,
}

impl IdentityReport {
    fn new(n: usize, lhs: Complex64, rhs: f64) -> Self {
        IdentityReport {
            n,
            lhs,
            rhs,
            abs_difference: (lhs - Complex64::new(rhs, 0.0)).norm(),
        }
    }
}

/// The cosecant sum S(n) = (1/4) Σ_{j=1}^{n-1} csc(jπ/n), n ≥ 2.
///
/// S(2) = 1/4 exactly; S(n) grows like (n/2π)·ln n and is strictly increasing
/// in n.
pub fn cosecant_sum(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain(format!("cosecant sum needs n >= 2, got {n}")));
    }
    let mut sum = KahanSum::default();
    for j in 1..n {
        sum.add(1.0 / (j as f64 * PI / n as f64).sin());
    }
    Ok(sum.value() / 4.0)
}

/// The vertex sum Σ_{j=1}^{n-1} (1 − q_j)/|1 − q_j|³, kept complex.
pub fn vertex_sum(n: usize) -> Result<Complex64> {
    let vertices = regular_polygon_vertices(n)?;
    let one = Complex64::new(1.0, 0.0);
    let mut sum = KahanComplexSum::default();
    for q in vertices.iter().take(n - 1) {
        let d = one - q;
        sum.add(d / d.norm().powi(3));
    }
    Ok(sum.value())
}

/// Vertex sum against cosecant sum.
pub fn vertex_sum_identity(n: usize) -> Result<IdentityReport> {
    Ok(IdentityReport::new(n, vertex_sum(n)?, cosecant_sum(n)?))
}

/// Normalized pair-distance sum (1/n) Σ_{j<k} 1/|q_j − q_k| against the real
/// part of the vertex sum.
pub fn pair_distance_identity(n: usize) -> Result<IdentityReport> {
    let vertices = regular_polygon_vertices(n)?;
    let mut sum = KahanSum::default();
    for j in 0..n {
        for k in (j + 1)..n {
            sum.add(1.0 / (vertices[j] - vertices[k]).norm());
        }
    }
    let lhs = Complex64::new(sum.value() / n as f64, 0.0);
    Ok(IdentityReport::new(n, lhs, vertex_sum(n)?.re))
}

/// Both identities for one polygon order.
#[derive(Debug, Clone)]
pub struct IdentityRow {
    pub n: usize,
    pub cosecant_sum: f64,
    pub vertex: IdentityReport,
    pub pair_distance: IdentityReport,
}

/// Evaluates both identities for every n in `lo..=hi` (parallel when the
/// `parallel` feature is on; row order is by n either way).
pub fn sweep(lo: usize, hi: usize) -> Result<Vec<IdentityRow>> {
    if lo < 2 {
        return Err(Error::domain(format!(
            "identity sweep starts at n = 2, got {lo}"
        )));
    }
    if hi < lo {
        return Err(Error::domain(format!("empty sweep range {lo}..={hi}")));
    }
    let orders: Vec<usize> = (lo..=hi).collect();
    par::map_items(orders, |n| {
        Ok(IdentityRow {
            n,
            cosecant_sum: cosecant_sum(n)?,
            vertex: vertex_sum_identity(n)?,
            pair_distance: pair_distance_identity(n)?,
        })
    })
    .into_iter()
    .collect()
}
