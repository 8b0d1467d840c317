//! Numerical toolkit for central configurations of the planar (N+1)-body
//! problem: a regular N-gon of point masses plus a body at the center,
//! rotating rigidly as a relative equilibrium.
//!
//! Everything works in units with G = 1: masses, distances, and the squared
//! angular velocity ω² are directly comparable, and for the unit-circumradius
//! polygon the feasibility condition reads ω² > center mass.
//!
//! Modules:
//!
//! * [`geometry`] — planar configurations, polygon vertices, mass center,
//!   potential/inertia metrics.
//! * [`circulant`] — circulant matrices, explicit Fourier eigenbasis, and the
//!   polygon interaction matrix with its spectrum classification.
//! * [`identities`] — the cosecant-sum/vertex-sum/pair-distance identities
//!   that underpin the closed-form mass.
//! * [`central_config`] — stationarity residual, the closed-form equal-mass
//!   solution, spectral and Gauss–Newton solvers, and seeded solver sweeps.
//! * [`euler`] — collinear three-body balance and its root solver.
//! * [`dynamics`] — RK4/leapfrog integration certifying relative equilibria
//!   end to end.
//!
//! Batch APIs (`identities::sweep`, `central_config::newton_sweep`) run on
//! rayon when the default `parallel` feature is enabled and fall back to
//! sequential loops without it; results are identical either way.

pub mod central_config;
pub mod circulant;
pub mod dynamics;
pub mod error;
pub mod euler;
pub mod geometry;
pub mod identities;

mod kahan;
mod par;

pub use error::{Error, Result};
pub use geometry::{Configuration, Metrics, Point};
