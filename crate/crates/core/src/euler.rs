//! Collinear three-body central configurations.
//!
//! Bodies sit at 0, 1, and Q with 0 < Q < 1: masses `left` at 0, `right` at
//! 1, `interior` at Q. Central configurations correspond to zeros of a
//! rational balance function r(Q); clearing its denominators yields the
//! classical quintic in Q, but the rational form is better conditioned and is
//! what this module evaluates. r(Q) → +∞ as Q → 0⁺ and → −∞ as Q → 1⁻, and
//! its zero in (0, 1) is unique for positive masses, so a sign-change
//! bracket always exists and bisection plus a Newton polish lands on it.

use crate::error::{Error, Result};

/// Bisection stops when the bracket is this narrow; Newton polishing takes
/// over from there.
const BISECTION_WIDTH: f64 = 1e-8;
/// The polished root must drive the balance function below this.
pub const ROOT_TOLERANCE: f64 = 1e-13;
/// Evaluation domain is clipped to [EDGE, 1 − EDGE] to avoid the poles.
const EDGE: f64 = 1e-9;
const NEWTON_STEPS: usize = 60;

/// A collinear three-body problem: masses at 0, 1, and an interior point.
#[derive(Debug, Clone, Copy)]
pub struct CollinearProblem {
    left: f64,
    right: f64,
    interior: f64,
}

impl CollinearProblem {
    /// All three masses must be finite and strictly positive.
    pub fn new(left: f64, right: f64, interior: f64) -> Result<Self> {
        for (name, m) in [("left", left), ("right", right), ("interior", interior)] {
            if !m.is_finite() || m <= 0.0 {
                return Err(Error::domain(format!(
                    "{name} mass must be finite and positive, got {m}"
                )));
            }
        }
        Ok(CollinearProblem {
            left,
            right,
            interior,
        })
    }

    /// The balance function
    ///
    ///   r(Q) = (m_i Q⁻² + m_r)/(m_i Q + m_r) − (m_l + m_i (1−Q)⁻²)/(m_l + m_i (1−Q))
    ///
    /// whose zero in (0, 1) is the central-configuration position of the
    /// interior body. Swapping the outer masses mirrors it:
    /// r(Q; l, r) = −r(1−Q; r, l).
    pub fn balance(&self, q: f64) -> Result<f64> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::domain(format!(
                "interior position must lie in (0, 1), got {q}"
            )));
        }
        let p = 1.0 - q;
        let first = (self.interior / (q * q) + self.right) / (self.interior * q + self.right);
        let second = (self.left + self.interior / (p * p)) / (self.left + self.interior * p);
        Ok(first - second)
    }

    /// The balance value at Q = 1/2; zero exactly when the outer masses are
    /// equal, so this is a cheap symmetry diagnostic.
    pub fn midpoint_balance(&self) -> f64 {
        self.balance(0.5).expect("0.5 is interior")
    }

    /// Finds the unique zero of the balance function in (0, 1): bisection on
    /// [EDGE, 1 − EDGE] down to width 1e-8, then Newton with a central-
    /// difference derivative until |r(Q)| < [`ROOT_TOLERANCE`].
    pub fn solve(&self) -> Result<f64> {
        let mut lo = EDGE;
        let mut hi = 1.0 - EDGE;
        let mut f_lo = self.balance(lo)?;
        let f_hi = self.balance(hi)?;
        if f_lo.signum() == f_hi.signum() {
            return Err(Error::numerical(format!(
                "no sign change across the bracket: r({lo:e}) = {f_lo:e}, r({hi}) = {f_hi:e}"
            )));
        }
        while hi - lo > BISECTION_WIDTH {
            let mid = 0.5 * (lo + hi);
            let f_mid = self.balance(mid)?;
            if f_mid == 0.0 {
                return Ok(mid);
            }
            if f_mid.signum() == f_lo.signum() {
                lo = mid;
                f_lo = f_mid;
            } else {
                hi = mid;
            }
        }
        let mut q = 0.5 * (lo + hi);
        for _ in 0..NEWTON_STEPS {
            let r = self.balance(q)?;
            if r.abs() < ROOT_TOLERANCE {
                return Ok(q);
            }
            let h = 1e-7f64.min(q * 0.5).min((1.0 - q) * 0.5);
            let derivative = (self.balance(q + h)? - self.balance(q - h)?) / (2.0 * h);
            if !derivative.is_finite() || derivative == 0.0 {
                break;
            }
            q = (q - r / derivative).clamp(EDGE, 1.0 - EDGE);
        }
        let residual = self.balance(q)?;
        if residual.abs() < ROOT_TOLERANCE {
            Ok(q)
        } else {
            Err(Error::numerical(format!(
                "root polishing stalled at Q = {q} with |r| = {:e}",
                residual.abs()
            )))
        }
    }

    /// Number of sign changes of the balance function over a uniform grid of
    /// `points` samples on (1e-6, 1 − 1e-6). A diagnostic for root
    /// uniqueness: for positive masses this is 1 on any reasonably fine grid.
    pub fn sign_changes_on_grid(&self, points: usize) -> Result<usize> {
        if points < 2 {
            return Err(Error::domain(
                "sign counting needs at least two grid points",
            ));
        }
        let (lo, hi) = (1e-6, 1.0 - 1e-6);
        let step = (hi - lo) / (points - 1) as f64;
        let mut changes = 0;
        let mut last_sign = 0.0;
        for i in 0..points {
            let value = self.balance(lo + step * i as f64)?;
            let sign = value.signum();
            if value == 0.0 {
                continue;
            }
            if last_sign != 0.0 && sign != last_sign {
                changes += 1;
            }
            last_sign = sign;
        }
        Ok(changes)
    }
}
