//! Quadrature: adaptive Gauss–Kronrod, Filon-type oscillatory panels, certified
//! oscillatory tails and Riemann–Stieltjes integration.

mod adapt;
pub mod filon;
pub mod gk;
pub mod stieltjes;
pub mod tail;

pub use filon::{integrate_filon, oscillatory_panel_moment};
pub use gk::integrate_smooth;
pub use stieltjes::{integrate_stieltjes, BVDecomposition};
pub use tail::{integrate_oscillatory_tail, integrate_tail, DecayBound, TailSpec, Truncation};

use core::ops::{Add, Mul, Neg, Sub};

use crate::math::{C64, ZERO};

/// Tolerance and work limits for one integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    /// Absolute error target.
    pub tol: f64,
    /// Maximum number of integrand evaluations.
    pub budget: u64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig { tol: 1e-8, budget: 2_000_000 }
    }
}

impl QuadConfig {
    pub fn with_tol(tol: f64) -> Self {
        QuadConfig { tol, ..Default::default() }
    }

    pub fn tol(self, tol: f64) -> Self {
        QuadConfig { tol, ..self }
    }
}

/// A quadrature value with its absolute error estimate and work counters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: C64,
    pub err_est: f64,
    pub panels: u64,
    pub evals: u64,
}

impl QuadResult {
    pub fn new(value: C64, err_est: f64) -> Self {
        QuadResult { value, err_est, panels: 1, evals: 1 }
    }

    pub fn zero() -> Self {
        QuadResult::new(ZERO, 0.0)
    }

    pub fn exact(value: C64) -> Self {
        QuadResult::new(value, 0.0)
    }

    pub fn scale(self, k: C64) -> Self {
        QuadResult { value: self.value * k, err_est: self.err_est * crate::math::cabs(k), ..self }
    }

    pub fn with_extra_err(self, e: f64) -> Self {
        QuadResult { err_est: self.err_est + e, ..self }
    }
}

impl Add for QuadResult {
    type Output = QuadResult;
    fn add(self, o: QuadResult) -> QuadResult {
        QuadResult {
            value: self.value + o.value,
            err_est: self.err_est + o.err_est,
            panels: self.panels + o.panels,
            evals: self.evals + o.evals,
        }
    }
}

impl Sub for QuadResult {
    type Output = QuadResult;
    fn sub(self, o: QuadResult) -> QuadResult {
        self + (-o)
    }
}

impl Neg for QuadResult {
    type Output = QuadResult;
    fn neg(self) -> QuadResult {
        QuadResult { value: -self.value, ..self }
    }
}

impl Mul<f64> for QuadResult {
    type Output = QuadResult;
    fn mul(self, k: f64) -> QuadResult {
        QuadResult { value: self.value * k, err_est: self.err_est * crate::math::abs(k), ..self }
    }
}

/// Sorted, deduplicated cut points strictly inside `(a, b)`.
pub(crate) fn interior_cuts(a: f64, b: f64, breaks: &[f64]) -> alloc::vec::Vec<f64> {
    let mut v: alloc::vec::Vec<f64> = breaks.iter().copied().filter(|&x| x > a && x < b).collect();
    v.sort_by(|x, y| x.partial_cmp(y).unwrap());
    v.dedup();
    v
}
