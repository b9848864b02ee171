//! Riemann–Stieltjes integrals `∫ F dh` against a right-continuous function of
//! bounded variation, split into an absolutely continuous density and jumps.

use alloc::sync::Arc;
use alloc::vec::Vec;

use super::filon::integrate_filon;
use super::{integrate_smooth, QuadConfig, QuadResult};
use crate::error::{Error, Result};
use crate::math::{cabs, cis, CFn, RFn, C64, ZERO};

/// The measure `dh` of a right-continuous BV function `h`:
/// `h(x) = h(−∞) + ∫_{−∞}^x density + Σ_{t_j ≤ x} jump_j`.
#[derive(Clone)]
pub struct BVDecomposition {
    pub density: CFn,
    /// Points where the density is not smooth.
    pub density_breaks: Vec<f64>,
    /// `(location, jump)`, locations strictly increasing.
    pub jumps: Vec<(f64, C64)>,
    pub total_variation: f64,
    /// The density and jumps vanish for `|t| > support_radius` (may be infinite).
    pub support_radius: f64,
    /// `R ↦ ∫_{|t|>R} |density|`, required when the support is unbounded.
    pub tail_mass: Option<RFn>,
}

impl core::fmt::Debug for BVDecomposition {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("BVDecomposition")
            .field("density_breaks", &self.density_breaks)
            .field("jumps", &self.jumps)
            .field("total_variation", &self.total_variation)
            .field("support_radius", &self.support_radius)
            .finish_non_exhaustive()
    }
}

impl BVDecomposition {
    pub fn zero() -> Self {
        BVDecomposition {
            density: Arc::new(|_| ZERO),
            density_breaks: Vec::new(),
            jumps: Vec::new(),
            total_variation: 0.0,
            support_radius: 0.0,
            tail_mass: None,
        }
    }

    /// A measure made of jumps only.
    pub fn jumps_only(mut jumps: Vec<(f64, C64)>) -> Self {
        jumps.sort_by(|a, b| a.0.total_cmp(&b.0));
        let tv = jumps.iter().map(|j| cabs(j.1)).sum();
        let r = jumps.iter().map(|j| j.0.abs()).fold(0.0, f64::max);
        BVDecomposition { jumps, total_variation: tv, support_radius: r, ..Self::zero() }
    }

    /// Checks the structural invariants.
    pub fn validate(&self) -> Result<()> {
        if self.jumps.windows(2).any(|w| !(w[0].0 < w[1].0)) {
            return Err(Error::param("jump locations must be strictly increasing"));
        }
        let jump_var: f64 = self.jumps.iter().map(|j| cabs(j.1)).sum();
        if !(self.total_variation >= jump_var * (1.0 - 1e-12)) {
            return Err(Error::param("total variation is smaller than the jump sizes"));
        }
        if !self.support_radius.is_finite() && self.tail_mass.is_none() {
            return Err(Error::param("unbounded density support needs a tail mass bound"));
        }
        Ok(())
    }

    /// `dh₁ ⊕ dh₂`, the measure of `h₁ + h₂`.
    pub fn combine(&self, other: &BVDecomposition) -> BVDecomposition {
        let (d1, d2) = (self.density.clone(), other.density.clone());
        let mut breaks = self.density_breaks.clone();
        breaks.extend_from_slice(&other.density_breaks);
        breaks.sort_by(f64::total_cmp);
        breaks.dedup();
        let mut jumps: Vec<(f64, C64)> = self.jumps.clone();
        for &(x, j) in &other.jumps {
            match jumps.iter_mut().find(|p| p.0 == x) {
                Some(p) => p.1 += j,
                None => jumps.push((x, j)),
            }
        }
        jumps.sort_by(|a, b| a.0.total_cmp(&b.0));
        let tail_mass = match (&self.tail_mass, &other.tail_mass) {
            (None, None) => None,
            (a, b) => {
                let (a, b) = (a.clone(), b.clone());
                let (ra, rb) = (self.support_radius, other.support_radius);
                Some(Arc::new(move |r: f64| {
                    let ta = a.as_ref().map_or(if r >= ra { 0.0 } else { f64::INFINITY }, |f| f(r));
                    let tb = b.as_ref().map_or(if r >= rb { 0.0 } else { f64::INFINITY }, |f| f(r));
                    ta + tb
                }) as RFn)
            }
        };
        BVDecomposition {
            density: Arc::new(move |t| d1(t) + d2(t)),
            density_breaks: breaks,
            jumps,
            total_variation: self.total_variation + other.total_variation,
            support_radius: self.support_radius.max(other.support_radius),
            tail_mass,
        }
    }

    /// The measure of `k·h`.
    pub fn scale(&self, k: C64) -> BVDecomposition {
        let d = self.density.clone();
        let tail = self.tail_mass.clone();
        let ak = cabs(k);
        BVDecomposition {
            density: Arc::new(move |t| d(t) * k),
            density_breaks: self.density_breaks.clone(),
            jumps: self.jumps.iter().map(|&(x, j)| (x, j * k)).collect(),
            total_variation: self.total_variation * ak,
            support_radius: self.support_radius,
            tail_mass: tail.map(|f| Arc::new(move |r: f64| ak * f(r)) as RFn),
        }
    }

    /// Radius beyond which `bound · ∫|density|` is below `target`, with that mass.
    pub fn truncation_radius(&self, bound: f64, target: f64) -> (f64, f64) {
        if self.support_radius.is_finite() {
            return (self.support_radius, 0.0);
        }
        let tail = self.tail_mass.as_ref().expect("validated decomposition");
        let mut r = 1.0;
        for _ in 0..60 {
            let m = tail(r);
            if bound * m <= target {
                return (r, bound * m);
            }
            r *= 2.0;
        }
        (r, bound * tail(r))
    }

    /// Cumulative `h(x) − h(a)` for `a < x`, by quadrature of the density.
    pub fn increment(&self, a: f64, x: f64, cfg: &QuadConfig) -> Result<C64> {
        let d = self.density.clone();
        let r = integrate_smooth(|t| d(t), a, x, &self.density_breaks, cfg)?;
        let jumps: C64 = self.jumps.iter().filter(|j| j.0 > a && j.0 <= x).map(|j| j.1).sum();
        Ok(r.value + jumps)
    }
}

/// `∫ F dh = ∫ F·density + Σ F(t_j)·jump_j`, where `|F| ≤ f_bound`.
pub fn integrate_stieltjes<F>(mut f: F, f_bound: f64, dh: &BVDecomposition, cfg: &QuadConfig) -> Result<QuadResult>
where
    F: FnMut(f64) -> C64,
{
    dh.validate()?;
    let mut atoms = ZERO;
    for &(x, j) in &dh.jumps {
        atoms += f(x) * j;
    }
    let (r, trunc) = dh.truncation_radius(f_bound, cfg.tol / 4.0);
    let mut out = QuadResult::exact(atoms);
    if r > 0.0 {
        let d = dh.density.clone();
        let sub = QuadConfig { tol: cfg.tol - trunc, ..*cfg };
        let body = integrate_smooth(|t| f(t) * d(t), -r, r, &dh.density_breaks, &sub)?;
        out = out + body;
    }
    Ok(out.with_extra_err(trunc))
}

/// `∫ e^{-ist} dh(t)`, with a Filon rule for the density part.
pub fn integrate_stieltjes_exp(s: f64, dh: &BVDecomposition, cfg: &QuadConfig) -> Result<QuadResult> {
    dh.validate()?;
    let atoms: C64 = dh.jumps.iter().map(|&(x, j)| cis(-s * x) * j).sum();
    let (r, trunc) = dh.truncation_radius(1.0, cfg.tol / 4.0);
    let mut out = QuadResult::exact(atoms);
    if r > 0.0 {
        let d = dh.density.clone();
        let sub = QuadConfig { tol: cfg.tol - trunc, ..*cfg };
        out = out + integrate_filon(|t| d(t), s, -r, r, &dh.density_breaks, &sub)?;
    }
    Ok(out.with_extra_err(trunc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::{exp, real};

    fn cfg() -> QuadConfig {
        QuadConfig::default()
    }

    #[test]
    fn single_unit_jump() {
        let dh = BVDecomposition::jumps_only(alloc::vec![(0.0, real(1.0))]);
        let r = integrate_stieltjes(|_| real(1.0), 1.0, &dh, &cfg()).unwrap();
        assert_eq!(r.value, real(1.0));
    }

    #[test]
    fn identity_against_unit_interval_density() {
        let dh = BVDecomposition {
            density: Arc::new(|t| real(if (0.0..1.0).contains(&t) { 1.0 } else { 0.0 })),
            density_breaks: alloc::vec![0.0, 1.0],
            total_variation: 1.0,
            support_radius: 1.0,
            ..BVDecomposition::zero()
        };
        let r = integrate_stieltjes(real, 1.0, &dh, &cfg()).unwrap();
        assert!((r.value.re - 0.5).abs() < 1e-14);
    }

    #[test]
    fn symmetric_jumps_cancel() {
        let dh = BVDecomposition::jumps_only(alloc::vec![(-1.0, real(1.0)), (1.0, real(-1.0))]);
        let r = integrate_stieltjes(|t| real(exp(-t * t)), 1.0, &dh, &cfg()).unwrap();
        assert!(cabs(r.value) < 1e-16);
    }

    #[test]
    fn unordered_jumps_rejected() {
        let mut dh = BVDecomposition::jumps_only(alloc::vec![(0.0, real(1.0)), (1.0, real(1.0))]);
        dh.jumps.reverse();
        assert!(dh.validate().is_err());
    }

    #[test]
    fn gaussian_density_with_tail_mass() {
        // density e^{-t²}, ∫ cos(t) e^{-t²} dt = √π e^{-1/4}
        let sqrt_pi = core::f64::consts::PI.sqrt();
        let dh = BVDecomposition {
            density: Arc::new(|t| real(exp(-t * t))),
            total_variation: sqrt_pi,
            support_radius: f64::INFINITY,
            tail_mass: Some(Arc::new(move |r: f64| sqrt_pi * crate::math::erfc(r))),
            ..BVDecomposition::zero()
        };
        let r = integrate_stieltjes(|t| real(crate::math::cos(t)), 1.0, &dh, &cfg()).unwrap();
        assert!((r.value.re - sqrt_pi * exp(-0.25)).abs() < 1e-9);
        let e = integrate_stieltjes_exp(1.0, &dh, &cfg()).unwrap();
        assert!(cabs(e.value - real(sqrt_pi * exp(-0.25))) < 1e-9);
    }
}
