//! Two-sided oscillatory tails `∫_{|t|>R} A(t) e^{-iσt} dt` with a certified
//! truncation remainder.

use alloc::vec::Vec;

use super::filon::integrate_filon_panels;
use super::{QuadConfig, QuadResult};
use crate::error::{Error, Result};
use crate::math::{abs, ceil, floor, powf, C64};

/// Decay certificate `|A(t)| ≤ c·|t|^{-β}` for `|t| ≥ R`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayBound {
    pub c: f64,
    pub beta: f64,
}

impl DecayBound {
    pub fn new(c: f64, beta: f64) -> Self {
        DecayBound { c, beta }
    }

    /// `∫_{|t|>T} c|t|^{-β} dt` (both sides).
    pub fn remainder(&self, t: f64) -> f64 {
        if self.c == 0.0 {
            return 0.0;
        }
        2.0 * self.c / ((self.beta - 1.0) * powf(t, self.beta - 1.0))
    }

    /// Smallest cutoff whose two-sided remainder is at most `target`.
    pub fn cutoff_for(&self, target: f64) -> f64 {
        powf(2.0 * self.c / ((self.beta - 1.0) * target), 1.0 / (self.beta - 1.0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Truncation {
    /// Choose the cutoff so the remainder is half the tolerance.
    Auto,
    /// Integrate to `cutoff` and charge the bound's remainder there.
    Fixed(f64),
}

/// Description of a tail integral. `amp` is evaluated only for `|t| > radius`.
pub struct TailSpec<'a> {
    pub amp: &'a dyn Fn(f64) -> C64,
    pub sigma: f64,
    pub radius: f64,
    pub bound: DecayBound,
    /// Points where `amp` is not smooth.
    pub breakpoints: &'a [f64],
    /// Spacings `L` such that `amp` may jump at every `kL`.
    pub lattices: &'a [f64],
    /// `amp` vanishes for `|t| > support`, if given.
    pub support: Option<f64>,
    pub truncation: Truncation,
}

impl<'a> TailSpec<'a> {
    pub fn new(amp: &'a dyn Fn(f64) -> C64, sigma: f64, bound: DecayBound) -> Self {
        TailSpec {
            amp,
            sigma,
            radius: 1.0,
            bound,
            breakpoints: &[],
            lattices: &[],
            support: None,
            truncation: Truncation::Auto,
        }
    }
}

/// Unit panels out to 10, then growth by 1.5 up to `cutoff`, cut at breaks.
fn layout(radius: f64, cutoff: f64, breaks: &[f64], lattices: &[f64]) -> Vec<(f64, f64)> {
    let mut pts: Vec<f64> = Vec::new();
    let mut t = radius;
    pts.push(t);
    while t < cutoff {
        let next = if t < 10.0 { floor(t) + 1.0 } else { t * 1.5 };
        t = next.min(cutoff);
        pts.push(t);
    }
    for &b in breaks {
        if b > radius && b < cutoff {
            pts.push(b);
        }
    }
    for &l in lattices {
        let l = abs(l);
        if !(l > 0.0) {
            continue;
        }
        let mut k = ceil(radius / l);
        while k * l < cutoff {
            if k * l > radius {
                pts.push(k * l);
            }
            k += 1.0;
        }
    }
    pts.sort_by(|a, b| a.total_cmp(b));
    pts.dedup();
    pts.windows(2).filter(|w| w[1] > w[0]).map(|w| (w[0], w[1])).collect()
}

/// Integrates both tails of `spec`; the truncation remainder is included in
/// `err_est`.
pub fn integrate_tail(spec: &TailSpec<'_>, cfg: &QuadConfig) -> Result<QuadResult> {
    let b = spec.bound;
    if !(b.beta > 1.0) || !(b.c >= 0.0) || !b.c.is_finite() {
        return Err(Error::param("tail integrals need a decay bound with β > 1"));
    }
    if !(spec.radius > 0.0) {
        return Err(Error::param("tail radius must be positive"));
    }
    let (cutoff, remainder, tol) = match (spec.support, spec.truncation) {
        (Some(s), _) => (s.max(spec.radius), 0.0, cfg.tol),
        (None, Truncation::Fixed(t)) => (t.max(spec.radius), b.remainder(t.max(spec.radius)), cfg.tol),
        (None, Truncation::Auto) => {
            if b.c == 0.0 {
                return Ok(QuadResult::zero());
            }
            let t = b.cutoff_for(cfg.tol / 2.0).max(spec.radius);
            (t, b.remainder(t), cfg.tol / 2.0)
        }
    };
    if cutoff <= spec.radius {
        return Ok(QuadResult { value: C64::new(0.0, 0.0), err_est: remainder, panels: 1, evals: 1 });
    }
    let mut breaks_pos: Vec<f64> = Vec::new();
    let mut breaks_neg: Vec<f64> = Vec::new();
    for &x in spec.breakpoints {
        if x > 0.0 {
            breaks_pos.push(x);
        } else if x < 0.0 {
            breaks_neg.push(-x);
        }
    }
    let pos = layout(spec.radius, cutoff, &breaks_pos, spec.lattices);
    let mut panels: Vec<(f64, f64)> = layout(spec.radius, cutoff, &breaks_neg, spec.lattices)
        .into_iter()
        .map(|(x, y)| (-y, -x))
        .collect();
    panels.reverse();
    panels.extend(pos);
    let sub = QuadConfig { tol, ..*cfg };
    let r = integrate_filon_panels(spec.amp, spec.sigma, &panels, &sub)?;
    Ok(r.with_extra_err(remainder))
}

/// `∫_{|t|>1} w(t) e^{-ist} dt` given `|w(t)| ≤ C|t|^{-β}`.
pub fn integrate_oscillatory_tail<W>(w: W, s: f64, tol: f64, decay: Option<DecayBound>) -> Result<QuadResult>
where
    W: Fn(f64) -> C64,
{
    let bound = decay.ok_or_else(|| Error::param("a decay bound is required for tail integrals"))?;
    let spec = TailSpec::new(&w, s, bound);
    integrate_tail(&spec, &QuadConfig::with_tol(tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::{cabs, cos, real, sin};
    use crate::quad::integrate_smooth;

    #[test]
    fn inverse_square_at_zero_frequency() {
        let r = integrate_oscillatory_tail(|t| real(1.0 / (t * t)), 0.0, 1e-8, Some(DecayBound::new(1.0, 2.0))).unwrap();
        assert!((r.value.re - 2.0).abs() <= r.err_est);
        assert!(r.err_est <= 1e-8);
    }

    #[test]
    fn cosine_tail_matches_brute_force() {
        // 2∫_1^∞ cos t / t² dt; GK on [1, 1e6] oracle, the rest is O(1e-12).
        let r = integrate_oscillatory_tail(|t| real(1.0 / (t * t)), 1.0, 1e-8, Some(DecayBound::new(1.0, 2.0))).unwrap();
        let cfg = QuadConfig { tol: 1e-10, budget: 50_000_000 };
        let mut brk = Vec::new();
        let mut x = 1.0;
        while x < 1e6 {
            brk.push(x);
            x += 50.0;
        }
        let brute = integrate_smooth(|t| real(2.0 * cos(t) / (t * t)), 1.0, 1e6, &brk, &cfg).unwrap();
        assert!((r.value.re - brute.value.re).abs() < 2e-8, "{} vs {}", r.value.re, brute.value.re);
        assert!(r.value.im.abs() < 1e-8);
    }

    #[test]
    fn odd_amplitude_at_zero_frequency_vanishes() {
        let r = integrate_oscillatory_tail(|t| real(1.0 / (t * t * t)), 0.0, 1e-8, Some(DecayBound::new(1.0, 3.0))).unwrap();
        assert!(cabs(r.value) <= r.err_est + 1e-15);
    }

    #[test]
    fn missing_bound_is_a_parameter_error() {
        assert!(matches!(integrate_oscillatory_tail(|_| real(0.0), 1.0, 1e-8, None), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn doubling_the_cutoff_moves_less_than_the_bound() {
        let amp = |t: f64| real(1.0 / (t * t));
        let bound = DecayBound::new(1.0, 2.0);
        for &s in &[0.0, 1.0, 10.0] {
            for &t in &[50.0, 1e3] {
                let mut a = TailSpec::new(&amp, s, bound);
                a.truncation = Truncation::Fixed(t);
                let mut b = TailSpec::new(&amp, s, bound);
                b.truncation = Truncation::Fixed(2.0 * t);
                let cfg = QuadConfig::with_tol(1e-11);
                let ra = integrate_tail(&a, &cfg).unwrap();
                let rb = integrate_tail(&b, &cfg).unwrap();
                assert!(cabs(ra.value - rb.value) <= bound.remainder(t), "s={s} T={t}");
            }
        }
    }

    #[test]
    fn kinked_amplitude_with_lattice_breaks() {
        // |sin(t/50)| has kinks at 50kπ; declare them as a lattice.
        let l = 50.0 * core::f64::consts::PI;
        let amp = |t: f64| real(abs(sin(t / 50.0)) / (t * t));
        let lattice = [l];
        let mut spec = TailSpec::new(&amp, 0.0, DecayBound::new(1.0, 2.0));
        spec.lattices = &lattice;
        let r = integrate_tail(&spec, &QuadConfig::with_tol(1e-6)).unwrap();
        let cfg = QuadConfig { tol: 1e-11, budget: 50_000_000 };
        let mut brk = Vec::new();
        let mut k = 1.0;
        while k * l < 1e6 {
            brk.push(k * l);
            k += 1.0;
        }
        let brute = integrate_smooth(|t| real(2.0 * abs(sin(t / 50.0)) / (t * t)), 1.0, 1e6, &brk, &cfg).unwrap();
        // Beyond 1e6 the amplitude averages 2/π: the rest is ≈ 2·(2/π)/1e6.
        let rest = 4.0 / (core::f64::consts::PI * 1e6);
        assert!((r.value.re - brute.value.re - rest).abs() < 1e-6, "{} vs {}", r.value.re, brute.value.re + rest);
    }
}
