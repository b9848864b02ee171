//! The primitives `Ψ_f`, `Ω_f`, `Φ_f` and the transform `f̂₁` of `f·χ_{[−1,1]}`.
//!
//! `Ψ_f(s) = ∫_{|t|>1} e^{−ist} f(t) dt/t²`,
//! `Ω_f(s) = ∫_{−1}^{1} v_s(t) f(t) dt` with `v_s(t) = (1 − ist − e^{−ist})/t²`,
//! and `Φ_f = Ω_f − Ψ_f`, so that `f̂ = Φ_f″` in the sense of distributions.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

use spin::RwLock;

use crate::error::{Error, Result};
use crate::fncat::BoundedFunction;
use crate::math::{abs, cabs, cis, ln, omega_kernel, round_sig, C64, ZERO};
use crate::quad::{integrate_filon, integrate_smooth, integrate_tail, DecayBound, QuadConfig, QuadResult, TailSpec};

/// `Ψ_f(s)`.
pub fn psi(f: &BoundedFunction, s: f64, cfg: &QuadConfig) -> Result<QuadResult> {
    if f.vanishes_outside_unit() || f.sup_bound == 0.0 {
        return Ok(QuadResult::zero());
    }
    let n = f.far.len() as f64;
    let sub = QuadConfig { tol: cfg.tol / n, ..*cfg };
    let support = f.support.map(|(lo, hi)| abs(lo).max(abs(hi)));
    let mut total = QuadResult::zero();
    for w in &f.far {
        let a = w.amp.clone();
        let amp = move |t: f64| a(t) / (t * t);
        let mut spec = TailSpec::new(&amp, s - w.freq, DecayBound::new(w.bound.c, w.bound.beta + 2.0));
        spec.breakpoints = &f.breakpoints;
        spec.lattices = &f.lattices;
        spec.support = support;
        total = total + integrate_tail(&spec, &sub)?;
    }
    Ok(total)
}

/// `f̂₁(s) = ∫_{−1}^{1} e^{−ist} f(t) dt`.
pub fn f1_hat(f: &BoundedFunction, s: f64, cfg: &QuadConfig) -> Result<QuadResult> {
    if let Some(near) = &f.near {
        // t = 1/u: Σ_j ∫_{|u|>1} e^{−is/u} B_j(u) e^{iν_j u} du/u²
        let n = near.waves.len().max(1) as f64;
        let sub = QuadConfig { tol: cfg.tol / n, ..*cfg };
        let mut total = QuadResult::zero();
        for w in &near.waves {
            let b = w.amp.clone();
            let amp = move |u: f64| cis(-s / u) * b(u) / (u * u);
            let mut spec = TailSpec::new(&amp, -w.freq, DecayBound::new(w.bound.c, w.bound.beta + 2.0));
            spec.breakpoints = &near.breakpoints;
            total = total + integrate_tail(&spec, &sub)?;
        }
        return Ok(total);
    }
    let e = f.eval.clone();
    integrate_filon(|t| e(t), s, -1.0, 1.0, &f.breaks_in(-1.0, 1.0), cfg)
}

/// `Ω_f(s)`, a double primitive of `f̂₁` with `Ω_f(0) = Ω_f′(0) = 0`.
pub fn omega(f: &BoundedFunction, s: f64, cfg: &QuadConfig) -> Result<QuadResult> {
    if s == 0.0 {
        return Ok(QuadResult::zero());
    }
    if let Some(near) = &f.near {
        // v_s(1/u)/u² = 1 − iσ − e^{−iσ} with σ = s/u, bounded by σ²/2.
        let n = near.waves.len().max(1) as f64;
        let sub = QuadConfig { tol: cfg.tol / n, ..*cfg };
        let mut total = QuadResult::zero();
        for w in &near.waves {
            let b = w.amp.clone();
            let amp = move |u: f64| {
                let sig = s / u;
                let k = if abs(sig) < 0.5 { omega_kernel(sig) * sig * sig } else { C64::new(1.0, -sig) - cis(-sig) };
                k * b(u)
            };
            let bound = DecayBound::new(0.5 * s * s * w.bound.c, w.bound.beta + 2.0);
            let mut spec = TailSpec::new(&amp, -w.freq, bound);
            spec.breakpoints = &near.breakpoints;
            total = total + integrate_tail(&spec, &sub)?;
        }
        return Ok(total);
    }
    let e = f.eval.clone();
    let v = move |t: f64| omega_kernel(s * t) * (s * s) * e(t);
    let cut = 1.0 / abs(s);
    if cut >= 1.0 {
        return integrate_smooth(v, -1.0, 1.0, &f.breaks_in(-1.0, 1.0), cfg);
    }
    // Near 0 use the kernel; beyond 1/|s| split v_s into its parts.
    let third = QuadConfig { tol: cfg.tol / 3.0, ..*cfg };
    let mut out = integrate_smooth(&v, -cut, cut, &f.breaks_in(-cut, cut), &third)?;
    let e1 = f.eval.clone();
    let algebraic = move |t: f64| C64::new(1.0, -s * t) * e1(t) / (t * t);
    let half = QuadConfig { tol: third.tol / 2.0, ..*cfg };
    out = out + integrate_smooth(&algebraic, -1.0, -cut, &f.breaks_in(-1.0, -cut), &half)?;
    out = out + integrate_smooth(&algebraic, cut, 1.0, &f.breaks_in(cut, 1.0), &half)?;
    let e2 = f.eval.clone();
    let over_t2 = move |t: f64| e2(t) / (t * t);
    out = out - integrate_filon(&over_t2, s, -1.0, -cut, &f.breaks_in(-1.0, -cut), &half)?;
    out = out - integrate_filon(&over_t2, s, cut, 1.0, &f.breaks_in(cut, 1.0), &half)?;
    Ok(out)
}

/// `Φ_f(s) = Ω_f(s) − Ψ_f(s)`.
pub fn phi(f: &BoundedFunction, s: f64, cfg: &QuadConfig) -> Result<QuadResult> {
    let half = QuadConfig { tol: cfg.tol / 2.0, ..*cfg };
    Ok(omega(f, s, &half)? - psi(f, s, &half)?)
}

/// `|Ψ_f(s+h) − Ψ_f(s)| / (‖f‖_∞ |h| |log|h||)`, which never exceeds 6.
pub fn holder_ratio(f: &BoundedFunction, s: f64, h: f64) -> Result<f64> {
    if !(h != 0.0 && abs(h) < 1.0 / crate::math::E) {
        return Err(Error::param("holder_ratio needs 0 < |h| < 1/e"));
    }
    if f.sup_bound == 0.0 {
        return Ok(0.0);
    }
    let scale = f.sup_bound * abs(h) * abs(ln(abs(h)));
    let cfg = QuadConfig::with_tol(2.5e-5 * scale);
    let a = psi(f, s + h, &cfg)?;
    let b = psi(f, s, &cfg)?;
    Ok(cabs(a.value - b.value) / scale)
}

/// `|(Ω(s+δ) − 2Ω(s) + Ω(s−δ))/δ² − f̂₁(s)|`.
pub fn omega_second_derivative_check(f: &BoundedFunction, s: f64, delta: f64) -> Result<f64> {
    if !(1e-5..=1e-2).contains(&delta) {
        return Err(Error::param("δ must lie in [1e-5, 1e-2]"));
    }
    let cfg = QuadConfig::with_tol((1e-6 * delta * delta).max(1e-14));
    let p = omega(f, s + delta, &cfg)?.value;
    let c = omega(f, s, &cfg)?.value;
    let m = omega(f, s - delta, &cfg)?.value;
    let d2 = (p - c * 2.0 + m) / (delta * delta);
    let g = f1_hat(f, s, &QuadConfig::with_tol(1e-10))?.value;
    Ok(cabs(d2 - g))
}

/// `|Ω_sgn(s)| / (2 s log s)`, which tends to 1 as `s → ∞`.
pub fn omega_growth_ratio(s: f64) -> Result<f64> {
    if !(s >= 10.0) || !s.is_finite() {
        return Err(Error::param("omega_growth_ratio needs s ≥ 10"));
    }
    let sgn = crate::fncat::catalog("sgn", &crate::fncat::Params::new())?;
    let r = omega(&sgn, s, &QuadConfig::with_tol(1e-9 * s))?;
    Ok(cabs(r.value) / (2.0 * s * ln(s)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Quantity {
    Psi,
    Omega,
    Phi,
    F1Hat,
}

type Key = (Quantity, u64, u64);

/// The transform `f̂` of a bounded function, seen through its primitives.
///
/// Values are memoized by `(quantity, s, tol)` with `s` rounded to 12
/// significant digits; the value stored is the one computed at the rounded `s`.
pub struct DistributionalTransform {
    pub source: BoundedFunction,
    /// `‖f̂‖_A = ‖f‖_∞`.
    pub transform_norm: f64,
    budget: u64,
    cache: RwLock<BTreeMap<Key, QuadResult>>,
}

impl DistributionalTransform {
    pub fn new(source: BoundedFunction) -> Self {
        let transform_norm = source.sup_bound;
        DistributionalTransform { source, transform_norm, budget: QuadConfig::default().budget, cache: RwLock::new(BTreeMap::new()) }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    fn cached(&self, q: Quantity, s: f64, tol: f64) -> Result<QuadResult> {
        let s = round_sig(s, 12);
        let key = (q, s.to_bits(), tol.to_bits());
        if let Some(r) = self.cache.read().get(&key) {
            return Ok(*r);
        }
        let cfg = QuadConfig { tol, budget: self.budget };
        let f = &self.source;
        let r = match q {
            Quantity::Psi => psi(f, s, &cfg)?,
            Quantity::Omega => omega(f, s, &cfg)?,
            Quantity::Phi => {
                let half = tol / 2.0;
                self.cached(Quantity::Omega, s, half)? - self.cached(Quantity::Psi, s, half)?
            }
            Quantity::F1Hat => f1_hat(f, s, &cfg)?,
        };
        // Concurrent writers compute the same value; the first insertion wins.
        Ok(*self.cache.write().entry(key).or_insert(r))
    }

    pub fn psi(&self, s: f64, tol: f64) -> Result<QuadResult> {
        self.cached(Quantity::Psi, s, tol)
    }

    pub fn omega(&self, s: f64, tol: f64) -> Result<QuadResult> {
        self.cached(Quantity::Omega, s, tol)
    }

    pub fn phi(&self, s: f64, tol: f64) -> Result<QuadResult> {
        self.cached(Quantity::Phi, s, tol)
    }

    pub fn f1_hat(&self, s: f64, tol: f64) -> Result<QuadResult> {
        self.cached(Quantity::F1Hat, s, tol)
    }

    pub fn cache_len(&self) -> usize {
        self.cache.read().len()
    }

    /// Evaluates all four quantities on a grid.
    pub fn grid(&self, points: &[f64], tol: f64) -> Result<Vec<GridRow>> {
        points
            .iter()
            .map(|&s| {
                Ok(GridRow {
                    s,
                    psi: self.psi(s, tol)?,
                    omega: self.omega(s, tol)?,
                    phi: self.phi(s, tol)?,
                    f1_hat: self.f1_hat(s, tol)?,
                })
            })
            .collect()
    }
}

impl From<BoundedFunction> for DistributionalTransform {
    fn from(f: BoundedFunction) -> Self {
        DistributionalTransform::new(f)
    }
}

/// One row of [`DistributionalTransform::grid`].
#[derive(Debug, Clone, Copy)]
pub struct GridRow {
    pub s: f64,
    pub psi: QuadResult,
    pub omega: QuadResult,
    pub phi: QuadResult,
    pub f1_hat: QuadResult,
}

impl GridRow {
    pub fn err_est(&self) -> f64 {
        self.psi.err_est + self.omega.err_est + self.phi.err_est + self.f1_hat.err_est
    }
}

/// `F = f·χ_{|t|>1}/t²` as a shared function, for `‖F‖₁` checks.
pub fn tail_weight(f: &BoundedFunction) -> crate::math::CFn {
    let e = f.eval.clone();
    Arc::new(move |t: f64| if abs(t) > 1.0 { e(t) / (t * t) } else { ZERO })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fncat::{catalog, sharpness_witness, Params};
    use crate::math::{cos, real, sin, PI};

    fn cfg() -> QuadConfig {
        QuadConfig::default()
    }

    fn cat(name: &str, p: Params) -> BoundedFunction {
        catalog(name, &p).unwrap()
    }

    /// Si(x) by its power series.
    fn si(x: f64) -> f64 {
        let mut sum = 0.0;
        let mut term = x; // x^{2k+1}/(2k+1)!
        for k in 0..40 {
            let kk = k as f64;
            sum += term / (2.0 * kk + 1.0);
            term *= -x * x / ((2.0 * kk + 2.0) * (2.0 * kk + 3.0));
        }
        sum
    }

    #[test]
    fn psi_of_one_at_zero_is_two() {
        let r = psi(&cat("const", Params::new()), 0.0, &cfg()).unwrap();
        assert!(cabs(r.value - real(2.0)) <= r.err_est.max(1e-12));
        assert!(r.err_est <= 1e-8);
    }

    #[test]
    fn psi_of_wave_matches_sine_integral_form() {
        // 2d ∫_d^∞ cos u/u² du = 2d (cos d/d − π/2 + Si(d)), d = |s − x|
        let x = 0.4;
        let s = x + PI / 2.0;
        let f = cat("expwave", Params::new().with("x", x));
        let r = psi(&f, s, &cfg()).unwrap();
        let d = PI / 2.0;
        let oracle = 2.0 * d * (cos(d) / d - PI / 2.0 + si(d));
        assert!(cabs(r.value - real(oracle)) < 1e-8, "{:?} vs {oracle}", r.value);
    }

    #[test]
    fn psi_vanishes_for_inner_indicator() {
        let r = psi(&cat("indicator", Params::new()), 3.7, &cfg()).unwrap();
        assert_eq!(r.value, ZERO);
    }

    #[test]
    fn psi_bounded_by_tail_weight_norm() {
        let q = QuadConfig::with_tol(1e-6);
        for f in [cat("sgn", Params::new()), cat("cos_recip", Params::new().with("a", 2.0)), sharpness_witness(1.0, 0.02).unwrap()] {
            for s in [-7.0, 0.0, 0.3, 25.0] {
                let r = psi(&f, s, &q).unwrap();
                assert!(cabs(r.value) <= 2.0 * f.sup_bound + r.err_est, "{} at {s}", f.label);
            }
        }
    }

    #[test]
    fn psi_conjugate_symmetry_for_real_f() {
        let f = cat("atan_recip", Params::new().with("a", 1.5));
        for s in [0.5, 3.0] {
            let a = psi(&f, s, &cfg()).unwrap();
            let b = psi(&f, -s, &cfg()).unwrap();
            assert!(cabs(a.value - b.value.conj()) <= 2.0 * (a.err_est + b.err_est));
        }
    }

    #[test]
    fn f1_hat_closed_forms() {
        let one = cat("const", Params::new());
        let sgn = cat("sgn", Params::new());
        for s in [0.0, 0.7, PI, 40.0] {
            let r = f1_hat(&one, s, &cfg()).unwrap();
            let want = if s == 0.0 { 2.0 } else { 2.0 * sin(s) / s };
            assert!(cabs(r.value - real(want)) < 1e-10);
            let r = f1_hat(&sgn, s, &cfg()).unwrap();
            let want = if s == 0.0 { ZERO } else { C64::new(0.0, -2.0 * (1.0 - cos(s)) / s) };
            assert!(cabs(r.value - want) < 1e-10, "s={s}");
        }
    }

    #[test]
    fn f1_hat_of_cos_recip_against_zero_crossing_oracle() {
        // GK between zeros of cos(1/t) down to ε, rest ≤ 2·2ε² by the
        // substitution u = 1/t and one integration by parts.
        let f = cat("cos_recip", Params::new().with("a", 1.0));
        let s = 1.3;
        let r = f1_hat(&f, s, &cfg()).unwrap();
        let eps = 1e-4;
        let mut brk = alloc::vec![eps];
        let mut k = 0.0;
        while 1.0 / (PI * (k + 0.5)) >= eps {
            brk.push(1.0 / (PI * (k + 0.5)));
            k += 1.0;
        }
        let q = QuadConfig { tol: 1e-11, budget: 50_000_000 };
        // ∫_{-1}^{1} cos(1/t) e^{−ist} dt = 2 ∫_0^1 cos(1/t) cos(st) dt
        let brute = integrate_smooth(|t| real(2.0 * cos(1.0 / t) * cos(s * t)), eps, 1.0, &brk, &q).unwrap();
        assert!(cabs(r.value - brute.value) < 4.0 * eps * eps + 1e-8, "{:?} {:?}", r.value, brute.value);
    }

    #[test]
    fn omega_of_one_matches_sine_integral() {
        let one = cat("const", Params::new());
        for s in [0.2, 1.0, 2.5, -3.0] {
            let r = omega(&one, s, &cfg()).unwrap();
            let want = 2.0 * (s * si(s) + cos(s) - 1.0);
            assert!(cabs(r.value - real(want)) < 1e-9, "s={s}: {:?} vs {want}", r.value);
        }
    }

    #[test]
    fn omega_of_sgn_matches_substitution() {
        let sgn = cat("sgn", Params::new());
        for s in [0.5, 2.0, 9.0] {
            let r = omega(&sgn, s, &cfg()).unwrap();
            let inner = integrate_smooth(|u| real((u - sin(u)) / (u * u)), 0.0, s, &[], &QuadConfig::with_tol(1e-13)).unwrap();
            let want = C64::new(0.0, -2.0 * s * inner.value.re);
            assert!(cabs(r.value - want) < 1e-8, "s={s}");
        }
    }

    #[test]
    fn omega_of_zero_and_phi_identity() {
        let zero = cat("const", Params::new().with("c", 0.0));
        assert_eq!(omega(&zero, 1.7, &cfg()).unwrap().value, ZERO);
        assert_eq!(phi(&zero, 1.7, &cfg()).unwrap().value, ZERO);
        let ind = cat("indicator", Params::new());
        let p = phi(&ind, 2.0, &cfg()).unwrap();
        let o = omega(&ind, 2.0, &cfg()).unwrap();
        assert!(cabs(p.value - o.value) <= p.err_est + o.err_est);
    }

    #[test]
    fn omega_near_form_matches_direct_kernel() {
        // cos(2/t): near-form route versus GK of v_s f between zeros of f.
        let f = cat("cos_recip", Params::new().with("a", 2.0));
        let s = 1.7;
        let r = omega(&f, s, &cfg()).unwrap();
        let eps = 1e-4;
        let mut brk = alloc::vec![eps];
        let mut k = 0.0;
        while 2.0 / (PI * (k + 0.5)) >= eps {
            brk.push(2.0 / (PI * (k + 0.5)));
            k += 1.0;
        }
        let q = QuadConfig { tol: 1e-11, budget: 50_000_000 };
        let v = |t: f64| (omega_kernel(s * t) + omega_kernel(-s * t)) * (s * s) * cos(2.0 / t);
        let brute = integrate_smooth(v, eps, 1.0, &brk, &q).unwrap();
        // |v_s| ≤ s²/2, so the neglected piece is at most s²·ε.
        assert!(cabs(r.value - brute.value) < s * s * eps + 1e-8, "{:?} {:?}", r.value, brute.value);
    }

    #[test]
    fn holder_ratio_cases() {
        let zero = cat("const", Params::new().with("c", 0.0));
        assert_eq!(holder_ratio(&zero, 0.0, 1e-3).unwrap(), 0.0);
        let one = cat("const", Params::new());
        let r = holder_ratio(&one, 0.0, 1e-3).unwrap();
        assert!(r > 0.0 && r <= 6.0, "{r}");
        assert!(holder_ratio(&one, 0.0, 0.5).is_err());
        assert!(holder_ratio(&one, 0.0, 0.0).is_err());
    }

    #[test]
    fn witness_increment_matches_proof_display() {
        // Ψ(h) − Ψ(0) for f_{0,h} equals −2|h| ∫_{|h|/2}^∞ |sin u|/u² du.
        let h = 1e-2;
        let w = sharpness_witness(0.0, h).unwrap();
        let tol = 1e-7;
        let d = psi(&w, h, &QuadConfig::with_tol(tol)).unwrap().value - psi(&w, 0.0, &QuadConfig::with_tol(tol)).unwrap().value;
        let amp = |u: f64| real(abs(sin(u)) / (u * u));
        let mut brk = alloc::vec![];
        let mut k = 1.0;
        while k * PI < 2e4 {
            brk.push(k * PI);
            k += 1.0;
        }
        let q = QuadConfig { tol: 1e-12, budget: 50_000_000 };
        let body = integrate_smooth(amp, h / 2.0, 2e4, &brk, &q).unwrap().value.re;
        // Beyond 2e4 the integrand averages 2/(π u²).
        let oracle = -2.0 * h * (body + 2.0 / (PI * 2e4));
        assert!(cabs(d - real(oracle)) < 3.0 * tol, "{d:?} vs {oracle}");
        let ratio = holder_ratio(&w, 0.0, h).unwrap();
        assert!(ratio >= 1.0 / PI - 0.05, "{ratio}");
    }

    #[test]
    fn second_derivative_of_omega() {
        let one = cat("const", Params::new());
        assert!(omega_second_derivative_check(&one, 1.0, 1e-3).unwrap() <= 1e-4);
        let sgn = cat("sgn", Params::new());
        assert!(omega_second_derivative_check(&sgn, 2.0, 1e-3).unwrap() <= 1e-3);
        let zero = cat("const", Params::new().with("c", 0.0));
        assert_eq!(omega_second_derivative_check(&zero, 0.5, 1e-3).unwrap(), 0.0);
        assert!(omega_second_derivative_check(&one, 1.0, 0.1).is_err());
    }

    #[test]
    fn growth_ratio_approaches_one() {
        let r3 = omega_growth_ratio(1e3).unwrap();
        assert!((r3 - 1.0).abs() < 0.15, "{r3}");
        let r2 = omega_growth_ratio(1e2).unwrap();
        assert!((r3 - 1.0).abs() < (r2 - 1.0).abs());
        assert!(omega_growth_ratio(5.0).is_err());
    }

    #[test]
    fn memoized_values_are_stable() {
        let t = DistributionalTransform::new(cat("sgn", Params::new()));
        assert_eq!(t.transform_norm, 1.0);
        let a = t.psi(1.25, 1e-8).unwrap();
        let b = t.psi(1.25 + 1e-14, 1e-8).unwrap();
        assert_eq!(a, b);
        assert_eq!(t.cache_len(), 1);
        let p = t.phi(0.5, 1e-8).unwrap();
        let o = t.omega(0.5, 5e-9).unwrap();
        let s = t.psi(0.5, 5e-9).unwrap();
        assert_eq!(p.value, o.value - s.value);
    }
}
