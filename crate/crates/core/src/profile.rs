//! Integrable weights `k` and the pairing `⟨f, k⟩ = ∫ f(t) k(t) dt` against a
//! bounded function.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fncat::{BoundedFunction, Wave};
use crate::math::{abs, powf, CFn, RFn, C64};
use crate::quad::{integrate_smooth, integrate_tail, DecayBound, QuadConfig, QuadResult, TailSpec};

/// How a profile is controlled at infinity.
#[derive(Clone)]
pub enum Decay {
    /// `k = Σ B_j(t) e^{iμ_j t}` for `|t| ≥ far_radius`, with power-law amplitudes.
    Power,
    /// `R ↦ ∫_{|t−center|>R} |k|`, for rapidly decaying weights.
    Rapid { center: f64, tail: RFn },
}

#[derive(Clone)]
pub struct Profile {
    pub label: String,
    pub eval: CFn,
    pub sup: f64,
    /// Upper bound for `∫|k|`.
    pub l1: f64,
    pub breakpoints: Vec<f64>,
    pub far_radius: f64,
    pub far: Vec<Wave>,
    pub decay: Decay,
}

impl core::fmt::Debug for Profile {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Profile").field("label", &self.label).field("l1", &self.l1).finish_non_exhaustive()
    }
}

impl Profile {
    pub fn rapid(label: impl Into<String>, eval: CFn, sup: f64, l1: f64, center: f64, tail: RFn) -> Self {
        Profile {
            label: label.into(),
            eval,
            sup,
            l1,
            breakpoints: Vec::new(),
            far_radius: 0.0,
            far: Vec::new(),
            decay: Decay::Rapid { center, tail },
        }
    }

    pub fn power(label: impl Into<String>, eval: CFn, sup: f64, l1: f64, far_radius: f64, far: Vec<Wave>) -> Self {
        Profile {
            label: label.into(),
            eval,
            sup,
            l1,
            breakpoints: Vec::new(),
            far_radius,
            far,
            decay: Decay::Power,
        }
    }

    pub fn with_breaks(mut self, b: Vec<f64>) -> Self {
        self.breakpoints = b;
        self
    }

    pub fn eval(&self, t: f64) -> C64 {
        (self.eval)(t)
    }

    /// `y ↦ k(x − y)`.
    pub fn reflect_shift(&self, x: f64) -> Profile {
        let e = self.eval.clone();
        let decay = match &self.decay {
            Decay::Power => Decay::Power,
            Decay::Rapid { center, tail } => Decay::Rapid { center: x - center, tail: tail.clone() },
        };
        let r0 = self.far_radius;
        let widen = if r0 > 0.0 { (r0 + abs(x)) / r0 } else { 1.0 };
        let far = self
            .far
            .iter()
            .map(|w| {
                let a = w.amp.clone();
                let mu = w.freq;
                // B(x−y) e^{iμ(x−y)} = [B(x−y) e^{iμx}] e^{−iμy}
                let phase = crate::math::cis(mu * x);
                let c = w.bound.c * powf(widen, w.bound.beta);
                Wave::new(-mu, Arc::new(move |y| a(x - y) * phase), DecayBound::new(c, w.bound.beta))
            })
            .collect();
        Profile {
            label: format!("{}(x={x}-.)", self.label),
            eval: Arc::new(move |y| e(x - y)),
            sup: self.sup,
            l1: self.l1,
            breakpoints: self.breakpoints.iter().map(|b| x - b).rev().collect(),
            far_radius: if r0 > 0.0 { r0 + abs(x) } else { 0.0 },
            far,
            decay,
        }
    }

    /// An upper bound for `∫_{|t|>r} |k|`.
    pub fn tail_bound(&self, r: f64) -> f64 {
        match &self.decay {
            Decay::Rapid { center, tail } => {
                let d = r - abs(*center);
                if d > 0.0 {
                    tail(d).min(self.l1)
                } else {
                    self.l1
                }
            }
            Decay::Power => {
                if r < self.far_radius.max(1e-300) {
                    return self.l1;
                }
                let mut total = 0.0;
                for w in &self.far {
                    if w.bound.beta <= 1.0 {
                        return self.l1;
                    }
                    total += 2.0 * w.bound.c / ((w.bound.beta - 1.0) * powf(r, w.bound.beta - 1.0));
                }
                total.min(self.l1)
            }
        }
    }

    /// Pointwise product.
    pub fn product(&self, other: &Profile) -> Profile {
        let (e1, e2) = (self.eval.clone(), other.eval.clone());
        let mut breaks = self.breakpoints.clone();
        breaks.extend_from_slice(&other.breakpoints);
        breaks.sort_by(f64::total_cmp);
        breaks.dedup();
        let l1 = (self.sup * other.l1).min(other.sup * self.l1);
        let label = format!("({})*({})", self.label, other.label);
        let eval: CFn = Arc::new(move |t| e1(t) * e2(t));
        let (decay, far, far_radius) = match (&self.decay, &other.decay) {
            (Decay::Rapid { center, tail }, _) => {
                let (t, s) = (tail.clone(), other.sup);
                (Decay::Rapid { center: *center, tail: Arc::new(move |r: f64| s * t(r)) as RFn }, Vec::new(), 0.0)
            }
            (_, Decay::Rapid { center, tail }) => {
                let (t, s) = (tail.clone(), self.sup);
                (Decay::Rapid { center: *center, tail: Arc::new(move |r: f64| s * t(r)) as RFn }, Vec::new(), 0.0)
            }
            (Decay::Power, Decay::Power) => {
                let mut far = Vec::new();
                for a in &self.far {
                    for b in &other.far {
                        let (fa, fb) = (a.amp.clone(), b.amp.clone());
                        far.push(Wave::new(
                            a.freq + b.freq,
                            Arc::new(move |t| fa(t) * fb(t)),
                            DecayBound::new(a.bound.c * b.bound.c, a.bound.beta + b.bound.beta),
                        ));
                    }
                }
                (Decay::Power, far, self.far_radius.max(other.far_radius))
            }
        };
        Profile { label, eval, sup: self.sup * other.sup, l1, breakpoints: breaks, far_radius, far, decay }
    }
}

fn merged_breaks(f: &BoundedFunction, k: &Profile, lo: f64, hi: f64) -> Vec<f64> {
    let mut b = f.breaks_in(lo, hi);
    b.extend(k.breakpoints.iter().copied().filter(|&x| x >= lo && x <= hi));
    b.sort_by(f64::total_cmp);
    b.dedup();
    b
}

/// `∫_{|t|<1} f k` through `u = 1/t`, using the near expansion of `f`.
fn inner_by_inversion(f: &BoundedFunction, k: &Profile, cfg: &QuadConfig) -> Result<QuadResult> {
    let near = f.near.as_ref().expect("caller checks the near form");
    let mut ubreaks: Vec<f64> = near.breakpoints.clone();
    ubreaks.extend(k.breakpoints.iter().filter(|&&b| b != 0.0 && abs(b) < 1.0).map(|&b| 1.0 / b));
    ubreaks.sort_by(f64::total_cmp);
    ubreaks.dedup();
    let n = near.waves.len().max(1) as f64;
    let mut total = QuadResult::zero();
    for w in &near.waves {
        let (b, ke) = (w.amp.clone(), k.eval.clone());
        let amp = move |u: f64| b(u) * ke(1.0 / u) / (u * u);
        let mut spec = TailSpec::new(&amp, -w.freq, DecayBound::new(w.bound.c * k.sup, w.bound.beta + 2.0));
        spec.breakpoints = &ubreaks;
        total = total + integrate_tail(&spec, &QuadConfig { tol: cfg.tol / n, ..*cfg })?;
    }
    Ok(total)
}

/// `∫_{−1}^{1} f k`.
fn inner(f: &BoundedFunction, k: &Profile, cfg: &QuadConfig) -> Result<QuadResult> {
    if f.near.is_some() {
        return inner_by_inversion(f, k, cfg);
    }
    let (fe, ke) = (f.eval.clone(), k.eval.clone());
    let b = merged_breaks(f, k, -1.0, 1.0);
    integrate_smooth(|t| fe(t) * ke(t), -1.0, 1.0, &b, cfg)
}

/// `∫ f(t) k(t) dt`.
pub fn integrate_against(f: &BoundedFunction, k: &Profile, cfg: &QuadConfig) -> Result<QuadResult> {
    let (fe, ke) = (f.eval.clone(), k.eval.clone());
    let prod = move |t: f64| fe(t) * ke(t);
    if let (Some((lo, hi)), None) = (f.support, &f.near) {
        let b = merged_breaks(f, k, lo, hi);
        return integrate_smooth(&prod, lo, hi, &b, cfg);
    }
    match &k.decay {
        Decay::Rapid { center, tail } => {
            let mut r = 1.0;
            while f.sup_bound * tail(r) > cfg.tol / 4.0 && r < 1e12 {
                r *= 2.0;
            }
            let trunc = f.sup_bound * tail(r);
            let (lo, hi) = (center - r, center + r);
            let sub = QuadConfig { tol: cfg.tol / 4.0, ..*cfg };
            if f.near.is_some() && lo < 1.0 && hi > -1.0 {
                // Inner part over all of [−1, 1]; the window only matters outside.
                let mut out = inner_by_inversion(f, k, &sub)?;
                if lo < -1.0 {
                    out = out + integrate_smooth(&prod, lo, -1.0, &merged_breaks(f, k, lo, -1.0), &sub)?;
                }
                if hi > 1.0 {
                    out = out + integrate_smooth(&prod, 1.0, hi, &merged_breaks(f, k, 1.0, hi), &sub)?;
                }
                return Ok(out.with_extra_err(trunc));
            }
            let mut b = merged_breaks(f, k, lo, hi);
            if lo < 0.0 && hi > 0.0 {
                b.push(0.0);
            }
            let out = integrate_smooth(&prod, lo, hi, &b, &QuadConfig { tol: cfg.tol * 0.75, ..*cfg })?;
            Ok(out.with_extra_err(trunc))
        }
        Decay::Power => {
            let third = QuadConfig { tol: cfg.tol / 3.0, ..*cfg };
            let mut out = inner(f, k, &third)?;
            if f.vanishes_outside_unit() {
                return Ok(out);
            }
            let rm = k.far_radius.max(1.0);
            if rm > 1.0 {
                let half = QuadConfig { tol: third.tol / 2.0, ..*cfg };
                out = out + integrate_smooth(&prod, -rm, -1.0, &merged_breaks(f, k, -rm, -1.0), &half)?;
                out = out + integrate_smooth(&prod, 1.0, rm, &merged_breaks(f, k, 1.0, rm), &half)?;
            }
            let pairs = (f.far.len() * k.far.len()).max(1) as f64;
            let each = QuadConfig { tol: third.tol / pairs, ..*cfg };
            let mut breaks: Vec<f64> = f.breakpoints.clone();
            breaks.extend_from_slice(&k.breakpoints);
            for a in &f.far {
                for b in &k.far {
                    let beta = a.bound.beta + b.bound.beta;
                    if !(beta > 1.0) {
                        return Err(Error::HypothesisViolated(format!(
                            "weight `{}` does not decay fast enough against `{}`",
                            k.label, f.label
                        )));
                    }
                    let (fa, kb) = (a.amp.clone(), b.amp.clone());
                    let amp = move |t: f64| fa(t) * kb(t);
                    let mut spec = TailSpec::new(&amp, -(a.freq + b.freq), DecayBound::new(a.bound.c * b.bound.c, beta));
                    spec.radius = rm;
                    spec.breakpoints = &breaks;
                    spec.lattices = &f.lattices;
                    out = out + integrate_tail(&spec, &each)?;
                }
            }
            Ok(out)
        }
    }
}
