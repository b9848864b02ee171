//! The pairing `⟨f̂, g⟩` against multipliers `g` whose derivative `h` has
//! bounded variation, and the exchange formula `⟨f̂, g⟩ = ⟨f, ĝ⟩`.
//!
//! `⟨f̂, g⟩ = ∫ f̂₁ g + ⟨f̂₂, g⟩` with `⟨f̂₂, g⟩ = −∫ Ψ_f dh`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::Cell;

use crate::error::{Error, Result};
use crate::fncat::{BoundedFunction, Params, Wave};
use crate::inversion::SummabilityKernel;
use crate::math::{abs, cabs, cis, erfc, exp, real, sqrt, CFn, RFn, C64, I, TAU};
use crate::profile::{integrate_against, Profile};
use crate::quad::stieltjes::integrate_stieltjes_exp;
use crate::quad::{integrate_smooth, integrate_stieltjes, BVDecomposition, DecayBound, QuadConfig, QuadResult};
use crate::transform::DistributionalTransform;

/// A multiplier `g`: absolutely continuous and integrable, with `h = g′` of
/// bounded variation (right-continuous version).
#[derive(Clone)]
pub struct BVMultiplier {
    pub label: String,
    pub g: CFn,
    pub h: CFn,
    pub dh: BVDecomposition,
    /// `∫|g|` (or an upper bound).
    pub g_l1: f64,
    pub g_sup: f64,
    /// Points where `g` is not smooth.
    pub g_breaks: Vec<f64>,
    /// `g` vanishes outside this interval, if given.
    pub support: Option<(f64, f64)>,
    pub center: f64,
    /// `R ↦ ∫_{|s−center|>R} |g|`.
    pub g_tail: RFn,
    pub ghat_analytic: Option<Profile>,
    /// `h` is continuous (no jumps) with an integrable derivative.
    pub smooth: bool,
    /// `∫ s²|g(s)| ds < ∞`.
    pub p2_integrable: bool,
}

impl core::fmt::Debug for BVMultiplier {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("BVMultiplier")
            .field("label", &self.label)
            .field("g_l1", &self.g_l1)
            .field("var", &self.dh.total_variation)
            .finish_non_exhaustive()
    }
}

impl BVMultiplier {
    pub fn total_variation(&self) -> f64 {
        self.dh.total_variation
    }

    pub fn validate(&self) -> Result<()> {
        self.dh.validate()?;
        if !(self.g_l1.is_finite() && self.g_l1 >= 0.0) {
            return Err(Error::param(format!("multiplier `{}` is not integrable", self.label)));
        }
        if self.dh.total_variation == 0.0 && self.g_sup != 0.0 {
            return Err(Error::param(format!(
                "multiplier `{}` has dh = 0, so g is affine and not integrable",
                self.label
            )));
        }
        Ok(())
    }

    /// The interval carrying `g` up to a part of size `target / bound`.
    pub fn window(&self, bound: f64, target: f64) -> (f64, f64, f64) {
        if let Some((lo, hi)) = self.support {
            return (lo, hi, 0.0);
        }
        let mut r = 1.0;
        while bound * (self.g_tail)(r) > target && r < 1e9 {
            r *= 2.0;
        }
        (self.center - r, self.center + r, bound * (self.g_tail)(r))
    }

    /// `g` itself as an integrable weight.
    pub fn as_profile(&self) -> Profile {
        Profile::rapid(self.label.clone(), self.g.clone(), self.g_sup, self.g_l1, self.center, self.g_tail.clone())
            .with_breaks(self.g_breaks.clone())
    }

    /// `g₁ + g₂`. The analytic transform is dropped.
    pub fn add(&self, other: &BVMultiplier) -> BVMultiplier {
        let (g1, g2, h1, h2) = (self.g.clone(), other.g.clone(), self.h.clone(), other.h.clone());
        let (t1, t2, c1, c2) = (self.g_tail.clone(), other.g_tail.clone(), self.center, other.center);
        let center = 0.5 * (c1 + c2);
        let shift = abs(c1 - c2) / 2.0;
        let mut breaks = self.g_breaks.clone();
        breaks.extend_from_slice(&other.g_breaks);
        breaks.sort_by(f64::total_cmp);
        breaks.dedup();
        BVMultiplier {
            label: format!("({})+({})", self.label, other.label),
            g: Arc::new(move |s| g1(s) + g2(s)),
            h: Arc::new(move |s| h1(s) + h2(s)),
            dh: self.dh.combine(&other.dh),
            g_l1: self.g_l1 + other.g_l1,
            g_sup: self.g_sup + other.g_sup,
            g_breaks: breaks,
            support: match (self.support, other.support) {
                (Some((a, b)), Some((c, d))) => Some((a.min(c), b.max(d))),
                _ => None,
            },
            center,
            g_tail: Arc::new(move |r: f64| {
                let r = (r - shift).max(0.0);
                t1(r) + t2(r)
            }),
            ghat_analytic: None,
            smooth: self.smooth && other.smooth,
            p2_integrable: self.p2_integrable && other.p2_integrable,
        }
    }

    /// `k·g`.
    pub fn scale(&self, k: C64) -> BVMultiplier {
        let (g, h, t) = (self.g.clone(), self.h.clone(), self.g_tail.clone());
        let ak = cabs(k);
        BVMultiplier {
            label: format!("({k})*({})", self.label),
            g: Arc::new(move |s| g(s) * k),
            h: Arc::new(move |s| h(s) * k),
            dh: self.dh.scale(k),
            g_l1: self.g_l1 * ak,
            g_sup: self.g_sup * ak,
            g_tail: Arc::new(move |r| ak * t(r)),
            ghat_analytic: None,
            ..self.clone()
        }
    }
}

pub const MULTIPLIER_NAMES: &[&str] = &["gaussian", "odd_gaussian", "triangle", "fejer", "poisson", "gauss_kernel", "dirichlet"];

/// Parameter names of a catalog multiplier, in positional order.
pub fn multiplier_param_keys(name: &str) -> Option<&'static [&'static str]> {
    Some(match name {
        "gaussian" | "odd_gaussian" => &["sigma", "center"],
        "triangle" => &["width", "center"],
        "fejer" | "poisson" | "gauss_kernel" | "dirichlet" => &["a", "x"],
        _ => return None,
    })
}

fn positive(p: &Params, key: &str, default: f64) -> Result<f64> {
    let v = p.get_or(key, default);
    if !(v > 0.0) || !v.is_finite() {
        return Err(Error::param(format!("`{key}` must be positive and finite")));
    }
    Ok(v)
}

fn finite(p: &Params, key: &str, default: f64) -> Result<f64> {
    let v = p.get_or(key, default);
    if !v.is_finite() {
        return Err(Error::param(format!("`{key}` must be finite")));
    }
    Ok(v)
}

/// Builds a named multiplier.
pub fn multiplier_catalog(name: &str, p: &Params) -> Result<BVMultiplier> {
    match name {
        "gaussian" => {
            p.check_keys(name, &["sigma", "center"])?;
            gaussian(positive(p, "sigma", 1.0)?, finite(p, "center", 0.0)?)
        }
        "odd_gaussian" => {
            p.check_keys(name, &["sigma", "center"])?;
            odd_gaussian(positive(p, "sigma", core::f64::consts::FRAC_1_SQRT_2)?, finite(p, "center", 0.0)?)
        }
        "triangle" => {
            p.check_keys(name, &["width", "center"])?;
            triangle(positive(p, "width", 2.0)? / 2.0, finite(p, "center", 0.0)?)
        }
        "fejer" | "poisson" | "gauss_kernel" | "dirichlet" => {
            p.check_keys(name, &["a", "x"])?;
            let kernel = match name {
                "fejer" => SummabilityKernel::Fejer,
                "poisson" => SummabilityKernel::Poisson,
                "gauss_kernel" => SummabilityKernel::Gauss,
                _ => SummabilityKernel::Dirichlet,
            };
            kernel.multiplier_of(positive(p, "a", 1.0)?, finite(p, "x", 0.0)?)
        }
        other => Err(Error::UnknownName(other.to_string())),
    }
}

/// `g(s) = e^{−(s−c)²/(2σ²)}`, `ĝ(t) = σ√(2π) e^{−σ²t²/2} e^{−ict}`.
pub fn gaussian(sigma: f64, c: f64) -> Result<BVMultiplier> {
    let s2 = sigma * sigma;
    let g: CFn = Arc::new(move |s: f64| real(exp(-(s - c) * (s - c) / (2.0 * s2))));
    let h: CFn = Arc::new(move |s: f64| real(-(s - c) / s2 * exp(-(s - c) * (s - c) / (2.0 * s2))));
    let density: CFn = Arc::new(move |s: f64| {
        let x = s - c;
        real((x * x / (s2 * s2) - 1.0 / s2) * exp(-x * x / (2.0 * s2)))
    });
    let tv = 4.0 * exp(-0.5) / sigma;
    // Beyond |x| = X ≥ σ, g′ is monotone: ∫_{|x|>X} |g″| = 2|g′(X)|.
    let tail_mass: RFn = Arc::new(move |r: f64| {
        let x = r - abs(c);
        if x < sigma {
            tv
        } else {
            2.0 * x / s2 * exp(-x * x / (2.0 * s2))
        }
    });
    let l1 = sigma * sqrt(TAU);
    let g_tail: RFn = Arc::new(move |r: f64| l1 * erfc(r / (sigma * core::f64::consts::SQRT_2)));
    let ghat: CFn = Arc::new(move |t: f64| cis(-c * t) * (l1 * exp(-s2 * t * t / 2.0)));
    let ghat_tail: RFn = Arc::new(move |r: f64| TAU * erfc(sigma * r / core::f64::consts::SQRT_2));
    Ok(BVMultiplier {
        label: format!("gaussian:sigma={sigma},center={c}"),
        g,
        h,
        dh: BVDecomposition {
            density,
            density_breaks: Vec::new(),
            jumps: Vec::new(),
            total_variation: tv,
            support_radius: f64::INFINITY,
            tail_mass: Some(tail_mass),
        },
        g_l1: l1,
        g_sup: 1.0,
        g_breaks: Vec::new(),
        support: None,
        center: c,
        g_tail,
        ghat_analytic: Some(Profile::rapid("gaussian^", ghat, l1, TAU, 0.0, ghat_tail)),
        smooth: true,
        p2_integrable: true,
    })
}

/// `g(s) = x e^{−x²/(2σ²)}` with `x = s − c`; `ĝ(t) = −iσ³√(2π) t e^{−σ²t²/2} e^{−ict}`.
pub fn odd_gaussian(sigma: f64, c: f64) -> Result<BVMultiplier> {
    let s2 = sigma * sigma;
    let g: CFn = Arc::new(move |s: f64| {
        let x = s - c;
        real(x * exp(-x * x / (2.0 * s2)))
    });
    let h: CFn = Arc::new(move |s: f64| {
        let x = s - c;
        real((1.0 - x * x / s2) * exp(-x * x / (2.0 * s2)))
    });
    let density: CFn = Arc::new(move |s: f64| {
        let x = s - c;
        real((x * x * x / (s2 * s2) - 3.0 * x / s2) * exp(-x * x / (2.0 * s2)))
    });
    // g′ runs 0 → −2e^{−3/2} → 1 → −2e^{−3/2} → 0.
    let tv = 2.0 + 8.0 * exp(-1.5);
    let tail_mass: RFn = Arc::new(move |r: f64| {
        let x = r - abs(c);
        if x < sqrt(3.0) * sigma {
            tv
        } else {
            2.0 * (x * x / s2 - 1.0) * exp(-x * x / (2.0 * s2))
        }
    });
    let l1 = 2.0 * s2;
    let g_tail: RFn = Arc::new(move |r: f64| 2.0 * s2 * exp(-r * r / (2.0 * s2)));
    let k = sigma * s2 * sqrt(TAU);
    let ghat: CFn = Arc::new(move |t: f64| cis(-c * t) * (-I * k * t * exp(-s2 * t * t / 2.0)));
    let ghat_l1 = 2.0 * sigma * sqrt(TAU);
    let ghat_tail: RFn = Arc::new(move |r: f64| ghat_l1 * exp(-s2 * r * r / 2.0));
    Ok(BVMultiplier {
        label: format!("odd_gaussian:sigma={sigma},center={c}"),
        g,
        h,
        dh: BVDecomposition {
            density,
            density_breaks: Vec::new(),
            jumps: Vec::new(),
            total_variation: tv,
            support_radius: f64::INFINITY,
            tail_mass: Some(tail_mass),
        },
        g_l1: l1,
        g_sup: sigma * exp(-0.5),
        g_breaks: Vec::new(),
        support: None,
        center: c,
        g_tail,
        ghat_analytic: Some(Profile::rapid(
            "odd_gaussian^",
            ghat,
            s2 * sqrt(TAU) * exp(-0.5),
            ghat_l1,
            0.0,
            ghat_tail,
        )),
        smooth: true,
        p2_integrable: true,
    })
}

/// `g(s) = (1 − |s−c|/w)_+`; `ĝ(t) = e^{−ict}·2(1 − cos wt)/(w t²)`.
pub fn triangle(w: f64, c: f64) -> Result<BVMultiplier> {
    let g: CFn = Arc::new(move |s: f64| real((1.0 - abs(s - c) / w).max(0.0)));
    let h: CFn = Arc::new(move |s: f64| {
        let x = s - c;
        real(if x < -w || x >= w {
            0.0
        } else if x < 0.0 {
            1.0 / w
        } else {
            -1.0 / w
        })
    });
    let jumps = vec![(c - w, real(1.0 / w)), (c, real(-2.0 / w)), (c + w, real(1.0 / w))];
    let ghat: CFn = Arc::new(move |t: f64| {
        let y = w * t;
        let v = if abs(y) < 1e-4 { w * (1.0 - y * y / 12.0) } else { 2.0 * (1.0 - crate::math::cos(y)) / (w * t * t) };
        cis(-c * t) * v
    });
    let far = vec![
        Wave::new(-c, Arc::new(move |t: f64| real(2.0 / (w * t * t))), DecayBound::new(2.0 / w, 2.0)),
        Wave::new(w - c, Arc::new(move |t: f64| real(-1.0 / (w * t * t))), DecayBound::new(1.0 / w, 2.0)),
        Wave::new(-w - c, Arc::new(move |t: f64| real(-1.0 / (w * t * t))), DecayBound::new(1.0 / w, 2.0)),
    ];
    let reach = abs(c) + w;
    Ok(BVMultiplier {
        label: format!("triangle:width={},center={c}", 2.0 * w),
        g,
        h,
        dh: BVDecomposition::jumps_only(jumps),
        g_l1: w,
        g_sup: 1.0,
        g_breaks: vec![c - w, c, c + w],
        support: Some((c - w, c + w)),
        center: c,
        g_tail: Arc::new(move |r: f64| if r >= reach { 0.0 } else { w }),
        ghat_analytic: Some(Profile::power("triangle^", ghat, w, TAU, 1.0, far)),
        smooth: false,
        p2_integrable: true,
    })
}

/// Wraps the parts of a summability multiplier `s ↦ e^{ixs}ψ̂_a(s)`.
pub(crate) struct KernelMultiplierParts {
    pub label: String,
    pub g: CFn,
    pub h: CFn,
    pub dh: BVDecomposition,
    pub g_l1: f64,
    pub g_breaks: Vec<f64>,
    pub support: Option<(f64, f64)>,
    pub g_tail: RFn,
    pub ghat: Profile,
    pub smooth: bool,
}

impl From<KernelMultiplierParts> for BVMultiplier {
    fn from(k: KernelMultiplierParts) -> Self {
        BVMultiplier {
            label: k.label,
            g: k.g,
            h: k.h,
            dh: k.dh,
            g_l1: k.g_l1,
            g_sup: 1.0,
            g_breaks: k.g_breaks,
            support: k.support,
            center: 0.0,
            g_tail: k.g_tail,
            ghat_analytic: Some(k.ghat),
            smooth: k.smooth,
            p2_integrable: true,
        }
    }
}

/// Records the largest inner error seen during an outer quadrature.
struct InnerErr(Cell<f64>);

impl InnerErr {
    fn new() -> Self {
        InnerErr(Cell::new(0.0))
    }
    fn note(&self, r: &QuadResult) -> C64 {
        if r.err_est > self.0.get() {
            self.0.set(r.err_est);
        }
        r.value
    }
    fn get(&self) -> f64 {
        self.0.get()
    }
}

/// A single error from an inner quadrature aborts the outer one.
struct FirstError(core::cell::RefCell<Option<Error>>);

impl FirstError {
    fn new() -> Self {
        FirstError(core::cell::RefCell::new(None))
    }
    fn keep(&self, r: Result<QuadResult>) -> QuadResult {
        match r {
            Ok(v) => v,
            Err(e) => {
                let mut slot = self.0.borrow_mut();
                if slot.is_none() {
                    *slot = Some(e);
                }
                QuadResult::zero()
            }
        }
    }
    fn check(self) -> Result<()> {
        match self.0.into_inner() {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }
}

/// `∫ f̂₁(s) g(s) ds`.
pub fn pair_f1(t: &DistributionalTransform, m: &BVMultiplier, cfg: &QuadConfig) -> Result<QuadResult> {
    let f = &t.source;
    if f.sup_bound == 0.0 || m.g_sup == 0.0 {
        return Ok(QuadResult::zero());
    }
    // |f̂₁| ≤ ∫_{−1}^{1}|f| ≤ 2‖f‖_∞
    let fb = 2.0 * f.sup_bound;
    let (lo, hi, trunc) = m.window(fb, cfg.tol / 8.0);
    let inner_tol = cfg.tol / (4.0 * m.g_l1.max(1.0));
    let inner = InnerErr::new();
    let fail = FirstError::new();
    let g = m.g.clone();
    let r = integrate_smooth(
        |s| inner.note(&fail.keep(t.f1_hat(s, inner_tol))) * g(s),
        lo,
        hi,
        &m.g_breaks,
        &QuadConfig { tol: cfg.tol / 2.0, ..*cfg },
    )?;
    fail.check()?;
    Ok(r.with_extra_err(trunc + inner.get() * m.g_l1))
}

/// `⟨f̂₂, g⟩ = −∫ Ψ_f dh`.
pub fn pair_f2_with(t: &DistributionalTransform, m: &BVMultiplier, cfg: &QuadConfig) -> Result<QuadResult> {
    m.validate()?;
    let f = &t.source;
    if f.vanishes_outside_unit() || f.sup_bound == 0.0 {
        return Ok(QuadResult::zero());
    }
    let tv = m.dh.total_variation.max(1.0);
    let inner_tol = cfg.tol / (4.0 * tv);
    let inner = InnerErr::new();
    let fail = FirstError::new();
    let r = integrate_stieltjes(
        |s| inner.note(&fail.keep(t.psi(s, inner_tol))),
        2.0 * f.sup_bound,
        &m.dh,
        &QuadConfig { tol: cfg.tol / 2.0, ..*cfg },
    )?;
    fail.check()?;
    Ok(-r.with_extra_err(inner.get() * m.dh.total_variation))
}

pub fn pair_f2(f: &BoundedFunction, m: &BVMultiplier, cfg: &QuadConfig) -> Result<QuadResult> {
    pair_f2_with(&DistributionalTransform::new(f.clone()).with_budget(cfg.budget), m, cfg)
}

/// `⟨f̂, g⟩`, reusing the memoized primitives of `t`.
pub fn pair_with(t: &DistributionalTransform, m: &BVMultiplier, cfg: &QuadConfig) -> Result<QuadResult> {
    m.validate()?;
    let half = QuadConfig { tol: cfg.tol / 2.0, ..*cfg };
    Ok(pair_f1(t, m, &half)? + pair_f2_with(t, m, &half)?)
}

/// `⟨f̂, g⟩ = ∫ f̂₁ g − ∫ Ψ_f dh`.
pub fn pair(f: &BoundedFunction, m: &BVMultiplier, cfg: &QuadConfig) -> Result<QuadResult> {
    pair_with(&DistributionalTransform::new(f.clone()).with_budget(cfg.budget), m, cfg)
}

/// `ĝ(s)` from the multiplier data alone, with error at most
/// `cfg.tol · min(1, s⁻²)`: direct quadrature for `|s| < 10⁻³`, otherwise
/// `ĝ(s) = −s⁻² ∫ e^{−ist} dh(t)`.
pub fn ghat(m: &BVMultiplier, s: f64, cfg: &QuadConfig) -> Result<QuadResult> {
    if abs(s) < 1e-3 {
        let (lo, hi, trunc) = m.window(1.0, cfg.tol / 4.0);
        let g = m.g.clone();
        let r = integrate_smooth(|t| g(t) * cis(-s * t), lo, hi, &m.g_breaks, &QuadConfig { tol: cfg.tol * 0.75, ..*cfg })?;
        return Ok(r.with_extra_err(trunc));
    }
    let s2 = s * s;
    let inner = QuadConfig { tol: cfg.tol * s2.min(1.0), ..*cfg };
    let r = integrate_stieltjes_exp(s, &m.dh, &inner)?;
    Ok(r.scale(real(-1.0 / s2)))
}

/// `ĝ` as a weight profile: the analytic one if known, else the numeric
/// route with the decay `|ĝ(s)| ≤ var(h)/s²`.
pub fn ghat_profile(m: &BVMultiplier, cfg: &QuadConfig) -> Profile {
    if let Some(p) = &m.ghat_analytic {
        return p.clone();
    }
    let mm = m.clone();
    let c = *cfg;
    let e: CFn = Arc::new(move |s: f64| ghat(&mm, s, &c).map(|r| r.value).unwrap_or(C64::new(f64::NAN, f64::NAN)));
    let tv = m.dh.total_variation;
    let l1 = 2.0 * m.g_l1.min(tv) + 2.0 * tv;
    let far = vec![Wave::new(0.0, e.clone(), DecayBound::new(tv, 2.0))];
    Profile::power(format!("{}^", m.label), e, m.g_l1, l1, 1.0, far)
}

/// `⟨f, ĝ⟩ = ∫ f(t) ĝ(t) dt`.
pub fn exchange_rhs(f: &BoundedFunction, m: &BVMultiplier, cfg: &QuadConfig) -> Result<QuadResult> {
    m.validate()?;
    if m.ghat_analytic.is_some() {
        return integrate_against(f, &ghat_profile(m, cfg), cfg);
    }
    // Pointwise error of the numeric ĝ is τ·min(1, s⁻²), which integrates to 4τ.
    let tau = cfg.tol / (16.0 * f.sup_bound.max(1.0));
    let p = ghat_profile(m, &QuadConfig { tol: tau, ..*cfg });
    let r = integrate_against(f, &p, &QuadConfig { tol: cfg.tol * 0.75, ..*cfg })?;
    Ok(r.with_extra_err(4.0 * tau * f.sup_bound))
}

/// `2‖f‖_∞ (‖g‖₁ + var(h))`.
pub fn pairing_bound(f: &BoundedFunction, m: &BVMultiplier) -> f64 {
    2.0 * f.sup_bound * (m.g_l1 + m.dh.total_variation)
}

/// Both sides of the exchange formula.
#[derive(Debug, Clone, Copy)]
pub struct ExchangeReport {
    pub lhs: QuadResult,
    pub rhs: QuadResult,
    pub residual: f64,
    pub bound: f64,
}

impl ExchangeReport {
    pub fn err_est(&self) -> f64 {
        self.lhs.err_est + self.rhs.err_est
    }
}

pub fn exchange(f: &BoundedFunction, m: &BVMultiplier, cfg: &QuadConfig) -> Result<ExchangeReport> {
    let lhs = pair(f, m, cfg)?;
    let rhs = exchange_rhs(f, m, cfg)?;
    Ok(ExchangeReport { lhs, rhs, residual: cabs(lhs.value - rhs.value), bound: pairing_bound(f, m) })
}

/// `|⟨f̂, g⟩ − ⟨f, ĝ⟩|`.
pub fn exchange_residual(f: &BoundedFunction, m: &BVMultiplier, cfg: &QuadConfig) -> Result<f64> {
    exchange(f, m, cfg).map(|r| r.residual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fncat::catalog;
    use crate::math::{erf, PI, ZERO};

    fn cat(name: &str, p: Params) -> BoundedFunction {
        catalog(name, &p).unwrap()
    }

    fn mult(name: &str, p: Params) -> BVMultiplier {
        multiplier_catalog(name, &p).unwrap()
    }

    fn cfg(tol: f64) -> QuadConfig {
        QuadConfig::with_tol(tol)
    }

    #[test]
    fn dirac_recovery_for_plane_waves() {
        // The transform of e^{ixt} is 2π δ_x.
        let m = mult("gaussian", Params::new());
        for x in [-2.0, 0.0, 1.5] {
            let f = cat("expwave", Params::new().with("x", x));
            let r = pair(&f, &m, &cfg(1e-8)).unwrap();
            let want = TAU * exp(-x * x / 2.0);
            assert!(cabs(r.value - want) < 1e-6, "x={x}: {} vs {want}", r.value);
        }
    }

    #[test]
    fn constant_f2_part() {
        // −∫Ψ₁ dh equals ∫_{|t|>1} ĝ(t) dt = 2π(1 − erf(1/√2)) for the unit Gaussian.
        let one = cat("const", Params::new().with("c", 1.0));
        let m = mult("gaussian", Params::new());
        let r = pair_f2(&one, &m, &cfg(1e-9)).unwrap();
        let want = TAU * (1.0 - erf(core::f64::consts::FRAC_1_SQRT_2));
        assert!(cabs(r.value - want) < 1e-8, "{} vs {want}", r.value);
    }

    #[test]
    fn triangle_transform_vanishes_at_two_pi() {
        let m = mult("triangle", Params::new().with("width", 2.0));
        assert_eq!(m.total_variation(), 4.0);
        let r = ghat(&m, TAU, &cfg(1e-10)).unwrap();
        assert!(cabs(r.value) < 1e-12);
        let p = m.ghat_analytic.clone().unwrap();
        for s in [0.0, 0.5, 2.0, 7.0] {
            let r = ghat(&m, s, &cfg(1e-10)).unwrap();
            assert!(cabs(r.value - p.eval(s)) < 1e-9, "s={s}");
        }
    }

    #[test]
    fn numeric_ghat_matches_analytic() {
        for (name, p) in [
            ("gaussian", Params::new()),
            ("gaussian", Params::new().with("sigma", 0.5).with("center", 1.0)),
            ("odd_gaussian", Params::new()),
            ("fejer", Params::new().with("a", 0.5).with("x", 0.3)),
            ("poisson", Params::new().with("a", 0.5).with("x", -1.0)),
            ("gauss_kernel", Params::new().with("a", 0.4).with("x", 2.0)),
        ] {
            let m = mult(name, p);
            let exact = m.ghat_analytic.clone().unwrap();
            for s in [0.0005, 0.5, 2.0, 10.0] {
                let r = ghat(&m, s, &cfg(1e-9)).unwrap();
                assert!(cabs(r.value - exact.eval(s)) < 1e-8, "{name} s={s}: {} vs {}", r.value, exact.eval(s));
            }
        }
    }

    #[test]
    fn multipliers_are_consistent() {
        let c = cfg(1e-11);
        for (name, p) in [
            ("gaussian", Params::new().with("center", -0.5)),
            ("odd_gaussian", Params::new().with("sigma", 1.3)),
            ("triangle", Params::new().with("width", 3.0).with("center", 0.2)),
        ] {
            let m = mult(name, p);
            m.validate().unwrap();
            for (lo, hi) in [(-4.0, -0.1), (-1.0, 2.5)] {
                let inc = m.dh.increment(lo, hi, &c).unwrap();
                assert!(cabs(inc - ((m.h)(hi) - (m.h)(lo))) < 1e-9, "{name}");
                let gi = integrate_smooth(|s| (m.h)(s), lo, hi, &m.g_breaks, &c).unwrap();
                assert!(cabs(gi.value - ((m.g)(hi) - (m.g)(lo))) < 1e-9, "{name}");
            }
            let (lo, hi, _) = m.window(1.0, 1e-13);
            let l1 = integrate_smooth(|s| real(cabs((m.g)(s))), lo, hi, &m.g_breaks, &c).unwrap();
            assert!(abs(l1.value.re - m.g_l1) < 1e-9, "{name}");
            let tv = integrate_smooth(|s| real(cabs((m.dh.density)(s))), lo - 10.0, hi + 10.0, &m.g_breaks, &c).unwrap();
            let jumps: f64 = m.dh.jumps.iter().map(|j| cabs(j.1)).sum();
            assert!(abs(tv.value.re + jumps - m.total_variation()) < 1e-8, "{name}");
        }
    }

    #[test]
    fn exchange_holds_for_sample_pairs() {
        let c = cfg(1e-8);
        for (f, m) in [
            (cat("sgn", Params::new()), mult("gaussian", Params::new())),
            (cat("indicator", Params::new().with("lo", -2.0).with("hi", 3.0)), mult("triangle", Params::new())),
            (cat("cos_recip", Params::new().with("a", 1.0)), mult("odd_gaussian", Params::new())),
            (cat("atan_over", Params::new().with("a", 1.0)), mult("poisson", Params::new().with("a", 0.5).with("x", 0.7))),
        ] {
            let rep = exchange(&f, &m, &c).unwrap();
            assert!(rep.residual <= 1e-6 * (1.0 + cabs(rep.rhs.value)), "{} / {}: {:?}", f.label, m.label, rep);
            assert!(cabs(rep.lhs.value) <= rep.bound + 10.0 * rep.lhs.err_est);
        }
    }

    #[test]
    fn l1_function_routes_agree() {
        // For integrable f vanishing on [−1, 1], −∫Ψ dh equals ∫ f ĝ.
        let f = cat("indicator", Params::new().with("lo", 1.0).with("hi", 4.0));
        let m = mult("gaussian", Params::new().with("sigma", 0.8));
        let f2 = pair_f2(&f, &m, &cfg(1e-9)).unwrap();
        let rhs = exchange_rhs(&f, &m, &cfg(1e-9)).unwrap();
        assert!(cabs(f2.value - rhs.value) < 1e-7);
    }

    #[test]
    fn f2_routes_agree() {
        // −∫Ψ dh against −∫Ψ′ h with Ψ′ from central differences.
        let f = cat("sgn", Params::new());
        let m = mult("gaussian", Params::new());
        let t = DistributionalTransform::new(f.clone());
        let a = pair_f2(&f, &m, &cfg(1e-9)).unwrap();
        let e = 1e-3;
        let hf = m.h.clone();
        let b = integrate_smooth(
            |s| {
                let d = (t.psi(s + e, 1e-11).unwrap().value - t.psi(s - e, 1e-11).unwrap().value) / (2.0 * e);
                -d * hf(s)
            },
            -9.0,
            9.0,
            &[],
            &cfg(1e-7),
        )
        .unwrap();
        assert!(cabs(a.value - b.value) < 1e-4, "{} vs {}", a.value, b.value);
    }

    #[test]
    fn pairing_is_bilinear() {
        let c = cfg(1e-8);
        let f = cat("sgn", Params::new());
        let g = cat("expwave", Params::new().with("x", 0.5));
        let m1 = mult("gaussian", Params::new());
        let m2 = mult("triangle", Params::new());
        let k = C64::new(0.3, -2.0);
        let lhs = pair(&f.scale(k).add(&g), &m1.add(&m2), &c).unwrap().value;
        let mut rhs = ZERO;
        for m in [&m1, &m2] {
            rhs += pair(&f, m, &c).unwrap().value * k + pair(&g, m, &c).unwrap().value;
        }
        assert!(cabs(lhs - rhs) < 1e-6, "{lhs} vs {rhs}");
        let s = pair(&g, &m1.scale(k), &c).unwrap().value;
        assert!(cabs(s - pair(&g, &m1, &c).unwrap().value * k) < 1e-7);
    }

    #[test]
    fn degenerate_multiplier_rejected() {
        let mut m = mult("gaussian", Params::new());
        m.dh = BVDecomposition::zero();
        let one = cat("const", Params::new().with("c", 1.0));
        assert!(matches!(pair(&one, &m, &cfg(1e-6)), Err(Error::InvalidParameter(_))));
        assert!(matches!(multiplier_catalog("dirichlet", &Params::new()), Err(Error::KernelRejected(_))));
        assert!(matches!(multiplier_catalog("box", &Params::new()), Err(Error::UnknownName(_))));
        assert!(multiplier_catalog("gaussian", &Params::new().with("sigma", -1.0)).is_err());
    }

    #[test]
    fn odd_gaussian_pairs_odd_functions() {
        // Even multipliers see nothing of sgn.
        let f = cat("sgn", Params::new());
        let even = pair(&f, &mult("gaussian", Params::new()), &cfg(1e-8)).unwrap();
        assert!(cabs(even.value) < 1e-7);
        let m = mult("odd_gaussian", Params::new());
        let r = pair(&f, &m, &cfg(1e-8)).unwrap();
        // ĝ(t) = −i(√π/2) t e^{−t²/4}, so ∫ sgn ĝ = −2i√π.
        let want = C64::new(0.0, -2.0 * sqrt(PI));
        assert!(cabs(r.value - want) < 1e-7, "{}", r.value);
    }
}
