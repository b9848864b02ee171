//! Convolutions with integrable weights and the two weak convolution
//! identities:
//!
//! 1. `⟨(f∗g)^, h⟩ = ⟨f̂, ĝ h⟩` for smooth integrable `g` with `t²g ∈ L¹`;
//! 2. `⟨f̂, g∗h⟩ = ∫ f ĝ ĥ` for integrable `g` and smooth `h`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicU64, Ordering};

use spin::RwLock;

use crate::error::{Error, Result};
use crate::fncat::{catalog, BoundedFunction, Params, Wave};
use crate::math::{abs, cabs, cis, CFn, RFn, C64, ZERO};
use crate::pairing::{multiplier_catalog, pair, BVMultiplier};
use crate::profile::{integrate_against, Decay, Profile};
use crate::quad::{integrate_smooth, BVDecomposition, DecayBound, QuadConfig, QuadResult};

/// Running maximum of nonnegative errors, shareable across threads.
#[derive(Debug, Default)]
pub struct MaxErr(AtomicU64);

impl MaxErr {
    pub fn note(&self, e: f64) {
        // Nonnegative floats order like their bit patterns.
        self.0.fetch_max(e.max(0.0).to_bits(), Ordering::Relaxed);
    }

    pub fn get(&self) -> f64 {
        f64::from_bits(self.0.load(Ordering::Relaxed))
    }
}

/// `(f∗g)(x) = ∫ f(x − t) g(t) dt`.
pub fn convolve(f: &BoundedFunction, g: &Profile, x: f64, cfg: &QuadConfig) -> Result<QuadResult> {
    // ∫ f(x−t) g(t) dt = ∫ f(y) g(x−y) dy
    integrate_against(f, &g.reflect_shift(x), cfg)
}

/// `f∗g` as a bounded function, with values memoized by argument.
pub struct Convolved {
    pub function: BoundedFunction,
    /// Largest quadrature error among the values computed so far.
    pub inner_err: Arc<MaxErr>,
}

pub fn convolved_function(f: &BoundedFunction, g: &Profile, tol: f64) -> Convolved {
    let cache: Arc<RwLock<BTreeMap<u64, C64>>> = Arc::new(RwLock::new(BTreeMap::new()));
    let inner_err = Arc::new(MaxErr::default());
    let (ff, gg, errs) = (f.clone(), g.clone(), inner_err.clone());
    let eval: CFn = Arc::new(move |x: f64| {
        if let Some(v) = cache.read().get(&x.to_bits()) {
            return *v;
        }
        let v = match convolve(&ff, &gg, x, &QuadConfig::with_tol(tol)) {
            Ok(r) => {
                errs.note(r.err_est);
                r.value
            }
            Err(_) => {
                errs.note(f64::INFINITY);
                C64::new(f64::NAN, f64::NAN)
            }
        };
        *cache.write().entry(x.to_bits()).or_insert(v)
    });
    let sup = f.sup_bound * g.l1;
    let mut out = BoundedFunction::new(format!("({})*({})", f.label, g.label), eval.clone(), sup);
    // A single plane wave survives convolution with its frequency intact.
    if let [w] = f.far.as_slice() {
        if w.freq != 0.0 {
            let mu = w.freq;
            out.far = vec![Wave::new(mu, Arc::new(move |t: f64| eval(t) * cis(-mu * t)), DecayBound::new(sup, 0.0))];
        }
    }
    Convolved { function: out, inner_err }
}

/// Both sides of an identity and their difference.
#[derive(Debug, Clone, Copy)]
pub struct IdentityReport {
    pub lhs: QuadResult,
    pub rhs: QuadResult,
    pub residual: f64,
}

impl IdentityReport {
    fn new(lhs: QuadResult, rhs: QuadResult) -> Self {
        IdentityReport { lhs, rhs, residual: cabs(lhs.value - rhs.value) }
    }
}

fn rapid_parts(p: &Profile) -> Result<(f64, RFn)> {
    match &p.decay {
        Decay::Rapid { center, tail } => Ok((*center, tail.clone())),
        Decay::Power => Err(Error::param(format!("`{}` must decay rapidly", p.label))),
    }
}

fn radius_for(tail: &RFn, scale: f64, target: f64) -> f64 {
    let mut r = 1.0;
    while scale * tail(r) > target && r < 1e9 {
        r *= 2.0;
    }
    r
}

/// `s ↦ ∫ g(t − s) k(t) dt` for two rapidly decaying weights.
pub fn cross_correlation(g: &Profile, k: &Profile, tol: f64) -> Result<Profile> {
    let (cg, tg) = rapid_parts(g)?;
    let (ck, tk) = rapid_parts(k)?;
    let rg = radius_for(&tg, k.sup, tol / 4.0);
    let rk = radius_for(&tk, g.sup, tol / 4.0);
    let (ge, ke) = (g.eval.clone(), k.eval.clone());
    let gb = g.breakpoints.clone();
    let kb = k.breakpoints.clone();
    let eval: CFn = Arc::new(move |s: f64| {
        let lo = (ck - rk).max(s + cg - rg);
        let hi = (ck + rk).min(s + cg + rg);
        if lo >= hi {
            return ZERO;
        }
        let mut b: Vec<f64> = gb.iter().map(|x| x + s).chain(kb.iter().copied()).collect();
        b.sort_by(f64::total_cmp);
        let g2 = ge.clone();
        let k2 = ke.clone();
        integrate_smooth(|t| g2(t - s) * k2(t), lo, hi, &b, &QuadConfig::with_tol(tol / 2.0))
            .map(|r| r.value)
            .unwrap_or(C64::new(f64::NAN, f64::NAN))
    });
    let (l1g, l1k) = (g.l1, k.l1);
    let tail: RFn = Arc::new(move |r: f64| l1k * tg(r / 2.0) + l1g * tk(r / 2.0));
    let sup = (g.sup * k.l1).min(k.sup * g.l1);
    Ok(Profile::rapid(format!("corr({},{})", g.label, k.label), eval, sup, g.l1 * k.l1, ck - cg, tail))
}

fn check_identity_1(g: &BVMultiplier, h: &BVMultiplier) -> Result<()> {
    if !g.p2_integrable {
        return Err(Error::param(format!("`{}` needs t²g integrable", g.label)));
    }
    if !h.smooth {
        return Err(Error::param(format!("`{}` needs a smooth derivative", h.label)));
    }
    g.validate()?;
    h.validate()
}

/// `|⟨(f∗g)^, h⟩ − ⟨f, (ĝh)^⟩|`, where `(ĝh)^(s) = ∫ g(t − s) ĥ(t) dt`.
pub fn conv_identity_1(f: &BoundedFunction, g: &BVMultiplier, h: &BVMultiplier, cfg: &QuadConfig) -> Result<IdentityReport> {
    check_identity_1(g, h)?;
    let gp = g.as_profile();
    let hhat = h
        .ghat_analytic
        .clone()
        .ok_or_else(|| Error::param(format!("`{}` needs a known transform", h.label)))?;
    let scale = 2.0 * (h.g_l1 + h.total_variation());
    let inner_tol = cfg.tol / (4.0 * scale.max(1.0));
    let conv = convolved_function(f, &gp, inner_tol);
    let lhs = pair(&conv.function, h, &QuadConfig { tol: cfg.tol / 2.0, ..*cfg })?;
    let lhs = lhs.with_extra_err(scale * conv.inner_err.get());

    let k = cross_correlation(&gp, &hhat, inner_tol)?;
    let rhs = integrate_against(f, &k, &QuadConfig { tol: cfg.tol / 2.0, ..*cfg })?;
    Ok(IdentityReport::new(lhs, rhs))
}

/// Values and two derivatives on a uniform grid, read back by four-point
/// Lagrange interpolation and taken as zero off the grid.
#[derive(Debug, Clone)]
pub struct Tabulated {
    pub lo: f64,
    pub step: f64,
    pub values: Vec<[C64; 3]>,
}

impl Tabulated {
    pub fn hi(&self) -> f64 {
        self.lo + self.step * (self.values.len() - 1) as f64
    }

    pub fn eval(&self, x: f64, k: usize) -> C64 {
        let n = self.values.len();
        let u = (x - self.lo) / self.step;
        if !(u >= 0.0) || u > (n - 1) as f64 {
            return ZERO;
        }
        let i = (libm::floor(u) as usize).clamp(1, n.saturating_sub(3).max(1));
        let v = |j: usize| if j < n { self.values[j][k] } else { ZERO };
        let p = u - i as f64;
        // Nodes at offsets −1, 0, 1, 2 from i.
        let w = [-p * (p - 1.0) * (p - 2.0) / 6.0, (p + 1.0) * (p - 1.0) * (p - 2.0) / 2.0, -(p + 1.0) * p * (p - 2.0) / 2.0, (p + 1.0) * p * (p - 1.0) / 6.0];
        v(i - 1) * w[0] + v(i) * w[1] + v(i + 1) * w[2] + v(i + 2) * w[3]
    }
}

/// Largest number of grid nodes for `g∗h`.
pub const MAX_NODES: usize = 6001;

fn conv_at(g: &BVMultiplier, phi: &CFn, win_g: (f64, f64), win_h: (f64, f64), x: f64, tol: f64) -> Result<QuadResult> {
    // (g∗φ)(x) = ∫ g(y) φ(x − y) dy over y in win_g ∩ (x − win_h)
    let lo = win_g.0.max(x - win_h.1);
    let hi = win_g.1.min(x - win_h.0);
    if lo >= hi {
        return Ok(QuadResult::zero());
    }
    let gg = g.g.clone();
    let mut b: Vec<f64> = g.g_breaks.clone();
    b.sort_by(f64::total_cmp);
    integrate_smooth(|y| gg(y) * phi(x - y), lo, hi, &b, &QuadConfig::with_tol(tol))
}

/// `g∗h` as a multiplier, built from tables of `g∗h`, `g∗h′` and `g∗h″`.
pub struct ConvolvedMultiplier {
    pub multiplier: BVMultiplier,
    pub table: Arc<Tabulated>,
    /// Largest interpolation error seen at grid midpoints.
    pub interp_err: f64,
    /// `∫|g∗h|` and `∫|(g∗h)″|` from the table.
    pub l1_estimate: f64,
    pub var_estimate: f64,
}

pub fn convolve_multipliers(g: &BVMultiplier, h: &BVMultiplier, tol: f64) -> Result<ConvolvedMultiplier> {
    if !h.smooth {
        return Err(Error::param(format!("`{}` needs h, h′, h″ integrable and smooth", h.label)));
    }
    g.validate()?;
    h.validate()?;
    let (glo, ghi, _) = g.window(h.g_sup.max(h.total_variation()).max(1.0), tol * 1e-3);
    let (hlo, hhi, _) = h.window(g.g_l1.max(1.0), tol * 1e-3);
    let (rd, _) = h.dh.truncation_radius(g.g_l1.max(1.0), tol * 1e-3);
    let win_h = (hlo.min(-rd), hhi.max(rd));
    let win_g = (glo, ghi);
    let (lo, hi) = (win_g.0 + win_h.0, win_g.1 + win_h.1);
    let n = MAX_NODES;
    let step = (hi - lo) / (n - 1) as f64;
    let phis: [CFn; 3] = [h.g.clone(), h.h.clone(), h.dh.density.clone()];
    let itol = tol * 1e-2;
    let mut values = Vec::with_capacity(n);
    for i in 0..n {
        let x = lo + step * i as f64;
        let mut row = [ZERO; 3];
        for (k, phi) in phis.iter().enumerate() {
            row[k] = conv_at(g, phi, win_g, win_h, x, itol)?.value;
        }
        values.push(row);
    }
    let table = Arc::new(Tabulated { lo, step, values });
    let mut interp_err: f64 = 0.0;
    for j in 0..24 {
        let x = lo + step * (((j * 977) % (n - 2)) as f64 + 0.5);
        for (k, phi) in phis.iter().enumerate() {
            let d = conv_at(g, phi, win_g, win_h, x, itol)?.value;
            interp_err = interp_err.max(cabs(d - table.eval(x, k)));
        }
    }
    let (mut l1_estimate, mut var_estimate) = (0.0, 0.0);
    for row in table.values.iter() {
        l1_estimate += cabs(row[0]) * step;
        var_estimate += cabs(row[2]) * step;
    }
    let (t0, t1, t2) = (table.clone(), table.clone(), table.clone());
    let bound_var = g.g_l1 * h.total_variation();
    let l1 = g.g_l1 * h.g_l1;
    let radius = abs(lo).max(abs(hi));
    let ghat_analytic = match (&g.ghat_analytic, &h.ghat_analytic) {
        (Some(a), Some(b)) => Some(a.product(b)),
        _ => None,
    };
    let multiplier = BVMultiplier {
        label: format!("({})*({})", g.label, h.label),
        g: Arc::new(move |s| t0.eval(s, 0)),
        h: Arc::new(move |s| t1.eval(s, 1)),
        dh: BVDecomposition {
            density: Arc::new(move |s| t2.eval(s, 2)),
            density_breaks: Vec::new(),
            jumps: Vec::new(),
            total_variation: bound_var.max(var_estimate),
            support_radius: radius,
            tail_mass: None,
        },
        g_l1: l1.max(l1_estimate),
        g_sup: g.g_sup.min(1.0) * h.g_l1.max(g.g_l1 * h.g_sup),
        g_breaks: Vec::new(),
        support: Some((lo, hi)),
        center: 0.0,
        g_tail: Arc::new(move |r: f64| if r >= radius { 0.0 } else { l1 }),
        ghat_analytic,
        smooth: true,
        p2_integrable: true,
    };
    Ok(ConvolvedMultiplier { multiplier, table, interp_err, l1_estimate, var_estimate })
}

/// `|⟨f̂, g∗h⟩ − ∫ f ĝ ĥ|`.
pub fn conv_identity_2(f: &BoundedFunction, g: &BVMultiplier, h: &BVMultiplier, cfg: &QuadConfig) -> Result<IdentityReport> {
    let gh = g
        .ghat_analytic
        .as_ref()
        .zip(h.ghat_analytic.as_ref())
        .map(|(a, b)| a.product(b))
        .ok_or_else(|| Error::param("both factors need a known transform"))?;
    let conv = convolve_multipliers(g, h, cfg.tol)?;
    let m = &conv.multiplier;
    let lhs = pair(f, m, &QuadConfig { tol: cfg.tol / 2.0, ..*cfg })?;
    // An interpolation error δ moves the pairing by at most 2‖f‖(δ·|support| + δ·|support|).
    let width = conv.table.hi() - conv.table.lo;
    let lhs = lhs.with_extra_err(4.0 * f.sup_bound * conv.interp_err * width);
    let rhs = integrate_against(f, &gh, &QuadConfig { tol: cfg.tol / 2.0, ..*cfg })?;
    Ok(IdentityReport::new(lhs, rhs))
}

/// A case of the identity suites: `(f, g, h)` as catalog names and parameters.
#[derive(Debug, Clone)]
pub struct IdentityCase {
    pub f: (&'static str, Params),
    pub g: (&'static str, Params),
    pub h: (&'static str, Params),
}

impl IdentityCase {
    fn new(f: (&'static str, Params), g: (&'static str, Params), h: (&'static str, Params)) -> Self {
        IdentityCase { f, g, h }
    }

    pub fn build(&self) -> Result<(BoundedFunction, BVMultiplier, BVMultiplier)> {
        Ok((catalog(self.f.0, &self.f.1)?, multiplier_catalog(self.g.0, &self.g.1)?, multiplier_catalog(self.h.0, &self.h.1)?))
    }

    pub fn label(&self) -> String {
        format!("f={} g={} h={}", show(&self.f), show(&self.g), show(&self.h))
    }
}

fn show(p: &(&'static str, Params)) -> String {
    let mut s = String::from(p.0);
    let parts: Vec<String> = p.1.keys().map(|k| format!("{k}={}", p.1.get(k).unwrap_or(0.0))).collect();
    if !parts.is_empty() {
        s.push(':');
        s.push_str(&parts.join(","));
    }
    s
}

fn np() -> Params {
    Params::new()
}

fn sigma(s: f64) -> Params {
    Params::new().with("sigma", s)
}

pub fn identity_1_suite() -> Vec<IdentityCase> {
    vec![
        IdentityCase::new(("const", np().with("c", 1.0)), ("gaussian", np()), ("gaussian", np())),
        IdentityCase::new(("sgn", np()), ("gaussian", np()), ("gaussian", np())),
        IdentityCase::new(("sgn", np()), ("gaussian", sigma(0.7)), ("odd_gaussian", np())),
        IdentityCase::new(("cos_recip", np().with("a", 1.0)), ("gaussian", np()), ("gaussian", sigma(2.0))),
        IdentityCase::new(("atan_over", np().with("a", 1.0)), ("triangle", np()), ("gaussian", np().with("center", 0.5))),
        IdentityCase::new(("indicator", np().with("lo", -1.0).with("hi", 2.0)), ("gaussian", sigma(0.5)), ("odd_gaussian", np())),
    ]
}

pub fn identity_2_suite() -> Vec<IdentityCase> {
    vec![
        IdentityCase::new(("expwave", np().with("x", 0.5)), ("gaussian", np()), ("gaussian", np())),
        IdentityCase::new(("const", np().with("c", 0.0)), ("gaussian", np()), ("gaussian", np())),
        IdentityCase::new(("sgn", np()), ("gaussian", np()), ("gaussian", np())),
        IdentityCase::new(("cos_recip", np().with("a", 1.0)), ("triangle", np()), ("gaussian", np())),
        IdentityCase::new(("atan_over", np().with("a", 1.0)), ("gaussian", sigma(0.8)), ("odd_gaussian", sigma(1.0))),
        IdentityCase::new(("indicator", np().with("lo", -1.0).with("hi", 2.0)), ("gaussian", np().with("center", 0.3)), ("gaussian", sigma(1.5))),
    ]
}
