//! Bessel functions `J₀`, `J₁` and closed-form transforms of catalog
//! functions as atoms plus a density.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fncat::{catalog, Params};
use crate::math::{abs, binomial, cabs, cis, cos, exp, powf, real, sgn, sin, sqrt, CFn, C64, I, PI, TAU, ZERO};
use crate::pairing::{exchange_rhs, BVMultiplier};
use crate::quad::{integrate_smooth, QuadConfig, QuadResult};

/// Series below this argument, asymptotic expansion above.
pub const BESSEL_SWITCH: f64 = 12.0;
pub const BESSEL_MAX_ARG: f64 = 1e4;

/// `Σ_k (−1)^k (x/2)^{2k+n} / (k!(k+n)!)`.
pub fn bessel_series(n: u32, x: f64) -> f64 {
    let q = -(x * x) / 4.0;
    let mut term = powf(x / 2.0, n as f64);
    for j in 1..=n {
        term /= j as f64;
    }
    let mut sum = term;
    for k in 1..60 {
        term *= q / (k as f64 * (k + n) as f64);
        sum += term;
        if abs(term) < 1e-17 * abs(sum) && k > 5 {
            break;
        }
    }
    sum
}

/// Hankel's expansion, summed until the terms stop decreasing.
pub fn bessel_asymptotic(n: u32, x: f64) -> f64 {
    let mu = 4.0 * (n * n) as f64;
    let (mut p, mut q) = (0.0, 0.0);
    let mut a = 1.0;
    let mut last = f64::INFINITY;
    for k in 0..60u32 {
        if k > 0 {
            let o = (2 * k - 1) as f64;
            a *= (mu - o * o) / (k as f64 * 8.0 * x);
        }
        if abs(a) > last {
            break;
        }
        last = abs(a);
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * a;
        } else {
            q += sign * a;
        }
    }
    let chi = x - (n as f64 / 2.0 + 0.25) * PI;
    sqrt(2.0 / (PI * x)) * (p * cos(chi) - q * sin(chi))
}

fn bessel(n: u32, x: f64) -> Result<f64> {
    if !x.is_finite() || abs(x) > BESSEL_MAX_ARG {
        return Err(Error::param(format!("Bessel argument {x} outside |x| ≤ {BESSEL_MAX_ARG}")));
    }
    let ax = abs(x);
    let v = if ax <= BESSEL_SWITCH { bessel_series(n, ax) } else { bessel_asymptotic(n, ax) };
    Ok(if n % 2 == 1 && x < 0.0 { -v } else { v })
}

pub fn bessel_j0(x: f64) -> Result<f64> {
    bessel(0, x)
}

pub fn bessel_j1(x: f64) -> Result<f64> {
    bessel(1, x)
}

fn j1_unchecked(x: f64) -> f64 {
    bessel(1, x).unwrap_or(f64::NAN)
}

fn j0_unchecked(x: f64) -> f64 {
    bessel(0, x).unwrap_or(f64::NAN)
}

/// `|J₁| ≤ 0.582` on the real line.
const J1_SUP: f64 = 0.5819;

/// How the density behaves at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Singularity {
    /// Continuous through the point, possibly not differentiable there.
    Removable { limit: C64 },
    /// Finite one-sided limits that differ.
    Jump { left: C64, right: C64 },
    /// `c/(s − p)` plus a bounded part, paired by symmetric folding.
    PrincipalValue,
    /// Not locally integrable.
    NonIntegrable,
}

#[derive(Clone)]
pub struct AtomicPlusDensity {
    pub label: String,
    pub atoms: Vec<(f64, C64)>,
    pub density: CFn,
    pub singularities: Vec<(f64, Singularity)>,
    /// Upper bound for `|density(s)|` on `|s| ≥ 1`; zero means no density.
    pub bound: f64,
    /// The density is `O(|s|^{−decay_hint})` at infinity.
    pub decay_hint: f64,
}

impl core::fmt::Debug for AtomicPlusDensity {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("AtomicPlusDensity")
            .field("label", &self.label)
            .field("atoms", &self.atoms)
            .field("singularities", &self.singularities)
            .finish_non_exhaustive()
    }
}

impl AtomicPlusDensity {
    pub fn eval_density(&self, s: f64) -> C64 {
        for &(p, k) in &self.singularities {
            if s == p {
                return match k {
                    Singularity::Removable { limit } => limit,
                    Singularity::Jump { right, .. } => right,
                    _ => C64::new(f64::NAN, f64::NAN),
                };
            }
        }
        (self.density)(s)
    }

    fn validate(&self) -> Result<()> {
        let mut xs: Vec<f64> = self.atoms.iter().map(|a| a.0).collect();
        xs.sort_by(f64::total_cmp);
        if xs.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::param("atom locations must be distinct"));
        }
        Ok(())
    }
}

/// `√|b| J₁(2√|bs|)/√|s|`, continuous at 0 with value `|b|`.
fn bessel_ratio(b: f64, s: f64) -> f64 {
    let z = 2.0 * sqrt(abs(b * s));
    if z < 1e-6 {
        return abs(b) * (1.0 - z * z / 8.0);
    }
    sqrt(abs(b)) * j1_unchecked(z) / sqrt(abs(s))
}

pub const CLOSED_FORM_NAMES: &[&str] = &[
    "const",
    "indicator",
    "sgn",
    "expwave",
    "cos_recip",
    "cos_recip_pow",
    "exp_i_recip",
    "x_sin_recip",
    "atan_over",
    "atan_recip",
    "gaussian",
];

fn nonzero_a(p: &Params) -> Result<f64> {
    let a = p.require("a")?;
    if a == 0.0 || !a.is_finite() {
        return Err(Error::param("`a` must be nonzero and finite"));
    }
    Ok(a)
}

/// The transform of catalog function `name` in closed form.
pub fn closed_form(name: &str, p: &Params) -> Result<AtomicPlusDensity> {
    // Validates the parameters the same way the catalog does.
    catalog(name, p)?;
    let label = format!("closed_form({name})");
    let zero_density: CFn = Arc::new(|_| ZERO);
    let d = match name {
        "const" => {
            let c = p.get_or("c", 1.0);
            AtomicPlusDensity { label, atoms: vec![(0.0, real(TAU * c))], density: zero_density, singularities: vec![], bound: 0.0, decay_hint: f64::INFINITY }
        }
        "expwave" => {
            let x = p.get_or("x", 0.0);
            AtomicPlusDensity { label, atoms: vec![(x, real(TAU))], density: zero_density, singularities: vec![], bound: 0.0, decay_hint: f64::INFINITY }
        }
        "indicator" => {
            let (lo, hi) = (p.get_or("lo", -1.0), p.get_or("hi", 1.0));
            let density: CFn = Arc::new(move |s: f64| {
                if abs(s) * (abs(lo) + abs(hi)) < 1e-6 {
                    // Taylor expansion of ∫_lo^hi e^{−ist} dt
                    return real(hi - lo) - I * (s * (hi * hi - lo * lo) / 2.0);
                }
                (cis(-s * lo) - cis(-s * hi)) / (I * s)
            });
            AtomicPlusDensity {
                label,
                atoms: vec![],
                density,
                singularities: vec![(0.0, Singularity::Removable { limit: real(hi - lo) })],
                bound: 2.0,
                decay_hint: 1.0,
            }
        }
        "sgn" => AtomicPlusDensity {
            label,
            atoms: vec![],
            density: Arc::new(|s: f64| -2.0 * I / s),
            singularities: vec![(0.0, Singularity::PrincipalValue)],
            bound: 2.0,
            decay_hint: 1.0,
        },
        "cos_recip" | "cos_recip_pow" => {
            let a = nonzero_a(p)?;
            let m = if name == "cos_recip" { 1 } else { p.require("m")? as u32 };
            // cos^m(a/t) = 2^{−m} Σ_k C(m,k) cos((m−2k)a/t)
            let mut terms: Vec<(f64, f64)> = Vec::new();
            for k in 0..=m {
                let b = (m as f64 - 2.0 * k as f64) * a;
                if b != 0.0 {
                    terms.push((binomial(m, k) / powf(2.0, m as f64), b));
                }
            }
            let limit: f64 = terms.iter().map(|(w, b)| -PI * w * abs(*b)).sum();
            let bound: f64 = terms.iter().map(|(w, b)| PI * w * J1_SUP * sqrt(abs(*b))).sum();
            let t2 = terms.clone();
            let density: CFn = Arc::new(move |s: f64| real(t2.iter().map(|(w, b)| -PI * w * bessel_ratio(*b, s)).sum::<f64>()));
            AtomicPlusDensity {
                label,
                atoms: vec![(0.0, real(TAU))],
                density,
                singularities: vec![(0.0, Singularity::Removable { limit: real(limit) })],
                bound,
                decay_hint: 0.75,
            }
        }
        "exp_i_recip" => {
            let a = nonzero_a(p)?;
            let density: CFn = Arc::new(move |s: f64| if a * s < 0.0 { real(-TAU * bessel_ratio(a, s)) } else { ZERO });
            let inner = real(-TAU * abs(a));
            let (left, right) = if a > 0.0 { (inner, ZERO) } else { (ZERO, inner) };
            AtomicPlusDensity {
                label,
                atoms: vec![(0.0, real(TAU))],
                density,
                singularities: vec![(0.0, Singularity::Jump { left, right })],
                bound: TAU * J1_SUP * sqrt(abs(a)),
                decay_hint: 0.75,
            }
        }
        "x_sin_recip" => {
            let a = nonzero_a(p)?;
            let density: CFn = Arc::new(move |s: f64| {
                let z = 2.0 * sqrt(abs(a * s));
                let u = abs(s);
                real(PI * a * j0_unchecked(z) / u - 3.0 * PI * sqrt(abs(a)) * sgn(a) * j1_unchecked(z) / (2.0 * u * sqrt(u)))
            });
            AtomicPlusDensity {
                label,
                atoms: vec![(0.0, real(TAU * a))],
                density,
                singularities: vec![(0.0, Singularity::NonIntegrable)],
                bound: PI * abs(a) + 1.5 * PI * sqrt(abs(a)) * J1_SUP,
                decay_hint: 1.0,
            }
        }
        "atan_over" => {
            let a = nonzero_a(p)?;
            let density: CFn = Arc::new(move |s: f64| -I * (PI * sgn(a) * exp(-abs(a * s)) / s));
            AtomicPlusDensity { label, atoms: vec![], density, singularities: vec![(0.0, Singularity::PrincipalValue)], bound: PI, decay_hint: f64::INFINITY }
        }
        "atan_recip" => {
            let a = nonzero_a(p)?;
            // −(2iπ/|s|) e^{−|as|/2} sinh(as/2) = −iπ sgn(a)(1 − e^{−|as|})/s
            let density: CFn = Arc::new(move |s: f64| -I * (PI * sgn(a) * -libm::expm1(-abs(a * s)) / s));
            let lim = PI * a;
            AtomicPlusDensity {
                label,
                atoms: vec![],
                density,
                singularities: vec![(0.0, Singularity::Jump { left: I * lim, right: -I * lim })],
                bound: PI,
                decay_hint: 1.0,
            }
        }
        "gaussian" => {
            let sg = p.get_or("sigma", 1.0);
            let k = sg * sqrt(TAU);
            let density: CFn = Arc::new(move |s: f64| real(k * exp(-sg * sg * s * s / 2.0)));
            AtomicPlusDensity { label, atoms: vec![], density, singularities: vec![], bound: k, decay_hint: f64::INFINITY }
        }
        other => return Err(Error::UnknownName(other.to_string())),
    };
    d.validate()?;
    Ok(d)
}

/// `⟨D, g⟩ = Σ w_j g(x_j) + ∫ density·g`, with `|s − p| < exclude` removed
/// around non-integrable points.
fn pair_impl(d: &AtomicPlusDensity, m: &BVMultiplier, cfg: &QuadConfig, exclude: Option<f64>) -> Result<QuadResult> {
    let mut out = QuadResult::exact(d.atoms.iter().map(|&(x, w)| (m.g)(x) * w).sum());
    if d.bound == 0.0 && d.singularities.is_empty() {
        return Ok(out);
    }
    let (mut lo, mut hi, trunc) = m.window(d.bound, cfg.tol / 4.0);
    lo = lo.min(-2.0);
    hi = hi.max(2.0);
    let mut cuts: Vec<(f64, f64)> = Vec::new();
    let mut breaks: Vec<f64> = m.g_breaks.clone();
    let mut folds: Vec<(f64, f64)> = Vec::new();
    let mut sing: Vec<(f64, Singularity)> = d.singularities.iter().copied().filter(|s| s.0 > lo && s.0 < hi).collect();
    sing.sort_by(|a, b| a.0.total_cmp(&b.0));
    for (i, &(p, kind)) in sing.iter().enumerate() {
        let gap = |j: Option<&(f64, Singularity)>| j.map_or(f64::INFINITY, |q| abs(q.0 - p) / 2.0);
        let room = gap(i.checked_sub(1).and_then(|j| sing.get(j))).min(gap(sing.get(i + 1))).min(p - lo).min(hi - p).min(1.0);
        match kind {
            Singularity::Removable { .. } | Singularity::Jump { .. } => breaks.push(p),
            Singularity::PrincipalValue => {
                folds.push((p, room));
                cuts.push((p - room, p + room));
            }
            Singularity::NonIntegrable => match exclude {
                Some(e) if e < room => cuts.push((p - e, p + e)),
                _ => {
                    return Err(Error::HypothesisViolated(format!(
                        "{} has a density that is not locally integrable at {p}",
                        d.label
                    )))
                }
            },
        }
    }
    cuts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let dens = d.density.clone();
    let g = m.g.clone();
    let f = |s: f64| dens(s) * g(s);
    let pieces = cuts.len() + folds.len() + 1;
    let sub = QuadConfig { tol: (cfg.tol * 0.75) / pieces as f64, ..*cfg };
    let mut start = lo;
    let mut intervals: Vec<(f64, f64)> = Vec::new();
    for &(a, b) in &cuts {
        intervals.push((start, a));
        start = b;
    }
    intervals.push((start, hi));
    for (a, b) in intervals {
        if b > a {
            let bs: Vec<f64> = breaks.iter().copied().filter(|&x| x > a && x < b).collect();
            out = out + integrate_smooth(f, a, b, &bs, &sub)?;
        }
    }
    for (p, r) in folds {
        // Odd singular parts cancel in D(p+u)g(p+u) + D(p−u)g(p−u).
        let bs: Vec<f64> = breaks.iter().map(|&x| abs(x - p)).filter(|&u| u > 0.0 && u < r).collect();
        out = out + integrate_smooth(|u| f(p + u) + f(p - u), 0.0, r, &bs, &sub)?;
    }
    Ok(out.with_extra_err(trunc))
}

/// `⟨D, g⟩`.
pub fn pair_closed_form(d: &AtomicPlusDensity, m: &BVMultiplier, cfg: &QuadConfig) -> Result<QuadResult> {
    pair_impl(d, m, cfg, None)
}

#[derive(Debug, Clone, Copy)]
pub struct ClosedFormCheck {
    pub closed: QuadResult,
    pub exchange: QuadResult,
    pub residual: f64,
}

/// `|⟨D_name, g⟩ − ⟨f_name, ĝ⟩|`.
pub fn closed_form_residual(name: &str, p: &Params, m: &BVMultiplier, cfg: &QuadConfig) -> Result<ClosedFormCheck> {
    let d = closed_form(name, p)?;
    let f = catalog(name, p)?;
    let closed = pair_closed_form(&d, m, cfg)?;
    let exchange = exchange_rhs(&f, m, cfg)?;
    Ok(ClosedFormCheck { closed, exchange, residual: cabs(closed.value - exchange.value) })
}

/// For densities that are not locally integrable: the pairing with
/// `|s| < ε` removed, for several `ε`, next to the exchange value.
#[derive(Debug, Clone)]
pub struct Diagnostic {
    pub exchange: QuadResult,
    pub truncated: Vec<(f64, QuadResult)>,
}

pub fn closed_form_diagnostic(name: &str, p: &Params, m: &BVMultiplier, eps: &[f64], cfg: &QuadConfig) -> Result<Diagnostic> {
    let d = closed_form(name, p)?;
    let f = catalog(name, p)?;
    let exchange = exchange_rhs(&f, m, cfg)?;
    let mut truncated = Vec::new();
    for &e in eps {
        truncated.push((e, pair_impl(&d, m, cfg, Some(e))?));
    }
    Ok(Diagnostic { exchange, truncated })
}

#[derive(Debug, Clone, Copy)]
pub struct SumRule {
    /// `∫ (cos(a/t) − 1) dt`, with the truncation remainder in `err_est`.
    pub integral: QuadResult,
    /// The closed-form density at `s → 0`.
    pub density_limit: f64,
    pub residual: f64,
}

/// `∫_ℝ (cos(a/t) − 1) dt` against the density of the closed form at 0.
///
/// The integral is `f̂₁(0) − 2 + 2∫_1^T (cos(a/t) − 1) dt` plus a remainder
/// below `a²/T`.
pub fn cos_recip_sum_rule(a: f64, cfg: &QuadConfig) -> Result<SumRule> {
    let params = Params::new().with("a", a);
    let f = catalog("cos_recip", &params)?;
    let inner = crate::transform::f1_hat(&f, 0.0, cfg)?;
    let t_max = 1e6;
    let mut breaks = Vec::new();
    let mut b = 10.0;
    while b < t_max {
        breaks.push(b);
        b *= 10.0;
    }
    let outer = integrate_smooth(|t| real(cos(a / t) - 1.0), 1.0, t_max, &breaks, cfg)?;
    let integral = (inner - QuadResult::exact(real(2.0)) + outer * 2.0).with_extra_err(a * a / t_max);
    let d = closed_form("cos_recip", &params)?;
    let density_limit = d.eval_density(1e-14).re;
    Ok(SumRule { integral, density_limit, residual: abs(integral.value.re - density_limit) })
}
