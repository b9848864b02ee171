//! Bounded functions and the named catalog.
//!
//! Besides point evaluation, a [`BoundedFunction`] carries the structure the
//! transforms need: a sup bound, breakpoints, and wave expansions that make the
//! oscillatory integrals tractable. For `|t| ≥ 1` the function is written as
//! `Σ_j A_j(t) e^{iω_j t}` with slowly varying amplitudes (`far`); optionally,
//! for `|t| ≤ 1`, `f(1/u) = Σ_j B_j(u) e^{iν_j u}` for `|u| ≥ 1` (`near`), which
//! handles functions such as `cos(a/t)` that oscillate without bound at 0.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math::{abs, atan, binomial, cis, cos, exp, powf, real, sgn, sin, sinc, CFn, C64, E, FRAC_PI_2, I, TAU, ZERO};
use crate::quad::DecayBound;

/// One term `A(t) e^{iωt}` of a wave expansion.
#[derive(Clone)]
pub struct Wave {
    pub freq: f64,
    pub amp: CFn,
    /// Bound on `|A|` over the region where the expansion is used.
    pub bound: DecayBound,
}

impl Wave {
    pub fn new(freq: f64, amp: CFn, bound: DecayBound) -> Self {
        Wave { freq, amp, bound }
    }

    pub fn constant(freq: f64, c: C64) -> Self {
        Wave { freq, amp: Arc::new(move |_| c), bound: DecayBound::new(crate::math::cabs(c), 0.0) }
    }

    fn scaled(&self, k: C64) -> Wave {
        let a = self.amp.clone();
        Wave {
            freq: self.freq,
            amp: Arc::new(move |t| a(t) * k),
            bound: DecayBound::new(self.bound.c * crate::math::cabs(k), self.bound.beta),
        }
    }
}

/// Expansion of `u ↦ f(1/u)` on `|u| ≥ 1`.
#[derive(Clone)]
pub struct NearForm {
    pub waves: Vec<Wave>,
    /// Non-smooth points in the `u` variable.
    pub breakpoints: Vec<f64>,
}

/// An essentially bounded, piecewise smooth function with analytic metadata.
#[derive(Clone)]
pub struct BoundedFunction {
    pub label: String,
    pub eval: CFn,
    /// Upper bound for `ess sup |f|`.
    pub sup_bound: f64,
    /// Sorted points where `f` is not smooth.
    pub breakpoints: Vec<f64>,
    /// Spacings `L` such that `f` may be non-smooth at every `kL`.
    pub lattices: Vec<f64>,
    /// `|f(t) − lim f| = O(|t|^{-β})`, when known.
    pub decay_hint: Option<f64>,
    /// Wave expansion valid for `|t| ≥ 1`; empty means `f = 0` there.
    pub far: Vec<Wave>,
    pub near: Option<NearForm>,
    /// `f` vanishes outside this interval.
    pub support: Option<(f64, f64)>,
}

impl core::fmt::Debug for BoundedFunction {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("BoundedFunction")
            .field("label", &self.label)
            .field("sup_bound", &self.sup_bound)
            .field("breakpoints", &self.breakpoints)
            .finish_non_exhaustive()
    }
}

impl BoundedFunction {
    /// A function with no structure beyond its values and sup bound. The far
    /// expansion is the function itself as a zero-frequency amplitude, which is
    /// adequate when `f` is slowly varying for `|t| ≥ 1`.
    pub fn new(label: impl Into<String>, eval: CFn, sup_bound: f64) -> Self {
        let far = vec![Wave::new(0.0, eval.clone(), DecayBound::new(sup_bound, 0.0))];
        BoundedFunction {
            label: label.into(),
            eval,
            sup_bound,
            breakpoints: Vec::new(),
            lattices: Vec::new(),
            decay_hint: None,
            far,
            near: None,
            support: None,
        }
    }

    /// The user-supplied function of the catalog.
    pub fn custom(label: impl Into<String>, eval: CFn, sup_bound: f64, breakpoints: Vec<f64>) -> Result<Self> {
        if !(sup_bound >= 0.0) || !sup_bound.is_finite() {
            return Err(Error::param("sup bound must be finite and nonnegative"));
        }
        let mut f = BoundedFunction::new(label, eval, sup_bound);
        f.breakpoints = sorted(breakpoints);
        if f.breakpoints.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::param("breakpoints must be distinct"));
        }
        Ok(f)
    }

    pub fn eval(&self, t: f64) -> C64 {
        (self.eval)(t)
    }

    fn with_breaks(mut self, b: Vec<f64>) -> Self {
        self.breakpoints = sorted(b);
        self
    }

    /// Breakpoints together with lattice points inside `[lo, hi]`.
    pub fn breaks_in(&self, lo: f64, hi: f64) -> Vec<f64> {
        let mut v: Vec<f64> = self.breakpoints.iter().copied().filter(|&b| b >= lo && b <= hi).collect();
        for &l in &self.lattices {
            let l = abs(l);
            if l == 0.0 {
                continue;
            }
            let mut k = crate::math::ceil(lo / l);
            while k * l <= hi {
                v.push(k * l);
                k += 1.0;
            }
        }
        if let Some((a, b)) = self.support {
            v.extend([a, b].iter().copied().filter(|&x| x >= lo && x <= hi));
        }
        sorted(v)
    }

    /// `true` when `f` vanishes on `|t| > 1`.
    pub fn vanishes_outside_unit(&self) -> bool {
        self.far.is_empty() || matches!(self.support, Some((a, b)) if a >= -1.0 && b <= 1.0)
    }

    /// Frequencies of the far expansion, where `f̂` may carry point masses.
    pub fn spectral_marks(&self) -> Vec<f64> {
        sorted(self.far.iter().map(|w| w.freq).collect())
    }

    /// The near form, or the default `u ↦ f(1/u)` as a zero-frequency amplitude.
    pub fn near_or_default(&self) -> NearForm {
        if let Some(n) = &self.near {
            return n.clone();
        }
        let e = self.eval.clone();
        let breaks = self.breakpoints.iter().filter(|&&b| b != 0.0 && abs(b) <= 1.0).map(|&b| 1.0 / b).collect();
        NearForm {
            waves: vec![Wave::new(0.0, Arc::new(move |u: f64| e(1.0 / u)), DecayBound::new(self.sup_bound, 0.0))],
            breakpoints: sorted(breaks),
        }
    }

    /// `k·f`.
    pub fn scale(&self, k: C64) -> BoundedFunction {
        let e = self.eval.clone();
        BoundedFunction {
            label: format!("({})*({})", fmt_c(k), self.label),
            eval: Arc::new(move |t| e(t) * k),
            sup_bound: self.sup_bound * crate::math::cabs(k),
            breakpoints: self.breakpoints.clone(),
            lattices: self.lattices.clone(),
            decay_hint: self.decay_hint,
            far: self.far.iter().map(|w| w.scaled(k)).collect(),
            near: self.near.as_ref().map(|n| NearForm {
                waves: n.waves.iter().map(|w| w.scaled(k)).collect(),
                breakpoints: n.breakpoints.clone(),
            }),
            support: self.support,
        }
    }

    /// `f + g`.
    pub fn add(&self, g: &BoundedFunction) -> BoundedFunction {
        let (e1, e2) = (self.eval.clone(), g.eval.clone());
        let mut breaks = self.breakpoints.clone();
        breaks.extend_from_slice(&g.breakpoints);
        let mut lattices = self.lattices.clone();
        lattices.extend_from_slice(&g.lattices);
        let mut far = self.far.clone();
        far.extend(g.far.iter().cloned());
        let near = match (&self.near, &g.near) {
            (None, None) => None,
            _ => {
                let (a, b) = (self.near_or_default(), g.near_or_default());
                let mut waves = a.waves;
                waves.extend(b.waves);
                let mut bps = a.breakpoints;
                bps.extend(b.breakpoints);
                Some(NearForm { waves, breakpoints: sorted(bps) })
            }
        };
        let support = match (self.support, g.support) {
            (Some((a, b)), Some((c, d))) => Some((a.min(c), b.max(d))),
            _ => None,
        };
        BoundedFunction {
            label: format!("({})+({})", self.label, g.label),
            eval: Arc::new(move |t| e1(t) + e2(t)),
            sup_bound: self.sup_bound + g.sup_bound,
            breakpoints: sorted(breaks),
            lattices,
            decay_hint: match (self.decay_hint, g.decay_hint) {
                (Some(x), Some(y)) => Some(x.min(y)),
                _ => None,
            },
            far,
            near,
            support,
        }
    }

    /// Largest `|f|` over `n` evenly spaced points of `[lo, hi]`; a check on
    /// `sup_bound`, never a replacement for it.
    pub fn grid_sup(&self, lo: f64, hi: f64, n: usize) -> f64 {
        let mut m: f64 = 0.0;
        for k in 0..n {
            let t = lo + (hi - lo) * k as f64 / (n.max(2) - 1) as f64;
            m = m.max(crate::math::cabs(self.eval(t)));
        }
        m
    }
}

fn fmt_c(k: C64) -> String {
    if k.im == 0.0 {
        format!("{}", k.re)
    } else {
        format!("{}{:+}i", k.re, k.im)
    }
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.retain(|x| x.is_finite());
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

/// `f = f₁ + f₂` with `f₁ = f·χ_{[−1,1]}`.
#[derive(Clone, Debug)]
pub struct SplitPair {
    pub f1: BoundedFunction,
    pub f2: BoundedFunction,
}

pub fn split(f: &BoundedFunction) -> SplitPair {
    let (e1, e2) = (f.eval.clone(), f.eval.clone());
    let mut b1: Vec<f64> = f.breakpoints.iter().copied().filter(|&b| abs(b) <= 1.0).collect();
    b1.extend([-1.0, 1.0]);
    let mut b2: Vec<f64> = f.breakpoints.iter().copied().filter(|&b| abs(b) >= 1.0).collect();
    b2.extend([-1.0, 1.0]);
    let support1 = match f.support {
        Some((a, b)) => Some((a.max(-1.0), b.min(1.0))),
        None => Some((-1.0, 1.0)),
    };
    let f1 = BoundedFunction {
        label: format!("{}|inner", f.label),
        eval: Arc::new(move |t| if abs(t) <= 1.0 { e1(t) } else { ZERO }),
        sup_bound: f.sup_bound,
        breakpoints: sorted(b1),
        lattices: f.lattices.clone(),
        decay_hint: None,
        far: Vec::new(),
        near: f.near.clone(),
        support: support1,
    };
    let f2 = BoundedFunction {
        label: format!("{}|outer", f.label),
        eval: Arc::new(move |t| if abs(t) <= 1.0 { ZERO } else { e2(t) }),
        sup_bound: f.sup_bound,
        breakpoints: sorted(b2),
        lattices: f.lattices.clone(),
        decay_hint: f.decay_hint,
        far: if f.vanishes_outside_unit() { Vec::new() } else { f.far.clone() },
        near: Some(NearForm { waves: Vec::new(), breakpoints: Vec::new() }),
        support: f.support,
    };
    SplitPair { f1, f2 }
}

/// Named parameters, as in `cos_recip:a=2`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Params {
    entries: Vec<(String, f64)>,
}

impl Params {
    pub fn new() -> Self {
        Params::default()
    }

    pub fn with(mut self, key: &str, value: f64) -> Self {
        self.set(key, value);
        self
    }

    pub fn set(&mut self, key: &str, value: f64) {
        match self.entries.iter_mut().find(|e| e.0 == key) {
            Some(e) => e.1 = value,
            None => self.entries.push((key.to_string(), value)),
        }
    }

    pub fn get(&self, key: &str) -> Option<f64> {
        self.entries.iter().find(|e| e.0 == key).map(|e| e.1)
    }

    pub fn get_or(&self, key: &str, default: f64) -> f64 {
        self.get(key).unwrap_or(default)
    }

    pub fn require(&self, key: &str) -> Result<f64> {
        self.get(key).ok_or_else(|| Error::param(format!("missing parameter `{key}`")))
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.0.as_str())
    }

    /// Rejects keys outside `allowed`.
    pub fn check_keys(&self, name: &str, allowed: &[&str]) -> Result<()> {
        for k in self.keys() {
            if !allowed.contains(&k) {
                return Err(Error::param(format!("`{name}` takes no parameter `{k}`")));
            }
        }
        Ok(())
    }
}

pub const CATALOG_NAMES: &[&str] = &[
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
    "custom",
];

/// Parameter names of a catalog entry, in positional order.
pub fn param_keys(name: &str) -> Option<&'static [&'static str]> {
    Some(match name {
        "const" => &["c"],
        "indicator" => &["lo", "hi"],
        "sgn" => &[],
        "expwave" => &["x"],
        "cos_recip" | "exp_i_recip" | "x_sin_recip" | "atan_over" | "atan_recip" => &["a"],
        "cos_recip_pow" => &["a", "m"],
        "gaussian" => &["sigma"],
        _ => return None,
    })
}

fn nonzero(p: &Params, key: &str, name: &str) -> Result<f64> {
    let a = p.require(key)?;
    if a == 0.0 || !a.is_finite() {
        return Err(Error::param(format!("`{name}` needs a finite nonzero `{key}`")));
    }
    Ok(a)
}

fn finite(p: &Params, key: &str, default: f64) -> Result<f64> {
    let v = p.get_or(key, default);
    if !v.is_finite() {
        return Err(Error::param(format!("`{key}` must be finite")));
    }
    Ok(v)
}

/// Builds a catalog function by name.
pub fn catalog(name: &str, p: &Params) -> Result<BoundedFunction> {
    let label = label_of(name, p);
    let f = match name {
        "const" => {
            p.check_keys(name, &["c"])?;
            let c = finite(p, "c", 1.0)?;
            let mut f = BoundedFunction::new(label, Arc::new(move |_| real(c)), abs(c));
            f.far = vec![Wave::constant(0.0, real(c))];
            f
        }
        "indicator" => {
            p.check_keys(name, &["lo", "hi"])?;
            let lo = finite(p, "lo", -1.0)?;
            let hi = finite(p, "hi", 1.0)?;
            if !(lo < hi) {
                return Err(Error::param("indicator needs lo < hi"));
            }
            let e: CFn = Arc::new(move |t| real(if t >= lo && t <= hi { 1.0 } else { 0.0 }));
            let mut f = BoundedFunction::new(label, e, 1.0).with_breaks(vec![lo, hi]);
            f.support = Some((lo, hi));
            if lo >= -1.0 && hi <= 1.0 {
                f.far.clear();
            }
            f
        }
        "sgn" => {
            p.check_keys(name, &[])?;
            BoundedFunction::new(label, Arc::new(|t| real(sgn(t))), 1.0).with_breaks(vec![0.0])
        }
        "expwave" => {
            p.check_keys(name, &["x"])?;
            let x = finite(p, "x", 0.0)?;
            let mut f = BoundedFunction::new(label, Arc::new(move |t| cis(x * t)), 1.0);
            f.far = vec![Wave::constant(x, real(1.0))];
            f
        }
        "cos_recip" => {
            p.check_keys(name, &["a"])?;
            let a = nonzero(p, "a", name)?;
            cos_pow(label, a, 1)
        }
        "cos_recip_pow" => {
            p.check_keys(name, &["a", "m"])?;
            let a = finite(p, "a", 1.0)?;
            if a == 0.0 {
                return Err(Error::param("`cos_recip_pow` needs a nonzero `a`"));
            }
            let m = p.require("m")?;
            if libm::trunc(m) != m || !(1.0..=8.0).contains(&m) {
                return Err(Error::param("`m` must be an integer in 1..=8"));
            }
            cos_pow(label, a, m as u32)
        }
        "exp_i_recip" => {
            p.check_keys(name, &["a"])?;
            let a = nonzero(p, "a", name)?;
            let e: CFn = Arc::new(move |t| if t == 0.0 { ZERO } else { cis(a / t) });
            let mut f = BoundedFunction::new(label, e, 1.0).with_breaks(vec![0.0]);
            f.near = Some(NearForm { waves: vec![Wave::constant(a, real(1.0))], breakpoints: Vec::new() });
            f.decay_hint = Some(1.0);
            f
        }
        "x_sin_recip" => {
            p.check_keys(name, &["a"])?;
            let a = nonzero(p, "a", name)?;
            // t sin(a/t) = a sinc(a/t); the value at 0 is the limit 0.
            let e: CFn = Arc::new(move |t| if t == 0.0 { ZERO } else { real(a * sinc(a / t)) });
            let mut f = BoundedFunction::new(label, e, abs(a)).with_breaks(vec![0.0]);
            // f(1/u) = sin(au)/u = (e^{iau} − e^{−iau}) / (2iu)
            let plus: CFn = Arc::new(|u: f64| -I / (2.0 * u));
            let minus: CFn = Arc::new(|u: f64| I / (2.0 * u));
            f.near = Some(NearForm {
                waves: vec![
                    Wave::new(a, plus, DecayBound::new(0.5, 1.0)),
                    Wave::new(-a, minus, DecayBound::new(0.5, 1.0)),
                ],
                breakpoints: Vec::new(),
            });
            f.decay_hint = Some(2.0);
            f
        }
        "atan_over" => {
            p.check_keys(name, &["a"])?;
            let a = nonzero(p, "a", name)?;
            let mut f = BoundedFunction::new(label, Arc::new(move |t| real(atan(t / a))), FRAC_PI_2);
            f.decay_hint = Some(1.0);
            f
        }
        "atan_recip" => {
            p.check_keys(name, &["a"])?;
            let a = nonzero(p, "a", name)?;
            let e: CFn = Arc::new(move |t| if t == 0.0 { ZERO } else { real(atan(a / t)) });
            let mut f = BoundedFunction::new(label, e.clone(), FRAC_PI_2).with_breaks(vec![0.0]);
            f.far = vec![Wave::new(0.0, e, DecayBound::new(abs(a), 1.0))];
            f.decay_hint = Some(1.0);
            f
        }
        "gaussian" => {
            p.check_keys(name, &["sigma"])?;
            let s = finite(p, "sigma", 1.0)?;
            if !(s > 0.0) {
                return Err(Error::param("`gaussian` needs sigma > 0"));
            }
            let e: CFn = Arc::new(move |t| real(exp(-t * t / (2.0 * s * s))));
            let mut f = BoundedFunction::new(label, e.clone(), 1.0);
            // t⁴ e^{−t²/2σ²} ≤ 16σ⁴/e²
            f.far = vec![Wave::new(0.0, e, DecayBound::new(16.0 * powf(s, 4.0) / (E * E), 4.0))];
            f.decay_hint = Some(f64::INFINITY);
            f
        }
        "custom" => {
            return Err(Error::param("`custom` functions are built with BoundedFunction::custom"));
        }
        other => return Err(Error::UnknownName(other.to_string())),
    };
    Ok(f)
}

/// `cos^m(a/t)` with the binomial near form
/// `cos^m(au) = 2^{−m} Σ_j C(m,j) e^{i(m−2j)au}`.
fn cos_pow(label: String, a: f64, m: u32) -> BoundedFunction {
    let e: CFn = Arc::new(move |t| if t == 0.0 { ZERO } else { real(powf(cos(a / t), f64::from(m))) });
    let mut f = BoundedFunction::new(label, e, 1.0).with_breaks(vec![0.0]);
    let scale = powf(2.0, -f64::from(m));
    let waves = (0..=m)
        .map(|j| Wave::constant(f64::from(m) * a - 2.0 * f64::from(j) * a, real(scale * binomial(m, j))))
        .collect();
    f.near = Some(NearForm { waves, breakpoints: Vec::new() });
    f.decay_hint = Some(2.0);
    f
}

fn label_of(name: &str, p: &Params) -> String {
    let mut s = String::from(name);
    let mut first = true;
    for (k, v) in &p.entries {
        s.push(if first { ':' } else { ',' });
        first = false;
        s.push_str(&format!("{k}={v}"));
    }
    s
}

/// `f_{s,h}(x) = e^{isx}(1 − e^{ihx})/|1 − e^{ihx}|`, and `e^{isx}` where
/// `e^{ihx} = 1`. Since `1 − e^{iθ} = −2i sin(θ/2) e^{iθ/2}`, this is
/// `−i sgn(sin(hx/2)) e^{i(s+h/2)x}`.
pub fn sharpness_witness(s: f64, h: f64) -> Result<BoundedFunction> {
    if h == 0.0 || !h.is_finite() || !s.is_finite() {
        return Err(Error::param("the witness needs finite s and nonzero finite h"));
    }
    let e: CFn = Arc::new(move |x: f64| {
        let sg = sgn(sin(h * x / 2.0));
        if sg == 0.0 {
            cis(s * x)
        } else {
            -I * sg * cis((s + h / 2.0) * x)
        }
    });
    let amp: CFn = Arc::new(move |x: f64| -I * sgn(sin(h * x / 2.0)));
    let mut f = BoundedFunction::new(format!("witness:s={s},h={h}"), e, 1.0).with_breaks(vec![0.0]);
    f.lattices = vec![TAU / abs(h)];
    f.far = vec![Wave::new(s + h / 2.0, amp, DecayBound::new(1.0, 0.0))];
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::{cabs, PI};
    use crate::sampling::Halton;

    fn cat(name: &str, p: Params) -> BoundedFunction {
        catalog(name, &p).unwrap()
    }

    #[test]
    fn sgn_at_three() {
        let f = cat("sgn", Params::new());
        assert_eq!(f.eval(3.0), real(1.0));
        assert_eq!(f.sup_bound, 1.0);
        assert_eq!(f.breakpoints, vec![0.0]);
    }

    #[test]
    fn cos_recip_at_two_over_pi() {
        let f = cat("cos_recip", Params::new().with("a", 2.0));
        assert!(cabs(f.eval(2.0 / PI) - real(-1.0)) < 1e-15);
        assert_eq!(f.eval(0.0), ZERO);
    }

    #[test]
    fn x_sin_recip_bound_against_dense_grid() {
        let f = cat("x_sin_recip", Params::new().with("a", 1.0));
        assert_eq!(f.sup_bound, 1.0);
        let m = f.grid_sup(-50.0, 50.0, 200_001);
        assert!(m <= 1.0 && m > 0.999, "{m}");
    }

    #[test]
    fn zero_parameter_rejected() {
        for name in ["cos_recip", "exp_i_recip", "x_sin_recip", "atan_over", "atan_recip"] {
            assert!(matches!(catalog(name, &Params::new().with("a", 0.0)), Err(Error::InvalidParameter(_))));
        }
        assert!(matches!(catalog("nope", &Params::new()), Err(Error::UnknownName(_))));
        assert!(catalog("cos_recip_pow", &Params::new().with("a", 1.0).with("m", 9.0)).is_err());
        assert!(catalog("sgn", &Params::new().with("a", 1.0)).is_err());
    }

    fn every_entry() -> Vec<BoundedFunction> {
        let a = |v| Params::new().with("a", v);
        vec![
            cat("const", Params::new().with("c", -2.5)),
            cat("indicator", Params::new().with("lo", -0.5).with("hi", 3.0)),
            cat("sgn", Params::new()),
            cat("expwave", Params::new().with("x", 1.5)),
            cat("cos_recip", a(1.0)),
            cat("cos_recip_pow", Params::new().with("a", -2.0).with("m", 3.0)),
            cat("exp_i_recip", a(-1.0)),
            cat("x_sin_recip", a(2.0)),
            cat("atan_over", a(0.5)),
            cat("atan_recip", a(-1.0)),
            cat("gaussian", Params::new().with("sigma", 0.7)),
            sharpness_witness(0.3, 1e-2).unwrap(),
        ]
    }

    #[test]
    fn sup_bound_holds_on_quasi_random_points() {
        for f in every_entry() {
            let mut h = Halton::new(7);
            for _ in 0..10_000 {
                let u = h.next_unit();
                let t = 200.0 * (u - 0.5);
                assert!(cabs(f.eval(t)) <= f.sup_bound * (1.0 + 1e-12), "{} at {t}", f.label);
            }
        }
    }

    #[test]
    fn expansions_reproduce_values() {
        let mut h = Halton::new(3);
        for f in every_entry() {
            for _ in 0..500 {
                let u = h.next_unit();
                let t = if u < 0.5 { -1.0 - 60.0 * u } else { 1.0 + 60.0 * (u - 0.5) };
                if f.breaks_in(t - 1e-9, t + 1e-9).is_empty() && !f.vanishes_outside_unit() {
                    let s: C64 = f.far.iter().map(|w| (w.amp)(t) * cis(w.freq * t)).sum();
                    assert!(cabs(s - f.eval(t)) < 1e-13, "{} far at {t}", f.label);
                }
                if let Some(n) = &f.near {
                    let s: C64 = n.waves.iter().map(|w| (w.amp)(t) * cis(w.freq * t)).sum();
                    assert!(cabs(s - f.eval(1.0 / t)) < 1e-12, "{} near at {t}", f.label);
                }
            }
        }
    }

    #[test]
    fn wave_bounds_hold() {
        let mut h = Halton::new(11);
        for f in every_entry() {
            for _ in 0..300 {
                let t = 1.0 + 1e3 * h.next_unit();
                for w in &f.far {
                    for tt in [t, -t] {
                        let lim = w.bound.c * powf(t, -w.bound.beta) * (1.0 + 1e-12);
                        assert!(cabs((w.amp)(tt)) <= lim, "{} far bound at {tt}", f.label);
                    }
                }
            }
        }
    }

    #[test]
    fn split_parts() {
        let sp = split(&cat("indicator", Params::new()));
        assert!(sp.f2.vanishes_outside_unit());
        assert_eq!(sp.f2.eval(0.5), ZERO);
        let sp = split(&cat("const", Params::new().with("c", 1.0)));
        assert_eq!(sp.f1.eval(0.3), real(1.0));
        assert_eq!(sp.f1.eval(1.2), ZERO);
        let sg = cat("sgn", Params::new());
        let sp = split(&sg);
        assert_eq!(sp.f2.eval(-3.0), real(-1.0));
        assert_eq!(sp.f2.eval(0.7), ZERO);
        for t in [-4.0, -0.3, 0.2, 1.0, 2.5] {
            assert_eq!(sp.f1.eval(t) + sp.f2.eval(t), sg.eval(t));
        }
        assert_eq!(sp.f1.sup_bound, 1.0);
        assert_eq!(sp.f2.sup_bound, 1.0);
    }

    #[test]
    fn split_is_idempotent_on_inner_part() {
        let f = cat("cos_recip", Params::new().with("a", 1.0));
        let inner = split(&f).f1;
        let again = split(&inner);
        assert!(again.f2.vanishes_outside_unit());
        for t in [-3.0, 1.5, 7.0] {
            assert_eq!(again.f2.eval(t), ZERO);
        }
    }

    #[test]
    fn linear_combination_pointwise() {
        let f = cat("cos_recip", Params::new().with("a", 1.0));
        let g = cat("atan_over", Params::new().with("a", 2.0));
        let k = C64::new(0.5, -1.5);
        let comb = f.scale(k).add(&g);
        for t in [-5.0, -0.2, 0.013, 0.9, 3.3] {
            let want = f.eval(t) * k + g.eval(t);
            assert!(cabs(comb.eval(t) - want) < 1e-14);
        }
        assert!(comb.near.is_some());
    }

    #[test]
    fn witness_values() {
        let w = sharpness_witness(0.0, PI).unwrap();
        assert!(cabs(w.eval(1.0) - real(1.0)) < 1e-15);
        let w = sharpness_witness(0.4, 0.3).unwrap();
        for t in [0.5, -2.0, 11.0] {
            let z = cis(0.3 * t);
            let direct = cis(0.4 * t) * (real(1.0) - z) / cabs(real(1.0) - z);
            assert!(cabs(w.eval(t) - direct) < 1e-14);
        }
        assert_eq!(w.eval(0.0), real(1.0));
    }
}
