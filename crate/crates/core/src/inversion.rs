//! Summability-kernel inversion `I_a[f] = f ∗ ψ_a`, computed through the
//! pairing `(1/2π)⟨f̂, e_{ix}ψ̂_a⟩` and checked against direct convolution.
//!
//! Kernels are normalized to unit mass, so `ψ̂_a(0) = 1`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fncat::{BoundedFunction, Wave};
use crate::math::{abs, cabs, cis, cos, erfc, exp, real, sin, sqrt, CFn, RFn, C64, I, PI, TAU};
use crate::pairing::{pair_with, BVMultiplier, KernelMultiplierParts};
use crate::profile::{integrate_against, Profile};
use crate::quad::{integrate_smooth, BVDecomposition, DecayBound, QuadConfig, QuadResult};
use crate::transform::DistributionalTransform;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SummabilityKernel {
    /// `ψ_a(t) = 2a sin²(t/2a)/(πt²)`, `ψ̂_a(s) = (1 − a|s|)_+`.
    Fejer,
    /// `ψ_a(t) = a/(π(t² + a²))`, `ψ̂_a(s) = e^{−a|s|}`.
    Poisson,
    /// `ψ_a(t) = e^{−t²/4a²}/(2√π a)`, `ψ̂_a(s) = e^{−a²s²}`.
    Gauss,
    /// `ψ_a(t) = sin(t/a)/(πt)`; not integrable.
    Dirichlet,
}

pub const KERNEL_NAMES: &[&str] = &["fejer", "poisson", "gauss", "dirichlet"];

// T(x) = (1 − cos x)/x² and sinc, with two derivatives, by series near 0.
fn fejer_core(x: f64) -> [f64; 3] {
    if abs(x) < 1.0 {
        let (mut t, mut d1, mut d2) = (0.0, 0.0, 0.0);
        let mut fact = 2.0;
        let mut sign = 1.0;
        for k in 0..10 {
            let n = 2 * k;
            let c = sign / fact;
            t += c * crate::math::powf(x, n as f64);
            if n >= 1 {
                d1 += c * n as f64 * crate::math::powf(x, (n - 1) as f64);
            }
            if n >= 2 {
                d2 += c * (n * (n - 1)) as f64 * crate::math::powf(x, (n - 2) as f64);
            }
            fact *= ((n + 3) * (n + 4)) as f64;
            sign = -sign;
        }
        return [t, d1, d2];
    }
    let (s, c) = (sin(x), cos(x));
    let (x2, x3, x4) = (x * x, x * x * x, x * x * x * x);
    [(1.0 - c) / x2, s / x2 - 2.0 * (1.0 - c) / x3, c / x2 - 4.0 * s / x3 + 6.0 * (1.0 - c) / x4]
}

fn sinc_core(x: f64) -> [f64; 3] {
    if abs(x) < 1e-2 {
        let x2 = x * x;
        return [1.0 - x2 / 6.0 + x2 * x2 / 120.0, -x / 3.0 + x * x2 / 30.0, -1.0 / 3.0 + x2 / 10.0 - x2 * x2 / 168.0];
    }
    let (s, c) = (sin(x), cos(x));
    [s / x, (x * c - s) / (x * x), (-x * x * s - 2.0 * x * c + 2.0 * s) / (x * x * x)]
}

impl SummabilityKernel {
    pub fn from_name(name: &str) -> Result<Self> {
        Ok(match name {
            "fejer" => Self::Fejer,
            "poisson" => Self::Poisson,
            "gauss" => Self::Gauss,
            "dirichlet" => Self::Dirichlet,
            other => return Err(Error::UnknownName(other.to_string())),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Fejer => "fejer",
            Self::Poisson => "poisson",
            Self::Gauss => "gauss",
            Self::Dirichlet => "dirichlet",
        }
    }

    /// `ψ ∈ L¹` with unit mass and `ψ̂ ∈ L¹`.
    pub fn satisfies_theorem(self) -> bool {
        !matches!(self, Self::Dirichlet)
    }

    /// `t²ψ`, `t²ψ′`, `t²ψ″` all integrable.
    pub fn satisfies_corollary(self) -> bool {
        matches!(self, Self::Gauss)
    }

    pub fn psi_a(self, a: f64, t: f64) -> f64 {
        self.derivatives(a, t)[0]
    }

    /// `ψ_a`, `ψ_a′`, `ψ_a″` at `t`.
    pub fn derivatives(self, a: f64, t: f64) -> [f64; 3] {
        match self {
            Self::Fejer => {
                let [v, d1, d2] = fejer_core(t / a);
                [v / (PI * a), d1 / (PI * a * a), d2 / (PI * a * a * a)]
            }
            Self::Poisson => {
                let q = t * t + a * a;
                [a / (PI * q), -2.0 * a * t / (PI * q * q), a * (6.0 * t * t - 2.0 * a * a) / (PI * q * q * q)]
            }
            Self::Gauss => {
                let v = exp(-t * t / (4.0 * a * a)) / (2.0 * sqrt(PI) * a);
                [v, -t / (2.0 * a * a) * v, (t * t / (4.0 * a * a * a * a) - 1.0 / (2.0 * a * a)) * v]
            }
            Self::Dirichlet => {
                let [v, d1, d2] = sinc_core(t / a);
                [v / (PI * a), d1 / (PI * a * a), d2 / (PI * a * a * a)]
            }
        }
    }

    pub fn psihat_a(self, a: f64, s: f64) -> f64 {
        match self {
            Self::Fejer => (1.0 - a * abs(s)).max(0.0),
            Self::Poisson => exp(-a * abs(s)),
            Self::Gauss => exp(-a * a * s * s),
            Self::Dirichlet => {
                if abs(s) <= 1.0 / a {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    fn rejected(self) -> Error {
        Error::KernelRejected(format!(
            "the {} kernel is not integrable, so f ∗ ψ_a is not defined for every bounded f",
            self.name()
        ))
    }

    /// `k·ψ_a` as a weight profile.
    pub fn profile(self, a: f64, k: f64) -> Result<Profile> {
        check_a(a)?;
        let label = format!("{}:a={a}", self.name());
        let e: CFn = Arc::new(move |t| real(k * self.psi_a(a, t)));
        Ok(match self {
            Self::Fejer => {
                let c = k * a / PI;
                let far = vec![
                    Wave::new(0.0, Arc::new(move |t: f64| real(c / (t * t))), DecayBound::new(c, 2.0)),
                    Wave::new(1.0 / a, Arc::new(move |t: f64| real(-c / (2.0 * t * t))), DecayBound::new(c / 2.0, 2.0)),
                    Wave::new(-1.0 / a, Arc::new(move |t: f64| real(-c / (2.0 * t * t))), DecayBound::new(c / 2.0, 2.0)),
                ];
                Profile::power(label, e, k / (TAU * a), k, 1.0, far)
            }
            Self::Poisson => {
                let far = vec![Wave::new(0.0, e.clone(), DecayBound::new(k * a / PI, 2.0))];
                Profile::power(label, e, k / (PI * a), k, 1.0, far)
            }
            Self::Gauss => {
                let tail: RFn = Arc::new(move |r: f64| k * erfc(r / (2.0 * a)));
                Profile::rapid(label, e, k / (2.0 * sqrt(PI) * a), k, 0.0, tail)
            }
            Self::Dirichlet => return Err(self.rejected()),
        })
    }

    /// The multiplier `s ↦ e^{ixs} ψ̂_a(s)`, whose transform is `2π ψ_a(x − ·)`.
    pub fn multiplier_of(self, a: f64, x: f64) -> Result<BVMultiplier> {
        check_a(a)?;
        if !x.is_finite() {
            return Err(Error::param("x must be finite"));
        }
        let label = format!("{}:a={a},x={x}", self.name());
        let parts = match self {
            Self::Fejer => {
                let r = 1.0 / a;
                let g: CFn = Arc::new(move |s: f64| cis(x * s) * (1.0 - a * abs(s)).max(0.0));
                let h: CFn = Arc::new(move |s: f64| {
                    if s < -r || s >= r {
                        return C64::new(0.0, 0.0);
                    }
                    let sg = if s >= 0.0 { 1.0 } else { -1.0 };
                    cis(x * s) * (I * x * (1.0 - a * abs(s)) - a * sg)
                });
                let density: CFn = Arc::new(move |s: f64| {
                    if s <= -r || s >= r {
                        return C64::new(0.0, 0.0);
                    }
                    let sg = if s >= 0.0 { 1.0 } else { -1.0 };
                    cis(x * s) * (real(-x * x * (1.0 - a * abs(s))) - I * (2.0 * x * a * sg))
                });
                let jumps = vec![(-r, cis(-x * r) * a), (0.0, real(-2.0 * a)), (r, cis(x * r) * a)];
                let mass = integrate_smooth(|s| real(cabs(density(s))), -r, r, &[0.0], &QuadConfig::with_tol(1e-11))?;
                KernelMultiplierParts {
                    label,
                    g,
                    h,
                    dh: BVDecomposition {
                        density,
                        density_breaks: vec![-r, 0.0, r],
                        jumps,
                        total_variation: 4.0 * a + mass.value.re + mass.err_est,
                        support_radius: r,
                        tail_mass: None,
                    },
                    g_l1: r,
                    g_breaks: vec![-r, 0.0, r],
                    support: Some((-r, r)),
                    g_tail: Arc::new(move |rr: f64| if rr >= r { 0.0 } else { r }),
                    ghat: self.profile(a, TAU)?.reflect_shift(x),
                    smooth: false,
                }
            }
            Self::Poisson => {
                let g: CFn = Arc::new(move |s: f64| cis(x * s) * exp(-a * abs(s)));
                let hf = move |s: f64| {
                    let sg = if s >= 0.0 { 1.0 } else { -1.0 };
                    I * x - a * sg
                };
                let g1 = g.clone();
                let h: CFn = Arc::new(move |s| g1(s) * hf(s));
                let g2 = g.clone();
                let density: CFn = Arc::new(move |s| {
                    let w = hf(s);
                    g2(s) * w * w
                });
                let m = 2.0 * (x * x + a * a) / a;
                KernelMultiplierParts {
                    label,
                    g,
                    h,
                    dh: BVDecomposition {
                        density,
                        density_breaks: vec![0.0],
                        jumps: vec![(0.0, real(-2.0 * a))],
                        total_variation: 2.0 * a + m,
                        support_radius: f64::INFINITY,
                        tail_mass: Some(Arc::new(move |r: f64| m * exp(-a * r.max(0.0)))),
                    },
                    g_l1: 2.0 / a,
                    g_breaks: vec![0.0],
                    support: None,
                    g_tail: Arc::new(move |r: f64| 2.0 * exp(-a * r.max(0.0)) / a),
                    ghat: self.profile(a, TAU)?.reflect_shift(x),
                    smooth: false,
                }
            }
            Self::Gauss => {
                let a2 = a * a;
                let g: CFn = Arc::new(move |s: f64| cis(x * s) * exp(-a2 * s * s));
                let g1 = g.clone();
                let h: CFn = Arc::new(move |s: f64| g1(s) * (I * x - 2.0 * a2 * s));
                let g2 = g.clone();
                let density: CFn = Arc::new(move |s: f64| {
                    let w = I * x - 2.0 * a2 * s;
                    g2(s) * (w * w - 2.0 * a2)
                });
                let sp = sqrt(PI);
                let tail_mass: RFn = Arc::new(move |r: f64| {
                    let r = r.max(0.0);
                    let e = erfc(a * r);
                    (x * x + 2.0 * a2) * sp / a * e + 4.0 * a2 * a2 * (r * exp(-a2 * r * r) / a2 + sp * e / (2.0 * a2 * a))
                });
                let (rad, _) = {
                    let mut r = 1.0;
                    while tail_mass(r) > 1e-13 {
                        r *= 2.0;
                    }
                    (r, ())
                };
                let mass = integrate_smooth(|s| real(cabs(density(s))), -rad, rad, &[], &QuadConfig::with_tol(1e-11))?;
                KernelMultiplierParts {
                    label,
                    g,
                    h,
                    dh: BVDecomposition {
                        density,
                        density_breaks: Vec::new(),
                        jumps: Vec::new(),
                        total_variation: mass.value.re + mass.err_est + tail_mass(rad),
                        support_radius: f64::INFINITY,
                        tail_mass: Some(tail_mass),
                    },
                    g_l1: sp / a,
                    g_breaks: Vec::new(),
                    support: None,
                    g_tail: Arc::new(move |r: f64| sp / a * erfc(a * r.max(0.0))),
                    ghat: self.profile(a, TAU)?.reflect_shift(x),
                    smooth: true,
                }
            }
            Self::Dirichlet => return Err(self.rejected()),
        };
        Ok(parts.into())
    }
}

fn check_a(a: f64) -> Result<()> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::param("the kernel scale a must be positive and finite"));
    }
    Ok(())
}

/// `I_a[f](x) = (1/2π) ⟨f̂, e_{ix}ψ̂_a⟩`, reusing the memoized primitives of `t`.
pub fn invert_at_with(t: &DistributionalTransform, k: SummabilityKernel, a: f64, x: f64, cfg: &QuadConfig) -> Result<QuadResult> {
    if !k.satisfies_theorem() {
        return Err(k.rejected());
    }
    let m = k.multiplier_of(a, x)?;
    let r = pair_with(t, &m, &QuadConfig { tol: cfg.tol * TAU, ..*cfg })?;
    Ok(r.scale(real(1.0 / TAU)))
}

pub fn invert_at(f: &BoundedFunction, k: SummabilityKernel, a: f64, x: f64, cfg: &QuadConfig) -> Result<QuadResult> {
    invert_at_with(&DistributionalTransform::new(f.clone()).with_budget(cfg.budget), k, a, x, cfg)
}

/// `∫ f(x − t) ψ_a(t) dt` by direct quadrature.
pub fn invert_direct(f: &BoundedFunction, k: SummabilityKernel, a: f64, x: f64, cfg: &QuadConfig) -> Result<QuadResult> {
    if !k.satisfies_theorem() {
        return Err(k.rejected());
    }
    // ∫ f(x−t) ψ_a(t) dt = ∫ f(y) ψ_a(x−y) dy
    integrate_against(f, &k.profile(a, 1.0)?.reflect_shift(x), cfg)
}

#[derive(Debug, Clone)]
pub struct SweepPoint {
    pub x: f64,
    pub value: QuadResult,
    pub error: f64,
}

#[derive(Debug, Clone)]
pub struct SweepRow {
    pub a: f64,
    pub points: Vec<SweepPoint>,
    pub max_error: f64,
}

/// For each `a`, the values `I_a[f](x)` on the grid and `max |f(x) − I_a[f](x)|`.
pub fn inversion_sweep(f: &BoundedFunction, k: SummabilityKernel, a_list: &[f64], grid: &[f64], cfg: &QuadConfig) -> Result<Vec<SweepRow>> {
    let t = DistributionalTransform::new(f.clone()).with_budget(cfg.budget);
    let mut rows = Vec::with_capacity(a_list.len());
    for &a in a_list {
        let mut points = Vec::with_capacity(grid.len());
        let mut max_error: f64 = 0.0;
        for &x in grid {
            let value = invert_at_with(&t, k, a, x, cfg)?;
            let error = cabs(f.eval(x) - value.value);
            max_error = max_error.max(error);
            points.push(SweepPoint { x, value, error });
        }
        rows.push(SweepRow { a, points, max_error });
    }
    Ok(rows)
}

/// Non-increasing up to a relative jitter.
pub fn is_monotone_decreasing(errors: &[f64], jitter: f64) -> bool {
    errors.windows(2).all(|w| w[1] <= w[0] * (1.0 + jitter))
}

#[derive(Debug, Clone)]
pub struct MomentCheck {
    /// `j` in `∫|t²ψ^{(j)}|`.
    pub order: usize,
    /// Partial integrals over `[−T, T]` for `T` in `CHECK_RADII`.
    pub partial: Vec<f64>,
    pub finite: bool,
}

#[derive(Debug, Clone)]
pub struct HypothesisReport {
    pub kernel: SummabilityKernel,
    pub moments: [MomentCheck; 3],
}

impl HypothesisReport {
    pub fn all_finite(&self) -> bool {
        self.moments.iter().all(|m| m.finite)
    }
}

pub const CHECK_RADII: [f64; 4] = [10.0, 100.0, 1000.0, 1e4];

/// Estimates `∫|t²ψ|`, `∫|t²ψ′|`, `∫|t²ψ″|` for the kernel at `a = 1` by
/// partial integrals over growing windows. An integral is flagged divergent
/// when the last increment fails to shrink.
pub fn corollary_hypotheses_check(k: SummabilityKernel) -> Result<HypothesisReport> {
    let one = |j: usize| -> Result<MomentCheck> {
        let mut partial = Vec::new();
        let mut incs = Vec::new();
        let mut lo = 0.0;
        let mut total = 0.0;
        for &t in CHECK_RADII.iter() {
            // The integrand is even.
            let breaks: Vec<f64> = (1..(t - lo) as usize).map(|i| lo + i as f64).collect();
            let cfg = QuadConfig::with_tol(1e-7 * t);
            let r = integrate_smooth(|u| real(abs(u * u * k.derivatives(1.0, u)[j])), lo, t, &breaks, &cfg)?;
            let inc = 2.0 * r.value.re;
            total += inc;
            incs.push(inc);
            partial.push(total);
            lo = t;
        }
        let n = incs.len();
        let finite = incs[n - 1] <= 1e-6 * (1.0 + total) || incs[n - 1] < 0.5 * incs[n - 2];
        Ok(MomentCheck { order: j, partial, finite })
    };
    Ok(HypothesisReport { kernel: k, moments: [one(0)?, one(1)?, one(2)?] })
}

pub fn kernel_label(k: SummabilityKernel, a: f64) -> String {
    format!("{}:a={a}", k.name())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fncat::{catalog, Params};
    use crate::math::atan;

    const KERNELS: [SummabilityKernel; 3] = [SummabilityKernel::Fejer, SummabilityKernel::Poisson, SummabilityKernel::Gauss];

    fn cat(name: &str, p: Params) -> BoundedFunction {
        catalog(name, &p).unwrap()
    }

    #[test]
    fn unit_mass() {
        let one = cat("const", Params::new().with("c", 1.0));
        for k in KERNELS {
            for a in [1.0, 0.1] {
                let r = integrate_against(&one, &k.profile(a, 1.0).unwrap(), &QuadConfig::with_tol(1e-10)).unwrap();
                assert!(cabs(r.value - 1.0) < 1e-8, "{k:?} a={a}: {}", r.value);
            }
        }
    }

    #[test]
    fn psihat_matches_numeric_transform() {
        for k in KERNELS {
            let a = 0.7;
            let p = k.profile(a, 1.0).unwrap();
            for s in [0.0, 0.3, 1.0, 1.3, 4.0] {
                let w = cat("expwave", Params::new().with("x", -s));
                let r = integrate_against(&w, &p, &QuadConfig::with_tol(1e-9)).unwrap();
                assert!(cabs(r.value - k.psihat_a(a, s)) < 1e-6, "{k:?} s={s}: {}", r.value);
            }
        }
    }

    #[test]
    fn derivatives_match_differences() {
        for k in [SummabilityKernel::Fejer, SummabilityKernel::Poisson, SummabilityKernel::Gauss, SummabilityKernel::Dirichlet] {
            for t in [-3.0, -0.5, 0.004, 0.9, 2.5, 17.0] {
                let d = k.derivatives(0.8, t);
                let e = 1e-4;
                let f = |u: f64| k.derivatives(0.8, u);
                let d1 = (f(t + e)[0] - f(t - e)[0]) / (2.0 * e);
                let d2 = (f(t + e)[1] - f(t - e)[1]) / (2.0 * e);
                assert!(abs(d1 - d[1]) < 1e-6, "{k:?} t={t}");
                assert!(abs(d2 - d[2]) < 1e-6, "{k:?} t={t}");
            }
        }
    }

    #[test]
    fn multiplier_decompositions_reproduce_h() {
        let cfg = QuadConfig::with_tol(1e-11);
        for k in KERNELS {
            let m = k.multiplier_of(0.5, 1.3).unwrap();
            m.validate().unwrap();
            for (lo, hi) in [(-5.0, -0.3), (-1.0, 1.5), (0.2, 3.0)] {
                let inc = m.dh.increment(lo, hi, &cfg).unwrap();
                let want = (m.h)(hi) - (m.h)(lo);
                assert!(cabs(inc - want) < 1e-8, "{k:?} [{lo},{hi}]: {inc} vs {want}");
                // g is a primitive of h
                let gi = integrate_smooth(|s| (m.h)(s), lo, hi, &m.g_breaks, &cfg).unwrap();
                assert!(cabs(gi.value - ((m.g)(hi) - (m.g)(lo))) < 1e-8);
            }
        }
    }

    #[test]
    fn constant_inverts_to_itself() {
        let one = cat("const", Params::new().with("c", 1.0));
        let cfg = QuadConfig::with_tol(1e-8);
        for k in KERNELS {
            let v = invert_at(&one, k, 0.5, 0.7, &cfg).unwrap();
            assert!(cabs(v.value - 1.0) < 1e-7, "{k:?}: {}", v.value);
            let d = invert_direct(&one, k, 0.5, 0.7, &cfg).unwrap();
            assert!(cabs(d.value - 1.0) < 1e-7);
        }
    }

    #[test]
    fn sgn_at_zero_vanishes() {
        let f = cat("sgn", Params::new());
        let cfg = QuadConfig::with_tol(1e-8);
        for k in KERNELS {
            let v = invert_at(&f, k, 0.5, 0.0, &cfg).unwrap();
            assert!(cabs(v.value) < 1e-7, "{k:?}: {}", v.value);
        }
    }

    #[test]
    fn sgn_against_poisson_closed_form() {
        // (sgn ∗ ψ_a)(x) = (2/π) arctan(x/a) for the Poisson kernel.
        let f = cat("sgn", Params::new());
        let cfg = QuadConfig::with_tol(1e-8);
        for x in [-1.2, 0.4, 2.0] {
            let v = invert_at(&f, SummabilityKernel::Poisson, 0.5, x, &cfg).unwrap();
            let want = 2.0 / PI * atan(x / 0.5);
            assert!(cabs(v.value - want) < 1e-7, "x={x}: {} vs {want}", v.value);
        }
    }

    #[test]
    fn atan_over_routes_agree() {
        let f = cat("atan_over", Params::new().with("a", 1.0));
        let cfg = QuadConfig::with_tol(1e-8);
        let v = invert_at(&f, SummabilityKernel::Gauss, 0.05, 1.0, &cfg).unwrap();
        let d = invert_direct(&f, SummabilityKernel::Gauss, 0.05, 1.0, &QuadConfig::with_tol(1e-9)).unwrap();
        assert!(cabs(v.value - d.value) < 1e-6, "{} vs {}", v.value, d.value);
        assert!(abs(v.value.re - atan(1.0)) < 1e-2);
    }

    #[test]
    fn dirichlet_rejected() {
        let one = cat("const", Params::new().with("c", 1.0));
        let cfg = QuadConfig::default();
        assert!(matches!(invert_at(&one, SummabilityKernel::Dirichlet, 1.0, 0.0, &cfg), Err(Error::KernelRejected(_))));
        assert!(matches!(invert_direct(&one, SummabilityKernel::Dirichlet, 1.0, 0.0, &cfg), Err(Error::KernelRejected(_))));
        assert!(SummabilityKernel::Dirichlet.multiplier_of(1.0, 0.0).is_err());
        assert!(SummabilityKernel::Gauss.multiplier_of(0.0, 0.0).is_err());
    }

    #[test]
    fn hypothesis_report() {
        let g = corollary_hypotheses_check(SummabilityKernel::Gauss).unwrap();
        assert!(g.all_finite());
        // ∫ t²ψ = 2 for the Gauss kernel at a = 1 (variance 2a²).
        assert!(abs(g.moments[0].partial[3] - 2.0) < 1e-6);
        for k in [SummabilityKernel::Fejer, SummabilityKernel::Poisson] {
            let r = corollary_hypotheses_check(k).unwrap();
            assert!(!r.moments[0].finite, "{k:?}");
        }
        assert!(SummabilityKernel::Gauss.satisfies_corollary());
        assert!(!SummabilityKernel::Fejer.satisfies_corollary());
        assert!(!SummabilityKernel::Dirichlet.satisfies_theorem());
    }

    #[test]
    fn names_round_trip() {
        for n in KERNEL_NAMES {
            assert_eq!(SummabilityKernel::from_name(n).unwrap().name(), *n);
        }
        assert!(SummabilityKernel::from_name("boxcar").is_err());
    }
}
