//! The acceptance criteria as a runnable battery.

use std::time::Instant;

use fbt_core::convolution::{conv_identity_1, conv_identity_2, identity_1_suite, identity_2_suite, IdentityCase, IdentityReport};
use fbt_core::inversion::{corollary_hypotheses_check, invert_at, invert_direct, inversion_sweep};
use fbt_core::pairing::exchange;
use fbt_core::sampling::Halton;
use fbt_core::special::{bessel_asymptotic, bessel_j0, bessel_j1, bessel_series, closed_form_diagnostic, closed_form_residual, cos_recip_sum_rule};
use fbt_core::transform::{holder_ratio, omega_growth_ratio, omega_second_derivative_check, psi};
use fbt_core::{catalog, multiplier_catalog, pairing, BoundedFunction, Error, Params, QuadConfig, SummabilityKernel};
use serde::Serialize;

use crate::config::RunConfig;

pub const HOLDER_BOUND: f64 = 6.0 + 1e-3;
pub const SHARPNESS_FLOOR: f64 = 1.0 / std::f64::consts::PI - 0.05;

/// What one run of a criterion found.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub passed: bool,
    pub detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Outcome { passed, detail: detail.into() }
    }

    fn from_error(e: Error) -> Self {
        Outcome::new(false, format!("error: {e}"))
    }
}

pub struct Criterion {
    pub id: u8,
    pub key: &'static str,
    pub title: &'static str,
    /// Wall-clock limit in seconds; `None` when timed with another criterion.
    pub limit: Option<f64>,
}

pub const CRITERIA: [Criterion; 15] = [
    Criterion { id: 1, key: "holder", title: "Hölder battery", limit: Some(60.0) },
    Criterion { id: 2, key: "sharpness", title: "sharpness floor", limit: Some(30.0) },
    Criterion { id: 3, key: "exchange", title: "exchange suite", limit: Some(120.0) },
    Criterion { id: 4, key: "corollary", title: "corollary bound", limit: None },
    Criterion { id: 5, key: "dirac", title: "Dirac recovery", limit: Some(20.0) },
    Criterion { id: 6, key: "inversion_routes", title: "inversion route equivalence", limit: Some(120.0) },
    Criterion { id: 7, key: "inversion_convergence", title: "inversion convergence", limit: Some(90.0) },
    Criterion { id: 8, key: "kernels", title: "kernel hypothesis report", limit: Some(20.0) },
    Criterion { id: 9, key: "convolution", title: "convolution identities", limit: Some(180.0) },
    Criterion { id: 10, key: "closed_forms", title: "closed-form validation", limit: Some(180.0) },
    Criterion { id: 11, key: "sum_rule", title: "cos_recip sum rule", limit: Some(30.0) },
    Criterion { id: 12, key: "growth", title: "Ω growth witness", limit: Some(30.0) },
    Criterion { id: 13, key: "omega_second", title: "Ω″ = f̂₁ check", limit: Some(20.0) },
    Criterion { id: 14, key: "riemann_lebesgue", title: "Riemann–Lebesgue decay", limit: Some(30.0) },
    Criterion { id: 15, key: "bessel", title: "Bessel accuracy", limit: Some(10.0) },
];

pub fn keys() -> impl Iterator<Item = &'static str> {
    CRITERIA.iter().map(|c| c.key)
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub key: &'static str,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_s: f64,
    pub limit_s: Option<f64>,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        let time = match self.limit_s {
            Some(l) => format!("{:.2} s of {l} s", self.elapsed_s),
            None => format!("{:.2} s, timed with criterion {}", self.elapsed_s, self.id - 1),
        };
        format!(
            "{} {:>2} {:<22} {} ({time})",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.key,
            self.detail
        )
    }
}

fn cfg(tol: f64, rc: &RunConfig) -> QuadConfig {
    QuadConfig { tol, budget: rc.panel_budget }
}

fn f(name: &str, p: Params) -> Result<BoundedFunction, Error> {
    catalog(name, &p)
}

fn np() -> Params {
    Params::new()
}

fn a1() -> Params {
    Params::new().with("a", 1.0)
}

fn holder(rc: &RunConfig) -> Result<Outcome, Error> {
    let fs = [f("const", np().with("c", 1.0))?, f("sgn", np())?, f("cos_recip", a1())?];
    let mut hal = Halton::new(rc.seed);
    let (lo, hi) = (1e-6f64.ln(), 0.3f64.ln());
    let mut worst = (0.0, 0.0, 0.0, "");
    for i in 0..200 {
        let (u, v) = hal.next_pair();
        let s = -50.0 + 100.0 * u;
        let mag = (lo + v * (hi - lo)).exp();
        let h = if i % 2 == 0 { mag } else { -mag };
        let func = &fs[i % 3];
        let r = holder_ratio(func, s, h)?;
        if r > worst.0 {
            worst = (r, s, h, &func.label);
        }
    }
    let (r, s, h, label) = worst;
    Ok(Outcome::new(r <= HOLDER_BOUND, format!("200 cases, worst ratio {r:.4} at {label} s={s:.3} h={h:.2e} (bound {HOLDER_BOUND})")))
}

fn sharpness(_: &RunConfig) -> Result<Outcome, Error> {
    let mut ratios = Vec::new();
    for h in [1e-2, 1e-3, 1e-4] {
        let w = fbt_core::fncat::sharpness_witness(0.0, h)?;
        ratios.push(holder_ratio(&w, 0.0, h)?);
    }
    let min = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(Outcome::new(min >= SHARPNESS_FLOOR, format!("ratios {ratios:.3?} at h = 1e-2, 1e-3, 1e-4, floor {SHARPNESS_FLOOR:.4}")))
}

fn exchange_functions() -> Vec<(&'static str, Params)> {
    vec![
        ("const", np().with("c", 1.0)),
        ("sgn", np()),
        ("indicator", np().with("lo", -1.0).with("hi", 2.0)),
        ("expwave", np().with("x", 0.7)),
        ("cos_recip", a1()),
        ("cos_recip_pow", a1().with("m", 2.0)),
        ("exp_i_recip", a1()),
        ("x_sin_recip", a1()),
        ("atan_over", a1()),
        ("atan_recip", a1()),
        ("gaussian", np().with("sigma", 0.8)),
    ]
}

fn exchange_multipliers() -> Vec<(&'static str, Params)> {
    vec![
        ("gaussian", np()),
        ("gaussian", np().with("sigma", 0.6).with("center", 0.5)),
        ("odd_gaussian", np()),
        ("triangle", np()),
        ("fejer", np().with("a", 0.5).with("x", 0.3)),
        ("poisson", np().with("a", 0.5).with("x", -0.4)),
        ("gauss_kernel", np().with("a", 0.4).with("x", 0.8)),
    ]
}

/// Twelve distinct (function, multiplier) index pairs drawn from the seed.
pub fn exchange_pairs(seed: u64) -> Vec<(usize, usize)> {
    let (nf, nm) = (exchange_functions().len(), exchange_multipliers().len());
    let mut hal = Halton::new(seed);
    let mut out = Vec::new();
    while out.len() < 12 {
        let (u, v) = hal.next_pair();
        let p = ((u * nf as f64) as usize, (v * nm as f64) as usize);
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// Criteria 3 and 4 share their evaluations.
fn exchange_and_corollary(rc: &RunConfig) -> Result<(Outcome, Outcome), Error> {
    let fs = exchange_functions();
    let ms = exchange_multipliers();
    let c = cfg(1e-8, rc);
    let (mut worst_res, mut worst_bound) = (0.0f64, f64::INFINITY);
    let (mut fail_res, mut fail_bound) = (Vec::new(), Vec::new());
    for (i, j) in exchange_pairs(rc.seed) {
        let func = catalog(fs[i].0, &fs[i].1)?;
        let m = multiplier_catalog(ms[j].0, &ms[j].1)?;
        let r = exchange(&func, &m, &c)?;
        let rel = r.residual / (1.0 + r.rhs.value.norm());
        worst_res = worst_res.max(rel);
        if rel > 1e-6 {
            fail_res.push(format!("{}/{}", func.label, m.label));
        }
        let slack = r.bound + 10.0 * r.lhs.err_est - r.lhs.value.norm();
        worst_bound = worst_bound.min(slack / r.bound.max(1e-300));
        if slack < 0.0 {
            fail_bound.push(format!("{}/{}", func.label, m.label));
        }
    }
    let third = Outcome::new(
        fail_res.is_empty(),
        format!("12 pairs, worst residual/(1+|rhs|) {worst_res:.2e} (limit 1e-6){}", failures(&fail_res)),
    );
    let fourth = Outcome::new(
        fail_bound.is_empty(),
        format!("12 pairs, smallest relative slack under the bound {worst_bound:.3}{}", failures(&fail_bound)),
    );
    Ok((third, fourth))
}

fn sci(xs: &[f64]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| format!("{x:.3e}")).collect();
    format!("[{}]", parts.join(", "))
}

fn failures(list: &[String]) -> String {
    if list.is_empty() {
        String::new()
    } else {
        format!("; failed: {}", list.join(", "))
    }
}

fn dirac(rc: &RunConfig) -> Result<Outcome, Error> {
    let m = multiplier_catalog("gaussian", &np())?;
    let mut worst = 0.0f64;
    for x in [-2.0, 0.0, 1.5] {
        let wave = f("expwave", np().with("x", x))?;
        let r = pairing::pair(&wave, &m, &cfg(1e-8, rc))?;
        worst = worst.max((r.value - (m.g)(x) * std::f64::consts::TAU).norm());
    }
    Ok(Outcome::new(worst <= 1e-6, format!("x = -2, 0, 1.5, worst |pair − 2πg(x)| {worst:.2e} (limit 1e-6)")))
}

fn inversion_routes(rc: &RunConfig) -> Result<Outcome, Error> {
    let fs = [("sgn", np()), ("atan_over", a1()), ("cos_recip", a1())];
    let ks = [SummabilityKernel::Fejer, SummabilityKernel::Poisson, SummabilityKernel::Gauss];
    let mut hal = Halton::new(rc.seed);
    let mut worst = 0.0f64;
    let mut bad = Vec::new();
    for (fname, fp) in &fs {
        let func = f(fname, fp.clone())?;
        for &k in &ks {
            let (u, v) = hal.next_pair();
            let a = if v < 0.5 { 0.5 } else { 0.1 };
            let x = -2.0 + 4.0 * u;
            let via_pairing = invert_at(&func, k, a, x, &cfg(1e-7, rc))?;
            let direct = invert_direct(&func, k, a, x, &cfg(1e-9, rc))?;
            let d = (via_pairing.value - direct.value).norm();
            worst = worst.max(d);
            if d > 1e-5 {
                bad.push(format!("{fname}/{}:a={a},x={x:.3}", k.name()));
            }
        }
    }
    Ok(Outcome::new(bad.is_empty(), format!("9 cases, worst route difference {worst:.2e} (limit 1e-5){}", failures(&bad))))
}

fn inversion_convergence(rc: &RunConfig) -> Result<Outcome, Error> {
    let func = f("atan_over", a1())?;
    let grid: Vec<f64> = (0..61).map(|i| -3.0 + 0.1 * i as f64).collect();
    let rows = inversion_sweep(&func, SummabilityKernel::Gauss, &[0.4, 0.2, 0.1, 0.05], &grid, &cfg(1e-5, rc))?;
    let errors: Vec<f64> = rows.iter().map(|r| r.max_error).collect();
    let strictly = errors.windows(2).all(|w| w[1] < w[0]);
    let last = *errors.last().unwrap_or(&f64::INFINITY);
    Ok(Outcome::new(
        strictly && last <= 1e-2,
        format!("max errors {} for a = 0.4, 0.2, 0.1, 0.05 (decreasing: {strictly}, final limit 1e-2)", sci(&errors)),
    ))
}

fn kernels(_: &RunConfig) -> Result<Outcome, Error> {
    let gauss = corollary_hypotheses_check(SummabilityKernel::Gauss)?.all_finite();
    let fejer = !corollary_hypotheses_check(SummabilityKernel::Fejer)?.moments[0].finite;
    let poisson = !corollary_hypotheses_check(SummabilityKernel::Poisson)?.moments[0].finite;
    let one = f("const", np().with("c", 1.0))?;
    let rejected = matches!(invert_at(&one, SummabilityKernel::Dirichlet, 1.0, 0.0, &QuadConfig::default()), Err(Error::KernelRejected(_)));
    Ok(Outcome::new(
        gauss && fejer && poisson && rejected,
        format!("gauss all finite: {gauss}; first moment divergent: fejer {fejer}, poisson {poisson}; dirichlet rejected: {rejected}"),
    ))
}

fn convolution(rc: &RunConfig) -> Result<Outcome, Error> {
    let c = cfg(1e-8, rc);
    type Identity = fn(&BoundedFunction, &fbt_core::BVMultiplier, &fbt_core::BVMultiplier, &QuadConfig) -> Result<IdentityReport, Error>;
    let suites: [(&str, Vec<IdentityCase>, Identity); 2] = [("first", identity_1_suite(), conv_identity_1), ("second", identity_2_suite(), conv_identity_2)];
    let mut parts = Vec::new();
    let mut bad = Vec::new();
    for (name, cases, run) in suites {
        let mut worst = 0.0f64;
        for case in &cases {
            let (func, g, h) = case.build()?;
            let r = run(&func, &g, &h, &c)?;
            worst = worst.max(r.residual);
            if r.residual > 1e-5 {
                bad.push(format!("{name}: {}", case.label()));
            }
        }
        parts.push(format!("{name} identity worst residual {worst:.2e}"));
    }
    Ok(Outcome::new(bad.is_empty(), format!("6 + 6 cases, {} (limit 1e-5){}", parts.join(", "), failures(&bad))))
}

fn closed_forms(rc: &RunConfig) -> Result<Outcome, Error> {
    let c = cfg(1e-8, rc);
    let cases = [
        ("cos_recip", a1()),
        ("cos_recip", np().with("a", 2.0)),
        ("cos_recip_pow", a1().with("m", 2.0)),
        ("cos_recip_pow", a1().with("m", 3.0)),
        ("exp_i_recip", a1()),
        ("exp_i_recip", np().with("a", -1.0)),
        ("atan_over", a1()),
        ("atan_recip", a1()),
    ];
    let ms = [multiplier_catalog("gaussian", &np())?, multiplier_catalog("gaussian", &np().with("sigma", 0.5).with("center", 0.7))?];
    let mut worst = 0.0f64;
    let mut bad = Vec::new();
    for (name, p) in &cases {
        for m in &ms {
            let r = closed_form_residual(name, p, m, &c)?;
            worst = worst.max(r.residual);
            if r.residual > 1e-5 {
                bad.push(format!("{name}/{}", m.label));
            }
        }
    }
    let diag = closed_form_diagnostic("x_sin_recip", &a1(), &ms[0], &[1e-2, 1e-3, 1e-4], &c)?;
    let trunc: Vec<String> = diag.truncated.iter().map(|(e, r)| format!("{:.4} at ε={e:e}", r.value.re)).collect();
    Ok(Outcome::new(
        bad.is_empty(),
        format!(
            "16 checks, worst residual {worst:.2e} (limit 1e-5){}; x_sin_recip diagnostic only: exchange {:.4}, truncated closed form {}",
            failures(&bad),
            diag.exchange.value.re,
            trunc.join(", ")
        ),
    ))
}

fn sum_rule(rc: &RunConfig) -> Result<Outcome, Error> {
    let mut parts = Vec::new();
    let mut ok = true;
    for a in [1.0, 2.0] {
        let r = cos_recip_sum_rule(a, &cfg(1e-9, rc))?;
        let limit_gap = (r.density_limit + std::f64::consts::PI * a).abs();
        ok &= r.residual <= 1e-4 && limit_gap <= 1e-4;
        parts.push(format!("a={a}: integral {:.7}, density limit {:.7}, gap {:.1e}", r.integral.value.re, r.density_limit, r.residual));
    }
    Ok(Outcome::new(ok, format!("{} (limit 1e-4 against −π|a|)", parts.join("; "))))
}

fn growth(_: &RunConfig) -> Result<Outcome, Error> {
    let (lo, hi) = (omega_growth_ratio(1e2)?, omega_growth_ratio(1e4)?);
    Ok(Outcome::new(
        (0.9..=1.1).contains(&hi) && (hi - 1.0).abs() < (lo - 1.0).abs(),
        format!("ratio {lo:.4} at 1e2, {hi:.4} at 1e4"),
    ))
}

fn omega_second(_: &RunConfig) -> Result<Outcome, Error> {
    let mut worst = 0.0f64;
    for func in [f("const", np().with("c", 1.0))?, f("sgn", np())?] {
        for s in [-2.0, -0.5, 0.3, 1.0, 4.0] {
            worst = worst.max(omega_second_derivative_check(&func, s, 1e-3)?);
        }
    }
    Ok(Outcome::new(worst <= 1e-3, format!("f = 1, sgn at 5 points, worst residual {worst:.2e} (limit 1e-3)")))
}

fn riemann_lebesgue(rc: &RunConfig) -> Result<Outcome, Error> {
    let mut vals = Vec::new();
    for func in [f("const", np().with("c", 1.0))?, f("sgn", np())?, f("cos_recip", a1())?] {
        vals.push(psi(&func, 1e4, &cfg(1e-8, rc))?.value.norm());
    }
    let worst = vals.iter().cloned().fold(0.0, f64::max);
    Ok(Outcome::new(worst <= 1e-2, format!("|Ψ(1e4)| = {} for 1, sgn, cos_recip(1) (limit 1e-2)", sci(&vals))))
}

/// `J_n(x) = Σ (−1)^k (x/2)^{2k+n} / (k!(k+n)!)` summed term by term with
/// explicit factorials.
fn long_series(n: u32, x: f64) -> f64 {
    let mut sum = 0.0;
    let mut fact_k = 1.0;
    let mut fact_kn: f64 = (1..=n).map(f64::from).product();
    for k in 0..40 {
        if k > 0 {
            fact_k *= k as f64;
            fact_kn *= (k + n) as f64;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * (x / 2.0).powi(2 * k as i32 + n as i32) / (fact_k * fact_kn);
    }
    sum
}

fn bessel(_: &RunConfig) -> Result<Outcome, Error> {
    let mut oracle_gap = 0.0f64;
    for i in 0..=1200 {
        let x = i as f64 * 0.01;
        oracle_gap = oracle_gap.max((bessel_j0(x)? - long_series(0, x)).abs());
        oracle_gap = oracle_gap.max((bessel_j1(x)? - long_series(1, x)).abs());
    }
    let mut overlap = 0.0f64;
    for i in 0..=200 {
        let x = 10.0 + i as f64 * 0.01;
        for n in [0, 1] {
            overlap = overlap.max((bessel_series(n, x) - bessel_asymptotic(n, x)).abs());
        }
    }
    Ok(Outcome::new(
        oracle_gap <= 1e-10 && overlap <= 1e-8,
        format!("max gap to the long series on [0, 12] {oracle_gap:.1e} (limit 1e-10), branch overlap on [10, 12] {overlap:.1e} (limit 1e-8)"),
    ))
}

type Single = fn(&RunConfig) -> Result<Outcome, Error>;

fn single(key: &str) -> Option<Single> {
    Some(match key {
        "holder" => holder,
        "sharpness" => sharpness,
        "dirac" => dirac,
        "inversion_routes" => inversion_routes,
        "inversion_convergence" => inversion_convergence,
        "kernels" => kernels,
        "convolution" => convolution,
        "closed_forms" => closed_forms,
        "sum_rule" => sum_rule,
        "growth" => growth,
        "omega_second" => omega_second,
        "riemann_lebesgue" => riemann_lebesgue,
        "bessel" => bessel,
        _ => return None,
    })
}

/// Runs the selected criteria (all when `only` is empty) in order, calling
/// `report` as each result becomes available.
pub fn run(rc: &RunConfig, only: &[String], mut report: impl FnMut(&CriterionResult)) -> Vec<CriterionResult> {
    let wanted = |key: &str| only.is_empty() || only.iter().any(|k| k == key);
    let mut out = Vec::new();
    let mut push = |c: &Criterion, o: Outcome, elapsed: f64| {
        let passed = o.passed && c.limit.is_none_or(|l| elapsed <= l);
        let detail = match c.limit {
            Some(l) if elapsed > l => format!("{}; over the time limit", o.detail),
            _ => o.detail,
        };
        let r = CriterionResult { id: c.id, key: c.key, title: c.title, passed, detail, elapsed_s: elapsed, limit_s: c.limit };
        report(&r);
        out.push(r);
    };
    let mut i = 0;
    while i < CRITERIA.len() {
        let c = &CRITERIA[i];
        if c.key == "exchange" {
            let next = &CRITERIA[i + 1];
            if wanted(c.key) || wanted(next.key) {
                let start = Instant::now();
                let (third, fourth) = exchange_and_corollary(rc).unwrap_or_else(|e| (Outcome::from_error(e.clone()), Outcome::from_error(e)));
                let elapsed = start.elapsed().as_secs_f64();
                if wanted(c.key) {
                    push(c, third, elapsed);
                }
                if wanted(next.key) {
                    // The time limit of the shared run applies.
                    let limit = c.limit.unwrap_or(f64::INFINITY);
                    let fourth = if elapsed > limit { Outcome::new(false, format!("{}; shared run over the time limit", fourth.detail)) } else { fourth };
                    push(next, fourth, elapsed);
                }
            }
            i += 2;
            continue;
        }
        if wanted(c.key) {
            let run = single(c.key).expect("every criterion has a runner");
            let start = Instant::now();
            let o = run(rc).unwrap_or_else(Outcome::from_error);
            push(c, o, start.elapsed().as_secs_f64());
        }
        i += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_key_is_runnable() {
        for c in &CRITERIA {
            assert!(single(c.key).is_some() || matches!(c.key, "exchange" | "corollary"), "{}", c.key);
        }
    }

    #[test]
    fn seeded_pairs_are_distinct_and_reproducible() {
        let p = exchange_pairs(42);
        assert_eq!(p, exchange_pairs(42));
        assert_eq!(p.len(), 12);
        for (k, a) in p.iter().enumerate() {
            assert!(!p[k + 1..].contains(a));
        }
        assert_ne!(p, exchange_pairs(7));
    }

    #[test]
    fn long_series_oracle_matches_known_values() {
        // Tabulated: J₀(1) = 0.7651976865579666, J₁(1) = 0.4400505857449335.
        assert!((long_series(0, 1.0) - 0.7651976865579666).abs() < 1e-15);
        assert!((long_series(1, 1.0) - 0.4400505857449335).abs() < 1e-15);
        assert_eq!(long_series(0, 0.0), 1.0);
    }

    #[test]
    fn quick_criteria_pass() {
        let rc = RunConfig::default();
        let only: Vec<String> = ["holder", "sharpness", "dirac", "bessel"].iter().map(|s| s.to_string()).collect();
        let rs = run(&rc, &only, |_| {});
        assert_eq!(rs.len(), 4);
        for r in rs {
            assert!(r.passed, "{}", r.line());
        }
    }
}
