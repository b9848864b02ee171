//! Filon-type rules for `∫ A(t) e^{-iσt} dt` with a smooth, non-oscillatory
//! amplitude `A`. The amplitude is interpolated at Chebyshev points and the
//! interpolant is integrated against the exponential exactly, so panel sizes
//! depend only on the smoothness of `A`, not on `σ`.

use alloc::vec::Vec;

use super::adapt::{adapt, PanelEstimate};
use super::gk::panels_between;
use super::{QuadConfig, QuadResult};
use crate::error::{Error, Result};
use crate::math::{binomial, cabs, cis, cos, sin, C64, I, PI, ZERO};

/// Interpolation points per panel; the interpolant has degree `NODES - 1`.
pub const NODES: usize = 13;

/// Monomial moments `μ_k(ω) = ∫_{-1}^{1} x^k e^{-iωx} dx`, `k < n`.
pub fn monomial_moments(omega: f64, n: usize) -> Vec<C64> {
    let mut mu = Vec::with_capacity(n);
    if omega.abs() <= 4.0 {
        // Taylor series in ω; odd powers of x vanish against even weights.
        let z = C64::new(0.0, -omega);
        for k in 0..n {
            let mut sum = ZERO;
            let mut term = C64::new(1.0, 0.0);
            let mut j = 0usize;
            loop {
                if (k + j) % 2 == 0 {
                    sum += term * (2.0 / (k + j + 1) as f64);
                }
                j += 1;
                term = term * z / j as f64;
                if cabs(term) < 1e-18 && j > 4 {
                    break;
                }
            }
            mu.push(sum);
        }
    } else {
        // Forward recurrence, stable enough for k ≲ |ω|·3 at these degrees.
        let em = cis(-omega);
        let ep = cis(omega);
        let iw = I * omega;
        mu.push(C64::new(2.0 * sin(omega) / omega, 0.0));
        for k in 1..n {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let boundary = (em - ep * sign) / (-iw);
            let prev = mu[k - 1];
            mu.push(boundary + prev * (k as f64) / iw);
        }
    }
    mu
}

/// Coefficients of `T_0 … T_{n-1}` in the monomial basis, row `k` holding `T_k`.
fn chebyshev_table(n: usize) -> Vec<Vec<f64>> {
    let mut t: Vec<Vec<f64>> = Vec::with_capacity(n);
    for k in 0..n {
        let mut row = alloc::vec![0.0; n];
        match k {
            0 => row[0] = 1.0,
            1 => row[1] = 1.0,
            _ => {
                for j in 0..n {
                    let a = if j > 0 { 2.0 * t[k - 1][j - 1] } else { 0.0 };
                    row[j] = a - t[k - 2][j];
                }
            }
        }
        t.push(row);
    }
    t
}

struct ChebRule {
    nodes: [f64; NODES],
    cosines: [[f64; NODES]; NODES],
    table: Vec<Vec<f64>>,
}

impl ChebRule {
    fn new() -> Self {
        let n = NODES as f64;
        let mut nodes = [0.0; NODES];
        let mut cosines = [[0.0; NODES]; NODES];
        for j in 0..NODES {
            let theta = PI * (j as f64 + 0.5) / n;
            nodes[j] = cos(theta);
            for k in 0..NODES {
                cosines[k][j] = cos(k as f64 * theta);
            }
        }
        ChebRule { nodes, cosines, table: chebyshev_table(NODES) }
    }

    fn coefficients(&self, values: &[C64; NODES]) -> [C64; NODES] {
        let mut c = [ZERO; NODES];
        for k in 0..NODES {
            let mut s = ZERO;
            for j in 0..NODES {
                s += values[j] * self.cosines[k][j];
            }
            c[k] = s * (2.0 / NODES as f64);
        }
        c[0] *= 0.5;
        c
    }

    fn cheb_moments(&self, omega: f64) -> [C64; NODES] {
        let mu = monomial_moments(omega, NODES);
        let mut m = [ZERO; NODES];
        for k in 0..NODES {
            let mut s = ZERO;
            for j in 0..=k {
                let t = self.table[k][j];
                if t != 0.0 {
                    s += mu[j] * t;
                }
            }
            m[k] = s;
        }
        m
    }
}

fn rule() -> &'static ChebRule {
    static RULE: spin::Once<ChebRule> = spin::Once::new();
    RULE.call_once(ChebRule::new)
}

/// One Filon panel for `∫_a^b A(t) e^{-iσt} dt`.
pub(crate) fn filon_panel<F: FnMut(f64) -> C64>(amp: &mut F, sigma: f64, a: f64, b: f64) -> PanelEstimate {
    let rule = rule();
    let c = 0.5 * (a + b);
    let r = 0.5 * (b - a);
    let mut values = [ZERO; NODES];
    for j in 0..NODES {
        values[j] = amp(c + r * rule.nodes[j]);
    }
    if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return PanelEstimate { value: ZERO, err: f64::INFINITY, floor: 0.0, evals: NODES as u64 };
    }
    let coef = rule.coefficients(&values);
    let moments = rule.cheb_moments(sigma * r);
    let mut s = ZERO;
    let mut mag = 0.0;
    for k in 0..NODES {
        s += coef[k] * moments[k];
        mag += cabs(coef[k]);
    }
    let value = cis(-sigma * c) * s * r;
    let tail = cabs(coef[NODES - 1]) + cabs(coef[NODES - 2]);
    let floor = 1e-14 * 2.0 * r.abs() * mag;
    let err = (2.0 * r.abs() * tail).max(floor);
    PanelEstimate { value, err, floor, evals: NODES as u64 }
}

/// `∫_a^b A(t) e^{-iσt} dt` by adaptive Filon panels, first cut at `breakpoints`.
pub fn integrate_filon<F>(mut amp: F, sigma: f64, a: f64, b: f64, breakpoints: &[f64], cfg: &QuadConfig) -> Result<QuadResult>
where
    F: FnMut(f64) -> C64,
{
    if !(a.is_finite() && b.is_finite() && sigma.is_finite()) {
        return Err(Error::param("limits and frequency must be finite"));
    }
    if a == b {
        return Ok(QuadResult::zero());
    }
    if a > b {
        return integrate_filon(amp, sigma, b, a, breakpoints, cfg).map(|r| -r);
    }
    let init = panels_between(a, b, breakpoints);
    adapt(&init, cfg, |x, y| filon_panel(&mut amp, sigma, x, y))
}

/// Same, over a prepared list of panels.
pub(crate) fn integrate_filon_panels<F>(mut amp: F, sigma: f64, init: &[(f64, f64)], cfg: &QuadConfig) -> Result<QuadResult>
where
    F: FnMut(f64) -> C64,
{
    adapt(init, cfg, |x, y| filon_panel(&mut amp, sigma, x, y))
}

/// Exact `∫_a^b p(t) e^{-ist} dt` for a polynomial `p` given by its monomial
/// coefficients in `t` (constant term first), degree at most 12.
pub fn oscillatory_panel_moment(coeffs: &[C64], s: f64, a: f64, b: f64) -> Result<C64> {
    if coeffs.len() > NODES {
        return Err(Error::param("polynomial degree must be at most 12"));
    }
    if !(a.is_finite() && b.is_finite() && s.is_finite()) {
        return Err(Error::param("panel and frequency must be finite"));
    }
    if coeffs.is_empty() || a == b {
        return Ok(ZERO);
    }
    let c = 0.5 * (a + b);
    let r = 0.5 * (b - a);
    // p(c + r x) = Σ_k q_k x^k
    let n = coeffs.len();
    let mut q = alloc::vec![ZERO; n];
    for (j, &pj) in coeffs.iter().enumerate() {
        let mut cpow = 1.0;
        let mut powers = alloc::vec![0.0; j + 1];
        for i in 0..=j {
            powers[i] = cpow;
            cpow *= c;
        }
        let mut rpow = 1.0;
        for k in 0..=j {
            q[k] += pj * binomial(j as u32, k as u32) * powers[j - k] * rpow;
            rpow *= r;
        }
    }
    let mu = monomial_moments(s * r, n);
    let mut sum = ZERO;
    for k in 0..n {
        sum += q[k] * mu[k];
    }
    Ok(cis(-s * c) * sum * r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::{exp, real};
    use crate::quad::integrate_smooth;

    fn brute(f: impl Fn(f64) -> C64, s: f64, a: f64, b: f64) -> C64 {
        let cfg = QuadConfig::with_tol(1e-13);
        integrate_smooth(|t| f(t) * cis(-s * t), a, b, &[], &cfg).unwrap().value
    }

    #[test]
    fn moments_agree_across_branch_switch() {
        for &w in &[3.999, 4.001] {
            let mu = monomial_moments(w, NODES);
            for (k, m) in mu.iter().enumerate() {
                let oracle = brute(|x| real(x.powi(k as i32)), w, -1.0, 1.0);
                assert!(cabs(*m - oracle) < 1e-12, "k={k} w={w}");
            }
        }
    }

    #[test]
    fn constant_polynomial_closed_form() {
        let (a, b, s) = (0.3, 2.1, 1.7);
        let v = oscillatory_panel_moment(&[C64::new(1.0, 0.0)], s, a, b).unwrap();
        let exact = (cis(-s * a) - cis(-s * b)) / (I * s);
        assert!(cabs(v - exact) < 1e-14);
    }

    #[test]
    fn zero_frequency_is_plain_integral() {
        let p = [real(1.0), real(-2.0), real(3.0)];
        let v = oscillatory_panel_moment(&p, 0.0, -1.0, 2.0).unwrap();
        // ∫_{-1}^{2} 1 − 2t + 3t² dt = 3 − 3 + 9
        assert!(cabs(v - real(9.0)) < 1e-13);
    }

    #[test]
    fn linear_over_full_period() {
        // ∫_0^{2π} t e^{-it} dt = 2πi
        let v = oscillatory_panel_moment(&[ZERO, real(1.0)], 1.0, 0.0, 2.0 * PI).unwrap();
        let oracle = brute(real, 1.0, 0.0, 2.0 * PI);
        assert!(cabs(v - oracle) < 1e-12);
        assert!(cabs(v - C64::new(0.0, 2.0 * PI)) < 1e-12);
    }

    #[test]
    fn degree_twelve_accepted_thirteen_rejected() {
        let p = [real(0.5); 13];
        let v = oscillatory_panel_moment(&p, 7.5, -0.5, 1.5).unwrap();
        let oracle = brute(|t| real((0..13).map(|k| 0.5 * t.powi(k)).sum()), 7.5, -0.5, 1.5);
        assert!(cabs(v - oracle) < 1e-11 * cabs(oracle).max(1.0));
        assert!(oscillatory_panel_moment(&[real(1.0); 14], 1.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn filon_handles_high_frequency() {
        // ∫_0^1 e^{-t} e^{-iσt} dt = (1 − e^{-(1+iσ)}) / (1 + iσ)
        for &sigma in &[0.0, 1.0, 50.0, 1e5] {
            let r = integrate_filon(|t| real(exp(-t)), sigma, 0.0, 1.0, &[], &QuadConfig::default()).unwrap();
            let z = C64::new(1.0, sigma);
            let exact = (C64::new(1.0, 0.0) - (-z).exp()) / z;
            assert!(cabs(r.value - exact) < 1e-12, "sigma={sigma}");
            assert!(r.err_est <= 1e-8);
        }
    }
}
