//! Adaptive 7–15 point Gauss–Kronrod quadrature.

use alloc::vec::Vec;

use super::adapt::{adapt, PanelEstimate};
use super::{interior_cuts, QuadConfig, QuadResult};
use crate::error::{Error, Result};
use crate::math::{cabs, powf, C64};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// One GK15 panel, with the QUADPACK error heuristic.
pub(crate) fn gk15<F: FnMut(f64) -> C64>(f: &mut F, a: f64, b: f64) -> PanelEstimate {
    let c = 0.5 * (a + b);
    let r = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut resabs = cabs(fc) * WGK[7];
    let mut fv1 = [C64::default(); 7];
    let mut fv2 = [C64::default(); 7];
    for j in 0..7 {
        let dx = r * XGK[j];
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        kron += (f1 + f2) * WGK[j];
        resabs += (cabs(f1) + cabs(f2)) * WGK[j];
        if j % 2 == 1 {
            gauss += (f1 + f2) * WG[j / 2];
        }
    }
    let mean = kron * 0.5;
    let mut resasc = cabs(fc - mean) * WGK[7];
    for j in 0..7 {
        resasc += (cabs(fv1[j] - mean) + cabs(fv2[j] - mean)) * WGK[j];
    }
    let ar = r.abs();
    let value = kron * r;
    let mut err = cabs((kron - gauss) * r);
    let resasc = resasc * ar;
    let resabs = resabs * ar;
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (powf(200.0 * err / resasc, 1.5)).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * resabs;
    if !value.re.is_finite() || !value.im.is_finite() {
        return PanelEstimate { value: C64::new(0.0, 0.0), err: f64::INFINITY, floor: 0.0, evals: 15 };
    }
    PanelEstimate { value, err: err.max(floor), floor, evals: 15 }
}

/// `∫_a^b φ(t) dt` by global adaptive Gauss–Kronrod, with the interval first
/// cut at every breakpoint inside `(a, b)`. Nodes never touch panel ends, so
/// `φ` may be undefined at `a`, `b` and the breakpoints.
pub fn integrate_smooth<F>(mut phi: F, a: f64, b: f64, breakpoints: &[f64], cfg: &QuadConfig) -> Result<QuadResult>
where
    F: FnMut(f64) -> C64,
{
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::param("integration limits must be finite"));
    }
    if !(cfg.tol > 0.0) {
        return Err(Error::param("tolerance must be positive"));
    }
    if a == b {
        return Ok(QuadResult::zero());
    }
    if a > b {
        return integrate_smooth(phi, b, a, breakpoints, cfg).map(|r| -r);
    }
    let init = panels_between(a, b, breakpoints);
    adapt(&init, cfg, |x, y| gk15(&mut phi, x, y))
}

pub(crate) fn panels_between(a: f64, b: f64, breakpoints: &[f64]) -> Vec<(f64, f64)> {
    let cuts = interior_cuts(a, b, breakpoints);
    let mut out = Vec::with_capacity(cuts.len() + 1);
    let mut lo = a;
    for c in cuts {
        out.push((lo, c));
        lo = c;
    }
    out.push((lo, b));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::{cos, exp, real, sin, PI};

    #[test]
    fn sine_over_half_period() {
        let r = integrate_smooth(|t| real(sin(t)), 0.0, PI, &[], &QuadConfig::default()).unwrap();
        assert!((r.value.re - 2.0).abs() < 1e-10);
        assert!(r.err_est <= 1e-8);
    }

    #[test]
    fn odd_integrand_vanishes() {
        let r = integrate_smooth(real, -1.0, 1.0, &[], &QuadConfig::default()).unwrap();
        assert!(r.value.re.abs() < 1e-15);
    }

    #[test]
    fn jump_at_declared_breakpoint_is_exact() {
        let step = |t: f64| real(if t < 0.3 { 1.0 } else { -2.0 });
        let r = integrate_smooth(step, -1.0, 1.0, &[0.3], &QuadConfig::default()).unwrap();
        assert!((r.value.re - (1.3 - 1.4)).abs() < 1e-13);
    }

    #[test]
    fn undeclared_kink_still_converges() {
        let r = integrate_smooth(|t: f64| real(t.abs()), -1.0, 2.0, &[], &QuadConfig::default()).unwrap();
        assert!((r.value.re - 2.5).abs() < 1e-8, "{r:?}");
    }

    #[test]
    fn t_minus_sin_over_t_squared_matches_series() {
        // ∫₀¹ (t − sin t)/t² dt = Σ_{k≥1} (−1)^{k+1} / ((2k)(2k+1)!)
        let mut oracle = 0.0;
        let mut fact = 6.0; // (2k+1)! for k = 1
        for k in 1..20 {
            let kk = k as f64;
            oracle += if k % 2 == 1 { 1.0 } else { -1.0 } / (2.0 * kk * fact);
            fact *= (2.0 * kk + 2.0) * (2.0 * kk + 3.0);
        }
        let r = integrate_smooth(|t| real((t - sin(t)) / (t * t)), 0.0, 1.0, &[], &QuadConfig::default()).unwrap();
        assert!((r.value.re - oracle).abs() < 1e-12, "{} vs {}", r.value.re, oracle);
    }

    #[test]
    fn reversed_limits_negate() {
        let f = |t: f64| C64::new(exp(-t), cos(t));
        let a = integrate_smooth(f, 0.0, 3.0, &[], &QuadConfig::default()).unwrap();
        let b = integrate_smooth(f, 3.0, 0.0, &[], &QuadConfig::default()).unwrap();
        assert!(cabs(a.value + b.value) < 1e-14);
    }

    #[test]
    fn budget_overrun_reports_best_estimate() {
        let cfg = QuadConfig { tol: 1e-15, budget: 100 };
        let err = integrate_smooth(|t: f64| real(sin(1.0 / t)), 1e-3, 1.0, &[], &cfg).unwrap_err();
        match err {
            Error::BudgetExceeded { best, evaluations } => {
                assert!(evaluations >= 100);
                assert!(best.err_est > 0.0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
