use fbt_core::math::{cabs, real};
use fbt_core::pairing::{pair, pairing_bound};
use fbt_core::quad::integrate_stieltjes;
use fbt_core::transform::{holder_ratio, omega, psi};
use fbt_core::{catalog, multiplier_catalog, BoundedFunction, Params, QuadConfig, C64};
use proptest::prelude::*;

fn cat(name: &str, p: Params) -> BoundedFunction {
    catalog(name, &p).unwrap()
}

fn functions() -> Vec<BoundedFunction> {
    vec![
        cat("const", Params::new().with("c", 1.0)),
        cat("sgn", Params::new()),
        cat("cos_recip", Params::new().with("a", 1.0)),
        cat("atan_recip", Params::new().with("a", -0.5)),
        cat("indicator", Params::new().with("lo", -0.3).with("hi", 2.5)),
    ]
}

fn cfg() -> QuadConfig {
    QuadConfig::with_tol(1e-9)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn psi_is_linear(s in -20.0f64..20.0, re in -2.0f64..2.0, im in -2.0f64..2.0) {
        let f = cat("sgn", Params::new());
        let g = cat("cos_recip", Params::new().with("a", 2.0));
        let k = C64::new(re, im);
        let lhs = psi(&f.scale(k).add(&g), s, &cfg()).unwrap().value;
        let rhs = psi(&f, s, &cfg()).unwrap().value * k + psi(&g, s, &cfg()).unwrap().value;
        prop_assert!(cabs(lhs - rhs) < 1e-7);
    }

    #[test]
    fn real_functions_have_hermitian_primitives(s in -30.0f64..30.0, i in 0usize..5) {
        let f = &functions()[i];
        let a = psi(f, s, &cfg()).unwrap().value;
        let b = psi(f, -s, &cfg()).unwrap().value;
        prop_assert!(cabs(a - b.conj()) < 1e-8);
        let a = omega(f, s, &cfg()).unwrap().value;
        let b = omega(f, -s, &cfg()).unwrap().value;
        prop_assert!(cabs(a - b.conj()) < 1e-8 * (1.0 + s * s));
    }

    #[test]
    fn primitives_obey_sup_bounds(s in -40.0f64..40.0, i in 0usize..5) {
        let f = &functions()[i];
        // |Ψ_f| ≤ 2‖f‖ and |v_s| ≤ s²/2 on [−1, 1]
        prop_assert!(cabs(psi(f, s, &cfg()).unwrap().value) <= 2.0 * f.sup_bound + 1e-8);
        prop_assert!(cabs(omega(f, s, &cfg()).unwrap().value) <= s * s * f.sup_bound + 1e-8);
    }

    #[test]
    fn holder_bound(s in -50.0f64..50.0, e in -6.0f64..-0.6, i in 0usize..5) {
        let h = 10f64.powf(e);
        prop_assert!(holder_ratio(&functions()[i], s, h).unwrap() <= 6.0 + 1e-3);
    }

    #[test]
    fn stieltjes_is_additive(c1 in -1.0f64..1.0, c2 in -1.0f64..1.0) {
        let m1 = multiplier_catalog("gaussian", &Params::new().with("center", c1)).unwrap();
        let m2 = multiplier_catalog("triangle", &Params::new().with("center", c2)).unwrap();
        let f = |t: f64| real(libm::cos(t) / (1.0 + t * t));
        let both = integrate_stieltjes(f, 1.0, &m1.dh.combine(&m2.dh), &cfg()).unwrap().value;
        let sep = integrate_stieltjes(f, 1.0, &m1.dh, &cfg()).unwrap().value + integrate_stieltjes(f, 1.0, &m2.dh, &cfg()).unwrap().value;
        prop_assert!(cabs(both - sep) < 1e-8);
    }

    #[test]
    fn pairing_within_corollary_bound(i in 0usize..5, j in 0usize..3) {
        let f = &functions()[i];
        let m = [
            multiplier_catalog("gaussian", &Params::new()).unwrap(),
            multiplier_catalog("triangle", &Params::new().with("width", 1.0)).unwrap(),
            multiplier_catalog("poisson", &Params::new().with("a", 0.7).with("x", 0.2)).unwrap(),
        ][j].clone();
        let r = pair(f, &m, &QuadConfig::with_tol(1e-7)).unwrap();
        prop_assert!(cabs(r.value) <= pairing_bound(f, &m) + 10.0 * r.err_est);
    }
}
