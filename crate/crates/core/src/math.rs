//! Scalar helpers over `libm` so the rest of the crate stays `no_std`.

pub use core::f64::consts::{E, FRAC_PI_2, PI, TAU};

pub type C64 = num_complex::Complex64;

/// Shared complex-valued function of a real variable.
pub type CFn = alloc::sync::Arc<dyn Fn(f64) -> C64 + Send + Sync>;
/// Shared real-valued function of a real variable.
pub type RFn = alloc::sync::Arc<dyn Fn(f64) -> f64 + Send + Sync>;

pub const I: C64 = C64 { re: 0.0, im: 1.0 };
pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };

#[inline]
pub fn abs(x: f64) -> f64 {
    libm::fabs(x)
}
#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}
#[inline]
pub fn sin(x: f64) -> f64 {
    libm::sin(x)
}
#[inline]
pub fn cos(x: f64) -> f64 {
    libm::cos(x)
}
#[inline]
pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}
#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}
#[inline]
pub fn atan(x: f64) -> f64 {
    libm::atan(x)
}
#[inline]
pub fn sinh(x: f64) -> f64 {
    libm::sinh(x)
}
#[inline]
pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}
#[inline]
pub fn erf(x: f64) -> f64 {
    libm::erf(x)
}
#[inline]
pub fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}
#[inline]
pub fn floor(x: f64) -> f64 {
    libm::floor(x)
}
#[inline]
pub fn ceil(x: f64) -> f64 {
    libm::ceil(x)
}
#[inline]
pub fn round(x: f64) -> f64 {
    libm::round(x)
}
#[inline]
pub fn log10(x: f64) -> f64 {
    libm::log10(x)
}
#[inline]
pub fn sgn(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// `e^{iθ}`.
#[inline]
pub fn cis(theta: f64) -> C64 {
    let (s, c) = libm::sincos(theta);
    C64::new(c, s)
}

#[inline]
pub fn cabs(z: C64) -> f64 {
    libm::hypot(z.re, z.im)
}

#[inline]
pub fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// `sin(x)/x` with the removable point filled in.
pub fn sinc(x: f64) -> f64 {
    if abs(x) < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        sin(x) / x
    }
}

/// `(1 - i x - e^{-ix}) / x²`, the kernel behind `Ω_f`, with value 1/2 at 0.
///
/// Uses the power series `-Σ_{n≥2} (-ix)^n / (n! x²)` for `|x| < 0.5`.
pub fn omega_kernel(x: f64) -> C64 {
    if abs(x) < 0.5 {
        // -Σ_{n≥2} (-i)^n x^{n-2} / n!
        let mut sum = ZERO;
        let mut term = C64::new(-1.0, 0.0) * (-I) * (-I) / 2.0; // n = 2
        sum += term;
        let mut n = 2u32;
        loop {
            n += 1;
            term = term * (-I) * x / f64::from(n);
            sum += term;
            if cabs(term) < 1e-18 * cabs(sum) || n > 40 {
                break;
            }
        }
        sum
    } else {
        (C64::new(1.0, -x) - cis(-x)) / (x * x)
    }
}

/// Rounds to `digits` significant decimal digits.
pub fn round_sig(x: f64, digits: i32) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let mag = floor(log10(abs(x)));
    let scale = powf(10.0, f64::from(digits - 1) - mag);
    round(x * scale) / scale
}

pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for j in 0..k {
        acc = acc * f64::from(n - j) / f64::from(j + 1);
    }
    round(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_kernel_matches_direct_formula_away_from_origin() {
        for &x in &[0.49, 0.3, -0.2, 0.05] {
            let direct = (C64::new(1.0, -x) - cis(-x)) / (x * x);
            assert!(cabs(omega_kernel(x) - direct) < 1e-12, "x = {x}");
        }
        assert!(cabs(omega_kernel(0.0) - C64::new(0.5, 0.0)) < 1e-16);
    }

    #[test]
    fn round_sig_keeps_twelve_digits() {
        assert_eq!(round_sig(1.234_567_890_123_4, 12), 1.234_567_890_12);
        assert_eq!(round_sig(0.0, 12), 0.0);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(8, 4), 70.0);
        assert_eq!(binomial(5, 0), 1.0);
        assert_eq!(binomial(3, 5), 0.0);
    }
}
