//! Gamma-function helpers shared by the quadrature and normalization code.
//!
//! Lanczos approximation (g = 7, 9 coefficients, the GSL/Boost set);
//! accurate to ~1e-15 relative on the positive real axis, which is the
//! only regime used here (weight exponents and factorial ratios).

use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)] // published coefficient set
const LANCZOS_COEF: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

/// Natural log of Gamma(x) for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma requires a positive argument, got {x}");
    if x < 0.5 {
        // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let z = x - 1.0;
    let mut series = LANCZOS_COEF[0];
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        series += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + series.ln()
}

/// Gamma(x) for x > 0. Exact (to rounding) for small integer arguments.
pub fn gamma(x: f64) -> f64 {
    // integer arguments are frequent (weight exponents 2L+k); a direct
    // product keeps them at full precision up to 170!
    if x == x.floor() && (1.0..=171.0).contains(&x) {
        return factorial(x as u64 - 1);
    }
    ln_gamma(x).exp()
}

/// n! as f64; finite up to n = 170.
pub fn factorial(n: u64) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// ln(n!) without overflow.
pub fn ln_factorial(n: u64) -> f64 {
    ln_gamma(n as f64 + 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn integer_values_are_factorials() {
        for n in 0..20u64 {
            assert_eq!(gamma(n as f64 + 1.0), factorial(n));
        }
        assert_eq!(factorial(5), 120.0);
    }

    #[test]
    fn half_integer_values() {
        assert_relative_eq!(gamma(0.5), PI.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(gamma(1.5), 0.5 * PI.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(gamma(4.5), 11.631728396567448, max_relative = 1e-13);
    }

    #[test]
    fn ln_gamma_matches_large_factorials() {
        for n in [20u64, 50, 100, 137] {
            let exact: f64 = (1..=n).map(|k| (k as f64).ln()).sum();
            assert_relative_eq!(ln_gamma(n as f64 + 1.0), exact, max_relative = 1e-13);
        }
    }
}
