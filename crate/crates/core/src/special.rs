//! Scalar special functions used by normalization closed forms and the
//! moment-problem weights: ln Γ, modified Bessel I₀/K₀ and two
//! generalized hypergeometric series.
//!
//! Everything here is series- or quadrature-based; no coefficient tables
//! beyond the Lanczos set. Accuracy is ~1e-13 relative over the argument
//! ranges exercised by this crate (see unit tests).

use crate::quad;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// ln Γ(x) for x > 0 via the 6-term Lanczos approximation (g = 5).
///
/// Relative error is below 2e-10 over the positive axis, which is ample for
/// the closed-form cross-checks this crate performs.
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0, "ln_gamma requires x > 0, got {x}");
    let coefficients: [f64; 6] = [
        76.18009172947146,
        -86.50532032941677,
        24.01409824083091,
        -1.231739572450155,
        0.1208650973866179e-2,
        -0.5395239384953e-5,
    ];
    let tmp = x + 5.5;
    let log = (x + 0.5) * tmp.ln() - tmp;
    let mut a = 1.000000000190015;
    let mut denom = x;
    for coeff in &coefficients {
        denom += 1.0;
        a += coeff / denom;
    }
    log + (2.5066282746310005 * a / x).ln()
}

/// Modified Bessel function of the first kind, I₀(x).
///
/// Power series for |x| <= 100 (monotone terms, no cancellation), large-x
/// asymptotic expansion beyond.
pub fn bessel_i0(x: f64) -> f64 {
    let x = x.abs();
    if x <= 100.0 {
        // I0(x) = sum_k (x^2/4)^k / (k!)^2
        let q = 0.25 * x * x;
        let mut term = 1.0;
        let mut sum = 1.0;
        let mut k = 1.0;
        while term > sum * 1e-18 {
            term *= q / (k * k);
            sum += term;
            k += 1.0;
        }
        sum
    } else {
        // I0(x) ~ e^x/sqrt(2 pi x) * sum_k u_k, u_k = ((2k-1)!!)^2/(k! (8x)^k)
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..20 {
            let kf = k as f64;
            let odd = 2.0 * kf - 1.0;
            term *= odd * odd / (kf * 8.0 * x);
            sum += term;
            if term < sum * 1e-17 {
                break;
            }
        }
        x.exp() / (2.0 * std::f64::consts::PI * x).sqrt() * sum
    }
}

/// Modified Bessel function of the second kind, K₀(x), x > 0.
///
/// For x <= 2 the standard ascending series
/// `K0 = -(ln(x/2) + gamma) I0(x) + sum (x^2/4)^k H_k / (k!)^2`
/// is used; for larger x the integral representation
/// `K0(x) = int_0^inf exp(-x cosh t) dt` is evaluated adaptively.
pub fn bessel_k0(x: f64) -> f64 {
    assert!(x > 0.0, "bessel_k0 requires x > 0, got {x}");
    if x <= 2.0 {
        let q = 0.25 * x * x;
        let mut term = 1.0; // q^k / (k!)^2
        let mut harmonic = 0.0;
        let mut sum = 0.0;
        for k in 1..200 {
            let kf = k as f64;
            term *= q / (kf * kf);
            harmonic += 1.0 / kf;
            let contrib = term * harmonic;
            sum += contrib;
            if contrib < (sum.abs() + 1.0) * 1e-18 {
                break;
            }
        }
        -(0.5 * x)
            .ln()
            .mul_add(bessel_i0(x), EULER_GAMMA * bessel_i0(x))
            + sum
    } else {
        // Integrand underflows once x cosh t > ~746; cut there.
        let t_max = (746.0 / x).acosh() + 1.0;
        let f = |t: f64| (-x * t.cosh()).exp();
        quad::integrate(&f, 0.0, t_max, 1e-13, 1e-300)
            .expect("K0 integral representation is smooth")
            .value
    }
}

/// ₀F₂(1, 1; x) = Σ xⁿ / (n!)³ for x >= 0.
pub fn hyp0f2_11(x: f64) -> f64 {
    assert!(x >= 0.0);
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut n = 1.0;
    while term > sum * 1e-18 {
        term *= x / (n * n * n);
        sum += term;
        n += 1.0;
    }
    sum
}

/// ₂F₁(1, 1; c; x) = Σ n! xⁿ / (c)ₙ for |x| < 1, c > 0.
pub fn hyp2f1_11(c: f64, x: f64) -> f64 {
    assert!(x.abs() < 1.0, "hyp2f1_11 requires |x| < 1, got {x}");
    assert!(c > 0.0);
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut n = 0.0;
    loop {
        term *= x * (n + 1.0) / (c + n);
        sum += term;
        n += 1.0;
        if term.abs() < sum.abs() * 1e-17 || n > 1e6 {
            break;
        }
    }
    sum
}
