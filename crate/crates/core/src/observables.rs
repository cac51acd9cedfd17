//! Photon statistics and quadrature diagnostics over normalized Fock
//! vectors: photon distribution, Mandel Q, and the x/p uncertainty report.
//!
//! Conventions: x = (a + a†)/√2, p = (a - a†)/(√2 i), so the vacuum has
//! variance 1/2 in both quadratures and "squeezed" means a variance below
//! 0.5.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::FockVector;

/// Vacuum quadrature variance; the squeezing threshold.
pub const VACUUM_VARIANCE: f64 = 0.5;

const VACUUM_MEAN_N: f64 = 1e-15;

/// Moments and uncertainties of a normalized state.
#[derive(Debug, Clone, Copy)]
pub struct ObservableReport {
    pub mean_n: f64,
    pub mean_n2: f64,
    /// None exactly when the state is (numerically) the vacuum.
    pub mandel_q: Option<f64>,
    pub mean_x: f64,
    pub mean_p: f64,
    pub var_x: f64,
    pub var_p: f64,
    pub tail_bound: f64,
}

impl ObservableReport {
    pub fn squeezed_x(&self) -> bool {
        self.var_x < VACUUM_VARIANCE
    }

    pub fn squeezed_p(&self) -> bool {
        self.var_p < VACUUM_VARIANCE
    }
}

/// P(n) = |c_n|² for a normalized vector.
pub fn photon_distribution(v: &FockVector) -> Vec<f64> {
    debug_assert!(v.is_normalized());
    v.coeffs().iter().map(|c| c.norm_sqr()).collect()
}

/// Mandel Q = (⟨n²⟩ - ⟨n⟩²)/⟨n⟩ - 1. Zero for Poissonian statistics,
/// negative for sub-Poissonian (nonclassical) light. Errors on the vacuum,
/// where the expression is 0/0.
pub fn mandel_q(v: &FockVector) -> Result<f64> {
    let (mean_n, mean_n2) = number_moments(v);
    if mean_n <= VACUUM_MEAN_N {
        return Err(Error::VacuumState);
    }
    Ok((mean_n2 - mean_n * mean_n) / mean_n - 1.0)
}

fn number_moments(v: &FockVector) -> (f64, f64) {
    let mut mean_n = 0.0;
    let mut mean_n2 = 0.0;
    for (n, c) in v.coeffs().iter().enumerate() {
        let p = c.norm_sqr();
        let nf = n as f64;
        mean_n += nf * p;
        mean_n2 += nf * nf * p;
    }
    (mean_n, mean_n2)
}

/// Full observable report for a normalized state.
///
/// ⟨a⟩ and ⟨a²⟩ come from the one- and two-step off-diagonal sums; the
/// quadrature moments follow from
/// ⟨x²⟩ = 1/2 + ⟨n⟩ + Re⟨a²⟩ and ⟨p²⟩ = 1/2 + ⟨n⟩ - Re⟨a²⟩.
pub fn report(v: &FockVector) -> ObservableReport {
    debug_assert!(v.is_normalized());
    let (mean_n, mean_n2) = number_moments(v);

    let top = v.truncation();
    let mut a_expect = Complex64::ZERO;
    let mut a2_expect = Complex64::ZERO;
    for n in 0..top {
        a_expect += v.coeff(n).conj() * v.coeff(n + 1) * (n as f64 + 1.0).sqrt();
        if n + 2 <= top {
            a2_expect +=
                v.coeff(n).conj() * v.coeff(n + 2) * ((n as f64 + 1.0) * (n as f64 + 2.0)).sqrt();
        }
    }

    let mean_x = std::f64::consts::SQRT_2 * a_expect.re;
    let mean_p = std::f64::consts::SQRT_2 * a_expect.im;
    let x2 = 0.5 + mean_n + a2_expect.re;
    let p2 = 0.5 + mean_n - a2_expect.re;
    let var_x = x2 - mean_x * mean_x;
    let var_p = p2 - mean_p * mean_p;

    let mandel_q = if mean_n > VACUUM_MEAN_N {
        Some((mean_n2 - mean_n * mean_n) / mean_n - 1.0)
    } else {
        None
    };

    ObservableReport {
        mean_n,
        mean_n2,
        mandel_q,
        mean_x,
        mean_p,
        var_x,
        var_p,
        tail_bound: v.tail_bound(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{apply, inner, ShiftOperator};
    use crate::nonlinearity::NonlinearityFunction;
    use crate::states::{dual_inverse_bosonic, dual_inverse_state, standard_cs, Trunc};
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn number_state_distribution() {
        let v = FockVector::number_state(3, 8);
        let p = photon_distribution(&v);
        for (n, pn) in p.iter().enumerate() {
            assert_eq!(*pn, if n == 3 { 1.0 } else { 0.0 });
        }
    }

    #[test]
    fn coherent_state_is_poissonian() {
        let s = standard_cs(c(2.0, 0.0), Trunc::Auto).unwrap();
        let p = photon_distribution(&s.vector);
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        // against the Poisson law with mean 4
        let mut fact = 1.0;
        for (n, pn) in p.iter().enumerate().take(13) {
            if n > 0 {
                fact *= n as f64;
            }
            let poisson = (-4.0f64).exp() * 4.0f64.powi(n as i32) / fact;
            assert!((pn - poisson).abs() < 1e-12, "n = {n}");
        }
        assert!(mandel_q(&s.vector).unwrap().abs() < 1e-10);
    }

    #[test]
    fn number_state_q_is_minus_one() {
        let v = FockVector::number_state(4, 8);
        assert!((mandel_q(&v).unwrap() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn vacuum_q_is_an_error() {
        let v = FockVector::number_state(0, 4);
        assert!(matches!(mandel_q(&v), Err(Error::VacuumState)));
    }

    #[test]
    fn dual_harmonious_distribution_follows_bessel_weights() {
        // P(n) ∝ 1/(n!)^2 at z = 1, total mass I0(2)
        let s = dual_inverse_state(
            &NonlinearityFunction::harmonious(),
            c(1.0, 0.0),
            Trunc::Auto,
        )
        .unwrap();
        let p = photon_distribution(&s.vector);
        let i0 = crate::special::bessel_i0(2.0);
        let mut fact = 1.0;
        for (n, pn) in p.iter().enumerate().take(9) {
            if n > 0 {
                fact *= n as f64;
            }
            assert!((pn - 1.0 / (fact * fact) / i0).abs() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn dual_bosonic_q_frozen_value() {
        // independently summed from the series 1/(n!)^3 at |z| = 1
        let s = dual_inverse_bosonic(c(1.0, 0.0), Trunc::Auto).unwrap();
        let q = mandel_q(&s.vector).unwrap();
        assert!((q - (-0.373169888556233)).abs() < 1e-9, "{q}");
        assert!(q < 0.0);
    }

    #[test]
    fn vacuum_report() {
        let v = FockVector::number_state(0, 8);
        let r = report(&v);
        assert_eq!(r.var_x, 0.5);
        assert_eq!(r.var_p, 0.5);
        assert_eq!(r.mean_x, 0.0);
        assert!(r.mandel_q.is_none());
        assert!(!r.squeezed_x() && !r.squeezed_p());
    }

    #[test]
    fn coherent_state_is_minimum_uncertainty() {
        let z = c(0.8, -0.4);
        let s = standard_cs(z, Trunc::Auto).unwrap();
        let r = report(&s.vector);
        assert!((r.var_x - 0.5).abs() < 1e-10);
        assert!((r.var_p - 0.5).abs() < 1e-10);
        assert!((r.mean_x - std::f64::consts::SQRT_2 * z.re).abs() < 1e-10);
        assert!((r.mean_p - std::f64::consts::SQRT_2 * z.im).abs() < 1e-10);
    }

    #[test]
    fn mean_n_matches_number_operator_expectation() {
        let s = dual_inverse_state(&NonlinearityFunction::hydrogen(), c(0.7, 0.3), Trunc::Auto)
            .unwrap();
        let r = report(&s.vector);
        let nv = apply(&ShiftOperator::number(), &s.vector);
        let via_operator = inner(&s.vector, &nv);
        assert!((r.mean_n - via_operator.re).abs() < 1e-12);
        assert!(via_operator.im.abs() < 1e-14);
    }

    #[test]
    fn heisenberg_bound_holds() {
        for &za in &[0.2f64, 0.8, 2.0] {
            let s = dual_inverse_state(
                &NonlinearityFunction::hydrogen(),
                Complex64::from_polar(za, 0.7),
                Trunc::Auto,
            )
            .unwrap();
            let r = report(&s.vector);
            assert!(r.var_x * r.var_p >= 0.25 - 10.0 * r.tail_bound - 1e-12);
        }
    }
}
