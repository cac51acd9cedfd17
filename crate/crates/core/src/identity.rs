//! Resolution-of-identity moment targets and numerical verification of
//! candidate weight functions by quadrature.
//!
//! A family resolves the identity when some positive weight σ on (0, R)
//! reproduces a sequence of factorial-product moments. The targets are
//! carried in log space; candidate weights are integrated adaptively and
//! compared against the targets under both the bare and the π-prefactored
//! convention, keeping whichever the n = 0 moment selects.

use crate::error::{Error, Result};
use crate::nonlinearity::{radius_of_convergence, NonlinearityFunction, RadiusMode, Verdict};
use crate::quad;

/// Which family's moment condition to target.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentKind {
    /// [n f²(n)]!, for deformed states built directly from f.
    Nlcs,
    /// [1/(n F²(n))]!, for inverse-deformed states of the original F.
    Inverse,
    /// [n³ F²(n)]!, for the dual family of the original F.
    Dual,
}

/// ln of the moment target of order n.
pub fn moment_target(f: &NonlinearityFunction, kind: MomentKind, n: u64) -> f64 {
    let log_fact: f64 = (1..=n).map(|k| (k as f64).ln()).sum();
    let log_def = f.log_factorial_product(n);
    match kind {
        MomentKind::Nlcs => log_fact + 2.0 * log_def,
        MomentKind::Inverse => -log_fact - 2.0 * log_def,
        MomentKind::Dual => 3.0 * log_fact + 2.0 * log_def,
    }
}

/// Prefactor convention selected by the n = 0 moment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    /// ∫ σ(x) xⁿ dx matches the targets directly.
    Bare,
    /// π ∫ σ(x) xⁿ dx matches the targets.
    Pi,
}

/// One verified moment.
#[derive(Debug, Clone, Copy)]
pub struct MomentCheck {
    pub n: u64,
    /// ln of the target (targets overflow f64 quickly in linear scale).
    pub log_target: f64,
    /// The quadrature value, without any prefactor.
    pub integral: f64,
    /// Relative error under the suite's selected convention.
    pub rel_error: f64,
}

/// Result of verifying a candidate weight against a moment sequence.
#[derive(Debug, Clone)]
pub struct MomentSuite {
    pub kind: MomentKind,
    /// Radius of the integration domain (0, finite, or +inf).
    pub radius: f64,
    /// False when the probed radius is zero: no measure is attempted.
    pub supported: bool,
    pub convention: Convention,
    pub checks: Vec<MomentCheck>,
}

const QUAD_REL_TOL: f64 = 1e-9;
const CUTOFF_FACTOR: f64 = 1e-18;

/// Verify a candidate weight function on (0, R) against the moment targets
/// of `kind`, n = 0..=n_max.
///
/// An infinite domain is truncated at x* where
/// weight(x*)·x*^{n_max} < 1e-18 × the n = 0 mass. Integration runs in the
/// substituted variable x = u², which flattens the endpoint behaviour of
/// Bessel-type kernels.
pub fn verify_weight(
    weight: &dyn Fn(f64) -> f64,
    f: &NonlinearityFunction,
    kind: MomentKind,
    n_max: u64,
) -> Result<MomentSuite> {
    if n_max > 15 {
        return Err(Error::InvalidParameter(format!(
            "moment order {n_max} too high for well-conditioned quadrature (max 15)"
        )));
    }

    let report = match kind {
        MomentKind::Nlcs => radius_of_convergence(f, RadiusMode::Direct)?,
        MomentKind::Inverse => radius_of_convergence(&f.generalized_inverse(), RadiusMode::Direct)?,
        MomentKind::Dual => radius_of_convergence(f, RadiusMode::Dual)?,
    };
    let radius = report.radius();
    if matches!(report.verdict, Verdict::Zero) {
        return Ok(MomentSuite {
            kind,
            radius,
            supported: false,
            convention: Convention::Bare,
            checks: Vec::new(),
        });
    }

    let upper = match report.verdict {
        Verdict::Finite(r) => r,
        _ => cutoff(weight, n_max)?,
    };

    let moment = |n: u64| -> Result<f64> {
        // x = u^2: int_0^R w(x) x^n dx = int_0^sqrt(R) w(u^2) u^{2n} 2u du
        let integrand = move |u: f64| weight(u * u) * u.powi(2 * n as i32 + 1) * 2.0;
        Ok(quad::integrate(&integrand, 0.0, upper.sqrt(), QUAD_REL_TOL, 1e-300)?.value)
    };

    let mass = moment(0)?;
    let target0 = moment_target(f, kind, 0).exp(); // always 1
    let convention = if (mass - target0).abs() <= (std::f64::consts::PI * mass - target0).abs() {
        Convention::Bare
    } else {
        Convention::Pi
    };

    let mut checks = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        let integral = if n == 0 { mass } else { moment(n)? };
        let log_target = moment_target(f, kind, n);
        let with_convention = match convention {
            Convention::Bare => integral,
            Convention::Pi => std::f64::consts::PI * integral,
        };
        let rel_error = (with_convention.ln() - log_target).exp_m1().abs();
        checks.push(MomentCheck {
            n,
            log_target,
            integral,
            rel_error,
        });
    }

    Ok(MomentSuite {
        kind,
        radius,
        supported: true,
        convention,
        checks,
    })
}

/// Find the truncation point for an infinite-domain weight.
fn cutoff(weight: &dyn Fn(f64) -> f64, n_max: u64) -> Result<f64> {
    // reference mass of the measure on a first window
    let mut x_star: f64 = 16.0;
    let integrand = |u: f64| weight(u * u) * 2.0 * u;
    let reference = quad::integrate(&integrand, 0.0, x_star.sqrt(), 1e-6, 1e-300)?
        .value
        .abs()
        .max(f64::MIN_POSITIVE);
    while weight(x_star) * x_star.powi(n_max as i32) > CUTOFF_FACTOR * reference {
        x_star *= 2.0;
        if x_star > 1e12 {
            return Err(Error::QuadratureFailure {
                rel_tol: QUAD_REL_TOL,
            });
        }
    }
    Ok(x_star)
}
