//! Named invariant suites over the operator algebra, the eigenstate
//! characterizations, the duality reductions and the moment closures.
//! The CLI `verify` subcommand prints one line per check; tests reuse the
//! same suites.

use num_complex::Complex64;

use crate::fock::{apply, commutator_on_number_state, FockVector, ShiftOperator};
use crate::identity::{verify_weight, MomentKind};
use crate::nonlinearity::NonlinearityFunction;
use crate::observables::report;
use crate::special::bessel_k0;
use crate::states::{
    dual_inverse_bosonic, dual_inverse_state, eigen_residual, inverse_state, nlcs, standard_cs,
    su11_inverse, Trunc,
};

/// Outcome of one named check.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn bound(name: &str, worst: f64, threshold: f64) -> Self {
        Check {
            name: name.to_string(),
            passed: worst.is_finite() && worst < threshold,
            detail: format!("worst {worst:.3e}, threshold {threshold:.1e}"),
        }
    }

    fn error(name: &str, err: impl std::fmt::Display) -> Self {
        Check {
            name: name.to_string(),
            passed: false,
            detail: format!("error: {err}"),
        }
    }
}

fn builtins() -> Vec<NonlinearityFunction> {
    vec![
        NonlinearityFunction::unit(),
        NonlinearityFunction::inverse_bosonic(),
        NonlinearityFunction::hydrogen(),
        NonlinearityFunction::harmonious(),
        NonlinearityFunction::su11(0.5).unwrap(),
        NonlinearityFunction::su11(1.0).unwrap(),
        NonlinearityFunction::su11(1.5).unwrap(),
    ]
}

const N_TOP: usize = 54;
const OP_TOL: f64 = 1e-12;

/// Operator identities on number states n = 0..50.
pub fn operators_suite() -> Vec<Check> {
    let mut checks = Vec::new();

    // right/left inverses of the bosonic pair and its commutator
    let a = ShiftOperator::annihilation();
    let ad = ShiftOperator::creation();
    let ai = ShiftOperator::inverse_annihilation();
    let adi = ShiftOperator::inverse_creation();

    let mut worst: f64 = 0.0;
    for n in 0..=50usize {
        let v = FockVector::number_state(n, N_TOP);
        let erase_at_vacuum = if n == 0 { 0.0 } else { 1.0 };
        worst = worst
            .max(apply(&a, &apply(&ai, &v)).sub(&v).norm())
            .max(apply(&adi, &apply(&ad, &v)).sub(&v).norm())
            .max(
                apply(&ai, &apply(&a, &v))
                    .sub(&v.scale(Complex64::new(erase_at_vacuum, 0.0)))
                    .norm(),
            )
            .max(
                apply(&ad, &apply(&adi, &v))
                    .sub(&v.scale(Complex64::new(erase_at_vacuum, 0.0)))
                    .norm(),
            );
    }
    checks.push(Check::bound(
        "bosonic right/left inverse identities",
        worst,
        OP_TOL,
    ));

    let mut worst: f64 = 0.0;
    for n in 0..=50usize {
        let expect = if n == 0 {
            FockVector::number_state(0, N_TOP)
        } else {
            FockVector::zero(N_TOP)
        };
        let comm = commutator_on_number_state(&a, &ai, n, N_TOP).unwrap();
        worst = worst.max(comm.sub(&expect).norm());
        let comm = commutator_on_number_state(&adi, &ad, n, N_TOP).unwrap();
        worst = worst.max(comm.sub(&expect).norm());
    }
    checks.push(Check::bound(
        "[a, a^-1] = |0><0| = [a+^-1, a+]",
        worst,
        OP_TOL,
    ));

    // inverse-bosonic ladder commutator: -1/(n(n+1)) away from the vacuum
    let mut worst: f64 = 0.0;
    for n in 0..=50usize {
        let comm = commutator_on_number_state(&adi, &ai, n, N_TOP).unwrap();
        let expect = if n == 0 {
            1.0
        } else {
            let nf = n as f64;
            -1.0 / (nf * (nf + 1.0))
        };
        worst = worst.max((comm.coeff(n) - Complex64::new(expect, 0.0)).norm());
    }
    checks.push(Check::bound(
        "inverse-bosonic ladder commutator -1/(n(n+1))",
        worst,
        OP_TOL,
    ));

    // deformed identities and commutators for every builtin deformation
    for f in builtins() {
        let lower = ShiftOperator::deformed_annihilation(&f);
        let raise = ShiftOperator::deformed_creation(&f);
        let lower_inv = ShiftOperator::inverse_deformed_creation(&f);
        let raise_inv = ShiftOperator::inverse_deformed_annihilation(&f);

        let mut worst: f64 = 0.0;
        for n in 0..=50usize {
            let v = FockVector::number_state(n, N_TOP);
            let erased = if n == 0 {
                v.scale(Complex64::ZERO)
            } else {
                v.clone()
            };
            worst = worst
                .max(apply(&lower, &apply(&raise_inv, &v)).sub(&v).norm())
                .max(apply(&lower_inv, &apply(&raise, &v)).sub(&v).norm())
                .max(apply(&raise_inv, &apply(&lower, &v)).sub(&erased).norm())
                .max(apply(&raise, &apply(&lower_inv, &v)).sub(&erased).norm());
        }
        checks.push(Check::bound(
            &format!("deformed inverse identities [{f}]"),
            worst,
            OP_TOL,
        ));

        let mut worst: f64 = 0.0;
        for n in 0..=50usize {
            let comm = commutator_on_number_state(&lower_inv, &raise_inv, n, N_TOP).unwrap();
            // at the vacuum the formula's n-term drops and the value is
            // 1/F(1)^2, reducing to |0><0| when F(1) = 1
            let expect = if n == 0 {
                1.0 / f.eval(1).powi(2)
            } else {
                let nf = n as f64;
                1.0 / ((nf + 1.0) * f.eval(n as u64 + 1).powi(2))
                    - 1.0 / (nf * f.eval(n as u64).powi(2))
            };
            worst = worst.max((comm.coeff(n) - Complex64::new(expect, 0.0)).norm());
        }
        checks.push(Check::bound(
            &format!("inverse-deformed commutator weights [{f}]"),
            worst,
            OP_TOL,
        ));
    }

    checks
}

const EIGEN_TOL: f64 = 1e-8;
const EIGEN_TRUNC: Trunc = Trunc::Fixed(220);

/// Eigenstate residuals for every family with an eigenvalue
/// characterization.
pub fn eigen_suite() -> Vec<Check> {
    let mut checks = Vec::new();
    let c = |re: f64| Complex64::new(re, 0.0);

    match standard_cs(c(1.3), EIGEN_TRUNC) {
        Ok(s) => checks.push(Check::bound(
            "a on standard CS (z = 1.3)",
            eigen_residual(&ShiftOperator::annihilation(), &s.vector, c(1.3)),
            EIGEN_TOL,
        )),
        Err(e) => checks.push(Check::error("a on standard CS (z = 1.3)", e)),
    }

    for (f, z) in [
        (NonlinearityFunction::hydrogen(), 0.5),
        (NonlinearityFunction::su11(0.5).unwrap(), 0.5),
        (NonlinearityFunction::su11(1.5).unwrap(), 0.5),
    ] {
        let name = format!("inverse-deformed lowering on inverse state [{f}] (z = {z})");
        match inverse_state(&f, c(z), EIGEN_TRUNC) {
            Ok(s) => {
                let op = ShiftOperator::inverse_deformed_creation(&f);
                checks.push(Check::bound(
                    &name,
                    eigen_residual(&op, &s.vector, c(z)),
                    EIGEN_TOL,
                ));
            }
            Err(e) => checks.push(Check::error(&name, e)),
        }
    }

    match dual_inverse_bosonic(c(2.0), EIGEN_TRUNC) {
        Ok(s) => {
            let b = ShiftOperator::dual_annihilation(&NonlinearityFunction::unit());
            checks.push(Check::bound(
                "a n on dual-bosonic state (z = 2)",
                eigen_residual(&b, &s.vector, c(2.0)),
                EIGEN_TOL,
            ));
        }
        Err(e) => checks.push(Check::error("a n on dual-bosonic state (z = 2)", e)),
    }

    for f in [
        NonlinearityFunction::hydrogen(),
        NonlinearityFunction::harmonious(),
    ] {
        let name = format!("dual lowering on dual state [{f}] (z = 1.5)");
        match dual_inverse_state(&f, c(1.5), EIGEN_TRUNC) {
            Ok(s) => {
                let b = ShiftOperator::dual_annihilation(&f);
                checks.push(Check::bound(
                    &name,
                    eigen_residual(&b, &s.vector, c(1.5)),
                    EIGEN_TOL,
                ));
            }
            Err(e) => checks.push(Check::error(&name, e)),
        }
    }

    for m in [1u32, 2] {
        let name = format!("a - {m} a+^-1 on photon-added state (z = 1)");
        match crate::states::photon_added(c(1.0), m, EIGEN_TRUNC) {
            Ok(s) => {
                let av = apply(&ShiftOperator::annihilation(), &s.vector);
                let corr = apply(&ShiftOperator::inverse_creation(), &s.vector).scale(c(m as f64));
                let diff = av.sub(&corr).sub(&s.vector.scale(c(1.0)));
                let res: f64 = (0..s.vector.truncation())
                    .map(|k| diff.coeff(k).norm_sqr())
                    .sum::<f64>()
                    .sqrt();
                checks.push(Check::bound(&name, res, EIGEN_TOL));
            }
            Err(e) => checks.push(Check::error(&name, e)),
        }
    }

    checks
}

/// Reductions between families and closed-form normalization constants.
pub fn duality_suite() -> Vec<Check> {
    let mut checks = Vec::new();
    let c = |re: f64| Complex64::new(re, 0.0);
    let elementwise = |a: &FockVector, b: &FockVector| -> f64 {
        (0..=a.truncation().max(b.truncation()))
            .map(|n| (a.coeff(n) - b.coeff(n)).norm())
            .fold(0.0, f64::max)
    };

    {
        let name = "inverse state with F = 1/n reduces to the standard CS";
        let res = (|| {
            let a = inverse_state(
                &NonlinearityFunction::inverse_bosonic(),
                c(1.0),
                Trunc::Fixed(96),
            )?;
            let b = standard_cs(c(1.0), Trunc::Fixed(96))?;
            Ok::<f64, crate::error::Error>(elementwise(&a.vector, &b.vector))
        })();
        match res {
            Ok(worst) => checks.push(Check::bound(name, worst, 1e-12)),
            Err(e) => checks.push(Check::error(name, e)),
        }
    }

    {
        let name = "su11-inverse at kappa = 1/2 equals the harmonious inverse state";
        let res = (|| {
            let a = su11_inverse(c(0.4), 0.5, Trunc::Fixed(128))?;
            let b = inverse_state(
                &NonlinearityFunction::harmonious(),
                c(0.4),
                Trunc::Fixed(128),
            )?;
            Ok::<f64, crate::error::Error>(elementwise(&a.vector, &b.vector))
        })();
        match res {
            Ok(worst) => checks.push(Check::bound(name, worst, 1e-12)),
            Err(e) => checks.push(Check::error(name, e)),
        }
    }

    {
        let name = "dual-bosonic normalization matches 0F2(1,1;|z|^2)";
        let res = (|| {
            let mut worst: f64 = 0.0;
            for za in [0.5, 1.0, 2.0, 4.0] {
                let s = dual_inverse_bosonic(c(za), Trunc::Auto)?;
                let expect = crate::special::hyp0f2_11(za * za);
                worst = worst.max((s.norm_constant() / expect - 1.0).abs());
            }
            Ok::<f64, crate::error::Error>(worst)
        })();
        match res {
            Ok(worst) => checks.push(Check::bound(name, worst, 1e-10)),
            Err(e) => checks.push(Check::error(name, e)),
        }
    }

    {
        let name = "dual-harmonious normalization matches I0(2|z|)";
        let res = (|| {
            let mut worst: f64 = 0.0;
            for za in [0.5, 1.0, 3.0] {
                let s =
                    dual_inverse_state(&NonlinearityFunction::harmonious(), c(za), Trunc::Auto)?;
                worst = worst
                    .max((s.norm_constant() / crate::special::bessel_i0(2.0 * za) - 1.0).abs());
            }
            Ok::<f64, crate::error::Error>(worst)
        })();
        match res {
            Ok(worst) => checks.push(Check::bound(name, worst, 1e-10)),
            Err(e) => checks.push(Check::error(name, e)),
        }
    }

    {
        let name = "harmonious nlcs has geometric coefficients";
        let res = (|| {
            let s = nlcs(&NonlinearityFunction::harmonious(), c(0.5), Trunc::Auto)?;
            let c0 = s.vector.coeff(0);
            let worst = (0..=16)
                .map(|n| (s.vector.coeff(n) - c0 * c(0.5).powu(n as u32)).norm())
                .fold(0.0, f64::max);
            Ok::<f64, crate::error::Error>(worst)
        })();
        match res {
            Ok(worst) => checks.push(Check::bound(name, worst, 1e-12)),
            Err(e) => checks.push(Check::error(name, e)),
        }
    }

    {
        let name = "gp-su11 normalization matches Gamma(2k)(1-|z|^2)^{-2k}";
        let res = (|| {
            let mut worst: f64 = 0.0;
            for kappa in [0.5, 1.0, 1.5] {
                for za in [0.1, 0.5, 0.9] {
                    let s = crate::states::gp_su11(c(za), kappa, Trunc::Auto)?;
                    let expect = crate::special::ln_gamma(2.0 * kappa).exp()
                        * (1.0 - za * za).powf(-2.0 * kappa);
                    worst = worst.max((s.norm_constant() / expect - 1.0).abs());
                }
            }
            Ok::<f64, crate::error::Error>(worst)
        })();
        match res {
            Ok(worst) => checks.push(Check::bound(name, worst, 1e-8)),
            Err(e) => checks.push(Check::error(name, e)),
        }
    }

    {
        let name = "su11-inverse normalization matches 2F1(1,1;2k;|z|^2)/Gamma(2k)";
        let res = (|| {
            let mut worst: f64 = 0.0;
            for kappa in [0.5, 1.0, 1.5] {
                for za in [0.1, 0.5, 0.9] {
                    let s = su11_inverse(c(za), kappa, Trunc::Auto)?;
                    let expect = crate::special::hyp2f1_11(2.0 * kappa, za * za)
                        / crate::special::ln_gamma(2.0 * kappa).exp();
                    worst = worst.max((s.norm_constant() / expect - 1.0).abs());
                }
            }
            Ok::<f64, crate::error::Error>(worst)
        })();
        match res {
            Ok(worst) => checks.push(Check::bound(name, worst, 1e-8)),
            Err(e) => checks.push(Check::error(name, e)),
        }
    }

    {
        // Q for the standard CS vanishes; its quadratures sit at the vacuum value.
        let name = "standard CS: Q = 0 and var_x = var_p = 1/2";
        let res = (|| {
            let s = standard_cs(Complex64::new(1.0, 0.7), Trunc::Auto)?;
            let r = report(&s.vector);
            let worst = r
                .mandel_q
                .unwrap_or(f64::INFINITY)
                .abs()
                .max((r.var_x - 0.5).abs())
                .max((r.var_p - 0.5).abs());
            Ok::<f64, crate::error::Error>(worst)
        })();
        match res {
            Ok(worst) => checks.push(Check::bound(name, worst, 1e-10)),
            Err(e) => checks.push(Check::error(name, e)),
        }
    }

    checks
}

/// Quadrature closures of the resolution-of-identity moment problems.
pub fn moments_suite() -> Vec<Check> {
    let mut checks = Vec::new();

    {
        let name = "harmonious dual: 2 K0(2 sqrt x) reproduces (n!)^2, n <= 10";
        match verify_weight(
            &|x: f64| 2.0 * bessel_k0(2.0 * x.sqrt()),
            &NonlinearityFunction::harmonious(),
            MomentKind::Dual,
            10,
        ) {
            Ok(suite) => {
                let worst = suite
                    .checks
                    .iter()
                    .map(|ch| ch.rel_error)
                    .fold(0.0, f64::max);
                checks.push(Check::bound(name, worst, 1e-6));
            }
            Err(e) => checks.push(Check::error(name, e)),
        }
    }

    {
        let name = "unit nlcs: e^-x reproduces n!, n <= 10";
        match verify_weight(
            &|x: f64| (-x).exp(),
            &NonlinearityFunction::unit(),
            MomentKind::Nlcs,
            10,
        ) {
            Ok(suite) => {
                let worst = suite
                    .checks
                    .iter()
                    .map(|ch| ch.rel_error)
                    .fold(0.0, f64::max);
                checks.push(Check::bound(name, worst, 1e-8));
            }
            Err(e) => checks.push(Check::error(name, e)),
        }
    }

    {
        let name = "moment-target recursion across kinds and builtins";
        let mut worst: f64 = 0.0;
        for f in builtins() {
            for n in 1..=15u64 {
                let nf = n as f64;
                let fe = f.eval(n);
                for (kind, step) in [
                    (MomentKind::Nlcs, (nf * fe * fe).ln()),
                    (MomentKind::Inverse, -(nf * fe * fe).ln()),
                    (MomentKind::Dual, (nf.powi(3) * fe * fe).ln()),
                ] {
                    let diff = crate::identity::moment_target(&f, kind, n)
                        - crate::identity::moment_target(&f, kind, n - 1);
                    worst = worst.max((diff - step).abs());
                }
            }
        }
        checks.push(Check::bound(name, worst, 1e-12));
    }

    checks
}

/// Every suite, concatenated.
pub fn all_suites() -> Vec<Check> {
    let mut checks = operators_suite();
    checks.extend(eigen_suite());
    checks.extend(duality_suite());
    checks.extend(moments_suite());
    checks
}
