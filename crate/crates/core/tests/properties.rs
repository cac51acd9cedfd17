//! Property tests over the operator algebra and the state families, plus
//! the direct-summation moment oracle every family must agree with.

use num_complex::Complex64;
use proptest::prelude::*;

use dualcs_core::{
    apply, dual_inverse_state, gp_su11, inner, inverse_state, mandel_q, nlcs, photon_added,
    photon_subtracted, report, standard_cs, su11_inverse, FockVector, NonlinearityFunction,
    ShiftOperator, Trunc,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn operator_pool() -> Vec<ShiftOperator> {
    let hydrogen = NonlinearityFunction::hydrogen();
    let su = NonlinearityFunction::su11(1.5).unwrap();
    vec![
        ShiftOperator::annihilation(),
        ShiftOperator::creation(),
        ShiftOperator::inverse_annihilation(),
        ShiftOperator::inverse_creation(),
        ShiftOperator::number(),
        ShiftOperator::deformed_annihilation(&hydrogen),
        ShiftOperator::deformed_creation(&hydrogen),
        ShiftOperator::inverse_deformed_annihilation(&su),
        ShiftOperator::inverse_deformed_creation(&su),
        ShiftOperator::dual_annihilation(&hydrogen),
        ShiftOperator::dual_creation(&su),
    ]
}

fn small_vector() -> impl Strategy<Value = FockVector> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 24).prop_map(|pairs| {
        let coeffs: Vec<Complex64> = pairs
            .into_iter()
            .map(|(re, im)| Complex64::new(re, im))
            .collect();
        FockVector::new(coeffs, 0.0).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn apply_is_linear(
        u in small_vector(),
        v in small_vector(),
        a_re in -2.0..2.0f64,
        a_im in -2.0..2.0f64,
        b_re in -2.0..2.0f64,
        b_im in -2.0..2.0f64,
        op_idx in 0usize..11,
    ) {
        let op = &operator_pool()[op_idx];
        let alpha = c(a_re, a_im);
        let beta = c(b_re, b_im);
        let lhs = apply(op, &u.scale(alpha).add(&v.scale(beta)));
        let rhs = apply(op, &u).scale(alpha).add(&apply(op, &v).scale(beta));
        prop_assert!(lhs.sub(&rhs).norm() < 1e-12);
    }

    #[test]
    fn adjoint_moves_across_the_inner_product(
        u in small_vector(),
        v in small_vector(),
        op_idx in 0usize..11,
    ) {
        let op = &operator_pool()[op_idx];
        // zero the top coefficient so no weight leaves the window
        let zero_top = |w: &FockVector| {
            let mut coeffs = w.coeffs().to_vec();
            let top = coeffs.len() - 1;
            coeffs[top] = Complex64::ZERO;
            FockVector::new(coeffs, 0.0).unwrap()
        };
        let u = zero_top(&u);
        let v = zero_top(&v);
        let lhs = inner(&u, &apply(op, &v));
        let rhs = inner(&apply(&op.adjoint(), &u), &v);
        prop_assert!((lhs - rhs).norm() < 1e-11);
    }

    #[test]
    fn mandel_q_depends_only_on_the_modulus(
        theta in 0.0..std::f64::consts::TAU,
        r in 0.05..0.9f64,
    ) {
        let hydrogen = NonlinearityFunction::hydrogen();
        let rotated = Complex64::from_polar(r, theta);
        let flat = c(r, 0.0);

        let q_rot = mandel_q(&dual_inverse_state(&hydrogen, rotated, Trunc::Auto).unwrap().vector).unwrap();
        let q_flat = mandel_q(&dual_inverse_state(&hydrogen, flat, Trunc::Auto).unwrap().vector).unwrap();
        prop_assert!((q_rot - q_flat).abs() < 1e-10);

        let q_rot = mandel_q(&su11_inverse(rotated, 1.0, Trunc::Auto).unwrap().vector).unwrap();
        let q_flat = mandel_q(&su11_inverse(flat, 1.0, Trunc::Auto).unwrap().vector).unwrap();
        prop_assert!((q_rot - q_flat).abs() < 1e-10);
    }

    #[test]
    fn standard_cs_variances_are_rotation_invariant(
        theta in 0.0..std::f64::consts::TAU,
        r in 0.1..2.0f64,
    ) {
        let s = standard_cs(Complex64::from_polar(r, theta), Trunc::Auto).unwrap();
        let rep = report(&s.vector);
        prop_assert!((rep.var_x - 0.5).abs() < 1e-10);
        prop_assert!((rep.var_p - 0.5).abs() < 1e-10);
    }

    #[test]
    fn deformed_families_respect_heisenberg_under_rotation(
        theta in 0.0..std::f64::consts::TAU,
        r in 0.05..0.85f64,
    ) {
        let z = Complex64::from_polar(r, theta);
        let hydrogen = NonlinearityFunction::hydrogen();
        for vector in [
            inverse_state(&hydrogen, z, Trunc::Auto).unwrap().vector,
            dual_inverse_state(&hydrogen, z, Trunc::Auto).unwrap().vector,
            gp_su11(z, 1.0, Trunc::Auto).unwrap().vector,
        ] {
            let rep = report(&vector);
            prop_assert!(rep.var_x * rep.var_p >= 0.25 - 10.0 * rep.tail_bound - 1e-12);
        }
    }

    #[test]
    fn deformed_variances_are_continuous_in_the_phase(
        theta in 0.0..std::f64::consts::TAU,
        r in 0.1..0.8f64,
    ) {
        let delta = 1e-5;
        let hydrogen = NonlinearityFunction::hydrogen();
        let at = |th: f64| {
            let s = dual_inverse_state(&hydrogen, Complex64::from_polar(r, th), Trunc::Auto).unwrap();
            report(&s.vector)
        };
        let a = at(theta);
        let b = at(theta + delta);
        prop_assert!((a.var_x - b.var_x).abs() < 10.0 * delta);
        prop_assert!((a.var_p - b.var_p).abs() < 10.0 * delta);
    }

    #[test]
    fn constructors_return_normalized_vectors(
        r in 0.05..0.8f64,
        theta in 0.0..std::f64::consts::TAU,
        m in 0u32..3,
    ) {
        let z = Complex64::from_polar(r, theta);
        let hydrogen = NonlinearityFunction::hydrogen();
        let harmonious = NonlinearityFunction::harmonious();
        let built = [
            standard_cs(z, Trunc::Auto).unwrap(),
            nlcs(&hydrogen, z, Trunc::Auto).unwrap(),
            inverse_state(&hydrogen, z, Trunc::Auto).unwrap(),
            dual_inverse_state(&harmonious, z, Trunc::Auto).unwrap(),
            gp_su11(z, 1.5, Trunc::Auto).unwrap(),
            su11_inverse(z, 1.5, Trunc::Auto).unwrap(),
            photon_added(z, m, Trunc::Auto).unwrap(),
            photon_subtracted(z, m, Trunc::Auto).unwrap(),
        ];
        for s in built {
            prop_assert!((s.vector.norm_sq() - 1.0).abs() <= 10.0 * s.vector.tail_bound() + 1e-12);
        }
    }
}

// ---------------------------------------------------------------------------
// direct-summation moment oracle

/// Kahan-compensated sum.
struct Kahan {
    sum: f64,
    carry: f64,
}

impl Kahan {
    fn new() -> Self {
        Kahan {
            sum: 0.0,
            carry: 0.0,
        }
    }

    fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }
}

/// Amplitudes for real z > 0 built by plain products (no logs), the
/// independent route the implementation is checked against.
fn oracle_amplitudes(ratio: impl Fn(usize) -> f64, first: usize, len: usize) -> Vec<f64> {
    let mut amps = vec![0.0; len];
    amps[first] = 1.0;
    for n in first + 1..len {
        amps[n] = amps[n - 1] * ratio(n);
    }
    amps
}

struct OracleMoments {
    mean_n: f64,
    mean_n2: f64,
    var_x: f64,
    var_p: f64,
}

fn oracle_moments(amps: &[f64]) -> OracleMoments {
    let mut s = Kahan::new();
    let mut n1 = Kahan::new();
    let mut n2 = Kahan::new();
    let mut a1 = Kahan::new();
    let mut a2 = Kahan::new();
    for (n, &cn) in amps.iter().enumerate() {
        let p = cn * cn;
        s.add(p);
        n1.add(n as f64 * p);
        n2.add((n * n) as f64 * p);
        if n + 1 < amps.len() {
            a1.add(cn * amps[n + 1] * (n as f64 + 1.0).sqrt());
        }
        if n + 2 < amps.len() {
            a2.add(cn * amps[n + 2] * ((n as f64 + 1.0) * (n as f64 + 2.0)).sqrt());
        }
    }
    let mean_n = n1.sum / s.sum;
    let mean_n2 = n2.sum / s.sum;
    let a = a1.sum / s.sum;
    let a2 = a2.sum / s.sum;
    let mean_x = std::f64::consts::SQRT_2 * a;
    OracleMoments {
        mean_n,
        mean_n2,
        var_x: 0.5 + mean_n + a2 - mean_x * mean_x,
        var_p: 0.5 + mean_n - a2,
    }
}

#[test]
fn all_family_moments_match_the_direct_summation_oracle() {
    let z = 0.4f64;
    let hydrogen = NonlinearityFunction::hydrogen();
    let harmonious = NonlinearityFunction::harmonious();
    let kappa = 1.5f64;
    let len = 160usize;

    let fh = |n: usize| hydrogen.eval(n as u64);
    let cases: Vec<(&str, FockVector, Vec<f64>)> = vec![
        (
            "standard",
            standard_cs(c(z, 0.0), Trunc::Auto).unwrap().vector,
            oracle_amplitudes(|n| z / (n as f64).sqrt(), 0, len),
        ),
        (
            "nlcs-hydrogen",
            nlcs(&hydrogen, c(z, 0.0), Trunc::Auto).unwrap().vector,
            oracle_amplitudes(|n| z / ((n as f64).sqrt() * fh(n)), 0, len),
        ),
        (
            "inverse-hydrogen",
            inverse_state(&hydrogen, c(z, 0.0), Trunc::Auto)
                .unwrap()
                .vector,
            oracle_amplitudes(|n| z * (n as f64).sqrt() * fh(n), 0, len),
        ),
        (
            "dual-hydrogen",
            dual_inverse_state(&hydrogen, c(z, 0.0), Trunc::Auto)
                .unwrap()
                .vector,
            oracle_amplitudes(|n| z / ((n as f64).sqrt() * n as f64 * fh(n)), 0, len),
        ),
        (
            "dual-harmonious",
            dual_inverse_state(&harmonious, c(z, 0.0), Trunc::Auto)
                .unwrap()
                .vector,
            oracle_amplitudes(|n| z / n as f64, 0, len),
        ),
        (
            "gp-su11",
            gp_su11(c(z, 0.0), kappa, Trunc::Auto).unwrap().vector,
            oracle_amplitudes(
                |n| z * ((n as f64 + 2.0 * kappa - 1.0) / n as f64).sqrt(),
                0,
                len,
            ),
        ),
        (
            "su11-inverse",
            su11_inverse(c(z, 0.0), kappa, Trunc::Auto).unwrap().vector,
            oracle_amplitudes(
                |n| z * (n as f64 / (n as f64 + 2.0 * kappa - 1.0)).sqrt(),
                0,
                len,
            ),
        ),
        (
            "photon-added-2",
            photon_added(c(z, 0.0), 2, Trunc::Auto).unwrap().vector,
            oracle_amplitudes(|n| z * (n as f64).sqrt() / (n as f64 - 2.0), 2, len),
        ),
        (
            "photon-subtracted-1",
            photon_subtracted(c(z, 0.0), 1, Trunc::Auto).unwrap().vector,
            oracle_amplitudes(|n| z * (n as f64).sqrt() / (n as f64 + 1.0), 0, len),
        ),
    ];

    for (name, vector, amps) in cases {
        let implementation = report(&vector);
        let oracle = oracle_moments(&amps);
        let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(1e-6);
        assert!(
            rel(implementation.mean_n, oracle.mean_n) < 1e-8,
            "{name} mean_n: {} vs {}",
            implementation.mean_n,
            oracle.mean_n
        );
        assert!(
            rel(implementation.mean_n2, oracle.mean_n2) < 1e-8,
            "{name} mean_n2: {} vs {}",
            implementation.mean_n2,
            oracle.mean_n2
        );
        assert!(
            rel(implementation.var_x, oracle.var_x) < 1e-8,
            "{name} var_x: {} vs {}",
            implementation.var_x,
            oracle.var_x
        );
        assert!(
            rel(implementation.var_p, oracle.var_p) < 1e-8,
            "{name} var_p: {} vs {}",
            implementation.var_p,
            oracle.var_p
        );
    }
}

#[test]
fn eigen_residuals_shrink_with_truncation() {
    let hydrogen = NonlinearityFunction::hydrogen();
    let z = c(0.5, 0.0);
    let op = ShiftOperator::inverse_deformed_creation(&hydrogen);
    let r100 = dualcs_core::eigen_residual(
        &op,
        &inverse_state(&hydrogen, z, Trunc::Fixed(100))
            .unwrap()
            .vector,
        z,
    );
    let r200 = dualcs_core::eigen_residual(
        &op,
        &inverse_state(&hydrogen, z, Trunc::Fixed(200))
            .unwrap()
            .vector,
        z,
    );
    assert!(r200 <= r100 + 1e-15, "{r200} vs {r100}");
    assert!(r200 < 1e-8);
}
