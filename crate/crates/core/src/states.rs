//! Constructors for the coherent-state families: the standard coherent
//! state, deformed (nonlinear) states, the inverse-deformed states and
//! their duals, the su(1,1) realizations, and photon added/subtracted
//! states.
//!
//! Every family has Fock coefficients of the form
//! `c_k ∝ z^{k-offset} · exp(w(k))` with a positive real weight, so all
//! constructors share one log-space series engine that handles truncation
//! growth, tail accounting, domain checks and divergence detection.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{apply, FockVector, ShiftOperator};
use crate::nonlinearity::{radius_of_convergence, NonlinearityFunction, RadiusMode, Verdict};
use crate::special::ln_gamma;

/// Hard cap on automatic truncation growth.
pub const MAX_TRUNCATION: usize = 4096;
/// Relative weight allowed beyond the truncation window.
pub const TAIL_TARGET: f64 = 1e-12;
/// Required relative size of the last kept term.
pub const LAST_TERM_RATIO: f64 = 1e-14;

const MIN_AUTO_TRUNCATION: usize = 64;

/// Truncation request: grow automatically until the tail criteria hold, or
/// evaluate at a fixed window (which still must satisfy the criteria).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Trunc {
    #[default]
    Auto,
    Fixed(usize),
}

/// A constructed state plus its normalization constant (kept in log form:
/// the constant itself overflows f64 for large |z| in some families).
#[derive(Debug, Clone)]
pub struct BuiltState {
    pub vector: FockVector,
    /// ln of the normalization constant in the family's natural scale.
    pub log_norm: f64,
    pub truncation_used: usize,
}

impl BuiltState {
    pub fn norm_constant(&self) -> f64 {
        self.log_norm.exp()
    }
}

// ---------------------------------------------------------------------------
// series engine

struct Attempt {
    logt: Vec<f64>,
    max_logt: f64,
    sum: f64,
    ok: bool,
    tail_rel: f64,
}

fn attempt(table: &dyn Fn(usize) -> Vec<f64>, offset: usize, ln_z: f64, n: usize) -> Attempt {
    let logw = table(n);
    debug_assert_eq!(logw.len(), n + 1);
    let logt: Vec<f64> = (0..=n)
        .map(|k| {
            if k < offset {
                f64::NEG_INFINITY
            } else {
                2.0 * (logw[k] + (k - offset) as f64 * ln_z)
            }
        })
        .collect();
    let max_logt = logt.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = logt.iter().map(|&l| (l - max_logt).exp()).sum();

    let last_rel = (logt[n] - max_logt).exp() / sum;
    let ratio = (logt[n] - logt[n - 1]).exp();
    let tail_rel = if ratio < 1.0 {
        last_rel * ratio / (1.0 - ratio)
    } else {
        f64::INFINITY
    };
    let ok = last_rel < LAST_TERM_RATIO && ratio < 1.0 && tail_rel < TAIL_TARGET;

    Attempt {
        logt,
        max_logt,
        sum,
        ok,
        tail_rel,
    }
}

fn finalize(a: Attempt, offset: usize, z: Complex64, n: usize) -> BuiltState {
    let theta = z.arg();
    let log_scale = 0.5 * (a.max_logt + a.sum.ln());
    let coeffs: Vec<Complex64> = (0..=n)
        .map(|k| {
            if k < offset {
                Complex64::ZERO
            } else {
                let amp = (0.5 * a.logt[k] - log_scale).exp();
                Complex64::from_polar(amp, (k - offset) as f64 * theta)
            }
        })
        .collect();
    BuiltState {
        vector: FockVector::normalized_from_parts(coeffs, a.tail_rel),
        log_norm: a.max_logt + a.sum.ln(),
        truncation_used: n,
    }
}

fn fail(n: usize) -> Error {
    Error::Truncation {
        n_max: n,
        target: TAIL_TARGET,
    }
}

/// Build a normalized series state from a log-weight table.
///
/// `table(n)` must return ln-weights for indices 0..=n; entries below
/// `offset` are ignored (the coefficient carries z^{k-offset}).
fn build_series(
    table: &dyn Fn(usize) -> Vec<f64>,
    offset: usize,
    z: Complex64,
    trunc: Trunc,
) -> Result<BuiltState> {
    if z.norm() == 0.0 {
        let n = match trunc {
            Trunc::Fixed(n) => n,
            Trunc::Auto => MIN_AUTO_TRUNCATION.max(offset + 2),
        };
        if n < offset {
            return Err(Error::InvalidParameter(format!(
                "truncation {n} cannot hold the leading coefficient at index {offset}"
            )));
        }
        let logw = table(n);
        let mut coeffs = vec![Complex64::ZERO; n + 1];
        coeffs[offset] = Complex64::ONE;
        return Ok(BuiltState {
            vector: FockVector::normalized_from_parts(coeffs, 0.0),
            log_norm: 2.0 * logw[offset],
            truncation_used: n,
        });
    }

    let ln_z = z.norm().ln();
    match trunc {
        Trunc::Fixed(n) => {
            if n < offset + 2 {
                return Err(Error::InvalidParameter(format!(
                    "fixed truncation {n} too small for a series starting at index {offset}"
                )));
            }
            let a = attempt(table, offset, ln_z, n);
            if a.ok {
                Ok(finalize(a, offset, z, n))
            } else {
                Err(fail(n))
            }
        }
        Trunc::Auto => {
            let mut n = MIN_AUTO_TRUNCATION.max(offset + 16);
            loop {
                let a = attempt(table, offset, ln_z, n);
                if a.ok {
                    return Ok(finalize(a, offset, z, n));
                }
                if n >= MAX_TRUNCATION {
                    return Err(fail(n));
                }
                n = (n * 2).min(MAX_TRUNCATION);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// log-weight tables

/// Running ln k! values S_0..S_n.
fn log_factorials(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    out.push(0.0);
    for k in 1..=n {
        acc += (k as f64).ln();
        out.push(acc);
    }
    out
}

fn log_deformation_products(f: &NonlinearityFunction, n: usize) -> Vec<f64> {
    f.log_factorial_products().take(n + 1).collect()
}

/// Σ ln(k + 2κ - 1) for k = 1..n, i.e. ln Γ(n + 2κ)/Γ(2κ) by recurrence.
fn log_pochhammer_2k(kappa: f64, n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    out.push(0.0);
    for k in 1..=n {
        acc += (k as f64 + 2.0 * kappa - 1.0).ln();
        out.push(acc);
    }
    out
}

// ---------------------------------------------------------------------------
// domain guards

enum ZeroRadiusError {
    Domain,
    Divergent,
}

fn disk_guard(
    probe_of: &NonlinearityFunction,
    mode: RadiusMode,
    z: Complex64,
    on_zero: ZeroRadiusError,
) -> Result<()> {
    let report = radius_of_convergence(probe_of, mode)?;
    let z_abs = z.norm();
    match report.verdict {
        Verdict::Infinite => Ok(()),
        Verdict::Zero => {
            if z_abs == 0.0 {
                Ok(())
            } else {
                match on_zero {
                    ZeroRadiusError::Domain => Err(Error::Domain { z_abs, radius: 0.0 }),
                    ZeroRadiusError::Divergent => Err(Error::DivergentNormalization),
                }
            }
        }
        Verdict::Finite(radius) => {
            // The probed radius carries ~1e-9 uncertainty; reject a thin
            // guard band inside it, where no truncation could converge
            // anyway.
            if z_abs >= radius * (1.0 - 1e-9) {
                Err(Error::Domain { z_abs, radius })
            } else {
                Ok(())
            }
        }
    }
}

// ---------------------------------------------------------------------------
// family constructors

/// Standard coherent state: c_n = e^{-|z|²/2} zⁿ/√(n!).
pub fn standard_cs(z: Complex64, trunc: Trunc) -> Result<BuiltState> {
    build_series(
        &|n| log_factorials(n).iter().map(|s| -0.5 * s).collect(),
        0,
        z,
        trunc,
    )
}

/// Deformed (nonlinear) coherent state: c_n ∝ zⁿ/(√(n!) [f(n)]!).
///
/// Defined on the disk |z| < lim n f(n)²; outside it, `Error::Domain`.
pub fn nlcs(f: &NonlinearityFunction, z: Complex64, trunc: Trunc) -> Result<BuiltState> {
    disk_guard(f, RadiusMode::Direct, z, ZeroRadiusError::Domain)?;
    let f = f.clone();
    build_series(
        &move |n| {
            let s = log_factorials(n);
            let l = log_deformation_products(&f, n);
            (0..=n).map(|k| -0.5 * s[k] - l[k]).collect()
        },
        0,
        z,
        trunc,
    )
}

/// Eigenstate of the inverse-deformed annihilation-like operator, written
/// in terms of the original deformation F: c_n ∝ zⁿ √(n!) [F(n)]!.
///
/// Its normalization series Σ n! |z|^{2n} ([F(n)]!)² has radius
/// lim [n F(n)²]⁻¹; a zero radius makes every z ≠ 0 divergent.
pub fn inverse_state(f: &NonlinearityFunction, z: Complex64, trunc: Trunc) -> Result<BuiltState> {
    disk_guard(
        &f.generalized_inverse(),
        RadiusMode::Direct,
        z,
        ZeroRadiusError::Divergent,
    )?;
    let f = f.clone();
    build_series(
        &move |n| {
            let s = log_factorials(n);
            let l = log_deformation_products(&f, n);
            (0..=n).map(|k| 0.5 * s[k] + l[k]).collect()
        },
        0,
        z,
        trunc,
    )
}

/// Dual of [`inverse_state`]: c_n ∝ zⁿ/(√(n!) [n F(n)]!), with
/// normalization Σ |z|^{2n}/((n!)³ ([F(n)]!)²) on the disk of radius
/// lim n³ F(n)².
pub fn dual_inverse_state(
    f: &NonlinearityFunction,
    z: Complex64,
    trunc: Trunc,
) -> Result<BuiltState> {
    disk_guard(f, RadiusMode::Dual, z, ZeroRadiusError::Domain)?;
    let f = f.clone();
    build_series(
        &move |n| {
            let s = log_factorials(n);
            let l = log_deformation_products(&f, n);
            (0..=n).map(|k| -1.5 * s[k] - l[k]).collect()
        },
        0,
        z,
        trunc,
    )
}

/// The would-be eigenstate of a†⁻¹ (c_n ∝ √(n!) zⁿ). Its normalization
/// series Σ n! |z|^{2n} diverges for every z ≠ 0, so construction fails
/// with `DivergentNormalization` away from the vacuum.
pub fn inverse_bosonic_eigenstate(z: Complex64, trunc: Trunc) -> Result<BuiltState> {
    inverse_state(&NonlinearityFunction::unit(), z, trunc)
}

/// Dual of the inverse-bosonic family: c_n ∝ zⁿ/(n!)^{3/2}, normalization
/// ₀F₂(1,1;|z|²), entire in z.
pub fn dual_inverse_bosonic(z: Complex64, trunc: Trunc) -> Result<BuiltState> {
    dual_inverse_state(&NonlinearityFunction::unit(), z, trunc)
}

/// Gilmore–Perelomov su(1,1) coherent state:
/// c_n ∝ zⁿ √(Γ(n+2κ)/n!) on the unit disk, normalization
/// Γ(2κ)(1-|z|²)^{-2κ}.
pub fn gp_su11(z: Complex64, kappa: f64, trunc: Trunc) -> Result<BuiltState> {
    let f = NonlinearityFunction::su11(kappa)?;
    disk_guard(&f, RadiusMode::Direct, z, ZeroRadiusError::Domain)?;
    let lg = ln_gamma(2.0 * kappa);
    build_series(
        &move |n| {
            let s = log_factorials(n);
            let g = log_pochhammer_2k(kappa, n);
            (0..=n).map(|k| 0.5 * (lg + g[k] - s[k])).collect()
        },
        0,
        z,
        trunc,
    )
}

/// Inverse-deformed su(1,1) state: c_n ∝ zⁿ √(n!/Γ(n+2κ)) on the unit
/// disk, normalization ₂F₁(1,1;2κ;|z|²)/Γ(2κ).
///
/// This is [`inverse_state`] with F(n) = 1/√(n+2κ-1), up to the constant
/// Γ(2κ) absorbed into the normalization.
pub fn su11_inverse(z: Complex64, kappa: f64, trunc: Trunc) -> Result<BuiltState> {
    let f = NonlinearityFunction::su11(kappa)?;
    disk_guard(
        &f.generalized_inverse(),
        RadiusMode::Direct,
        z,
        ZeroRadiusError::Divergent,
    )?;
    let lg = ln_gamma(2.0 * kappa);
    build_series(
        &move |n| {
            let s = log_factorials(n);
            let g = log_pochhammer_2k(kappa, n);
            (0..=n).map(|k| 0.5 * (s[k] - g[k] - lg)).collect()
        },
        0,
        z,
        trunc,
    )
}

/// Photon-added coherent state: normalized a†^m |z⟩, i.e.
/// c_k ∝ z^{k-m} √(k!)/(k-m)! for k >= m. Eigenstate of a - m a†⁻¹.
pub fn photon_added(z: Complex64, m: u32, trunc: Trunc) -> Result<BuiltState> {
    let m = m as usize;
    build_series(
        &move |n| {
            let s = log_factorials(n);
            (0..=n)
                .map(|k| {
                    if k < m {
                        f64::NEG_INFINITY
                    } else {
                        0.5 * s[k] - s[k - m]
                    }
                })
                .collect()
        },
        m,
        z,
        trunc,
    )
}

/// Photon-subtracted coherent state: normalized a†⁻ᵐ a⁻ᵐ |z⟩, i.e.
/// c_n ∝ zⁿ √(n!)/(n+m)!. At z = 0 the composed action degenerates to the
/// vacuum, which is returned rather than an error.
pub fn photon_subtracted(z: Complex64, m: u32, trunc: Trunc) -> Result<BuiltState> {
    let m = m as usize;
    build_series(
        &move |n| {
            let s = log_factorials(n + m);
            (0..=n).map(|k| 0.5 * s[k] - s[k + m]).collect()
        },
        0,
        z,
        trunc,
    )
}

/// Which inverse bosonic operator to apply to a standard coherent state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InverseOnCs {
    /// a⁻¹|z⟩ = z⁻¹ (|z⟩ - e^{-|z|²/2}|0⟩)
    Annihilation,
    /// a†⁻¹|z⟩ = z e^{-|z|²/2} Σ zⁿ/(√(n!)(n+1)) |n⟩
    Creation,
}

/// Image of the standard coherent state under an inverse bosonic operator.
/// The result is deliberately not normalized; both closed forms above hold
/// coefficientwise.
pub fn inverse_operator_on_cs(
    which: InverseOnCs,
    z: Complex64,
    trunc: Trunc,
) -> Result<FockVector> {
    let cs = standard_cs(z, trunc)?;
    let op = match which {
        InverseOnCs::Annihilation => ShiftOperator::inverse_annihilation(),
        InverseOnCs::Creation => ShiftOperator::inverse_creation(),
    };
    Ok(apply(&op, &cs.vector))
}

/// ‖op·v - z·v‖ over indices 0..N-1; the top coefficient is excluded
/// because a shift there only reflects the truncation edge.
pub fn eigen_residual(op: &ShiftOperator, v: &FockVector, z: Complex64) -> f64 {
    let w = apply(op, v);
    let top = v.truncation();
    (0..top)
        .map(|k| (w.coeff(k) - z * v.coeff(k)).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

// ---------------------------------------------------------------------------
// family descriptor

/// Tags for every state family this crate can construct.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateKind {
    StandardCs,
    Nlcs,
    InverseState,
    DualInverseState,
    InverseBosonicEigenstate,
    DualInverseBosonic,
    GpSu11,
    Su11Inverse,
    PhotonAdded,
    PhotonSubtracted,
}

impl StateKind {
    pub fn name(&self) -> &'static str {
        match self {
            StateKind::StandardCs => "standard-cs",
            StateKind::Nlcs => "nlcs",
            StateKind::InverseState => "inverse",
            StateKind::DualInverseState => "dual-inverse",
            StateKind::InverseBosonicEigenstate => "inverse-bosonic-eigenstate",
            StateKind::DualInverseBosonic => "dual-inverse-bosonic",
            StateKind::GpSu11 => "gp-su11",
            StateKind::Su11Inverse => "su11-inverse",
            StateKind::PhotonAdded => "photon-added",
            StateKind::PhotonSubtracted => "photon-subtracted",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Ok(match name {
            "standard-cs" | "standard" | "cs" => StateKind::StandardCs,
            "nlcs" => StateKind::Nlcs,
            "inverse" | "inverse-state" => StateKind::InverseState,
            "dual-inverse" | "dual-inverse-state" | "dual" => StateKind::DualInverseState,
            "inverse-bosonic-eigenstate" => StateKind::InverseBosonicEigenstate,
            "dual-inverse-bosonic" => StateKind::DualInverseBosonic,
            "gp-su11" => StateKind::GpSu11,
            "su11-inverse" => StateKind::Su11Inverse,
            "photon-added" => StateKind::PhotonAdded,
            "photon-subtracted" => StateKind::PhotonSubtracted,
            other => return Err(Error::UnknownName(other.to_string())),
        })
    }

    fn needs_f(&self) -> bool {
        matches!(
            self,
            StateKind::Nlcs | StateKind::InverseState | StateKind::DualInverseState
        )
    }

    fn needs_kappa(&self) -> bool {
        matches!(self, StateKind::GpSu11 | StateKind::Su11Inverse)
    }
}

/// A family selection with its parameters; `build` dispatches to the
/// matching constructor.
#[derive(Debug, Clone)]
pub struct StateFamily {
    pub kind: StateKind,
    pub f: Option<NonlinearityFunction>,
    pub z: Complex64,
    pub kappa: Option<f64>,
    pub m: Option<u32>,
    pub truncation: Trunc,
}

impl StateFamily {
    pub fn new(kind: StateKind) -> Self {
        Self {
            kind,
            f: None,
            z: Complex64::ZERO,
            kappa: None,
            m: None,
            truncation: Trunc::Auto,
        }
    }

    pub fn with_f(mut self, f: NonlinearityFunction) -> Self {
        self.f = Some(f);
        self
    }

    pub fn with_z(mut self, z: Complex64) -> Self {
        self.z = z;
        self
    }

    pub fn with_kappa(mut self, kappa: f64) -> Self {
        self.kappa = Some(kappa);
        self
    }

    pub fn with_m(mut self, m: u32) -> Self {
        self.m = Some(m);
        self
    }

    pub fn with_truncation(mut self, trunc: Trunc) -> Self {
        self.truncation = trunc;
        self
    }

    fn f(&self) -> Result<&NonlinearityFunction> {
        self.f.as_ref().ok_or_else(|| {
            Error::InvalidParameter(format!(
                "family `{}` requires a nonlinearity function (--f)",
                self.kind.name()
            ))
        })
    }

    fn kappa(&self) -> Result<f64> {
        self.kappa.ok_or_else(|| {
            Error::InvalidParameter(format!(
                "family `{}` requires the Bargmann index (--kappa)",
                self.kind.name()
            ))
        })
    }

    pub fn build(&self) -> Result<BuiltState> {
        let t = self.truncation;
        match self.kind {
            StateKind::StandardCs => standard_cs(self.z, t),
            StateKind::Nlcs => nlcs(self.f()?, self.z, t),
            StateKind::InverseState => inverse_state(self.f()?, self.z, t),
            StateKind::DualInverseState => dual_inverse_state(self.f()?, self.z, t),
            StateKind::InverseBosonicEigenstate => inverse_bosonic_eigenstate(self.z, t),
            StateKind::DualInverseBosonic => dual_inverse_bosonic(self.z, t),
            StateKind::GpSu11 => gp_su11(self.z, self.kappa()?, t),
            StateKind::Su11Inverse => su11_inverse(self.z, self.kappa()?, t),
            StateKind::PhotonAdded => photon_added(self.z, self.m.unwrap_or(0), t),
            StateKind::PhotonSubtracted => photon_subtracted(self.z, self.m.unwrap_or(0), t),
        }
    }

    /// Convergence radius of this family's coefficient series (0, finite,
    /// or +inf), probed numerically where a deformation is involved.
    pub fn radius(&self) -> Result<f64> {
        let probe =
            |f: &NonlinearityFunction, mode| radius_of_convergence(f, mode).map(|r| r.radius());
        match self.kind {
            StateKind::StandardCs | StateKind::PhotonAdded | StateKind::PhotonSubtracted => {
                Ok(f64::INFINITY)
            }
            StateKind::Nlcs => probe(self.f()?, RadiusMode::Direct),
            StateKind::InverseState => probe(&self.f()?.generalized_inverse(), RadiusMode::Direct),
            StateKind::DualInverseState => probe(self.f()?, RadiusMode::Dual),
            StateKind::InverseBosonicEigenstate => Ok(0.0),
            StateKind::DualInverseBosonic => Ok(f64::INFINITY),
            StateKind::GpSu11 => probe(
                &NonlinearityFunction::su11(self.kappa()?)?,
                RadiusMode::Direct,
            ),
            StateKind::Su11Inverse => probe(
                &NonlinearityFunction::su11(self.kappa()?)?.generalized_inverse(),
                RadiusMode::Direct,
            ),
        }
    }

    /// True when all required parameters are present.
    pub fn validate(&self) -> Result<()> {
        if self.kind.needs_f() {
            self.f()?;
        }
        if self.kind.needs_kappa() {
            self.kappa()?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::inner;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn standard_cs_basics() {
        let vac = standard_cs(Complex64::ZERO, Trunc::Auto).unwrap();
        assert!((vac.vector.coeff(0) - Complex64::ONE).norm() < 1e-15);

        // Poisson weight at z = 1: |c_0|^2 = e^-1
        let s = standard_cs(c(1.0, 0.0), Trunc::Auto).unwrap();
        assert!((s.vector.coeff(0).norm_sqr() - (-1.0f64).exp()).abs() < 1e-13);

        // Poisson mean at z = 2: <n> = 4
        let s = standard_cs(c(2.0, 0.0), Trunc::Auto).unwrap();
        let mean: f64 = s
            .vector
            .coeffs()
            .iter()
            .enumerate()
            .map(|(n, cn)| n as f64 * cn.norm_sqr())
            .sum();
        assert!((mean - 4.0).abs() < 1e-11);
    }

    #[test]
    fn coherent_state_is_annihilation_eigenstate() {
        let z = c(1.3, 0.0);
        let s = standard_cs(z, Trunc::Fixed(64)).unwrap();
        assert!(eigen_residual(&ShiftOperator::annihilation(), &s.vector, z) < 1e-10);
    }

    #[test]
    fn gaussian_overlap_of_coherent_states() {
        // <z|z'> = exp(-|z|^2/2 - |z'|^2/2 + conj(z) z'), frozen at z=1, z'=0.5
        let u = standard_cs(c(1.0, 0.0), Trunc::Fixed(64)).unwrap();
        let v = standard_cs(c(0.5, 0.0), Trunc::Fixed(64)).unwrap();
        let overlap = inner(&u.vector, &v.vector);
        assert!((overlap.re - 0.8824969025845955).abs() < 1e-12);
        assert!(overlap.im.abs() < 1e-15);
    }

    #[test]
    fn nlcs_with_unit_deformation_is_standard() {
        let z = c(0.8, 0.3);
        let a = nlcs(&NonlinearityFunction::unit(), z, Trunc::Fixed(128)).unwrap();
        let b = standard_cs(z, Trunc::Fixed(128)).unwrap();
        for n in 0..=128 {
            assert!((a.vector.coeff(n) - b.vector.coeff(n)).norm() < 1e-14);
        }
    }

    #[test]
    fn harmonious_nlcs_is_geometric() {
        // [1/sqrt(n)]! = 1/sqrt(n!) cancels the sqrt(n!): c_n ∝ z^n
        let z = c(0.5, 0.0);
        let s = nlcs(&NonlinearityFunction::harmonious(), z, Trunc::Auto).unwrap();
        let c0 = s.vector.coeff(0).re;
        for n in 0..=20 {
            let expect = c0 * 0.5f64.powi(n as i32);
            assert!(
                (s.vector.coeff(n).re - expect).abs() < 1e-13,
                "n = {n}: {} vs {expect}",
                s.vector.coeff(n).re
            );
        }
    }

    #[test]
    fn nlcs_domain_is_enforced() {
        let res = nlcs(&NonlinearityFunction::hydrogen(), c(1.2, 0.0), Trunc::Auto);
        match res {
            Err(Error::Domain { z_abs, radius }) => {
                assert!((z_abs - 1.2).abs() < 1e-12);
                assert!((radius - 1.0).abs() < 1e-5);
            }
            other => panic!("expected domain error, got {other:?}"),
        }
    }

    #[test]
    fn self_dual_reduction() {
        // F(n) = 1/n turns the inverse state back into the standard CS
        let z = c(1.0, 0.0);
        let a = inverse_state(
            &NonlinearityFunction::inverse_bosonic(),
            z,
            Trunc::Fixed(96),
        )
        .unwrap();
        let b = standard_cs(z, Trunc::Fixed(96)).unwrap();
        for n in 0..=96 {
            assert!((a.vector.coeff(n) - b.vector.coeff(n)).norm() < 1e-12);
        }
    }

    #[test]
    fn inverse_bosonic_eigenstate_diverges() {
        for &z_abs in &[1e-3, 0.1, 1.0] {
            let res = inverse_bosonic_eigenstate(c(z_abs, 0.0), Trunc::Auto);
            assert!(
                matches!(res, Err(Error::DivergentNormalization)),
                "z = {z_abs}: {res:?}"
            );
        }
        // the vacuum itself is fine
        assert!(inverse_bosonic_eigenstate(Complex64::ZERO, Trunc::Auto).is_ok());
    }

    #[test]
    fn divergent_family_still_satisfies_the_formal_eigen_relation() {
        // c_n ∝ sqrt(n!) z^n obeys a+^-1 c = z c coefficientwise even though
        // the full series cannot be normalized; on a window-normalized
        // truncation the residual away from the edge is machine-level.
        let z = c(0.15, 0.0);
        let n_top = 40usize;
        let mut coeffs = vec![Complex64::ZERO; n_top + 1];
        let mut log_amp = 0.0;
        for (n, slot) in coeffs.iter_mut().enumerate() {
            if n > 0 {
                log_amp += 0.5 * (n as f64).ln() + z.re.ln();
            }
            *slot = c(log_amp.exp(), 0.0);
        }
        let v = FockVector::new(coeffs, 0.0).unwrap().normalize().unwrap();
        let res = eigen_residual(&ShiftOperator::inverse_creation(), &v, z);
        assert!(res < 1e-12, "residual {res}");
    }

    #[test]
    fn inverse_state_is_deformed_eigenstate() {
        let z = c(0.7, 0.0);
        let f = NonlinearityFunction::hydrogen();
        let s = inverse_state(&f, z, Trunc::Fixed(256)).unwrap();
        let op = ShiftOperator::inverse_deformed_creation(&f);
        assert!(eigen_residual(&op, &s.vector, z) < 1e-8);

        let su = NonlinearityFunction::su11(1.0).unwrap();
        let s = inverse_state(&su, c(0.5, 0.0), Trunc::Fixed(256)).unwrap();
        let op = ShiftOperator::inverse_deformed_creation(&su);
        assert!(eigen_residual(&op, &s.vector, c(0.5, 0.0)) < 1e-8);
    }

    #[test]
    fn dual_bosonic_coefficients_and_norm() {
        let z = c(1.0, 0.0);
        let s = dual_inverse_bosonic(z, Trunc::Auto).unwrap();
        // c_n ∝ z^n/(n!)^{3/2}
        let c0 = s.vector.coeff(0).re;
        let mut fact = 1.0;
        for n in 1..=10 {
            fact *= n as f64;
            let expect = c0 / fact.powf(1.5);
            assert!((s.vector.coeff(n).re - expect).abs() < 1e-13);
        }
        // norm constant = 0F2(1,1;1)
        assert!((s.norm_constant() - crate::special::hyp0f2_11(1.0)).abs() < 1e-12);
    }

    #[test]
    fn dual_bosonic_is_dual_annihilation_eigenstate() {
        let z = c(2.0, 0.0);
        let s = dual_inverse_bosonic(z, Trunc::Fixed(256)).unwrap();
        let b = ShiftOperator::dual_annihilation(&NonlinearityFunction::unit());
        assert!(eigen_residual(&b, &s.vector, z) < 1e-8);
    }

    #[test]
    fn dual_harmonious_matches_bessel_norm() {
        // c_n ∝ z^n/n!, normalization I0(2|z|)
        for &za in &[0.5, 1.0, 2.5] {
            let s =
                dual_inverse_state(&NonlinearityFunction::harmonious(), c(za, 0.0), Trunc::Auto)
                    .unwrap();
            let i0 = crate::special::bessel_i0(2.0 * za);
            assert!(
                (s.norm_constant() / i0 - 1.0).abs() < 1e-12,
                "z = {za}: {} vs {i0}",
                s.norm_constant()
            );
            let c0 = s.vector.coeff(0).re;
            let mut fact = 1.0;
            for n in 1..=8 {
                fact *= n as f64;
                assert!((s.vector.coeff(n).re - c0 * za.powi(n as i32) / fact).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn dual_state_at_origin_is_vacuum() {
        let s = dual_inverse_state(
            &NonlinearityFunction::hydrogen(),
            Complex64::ZERO,
            Trunc::Auto,
        )
        .unwrap();
        assert!((s.vector.coeff(0) - Complex64::ONE).norm() < 1e-15);
        assert!((s.norm_constant() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn gp_su11_normalization_closed_form() {
        // N = Gamma(2k)(1-|z|^2)^{-2k}
        let z = c(0.9, 0.0);
        let s = gp_su11(z, 1.0, Trunc::Auto).unwrap();
        let expect = 1.0 / (1.0 - 0.81f64).powi(2); // Gamma(2) = 1
        assert!((s.norm_constant() / expect - 1.0).abs() < 1e-8);
        // head coefficient: c_0 = sqrt(Gamma(2k)/N) = (1-|z|^2)^k
        assert!((s.vector.coeff(0).re - 0.19).abs() < 1e-9);
    }

    #[test]
    fn gp_su11_geometric_at_half_kappa() {
        // kappa = 1/2: P(n) ∝ |z|^{2n}
        let s = gp_su11(c(0.5, 0.0), 0.5, Trunc::Auto).unwrap();
        let p0 = s.vector.coeff(0).norm_sqr();
        for n in 0..=12 {
            let expect = p0 * 0.25f64.powi(n as i32);
            assert!((s.vector.coeff(n).norm_sqr() - expect).abs() < 1e-13);
        }
    }

    #[test]
    fn gp_su11_rejects_unit_circle() {
        assert!(matches!(
            gp_su11(c(1.0, 0.0), 1.0, Trunc::Auto),
            Err(Error::Domain { .. })
        ));
        assert!(gp_su11(Complex64::ZERO, 1.0, Trunc::Auto).is_ok());
    }

    #[test]
    fn su11_inverse_matches_frozen_ratio() {
        // kappa = 1, z = 0.5: c_2/c_0 = z^2 sqrt(2!/Gamma(4)) = 0.25/sqrt(3)
        let s = su11_inverse(c(0.5, 0.0), 1.0, Trunc::Auto).unwrap();
        let ratio = s.vector.coeff(2).re / s.vector.coeff(0).re;
        assert!((ratio - 0.14433756729740643).abs() < 1e-12);
    }

    #[test]
    fn su11_inverse_norm_closed_form() {
        let z = c(0.5, 0.0);
        let kappa = 1.5;
        let s = su11_inverse(z, kappa, Trunc::Auto).unwrap();
        let expect = crate::special::hyp2f1_11(2.0 * kappa, 0.25) / ln_gamma(2.0 * kappa).exp();
        assert!((s.norm_constant() / expect - 1.0).abs() < 1e-8);
    }

    #[test]
    fn su11_inverse_at_half_kappa_is_harmonious_inverse() {
        let z = c(0.4, 0.0);
        let a = su11_inverse(z, 0.5, Trunc::Fixed(128)).unwrap();
        let b = inverse_state(&NonlinearityFunction::harmonious(), z, Trunc::Fixed(128)).unwrap();
        for n in 0..=128 {
            assert!((a.vector.coeff(n) - b.vector.coeff(n)).norm() < 1e-12);
        }
    }

    #[test]
    fn photon_added_states() {
        let z = c(0.9, 0.2);
        // m = 0 is the plain coherent state
        let a = photon_added(z, 0, Trunc::Fixed(96)).unwrap();
        let b = standard_cs(z, Trunc::Fixed(96)).unwrap();
        for n in 0..=96 {
            assert!((a.vector.coeff(n) - b.vector.coeff(n)).norm() < 1e-14);
        }
        // m = 2 at the origin is |2>
        let s = photon_added(Complex64::ZERO, 2, Trunc::Auto).unwrap();
        assert!((s.vector.coeff(2) - Complex64::ONE).norm() < 1e-15);

        // eigenstate of a - m a+^-1
        let z = c(1.0, 0.0);
        for m in [1u32, 2] {
            let s = photon_added(z, m, Trunc::Fixed(200)).unwrap();
            let av = apply(&ShiftOperator::annihilation(), &s.vector);
            let corr = apply(&ShiftOperator::inverse_creation(), &s.vector).scale(c(m as f64, 0.0));
            let combo = av.sub(&corr);
            let diff = combo.sub(&s.vector.scale(z));
            let res: f64 = (0..s.vector.truncation())
                .map(|k| diff.coeff(k).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(res < 1e-8, "m = {m}: residual {res}");
        }
    }

    #[test]
    fn photon_subtracted_states() {
        let z = c(1.0, 0.0);
        // m = 0 is the plain coherent state
        let a = photon_subtracted(z, 0, Trunc::Fixed(96)).unwrap();
        let b = standard_cs(z, Trunc::Fixed(96)).unwrap();
        for n in 0..=96 {
            assert!((a.vector.coeff(n) - b.vector.coeff(n)).norm() < 1e-14);
        }

        // m = 1 against the composed ladder application
        let s = photon_subtracted(z, 1, Trunc::Fixed(96)).unwrap();
        let cs = standard_cs(z, Trunc::Fixed(96)).unwrap();
        let once = apply(&ShiftOperator::inverse_annihilation(), &cs.vector);
        let oracle = apply(&ShiftOperator::inverse_creation(), &once)
            .normalize()
            .unwrap();
        for n in 0..90 {
            assert!(
                (s.vector.coeff(n) - oracle.coeff(n)).norm() < 1e-12,
                "n = {n}"
            );
        }

        // z = 0 degenerates to the vacuum, not an error
        let s = photon_subtracted(Complex64::ZERO, 1, Trunc::Auto).unwrap();
        assert!((s.vector.coeff(0) - Complex64::ONE).norm() < 1e-15);
    }

    #[test]
    fn inverse_operators_on_cs_closed_forms() {
        let z = c(1.0, 0.0);
        let n_top = 64;
        let cs = standard_cs(z, Trunc::Fixed(n_top)).unwrap();

        // a^-1|z> = z^-1(|z> - e^{-|z|^2/2}|0>): vacuum component cancels
        let img =
            inverse_operator_on_cs(InverseOnCs::Annihilation, z, Trunc::Fixed(n_top)).unwrap();
        assert!(img.coeff(0).norm() < 1e-15);
        for n in 1..(n_top - 1) {
            let expect = cs.vector.coeff(n) / z;
            assert!((img.coeff(n) - expect).norm() < 1e-10, "n = {n}");
        }

        // a+^-1|z> = z e^{-x/2} sum z^n/(sqrt(n!)(n+1)) |n>
        let img = inverse_operator_on_cs(InverseOnCs::Creation, z, Trunc::Fixed(n_top)).unwrap();
        for n in 0..(n_top - 1) {
            let expect = cs.vector.coeff(n + 1) * ((n + 1) as f64).sqrt() / (n as f64 + 1.0);
            assert!((img.coeff(n) - expect).norm() < 1e-10, "n = {n}");
        }

        // and |z> is *not* an eigenstate of a^-1: <z|a^-1|z> = z^-1(1 - e^{-|z|^2})
        let img =
            inverse_operator_on_cs(InverseOnCs::Annihilation, z, Trunc::Fixed(n_top)).unwrap();
        let ip = inner(&cs.vector, &img);
        let expect = (1.0 - (-1.0f64).exp()) / 1.0;
        assert!((ip.re - expect).abs() < 1e-10);
        assert!(
            (ip.re - 1.0).abs() > 0.1,
            "would-be eigenvalue z^-1 = 1 is visibly missed"
        );
    }

    #[test]
    fn truncation_cap_is_reported() {
        // |z|^2 far beyond the cap cannot satisfy the tail criteria
        let res = standard_cs(c(70.0, 0.0), Trunc::Auto);
        assert!(matches!(res, Err(Error::Truncation { n_max: 4096, .. })));
        // and a fixed window that is too small fails likewise
        let res = standard_cs(c(3.0, 0.0), Trunc::Fixed(12));
        assert!(matches!(res, Err(Error::Truncation { n_max: 12, .. })));
    }

    #[test]
    fn family_descriptor_round_trip() {
        for kind in [
            StateKind::StandardCs,
            StateKind::Nlcs,
            StateKind::InverseState,
            StateKind::DualInverseState,
            StateKind::InverseBosonicEigenstate,
            StateKind::DualInverseBosonic,
            StateKind::GpSu11,
            StateKind::Su11Inverse,
            StateKind::PhotonAdded,
            StateKind::PhotonSubtracted,
        ] {
            assert_eq!(StateKind::from_name(kind.name()).unwrap(), kind);
        }
        assert!(StateKind::from_name("no-such-family").is_err());
    }

    #[test]
    fn family_build_and_radius() {
        let fam = StateFamily::new(StateKind::DualInverseState)
            .with_f(NonlinearityFunction::hydrogen())
            .with_z(c(0.5, 0.5));
        let s = fam.build().unwrap();
        assert!((s.vector.norm_sq() - 1.0).abs() < 1e-12);
        assert_eq!(fam.radius().unwrap(), f64::INFINITY);

        let fam =
            StateFamily::new(StateKind::InverseState).with_f(NonlinearityFunction::hydrogen());
        let r = fam.radius().unwrap();
        assert!((r - 1.0).abs() < 1e-5);

        let missing = StateFamily::new(StateKind::Nlcs).with_z(c(0.1, 0.0));
        assert!(matches!(missing.build(), Err(Error::InvalidParameter(_))));
    }
}
