//! Truncated Fock-space vectors and one-off-diagonal ladder operators.
//!
//! Every operator in this crate maps |n⟩ to a multiple of |n-1⟩, |n⟩ or
//! |n+1⟩, so operators are represented by a shift and a weight function
//! rather than by matrices; application is O(N).

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::nonlinearity::NonlinearityFunction;

/// Slack allowed on the normalization invariant beyond the tail estimate.
const NORM_SLACK: f64 = 1e-12;

/// A complex coefficient vector c_0..c_N over number states, together with
/// an estimate of the probability weight lost beyond the truncation window.
#[derive(Clone)]
pub struct FockVector {
    coeffs: Vec<Complex64>,
    tail_bound: f64,
    normalized: bool,
}

impl fmt::Debug for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FockVector(N = {}, norm^2 = {:.6}, tail <= {:.2e})",
            self.truncation(),
            self.norm_sq(),
            self.tail_bound
        )
    }
}

impl FockVector {
    /// Wrap raw coefficients. All entries must be finite and the tail bound
    /// non-negative.
    pub fn new(coeffs: Vec<Complex64>, tail_bound: f64) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter("empty coefficient vector".into()));
        }
        if coeffs
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(Error::InvalidParameter(
                "non-finite coefficient in Fock vector".into(),
            ));
        }
        if tail_bound.is_nan() || tail_bound < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "tail bound must be >= 0, got {tail_bound}"
            )));
        }
        Ok(Self {
            coeffs,
            tail_bound,
            normalized: false,
        })
    }

    /// The number state |n⟩ at truncation N.
    pub fn number_state(n: usize, truncation: usize) -> Self {
        assert!(n <= truncation, "number state index beyond truncation");
        let mut coeffs = vec![Complex64::ZERO; truncation + 1];
        coeffs[n] = Complex64::ONE;
        Self {
            coeffs,
            tail_bound: 0.0,
            normalized: true,
        }
    }

    /// The zero vector at truncation N.
    pub fn zero(truncation: usize) -> Self {
        Self {
            coeffs: vec![Complex64::ZERO; truncation + 1],
            tail_bound: 0.0,
            normalized: false,
        }
    }

    pub(crate) fn normalized_from_parts(coeffs: Vec<Complex64>, tail_bound: f64) -> Self {
        let v = Self {
            coeffs,
            tail_bound,
            normalized: true,
        };
        debug_assert!(v.check_normalization());
        v
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient c_n, zero beyond the truncation window.
    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or(Complex64::ZERO)
    }

    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    fn check_normalization(&self) -> bool {
        (self.norm_sq() - 1.0).abs() <= 10.0 * self.tail_bound + NORM_SLACK
    }

    /// Rescale to unit norm. Fails on a (numerically) zero vector.
    pub fn normalize(mut self) -> Result<Self> {
        let n = self.norm();
        if n < 1e-150 {
            return Err(Error::DegenerateState);
        }
        for c in &mut self.coeffs {
            *c /= n;
        }
        self.tail_bound /= n * n;
        self.normalized = true;
        Ok(self)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
            tail_bound: self.tail_bound * s.norm_sqr(),
            normalized: false,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![Complex64::ZERO; len];
        for (i, c) in coeffs.iter_mut().enumerate() {
            *c = self.coeff(i) + other.coeff(i);
        }
        Self {
            coeffs,
            tail_bound: self.tail_bound + other.tail_bound,
            normalized: false,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-Complex64::ONE))
    }
}

/// ⟨u|v⟩ = Σ conj(u_n) v_n, zero-padding the shorter vector.
pub fn inner(u: &FockVector, v: &FockVector) -> Complex64 {
    let len = u.coeffs.len().max(v.coeffs.len());
    (0..len).map(|n| u.coeff(n).conj() * v.coeff(n)).sum()
}

/// Direction of a one-off-diagonal operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shift {
    Lower,
    Diagonal,
    Raise,
}

/// An operator acting as O|n⟩ = g(n)|n+s⟩ with s ∈ {-1, 0, +1}.
///
/// Lowering-type weights must satisfy g(0) = 0 so that the vacuum is
/// annihilated.
#[derive(Clone)]
pub struct ShiftOperator {
    label: String,
    shift: Shift,
    weight: Arc<dyn Fn(u64) -> f64 + Send + Sync>,
}

impl fmt::Debug for ShiftOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ShiftOperator({}, {:?})", self.label, self.shift)
    }
}

impl ShiftOperator {
    pub fn new(
        label: &str,
        shift: Shift,
        weight: impl Fn(u64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            label: label.to_string(),
            shift,
            weight: Arc::new(weight),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn shift(&self) -> Shift {
        self.shift
    }

    /// The weight g(n).
    pub fn weight(&self, n: u64) -> f64 {
        (self.weight)(n)
    }

    /// a|n⟩ = √n |n-1⟩
    pub fn annihilation() -> Self {
        Self::new("a", Shift::Lower, |n| (n as f64).sqrt())
    }

    /// a†|n⟩ = √(n+1) |n+1⟩
    pub fn creation() -> Self {
        Self::new("a+", Shift::Raise, |n| (n as f64 + 1.0).sqrt())
    }

    /// a⁻¹|n⟩ = |n+1⟩/√(n+1): the right inverse of a, a raising operator.
    pub fn inverse_annihilation() -> Self {
        Self::new("a^-1", Shift::Raise, |n| 1.0 / (n as f64 + 1.0).sqrt())
    }

    /// a†⁻¹|n⟩ = |n-1⟩/√n (and 0 on the vacuum): the left inverse of a†.
    pub fn inverse_creation() -> Self {
        Self::new("a+^-1", Shift::Lower, |n| {
            if n == 0 {
                0.0
            } else {
                1.0 / (n as f64).sqrt()
            }
        })
    }

    /// n̂|n⟩ = n|n⟩
    pub fn number() -> Self {
        Self::new("n", Shift::Diagonal, |n| n as f64)
    }

    /// A = a F(n̂): A|n⟩ = F(n)√n |n-1⟩
    pub fn deformed_annihilation(f: &NonlinearityFunction) -> Self {
        let f = f.clone();
        Self::new(&format!("A[{f}]"), Shift::Lower, move |n| {
            if n == 0 {
                0.0
            } else {
                f.eval(n) * (n as f64).sqrt()
            }
        })
    }

    /// A† = F(n̂) a†: A†|n⟩ = F(n+1)√(n+1) |n+1⟩
    pub fn deformed_creation(f: &NonlinearityFunction) -> Self {
        let f = f.clone();
        Self::new(&format!("A+[{f}]"), Shift::Raise, move |n| {
            f.eval(n + 1) * (n as f64 + 1.0).sqrt()
        })
    }

    /// A⁻¹|n⟩ = |n+1⟩/(√(n+1) F(n+1)): the right inverse of A, a raiser.
    pub fn inverse_deformed_annihilation(f: &NonlinearityFunction) -> Self {
        let f = f.clone();
        Self::new(&format!("A^-1[{f}]"), Shift::Raise, move |n| {
            1.0 / (f.eval(n + 1) * (n as f64 + 1.0).sqrt())
        })
    }

    /// A†⁻¹|n⟩ = |n-1⟩/(√n F(n)) (0 on the vacuum): the left inverse of A†
    /// and the annihilation-like operator of the inverse-deformed family.
    pub fn inverse_deformed_creation(f: &NonlinearityFunction) -> Self {
        let f = f.clone();
        Self::new(&format!("A+^-1[{f}]"), Shift::Lower, move |n| {
            if n == 0 {
                0.0
            } else {
                1.0 / (f.eval(n) * (n as f64).sqrt())
            }
        })
    }

    /// The conjugate lowering operator of the inverse-deformed pair:
    /// B|n⟩ = n F(n) √n |n-1⟩. With F = 1 this is a n̂, whose right
    /// eigenstates are the dual-bosonic states.
    pub fn dual_annihilation(f: &NonlinearityFunction) -> Self {
        let f = f.clone();
        Self::new(&format!("B[{f}]"), Shift::Lower, move |n| {
            if n == 0 {
                0.0
            } else {
                let nf = n as f64;
                nf * f.eval(n) * nf.sqrt()
            }
        })
    }

    /// B†|n⟩ = (n+1) F(n+1) √(n+1) |n+1⟩
    pub fn dual_creation(f: &NonlinearityFunction) -> Self {
        let f = f.clone();
        Self::new(&format!("B+[{f}]"), Shift::Raise, move |n| {
            let m = n as f64 + 1.0;
            m * f.eval(n + 1) * m.sqrt()
        })
    }

    /// The adjoint: mirrored shift with the weight reindexed accordingly.
    pub fn adjoint(&self) -> Self {
        let w = self.weight.clone();
        match self.shift {
            Shift::Diagonal => Self {
                label: self.label.clone(),
                shift: Shift::Diagonal,
                weight: w,
            },
            Shift::Raise => Self {
                label: format!("adj({})", self.label),
                shift: Shift::Lower,
                weight: Arc::new(move |n| if n == 0 { 0.0 } else { w(n - 1) }),
            },
            Shift::Lower => Self {
                label: format!("adj({})", self.label),
                shift: Shift::Raise,
                weight: Arc::new(move |n| w(n + 1)),
            },
        }
    }
}

/// Apply a shift operator to a vector.
///
/// A raising operator pushes weight off the top of the window; that weight
/// is added to the tail bound instead of being dropped silently.
pub fn apply(op: &ShiftOperator, v: &FockVector) -> FockVector {
    let n_top = v.truncation();
    let mut coeffs = vec![Complex64::ZERO; n_top + 1];
    let mut tail = v.tail_bound();
    match op.shift() {
        Shift::Diagonal => {
            for (m, c) in coeffs.iter_mut().enumerate() {
                *c = v.coeff(m) * op.weight(m as u64);
            }
        }
        Shift::Raise => {
            for (m, slot) in coeffs.iter_mut().enumerate().skip(1) {
                *slot = v.coeff(m - 1) * op.weight(m as u64 - 1);
            }
            let lost = v.coeff(n_top) * op.weight(n_top as u64);
            tail += lost.norm_sqr();
        }
        Shift::Lower => {
            for (m, slot) in coeffs.iter_mut().enumerate().take(n_top) {
                *slot = v.coeff(m + 1) * op.weight(m as u64 + 1);
            }
        }
    }
    FockVector {
        coeffs,
        tail_bound: tail,
        normalized: false,
    }
}

/// (op1 op2 - op2 op1)|n⟩ at truncation N. Requires n <= N-2 so that both
/// double applications stay inside the window.
pub fn commutator_on_number_state(
    op1: &ShiftOperator,
    op2: &ShiftOperator,
    n: usize,
    truncation: usize,
) -> Result<FockVector> {
    if n + 2 > truncation {
        return Err(Error::Truncation {
            n_max: truncation,
            target: 0.0,
        });
    }
    let v = FockVector::number_state(n, truncation);
    let forward = apply(op1, &apply(op2, &v));
    let backward = apply(op2, &apply(op1, &v));
    Ok(forward.sub(&backward))
}

/// Which spectrum to evaluate from a deformation function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HamiltonianKind {
    /// e_n = n f(n)^2, with e_0 = 0.
    Original,
    /// e_n = 1/(n f(n)^2) for n >= 1 and 0 at the vacuum.
    Inverse,
}

/// Eigenvalues e_0..e_{n_max} of the deformed or inverse-deformed
/// oscillator Hamiltonian attached to f.
pub fn hamiltonian_spectrum(
    f: &NonlinearityFunction,
    kind: HamiltonianKind,
    n_max: usize,
) -> Vec<f64> {
    (0..=n_max)
        .map(|n| {
            if n == 0 {
                return 0.0;
            }
            let nf = n as f64;
            let e = nf * f.eval(n as u64).powi(2);
            match kind {
                HamiltonianKind::Original => e,
                HamiltonianKind::Inverse => 1.0 / e,
            }
        })
        .collect()
}

/// The diagonal operator with the spectrum of [`hamiltonian_spectrum`].
pub fn hamiltonian_operator(f: &NonlinearityFunction, kind: HamiltonianKind) -> ShiftOperator {
    let f = f.clone();
    ShiftOperator::new(&format!("H[{f},{kind:?}]"), Shift::Diagonal, move |n| {
        if n == 0 {
            return 0.0;
        }
        let e = n as f64 * f.eval(n).powi(2);
        match kind {
            HamiltonianKind::Original => e,
            HamiltonianKind::Inverse => 1.0 / e,
        }
    })
}
