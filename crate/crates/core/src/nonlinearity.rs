//! Intensity-dependent deformation functions f(n), their factorial products
//! in log space, the generalized-inverse transform, and convergence-radius
//! probing for the state families built on top of them.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A positive real deformation function n ↦ f(n) on integers n >= 1, with
/// the convention [f(0)]! = 1 for its factorial product.
#[derive(Clone)]
pub struct NonlinearityFunction {
    name: String,
    eval: Arc<dyn Fn(u64) -> f64 + Send + Sync>,
}

impl fmt::Debug for NonlinearityFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NonlinearityFunction({})", self.name)
    }
}

impl fmt::Display for NonlinearityFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl NonlinearityFunction {
    /// f(n) = 1, the undeformed oscillator.
    pub fn unit() -> Self {
        Self::custom("unit", |_| 1.0)
    }

    /// f(n) = 1/n, the deformation realizing the inverse bosonic operators.
    pub fn inverse_bosonic() -> Self {
        Self::custom("inverse-bosonic", |n| 1.0 / n as f64)
    }

    /// f(n) = sqrt(n+2)/(n+1), the hydrogen-like spectrum e_n = 1 - 1/(n+1)^2.
    pub fn hydrogen() -> Self {
        Self::custom("hydrogen", |n| {
            let n = n as f64;
            (n + 2.0).sqrt() / (n + 1.0)
        })
    }

    /// f(n) = 1/sqrt(n), the harmonious-state deformation.
    pub fn harmonious() -> Self {
        Self::custom("harmonious", |n| 1.0 / (n as f64).sqrt())
    }

    /// f(n) = 1/sqrt(n + 2κ - 1), the Gilmore–Perelomov su(1,1) deformation
    /// with Bargmann index κ >= 1/2.
    pub fn su11(kappa: f64) -> Result<Self> {
        if !kappa.is_finite() || kappa < 0.5 {
            return Err(Error::InvalidParameter(format!(
                "su11 requires kappa >= 1/2, got {kappa}"
            )));
        }
        Ok(Self::custom(&format!("su11({kappa})"), move |n| {
            1.0 / (n as f64 + 2.0 * kappa - 1.0).sqrt()
        }))
    }

    /// Look up a builtin by name. `su11(<kappa>)` carries its parameter
    /// inline, e.g. `su11(1.5)`.
    pub fn builtin(name: &str) -> Result<Self> {
        match name {
            "unit" => Ok(Self::unit()),
            "inverse-bosonic" | "inverse_bosonic" => Ok(Self::inverse_bosonic()),
            "hydrogen" => Ok(Self::hydrogen()),
            "harmonious" => Ok(Self::harmonious()),
            _ => {
                if let Some(rest) = name.strip_prefix("su11(") {
                    let inner = rest
                        .strip_suffix(')')
                        .ok_or_else(|| Error::UnknownName(name.to_string()))?;
                    let kappa: f64 = inner
                        .trim()
                        .parse()
                        .map_err(|_| Error::UnknownName(name.to_string()))?;
                    Self::su11(kappa)
                } else {
                    Err(Error::UnknownName(name.to_string()))
                }
            }
        }
    }

    /// Wrap an arbitrary positive function.
    pub fn custom(name: &str, f: impl Fn(u64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            name: name.to_string(),
            eval: Arc::new(f),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Evaluate f(n), n >= 1.
    pub fn eval(&self, n: u64) -> f64 {
        debug_assert!(n >= 1, "nonlinearity functions are defined for n >= 1");
        (self.eval)(n)
    }

    /// ln [f(n)]! = Σ_{k=1}^{n} ln f(k), with ln [f(0)]! = 0.
    pub fn log_factorial_product(&self, n: u64) -> f64 {
        (1..=n).map(|k| self.eval(k).ln()).sum()
    }

    /// Running values of ln [f(n)]! for n = 0, 1, 2, ...
    pub fn log_factorial_products(&self) -> impl Iterator<Item = f64> + '_ {
        let mut acc = 0.0;
        let mut n = 0u64;
        std::iter::from_fn(move || {
            let out = acc;
            n += 1;
            acc += self.eval(n).ln();
            Some(out)
        })
    }

    /// The generalized inverse 𝓕 of an original deformation F:
    /// 𝓕(n) = 1/(n F(n)). Applying it twice returns to F.
    pub fn generalized_inverse(&self) -> Self {
        let base = self.eval.clone();
        Self {
            name: format!("inverse({})", self.name),
            eval: Arc::new(move |n| 1.0 / (n as f64 * base(n))),
        }
    }
}

/// Classification of a probed convergence radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Verdict {
    Zero,
    Finite(f64),
    Infinite,
}

/// Outcome of the large-n limit probe behind a convergence disk.
#[derive(Debug, Clone)]
pub struct ConvergenceReport {
    pub verdict: Verdict,
    /// The last few probed (n, p_n) pairs, for diagnostics.
    pub sequence_probe: Vec<(u64, f64)>,
}

impl ConvergenceReport {
    /// Radius as a plain float: 0, R, or +inf.
    pub fn radius(&self) -> f64 {
        match self.verdict {
            Verdict::Zero => 0.0,
            Verdict::Finite(r) => r,
            Verdict::Infinite => f64::INFINITY,
        }
    }
}

/// Which limit sequence to probe.
///
/// `Direct` probes lim n f(n)^2, the disk of the deformed states built from
/// f itself (pass the generalized inverse to get the disk of an
/// inverse-operator family). `Dual` probes lim n^3 f(n)^2, the disk of the
/// dual family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadiusMode {
    Direct,
    Dual,
}

const PROBE_TOP: u64 = 1_000_000;

/// Estimate the convergence radius of the family attached to `f` by probing
/// its defining limit sequence at large n.
///
/// Decade probes up to n = 10^6 classify growth and decay; a finite verdict
/// additionally requires the sequence to have settled to relative 1e-6
/// between consecutive n near the top of the probe range.
pub fn radius_of_convergence(
    f: &NonlinearityFunction,
    mode: RadiusMode,
) -> Result<ConvergenceReport> {
    let probe = |n: u64| -> f64 {
        let v = f.eval(n);
        let nf = n as f64;
        match mode {
            RadiusMode::Direct => nf * v * v,
            RadiusMode::Dual => nf * nf * nf * v * v,
        }
    };

    let decades: Vec<(u64, f64)> = (1..=6)
        .map(|d| {
            let n = 10u64.pow(d);
            (n, probe(n))
        })
        .collect();
    let p4 = decades[3].1;
    let p5 = decades[4].1;
    let p6 = decades[5].1;

    let mut sequence_probe = decades.clone();
    let consecutive: Vec<(u64, f64)> = (PROBE_TOP - 2..=PROBE_TOP).map(|n| (n, probe(n))).collect();
    sequence_probe.extend_from_slice(&consecutive);

    if !(p4.is_finite() && p5.is_finite() && p6.is_finite()) || p6 < 0.0 {
        return Err(Error::NonConvergentProbe {
            detail: format!("probe not finite/positive near n = 10^6: {p4:e}, {p5:e}, {p6:e}"),
        });
    }

    if p6 >= 2.0 * p5 && p5 > p4 {
        return Ok(ConvergenceReport {
            verdict: Verdict::Infinite,
            sequence_probe,
        });
    }
    if p6 <= 0.5 * p5 && p5 < p4 {
        return Ok(ConvergenceReport {
            verdict: Verdict::Zero,
            sequence_probe,
        });
    }

    let mut settled = true;
    for pair in consecutive.windows(2) {
        let (a, b) = (pair[0].1, pair[1].1);
        if (b / a - 1.0).abs() > 1e-6 {
            settled = false;
        }
    }
    let decade_drift = (p6 / p5 - 1.0).abs();
    if settled && decade_drift <= 0.05 {
        // Richardson step for sequences converging like c/n on the decade
        // grid; exact for pure 1/n tails, harmless for faster ones.
        let radius = p6 + (p6 - p5) / 9.0;
        return Ok(ConvergenceReport {
            verdict: Verdict::Finite(radius),
            sequence_probe,
        });
    }

    Err(Error::NonConvergentProbe {
        detail: format!(
            "sequence neither grows, decays, nor settles (decade drift {decade_drift:.3e})"
        ),
    })
}
