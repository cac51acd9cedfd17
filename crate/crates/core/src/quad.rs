//! Adaptive Gauss–Kronrod quadrature (7–15 point pair) with worst-panel
//! refinement. Good enough for the smooth, rapidly decaying integrands the
//! moment checks produce; not a general-purpose QUADPACK replacement.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Kronrod abscissae for the 15-point rule on [-1, 1] (positive half).
/// Odd-indexed entries are the embedded 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
];

/// Kronrod weights matching `XGK`.
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];

/// 7-point Gauss weights for nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

const MAX_PANELS: usize = 200_000;

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub value: f64,
    /// Sum of the per-panel Kronrod–Gauss error estimates.
    pub abs_error: f64,
    pub evaluations: usize,
}

/// One 15-point Kronrod panel on [a, b]; returns (kronrod, |kronrod - gauss|).
fn gk15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let dx = half * XGK[i];
        let fsum = f(center - dx) + f(center + dx);
        kronrod += WGK[i] * fsum;
        if i % 2 == 1 {
            gauss += WG[i / 2] * fsum;
        }
    }
    kronrod *= half;
    gauss *= half;
    (kronrod, (kronrod - gauss).abs())
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Integrate `f` over [a, b], refining the worst panel until the summed
/// error estimate drops below `rel_tol * |integral| + abs_tol`.
pub fn integrate(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
) -> Result<Quadrature> {
    let mut heap = BinaryHeap::new();
    let (value, error) = gk15(f, a, b);
    heap.push(Panel { a, b, value, error });
    let mut total_value = value;
    let mut total_error = error;
    let mut evaluations = 15;

    loop {
        if !total_value.is_finite() || !total_error.is_finite() {
            return Err(Error::QuadratureFailure { rel_tol });
        }
        let budget = rel_tol * total_value.abs() + abs_tol;
        if total_error <= budget {
            break;
        }
        if heap.len() >= MAX_PANELS {
            return Err(Error::QuadratureFailure { rel_tol });
        }
        let worst = heap.pop().expect("heap holds at least one panel");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval narrowed to machine resolution without converging
            return Err(Error::QuadratureFailure { rel_tol });
        }
        let (lv, le) = gk15(f, worst.a, mid);
        let (rv, re) = gk15(f, mid, worst.b);
        evaluations += 30;
        total_value += lv + rv - worst.value;
        total_error += le + re - worst.error;
        heap.push(Panel {
            a: worst.a,
            b: mid,
            value: lv,
            error: le,
        });
        heap.push(Panel {
            a: mid,
            b: worst.b,
            value: rv,
            error: re,
        });
    }

    Ok(Quadrature {
        value: total_value,
        abs_error: total_error,
        evaluations,
    })
}
