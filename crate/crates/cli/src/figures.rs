//! Data-file definitions for the ten figure sweeps.

use num_complex::Complex64;
use serde_json::json;

use dualcs_core::{Error, NonlinearityFunction, StateFamily, StateKind};

use crate::sweep::{evaluate, inclusive_grid, interior_grid, Row};

pub struct FigureData {
    pub rows: Vec<Row>,
    pub with_kappa: bool,
    pub spec: serde_json::Value,
}

fn hydrogen_family(kind: StateKind) -> StateFamily {
    StateFamily::new(kind).with_f(NonlinearityFunction::hydrogen())
}

fn su11_family(kind: StateKind, kappa: f64) -> Result<StateFamily, Error> {
    let fam = match kind {
        StateKind::GpSu11 | StateKind::Su11Inverse => StateFamily::new(kind),
        _ => StateFamily::new(kind).with_f(NonlinearityFunction::su11(kappa)?),
    };
    Ok(fam.with_kappa(kappa))
}

/// Real-axis sweep on the open interval (0, 1).
fn real_sweep(families: &[(Option<f64>, StateFamily)], points: usize) -> Result<Vec<Row>, Error> {
    let grid = interior_grid(0.0, 1.0, points);
    let mut rows = Vec::with_capacity(families.len() * points);
    for (kappa, family) in families {
        for &x in &grid {
            rows.push(evaluate(family, *kappa, Complex64::new(x, 0.0))?);
        }
    }
    Ok(rows)
}

/// Square mesh of side 2·extent centered at the origin, re-major order.
fn complex_sweep(
    family: &StateFamily,
    kappa: Option<f64>,
    extent: f64,
    points: usize,
) -> Result<Vec<Row>, Error> {
    let axis = inclusive_grid(-extent, extent, points);
    let mut rows = Vec::with_capacity(points * points);
    for &re in &axis {
        for &im in &axis {
            rows.push(evaluate(family, kappa, Complex64::new(re, im))?);
        }
    }
    Ok(rows)
}

/// Produce the data behind figure `id` (1..=10).
///
/// `points` overrides the per-axis resolution (default 201 for line plots,
/// 101 for meshes); `extent` overrides the half-width of the complex
/// window where one applies.
pub fn figure(id: u32, points: Option<usize>, extent: Option<f64>) -> Result<FigureData, Error> {
    let su_kappas = [0.5, 1.0, 1.5];
    let line_pts = points.unwrap_or(201);
    let mesh_pts = points.unwrap_or(101);

    let spec = |family: &str, f: &str, grid: serde_json::Value, kappas: &[f64]| {
        json!({
            "figure": id,
            "family": family,
            "f": f,
            "kappa": kappas,
            "grid": grid,
            "observables": ["q", "var_x", "var_p"],
        })
    };
    let line_grid =
        json!({"axis": "re_z", "range": [0.0, 1.0], "points": line_pts, "endpoints": "open"});
    let mesh_grid = |half: f64| json!({"axis": ["re_z", "im_z"], "range": [-half, half], "points": mesh_pts, "endpoints": "closed"});

    match id {
        1 => Ok(FigureData {
            rows: real_sweep(
                &[(None, hydrogen_family(StateKind::InverseState))],
                line_pts,
            )?,
            with_kappa: false,
            spec: spec("inverse", "hydrogen", line_grid, &[]),
        }),
        2 => Ok(FigureData {
            rows: real_sweep(
                &[(None, hydrogen_family(StateKind::DualInverseState))],
                line_pts,
            )?,
            with_kappa: false,
            spec: spec("dual-inverse", "hydrogen", line_grid, &[]),
        }),
        3 => {
            let half = extent.unwrap_or(1.0);
            Ok(FigureData {
                rows: complex_sweep(
                    &hydrogen_family(StateKind::InverseState),
                    None,
                    half,
                    mesh_pts,
                )?,
                with_kappa: false,
                spec: spec("inverse", "hydrogen", mesh_grid(half), &[]),
            })
        }
        4 => {
            let half = extent.unwrap_or(1.0);
            Ok(FigureData {
                rows: complex_sweep(
                    &hydrogen_family(StateKind::DualInverseState),
                    None,
                    half,
                    mesh_pts,
                )?,
                with_kappa: false,
                spec: spec("dual-inverse", "hydrogen", mesh_grid(half), &[]),
            })
        }
        5 | 6 => {
            let kind = if id == 5 {
                StateKind::Su11Inverse
            } else {
                StateKind::DualInverseState
            };
            let mut families = Vec::new();
            for &kappa in &su_kappas {
                families.push((Some(kappa), su11_family(kind, kappa)?));
            }
            Ok(FigureData {
                rows: real_sweep(&families, line_pts)?,
                with_kappa: true,
                spec: spec(kind.name(), "su11", line_grid, &su_kappas),
            })
        }
        7 => {
            let half = extent.unwrap_or(1.0);
            Ok(FigureData {
                rows: complex_sweep(
                    &su11_family(StateKind::Su11Inverse, 0.5)?,
                    Some(0.5),
                    half,
                    mesh_pts,
                )?,
                with_kappa: true,
                spec: spec("su11-inverse", "su11", mesh_grid(half), &[0.5]),
            })
        }
        8 => {
            // one-dimensional slice of figure 7 at Re z = 0.8; the disk
            // limits Im z to |y| < 0.6
            let family = su11_family(StateKind::Su11Inverse, 0.5)?;
            let grid = interior_grid(-0.6, 0.6, line_pts);
            let mut rows = Vec::with_capacity(line_pts);
            for &y in &grid {
                rows.push(evaluate(&family, Some(0.5), Complex64::new(0.8, y))?);
            }
            Ok(FigureData {
                rows,
                with_kappa: true,
                spec: spec(
                    "su11-inverse",
                    "su11",
                    json!({"axis": "im_z", "range": [-0.6, 0.6], "points": line_pts, "re_z": 0.8, "endpoints": "open"}),
                    &[0.5],
                ),
            })
        }
        9 | 10 => {
            let kappa = if id == 9 { 1.0 } else { 3.0 };
            let half = extent.unwrap_or(3.0);
            Ok(FigureData {
                rows: complex_sweep(
                    &su11_family(StateKind::DualInverseState, kappa)?,
                    Some(kappa),
                    half,
                    mesh_pts,
                )?,
                with_kappa: true,
                spec: spec("dual-inverse", "su11", mesh_grid(half), &[kappa]),
            })
        }
        other => Err(Error::InvalidParameter(format!(
            "figure id must be 1..=10, got {other}"
        ))),
    }
}
