//! Sweep evaluation and deterministic CSV/JSON output.
//!
//! Column order is fixed: (kappa,) re_z, im_z, q, var_x, var_p, mean_n,
//! tail_bound, domain. Floats are printed with 17 significant digits.
//! Grid points outside a family's convergence disk are kept as rows with
//! `domain = excluded` and empty observable columns.

use std::io::Write;

use num_complex::Complex64;
use serde_json::json;

use dualcs_core::{report, Error, StateFamily};

/// One evaluated sweep point.
pub struct Row {
    pub kappa: Option<f64>,
    pub z: Complex64,
    pub values: Option<RowValues>,
}

pub struct RowValues {
    pub q: Option<f64>,
    pub var_x: f64,
    pub var_p: f64,
    pub mean_n: f64,
    pub tail_bound: f64,
}

/// Evaluate the family at one grid point. Domain violations become
/// excluded rows; anything else is a real error.
pub fn evaluate(family: &StateFamily, kappa: Option<f64>, z: Complex64) -> Result<Row, Error> {
    let mut fam = family.clone().with_z(z);
    if let Some(k) = kappa {
        fam = fam.with_kappa(k);
    }
    match fam.build() {
        Ok(built) => {
            let rep = report(&built.vector);
            Ok(Row {
                kappa,
                z,
                values: Some(RowValues {
                    q: rep.mandel_q,
                    var_x: rep.var_x,
                    var_p: rep.var_p,
                    mean_n: rep.mean_n,
                    tail_bound: rep.tail_bound,
                }),
            })
        }
        Err(Error::Domain { .. }) | Err(Error::DivergentNormalization) => Ok(Row {
            kappa,
            z,
            values: None,
        }),
        Err(other) => Err(other),
    }
}

/// 17 significant digits, deterministic.
pub fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt).unwrap_or_default()
}

pub fn write_csv(out: &mut dyn Write, rows: &[Row], with_kappa: bool) -> std::io::Result<()> {
    if with_kappa {
        writeln!(
            out,
            "kappa,re_z,im_z,q,var_x,var_p,mean_n,tail_bound,domain"
        )?;
    } else {
        writeln!(out, "re_z,im_z,q,var_x,var_p,mean_n,tail_bound,domain")?;
    }
    for row in rows {
        let mut fields: Vec<String> = Vec::with_capacity(9);
        if with_kappa {
            fields.push(fmt_opt(row.kappa));
        }
        fields.push(fmt(row.z.re));
        fields.push(fmt(row.z.im));
        match &row.values {
            Some(v) => {
                fields.push(fmt_opt(v.q));
                fields.push(fmt(v.var_x));
                fields.push(fmt(v.var_p));
                fields.push(fmt(v.mean_n));
                fields.push(fmt(v.tail_bound));
                fields.push("ok".to_string());
            }
            None => {
                fields.extend(std::iter::repeat_with(String::new).take(5));
                fields.push("excluded".to_string());
            }
        }
        writeln!(out, "{}", fields.join(","))?;
    }
    Ok(())
}

pub fn rows_to_json(rows: &[Row]) -> Vec<serde_json::Value> {
    rows.iter()
        .map(|row| {
            let mut obj = serde_json::Map::new();
            if let Some(k) = row.kappa {
                obj.insert("kappa".into(), json!(k));
            }
            obj.insert("re_z".into(), json!(row.z.re));
            obj.insert("im_z".into(), json!(row.z.im));
            match &row.values {
                Some(v) => {
                    obj.insert("q".into(), json!(v.q));
                    obj.insert("var_x".into(), json!(v.var_x));
                    obj.insert("var_p".into(), json!(v.var_p));
                    obj.insert("mean_n".into(), json!(v.mean_n));
                    obj.insert("tail_bound".into(), json!(v.tail_bound));
                    obj.insert("domain".into(), json!("ok"));
                }
                None => {
                    obj.insert("domain".into(), json!("excluded"));
                }
            }
            serde_json::Value::Object(obj)
        })
        .collect()
}

pub fn write_json(
    out: &mut dyn Write,
    spec: serde_json::Value,
    rows: &[Row],
) -> std::io::Result<()> {
    let doc = json!({
        "spec": spec,
        "rows": rows_to_json(rows),
        "meta": {
            "version": env!("CARGO_PKG_VERSION"),
            "truncation_policy": format!(
                "auto-grown until last-term ratio < {:.0e} and tail bound < {:.0e}, cap N = {}",
                dualcs_core::states::LAST_TERM_RATIO,
                dualcs_core::states::TAIL_TARGET,
                dualcs_core::states::MAX_TRUNCATION
            ),
        },
    });
    writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)
}

/// n points strictly inside (lo, hi).
pub fn interior_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (1..=n)
        .map(|k| lo + (hi - lo) * k as f64 / (n as f64 + 1.0))
        .collect()
}

/// n points including both endpoints.
pub fn inclusive_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n)
        .map(|k| lo + (hi - lo) * k as f64 / (n as f64 - 1.0))
        .collect()
}
