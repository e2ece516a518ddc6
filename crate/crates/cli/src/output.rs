//! CSV and JSON encodings of `n_min` records.

use std::fmt::Write as _;

use nanotemp_core::NminPoint;
use serde::{Deserialize, Serialize};

pub const CSV_HEADER: &str = "t_ratio,bound_cond1,bound_cond2,n_min,l_min_m";

/// One emitted row. `bound_cond1` is absent where condition 1 is inapplicable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub t_ratio: f64,
    pub bound_cond1: Option<f64>,
    pub bound_cond2: f64,
    pub n_min: u64,
    pub l_min_m: Option<f64>,
}

impl From<&NminPoint> for Row {
    fn from(p: &NminPoint) -> Self {
        Self {
            t_ratio: p.t_ratio,
            bound_cond1: p.bound1.value(),
            bound_cond2: p.bound2,
            n_min: p.n_min,
            l_min_m: p.l_min,
        }
    }
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

fn optional(x: Option<f64>) -> String {
    x.map(float).unwrap_or_default()
}

fn csv_fields(r: &Row) -> String {
    format!(
        "{},{},{},{},{}",
        float(r.t_ratio),
        optional(r.bound_cond1),
        float(r.bound_cond2),
        r.n_min,
        optional(r.l_min_m)
    )
}

pub fn csv(rows: &[Row]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        writeln!(out, "{}", csv_fields(r)).expect("writing to a String");
    }
    out
}

/// Single `lmin` record: the curve columns prefixed by material and kelvin.
pub fn lmin_csv(material: &str, kelvin: f64, row: &Row) -> String {
    format!("material,T_K,{CSV_HEADER}\n{material},{},{}\n", float(kelvin), csv_fields(row))
}

pub fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("records serialize");
    s.push('\n');
    s
}
