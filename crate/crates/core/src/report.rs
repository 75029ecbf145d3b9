//! Serialization of reports (JSON) and plot-ready tables (CSV).
//!
//! CSV numbers are written as `{:.16e}`: 17 significant digits, `.` decimal
//! separator, independent of locale.

use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;

use crate::boundary::{DerivativeTable, JuliaRow};

/// A rectangular table of floats with named columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

impl Table {
    /// `t | quotient`
    pub fn quotients(ray: &[(f64, f64)]) -> Self {
        Table {
            headers: vec!["t", "quotient"],
            rows: ray.iter().map(|&(t, q)| vec![t, q]).collect(),
        }
    }

    /// `re delta1, im delta1, re delta2, im delta2, re D, im D`
    pub fn derivatives(table: &DerivativeTable) -> Self {
        Table {
            headers: vec!["re_delta1", "im_delta1", "re_delta2", "im_delta2", "re_D", "im_D"],
            rows: table
                .entries
                .iter()
                .map(|e| {
                    let [d1, d2] = e.delta.coords();
                    vec![d1.re, d1.im, d2.re, d2.im, e.value.re, e.value.im]
                })
                .collect(),
        }
    }

    /// `t | lhs, rhs, residual`
    pub fn julia(rows: &[JuliaRow]) -> Self {
        Table {
            headers: vec!["t", "lhs", "rhs", "residual"],
            rows: rows.iter().map(|r| vec![r.t, r.lhs, r.rhs, r.residual]).collect(),
        }
    }

    pub fn write_csv<W: Write>(&self, w: W) -> io::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(&self.headers)?;
        for row in &self.rows {
            out.write_record(row.iter().map(|&x| format_float(x)))?;
        }
        out.flush()
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ascii output")
    }

    pub fn save(&self, path: &Path) -> io::Result<()> {
        self.write_csv(std::fs::File::create(path)?)
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}
