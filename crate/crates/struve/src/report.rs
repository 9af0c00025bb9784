//! Serialization of identity reports and point evaluations as JSON, CSV or an
//! aligned plain-text table.
//!
//! JSON numbers use the shortest decimal that round-trips, so parsing the output
//! reproduces every finite value bit for bit. Non-finite values, which JSON
//! cannot carry as numbers, are written as `null` (NaN) or the strings
//! `"inf"` / `"-inf"`. CSV numbers carry 17 significant digits.

use std::fmt::Write as _;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::config::EvalResult;
use crate::error::{Error, Result};
use crate::identity::{IdentityReport, Params};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Plain,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "plain" => Ok(Format::Plain),
            other => Err(Error::Usage(format!("unknown format {other}; expected json, csv or plain"))),
        }
    }
}

mod nonfinite {
    use super::*;

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Tag(String),
    }

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
        if v.is_nan() {
            s.serialize_none()
        } else if v.is_infinite() {
            s.serialize_str(if *v > 0.0 { "inf" } else { "-inf" })
        } else {
            s.serialize_f64(*v)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
        match Option::<Repr>::deserialize(d)? {
            None => Ok(f64::NAN),
            Some(Repr::Num(v)) => Ok(v),
            Some(Repr::Tag(t)) => match t.as_str() {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                "nan" => Ok(f64::NAN),
                other => Err(serde::de::Error::custom(format!("not a number: {other}"))),
            },
        }
    }
}

/// Flat record of one identity report, the unit of every output format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub identity: String,
    pub params: Params,
    #[serde(with = "nonfinite")]
    pub lhs: f64,
    #[serde(with = "nonfinite")]
    pub lhs_err: f64,
    #[serde(with = "nonfinite")]
    pub rhs: f64,
    #[serde(with = "nonfinite")]
    pub rhs_err: f64,
    #[serde(with = "nonfinite")]
    pub abs_residual: f64,
    #[serde(with = "nonfinite")]
    pub rel_residual: f64,
    pub pass: bool,
}

impl From<&IdentityReport> for ReportRow {
    fn from(r: &IdentityReport) -> Self {
        ReportRow {
            identity: r.identity_id.clone(),
            params: r.params.clone(),
            lhs: r.lhs.value,
            lhs_err: r.lhs.err_est,
            rhs: r.rhs.value,
            rhs_err: r.rhs.err_est,
            abs_residual: r.abs_residual,
            rel_residual: r.rel_residual,
            pass: r.pass,
        }
    }
}

/// Flat record of one point evaluation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalRow {
    pub function: String,
    pub params: Params,
    #[serde(with = "nonfinite")]
    pub value: f64,
    #[serde(with = "nonfinite")]
    pub err_est: f64,
    pub work: u64,
    pub converged: bool,
}

impl EvalRow {
    pub fn new(function: &str, params: Params, r: EvalResult) -> Self {
        EvalRow { function: function.to_string(), params, value: r.value, err_est: r.err_est, work: r.work, converged: r.converged }
    }
}

const REPORT_COLUMNS: [&str; 9] =
    ["identity", "params", "lhs", "lhs_err", "rhs", "rhs_err", "abs_residual", "rel_residual", "pass"];
const EVAL_COLUMNS: [&str; 6] = ["function", "params", "value", "err_est", "work", "converged"];

/// 17 significant digits, enough to recover the f64.
pub fn fmt17(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{v:.16e}")
    }
}

fn fmt_short(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.6e}")
    } else {
        fmt17(v)
    }
}

/// Parameters as `k=v;k=v` with round-trip values.
pub fn fmt_params(p: &Params) -> String {
    p.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
}

/// Inverse of [`fmt_params`].
pub fn parse_params(s: &str) -> Result<Params> {
    let mut out = Params::new();
    for part in s.split(';').filter(|p| !p.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| Error::Usage(format!("bad parameter entry {part}")))?;
        let v = parse_f64(v)?;
        out.insert(k.to_string(), v);
    }
    Ok(out)
}

fn parse_f64(s: &str) -> Result<f64> {
    match s {
        "nan" => Ok(f64::NAN),
        "inf" => Ok(f64::INFINITY),
        "-inf" => Ok(f64::NEG_INFINITY),
        _ => s.parse().map_err(|_| Error::Usage(format!("not a number: {s}"))),
    }
}

fn csv_bytes(header: &[&str], rows: impl Iterator<Item = Vec<String>>) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Usage(format!("csv output failed: {e}"));
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(&r).map_err(io)?;
    }
    w.into_inner().map_err(|e| Error::Usage(format!("csv output failed: {e}")))
}

fn plain_table(header: &[&str], rows: &[Vec<String>]) -> Vec<u8> {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let mut out = String::new();
    let line = |cells: &mut dyn Iterator<Item = &str>, out: &mut String| {
        let parts: Vec<String> = cells.zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        let _ = writeln!(out, "{}", parts.join("  ").trim_end());
    };
    line(&mut header.iter().copied(), &mut out);
    let _ = writeln!(out, "{}", widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("  "));
    for r in rows {
        line(&mut r.iter().map(String::as_str), &mut out);
    }
    out.into_bytes()
}

fn json_bytes<T: Serialize>(rows: &[T]) -> Result<Vec<u8>> {
    let mut v = serde_json::to_vec_pretty(rows).map_err(|e| Error::Usage(format!("json output failed: {e}")))?;
    v.push(b'\n');
    Ok(v)
}

/// Serializes identity reports in the requested format.
pub fn emit_reports(rows: &[ReportRow], format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Json => json_bytes(rows),
        Format::Csv => csv_bytes(
            &REPORT_COLUMNS,
            rows.iter().map(|r| {
                vec![
                    r.identity.clone(),
                    fmt_params(&r.params),
                    fmt17(r.lhs),
                    fmt17(r.lhs_err),
                    fmt17(r.rhs),
                    fmt17(r.rhs_err),
                    fmt17(r.abs_residual),
                    fmt17(r.rel_residual),
                    r.pass.to_string(),
                ]
            }),
        ),
        Format::Plain => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.identity.clone(),
                        fmt_params(&r.params),
                        fmt_short(r.lhs),
                        fmt_short(r.lhs_err),
                        fmt_short(r.rhs),
                        fmt_short(r.rhs_err),
                        fmt_short(r.abs_residual),
                        fmt_short(r.rel_residual),
                        r.pass.to_string(),
                    ]
                })
                .collect();
            Ok(plain_table(&REPORT_COLUMNS, &cells))
        }
    }
}

/// Serializes point evaluations in the requested format.
pub fn emit_evals(rows: &[EvalRow], format: Format) -> Result<Vec<u8>> {
    let cells = |short: bool| -> Vec<Vec<String>> {
        let f = if short { fmt_short } else { fmt17 };
        rows.iter()
            .map(|r| {
                vec![
                    r.function.clone(),
                    fmt_params(&r.params),
                    f(r.value),
                    f(r.err_est),
                    r.work.to_string(),
                    r.converged.to_string(),
                ]
            })
            .collect()
    };
    match format {
        Format::Json => json_bytes(rows),
        Format::Csv => csv_bytes(&EVAL_COLUMNS, cells(false).into_iter()),
        Format::Plain => Ok(plain_table(&EVAL_COLUMNS, &cells(true))),
    }
}

/// Reads reports back from JSON or CSV.
pub fn parse_reports(bytes: &[u8], format: Format) -> Result<Vec<ReportRow>> {
    match format {
        Format::Json => serde_json::from_slice(bytes).map_err(|e| Error::Usage(format!("bad report json: {e}"))),
        Format::Csv => {
            let mut r = csv::Reader::from_reader(bytes);
            let bad = |e: csv::Error| Error::Usage(format!("bad report csv: {e}"));
            if r.headers().map_err(bad)?.iter().ne(REPORT_COLUMNS) {
                return Err(Error::Usage("report csv header does not match".into()));
            }
            let mut out = Vec::new();
            for rec in r.records() {
                let rec = rec.map_err(bad)?;
                let num = |i: usize| parse_f64(&rec[i]);
                let pass = match &rec[8] {
                    "true" => true,
                    "false" => false,
                    other => return Err(Error::Usage(format!("bad pass flag {other}"))),
                };
                out.push(ReportRow {
                    identity: rec[0].to_string(),
                    params: parse_params(&rec[1])?,
                    lhs: num(2)?,
                    lhs_err: num(3)?,
                    rhs: num(4)?,
                    rhs_err: num(5)?,
                    abs_residual: num(6)?,
                    rel_residual: num(7)?,
                    pass,
                });
            }
            Ok(out)
        }
        Format::Plain => Err(Error::Usage("plain tables cannot be read back".into())),
    }
}
