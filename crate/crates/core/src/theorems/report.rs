//! CSV and JSON serialization of report rows.

use std::fmt::Write as _;
use std::io::Write;
use std::str::FromStr;

use serde::Serialize;
use serde_json::value::RawValue;

use super::CheckReport;
use crate::error::{Error, Result};

pub const CSV_HEADER: &str = "theorem,n,seed,lhs,rhs,margin,status";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::Parse(format!("unknown format {s:?}"))),
        }
    }
}

/// 17 significant digits; round-trips through `f64::from_str`.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.16e}")
    }
}

fn json_number(x: f64) -> Box<RawValue> {
    let text = if x.is_finite() { fmt_f64(x) } else { "null".into() };
    RawValue::from_string(text).expect("formatted float is valid JSON")
}

#[derive(Serialize)]
struct Row<'a> {
    theorem: &'a str,
    n: usize,
    seed: u64,
    lhs: Box<RawValue>,
    rhs: Box<RawValue>,
    margin: Box<RawValue>,
    status: String,
}

pub fn to_csv(reports: &[CheckReport]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in reports {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.theorem,
            r.n,
            r.seed,
            fmt_f64(r.lhs),
            fmt_f64(r.rhs),
            fmt_f64(r.margin),
            r.status
        );
    }
    out
}

pub fn to_json(reports: &[CheckReport]) -> String {
    let rows: Vec<Row> = reports
        .iter()
        .map(|r| Row {
            theorem: r.theorem.name(),
            n: r.n,
            seed: r.seed,
            lhs: json_number(r.lhs),
            rhs: json_number(r.rhs),
            margin: json_number(r.margin),
            status: r.status.to_string(),
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&rows).expect("rows serialize");
    s.push('\n');
    s
}

pub fn render(reports: &[CheckReport], format: Format) -> String {
    match format {
        Format::Csv => to_csv(reports),
        Format::Json => to_json(reports),
    }
}

pub fn write_reports(w: &mut impl Write, reports: &[CheckReport], format: Format) -> Result<()> {
    w.write_all(render(reports, format).as_bytes()).map_err(|e| Error::Io(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theorems::{Status, TheoremId};

    fn rows() -> Vec<CheckReport> {
        vec![
            CheckReport::upper(TheoremId::T3_1, 3, 7, 1.0 / 3.0, 2.0, 1e-6),
            CheckReport::inconclusive(TheoremId::T3_1, 4, 8, &Error::EigenFailure { sweeps: 100 }),
        ]
    }

    #[test]
    fn csv_layout_and_round_trip() {
        let text = to_csv(&rows());
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        let f: Vec<&str> = lines[1].split(',').collect();
        assert_eq!(f[0], "T3_1");
        assert_eq!(f[3].parse::<f64>().unwrap(), 1.0 / 3.0);
        assert_eq!(f[6], "Holds");
        assert!(lines[2].ends_with("NaN,NaN,NaN,Inconclusive"));
    }

    #[test]
    fn json_fields_match_csv_header() {
        let v: serde_json::Value = serde_json::from_str(&to_json(&rows())).unwrap();
        let first = v[0].as_object().unwrap();
        let mut keys: Vec<&str> = first.keys().map(|k| k.as_str()).collect();
        let mut want: Vec<&str> = CSV_HEADER.split(',').collect();
        keys.sort_unstable();
        want.sort_unstable();
        assert_eq!(keys, want);
        assert_eq!(v[0]["lhs"].as_f64().unwrap(), 1.0 / 3.0);
        assert_eq!(v[0]["margin"].as_f64().unwrap(), 2.0 - 1.0 / 3.0);
        assert!(v[1]["lhs"].is_null());
        assert_eq!(v[1]["status"], Status::Inconclusive.to_string());
    }

    #[test]
    fn float_format_round_trips() {
        for x in [0.1, 1e-300, -2.5e17, std::f64::consts::PI, 5e-324] {
            assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!("JSON".parse::<Format>().unwrap(), Format::Json);
    }
}
