//! Rendering reports as JSON, CSV or text.
//!
//! JSON is the canonical form. CSV and text are derived from it by
//! flattening scalar leaves to dotted keys, except for spectra (one row per
//! eigenvalue) and verification runs (one row per criterion).

use std::fmt::Write as _;

use anyhow::{bail, Result};
use serde_json::Value;

use crate::report::{Body, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl Format {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "json" => Format::Json,
            "csv" => Format::Csv,
            "text" => Format::Text,
            _ => bail!("unknown format {s:?}; expected json, csv or text"),
        })
    }
}

pub fn render(report: &Report, format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(report)? + "\n"),
        Format::Csv => csv(report),
        Format::Text => text(report),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&key(k), v, out);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&key(&i.to_string()), v, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Null => out.push((prefix.to_string(), String::new())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv(report: &Report) -> Result<String> {
    let mut s = String::new();
    match &report.body {
        Body::Spectra(sp) => {
            s.push_str("eigenvalue,multiplicity\n");
            for e in &sp.spectrum {
                writeln!(s, "{},{}", e.value, e.multiplicity)?;
            }
        }
        Body::Verify(v) => {
            s.push_str("criterion,status,title,passed,checks,note\n");
            for c in &v.criteria {
                let passed = c.checks.iter().filter(|k| k.pass).count();
                let status = serde_json::to_value(c.status)?;
                writeln!(
                    s,
                    "{},{},{},{},{},{}",
                    c.id,
                    status.as_str().unwrap_or_default(),
                    csv_field(&c.title),
                    passed,
                    c.checks.len(),
                    csv_field(c.note.as_deref().unwrap_or(""))
                )?;
            }
        }
        _ => {
            let mut rows = Vec::new();
            flatten("", &serde_json::to_value(report)?, &mut rows);
            s.push_str("key,value\n");
            for (k, v) in rows {
                writeln!(s, "{},{}", csv_field(&k), csv_field(&v))?;
            }
        }
    }
    Ok(s)
}

fn text(report: &Report) -> Result<String> {
    let mut s = String::new();
    if let Body::Verify(v) = &report.body {
        for c in &v.criteria {
            writeln!(s, "{}", c.summary_line())?;
            for k in &c.checks {
                writeln!(s, "    [{}] {}: {}", if k.pass { "ok" } else { "FAIL" }, k.name, k.detail)?;
            }
        }
        writeln!(s, "suite {}: {}", v.suite, if v.passed { "PASS" } else { "FAIL" })?;
        return Ok(s);
    }
    let mut rows = Vec::new();
    flatten("", &serde_json::to_value(report)?, &mut rows);
    for (k, v) in rows {
        writeln!(s, "{k}: {v}")?;
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::CountReport;

    fn sample() -> Report {
        Report::new("count", 1, 2, Body::Count(CountReport { n: 2, k: 2, closed_form: "15".into(), enumerated: Some("15".into()) }))
    }

    #[test]
    fn json_is_canonical() {
        let r = sample();
        let text = render(&r, Format::Json).unwrap();
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert!(text.contains("\"kind\": \"count\""));
        assert!(!text.contains("time"));
    }

    #[test]
    fn flattened_forms() {
        let r = sample();
        let csv = render(&r, Format::Csv).unwrap();
        assert!(csv.starts_with("key,value\n"));
        assert!(csv.contains("closed_form,15\n"));
        let text = render(&r, Format::Text).unwrap();
        assert!(text.contains("enumerated: 15\n"));
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert!(Format::parse("xml").is_err());
    }
}
