//! Rendering of command reports as JSON, CSV or text.

use std::time::{SystemTime, UNIX_EPOCH};

use serde_json::{json, Map, Value};
use verlinde::labels::fmt_real;
use verlinde::theory::TheoryConfig;
use verlinde::{Error, Result, TheoryConfig64};

use crate::config::{Format, RunConfig};

/// A command result in all three renderings.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: &'static str,
    pub result: Value,
    pub csv_header: Vec<&'static str>,
    pub csv_rows: Vec<Vec<String>>,
    pub text: String,
    /// prefix text output with the metadata block
    pub text_metadata: bool,
}

/// A float rounded to 12 significant digits; non-finite values become null.
pub fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    fmt_real(x).parse::<f64>().map(Value::from).unwrap_or(Value::Null)
}

pub fn theory_parameters(theory: &TheoryConfig64) -> Value {
    match theory {
        TheoryConfig::Minimal(k) | TheoryConfig::Pi0(k) | TheoryConfig::Sl2(k) => {
            json!({"u": k.u, "v": k.v, "k": k.k().to_string()})
        }
        TheoryConfig::Singlet(t) => json!({"p": t.p}),
        TheoryConfig::Heisenberg(h) => json!({
            "gram": h.gram().iter().map(|x| num(*x)).collect::<Vec<_>>(),
            "shift": h.shift().iter().map(|x| num(*x)).collect::<Vec<_>>(),
        }),
    }
}

pub fn metadata(cfg: &RunConfig, command: &str) -> Value {
    let mut m = Map::new();
    m.insert("tool".into(), json!(env!("CARGO_PKG_NAME")));
    m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    m.insert("command".into(), json!(command));
    m.insert("theory".into(), json!(cfg.theory.name()));
    m.insert("parameters".into(), theory_parameters(&cfg.theory));
    m.insert("seed".into(), json!(cfg.seed));
    m.insert("samples".into(), json!(cfg.samples));
    m.insert(
        "tolerances".into(),
        json!({
            "eps_round": num(cfg.tol.eps_round),
            "eps_limit": num(cfg.tol.eps_limit),
            "eps_exclusion": num(cfg.tol.eps_exclusion),
        }),
    );
    if cfg.timestamp {
        let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        m.insert("generated_at_unix".into(), json!(secs));
    }
    Value::Object(m)
}

fn metadata_lines(meta: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(m) = meta {
        for (k, v) in m {
            let v = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("# {k}: {v}\n"));
        }
    }
    out
}

pub fn render(cfg: &RunConfig, report: &Report) -> Result<String> {
    let meta = metadata(cfg, report.command);
    match cfg.format {
        Format::Json => {
            let doc = json!({"metadata": meta, "result": report.result});
            let mut s = serde_json::to_string_pretty(&doc).map_err(|e| Error::Precondition(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&report.csv_header).map_err(csv_err)?;
            for row in &report.csv_rows {
                w.write_record(row).map_err(csv_err)?;
            }
            let body = w.into_inner().map_err(|e| Error::Precondition(e.to_string()))?;
            let body = String::from_utf8(body).map_err(|e| Error::Precondition(e.to_string()))?;
            Ok(format!("{}{body}", metadata_lines(&meta)))
        }
        Format::Text => {
            if report.text_metadata {
                Ok(format!("{}{}", metadata_lines(&meta), report.text))
            } else {
                Ok(report.text.clone())
            }
        }
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Precondition(format!("csv: {e}"))
}
