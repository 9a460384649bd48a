use std::io::Write;
use std::process::ExitCode;

use serde::Serialize;
use serde_json::{json, Value};
use squircle::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
pub struct Provenance {
    pub method: String,
    pub seed: Option<u64>,
    pub tolerances: Value,
}

/// Wrapper for every `--json` response.
#[derive(Debug, Serialize)]
pub struct OutputEnvelope {
    pub schema_version: u32,
    pub command: String,
    pub parameters: Value,
    pub result: Value,
    pub provenance: Provenance,
}

impl OutputEnvelope {
    pub fn new(command: &str, parameters: Value, result: impl Serialize, provenance: Provenance) -> Self {
        OutputEnvelope {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            parameters,
            result: serde_json::to_value(result).expect("results serialize to JSON"),
            provenance,
        }
    }

    pub fn print(&self) -> std::io::Result<()> {
        let mut out = std::io::stdout().lock();
        serde_json::to_writer_pretty(&mut out, self)?;
        writeln!(out)
    }
}

pub fn provenance(method: &str, seed: Option<u64>, tolerances: Value) -> Provenance {
    Provenance {
        method: method.to_string(),
        seed,
        tolerances,
    }
}

pub fn quadrature_tolerances(target: f64, levels: u32) -> Value {
    json!({ "quadrature_target": target, "quadrature_max_levels": levels })
}

/// Twelve significant digits, without trailing zeros.
pub fn sig12(v: f64) -> String {
    if !v.is_finite() || v == 0.0 {
        return v.to_string();
    }
    let rounded: f64 = format!("{v:.11e}").parse().expect("float round trip");
    if (1e-6..1e15).contains(&rounded.abs()) {
        rounded.to_string()
    } else {
        format!("{rounded:e}")
    }
}

pub fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Argument(_) => 2,
        Error::Domain(_) => 3,
        Error::Accuracy { .. } | Error::Solver(_) => 4,
        Error::Pole { .. } => 5,
    }
}

pub fn fail(err: &Error, hint: Option<&str>) -> ExitCode {
    eprintln!("squircle: {err}");
    if let Some(h) = hint {
        eprintln!("hint: {h}");
    }
    ExitCode::from(exit_code(err))
}
