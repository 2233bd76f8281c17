use serde_json::{json, Value};
use uqsim_core::sim::{ErrorModel, ExecutionLog, LogEntry};

use crate::error::ParseError;

/// JSON document with the generator name, error model and per-instruction draws.
pub fn write_log(log: &ExecutionLog) -> String {
    let model = log.error_model.map(|e| {
        json!({"eta_local": e.eta_local, "eta_int": e.eta_int, "seed": e.seed, "crosstalk": e.crosstalk})
    });
    let entries: Vec<Value> = log.entries.iter().map(|e| json!({"index": e.index, "deltas": e.deltas})).collect();
    let doc = json!({"rng": log.rng, "error_model": model, "entries": entries});
    serde_json::to_string_pretty(&doc).expect("log serializes")
}

fn bad(e: impl std::fmt::Display) -> ParseError {
    ParseError::new(1, 1, e.to_string())
}

pub fn parse_log(text: &str) -> Result<ExecutionLog, ParseError> {
    let v: Value = serde_json::from_str(text).map_err(|e| ParseError::new(e.line(), e.column(), e.to_string()))?;
    let rng = v["rng"].as_str().ok_or_else(|| bad("missing `rng`"))?.to_string();
    let error_model = match &v["error_model"] {
        Value::Null => None,
        m => {
            let f = |k: &str| m[k].as_f64().ok_or_else(|| bad(format!("missing `{k}`")));
            let seed = m["seed"].as_u64().ok_or_else(|| bad("missing `seed`"))?;
            let crosstalk = m["crosstalk"].as_bool().unwrap_or(false);
            Some(ErrorModel::new(f("eta_local")?, f("eta_int")?, seed).map_err(bad)?.with_crosstalk(crosstalk))
        }
    };
    let entries = v["entries"]
        .as_array()
        .ok_or_else(|| bad("missing `entries`"))?
        .iter()
        .map(|e| {
            let index = e["index"].as_u64().ok_or_else(|| bad("entry without index"))? as usize;
            let deltas = e["deltas"]
                .as_array()
                .ok_or_else(|| bad("entry without deltas"))?
                .iter()
                .map(|d| d.as_f64().ok_or_else(|| bad("non-numeric delta")))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(LogEntry { index, deltas })
        })
        .collect::<Result<Vec<_>, ParseError>>()?;
    Ok(ExecutionLog { rng, error_model, entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let log = ExecutionLog {
            rng: "x".into(),
            error_model: Some(ErrorModel::new(0.01, 0.02, 42).unwrap()),
            entries: vec![LogEntry { index: 0, deltas: vec![0.1 / 3.0, -1e-7] }, LogEntry { index: 1, deltas: vec![] }],
        };
        assert_eq!(parse_log(&write_log(&log)).unwrap(), log);
        let clean = ExecutionLog::noiseless();
        assert_eq!(parse_log(&write_log(&clean)).unwrap(), clean);
    }
}
