use std::io::Write;

use serde_json::Value;

use super::ResultRecord;
use crate::error::{Error, Result};

pub fn write_json<W: Write>(record: &ResultRecord, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, record).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

/// Leaf values of a JSON tree keyed by dotted paths (object keys sorted, arrays in order).
pub fn flatten_json(value: &Value) -> Vec<(String, String)> {
    let mut rows = Vec::new();
    walk(value, String::new(), &mut rows);
    rows
}

fn walk(value: &Value, path: String, rows: &mut Vec<(String, String)>) {
    let join = |key: &str| if path.is_empty() { key.to_string() } else { format!("{path}.{key}") };
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                walk(v, join(k), rows);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                walk(v, join(&i.to_string()), rows);
            }
        }
        Value::String(s) => rows.push((path, s.clone())),
        Value::Null => rows.push((path, String::new())),
        other => rows.push((path, other.to_string())),
    }
}

/// Long format: one row per metric, instance columns repeated.
pub fn write_csv<W: Write>(record: &ResultRecord, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(["command", "q", "d", "t", "set", "seed", "metric", "value"])
        .map_err(io)?;
    let c = &record.config;
    let instance = [
        record.command.clone(),
        c.q.to_string(),
        c.d.to_string(),
        c.t.to_string(),
        c.set.to_string(),
        record.seed.to_string(),
    ];
    let mut rows = flatten_json(&record.results);
    for check in &record.checks {
        let outcome = serde_json::to_value(check.outcome).expect("serializable");
        rows.push((format!("check.{}", check.name), outcome.as_str().unwrap_or_default().to_string()));
    }
    rows.push(("wall_ms".into(), record.wall_ms.to_string()));
    for (metric, value) in rows {
        w.write_record(instance.iter().cloned().chain([metric, value]))
            .map_err(io)?;
    }
    w.flush()?;
    Ok(())
}
