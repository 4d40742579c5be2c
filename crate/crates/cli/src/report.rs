use std::fmt::Write as _;
use std::time::Duration;

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

pub struct RunReport {
    command: Vec<String>,
    digest: String,
    result: Value,
    wall: Option<Duration>,
}

impl RunReport {
    pub fn new(args: &[String], inputs: &[(String, Vec<u8>)], result: Value, wall: Option<Duration>) -> Self {
        let mut h = Sha256::new();
        for a in args {
            h.update(a.as_bytes());
            h.update([0]);
        }
        for (name, bytes) in inputs {
            h.update(name.as_bytes());
            h.update([0]);
            h.update((bytes.len() as u64).to_le_bytes());
            h.update(bytes);
        }
        let digest = h.finalize().iter().map(|b| format!("{b:02x}")).collect();
        RunReport { command: args.to_vec(), digest, result, wall }
    }

    fn value(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), json!(self.command));
        m.insert("inputs_digest".into(), json!(self.digest));
        m.insert("result".into(), self.result.clone());
        if let Some(w) = self.wall {
            m.insert("wall_time_ms".into(), json!(w.as_secs_f64() * 1000.0));
        }
        Value::Object(m)
    }

    pub fn to_json(&self) -> String {
        self.value().to_string()
    }

    pub fn pretty(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command  {}", self.command.join(" "));
        let _ = writeln!(out, "digest   {}", self.digest);
        if let Some(w) = self.wall {
            let _ = writeln!(out, "time     {:.3} ms", w.as_secs_f64() * 1000.0);
        }
        out.push('\n');
        render(&self.result, 0, &mut out);
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(m) => {
            let width = m.keys().map(|k| k.len()).max().unwrap_or(0);
            for (k, x) in m {
                match inline(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k:<width$}  {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}");
                        render(x, indent + 2, out);
                    }
                }
            }
        }
        Value::Array(items) if items.iter().all(|r| r.as_array().is_some_and(|r| r.iter().all(|c| scalar(c).is_some()))) => {
            let rows: Vec<Vec<String>> = items.iter().map(|r| r.as_array().unwrap().iter().filter_map(scalar).collect()).collect();
            let w = rows.iter().flatten().map(|c| c.chars().count()).max().unwrap_or(1);
            for r in rows {
                let cells: Vec<String> = r.iter().map(|c| format!("{c:>w$}")).collect();
                let _ = writeln!(out, "{pad}{}", cells.join(" "));
            }
        }
        Value::Array(items) => {
            for x in items {
                match inline(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{s}");
                    }
                    None => {
                        render(x, indent + 2, out);
                        out.push('\n');
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}

/// One-line form for scalars and flat arrays of scalars.
fn inline(v: &Value) -> Option<String> {
    if let Some(s) = scalar(v) {
        return Some(s);
    }
    let items = v.as_array()?;
    if items.iter().any(|x| matches!(x, Value::String(_))) {
        return None;
    }
    let cells: Option<Vec<String>> = items.iter().map(scalar).collect();
    cells.map(|c| format!("[{}]", c.join(", ")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_depends_on_inputs_only() {
        let args = vec!["homology".to_string()];
        let a = RunReport::new(&args, &[("f".into(), b"1".to_vec())], json!(1), None);
        let b = RunReport::new(&args, &[("f".into(), b"1".to_vec())], json!(2), Some(Duration::from_millis(3)));
        let c = RunReport::new(&args, &[("f".into(), b"2".to_vec())], json!(1), None);
        assert_eq!(a.digest, b.digest);
        assert_ne!(a.digest, c.digest);
        assert!(!a.to_json().contains("wall_time"));
        assert!(b.to_json().contains("wall_time_ms"));
    }

    #[test]
    fn pretty_tables() {
        let r = RunReport::new(&[], &[], json!({"size": 3, "table": [[0, 2], [2, 1]], "lines": ["a -> 1"]}), None);
        let p = r.pretty();
        assert!(p.contains("size   3"));
        assert!(p.contains("  0 2\n"));
        assert!(p.contains("  a -> 1\n"));
    }
}
