//! JSON fragments and the plain-text rendering of reports.

use serde_json::{json, Value};
use tightlab_core::charp::{HarnessReport, KrullReport, TruncationReport};
use tightlab_core::{ComponentData, Error, Ideal, PolyMatrix, TcVerdict};

pub const SCHEMA: u64 = 1;

/// Reduced Gröbner basis elements, sorted as strings.
pub fn generators(ideal: &Ideal) -> Vec<String> {
    let mut gens = ideal.canonical_strings();
    gens.sort();
    gens
}

pub fn ideal(ideal: &Ideal) -> Value {
    json!({ "generators": generators(ideal), "unit": ideal.is_unit() })
}

pub fn components(c: &ComponentData) -> Value {
    let primes: Vec<Value> = c
        .primes()
        .iter()
        .zip(c.heights())
        .map(|(p, h)| json!({ "generators": generators(p), "height": h }))
        .collect();
    json!({ "primes": primes, "provenance": c.provenance().as_str() })
}

pub fn matrix(m: &PolyMatrix) -> Value {
    json!({
        "entries": m.to_strings(),
        "rows": m.row_labels(),
        "cols": m.col_labels(),
        "display": m.to_string(),
    })
}

pub fn verdict(v: &TcVerdict) -> Value {
    let evidence: Vec<Value> = v
        .evidence
        .iter()
        .map(|e| json!({ "e": e.e, "q": e.q, "element": e.witness, "holds": e.holds }))
        .collect();
    json!({
        "status": v.status.as_str(),
        "bound_e": v.bound_e,
        "summary": v.summary(),
        "multiplier": v.multiplier(),
        "evidence": evidence,
        "notes": v.notes,
    })
}

pub fn harness(h: &HarnessReport) -> Value {
    let rows: Vec<Value> = h
        .rows
        .iter()
        .map(|r| {
            let products: Vec<Value> =
                r.products.iter().map(|(d, ok)| json!({ "delta": d, "in_ideal": ok })).collect();
            json!({
                "candidate": r.candidate,
                "verdict": r.verdict.as_str(),
                "certified_by": r.certified_by,
                "products": products,
            })
        })
        .collect();
    json!({ "status": h.status.as_str(), "rows": rows, "notes": h.notes })
}

pub fn krull(k: &KrullReport) -> Value {
    let rows: Vec<Value> = k.rows.iter().map(|(n, ok)| json!({ "n": n, "member": ok })).collect();
    json!({ "rows": rows, "monotone": k.monotone, "held_through": k.held_through, "summary": k.final_line() })
}

pub fn truncation(t: &TruncationReport) -> Value {
    let rows: Vec<Value> = t
        .rows
        .iter()
        .map(|(f, g, ok)| json!({ "relation": f, "truncated": g, "residual_in_next_power": ok }))
        .collect();
    json!({
        "relations": rows,
        "residuals_ok": t.residuals_ok,
        "truncated_ideal": ideal(t.algebra.defining_ideal()),
    })
}

pub fn error(e: &Error) -> Value {
    let kind = match e.kind() {
        tightlab_core::ErrorKind::Argument => "argument",
        tightlab_core::ErrorKind::Parse => "parse",
        tightlab_core::ErrorKind::Domain => "domain",
        tightlab_core::ErrorKind::Verification => "verification",
    };
    json!({ "code": e.code(), "kind": kind, "message": e.to_string() })
}

/// Indented `key: value` text for terminal use.
pub fn to_text(v: &Value) -> String {
    let mut out = String::new();
    write_text(v, 0, &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a)
            if a.iter().all(|x| match x {
                Value::String(s) => !s.contains(", "),
                Value::Number(_) | Value::Bool(_) => true,
                _ => false,
            }) =>
        {
            Some(format!("[{}]", a.iter().map(|x| scalar(x).unwrap_or_default()).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn write_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        write_text(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        write_text(x, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_rendering() {
        let v = json!({ "a": 1, "b": { "c": ["x", "y"] }, "d": [{ "e": null }] });
        assert_eq!(to_text(&v), "a: 1\nb:\n  c: [x, y]\nd:\n  -\n    e: -\n");
    }
}
