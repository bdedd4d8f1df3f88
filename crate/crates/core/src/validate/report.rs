//! Serialization of validation reports as a single JSON document with the
//! schema {version, seed, records: [...], summary: {passed, failed}}.
//! Numbers are written with 17 significant digits so every double
//! round-trips exactly, and the writer is fully deterministic: identical
//! configurations produce byte-identical reports.

use super::CheckRecord;

pub const REPORT_VERSION: u32 = 1;

fn push_json_string(out: &mut String, s: &str) {
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
}

fn push_float(out: &mut String, v: f64) {
    if v.is_nan() {
        out.push_str("null");
    } else if v.is_infinite() {
        out.push_str(if v > 0.0 { "1e999" } else { "-1e999" });
    } else {
        // 17 significant digits round-trip any f64
        out.push_str(&format!("{v:.16e}"));
    }
}

/// Renders the full report document.
pub fn render_report(seed: u64, records: &[CheckRecord]) -> String {
    let passed = records.iter().filter(|r| r.passed).count();
    let failed = records.len() - passed;
    let mut out = String::with_capacity(256 * records.len() + 128);
    out.push_str("{\n");
    out.push_str(&format!("  \"version\": {REPORT_VERSION},\n"));
    out.push_str(&format!("  \"seed\": {seed},\n"));
    out.push_str("  \"records\": [\n");
    for (i, r) in records.iter().enumerate() {
        out.push_str("    {\"name\": ");
        push_json_string(&mut out, &r.name);
        out.push_str(", \"inputs\": ");
        push_json_string(&mut out, &r.inputs);
        out.push_str(", \"lhs\": ");
        push_float(&mut out, r.lhs);
        out.push_str(", \"rhs\": ");
        push_float(&mut out, r.rhs);
        out.push_str(", \"abs_err\": ");
        push_float(&mut out, r.abs_err);
        out.push_str(", \"rel_err\": ");
        push_float(&mut out, r.rel_err);
        out.push_str(", \"tolerance\": ");
        push_float(&mut out, r.tolerance);
        out.push_str(", \"passed\": ");
        out.push_str(if r.passed { "true" } else { "false" });
        out.push_str(", \"route_pair\": [");
        push_json_string(&mut out, &r.route_pair.0);
        out.push_str(", ");
        push_json_string(&mut out, &r.route_pair.1);
        out.push_str("]}");
        if i + 1 < records.len() {
            out.push(',');
        }
        out.push('\n');
    }
    out.push_str("  ],\n");
    out.push_str(&format!(
        "  \"summary\": {{\"passed\": {passed}, \"failed\": {failed}}}\n"
    ));
    out.push_str("}\n");
    out
}
