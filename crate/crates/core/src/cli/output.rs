use serde_json::{json, Value};

use crate::galois::FieldTower;
use crate::lweight::{format_poly, LWeight};
use crate::mult::MultReport;

pub fn field_info(tower: &FieldTower) -> Value {
    let modulus: Vec<String> = tower
        .modulus()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| **c != 0)
        .map(|(i, c)| {
            let var = match i {
                0 => String::new(),
                1 => "g".into(),
                _ => format!("g^{i}"),
            };
            match (*c, i) {
                (c, 0) => c.to_string(),
                (1, _) => var,
                (c, _) => format!("{c}*{var}"),
            }
        })
        .collect();
    json!({
        "p": tower.p(),
        "k": tower.k(),
        "q": tower.q(),
        "ambient": tower.ambient(),
        "modulus": modulus.join("+"),
    })
}

/// `[(1+g*u), (1)]`, with `(num)/(den)` for non-polynomial coordinates.
pub fn poly_string(w: &LWeight) -> String {
    let tower = w.tower();
    let coords: Vec<String> = w
        .to_rational_tuple()
        .iter()
        .map(|(num, den)| {
            if den.len() <= 1 {
                format!("({})", format_poly(&tower, num))
            } else {
                format!("({})/({})", format_poly(&tower, num), format_poly(&tower, den))
            }
        })
        .collect();
    format!("[{}]", coords.join(", "))
}

pub fn lweight_value(w: &LWeight) -> Value {
    serde_json::to_value(w).expect("ℓ-weights serialize")
}

pub fn report_value(r: &MultReport) -> Value {
    serde_json::to_value(r).expect("reports serialize")
}

/// Aligned columns, left-justified, separated by two spaces.
pub fn render_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let fmt_row = |cells: Vec<&str>| -> String {
        let line: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}", w = *w))
            .collect();
        line.join("  ").trim_end().to_string()
    };
    let mut out = vec![fmt_row(headers.to_vec())];
    let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    out.push(fmt_row(rule.iter().map(String::as_str).collect()));
    for row in rows {
        out.push(fmt_row(row.iter().map(|s| s.as_str()).collect()));
    }
    out.join("\n")
}

pub fn checks_string(r: &MultReport) -> String {
    let parts: Vec<String> = r
        .cross_checks
        .iter()
        .map(|c| {
            let name = serde_json::to_value(c.method)
                .ok()
                .and_then(|v| v.as_str().map(String::from))
                .unwrap_or_default();
            format!("{name}={}", c.value)
        })
        .collect();
    parts.join(",")
}

pub fn method_name(r: &MultReport) -> String {
    serde_json::to_value(r.method)
        .ok()
        .and_then(|v| v.as_str().map(String::from))
        .unwrap_or_default()
}
