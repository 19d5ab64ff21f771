//! JSON is the canonical output; TSV and text are projections of it.

use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Text,
}

pub fn render(value: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("values always serialize");
            s.push('\n');
            s
        }
        Format::Tsv => tsv(value),
        Format::Text => text(value),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// A top-level `rows` array of objects becomes a table; everything else
/// becomes `key<TAB>value` lines.
fn tsv(value: &Value) -> String {
    let mut out = String::new();
    let Value::Object(map) = value else {
        out.push_str(&scalar(value));
        out.push('\n');
        return out;
    };
    if let Some(Value::Array(rows)) = map.get("rows") {
        if let Some(Value::Object(first)) = rows.first() {
            let columns: Vec<&String> = first.keys().collect();
            out.push_str(&columns.iter().map(|c| c.as_str()).collect::<Vec<_>>().join("\t"));
            out.push('\n');
            for row in rows {
                let cells: Vec<String> = columns
                    .iter()
                    .map(|c| row.get(c.as_str()).map(scalar).unwrap_or_default())
                    .collect();
                out.push_str(&cells.join("\t"));
                out.push('\n');
            }
        }
        for (k, v) in map.iter().filter(|(k, _)| *k != "rows") {
            out.push_str(&format!("{k}\t{}\n", scalar(v)));
        }
        return out;
    }
    for (k, v) in map {
        out.push_str(&format!("{k}\t{}\n", scalar(v)));
    }
    out
}

fn text(value: &Value) -> String {
    let mut out = String::new();
    write_text(value, 0, &mut out);
    out
}

fn write_text(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                match v {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        write_text(v, indent + 1, out);
                    }
                    Value::Array(items) if items.iter().any(|i| i.is_object() || i.is_array()) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        for item in items {
                            match item {
                                Value::Object(_) => {
                                    out.push_str(&format!("{pad}  -\n"));
                                    write_text(item, indent + 2, out);
                                }
                                other => out.push_str(&format!("{pad}  {}\n", inline(other))),
                            }
                        }
                    }
                    other => out.push_str(&format!("{pad}{k}: {}\n", inline(other))),
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", inline(other))),
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::Array(items) => items.iter().map(inline).collect::<Vec<_>>().join(" "),
        other => scalar(other),
    }
}
