//! Poset files: either the text format
//!
//! ```text
//! # V-shaped poset
//! 3
//! 1 < 3
//! 2 < 3
//! ```
//!
//! or JSON `{"n": 3, "covers": [[1, 3], [2, 3]]}`.

use enriched_chain::Poset;
use serde::Deserialize;

use crate::CliError;

#[derive(Deserialize)]
struct JsonPoset {
    n: usize,
    #[serde(default)]
    covers: Vec<(usize, usize)>,
}

pub fn parse_poset(source: &str, text: &str) -> Result<Poset, CliError> {
    if text.trim_start().starts_with('{') {
        let parsed: JsonPoset = serde_json::from_str(text).map_err(|e| CliError::Parse {
            file: source.to_string(),
            line: e.line(),
            message: e.to_string(),
        })?;
        return Ok(Poset::from_covers(parsed.n, &parsed.covers)?);
    }

    let parse_err = |line: usize, message: String| CliError::Parse {
        file: source.to_string(),
        line,
        message,
    };
    let mut n = None;
    let mut covers = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if n.is_none() {
            let value = line
                .parse::<usize>()
                .map_err(|_| parse_err(line_no, format!("expected the element count, found {line:?}")))?;
            n = Some(value);
            continue;
        }
        let (a, b) = line
            .split_once('<')
            .ok_or_else(|| parse_err(line_no, format!("expected `a < b`, found {line:?}")))?;
        let label = |s: &str| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| parse_err(line_no, format!("expected `a < b`, found {line:?}")))
        };
        covers.push((label(a)?, label(b)?));
    }
    let n = n.ok_or_else(|| parse_err(1, "empty poset file".into()))?;
    Ok(Poset::from_covers(n, &covers)?)
}
