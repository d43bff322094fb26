use serde::{Deserialize, Serialize};

use super::{FiniteSemigroup, Result, SemigroupError};

#[derive(Serialize, Deserialize)]
struct JsonSemigroup {
    order: usize,
    table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

/// Parses `order n` followed by `n` rows of `n` whitespace-separated indices.
/// Blank lines and `#` comments are ignored.
pub fn parse_semigroup_text(text: &str) -> Result<FiniteSemigroup> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| SemigroupError::Format("empty input".into()))?;
    let order = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["order", n] => n
            .parse::<usize>()
            .map_err(|_| SemigroupError::Format(format!("bad order `{n}`")))?,
        _ => {
            return Err(SemigroupError::Format(format!(
                "expected `order <n>`, found `{header}`"
            )))
        }
    };
    let mut rows = Vec::with_capacity(order);
    for line in lines {
        let row = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| SemigroupError::Format(format!("bad table entry `{tok}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    if rows.len() != order {
        return Err(SemigroupError::Format(format!(
            "expected {order} rows, found {}",
            rows.len()
        )));
    }
    FiniteSemigroup::new(order, rows)
}

pub fn parse_semigroup_json(text: &str) -> Result<FiniteSemigroup> {
    let raw: JsonSemigroup =
        serde_json::from_str(text).map_err(|e| SemigroupError::Format(e.to_string()))?;
    let s = FiniteSemigroup::new(raw.order, raw.table)?;
    Ok(match raw.label {
        Some(label) => s.with_label(label),
        None => s,
    })
}

/// Accepts either the text format or the JSON object format.
pub fn parse_semigroup(text: &str) -> Result<FiniteSemigroup> {
    if text.trim_start().starts_with('{') {
        parse_semigroup_json(text)
    } else {
        parse_semigroup_text(text)
    }
}

impl FiniteSemigroup {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&JsonSemigroup {
            order: self.order(),
            table: self.rows(),
            label: self.label().map(str::to_owned),
        })
        .expect("plain data serializes")
    }
}
