//! SW³ table files: one `coords : value` entry per line, coordinates taken in
//! the generators of the `[pic_t]` presentation.

use std::path::Path;

use num_bigint::BigInt;

use super::format::{int, syntax, tokens, FormatError};
use crate::abelian::{GroupElement, GroupPresentation};
use crate::sw::Sw3Table;

pub fn parse_table(text: &str, pic_t: &GroupPresentation) -> Result<Sw3Table, FormatError> {
    let mut table = Sw3Table::new(pic_t.group().clone());
    let mut keys: Vec<(GroupElement, usize)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let colon = raw
            .find(':')
            .ok_or_else(|| syntax(ln, 1, "expected `coords : value`"))?;
        let (lhs, rhs) = (&raw[..colon], &raw[colon + 1..]);
        let coords = tokens(lhs)
            .into_iter()
            .map(|t| int::<BigInt>(ln, t, "an integer coordinate"))
            .collect::<Result<Vec<_>, _>>()?;
        if coords.len() != pic_t.generators() {
            return Err(syntax(
                ln,
                1,
                format!("{} coordinates given, expected {}", coords.len(), pic_t.generators()),
            ));
        }
        let offset = lhs.chars().count() + 1;
        let value_tokens = tokens(rhs);
        let [value] = value_tokens.as_slice() else {
            return Err(syntax(ln, offset + 1, "expected exactly one integer value"));
        };
        let mut value_tok = *value;
        value_tok.column += offset;
        let value: BigInt = int(ln, value_tok, "an integer value")?;

        let key = pic_t
            .element(&coords)
            .map_err(|e| syntax(ln, 1, e.to_string()))?;
        if let Some((_, first)) = keys.iter().find(|(k, _)| *k == key) {
            return Err(syntax(
                ln,
                1,
                format!("key {key} already given on line {first}"),
            ));
        }
        keys.push((key.clone(), ln));
        table
            .insert(key, value)
            .map_err(|e| syntax(ln, 1, e.to_string()))?;
    }
    Ok(table)
}

pub fn parse_table_file(
    path: impl AsRef<Path>,
    pic_t: &GroupPresentation,
) -> Result<Sw3Table, FormatError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| FormatError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_table(&text, pic_t)
}
