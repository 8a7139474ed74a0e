//! Coefficient lists: one rational per line, or OEIS b-file `index value` rows.
//! Blank lines and lines starting with `#` are skipped.

use std::fs;
use std::path::Path;

use hkdiag_core::Rational;
use thiserror::Error;

use crate::parse::parse_rational;

#[derive(Debug, Error)]
pub enum CoeffError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

pub fn parse_coefficients(text: &str) -> Result<Vec<Rational>, CoeffError> {
    let mut out = Vec::new();
    let mut last_index: Option<i64> = None;
    for (k, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let syntax = |message: String| CoeffError::Syntax { line: k + 1, message };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let value = match fields.as_slice() {
            [v] => v,
            [i, v] => {
                let index: i64 = i.parse().map_err(|_| syntax(format!("bad index '{i}'")))?;
                if let Some(prev) = last_index {
                    if index != prev + 1 {
                        return Err(syntax(format!("index {index} does not follow {prev}")));
                    }
                }
                last_index = Some(index);
                v
            }
            _ => return Err(syntax("expected `value` or `index value`".into())),
        };
        out.push(parse_rational(value).map_err(|e| syntax(e.message))?);
    }
    Ok(out)
}

pub fn read_coefficients(path: &Path) -> Result<Vec<Rational>, CoeffError> {
    let text = fs::read_to_string(path).map_err(|source| CoeffError::Io { path: path.display().to_string(), source })?;
    parse_coefficients(&text)
}
