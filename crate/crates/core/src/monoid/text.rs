//! The plain-text monoid format.
//!
//! ```text
//! # truncated addition on {0,1,2}
//! elements: 0 1 2
//! 0 1 2
//! 1 2 2
//! 2 2 2
//! ```
//!
//! Labels are listed in increasing order and the first one denotes 0. Rows
//! of the Cayley table follow, written with labels. `#` starts a comment.

use thiserror::Error;

use super::{FiniteDistanceMonoid, MonoidError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TextError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Monoid(#[from] MonoidError),
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

/// Splits `key: rest` and checks the key.
pub(crate) fn header<'a>(line: usize, text: &'a str, key: &str) -> Result<&'a str, TextError> {
    match text.split_once(':') {
        Some((k, rest)) if k.trim() == key => Ok(rest.trim()),
        _ => Err(TextError::Syntax {
            line,
            message: format!("expected `{key}: …`"),
        }),
    }
}

pub fn parse_monoid(text: &str) -> Result<FiniteDistanceMonoid, TextError> {
    let mut lines = content_lines(text);
    let (line, first) = lines.next().ok_or(TextError::Syntax {
        line: 1,
        message: "empty monoid file".into(),
    })?;
    let labels: Vec<String> = header(line, first, "elements")?
        .split_whitespace()
        .map(str::to_string)
        .collect();
    if labels.is_empty() {
        return Err(TextError::Syntax {
            line,
            message: "no elements listed".into(),
        });
    }
    let index = |line: usize, label: &str| {
        labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| TextError::Syntax {
                line,
                message: format!("unknown element `{label}`"),
            })
    };
    let mut table = Vec::with_capacity(labels.len());
    for (line, row) in lines {
        let row = row
            .split_whitespace()
            .map(|label| index(line, label))
            .collect::<Result<Vec<_>, _>>()?;
        table.push(row);
    }
    Ok(FiniteDistanceMonoid::validate(labels, table)?)
}

pub fn format_monoid(m: &FiniteDistanceMonoid) -> String {
    let labels = m.labels();
    let width = labels.iter().map(String::len).max().unwrap_or(1);
    let mut out = format!("elements: {}\n", labels.join(" "));
    for row in m.rows() {
        let cells: Vec<String> = row
            .iter()
            .map(|&j| format!("{:>width$}", labels[j]))
            .collect();
        out.push_str(cells.join(" ").trim_end());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let m = FiniteDistanceMonoid::make_rn(3);
        let text = format_monoid(&m);
        assert_eq!(parse_monoid(&text).unwrap(), m);
    }

    #[test]
    fn comments_and_errors() {
        let text = "# R_1\nelements: 0 a\n0 a  # identity row\na a\n";
        assert_eq!(parse_monoid(text).unwrap().len(), 2);
        let err = parse_monoid("elements: 0 a\n0 b\nb b\n").unwrap_err();
        assert!(matches!(err, TextError::Syntax { line: 2, .. }));
        let err = parse_monoid("elements: 0 1 2\n0 1 2\n1 1 1\n2 1 2\n").unwrap_err();
        assert!(matches!(err, TextError::Monoid(MonoidError::NotMonotone { .. })));
    }
}
