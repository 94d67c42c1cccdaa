//! Plain-text form of an ε-matrix.
//!
//! ```text
//! monoid: R:3
//! length: 2
//! 1 1
//! 3 1
//! ```

use super::DiagonalSpec;
use crate::monoid::text::{content_lines, header, TextError};
use crate::monoid::{DistanceMonoid, Monoid};

pub fn parse_diagonal_spec(text: &str, monoid: Monoid) -> Result<DiagonalSpec<Monoid>, TextError> {
    let mut lines = content_lines(text);
    let missing = |line: usize, what: &str| TextError::Syntax {
        line,
        message: format!("missing `{what}` line"),
    };
    let (line, first) = lines.next().ok_or_else(|| missing(1, "monoid:"))?;
    header(line, first, "monoid")?;
    let (line, second) = lines.next().ok_or_else(|| missing(line + 1, "length:"))?;
    let len: usize = header(line, second, "length")?
        .parse()
        .map_err(|_| TextError::Syntax {
            line,
            message: "length must be a nonnegative integer".into(),
        })?;
    let mut eps = Vec::with_capacity(len);
    let mut last = line;
    for (line, row) in lines {
        last = line;
        let row = row
            .split_whitespace()
            .map(|s| {
                monoid.parse_value(s).ok_or_else(|| TextError::Syntax {
                    line,
                    message: format!("`{s}` is not a distance in {}", monoid.describe()),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != len {
            return Err(TextError::Syntax {
                line,
                message: format!("expected {len} entries, found {}", row.len()),
            });
        }
        eps.push(row);
    }
    if eps.len() != len {
        return Err(TextError::Syntax {
            line: last,
            message: format!("expected {len} rows, found {}", eps.len()),
        });
    }
    Ok(DiagonalSpec::new(monoid, eps))
}

pub fn format_diagonal_spec<M: DistanceMonoid>(spec: &DiagonalSpec<M>, monoid_ref: &str) -> String {
    let mut out = format!("monoid: {monoid_ref}\nlength: {}\n", spec.len());
    for row in &spec.eps {
        let cells: Vec<String> = row.iter().map(|v| spec.monoid.label(v)).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::cyclic_check;

    #[test]
    fn round_trip() {
        let text = "monoid: R:3\nlength: 2\n1 1\n3 1\n";
        let m = Monoid::from_tag("R:3").unwrap();
        let spec = parse_diagonal_spec(text, m).unwrap();
        assert_eq!(format_diagonal_spec(&spec, "R:3"), text);
        assert!(!cyclic_check(&spec, 3).is_cyclic());
        assert!(cyclic_check(&spec, 4).is_cyclic());
    }

    #[test]
    fn rejects_ragged_rows() {
        let m = Monoid::from_tag("R:3").unwrap();
        let err = parse_diagonal_spec("monoid: R:3\nlength: 2\n1 1\n3\n", m).unwrap_err();
        assert!(matches!(err, TextError::Syntax { line: 4, .. }));
    }
}
