//! Plain-text and JSON forms of metric spaces.
//!
//! ```text
//! monoid: R:2
//! points: x y z
//! 0 1 1
//! 1 0 2
//! 1 2 0
//! ```
//!
//! The monoid line names a family tag or a monoid file; resolving it is up to
//! the caller.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{RMetricSpace, SpaceError};
use crate::monoid::text::{content_lines, header, TextError};
use crate::monoid::{DistanceMonoid, Monoid};

#[derive(Debug, Error)]
pub enum SpaceFormatError {
    #[error(transparent)]
    Text(#[from] TextError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// The JSON mirror of the text format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceJson {
    pub monoid: String,
    pub points: Vec<String>,
    pub distances: Vec<Vec<String>>,
}

impl SpaceJson {
    pub fn from_space<M: DistanceMonoid + Clone>(space: &RMetricSpace<M>, monoid_ref: &str) -> Self {
        let m = space.monoid();
        SpaceJson {
            monoid: monoid_ref.to_string(),
            points: space.labels().to_vec(),
            distances: space
                .matrix()
                .iter()
                .map(|row| row.iter().map(|v| m.label(v)).collect())
                .collect(),
        }
    }

    pub fn into_space(self, monoid: Monoid) -> Result<RMetricSpace<Monoid>, SpaceError> {
        let matrix = self
            .distances
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| {
                        monoid
                            .parse_value(s)
                            .ok_or_else(|| SpaceError::NotAnElement(s.clone()))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        RMetricSpace::new(monoid, self.points, matrix)
    }
}

/// Reads the `monoid:` reference without parsing the rest.
pub fn monoid_ref(text: &str) -> Result<String, TextError> {
    let (line, first) = content_lines(text).next().ok_or(TextError::Syntax {
        line: 1,
        message: "empty space file".into(),
    })?;
    Ok(header(line, first, "monoid")?.to_string())
}

/// Parses a space given the already-resolved monoid.
pub fn parse_space(text: &str, monoid: Monoid) -> Result<RMetricSpace<Monoid>, SpaceFormatError> {
    let mut lines = content_lines(text);
    let (line, first) = lines.next().ok_or(TextError::Syntax {
        line: 1,
        message: "empty space file".into(),
    })?;
    header(line, first, "monoid")?;
    let (line, second) = lines.next().ok_or(TextError::Syntax {
        line: line + 1,
        message: "missing `points:` line".into(),
    })?;
    let points: Vec<String> = header(line, second, "points")?
        .split_whitespace()
        .map(str::to_string)
        .collect();
    let mut matrix = Vec::with_capacity(points.len());
    for (line, row) in lines {
        let row = row
            .split_whitespace()
            .map(|s| {
                monoid.parse_value(s).ok_or_else(|| TextError::Syntax {
                    line,
                    message: format!("`{s}` is not a distance in {}", monoid.describe()),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        matrix.push(row);
    }
    Ok(RMetricSpace::new(monoid, points, matrix)?)
}

pub fn format_space<M: DistanceMonoid + Clone>(space: &RMetricSpace<M>, monoid_ref: &str) -> String {
    let json = SpaceJson::from_space(space, monoid_ref);
    let width = json
        .distances
        .iter()
        .flatten()
        .map(String::len)
        .max()
        .unwrap_or(1);
    let mut out = format!("monoid: {monoid_ref}\npoints: {}\n", json.points.join(" "));
    for row in &json.distances {
        let cells: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_and_json_round_trip() {
        let text = "monoid: R:2\npoints: x y z\n0 1 1\n1 0 2\n1 2 0\n";
        assert_eq!(monoid_ref(text).unwrap(), "R:2");
        let m = Monoid::from_tag("R:2").unwrap();
        let space = parse_space(text, m.clone()).unwrap();
        assert_eq!(format_space(&space, "R:2"), text);
        let json = SpaceJson::from_space(&space, "R:2");
        let back = serde_json::from_str::<SpaceJson>(&serde_json::to_string(&json).unwrap())
            .unwrap()
            .into_space(m)
            .unwrap();
        assert_eq!(back, space);
    }

    #[test]
    fn rejects_bad_values() {
        let m = Monoid::from_tag("R:2").unwrap();
        let err = parse_space("monoid: R:2\npoints: x y\n0 3\n3 0\n", m.clone()).unwrap_err();
        assert!(matches!(err, SpaceFormatError::Text(TextError::Syntax { line: 3, .. })));
        let err = parse_space("monoid: R:2\npoints: x y\n0 0\n0 0\n", m).unwrap_err();
        assert!(matches!(err, SpaceFormatError::Space(SpaceError::ZeroOffDiagonal { .. })));
    }
}
