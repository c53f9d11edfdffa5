//! Text and JSON formats for matrices and vectors.
//!
//! Text matrices: rows separated by newlines or semicolons, entries by
//! whitespace or commas. JSON matrices: an array of arrays of integers
//! (arbitrary size; parsing goes through exact decimal strings, never through
//! floating point).

use std::str::FromStr;

use num_bigint::BigInt;

use crate::matrix::{IntMatrix, MatrixError};

/// Parses the plain text matrix format.
pub fn parse_matrix_text(text: &str) -> Result<IntMatrix, MatrixError> {
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for line in text.split(['\n', ';']) {
        let entries: Vec<&str> = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .collect();
        if entries.is_empty() {
            continue;
        }
        let row = entries
            .iter()
            .map(|t| {
                BigInt::from_str(t)
                    .map_err(|_| MatrixError::Parse(format!("invalid integer '{t}'")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    rows_to_matrix(rows)
}

/// Parses the JSON matrix format with exact integers.
pub fn parse_matrix_json(text: &str) -> Result<IntMatrix, MatrixError> {
    let value: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| MatrixError::Parse(format!("invalid JSON: {e}")))?;
    matrix_from_json_value(&value)
}

pub fn matrix_from_json_value(value: &serde_json::Value) -> Result<IntMatrix, MatrixError> {
    let serde_json::Value::Array(rows_v) = value else {
        return Err(MatrixError::Parse("expected an array of rows".into()));
    };
    let mut rows = Vec::with_capacity(rows_v.len());
    for row_v in rows_v {
        let serde_json::Value::Array(entries) = row_v else {
            return Err(MatrixError::Parse("expected each row to be an array".into()));
        };
        let row = entries
            .iter()
            .map(|e| match e {
                serde_json::Value::Number(n) => {
                    let s = n.to_string();
                    if s.contains(['.', 'e', 'E']) {
                        return Err(MatrixError::Parse(format!("entry {s} is not an integer")));
                    }
                    BigInt::from_str(&s)
                        .map_err(|_| MatrixError::Parse(format!("invalid integer {s}")))
                }
                other => Err(MatrixError::Parse(format!("entry {other} is not a number"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    rows_to_matrix(rows)
}

fn rows_to_matrix(rows: Vec<Vec<BigInt>>) -> Result<IntMatrix, MatrixError> {
    if rows.is_empty() {
        return Err(MatrixError::EmptyMatrix);
    }
    let cols = rows[0].len();
    if rows.iter().any(|r| r.len() != cols) {
        return Err(MatrixError::Parse("rows have unequal lengths".into()));
    }
    let n_rows = rows.len();
    let entries = rows.into_iter().flatten().collect();
    IntMatrix::new(n_rows, cols, entries)
}

/// Detects the format from the first non-space character.
pub fn parse_matrix(text: &str) -> Result<IntMatrix, MatrixError> {
    if text.trim_start().starts_with('[') {
        parse_matrix_json(text)
    } else {
        parse_matrix_text(text)
    }
}

/// Exact JSON rendering of a matrix as an array of arrays of integers.
pub fn matrix_to_json_string(m: &IntMatrix) -> String {
    let mut out = String::from("[");
    for r in 0..m.rows() {
        if r > 0 {
            out.push(',');
        }
        out.push('[');
        for c in 0..m.cols() {
            if c > 0 {
                out.push(',');
            }
            out.push_str(&m.get(r, c).to_string());
        }
        out.push(']');
    }
    out.push(']');
    out
}

/// The same rendering as a `serde_json` value with full-precision numbers.
pub fn matrix_to_json_value(m: &IntMatrix) -> serde_json::Value {
    serde_json::from_str(&matrix_to_json_string(m)).expect("rendered JSON is valid")
}

/// Parses a comma- or space-separated vector of residues.
pub fn parse_vector_u64(text: &str) -> Result<Vec<u64>, MatrixError> {
    let parts: Vec<&str> = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .collect();
    if parts.is_empty() {
        return Err(MatrixError::Parse("empty vector".into()));
    }
    parts
        .iter()
        .map(|t| {
            t.parse::<u64>()
                .map_err(|_| MatrixError::Parse(format!("invalid coordinate '{t}'")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_formats() {
        let m = parse_matrix_text("1 2; 3 4").unwrap();
        assert_eq!(m, IntMatrix::from_rows(&[&[1, 2], &[3, 4]]));
        let m = parse_matrix_text("1, 2\n-3, 4").unwrap();
        assert_eq!(m, IntMatrix::from_rows(&[&[1, 2], &[-3, 4]]));
        assert!(parse_matrix_text("1 2; 3").is_err());
        assert!(parse_matrix_text("").is_err());
    }

    #[test]
    fn json_round_trip() {
        let m = IntMatrix::from_rows(&[&[1, -2], &[0, 7]]);
        let s = matrix_to_json_string(&m);
        assert_eq!(s, "[[1,-2],[0,7]]");
        assert_eq!(parse_matrix_json(&s).unwrap(), m);
        assert_eq!(parse_matrix(&s).unwrap(), m);
        assert!(parse_matrix_json("[[1.5]]").is_err());
    }

    #[test]
    fn json_preserves_large_entries() {
        let big = "123456789012345678901234567890";
        let text = format!("[[{big}, 1],[0, 1]]");
        let m = parse_matrix_json(&text).unwrap();
        assert_eq!(m.get(0, 0).to_string(), big);
        let back = matrix_to_json_string(&m);
        assert!(back.contains(big));
    }

    #[test]
    fn vectors() {
        assert_eq!(parse_vector_u64("0,1,0,0").unwrap(), vec![0, 1, 0, 0]);
        assert_eq!(parse_vector_u64("2 3").unwrap(), vec![2, 3]);
        assert!(parse_vector_u64("x").is_err());
    }
}
