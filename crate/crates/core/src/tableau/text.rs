//! Plain-text tableau files.
//!
//! ```text
//! shape: 4,4,4,3
//! **..
//! ..*.
//! ****
//! ..*
//! ```
//!
//! The header lists every row length, zero parts included (`shape:` alone
//! for the tableau with no rows). Then one line per row holding exactly
//! that many characters, `*` for a dot and `.` for an empty box; a
//! zero-length row is an empty line. Every line ends in `\n`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::{PermutationTableau, Shape, TableauError};

const HEADER: &str = "shape:";

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn fail<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        column,
        message: message.into(),
    })
}

fn parse_header(line: &str) -> Result<Vec<usize>, ParseError> {
    let Some(rest) = line.strip_prefix(HEADER) else {
        return fail(1, 1, format!("expected header starting with {HEADER:?}"));
    };
    if rest.is_empty() {
        return Ok(Vec::new());
    }
    let Some(list) = rest.strip_prefix(' ') else {
        return fail(
            1,
            HEADER.len() + 1,
            "expected a single space after \"shape:\"",
        );
    };
    let mut parts = Vec::new();
    let mut column = HEADER.len() + 2;
    for token in list.split(',') {
        if token.is_empty() || !token.bytes().all(|b| b.is_ascii_digit()) {
            return fail(1, column, format!("expected a row length, found {token:?}"));
        }
        if token.len() > 1 && token.starts_with('0') {
            return fail(1, column, format!("leading zero in row length {token:?}"));
        }
        match token.parse() {
            Ok(len) => parts.push(len),
            Err(_) => return fail(1, column, format!("row length {token:?} is too large")),
        }
        column += token.len() + 1;
    }
    Ok(parts)
}

fn parse(text: &str) -> Result<(Shape, Vec<bool>), ParseError> {
    let Some(body) = text.strip_suffix('\n') else {
        return fail(text.split('\n').count(), 1, "missing final newline");
    };
    let lines: Vec<&str> = body.split('\n').collect();
    let parts = parse_header(lines[0])?;
    let Ok(shape) = Shape::new(parts) else {
        return fail(1, 1, "row lengths must be weakly decreasing");
    };
    let rows = &lines[1..];
    if rows.len() != shape.row_count() {
        return fail(
            2 + rows.len().min(shape.row_count()),
            1,
            format!(
                "header declares {} rows, found {}",
                shape.row_count(),
                rows.len()
            ),
        );
    }
    let mut dots = Vec::with_capacity(shape.box_count());
    for (r, row) in rows.iter().enumerate() {
        let line = r + 2;
        let expected = shape.row_len(r + 1);
        let mut count = 0;
        for (c, ch) in row.chars().enumerate() {
            match ch {
                '*' => dots.push(true),
                '.' => dots.push(false),
                other => {
                    return fail(
                        line,
                        c + 1,
                        format!("unexpected character {other:?}; use '*' or '.'"),
                    )
                }
            }
            count += 1;
        }
        if count != expected {
            return fail(
                line,
                count.min(expected) + 1,
                format!("row {} should have {expected} boxes, found {count}", r + 1),
            );
        }
    }
    Ok((shape, dots))
}

impl FromStr for PermutationTableau {
    type Err = TableauError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let (shape, dots) = parse(text)?;
        PermutationTableau::new(shape, dots)
    }
}

impl fmt::Display for PermutationTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(HEADER)?;
        let parts = self.shape().parts();
        for (idx, len) in parts.iter().enumerate() {
            f.write_str(if idx == 0 { " " } else { "," })?;
            write!(f, "{len}")?;
        }
        f.write_str("\n")?;
        for r in 1..=parts.len() {
            for &dot in self.row(r) {
                f.write_str(if dot { "*" } else { "." })?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}

impl PermutationTableau {
    /// The text form on a single line, newlines written as `\n`; used for
    /// report witnesses.
    pub fn to_escaped(&self) -> String {
        self.to_string().replace('\n', "\\n")
    }

    pub fn from_escaped(s: &str) -> Result<Self, TableauError> {
        s.replace("\\n", "\n").parse()
    }
}
