//! The plain-text matrix file format.
//!
//! ```text
//! # comment
//! quandle 3
//! 1 3 2
//! 3 2 1
//! 2 1 3
//!
//! quandle 1
//! 1
//! ```
//!
//! A record is a header line `quandle <n>` followed by `n` rows of `n`
//! whitespace-separated integers in `1..n`. Records are separated by blank
//! lines and `#` starts a comment. Group Cayley tables use the header
//! `group <n>` with the same layout.

use std::fmt::Write as _;

use thiserror::Error;

use crate::table::QuandleTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

/// One parsed record: its header keyword, header line number and range-checked rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Record {
    pub keyword: String,
    pub line: usize,
    pub rows: Vec<Vec<i64>>,
}

fn error(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

/// Splits `text` into records, checking shapes and entry ranges but not the axioms.
pub fn parse_records(text: &str) -> Result<Vec<Record>, ParseError> {
    let mut records = Vec::new();
    let mut current: Option<(Record, usize)> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let is_comment = raw.trim_start().starts_with('#');
        let content = raw.split('#').next().unwrap_or("").trim();

        if let Some((record, n)) = current.as_mut() {
            if is_comment {
                continue;
            }
            if content.is_empty() {
                return Err(error(
                    line_no,
                    format!("record has {} of {} rows", record.rows.len(), n),
                ));
            }
            let row = content
                .split_whitespace()
                .map(|tok| tok.parse::<i64>().map_err(|_| error(line_no, format!("not an integer: {tok:?}"))))
                .collect::<Result<Vec<i64>, _>>()?;
            if row.len() != *n {
                return Err(error(line_no, format!("row has {} entries, expected {}", row.len(), n)));
            }
            if let Some(&bad) = row.iter().find(|&&v| v < 1 || v > *n as i64) {
                return Err(error(line_no, format!("entry {bad} outside 1..{n}")));
            }
            record.rows.push(row);
            if record.rows.len() == *n {
                records.push(current.take().expect("record in progress").0);
            }
            continue;
        }

        if content.is_empty() {
            continue;
        }
        let mut tokens = content.split_whitespace();
        let keyword = tokens.next().expect("nonempty line");
        if keyword != "quandle" && keyword != "group" {
            return Err(error(line_no, format!("expected `quandle <n>`, found {content:?}")));
        }
        let n = match (tokens.next(), tokens.next()) {
            (Some(tok), None) => tok
                .parse::<usize>()
                .map_err(|_| error(line_no, format!("invalid order {tok:?}")))?,
            _ => return Err(error(line_no, format!("expected `{keyword} <n>`"))),
        };
        if n == 0 {
            return Err(error(line_no, "order must be at least 1"));
        }
        current = Some((Record { keyword: keyword.to_string(), line: line_no, rows: Vec::new() }, n));
    }

    if let Some((record, n)) = current {
        return Err(error(
            record.line,
            format!("record ends after {} of {} rows", record.rows.len(), n),
        ));
    }
    Ok(records)
}

/// A single record in the canonical layout, without a trailing blank line.
pub fn serialize(q: &QuandleTable) -> String {
    let mut out = String::new();
    writeln!(out, "quandle {}", q.order()).unwrap();
    for row in q.rows() {
        let line: Vec<String> = row.iter().map(usize::to_string).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    out
}

/// Records separated by blank lines.
pub fn serialize_all<'a>(tables: impl IntoIterator<Item = &'a QuandleTable>) -> String {
    tables.into_iter().map(serialize).collect::<Vec<_>>().join("\n")
}

/// Parses and validates every record, failing on the first parse error.
pub fn parse_quandles(text: &str) -> Result<Vec<(Record, crate::Result<QuandleTable>)>, ParseError> {
    Ok(parse_records(text)?
        .into_iter()
        .map(|r| {
            let q = QuandleTable::validate(&r.rows);
            (r, q)
        })
        .collect())
}
