//! Statement-level syntax shared by chart and arc files: `;`-terminated
//! statements, `#` comments to end of line, double-quoted strings.

use crate::algebra::Position;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Statement {
    /// Statement text with comments blanked out (so columns stay aligned).
    pub text: String,
    /// Position of the first character of `text`.
    pub start: Position,
}

impl Statement {
    /// The leading word and the remainder, with the remainder's position.
    pub fn keyword(&self) -> (String, String, Position) {
        let trimmed = self.text.trim_start();
        let lead = advance(self.start, &self.text[..self.text.len() - trimmed.len()]);
        let end = trimmed
            .find(|c: char| !(c.is_alphanumeric() || c == '_'))
            .unwrap_or(trimmed.len());
        let word = trimmed[..end].to_string();
        let rest = trimmed[end..].to_string();
        (word, rest, advance(lead, &trimmed[..end]))
    }

    /// Position of the first non-blank character.
    pub fn head(&self) -> Position {
        let trimmed = self.text.trim_start();
        advance(self.start, &self.text[..self.text.len() - trimmed.len()])
    }
}

pub fn advance(mut pos: Position, text: &str) -> Position {
    for c in text.chars() {
        if c == '\n' {
            pos.line += 1;
            pos.column = 1;
        } else {
            pos.column += 1;
        }
    }
    pos
}

pub fn parse_error(pos: Position, message: impl Into<String>) -> Error {
    Error::Parse {
        line: pos.line,
        column: pos.column,
        message: message.into(),
    }
}

/// Splits a document into non-empty statements. A trailing statement without
/// `;` is an error.
pub fn statements(text: &str) -> Result<Vec<Statement>> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut cur_start = Position::start();
    let mut pos = Position::start();
    let mut in_comment = false;
    let mut in_string = false;
    for c in text.chars() {
        if in_comment {
            if c == '\n' {
                in_comment = false;
                cur.push('\n');
            } else {
                cur.push(' ');
            }
        } else if in_string {
            if c == '\n' {
                return Err(parse_error(pos, "unterminated string"));
            }
            if c == '"' {
                in_string = false;
            }
            cur.push(c);
        } else if c == '#' {
            in_comment = true;
            cur.push(' ');
        } else if c == '"' {
            in_string = true;
            cur.push(c);
        } else if c == ';' {
            if !cur.trim().is_empty() {
                out.push(Statement {
                    text: std::mem::take(&mut cur),
                    start: cur_start,
                });
            }
            cur.clear();
            cur_start = advance(pos, ";");
        } else {
            cur.push(c);
        }
        pos = advance(pos, &c.to_string());
    }
    if in_string {
        return Err(parse_error(pos, "unterminated string"));
    }
    if !cur.trim().is_empty() {
        let s = Statement {
            text: cur,
            start: cur_start,
        };
        return Err(parse_error(s.head(), "statement is missing its terminating ';'"));
    }
    Ok(out)
}

/// Splits on top-level commas (outside parentheses), returning each piece
/// with its position.
pub fn split_list(body: &str, start: Position) -> Vec<(String, Position)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut cur_start = start;
    let mut pos = start;
    for c in body.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if c == ',' && depth == 0 {
            out.push((std::mem::take(&mut cur), cur_start));
            cur_start = advance(pos, ",");
        } else {
            cur.push(c);
        }
        pos = advance(pos, &c.to_string());
    }
    out.push((cur, cur_start));
    out
}

/// Parses `"path"` (the body of an include statement).
pub fn quoted(body: &str, start: Position) -> Result<String> {
    let t = body.trim();
    if t.len() >= 2 && t.starts_with('"') && t.ends_with('"') {
        Ok(t[1..t.len() - 1].to_string())
    } else {
        Err(parse_error(start, "expected a double-quoted path"))
    }
}
