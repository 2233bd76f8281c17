//! Plain-text file formats. Every writer emits floats in Rust's shortest
//! round-trip form, so parse(write(x)) == x bit for bit.

mod cost;
mod hamiltonian;
mod log;
mod schedule;
mod state;

pub use cost::{parse_cost, write_cost};
pub use hamiltonian::{parse_hamiltonian, write_hamiltonian};
pub use log::{parse_log, write_log};
pub use schedule::{parse_schedule, schedule_json, write_schedule, SCHEDULE_FORMAT};
pub use state::{parse_state, write_state, STATE_FORMAT};

use crate::error::ParseError;

/// A whitespace-separated token and its 1-based column.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Token<'a> {
    pub text: &'a str,
    pub column: usize,
}

/// Non-blank, non-comment lines as `(line number, tokens)`.
pub(crate) fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<Token<'_>>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("");
        let tokens = tokenize(body);
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Token { text: &line[s..i], column: s + 1 });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token { text: &line[s..], column: s + 1 });
    }
    out
}

pub(crate) fn number(line: usize, tok: &Token<'_>) -> Result<f64, ParseError> {
    let v: f64 = tok
        .text
        .parse()
        .map_err(|_| ParseError::new(line, tok.column, format!("expected a number, found `{}`", tok.text)))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(ParseError::new(line, tok.column, "number is not finite"))
    }
}

pub(crate) fn integer(line: usize, tok: &Token<'_>) -> Result<usize, ParseError> {
    tok.text
        .parse()
        .map_err(|_| ParseError::new(line, tok.column, format!("expected an integer, found `{}`", tok.text)))
}

/// `key value` header; returns the value token.
pub(crate) fn header<'a>(entry: Option<(usize, Vec<Token<'a>>)>, key: &str, last_line: usize) -> Result<(usize, Token<'a>), ParseError> {
    match entry {
        Some((line, toks)) if toks.len() == 2 && toks[0].text == key => Ok((line, toks[1])),
        Some((line, toks)) => Err(ParseError::new(line, toks[0].column, format!("expected `{key} <value>`"))),
        None => Err(ParseError::new(last_line + 1, 1, format!("missing `{key}` header"))),
    }
}
