//! Conversions between symbol codes and letters.

use crate::cyclic::Symbol;
use crate::error::{Error, Result};

/// Renders codes as letters, 0 ↦ 'a'.
pub fn render(symbols: &[Symbol]) -> String {
    symbols.iter().map(|&c| (b'a' + c) as char).collect()
}

/// Parses lowercase letters, 'a' ↦ 0.
pub fn parse(s: &str) -> Result<Vec<Symbol>> {
    s.chars()
        .map(|ch| match ch {
            'a'..='z' => Ok(ch as u8 - b'a'),
            _ => Err(Error::Parse(format!("unexpected character `{ch}` in `{s}`"))),
        })
        .collect()
}

/// Renders with a terminator alphabet: 0 ↦ '$', 1 ↦ 'a', ...
pub fn render_terminated(symbols: &[Symbol]) -> String {
    symbols
        .iter()
        .map(|&c| if c == 0 { '$' } else { (b'a' + c - 1) as char })
        .collect()
}

/// Parses a word where '$' is the smallest symbol and 'a' ↦ 1.
pub fn parse_terminated(s: &str) -> Result<Vec<Symbol>> {
    s.chars()
        .map(|ch| match ch {
            '$' => Ok(0),
            'a'..='y' => Ok(ch as u8 - b'a' + 1),
            _ => Err(Error::Parse(format!("unexpected character `{ch}` in `{s}`"))),
        })
        .collect()
}

/// Run-length rendering such as `b a^3 b a^7`.
pub fn render_runs(symbols: &[Symbol]) -> String {
    let mut out = Vec::new();
    let mut i = 0;
    while i < symbols.len() {
        let mut j = i;
        while j < symbols.len() && symbols[j] == symbols[i] {
            j += 1;
        }
        let ch = (b'a' + symbols[i]) as char;
        out.push(if j - i == 1 { ch.to_string() } else { format!("{ch}^{}", j - i) });
        i = j;
    }
    out.join(" ")
}
