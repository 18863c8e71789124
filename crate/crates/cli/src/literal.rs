//! Eisenstein integer literals.
//!
//! ```text
//! literal := [sign] int [ ("+" | "-") int "*w" ]
//!          | [sign] int "*w"
//! ```
//!
//! Whitespace is ignored anywhere and `−` (U+2212) is accepted as a minus
//! sign, so `"1+3*w"`, `"-2 − 3*w"` and `"4*w"` are all valid.

use eisenstein_cubic::Eisenstein;

use crate::error::{CliError, Result};

pub fn parse_eisenstein(input: &str) -> Result<Eisenstein> {
    let err = |reason: &str| CliError::Literal { input: input.to_string(), reason: reason.to_string() };
    let s: String = input.chars().filter(|c| !c.is_whitespace()).map(|c| if c == '\u{2212}' { '-' } else { c }).collect();
    if s.is_empty() {
        return Err(err("empty input"));
    }
    let bytes = s.as_bytes();
    let mut i = 0;
    let (first, n) = signed_int(&bytes[i..]).ok_or_else(|| err("expected an integer"))?;
    i += n;
    if i == bytes.len() {
        return Ok(Eisenstein::from_int(first));
    }
    if bytes[i..] == *b"*w" {
        return Ok(Eisenstein::new(0, first));
    }
    if bytes[i] != b'+' && bytes[i] != b'-' {
        return Err(err("expected '+' or '-' after the rational part"));
    }
    let negative = bytes[i] == b'-';
    i += 1;
    let (b, n) = unsigned_int(&bytes[i..]).ok_or_else(|| err("expected an integer coefficient of w"))?;
    i += n;
    if bytes[i..] != *b"*w" {
        return Err(err("expected '*w' after the coefficient"));
    }
    Ok(Eisenstein::new(first, if negative { -b } else { b }))
}

fn signed_int(bytes: &[u8]) -> Option<(i128, usize)> {
    let (negative, skip) = match bytes.first() {
        Some(b'-') => (true, 1),
        Some(b'+') => (false, 1),
        _ => (false, 0),
    };
    let (v, n) = unsigned_int(&bytes[skip..])?;
    Some((if negative { -v } else { v }, n + skip))
}

fn unsigned_int(bytes: &[u8]) -> Option<(i128, usize)> {
    let n = bytes.iter().take_while(|b| b.is_ascii_digit()).count();
    if n == 0 {
        return None;
    }
    let text = std::str::from_utf8(&bytes[..n]).ok()?;
    // Coordinates beyond 2^62 would overflow the norm computations.
    let v: i128 = text.parse().ok()?;
    (v < 1 << 62).then_some((v, n))
}
