//! Plain-text family files.
//!
//! ```text
//! # comment
//! n 3
//! -
//! 1
//! 1 3
//! ```
//!
//! The header `n <N>` comes first; every further non-blank line is `-` for the
//! empty set or strictly increasing elements of `1..=N` separated by single spaces.

use std::collections::HashSet;
use std::fmt::Write;

use crate::error::{Error, ParseErrorKind, Result};
use crate::family::Family;
use crate::mask::{GroundSet, SubsetMask};

fn perr(line: usize, kind: ParseErrorKind) -> Error {
    Error::Parse { line, kind }
}

pub fn parse_family(text: &str) -> Result<Family> {
    let mut ground: Option<GroundSet> = None;
    let mut members = Vec::new();
    let mut seen = HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let Some(g) = ground else {
            ground = Some(parse_header(line, lineno)?);
            continue;
        };
        let set = parse_set(line, g, lineno)?;
        if !seen.insert(set) {
            return Err(perr(lineno, ParseErrorKind::DuplicateSet));
        }
        members.push(set);
    }
    let ground =
        ground.ok_or_else(|| perr(text.lines().count().max(1), ParseErrorKind::MissingHeader))?;
    Family::explicit(ground, members)
}

fn parse_header(line: &str, lineno: usize) -> Result<GroundSet> {
    let Some(rest) = line.strip_prefix("n ") else {
        return Err(perr(lineno, ParseErrorKind::MissingHeader));
    };
    let n = parse_decimal(rest).ok_or_else(|| perr(lineno, ParseErrorKind::MalformedHeader))?;
    if n == 0 {
        return Err(perr(lineno, ParseErrorKind::MalformedHeader));
    }
    GroundSet::new(n as usize)
}

/// Plain decimal digits only: no sign, no surrounding whitespace.
fn parse_decimal(token: &str) -> Option<u64> {
    if token.is_empty() || !token.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    token.parse().ok()
}

fn parse_set(line: &str, ground: GroundSet, lineno: usize) -> Result<SubsetMask> {
    if line == "-" {
        return Ok(SubsetMask::EMPTY);
    }
    let mut set = SubsetMask::EMPTY;
    let mut prev = 0u64;
    for token in line.split(' ') {
        let e = parse_decimal(token).ok_or_else(|| perr(lineno, ParseErrorKind::MalformedLine))?;
        if e == 0 || e > ground.size() as u64 {
            return Err(perr(lineno, ParseErrorKind::ElementOutOfRange));
        }
        if e <= prev {
            return Err(perr(lineno, ParseErrorKind::NonIncreasingLine));
        }
        prev = e;
        set = set.with(e as u32);
    }
    Ok(set)
}

/// One line per member in canonical order, with a trailing newline.
pub fn serialize_family(family: &Family) -> Result<String> {
    let members = family.members()?;
    let mut out = String::with_capacity(8 * members.len() + 8);
    writeln!(out, "n {}", family.ground().size()).unwrap();
    for m in members {
        out.push_str(&format_set_line(m));
        out.push('\n');
    }
    Ok(out)
}

/// `-` for the empty set, otherwise space-separated elements.
pub fn format_set_line(set: SubsetMask) -> String {
    if set.is_empty() {
        return "-".to_string();
    }
    let parts: Vec<String> = set.elements().map(|e| e.to_string()).collect();
    parts.join(" ")
}
