//! Plain-text portrait files.
//!
//! ```text
//! # comments and blank lines are ignored
//! degree 5
//! set 0 3/4
//! set 1/8 5/8
//! ```
//!
//! `degree` appears exactly once, before any `set` line. Fractions are
//! `p/q` or an integer and are reduced mod 1 on input. Output always uses
//! reduced `p/q`, sets in canonical order.

use crate::angle::{Angle, Degree};
use crate::error::{Error, Result};
use crate::portrait::Portrait;

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

pub fn parse_portrait(text: &str) -> Result<Portrait> {
    let mut degree: Option<Degree> = None;
    let mut sets: Vec<Vec<Angle>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut words = line.split_whitespace();
        match words.next() {
            Some("degree") => {
                if degree.is_some() {
                    return Err(parse_error(line_no, "degree given twice"));
                }
                let value = words.next().ok_or_else(|| parse_error(line_no, "degree needs a value"))?;
                if words.next().is_some() {
                    return Err(parse_error(line_no, "degree takes a single value"));
                }
                let d: i64 = value
                    .parse()
                    .map_err(|_| parse_error(line_no, format!("`{value}` is not an integer")))?;
                degree = Some(Degree::new(d).map_err(|e| parse_error(line_no, e.to_string()))?);
            }
            Some("set") => {
                if degree.is_none() {
                    return Err(parse_error(line_no, "set before degree line"));
                }
                let mut set = Vec::new();
                for word in words {
                    let a: Angle = word.parse().map_err(|e: Error| parse_error(line_no, e.to_string()))?;
                    if set.contains(&a) {
                        return Err(parse_error(line_no, format!("duplicate angle {a}")));
                    }
                    set.push(a);
                }
                if set.is_empty() {
                    return Err(parse_error(line_no, "empty set"));
                }
                sets.push(set);
            }
            Some(other) => return Err(parse_error(line_no, format!("unknown directive `{other}`"))),
            None => unreachable!("blank lines skipped"),
        }
    }
    let degree = degree.ok_or_else(|| parse_error(text.lines().count().max(1), "missing degree line"))?;
    if sets.is_empty() {
        return Err(parse_error(text.lines().count().max(1), "no set lines"));
    }
    Portrait::new(degree, sets)
}

pub fn print_portrait(p: &Portrait) -> String {
    let mut out = format!("degree {}\n", p.degree());
    for set in p.sets() {
        out.push_str("set");
        for a in set {
            out.push(' ');
            out.push_str(&a.to_string());
        }
        out.push('\n');
    }
    out
}
