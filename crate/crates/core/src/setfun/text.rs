//! Plain-text table format.
//!
//! ```text
//! # comment
//! ground 2
//! set 0 0/1 0/1
//! set 1 1/2 1/2
//! set 2 1/2 1/2
//! set 3 1/1 1/1
//! ```
//!
//! Each `set` line gives a field member as a decimal bitmask followed by
//! `μ⁺` and optionally `μ⁻`; either all lines carry `μ⁻` or none do.

use std::fmt::Write as _;

use super::{Mask, SetFunError, SetFunctionTable};
use crate::rational::{format_rational, parse_rational, Rational};

fn parse_err(line: usize, message: impl Into<String>) -> SetFunError {
    SetFunError::Parse {
        line,
        message: message.into(),
    }
}

pub fn read_table(text: &str) -> Result<SetFunctionTable, SetFunError> {
    let mut ground = None;
    let mut field: Vec<Mask> = Vec::new();
    let mut plus: Vec<Rational> = Vec::new();
    let mut minus: Vec<Option<Rational>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        match words[0] {
            "ground" => {
                if words.len() != 2 || ground.is_some() {
                    return Err(parse_err(line_no, "expected a single `ground N` line"));
                }
                let n: u32 = words[1]
                    .parse()
                    .map_err(|_| parse_err(line_no, format!("bad ground size `{}`", words[1])))?;
                ground = Some(n);
            }
            "set" => {
                if !(3..=4).contains(&words.len()) {
                    return Err(parse_err(line_no, "expected `set MASK PLUS [MINUS]`"));
                }
                let mask: Mask = words[1]
                    .parse()
                    .map_err(|_| parse_err(line_no, format!("bad mask `{}`", words[1])))?;
                let value = |w: &str| parse_rational(w).map_err(|e| parse_err(line_no, e.to_string()));
                field.push(mask);
                plus.push(value(words[2])?);
                minus.push(words.get(3).map(|w| value(w)).transpose()?);
            }
            other => return Err(parse_err(line_no, format!("unknown directive `{other}`"))),
        }
    }
    let ground = ground.ok_or_else(|| parse_err(0, "missing `ground` line"))?;
    let lower = if minus.iter().all(Option::is_some) && !minus.is_empty() {
        Some(minus.into_iter().map(|m| m.expect("checked")).collect())
    } else if minus.iter().all(Option::is_none) {
        None
    } else {
        return Err(parse_err(0, "μ⁻ must be given on every line or on none"));
    };
    SetFunctionTable::new(ground, field, plus, lower)
}

/// Canonical text: members in increasing mask order, values as `p/q`.
pub fn write_table(table: &SetFunctionTable) -> String {
    let mut out = format!("ground {}\n", table.ground_size());
    for &m in table.field() {
        let _ = write!(out, "set {m} {}", format_rational(&table.plus(m).expect("member")));
        if let Ok(v) = table.minus(m) {
            let _ = write!(out, " {}", format_rational(&v));
        }
        out.push('\n');
    }
    out
}
