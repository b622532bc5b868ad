//! Line-oriented matrix file format.
//!
//! ```text
//! # comment
//! signature:
//!   and/2
//!   neg/1
//! values: 0 a b 1
//! designated: b 1
//! table and:
//!   0 0 : 0
//!   a b : -        # empty set
//!   ...
//! table neg:
//!   0 : *          # every value
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::IoError;
use crate::matrix::{PNMatrix, RowOutput, Rows};
use crate::syntax::Signature;

enum Section {
    None,
    Signature,
    Table(String),
}

fn line_err(line: usize, msg: impl Into<String>) -> IoError {
    IoError::Line { line, msg: msg.into() }
}

/// Parses and validates a matrix from text.
pub fn parse_matrix(text: &str) -> Result<PNMatrix, IoError> {
    let mut sig = Signature::new();
    let mut values: Option<Vec<String>> = None;
    let mut designated: Option<Vec<String>> = None;
    let mut tables: BTreeMap<String, Rows> = BTreeMap::new();
    let mut section = Section::None;

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("signature:") {
            section = Section::Signature;
            for decl in rest.split_whitespace() {
                add_decl(&mut sig, decl, lineno)?;
            }
        } else if let Some(rest) = line.strip_prefix("values:") {
            if values.is_some() {
                return Err(line_err(lineno, "duplicate `values:` line"));
            }
            values = Some(rest.split_whitespace().map(String::from).collect());
            section = Section::None;
        } else if let Some(rest) = line.strip_prefix("designated:") {
            if designated.is_some() {
                return Err(line_err(lineno, "duplicate `designated:` line"));
            }
            designated = Some(rest.split_whitespace().map(String::from).collect());
            section = Section::None;
        } else if let Some(rest) = line.strip_prefix("table ") {
            let name = rest
                .strip_suffix(':')
                .map(str::trim)
                .ok_or_else(|| line_err(lineno, "expected `table <name>:`"))?;
            if tables.contains_key(name) {
                return Err(line_err(lineno, format!("duplicate table `{name}`")));
            }
            tables.insert(name.to_string(), Vec::new());
            section = Section::Table(name.to_string());
        } else {
            match &section {
                Section::Signature => {
                    for decl in line.split_whitespace() {
                        add_decl(&mut sig, decl, lineno)?;
                    }
                }
                Section::Table(name) => {
                    let (lhs, rhs) = line
                        .split_once(':')
                        .ok_or_else(|| line_err(lineno, "expected `<args> : <outputs>`"))?;
                    let args: Vec<String> = lhs.split_whitespace().map(String::from).collect();
                    let outs: Vec<&str> = rhs.split_whitespace().collect();
                    let out = match outs.as_slice() {
                        ["*"] => RowOutput::All,
                        ["-"] => RowOutput::Values(Vec::new()),
                        [] => return Err(line_err(lineno, "empty output; write `-` for none")),
                        vs => {
                            if vs.iter().any(|v| *v == "*" || *v == "-") {
                                return Err(line_err(lineno, "`*` and `-` must stand alone"));
                            }
                            RowOutput::Values(vs.iter().map(|v| v.to_string()).collect())
                        }
                    };
                    tables.get_mut(name).expect("section exists").push((args, out));
                }
                Section::None => {
                    return Err(line_err(lineno, format!("unexpected line `{line}`")));
                }
            }
        }
    }
    let values = values.ok_or_else(|| line_err(0, "missing `values:` line"))?;
    let designated = designated.unwrap_or_default();
    Ok(PNMatrix::from_rows(sig, values, &designated, &tables)?)
}

fn add_decl(sig: &mut Signature, decl: &str, line: usize) -> Result<(), IoError> {
    let (name, arity) = decl
        .split_once('/')
        .ok_or_else(|| line_err(line, format!("expected `name/arity`, got `{decl}`")))?;
    let arity: usize = arity
        .parse()
        .map_err(|_| line_err(line, format!("bad arity in `{decl}`")))?;
    sig.insert(name, arity).map_err(|e| line_err(line, e.to_string()))
}

/// Canonical text: connectives and rows in order, outputs listed explicitly.
pub fn write_matrix(m: &PNMatrix) -> String {
    let mut out = String::new();
    out.push_str("signature:\n");
    for (c, a) in m.signature().iter() {
        let _ = writeln!(out, "  {c}/{a}");
    }
    let _ = writeln!(out, "{}", joined("values:", m.values().iter().map(String::as_str)));
    let des = m.names(m.designated());
    let _ = writeln!(out, "{}", joined("designated:", des.iter().map(String::as_str)));
    for (c, t) in m.tables() {
        let _ = writeln!(out, "table {c}:");
        if m.is_empty() && t.arity() > 0 {
            continue;
        }
        for (i, e) in t.entries().iter().enumerate() {
            let args: Vec<&str> = t.tuple(i).into_iter().map(|v| m.value_name(v)).collect();
            let outs = if e.is_empty() {
                "-".to_string()
            } else {
                m.names(e).join(" ")
            };
            if args.is_empty() {
                let _ = writeln!(out, "  : {outs}");
            } else {
                let _ = writeln!(out, "  {} : {outs}", args.join(" "));
            }
        }
    }
    out
}

fn joined<'a>(head: &str, items: impl Iterator<Item = &'a str>) -> String {
    let mut s = head.to_string();
    for it in items {
        s.push(' ');
        s.push_str(it);
    }
    s
}
