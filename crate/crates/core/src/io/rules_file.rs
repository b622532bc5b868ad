//! Rule files: one `name : A1, A2 |- B1, B2` per line, `-` for an empty side.

use super::IoError;
use crate::calculus::{Calculus, Rule};
use crate::syntax::{parse_formula_list, Signature};

pub fn parse_rules(text: &str, sig: &Signature) -> Result<Calculus, IoError> {
    let mut rules = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| IoError::Line { line: i + 1, msg };
        let (name, body) = line
            .split_once(':')
            .ok_or_else(|| err("expected `name : premises |- conclusions`".into()))?;
        let (lhs, rhs) = body.split_once("|-").ok_or_else(|| err("missing `|-`".into()))?;
        let name = name.trim();
        if name.is_empty() {
            return Err(err("empty rule name".into()));
        }
        let premises = parse_formula_list(lhs, sig).map_err(|e| err(e.to_string()))?;
        let conclusions = parse_formula_list(rhs, sig).map_err(|e| err(e.to_string()))?;
        rules.push(Rule::new(name, premises, conclusions));
    }
    Calculus::new(sig.clone(), rules).map_err(|e| IoError::Line {
        line: 0,
        msg: e.to_string(),
    })
}

pub fn write_rules(c: &Calculus) -> String {
    c.rules.iter().map(|r| format!("{r}\n")).collect()
}
