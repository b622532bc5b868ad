//! Resolving matrix arguments and parsing formula and signature flags.

use std::path::Path;

use pnmatrix::fixtures;
use pnmatrix::io::read_matrix;
use pnmatrix::syntax::parse_formula_list;
use pnmatrix::{Formula, PNMatrix, Signature};

pub type Res<T> = Result<T, Box<dyn std::error::Error>>;

/// An existing file is read; anything else is looked up as a fixture.
pub fn matrix(arg: &str) -> Res<PNMatrix> {
    if Path::new(arg).is_file() {
        Ok(read_matrix(arg)?)
    } else {
        Ok(fixtures::builtin(arg)?)
    }
}

pub fn formulas(text: &str, sig: &Signature) -> Res<Vec<Formula>> {
    Ok(parse_formula_list(text, sig)?)
}

pub fn formula(text: &str, sig: &Signature) -> Res<Formula> {
    let mut fs = formulas(text, sig)?;
    if fs.len() != 1 {
        return Err(format!("expected one formula, found {}", fs.len()).into());
    }
    Ok(fs.remove(0))
}

/// `"neg/1, and/2"`.
pub fn signature(text: &str) -> Res<Signature> {
    let mut sig = Signature::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, arity) = item
            .split_once('/')
            .ok_or_else(|| format!("expected `name/arity`, found `{item}`"))?;
        let arity: usize = arity.trim().parse().map_err(|_| format!("bad arity in `{item}`"))?;
        sig.insert(name.trim(), arity)?;
    }
    Ok(sig)
}

/// Comma-separated connective names of `sig`.
pub fn connectives(text: &str, sig: &Signature) -> Res<Signature> {
    let names: Vec<&str> = text.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    Ok(sig.restrict(&names)?)
}
