//! Signatures, formulas, parsing, substitution and skeletons.

mod formula;
mod parse;
mod signature;
mod skeleton;

pub use formula::{analyze, closure, match_instance, print_list, size_lex, Formula, Head, Substitution};
pub use parse::{parse_formula, parse_formula_list, print_formula};
pub use signature::{is_ident, Signature};
pub use skeleton::{skeleton, unskeleton, MonolithMap};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("connective `{name}` declared with arity {first} and {second}")]
    ArityClash { name: String, first: usize, second: usize },
    #[error("`{0}` is not a valid connective name")]
    BadConnectiveName(String),
    #[error("unknown connective `{0}`")]
    UnknownConnective(String),
    #[error("{}`{name}` is not a declared connective", at(*offset))]
    UndeclaredConnective { name: String, offset: usize },
    #[error("{}`{name}` expects {expected} argument(s), found {found}", at_opt(*offset))]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
        offset: Option<usize>,
    },
    #[error("{}unbalanced parenthesis", at(*offset))]
    Unbalanced { offset: usize },
    #[error("{}expected {expected}, found {}", at(*offset), found.map_or("end of input".to_string(), |c| format!("`{c}`")))]
    Unexpected {
        offset: usize,
        expected: &'static str,
        found: Option<char>,
    },
    #[error("variable `{0}` is not in the monolith map")]
    UnknownSkeletonVariable(String),
}

fn at(offset: usize) -> String {
    format!("at byte {offset}: ")
}

fn at_opt(offset: Option<usize>) -> String {
    offset.map(at).unwrap_or_default()
}
