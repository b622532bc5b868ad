//! Independent re-verification of countermodels.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use super::Countermodel;
use crate::matrix::{is_viable, PNMatrix};
use crate::syntax::Formula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountermodelViolation {
    #[error("`{0}` is assigned twice")]
    Duplicate(String),
    #[error("`{0}` has no value")]
    Unassigned(String),
    #[error("`{formula}` has out-of-range value {value}")]
    OutOfRange { formula: String, value: usize },
    #[error("`{0}` takes a value outside the component")]
    OutsideComponent(String),
    #[error("the component is not viable")]
    NotViable,
    #[error("`{0}` violates its table entry")]
    Table(String),
    #[error("premise `{0}` is not designated")]
    PremiseUndesignated(String),
    #[error("conclusion `{0}` is designated")]
    ConclusionDesignated(String),
}

/// Re-checks a countermodel for `Γ ⊳ Δ` against the definitions.
pub fn check_countermodel(
    m: &PNMatrix,
    gamma: &[Formula],
    delta: &[Formula],
    cm: &Countermodel,
) -> Result<(), Vec<CountermodelViolation>> {
    let mut issues = Vec::new();
    let mut val: HashMap<&Formula, usize> = HashMap::new();
    for (f, v) in &cm.assignment {
        if val.insert(f, *v).is_some() {
            issues.push(CountermodelViolation::Duplicate(f.to_string()));
        }
        if *v >= m.len() {
            issues.push(CountermodelViolation::OutOfRange {
                formula: f.to_string(),
                value: *v,
            });
        } else if !cm.component.contains(*v) {
            issues.push(CountermodelViolation::OutsideComponent(f.to_string()));
        }
    }
    if !is_viable(m, &cm.component) {
        issues.push(CountermodelViolation::NotViable);
    }
    let mut needed = BTreeSet::new();
    for f in gamma.iter().chain(delta) {
        needed.extend(f.subformulas());
    }
    for f in &needed {
        if !val.contains_key(f) {
            issues.push(CountermodelViolation::Unassigned(f.to_string()));
        }
    }
    for (f, &v) in &val {
        if let Formula::App(c, args) = f {
            let children: Option<Vec<usize>> = args.iter().map(|a| val.get(a).copied()).collect();
            let (Some(children), Some(t)) = (children, m.table(c)) else {
                continue;
            };
            if children.iter().any(|&x| x >= m.len()) || children.len() != t.arity() {
                continue;
            }
            if !t.get(&children).contains(v) {
                issues.push(CountermodelViolation::Table(f.to_string()));
            }
        }
    }
    for f in gamma {
        if val.get(f).is_some_and(|&v| !m.is_designated(v)) {
            issues.push(CountermodelViolation::PremiseUndesignated(f.to_string()));
        }
    }
    for f in delta {
        if val.get(f).is_some_and(|&v| m.is_designated(v)) {
            issues.push(CountermodelViolation::ConclusionDesignated(f.to_string()));
        }
    }
    if issues.is_empty() {
        Ok(())
    } else {
        issues.sort_by_key(|i| i.to_string());
        Err(issues)
    }
}
