//! Maximal viable value sets.
//!
//! `W` is viable when it is non-empty and every table entry over `W` meets
//! `W`. Any valuation's image is viable, and any prevaluation whose image lies
//! in a viable set extends to a full valuation, so the maximal viable sets
//! determine which value combinations can co-occur.

use std::collections::HashSet;

use super::{MatrixError, PNMatrix, ValueSet};
use crate::util::odometer;

/// Default limit on values for the enumeration.
pub const VIABILITY_CAP: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ViabilityReport {
    /// Maximal viable sets, by descending size then lexicographically.
    pub components: Vec<ValueSet>,
    pub usable: ValueSet,
    pub spurious: ValueSet,
}

impl ViabilityReport {
    pub fn component_names(&self, m: &PNMatrix) -> Vec<Vec<String>> {
        self.components.iter().map(|c| m.names(c)).collect()
    }
}

/// Direct check of the definition.
pub fn is_viable(m: &PNMatrix, w: &ValueSet) -> bool {
    if w.is_empty() {
        return false;
    }
    let members: Vec<usize> = w.iter().collect();
    m.tables().all(|(_, t)| {
        let mut tuple = vec![0usize; t.arity()];
        loop {
            let args: Vec<usize> = tuple.iter().map(|&i| members[i]).collect();
            if !t.get(&args).intersects(w) {
                return false;
            }
            if !odometer(&mut tuple, members.len()) {
                return true;
            }
        }
    })
}

pub fn viable_components(m: &PNMatrix) -> Result<ViabilityReport, MatrixError> {
    viable_components_with_cap(m, VIABILITY_CAP)
}

/// Maximal viable sets of `m`, refusing carriers larger than `cap` (at most 64)
/// unless the whole carrier is viable.
pub fn viable_components_with_cap(m: &PNMatrix, cap: usize) -> Result<ViabilityReport, MatrixError> {
    let n = m.len();
    let all = ValueSet::full(n);
    if n > 0 && (m.is_total() || is_viable(m, &all)) {
        return Ok(ViabilityReport {
            components: vec![all.clone()],
            usable: all,
            spurious: ValueSet::new(),
        });
    }
    if n > cap.min(64) {
        return Err(MatrixError::ViabilityCap { count: n, cap });
    }
    let tables = mask_tables(m);
    let mut found: Vec<u64> = Vec::new();
    let mut visited: HashSet<u64> = HashSet::new();
    let start = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut stack = vec![start];
    while let Some(w) = stack.pop() {
        if w == 0 || !visited.insert(w) {
            continue;
        }
        match violation(&tables, w) {
            None => found.push(w),
            // Every viable subset of `w` must drop some argument of the violating row.
            Some(args) => {
                let mut bits = args;
                while bits != 0 {
                    let b = bits & bits.wrapping_neg();
                    stack.push(w & !b);
                    bits &= bits - 1;
                }
            }
        }
    }
    found.sort_by(|a, b| {
        b.count_ones()
            .cmp(&a.count_ones())
            .then_with(|| to_set(*a).cmp_lex(&to_set(*b)))
    });
    let mut maximal: Vec<u64> = Vec::new();
    for w in found {
        if !maximal.iter().any(|&big| w & !big == 0) {
            maximal.push(w);
        }
    }
    let usable = maximal.iter().fold(0u64, |acc, w| acc | w);
    Ok(ViabilityReport {
        components: maximal.into_iter().map(to_set).collect(),
        usable: to_set(usable),
        spurious: all.difference(&to_set(usable)),
    })
}

fn to_set(w: u64) -> ValueSet {
    ValueSet::from_words(vec![w])
}

struct MaskTable {
    arity: usize,
    radix: usize,
    entries: Vec<u64>,
}

fn mask_tables(m: &PNMatrix) -> Vec<MaskTable> {
    m.tables()
        .map(|(_, t)| MaskTable {
            arity: t.arity(),
            radix: m.len(),
            entries: t
                .entries()
                .iter()
                .map(|e| e.words().first().copied().unwrap_or(0))
                .collect(),
        })
        .collect()
}

/// Argument set of some row over `w` whose entry misses `w`.
fn violation(tables: &[MaskTable], w: u64) -> Option<u64> {
    let members: Vec<usize> = (0..64).filter(|i| w & (1u64 << i) != 0).collect();
    for t in tables {
        let mut tuple = vec![0usize; t.arity];
        loop {
            let idx = tuple.iter().fold(0, |acc, &i| acc * t.radix + members[i]);
            if t.entries[idx] & w == 0 {
                return Some(tuple.iter().fold(0u64, |acc, &i| acc | (1u64 << members[i])));
            }
            if !odometer(&mut tuple, members.len()) {
                break;
            }
        }
    }
    None
}
