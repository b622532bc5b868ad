//! Separator search over one-variable formulas.

use std::collections::HashSet;

use serde::Serialize;

use crate::engine::{Decider, EngineError};
use crate::matrix::{PNMatrix, ValueSet};
use crate::syntax::{size_lex, Formula, Signature};
use crate::util::odometer;

/// Enumeration limits for separator search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SeparatorBounds {
    pub depth: usize,
    pub max_candidates: usize,
}

impl Default for SeparatorBounds {
    fn default() -> Self {
        Self {
            depth: 3,
            max_candidates: 5000,
        }
    }
}

/// `S` separates `x` from `y` when both value sets are non-empty and one lies
/// inside the designated values while the other avoids them.
pub fn separates(m: &PNMatrix, sx: &ValueSet, sy: &ValueSet) -> bool {
    let d = m.designated();
    !sx.is_empty()
        && !sy.is_empty()
        && ((sx.is_subset(d) && !sy.intersects(d)) || (sy.is_subset(d) && !sx.intersects(d)))
}

/// One-variable formulas over `sub_sig` with their value sets at each usable value.
struct Enumeration<'d, 'm> {
    decider: &'d Decider<'m>,
    usable: Vec<usize>,
    /// `(formula, S(u) for u in usable)`, in generation order.
    candidates: Vec<(Formula, Vec<ValueSet>)>,
    truncated: bool,
}

impl<'d, 'm> Enumeration<'d, 'm> {
    fn new(decider: &'d Decider<'m>, sub_sig: &Signature, bounds: SeparatorBounds) -> Result<Self, EngineError> {
        let usable: Vec<usize> = decider.report().usable.iter().collect();
        let mut e = Enumeration {
            decider,
            usable,
            candidates: Vec::new(),
            truncated: false,
        };
        let mut seen: HashSet<Vec<ValueSet>> = HashSet::new();
        // Generators grouped by depth; duplicates by value vector are not reused.
        let mut gens: Vec<Vec<Formula>> = vec![Vec::new()];
        let mut leaves = vec![Formula::var("p")];
        leaves.extend(
            sub_sig
                .iter()
                .filter(|(_, a)| *a == 0)
                .map(|(c, _)| Formula::constant(c)),
        );
        for f in leaves {
            if e.add(f.clone(), &mut seen)? {
                gens[0].push(f);
            }
        }
        let compound: Vec<(&str, usize)> = sub_sig.iter().filter(|(_, a)| *a > 0).collect();
        'depth: for d in 1..=bounds.depth {
            let pool: Vec<(Formula, usize)> = gens
                .iter()
                .enumerate()
                .flat_map(|(gd, fs)| fs.iter().map(move |f| (f.clone(), gd)))
                .collect();
            let mut level = Vec::new();
            for &(c, arity) in &compound {
                let mut pick = vec![0usize; arity];
                loop {
                    if pick.iter().any(|&i| pool[i].1 == d - 1) {
                        if e.candidates.len() >= bounds.max_candidates {
                            e.truncated = true;
                            break 'depth;
                        }
                        let f = Formula::app(c, pick.iter().map(|&i| pool[i].0.clone()).collect());
                        if e.add(f.clone(), &mut seen)? {
                            level.push(f);
                        }
                    }
                    if !odometer(&mut pick, pool.len()) {
                        break;
                    }
                }
            }
            gens.push(level);
        }
        Ok(e)
    }

    /// Records a candidate; returns whether its value vector is new.
    fn add(&mut self, f: Formula, seen: &mut HashSet<Vec<ValueSet>>) -> Result<bool, EngineError> {
        let vector = self
            .usable
            .iter()
            .map(|&u| self.decider.possible_values(&f, u))
            .collect::<Result<Vec<_>, _>>()?;
        let fresh = seen.insert(vector.clone());
        self.candidates.push((f, vector));
        Ok(fresh)
    }

    fn slot(&self, v: usize) -> Option<usize> {
        self.usable.iter().position(|&u| u == v)
    }

    /// Smallest candidate separating `x` and `y`.
    fn separator(&self, m: &PNMatrix, x: usize, y: usize) -> Option<Formula> {
        let (ix, iy) = (self.slot(x)?, self.slot(y)?);
        self.candidates
            .iter()
            .filter(|(_, vec)| separates(m, &vec[ix], &vec[iy]))
            .map(|(f, _)| f)
            .min_by(|a, b| size_lex(a, b))
            .cloned()
    }
}

/// Result of a bounded separator search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatorSearch {
    pub separator: Option<Formula>,
    pub candidates: usize,
    /// Whether the candidate cap cut the enumeration short.
    pub truncated: bool,
    pub bounds: SeparatorBounds,
}

/// Smallest one-variable formula over `sub_sig` separating `x` and `y`, within bounds.
pub fn find_separator(
    m: &PNMatrix,
    x: usize,
    y: usize,
    sub_sig: &Signature,
    bounds: SeparatorBounds,
) -> Result<SeparatorSearch, EngineError> {
    let decider = Decider::new(m)?;
    let e = Enumeration::new(&decider, sub_sig, bounds)?;
    Ok(SeparatorSearch {
        separator: e.separator(m, x, y),
        candidates: e.candidates.len(),
        truncated: e.truncated,
        bounds,
    })
}

/// Separators for every pair of usable values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatorTable {
    /// `(x, y, separator)` for usable `x < y`.
    pub entries: Vec<(usize, usize, Option<Formula>)>,
    pub candidates: usize,
    pub truncated: bool,
    pub bounds: SeparatorBounds,
}

impl SeparatorTable {
    /// All pairs separated within the bounds.
    pub fn monadic(&self) -> bool {
        self.entries.iter().all(|e| e.2.is_some())
    }

    /// Distinct separators used, smallest first.
    pub fn separators(&self) -> Vec<Formula> {
        let mut v: Vec<Formula> = self.entries.iter().filter_map(|e| e.2.clone()).collect();
        v.sort_by(size_lex);
        v.dedup();
        v
    }
}

pub fn monadicity_report(
    m: &PNMatrix,
    sub_sig: &Signature,
    bounds: SeparatorBounds,
) -> Result<SeparatorTable, EngineError> {
    let decider = Decider::new(m)?;
    let e = Enumeration::new(&decider, sub_sig, bounds)?;
    let usable = e.usable.clone();
    let mut entries = Vec::new();
    for (i, &x) in usable.iter().enumerate() {
        for &y in &usable[i + 1..] {
            entries.push((x, y, e.separator(m, x, y)));
        }
    }
    Ok(SeparatorTable {
        entries,
        candidates: e.candidates.len(),
        truncated: e.truncated,
        bounds,
    })
}
