//! Partial non-deterministic matrices and their algebra.

mod hom;
mod ops;
mod valueset;
mod viability;

pub use hom::{check_strict_hom, power_diagonal, product_projections, sum_inclusion, HomViolation, ValueMap};
pub use ops::{extend, power, prune, reduct, strict_product, sum};
pub use valueset::ValueSet;
pub use viability::{is_viable, viable_components, viable_components_with_cap, ViabilityReport, VIABILITY_CAP};

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::syntax::{Signature, SyntaxError};

/// Largest carrier any construction may produce.
pub const MAX_VALUES: usize = 4096;
/// Largest number of rows a single table may have.
pub const MAX_TABLE_CELLS: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("invalid matrix:\n  {}", .0.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("\n  "))]
    Invalid(Vec<ValidationIssue>),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("{sub} is not a subsignature of {sig}")]
    NotSubsignature { sub: String, sig: String },
    #[error("signatures differ: {0} vs {1}")]
    SignatureMismatch(String, String),
    #[error("{count} values exceed the cap of {cap}")]
    TooManyValues { count: usize, cap: usize },
    #[error("table `{connective}` would need {cells} rows (cap {MAX_TABLE_CELLS})")]
    TableTooLarge { connective: String, cells: usize },
    #[error("viability analysis limited to {cap} values, matrix has {count}")]
    ViabilityCap { count: usize, cap: usize },
    #[error("{0}")]
    Argument(String),
}

/// One validation failure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationIssue {
    #[error("duplicate value `{0}`")]
    DuplicateValue(String),
    #[error("`{0}` is not a valid value name")]
    BadValueName(String),
    #[error("unknown value `{value}` in {context}")]
    UnknownValue { value: String, context: String },
    #[error("missing table for `{0}`")]
    MissingTable(String),
    #[error("table for undeclared connective `{0}`")]
    UndeclaredTable(String),
    #[error("row of table `{connective}` has {found} argument(s), expected {expected}")]
    RowArity {
        connective: String,
        expected: usize,
        found: usize,
    },
    #[error("missing entry {connective}({})", .tuple.join(","))]
    MissingEntry { connective: String, tuple: Vec<String> },
    #[error("duplicate entry {connective}({})", .tuple.join(","))]
    DuplicateEntry { connective: String, tuple: Vec<String> },
    #[error("table `{connective}` is malformed: {detail}")]
    MalformedTable { connective: String, detail: String },
}

/// Matrix kind by totality and determinism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Kind {
    Matrix,
    NMatrix,
    PMatrix,
    PNMatrix,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Matrix => "matrix",
            Kind::NMatrix => "Nmatrix",
            Kind::PMatrix => "Pmatrix",
            Kind::PNMatrix => "PNmatrix",
        })
    }
}

/// Interpretation of one connective: a value set for every argument tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    arity: usize,
    radix: usize,
    entries: Vec<ValueSet>,
}

impl Table {
    fn cells(radix: usize, arity: usize) -> Option<usize> {
        radix.checked_pow(arity as u32)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn entries(&self) -> &[ValueSet] {
        &self.entries
    }

    /// Row index of an argument tuple (first argument most significant).
    pub fn index(&self, args: &[usize]) -> usize {
        args.iter().fold(0, |acc, &a| acc * self.radix + a)
    }

    pub fn get(&self, args: &[usize]) -> &ValueSet {
        &self.entries[self.index(args)]
    }

    /// Inverse of [`Table::index`].
    pub fn tuple(&self, mut idx: usize) -> Vec<usize> {
        let mut t = vec![0; self.arity];
        for slot in t.iter_mut().rev() {
            *slot = idx % self.radix;
            idx /= self.radix;
        }
        t
    }
}

/// A PNmatrix: values, designated values and a table per connective.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PNMatrix {
    sig: Signature,
    values: Vec<String>,
    index: HashMap<String, usize>,
    designated: ValueSet,
    tables: BTreeMap<String, Table>,
}

/// Output of a table row as written in files and fixtures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowOutput {
    Values(Vec<String>),
    All,
}

/// Named rows for one table.
pub type Rows = Vec<(Vec<String>, RowOutput)>;

/// `true` for names usable as values in files.
pub fn is_value_name(s: &str) -> bool {
    !s.is_empty() && s != "-" && s != "*" && !s.chars().any(|c| c.is_whitespace() || c == ':' || c == '#')
}

impl PNMatrix {
    /// Builds a matrix by evaluating `entry(connective, tuple)` on every row.
    pub fn from_fn<F>(
        sig: Signature,
        values: Vec<String>,
        designated: ValueSet,
        mut entry: F,
    ) -> Result<Self, MatrixError>
    where
        F: FnMut(&str, &[usize]) -> ValueSet,
    {
        let n = values.len();
        if n > MAX_VALUES {
            return Err(MatrixError::TooManyValues {
                count: n,
                cap: MAX_VALUES,
            });
        }
        let mut tables = BTreeMap::new();
        for (c, arity) in sig.iter() {
            let cells = Table::cells(n, arity)
                .filter(|&c| c <= MAX_TABLE_CELLS)
                .ok_or_else(|| MatrixError::TableTooLarge {
                    connective: c.to_string(),
                    cells: n.saturating_pow(arity as u32),
                })?;
            let mut t = Table {
                arity,
                radix: n,
                entries: Vec::with_capacity(cells),
            };
            for i in 0..cells {
                let tuple = t.tuple(i);
                t.entries.push(entry(c, &tuple));
            }
            tables.insert(c.to_string(), t);
        }
        let m = PNMatrix {
            sig,
            index: values.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect(),
            values,
            designated,
            tables,
        };
        m.validate().map_err(MatrixError::Invalid)?;
        Ok(m)
    }

    /// Builds a matrix from named rows, reporting every missing, duplicate or unknown entry.
    pub fn from_rows(
        sig: Signature,
        values: Vec<String>,
        designated: &[String],
        rows: &BTreeMap<String, Rows>,
    ) -> Result<Self, MatrixError> {
        let mut issues = Vec::new();
        let mut index = HashMap::new();
        for (i, v) in values.iter().enumerate() {
            if !is_value_name(v) {
                issues.push(ValidationIssue::BadValueName(v.clone()));
            }
            if index.insert(v.clone(), i).is_some() {
                issues.push(ValidationIssue::DuplicateValue(v.clone()));
            }
        }
        let lookup = |v: &str, context: &str, issues: &mut Vec<ValidationIssue>| {
            let r = index.get(v).copied();
            if r.is_none() {
                issues.push(ValidationIssue::UnknownValue {
                    value: v.to_string(),
                    context: context.to_string(),
                });
            }
            r
        };
        let mut des = ValueSet::new();
        for d in designated {
            if let Some(i) = lookup(d, "designated", &mut issues) {
                des.insert(i);
            }
        }
        for name in rows.keys() {
            if !sig.contains(name) {
                issues.push(ValidationIssue::UndeclaredTable(name.clone()));
            }
        }
        let n = values.len();
        let mut filled: BTreeMap<String, Vec<Option<ValueSet>>> = BTreeMap::new();
        for (c, arity) in sig.iter() {
            let Some(table_rows) = rows.get(c) else {
                issues.push(ValidationIssue::MissingTable(c.to_string()));
                continue;
            };
            let cells = match Table::cells(n, arity).filter(|&x| x <= MAX_TABLE_CELLS) {
                Some(x) => x,
                None => {
                    return Err(MatrixError::TableTooLarge {
                        connective: c.to_string(),
                        cells: n.saturating_pow(arity as u32),
                    })
                }
            };
            let mut slots: Vec<Option<ValueSet>> = vec![None; cells];
            let context = format!("table `{c}`");
            for (args, out) in table_rows {
                if args.len() != arity {
                    issues.push(ValidationIssue::RowArity {
                        connective: c.to_string(),
                        expected: arity,
                        found: args.len(),
                    });
                    continue;
                }
                let idx: Option<Vec<usize>> = args
                    .iter()
                    .map(|a| lookup(a, &context, &mut issues))
                    .collect::<Vec<_>>()
                    .into_iter()
                    .collect();
                let set = match out {
                    RowOutput::All => ValueSet::full(n),
                    RowOutput::Values(vs) => vs.iter().filter_map(|v| lookup(v, &context, &mut issues)).collect(),
                };
                let Some(idx) = idx else { continue };
                let pos = idx.iter().fold(0, |acc, &a| acc * n + a);
                if slots[pos].is_some() {
                    issues.push(ValidationIssue::DuplicateEntry {
                        connective: c.to_string(),
                        tuple: args.clone(),
                    });
                } else {
                    slots[pos] = Some(set);
                }
            }
            for (pos, slot) in slots.iter().enumerate() {
                if slot.is_none() {
                    let probe = Table {
                        arity,
                        radix: n,
                        entries: Vec::new(),
                    };
                    issues.push(ValidationIssue::MissingEntry {
                        connective: c.to_string(),
                        tuple: probe.tuple(pos).into_iter().map(|i| values[i].clone()).collect(),
                    });
                }
            }
            filled.insert(c.to_string(), slots);
        }
        if !issues.is_empty() {
            return Err(MatrixError::Invalid(issues));
        }
        let tables = filled
            .into_iter()
            .map(|(c, slots)| {
                let arity = sig.arity(&c).unwrap_or(0);
                let entries = slots.into_iter().map(|s| s.unwrap_or_default()).collect();
                (
                    c,
                    Table {
                        arity,
                        radix: n,
                        entries,
                    },
                )
            })
            .collect();
        let m = PNMatrix {
            sig,
            values,
            index,
            designated: des,
            tables,
        };
        m.validate().map_err(MatrixError::Invalid)?;
        Ok(m)
    }

    /// Checks every structural invariant, itemizing failures.
    pub fn validate(&self) -> Result<(), Vec<ValidationIssue>> {
        let mut issues = Vec::new();
        let n = self.values.len();
        let mut seen = HashMap::new();
        for v in &self.values {
            if !is_value_name(v) {
                issues.push(ValidationIssue::BadValueName(v.clone()));
            }
            if seen.insert(v, ()).is_some() {
                issues.push(ValidationIssue::DuplicateValue(v.clone()));
            }
        }
        let full = ValueSet::full(n);
        if !self.designated.is_subset(&full) {
            issues.push(ValidationIssue::UnknownValue {
                value: format!("#{}", self.designated.iter().last().unwrap_or(0)),
                context: "designated".into(),
            });
        }
        for (c, arity) in self.sig.iter() {
            match self.tables.get(c) {
                None => issues.push(ValidationIssue::MissingTable(c.to_string())),
                Some(t) => {
                    let expected = Table::cells(n, arity);
                    if t.arity != arity || t.radix != n || Some(t.entries.len()) != expected {
                        issues.push(ValidationIssue::MalformedTable {
                            connective: c.to_string(),
                            detail: format!("{} rows for arity {arity}", t.entries.len()),
                        });
                    } else if let Some(bad) = t.entries.iter().position(|e| !e.is_subset(&full)) {
                        issues.push(ValidationIssue::MalformedTable {
                            connective: c.to_string(),
                            detail: format!("row {bad} names an unknown value"),
                        });
                    }
                }
            }
        }
        for c in self.tables.keys() {
            if !self.sig.contains(c) {
                issues.push(ValidationIssue::UndeclaredTable(c.clone()));
            }
        }
        if issues.is_empty() {
            Ok(())
        } else {
            Err(issues)
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn values(&self) -> &[String] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn value_name(&self, i: usize) -> &str {
        &self.values[i]
    }

    pub fn designated(&self) -> &ValueSet {
        &self.designated
    }

    pub fn is_designated(&self, v: usize) -> bool {
        self.designated.contains(v)
    }

    pub fn table(&self, c: &str) -> Option<&Table> {
        self.tables.get(c)
    }

    pub fn tables(&self) -> impl Iterator<Item = (&str, &Table)> {
        self.tables.iter().map(|(c, t)| (c.as_str(), t))
    }

    /// Names of a value set, in value order.
    pub fn names(&self, set: &ValueSet) -> Vec<String> {
        set.iter().map(|i| self.values[i].clone()).collect()
    }

    /// Value set from names; `None` if a name is unknown.
    pub fn set_of(&self, names: &[&str]) -> Option<ValueSet> {
        names.iter().map(|n| self.value_index(n)).collect()
    }

    /// Entry lookup by value names, mainly for tests and reports.
    pub fn entry(&self, c: &str, args: &[&str]) -> Option<Vec<String>> {
        let t = self.table(c)?;
        let idx: Vec<usize> = args.iter().map(|a| self.value_index(a)).collect::<Option<_>>()?;
        if idx.len() != t.arity {
            return None;
        }
        Some(self.names(t.get(&idx)))
    }

    pub fn is_total(&self) -> bool {
        self.tables.values().all(|t| t.entries.iter().all(|e| !e.is_empty()))
    }

    pub fn is_deterministic(&self) -> bool {
        self.tables.values().all(|t| t.entries.iter().all(|e| e.len() <= 1))
    }

    pub fn classify(&self) -> Kind {
        match (self.is_total(), self.is_deterministic()) {
            (true, true) => Kind::Matrix,
            (true, false) => Kind::NMatrix,
            (false, true) => Kind::PMatrix,
            (false, false) => Kind::PNMatrix,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strs(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn neg_rows(skip_last: bool) -> BTreeMap<String, Rows> {
        let mut rows = vec![
            (strs(&["0"]), RowOutput::Values(strs(&["1"]))),
            (strs(&["1"]), RowOutput::Values(strs(&["0"]))),
        ];
        if skip_last {
            rows.pop();
        }
        BTreeMap::from([("neg".to_string(), rows)])
    }

    #[test]
    fn rows_build_and_classify() {
        let sig = Signature::from_pairs([("neg", 1)]).unwrap();
        let m = PNMatrix::from_rows(sig, strs(&["0", "1"]), &strs(&["1"]), &neg_rows(false)).unwrap();
        assert_eq!(m.classify(), Kind::Matrix);
        assert_eq!(m.entry("neg", &["0"]).unwrap(), strs(&["1"]));
    }

    #[test]
    fn missing_row_is_reported() {
        let sig = Signature::from_pairs([("neg", 1)]).unwrap();
        let err = PNMatrix::from_rows(sig, strs(&["0", "1"]), &strs(&["1"]), &neg_rows(true)).unwrap_err();
        assert_eq!(err.to_string(), "invalid matrix:\n  missing entry neg(1)");
    }

    #[test]
    fn duplicates_and_unknowns_are_reported() {
        let sig = Signature::from_pairs([("neg", 1)]).unwrap();
        let mut rows = neg_rows(false);
        rows.get_mut("neg")
            .unwrap()
            .push((strs(&["1"]), RowOutput::Values(strs(&["z"]))));
        let MatrixError::Invalid(issues) =
            PNMatrix::from_rows(sig, strs(&["0", "1"]), &strs(&["2"]), &rows).unwrap_err()
        else {
            panic!()
        };
        assert!(issues
            .iter()
            .any(|i| matches!(i, ValidationIssue::DuplicateEntry { .. })));
        assert_eq!(
            issues
                .iter()
                .filter(|i| matches!(i, ValidationIssue::UnknownValue { .. }))
                .count(),
            2
        );
    }

    #[test]
    fn star_means_all_values() {
        let sig = Signature::from_pairs([("c", 0)]).unwrap();
        let rows = BTreeMap::from([("c".to_string(), vec![(vec![], RowOutput::All)])]);
        let m = PNMatrix::from_rows(sig, strs(&["0", "1", "2"]), &[], &rows).unwrap();
        assert_eq!(m.entry("c", &[]).unwrap().len(), 3);
        assert_eq!(m.classify(), Kind::NMatrix);
    }
}
