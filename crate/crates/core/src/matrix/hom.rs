//! Value maps and strict homomorphism checks.

use thiserror::Error;

use super::ops::compatible_pairs;
use super::{PNMatrix, ValueSet};
use crate::util::odometer;

/// Total map from source value indices to target value indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueMap {
    pub map: Vec<usize>,
}

impl ValueMap {
    pub fn new(map: Vec<usize>) -> Self {
        Self { map }
    }

    /// Builds a map from `(source, target)` value names.
    pub fn from_names(src: &PNMatrix, dst: &PNMatrix, pairs: &[(&str, &str)]) -> Option<Self> {
        let mut map = vec![usize::MAX; src.len()];
        for (a, b) in pairs {
            map[src.value_index(a)?] = dst.value_index(b)?;
        }
        Some(Self { map })
    }

    pub fn apply(&self, v: usize) -> usize {
        self.map[v]
    }

    pub fn image(&self, s: &ValueSet) -> ValueSet {
        s.iter().map(|v| self.map[v]).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomViolation {
    #[error("connective `{0}` of the target is missing from the source")]
    Signature(String),
    #[error("map is not total on source values")]
    NotTotal,
    #[error("map leaves the target carrier at source value `{0}`")]
    OutOfRange(String),
    #[error("designation not reflected at `{value}`")]
    Strictness { value: String },
    #[error("{connective}({}) maps {image:?} outside {allowed:?}", .args.join(","))]
    Table {
        connective: String,
        args: Vec<String>,
        image: Vec<String>,
        allowed: Vec<String>,
    },
}

/// Checks that `h` is a strict homomorphism from `m` to `m0`; reports the first violation.
pub fn check_strict_hom(h: &ValueMap, m: &PNMatrix, m0: &PNMatrix) -> Result<(), HomViolation> {
    if let Some((c, _)) = m0.signature().iter().find(|(c, a)| m.signature().arity(c) != Some(*a)) {
        return Err(HomViolation::Signature(c.to_string()));
    }
    if h.map.len() != m.len() {
        return Err(HomViolation::NotTotal);
    }
    for (v, &t) in h.map.iter().enumerate() {
        if t >= m0.len() {
            return Err(HomViolation::OutOfRange(m.value_name(v).to_string()));
        }
        if m.is_designated(v) != m0.is_designated(t) {
            return Err(HomViolation::Strictness {
                value: m.value_name(v).to_string(),
            });
        }
    }
    for (c, t0) in m0.tables() {
        let t = m.table(c).expect("checked above");
        let mut tuple = vec![0usize; t.arity()];
        if m.is_empty() && t.arity() > 0 {
            continue;
        }
        loop {
            let image = h.image(t.get(&tuple));
            let mapped: Vec<usize> = tuple.iter().map(|&v| h.apply(v)).collect();
            let allowed = t0.get(&mapped);
            if !image.is_subset(allowed) {
                return Err(HomViolation::Table {
                    connective: c.to_string(),
                    args: tuple.iter().map(|&v| m.value_name(v).to_string()).collect(),
                    image: m0.names(&image),
                    allowed: m0.names(allowed),
                });
            }
            if !odometer(&mut tuple, m.len()) {
                break;
            }
        }
    }
    Ok(())
}

/// Projections of `strict_product(m1, m2)` onto each factor.
pub fn product_projections(m1: &PNMatrix, m2: &PNMatrix) -> (ValueMap, ValueMap) {
    let pairs = compatible_pairs(m1, m2);
    (
        ValueMap::new(pairs.iter().map(|p| p.0).collect()),
        ValueMap::new(pairs.iter().map(|p| p.1).collect()),
    )
}

/// Inclusion of the `i`-th summand into `sum(ms)`.
pub fn sum_inclusion(ms: &[PNMatrix], i: usize) -> ValueMap {
    let offset: usize = ms[..i].iter().map(PNMatrix::len).sum();
    ValueMap::new((0..ms[i].len()).map(|v| v + offset).collect())
}

/// Diagonal embedding of `m` into `power(m, k)`.
pub fn power_diagonal(m: &PNMatrix, k: usize) -> ValueMap {
    let n = m.len();
    ValueMap::new((0..n).map(|v| (0..k).fold(0, |acc, _| acc * n + v)).collect())
}
