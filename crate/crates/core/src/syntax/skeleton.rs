//! Skeleton translation into a subsignature and its inverse.
//!
//! Monoliths (subformulas whose head lies outside the subsignature) become
//! fresh variables `m1`, `m2`, ... in left-to-right first-encounter order;
//! ordinary variables are renamed `v_<name>`. The two name spaces never meet,
//! so the translation is injective. One [`MonolithMap`] is meant to be shared
//! by every formula of a translation session.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use super::{Formula, Signature, SyntaxError};

const VAR_PREFIX: &str = "v_";

#[derive(Clone, Debug, Default)]
pub struct MonolithMap {
    by_name: BTreeMap<Arc<str>, Formula>,
    by_formula: HashMap<Formula, Arc<str>>,
    renamed: BTreeSet<Arc<str>>,
}

impl MonolithMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of monoliths allocated so far.
    pub fn len(&self) -> usize {
        self.by_name.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_name.is_empty()
    }

    pub fn monolith(&self, name: &str) -> Option<&Formula> {
        self.by_name.get(name)
    }

    pub fn monoliths(&self) -> impl Iterator<Item = (&Arc<str>, &Formula)> {
        self.by_name.iter()
    }

    fn fresh(&mut self, f: &Formula) -> Arc<str> {
        if let Some(n) = self.by_formula.get(f) {
            return n.clone();
        }
        let name: Arc<str> = Arc::from(format!("m{}", self.by_name.len() + 1));
        self.by_name.insert(name.clone(), f.clone());
        self.by_formula.insert(f.clone(), name.clone());
        name
    }

    fn rename(&mut self, v: &str) -> Arc<str> {
        let name: Arc<str> = Arc::from(format!("{VAR_PREFIX}{v}"));
        self.renamed.insert(name.clone());
        name
    }
}

/// Translates `f` into `sub_sig`, allocating monolith names in `mm`.
pub fn skeleton(f: &Formula, sub_sig: &Signature, mm: &mut MonolithMap) -> Formula {
    match f {
        Formula::Var(v) => Formula::Var(mm.rename(v)),
        Formula::App(c, args) => {
            if sub_sig.arity(c) == Some(args.len()) {
                Formula::App(c.clone(), args.iter().map(|a| skeleton(a, sub_sig, mm)).collect())
            } else {
                Formula::Var(mm.fresh(f))
            }
        }
    }
}

/// Inverse of [`skeleton`] for the same session map.
pub fn unskeleton(f: &Formula, mm: &MonolithMap) -> Result<Formula, SyntaxError> {
    match f {
        Formula::Var(v) => {
            if let Some(m) = mm.by_name.get(v) {
                Ok(m.clone())
            } else if mm.renamed.contains(v) {
                Ok(Formula::var(&v[VAR_PREFIX.len()..]))
            } else {
                Err(SyntaxError::UnknownSkeletonVariable(v.to_string()))
            }
        }
        Formula::App(c, args) => Ok(Formula::App(
            c.clone(),
            args.iter()
                .map(|a| unskeleton(a, mm))
                .collect::<Result<Vec<_>, _>>()?
                .into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn cls() -> Signature {
        Signature::from_pairs([("neg", 1), ("and", 2), ("or", 2), ("imp", 2), ("top", 0)]).unwrap()
    }

    #[test]
    fn classical_example() {
        let f = parse_formula("neg(imp(neg(p), and(p, imp(q, q))))", &cls()).unwrap();
        let sub = Signature::from_pairs([("neg", 1), ("imp", 2)]).unwrap();
        let mut mm = MonolithMap::new();
        let s = skeleton(&f, &sub, &mut mm);
        assert_eq!(s.to_string(), "neg(imp(neg(v_p), m1))");
        assert_eq!(mm.monolith("m1").unwrap().to_string(), "and(p, imp(q, q))");
        assert_eq!(unskeleton(&s, &mm).unwrap(), f);
    }

    #[test]
    fn monolith_head_and_inside_formulas() {
        let sub = Signature::from_pairs([("neg", 1)]).unwrap();
        let mut mm = MonolithMap::new();
        let a = parse_formula("and(p, q)", &cls()).unwrap();
        assert_eq!(skeleton(&a, &sub, &mut mm), Formula::var("m1"));
        let b = parse_formula("neg(q)", &cls()).unwrap();
        assert_eq!(skeleton(&b, &sub, &mut mm).to_string(), "neg(v_q)");
        // Same monolith, same name within a session.
        let c = parse_formula("neg(and(p, q))", &cls()).unwrap();
        assert_eq!(skeleton(&c, &sub, &mut mm).to_string(), "neg(m1)");
    }

    #[test]
    fn stale_map_is_rejected() {
        let mm = MonolithMap::new();
        assert!(unskeleton(&Formula::var("m3"), &mm).is_err());
        assert!(unskeleton(&Formula::var("v_p"), &mm).is_err());
    }
}
