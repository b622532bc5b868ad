//! Formulas, substitutions and first-order matching.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use super::{Signature, SyntaxError};

/// A propositional formula. Cloning is cheap: names and argument lists are shared.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(Arc<str>),
    App(Arc<str>, Arc<[Formula]>),
}

/// Head symbol of a formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Head {
    Var(Arc<str>),
    Connective(Arc<str>),
}

impl Formula {
    pub fn var(name: &str) -> Self {
        Formula::Var(Arc::from(name))
    }

    pub fn app(conn: &str, args: Vec<Formula>) -> Self {
        Formula::App(Arc::from(conn), Arc::from(args))
    }

    pub fn constant(conn: &str) -> Self {
        Formula::app(conn, Vec::new())
    }

    pub fn unary(conn: &str, a: Formula) -> Self {
        Formula::app(conn, vec![a])
    }

    pub fn binary(conn: &str, a: Formula, b: Formula) -> Self {
        Formula::app(conn, vec![a, b])
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Formula::Var(_))
    }

    pub fn head(&self) -> Head {
        match self {
            Formula::Var(v) => Head::Var(v.clone()),
            Formula::App(c, _) => Head::Connective(c.clone()),
        }
    }

    pub fn args(&self) -> &[Formula] {
        match self {
            Formula::Var(_) => &[],
            Formula::App(_, args) => args,
        }
    }

    /// Number of symbol occurrences.
    pub fn size(&self) -> usize {
        1 + self.args().iter().map(Formula::size).sum::<usize>()
    }

    /// Nesting depth; variables and constants have depth 0.
    pub fn depth(&self) -> usize {
        self.args().iter().map(|a| a.depth() + 1).max().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<Arc<str>> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<Arc<str>>) {
        match self {
            Formula::Var(v) => {
                out.insert(v.clone());
            }
            Formula::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn subformulas(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        self.collect_subformulas(&mut out);
        out
    }

    pub(crate) fn collect_subformulas(&self, out: &mut BTreeSet<Formula>) {
        if out.contains(self) {
            return;
        }
        for a in self.args() {
            a.collect_subformulas(out);
        }
        out.insert(self.clone());
    }

    /// Checks every connective against `sig`.
    pub fn check(&self, sig: &Signature) -> Result<(), SyntaxError> {
        if let Formula::App(c, args) = self {
            match sig.arity(c) {
                None => return Err(SyntaxError::UnknownConnective(c.to_string())),
                Some(a) if a != args.len() => {
                    return Err(SyntaxError::ArityMismatch {
                        name: c.to_string(),
                        expected: a,
                        found: args.len(),
                        offset: None,
                    })
                }
                _ => {}
            }
            for a in args.iter() {
                a.check(sig)?;
            }
        }
        Ok(())
    }

    /// Connectives occurring in the formula, with their arities.
    pub fn connectives(&self, out: &mut BTreeMap<Arc<str>, usize>) {
        if let Formula::App(c, args) = self {
            out.insert(c.clone(), args.len());
            args.iter().for_each(|a| a.connectives(out));
        }
    }

    pub fn apply(&self, s: &Substitution) -> Formula {
        match self {
            Formula::Var(v) => s.get(v).cloned().unwrap_or_else(|| self.clone()),
            Formula::App(c, args) => Formula::App(c.clone(), args.iter().map(|a| a.apply(s)).collect()),
        }
    }
}

/// `(vars, subformulas, head)` in one call.
pub fn analyze(f: &Formula) -> (BTreeSet<Arc<str>>, BTreeSet<Formula>, Head) {
    (f.vars(), f.subformulas(), f.head())
}

/// Order by size, then structurally. Subformulas always precede their superformulas.
pub fn size_lex(a: &Formula, b: &Formula) -> Ordering {
    a.size().cmp(&b.size()).then_with(|| a.cmp(b))
}

/// Subformula closure of a set, sorted by [`size_lex`].
pub fn closure<'a, I: IntoIterator<Item = &'a Formula>>(fs: I) -> Vec<Formula> {
    let mut set = BTreeSet::new();
    for f in fs {
        f.collect_subformulas(&mut set);
    }
    let mut v: Vec<Formula> = set.into_iter().collect();
    v.sort_by(size_lex);
    v
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Var(v) => f.write_str(v),
            Formula::App(c, args) => {
                f.write_str(c)?;
                if !args.is_empty() {
                    f.write_str("(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            f.write_str(", ")?;
                        }
                        write!(f, "{a}")?;
                    }
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Prints a comma-separated list.
pub fn print_list(fs: &[Formula]) -> String {
    fs.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(", ")
}

/// A substitution with finite support; identity elsewhere.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution {
    map: BTreeMap<Arc<str>, Formula>,
}

impl Substitution {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (Arc<str>, Formula)>>(pairs: I) -> Self {
        let mut s = Self::identity();
        for (k, v) in pairs {
            s.insert(k, v);
        }
        s
    }

    /// Binds `var`; identity bindings are dropped from the support.
    pub fn insert(&mut self, var: Arc<str>, f: Formula) {
        if matches!(&f, Formula::Var(v) if *v == var) {
            self.map.remove(&var);
        } else {
            self.map.insert(var, f);
        }
    }

    pub fn get(&self, var: &str) -> Option<&Formula> {
        self.map.get(var)
    }

    /// Image of a variable (itself when outside the support).
    pub fn image(&self, var: &Arc<str>) -> Formula {
        self.map.get(var).cloned().unwrap_or_else(|| Formula::Var(var.clone()))
    }

    pub fn support(&self) -> impl Iterator<Item = (&Arc<str>, &Formula)> {
        self.map.iter()
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_empty()
    }

    /// `self` after `first`: `f.apply(&first).apply(self) == f.apply(&self.after(&first))`.
    pub fn after(&self, first: &Substitution) -> Substitution {
        let mut out = Substitution::identity();
        for (k, v) in &first.map {
            out.insert(k.clone(), v.apply(self));
        }
        for (k, v) in &self.map {
            if !first.map.contains_key(k) {
                out.insert(k.clone(), v.clone());
            }
        }
        out
    }
}

/// Finds `σ` with `schema.apply(σ) == candidate`, binding schema variables only.
pub fn match_instance(candidate: &Formula, schema: &Formula) -> Option<Substitution> {
    let mut binding: BTreeMap<Arc<str>, Formula> = BTreeMap::new();
    if match_into(candidate, schema, &mut binding) {
        Some(Substitution::from_pairs(binding))
    } else {
        None
    }
}

fn match_into(c: &Formula, s: &Formula, b: &mut BTreeMap<Arc<str>, Formula>) -> bool {
    match s {
        Formula::Var(v) => match b.get(v) {
            Some(bound) => bound == c,
            None => {
                b.insert(v.clone(), c.clone());
                true
            }
        },
        Formula::App(sc, sargs) => match c {
            Formula::App(cc, cargs) if cc == sc && cargs.len() == sargs.len() => {
                cargs.iter().zip(sargs.iter()).all(|(ca, sa)| match_into(ca, sa, b))
            }
            _ => false,
        },
    }
}
