//! Signatures: connective names with a fixed arity each.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::SyntaxError;

/// A finite signature. Each name has exactly one arity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Signature {
    arities: BTreeMap<String, usize>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a signature from `(name, arity)` pairs, rejecting clashes.
    pub fn from_pairs<'a, I>(pairs: I) -> Result<Self, SyntaxError>
    where
        I: IntoIterator<Item = (&'a str, usize)>,
    {
        let mut sig = Self::new();
        for (name, arity) in pairs {
            sig.insert(name, arity)?;
        }
        Ok(sig)
    }

    /// Adds a connective. Re-adding with the same arity is a no-op.
    pub fn insert(&mut self, name: &str, arity: usize) -> Result<(), SyntaxError> {
        if !is_ident(name) {
            return Err(SyntaxError::BadConnectiveName(name.to_string()));
        }
        match self.arities.get(name) {
            Some(&a) if a != arity => Err(SyntaxError::ArityClash {
                name: name.to_string(),
                first: a,
                second: arity,
            }),
            Some(_) => Ok(()),
            None => {
                self.arities.insert(name.to_string(), arity);
                Ok(())
            }
        }
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.arities.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.arities.contains_key(name)
    }

    pub fn len(&self) -> usize {
        self.arities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arities.is_empty()
    }

    /// Connectives in name order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, usize)> {
        self.arities.iter().map(|(n, &a)| (n.as_str(), a))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.arities.keys().map(String::as_str)
    }

    pub fn max_arity(&self) -> usize {
        self.arities.values().copied().max().unwrap_or(0)
    }

    pub fn union(&self, other: &Signature) -> Result<Signature, SyntaxError> {
        let mut out = self.clone();
        for (n, a) in other.iter() {
            out.insert(n, a)?;
        }
        Ok(out)
    }

    /// Connectives present in both with the same arity.
    pub fn intersection(&self, other: &Signature) -> Signature {
        let arities = self
            .arities
            .iter()
            .filter(|(n, a)| other.arity(n) == Some(**a))
            .map(|(n, a)| (n.clone(), *a))
            .collect();
        Signature { arities }
    }

    pub fn difference(&self, other: &Signature) -> Signature {
        let arities = self
            .arities
            .iter()
            .filter(|(n, a)| other.arity(n) != Some(**a))
            .map(|(n, a)| (n.clone(), *a))
            .collect();
        Signature { arities }
    }

    pub fn is_subsignature_of(&self, other: &Signature) -> bool {
        self.iter().all(|(n, a)| other.arity(n) == Some(a))
    }

    /// Keeps only the named connectives; unknown names are an error.
    pub fn restrict(&self, names: &[&str]) -> Result<Signature, SyntaxError> {
        let mut out = Signature::new();
        for n in names {
            let a = self
                .arity(n)
                .ok_or_else(|| SyntaxError::UnknownConnective(n.to_string()))?;
            out.insert(n, a)?;
        }
        Ok(out)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (n, a)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{n}/{a}")?;
        }
        write!(f, "}}")
    }
}

/// `[A-Za-z_][A-Za-z0-9_']*`
pub fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}
