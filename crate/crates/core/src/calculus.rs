//! Schematic rules and soundness checks against a PNmatrix.
//!
//! Only soundness is checked: a rule is sound when its premises entail the
//! set of its conclusions. Completeness of a calculus is not decided.

use std::fmt;

use crate::engine::{Decider, EngineError, Verdict};
use crate::matrix::PNMatrix;
use crate::syntax::{print_list, Formula, Signature, SyntaxError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub name: String,
    pub premises: Vec<Formula>,
    pub conclusions: Vec<Formula>,
}

impl Rule {
    pub fn new(name: &str, premises: Vec<Formula>, conclusions: Vec<Formula>) -> Self {
        Self {
            name: name.to_string(),
            premises,
            conclusions,
        }
    }

    pub fn is_single_conclusion(&self) -> bool {
        self.conclusions.len() == 1
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |fs: &[Formula]| {
            if fs.is_empty() {
                "-".to_string()
            } else {
                print_list(fs)
            }
        };
        write!(
            f,
            "{} : {} |- {}",
            self.name,
            side(&self.premises),
            side(&self.conclusions)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Calculus {
    pub sig: Signature,
    pub rules: Vec<Rule>,
}

impl Calculus {
    /// Checks every rule formula against `sig`.
    pub fn new(sig: Signature, rules: Vec<Rule>) -> Result<Self, SyntaxError> {
        for r in &rules {
            for f in r.premises.iter().chain(&r.conclusions) {
                f.check(&sig)?;
            }
        }
        Ok(Self { sig, rules })
    }
}

/// Per-rule soundness verdicts.
#[derive(Debug, Clone)]
pub struct SoundnessReport {
    pub entries: Vec<(Rule, Verdict)>,
}

impl SoundnessReport {
    pub fn sound(&self) -> usize {
        self.entries.iter().filter(|(_, v)| v.is_yes()).count()
    }

    pub fn unsound(&self) -> usize {
        self.entries.len() - self.sound()
    }

    pub fn all_sound(&self) -> bool {
        self.unsound() == 0
    }
}

/// `premises ⊳ conclusions` over `m`; a countermodel on failure.
pub fn rule_sound(m: &PNMatrix, r: &Rule) -> Result<Verdict, EngineError> {
    Decider::new(m)?.decide_multiple(&r.premises, &r.conclusions)
}

pub fn calculus_sound(m: &PNMatrix, c: &Calculus) -> Result<SoundnessReport, EngineError> {
    let d = Decider::new(m)?;
    let entries = c
        .rules
        .iter()
        .map(|r| Ok((r.clone(), d.decide_multiple(&r.premises, &r.conclusions)?)))
        .collect::<Result<_, EngineError>>()?;
    Ok(SoundnessReport { entries })
}
