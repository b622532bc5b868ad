//! Countermodel search and consequence decisions over a finite PNmatrix.
//!
//! `Γ ⊳ Δ` fails exactly when some prevaluation on the subformula closure of
//! `Γ ∪ Δ` takes its values inside a maximal viable set, designates all of `Γ`
//! and none of `Δ`. Such a prevaluation always extends to a valuation, since
//! the tables restricted to a viable set are total.

mod check;

pub use check::{check_countermodel, CountermodelViolation};

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::matrix::{viable_components, MatrixError, PNMatrix, Table, ValueSet, ViabilityReport};
use crate::syntax::{closure, Formula, SyntaxError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("formula `{formula}` does not fit the matrix signature: {source}")]
    Formula {
        formula: String,
        #[source]
        source: SyntaxError,
    },
    #[error("{0}")]
    Argument(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "yes",
            Answer::No => "no",
            Answer::Unknown => "unknown",
        })
    }
}

/// Search effort, reported with every verdict.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub components: usize,
    pub assignments: u64,
}

/// A prevaluation on the subformula closure of a query, inside one viable set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Countermodel {
    /// In increasing subformula order.
    pub assignment: Vec<(Formula, usize)>,
    pub component: ValueSet,
}

impl Countermodel {
    pub fn value_of(&self, f: &Formula) -> Option<usize> {
        self.assignment.iter().find(|(g, _)| g == f).map(|(_, v)| *v)
    }

    /// Value name of `f`, for reports and tests.
    pub fn value_name<'m>(&self, m: &'m PNMatrix, f: &Formula) -> Option<&'m str> {
        self.value_of(f).map(|v| m.value_name(v))
    }

    /// `formula = value` strings.
    pub fn render(&self, m: &PNMatrix) -> Vec<(String, String)> {
        self.assignment
            .iter()
            .map(|(f, v)| (f.to_string(), m.value_name(*v).to_string()))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub answer: Answer,
    pub countermodel: Option<Countermodel>,
    pub stats: SearchStats,
    /// Bound or caveat attached to the answer.
    pub note: Option<String>,
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        self.answer == Answer::Yes
    }

    pub fn is_no(&self) -> bool {
        self.answer == Answer::No
    }
}

/// A matrix with its viability analysis computed once, for repeated queries.
#[derive(Debug, Clone)]
pub struct Decider<'m> {
    m: &'m PNMatrix,
    report: ViabilityReport,
}

struct Node<'m> {
    table: Option<&'m Table>,
    children: Vec<usize>,
    allowed: ValueSet,
}

impl<'m> Decider<'m> {
    pub fn new(m: &'m PNMatrix) -> Result<Self, EngineError> {
        Ok(Self {
            m,
            report: viable_components(m)?,
        })
    }

    pub fn matrix(&self) -> &'m PNMatrix {
        self.m
    }

    pub fn report(&self) -> &ViabilityReport {
        &self.report
    }

    fn check(&self, f: &Formula) -> Result<(), EngineError> {
        f.check(self.m.signature()).map_err(|source| EngineError::Formula {
            formula: f.to_string(),
            source,
        })
    }

    /// Builds the ordered closure with per-formula value restrictions.
    fn nodes(&self, omega: &[Formula], restrict: impl Fn(&Formula) -> Option<ValueSet>) -> Vec<Node<'m>> {
        let pos: HashMap<&Formula, usize> = omega.iter().enumerate().map(|(i, f)| (f, i)).collect();
        let full = ValueSet::full(self.m.len());
        omega
            .iter()
            .map(|f| {
                let (table, children) = match f {
                    Formula::Var(_) => (None, Vec::new()),
                    Formula::App(c, args) => (self.m.table(c), args.iter().map(|a| pos[a]).collect()),
                };
                Node {
                    table,
                    children,
                    allowed: restrict(f).unwrap_or_else(|| full.clone()),
                }
            })
            .collect()
    }

    /// Backtracking search for an assignment inside `w`, maintaining arc
    /// consistency of the table constraints after every choice.
    fn search(&self, nodes: &[Node], w: &ValueSet, stats: &mut SearchStats) -> Option<Vec<usize>> {
        let n = nodes.len();
        let mut dom: Vec<ValueSet> = nodes.iter().map(|nd| nd.allowed.intersection(w)).collect();
        let mut parents = vec![Vec::new(); n];
        for (i, nd) in nodes.iter().enumerate() {
            for &c in &nd.children {
                if !parents[c].contains(&i) {
                    parents[c].push(i);
                }
            }
        }
        let mut trail = Vec::new();
        if dom.iter().any(|d| d.is_empty()) || !propagate(nodes, &parents, &mut dom, &mut trail, (0..n).collect()) {
            return None;
        }
        // (node, untried values, trail length before the choice)
        let mut stack: Vec<(usize, Vec<usize>, usize)> = Vec::new();
        loop {
            match dom.iter().position(|d| d.len() > 1) {
                None => return Some(dom.iter().map(|d| d.first().expect("non-empty domain")).collect()),
                Some(i) => {
                    let mut untried: Vec<usize> = dom[i].iter().collect();
                    untried.reverse();
                    stack.push((i, untried, trail.len()));
                }
            }
            loop {
                let (i, untried, mark) = stack.last_mut()?;
                undo(&mut dom, &mut trail, *mark);
                let Some(v) = untried.pop() else {
                    stack.pop();
                    continue;
                };
                let i = *i;
                stats.assignments += 1;
                trail.push((i, std::mem::replace(&mut dom[i], ValueSet::singleton(v))));
                if propagate(nodes, &parents, &mut dom, &mut trail, vec![i]) {
                    break;
                }
            }
        }
    }

    /// Decides `Γ ⊳ Δ`.
    pub fn decide_multiple(&self, gamma: &[Formula], delta: &[Formula]) -> Result<Verdict, EngineError> {
        for f in gamma.iter().chain(delta) {
            self.check(f)?;
        }
        let gamma: BTreeSet<&Formula> = gamma.iter().collect();
        let delta: BTreeSet<&Formula> = delta.iter().collect();
        let omega = closure(gamma.iter().copied().chain(delta.iter().copied()));
        let des = self.m.designated().clone();
        let undes = ValueSet::full(self.m.len()).difference(&des);
        let nodes = self.nodes(&omega, |f| match (gamma.contains(f), delta.contains(f)) {
            (true, true) => Some(ValueSet::new()),
            (true, false) => Some(des.clone()),
            (false, true) => Some(undes.clone()),
            (false, false) => None,
        });
        let mut stats = SearchStats::default();
        for w in &self.report.components {
            stats.components += 1;
            if let Some(values) = self.search(&nodes, w, &mut stats) {
                return Ok(Verdict {
                    answer: Answer::No,
                    countermodel: Some(Countermodel {
                        assignment: omega.into_iter().zip(values).collect(),
                        component: w.clone(),
                    }),
                    stats,
                    note: None,
                });
            }
        }
        Ok(Verdict {
            answer: Answer::Yes,
            countermodel: None,
            stats,
            note: None,
        })
    }

    /// Decides `Γ ⊢ A`.
    pub fn decide_single(&self, gamma: &[Formula], a: &Formula) -> Result<Verdict, EngineError> {
        self.decide_multiple(gamma, std::slice::from_ref(a))
    }

    /// Values `A` takes over valuations sending its variable to `x`.
    pub fn possible_values(&self, a: &Formula, x: usize) -> Result<ValueSet, EngineError> {
        self.check(a)?;
        let vars = a.vars();
        if vars.len() > 1 {
            return Err(EngineError::Argument(format!("`{a}` has more than one variable")));
        }
        let omega = closure([a]);
        let root = omega.len() - 1;
        let mut out = ValueSet::new();
        let mut stats = SearchStats::default();
        for w in self.report.components.iter().filter(|w| w.contains(x)) {
            for r in w.iter() {
                if out.contains(r) {
                    continue;
                }
                let nodes = self.nodes(&omega, |f| {
                    let mut allowed = None;
                    if f.is_var() {
                        allowed = Some(ValueSet::singleton(x));
                    }
                    if f == &omega[root] {
                        let fixed = ValueSet::singleton(r);
                        allowed = Some(allowed.map_or(fixed.clone(), |a| a.intersection(&fixed)));
                    }
                    allowed
                });
                if self.search(&nodes, w, &mut stats).is_some() {
                    out.insert(r);
                }
            }
        }
        Ok(out)
    }
}

/// Decides `Γ ⊳ Δ` over `m`.
pub fn decide_multiple(m: &PNMatrix, gamma: &[Formula], delta: &[Formula]) -> Result<Verdict, EngineError> {
    Decider::new(m)?.decide_multiple(gamma, delta)
}

/// Decides `Γ ⊢ A` over `m`.
pub fn decide_single(m: &PNMatrix, gamma: &[Formula], a: &Formula) -> Result<Verdict, EngineError> {
    Decider::new(m)?.decide_single(gamma, a)
}

/// `{v(A) : v a valuation with v(p) = x}` for a formula with one variable `p`.
pub fn possible_values(m: &PNMatrix, a: &Formula, x: usize) -> Result<ValueSet, EngineError> {
    Decider::new(m)?.possible_values(a, x)
}

fn undo(dom: &mut [ValueSet], trail: &mut Vec<(usize, ValueSet)>, mark: usize) {
    while trail.len() > mark {
        let (i, old) = trail.pop().expect("trail above mark");
        dom[i] = old;
    }
}

/// Narrows domains until every value of every node has support in the table
/// of its node and of each parent. Returns `false` on a wipe-out.
fn propagate(
    nodes: &[Node],
    parents: &[Vec<usize>],
    dom: &mut [ValueSet],
    trail: &mut Vec<(usize, ValueSet)>,
    changed: Vec<usize>,
) -> bool {
    let mut queued = vec![false; nodes.len()];
    let mut queue = VecDeque::new();
    let enqueue = |i: usize, queue: &mut VecDeque<usize>, queued: &mut Vec<bool>| {
        if nodes[i].table.is_some() && !queued[i] {
            queued[i] = true;
            queue.push_back(i);
        }
    };
    for c in changed {
        enqueue(c, &mut queue, &mut queued);
        for &p in &parents[c] {
            enqueue(p, &mut queue, &mut queued);
        }
    }
    while let Some(i) = queue.pop_front() {
        queued[i] = false;
        let node = &nodes[i];
        let table = node.table.expect("only table nodes are queued");
        let k = node.children.len();
        let choices: Vec<Vec<usize>> = node.children.iter().map(|&c| dom[c].iter().collect()).collect();
        if choices.iter().any(|c| c.is_empty()) {
            return false;
        }
        let mut own = ValueSet::new();
        let mut support: Vec<ValueSet> = vec![ValueSet::new(); k];
        let mut pick = vec![0usize; k];
        let mut args = vec![0usize; k];
        'tuples: loop {
            for j in 0..k {
                args[j] = choices[j][pick[j]];
            }
            let coherent = (0..k).all(|j| (0..j).all(|l| node.children[l] != node.children[j] || args[l] == args[j]));
            if coherent {
                let out = table.get(&args).intersection(&dom[i]);
                if !out.is_empty() {
                    own = own.union(&out);
                    for j in 0..k {
                        support[j].insert(args[j]);
                    }
                }
            }
            let mut j = k;
            loop {
                if j == 0 {
                    break 'tuples;
                }
                j -= 1;
                pick[j] += 1;
                if pick[j] < choices[j].len() {
                    break;
                }
                pick[j] = 0;
            }
        }
        if own.is_empty() {
            return false;
        }
        if own != dom[i] {
            trail.push((i, std::mem::replace(&mut dom[i], own)));
            for &p in &parents[i] {
                enqueue(p, &mut queue, &mut queued);
            }
        }
        for (j, sup) in support.into_iter().enumerate() {
            let c = node.children[j];
            if sup != dom[c] {
                trail.push((c, std::mem::replace(&mut dom[c], sup)));
                enqueue(c, &mut queue, &mut queued);
                for &p in &parents[c] {
                    if p != i {
                        enqueue(p, &mut queue, &mut queued);
                    }
                }
            }
        }
    }
    true
}
