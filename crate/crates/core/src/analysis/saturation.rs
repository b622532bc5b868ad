//! Bounded search for witnesses of non-saturation.
//!
//! A witness is a pair `(Γ₀, Φ)` with `Γ₀ ⊳ Φ` but `Γ₀ ⊬ A` for every `A ∈ Φ`:
//! the theory generated by `Γ₀` then avoids all of `Φ` although every model of
//! `Γ₀` designates a member of `Φ`, so no valuation designates exactly that
//! theory.
//!
//! The search is counterexample-guided. A pool of concrete valuations
//! (restricted to the bounded universe of formulas) refutes most candidate
//! `Φ` by bit operations; only survivors reach the exact decision procedure,
//! and every exact failure adds its countermodel to the pool.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::engine::{Countermodel, Decider, EngineError};
use crate::matrix::{PNMatrix, Table, ValueSet};
use crate::syntax::{size_lex, Formula, Substitution};
use crate::util::{next_combination, odometer};

/// Search limits. Candidate formulas use the first `max_vars` of `p, q, r, s, ...`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SaturationBounds {
    pub max_premises: usize,
    pub max_conclusions: usize,
    /// Depth of premise candidates.
    pub premise_depth: usize,
    /// Depth of conclusion candidates.
    pub conclusion_depth: usize,
    pub max_vars: usize,
}

impl Default for SaturationBounds {
    fn default() -> Self {
        Self {
            max_premises: 2,
            max_conclusions: 3,
            premise_depth: 1,
            conclusion_depth: 2,
            max_vars: 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaturationWitness {
    pub premises: Vec<Formula>,
    pub conclusions: Vec<Formula>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaturationSearch {
    pub witness: Option<SaturationWitness>,
    pub bounds: SaturationBounds,
    /// Premise sets examined (after symmetry reduction).
    pub premise_sets: usize,
    /// Calls to the exact decision procedure.
    pub exact_checks: usize,
    /// Size of the valuation pool at the end.
    pub models: usize,
}

/// Re-verifies a witness with one multiple-conclusion and one single-conclusion call per member.
pub fn check_witness(m: &PNMatrix, w: &SaturationWitness) -> Result<bool, EngineError> {
    let d = Decider::new(m)?;
    if w.conclusions.len() < 2 || !d.decide_multiple(&w.premises, &w.conclusions)?.is_yes() {
        return Ok(false);
    }
    for a in &w.conclusions {
        if !d.decide_single(&w.premises, a)?.is_no() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) fn var_names(k: usize) -> Vec<String> {
    const BASE: [&str; 6] = ["p", "q", "r", "s", "t", "u"];
    (0..k)
        .map(|i| BASE.get(i).map_or_else(|| format!("p{i}"), |s| s.to_string()))
        .collect()
}

/// All formulas of depth ≤ `depth` over `vars` and the signature of `m`, in size-lex order.
pub(crate) fn universe(m: &PNMatrix, vars: &[String], depth: usize, cap: usize) -> Vec<Formula> {
    let mut all: Vec<Formula> = vars.iter().map(|v| Formula::var(v)).collect();
    all.extend(
        m.signature()
            .iter()
            .filter(|(_, a)| *a == 0)
            .map(|(c, _)| Formula::constant(c)),
    );
    let mut seen: HashSet<Formula> = all.iter().cloned().collect();
    for _ in 0..depth {
        let prev = all.clone();
        for (c, arity) in m.signature().iter().filter(|(_, a)| *a > 0) {
            let mut pick = vec![0usize; arity];
            loop {
                let f = Formula::app(c, pick.iter().map(|&i| prev[i].clone()).collect());
                if seen.insert(f.clone()) {
                    all.push(f);
                    if all.len() >= cap {
                        all.sort_by(size_lex);
                        return all;
                    }
                }
                if !odometer(&mut pick, prev.len()) {
                    break;
                }
            }
        }
    }
    all.sort_by(size_lex);
    all
}

type Bits = Vec<u64>;

fn bit(b: &[u64], i: usize) -> bool {
    b[i / 64] & (1 << (i % 64)) != 0
}

fn set_bit(b: &mut Bits, i: usize) {
    if b.len() <= i / 64 {
        b.resize(i / 64 + 1, 0);
    }
    b[i / 64] |= 1 << (i % 64);
}

fn is_zero(b: &[u64]) -> bool {
    b.iter().all(|&w| w == 0)
}

fn trimmed(b: &[u64]) -> Bits {
    let end = b.iter().rposition(|&w| w != 0).map_or(0, |i| i + 1);
    b[..end].to_vec()
}

fn and(a: &[u64], b: &[u64]) -> Bits {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

struct Refuter<'d, 'm> {
    m: &'m PNMatrix,
    decider: &'d Decider<'m>,
    u: Vec<Formula>,
    pos: HashMap<Formula, usize>,
    tables: Vec<Option<&'m Table>>,
    children: Vec<Vec<usize>>,
    /// Designation patterns of pooled valuations, over `u`.
    pool: Vec<Bits>,
    pool_set: HashSet<Bits>,
    exact_checks: usize,
    conclusion_depth: usize,
}

const POOL_SEED_CAP: usize = 4096;
const UNIVERSE_CAP: usize = 20_000;

impl<'d, 'm> Refuter<'d, 'm> {
    fn new(decider: &'d Decider<'m>, u: Vec<Formula>) -> Self {
        let m = decider.matrix();
        let pos: HashMap<Formula, usize> = u.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect();
        let tables = u
            .iter()
            .map(|f| match f {
                Formula::Var(_) => None,
                Formula::App(c, _) => m.table(c),
            })
            .collect();
        let children = u.iter().map(|f| f.args().iter().map(|a| pos[a]).collect()).collect();
        Refuter {
            m,
            decider,
            u,
            pos,
            tables,
            children,
            pool: Vec::new(),
            pool_set: HashSet::new(),
            exact_checks: 0,
            conclusion_depth: usize::MAX,
        }
    }

    /// Completes fixed values to a prevaluation on the universe inside `w`,
    /// preferring (un)designated choices; returns its designation pattern.
    fn extend(&self, fixed: &HashMap<usize, usize>, w: &ValueSet, prefer_designated: bool) -> Bits {
        let n = self.u.len();
        let mut value = vec![0usize; n];
        let mut bits = vec![0u64; n.div_ceil(64)];
        for i in 0..n {
            let v = if let Some(&v) = fixed.get(&i) {
                v
            } else {
                let options = match self.tables[i] {
                    None => w.clone(),
                    Some(t) => {
                        let args: Vec<usize> = self.children[i].iter().map(|&c| value[c]).collect();
                        t.get(&args).intersection(w)
                    }
                };
                let preferred = options.iter().find(|&v| self.m.is_designated(v) == prefer_designated);
                preferred
                    .or_else(|| options.first())
                    .expect("viable sets keep every entry non-empty")
            };
            value[i] = v;
            if self.m.is_designated(v) {
                set_bit(&mut bits, i);
            }
        }
        bits
    }

    fn add_model(&mut self, bits: Bits) -> Option<usize> {
        if self.pool_set.insert(bits.clone()) {
            self.pool.push(bits);
            Some(self.pool.len() - 1)
        } else {
            None
        }
    }

    /// Adds both completions of an engine countermodel; returns new pool indices.
    fn absorb(&mut self, cm: &Countermodel) -> Vec<usize> {
        let fixed: HashMap<usize, usize> = cm
            .assignment
            .iter()
            .filter_map(|(f, v)| self.pos.get(f).map(|&i| (i, *v)))
            .collect();
        let mut added = Vec::new();
        for pref in [false, true] {
            let bits = self.extend(&fixed, &cm.component, pref);
            added.extend(self.add_model(bits));
        }
        added
    }

    fn seed(&mut self, vars: &[String]) {
        let var_idx: Vec<usize> = vars.iter().map(|v| self.pos[&Formula::var(v)]).collect();
        let components = self.decider.report().components.clone();
        for w in &components {
            let members: Vec<usize> = w.iter().collect();
            let mut pick = vec![0usize; var_idx.len()];
            loop {
                let fixed: HashMap<usize, usize> = var_idx.iter().zip(&pick).map(|(&i, &p)| (i, members[p])).collect();
                for pref in [false, true] {
                    let bits = self.extend(&fixed, w, pref);
                    self.add_model(bits);
                }
                if self.pool.len() >= POOL_SEED_CAP || !odometer(&mut pick, members.len()) {
                    break;
                }
            }
        }
    }

    fn formulas(&self, idx: &[usize]) -> Vec<Formula> {
        idx.iter().map(|&i| self.u[i].clone()).collect()
    }

    /// Searches `Φ` for a fixed `Γ₀`.
    fn search_conclusions(
        &mut self,
        gamma: &[usize],
        max_conclusions: usize,
        implied: &[u64],
    ) -> Result<Outcome, EngineError> {
        let gamma_f = self.formulas(gamma);
        let designates = |b: &Bits| gamma.iter().all(|&g| bit(b, g));
        let mut local: Vec<usize> = (0..self.pool.len()).filter(|&i| designates(&self.pool[i])).collect();
        if local.is_empty() {
            self.exact_checks += 1;
            let v = self.decider.decide_multiple(&gamma_f, &[])?;
            match v.countermodel {
                None => return Ok(Outcome::Inconsistent),
                Some(cm) => local.extend(self.absorb(&cm)),
            }
        }
        let n = self.u.len();
        // masks[a]: local models leaving `a` undesignated.
        let mut masks: Vec<Bits> = vec![Vec::new(); n];
        let push_model = |masks: &mut Vec<Bits>, model: &Bits, li: usize| {
            for (a, mask) in masks.iter_mut().enumerate() {
                if !bit(model, a) {
                    set_bit(mask, li);
                }
            }
        };
        for (li, &pi) in local.iter().enumerate() {
            push_model(&mut masks, &self.pool[pi], li);
        }
        let in_scope: Vec<bool> = self.u.iter().map(|f| f.depth() <= self.conclusion_depth).collect();
        for a in 0..n {
            if !in_scope[a]
                || gamma.contains(&a)
                || !is_zero(&masks[a])
                || implied.get(a / 64).is_some_and(|w| w & (1 << (a % 64)) != 0)
            {
                continue;
            }
            self.exact_checks += 1;
            if let Some(cm) = self.decider.decide_single(&gamma_f, &self.u[a])?.countermodel {
                for pi in self.absorb(&cm) {
                    local.push(pi);
                    push_model(&mut masks, &self.pool[pi], local.len() - 1);
                }
            }
        }
        let mut consequences = vec![0u64; n.div_ceil(64)];
        for a in 0..n {
            if in_scope[a] && (gamma.contains(&a) || is_zero(&masks[a])) {
                set_bit(&mut consequences, a);
            }
        }
        let open: Vec<usize> = (0..n)
            .filter(|&a| in_scope[a] && !gamma.contains(&a) && !is_zero(&masks[a]))
            .collect();

        for k in 2..=max_conclusions {
            // Group open formulas by refutation mask.
            let mut class_of: HashMap<Bits, usize> = HashMap::new();
            let mut classes: Vec<(Bits, Vec<usize>)> = Vec::new();
            for &a in &open {
                let key = trimmed(&masks[a]);
                let id = *class_of.entry(key.clone()).or_insert_with(|| {
                    classes.push((key, Vec::new()));
                    classes.len() - 1
                });
                classes[id].1.push(a);
            }
            let mut tuples: Vec<Vec<usize>> = Vec::new();
            if classes.len() >= k {
                let mut pick: Vec<usize> = (0..k).collect();
                loop {
                    let mut acc = classes[pick[0]].0.clone();
                    for &c in &pick[1..] {
                        acc = and(&acc, &classes[c].0);
                    }
                    if is_zero(&acc) {
                        expand(&pick, &classes, &mut tuples);
                    }
                    if !next_combination(&mut pick, classes.len()) {
                        break;
                    }
                }
            }
            tuples.sort();
            tuples.dedup();
            let mut fresh: Vec<Bits> = Vec::new();
            for phi in tuples {
                let killed = fresh.iter().any(|b| phi.iter().all(|&a| !bit(b, a)));
                if killed {
                    continue;
                }
                self.exact_checks += 1;
                let phi_f = self.formulas(&phi);
                match self.decider.decide_multiple(&gamma_f, &phi_f)?.countermodel {
                    None => return Ok(Outcome::Witness(phi)),
                    Some(cm) => {
                        for pi in self.absorb(&cm) {
                            local.push(pi);
                            let li = local.len() - 1;
                            let model = self.pool[pi].clone();
                            for (a, mask) in masks.iter_mut().enumerate() {
                                if !bit(&model, a) {
                                    set_bit(mask, li);
                                }
                            }
                            fresh.push(model);
                        }
                    }
                }
            }
        }
        Ok(Outcome::Consequences(consequences))
    }
}

enum Outcome {
    Witness(Vec<usize>),
    /// No valuation designates the premises.
    Inconsistent,
    /// No witness; the in-scope consequences of the premises.
    Consequences(Bits),
}

/// Adds every formula tuple drawn one per class, sorted.
fn expand(pick: &[usize], classes: &[(Bits, Vec<usize>)], out: &mut Vec<Vec<usize>>) {
    let mut idx = vec![0usize; pick.len()];
    loop {
        let mut t: Vec<usize> = pick.iter().zip(&idx).map(|(&c, &i)| classes[c].1[i]).collect();
        t.sort_unstable();
        out.push(t);
        let mut j = pick.len();
        loop {
            if j == 0 {
                return;
            }
            j -= 1;
            idx[j] += 1;
            if idx[j] < classes[pick[j]].1.len() {
                break;
            }
            idx[j] = 0;
        }
    }
}

/// Permutations of `0..k`.
fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, k - 1);
            out.push(q);
        }
    }
    out
}

/// Searches for a non-saturation witness within `bounds`, in size-lexicographic order
/// of premise sets and then of conclusion sets.
pub fn refute_saturation(m: &PNMatrix, bounds: SaturationBounds) -> Result<SaturationSearch, EngineError> {
    let decider = Decider::new(m)?;
    let vars = var_names(bounds.max_vars);
    let depth = bounds.premise_depth.max(bounds.conclusion_depth);
    let u = universe(m, &vars, depth, UNIVERSE_CAP);
    let mut r = Refuter::new(&decider, u);
    r.seed(&vars);

    // Variable renamings, as index maps on the universe.
    let renamings: Vec<Vec<usize>> = permutations(vars.len())
        .into_iter()
        .filter(|p| p.iter().enumerate().any(|(i, &j)| i != j))
        .map(|p| {
            let s = Substitution::from_pairs(
                vars.iter()
                    .enumerate()
                    .map(|(i, v)| (v.as_str().into(), Formula::var(&vars[p[i]]))),
            );
            r.u.iter().map(|f| r.pos[&f.apply(&s)]).collect()
        })
        .collect();

    let candidates: Vec<usize> = (0..r.u.len())
        .filter(|&i| r.u[i].depth() <= bounds.premise_depth)
        .collect();
    r.conclusion_depth = bounds.conclusion_depth;
    let n = candidates.len();
    let mut premise_sets = 0;
    let mut singles: HashMap<usize, Option<Bits>> = HashMap::new();
    for size in 0..=bounds.max_premises.min(n) {
        let mut pick: Vec<usize> = (0..size).collect();
        loop {
            let gamma: Vec<usize> = pick.iter().map(|&i| candidates[i]).collect();
            let canonical = renamings.iter().all(|ren| {
                let mut img: Vec<usize> = gamma.iter().map(|&g| ren[g]).collect();
                img.sort_unstable();
                img >= gamma
            });
            // Consequences of single premises carry over to larger sets; a set
            // with an inconsistent or redundant member adds nothing new.
            let mut implied: Bits = Vec::new();
            let mut redundant = false;
            if size >= 2 {
                for &g in &gamma {
                    match singles.get(&g) {
                        Some(None) => redundant = true,
                        Some(Some(c)) => {
                            redundant |= gamma.iter().any(|&h| h != g && bit(c, h));
                            implied.resize(implied.len().max(c.len()), 0);
                            for (w, x) in implied.iter_mut().zip(c) {
                                *w |= x;
                            }
                        }
                        None => {}
                    }
                }
            }
            if canonical && !redundant {
                premise_sets += 1;
                let outcome = r.search_conclusions(&gamma, bounds.max_conclusions, &implied)?;
                if size == 1 {
                    let g = gamma[0];
                    let entry = match &outcome {
                        Outcome::Inconsistent => None,
                        Outcome::Consequences(c) => Some(c.clone()),
                        Outcome::Witness(_) => None,
                    };
                    for ren in &renamings {
                        let mapped = entry.as_ref().map(|c| {
                            let mut b = vec![0u64; c.len()];
                            for (x, &y) in ren.iter().enumerate() {
                                if bit(c, x) {
                                    set_bit(&mut b, y);
                                }
                            }
                            b
                        });
                        singles.entry(ren[g]).or_insert(mapped);
                    }
                    singles.insert(g, entry);
                }
                if let Outcome::Witness(phi) = outcome {
                    let witness = SaturationWitness {
                        premises: r.formulas(&gamma),
                        conclusions: r.formulas(&phi),
                    };
                    debug_assert!(check_witness(m, &witness)?);
                    return Ok(SaturationSearch {
                        witness: Some(witness),
                        bounds,
                        premise_sets,
                        exact_checks: r.exact_checks,
                        models: r.pool.len(),
                    });
                }
            }
            if size == 0 || !next_combination(&mut pick, n) {
                break;
            }
        }
    }
    Ok(SaturationSearch {
        witness: None,
        bounds,
        premise_sets,
        exact_checks: r.exact_checks,
        models: r.pool.len(),
    })
}
