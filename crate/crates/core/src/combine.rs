//! Combining two logics given by PNmatrices: strict products, the
//! context-partition decision procedure, and strengthening by axioms.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::analysis::{refute_saturation, SaturationBounds, SaturationSearch, SaturationWitness};
use crate::engine::{Answer, Decider, EngineError, SearchStats, Verdict};
use crate::matrix::{extend, power, prune, strict_product, MatrixError, PNMatrix};
use crate::syntax::{closure, print_list, size_lex, skeleton, Formula, MonolithMap, Signature, Substitution};
use crate::util::odometer;

/// Default cap on the formulas of a context whose side is not forced by the query.
pub const CTX_CAP: usize = 12;
/// Default cap on generated axiom instances.
pub const INSTANCE_CAP: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombineError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("component {component} is not saturated: {} |> {} but no single conclusion follows", print_list(&witness.premises), print_list(&witness.conclusions))]
    SaturationRefuted {
        component: usize,
        witness: SaturationWitness,
    },
    #[error("context has {size} free formulas, above the cap of {cap}")]
    ContextTooLarge { size: usize, cap: usize },
    #[error("more than {cap} axiom instances")]
    TooManyInstances { cap: usize },
    #[error("{0}")]
    Argument(String),
}

/// How far decisions over the combined matrix can be trusted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Basis {
    /// Multiple-conclusion combination: the product characterizes it.
    Exact,
    /// Single-conclusion, both inputs known to be saturated.
    KnownSaturated,
    /// Single-conclusion, saturation of the inputs assumed (not refuted within bounds).
    ConditionalOnSaturation,
    /// Finite powers standing in for the infinite power; only an approximation.
    FiniteApproximation,
}

impl std::fmt::Display for Basis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Basis::Exact => "exact",
            Basis::KnownSaturated => "known saturated",
            Basis::ConditionalOnSaturation => "conditional on saturation",
            Basis::FiniteApproximation => "finite approximation",
        })
    }
}

#[derive(Debug, Clone)]
pub struct CombinedLogic {
    /// The inputs actually multiplied (powers already taken).
    pub components: [PNMatrix; 2],
    pub matrix: PNMatrix,
    /// Totality of the unpruned product.
    pub total: bool,
    pub pruned: bool,
    /// Saturation searches run on the components; `None` where skipped.
    pub saturation: [Option<SaturationSearch>; 2],
    pub basis: Basis,
}

impl CombinedLogic {
    fn build(components: [PNMatrix; 2], prune_it: bool, basis: Basis) -> Result<Self, CombineError> {
        let product = strict_product(&components[0], &components[1])?;
        let total = product.is_total();
        let matrix = if prune_it { prune(&product)? } else { product };
        Ok(CombinedLogic {
            components,
            matrix,
            total,
            pruned: prune_it,
            saturation: [None, None],
            basis,
        })
    }

    pub fn signature(&self) -> &Signature {
        self.matrix.signature()
    }

    pub fn decide_multiple(&self, gamma: &[Formula], delta: &[Formula]) -> Result<Verdict, EngineError> {
        crate::engine::decide_multiple(&self.matrix, gamma, delta)
    }

    pub fn decide_single(&self, gamma: &[Formula], a: &Formula) -> Result<Verdict, EngineError> {
        let mut v = crate::engine::decide_single(&self.matrix, gamma, a)?;
        if self.basis != Basis::Exact && self.basis != Basis::KnownSaturated {
            v.note = Some(self.basis.to_string());
        }
        Ok(v)
    }
}

/// Strict product over the union signature.
pub fn combine_multiple(m1: &PNMatrix, m2: &PNMatrix, prune_it: bool) -> Result<CombinedLogic, CombineError> {
    CombinedLogic::build([m1.clone(), m2.clone()], prune_it, Basis::Exact)
}

/// Strict product for single-conclusion use. Each input not flagged as known
/// saturated is searched for a saturation witness first; a witness is an error.
pub fn combine_single_saturated(
    m1: &PNMatrix,
    m2: &PNMatrix,
    known_saturated: [bool; 2],
    bounds: SaturationBounds,
) -> Result<CombinedLogic, CombineError> {
    let inputs = [m1, m2];
    let mut searches = [None, None];
    for i in 0..2 {
        if known_saturated[i] {
            continue;
        }
        let s = refute_saturation(inputs[i], bounds)?;
        if let Some(witness) = s.witness {
            return Err(CombineError::SaturationRefuted {
                component: i + 1,
                witness,
            });
        }
        searches[i] = Some(s);
    }
    let basis = if known_saturated.iter().all(|&k| k) {
        Basis::KnownSaturated
    } else {
        Basis::ConditionalOnSaturation
    };
    let mut c = CombinedLogic::build([m1.clone(), m2.clone()], false, basis)?;
    c.saturation = searches;
    Ok(c)
}

/// Strict product of finite powers. With `bounds`, the powers are searched for
/// saturation witnesses; the result is labeled conditional when none is found
/// and a finite approximation otherwise.
pub fn combine_single_power(
    m1: &PNMatrix,
    m2: &PNMatrix,
    k1: usize,
    k2: usize,
    bounds: Option<SaturationBounds>,
) -> Result<CombinedLogic, CombineError> {
    let p1 = if k1 == 1 { m1.clone() } else { power(m1, k1)? };
    let p2 = if k2 == 1 { m2.clone() } else { power(m2, k2)? };
    let mut searches = [None, None];
    let mut basis = Basis::FiniteApproximation;
    if let Some(b) = bounds {
        let s1 = refute_saturation(&p1, b)?;
        let s2 = refute_saturation(&p2, b)?;
        if s1.witness.is_none() && s2.witness.is_none() {
            basis = Basis::ConditionalOnSaturation;
        }
        searches = [Some(s1), Some(s2)];
    }
    let mut c = CombinedLogic::build([p1, p2], false, basis)?;
    c.saturation = searches;
    Ok(c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Multiple,
    Single,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CtxOptions {
    /// Formulas added to the context beyond the subformula closure of the query.
    pub ctx_extra: Vec<Formula>,
    /// Single mode only: certify under the assumption that both inputs are saturated.
    pub assume_saturated: bool,
    pub max_free: usize,
}

impl Default for CtxOptions {
    fn default() -> Self {
        Self {
            ctx_extra: Vec::new(),
            assume_saturated: false,
            max_free: CTX_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub under: Vec<Formula>,
    pub over: Vec<Formula>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CtxVerdict {
    pub answer: Answer,
    /// The strict product is total (and, in single mode, saturation is assumed).
    pub certified: bool,
    pub ctx: Vec<Formula>,
    pub partitions: usize,
    /// The failing partition with the least membership mask.
    pub failing: Option<Partition>,
}

/// Decides queries of the combination of two logics by partitioning a context
/// and asking each component separately, through skeleton translation.
pub struct CtxDecider<'m> {
    deciders: [Decider<'m>; 2],
    sig: Signature,
    total: bool,
    extended: [PNMatrix; 2],
}

impl<'m> CtxDecider<'m> {
    pub fn new(m1: &'m PNMatrix, m2: &'m PNMatrix) -> Result<Self, CombineError> {
        let sig = m1.signature().union(m2.signature()).map_err(MatrixError::from)?;
        let total = strict_product(m1, m2)?.is_total();
        let extended = if cfg!(debug_assertions) {
            [extend(m1, &sig)?, extend(m2, &sig)?]
        } else {
            [m1.clone(), m2.clone()]
        };
        Ok(CtxDecider {
            deciders: [Decider::new(m1)?, Decider::new(m2)?],
            sig,
            total,
            extended,
        })
    }

    pub fn total(&self) -> bool {
        self.total
    }

    fn component(&self, k: usize, under: &[&Formula], over: &[&Formula], mode: Mode) -> Result<bool, CombineError> {
        let d = &self.deciders[k];
        let sub = d.matrix().signature();
        let mut mm = MonolithMap::new();
        let su: Vec<Formula> = under.iter().map(|f| skeleton(f, sub, &mut mm)).collect();
        let so: Vec<Formula> = over.iter().map(|f| skeleton(f, sub, &mut mm)).collect();
        let yes = match mode {
            Mode::Multiple => d.decide_multiple(&su, &so)?.is_yes(),
            Mode::Single => d.decide_single(&su, &so[0])?.is_yes(),
        };
        if cfg!(debug_assertions) {
            let under: Vec<Formula> = under.iter().map(|&f| f.clone()).collect();
            let over: Vec<Formula> = over.iter().map(|&f| f.clone()).collect();
            let direct = Decider::new(&self.extended[k])?.decide_multiple(&under, &over)?;
            debug_assert_eq!(direct.is_yes(), yes, "skeleton and extension routes disagree");
        }
        Ok(yes)
    }

    /// Multiple mode decides `Γ ⊳ Δ`; single mode decides `Γ ⊢ A` with `Δ = [A]`.
    pub fn decide(
        &self,
        mode: Mode,
        gamma: &[Formula],
        delta: &[Formula],
        opts: &CtxOptions,
    ) -> Result<CtxVerdict, CombineError> {
        if mode == Mode::Single && delta.len() != 1 {
            return Err(CombineError::Argument(
                "single mode takes exactly one conclusion".into(),
            ));
        }
        for f in gamma.iter().chain(delta).chain(&opts.ctx_extra) {
            f.check(&self.sig).map_err(|source| EngineError::Formula {
                formula: f.to_string(),
                source,
            })?;
        }
        let ctx = closure(gamma.iter().chain(delta).chain(&opts.ctx_extra));
        let certified = self.total && (mode == Mode::Multiple || opts.assume_saturated);
        let verdict = |answer, partitions, failing| CtxVerdict {
            answer,
            certified,
            ctx: ctx.clone(),
            partitions,
            failing,
        };
        if gamma.iter().any(|g| delta.contains(g)) {
            return Ok(verdict(Answer::Yes, 0, None));
        }
        let free: Vec<&Formula> = ctx
            .iter()
            .filter(|f| !gamma.contains(f) && !delta.contains(f))
            .collect();
        if free.len() > opts.max_free {
            return Err(CombineError::ContextTooLarge {
                size: free.len(),
                cap: opts.max_free,
            });
        }
        let count = 1usize << free.len();
        for mask in 0..count {
            let mut under: Vec<&Formula> = gamma.iter().collect();
            let mut over: Vec<&Formula> = delta.iter().collect();
            for (i, &f) in free.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    under.push(f);
                } else {
                    over.push(f);
                }
            }
            let holds = match mode {
                Mode::Multiple => self.component(0, &under, &over, mode)? || self.component(1, &under, &over, mode)?,
                Mode::Single => {
                    let mut any = false;
                    'b: for b in &over {
                        for k in 0..2 {
                            if self.component(k, &under, &[b], mode)? {
                                any = true;
                                break 'b;
                            }
                        }
                    }
                    any
                }
            };
            if !holds {
                let failing = Partition {
                    under: under.into_iter().cloned().collect(),
                    over: over.into_iter().cloned().collect(),
                };
                return Ok(verdict(Answer::No, mask + 1, Some(failing)));
            }
        }
        Ok(verdict(Answer::Yes, count, None))
    }
}

pub fn decide_combined_ctx(
    m1: &PNMatrix,
    m2: &PNMatrix,
    mode: Mode,
    gamma: &[Formula],
    delta: &[Formula],
    opts: &CtxOptions,
) -> Result<CtxVerdict, CombineError> {
    CtxDecider::new(m1, m2)?.decide(mode, gamma, delta, opts)
}

/// Instances of the schemas in `ax` whose variables map to subformulas of
/// `universe` of depth at most `depth`, without duplicates.
pub fn axiom_instances(
    ax: &[Formula],
    universe: &[Formula],
    depth: usize,
    cap: usize,
) -> Result<Vec<Formula>, CombineError> {
    let mut pool: Vec<Formula> = closure(universe).into_iter().filter(|f| f.depth() <= depth).collect();
    pool.sort_by(size_lex);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    if pool.is_empty() {
        return Ok(out);
    }
    for schema in ax {
        let vars: Vec<_> = schema.vars().into_iter().collect();
        let mut pick = vec![0usize; vars.len()];
        loop {
            let s = Substitution::from_pairs(vars.iter().zip(&pick).map(|(v, &i)| (v.clone(), pool[i].clone())));
            let inst = schema.apply(&s);
            if seen.insert(inst.clone()) {
                if out.len() == cap {
                    return Err(CombineError::TooManyInstances { cap });
                }
                out.push(inst);
            }
            if !odometer(&mut pick, pool.len()) {
                break;
            }
        }
    }
    Ok(out)
}

/// Semi-decides `Γ ⊢ A` in the strengthening of `M` by the schemas `ax`, using
/// instances over `sub(Γ ∪ {A})` up to `depth`. Answers yes or unknown.
pub fn decide_with_axioms(
    m: &PNMatrix,
    ax: &[Formula],
    gamma: &[Formula],
    a: &Formula,
    depth: usize,
) -> Result<Verdict, CombineError> {
    if gamma.contains(a) {
        return Ok(Verdict {
            answer: Answer::Yes,
            countermodel: None,
            stats: SearchStats::default(),
            note: None,
        });
    }
    let mut universe = gamma.to_vec();
    universe.push(a.clone());
    let instances = axiom_instances(ax, &universe, depth, INSTANCE_CAP)?;
    let mut conns = BTreeMap::new();
    for f in ax.iter().chain(gamma).chain([a]) {
        f.connectives(&mut conns);
    }
    let mut sig = m.signature().clone();
    for (c, n) in &conns {
        sig.insert(c, *n).map_err(MatrixError::from)?;
    }
    let ext = extend(m, &sig)?;
    let mut premises = gamma.to_vec();
    premises.extend(instances.iter().cloned());
    let mut v = crate::engine::decide_single(&ext, &premises, a)?;
    if !v.is_yes() {
        v.answer = Answer::Unknown;
        v.countermodel = None;
        v.note = Some(format!("unknown at depth {depth} ({} instances)", instances.len()));
    }
    Ok(v)
}
