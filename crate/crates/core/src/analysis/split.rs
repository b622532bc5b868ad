//! Advice on axiomatizing a matrix by joining calculi for two reducts.

use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::Serialize;

use super::saturation::{refute_saturation, universe, var_names, SaturationBounds, SaturationSearch};
use super::separator::{monadicity_report, SeparatorBounds, SeparatorTable};
use crate::engine::{Answer, Countermodel, Decider, EngineError};
use crate::matrix::{reduct, strict_product, MatrixError, PNMatrix};
use crate::syntax::{Formula, Signature};
use crate::util::random_query;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SplitVerdict {
    /// Shared part monadic: joining multiple-conclusion calculi for the reducts is complete.
    SplitSafeMultiple,
    /// As above, and the single-conclusion split also holds provided `M` is saturated
    /// (no witness against saturation was found within bounds).
    SplitSafeSingleConditional,
    /// A query decided differently by `M` and by the product of its reducts.
    UnsafeEvidence,
    Inconclusive,
}

impl std::fmt::Display for SplitVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SplitVerdict::SplitSafeMultiple => "split-safe-multiple",
            SplitVerdict::SplitSafeSingleConditional => "split-safe-single-conditional",
            SplitVerdict::UnsafeEvidence => "unsafe-evidence",
            SplitVerdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SplitBounds {
    pub separator: SeparatorBounds,
    pub saturation: SaturationBounds,
    /// Random multiple-conclusion queries compared after the systematic corpus.
    pub samples: usize,
    pub seed: u64,
    /// Formula depth of both the systematic corpus and the samples.
    pub query_depth: usize,
}

impl Default for SplitBounds {
    fn default() -> Self {
        Self {
            separator: SeparatorBounds::default(),
            saturation: SaturationBounds::default(),
            samples: 200,
            seed: 0,
            query_depth: 2,
        }
    }
}

/// A query derivable over `M` but not over the product of the reducts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divergence {
    pub premises: Vec<Formula>,
    pub conclusions: Vec<Formula>,
    pub over_matrix: Answer,
    pub over_product: Answer,
    /// Countermodel over the product (values named in the product).
    pub countermodel: Option<Countermodel>,
}

#[derive(Debug, Clone)]
pub struct SplitAdvice {
    pub verdict: SplitVerdict,
    pub shared: Signature,
    pub monadicity: SeparatorTable,
    pub saturation: SaturationSearch,
    pub divergence: Option<Divergence>,
    pub queries_checked: usize,
    /// Product of the two reducts, over `sig1 ∪ sig2`.
    pub product: PNMatrix,
    pub bounds: SplitBounds,
}

/// Combines shared-part monadicity, bounded saturation refutation and a
/// query comparison between `M` and `reduct(M, sig1) * reduct(M, sig2)`.
pub fn split_advice(
    m: &PNMatrix,
    sig1: &Signature,
    sig2: &Signature,
    bounds: SplitBounds,
) -> Result<SplitAdvice, EngineError> {
    let union = sig1.union(sig2).map_err(MatrixError::from)?;
    if &union != m.signature() {
        return Err(EngineError::Argument(format!(
            "the two parts {sig1} and {sig2} must cover the matrix signature {}",
            m.signature()
        )));
    }
    let shared = sig1.intersection(sig2);
    let monadicity = monadicity_report(m, &shared, bounds.separator)?;
    let saturation = refute_saturation(m, bounds.saturation)?;
    let product = strict_product(&reduct(m, sig1)?, &reduct(m, sig2)?)?;

    let dm = Decider::new(m)?;
    let dp = Decider::new(&product)?;
    let mut queries_checked = 0;
    let mut divergence = None;
    let mut compare = |gamma: &[Formula], delta: &[Formula]| -> Result<bool, EngineError> {
        queries_checked += 1;
        let over_matrix = dm.decide_multiple(gamma, delta)?;
        let over_product = dp.decide_multiple(gamma, delta)?;
        if over_matrix.answer != over_product.answer {
            divergence = Some(Divergence {
                premises: gamma.to_vec(),
                conclusions: delta.to_vec(),
                over_matrix: over_matrix.answer,
                over_product: over_product.answer,
                countermodel: over_product.countermodel,
            });
            return Ok(true);
        }
        Ok(false)
    };

    // One-variable single-premise, single-conclusion queries first, smallest first.
    let corpus = universe(m, &var_names(1), bounds.query_depth, 2000);
    let mut found = false;
    'sys: for a in &corpus {
        for b in &corpus {
            if compare(std::slice::from_ref(a), std::slice::from_ref(b))? {
                found = true;
                break 'sys;
            }
        }
    }
    if !found {
        let vars = var_names(3);
        let mut rng = StdRng::seed_from_u64(bounds.seed);
        for _ in 0..bounds.samples {
            let (g, d) = random_query(&mut rng, m.signature(), &vars, bounds.query_depth, 3, 3);
            if compare(&g, &d)? {
                break;
            }
        }
    }

    let verdict = if divergence.is_some() {
        SplitVerdict::UnsafeEvidence
    } else if monadicity.monadic() {
        if saturation.witness.is_some() {
            SplitVerdict::SplitSafeMultiple
        } else {
            SplitVerdict::SplitSafeSingleConditional
        }
    } else {
        SplitVerdict::Inconclusive
    };
    Ok(SplitAdvice {
        verdict,
        shared,
        monadicity,
        saturation,
        divergence,
        queries_checked,
        product,
        bounds,
    })
}
