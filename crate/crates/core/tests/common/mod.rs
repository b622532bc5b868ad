//! Shared test support: a brute-force decision oracle and random query generation.
#![allow(dead_code)]

use pnmatrix::syntax::Signature;
use pnmatrix::{Formula, PNMatrix};
use rand::rngs::StdRng;
use rand::Rng;

/// Subsets of the carrier that satisfy the viability definition, as bitmasks.
pub fn brute_viable_sets(m: &PNMatrix) -> Vec<u64> {
    let n = m.len();
    assert!(n <= 16, "oracle limited to 16 values");
    let mut out = Vec::new();
    for mask in 1u64..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let ok = m.tables().all(|(_, t)| {
            all_tuples(&members, t.arity())
                .iter()
                .all(|tuple| t.get(tuple).iter().any(|v| mask & (1 << v) != 0))
        });
        if ok {
            out.push(mask);
        }
    }
    out
}

fn all_tuples(members: &[usize], arity: usize) -> Vec<Vec<usize>> {
    let mut acc = vec![Vec::new()];
    for _ in 0..arity {
        acc = acc
            .into_iter()
            .flat_map(|t| {
                members.iter().map(move |&v| {
                    let mut t2 = t.clone();
                    t2.push(v);
                    t2
                })
            })
            .collect();
    }
    acc
}

fn subformulas(fs: &[&Formula]) -> Vec<Formula> {
    fn walk(f: &Formula, out: &mut Vec<Formula>) {
        for a in f.args() {
            walk(a, out);
        }
        if !out.contains(f) {
            out.push(f.clone());
        }
    }
    let mut out = Vec::new();
    for f in fs {
        walk(f, &mut out);
    }
    out
}

/// `Γ ⊳ Δ` by enumerating every prevaluation on the closure and testing the
/// image against every viable subset.
pub fn oracle_multiple(m: &PNMatrix, gamma: &[Formula], delta: &[Formula]) -> bool {
    let all: Vec<&Formula> = gamma.iter().chain(delta).collect();
    let omega = subformulas(&all);
    let viable = brute_viable_sets(m);
    let child_pos: Vec<Vec<usize>> = omega
        .iter()
        .map(|f| {
            f.args()
                .iter()
                .map(|a| omega.iter().position(|g| g == a).unwrap())
                .collect()
        })
        .collect();
    let mut value = vec![0usize; omega.len()];
    !exists(m, &omega, &child_pos, gamma, delta, &viable, 0, &mut value)
}

#[allow(clippy::too_many_arguments)]
fn exists(
    m: &PNMatrix,
    omega: &[Formula],
    child_pos: &[Vec<usize>],
    gamma: &[Formula],
    delta: &[Formula],
    viable: &[u64],
    i: usize,
    value: &mut Vec<usize>,
) -> bool {
    if i == omega.len() {
        let image = value.iter().fold(0u64, |acc, &v| acc | (1 << v));
        return viable.iter().any(|&w| image & !w == 0);
    }
    let f = &omega[i];
    let options: Vec<usize> = match f {
        Formula::Var(_) => (0..m.len()).collect(),
        Formula::App(c, _) => {
            let args: Vec<usize> = child_pos[i].iter().map(|&j| value[j]).collect();
            m.table(c).unwrap().get(&args).iter().collect()
        }
    };
    for v in options {
        if gamma.contains(f) && !m.is_designated(v) {
            continue;
        }
        if delta.contains(f) && m.is_designated(v) {
            continue;
        }
        value[i] = v;
        if exists(m, omega, child_pos, gamma, delta, viable, i + 1, value) {
            return true;
        }
    }
    false
}

pub const VARS: [&str; 3] = ["p", "q", "r"];

/// Random formula of depth at most `depth` over `sig` and the first `nvars` variables.
pub fn random_formula(rng: &mut StdRng, sig: &Signature, nvars: usize, depth: usize) -> Formula {
    let conns: Vec<(&str, usize)> = sig.iter().collect();
    let leaf = |rng: &mut StdRng| {
        let consts: Vec<&str> = conns.iter().filter(|c| c.1 == 0).map(|c| c.0).collect();
        if !consts.is_empty() && rng.gen_bool(0.15) {
            Formula::constant(consts[rng.gen_range(0..consts.len())])
        } else {
            Formula::var(VARS[rng.gen_range(0..nvars)])
        }
    };
    let compound: Vec<(&str, usize)> = conns.iter().copied().filter(|c| c.1 > 0).collect();
    if depth == 0 || compound.is_empty() || rng.gen_bool(0.3) {
        return leaf(rng);
    }
    let (c, a) = compound[rng.gen_range(0..compound.len())];
    let args = (0..a).map(|_| random_formula(rng, sig, nvars, depth - 1)).collect();
    Formula::app(c, args)
}

/// Random `(Γ, Δ)` with bounded sizes; formulas of depth ≤ `depth` over ≤ 3 variables.
pub fn random_query(
    rng: &mut StdRng,
    sig: &Signature,
    max_premises: usize,
    max_conclusions: usize,
    depth: usize,
) -> (Vec<Formula>, Vec<Formula>) {
    let g = rng.gen_range(0..=max_premises);
    let d = rng.gen_range(0..=max_conclusions);
    let gamma = (0..g).map(|_| random_formula(rng, sig, 3, depth)).collect();
    let delta = (0..d).map(|_| random_formula(rng, sig, 3, depth)).collect();
    (gamma, delta)
}

/// Random substitution over `p, q, r`.
pub fn random_substitution(rng: &mut StdRng, sig: &Signature) -> pnmatrix::Substitution {
    pnmatrix::Substitution::from_pairs(
        VARS.iter()
            .map(|v| (std::sync::Arc::from(*v), random_formula(rng, sig, 3, 1))),
    )
}

/// Parses a list over `m`'s signature.
pub fn fl(m: &PNMatrix, s: &str) -> Vec<Formula> {
    pnmatrix::syntax::parse_formula_list(s, m.signature()).unwrap()
}

pub fn f1(m: &PNMatrix, s: &str) -> Formula {
    pnmatrix::syntax::parse_formula(s, m.signature()).unwrap()
}

/// Values `a` takes over valuations sending `p` to `x`, by full enumeration.
pub fn oracle_possible_values(m: &PNMatrix, a: &Formula, x: usize) -> Vec<usize> {
    let omega = subformulas(&[a]);
    let viable = brute_viable_sets(m);
    let mut out = Vec::new();
    let mut value = vec![0usize; omega.len()];
    fn walk(
        m: &PNMatrix,
        omega: &[Formula],
        viable: &[u64],
        x: usize,
        i: usize,
        value: &mut Vec<usize>,
        out: &mut Vec<usize>,
    ) {
        if i == omega.len() {
            let image = value.iter().fold(0u64, |acc, &v| acc | (1 << v));
            if viable.iter().any(|&w| image & !w == 0) && !out.contains(&value[i - 1]) {
                out.push(value[i - 1]);
            }
            return;
        }
        let options: Vec<usize> = match &omega[i] {
            Formula::Var(v) if &**v == "p" => vec![x],
            Formula::Var(_) => (0..m.len()).collect(),
            Formula::App(c, args) => {
                let vals: Vec<usize> = args
                    .iter()
                    .map(|g| value[omega.iter().position(|h| h == g).unwrap()])
                    .collect();
                m.table(c).unwrap().get(&vals).iter().collect()
            }
        };
        for v in options {
            value[i] = v;
            walk(m, omega, viable, x, i + 1, value, out);
        }
    }
    walk(m, &omega, &viable, x, 0, &mut value, &mut out);
    out.sort_unstable();
    out
}
