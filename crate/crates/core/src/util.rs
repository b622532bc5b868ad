//! Small combinatorial and sampling helpers.

use rand::Rng;

use crate::syntax::{Formula, Signature};

/// Advances `digits` as a base-`base` counter, last digit fastest.
/// Returns `false` after wrapping back to all zeros.
pub(crate) fn odometer(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// Advances a strictly increasing index tuple over `0..n` in lexicographic order.
pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - (k - i) {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Random formula over `sig` and the first `nvars` of `vars`, depth at most `depth`.
pub(crate) fn random_formula<R: Rng>(rng: &mut R, sig: &Signature, vars: &[String], depth: usize) -> Formula {
    let conns: Vec<(&str, usize)> = sig.iter().collect();
    let leaf = |rng: &mut R| {
        let constants: Vec<&str> = conns.iter().filter(|c| c.1 == 0).map(|c| c.0).collect();
        if !constants.is_empty() && rng.gen_bool(0.2) {
            Formula::constant(constants[rng.gen_range(0..constants.len())])
        } else {
            Formula::var(&vars[rng.gen_range(0..vars.len())])
        }
    };
    let compound: Vec<(&str, usize)> = conns.iter().copied().filter(|c| c.1 > 0).collect();
    if depth == 0 || compound.is_empty() || rng.gen_bool(0.3) {
        return leaf(rng);
    }
    let (c, arity) = compound[rng.gen_range(0..compound.len())];
    let args = (0..arity).map(|_| random_formula(rng, sig, vars, depth - 1)).collect();
    Formula::app(c, args)
}

/// Random `(Γ, Δ)` with at most the given number of formulas on each side.
pub(crate) fn random_query<R: Rng>(
    rng: &mut R,
    sig: &Signature,
    vars: &[String],
    depth: usize,
    max_premises: usize,
    max_conclusions: usize,
) -> (Vec<Formula>, Vec<Formula>) {
    let np = rng.gen_range(0..=max_premises);
    let nc = rng.gen_range(0..=max_conclusions);
    let gamma = (0..np).map(|_| random_formula(rng, sig, vars, depth)).collect();
    let delta = (0..nc).map(|_| random_formula(rng, sig, vars, depth)).collect();
    (gamma, delta)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let mut d = vec![0; 3];
        let mut n = 1;
        while odometer(&mut d, 2) {
            n += 1;
        }
        assert_eq!(n, 8);
        let mut c = vec![0, 1];
        let mut n = 1;
        while next_combination(&mut c, 4) {
            n += 1;
        }
        assert_eq!(n, 6);
    }
}
