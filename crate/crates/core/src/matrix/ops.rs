//! Reduct, extension, strict product, sum, finite power and pruning.

use super::{viable_components, MatrixError, PNMatrix, ValueSet, MAX_VALUES};
use crate::syntax::Signature;

/// Forgets the connectives outside `sub_sig`.
pub fn reduct(m: &PNMatrix, sub_sig: &Signature) -> Result<PNMatrix, MatrixError> {
    if !sub_sig.is_subsignature_of(m.signature()) {
        return Err(MatrixError::NotSubsignature {
            sub: sub_sig.to_string(),
            sig: m.signature().to_string(),
        });
    }
    PNMatrix::from_fn(sub_sig.clone(), m.values().to_vec(), m.designated().clone(), |c, t| {
        m.table(c).map(|tb| tb.get(t).clone()).unwrap_or_default()
    })
}

/// Adds the connectives of `big_sig` missing from `m`, each mapping every row to all values.
pub fn extend(m: &PNMatrix, big_sig: &Signature) -> Result<PNMatrix, MatrixError> {
    let sig = m.signature().union(big_sig)?;
    let all = ValueSet::full(m.len());
    PNMatrix::from_fn(sig, m.values().to_vec(), m.designated().clone(), |c, t| {
        m.table(c).map(|tb| tb.get(t).clone()).unwrap_or_else(|| all.clone())
    })
}

/// Compatible value pairs of two matrices, in lexicographic order.
pub(crate) fn compatible_pairs(m1: &PNMatrix, m2: &PNMatrix) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for x in 0..m1.len() {
        for y in 0..m2.len() {
            if m1.is_designated(x) == m2.is_designated(y) {
                pairs.push((x, y));
            }
        }
    }
    pairs
}

/// Strict product over the union signature. Values are compatible pairs `x|y`.
pub fn strict_product(m1: &PNMatrix, m2: &PNMatrix) -> Result<PNMatrix, MatrixError> {
    let sig = m1.signature().union(m2.signature())?;
    let pairs = compatible_pairs(m1, m2);
    if pairs.len() > MAX_VALUES {
        return Err(MatrixError::TooManyValues {
            count: pairs.len(),
            cap: MAX_VALUES,
        });
    }
    let values = pairs
        .iter()
        .map(|&(x, y)| format!("{}|{}", m1.value_name(x), m2.value_name(y)))
        .collect();
    let designated = pairs
        .iter()
        .enumerate()
        .filter(|(_, &(x, y))| m1.is_designated(x) && m2.is_designated(y))
        .map(|(i, _)| i)
        .collect();
    let (all1, all2) = (ValueSet::full(m1.len()), ValueSet::full(m2.len()));
    PNMatrix::from_fn(sig, values, designated, |c, t| {
        let left: Vec<usize> = t.iter().map(|&i| pairs[i].0).collect();
        let right: Vec<usize> = t.iter().map(|&i| pairs[i].1).collect();
        let out1 = m1.table(c).map_or(&all1, |tb| tb.get(&left));
        let out2 = m2.table(c).map_or(&all2, |tb| tb.get(&right));
        pairs
            .iter()
            .enumerate()
            .filter(|(_, &(x, y))| out1.contains(x) && out2.contains(y))
            .map(|(i, _)| i)
            .collect()
    })
}

/// Sum of matrices over one signature. Value `x` of the `i`-th summand becomes `i.x`.
pub fn sum(ms: &[PNMatrix]) -> Result<PNMatrix, MatrixError> {
    let first = ms
        .first()
        .ok_or_else(|| MatrixError::Argument("sum of an empty list".into()))?;
    for m in &ms[1..] {
        if m.signature() != first.signature() {
            return Err(MatrixError::SignatureMismatch(
                first.signature().to_string(),
                m.signature().to_string(),
            ));
        }
    }
    let mut offsets = Vec::with_capacity(ms.len());
    let mut values = Vec::new();
    let mut designated = ValueSet::new();
    let mut owner = Vec::new();
    for (i, m) in ms.iter().enumerate() {
        offsets.push(values.len());
        for (j, v) in m.values().iter().enumerate() {
            if m.is_designated(j) {
                designated.insert(values.len());
            }
            values.push(format!("{i}.{v}"));
            owner.push((i, j));
        }
    }
    if values.len() > MAX_VALUES {
        return Err(MatrixError::TooManyValues {
            count: values.len(),
            cap: MAX_VALUES,
        });
    }
    let shift = |i: usize, s: &ValueSet| s.iter().map(|v| v + offsets[i]).collect::<ValueSet>();
    PNMatrix::from_fn(first.signature().clone(), values, designated, |c, t| {
        if t.is_empty() {
            let mut acc = ValueSet::new();
            for (i, m) in ms.iter().enumerate() {
                if let Some(tb) = m.table(c) {
                    acc = acc.union(&shift(i, tb.get(&[])));
                }
            }
            return acc;
        }
        let i = owner[t[0]].0;
        if t.iter().any(|&v| owner[v].0 != i) {
            return ValueSet::new();
        }
        let local: Vec<usize> = t.iter().map(|&v| owner[v].1).collect();
        shift(i, ms[i].table(c).map(|tb| tb.get(&local)).unwrap_or(&ValueSet::new()))
    })
}

/// `k`-th power: values are `k`-tuples `x1&..&xk`, designated when every component is.
pub fn power(m: &PNMatrix, k: usize) -> Result<PNMatrix, MatrixError> {
    if k == 0 {
        return Err(MatrixError::Argument("power exponent must be at least 1".into()));
    }
    let n = m.len();
    let count = n
        .checked_pow(k as u32)
        .filter(|&c| c <= MAX_VALUES)
        .ok_or(MatrixError::TooManyValues {
            count: n.saturating_pow(k as u32),
            cap: MAX_VALUES,
        })?;
    let decode = |mut i: usize| -> Vec<usize> {
        let mut t = vec![0; k];
        for slot in t.iter_mut().rev() {
            *slot = i % n;
            i /= n;
        }
        t
    };
    let tuples: Vec<Vec<usize>> = (0..count).map(decode).collect();
    let values = tuples
        .iter()
        .map(|t| t.iter().map(|&x| m.value_name(x)).collect::<Vec<_>>().join("&"))
        .collect();
    let designated = (0..count)
        .filter(|&i| tuples[i].iter().all(|&x| m.is_designated(x)))
        .collect();
    PNMatrix::from_fn(m.signature().clone(), values, designated, |c, t| {
        let tb = m.table(c).expect("signature and tables agree");
        // Component-wise outputs, then their cartesian product.
        let per: Vec<Vec<usize>> = (0..k)
            .map(|j| {
                let args: Vec<usize> = t.iter().map(|&v| tuples[v][j]).collect();
                tb.get(&args).iter().collect()
            })
            .collect();
        let mut out = ValueSet::new();
        if per.iter().any(Vec::is_empty) {
            return out;
        }
        let mut pick = vec![0usize; k];
        loop {
            out.insert(pick.iter().enumerate().fold(0, |acc, (j, &p)| acc * n + per[j][p]));
            let mut j = k;
            loop {
                if j == 0 {
                    return out;
                }
                j -= 1;
                pick[j] += 1;
                if pick[j] < per[j].len() {
                    break;
                }
                pick[j] = 0;
            }
        }
    })
}

/// Restricts `m` to its usable values.
pub fn prune(m: &PNMatrix) -> Result<PNMatrix, MatrixError> {
    let report = viable_components(m)?;
    if report.spurious.is_empty() {
        return Ok(m.clone());
    }
    let keep: Vec<usize> = report.usable.iter().collect();
    let mut new_index = vec![usize::MAX; m.len()];
    for (i, &old) in keep.iter().enumerate() {
        new_index[old] = i;
    }
    let values = keep.iter().map(|&i| m.value_name(i).to_string()).collect();
    let designated = keep
        .iter()
        .enumerate()
        .filter(|(_, &old)| m.is_designated(old))
        .map(|(i, _)| i)
        .collect();
    PNMatrix::from_fn(m.signature().clone(), values, designated, |c, t| {
        let old: Vec<usize> = t.iter().map(|&i| keep[i]).collect();
        m.table(c)
            .expect("signature and tables agree")
            .get(&old)
            .iter()
            .filter(|&v| new_index[v] != usize::MAX)
            .map(|v| new_index[v])
            .collect()
    })
}
