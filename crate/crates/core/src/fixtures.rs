//! Built-in matrices and calculi.
//!
//! Value `h` stands for one half. A name followed by a bracketed connective
//! list, such as `bool2[and]`, denotes the reduct to those connectives.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::calculus::Calculus;
use crate::io::{parse_matrix, parse_rules, IoError};
use crate::matrix::{reduct, Kind, MatrixError, PNMatrix};
use crate::syntax::{Formula, Signature};

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("unknown fixture `{name}`; available: {}", .available.join(", "))]
    Unknown { name: String, available: Vec<String> },
    #[error("bad reduct `{0}`")]
    BadReduct(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Io(#[from] IoError),
}

#[derive(Debug, Clone, Copy)]
pub struct FixtureMeta {
    pub name: &'static str,
    pub description: &'static str,
    pub kind: Kind,
    pub known_saturated: bool,
    text: &'static str,
}

const BOOL2: &str = "\
signature:
  top/0
  neg/1
  and/2
  or/2
  imp/2
values: 0 1
designated: 1
table top:
  : 1
table neg:
  0 : 1
  1 : 0
table and:
  0 0 : 0
  0 1 : 0
  1 0 : 0
  1 1 : 1
table or:
  0 0 : 0
  0 1 : 1
  1 0 : 1
  1 1 : 1
table imp:
  0 0 : 1
  0 1 : 1
  1 0 : 0
  1 1 : 1
";

const BOOL2N: &str = "\
signature:
  botop/0
  box/1
  squig/2
  pl/2
values: 0 1
designated: 1
table botop:
  : 0 1
table box:
  0 : 0 1
  1 : 1
table squig:
  0 0 : 0 1
  0 1 : 0 1
  1 0 : 0
  1 1 : 0 1
table pl:
  0 0 : 0
  0 1 : 0 1
  1 0 : 0 1
  1 1 : 1
";

const SOURCES: &str = "\
signature:
  neg/1
  and/2
  or/2
values: f bot top t
designated: top t
table neg:
  f : t
  bot : bot
  top : top
  t : f
table and:
  f f : f
  f bot : f
  f top : f
  f t : f
  bot f : f
  bot bot : f bot
  bot top : f
  bot t : f bot
  top f : f
  top bot : f
  top top : top
  top t : top
  t f : f
  t bot : f bot
  t top : top
  t t : top t
table or:
  f f : f top
  f bot : bot t
  f top : top
  f t : t
  bot f : bot t
  bot bot : bot t
  bot top : t
  bot t : t
  top f : top
  top bot : t
  top top : top
  top t : t
  t f : t
  t bot : t
  t top : t
  t t : t
";

const KLEENE_KS: &str = "\
signature:
  neg/1
  and/2
  or/2
values: 0 a b 1
designated: b 1
table neg:
  0 : 1
  a : a
  b : b
  1 : 0
table and:
  0 0 : 0
  0 a : 0
  0 b : 0
  0 1 : 0
  a 0 : 0
  a a : a
  a b : -
  a 1 : a
  b 0 : 0
  b a : -
  b b : b
  b 1 : b
  1 0 : 0
  1 a : a
  1 b : b
  1 1 : 1
table or:
  0 0 : 0
  0 a : a
  0 b : b
  0 1 : 1
  a 0 : a
  a a : a
  a b : -
  a 1 : 1
  b 0 : b
  b a : -
  b b : b
  b 1 : 1
  1 0 : 1
  1 a : 1
  1 b : 1
  1 1 : 1
";

const KLEENE_IMP: &str = "\
signature:
  imp/2
values: 0 h 1
designated: 1
table imp:
  0 0 : 1
  0 h : 1
  0 1 : 1
  h 0 : h
  h h : h
  h 1 : 1
  1 0 : 0
  1 h : h
  1 1 : 1
";

const LUK_IMP: &str = "\
signature:
  imp/2
values: 0 h 1
designated: 1
table imp:
  0 0 : 1
  0 h : 1
  0 1 : 1
  h 0 : h
  h h : 1
  h 1 : 1
  1 0 : 0
  1 h : h
  1 1 : 1
";

const LUK3: &str = "\
signature:
  neg/1
  nabla/1
  imp/2
values: 0 h 1
designated: 1
table neg:
  0 : 1
  h : h
  1 : 0
table nabla:
  0 : 0
  h : 1
  1 : 1
table imp:
  0 0 : 1
  0 h : 1
  0 1 : 1
  h 0 : h
  h h : 1
  h 1 : 1
  1 0 : 0
  1 h : h
  1 1 : 1
";

const NEG3: &str = "\
signature:
  neg/1
values: 0 h 1
designated: 1
table neg:
  0 : 1
  h : h
  1 : 0
";

const MP: &str = "\
signature:
  imp/2
values: 0 1
designated: 1
table imp:
  0 0 : 0 1
  0 1 : 0 1
  1 0 : 0
  1 1 : 0 1
";

const NOBIN0: &str = "\
signature:
  at/0
  f/1
values: 0
designated:
table at:
  : 0
table f:
  0 : 0
";

const NOBIN2: &str = "\
signature:
  at/0
  f/1
values: 0 1
designated: 1
table at:
  : 1
table f:
  0 : 1
  1 : 1
";

const FIXTURES: &[FixtureMeta] = &[
    FixtureMeta {
        name: "bool2",
        description: "Boolean matrix for top, neg, and, or, imp",
        kind: Kind::Matrix,
        known_saturated: false,
        text: BOOL2,
    },
    FixtureMeta {
        name: "bool2n",
        description: "two-valued Nmatrix for botop, box, squig and pl (platypus)",
        kind: Kind::NMatrix,
        known_saturated: false,
        text: BOOL2N,
    },
    FixtureMeta {
        name: "sources",
        description: "four-valued Nmatrix of information sources",
        kind: Kind::NMatrix,
        known_saturated: true,
        text: SOURCES,
    },
    FixtureMeta {
        name: "kleene-ks",
        description: "four-valued Pmatrix for strong Kleene logic without implication",
        kind: Kind::PMatrix,
        known_saturated: false,
        text: KLEENE_KS,
    },
    FixtureMeta {
        name: "kleene-imp",
        description: "three-valued Kleene implication",
        kind: Kind::Matrix,
        known_saturated: false,
        text: KLEENE_IMP,
    },
    FixtureMeta {
        name: "luk-imp",
        description: "three-valued Lukasiewicz implication",
        kind: Kind::Matrix,
        known_saturated: false,
        text: LUK_IMP,
    },
    FixtureMeta {
        name: "luk3",
        description: "three-valued Lukasiewicz logic with neg, nabla, imp",
        kind: Kind::Matrix,
        known_saturated: false,
        text: LUK3,
    },
    FixtureMeta {
        name: "neg3",
        description: "three-valued negation",
        kind: Kind::Matrix,
        known_saturated: true,
        text: NEG3,
    },
    FixtureMeta {
        name: "kleene-impk",
        description: "Kleene implication named impK",
        kind: Kind::Matrix,
        known_saturated: false,
        text: KLEENE_IMP,
    },
    FixtureMeta {
        name: "luk-impl",
        description: "Lukasiewicz implication named impL",
        kind: Kind::Matrix,
        known_saturated: false,
        text: LUK_IMP,
    },
    FixtureMeta {
        name: "mp",
        description: "two-valued Nmatrix whose implication obeys only modus ponens",
        kind: Kind::NMatrix,
        known_saturated: false,
        text: MP,
    },
    FixtureMeta {
        name: "nobin0",
        description: "one undesignated value over at/0, f/1",
        kind: Kind::Matrix,
        known_saturated: false,
        text: NOBIN0,
    },
    FixtureMeta {
        name: "nobin2",
        description: "two values over at/0, f/1 with designated outputs",
        kind: Kind::Matrix,
        known_saturated: false,
        text: NOBIN2,
    },
];

/// Reducts of Boolean connectives known to be saturated.
const SATURATED_REDUCTS: &[&str] = &["bool2[and]", "bool2[top]", "bool2[and,top]", "bool2[top,and]"];

pub fn all() -> &'static [FixtureMeta] {
    FIXTURES
}

pub fn names() -> Vec<String> {
    FIXTURES.iter().map(|f| f.name.to_string()).collect()
}

pub fn meta(name: &str) -> Option<&'static FixtureMeta> {
    FIXTURES.iter().find(|f| f.name == name)
}

/// Whether `name` (possibly a reduct) is recorded as saturated.
pub fn known_saturated(name: &str) -> bool {
    let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    meta(&compact).is_some_and(|m| m.known_saturated) || SATURATED_REDUCTS.contains(&compact.as_str())
}

/// Looks up a fixture, or a reduct written `name[c1,c2]`.
pub fn builtin(name: &str) -> Result<PNMatrix, FixtureError> {
    let name = name.trim();
    if let Some((base, rest)) = name.split_once('[') {
        let list = rest
            .strip_suffix(']')
            .ok_or_else(|| FixtureError::BadReduct(name.to_string()))?;
        let m = builtin(base)?;
        let conns: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        let sub = m
            .signature()
            .restrict(&conns)
            .map_err(|_| FixtureError::BadReduct(name.to_string()))?;
        return Ok(reduct(&m, &sub)?);
    }
    let meta = meta(name).ok_or_else(|| FixtureError::Unknown {
        name: name.to_string(),
        available: names(),
    })?;
    let text = match meta.name {
        "kleene-impk" => meta.text.replace("imp", "impK"),
        "luk-impl" => meta.text.replace("imp", "impL"),
        _ => meta.text.to_string(),
    };
    Ok(parse_matrix(&text)?)
}

const CLASSICAL_RULES: &str = "\
top_i : - |- top
neg_e : p, neg(p) |- -
neg_i : - |- p, neg(p)
and_e1 : and(p, q) |- p
and_e2 : and(p, q) |- q
and_i : p, q |- and(p, q)
or_i1 : p |- or(p, q)
or_i2 : q |- or(p, q)
or_e : or(p, q) |- p, q
imp_i0 : - |- p, imp(p, q)
imp_e : p, imp(p, q) |- q
imp_i1 : q |- imp(p, q)
";

const KS_RULES: &str = "\
and_i : p, q |- and(p, q)
and_e1 : and(p, q) |- p
and_e2 : and(p, q) |- q
nand_i1 : neg(p) |- neg(and(p, q))
nand_i2 : neg(q) |- neg(and(p, q))
nand_e : neg(and(p, q)) |- neg(p), neg(q)
or_i1 : p |- or(p, q)
or_i2 : q |- or(p, q)
nor_e1 : neg(or(p, q)) |- neg(p)
nor_e2 : neg(or(p, q)) |- neg(q)
nor_i : neg(p), neg(q) |- neg(or(p, q))
or_e : or(p, q) |- p, q
dneg_i : p |- neg(neg(p))
dneg_e : neg(neg(p)) |- p
gap : p, neg(p) |- q, neg(q)
";

/// The twelve-rule multiple-conclusion calculus for classical logic.
pub fn classical_calculus() -> Calculus {
    calculus(CLASSICAL_RULES, "bool2")
}

/// Multiple-conclusion calculus for `kleene-ks`.
pub fn kleene_ks_calculus() -> Calculus {
    calculus(KS_RULES, "kleene-ks")
}

/// Calculus for `sources`: the Kleene rules without `nand_e`, `or_e` and `gap`.
pub fn sources_calculus() -> Calculus {
    let text: String = KS_RULES
        .lines()
        .filter(|l| !(l.starts_with("nand_e") || l.starts_with("or_e") || l.starts_with("gap")))
        .map(|l| format!("{l}\n"))
        .collect();
    calculus(&text, "sources")
}

fn calculus(text: &str, matrix: &str) -> Calculus {
    let m = builtin(matrix).expect("built-in fixture");
    parse_rules(text, m.signature()).expect("built-in calculus parses")
}

/// The axioms `p1 -> (p2 -> p1)` and `(p1 -> (p2 -> p3)) -> ((p1 -> p2) -> (p1 -> p3))`.
pub fn implication_axioms() -> Vec<Formula> {
    let v = Formula::var;
    let imp = |a, b| Formula::binary("imp", a, b);
    vec![
        imp(v("p1"), imp(v("p2"), v("p1"))),
        imp(
            imp(v("p1"), imp(v("p2"), v("p3"))),
            imp(imp(v("p1"), v("p2")), imp(v("p1"), v("p3"))),
        ),
    ]
}

/// Signatures of every base fixture, keyed by name.
pub fn signatures() -> BTreeMap<String, Signature> {
    FIXTURES
        .iter()
        .filter_map(|f| {
            builtin(f.name)
                .ok()
                .map(|m| (f.name.to_string(), m.signature().clone()))
        })
        .collect()
}
