use pnmatrix::fixtures::builtin;
use pnmatrix::io::{parse_matrix, write_matrix};
use pnmatrix::matrix::{
    check_strict_hom, extend, power, power_diagonal, product_projections, prune, reduct, strict_product, sum,
    sum_inclusion, viable_components, HomViolation, Kind, ValueMap,
};
use pnmatrix::{PNMatrix, Signature};

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn kl() -> PNMatrix {
    strict_product(&builtin("kleene-imp").unwrap(), &builtin("luk-imp").unwrap()).unwrap()
}

fn component_names(m: &PNMatrix) -> Vec<Vec<String>> {
    viable_components(m).unwrap().component_names(m)
}

#[test]
fn kleene_lukasiewicz_product_table() {
    let m = kl();
    assert_eq!(m.values(), names(&["0|0", "0|h", "h|0", "h|h", "1|1"]));
    assert_eq!(m.names(m.designated()), names(&["1|1"]));
    let expected = [
        ["1|1", "1|1", "1|1", "1|1", "1|1"],
        ["", "1|1", "", "1|1", "1|1"],
        ["", "", "", "", "1|1"],
        ["h|h", "", "h|h", "", "1|1"],
        ["0|0", "0|h", "h|0", "h|h", "1|1"],
    ];
    let vals = m.values().to_vec();
    for (i, x) in vals.iter().enumerate() {
        for (j, y) in vals.iter().enumerate() {
            let got = m.entry("imp", &[x, y]).unwrap();
            let want: Vec<String> = if expected[i][j].is_empty() {
                vec![]
            } else {
                vec![expected[i][j].to_string()]
            };
            assert_eq!(got, want, "{x} -> {y}");
        }
    }
    assert_eq!(m.classify(), Kind::PMatrix);
}

#[test]
fn kleene_lukasiewicz_viability_and_pruning() {
    let m = kl();
    let r = viable_components(&m).unwrap();
    assert_eq!(
        r.component_names(&m),
        vec![names(&["0|0", "1|1"]), names(&["0|h", "1|1"])]
    );
    assert_eq!(m.names(&r.spurious), names(&["h|0", "h|h"]));
    let p = prune(&m).unwrap();
    assert_eq!(p.values(), names(&["0|0", "0|h", "1|1"]));
    assert!(p.entry("imp", &["0|h", "0|0"]).unwrap().is_empty());
    assert_eq!(p.entry("imp", &["1|1", "0|h"]).unwrap(), names(&["0|h"]));
    assert_eq!(component_names(&p), r.component_names(&m));
}

#[test]
fn kleene_components() {
    let ks = builtin("kleene-ks").unwrap();
    assert_eq!(
        component_names(&ks),
        vec![names(&["0", "a", "1"]), names(&["0", "b", "1"])]
    );
    let s = builtin("sources").unwrap();
    assert_eq!(component_names(&s), vec![names(&["f", "bot", "top", "t"])]);
}

#[test]
fn disjoint_product_is_total() {
    let m = strict_product(&builtin("kleene-impk").unwrap(), &builtin("luk-impl").unwrap()).unwrap();
    assert_eq!(m.len(), 5);
    assert_eq!(m.classify(), Kind::NMatrix);
    assert_eq!(m.entry("impK", &["h|0", "0|0"]).unwrap(), names(&["h|0", "h|h"]));
    assert_eq!(m.entry("impK", &["1|1", "0|h"]).unwrap(), names(&["0|0", "0|h"]));
    assert_eq!(m.entry("impL", &["0|h", "0|0"]).unwrap(), names(&["0|h", "h|h"]));
}

#[test]
fn negation_times_conjunction() {
    let m = strict_product(&builtin("neg3").unwrap(), &builtin("bool2[and]").unwrap()).unwrap();
    assert_eq!(m.values(), names(&["0|0", "h|0", "1|1"]));
    for x in m.values() {
        for y in m.values() {
            let want = if x == "1|1" && y == "1|1" {
                names(&["1|1"])
            } else {
                names(&["0|0", "h|0"])
            };
            assert_eq!(m.entry("and", &[x, y]).unwrap(), want);
        }
    }
    assert_eq!(m.entry("neg", &["0|0"]).unwrap(), names(&["1|1"]));
    assert_eq!(m.entry("neg", &["h|0"]).unwrap(), names(&["h|0"]));
    assert_eq!(m.entry("neg", &["1|1"]).unwrap(), names(&["0|0"]));
}

#[test]
fn boolean_fragments_multiply_to_classical_tables() {
    let m = strict_product(&builtin("bool2[and]").unwrap(), &builtin("bool2[or]").unwrap()).unwrap();
    assert_eq!(m.values(), names(&["0|0", "1|1"]));
    assert_eq!(m.classify(), Kind::Matrix);
    assert_eq!(m.entry("or", &["0|0", "1|1"]).unwrap(), names(&["1|1"]));
    assert_eq!(m.entry("and", &["0|0", "1|1"]).unwrap(), names(&["0|0"]));
}

#[test]
fn projections_and_inclusions_are_strict_homomorphisms() {
    let pairs = [
        ("kleene-imp", "luk-imp"),
        ("kleene-impk", "luk-impl"),
        ("neg3", "bool2[and]"),
        ("kleene-ks", "sources"),
        ("bool2", "bool2n"),
        ("luk3", "kleene-imp"),
    ];
    for (a, b) in pairs {
        let (m1, m2) = (builtin(a).unwrap(), builtin(b).unwrap());
        let p = strict_product(&m1, &m2).unwrap();
        let (p1, p2) = product_projections(&m1, &m2);
        assert_eq!(check_strict_hom(&p1, &p, &m1), Ok(()), "{a}*{b} -> {a}");
        assert_eq!(check_strict_hom(&p2, &p, &m2), Ok(()), "{a}*{b} -> {b}");
    }
    let ms = vec![builtin("nobin0").unwrap(), builtin("nobin2").unwrap()];
    let s = sum(&ms).unwrap();
    for i in 0..2 {
        assert_eq!(check_strict_hom(&sum_inclusion(&ms, i), &ms[i], &s), Ok(()));
    }
    let n = builtin("bool2[neg]").unwrap();
    let p2 = power(&n, 2).unwrap();
    assert_eq!(check_strict_hom(&power_diagonal(&n, 2), &n, &p2), Ok(()));
}

#[test]
fn homomorphism_violations() {
    let b = builtin("bool2").unwrap();
    let swap = ValueMap::new(vec![1, 0]);
    assert!(matches!(
        check_strict_hom(&swap, &b, &b),
        Err(HomViolation::Strictness { .. })
    ));
    let k = builtin("kleene-imp").unwrap();
    let l = builtin("luk-imp").unwrap();
    let id = ValueMap::new(vec![0, 1, 2]);
    assert!(matches!(check_strict_hom(&id, &l, &k), Err(HomViolation::Table { .. })));
    assert_eq!(check_strict_hom(&id, &k, &k), Ok(()));
}

#[test]
fn reduct_and_extend() {
    let ks = builtin("kleene-ks").unwrap();
    let sub = Signature::from_pairs([("and", 2), ("neg", 1)]).unwrap();
    let r = reduct(&ks, &sub).unwrap();
    assert_eq!(r.signature(), &sub);
    assert_eq!(reduct(&ks, ks.signature()).unwrap(), ks);
    let empty = reduct(&ks, &Signature::new()).unwrap();
    assert_eq!(empty.tables().count(), 0);
    assert!(reduct(&r, ks.signature()).is_err());

    let big = Signature::from_pairs([("c", 2)])
        .unwrap()
        .union(ks.signature())
        .unwrap();
    let e = extend(&builtin("bool2").unwrap(), &Signature::from_pairs([("c", 2)]).unwrap()).unwrap();
    assert!(e.table("c").unwrap().entries().iter().all(|s| s.len() == 2));
    assert_eq!(extend(&ks, ks.signature()).unwrap(), ks);
    let ke = extend(&ks, &Signature::from_pairs([("e", 0)]).unwrap()).unwrap();
    assert_eq!(ke.entry("e", &[]).unwrap(), names(&["0", "a", "b", "1"]));
    assert!(extend(&ks, &Signature::from_pairs([("and", 1)]).unwrap()).is_err());
    assert!(big.contains("c"));
}

#[test]
fn sums() {
    let ms = vec![builtin("nobin0").unwrap(), builtin("nobin2").unwrap()];
    let s = sum(&ms).unwrap();
    assert_eq!(s.values(), names(&["0.0", "1.0", "1.1"]));
    assert_eq!(s.names(s.designated()), names(&["1.1"]));
    assert_eq!(s.entry("at", &[]).unwrap(), names(&["0.0", "1.1"]));
    assert_eq!(s.entry("f", &["1.0"]).unwrap(), names(&["1.1"]));
    let one = sum(&ms[..1]).unwrap();
    assert_eq!(one.values(), names(&["0.0"]));
    assert!(sum(&[builtin("bool2").unwrap(), builtin("neg3").unwrap()]).is_err());
}

#[test]
fn powers() {
    let n = builtin("bool2[neg]").unwrap();
    let p = power(&n, 2).unwrap();
    assert_eq!(p.values(), names(&["0&0", "0&1", "1&0", "1&1"]));
    assert_eq!(p.names(p.designated()), names(&["1&1"]));
    let or2 = power(&builtin("bool2[or]").unwrap(), 2).unwrap();
    assert_eq!(or2.entry("or", &["1&0", "0&1"]).unwrap(), names(&["1&1"]));
    let k = builtin("kleene-imp").unwrap();
    let k1 = power(&k, 1).unwrap();
    assert_eq!(k1.values(), k.values());
    assert_eq!(write_matrix(&k1), write_matrix(&k));
    assert!(power(&k, 0).is_err());
    assert!(power(&builtin("kleene-ks").unwrap(), 7).is_err());
    // Non-deterministic entries multiply out.
    let s2 = power(&builtin("sources").unwrap(), 2).unwrap();
    assert_eq!(s2.entry("and", &["t&t", "t&t"]).unwrap().len(), 4);
}

#[test]
fn pruning_edge_cases() {
    let s = builtin("sources").unwrap();
    assert_eq!(prune(&s).unwrap(), s);
    let dead = parse_matrix("signature: c/0\nvalues: 0 1\ndesignated: 1\ntable c:\n : -\n").unwrap();
    let p = prune(&dead).unwrap();
    assert!(p.is_empty());
    assert!(viable_components(&dead).unwrap().components.is_empty());
}

#[test]
fn file_round_trip_for_constructions() {
    let k = builtin("kleene-imp").unwrap();
    let outputs = vec![
        kl(),
        prune(&kl()).unwrap(),
        sum(&[builtin("nobin0").unwrap(), builtin("nobin2").unwrap()]).unwrap(),
        power(&builtin("bool2[or]").unwrap(), 2).unwrap(),
        extend(&k, &Signature::from_pairs([("e", 0)]).unwrap()).unwrap(),
        prune(&parse_matrix("signature: c/0\nvalues: 0\ndesignated:\ntable c:\n : -\n").unwrap()).unwrap(),
    ];
    for m in outputs {
        let text = write_matrix(&m);
        let back = parse_matrix(&text).unwrap();
        assert_eq!(back, m);
        assert_eq!(write_matrix(&back), text);
    }
}
