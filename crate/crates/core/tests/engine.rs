mod common;

use common::{f1, fl, oracle_multiple, random_query};
use pnmatrix::engine::{
    check_countermodel, decide_multiple, decide_single, possible_values, CountermodelViolation, Decider,
};
use pnmatrix::fixtures::builtin;
use pnmatrix::matrix::{prune, strict_product, sum, viable_components};
use pnmatrix::{Countermodel, Formula, PNMatrix, ValueSet};
use rand::rngs::StdRng;
use rand::SeedableRng;

fn yes(m: &PNMatrix, g: &str, d: &str) -> bool {
    let v = decide_multiple(m, &fl(m, g), &fl(m, d)).unwrap();
    if let Some(cm) = &v.countermodel {
        check_countermodel(m, &fl(m, g), &fl(m, d), cm).unwrap();
    }
    v.is_yes()
}

#[test]
fn excluded_middle_in_classical_logic() {
    let b = builtin("bool2").unwrap();
    assert!(yes(&b, "", "p, neg(p)"));
    assert!(yes(&b, "p, imp(p, q)", "q"));
    assert!(!yes(&b, "", "p"));
}

#[test]
fn sources_premises_are_always_satisfiable() {
    let s = builtin("sources").unwrap();
    let v = decide_multiple(&s, &fl(&s, "p"), &[]).unwrap();
    assert!(v.is_no());
    // A_0 = p, A_{k+1} = or(p, A_k)
    let a2 = f1(&s, "or(p, or(p, p))");
    assert!(decide_single(&s, &[a2], &f1(&s, "p")).unwrap().is_no());
}

#[test]
fn kleene_disjunction_elimination() {
    let ks = builtin("kleene-ks").unwrap();
    assert!(yes(&ks, "or(p, q)", "p, q"));
    assert!(!yes(&ks, "or(p, q)", "p"));
}

#[test]
fn disjoint_implications_countermodel() {
    let m = strict_product(&builtin("kleene-impk").unwrap(), &builtin("luk-impl").unwrap()).unwrap();
    let v = decide_multiple(&m, &fl(&m, "impK(p, q)"), &fl(&m, "impL(p, q)")).unwrap();
    assert!(v.is_no());
    let cm = v.countermodel.unwrap();
    assert_eq!(cm.value_name(&m, &f1(&m, "p")), Some("0|h"));
    assert_eq!(cm.value_name(&m, &f1(&m, "q")), Some("0|0"));
}

#[test]
fn negation_conjunction_failure() {
    let m = strict_product(&builtin("neg3").unwrap(), &builtin("bool2[and]").unwrap()).unwrap();
    let v = decide_single(&m, &fl(&m, "neg(p)"), &f1(&m, "neg(and(p, p))")).unwrap();
    assert!(v.is_no());
    let cm = v.countermodel.unwrap();
    assert_eq!(cm.value_name(&m, &f1(&m, "p")), Some("0|0"));
    assert_eq!(cm.value_name(&m, &f1(&m, "neg(p)")), Some("1|1"));
    assert_eq!(cm.value_name(&m, &f1(&m, "and(p, p)")), Some("h|0"));
    assert_eq!(cm.value_name(&m, &f1(&m, "neg(and(p, p))")), Some("h|0"));
    assert!(decide_single(&m, &fl(&m, "neg(neg(p))"), &f1(&m, "p"))
        .unwrap()
        .is_yes());
}

#[test]
fn badly_behaved_sum_admits_mixed_valuation() {
    let ms = [builtin("nobin0").unwrap(), builtin("nobin2").unwrap()];
    let s = sum(&ms).unwrap();
    let v = decide_multiple(&s, &fl(&s, "at"), &fl(&s, "f(p)")).unwrap();
    assert!(v.is_no());
    let cm = v.countermodel.unwrap();
    assert_eq!(cm.value_name(&s, &f1(&s, "p")), Some("0.0"));
    assert_eq!(cm.value_name(&s, &f1(&s, "at")), Some("1.1"));
    // Each summand on its own validates the query.
    for m in &ms {
        assert!(yes(m, "at", "f(p)"));
    }
}

#[test]
fn possible_value_sets() {
    let ks = builtin("kleene-ks").unwrap();
    let b = ks.value_index("b").unwrap();
    assert_eq!(
        ks.names(&possible_values(&ks, &f1(&ks, "neg(p)"), b).unwrap()),
        vec!["b"]
    );
    let bn = builtin("bool2n").unwrap();
    for x in 0..2 {
        assert_eq!(possible_values(&bn, &f1(&bn, "botop"), x).unwrap().len(), 2);
    }
    let l = builtin("luk3").unwrap();
    let h = l.value_index("h").unwrap();
    assert_eq!(
        l.names(&possible_values(&l, &f1(&l, "imp(neg(p), p)"), h).unwrap()),
        vec!["1"]
    );
    assert_eq!(possible_values(&l, &f1(&l, "p"), h).unwrap(), ValueSet::singleton(h));
    // Spurious values admit nothing.
    let kl = strict_product(&builtin("kleene-imp").unwrap(), &builtin("luk-imp").unwrap()).unwrap();
    let spurious = kl.value_index("h|0").unwrap();
    assert!(possible_values(&kl, &f1(&kl, "imp(p, p)"), spurious)
        .unwrap()
        .is_empty());
}

#[test]
fn verdict_diagnostics_and_dedup() {
    let b = builtin("bool2").unwrap();
    let d = Decider::new(&b).unwrap();
    let v = d.decide_multiple(&fl(&b, "p, p"), &fl(&b, "p")).unwrap();
    assert!(v.is_yes());
    assert_eq!(v.stats.components, 1);
    let v = d.decide_multiple(&fl(&b, "and(p, q)"), &fl(&b, "or(q, r)")).unwrap();
    assert!(v.is_yes());
    assert_eq!(v.stats.components, 1);
    let v = d.decide_multiple(&fl(&b, "imp(p, q)"), &[]).unwrap();
    assert!(v.is_no());
    assert!(v.stats.assignments > 0);
}

#[test]
fn empty_carrier_decides_everything_yes() {
    let dead = pnmatrix::io::parse_matrix("signature: c/0\nvalues: 0\ndesignated:\ntable c:\n : -\n").unwrap();
    let p = prune(&dead).unwrap();
    assert!(yes(&p, "", ""));
    assert!(yes(&dead, "", "p"));
}

#[test]
fn ill_formed_queries_are_errors() {
    let b = builtin("bool2").unwrap();
    let bad = Formula::app("xor", vec![Formula::var("p"), Formula::var("q")]);
    assert!(decide_multiple(&b, &[bad], &[]).is_err());
    assert!(decide_multiple(&b, &[Formula::app("neg", vec![])], &[]).is_err());
}

#[test]
fn countermodel_checker_rejects_tampering() {
    let b = builtin("bool2").unwrap();
    let g = fl(&b, "or(p, q)");
    let d = fl(&b, "p");
    let v = decide_multiple(&b, &g, &d).unwrap();
    let cm = v.countermodel.unwrap();
    assert_eq!(check_countermodel(&b, &g, &d, &cm), Ok(()));

    let mut bad = cm.clone();
    for (f, val) in bad.assignment.iter_mut() {
        if f.to_string() == "or(p, q)" {
            *val = 1 - *val;
        }
    }
    let errs = check_countermodel(&b, &g, &d, &bad).unwrap_err();
    assert!(errs.iter().any(|e| matches!(e, CountermodelViolation::Table(_))));

    let kl = strict_product(&builtin("kleene-imp").unwrap(), &builtin("luk-imp").unwrap()).unwrap();
    let h0 = kl.value_index("h|0").unwrap();
    let p = Formula::var("p");
    let fake = Countermodel {
        assignment: vec![(p.clone(), h0)],
        component: ValueSet::singleton(h0),
    };
    let errs = check_countermodel(&kl, &[], &[p], &fake).unwrap_err();
    assert!(errs.contains(&CountermodelViolation::NotViable));
}

#[test]
fn countermodel_images_lie_in_reported_components() {
    let mut rng = StdRng::seed_from_u64(7);
    for name in ["kleene-ks", "sources", "bool2n", "luk3"] {
        let m = builtin(name).unwrap();
        let report = viable_components(&m).unwrap();
        let d = Decider::new(&m).unwrap();
        for _ in 0..100 {
            let (g, dl) = random_query(&mut rng, m.signature(), 2, 2, 2);
            let v = d.decide_multiple(&g, &dl).unwrap();
            if let Some(cm) = v.countermodel {
                let image: ValueSet = cm.assignment.iter().map(|(_, v)| *v).collect();
                assert!(report.components.iter().any(|w| image.is_subset(w)));
                assert_eq!(check_countermodel(&m, &g, &dl, &cm), Ok(()));
            }
        }
    }
}

#[test]
fn engine_agrees_with_oracle_on_a_small_corpus() {
    let mut rng = StdRng::seed_from_u64(11);
    for name in ["bool2", "kleene-ks", "neg3", "bool2n"] {
        let m = builtin(name).unwrap();
        for _ in 0..60 {
            let (g, d) = random_query(&mut rng, m.signature(), 2, 2, 2);
            let got = decide_multiple(&m, &g, &d).unwrap().is_yes();
            assert_eq!(got, oracle_multiple(&m, &g, &d), "{name}: {g:?} |> {d:?}");
        }
    }
}
