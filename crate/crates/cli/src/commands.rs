//! Command implementations. Each returns the process exit code.

use pnmatrix::analysis::{
    find_separator, monadicity_report, refute_saturation, split_advice, SaturationBounds, SaturationSearch,
    SaturationWitness, SeparatorBounds, SplitBounds, SplitVerdict,
};
use pnmatrix::calculus::calculus_sound;
use pnmatrix::combine::{
    combine_multiple, combine_single_power, combine_single_saturated, decide_combined_ctx, decide_with_axioms,
    CombineError, CombinedLogic, CtxOptions, Mode,
};
use pnmatrix::engine::{decide_multiple, decide_single};
use pnmatrix::fixtures::{self, classical_calculus, implication_axioms, kleene_ks_calculus, sources_calculus};
use pnmatrix::io::{parse_rules, save_matrix, write_matrix};
use pnmatrix::matrix::{extend, power, prune, reduct, strict_product, sum, viable_components};
use pnmatrix::syntax::{closure, print_list};
use pnmatrix::{Answer, Formula, PNMatrix, Verdict};
use serde_json::{json, Value};

use crate::input::{self, Res};
use crate::{BuiltinCalculus, Cli, Command, ModeArg, OutArgs, QueryArgs, Route, SaturationArgs, SeparatorArgs};

const OK: u8 = 0;
const NO: u8 = 1;
const UNKNOWN: u8 = 2;

pub fn run(cli: &Cli) -> Res<u8> {
    let json = cli.json;
    match &cli.command {
        Command::Parse {
            formulas,
            matrix,
            signature,
        } => {
            let sig = match (matrix, signature) {
                (Some(m), _) => input::matrix(m)?.signature().clone(),
                (None, Some(s)) => input::signature(s)?,
                (None, None) => return Err("one of --matrix or --signature is required".into()),
            };
            let fs = input::formulas(formulas, &sig)?;
            if json {
                let items: Vec<Value> = fs
                    .iter()
                    .map(|f| {
                        json!({
                            "formula": f.to_string(),
                            "depth": f.depth(),
                            "vars": f.vars().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                emit(&json!({ "formulas": items, "closure": strings(&closure(&fs)) }));
            } else {
                for f in &fs {
                    println!("{f}  (depth {})", f.depth());
                }
                println!("closure: {}", print_list(&closure(&fs)));
            }
            Ok(OK)
        }
        Command::Info { matrix } => info(&input::matrix(matrix)?, json),
        Command::Product {
            left,
            right,
            prune: p,
            out,
        } => {
            let m = strict_product(&input::matrix(left)?, &input::matrix(right)?)?;
            let m = if *p { prune(&m)? } else { m };
            write_out(&m, out, json)
        }
        Command::Sum { matrices, out } => {
            let ms = matrices.iter().map(|a| input::matrix(a)).collect::<Res<Vec<_>>>()?;
            write_out(&sum(&ms)?, out, json)
        }
        Command::Power { matrix, k, out } => write_out(&power(&input::matrix(matrix)?, *k)?, out, json),
        Command::Extend { matrix, signature, out } => {
            let m = input::matrix(matrix)?;
            let big = m.signature().union(&input::signature(signature)?)?;
            write_out(&extend(&m, &big)?, out, json)
        }
        Command::Reduct {
            matrix,
            connectives,
            out,
        } => {
            let m = input::matrix(matrix)?;
            let sub = input::connectives(connectives, m.signature())?;
            write_out(&reduct(&m, &sub)?, out, json)
        }
        Command::Prune { matrix, out } => write_out(&prune(&input::matrix(matrix)?)?, out, json),
        Command::Decide { matrix, query } => {
            let m = input::matrix(matrix)?;
            let (g, d) = parse_query(query, &m)?;
            let v = match query.mode {
                ModeArg::Multiple => decide_multiple(&m, &g, &d)?,
                ModeArg::Single => decide_single(&m, &g, single(&d)?)?,
            };
            Ok(report_verdict(&m, &v, json, json!({})))
        }
        Command::CheckRules {
            matrix,
            rules,
            calculus,
        } => {
            let m = input::matrix(matrix)?;
            let calc = match (rules, calculus) {
                (Some(path), _) => parse_rules(&std::fs::read_to_string(path)?, m.signature())?,
                (None, Some(BuiltinCalculus::Classical)) => classical_calculus(),
                (None, Some(BuiltinCalculus::KleeneKs)) => kleene_ks_calculus(),
                (None, Some(BuiltinCalculus::Sources)) => sources_calculus(),
                (None, None) => unreachable!("clap requires one of --rules or --calculus"),
            };
            let report = calculus_sound(&m, &calc)?;
            if json {
                let rules: Vec<Value> = report
                    .entries
                    .iter()
                    .map(|(r, v)| {
                        json!({
                            "rule": r.to_string(),
                            "verdict": v.answer,
                            "countermodel": v.countermodel.as_ref().map(|c| assignment(&m, c)),
                        })
                    })
                    .collect();
                emit(&json!({ "verdict": if report.all_sound() { "sound" } else { "unsound" }, "rules": rules }));
            } else {
                for (r, v) in &report.entries {
                    let status = if v.is_yes() { "sound" } else { "UNSOUND" };
                    println!("{status:8} {r}");
                    if let Some(c) = &v.countermodel {
                        println!("         countermodel: {}", render(&m, c));
                    }
                }
                println!("{} sound, {} unsound", report.sound(), report.unsound());
            }
            Ok(if report.all_sound() { OK } else { NO })
        }
        Command::Separators { matrix, x, y, sep } => {
            let m = input::matrix(matrix)?;
            let sub = sub_signature(sep, &m)?;
            let bounds = separator_bounds(sep);
            if let (Some(x), Some(y)) = (x, y) {
                let (xi, yi) = (value(&m, x)?, value(&m, y)?);
                let s = find_separator(&m, xi, yi, &sub, bounds)?;
                if json {
                    emit(&json!({
                        "verdict": if s.separator.is_some() { "found" } else { "not-found" },
                        "separator": s.separator.as_ref().map(|f| f.to_string()),
                        "candidates": s.candidates,
                        "truncated": s.truncated,
                        "bounds": bounds,
                    }));
                } else {
                    match &s.separator {
                        Some(f) => println!("{x} / {y}: {f}"),
                        None => println!(
                            "{x} / {y}: not found ({} candidates{})",
                            s.candidates,
                            truncation(s.truncated)
                        ),
                    }
                }
                return Ok(if s.separator.is_some() { OK } else { UNKNOWN });
            }
            separator_table(&m, &sub, bounds, json)
        }
        Command::Monadic { matrix, sep } => {
            let m = input::matrix(matrix)?;
            let sub = sub_signature(sep, &m)?;
            separator_table(&m, &sub, separator_bounds(sep), json)
        }
        Command::RefuteSaturation { matrix, sat } => {
            let m = input::matrix(matrix)?;
            let s = refute_saturation(&m, saturation_bounds(sat))?;
            if json {
                emit(&saturation_json(&s));
            } else {
                print_saturation(&s);
            }
            Ok(if s.witness.is_some() { NO } else { UNKNOWN })
        }
        Command::SplitAdvice {
            matrix,
            left,
            right,
            samples,
            seed,
            sep,
            sat,
        } => {
            let m = input::matrix(matrix)?;
            let sig1 = input::connectives(left, m.signature())?;
            let sig2 = input::connectives(right, m.signature())?;
            let bounds = SplitBounds {
                separator: separator_bounds(sep),
                saturation: saturation_bounds(sat),
                samples: *samples,
                seed: *seed,
                ..Default::default()
            };
            let a = split_advice(&m, &sig1, &sig2, bounds)?;
            let divergence = a.divergence.as_ref().map(|d| {
                json!({
                    "premises": strings(&d.premises),
                    "conclusions": strings(&d.conclusions),
                    "over_matrix": d.over_matrix,
                    "over_product": d.over_product,
                    "countermodel": d.countermodel.as_ref().map(|c| assignment(&a.product, c)),
                })
            });
            if json {
                emit(&json!({
                    "verdict": a.verdict,
                    "shared": a.shared.to_string(),
                    "monadic": a.monadicity.monadic(),
                    "separators": strings(&a.monadicity.separators()),
                    "witness": a.saturation.witness.as_ref().map(witness_json),
                    "divergence": divergence,
                    "queries_checked": a.queries_checked,
                    "bounds": a.bounds,
                }));
            } else {
                println!("verdict: {}", a.verdict);
                println!("shared: {}", a.shared);
                let seps = a.monadicity.separators();
                println!(
                    "shared part monadic: {}{}",
                    a.monadicity.monadic(),
                    if seps.is_empty() {
                        String::new()
                    } else {
                        format!(" (separators {})", print_list(&seps))
                    }
                );
                match &a.saturation.witness {
                    Some(w) => println!("saturation witness: {}", show_witness(w)),
                    None => println!("saturation witness: none within bounds"),
                }
                match &a.divergence {
                    Some(d) => {
                        println!(
                            "divergence: {} |> {}: {} in the matrix, {} in the product",
                            side(&d.premises),
                            side(&d.conclusions),
                            d.over_matrix,
                            d.over_product
                        );
                        if let Some(c) = &d.countermodel {
                            println!("countermodel: {}", render(&a.product, c));
                        }
                    }
                    None => println!("no divergence in {} queries", a.queries_checked),
                }
            }
            Ok(match a.verdict {
                SplitVerdict::SplitSafeMultiple | SplitVerdict::SplitSafeSingleConditional => OK,
                SplitVerdict::UnsafeEvidence => NO,
                SplitVerdict::Inconclusive => UNKNOWN,
            })
        }
        Command::Combine {
            pair,
            mode,
            prune: p,
            powers,
            sat,
            out,
        } => {
            let (m1, m2) = (input::matrix(&pair.left)?, input::matrix(&pair.right)?);
            let known = [
                pair.left_saturated || fixtures::known_saturated(&pair.left),
                pair.right_saturated || fixtures::known_saturated(&pair.right),
            ];
            let combined = match (mode, powers) {
                (ModeArg::Multiple, _) => combine_multiple(&m1, &m2, *p),
                (ModeArg::Single, Some(k)) => combine_single_power(&m1, &m2, k[0], k[1], Some(saturation_bounds(sat))),
                (ModeArg::Single, None) => combine_single_saturated(&m1, &m2, known, saturation_bounds(sat)),
            };
            let c = match combined {
                Err(CombineError::SaturationRefuted { component, witness }) => {
                    if json {
                        emit(
                            &json!({ "verdict": "refuted", "component": component, "witness": witness_json(&witness) }),
                        );
                    } else {
                        println!("component {component} is not saturated: {}", show_witness(&witness));
                    }
                    return Ok(NO);
                }
                other => other?,
            };
            report_combined(&c, out, json)
        }
        Command::DecideCombined {
            pair,
            query,
            route,
            ctx_extra,
            max_free,
        } => {
            let (m1, m2) = (input::matrix(&pair.left)?, input::matrix(&pair.right)?);
            let sig = m1.signature().union(m2.signature())?;
            let g = input::formulas(&query.premises, &sig)?;
            let d = input::formulas(&query.conclusions, &sig)?;
            match route {
                Route::Product => {
                    let p = strict_product(&m1, &m2)?;
                    let v = match query.mode {
                        ModeArg::Multiple => decide_multiple(&p, &g, &d)?,
                        ModeArg::Single => decide_single(&p, &g, single(&d)?)?,
                    };
                    let certified = p.is_total()
                        && (matches!(query.mode, ModeArg::Multiple) || pair.left_saturated && pair.right_saturated);
                    Ok(report_verdict(
                        &p,
                        &v,
                        json,
                        json!({ "route": "product", "certified": certified }),
                    ))
                }
                Route::Partition => {
                    let mode = match query.mode {
                        ModeArg::Multiple => Mode::Multiple,
                        ModeArg::Single => Mode::Single,
                    };
                    let opts = CtxOptions {
                        ctx_extra: input::formulas(ctx_extra, &sig)?,
                        assume_saturated: pair.left_saturated && pair.right_saturated,
                        max_free: *max_free,
                    };
                    let v = decide_combined_ctx(&m1, &m2, mode, &g, &d, &opts)?;
                    if json {
                        emit(&json!({
                            "verdict": v.answer,
                            "route": "partition",
                            "certified": v.certified,
                            "context": strings(&v.ctx),
                            "partitions": v.partitions,
                            "failing": v.failing.as_ref().map(|f| json!({ "under": strings(&f.under), "over": strings(&f.over) })),
                        }));
                    } else {
                        println!("verdict: {}", v.answer);
                        println!("certified: {}", v.certified);
                        println!("context: {} formulas, {} partitions checked", v.ctx.len(), v.partitions);
                        if let Some(f) = &v.failing {
                            println!(
                                "failing partition: under {{{}}}, over {{{}}}",
                                print_list(&f.under),
                                print_list(&f.over)
                            );
                        }
                    }
                    Ok(answer_code(v.answer))
                }
            }
        }
        Command::AxiomDerive {
            matrix,
            axioms,
            signature,
            premises,
            conclusion,
            depth,
        } => {
            let m = input::matrix(matrix)?;
            let extra = match signature {
                Some(text) => input::signature(text)?,
                None => pnmatrix::Signature::new(),
            };
            let mut sig = m.signature().union(&extra)?;
            let ax = match axioms {
                Some(text) => input::formulas(text, &sig)?,
                None => implication_axioms(),
            };
            let mut conns = std::collections::BTreeMap::new();
            for f in &ax {
                f.connectives(&mut conns);
            }
            for (c, a) in conns {
                sig.insert(&c, a)?;
            }
            let g = input::formulas(premises, &sig)?;
            let a = input::formula(conclusion, &sig)?;
            let v = decide_with_axioms(&m, &ax, &g, &a, *depth)?;
            if json {
                emit(&json!({ "verdict": v.answer, "note": v.note, "bounds": { "depth": depth } }));
            } else {
                println!("verdict: {}", v.answer);
                if let Some(n) = &v.note {
                    println!("note: {n}");
                }
            }
            Ok(answer_code(v.answer))
        }
        Command::Fixtures { name } => {
            match name {
                Some(n) => {
                    let m = fixtures::builtin(n)?;
                    if json {
                        emit(&matrix_json(&m));
                    } else {
                        print!("{}", write_matrix(&m));
                    }
                }
                None if json => {
                    let list: Vec<Value> = fixtures::all()
                        .iter()
                        .map(|f| {
                            json!({
                                "name": f.name,
                                "description": f.description,
                                "kind": f.kind.to_string(),
                                "known_saturated": f.known_saturated,
                            })
                        })
                        .collect();
                    emit(&json!({ "fixtures": list }));
                }
                None => {
                    for f in fixtures::all() {
                        let sat = if f.known_saturated { ", saturated" } else { "" };
                        println!("{:12} {} ({}{sat})", f.name, f.description, f.kind);
                    }
                }
            }
            Ok(OK)
        }
    }
}

fn emit(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("JSON values serialize"));
}

fn strings(fs: &[Formula]) -> Vec<String> {
    fs.iter().map(|f| f.to_string()).collect()
}

fn side(fs: &[Formula]) -> String {
    format!("{{{}}}", print_list(fs))
}

fn truncation(t: bool) -> &'static str {
    if t {
        ", truncated"
    } else {
        ""
    }
}

fn value(m: &PNMatrix, name: &str) -> Res<usize> {
    m.value_index(name)
        .ok_or_else(|| format!("unknown value `{name}`; values are {}", m.values().join(" ")).into())
}

fn single(d: &[Formula]) -> Res<&Formula> {
    match d {
        [a] => Ok(a),
        _ => Err(format!("single mode needs exactly one conclusion, found {}", d.len()).into()),
    }
}

fn parse_query(q: &QueryArgs, m: &PNMatrix) -> Res<(Vec<Formula>, Vec<Formula>)> {
    Ok((
        input::formulas(&q.premises, m.signature())?,
        input::formulas(&q.conclusions, m.signature())?,
    ))
}

fn answer_code(a: Answer) -> u8 {
    match a {
        Answer::Yes => OK,
        Answer::No => NO,
        Answer::Unknown => UNKNOWN,
    }
}

fn assignment(m: &PNMatrix, c: &pnmatrix::Countermodel) -> Value {
    Value::Array(
        c.render(m)
            .into_iter()
            .map(|(f, v)| json!({ "formula": f, "value": v }))
            .collect(),
    )
}

fn render(m: &PNMatrix, c: &pnmatrix::Countermodel) -> String {
    c.render(m)
        .iter()
        .map(|(f, v)| format!("{f} = {v}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn report_verdict(m: &PNMatrix, v: &Verdict, json: bool, extra: Value) -> u8 {
    if json {
        let mut out = json!({
            "verdict": v.answer,
            "countermodel": v.countermodel.as_ref().map(|c| assignment(m, c)),
            "components": v.stats.components,
            "assignments": v.stats.assignments,
            "note": v.note,
        });
        if let (Value::Object(o), Value::Object(e)) = (&mut out, extra) {
            o.extend(e);
        }
        emit(&out);
    } else {
        println!("verdict: {}", v.answer);
        if let Some(c) = &v.countermodel {
            println!("countermodel: {}", render(m, c));
        }
        if let Some(n) = &v.note {
            println!("note: {n}");
        }
        if let Value::Object(e) = extra {
            for (k, val) in e {
                println!("{k}: {val}");
            }
        }
    }
    answer_code(v.answer)
}

fn matrix_json(m: &PNMatrix) -> Value {
    json!({
        "signature": m.signature().to_string(),
        "values": m.values(),
        "designated": m.names(m.designated()),
        "kind": m.classify().to_string(),
        "text": write_matrix(m),
    })
}

fn write_out(m: &PNMatrix, out: &OutArgs, json: bool) -> Res<u8> {
    if let Some(path) = &out.out {
        save_matrix(m, path)?;
    }
    if json {
        emit(&matrix_json(m));
    } else if let Some(path) = &out.out {
        println!("wrote {} values to {}", m.len(), path.display());
    } else {
        print!("{}", write_matrix(m));
    }
    Ok(OK)
}

fn info(m: &PNMatrix, json: bool) -> Res<u8> {
    let r = viable_components(m)?;
    let components = r.component_names(m);
    if json {
        emit(&json!({
            "signature": m.signature().to_string(),
            "values": m.values(),
            "designated": m.names(m.designated()),
            "kind": m.classify().to_string(),
            "total": m.is_total(),
            "deterministic": m.is_deterministic(),
            "components": components,
            "usable": m.names(&r.usable),
            "spurious": m.names(&r.spurious),
        }));
    } else {
        println!("signature: {}", m.signature());
        println!("values: {} ({})", m.len(), m.values().join(" "));
        println!("designated: {}", m.names(m.designated()).join(" "));
        println!("kind: {}", m.classify());
        println!("usable: {} ({})", r.usable.len(), m.names(&r.usable).join(" "));
        let spurious = m.names(&r.spurious);
        println!(
            "spurious: {}",
            if spurious.is_empty() {
                "none".to_string()
            } else {
                spurious.join(" ")
            }
        );
        println!("total components: {}", components.len());
        for c in &components {
            println!("  {{{}}}", c.join(", "));
        }
    }
    Ok(OK)
}

fn sub_signature(sep: &SeparatorArgs, m: &PNMatrix) -> Res<pnmatrix::Signature> {
    match &sep.connectives {
        Some(c) => input::connectives(c, m.signature()),
        None => Ok(m.signature().clone()),
    }
}

fn separator_bounds(sep: &SeparatorArgs) -> SeparatorBounds {
    SeparatorBounds {
        depth: sep.depth,
        max_candidates: sep.max_candidates,
    }
}

fn separator_table(m: &PNMatrix, sub: &pnmatrix::Signature, bounds: SeparatorBounds, json: bool) -> Res<u8> {
    let t = monadicity_report(m, sub, bounds)?;
    if json {
        let pairs: Vec<Value> = t
            .entries
            .iter()
            .map(|(x, y, s)| json!({ "x": m.value_name(*x), "y": m.value_name(*y), "separator": s.as_ref().map(|f| f.to_string()) }))
            .collect();
        emit(&json!({
            "verdict": if t.monadic() { "monadic" } else { "not-established" },
            "pairs": pairs,
            "separators": strings(&t.separators()),
            "candidates": t.candidates,
            "truncated": t.truncated,
            "bounds": t.bounds,
        }));
    } else {
        for (x, y, s) in &t.entries {
            let shown = s.as_ref().map_or("not found".to_string(), |f| f.to_string());
            println!("{} / {}: {shown}", m.value_name(*x), m.value_name(*y));
        }
        if t.monadic() {
            println!("monadic with separators {{{}}}", print_list(&t.separators()));
        } else {
            println!(
                "not shown monadic within depth {} ({} candidates{})",
                t.bounds.depth,
                t.candidates,
                truncation(t.truncated)
            );
        }
    }
    Ok(if t.monadic() { OK } else { UNKNOWN })
}

fn saturation_bounds(s: &SaturationArgs) -> SaturationBounds {
    SaturationBounds {
        max_premises: s.max_premises,
        max_conclusions: s.max_conclusions,
        premise_depth: s.premise_depth,
        conclusion_depth: s.conclusion_depth,
        max_vars: s.max_vars,
    }
}

fn witness_json(w: &SaturationWitness) -> Value {
    json!({ "premises": strings(&w.premises), "conclusions": strings(&w.conclusions) })
}

fn show_witness(w: &SaturationWitness) -> String {
    format!("{} |> {}", side(&w.premises), side(&w.conclusions))
}

fn saturation_json(s: &SaturationSearch) -> Value {
    json!({
        "verdict": if s.witness.is_some() { "refuted" } else { "inconclusive" },
        "witness": s.witness.as_ref().map(witness_json),
        "premise_sets": s.premise_sets,
        "exact_checks": s.exact_checks,
        "bounds": s.bounds,
    })
}

fn print_saturation(s: &SaturationSearch) {
    match &s.witness {
        Some(w) => {
            println!("not saturated: {}", show_witness(w));
            println!("the premises entail the conclusions jointly but none of them alone");
        }
        None => println!(
            "no witness within bounds ({} premise sets, {} exact checks)",
            s.premise_sets, s.exact_checks
        ),
    }
}

fn report_combined(c: &CombinedLogic, out: &OutArgs, json: bool) -> Res<u8> {
    if let Some(path) = &out.out {
        save_matrix(&c.matrix, path)?;
    }
    if json {
        let mut v = matrix_json(&c.matrix);
        if let Value::Object(o) = &mut v {
            o.insert("basis".into(), json!(c.basis));
            o.insert("total".into(), json!(c.total));
            o.insert("pruned".into(), json!(c.pruned));
            o.insert(
                "saturation".into(),
                Value::Array(
                    c.saturation
                        .iter()
                        .map(|s| s.as_ref().map_or(Value::Null, saturation_json))
                        .collect(),
                ),
            );
        }
        emit(&v);
    } else {
        println!("basis: {}", c.basis);
        println!("product total: {}", c.total);
        println!("values: {} ({})", c.matrix.len(), c.matrix.values().join(" "));
        for (i, s) in c.saturation.iter().enumerate() {
            if let Some(s) = s {
                print!("component {}: ", i + 1);
                print_saturation(s);
            }
        }
        match &out.out {
            Some(path) => println!("wrote {}", path.display()),
            None => print!("{}", write_matrix(&c.matrix)),
        }
    }
    Ok(OK)
}
