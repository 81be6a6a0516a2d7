use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use gradkill::constructions::{n_homogeneous_dual, relation_space, truncated_poly, variable_names};
use gradkill::graded_core::{kill_support_algebra, regrade_algebra, validate_algebra, GradedAlgebra};
use gradkill::json::{
    algebra_from_json, degree_set_from_json, field_of, module_from_json, to_value, windowed_map_from_json, AlgebraJson,
    DegreeSetJson, ModuleJson, WindowedMapJson,
};
use gradkill::lifting::{
    equivalence_harness, koszul_pipeline, lift_report, liftability_check, liftability_check_interval,
};
use gradkill::regrade_maps::is_pseudomorphism;
use gradkill::subsets::{
    enumerate_ring_supporting, is_left_modular, is_right_modular, is_ring_supporting, is_translation_of_interval,
    quotient_set, stabilizer, structure_decompose, DegreeSet, Orientation,
};
use gradkill::{with_field, Field, FieldKind};
use serde_json::{json, Value};

use crate::report::{brace, dims_line, module_line, set_line, table, verdict_json, verdict_line, Outcome};
use crate::{EquivalenceArgs, KoszulArgs, LiftArgs};

pub fn es(e: gradkill::Error) -> String {
    e.to_string()
}

pub fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn in_file<T>(path: &Path, r: gradkill::Result<T>) -> Result<T, String> {
    r.map_err(|e| format!("{}: {e}", path.display()))
}

pub fn read_set(path: &Path) -> Result<DegreeSet, String> {
    in_file(path, degree_set_from_json(&read(path)?))
}

pub fn file_field(path: &Path) -> Result<(String, FieldKind), String> {
    let text = read(path)?;
    let kind = in_file(path, field_of(&text))?;
    Ok((text, kind))
}

pub fn parse_field(s: &str) -> Result<FieldKind, String> {
    FieldKind::parse(s).ok_or_else(|| format!("unknown or unsupported field {s:?}"))
}

pub fn unsupported(kind: FieldKind) -> String {
    format!("no scalar type is compiled in for {}", kind.name())
}

/// `"lo,hi"` or `"hi"` (meaning `0,hi`).
pub fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let num = |t: &str| t.trim().parse::<i64>().map_err(|_| format!("bad window {s:?}"));
    match s.split_once(',') {
        Some((lo, hi)) => Ok((num(lo)?, num(hi)?)),
        None => Ok((0, num(s)?)),
    }
}

pub fn enumerate(n: i64, max_n: Option<i64>) -> Result<Outcome, String> {
    let hi = max_n.unwrap_or(n);
    if hi < n {
        return Err(format!("--max-n {hi} is below --n {n}"));
    }
    let mut docs = Vec::new();
    let mut text = String::new();
    for k in n..=hi {
        let sets = enumerate_ring_supporting(k).map_err(es)?;
        let mut doc = json!({ "n": k, "count": sets.len(), "subsets": sets });
        let _ = writeln!(text, "n = {k}: {} set(s)", sets.len());
        for s in &sets {
            let _ = writeln!(text, "  {}", brace(s));
        }
        if k == 1 {
            doc["note"] = json!("U = Z");
            let _ = writeln!(text, "  note: U = Z");
        }
        docs.push(doc);
    }
    let json = if max_n.is_some() {
        Value::Array(docs)
    } else {
        docs.remove(0)
    };
    Ok(Outcome::new(true, json, text))
}

fn orientation_name(o: Orientation) -> &'static str {
    match o {
        Orientation::Right => "right",
        Orientation::Left => "left",
    }
}

pub fn check_set(path: &Path) -> Result<Outcome, String> {
    let u = read_set(path)?;
    let v = is_ring_supporting(&u).map_err(es)?;
    let mut json = json!({
        "set": to_value(&DegreeSetJson::of(&u)),
        "ring_supporting": verdict_json(&v),
    });
    let mut text = set_line("U", &u) + "\n" + &verdict_line("ring-supporting", &v) + "\n";
    if v.holds {
        if let Ok(st) = stabilizer(&u) {
            json["stabilizer"] = to_value(&DegreeSetJson::of(&st));
            text += &set_line("stabilizer (U:U)", &st);
            text.push('\n');
        }
        if let Ok(d) = structure_decompose(&u) {
            json["structure"] = json!({
                "classification": format!("{:?}", d.classification),
                "intervals": d.intervals.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
                "period": d.period,
                "window_certified": d.window_certified,
            });
            let runs: Vec<String> = d.intervals.iter().map(|(a, b)| format!("[{a},{b}]")).collect();
            let _ = writeln!(text, "{:<28} {:?} {}", "structure", d.classification, runs.join(" "));
        }
        if let Ok(Some(t)) = is_translation_of_interval(&u) {
            json["interval_translation"] = json!({
                "orientation": orientation_name(t.orientation),
                "n": t.n,
                "r": t.r,
            });
            let _ = writeln!(
                text,
                "{:<28} {} n={} r={}",
                "interval translation",
                orientation_name(t.orientation),
                t.n,
                t.r
            );
        }
    }
    Ok(Outcome::new(v.holds, json, text))
}

pub fn check_pair(s_path: &Path, u_path: &Path, left: bool) -> Result<Outcome, String> {
    let s = read_set(s_path)?;
    let u = read_set(u_path)?;
    let v = if left {
        is_left_modular(&u, &s)
    } else {
        is_right_modular(&s, &u)
    }
    .map_err(es)?;
    let side = if left { "left" } else { "right" };
    let mut json = json!({
        "side": side,
        "s": to_value(&DegreeSetJson::of(&s)),
        "u": to_value(&DegreeSetJson::of(&u)),
        "modular": verdict_json(&v),
    });
    let mut text = set_line("S", &s) + "\n" + &set_line("U", &u) + "\n";
    text += &verdict_line(&format!("{side} modular"), &v);
    text.push('\n');
    if v.holds {
        if let Ok(q) = quotient_set(&s, &u) {
            json["quotient"] = to_value(&DegreeSetJson::of(&q));
            text += &set_line("(S:U)", &q);
            text.push('\n');
        }
    }
    Ok(Outcome::new(v.holds, json, text))
}

pub fn kill(alg_path: &Path, u_path: &Path) -> Result<Outcome, String> {
    let (text, kind) = file_field(alg_path)?;
    let u = read_set(u_path)?;
    with_field!(kind, F => kill_with::<F>(alg_path, &text, &u), else Err(unsupported(kind)))
}

fn kill_with<F: Field>(path: &Path, text: &str, u: &DegreeSet) -> Result<Outcome, String> {
    let a = Arc::new(in_file(path, algebra_from_json::<F>(text))?);
    let killed = kill_support_algebra(&a, u).map_err(es)?;
    let assoc = validate_algebra(&killed.algebra);
    let mut out = dims_line("A", &a) + "\n" + &set_line("U", u) + "\n";
    out += &dims_line("A_U", &killed.algebra);
    out.push('\n');
    out += &verdict_line("A_U associative", &assoc);
    out.push('\n');
    if assoc.holds {
        Ok(Outcome::object(true, to_value(&AlgebraJson::of(&*killed.algebra)), out))
    } else {
        let rs = is_ring_supporting(u).map(|v| verdict_json(&v)).unwrap_or(Value::Null);
        let json = json!({ "associative": verdict_json(&assoc), "ring_supporting": rs });
        Ok(Outcome::new(false, json, out))
    }
}

pub fn regrade(alg_path: &Path, map_path: &Path) -> Result<Outcome, String> {
    let (text, kind) = file_field(alg_path)?;
    let phi = in_file(map_path, windowed_map_from_json(&read(map_path)?))?;
    let v = is_pseudomorphism(&phi);
    if !v.holds {
        let json = json!({ "pseudomorphism": verdict_json(&v) });
        return Ok(Outcome::new(false, json, verdict_line("φ pseudomorphism", &v) + "\n"));
    }
    with_field!(kind, F => {
        let b = in_file(alg_path, algebra_from_json::<F>(&text))?;
        let bt = regrade_algebra(&b, &phi).map_err(es)?;
        let valid = validate_algebra(&bt);
        let mut out = dims_line("B", &b) + "\n" + &dims_line("B~", &bt) + "\n";
        out += &verdict_line("B~ valid", &valid);
        out.push('\n');
        if valid.holds {
            Ok(Outcome::object(true, to_value(&AlgebraJson::of(&bt)), out))
        } else {
            Ok(Outcome::new(false, json!({ "valid": verdict_json(&valid) }), out))
        }
    }, else Err(unsupported(kind)))
}

pub fn lift(args: &LiftArgs, produce: bool) -> Result<Outcome, String> {
    let (mtext, kind) = file_field(&args.module)?;
    let atext = read(&args.algebra)?;
    let s = read_set(&args.s)?;
    let u = read_set(&args.u)?;
    with_field!(kind, F => {
        let x = in_file(&args.module, module_from_json::<F>(&mtext))?;
        let a = Arc::new(in_file(&args.algebra, algebra_from_json::<F>(&atext))?);
        lift_with(args, produce, x, a, &s, &u)
    }, else Err(unsupported(kind)))
}

fn lift_with<F: Field>(
    args: &LiftArgs,
    produce: bool,
    x: gradkill::graded_core::GradedModule<F>,
    a: Arc<GradedAlgebra<F>>,
    s: &DegreeSet,
    u: &DegreeSet,
) -> Result<Outcome, String> {
    let report = if produce {
        lift_report(&x, s, u, &a)
    } else if args.interval {
        liftability_check_interval(&x, s, u, &a)
    } else {
        liftability_check(&x, s, u, &a)
    }
    .map_err(es)?;
    let v = report.verdict();
    let criterion = if args.interval && !produce {
        "interval"
    } else {
        "general"
    };
    let violations: Vec<Value> = report
        .violations
        .iter()
        .map(|w| {
            json!({
                "m": w.m,
                "u": w.u,
                "v": w.v,
                "witness": w.witness.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut text = module_line("X", &x) + "\n" + &set_line("S", s) + "\n" + &set_line("U", u) + "\n";
    let _ = writeln!(
        text,
        "{:<28} {} ({} conditions)",
        "criterion", criterion, report.conditions_checked
    );
    text += &verdict_line("liftable", &v);
    text.push('\n');
    if !report.violations.is_empty() {
        let rows: Vec<Vec<String>> = report
            .violations
            .iter()
            .map(|w| {
                let wit: Vec<String> = w.witness.iter().map(|c| c.to_string()).collect();
                vec![
                    w.m.to_string(),
                    w.u.to_string(),
                    w.v.to_string(),
                    format!("[{}]", wit.join(", ")),
                ]
            })
            .collect();
        text += &table(&["m", "u", "v", "witness"], &rows);
    }
    if produce {
        if let Some(m) = &report.lift {
            text += &module_line("lift M", m);
            text.push('\n');
            let _ = writeln!(text, "{:<28} {}", "M_S ≅ X certified", report.isomorphism_certified);
            return Ok(Outcome::object(true, to_value(&ModuleJson::of(m)), text));
        }
    }
    let json = json!({
        "criterion": criterion,
        "liftable": report.liftable,
        "verdict": verdict_json(&v),
        "conditions_checked": report.conditions_checked,
        "window_certified": report.window_certified,
        "violations": violations,
    });
    Ok(Outcome::new(report.liftable, json, text))
}

pub fn verify_equivalence(args: &EquivalenceArgs) -> Result<Outcome, String> {
    let (text, kind) = match &args.algebra {
        Some(p) => {
            let (t, k) = file_field(p)?;
            (Some(t), k)
        }
        None => (None, parse_field(&args.field)?),
    };
    let u = match &args.u {
        Some(p) => read_set(p)?,
        None => DegreeSet::periodic(3, [0, 1]).map_err(es)?,
    };
    let s = match &args.s {
        Some(p) => read_set(p)?,
        None => u.clone(),
    };
    with_field!(kind, F => {
        let a: GradedAlgebra<F> = match (&text, &args.algebra) {
            (Some(t), Some(p)) => in_file(p, algebra_from_json(t))?,
            _ => truncated_poly(7, 1, (0, 6)).map_err(es)?,
        };
        equivalence_with(args, Arc::new(a), &s, &u)
    }, else Err(unsupported(kind)))
}

fn equivalence_with<F: Field>(
    args: &EquivalenceArgs,
    a: Arc<GradedAlgebra<F>>,
    s: &DegreeSet,
    u: &DegreeSet,
) -> Result<Outcome, String> {
    let window = match &args.window {
        Some(w) => parse_window(w)?,
        None => (a.window().lo, a.window().hi),
    };
    let rep = equivalence_harness(&a, s, u, window, args.samples, args.seed).map_err(es)?;
    let rows: Vec<Vec<String>> = rep
        .samples
        .iter()
        .map(|h| {
            vec![
                h.index.to_string(),
                h.seed.to_string(),
                format!("{:?}", h.dims_m),
                format!("{:?}", h.dims_n),
                h.hom_full.to_string(),
                h.hom_killed.to_string(),
            ]
        })
        .collect();
    let mut text = dims_line("A", &a) + "\n" + &set_line("S", s) + "\n" + &set_line("U", u) + "\n";
    text += &table(&["#", "seed", "dims M", "dims N", "Hom_A", "Hom_A_U"], &rows);
    let _ = writeln!(text, "{:<28} {}", "all equal", rep.all_equal);
    let samples: Vec<Value> = rep
        .samples
        .iter()
        .map(|h| {
            json!({
                "index": h.index,
                "seed": h.seed,
                "dims_m": h.dims_m,
                "dims_n": h.dims_n,
                "hom_full": h.hom_full,
                "hom_killed": h.hom_killed,
            })
        })
        .collect();
    let json = json!({
        "field": F::field_name(),
        "window": [window.0, window.1],
        "seed": args.seed,
        "all_equal": rep.all_equal,
        "samples": samples,
    });
    Ok(Outcome::new(rep.all_equal, json, text))
}

pub fn koszul(args: &KoszulArgs) -> Result<Outcome, String> {
    let kind = parse_field(&args.field)?;
    with_field!(kind, F => koszul_with::<F>(args), else Err(unsupported(kind)))
}

fn koszul_with<F: Field>(args: &KoszulArgs) -> Result<Outcome, String> {
    if args.n < 2 {
        return Err(format!("--n must be at least 2, got {}", args.n));
    }
    let n = args.n as usize;
    let rels: Vec<String> = if args.rel.is_empty() {
        let x = variable_names(args.vdim)[0].clone();
        vec![vec![x; n].join("*")]
    } else {
        args.rel.clone()
    };
    let rel_refs: Vec<&str> = rels.iter().map(|s| s.as_str()).collect();
    let r = relation_space::<F>(args.vdim, n, &rel_refs).map_err(es)?;
    let a = Arc::new(n_homogeneous_dual(args.vdim, n, &r, args.window).map_err(es)?);
    let rep = koszul_pipeline(&a, args.n, args.m).map_err(es)?;
    let checks = [
        ("B~ valid", &rep.b_tilde_valid),
        ("Σ~ vanishing", &rep.vanishing),
        ("regular module in class", &rep.regular_membership),
        ("shifted U interval", &rep.shifted_interval),
        ("shifted module in class", &rep.shifted_membership),
    ];
    let holds = checks.iter().all(|(_, v)| v.holds);
    let (lo, hi) = rep.delta.window();
    let shown: Vec<String> = (lo.max(-2 * args.n)..=hi.min(2 * args.n))
        .map(|s| format!("{s}↦{}", rep.delta.eval(s).unwrap()))
        .collect();
    let mut text = dims_line("dual A", &a) + "\n" + &dims_line("A_U", &rep.killed) + "\n";
    let _ = writeln!(text, "{:<28} {}", "δ", shown.join(" "));
    text += &dims_line("B~", &rep.b_tilde);
    text.push('\n');
    text += &set_line("H'", &rep.h_prime);
    text.push('\n');
    for (label, v) in checks {
        text += &verdict_line(label, v);
        text.push('\n');
    }
    let json = json!({
        "n": args.n,
        "m": args.m,
        "relations": rels,
        "dual_dims": a.dims(),
        "killed_dims": rep.killed.dims(),
        "delta": to_value(&WindowedMapJson::of(&rep.delta)),
        "b_tilde": to_value(&AlgebraJson::of(&*rep.b_tilde)),
        "b_tilde_dims": rep.b_tilde.dims(),
        "h_prime": to_value(&DegreeSetJson::of(&rep.h_prime)),
        "h_prime_index": rep.h_prime_index,
        "b_tilde_valid": verdict_json(&rep.b_tilde_valid),
        "vanishing": verdict_json(&rep.vanishing),
        "regular_membership": verdict_json(&rep.regular_membership),
        "shifted_interval": verdict_json(&rep.shifted_interval),
        "shifted_membership": verdict_json(&rep.shifted_membership),
    });
    let mut out = Outcome::new(holds, json, text);
    out.object = Some(to_value(&AlgebraJson::of(&*rep.b_tilde)));
    Ok(out)
}
