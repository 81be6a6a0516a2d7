//! The twelve acceptance criteria, one pass/fail line each.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

use gradkill::constructions::{
    group_algebra, loops, n_homogeneous_dual, parse_relation, quiver_algebra, relation_space, truncated_poly, Arrow,
};
use gradkill::graded_core::{
    kill_support_algebra, kill_support_module_over, regrade_module, sigma_tilde_vanishing, un_regrade_module,
    validate_algebra, GradedAlgebra, GradedModule, Window,
};
use gradkill::lifting::{
    equivalence_harness, koszul_pipeline, liftability_check, liftability_check_interval, random_g_module,
    random_killed_module, verify_round_trip, RelationDegrees, SampleShape,
};
use gradkill::regrade_maps::{delta_map, is_pseudomorphism};
use gradkill::subsets::{
    enumerate_ring_supporting, is_ring_supporting, is_translation_of_interval, stabilizer, DegreeSet, GradedGroup,
    Orientation,
};
use gradkill::{Gf101, Rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);
type HarnessRun = (Arc<GradedAlgebra<Gf101>>, (i64, i64), usize);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

// Definitional oracles on residues mod n.

fn ring_supporting_mod(n: i64, j: &BTreeSet<i64>) -> bool {
    let has = |x: i64| j.contains(&x.rem_euclid(n));
    for &u in j {
        for &v in j {
            for &w in j {
                if has(u + v + w) && has(u + v) != has(v + w) {
                    return false;
                }
            }
        }
    }
    true
}

fn trivial_stabilizer_mod(n: i64, j: &BTreeSet<i64>) -> bool {
    (1..n).all(|d| j.iter().any(|&x| !j.contains(&(x + d).rem_euclid(n))))
}

fn subsets_with_zero(n: i64) -> impl Iterator<Item = BTreeSet<i64>> {
    (0u32..(1 << (n - 1))).map(move |mask| {
        let mut j = BTreeSet::from([0]);
        j.extend((1..n).filter(|i| mask & (1 << (i - 1)) != 0));
        j
    })
}

fn c1_enumeration() -> Outcome {
    let expected: [Vec<Vec<i64>>; 5] = [
        vec![vec![0]],
        vec![vec![0]],
        vec![vec![0], vec![0, 1], vec![0, 2]],
        vec![vec![0], vec![0, 1], vec![0, 3]],
        vec![
            vec![0],
            vec![0, 1],
            vec![0, 4],
            vec![0, 1, 2],
            vec![0, 3, 4],
            vec![0, 2],
            vec![0, 3],
            vec![0, 1, 3],
            vec![0, 2, 4],
        ],
    ];
    let mut counts = Vec::new();
    for (idx, want) in expected.iter().enumerate() {
        let n = idx as i64 + 1;
        let got = enumerate_ring_supporting(n).map_err(err)?;
        let got_set: BTreeSet<Vec<i64>> = got.iter().cloned().collect();
        let want_set: BTreeSet<Vec<i64>> = want.iter().cloned().collect();
        ensure(got.len() == want.len() && got_set == want_set, || {
            format!("n = {n}: got {got:?}")
        })?;
        counts.push(got.len());
    }
    Ok(format!("counts {counts:?}"))
}

fn c2_oracle() -> Outcome {
    let mut total = 0;
    for n in 1..=12i64 {
        let got: BTreeSet<Vec<i64>> = enumerate_ring_supporting(n).map_err(err)?.into_iter().collect();
        let want: BTreeSet<Vec<i64>> = subsets_with_zero(n)
            .filter(|j| ring_supporting_mod(n, j) && trivial_stabilizer_mod(n, j))
            .map(|j| j.into_iter().collect())
            .collect();
        ensure(got == want, || format!("n = {n}: enumerator and brute force differ"))?;
        total += got.len();
    }
    Ok(format!("{total} sets over n = 1..12"))
}

fn c3_kill_associativity() -> Outcome {
    let mut checked = 0;
    for n in 1..=8i64 {
        let a = Arc::new(group_algebra::<Gf101>(n).map_err(err)?);
        for j in subsets_with_zero(n) {
            let u = DegreeSet::periodic(n, j.iter().copied()).map_err(err)?;
            let killed = kill_support_algebra(&a, &u).map_err(err)?;
            let assoc = validate_algebra(&killed.algebra).holds;
            let rs = is_ring_supporting(&u).map_err(err)?.holds;
            ensure(assoc == rs, || {
                format!("n = {n}, U = {j:?}: associative {assoc}, ring-supporting {rs}")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} subsets"))
}

fn c4_stabilizer() -> Outcome {
    let mut checked = 0;
    for n in 1..=12i64 {
        for j in enumerate_ring_supporting(n).map_err(err)? {
            let u = DegreeSet::periodic(n, j.clone()).map_err(err)?;
            let st = stabilizer(&u).map_err(err)?;
            let sym = u.intersection(&u.negate()).map_err(err)?;
            ensure(st.same_set(&sym), || {
                format!("n = {n}, U = {j:?}: (U:U) = {st}, U ∩ -U = {sym}")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} sets"))
}

fn is_cyclic_arc(n: i64, j: &BTreeSet<i64>) -> bool {
    let len = j.len() as i64;
    (0..n).any(|start| (0..len).all(|k| j.contains(&(start + k).rem_euclid(n))))
}

fn c5_interval_translation() -> Outcome {
    let mut checked = 0;
    for n in 2..=12i64 {
        let nz = DegreeSet::periodic(n, [0]).map_err(err)?;
        for j in subsets_with_zero(n) {
            let u = DegreeSet::periodic(n, j.iter().copied()).map_err(err)?;
            if !stabilizer(&u).map_err(err)?.same_set(&nz) {
                continue;
            }
            let detected = is_translation_of_interval(&u).map_err(err)?.is_some();
            let item1 = is_ring_supporting(&u).map_err(err)?.holds && is_cyclic_arc(n, &j);
            let mut item2 = false;
            for r in 0..n {
                if 2 * r >= n {
                    break;
                }
                for o in [Orientation::Right, Orientation::Left] {
                    if DegreeSet::interval_translation(o, n, r).map_err(err)?.same_set(&u) {
                        item2 = true;
                    }
                }
            }
            ensure(detected == item1 && item1 == item2, || {
                format!("n = {n}, U = {j:?}: detector {detected}, item 1 {item1}, item 2 {item2}")
            })?;
            checked += 1;
        }
        for r in 0..n {
            if 2 * r >= n {
                break;
            }
            for o in [Orientation::Right, Orientation::Left] {
                let u = DegreeSet::interval_translation(o, n, r).map_err(err)?;
                let t = is_translation_of_interval(&u)
                    .map_err(err)?
                    .ok_or_else(|| format!("{u} not detected"))?;
                let o_expected = if r == 0 { Orientation::Right } else { o };
                ensure(t.n == n && t.r == r && t.orientation == o_expected, || {
                    format!("{u}: detected {t:?}")
                })?;
                ensure(is_ring_supporting(&u).map_err(err)?.holds, || {
                    format!("{u} not ring-supporting")
                })?;
            }
        }
    }
    Ok(format!("{checked} sets with stabilizer nZ"))
}

fn c6_delta() -> Outcome {
    let mut checked = 0;
    for n in 2..=12i64 {
        for r in (0..n).take_while(|r| 2 * r < n) {
            for o in [Orientation::Right, Orientation::Left] {
                let u = DegreeSet::interval_translation(o, n, r).map_err(err)?;
                let delta = delta_map(&u, 0, (-50, 50)).map_err(err)?;
                let v = is_pseudomorphism(&delta);
                ensure(v.holds, || format!("{u}: {v}"))?;
                // Independent enumeration: the members of U in order, indexed from 0.
                let members = u.members_in(-2000, 2000);
                let zero = members.iter().position(|&x| x == 0).unwrap() as i64;
                for sigma in -50..=50i64 {
                    let want = members[(zero + sigma) as usize];
                    ensure(delta.eval(sigma).map_err(err)? == want, || {
                        format!("{u}: δ({sigma}) ≠ {want}")
                    })?;
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} interval translations"))
}

fn alg_poly(top: i64) -> Arc<GradedAlgebra<Gf101>> {
    Arc::new(truncated_poly(top as usize + 1, 1, (0, top)).unwrap())
}

fn alg_relations(names: &[&str], rels: &[&str], top: i64) -> Arc<GradedAlgebra<Gf101>> {
    let arrows = loops(names);
    let rels: Vec<_> = rels
        .iter()
        .map(|r| parse_relation::<Gf101>(r, &arrows).unwrap())
        .collect();
    Arc::new(quiver_algebra(1, &arrows, &rels, top).unwrap())
}

fn alg_kronecker_cycle(top: i64) -> Arc<GradedAlgebra<Gf101>> {
    let arrow = |name: &str, source, target| Arrow {
        name: name.into(),
        source,
        target,
    };
    let arrows = vec![arrow("a", 0, 1), arrow("b", 0, 1), arrow("c", 1, 0)];
    let rel = parse_relation::<Gf101>("c*a", &arrows).unwrap();
    Arc::new(quiver_algebra(2, &arrows, &[rel], top).unwrap())
}

fn zwin(lo: i64, hi: i64) -> Window {
    Window::new(GradedGroup::Integers, lo, hi).unwrap()
}

fn c7_liftability_consistency() -> Outcome {
    let mut instances = 0;
    let mut liftable = 0;
    let configs = [
        (Orientation::Right, 3, 1),
        (Orientation::Left, 3, 1),
        (Orientation::Right, 4, 1),
        (Orientation::Left, 5, 2),
    ];
    for (o, n, r) in configs {
        let top = 2 * n;
        let algebras: Vec<(&str, Arc<GradedAlgebra<Gf101>>)> = vec![
            ("K[x]", alg_poly(top)),
            (
                "K<x,y>/(x²,y²,yx)",
                alg_relations(&["x", "y"], &["x*x", "y*y", "y*x"], top),
            ),
            ("K<x,y>/(yx)", alg_relations(&["x", "y"], &["y*x"], top)),
            ("cycle quiver", alg_kronecker_cycle(top)),
        ];
        let u = DegreeSet::interval_translation(o, n, r).map_err(err)?;
        for (name, a) in &algebras {
            let killed = kill_support_algebra(a, &u).map_err(err)?;
            for m in [0, 1] {
                let s = u.shifted(m);
                let w = zwin(m, m + top);
                for seed in 0..4u64 {
                    let mut rng = ChaCha8Rng::seed_from_u64(1000 * n as u64 + 100 * m as u64 + seed);
                    let x = random_killed_module(
                        &killed,
                        &s,
                        &u,
                        w,
                        RelationDegrees::Support,
                        SampleShape::default(),
                        &mut rng,
                    )
                    .map_err(err)?;
                    let general = liftability_check(&x, &s, &u, a).map_err(err)?;
                    let interval = liftability_check_interval(&x, &s, &u, a).map_err(err)?;
                    ensure(general.liftable == interval.liftable, || {
                        format!(
                            "{name}, U = {u}, S = {s}, seed {seed}: general {} vs interval {}",
                            general.liftable, interval.liftable
                        )
                    })?;
                    instances += 1;
                    liftable += general.liftable as usize;
                }
            }
        }
    }
    ensure(instances >= 100, || format!("only {instances} instances"))?;
    ensure(liftable > 0 && liftable < instances, || {
        format!("degenerate sample: {liftable} of {instances} liftable")
    })?;
    Ok(format!(
        "{instances} modules over 4 algebras, {liftable} liftable, {} not",
        instances - liftable
    ))
}

fn c8_round_trip() -> Outcome {
    let mut count = 0;
    for n in [3i64, 4, 5] {
        let top = 2 * n;
        let u = DegreeSet::periodic(n, [0, 1]).map_err(err)?;
        for (ai, a) in [alg_poly(top), alg_relations(&["x", "y"], &["y*x"], top)]
            .iter()
            .enumerate()
        {
            for seed in 0..9u64 {
                let m_shift = (seed % 2) as i64;
                let s = u.shifted(m_shift);
                let w = zwin(m_shift, m_shift + top);
                let mut rng = ChaCha8Rng::seed_from_u64(seed + 50 * n as u64 + 7 * ai as u64);
                let m = random_g_module(a, &s, &u, w, SampleShape::default(), &mut rng).map_err(err)?;
                let ok = verify_round_trip(&m, &s, &u, &mut rng).map_err(err)?;
                ensure(ok, || {
                    format!("n = {n}, algebra {ai}, seed {seed}: no isomorphism certified")
                })?;
                count += 1;
            }
        }
    }
    ensure(count >= 50, || format!("only {count} modules"))?;
    Ok(format!("{count} modules lifted back up to certified isomorphism"))
}

fn c9_hom_dimensions() -> Outcome {
    let u = DegreeSet::periodic(3, [0, 1]).map_err(err)?;
    let mut pairs = 0;
    let mut nonzero = 0;
    let runs: [HarnessRun; 3] = [
        (alg_relations(&["x", "y"], &["y*x"], 4), (0, 4), 20),
        (alg_poly(6), (0, 6), 10),
        (alg_kronecker_cycle(6), (0, 6), 10),
    ];
    for (i, (a, w, samples)) in runs.iter().enumerate() {
        let rep = equivalence_harness(a, &u, &u, *w, *samples, 90 + i as u64).map_err(err)?;
        if let Some(bad) = rep.samples.iter().find(|h| h.hom_full != h.hom_killed) {
            return Err(format!("run {i}: {bad:?}"));
        }
        pairs += rep.samples.len();
        nonzero += rep.samples.iter().filter(|h| h.hom_full > 0).count();
    }
    Ok(format!("{pairs} pairs, {nonzero} with nonzero Hom"))
}

fn c10_presented() -> Outcome {
    let mut count = 0;
    for (o, n, r) in [
        (Orientation::Right, 3, 1),
        (Orientation::Left, 3, 1),
        (Orientation::Right, 5, 2),
    ] {
        let top = 2 * n;
        let u = DegreeSet::interval_translation(o, n, r).map_err(err)?;
        for a in [alg_poly(top), alg_relations(&["x", "y"], &["y*x"], top)] {
            let killed = kill_support_algebra(&a, &u).map_err(err)?;
            for seed in 0..6u64 {
                let m = (seed % 3) as i64;
                let s = u.shifted(m);
                let mut rng = ChaCha8Rng::seed_from_u64(seed + 13 * n as u64);
                let shape = SampleShape {
                    max_generators: 2,
                    max_relations: 4,
                };
                let x = random_killed_module(
                    &killed,
                    &s,
                    &u,
                    zwin(m, m + top),
                    RelationDegrees::Quotient,
                    shape,
                    &mut rng,
                )
                .map_err(err)?;
                let rep = liftability_check(&x, &s, &u, &a).map_err(err)?;
                ensure(rep.liftable, || format!("U = {u}, seed {seed}: {}", rep.verdict()))?;
                count += 1;
            }
        }
    }
    ensure(count >= 30, || format!("only {count} modules"))?;
    Ok(format!("{count} presented modules liftable"))
}

fn c11_regrade() -> Outcome {
    let mut modules = 0;
    let mut pipelines = 0;
    for n in [3i64, 4, 5] {
        let top = 2 * n;
        let u = DegreeSet::periodic(n, [0, 1]).map_err(err)?;
        let a = alg_relations(&["x", "y"], &["y*x"], top);
        let rep = koszul_pipeline(&a, n, 0).map_err(err)?;
        let reg = GradedModule::regular(rep.b_tilde.clone()).map_err(err)?;
        ensure(sigma_tilde_vanishing(&reg, &rep.delta).holds, || {
            format!("n = {n}: vanishing fails")
        })?;
        pipelines += 1;
        let killed = kill_support_algebra(&a, &u).map_err(err)?;
        for seed in 0..6u64 {
            let m = (seed % 2) as i64;
            let s = u.shifted(m);
            let w = zwin(m, m + top);
            let mut rng = ChaCha8Rng::seed_from_u64(seed + 31 * n as u64);
            let g = random_g_module(&a, &s, &u, w, SampleShape::default(), &mut rng).map_err(err)?;
            let x = kill_support_module_over(&g, &s, &killed).map_err(err)?;
            let v = regrade_module(&x, &rep.delta, m, &rep.b_tilde).map_err(err)?;
            let back = un_regrade_module(&v, &rep.delta, m, &killed.algebra, (w.lo, w.hi)).map_err(err)?;
            ensure(back == x, || {
                format!("n = {n}, seed {seed}: round trip changed the module")
            })?;
            modules += 1;
        }
    }
    Ok(format!(
        "{modules} modules round-tripped, {pipelines} pipeline vanishing checks"
    ))
}

fn c12_koszul() -> Outcome {
    let r = relation_space::<Rational>(1, 3, &["x*x*x"]).map_err(err)?;
    let a = Arc::new(n_homogeneous_dual(1, 3, &r, 6).map_err(err)?);
    ensure(a.dims() == vec![1; 7], || format!("Λ! dims {:?}", a.dims()))?;
    let rep = koszul_pipeline(&a, 3, 0).map_err(err)?;
    ensure(rep.b_tilde.dims() == vec![1; 5], || {
        format!("B̃ dims {:?}", rep.b_tilde.dims())
    })?;
    ensure(rep.b_tilde.window().lo == 0, || "B̃ does not start in degree 0".into())?;
    ensure(rep.h_prime_index == Some(2), || format!("H' = {}", rep.h_prime))?;
    ensure(rep.b_tilde_valid.holds, || format!("B̃ invalid: {}", rep.b_tilde_valid))?;
    ensure(rep.vanishing.holds, || format!("{}", rep.vanishing))?;
    ensure(rep.regular_membership.holds, || format!("{}", rep.regular_membership))?;
    let values: Vec<i64> = (0..=4).map(|s| rep.delta.eval(s).unwrap()).collect();
    ensure(values == vec![0, 1, 3, 4, 6], || format!("δ = {values:?}"))?;
    Ok(format!(
        "B̃ dims {:?}, H' = 2Z, δ on 0..4 = {values:?}",
        rep.b_tilde.dims()
    ))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("ring-supporting enumeration for n = 1..5", c1_enumeration),
        ("enumerator matches brute force for n <= 12", c2_oracle),
        (
            "killed group algebra associative iff ring-supporting",
            c3_kill_associativity,
        ),
        ("stabilizer equals U ∩ -U", c4_stabilizer),
        ("interval translation characterization", c5_interval_translation),
        ("δ is a pseudomorphism matching the enumeration", c6_delta),
        (
            "general and interval liftability criteria agree",
            c7_liftability_consistency,
        ),
        ("lifting round trip", c8_round_trip),
        ("hom dimensions preserved by killing", c9_hom_dimensions),
        ("modules presented in (S:U) are liftable", c10_presented),
        ("regrading round trip and vanishing", c11_regrade),
        ("Koszul pipeline for K[x]/(x^3)", c12_koszul),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(msg)
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {:>2}. {name}: {detail} ({secs:.2}s)", i + 1),
            Err(why) => {
                failures += 1;
                println!("[FAIL] {:>2}. {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
