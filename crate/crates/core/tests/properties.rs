use std::collections::BTreeSet;
use std::sync::Arc;

use gradkill::constructions::{group_algebra, loops, parse_relation, perp, quiver_algebra, truncated_poly};
use gradkill::exactlin::{Matrix, Subspace};
use gradkill::graded_core::{
    kill_support_algebra, kill_support_module_over, regrade_algebra, regrade_module, shift_module, un_regrade_module,
    validate_algebra, GradedAlgebra, Window,
};
use gradkill::json::{
    degree_set_from_json, degree_set_to_json, matrix_from_json, matrix_to_json, module_from_json, module_to_json,
    windowed_map_from_json, windowed_map_to_json,
};
use gradkill::lifting::{
    lift_report, liftability_check, liftability_check_interval, random_g_module, random_killed_module, RelationDegrees,
    SampleShape,
};
use gradkill::regrade_maps::{delta_map, is_pseudomorphism};
use gradkill::subsets::{
    is_left_premodular, is_right_premodular, is_ring_supporting, stabilizer, DegreeSet, GradedGroup, Orientation,
};
use gradkill::{Field, Gf101, Rational};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn residues(n: i64, mask: u32, with_zero: bool) -> BTreeSet<i64> {
    let mut j: BTreeSet<i64> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
    if with_zero {
        j.insert(0);
    }
    j
}

fn member(j: &BTreeSet<i64>, n: i64, x: i64) -> bool {
    j.contains(&x.rem_euclid(n))
}

fn zwin(lo: i64, hi: i64) -> Window {
    Window::new(GradedGroup::Integers, lo, hi).unwrap()
}

fn algebra(choice: usize, top: i64) -> Arc<GradedAlgebra<Gf101>> {
    Arc::new(match choice {
        0 => truncated_poly(top as usize + 1, 1, (0, top)).unwrap(),
        _ => {
            let arrows = loops(&["x", "y"]);
            let rel = parse_relation::<Gf101>("y*x", &arrows).unwrap();
            quiver_algebra(1, &arrows, &[rel], top).unwrap()
        }
    })
}

fn interval(o: bool, n: i64, r: i64) -> DegreeSet {
    let o = if o { Orientation::Left } else { Orientation::Right };
    DegreeSet::interval_translation(o, n, r).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kill_is_associative_iff_ring_supporting((n, mask) in (1i64..=6).prop_flat_map(|n| (Just(n), 0u32..(1 << n)))) {
        let j = residues(n, mask, true);
        let u = DegreeSet::periodic(n, j.iter().copied()).unwrap();
        let a = Arc::new(group_algebra::<Gf101>(n).unwrap());
        let killed = kill_support_algebra(&a, &u).unwrap();
        prop_assert_eq!(validate_algebra(&killed.algebra).holds, is_ring_supporting(&u).unwrap().holds);
    }

    #[test]
    fn stabilizer_is_u_cap_minus_u((n, mask) in (1i64..=10).prop_flat_map(|n| (Just(n), 0u32..(1 << n)))) {
        let u = DegreeSet::periodic(n, residues(n, mask, true)).unwrap();
        prop_assume!(is_ring_supporting(&u).unwrap().holds);
        let st = stabilizer(&u).unwrap();
        prop_assert!(st.same_set(&u.intersection(&u.negate()).unwrap()), "{} vs {}", st, u);
    }

    #[test]
    fn premodular_predicates_match_their_definitions(
        (n, ms, mu) in (1i64..=7).prop_flat_map(|n| (Just(n), 1u32..(1 << n), 0u32..(1 << n)))
    ) {
        let sj = residues(n, ms, false);
        let uj = residues(n, mu, true);
        let s = DegreeSet::periodic(n, sj.iter().copied()).unwrap();
        let u = DegreeSet::periodic(n, uj.iter().copied()).unwrap();
        let mut right = true;
        let mut left = true;
        for &a in &sj {
            for &b in &uj {
                for &c in &uj {
                    // right: (a, b, c) ∈ S×U×U
                    if member(&sj, n, a + b + c) && member(&sj, n, a + b) != member(&uj, n, b + c) {
                        right = false;
                    }
                    // left: (b, c, a) ∈ U×U×S
                    if member(&sj, n, b + c + a) && member(&sj, n, c + a) != member(&uj, n, b + c) {
                        left = false;
                    }
                }
            }
        }
        prop_assert_eq!(is_right_premodular(&s, &u).unwrap().holds, right);
        let lv = is_left_premodular(&u, &s).unwrap();
        prop_assert_eq!(lv.holds, left);
        if let Some(w) = lv.witness {
            let (x, y, z) = (w[0], w[1], w[2]);
            prop_assert!(member(&uj, n, x) && member(&uj, n, y) && member(&sj, n, z));
            prop_assert!(member(&sj, n, x + y + z) && member(&sj, n, y + z) != member(&uj, n, x + y));
        }
    }

    #[test]
    fn delta_enumerates_u_and_is_a_pseudomorphism(
        (n, r, left) in (2i64..=12).prop_flat_map(|n| (Just(n), 0..=(n - 1) / 2, any::<bool>()))
    ) {
        let u = interval(left, n, r);
        let delta = delta_map(&u, 0, (-30, 30)).unwrap();
        prop_assert!(is_pseudomorphism(&delta).holds);
        let members = u.members_in(-40 * n, 40 * n);
        let zero = members.iter().position(|&x| x == 0).unwrap() as i64;
        for sigma in -30..=30i64 {
            prop_assert_eq!(delta.eval(sigma).unwrap(), members[(zero + sigma) as usize]);
        }
    }

    #[test]
    fn double_perp_is_identity((vdim, n, count, seed) in (1usize..=2, 2usize..=3, 0usize..5, any::<u64>())) {
        let ambient = vdim.pow(n as u32);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vectors: Vec<Vec<Gf101>> =
            (0..count).map(|_| (0..ambient).map(|_| Gf101::random(&mut rng)).collect()).collect();
        let r = Subspace::span(ambient, vectors).unwrap();
        let p = perp(&r);
        prop_assert_eq!(p.dim() + r.dim(), ambient);
        prop_assert_eq!(perp(&p), r);
    }

    #[test]
    fn degree_sets_round_trip_through_json(
        (n, mask, lo, len, windowed) in (1i64..=8, any::<u32>(), -10i64..10, 0i64..12, any::<bool>())
    ) {
        let set = if windowed {
            let elements: Vec<i64> = (0..=len).filter(|i| mask >> i & 1 == 1).map(|i| lo + i).collect();
            DegreeSet::windowed(elements, lo, lo + len).unwrap()
        } else {
            DegreeSet::periodic(n, residues(n, mask, false).into_iter().chain([0])).unwrap()
        };
        let text = degree_set_to_json(&set);
        let back = degree_set_from_json(&text).unwrap();
        prop_assert_eq!(degree_set_to_json(&back), text);
        prop_assert_eq!(back, set);
    }

    #[test]
    fn matrices_and_maps_round_trip_through_json(
        (rows, cols, entries, lo) in (1usize..4, 1usize..4, prop::collection::vec((-9i64..10, 1i64..6), 16), -5i64..5)
    ) {
        let m = Matrix::from_rows(
            (0..rows)
                .map(|i| (0..cols).map(|j| {
                    let (p, q) = entries[i * 4 + j];
                    Rational::new(p.into(), q.into())
                }).collect())
                .collect(),
            cols,
        ).unwrap();
        let text = matrix_to_json(&m);
        prop_assert_eq!(matrix_from_json::<Rational>(&text).unwrap(), m);
        let phi = gradkill::regrade_maps::WindowedMap::new(lo, entries.iter().map(|e| e.0).collect(), GradedGroup::Integers).unwrap();
        let text = windowed_map_to_json(&phi);
        prop_assert_eq!(windowed_map_from_json(&text).unwrap(), phi);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn general_and_interval_criteria_agree(
        (cfg, choice, m, seed) in (0usize..4, 0usize..2, 0i64..3, any::<u64>())
    ) {
        let (left, n, r) = [(false, 3, 1), (true, 3, 1), (false, 4, 1), (true, 5, 2)][cfg];
        let top = 2 * n;
        let u = interval(left, n, r);
        let a = algebra(choice, top);
        let killed = kill_support_algebra(&a, &u).unwrap();
        let s = u.shifted(m);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_killed_module(&killed, &s, &u, zwin(m, m + top), RelationDegrees::Support, SampleShape::default(), &mut rng).unwrap();
        let general = liftability_check(&x, &s, &u, &a).unwrap();
        let reduced = liftability_check_interval(&x, &s, &u, &a).unwrap();
        prop_assert_eq!(general.liftable, reduced.liftable);
    }

    #[test]
    fn modules_presented_in_the_quotient_lift(
        (cfg, choice, m, seed) in (0usize..3, 0usize..2, 0i64..3, any::<u64>())
    ) {
        let (left, n, r) = [(false, 3, 1), (true, 3, 1), (false, 5, 2)][cfg];
        let top = 2 * n;
        let u = interval(left, n, r);
        let a = algebra(choice, top);
        let killed = kill_support_algebra(&a, &u).unwrap();
        let s = u.shifted(m);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_killed_module(&killed, &s, &u, zwin(m, m + top), RelationDegrees::Quotient, SampleShape::default(), &mut rng).unwrap();
        let rep = lift_report(&x, &s, &u, &a).unwrap();
        prop_assert!(rep.liftable, "{}", rep.verdict());
        prop_assert!(rep.isomorphism_certified);
    }

    #[test]
    fn liftability_commutes_with_shifts((choice, g, seed) in (0usize..2, -4i64..=4, any::<u64>())) {
        let (n, top) = (3, 6);
        let u = DegreeSet::periodic(n, [0, 1]).unwrap();
        let a = algebra(choice, top);
        let killed = kill_support_algebra(&a, &u).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_killed_module(&killed, &u, &u, zwin(0, top), RelationDegrees::Support, SampleShape::default(), &mut rng).unwrap();
        let xg = shift_module(&x, g).unwrap();
        let sg = u.shifted(g);
        let before = lift_report(&x, &u, &u, &a).unwrap();
        let after = lift_report(&xg, &sg, &u, &a).unwrap();
        prop_assert_eq!(before.liftable, after.liftable);
        let shifted_violations: Vec<(i64, i64, i64)> = before.violations.iter().map(|v| (v.m + g, v.u, v.v)).collect();
        let violations: Vec<(i64, i64, i64)> = after.violations.iter().map(|v| (v.m, v.u, v.v)).collect();
        prop_assert_eq!(shifted_violations, violations);
        if let (Some(l), Some(lg)) = (&before.lift, &after.lift) {
            prop_assert_eq!(shift_module(l, g).unwrap(), lg.clone());
        }
    }

    #[test]
    fn regrading_round_trips((choice, m, seed) in (0usize..2, 0i64..2, any::<u64>())) {
        let (n, top) = (3, 6);
        let u = DegreeSet::periodic(n, [0, 1]).unwrap();
        let a = algebra(choice, top);
        let killed = kill_support_algebra(&a, &u).unwrap();
        let delta = delta_map(&u, 0, (-top, top)).unwrap();
        let bt = Arc::new(regrade_algebra(&killed.algebra, &delta).unwrap());
        let s = u.shifted(m);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_g_module(&a, &s, &u, zwin(m, m + top), SampleShape::default(), &mut rng).unwrap();
        let x = kill_support_module_over(&g, &s, &killed).unwrap();
        let v = regrade_module(&x, &delta, m, &bt).unwrap();
        let back = un_regrade_module(&v, &delta, m, &killed.algebra, (m, m + top)).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn modules_round_trip_through_json((choice, m, seed) in (0usize..2, -2i64..3, any::<u64>())) {
        let u = DegreeSet::periodic(3, [0, 1]).unwrap();
        let a = algebra(choice, 6);
        let killed = kill_support_algebra(&a, &u).unwrap();
        let s = u.shifted(m);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_killed_module(&killed, &s, &u, zwin(m, m + 6), RelationDegrees::Support, SampleShape::default(), &mut rng).unwrap();
        let text = module_to_json(&x);
        let back = module_from_json::<Gf101>(&text).unwrap();
        prop_assert_eq!(module_to_json(&back), text);
        prop_assert_eq!(back, x);
    }
}
