//! Liftability of `A_U`-modules along `M ↦ M_S`, the explicit lift, and
//! seeded harnesses comparing both sides of the equivalence.
//!
//! Everything here works over `Z`-graded algebras on a window `[0, D]`,
//! read as `A / A_{>D}`. Modules are zero outside their window, so every
//! condition below is exact for the truncated objects.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{precondition, Error, Result};
use crate::exactlin::{kernel, matched_tensor, solve, unit_vector, Matrix, Subspace};
use crate::field::Field;
use crate::graded_core::{
    closure, find_isomorphism, free_basis, free_module, hom_space_dim, is_cogenerated_in, is_generated_in,
    is_module_map, kill_support_algebra, kill_support_module_over, quotient, regrade_algebra, regrade_module,
    same_algebra, shift_module, sigma_tilde_vanishing, torsion_free_quotient, validate_algebra, zero_layers,
    GradedAlgebra, GradedMap, GradedModule, KilledAlgebra, Window,
};
use crate::regrade_maps::{delta_map, preimage_subgroup, windowed_subgroup_index, WindowedMap};
use crate::subsets::{
    is_right_modular, is_translation_of_interval, quotient_set, DegreeSet, GradedGroup, IntervalTranslation,
    Orientation,
};
use crate::verdict::Verdict;

/// A failed containment `Ker(μ_{m,u}) A_{v-u} ⊄ Ker(μ_{m,v})`; `witness`
/// is an element of `X_m ⊗ A_v` outside `Ker(μ_{m,v})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation<F> {
    pub m: i64,
    pub u: i64,
    pub v: i64,
    pub witness: Vec<F>,
}

#[derive(Clone, Debug)]
pub struct LiftReport<F: Field> {
    pub liftable: bool,
    pub violations: Vec<Violation<F>>,
    pub lift: Option<GradedModule<F>>,
    pub isomorphism_certified: bool,
    pub window_certified: bool,
    /// Number of `(m, u, v)` triples that were tested.
    pub conditions_checked: usize,
}

impl<F: Field> LiftReport<F> {
    pub fn verdict(&self) -> Verdict {
        match self.violations.first() {
            None => Verdict::pass(self.window_certified),
            Some(v) => Verdict::fail(
                self.window_certified,
                vec![v.m, v.u, v.v],
                format!(
                    "Ker(μ_{{{},{}}}) A_{} ⊄ Ker(μ_{{{},{}}})",
                    v.m,
                    v.u,
                    v.v - v.u,
                    v.m,
                    v.v
                ),
            ),
        }
    }
}

/// Data shared by the checks: the killed algebra and `(S:U)`.
struct Setting<F: Field> {
    killed: KilledAlgebra<F>,
    quotient: DegreeSet,
}

fn require_hypotheses<F: Field>(a: &GradedAlgebra<F>) -> Result<()> {
    if a.group() != GradedGroup::Integers {
        return Err(Error::UnsupportedForm(
            "liftability is stated for Z-graded algebras".into(),
        ));
    }
    let flags = a.flags();
    if !flags.positively_graded {
        return precondition("A is not positively graded (flag positively_graded)");
    }
    if !flags.generated_in_degrees_0_1 {
        return precondition("A is not generated in degrees 0,1 (flag generated_in_degrees_0_1)");
    }
    if !flags.split_semisimple_degree_zero {
        return precondition("A_0 is not split semisimple (flag split_semisimple_degree_zero)");
    }
    Ok(())
}

fn require_pair(s: &DegreeSet, u: &DegreeSet) -> Result<()> {
    let v = is_right_modular(s, u)?;
    if !v.holds {
        return precondition(format!("(S, U) is not a right modular pair: {v}"));
    }
    Ok(())
}

fn setting<F: Field>(
    x: &GradedModule<F>,
    s: &DegreeSet,
    u: &DegreeSet,
    a: &Arc<GradedAlgebra<F>>,
) -> Result<Setting<F>> {
    require_hypotheses(a)?;
    require_pair(s, u)?;
    let killed = kill_support_algebra(a, u)?;
    if !same_algebra(x.algebra(), &killed.algebra) {
        return precondition("X is not a module over A_U");
    }
    if let Some(t) = x.support().into_iter().find(|&t| !s.contains_lenient(t)) {
        return precondition(format!("X_{t} ≠ 0 but {t} ∉ S"));
    }
    let q = quotient_set(s, u)?;
    let generated = is_generated_in(x, &q)?;
    if !generated.holds {
        return precondition(format!("X is not generated in degrees of (S:U): {generated}"));
    }
    Ok(Setting { killed, quotient: q })
}

/// Looks for an element of `Ker(μ_{m,τu}) · A_{dv-du}` outside
/// `Ker(μ_{m,τv})`. Module degrees `τ` and algebra degrees `d` differ only
/// for regraded modules, where `B̃_τ = A_d`.
fn containment_violation<F: Field>(
    x: &GradedModule<F>,
    m: i64,
    (tu, du): (i64, i64),
    (tv, dv): (i64, i64),
    a: &GradedAlgebra<F>,
) -> Result<Option<Vec<F>>> {
    let xw = x.window();
    let (Some(xm), Some(cu), Some(cv), Some(cd)) =
        (x.component(m), a.component(du), a.component(dv), a.component(dv - du))
    else {
        return Ok(None);
    };
    if !xw.contains(m + tv) || xm.dim() == 0 || cv.dim() == 0 || cd.dim() == 0 {
        return Ok(None);
    }
    let tbu = matched_tensor(xm, cu)?;
    let tbv = matched_tensor(xm, cv)?;
    let ker = match x.action(m, tu) {
        Some(act) if xw.contains(m + tu) => kernel(act),
        _ => Subspace::full(tbu.dim()),
    };
    if ker.is_zero() {
        return Ok(None);
    }
    let (Some(mult), Some(pairs)) = (a.mult(du, dv - du), a.tensor(du, dv - du)) else {
        return Ok(None);
    };
    let act_v = x
        .action(m, tv)
        .ok_or_else(|| Error::InternalConsistency(format!("missing action ({m},{tv})")))?;
    for k in ker.basis() {
        for l in 0..cd.dim() {
            let mut image = vec![F::zero(); tbv.dim()];
            for (idx, &(i, j)) in tbu.pairs.iter().enumerate() {
                if k[idx].is_zero() {
                    continue;
                }
                let Some(col) = pairs.index_of(j, l) else {
                    continue;
                };
                for p in 0..cv.dim() {
                    let c = &mult[(p, col)];
                    if c.is_zero() {
                        continue;
                    }
                    let target = tbv.index_of(i, p).ok_or_else(|| {
                        Error::InternalConsistency(format!("A_{du}·A_{} breaks the idempotent tags", dv - du))
                    })?;
                    image[target] += k[idx].clone() * c.clone();
                }
            }
            if act_v.apply(&image).iter().any(|c| !c.is_zero()) {
                return Ok(Some(image));
            }
        }
    }
    Ok(None)
}

fn scan<F: Field>(
    x: &GradedModule<F>,
    a: &GradedAlgebra<F>,
    quotient: &DegreeSet,
    pairs_for: impl Fn(i64) -> Vec<(i64, i64)>,
) -> Result<LiftReport<F>> {
    let w = x.window();
    let mut violations = Vec::new();
    let mut checked = 0;
    for m in quotient.members_in(w.lo, w.hi) {
        if x.dim(m) == 0 {
            continue;
        }
        for (u, v) in pairs_for(m) {
            if !w.contains(m + v) {
                continue;
            }
            checked += 1;
            if let Some(witness) = containment_violation(x, m, (u, u), (v, v), a)? {
                violations.push(Violation { m, u, v, witness });
            }
        }
    }
    Ok(LiftReport {
        liftable: violations.is_empty(),
        violations,
        lift: None,
        isomorphism_certified: false,
        window_certified: true,
        conditions_checked: checked,
    })
}

/// The general criterion: `Ker(μ_{m,u}) A_{v-u} ⊆ Ker(μ_{m,v})` for all
/// `m ∈ (S:U)`, `u, v ∈ U`, `0 ≤ u < v`, `v - u ∉ U`.
pub fn liftability_check<F: Field>(
    x: &GradedModule<F>,
    s: &DegreeSet,
    u: &DegreeSet,
    a: &Arc<GradedAlgebra<F>>,
) -> Result<LiftReport<F>> {
    let st = setting(x, s, u, a)?;
    let top = a.window().hi;
    let in_u: Vec<i64> = u.members_in(0, top);
    let pairs: Vec<(i64, i64)> = in_u
        .iter()
        .flat_map(|&p| in_u.iter().map(move |&q| (p, q)))
        .filter(|&(p, q)| p < q && !u.contains_lenient(q - p))
        .collect();
    scan(x, a, &st.quotient, |_| pairs.clone())
}

/// The `(u, v)` pairs of the reduced criterion for an interval translation.
pub fn interval_pairs(t: IntervalTranslation) -> Vec<(i64, i64)> {
    let IntervalTranslation { orientation, n, r } = t;
    match orientation {
        Orientation::Right => vec![(r, n)],
        Orientation::Left => ((n - r)..=n).flat_map(|p| ((p + 1)..=n).map(move |q| (p, q))).collect(),
    }
}

/// The reduced criterion when `U` is a translation of an interval.
pub fn liftability_check_interval<F: Field>(
    x: &GradedModule<F>,
    s: &DegreeSet,
    u: &DegreeSet,
    a: &Arc<GradedAlgebra<F>>,
) -> Result<LiftReport<F>> {
    let st = setting(x, s, u, a)?;
    let Some(t) = is_translation_of_interval(u)? else {
        return precondition(format!("{u} is not a translation of an interval"));
    };
    let pairs = interval_pairs(t);
    scan(x, a, &st.quotient, |_| pairs.clone())
}

/// `M = (X_{(S:U)} ⊗ A) / (Ker μ) A`, modulo its torsion, certified by an
/// explicit isomorphism `M_S ≅ X`.
pub fn lift_module<F: Field>(
    x: &GradedModule<F>,
    s: &DegreeSet,
    u: &DegreeSet,
    a: &Arc<GradedAlgebra<F>>,
) -> Result<GradedModule<F>> {
    let report = liftability_check(x, s, u, a)?;
    if !report.liftable {
        return precondition(format!("X is not liftable: {}", report.verdict()));
    }
    let st = setting(x, s, u, a)?;
    Ok(build_lift(x, s, &st, a)?.0)
}

/// Runs [`liftability_check`] and, when it passes, [`lift_module`].
pub fn lift_report<F: Field>(
    x: &GradedModule<F>,
    s: &DegreeSet,
    u: &DegreeSet,
    a: &Arc<GradedAlgebra<F>>,
) -> Result<LiftReport<F>> {
    let mut report = liftability_check(x, s, u, a)?;
    if report.liftable {
        let st = setting(x, s, u, a)?;
        let (m, _) = build_lift(x, s, &st, a)?;
        report.lift = Some(m);
        report.isomorphism_certified = true;
    }
    Ok(report)
}

fn build_lift<F: Field>(
    x: &GradedModule<F>,
    s: &DegreeSet,
    st: &Setting<F>,
    a: &Arc<GradedAlgebra<F>>,
) -> Result<(GradedModule<F>, GradedMap<F>)> {
    let w = x.window();
    let mut gens = Vec::new();
    let mut origin = Vec::new();
    for m in st.quotient.members_in(w.lo, w.hi) {
        for (i, &tag) in x.tags(m).iter().enumerate() {
            gens.push((m, tag));
            origin.push((m, i));
        }
    }
    let p = free_module(a.clone(), &gens, w)?;
    let blocks = free_basis(a, &gens, w);

    // μ_t : P_t → X_t for t ∈ S.
    let mut mu: Vec<Option<Matrix<F>>> = Vec::new();
    for (ti, t) in w.degrees().enumerate() {
        if !s.contains_lenient(t) {
            mu.push(None);
            continue;
        }
        let cols: Vec<Vec<F>> = blocks[ti]
            .iter()
            .map(|&(gi, j)| {
                let (m, i) = origin[gi];
                let d = t - m;
                x.act(m, &unit_vector(x.dim(m), i), d, &unit_vector(a.dim(d), j))
            })
            .collect();
        mu.push(Some(Matrix::from_columns(&cols, x.dim(t))?));
    }
    let mut layers = zero_layers(&p);
    for (ti, m) in mu.iter().enumerate() {
        if let Some(m) = m {
            layers[ti] = kernel(m);
        }
    }
    let relations = closure(&p, layers.clone())?;
    for (ti, t) in w.degrees().enumerate() {
        if mu[ti].is_some() && relations[ti] != layers[ti] {
            return Err(Error::InternalConsistency(format!(
                "[(Ker μ)A]_{t} ≠ (Ker μ)_{t} for a module that passed the liftability check"
            )));
        }
    }
    let (m, pi) = quotient(&p, &relations)?;
    let (lift, pi2) = torsion_free_quotient(&m, s)?;

    // θ_t : M_t → X_t through any preimage in P_t.
    let mut theta: GradedMap<F> = Vec::new();
    for (ti, t) in w.degrees().enumerate() {
        let Some(mu_t) = &mu[ti] else {
            theta.push(Matrix::zeros(x.dim(t), 0));
            continue;
        };
        let proj = pi2[ti].mul(&pi[ti])?;
        let mut cols = Vec::new();
        for k in 0..lift.dim(t) {
            let pre = solve(&proj, &unit_vector(lift.dim(t), k))?
                .ok_or_else(|| Error::InternalConsistency(format!("projection onto M_{t} is not surjective")))?;
            cols.push(mu_t.mul_vec(&pre)?);
        }
        theta.push(Matrix::from_columns(&cols, x.dim(t))?);
    }
    let killed = kill_support_module_over(&lift, s, &st.killed)?;
    let invertible = theta
        .iter()
        .all(|th| th.rows() == th.cols() && (th.rows() == 0 || th.is_invertible()));
    if !invertible || !is_module_map(&killed, x, &theta) {
        return Err(Error::InternalConsistency(
            "the lift does not restrict to X on S-degrees".into(),
        ));
    }
    if !is_generated_in(&lift, &st.quotient)?.holds || !is_cogenerated_in(&lift, s)?.holds {
        return Err(Error::InternalConsistency("the lift is not in G(S,U)".into()));
    }
    Ok((lift, theta))
}

/// Membership in `G(S,U)`: generated in `(S:U)`, cogenerated in `S`.
pub fn in_g<F: Field>(m: &GradedModule<F>, s: &DegreeSet, u: &DegreeSet) -> Result<Verdict> {
    let q = quotient_set(s, u)?;
    Ok(is_generated_in(m, &q)?.and(is_cogenerated_in(m, s)?))
}

/// Random presentation data for seeded samples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleShape {
    pub max_generators: usize,
    pub max_relations: usize,
}

impl Default for SampleShape {
    fn default() -> Self {
        SampleShape {
            max_generators: 2,
            max_relations: 3,
        }
    }
}

/// Where relations of a random `A_U`-module may live.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationDegrees {
    /// Only in `(S:U)`; the module is presented in `(S:U)`.
    Quotient,
    /// Anywhere in `S`.
    Support,
}

fn random_sparse<F: Field, R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vec<F> {
    loop {
        let v: Vec<F> = (0..len)
            .map(|_| if rng.gen_bool(0.5) { F::random(rng) } else { F::zero() })
            .collect();
        if v.iter().any(|c| !c.is_zero()) {
            return v;
        }
    }
}

/// Free module on random generators in `gen_degrees` modulo the submodule
/// generated by random elements in `rel_degrees`.
pub fn random_presented_module<F: Field, R: Rng + ?Sized>(
    algebra: &Arc<GradedAlgebra<F>>,
    gen_degrees: &[i64],
    rel_degrees: &[i64],
    window: Window,
    shape: SampleShape,
    rng: &mut R,
) -> Result<GradedModule<F>> {
    if gen_degrees.is_empty() {
        return GradedModule::zero(algebra.clone(), window);
    }
    let k = algebra.idempotents();
    let count = rng.gen_range(1..=shape.max_generators.max(1));
    let gens: Vec<(i64, usize)> = (0..count)
        .map(|_| (gen_degrees[rng.gen_range(0..gen_degrees.len())], rng.gen_range(0..k)))
        .collect();
    let free = free_module(algebra.clone(), &gens, window)?;
    let mut layers = zero_layers(&free);
    let usable: Vec<i64> = rel_degrees.iter().copied().filter(|&t| free.dim(t) > 0).collect();
    if !usable.is_empty() {
        for _ in 0..rng.gen_range(0..=shape.max_relations) {
            let t = usable[rng.gen_range(0..usable.len())];
            let ti = window.index(t).unwrap();
            let v = random_sparse(free.dim(t), rng);
            layers[ti] = layers[ti].sum(&Subspace::span(free.dim(t), [v])?)?;
        }
    }
    let relations = closure(&free, layers)?;
    Ok(quotient(&free, &relations)?.0)
}

/// A random member of `G(S,U)`: presented with generators in `(S:U)`, then
/// divided by its torsion.
pub fn random_g_module<F: Field, R: Rng + ?Sized>(
    a: &Arc<GradedAlgebra<F>>,
    s: &DegreeSet,
    u: &DegreeSet,
    window: Window,
    shape: SampleShape,
    rng: &mut R,
) -> Result<GradedModule<F>> {
    let q = quotient_set(s, u)?;
    let gens = q.members_in(window.lo, window.hi);
    let rels: Vec<i64> = window.degrees().collect();
    let m = random_presented_module(a, &gens, &rels, window, shape, rng)?;
    Ok(torsion_free_quotient(&m, s)?.0)
}

/// A random `A_U`-module generated in `(S:U)` and supported in `S`.
pub fn random_killed_module<F: Field, R: Rng + ?Sized>(
    killed: &KilledAlgebra<F>,
    s: &DegreeSet,
    u: &DegreeSet,
    window: Window,
    relations: RelationDegrees,
    shape: SampleShape,
    rng: &mut R,
) -> Result<GradedModule<F>> {
    let q = quotient_set(s, u)?;
    let gens = q.members_in(window.lo, window.hi);
    let rels = match relations {
        RelationDegrees::Quotient => gens.clone(),
        RelationDegrees::Support => s.members_in(window.lo, window.hi),
    };
    random_presented_module(&killed.algebra, &gens, &rels, window, shape, rng)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSample {
    pub index: usize,
    pub seed: u64,
    pub dims_m: Vec<usize>,
    pub dims_n: Vec<usize>,
    pub hom_full: usize,
    pub hom_killed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub samples: Vec<HomSample>,
    pub all_equal: bool,
}

/// Compares `dim Hom_A(M, N)` with `dim Hom_{A_U}(M_S, N_S)` on random
/// pairs in `G(S,U)`; sample `i` uses seed `seed + i`.
pub fn equivalence_harness<F: Field>(
    a: &Arc<GradedAlgebra<F>>,
    s: &DegreeSet,
    u: &DegreeSet,
    window: (i64, i64),
    samples: usize,
    seed: u64,
) -> Result<EquivalenceReport> {
    require_pair(s, u)?;
    let valid = validate_algebra(a);
    if !valid.holds {
        return precondition(format!("A is not a valid graded algebra: {valid}"));
    }
    let window = Window::new(GradedGroup::Integers, window.0, window.1)?;
    let killed = kill_support_algebra(a, u)?;
    let mut out = Vec::with_capacity(samples);
    for index in 0..samples {
        let sample_seed = seed.wrapping_add(index as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(sample_seed);
        let m = random_g_module(a, s, u, window, SampleShape::default(), &mut rng)?;
        let n = random_g_module(a, s, u, window, SampleShape::default(), &mut rng)?;
        let ms = kill_support_module_over(&m, s, &killed)?;
        let ns = kill_support_module_over(&n, s, &killed)?;
        out.push(HomSample {
            index,
            seed: sample_seed,
            dims_m: m.dims(),
            dims_n: n.dims(),
            hom_full: hom_space_dim(&m, &n)?,
            hom_killed: hom_space_dim(&ms, &ns)?,
        });
    }
    let all_equal = out.iter().all(|h| h.hom_full == h.hom_killed);
    Ok(EquivalenceReport {
        samples: out,
        all_equal,
    })
}

/// Lifts `M_S` for `M ∈ G(S,U)` and looks for an isomorphism with `M/t(M)`.
pub fn verify_round_trip<F: Field, R: Rng + ?Sized>(
    m: &GradedModule<F>,
    s: &DegreeSet,
    u: &DegreeSet,
    rng: &mut R,
) -> Result<bool> {
    let a = m.algebra();
    let killed = kill_support_algebra(a, u)?;
    let x = kill_support_module_over(m, s, &killed)?;
    let lift = lift_module(&x, s, u, a)?;
    let (reduced, _) = torsion_free_quotient(m, s)?;
    if lift.dims() != reduced.dims() {
        return Ok(false);
    }
    Ok(find_isomorphism(&lift, &reduced, rng, 16)?.is_some())
}

/// `Ker(μ̃_{(r+1)k, r}) A_{n-r} ⊆ Ker(μ̃_{(r+1)k, r+1})` for a module over
/// the regraded algebra, where `B̃_r = A_r` and `B̃_{r+1} = A_n`.
pub fn regraded_membership<F: Field>(v: &GradedModule<F>, a: &GradedAlgebra<F>, n: i64, r: i64) -> Result<Verdict> {
    let w = v.window();
    let mut k = w.lo.div_euclid(r + 1);
    while (r + 1) * k <= w.hi {
        let sigma = (r + 1) * k;
        k += 1;
        if !w.contains(sigma) || v.dim(sigma) == 0 {
            continue;
        }
        if containment_violation(v, sigma, (r, r), (r + 1, n), a)?.is_some() {
            return Ok(Verdict::fail(
                true,
                vec![sigma],
                format!("Ker(μ̃_{{{sigma},{r}}}) A_{} ⊄ Ker(μ̃_{{{sigma},{}}})", n - r, r + 1),
            ));
        }
    }
    Ok(Verdict::pass(true))
}

/// Output of [`koszul_pipeline`].
#[derive(Clone, Debug)]
pub struct KoszulReport<F: Field> {
    pub killed: Arc<GradedAlgebra<F>>,
    pub delta: WindowedMap,
    pub b_tilde: Arc<GradedAlgebra<F>>,
    /// `δ^{-1}(nZ)` on the window of `δ`.
    pub h_prime: DegreeSet,
    pub h_prime_index: Option<i64>,
    pub b_tilde_valid: Verdict,
    /// Vanishing pattern of the regraded regular module.
    pub vanishing: Verdict,
    /// Membership conditions for the regular `B̃`-module.
    pub regular_membership: Verdict,
    /// Interval criterion for `(A[m])_S` and membership of its regrading.
    pub shifted_interval: Verdict,
    pub shifted_membership: Verdict,
}

/// `U = nZ ∪ (nZ+1)`, `S = m + U`, `B = A_U` regraded along `δ_{(U,0)}`.
pub fn koszul_pipeline<F: Field>(a: &Arc<GradedAlgebra<F>>, n: i64, m: i64) -> Result<KoszulReport<F>> {
    require_hypotheses(a)?;
    if n < 3 {
        return precondition("U = nZ ∪ (nZ+1) is a translation of an interval only for n ≥ 3");
    }
    let top = a.window().hi;
    if top < 2 * n {
        return precondition(format!("window [0,{top}] is shorter than 2n = {}", 2 * n));
    }
    let u = DegreeSet::periodic(n, [0, 1])?;
    let s = u.shifted(m);
    let killed = kill_support_algebra(a, &u)?;
    // Largest K with δ(K) ≤ D, then δ on [-K, K].
    let reach = delta_map(&u, 0, (0, 2 * top + 2))?;
    let big = reach
        .pairs()
        .filter(|&(_, d)| d <= top)
        .map(|(k, _)| k)
        .max()
        .unwrap_or(0);
    let delta = delta_map(&u, 0, (-big, big))?;
    let b_tilde = Arc::new(regrade_algebra(&killed.algebra, &delta)?);
    let h_prime = preimage_subgroup(&delta, &DegreeSet::periodic(n, [0])?)?;
    let h_prime_index = windowed_subgroup_index(&h_prime);

    let regular = GradedModule::regular(b_tilde.clone())?;
    let vanishing = sigma_tilde_vanishing(&regular, &delta);
    let regular_membership = regraded_membership(&regular, a, n, 1)?;

    let w = Window::new(GradedGroup::Integers, m, m + top)?;
    let shifted = shift_module(&GradedModule::regular(a.clone())?, m)?;
    let x = kill_support_module_over(&shifted, &s, &killed)?;
    debug_assert_eq!(x.window(), w);
    let shifted_interval = liftability_check_interval(&x, &s, &u, a)?.verdict();
    let xt = regrade_module(&x, &delta, m, &b_tilde)?;
    let shifted_membership = regraded_membership(&xt, a, n, 1)?;

    Ok(KoszulReport {
        b_tilde_valid: validate_algebra(&b_tilde),
        killed: killed.algebra,
        delta,
        b_tilde,
        h_prime,
        h_prime_index,
        vanishing,
        regular_membership,
        shifted_interval,
        shifted_membership,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{n_homogeneous_dual, relation_space, truncated_poly};
    use crate::field::{Gf101, Rational};
    use crate::graded_core::{generated_layers, validate_module};

    type Q = Rational;

    fn poly<F: Field>(top: i64) -> Arc<GradedAlgebra<F>> {
        Arc::new(truncated_poly(top as usize + 1, 1, (0, top)).unwrap())
    }

    fn u3() -> DegreeSet {
        DegreeSet::periodic(3, [0, 1]).unwrap()
    }

    /// `A_U / x A_U` for `A = K[x]/(x^8)`.
    fn non_liftable() -> (Arc<GradedAlgebra<Q>>, GradedModule<Q>) {
        let a = poly::<Q>(7);
        let k = kill_support_algebra(&a, &u3()).unwrap();
        let reg = GradedModule::regular(k.algebra.clone()).unwrap();
        let gen = generated_layers(&reg, &DegreeSet::windowed([1], 0, 7).unwrap()).unwrap();
        (a, quotient(&reg, &gen).unwrap().0)
    }

    #[test]
    fn regular_killed_module_is_liftable() {
        let a = poly::<Q>(7);
        let u = u3();
        let k = kill_support_algebra(&a, &u).unwrap();
        let x = GradedModule::regular(k.algebra.clone()).unwrap();
        let report = lift_report(&x, &u, &u, &a).unwrap();
        assert!(report.liftable);
        assert!(report.isomorphism_certified);
        let lift = report.lift.unwrap();
        let reg = GradedModule::regular(a.clone()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(find_isomorphism(&lift, &reg, &mut rng, 4).unwrap().is_some());
    }

    #[test]
    fn quotient_by_x_is_not_liftable() {
        let (a, x) = non_liftable();
        assert_eq!(x.dims(), vec![1, 0, 0, 1, 0, 0, 1, 0]);
        let u = u3();
        let general = liftability_check(&x, &u, &u, &a).unwrap();
        assert!(!general.liftable);
        let first = &general.violations[0];
        assert_eq!((first.m, first.u, first.v), (0, 1, 3));
        let interval = liftability_check_interval(&x, &u, &u, &a).unwrap();
        assert!(!interval.liftable);
        assert!(lift_module(&x, &u, &u, &a).is_err());
    }

    #[test]
    fn interval_pair_lists() {
        let right = IntervalTranslation {
            orientation: Orientation::Right,
            n: 3,
            r: 1,
        };
        assert_eq!(interval_pairs(right), vec![(1, 3)]);
        let left = IntervalTranslation {
            orientation: Orientation::Left,
            n: 5,
            r: 1,
        };
        assert_eq!(interval_pairs(left), vec![(4, 5)]);
    }

    #[test]
    fn zero_module_lifts_to_zero() {
        let a = poly::<Q>(6);
        let u = u3();
        let k = kill_support_algebra(&a, &u).unwrap();
        let w = Window::new(GradedGroup::Integers, 0, 6).unwrap();
        let x = GradedModule::zero(k.algebra.clone(), w).unwrap();
        let lift = lift_module(&x, &u, &u, &a).unwrap();
        assert!(lift.is_zero());
    }

    #[test]
    fn preconditions_name_the_flag() {
        let a = Arc::new(truncated_poly::<Q>(3, 2, (0, 6)).unwrap());
        let u = u3();
        let k = kill_support_algebra(&a, &u).unwrap();
        let x = GradedModule::regular(k.algebra.clone()).unwrap();
        let err = liftability_check(&x, &u, &u, &a).unwrap_err().to_string();
        assert!(err.contains("generated_in_degrees_0_1"), "{err}");
    }

    #[test]
    fn random_samples_respect_their_classes() {
        let a = poly::<Gf101>(6);
        let u = u3();
        let w = Window::new(GradedGroup::Integers, 0, 6).unwrap();
        let k = kill_support_algebra(&a, &u).unwrap();
        for seed in 0..8 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = random_g_module(&a, &u, &u, w, SampleShape::default(), &mut rng).unwrap();
            assert!(validate_module(&m).holds);
            assert!(in_g(&m, &u, &u).unwrap().holds);
            let x = random_killed_module(
                &k,
                &u,
                &u,
                w,
                RelationDegrees::Quotient,
                SampleShape::default(),
                &mut rng,
            )
            .unwrap();
            assert!(validate_module(&x).holds);
            assert!(liftability_check(&x, &u, &u, &a).unwrap().liftable);
        }
    }

    #[test]
    fn hom_dimensions_agree_on_a_few_samples() {
        let a = poly::<Gf101>(6);
        let u = u3();
        let rep = equivalence_harness(&a, &u, &u, (0, 6), 5, 11).unwrap();
        assert!(rep.all_equal, "{rep:?}");
    }

    #[test]
    fn pipeline_for_truncated_polynomial_dual() {
        let r = relation_space::<Q>(1, 3, &["x*x*x"]).unwrap();
        let a = Arc::new(n_homogeneous_dual(1, 3, &r, 6).unwrap());
        let rep = koszul_pipeline(&a, 3, 0).unwrap();
        assert_eq!(rep.b_tilde.dims(), vec![1; 5]);
        assert_eq!(rep.h_prime_index, Some(2));
        assert!(rep.b_tilde_valid.holds);
        assert!(rep.vanishing.holds);
        assert!(rep.regular_membership.holds);
        assert!(rep.shifted_interval.holds);
        assert!(rep.shifted_membership.holds);
        let shifted = koszul_pipeline(&a, 3, 3).unwrap();
        assert!(shifted.shifted_interval.holds && shifted.shifted_membership.holds);
    }
}
