use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{precondition, Result};
use crate::exactlin::{LabeledSpace, Matrix};
use crate::field::Field;
use crate::subsets::{is_right_modular, DegreeSet, GradedGroup};

use super::algebra::GradedAlgebra;
use super::module::GradedModule;
use super::submodule::in_set;

/// `A_U`: the components of `A` in degrees of `U` with products kept when
/// they land in `U` and set to zero otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KilledAlgebra<F: Field> {
    pub base: Arc<GradedAlgebra<F>>,
    pub support: DegreeSet,
    pub algebra: Arc<GradedAlgebra<F>>,
}

/// Degree sets used with a `Z_n`-graded object must be `Z_n` sets or
/// `Z`-periodic with a period dividing `n`.
pub(crate) fn check_set_for_group(set: &DegreeSet, group: GradedGroup) -> Result<()> {
    match (group, set.group()) {
        (GradedGroup::Integers, GradedGroup::Integers) => Ok(()),
        (GradedGroup::Cyclic(n), GradedGroup::Cyclic(m)) if n == m => Ok(()),
        (GradedGroup::Cyclic(n), GradedGroup::Integers) => match set.period() {
            Some(p) if n % p == 0 => Ok(()),
            _ if set.is_empty() => Ok(()),
            _ => precondition(format!("{set} is not a union of cosets of {n}Z")),
        },
        (g, _) => precondition(format!("{set} is not a subset of {g}")),
    }
}

pub fn kill_support_algebra<F: Field>(a: &Arc<GradedAlgebra<F>>, u: &DegreeSet) -> Result<KilledAlgebra<F>> {
    check_set_for_group(u, a.group())?;
    if !in_set(u, 0) {
        return precondition(format!("0 must belong to {u}"));
    }
    let w = a.window();
    let k = a.idempotents();
    let components: Vec<LabeledSpace> = w
        .degrees()
        .map(|g| {
            if in_set(u, g) {
                a.component(g).unwrap().clone()
            } else {
                LabeledSpace::zero(k, true)
            }
        })
        .collect();
    let mut mult = BTreeMap::new();
    for (&(g, h), m) in a.mult_entries() {
        let t = w.add(g, h);
        if in_set(u, g) && in_set(u, h) && in_set(u, t) {
            mult.insert((g, h), m.clone());
        }
    }
    let killed = GradedAlgebra::new(w, k, components, mult)?;
    Ok(KilledAlgebra {
        base: a.clone(),
        support: u.clone(),
        algebra: Arc::new(killed),
    })
}

/// `M_S` as a module over `A_U`; requires `(S, U)` right modular.
pub fn kill_support_module<F: Field>(m: &GradedModule<F>, s: &DegreeSet, u: &DegreeSet) -> Result<GradedModule<F>> {
    let killed = kill_support_algebra(m.algebra(), u)?;
    kill_support_module_over(m, s, &killed)
}

pub fn kill_support_module_over<F: Field>(
    m: &GradedModule<F>,
    s: &DegreeSet,
    killed: &KilledAlgebra<F>,
) -> Result<GradedModule<F>> {
    let u = &killed.support;
    check_set_for_group(s, m.window().group)?;
    if killed.base != *m.algebra() {
        return precondition("the killed algebra was built from a different algebra");
    }
    let verdict = is_right_modular(&to_integers(s), &to_integers(u))?;
    if !verdict.holds {
        return precondition(format!("(S, U) is not a right modular pair: {verdict}"));
    }
    let w = m.window();
    let k = killed.algebra.idempotents();
    let components = w
        .degrees()
        .map(|g| {
            if in_set(s, g) {
                m.component(g).unwrap().clone()
            } else {
                LabeledSpace::zero(k, false)
            }
        })
        .collect();
    let mut action: BTreeMap<(i64, i64), Matrix<F>> = BTreeMap::new();
    for (&(g, h), mat) in m.action_entries() {
        if in_set(s, g) && in_set(u, h) && in_set(s, w.add(g, h)) {
            action.insert((g, h), mat.clone());
        }
    }
    GradedModule::new(killed.algebra.clone(), w, components, action)
}

/// Predicates on pairs are stated for subsets of `Z`; a `Z_n` set is
/// replaced by its preimage.
fn to_integers(set: &DegreeSet) -> DegreeSet {
    match set.group() {
        GradedGroup::Integers => set.clone(),
        GradedGroup::Cyclic(n) => {
            DegreeSet::periodic(n, set.members_in(0, n - 1)).expect("residues of Z_n form a periodic set")
        }
    }
}
