use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactlin::{apply, kernel, matched_tensor, BasisSolver, LabeledSpace, Matrix, Subspace};
use crate::field::Field;
use crate::subsets::{DegreeSet, GradedGroup};
use crate::verdict::Verdict;

use super::module::GradedModule;

/// Degreewise subspaces of a module, indexed like its window.
pub type Layers<F> = Vec<Subspace<F>>;

pub fn zero_layers<F: Field>(m: &GradedModule<F>) -> Layers<F> {
    m.window().degrees().map(|s| Subspace::zero(m.dim(s))).collect()
}

pub fn full_layers<F: Field>(m: &GradedModule<F>) -> Layers<F> {
    m.window().degrees().map(|s| Subspace::full(m.dim(s))).collect()
}

pub(crate) fn in_set(set: &DegreeSet, g: i64) -> bool {
    set.contains_lenient(g)
}

/// Smallest submodule containing the given layers.
pub fn closure<F: Field>(m: &GradedModule<F>, mut layers: Layers<F>) -> Result<Layers<F>> {
    let w = m.window();
    let maps: Vec<Vec<(usize, Matrix<F>)>> = w
        .degrees()
        .map(|s| {
            m.right_mults_from(s)
                .into_iter()
                .map(|(t, mat)| (w.index(t).unwrap(), mat))
                .collect()
        })
        .collect();
    loop {
        let mut changed = false;
        for (si, outgoing) in maps.iter().enumerate() {
            for (ti, mat) in outgoing {
                if layers[si].is_zero() {
                    break;
                }
                let img = apply(mat, &layers[si])?;
                if !layers[*ti].contains(&img)? {
                    layers[*ti] = layers[*ti].sum(&img)?;
                    changed = true;
                }
            }
        }
        if !changed {
            return Ok(layers);
        }
    }
}

/// Layers of `M_D A`, the submodule generated by the components in `D`.
pub fn generated_layers<F: Field>(m: &GradedModule<F>, d: &DegreeSet) -> Result<Layers<F>> {
    let start = m
        .window()
        .degrees()
        .map(|s| {
            if in_set(d, s) {
                Subspace::full(m.dim(s))
            } else {
                Subspace::zero(m.dim(s))
            }
        })
        .collect();
    closure(m, start)
}

pub fn generated_submodule<F: Field>(m: &GradedModule<F>, d: &DegreeSet) -> Result<GradedModule<F>> {
    Ok(submodule(m, &generated_layers(m, d)?)?.0)
}

pub fn is_generated_in<F: Field>(m: &GradedModule<F>, d: &DegreeSet) -> Result<Verdict> {
    let layers = generated_layers(m, d)?;
    let certified = m.window().group == GradedGroup::Integers;
    for (s, l) in m.window().degrees().zip(&layers) {
        if l.dim() != m.dim(s) {
            return Ok(Verdict::fail(
                certified,
                vec![s],
                format!("degree {s}: generated part has dim {} of {}", l.dim(), m.dim(s)),
            ));
        }
    }
    Ok(Verdict::pass(certified))
}

/// Layers of `t(N)`: the largest submodule supported outside `S`.
pub fn torsion_layers<F: Field>(n: &GradedModule<F>, s: &DegreeSet) -> Result<Layers<F>> {
    let w = n.window();
    let mut layers: Layers<F> = w
        .degrees()
        .map(|g| {
            if in_set(s, g) {
                Subspace::zero(n.dim(g))
            } else {
                Subspace::full(n.dim(g))
            }
        })
        .collect();
    let maps: Vec<Vec<(usize, Matrix<F>)>> = w
        .degrees()
        .map(|g| {
            n.right_mults_from(g)
                .into_iter()
                .map(|(t, mat)| (w.index(t).unwrap(), mat))
                .collect()
        })
        .collect();
    loop {
        let mut changed = false;
        for gi in 0..layers.len() {
            if layers[gi].is_zero() {
                continue;
            }
            let mut current = layers[gi].clone();
            for (ti, mat) in &maps[gi] {
                // {x ∈ current : mat x ∈ layers[ti]}
                let eq = layers[*ti].equations().mul(mat)?;
                if eq.rows() == 0 || eq.is_zero() {
                    continue;
                }
                current = current.intersect(&kernel(&eq))?;
                if current.is_zero() {
                    break;
                }
            }
            if current != layers[gi] {
                layers[gi] = current;
                changed = true;
            }
        }
        if !changed {
            return Ok(layers);
        }
    }
}

pub fn torsion_submodule<F: Field>(n: &GradedModule<F>, s: &DegreeSet) -> Result<GradedModule<F>> {
    Ok(submodule(n, &torsion_layers(n, s)?)?.0)
}

/// `t(N) = 0`, i.e. every nonzero submodule meets degrees in `S`.
pub fn is_cogenerated_in<F: Field>(n: &GradedModule<F>, s: &DegreeSet) -> Result<Verdict> {
    let layers = torsion_layers(n, s)?;
    let certified = n.window().group == GradedGroup::Integers;
    match n.window().degrees().zip(&layers).find(|(_, l)| !l.is_zero()) {
        Some((g, l)) => Ok(Verdict::fail(
            certified,
            vec![g],
            format!("t(N) has dimension {} in degree {g}", l.dim()),
        )),
        None => Ok(Verdict::pass(certified)),
    }
}

/// `N / t(N)` with its projection maps.
pub fn torsion_free_quotient<F: Field>(
    n: &GradedModule<F>,
    s: &DegreeSet,
) -> Result<(GradedModule<F>, Vec<Matrix<F>>)> {
    quotient(n, &torsion_layers(n, s)?)
}

/// Tag-homogeneous basis of an `A_0`-stable subspace.
fn tagged_basis<F: Field>(w: &Subspace<F>, tags: &[usize]) -> Result<(Vec<Vec<F>>, Vec<usize>)> {
    let mut basis = Vec::new();
    let mut out_tags = Vec::new();
    let mut all: Vec<usize> = tags.to_vec();
    all.sort_unstable();
    all.dedup();
    for r in all {
        let block = Subspace::coordinate(w.ambient_dim(), (0..tags.len()).filter(|&i| tags[i] == r));
        let part = w.intersect(&block)?;
        for v in part.basis() {
            basis.push(v.clone());
            out_tags.push(r);
        }
    }
    if basis.len() != w.dim() {
        return Err(Error::InternalConsistency(
            "subspace is not stable under the idempotents".into(),
        ));
    }
    Ok((basis, out_tags))
}

/// The submodule with the given layers, together with inclusion matrices
/// (basis vectors as columns).
pub fn submodule<F: Field>(m: &GradedModule<F>, layers: &Layers<F>) -> Result<(GradedModule<F>, Vec<Matrix<F>>)> {
    let w = m.window();
    let a = m.algebra();
    let k = a.idempotents();
    let mut bases = Vec::new();
    let mut comps = Vec::new();
    let mut solvers = Vec::new();
    for (s, layer) in w.degrees().zip(layers) {
        let (basis, tags) = tagged_basis(layer, m.tags(s))?;
        solvers.push(BasisSolver::new(m.dim(s), &basis)?);
        comps.push(LabeledSpace::right_module(k, tags));
        bases.push(basis);
    }
    let mut action = BTreeMap::new();
    for &(s, u) in m.action_entries().keys() {
        let t = w.add(s, u);
        let (si, ti) = (w.index(s).unwrap(), w.index(t).unwrap());
        let tb = matched_tensor(&comps[si], a.component(u).unwrap())?;
        let mut cols = Vec::with_capacity(tb.dim());
        for &(i, j) in &tb.pairs {
            let mut e = vec![F::zero(); a.dim(u)];
            e[j] = F::one();
            let img = m.act(s, &bases[si][i], u, &e);
            let c = solvers[ti]
                .coordinates(&img)
                .ok_or_else(|| Error::InternalConsistency(format!("layers are not closed under ({s},{u})")))?;
            cols.push(c);
        }
        action.insert((s, u), Matrix::from_columns(&cols, bases[ti].len())?);
    }
    let inclusions = w
        .degrees()
        .zip(&bases)
        .map(|(s, b)| Matrix::from_columns(b, m.dim(s)))
        .collect::<Result<Vec<_>>>()?;
    let sub = GradedModule::new(a.clone(), w, comps, action)?;
    Ok((sub, inclusions))
}

/// `M / W` for a submodule `W`, with the projection matrices. The quotient
/// basis is the set of non-pivot coordinates of each layer.
pub fn quotient<F: Field>(m: &GradedModule<F>, layers: &Layers<F>) -> Result<(GradedModule<F>, Vec<Matrix<F>>)> {
    let w = m.window();
    let a = m.algebra();
    let k = a.idempotents();
    let keep: Vec<Vec<usize>> = w
        .degrees()
        .zip(layers)
        .map(|(s, l)| (0..m.dim(s)).filter(|c| !l.pivots().contains(c)).collect())
        .collect();
    let project = |si: usize, v: &[F]| -> Vec<F> {
        let r = layers[si].reduce(v);
        keep[si].iter().map(|&c| r[c].clone()).collect()
    };
    let comps: Vec<LabeledSpace> = w
        .degrees()
        .zip(&keep)
        .map(|(s, kp)| LabeledSpace::right_module(k, kp.iter().map(|&c| m.tags(s)[c]).collect()))
        .collect();
    let mut action = BTreeMap::new();
    for &(s, u) in m.action_entries().keys() {
        let t = w.add(s, u);
        let (si, ti) = (w.index(s).unwrap(), w.index(t).unwrap());
        let tb = matched_tensor(&comps[si], a.component(u).unwrap())?;
        let mut cols = Vec::with_capacity(tb.dim());
        for &(i, j) in &tb.pairs {
            let mut x = vec![F::zero(); m.dim(s)];
            x[keep[si][i]] = F::one();
            let mut e = vec![F::zero(); a.dim(u)];
            e[j] = F::one();
            cols.push(project(ti, &m.act(s, &x, u, &e)));
        }
        action.insert((s, u), Matrix::from_columns(&cols, keep[ti].len())?);
    }
    let projections = w
        .degrees()
        .enumerate()
        .map(|(si, s)| {
            let cols: Vec<Vec<F>> = (0..m.dim(s))
                .map(|c| {
                    let mut e = vec![F::zero(); m.dim(s)];
                    e[c] = F::one();
                    project(si, &e)
                })
                .collect();
            Matrix::from_columns(&cols, keep[si].len())
        })
        .collect::<Result<Vec<_>>>()?;
    let q = GradedModule::new(a.clone(), w, comps, action)?;
    Ok((q, projections))
}

/// Whether the layers are closed under the action.
pub fn is_submodule<F: Field>(m: &GradedModule<F>, layers: &Layers<F>) -> Result<bool> {
    Ok(&closure(m, layers.clone())? == layers)
}
