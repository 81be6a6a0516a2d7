//! Builders for concrete graded algebras.

use std::collections::{BTreeMap, HashMap};

use crate::error::{precondition, Error, Result};
use crate::exactlin::{rref, LabeledSpace, Matrix, Subspace};
use crate::field::Field;
use crate::graded_core::{GradedAlgebra, Window};
use crate::subsets::GradedGroup;

/// One basis vector of an algebra given by a multiplication table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub degree: i64,
    pub left: usize,
    pub right: usize,
}

/// Builds an algebra from a global basis and a product table.
///
/// `product(i, j)` is the product of basis vectors `i` and `j` as a
/// combination of basis vectors; it is only queried for tag-matched pairs
/// whose degree sum lies in the window. Basis vectors outside the window
/// are dropped, which is the truncation `A / A_{>D}` for positive gradings.
/// The idempotents must be the first `idempotents` vectors of degree 0.
pub fn algebra_from_table<F: Field>(
    window: Window,
    idempotents: usize,
    basis: &[BasisElement],
    product: impl Fn(usize, usize) -> Vec<(usize, F)>,
) -> Result<GradedAlgebra<F>> {
    let g = window.group;
    let mut position: Vec<Option<(i64, usize)>> = vec![None; basis.len()];
    let mut per_degree: BTreeMap<i64, Vec<usize>> = window.degrees().map(|d| (d, Vec::new())).collect();
    for (i, b) in basis.iter().enumerate() {
        let d = g.normalize(b.degree);
        if let Some(list) = per_degree.get_mut(&d) {
            position[i] = Some((d, list.len()));
            list.push(i);
        }
    }
    let components: Vec<LabeledSpace> = per_degree
        .values()
        .map(|ids| {
            LabeledSpace::bimodule(
                idempotents,
                ids.iter().map(|&i| basis[i].left).collect(),
                ids.iter().map(|&i| basis[i].right).collect(),
            )
        })
        .collect();
    let mut mult = BTreeMap::new();
    for (&d1, ids1) in &per_degree {
        for (&d2, ids2) in &per_degree {
            let t = g.add(d1, d2);
            let Some(target) = per_degree.get(&t) else {
                continue;
            };
            let mut cols = Vec::new();
            for &i in ids1 {
                for &j in ids2 {
                    if basis[i].right != basis[j].left {
                        continue;
                    }
                    let mut col = vec![F::zero(); target.len()];
                    for (l, c) in product(i, j) {
                        match position.get(l).copied().flatten() {
                            Some((dl, p)) if dl == t => col[p] += c,
                            Some((dl, _)) => {
                                return Err(Error::GradingViolation {
                                    sigma: d1,
                                    tau: d2,
                                    detail: format!("product lands in degree {dl}"),
                                })
                            }
                            // Dropped by truncation.
                            None => {}
                        }
                    }
                    cols.push(col);
                }
            }
            mult.insert((d1, d2), Matrix::from_columns(&cols, target.len())?);
        }
    }
    GradedAlgebra::new(window, idempotents, components, mult)
}

/// The group algebra `K[Z_n]`, graded by `Z_n`.
pub fn group_algebra<F: Field>(n: i64) -> Result<GradedAlgebra<F>> {
    let group = GradedGroup::cyclic(n)?;
    let window = Window::new(group, 0, n - 1)?;
    let basis: Vec<BasisElement> = (0..n)
        .map(|d| BasisElement {
            degree: d,
            left: 0,
            right: 0,
        })
        .collect();
    algebra_from_table(window, 1, &basis, |i, j| {
        vec![(((i + j) as i64 % n) as usize, F::one())]
    })
}

/// `K[x]/(x^k)` with `deg x = g`, on the window `[lo, hi]` of `Z`.
pub fn truncated_poly<F: Field>(k: usize, g: i64, window: (i64, i64)) -> Result<GradedAlgebra<F>> {
    if k == 0 {
        return precondition("K[x]/(x^0) is the zero ring");
    }
    let window = Window::new(GradedGroup::Integers, window.0, window.1)?;
    let basis: Vec<BasisElement> = (0..k)
        .map(|i| BasisElement {
            degree: i as i64 * g,
            left: 0,
            right: 0,
        })
        .collect();
    algebra_from_table(window, 1, &basis, |i, j| {
        if i + j < k {
            vec![(i + j, F::one())]
        } else {
            Vec::new()
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessCase {
    /// `g ≠ h`, `g + h = 0`: degree zero is `K + K xy`.
    Iii,
    /// `g ≠ h`, `g + h ≠ 0`: four one-dimensional components.
    Iv,
}

impl WitnessCase {
    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "iii" | "3" => Some(WitnessCase::Iii),
            "iv" | "4" => Some(WitnessCase::Iv),
            _ => None,
        }
    }
}

/// `K⟨x,y⟩/(x², y², yx)` with `deg x = g`, `deg y = h`; basis `1, x, y, xy`.
pub fn two_var_witness<F: Field>(case: WitnessCase, g: i64, h: i64, window: (i64, i64)) -> Result<GradedAlgebra<F>> {
    if g == h {
        return precondition("the two-variable witness needs deg x ≠ deg y");
    }
    match case {
        WitnessCase::Iii if g + h != 0 => return precondition("case iii needs g + h = 0"),
        WitnessCase::Iv if g + h == 0 => return precondition("case iv needs g + h ≠ 0"),
        _ => {}
    }
    if g == 0 || h == 0 {
        return precondition("generators of the witness must have nonzero degree");
    }
    let window = Window::new(GradedGroup::Integers, window.0, window.1)?;
    for d in [g, h, g + h] {
        if !window.contains(d) {
            return Err(Error::WindowViolation {
                degree: d,
                lo: window.lo,
                hi: window.hi,
            });
        }
    }
    let degrees = [0, g, h, g + h];
    let basis: Vec<BasisElement> = degrees
        .iter()
        .map(|&d| BasisElement {
            degree: d,
            left: 0,
            right: 0,
        })
        .collect();
    // 0 = 1, 1 = x, 2 = y, 3 = xy.
    algebra_from_table(window, 1, &basis, |i, j| match (i, j) {
        (0, j) => vec![(j, F::one())],
        (i, 0) => vec![(i, F::one())],
        (1, 2) => vec![(3, F::one())],
        _ => Vec::new(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A linear combination of paths, each path a sequence of arrow indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation<F> {
    pub terms: Vec<(F, Vec<usize>)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Path {
    Trivial(usize),
    Arrows(Vec<usize>),
}

fn path_ends(path: &Path, arrows: &[Arrow]) -> (usize, usize) {
    match path {
        Path::Trivial(v) => (*v, *v),
        Path::Arrows(a) => (arrows[a[0]].source, arrows[*a.last().unwrap()].target),
    }
}

fn concat(p: &Path, q: &Path) -> Path {
    match (p, q) {
        (Path::Trivial(_), q) => q.clone(),
        (p, Path::Trivial(_)) => p.clone(),
        (Path::Arrows(a), Path::Arrows(b)) => Path::Arrows(a.iter().chain(b).copied().collect()),
    }
}

fn paths_by_length(vertices: usize, arrows: &[Arrow], max_len: usize) -> Vec<Vec<Path>> {
    let mut out: Vec<Vec<Path>> = vec![(0..vertices).map(Path::Trivial).collect()];
    if max_len >= 1 {
        out.push((0..arrows.len()).map(|a| Path::Arrows(vec![a])).collect());
    }
    for len in 2..=max_len {
        let mut next = Vec::new();
        for p in &out[len - 1] {
            let Path::Arrows(a) = p else { unreachable!() };
            let end = arrows[*a.last().unwrap()].target;
            for (b, arrow) in arrows.iter().enumerate() {
                if arrow.source == end {
                    let mut v = a.clone();
                    v.push(b);
                    next.push(Path::Arrows(v));
                }
            }
        }
        out.push(next);
    }
    out
}

/// Path algebra `KQ / I` graded by path length on `[0, D]`, where `I` is
/// generated by homogeneous relations. Degree zero is `K^{vertices}`.
pub fn quiver_algebra<F: Field>(
    vertices: usize,
    arrows: &[Arrow],
    relations: &[Relation<F>],
    top: i64,
) -> Result<GradedAlgebra<F>> {
    if vertices == 0 {
        return precondition("a quiver needs at least one vertex");
    }
    if top < 0 {
        return precondition("the degree window must contain 0");
    }
    if let Some(a) = arrows.iter().find(|a| a.source >= vertices || a.target >= vertices) {
        return precondition(format!("arrow {} uses a vertex out of range", a.name));
    }
    let d_max = top as usize;
    let paths = paths_by_length(vertices, arrows, d_max);
    let index: Vec<HashMap<Path, usize>> = paths
        .iter()
        .map(|ps| ps.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect())
        .collect();

    // Split relations into their (source, target) blocks.
    let mut rels: Vec<(usize, Vec<(F, Path)>)> = Vec::new();
    for rel in relations {
        let mut blocks: BTreeMap<(usize, usize), Vec<(F, Path)>> = BTreeMap::new();
        let mut len = None;
        for (c, word) in &rel.terms {
            if word.is_empty() {
                return precondition("relations must not involve trivial paths");
            }
            if let Some(&bad) = word.iter().find(|&&a| a >= arrows.len()) {
                return precondition(format!("relation uses unknown arrow {bad}"));
            }
            if word.windows(2).any(|w| arrows[w[0]].target != arrows[w[1]].source) {
                return precondition("relation contains a non-composable word");
            }
            if *len.get_or_insert(word.len()) != word.len() {
                return precondition("relations must be homogeneous in path length");
            }
            let p = Path::Arrows(word.clone());
            blocks.entry(path_ends(&p, arrows)).or_default().push((c.clone(), p));
        }
        for (_, terms) in blocks {
            rels.push((len.unwrap_or(0), terms));
        }
    }

    // Ideal in each degree, and the quotient basis of non-pivot paths.
    let mut ideals: Vec<Subspace<F>> = Vec::new();
    for (d, ps) in paths.iter().enumerate() {
        let mut gens = Vec::new();
        for (len, terms) in &rels {
            if *len > d {
                continue;
            }
            let (src, dst) = path_ends(&terms[0].1, arrows);
            for a in 0..=d - len {
                let b = d - len - a;
                for p in paths[a].iter().filter(|p| path_ends(p, arrows).1 == src) {
                    for q in paths[b].iter().filter(|q| path_ends(q, arrows).0 == dst) {
                        let mut v = vec![F::zero(); ps.len()];
                        for (c, w) in terms {
                            let full = concat(&concat(p, w), q);
                            v[index[d][&full]] += c.clone();
                        }
                        gens.push(v);
                    }
                }
            }
        }
        let mut rows = gens;
        rref(&mut rows, ps.len());
        ideals.push(Subspace::span(ps.len(), rows)?);
    }
    let mut basis = Vec::new();
    let mut global: Vec<Vec<Option<usize>>> = Vec::new();
    let mut paths_of = Vec::new();
    for (d, ps) in paths.iter().enumerate() {
        let mut map = vec![None; ps.len()];
        for (i, p) in ps.iter().enumerate() {
            if ideals[d].pivots().contains(&i) {
                continue;
            }
            map[i] = Some(basis.len());
            let (l, r) = path_ends(p, arrows);
            basis.push(BasisElement {
                degree: d as i64,
                left: l,
                right: r,
            });
            paths_of.push((d, p.clone()));
        }
        global.push(map);
    }
    let window = Window::new(GradedGroup::Integers, 0, top)?;
    algebra_from_table(window, vertices, &basis, |i, j| {
        let (d1, p) = &paths_of[i];
        let (d2, q) = &paths_of[j];
        let d = d1 + d2;
        if d > d_max {
            return Vec::new();
        }
        let mut v = vec![F::zero(); paths[d].len()];
        v[index[d][&concat(p, q)]] = F::one();
        let r = ideals[d].reduce(&v);
        r.into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (global[d][k].expect("reduced vectors live on non-pivot paths"), c))
            .collect()
    })
}

/// One-vertex quiver with a loop per variable name.
pub fn loops(names: &[&str]) -> Vec<Arrow> {
    names
        .iter()
        .map(|n| Arrow {
            name: n.to_string(),
            source: 0,
            target: 0,
        })
        .collect()
}

/// Parses `"x*y - y*x"`, `"2*x*x*x + 1/2*y*z"` and similar expressions
/// over the given arrow names.
pub fn parse_relation<F: Field>(text: &str, arrows: &[Arrow]) -> Result<Relation<F>> {
    let names: HashMap<&str, usize> = arrows.iter().enumerate().map(|(i, a)| (a.name.as_str(), i)).collect();
    let mut terms = Vec::new();
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return precondition("empty relation");
    }
    let mut pieces = Vec::new();
    let mut current = String::new();
    for (i, ch) in compact.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 {
            pieces.push(std::mem::take(&mut current));
        }
        current.push(ch);
    }
    pieces.push(current);
    for piece in pieces {
        let (sign, body) = match piece.strip_prefix('-') {
            Some(rest) => (-F::one(), rest.to_string()),
            None => (F::one(), piece.trim_start_matches('+').to_string()),
        };
        let mut coeff = sign;
        let mut word = Vec::new();
        for factor in body.split('*') {
            if factor.is_empty() {
                return precondition(format!("malformed term '{piece}'"));
            }
            if factor.chars().next().unwrap().is_ascii_digit() {
                let c = F::parse_scalar(factor)
                    .ok_or_else(|| Error::Precondition(format!("bad coefficient '{factor}'")))?;
                coeff *= c;
            } else {
                let a = names
                    .get(factor)
                    .ok_or_else(|| Error::Precondition(format!("unknown variable '{factor}'")))?;
                word.push(*a);
            }
        }
        terms.push((coeff, word));
    }
    Ok(Relation { terms })
}

/// Word `(i_1, ..., i_n)` over `vdim` letters as an index of `V^{⊗n}`.
pub fn word_index(vdim: usize, word: &[usize]) -> usize {
    word.iter().fold(0, |acc, &i| acc * vdim + i)
}

fn word_of(vdim: usize, n: usize, mut idx: usize) -> Vec<usize> {
    let mut w = vec![0; n];
    for slot in w.iter_mut().rev() {
        *slot = idx % vdim;
        idx /= vdim;
    }
    w
}

/// `R^⊥ ⊆ (V^*)^{⊗n}` under the pairing of dual word bases.
pub fn perp<F: Field>(r: &Subspace<F>) -> Subspace<F> {
    r.annihilator()
}

/// The `n`-homogeneous dual `T(V^*) / (R^⊥)` of `T(V)/(R)`, truncated to
/// `[0, top]`. `R` is a subspace of `V^{⊗n}` in the word basis.
pub fn n_homogeneous_dual<F: Field>(vdim: usize, n: usize, r: &Subspace<F>, top: i64) -> Result<GradedAlgebra<F>> {
    if vdim == 0 || n == 0 {
        return precondition("need dim V ≥ 1 and n ≥ 1");
    }
    let expected = vdim.pow(n as u32);
    if r.ambient_dim() != expected {
        return Err(Error::Shape(format!(
            "R lives in dimension {}, expected dim V^{{⊗{n}}} = {expected}",
            r.ambient_dim()
        )));
    }
    if top < n as i64 {
        return precondition(format!("window top {top} is below the relation degree {n}"));
    }
    let arrows = dual_letters(vdim);
    let relations: Vec<Relation<F>> = perp(r)
        .basis()
        .iter()
        .map(|v| Relation {
            terms: v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (c.clone(), word_of(vdim, n, i)))
                .collect(),
        })
        .collect();
    quiver_algebra(1, &arrows, &relations, top)
}

/// Letter names `x, y, z, w` for up to four variables, `x0, x1, ...` beyond.
pub fn variable_names(vdim: usize) -> Vec<String> {
    if vdim <= 4 {
        ["x", "y", "z", "w"][..vdim].iter().map(|s| s.to_string()).collect()
    } else {
        (0..vdim).map(|i| format!("x{i}")).collect()
    }
}

fn dual_letters(vdim: usize) -> Vec<Arrow> {
    variable_names(vdim)
        .into_iter()
        .map(|name| Arrow {
            name,
            source: 0,
            target: 0,
        })
        .collect()
}

/// `R ⊆ V^{⊗n}` spanned by parsed relation strings in the variables of
/// [`variable_names`].
pub fn relation_space<F: Field>(vdim: usize, n: usize, texts: &[&str]) -> Result<Subspace<F>> {
    let arrows = dual_letters(vdim);
    let mut vecs = Vec::new();
    for t in texts {
        let rel = parse_relation::<F>(t, &arrows)?;
        let mut v = vec![F::zero(); vdim.pow(n as u32)];
        for (c, w) in rel.terms {
            if w.len() != n {
                return precondition(format!("'{t}' is not homogeneous of degree {n}"));
            }
            v[word_index(vdim, &w)] += c;
        }
        vecs.push(v);
    }
    Subspace::span(vdim.pow(n as u32), vecs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gf101, Rational};
    use crate::graded_core::validate_algebra;
    use num_traits::Zero;

    type Q = Rational;

    #[test]
    fn group_algebra_shape() {
        let a = group_algebra::<Q>(5).unwrap();
        assert_eq!(a.dims(), vec![1; 5]);
        for m in a.mult_entries().values() {
            assert_eq!(m, &Matrix::identity(1));
        }
        assert_eq!(group_algebra::<Q>(1).unwrap().dims(), vec![1]);
        for n in 1..=12 {
            assert!(validate_algebra(&group_algebra::<Gf101>(n).unwrap()).holds);
        }
    }

    #[test]
    fn truncated_poly_shapes() {
        let a = truncated_poly::<Q>(2, 3, (0, 3)).unwrap();
        assert_eq!(a.dims(), vec![1, 0, 0, 1]);
        let b = truncated_poly::<Q>(3, 1, (0, 3)).unwrap();
        assert_eq!(b.dims(), vec![1, 1, 1, 0]);
        // x · x² = 0
        assert!(b.basis_product(1, 0, 2, 0).iter().all(|c| c.is_zero()));
        assert!(validate_algebra(&b).holds);
        assert!(b.flags().generated_in_degrees_0_1);
    }

    #[test]
    fn witness_cases() {
        let iii = two_var_witness::<Q>(WitnessCase::Iii, 2, -2, (-2, 2)).unwrap();
        assert_eq!(iii.dim(0), 2);
        assert!(!iii.flags().split_semisimple_degree_zero);
        let x = iii.basis_product(2, 0, -2, 0);
        assert!(x.iter().any(|c| !c.is_zero()));
        assert!(validate_algebra(&iii).holds);
        let iv = two_var_witness::<Q>(WitnessCase::Iv, 1, 3, (0, 4)).unwrap();
        assert_eq!(iv.dims(), vec![1, 1, 0, 1, 1]);
        assert!(iv.basis_product(1, 0, 3, 0).iter().any(|c| !c.is_zero()));
        assert!(validate_algebra(&iv).holds);
        assert!(two_var_witness::<Q>(WitnessCase::Iii, 1, 2, (0, 3)).is_err());
    }

    #[test]
    fn quiver_examples() {
        let arrows = loops(&["x"]);
        let rel = parse_relation::<Q>("x*x*x", &arrows).unwrap();
        let a = quiver_algebra(1, &arrows, &[rel], 5).unwrap();
        assert_eq!(a, truncated_poly::<Q>(3, 1, (0, 5)).unwrap());

        let one_arrow = vec![Arrow {
            name: "a".into(),
            source: 0,
            target: 1,
        }];
        let b = quiver_algebra::<Q>(2, &one_arrow, &[], 3).unwrap();
        assert_eq!(b.dims(), vec![2, 1, 0, 0]);
        assert!(b.flags().split_semisimple_degree_zero);

        let kronecker = vec![
            Arrow {
                name: "a".into(),
                source: 0,
                target: 1,
            },
            Arrow {
                name: "b".into(),
                source: 0,
                target: 1,
            },
        ];
        let k = quiver_algebra::<Q>(2, &kronecker, &[], 2).unwrap();
        assert_eq!(k.dims(), vec![2, 2, 0]);
        assert!(validate_algebra(&k).holds);
    }

    #[test]
    fn relation_parser() {
        let arrows = loops(&["x", "y"]);
        let r = parse_relation::<Q>("x*y - 2*y*x + 1/2*x*x", &arrows).unwrap();
        assert_eq!(r.terms.len(), 3);
        assert_eq!(r.terms[1].0, Q::from_i64(-2));
        assert_eq!(r.terms[2].1, vec![0, 0]);
        assert!(parse_relation::<Q>("x*q", &arrows).is_err());
        assert!(parse_relation::<Q>("x**y", &arrows).is_err());
    }

    #[test]
    fn homogeneous_duals() {
        let r = relation_space::<Q>(1, 3, &["x*x*x"]).unwrap();
        let d = n_homogeneous_dual(1, 3, &r, 6).unwrap();
        assert_eq!(d.dims(), vec![1; 7]);

        let zero = Subspace::<Q>::zero(1);
        let d = n_homogeneous_dual(1, 2, &zero, 4).unwrap();
        assert_eq!(d.dims(), vec![1, 1, 0, 0, 0]);

        let comm = relation_space::<Q>(2, 2, &["x*y - y*x"]).unwrap();
        assert_eq!(perp(&comm).dim(), 3);
        let d = n_homogeneous_dual(2, 2, &comm, 3).unwrap();
        assert_eq!(d.dims(), vec![1, 2, 1, 0]);
        assert!(validate_algebra(&d).holds);

        assert!(n_homogeneous_dual(1, 3, &r, 2).is_err());
    }
}
