use std::collections::BTreeMap;

use crate::error::{precondition, Error, Result};
use crate::exactlin::{image, matched_tensor, LabeledSpace, Matrix, TensorBasis};
use crate::field::Field;
use crate::subsets::GradedGroup;
use crate::verdict::Verdict;

/// Degree bookkeeping shared by algebras and modules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    pub group: GradedGroup,
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub fn new(group: GradedGroup, lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return precondition(format!("empty window [{lo}, {hi}]"));
        }
        if let GradedGroup::Cyclic(n) = group {
            if lo != 0 || hi != n - 1 {
                return precondition(format!("Z_{n}-graded objects use the window [0, {}]", n - 1));
            }
        }
        Ok(Window { group, lo, hi })
    }

    /// Position of degree `g` in component vectors, if `g` is in the window.
    pub fn index(&self, g: i64) -> Option<usize> {
        let g = self.group.normalize(g);
        (self.lo..=self.hi).contains(&g).then(|| (g - self.lo) as usize)
    }

    pub fn contains(&self, g: i64) -> bool {
        self.index(g).is_some()
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn add(&self, a: i64, b: i64) -> i64 {
        self.group.add(a, b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct AlgebraFlags {
    pub positively_graded: bool,
    pub generated_in_degrees_0_1: bool,
    pub split_semisimple_degree_zero: bool,
}

/// A graded algebra on a finite window of degrees.
///
/// Degree zero is split basic: its first `idempotents` basis vectors are
/// orthogonal idempotents summing to the unit, and every basis vector of
/// every component carries a left and a right idempotent tag. For
/// `Z`-graded algebras on `[0, D]` the object is the quotient `A / A_{>D}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAlgebra<F: Field> {
    window: Window,
    idempotents: usize,
    components: Vec<LabeledSpace>,
    mult: BTreeMap<(i64, i64), Matrix<F>>,
    tensors: BTreeMap<(i64, i64), TensorBasis>,
    flags: AlgebraFlags,
}

impl<F: Field> GradedAlgebra<F> {
    /// Missing multiplication keys are filled with zero maps.
    pub fn new(
        window: Window,
        idempotents: usize,
        components: Vec<LabeledSpace>,
        mut mult: BTreeMap<(i64, i64), Matrix<F>>,
    ) -> Result<Self> {
        if !window.contains(0) {
            return precondition("the degree window must contain 0");
        }
        if idempotents == 0 {
            return precondition("degree zero needs at least one idempotent");
        }
        if components.len() != window.len() {
            return Err(Error::Shape(format!(
                "{} components for a window of {} degrees",
                components.len(),
                window.len()
            )));
        }
        for c in &components {
            if c.idempotents != idempotents || c.left.is_none() {
                return Err(Error::Label("algebra components must be bimodule-tagged".into()));
            }
            c.check()?;
        }
        let a0 = &components[window.index(0).unwrap()];
        if a0.dim() < idempotents || (0..idempotents).any(|i| a0.left_tag(i) != i || a0.right[i] != i) {
            return Err(Error::Label(
                "the first basis vectors of degree 0 must be the idempotents e_0, e_1, ...".into(),
            ));
        }
        let mut tensors = BTreeMap::new();
        for g in window.degrees() {
            for h in window.degrees() {
                let t = window.add(g, h);
                let Some(ti) = window.index(t) else {
                    continue;
                };
                let tb = matched_tensor(
                    &components[window.index(g).unwrap()],
                    &components[window.index(h).unwrap()],
                )?;
                let rows = components[ti].dim();
                match mult.get(&(g, h)) {
                    Some(m) if m.rows() != rows || m.cols() != tb.dim() => {
                        return Err(Error::Shape(format!(
                            "mult({g},{h}) is {}x{}, expected {rows}x{}",
                            m.rows(),
                            m.cols(),
                            tb.dim()
                        )));
                    }
                    Some(_) => {}
                    None => {
                        mult.insert((g, h), Matrix::zeros(rows, tb.dim()));
                    }
                }
                tensors.insert((g, h), tb);
            }
        }
        if let Some(k) = mult.keys().find(|k| !tensors.contains_key(k)) {
            return Err(Error::WindowViolation {
                degree: window.add(k.0, k.1),
                lo: window.lo,
                hi: window.hi,
            });
        }
        let mut a = GradedAlgebra {
            window,
            idempotents,
            components,
            mult,
            tensors,
            flags: AlgebraFlags::default(),
        };
        a.flags = a.compute_flags();
        Ok(a)
    }

    fn compute_flags(&self) -> AlgebraFlags {
        let positively_graded = self.window.group == GradedGroup::Integers && self.window.lo == 0;
        let generated = positively_graded
            && (2..=self.window.hi).all(|i| {
                let m = &self.mult[&(1, i - 1)];
                image(m).dim() == self.dim(i)
            });
        let k = self.idempotents;
        let semisimple = self.dim(0) == k
            && (0..k).all(|i| {
                (0..k).all(|j| {
                    let expect: Vec<F> = (0..k)
                        .map(|l| if i == j && l == i { F::one() } else { F::zero() })
                        .collect();
                    self.basis_product(0, i, 0, j) == expect
                })
            });
        AlgebraFlags {
            positively_graded,
            generated_in_degrees_0_1: generated,
            split_semisimple_degree_zero: semisimple,
        }
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn group(&self) -> GradedGroup {
        self.window.group
    }

    pub fn idempotents(&self) -> usize {
        self.idempotents
    }

    pub fn flags(&self) -> AlgebraFlags {
        self.flags
    }

    pub fn component(&self, g: i64) -> Option<&LabeledSpace> {
        self.window.index(g).map(|i| &self.components[i])
    }

    pub fn components(&self) -> &[LabeledSpace] {
        &self.components
    }

    pub fn dim(&self, g: i64) -> usize {
        self.component(g).map_or(0, |c| c.dim())
    }

    pub fn dims(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.dim()).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.components.iter().map(|c| c.dim()).sum()
    }

    fn key(&self, g: i64, h: i64) -> (i64, i64) {
        (self.window.group.normalize(g), self.window.group.normalize(h))
    }

    pub fn mult(&self, g: i64, h: i64) -> Option<&Matrix<F>> {
        self.mult.get(&self.key(g, h))
    }

    pub fn mult_entries(&self) -> &BTreeMap<(i64, i64), Matrix<F>> {
        &self.mult
    }

    pub fn tensor(&self, g: i64, h: i64) -> Option<&TensorBasis> {
        self.tensors.get(&self.key(g, h))
    }

    /// `a_i · a_j` for basis vectors `a_i ∈ A_g`, `a_j ∈ A_h`; zero when the
    /// tags do not match. Empty when `g + h` is outside the window.
    pub fn basis_product(&self, g: i64, i: usize, h: i64, j: usize) -> Vec<F> {
        let Some(m) = self.mult(g, h) else {
            return Vec::new();
        };
        match self.tensor(g, h).and_then(|tb| tb.index_of(i, j)) {
            Some(c) => m.column(c),
            None => vec![F::zero(); m.rows()],
        }
    }

    /// Product of arbitrary homogeneous elements.
    pub fn product(&self, g: i64, x: &[F], h: i64, y: &[F]) -> Vec<F> {
        let (Some(m), Some(tb)) = (self.mult(g, h), self.tensor(g, h)) else {
            return Vec::new();
        };
        let mut out = vec![F::zero(); m.rows()];
        for (c, &(i, j)) in tb.pairs.iter().enumerate() {
            if x[i].is_zero() || y[j].is_zero() {
                continue;
            }
            let f = x[i].clone() * y[j].clone();
            for (r, o) in out.iter_mut().enumerate() {
                let e = &m[(r, c)];
                if !e.is_zero() {
                    *o += f.clone() * e.clone();
                }
            }
        }
        out
    }

    /// Matrix of `y ↦ x · y` on `A_h` for fixed `x ∈ A_g`.
    pub fn left_mult_matrix(&self, g: i64, x: &[F], h: i64) -> Matrix<F> {
        let t = self.window.add(g, h);
        let cols: Vec<Vec<F>> = (0..self.dim(h))
            .map(|j| {
                let mut e = vec![F::zero(); self.dim(h)];
                e[j] = F::one();
                self.product(g, x, h, &e)
            })
            .collect();
        Matrix::from_columns(&cols, self.dim(t)).expect("columns have the target dimension")
    }

    pub fn idempotent(&self, r: usize) -> Vec<F> {
        let mut e = vec![F::zero(); self.dim(0)];
        e[r] = F::one();
        e
    }

    pub fn unit(&self) -> Vec<F> {
        let mut e = vec![F::zero(); self.dim(0)];
        for x in e.iter_mut().take(self.idempotents) {
            *x = F::one();
        }
        e
    }

    /// Same components and multiplication with some structure constants
    /// replaced; used to build corrupted inputs in tests.
    pub fn with_mult(&self, g: i64, h: i64, m: Matrix<F>) -> Result<Self> {
        let mut mult = self.mult.clone();
        mult.insert(self.key(g, h), m);
        GradedAlgebra::new(self.window, self.idempotents, self.components.clone(), mult)
    }

    /// Subspace of `A_g` spanned by basis vectors with the given left tag.
    pub fn left_tagged(&self, g: i64, tag: usize) -> Vec<usize> {
        self.component(g)
            .map_or_else(Vec::new, |c| (0..c.dim()).filter(|&i| c.left_tag(i) == tag).collect())
    }
}

/// Checks tag compatibility, the unit law and associativity on every
/// basis triple whose partial sums stay in the window.
pub fn validate_algebra<F: Field>(a: &GradedAlgebra<F>) -> Verdict {
    let w = a.window();
    let certified = w.group == GradedGroup::Integers;
    for (&(g, h), m) in a.mult_entries() {
        let t = w.add(g, h);
        let tb = a.tensor(g, h).unwrap();
        let target = a.component(t).unwrap();
        let ag = a.component(g).unwrap();
        let ah = a.component(h).unwrap();
        for (c, &(i, j)) in tb.pairs.iter().enumerate() {
            for r in 0..m.rows() {
                if !m[(r, c)].is_zero() && (target.left_tag(r) != ag.left_tag(i) || target.right[r] != ah.right[j]) {
                    return Verdict::fail(
                        certified,
                        vec![g, h],
                        format!("product of basis vectors {i}, {j} leaves its idempotent block"),
                    );
                }
            }
        }
    }
    for g in w.degrees() {
        let c = a.component(g).unwrap();
        for i in 0..c.dim() {
            let mut e = vec![F::zero(); c.dim()];
            e[i] = F::one();
            let unit = a.unit();
            if a.product(0, &unit, g, &e) != e {
                return Verdict::fail(certified, vec![0, g], format!("1 · a_{i} ≠ a_{i} in degree {g}"));
            }
            if a.product(g, &e, 0, &unit) != e {
                return Verdict::fail(certified, vec![g, 0], format!("a_{i} · 1 ≠ a_{i} in degree {g}"));
            }
        }
    }
    for g in w.degrees() {
        for h in w.degrees() {
            let gh = w.add(g, h);
            if !w.contains(gh) {
                continue;
            }
            for l in w.degrees() {
                let hl = w.add(h, l);
                let ghl = w.add(gh, l);
                if !w.contains(hl) || !w.contains(ghl) {
                    continue;
                }
                if let Some(v) = associativity_violation(a, g, h, l) {
                    return Verdict::fail(certified, vec![g, h, l], v);
                }
            }
        }
    }
    Verdict::pass(certified)
}

fn associativity_violation<F: Field>(a: &GradedAlgebra<F>, g: i64, h: i64, l: i64) -> Option<String> {
    let (dg, dh, dl) = (a.dim(g), a.dim(h), a.dim(l));
    let gh = a.window().add(g, h);
    let hl = a.window().add(h, l);
    for i in 0..dg {
        for j in 0..dh {
            let xy = a.basis_product(g, i, h, j);
            if xy.iter().all(|x| x.is_zero()) && a.component(g)?.right[i] != a.component(h)?.left_tag(j) {
                // (x y) z = 0 and x (y z) = 0 since y z keeps the left tag of y.
                continue;
            }
            for k in 0..dl {
                let mut z = vec![F::zero(); dl];
                z[k] = F::one();
                let mut x = vec![F::zero(); dg];
                x[i] = F::one();
                let lhs = a.product(gh, &xy, l, &z);
                let yz = a.basis_product(h, j, l, k);
                let rhs = a.product(g, &x, hl, &yz);
                if lhs != rhs {
                    return Some(format!(
                        "(a_{i} a_{j}) a_{k} ≠ a_{i} (a_{j} a_{k}) in degrees ({g},{h},{l})"
                    ));
                }
            }
        }
    }
    None
}
