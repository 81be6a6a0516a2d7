use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{precondition, Error, Result};
use crate::exactlin::{matched_tensor, LabeledSpace, Matrix, TensorBasis};
use crate::field::Field;
use crate::subsets::GradedGroup;
use crate::verdict::Verdict;

use super::algebra::{GradedAlgebra, Window};

/// A graded right module on a finite window, zero outside it.
///
/// `action[(s, u)]` is the map `M_s ⊗_{A_0} A_u → M_{s+u}` in the matched
/// tensor basis. Keys exist for every `s`, `s+u` in the module window and
/// `u` in the algebra window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedModule<F: Field> {
    algebra: Arc<GradedAlgebra<F>>,
    window: Window,
    components: Vec<LabeledSpace>,
    action: BTreeMap<(i64, i64), Matrix<F>>,
    tensors: BTreeMap<(i64, i64), TensorBasis>,
}

impl<F: Field> GradedModule<F> {
    /// Missing action keys are filled with zero maps.
    pub fn new(
        algebra: Arc<GradedAlgebra<F>>,
        window: Window,
        components: Vec<LabeledSpace>,
        mut action: BTreeMap<(i64, i64), Matrix<F>>,
    ) -> Result<Self> {
        if window.group != algebra.group() {
            return precondition(format!(
                "module graded by {} over an algebra graded by {}",
                window.group,
                algebra.group()
            ));
        }
        if components.len() != window.len() {
            return Err(Error::Shape(format!(
                "{} components for a window of {} degrees",
                components.len(),
                window.len()
            )));
        }
        for c in &components {
            if c.idempotents != algebra.idempotents() {
                return Err(Error::Label("module tags use a different idempotent set".into()));
            }
            c.check()?;
        }
        let aw = algebra.window();
        let mut tensors = BTreeMap::new();
        for s in window.degrees() {
            for u in aw.degrees() {
                let t = window.add(s, u);
                let Some(ti) = window.index(t) else {
                    continue;
                };
                let tb = matched_tensor(&components[window.index(s).unwrap()], algebra.component(u).unwrap())?;
                let rows = components[ti].dim();
                match action.get(&(s, u)) {
                    Some(m) if m.rows() != rows || m.cols() != tb.dim() => {
                        return Err(Error::Shape(format!(
                            "action({s},{u}) is {}x{}, expected {rows}x{}",
                            m.rows(),
                            m.cols(),
                            tb.dim()
                        )));
                    }
                    Some(_) => {}
                    None => {
                        action.insert((s, u), Matrix::zeros(rows, tb.dim()));
                    }
                }
                tensors.insert((s, u), tb);
            }
        }
        if let Some(k) = action.keys().find(|k| !tensors.contains_key(k)) {
            return Err(Error::WindowViolation {
                degree: window.add(k.0, k.1),
                lo: window.lo,
                hi: window.hi,
            });
        }
        Ok(GradedModule {
            algebra,
            window,
            components,
            action,
            tensors,
        })
    }

    pub fn zero(algebra: Arc<GradedAlgebra<F>>, window: Window) -> Result<Self> {
        let k = algebra.idempotents();
        let comps = vec![LabeledSpace::zero(k, false); window.len()];
        GradedModule::new(algebra, window, comps, BTreeMap::new())
    }

    /// The algebra as a right module over itself.
    pub fn regular(algebra: Arc<GradedAlgebra<F>>) -> Result<Self> {
        let w = algebra.window();
        let comps = algebra
            .components()
            .iter()
            .map(|c| LabeledSpace::right_module(c.idempotents, c.right.clone()))
            .collect();
        let action = algebra.mult_entries().clone();
        GradedModule::new(algebra, w, comps, action)
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra<F>> {
        &self.algebra
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn component(&self, s: i64) -> Option<&LabeledSpace> {
        self.window.index(s).map(|i| &self.components[i])
    }

    pub fn components(&self) -> &[LabeledSpace] {
        &self.components
    }

    pub fn dim(&self, s: i64) -> usize {
        self.component(s).map_or(0, |c| c.dim())
    }

    pub fn dims(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.dim()).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.components.iter().map(|c| c.dim()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn tags(&self, s: i64) -> &[usize] {
        self.component(s).map_or(&[], |c| &c.right)
    }

    /// Degrees with nonzero components.
    pub fn support(&self) -> Vec<i64> {
        self.window.degrees().filter(|&s| self.dim(s) > 0).collect()
    }

    fn key(&self, s: i64, u: i64) -> (i64, i64) {
        let g = self.window.group;
        (g.normalize(s), g.normalize(u))
    }

    pub fn action(&self, s: i64, u: i64) -> Option<&Matrix<F>> {
        self.action.get(&self.key(s, u))
    }

    pub fn action_entries(&self) -> &BTreeMap<(i64, i64), Matrix<F>> {
        &self.action
    }

    pub fn tensor(&self, s: i64, u: i64) -> Option<&TensorBasis> {
        self.tensors.get(&self.key(s, u))
    }

    /// `x · a` for homogeneous `x ∈ M_s`, `a ∈ A_u`; empty when `s+u` is
    /// outside the window.
    pub fn act(&self, s: i64, x: &[F], u: i64, a: &[F]) -> Vec<F> {
        let (Some(m), Some(tb)) = (self.action(s, u), self.tensor(s, u)) else {
            return Vec::new();
        };
        let mut out = vec![F::zero(); m.rows()];
        for (c, &(i, j)) in tb.pairs.iter().enumerate() {
            if x[i].is_zero() || a[j].is_zero() {
                continue;
            }
            let f = x[i].clone() * a[j].clone();
            for (r, o) in out.iter_mut().enumerate() {
                let e = &m[(r, c)];
                if !e.is_zero() {
                    *o += f.clone() * e.clone();
                }
            }
        }
        out
    }

    /// Matrix of `x ↦ x · a_j` from `M_s` to `M_{s+u}`, for the basis
    /// vector `a_j` of `A_u`. `None` when `s+u` is outside the window.
    pub fn right_mult(&self, s: i64, u: i64, j: usize) -> Option<Matrix<F>> {
        let m = self.action(s, u)?;
        let tb = self.tensor(s, u)?;
        let mut out = Matrix::zeros(m.rows(), self.dim(s));
        for i in 0..self.dim(s) {
            if let Some(c) = tb.index_of(i, j) {
                for r in 0..m.rows() {
                    out[(r, i)] = m[(r, c)].clone();
                }
            }
        }
        Some(out)
    }

    /// Every `(u, j, matrix)` acting out of degree `s`, including the
    /// idempotents in degree 0.
    pub fn right_mults_from(&self, s: i64) -> Vec<(i64, Matrix<F>)> {
        let mut out = Vec::new();
        for u in self.algebra.window().degrees() {
            for j in 0..self.algebra.dim(u) {
                if let Some(m) = self.right_mult(s, u, j) {
                    out.push((self.window.add(s, u), m));
                }
            }
        }
        out
    }

    /// Degrees `u` of algebra elements whose action determines the module
    /// structure: `{0, 1}` when the algebra is generated there, all
    /// otherwise.
    pub(crate) fn generating_degrees(&self) -> Vec<i64> {
        if self.algebra.flags().generated_in_degrees_0_1 {
            self.algebra.window().degrees().filter(|&u| u <= 1).collect()
        } else {
            self.algebra.window().degrees().collect()
        }
    }
}

/// `true` when `a` and `b` are the same algebra (pointer or value).
pub fn same_algebra<F: Field>(a: &Arc<GradedAlgebra<F>>, b: &Arc<GradedAlgebra<F>>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Tag compatibility, unit law, and `(x a) b = x (a b)` on basis triples.
/// Products leaving the window are zero, so `x (a b)` must vanish whenever
/// `x a` lands outside the window.
pub fn validate_module<F: Field>(m: &GradedModule<F>) -> Verdict {
    let a = m.algebra();
    let w = m.window();
    let aw = a.window();
    let certified = w.group == GradedGroup::Integers;
    for (&(s, u), mat) in m.action_entries() {
        let tb = m.tensor(s, u).unwrap();
        let target = m.tags(w.add(s, u));
        let au = a.component(u).unwrap();
        for (c, &(_, j)) in tb.pairs.iter().enumerate() {
            for (r, &tag) in target.iter().enumerate() {
                if !mat[(r, c)].is_zero() && tag != au.right[j] {
                    return Verdict::fail(certified, vec![s, u], "action leaves its idempotent block");
                }
            }
        }
    }
    for s in w.degrees() {
        for i in 0..m.dim(s) {
            let mut x = vec![F::zero(); m.dim(s)];
            x[i] = F::one();
            if m.act(s, &x, 0, &a.unit()) != x {
                return Verdict::fail(certified, vec![s, 0], format!("x_{i} · 1 ≠ x_{i} in degree {s}"));
            }
        }
    }
    for s in w.degrees() {
        for u in aw.degrees() {
            for v in aw.degrees() {
                let su = w.add(s, u);
                let uv = aw.add(u, v);
                let suv = w.add(su, v);
                if !w.contains(suv) {
                    continue;
                }
                for i in 0..m.dim(s) {
                    let mut x = vec![F::zero(); m.dim(s)];
                    x[i] = F::one();
                    for j in 0..a.dim(u) {
                        for k in 0..a.dim(v) {
                            let mut b = vec![F::zero(); a.dim(v)];
                            b[k] = F::one();
                            let lhs = if w.contains(su) {
                                let mut y = vec![F::zero(); a.dim(u)];
                                y[j] = F::one();
                                let xa = m.act(s, &x, u, &y);
                                m.act(su, &xa, v, &b)
                            } else {
                                vec![F::zero(); m.dim(suv)]
                            };
                            let rhs = if aw.contains(uv) {
                                let ab = a.basis_product(u, j, v, k);
                                m.act(s, &x, uv, &ab)
                            } else {
                                vec![F::zero(); m.dim(suv)]
                            };
                            if lhs != rhs {
                                return Verdict::fail(
                                    certified,
                                    vec![s, u, v],
                                    format!("(x_{i} a_{j}) a_{k} ≠ x_{i} (a_{j} a_{k})"),
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    Verdict::pass(certified)
}

/// `M[g]` with `M[g]_h = M_{h-g}`.
pub fn shift_module<F: Field>(m: &GradedModule<F>, g: i64) -> Result<GradedModule<F>> {
    let w = m.window();
    let window = match w.group {
        GradedGroup::Integers => Window::new(w.group, w.lo + g, w.hi + g)?,
        GradedGroup::Cyclic(_) => w,
    };
    let components = window.degrees().map(|h| m.component(h - g).unwrap().clone()).collect();
    let action = m
        .action_entries()
        .iter()
        .map(|(&(s, u), mat)| ((w.group.normalize(s + g), u), mat.clone()))
        .collect();
    GradedModule::new(m.algebra().clone(), window, components, action)
}

/// `⊕_i e_{r_i} A[m_i]` for generators `(m_i, r_i)`, on the given window.
pub fn free_module<F: Field>(
    algebra: Arc<GradedAlgebra<F>>,
    generators: &[(i64, usize)],
    window: Window,
) -> Result<GradedModule<F>> {
    let k = algebra.idempotents();
    if let Some(&(_, r)) = generators.iter().find(|g| g.1 >= k) {
        return Err(Error::Label(format!("generator tag {r} with {k} idempotents")));
    }
    let aw = algebra.window();
    let blocks = free_basis(&algebra, generators, window);
    let components: Vec<LabeledSpace> = window
        .degrees()
        .zip(&blocks)
        .map(|(t, b)| {
            let right = b
                .iter()
                .map(|&(gi, j)| algebra.component(t - generators[gi].0).unwrap().right[j])
                .collect();
            LabeledSpace::right_module(k, right)
        })
        .collect();
    let mut action = BTreeMap::new();
    for t in window.degrees() {
        let src = &blocks[window.index(t).unwrap()];
        for u in aw.degrees() {
            let tu = window.add(t, u);
            let Some(ti) = window.index(tu) else {
                continue;
            };
            let dst = &blocks[ti];
            let pos: BTreeMap<(usize, usize), usize> = dst.iter().enumerate().map(|(p, &b)| (b, p)).collect();
            let tb = matched_tensor(&components[window.index(t).unwrap()], algebra.component(u).unwrap())?;
            let mut mat = Matrix::zeros(dst.len(), tb.dim());
            for (c, &(i, j)) in tb.pairs.iter().enumerate() {
                let (gi, bj) = src[i];
                let d = t - generators[gi].0;
                let prod = algebra.basis_product(d, bj, u, j);
                let du = aw.add(d, u);
                for (l, x) in prod.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    let p = pos.get(&(gi, l)).copied().ok_or_else(|| {
                        Error::InternalConsistency(format!("free module basis misses e_r A_{du} vector {l}"))
                    })?;
                    mat[(p, c)] = x.clone();
                }
            }
            action.insert((t, u), mat);
        }
    }
    GradedModule::new(algebra, window, components, action)
}

/// Basis of each degree of a free module as (generator, algebra basis
/// index) pairs, in the order used by [`free_module`].
pub(crate) fn free_basis<F: Field>(
    algebra: &GradedAlgebra<F>,
    generators: &[(i64, usize)],
    window: Window,
) -> Vec<Vec<(usize, usize)>> {
    let aw = algebra.window();
    window
        .degrees()
        .map(|t| {
            let mut b = Vec::new();
            for (gi, &(m, r)) in generators.iter().enumerate() {
                let d = window.group.normalize(t - m);
                if aw.contains(d) {
                    for j in algebra.left_tagged(d, r) {
                        b.push((gi, j));
                    }
                }
            }
            b
        })
        .collect()
}
