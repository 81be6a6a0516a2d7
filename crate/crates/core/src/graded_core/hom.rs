use rand::Rng;

use crate::error::{precondition, Result};
use crate::exactlin::{kernel, Matrix};
use crate::field::Field;

use super::module::{same_algebra, GradedModule};

/// A degree-preserving linear map, one matrix `N_g × M_g` per degree of
/// the source window.
pub type GradedMap<F> = Vec<Matrix<F>>;

struct Unknowns {
    offsets: Vec<usize>,
    total: usize,
}

fn unknowns<F: Field>(m: &GradedModule<F>, n: &GradedModule<F>) -> Unknowns {
    let mut offsets = Vec::new();
    let mut total = 0;
    for g in m.window().degrees() {
        offsets.push(total);
        total += n.dim(g) * m.dim(g);
    }
    Unknowns { offsets, total }
}

/// Rows of the linear system `f_{s+u} ∘ (· a) = (· a) ∘ f_s`.
fn hom_equations<F: Field>(m: &GradedModule<F>, n: &GradedModule<F>, x: &Unknowns) -> Vec<Vec<F>> {
    let mw = m.window();
    let mut rows = Vec::new();
    for (si, s) in mw.degrees().enumerate() {
        let ds = m.dim(s);
        if ds == 0 {
            continue;
        }
        for u in m.generating_degrees() {
            let t = mw.add(s, u);
            let dt_n = n.dim(t);
            if dt_n == 0 {
                continue;
            }
            for j in 0..m.algebra().dim(u) {
                let rm = m.right_mult(s, u, j);
                let rn = n.right_mult(s, u, j);
                let ti = mw.index(t);
                for p in 0..dt_n {
                    for q in 0..ds {
                        let mut row = vec![F::zero(); x.total];
                        let mut nonzero = false;
                        // Σ_l f_t[p,l] · RM[l,q]
                        if let (Some(rm), Some(ti)) = (&rm, ti) {
                            let dt_m = m.dim(t);
                            for l in 0..dt_m {
                                let c = &rm[(l, q)];
                                if !c.is_zero() {
                                    row[x.offsets[ti] + p * dt_m + l] += c.clone();
                                    nonzero = true;
                                }
                            }
                        }
                        // - Σ_l RN[p,l] · f_s[l,q]
                        if let Some(rn) = &rn {
                            for l in 0..n.dim(s) {
                                let c = &rn[(p, l)];
                                if !c.is_zero() {
                                    row[x.offsets[si] + l * ds + q] -= c.clone();
                                    nonzero = true;
                                }
                            }
                        }
                        if nonzero {
                            rows.push(row);
                        }
                    }
                }
            }
        }
    }
    rows
}

fn check_compatible<F: Field>(m: &GradedModule<F>, n: &GradedModule<F>) -> Result<()> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return precondition("modules over different algebras");
    }
    Ok(())
}

/// A basis of the graded homomorphisms `M → N`.
pub fn hom_space<F: Field>(m: &GradedModule<F>, n: &GradedModule<F>) -> Result<Vec<GradedMap<F>>> {
    check_compatible(m, n)?;
    let x = unknowns(m, n);
    let rows = hom_equations(m, n, &x);
    let system = Matrix::from_rows(rows, x.total)?;
    let sol = kernel(&system);
    Ok(sol.basis().iter().map(|v| unpack(m, n, &x, v)).collect())
}

pub fn hom_space_dim<F: Field>(m: &GradedModule<F>, n: &GradedModule<F>) -> Result<usize> {
    check_compatible(m, n)?;
    let x = unknowns(m, n);
    let rows = hom_equations(m, n, &x);
    Ok(x.total - Matrix::from_rows(rows, x.total)?.rank())
}

fn unpack<F: Field>(m: &GradedModule<F>, n: &GradedModule<F>, x: &Unknowns, v: &[F]) -> GradedMap<F> {
    m.window()
        .degrees()
        .enumerate()
        .map(|(gi, g)| {
            let (r, c) = (n.dim(g), m.dim(g));
            let mut f = Matrix::zeros(r, c);
            for p in 0..r {
                for l in 0..c {
                    f[(p, l)] = v[x.offsets[gi] + p * c + l].clone();
                }
            }
            f
        })
        .collect()
}

/// Checks `f_{s+u}(x a) = f_s(x) a` on all basis elements, independently of
/// the solver.
pub fn is_module_map<F: Field>(m: &GradedModule<F>, n: &GradedModule<F>, f: &GradedMap<F>) -> bool {
    let mw = m.window();
    if f.len() != mw.len() {
        return false;
    }
    for (si, s) in mw.degrees().enumerate() {
        if f[si].rows() != n.dim(s) || f[si].cols() != m.dim(s) {
            return false;
        }
    }
    let a = m.algebra();
    for (si, s) in mw.degrees().enumerate() {
        for u in a.window().degrees() {
            let t = mw.add(s, u);
            for i in 0..m.dim(s) {
                let mut e = vec![F::zero(); m.dim(s)];
                e[i] = F::one();
                for j in 0..a.dim(u) {
                    let mut b = vec![F::zero(); a.dim(u)];
                    b[j] = F::one();
                    let lhs = match mw.index(t) {
                        Some(ti) if n.dim(t) > 0 => {
                            let xa = m.act(s, &e, u, &b);
                            f[ti].mul_vec(&xa).unwrap_or_default()
                        }
                        _ => vec![F::zero(); n.dim(t)],
                    };
                    let fx = f[si].mul_vec(&e).unwrap_or_default();
                    let rhs = if n.window().contains(s) && n.window().contains(t) {
                        n.act(s, &fx, u, &b)
                    } else {
                        vec![F::zero(); n.dim(t)]
                    };
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Looks for an isomorphism `M → N` among random combinations of a hom
/// basis. Every returned map is re-verified and invertible in each degree.
pub fn find_isomorphism<F: Field, R: Rng + ?Sized>(
    m: &GradedModule<F>,
    n: &GradedModule<F>,
    rng: &mut R,
    attempts: usize,
) -> Result<Option<GradedMap<F>>> {
    check_compatible(m, n)?;
    if m.window().degrees().any(|g| m.dim(g) != n.dim(g)) || n.window().degrees().any(|g| m.dim(g) != n.dim(g)) {
        return Ok(None);
    }
    let basis = hom_space(m, n)?;
    let zero: GradedMap<F> = m
        .window()
        .degrees()
        .map(|g| Matrix::zeros(n.dim(g), m.dim(g)))
        .collect();
    for _ in 0..attempts.max(1) {
        let mut f = zero.clone();
        for b in &basis {
            let c = F::random(rng);
            for (fg, bg) in f.iter_mut().zip(b) {
                for r in 0..fg.rows() {
                    for k in 0..fg.cols() {
                        let v = c.clone() * bg[(r, k)].clone();
                        fg[(r, k)] += v;
                    }
                }
            }
        }
        if f.iter().all(|fg| fg.rows() == 0 || fg.is_invertible()) && is_module_map(m, n, &f) {
            return Ok(Some(f));
        }
    }
    Ok(None)
}
