use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{precondition, Error, Result};
use crate::exactlin::{LabeledSpace, Matrix};
use crate::field::Field;
use crate::regrade_maps::{is_pseudomorphism, WindowedMap};
use crate::subsets::GradedGroup;
use crate::verdict::Verdict;

use super::algebra::{GradedAlgebra, Window};
use super::module::{same_algebra, GradedModule};

/// `B̃` with `B̃_σ = B_{φ(σ)}`, the same algebra with degrees pulled back
/// along the pseudomorphism `φ`.
///
/// The window of `B̃` is the shortest range of `σ` containing every `σ`
/// with `φ(σ)` in the window of `B`.
pub fn regrade_algebra<F: Field>(b: &GradedAlgebra<F>, phi: &WindowedMap) -> Result<GradedAlgebra<F>> {
    if phi.target() != b.group() {
        return precondition("φ does not map into the grading group of B");
    }
    let v = is_pseudomorphism(phi);
    if !v.holds {
        return precondition(format!("φ is not a pseudomorphism: {v}"));
    }
    let bw = b.window();
    for g in bw.degrees() {
        if b.dim(g) > 0 && !phi.in_image(g) {
            return precondition(format!("B_{g} ≠ 0 but {g} is not a value of φ"));
        }
    }
    let sigmas: Vec<i64> = phi.pairs().filter(|&(_, v)| bw.contains(v)).map(|(s, _)| s).collect();
    let window = Window::new(
        GradedGroup::Integers,
        *sigmas.iter().min().unwrap(),
        *sigmas.iter().max().unwrap(),
    )?;
    let k = b.idempotents();
    let comp = |sigma: i64| -> LabeledSpace {
        match phi.eval(sigma).ok().and_then(|g| b.component(g)) {
            Some(c) if bw.contains(phi.eval(sigma).unwrap()) => c.clone(),
            _ => LabeledSpace::zero(k, true),
        }
    };
    let components: Vec<LabeledSpace> = window.degrees().map(comp).collect();
    let mut mult = BTreeMap::new();
    for s in window.degrees() {
        for t in window.degrees() {
            if !window.contains(s + t) {
                continue;
            }
            let (ps, pt) = (phi.eval(s)?, phi.eval(t)?);
            if !bw.contains(ps) || !bw.contains(pt) {
                continue;
            }
            let sum = bw.group.add(ps, pt);
            let Some(m) = b.mult(ps, pt) else {
                continue;
            };
            if phi.in_image(sum) {
                let target = phi.eval(s + t)?;
                if target != sum {
                    return Err(Error::InternalConsistency(format!(
                        "φ({s}+{t}) = {target} but φ({s})+φ({t}) = {sum}"
                    )));
                }
                mult.insert((s, t), m.clone());
            } else if !m.is_zero() {
                return Err(Error::GradingViolation {
                    sigma: s,
                    tau: t,
                    detail: format!("B_{ps} · B_{pt} ≠ 0 but {sum} is not a value of φ"),
                });
            }
        }
    }
    GradedAlgebra::new(window, k, components, mult)
}

/// `X̃` with `X̃_σ = X_{g+φ(σ)}` over `regraded`, which must be
/// `regrade_algebra(X.algebra, φ)`.
pub fn regrade_module<F: Field>(
    x: &GradedModule<F>,
    phi: &WindowedMap,
    g: i64,
    regraded: &Arc<GradedAlgebra<F>>,
) -> Result<GradedModule<F>> {
    let xw = x.window();
    if xw.group != GradedGroup::Integers {
        return Err(Error::UnsupportedForm("module regrading is implemented for Z".into()));
    }
    for d in xw.degrees() {
        if x.dim(d) > 0 && !phi.in_image(d - g) {
            return precondition(format!("X_{d} ≠ 0 but {d} - {g} is not a value of φ"));
        }
    }
    let (lo, hi) = phi.window();
    let window = Window::new(GradedGroup::Integers, lo, hi)?;
    let k = x.algebra().idempotents();
    let src = |sigma: i64| -> Option<i64> {
        let d = g + phi.eval(sigma).ok()?;
        xw.contains(d).then_some(d)
    };
    let components = window
        .degrees()
        .map(|s| match src(s) {
            Some(d) => x.component(d).unwrap().clone(),
            None => LabeledSpace::zero(k, false),
        })
        .collect();
    let bw = regraded.window();
    let mut action = BTreeMap::new();
    for s in window.degrees() {
        let Some(d) = src(s) else { continue };
        for t in bw.degrees() {
            if !window.contains(s + t) {
                continue;
            }
            let pt = phi.eval(t)?;
            let Some(m) = x.action(d, pt) else {
                continue;
            };
            let sum = phi.eval(s)? + pt;
            if phi.in_image(sum) {
                if src(s + t) == Some(d + pt) {
                    action.insert((s, t), m.clone());
                }
            } else if !m.is_zero() {
                return Err(Error::GradingViolation {
                    sigma: s,
                    tau: t,
                    detail: format!("X_{d} · B_{pt} ≠ 0 but φ({s})+φ({t}) is not a value of φ"),
                });
            }
        }
    }
    GradedModule::new(regraded.clone(), window, components, action)
}

/// `V_σ B̃_τ = 0` whenever `φ(σ)+φ(τ)` is not a value of `φ`.
pub fn sigma_tilde_vanishing<F: Field>(v: &GradedModule<F>, phi: &WindowedMap) -> Verdict {
    for (&(s, t), m) in v.action_entries() {
        let (Ok(ps), Ok(pt)) = (phi.eval(s), phi.eval(t)) else {
            if !m.is_zero() {
                return Verdict::fail(true, vec![s, t], "degree outside the window of φ");
            }
            continue;
        };
        if !phi.in_image(ps + pt) && !m.is_zero() {
            return Verdict::fail(
                true,
                vec![s, t],
                format!("V_{s} · B̃_{t} ≠ 0 but φ({s})+φ({t}) = {} is not a value of φ", ps + pt),
            );
        }
    }
    Verdict::pass(true)
}

/// Inverse of [`regrade_module`]: `X_d = V_σ` for `d = g + φ(σ)`, zero for
/// other `d` in `window`. Fails if `V` violates the vanishing condition.
pub fn un_regrade_module<F: Field>(
    v: &GradedModule<F>,
    phi: &WindowedMap,
    g: i64,
    base: &Arc<GradedAlgebra<F>>,
    window: (i64, i64),
) -> Result<GradedModule<F>> {
    let check = sigma_tilde_vanishing(v, phi);
    if !check.holds {
        let w = check.witness.clone().unwrap_or_default();
        return Err(Error::GradingViolation {
            sigma: w[0],
            tau: w[1],
            detail: check.detail.unwrap_or_default(),
        });
    }
    let regraded = regrade_algebra(base, phi)?;
    if !same_algebra(v.algebra(), &Arc::new(regraded)) {
        return precondition("V is not a module over the regraded algebra");
    }
    let xw = Window::new(GradedGroup::Integers, window.0, window.1)?;
    let vw = v.window();
    let k = base.idempotents();
    let pre = |d: i64| -> Option<i64> { phi.preimage(d - g).filter(|&s| vw.contains(s)) };
    for s in vw.degrees() {
        if v.dim(s) > 0 && !xw.contains(g + phi.eval(s)?) {
            return Err(Error::WindowViolation {
                degree: g + phi.eval(s)?,
                lo: xw.lo,
                hi: xw.hi,
            });
        }
    }
    let components = xw
        .degrees()
        .map(|d| match pre(d) {
            Some(s) => v.component(s).unwrap().clone(),
            None => LabeledSpace::zero(k, false),
        })
        .collect();
    let mut action: BTreeMap<(i64, i64), Matrix<F>> = BTreeMap::new();
    for d in xw.degrees() {
        let Some(s) = pre(d) else { continue };
        for b in base.window().degrees() {
            if !xw.contains(d + b) || base.dim(b) == 0 {
                continue;
            }
            let Some(t) = phi.preimage(b) else { continue };
            if phi.in_image(d - g + b) {
                if let (Some(m), Some(_)) = (v.action(s, t), pre(d + b)) {
                    action.insert((d, b), m.clone());
                }
            }
        }
    }
    GradedModule::new(base.clone(), xw, components, action)
}
