//! Integer maps on finite windows, the enumeration map δ of a periodic
//! degree set, and pseudomorphism checks.

use std::collections::HashMap;

use crate::error::{precondition, Error, Result};
use crate::subsets::{reduce_mod_stabilizer, DegreeSet, Form, GradedGroup};
use crate::verdict::Verdict;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowedMap {
    lo: i64,
    hi: i64,
    values: Vec<i64>,
    target: GradedGroup,
    injective: bool,
    inverse: HashMap<i64, i64>,
}

impl WindowedMap {
    /// `values[k]` is the image of `lo + k`.
    pub fn new(lo: i64, values: Vec<i64>, target: GradedGroup) -> Result<Self> {
        if values.is_empty() {
            return precondition("a windowed map needs a nonempty window");
        }
        let values: Vec<i64> = values.into_iter().map(|v| target.normalize(v)).collect();
        let hi = lo + values.len() as i64 - 1;
        let mut inverse = HashMap::new();
        let mut injective = true;
        for (k, &v) in values.iter().enumerate() {
            if inverse.insert(v, lo + k as i64).is_some() {
                injective = false;
            }
        }
        if !injective {
            // Keep the smallest preimage for lookups.
            inverse.clear();
            for (k, &v) in values.iter().enumerate().rev() {
                inverse.insert(v, lo + k as i64);
            }
        }
        Ok(WindowedMap {
            lo,
            hi,
            values,
            target,
            injective,
            inverse,
        })
    }

    pub fn from_fn(lo: i64, hi: i64, target: GradedGroup, f: impl Fn(i64) -> i64) -> Result<Self> {
        if lo > hi {
            return precondition(format!("empty window [{lo}, {hi}]"));
        }
        Self::new(lo, (lo..=hi).map(f).collect(), target)
    }

    pub fn identity(lo: i64, hi: i64) -> Result<Self> {
        Self::from_fn(lo, hi, GradedGroup::Integers, |x| x)
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn target(&self) -> GradedGroup {
        self.target
    }

    pub fn is_injective(&self) -> bool {
        self.injective
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn in_window(&self, sigma: i64) -> bool {
        (self.lo..=self.hi).contains(&sigma)
    }

    pub fn eval(&self, sigma: i64) -> Result<i64> {
        if !self.in_window(sigma) {
            return Err(Error::WindowViolation {
                degree: sigma,
                lo: self.lo,
                hi: self.hi,
            });
        }
        Ok(self.values[(sigma - self.lo) as usize])
    }

    /// The `σ` in the window with `φ(σ) = g`, if any.
    pub fn preimage(&self, g: i64) -> Option<i64> {
        self.inverse.get(&self.target.normalize(g)).copied()
    }

    pub fn in_image(&self, g: i64) -> bool {
        self.preimage(g).is_some()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        (self.lo..).zip(self.values.iter().copied())
    }
}

/// The strictly increasing map `δ` with `δ(0) = s0` and image `s0 + U`:
/// `δ(tj + k) = s0 + nj + i_k`, where `nZ` is the stabilizer of `U` and
/// `0 = i_0 < ... < i_{t-1}` are the residues of `U` in `[0, n)`.
pub fn delta_map(u: &DegreeSet, s0: i64, window: (i64, i64)) -> Result<WindowedMap> {
    if u.group() != GradedGroup::Integers {
        return Err(Error::UnsupportedForm("δ is defined for subsets of Z".into()));
    }
    if !matches!(u.form(), Form::Full | Form::Periodic { .. }) {
        return Err(Error::UnsupportedForm("δ needs a periodic or full set".into()));
    }
    if !u.contains_lenient(0) {
        return precondition(format!("0 must belong to {u}"));
    }
    let (n, residues) = reduce_mod_stabilizer(u)?;
    let i: Vec<i64> = residues.into_iter().collect();
    let t = i.len() as i64;
    WindowedMap::from_fn(window.0, window.1, GradedGroup::Integers, |sigma| {
        let (j, k) = (sigma.div_euclid(t), sigma.rem_euclid(t));
        s0 + n * j + i[k as usize]
    })
}

/// Injective, `φ(0) = 0`, and `φ(σ+τ) = φ(σ)+φ(τ)` whenever `φ(σ)+φ(τ)`
/// lies in the image. Only pairs with `σ, τ, σ+τ` in the window are scanned.
pub fn is_pseudomorphism(phi: &WindowedMap) -> Verdict {
    let (lo, hi) = phi.window();
    if !phi.is_injective() {
        let mut seen: HashMap<i64, i64> = HashMap::new();
        for (s, v) in phi.pairs() {
            if let Some(&first) = seen.get(&v) {
                return Verdict::fail(true, vec![first, s], format!("φ({first}) = φ({s}) = {v}"));
            }
            seen.insert(v, s);
        }
    }
    match phi.eval(0) {
        Ok(0) => {}
        Ok(v) => return Verdict::fail(true, vec![0], format!("φ(0) = {v}")),
        Err(_) => return Verdict::fail(true, vec![0], "0 is outside the window"),
    }
    let g = phi.target();
    for s in lo..=hi {
        for t in lo..=hi {
            if !phi.in_window(s + t) {
                continue;
            }
            let sum = g.add(phi.values[(s - lo) as usize], phi.values[(t - lo) as usize]);
            if !phi.in_image(sum) {
                continue;
            }
            let lhs = phi.values[(s + t - lo) as usize];
            if lhs != sum {
                return Verdict::fail(
                    true,
                    vec![s, t],
                    format!("φ({s})+φ({t}) = {sum} is in the image but φ({}) = {lhs}", s + t),
                );
            }
        }
    }
    Verdict::pass(true)
}

/// `φ^{-1}(H)` on the window of `φ`.
///
/// Every element of `H` between the smallest and largest value of `φ` must
/// be a value of `φ`.
pub fn preimage_subgroup(phi: &WindowedMap, h: &DegreeSet) -> Result<DegreeSet> {
    if h.group() != phi.target() {
        return precondition("H and the target of φ live in different groups");
    }
    let (lo, hi) = phi.window();
    let vmin = *phi.values.iter().min().unwrap();
    let vmax = *phi.values.iter().max().unwrap();
    let range = match phi.target() {
        GradedGroup::Integers => vmin..=vmax,
        GradedGroup::Cyclic(n) => 0..=n - 1,
    };
    for x in range {
        if h.contains_lenient(x) && !phi.in_image(x) {
            return precondition(format!("{x} ∈ H is not in the image of φ"));
        }
    }
    let members = phi.pairs().filter(|&(_, v)| h.contains_lenient(v)).map(|(s, _)| s);
    DegreeSet::windowed(members, lo, hi)
}

/// Recognizes `kZ` restricted to a window and returns `k` (`0` for `{0}`).
pub fn windowed_subgroup_index(set: &DegreeSet) -> Option<i64> {
    let (lo, hi) = set.window()?;
    let members = set.members_in(lo, hi);
    if !members.contains(&0) {
        return None;
    }
    let k = members
        .iter()
        .copied()
        .filter(|&x| x > 0)
        .min()
        .or_else(|| members.iter().copied().filter(|&x| x < 0).max().map(|x| -x));
    let Some(k) = k else {
        return Some(0);
    };
    let expected: Vec<i64> = (lo..=hi).filter(|x| x % k == 0).collect();
    (members == expected).then_some(k)
}
