//! Degree sets in `Z` and `Z_n`.
//!
//! A [`DegreeSet`] is either empty, the whole group, a periodic set (a union
//! of cosets of `nZ`), or a finite set of integers observed on a window.
//! Predicates on periodic sets reduce modulo the period and are exact;
//! predicates on windowed sets only scan the window and say so in the
//! returned [`Verdict`].
//!
//! The group is written additively throughout. The definitions used here
//! (premodular pairs, ring-supporting sets) only make sense for abelian
//! groups in this additive form; the left/right distinction is kept
//! because it matters for non-abelian gradings.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;

use crate::error::{precondition, Error, Result};
use crate::verdict::Verdict;

/// Largest `n` accepted by [`enumerate_ring_supporting`].
pub const ENUMERATION_CAP: i64 = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GradedGroup {
    Integers,
    Cyclic(i64),
}

impl GradedGroup {
    pub fn cyclic(n: i64) -> Result<Self> {
        if n < 1 {
            return precondition(format!("Z_n needs n >= 1, got {n}"));
        }
        Ok(GradedGroup::Cyclic(n))
    }

    pub fn normalize(self, x: i64) -> i64 {
        match self {
            GradedGroup::Integers => x,
            GradedGroup::Cyclic(n) => x.rem_euclid(n),
        }
    }

    pub fn add(self, a: i64, b: i64) -> i64 {
        self.normalize(a + b)
    }

    pub fn order(self) -> Option<i64> {
        match self {
            GradedGroup::Integers => None,
            GradedGroup::Cyclic(n) => Some(n),
        }
    }
}

impl fmt::Display for GradedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GradedGroup::Integers => write!(f, "Z"),
            GradedGroup::Cyclic(n) => write!(f, "Z_{n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Form {
    Empty,
    Full,
    /// `{x : x mod period ∈ residues}`; residues lie in `[0, period)`.
    Periodic {
        period: i64,
        residues: BTreeSet<i64>,
    },
    /// A finite set known only on `[lo, hi]`.
    Windowed {
        elements: BTreeSet<i64>,
        lo: i64,
        hi: i64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DegreeSet {
    group: GradedGroup,
    form: Form,
}

impl DegreeSet {
    pub fn new(group: GradedGroup, form: Form) -> Result<Self> {
        let form = match form {
            Form::Periodic { period, residues } => {
                if period < 1 {
                    return precondition(format!("period must be >= 1, got {period}"));
                }
                if let GradedGroup::Cyclic(n) = group {
                    if n % period != 0 {
                        return precondition(format!("period {period} does not divide the group order {n}"));
                    }
                }
                let residues: BTreeSet<i64> = residues.into_iter().map(|r| r.rem_euclid(period)).collect();
                if residues.is_empty() {
                    Form::Empty
                } else if residues.len() as i64 == period {
                    Form::Full
                } else {
                    Form::Periodic { period, residues }
                }
            }
            Form::Windowed { elements, lo, hi } => {
                if matches!(group, GradedGroup::Cyclic(_)) {
                    return Err(Error::UnsupportedForm(
                        "windowed sets live in Z; use residues for Z_n".into(),
                    ));
                }
                if lo > hi {
                    return precondition(format!("empty window [{lo}, {hi}]"));
                }
                if let Some(&x) = elements.iter().find(|&&x| x < lo || x > hi) {
                    return Err(Error::WindowViolation { degree: x, lo, hi });
                }
                Form::Windowed { elements, lo, hi }
            }
            other => other,
        };
        Ok(DegreeSet { group, form })
    }

    pub fn full(group: GradedGroup) -> Self {
        DegreeSet {
            group,
            form: Form::Full,
        }
    }

    pub fn empty(group: GradedGroup) -> Self {
        DegreeSet {
            group,
            form: Form::Empty,
        }
    }

    /// Union of the cosets `nZ + j` for `j` in `residues` (a subset of `Z`).
    pub fn periodic(period: i64, residues: impl IntoIterator<Item = i64>) -> Result<Self> {
        Self::new(
            GradedGroup::Integers,
            Form::Periodic {
                period,
                residues: residues.into_iter().collect(),
            },
        )
    }

    /// A residue set of `Z_n`.
    pub fn cyclic(n: i64, residues: impl IntoIterator<Item = i64>) -> Result<Self> {
        Self::new(
            GradedGroup::cyclic(n)?,
            Form::Periodic {
                period: n,
                residues: residues.into_iter().collect(),
            },
        )
    }

    pub fn windowed(elements: impl IntoIterator<Item = i64>, lo: i64, hi: i64) -> Result<Self> {
        Self::new(
            GradedGroup::Integers,
            Form::Windowed {
                elements: elements.into_iter().collect(),
                lo,
                hi,
            },
        )
    }

    /// `⋃_k [nk, nk+r]` (right) or `⋃_k [nk-r, nk]` (left).
    pub fn interval_translation(orientation: Orientation, n: i64, r: i64) -> Result<Self> {
        if n < 1 || r < 0 || r >= n {
            return precondition(format!("need 0 <= r < n, got n={n}, r={r}"));
        }
        let residues: Vec<i64> = match orientation {
            Orientation::Right => (0..=r).collect(),
            Orientation::Left => (0..=r).map(|i| -i).collect(),
        };
        Self::periodic(n, residues)
    }

    pub fn group(&self) -> GradedGroup {
        self.group
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    pub fn is_empty(&self) -> bool {
        match &self.form {
            Form::Empty => true,
            Form::Windowed { elements, .. } => elements.is_empty(),
            _ => false,
        }
    }

    pub fn is_windowed(&self) -> bool {
        matches!(self.form, Form::Windowed { .. })
    }

    pub fn window(&self) -> Option<(i64, i64)> {
        match self.form {
            Form::Windowed { lo, hi, .. } => Some((lo, hi)),
            _ => None,
        }
    }

    pub fn period(&self) -> Option<i64> {
        match &self.form {
            Form::Full => Some(1),
            Form::Periodic { period, .. } => Some(*period),
            _ => None,
        }
    }

    /// Residues in `[0, period)`; `{0}` for the full set.
    pub fn residues(&self) -> Option<BTreeSet<i64>> {
        match &self.form {
            Form::Full => Some([0].into()),
            Form::Periodic { residues, .. } => Some(residues.clone()),
            _ => None,
        }
    }

    pub fn contains(&self, x: i64) -> Result<bool> {
        let x = self.group.normalize(x);
        Ok(match &self.form {
            Form::Empty => false,
            Form::Full => true,
            Form::Periodic { period, residues } => residues.contains(&x.rem_euclid(*period)),
            Form::Windowed { elements, lo, hi } => {
                if x < *lo || x > *hi {
                    return Err(Error::WindowViolation {
                        degree: x,
                        lo: *lo,
                        hi: *hi,
                    });
                }
                elements.contains(&x)
            }
        })
    }

    /// Membership for sets without a window; windowed sets answer `false`
    /// outside their window.
    pub fn contains_lenient(&self, x: i64) -> bool {
        self.contains(x).unwrap_or(false)
    }

    /// Elements of the set inside `[lo, hi]`.
    pub fn members_in(&self, lo: i64, hi: i64) -> Vec<i64> {
        (lo..=hi).filter(|&x| self.contains_lenient(x)).collect()
    }

    /// `-S`.
    pub fn negate(&self) -> DegreeSet {
        let form = match &self.form {
            Form::Periodic { period, residues } => Form::Periodic {
                period: *period,
                residues: residues.iter().map(|r| (-r).rem_euclid(*period)).collect(),
            },
            Form::Windowed { elements, lo, hi } => Form::Windowed {
                elements: elements.iter().map(|x| -x).collect(),
                lo: -hi,
                hi: -lo,
            },
            other => other.clone(),
        };
        DegreeSet {
            group: self.group,
            form,
        }
    }

    /// `m + S`.
    pub fn shifted(&self, m: i64) -> DegreeSet {
        let form = match &self.form {
            Form::Periodic { period, residues } => Form::Periodic {
                period: *period,
                residues: residues.iter().map(|r| (r + m).rem_euclid(*period)).collect(),
            },
            Form::Windowed { elements, lo, hi } => Form::Windowed {
                elements: elements.iter().map(|x| x + m).collect(),
                lo: lo + m,
                hi: hi + m,
            },
            other => other.clone(),
        };
        DegreeSet {
            group: self.group,
            form,
        }
    }

    /// Same set with the smallest possible period.
    pub fn canonical(&self) -> DegreeSet {
        let Form::Periodic { period, residues } = &self.form else {
            return self.clone();
        };
        let p = (1..=*period)
            .filter(|d| period % d == 0)
            .find(|d| residues.iter().all(|r| residues.contains(&((r + d) % period))))
            .unwrap_or(*period);
        DegreeSet::new(
            self.group,
            Form::Periodic {
                period: p,
                residues: residues.iter().map(|r| r % p).collect(),
            },
        )
        .expect("a divisor of a valid period is valid")
    }

    /// Set equality. Windowed sets compare on the overlap of their windows
    /// (with the other set's window, if any).
    pub fn same_set(&self, other: &DegreeSet) -> bool {
        if self.group != other.group {
            return false;
        }
        match (self.window(), other.window()) {
            (None, None) => {
                let l = match (self.period(), other.period()) {
                    (Some(a), Some(b)) => a.lcm(&b),
                    (Some(a), None) | (None, Some(a)) => a,
                    (None, None) => 1,
                };
                (0..l).all(|x| self.contains_lenient(x) == other.contains_lenient(x))
            }
            (a, b) => {
                let (lo, hi) = overlap(a, b);
                (lo..=hi).all(|x| self.contains_lenient(x) == other.contains_lenient(x))
            }
        }
    }

    /// Intersection of two non-windowed sets, or of any set with a
    /// windowed one (result windowed).
    pub fn intersection(&self, other: &DegreeSet) -> Result<DegreeSet> {
        check_same_group(self, other)?;
        match (self.window(), other.window()) {
            (None, None) => {
                let l = match (self.period(), other.period()) {
                    (Some(a), Some(b)) => a.lcm(&b),
                    _ => return Ok(DegreeSet::empty(self.group)),
                };
                let residues = (0..l).filter(|&x| self.contains_lenient(x) && other.contains_lenient(x));
                Ok(DegreeSet::new(
                    self.group,
                    Form::Periodic {
                        period: l,
                        residues: residues.collect(),
                    },
                )?
                .canonical())
            }
            (a, b) => {
                let (lo, hi) = overlap(a, b);
                let elems = (lo..=hi).filter(|&x| self.contains_lenient(x) && other.contains_lenient(x));
                DegreeSet::windowed(elems, lo, hi)
            }
        }
    }

    /// Smallest element `>= x` for non-windowed sets.
    fn next_at_or_after(&self, x: i64) -> Option<i64> {
        let p = self.period()?;
        (x..x + p).find(|&y| self.contains_lenient(y))
    }
}

impl fmt::Display for DegreeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fmt_set = |s: &BTreeSet<i64>| s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match (&self.form, self.group) {
            (Form::Empty, _) => write!(f, "∅"),
            (Form::Full, g) => write!(f, "{g}"),
            (Form::Periodic { period, residues }, GradedGroup::Integers) => {
                write!(f, "{period}Z+{{{}}}", fmt_set(residues))
            }
            (Form::Periodic { period, residues }, GradedGroup::Cyclic(n)) => {
                write!(f, "{{{}}} mod {period} in Z_{n}", fmt_set(residues))
            }
            (Form::Windowed { elements, lo, hi }, _) => {
                write!(f, "{{{}}} on [{lo},{hi}]", fmt_set(elements))
            }
        }
    }
}

fn overlap(a: Option<(i64, i64)>, b: Option<(i64, i64)>) -> (i64, i64) {
    match (a, b) {
        (Some((l1, h1)), Some((l2, h2))) => (l1.max(l2), h1.min(h2)),
        (Some(w), None) | (None, Some(w)) => w,
        (None, None) => unreachable!("overlap needs a window"),
    }
}

fn check_same_group(a: &DegreeSet, b: &DegreeSet) -> Result<()> {
    if a.group != b.group {
        return precondition(format!("sets live in different groups ({} vs {})", a.group, b.group));
    }
    Ok(())
}

/// Where a quantified condition over several sets gets scanned.
enum ScanDomain {
    /// All arithmetic modulo `L`; exact.
    Residues(i64),
    /// Only integers in `[lo, hi]`; window-certified.
    Window(i64, i64),
}

impl ScanDomain {
    fn for_sets(sets: &[&DegreeSet]) -> Self {
        let windows: Vec<(i64, i64)> = sets.iter().filter_map(|s| s.window()).collect();
        if windows.is_empty() {
            let l = sets.iter().filter_map(|s| s.period()).fold(1i64, |acc, p| acc.lcm(&p));
            ScanDomain::Residues(l)
        } else {
            let lo = windows.iter().map(|w| w.0).max().unwrap();
            let hi = windows.iter().map(|w| w.1).min().unwrap();
            ScanDomain::Window(lo, hi)
        }
    }

    fn certified(&self) -> bool {
        matches!(self, ScanDomain::Window(..))
    }

    fn members(&self, s: &DegreeSet) -> Vec<i64> {
        match *self {
            ScanDomain::Residues(l) => s.members_in(0, l - 1),
            ScanDomain::Window(lo, hi) => s.members_in(lo, hi),
        }
    }

    /// Membership of `x`, or `None` when `x` cannot be decided here.
    fn member(&self, s: &DegreeSet, x: i64) -> Option<bool> {
        match *self {
            ScanDomain::Residues(l) => Some(s.contains_lenient(x.rem_euclid(l))),
            ScanDomain::Window(lo, hi) => (lo..=hi).contains(&x).then(|| s.contains_lenient(x)),
        }
    }
}

fn require_zero(u: &DegreeSet) -> Result<()> {
    if !u.contains_lenient(0) {
        return precondition(format!("0 must belong to {u}"));
    }
    Ok(())
}

/// For all `(a, b, c)` in `first × U × U` with `a+b+c ∈ first`:
/// `a+b ∈ first ⇔ b+c ∈ U`.
fn scan_right_condition(first: &DegreeSet, u: &DegreeSet) -> Verdict {
    let domain = ScanDomain::for_sets(&[first, u]);
    let fs = domain.members(first);
    let us = domain.members(u);
    for &a in &fs {
        for &b in &us {
            for &c in &us {
                let Some(true) = domain.member(first, a + b + c) else {
                    continue;
                };
                let (Some(ab), Some(bc)) = (domain.member(first, a + b), domain.member(u, b + c)) else {
                    continue;
                };
                if ab != bc {
                    return Verdict::fail(
                        domain.certified(),
                        vec![a, b, c],
                        format!(
                            "{a}+{b}+{c} is in the set but {a}+{b} {} while {b}+{c} {}",
                            if ab { "is in" } else { "is not in" },
                            if bc { "is in U" } else { "is not in U" }
                        ),
                    );
                }
            }
        }
    }
    Verdict::pass(domain.certified())
}

/// Whether the support-restricted multiplication on `U` is associative:
/// for `u, v, w ∈ U` with `u+v+w ∈ U`, `u+v ∈ U ⇔ v+w ∈ U`.
pub fn is_ring_supporting(u: &DegreeSet) -> Result<Verdict> {
    require_zero(u)?;
    Ok(scan_right_condition(u, u))
}

fn pair_preconditions(s: &DegreeSet, u: &DegreeSet) -> Result<()> {
    check_same_group(s, u)?;
    if s.is_empty() || u.is_empty() {
        return precondition("premodular pairs need nonempty sets");
    }
    require_zero(u)
}

/// `(S, U)` is right premodular: for `(s, u, v) ∈ S×U×U` with `s+u+v ∈ S`,
/// `s+u ∈ S ⇔ u+v ∈ U`.
pub fn is_right_premodular(s: &DegreeSet, u: &DegreeSet) -> Result<Verdict> {
    pair_preconditions(s, u)?;
    Ok(scan_right_condition(s, u))
}

pub fn is_right_modular(s: &DegreeSet, u: &DegreeSet) -> Result<Verdict> {
    Ok(is_right_premodular(s, u)?.and(is_ring_supporting(u)?))
}

/// `(U, S)` is left premodular, computed as `(-S, -U)` right premodular.
pub fn is_left_premodular(u: &DegreeSet, s: &DegreeSet) -> Result<Verdict> {
    pair_preconditions(s, u)?;
    let (ns, nu) = (s.negate(), u.negate());
    check_same_group(&ns, &nu)?;
    if ns.is_empty() || nu.is_empty() {
        return precondition("premodular pairs need nonempty sets");
    }
    let mut v = scan_right_condition(&ns, &nu);
    if let Some(w) = v.witness.as_mut() {
        // (a, b, c) for (-S, -U) corresponds to (-c, -b, -a) in U×U×S.
        *w = vec![-w[2], -w[1], -w[0]];
    }
    Ok(v)
}

pub fn is_left_modular(u: &DegreeSet, s: &DegreeSet) -> Result<Verdict> {
    Ok(is_left_premodular(u, s)?.and(is_ring_supporting(u)?))
}

/// `(U:U) = {g : g + U = U}`.
pub fn stabilizer(u: &DegreeSet) -> Result<DegreeSet> {
    require_zero(u)?;
    match u.form() {
        Form::Empty => unreachable!("0 ∈ U"),
        Form::Full => Ok(DegreeSet::full(u.group)),
        Form::Periodic { period, residues } => {
            let k = (1..=*period)
                .find(|d| residues.iter().all(|r| residues.contains(&((r + d) % period))))
                .unwrap_or(*period);
            if k == 1 {
                Ok(DegreeSet::full(u.group))
            } else {
                DegreeSet::new(
                    u.group,
                    Form::Periodic {
                        period: k,
                        residues: [0].into(),
                    },
                )
            }
        }
        Form::Windowed { elements, lo, hi } => {
            let (lo, hi) = (*lo, *hi);
            let stab = elements.iter().copied().filter(|&d| {
                (lo..=hi)
                    .filter(|x| (lo..=hi).contains(&(x + d)))
                    .all(|x| elements.contains(&x) == elements.contains(&(x + d)))
            });
            DegreeSet::windowed(stab, lo, hi)
        }
    }
}

/// `(S:U) = {g : g + U = S}`, possibly empty.
pub fn quotient_set(s: &DegreeSet, u: &DegreeSet) -> Result<DegreeSet> {
    check_same_group(s, u)?;
    if s.is_empty() || u.is_empty() {
        return precondition("(S:U) needs nonempty S and U");
    }
    match ScanDomain::for_sets(&[s, u]) {
        ScanDomain::Residues(l) => {
            let members: BTreeSet<i64> = (0..l)
                .filter(|&g| (0..l).all(|x| s.contains_lenient(x) == u.contains_lenient(x - g)))
                .collect();
            let q = DegreeSet::new(
                s.group,
                Form::Periodic {
                    period: l,
                    residues: members,
                },
            )?
            .canonical();
            if let (Some(&m), true) = (
                q.members_in(0, l - 1).first(),
                u.contains_lenient(0) && is_right_modular(s, u).is_ok_and(|v| v.holds),
            ) {
                let coset = stabilizer(u)?.shifted(m);
                if !coset.same_set(&q) {
                    return Err(Error::InternalConsistency(format!(
                        "(S:U) = {q} is not the coset {m} + (U:U)"
                    )));
                }
            }
            Ok(q)
        }
        ScanDomain::Window(lo, hi) => {
            let members = (lo..=hi).filter(|&g| {
                s.contains_lenient(g)
                    && (lo..=hi)
                        .filter(|x| (lo..=hi).contains(&(x - g)))
                        .all(|x| s.contains_lenient(x) == u.contains_lenient(x - g))
            });
            DegreeSet::windowed(members, lo, hi)
        }
    }
}

fn rotate(mask: u64, by: i64, n: i64) -> u64 {
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let by = by.rem_euclid(n) as u32;
    if by == 0 {
        return mask;
    }
    ((mask << by) | (mask >> (n as u32 - by))) & full
}

/// Ring-supporting test for a residue bitmask in `Z_n`.
///
/// For fixed `(u, v)` the set of admissible `w` is `J ∩ (J - u - v)`; it must
/// sit inside `J ∩ (J - v)` when `u+v ∈ J` and avoid it otherwise.
fn mask_is_ring_supporting(mask: u64, n: i64) -> bool {
    let elems: Vec<i64> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
    for &v in &elems {
        let q_v = mask & rotate(mask, -v, n);
        for &u in &elems {
            let uv = (u + v) % n;
            let w_uv = mask & rotate(mask, -uv, n);
            let uv_in = mask >> uv & 1 == 1;
            let ok = if uv_in { w_uv & !q_v == 0 } else { w_uv & q_v == 0 };
            if !ok {
                return false;
            }
        }
    }
    true
}

fn mask_has_trivial_stabilizer(mask: u64, n: i64) -> bool {
    (1..n).all(|d| rotate(mask, d, n) != mask)
}

/// All `J ⊆ Z_n` with `0 ∈ J`, `J` ring-supporting and `(J:J) = {0}`,
/// ordered by size and then lexicographically.
///
/// These are exactly the residue sets of ring-supporting `U ⊆ Z` with
/// stabilizer `nZ`; for `n = 1` the single answer `{0}` stands for `U = Z`.
pub fn enumerate_ring_supporting(n: i64) -> Result<Vec<Vec<i64>>> {
    if n < 1 {
        return precondition(format!("n must be positive, got {n}"));
    }
    if n > ENUMERATION_CAP {
        return Err(Error::Capacity {
            n,
            cap: ENUMERATION_CAP,
        });
    }
    let mut out = Vec::new();
    for rest in 0u64..(1u64 << (n - 1)) {
        let mask = 1 | (rest << 1);
        if mask_has_trivial_stabilizer(mask, n) && mask_is_ring_supporting(mask, n) {
            out.push((0..n).filter(|i| mask >> i & 1 == 1).collect::<Vec<i64>>());
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// `(n, J)` with `(U:U) = nZ` and `U = ⋃_{j∈J} (nZ + j)`.
pub fn reduce_mod_stabilizer(u: &DegreeSet) -> Result<(i64, BTreeSet<i64>)> {
    if u.is_windowed() {
        return Err(Error::UnsupportedForm(
            "reduction modulo the stabilizer needs a periodic set".into(),
        ));
    }
    let stab = stabilizer(u)?;
    let n = stab.period().expect("stabilizer of a periodic set is periodic");
    let residues = u.members_in(0, n - 1).into_iter().collect();
    Ok((n, residues))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    AllOfZ,
    SubmonoidOfN,
    SubmonoidOfNegN,
    FiniteIntervalUnion,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalDecomposition {
    pub classification: Classification,
    /// Maximal runs `[a_i, b_i]`; one fundamental domain for periodic input,
    /// the window contents for windowed input.
    pub intervals: Vec<(i64, i64)>,
    pub period: Option<i64>,
    pub zero_interval: Option<(i64, i64)>,
    pub window_certified: bool,
}

impl IntervalDecomposition {
    /// `a_i <= b_i < a_{i+1} - 1` for consecutive intervals.
    pub fn gaps_ok(&self) -> bool {
        self.intervals.iter().all(|(a, b)| a <= b) && self.intervals.windows(2).all(|w| w[0].1 < w[1].0 - 1)
    }
}

fn maximal_runs(members: &[i64]) -> Vec<(i64, i64)> {
    let mut runs: Vec<(i64, i64)> = Vec::new();
    for &x in members {
        match runs.last_mut() {
            Some(last) if last.1 + 1 == x => last.1 = x,
            _ => runs.push((x, x)),
        }
    }
    runs
}

/// Structure of a ring-supporting `U ⊆ Z`: all of `Z`, a submonoid of `±N`,
/// or a union of finite intervals separated by gaps of size at least two
/// whose interval through `0` is `[0, r]` or `[-r, 0]` with `2r < n`.
pub fn structure_decompose(u: &DegreeSet) -> Result<IntervalDecomposition> {
    if u.group() != GradedGroup::Integers {
        return Err(Error::UnsupportedForm("structure theory is for subsets of Z".into()));
    }
    let verdict = is_ring_supporting(u)?;
    if !verdict.holds {
        return precondition(format!("{u} is not ring-supporting: {verdict}"));
    }
    match u.form() {
        Form::Full => Ok(IntervalDecomposition {
            classification: Classification::AllOfZ,
            intervals: Vec::new(),
            period: Some(1),
            zero_interval: None,
            window_certified: false,
        }),
        Form::Periodic { .. } => {
            let (n, _) = reduce_mod_stabilizer(u)?;
            if n == 1 {
                return structure_decompose(&DegreeSet::full(u.group()));
            }
            let mut b0 = 0;
            while u.contains_lenient(b0 + 1) {
                b0 += 1;
            }
            let mut a0 = 0;
            while u.contains_lenient(a0 - 1) {
                a0 -= 1;
            }
            let intervals = maximal_runs(&u.members_in(a0, a0 + n - 1));
            let r = b0 - a0;
            if a0 != 0 && b0 != 0 {
                return Err(Error::InternalConsistency(format!(
                    "interval through 0 is [{a0},{b0}] in ring-supporting {u}"
                )));
            }
            if 2 * r >= n {
                return Err(Error::InternalConsistency(format!(
                    "zero interval has r={r} with 2r >= n={n} in {u}"
                )));
            }
            let dec = IntervalDecomposition {
                classification: Classification::FiniteIntervalUnion,
                intervals,
                period: Some(n),
                zero_interval: Some((a0, b0)),
                window_certified: false,
            };
            if !dec.gaps_ok() {
                return Err(Error::InternalConsistency(format!("gap condition fails for {u}")));
            }
            Ok(dec)
        }
        Form::Windowed { elements, lo, hi } => decompose_windowed(elements, *lo, *hi),
        Form::Empty => unreachable!("ring-supporting sets contain 0"),
    }
}

fn decompose_windowed(elements: &BTreeSet<i64>, lo: i64, hi: i64) -> Result<IntervalDecomposition> {
    let members: Vec<i64> = elements.iter().copied().collect();
    let closed = |sign: i64| {
        members.iter().all(|&x| sign * x >= 0)
            && members.iter().all(|&a| {
                members
                    .iter()
                    .all(|&b| !(lo..=hi).contains(&(a + b)) || elements.contains(&(a + b)))
            })
    };
    let intervals = maximal_runs(&members);
    let zero = intervals.iter().copied().find(|&(a, b)| a <= 0 && 0 <= b);
    let classification = if members.len() as i64 == hi - lo + 1 && lo < 0 && hi > 0 {
        Classification::AllOfZ
    } else if closed(1) {
        Classification::SubmonoidOfN
    } else if closed(-1) {
        Classification::SubmonoidOfNegN
    } else {
        if let Some((a0, b0)) = zero {
            if a0 > lo && b0 < hi && a0 != 0 && b0 != 0 {
                return Err(Error::InternalConsistency(format!(
                    "interval through 0 is [{a0},{b0}] on window [{lo},{hi}]"
                )));
            }
        }
        Classification::FiniteIntervalUnion
    };
    Ok(IntervalDecomposition {
        classification,
        intervals,
        period: None,
        zero_interval: zero,
        window_certified: true,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Right,
    Left,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntervalTranslation {
    pub orientation: Orientation,
    pub n: i64,
    pub r: i64,
}

/// Recognizes `⋃_k [nk, nk+r]` (right) and `⋃_k [nk-r, nk]` (left) with
/// `0 <= 2r < n`, where `nZ` is the stabilizer of `U`. For `r = 0` both
/// shapes coincide and `Right` is reported.
pub fn is_translation_of_interval(u: &DegreeSet) -> Result<Option<IntervalTranslation>> {
    let (n, j) = reduce_mod_stabilizer(u)?;
    if n <= 1 {
        return precondition("translation of an interval needs a stabilizer nZ with n ≠ 0, 1");
    }
    let j: Vec<i64> = j.into_iter().collect();
    let t = j.len() as i64;
    let r = t - 1;
    if 2 * r >= n {
        return Ok(None);
    }
    if j.iter().copied().eq(0..t) {
        return Ok(Some(IntervalTranslation {
            orientation: Orientation::Right,
            n,
            r,
        }));
    }
    let left: Vec<i64> = std::iter::once(0).chain(n - r..n).collect();
    if j == left {
        return Ok(Some(IntervalTranslation {
            orientation: Orientation::Left,
            n,
            r,
        }));
    }
    Ok(None)
}

/// Smallest element of `S` that is `>= x`, for periodic or full sets.
pub fn next_member(s: &DegreeSet, x: i64) -> Option<i64> {
    s.next_at_or_after(x)
}
