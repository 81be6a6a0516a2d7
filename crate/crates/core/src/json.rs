//! JSON schemas for degree sets, windowed maps, matrices, algebras and
//! modules.
//!
//! Parsers report malformed input as [`Error::Schema`] with the JSON path of
//! the offending value. Writers emit a canonical form (components for every
//! degree of the window, zero matrices omitted) that parses back to an equal
//! value and re-serializes byte-identically.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{LabeledSpace, Matrix};
use crate::field::{Field, FieldKind};
use crate::graded_core::{GradedAlgebra, GradedModule, Window};
use crate::regrade_maps::WindowedMap;
use crate::subsets::{DegreeSet, Form, GradedGroup};

fn schema<T>(path: impl Into<String>, message: impl Into<String>) -> Result<T> {
    Err(Error::Schema {
        path: path.into(),
        message: message.into(),
    })
}

/// Deserializes `text` into `T`, keeping the path of the first error.
pub fn parse_dto<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| Error::Schema {
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })
}

pub fn to_value<T: Serialize>(dto: &T) -> serde_json::Value {
    serde_json::to_value(dto).expect("DTOs serialize infallibly")
}

pub fn to_pretty<T: Serialize>(dto: &T) -> String {
    serde_json::to_string_pretty(dto).expect("DTOs serialize infallibly")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroupKind {
    Z,
    Zn,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupJson {
    pub kind: GroupKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
}

impl GroupJson {
    pub fn of(g: GradedGroup) -> Self {
        match g {
            GradedGroup::Integers => GroupJson {
                kind: GroupKind::Z,
                n: None,
            },
            GradedGroup::Cyclic(n) => GroupJson {
                kind: GroupKind::Zn,
                n: Some(n),
            },
        }
    }

    pub fn to_group(&self, path: &str) -> Result<GradedGroup> {
        match (self.kind, self.n) {
            (GroupKind::Z, None) => Ok(GradedGroup::Integers),
            (GroupKind::Z, Some(_)) => schema(format!("{path}.n"), "Z takes no order"),
            (GroupKind::Zn, Some(n)) => GradedGroup::cyclic(n).or_else(|e| schema(format!("{path}.n"), e.to_string())),
            (GroupKind::Zn, None) => schema(format!("{path}.n"), "Zn needs an order n"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormTag {
    Empty,
    Full,
    Periodic,
    Windowed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegreeSetJson {
    pub group: GroupJson,
    pub form: FormTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residues: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<[i64; 2]>,
}

impl DegreeSetJson {
    pub fn of(s: &DegreeSet) -> Self {
        let mut out = DegreeSetJson {
            group: GroupJson::of(s.group()),
            form: FormTag::Full,
            n: None,
            residues: None,
            elements: None,
            window: None,
        };
        match s.form() {
            Form::Empty => out.form = FormTag::Empty,
            Form::Full => {}
            Form::Periodic { period, residues } => {
                out.form = FormTag::Periodic;
                out.n = Some(*period);
                out.residues = Some(residues.iter().copied().collect());
            }
            Form::Windowed { elements, lo, hi } => {
                out.form = FormTag::Windowed;
                out.elements = Some(elements.iter().copied().collect());
                out.window = Some([*lo, *hi]);
            }
        }
        out
    }

    pub fn to_set(&self) -> Result<DegreeSet> {
        let group = self.group.to_group("group")?;
        let unexpected = |field: &str, present: bool| -> Result<()> {
            if present {
                schema(field, format!("not allowed for form {:?}", self.form))
            } else {
                Ok(())
            }
        };
        let form = match self.form {
            FormTag::Empty | FormTag::Full => {
                unexpected("n", self.n.is_some())?;
                unexpected("residues", self.residues.is_some())?;
                unexpected("elements", self.elements.is_some())?;
                unexpected("window", self.window.is_some())?;
                if self.form == FormTag::Empty {
                    Form::Empty
                } else {
                    Form::Full
                }
            }
            FormTag::Periodic => {
                unexpected("elements", self.elements.is_some())?;
                unexpected("window", self.window.is_some())?;
                let Some(n) = self.n else {
                    return schema("n", "periodic sets need a period n");
                };
                let Some(residues) = &self.residues else {
                    return schema("residues", "periodic sets need residues");
                };
                if residues.is_empty() {
                    return schema("residues", "residues must be nonempty");
                }
                if n < 1 {
                    return schema("n", format!("period must be >= 1, got {n}"));
                }
                if let Some(i) = residues.iter().position(|&r| !(0..n).contains(&r)) {
                    return schema(format!("residues[{i}]"), format!("residue outside [0, {n})"));
                }
                Form::Periodic {
                    period: n,
                    residues: residues.iter().copied().collect(),
                }
            }
            FormTag::Windowed => {
                unexpected("n", self.n.is_some())?;
                unexpected("residues", self.residues.is_some())?;
                let Some([lo, hi]) = self.window else {
                    return schema("window", "windowed sets need a window");
                };
                let elements = self.elements.clone().unwrap_or_default();
                if let Some(i) = elements.iter().position(|&x| x < lo || x > hi) {
                    return schema(
                        format!("elements[{i}]"),
                        format!("degree {} lies outside the window [{lo}, {hi}]", elements[i]),
                    );
                }
                Form::Windowed {
                    elements: elements.into_iter().collect(),
                    lo,
                    hi,
                }
            }
        };
        DegreeSet::new(group, form)
    }
}

pub fn degree_set_to_json(s: &DegreeSet) -> String {
    to_pretty(&DegreeSetJson::of(s))
}

pub fn degree_set_from_json(text: &str) -> Result<DegreeSet> {
    parse_dto::<DegreeSetJson>(text)?.to_set()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowedMapJson {
    pub window: [i64; 2],
    pub values: Vec<[i64; 2]>,
    /// Defaults to `Z`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<GroupJson>,
}

impl WindowedMapJson {
    pub fn of(phi: &WindowedMap) -> Self {
        let (lo, hi) = phi.window();
        WindowedMapJson {
            window: [lo, hi],
            values: phi.pairs().map(|(k, v)| [k, v]).collect(),
            target: match phi.target() {
                GradedGroup::Integers => None,
                g => Some(GroupJson::of(g)),
            },
        }
    }

    pub fn to_map(&self) -> Result<WindowedMap> {
        let [lo, hi] = self.window;
        if lo > hi {
            return schema("window", format!("empty window [{lo}, {hi}]"));
        }
        let target = match &self.target {
            Some(g) => g.to_group("target")?,
            None => GradedGroup::Integers,
        };
        let expected = (hi - lo + 1) as usize;
        if self.values.len() != expected {
            return schema(
                "values",
                format!("{} pairs for a window of {expected} degrees", self.values.len()),
            );
        }
        for (i, &[k, _]) in self.values.iter().enumerate() {
            if k != lo + i as i64 {
                return schema(
                    format!("values[{i}][0]"),
                    format!("expected {}, got {k}", lo + i as i64),
                );
            }
        }
        WindowedMap::new(lo, self.values.iter().map(|p| p[1]).collect(), target)
    }
}

pub fn windowed_map_to_json(phi: &WindowedMap) -> String {
    to_pretty(&WindowedMapJson::of(phi))
}

pub fn windowed_map_from_json(text: &str) -> Result<WindowedMap> {
    parse_dto::<WindowedMapJson>(text)?.to_map()
}

/// A scalar as written in JSON: canonically a string, integers accepted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarJson {
    Text(String),
    Int(i64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<ScalarJson>>,
}

fn field_tag<F: Field>() -> (String, Option<u64>) {
    match FieldKind::of::<F>() {
        FieldKind::Rational => ("Q".into(), None),
        FieldKind::Prime(p) => (format!("GF({p})"), Some(p)),
    }
}

fn check_field<F: Field>(path: &str, field: &str, p: Option<u64>) -> Result<()> {
    let Some(kind) = FieldKind::parse(field) else {
        return schema(format!("{path}field"), format!("unknown field {field:?}"));
    };
    if let (FieldKind::Prime(q), Some(p)) = (kind, p) {
        if p != q {
            return schema(format!("{path}p"), format!("p = {p} disagrees with {field}"));
        }
    }
    if kind != FieldKind::of::<F>() {
        return schema(
            format!("{path}field"),
            format!("expected {}, got {}", F::field_name(), kind.name()),
        );
    }
    Ok(())
}

impl MatrixJson {
    pub fn of<F: Field>(m: &Matrix<F>) -> Self {
        let (field, p) = field_tag::<F>();
        MatrixJson {
            field,
            p,
            rows: m.rows(),
            cols: m.cols(),
            entries: m
                .to_rows()
                .into_iter()
                .map(|r| r.into_iter().map(|x| ScalarJson::Text(x.to_string())).collect())
                .collect(),
        }
    }

    /// `path` prefixes error paths, e.g. `"mult[3].matrix."`.
    pub fn to_matrix<F: Field>(&self, path: &str) -> Result<Matrix<F>> {
        check_field::<F>(path, &self.field, self.p)?;
        if self.entries.len() != self.rows {
            return schema(
                format!("{path}entries"),
                format!("{} rows listed, {} declared", self.entries.len(), self.rows),
            );
        }
        let mut rows = Vec::with_capacity(self.rows);
        for (i, row) in self.entries.iter().enumerate() {
            if row.len() != self.cols {
                return schema(
                    format!("{path}entries[{i}]"),
                    format!("{} entries, {} columns declared", row.len(), self.cols),
                );
            }
            let mut out = Vec::with_capacity(self.cols);
            for (j, x) in row.iter().enumerate() {
                let v = match x {
                    ScalarJson::Int(n) => Some(F::from_i64(*n)),
                    ScalarJson::Text(s) => F::parse_scalar(s),
                };
                match v {
                    Some(v) => out.push(v),
                    None => return schema(format!("{path}entries[{i}][{j}]"), format!("not a scalar: {x:?}")),
                }
            }
            rows.push(out);
        }
        Matrix::from_rows(rows, self.cols)
    }
}

pub fn matrix_to_json<F: Field>(m: &Matrix<F>) -> String {
    to_pretty(&MatrixJson::of(m))
}

pub fn matrix_from_json<F: Field>(text: &str) -> Result<Matrix<F>> {
    parse_dto::<MatrixJson>(text)?.to_matrix("")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentJson {
    pub degree: i64,
    pub dim: usize,
    /// Present for algebras, absent for modules. May be omitted when there
    /// is one idempotent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left_tags: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right_tags: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductJson {
    pub g: i64,
    pub h: i64,
    pub matrix: MatrixJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    pub group: GroupJson,
    pub window: [i64; 2],
    #[serde(default = "one")]
    pub idempotents: usize,
    pub components: Vec<ComponentJson>,
    #[serde(default)]
    pub mult: Vec<ProductJson>,
}

fn one() -> usize {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleJson {
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    pub algebra: AlgebraJson,
    pub window: [i64; 2],
    pub components: Vec<ComponentJson>,
    #[serde(default)]
    pub action: Vec<ProductJson>,
}

fn components_json(spaces: &[LabeledSpace], window: Window) -> Vec<ComponentJson> {
    window
        .degrees()
        .zip(spaces)
        .map(|(degree, c)| ComponentJson {
            degree,
            dim: c.dim(),
            left_tags: c.left.clone(),
            right_tags: Some(c.right.clone()),
        })
        .collect()
}

fn products_json<F: Field>(entries: &BTreeMap<(i64, i64), Matrix<F>>) -> Vec<ProductJson> {
    entries
        .iter()
        .filter(|(_, m)| !m.is_zero())
        .map(|(&(g, h), m)| ProductJson {
            g,
            h,
            matrix: MatrixJson::of(m),
        })
        .collect()
}

fn tags(path: &str, name: &str, given: &Option<Vec<usize>>, dim: usize, k: usize) -> Result<Vec<usize>> {
    match given {
        Some(t) => {
            if t.len() != dim {
                return schema(
                    format!("{path}.{name}"),
                    format!("{} tags for dimension {dim}", t.len()),
                );
            }
            if let Some(i) = t.iter().position(|&x| x >= k) {
                return schema(
                    format!("{path}.{name}[{i}]"),
                    format!("tag {} but only {k} idempotents", t[i]),
                );
            }
            Ok(t.clone())
        }
        None if k == 1 => Ok(vec![0; dim]),
        None => schema(format!("{path}.{name}"), "tags are required with several idempotents"),
    }
}

fn parse_window(path: &str, group: GradedGroup, w: [i64; 2]) -> Result<Window> {
    Window::new(group, w[0], w[1]).or_else(|e| schema(path, e.to_string()))
}

fn parse_components(
    prefix: &str,
    given: &[ComponentJson],
    window: Window,
    k: usize,
    bimodule: bool,
) -> Result<Vec<LabeledSpace>> {
    let mut slots: Vec<Option<LabeledSpace>> = vec![None; window.len()];
    for (i, c) in given.iter().enumerate() {
        let path = format!("{prefix}components[{i}]");
        let Some(idx) = window.index(c.degree).filter(|_| window.degrees().contains(&c.degree)) else {
            return schema(
                format!("{path}.degree"),
                format!(
                    "degree {} lies outside the window [{}, {}]",
                    c.degree, window.lo, window.hi
                ),
            );
        };
        if slots[idx].is_some() {
            return schema(format!("{path}.degree"), format!("degree {} listed twice", c.degree));
        }
        let right = tags(&path, "right_tags", &c.right_tags, c.dim, k)?;
        slots[idx] = Some(if bimodule {
            LabeledSpace::bimodule(k, tags(&path, "left_tags", &c.left_tags, c.dim, k)?, right)
        } else {
            if c.left_tags.is_some() {
                return schema(format!("{path}.left_tags"), "module components carry right tags only");
            }
            LabeledSpace::right_module(k, right)
        });
    }
    Ok(slots
        .into_iter()
        .map(|s| s.unwrap_or_else(|| LabeledSpace::zero(k, bimodule)))
        .collect())
}

fn parse_products<F: Field>(
    prefix: &str,
    name: &str,
    given: &[ProductJson],
) -> Result<BTreeMap<(i64, i64), Matrix<F>>> {
    let mut out = BTreeMap::new();
    for (i, p) in given.iter().enumerate() {
        let path = format!("{prefix}{name}[{i}]");
        let m = p.matrix.to_matrix::<F>(&format!("{path}.matrix."))?;
        if out.insert((p.g, p.h), m).is_some() {
            return schema(path, format!("({}, {}) listed twice", p.g, p.h));
        }
    }
    Ok(out)
}

impl AlgebraJson {
    pub fn of<F: Field>(a: &GradedAlgebra<F>) -> Self {
        let (field, p) = field_tag::<F>();
        let w = a.window();
        AlgebraJson {
            field,
            p,
            group: GroupJson::of(a.group()),
            window: [w.lo, w.hi],
            idempotents: a.idempotents(),
            components: components_json(a.components(), w),
            mult: products_json(a.mult_entries()),
        }
    }

    pub fn to_algebra<F: Field>(&self, prefix: &str) -> Result<GradedAlgebra<F>> {
        check_field::<F>(prefix, &self.field, self.p)?;
        let group = self.group.to_group(&format!("{prefix}group"))?;
        let window = parse_window(&format!("{prefix}window"), group, self.window)?;
        let k = self.idempotents;
        let components = parse_components(prefix, &self.components, window, k, true)?;
        let mult = parse_products(prefix, "mult", &self.mult)?;
        GradedAlgebra::new(window, k, components, mult)
    }
}

impl ModuleJson {
    pub fn of<F: Field>(m: &GradedModule<F>) -> Self {
        let (field, p) = field_tag::<F>();
        let w = m.window();
        let mut components = components_json(m.components(), w);
        for c in &mut components {
            c.left_tags = None;
        }
        ModuleJson {
            field,
            p,
            algebra: AlgebraJson::of(m.algebra()),
            window: [w.lo, w.hi],
            components,
            action: products_json(m.action_entries()),
        }
    }

    pub fn to_module<F: Field>(&self) -> Result<GradedModule<F>> {
        check_field::<F>("", &self.field, self.p)?;
        let algebra = Arc::new(self.algebra.to_algebra::<F>("algebra.")?);
        let window = parse_window("window", algebra.group(), self.window)?;
        let components = parse_components("", &self.components, window, algebra.idempotents(), false)?;
        let action = parse_products("", "action", &self.action)?;
        GradedModule::new(algebra, window, components, action)
    }
}

pub fn algebra_to_json<F: Field>(a: &GradedAlgebra<F>) -> String {
    to_pretty(&AlgebraJson::of(a))
}

pub fn algebra_from_json<F: Field>(text: &str) -> Result<GradedAlgebra<F>> {
    parse_dto::<AlgebraJson>(text)?.to_algebra("")
}

pub fn module_to_json<F: Field>(m: &GradedModule<F>) -> String {
    to_pretty(&ModuleJson::of(m))
}

pub fn module_from_json<F: Field>(text: &str) -> Result<GradedModule<F>> {
    parse_dto::<ModuleJson>(text)?.to_module()
}

#[derive(Deserialize)]
struct FieldPeek {
    field: String,
    #[serde(default)]
    p: Option<u64>,
}

/// The coefficient field named by a matrix, algebra or module document.
pub fn field_of(text: &str) -> Result<FieldKind> {
    let peek: FieldPeek = parse_dto(text)?;
    match FieldKind::parse(&peek.field) {
        Some(FieldKind::Prime(q)) if peek.p.is_some_and(|p| p != q) => {
            schema("p", format!("p disagrees with {}", peek.field))
        }
        Some(kind) => Ok(kind),
        None => schema("field", format!("unknown or unsupported field {:?}", peek.field)),
    }
}
