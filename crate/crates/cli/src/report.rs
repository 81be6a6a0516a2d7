use std::fmt::Write as _;

use gradkill::graded_core::{GradedAlgebra, GradedModule};
use gradkill::subsets::DegreeSet;
use gradkill::{Field, Verdict};
use serde_json::{json, Value};

/// What a subcommand produced: a JSON document, a text rendering, and
/// whether the checked property held.
pub struct Outcome {
    pub holds: bool,
    pub json: Value,
    pub text: String,
    /// A JSON object (algebra, module, set, map) to write with `--output`.
    pub object: Option<Value>,
}

impl Outcome {
    pub fn new(holds: bool, json: Value, text: String) -> Self {
        Outcome {
            holds,
            json,
            text,
            object: None,
        }
    }

    /// An outcome whose JSON form is the object itself.
    pub fn object(holds: bool, object: Value, text: String) -> Self {
        Outcome {
            holds,
            json: object.clone(),
            text,
            object: Some(object),
        }
    }
}

pub fn verdict_json(v: &Verdict) -> Value {
    json!({
        "holds": v.holds,
        "window_certified": v.window_certified,
        "witness": v.witness,
        "detail": v.detail,
    })
}

pub fn verdict_line(label: &str, v: &Verdict) -> String {
    format!("{label:<28} {v}")
}

pub fn brace(s: &[i64]) -> String {
    let inner: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

pub fn dims_line<F: Field>(label: &str, a: &GradedAlgebra<F>) -> String {
    let w = a.window();
    format!("{label:<28} window [{}, {}] dims {:?}", w.lo, w.hi, a.dims())
}

pub fn module_line<F: Field>(label: &str, m: &GradedModule<F>) -> String {
    let w = m.window();
    format!("{label:<28} window [{}, {}] dims {:?}", w.lo, w.hi, m.dims())
}

pub fn set_line(label: &str, s: &DegreeSet) -> String {
    format!("{label:<28} {s}")
}

/// Renders rows as a left-aligned table with a header.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    let line = |cells: Vec<&str>, out: &mut String| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        let _ = writeln!(out, "{}", padded.join("  ").trim_end());
    };
    line(header.to_vec(), &mut out);
    line(
        widths
            .iter()
            .map(|w| "-".repeat(*w))
            .collect::<Vec<_>>()
            .iter()
            .map(|s| s.as_str())
            .collect(),
        &mut out,
    );
    for r in rows {
        line(r.iter().map(|s| s.as_str()).collect(), &mut out);
    }
    out
}
