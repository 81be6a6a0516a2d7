use std::path::PathBuf;
use std::sync::Arc;

use clap::{Subcommand, ValueEnum};
use gradkill::constructions::{
    group_algebra, n_homogeneous_dual, relation_space, truncated_poly, two_var_witness, WitnessCase,
};
use gradkill::graded_core::{kill_support_algebra, GradedAlgebra, GradedModule, Window};
use gradkill::json::{algebra_from_json, to_value, AlgebraJson, DegreeSetJson, ModuleJson, WindowedMapJson};
use gradkill::lifting::{random_g_module, random_killed_module, RelationDegrees, SampleShape};
use gradkill::regrade_maps::delta_map;
use gradkill::subsets::{DegreeSet, GradedGroup, Orientation};
use gradkill::{with_field, Field};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::commands::{es, file_field, parse_field, parse_window, read_set, unsupported};
use crate::report::Outcome;

#[derive(Subcommand)]
pub enum Make {
    /// The group algebra K[Z_n] graded by Z_n.
    GroupZn {
        #[arg(long)]
        n: i64,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// K[x]/(x^k) with deg x = deg.
    TruncPoly {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        deg: i64,
        /// `lo,hi` or `hi`.
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// K<x,y>/(x², y², yx) with deg x = g, deg y = h.
    Witness {
        #[arg(long)]
        case: String,
        #[arg(long, allow_hyphen_values = true)]
        g: i64,
        #[arg(long, allow_hyphen_values = true)]
        h: i64,
        /// Defaults to the smallest window holding 0, g, h and g+h.
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// The n-homogeneous dual T(V*)/(R^⊥) truncated above degree `window`.
    Dual {
        #[arg(long)]
        vdim: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, required = true)]
        rel: Vec<String>,
        #[arg(long)]
        window: i64,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// The regular module of an algebra.
    Regular {
        #[arg(long)]
        algebra: PathBuf,
    },
    /// A random finitely presented module generated in (S:U).
    Sample {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        s: PathBuf,
        #[arg(long)]
        u: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Over the killed algebra A_U, or over A (torsion-free in S).
        #[arg(long, value_enum, default_value_t = Over::Killed)]
        over: Over,
        /// Where relations of killed samples may sit.
        #[arg(long, value_enum, default_value_t = Relations::Support)]
        relations: Relations,
    },
    /// A periodic degree set nZ + residues (or a subset of Z_n with --cyclic).
    Periodic {
        #[arg(long)]
        n: i64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        residues: Vec<i64>,
        #[arg(long)]
        cyclic: bool,
    },
    /// The translation of an interval with period n and length r.
    Interval {
        #[arg(long, value_enum)]
        orientation: OrientationArg,
        #[arg(long)]
        n: i64,
        #[arg(long)]
        r: i64,
    },
    /// The enumeration map δ of a periodic set on a window.
    Delta {
        #[arg(long)]
        u: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        s0: i64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Over {
    Killed,
    Full,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Relations {
    Quotient,
    Support,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrientationArg {
    Right,
    Left,
}

/// Builders print the object itself in either format.
fn emit(object: Value) -> Outcome {
    let text = serde_json::to_string_pretty(&object).expect("JSON values serialize") + "\n";
    Outcome::object(true, object, text)
}

fn algebra<F: Field>(a: &GradedAlgebra<F>) -> Outcome {
    emit(to_value(&AlgebraJson::of(a)))
}

fn module<F: Field>(m: &GradedModule<F>) -> Outcome {
    emit(to_value(&ModuleJson::of(m)))
}

pub fn run(what: &Make) -> Result<Outcome, String> {
    match what {
        Make::GroupZn { n, field } => {
            let kind = parse_field(field)?;
            with_field!(kind, F => Ok(algebra(&group_algebra::<F>(*n).map_err(es)?)), else Err(unsupported(kind)))
        }
        Make::TruncPoly { k, deg, window, field } => {
            let kind = parse_field(field)?;
            let w = parse_window(window)?;
            with_field!(kind, F => Ok(algebra(&truncated_poly::<F>(*k, *deg, w).map_err(es)?)), else Err(unsupported(kind)))
        }
        Make::Witness {
            case,
            g,
            h,
            window,
            field,
        } => {
            let kind = parse_field(field)?;
            let case = WitnessCase::parse(case).ok_or_else(|| format!("unknown case {case:?}; use iii or iv"))?;
            let w = match window {
                Some(w) => parse_window(w)?,
                None => {
                    let ds = [0, *g, *h, g + h];
                    (*ds.iter().min().unwrap(), *ds.iter().max().unwrap())
                }
            };
            with_field!(kind, F => Ok(algebra(&two_var_witness::<F>(case, *g, *h, w).map_err(es)?)), else Err(unsupported(kind)))
        }
        Make::Dual {
            vdim,
            n,
            rel,
            window,
            field,
        } => {
            let kind = parse_field(field)?;
            let rels: Vec<&str> = rel.iter().map(|s| s.as_str()).collect();
            with_field!(kind, F => {
                let r = relation_space::<F>(*vdim, *n, &rels).map_err(es)?;
                Ok(algebra(&n_homogeneous_dual(*vdim, *n, &r, *window).map_err(es)?))
            }, else Err(unsupported(kind)))
        }
        Make::Regular { algebra: path } => {
            let (text, kind) = file_field(path)?;
            with_field!(kind, F => {
                let a = algebra_from_json::<F>(&text).map_err(|e| format!("{}: {e}", path.display()))?;
                Ok(module(&GradedModule::regular(Arc::new(a)).map_err(es)?))
            }, else Err(unsupported(kind)))
        }
        Make::Sample {
            algebra: path,
            s,
            u,
            window,
            seed,
            over,
            relations,
        } => {
            let (text, kind) = file_field(path)?;
            let s = read_set(s)?;
            let u = read_set(u)?;
            let (lo, hi) = parse_window(window)?;
            with_field!(kind, F => {
                let a = Arc::new(algebra_from_json::<F>(&text).map_err(|e| format!("{}: {e}", path.display()))?);
                let w = Window::new(GradedGroup::Integers, lo, hi).map_err(es)?;
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let m = match over {
                    Over::Full => random_g_module(&a, &s, &u, w, SampleShape::default(), &mut rng),
                    Over::Killed => {
                        let killed = kill_support_algebra(&a, &u).map_err(es)?;
                        let rel = match relations {
                            Relations::Quotient => RelationDegrees::Quotient,
                            Relations::Support => RelationDegrees::Support,
                        };
                        random_killed_module(&killed, &s, &u, w, rel, SampleShape::default(), &mut rng)
                    }
                }
                .map_err(es)?;
                Ok(module(&m))
            }, else Err(unsupported(kind)))
        }
        Make::Periodic { n, residues, cyclic } => {
            let set = if *cyclic {
                DegreeSet::cyclic(*n, residues.iter().copied())
            } else {
                DegreeSet::periodic(*n, residues.iter().copied())
            }
            .map_err(es)?;
            Ok(emit(to_value(&DegreeSetJson::of(&set))))
        }
        Make::Interval { orientation, n, r } => {
            let o = match orientation {
                OrientationArg::Right => Orientation::Right,
                OrientationArg::Left => Orientation::Left,
            };
            let set = DegreeSet::interval_translation(o, *n, *r).map_err(es)?;
            Ok(emit(to_value(&DegreeSetJson::of(&set))))
        }
        Make::Delta { u, window, s0 } => {
            let u = read_set(u)?;
            let w = parse_window(window)?;
            let phi = delta_map(&u, *s0, w).map_err(es)?;
            Ok(emit(to_value(&WindowedMapJson::of(&phi))))
        }
    }
}
