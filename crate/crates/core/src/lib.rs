pub mod constructions;
pub mod error;
pub mod exactlin;
pub mod field;
pub mod graded_core;
pub mod json;
pub mod lifting;
pub mod regrade_maps;
pub mod subsets;
pub mod verdict;

pub use error::{Error, Result};
pub use field::{Field, FieldKind, Fp, Gf101, Rational};
pub use verdict::Verdict;

pub type QMatrix = exactlin::Matrix<Rational>;
pub type QSubspace = exactlin::Subspace<Rational>;
pub type QAlgebra = graded_core::GradedAlgebra<Rational>;
pub type QModule = graded_core::GradedModule<Rational>;
pub type Gf101Matrix = exactlin::Matrix<Gf101>;
pub type Gf101Algebra = graded_core::GradedAlgebra<Gf101>;
pub type Gf101Module = graded_core::GradedModule<Gf101>;
