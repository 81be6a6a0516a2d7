//! Graded algebras and modules on finite degree windows.
//!
//! Objects are truncations: a `Z`-graded algebra on `[0, D]` is `A / A_{>D}`
//! and a module on `[lo, hi]` is zero outside its window, so every check
//! made here is exact for the truncated objects. `Z_n`-graded objects carry
//! all of `Z_n`.

mod algebra;
mod hom;
mod kill;
mod module;
mod regrade;
mod submodule;

pub use algebra::{validate_algebra, AlgebraFlags, GradedAlgebra, Window};
pub use hom::{find_isomorphism, hom_space, hom_space_dim, is_module_map, GradedMap};
pub use kill::{kill_support_algebra, kill_support_module, kill_support_module_over, KilledAlgebra};
pub(crate) use module::free_basis;
pub use module::{free_module, same_algebra, shift_module, validate_module, GradedModule};
pub use regrade::{regrade_algebra, regrade_module, sigma_tilde_vanishing, un_regrade_module};
pub use submodule::{
    closure, full_layers, generated_layers, generated_submodule, is_cogenerated_in, is_generated_in, is_submodule,
    quotient, submodule, torsion_free_quotient, torsion_layers, torsion_submodule, zero_layers, Layers,
};

#[cfg(test)]
mod tests;
