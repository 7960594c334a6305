//! Finite-dimensional algebras over prime fields, their module categories,
//! idempotent ideals, TTF triples and recollements.

pub mod algebra;
pub mod builtins;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod format;
pub mod ideal;
pub mod kuhn;
pub mod linalg;
pub mod module;
pub mod quiver;
pub mod recollement;
pub mod report;
pub mod ttf;

pub use algebra::{is_semiprimary, peirce_corner, quotient_algebra, Algebra, Corner, Element, QuotientAlgebra};
pub use error::{Error, Result};
pub use linalg::{Fp, Matrix, Subspace};
pub use module::{Bimodule, HomSpace, Module, ModuleMap, SubmoduleBasis};
pub use recollement::{
    check_quotient_equivalence, gabriel_debug_check, gabriel_hom_dim, image_identification_checks,
    recollement_from_idempotent, verify_recollement, FunctorTag, GabrielDebug, Recollement,
};
pub use kuhn::{
    idempotent_generation_check, kuhn_construction, verify_equivalence_witness, Certificate, EquivalenceWitness,
    GeneratorSpec,
};
pub use format::{load_algebra, parse_algebra_toml, AlgebraSpec};
