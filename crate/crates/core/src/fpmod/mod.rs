//! Finitely presented `R[n]`-modules: canonical filtrations, comparison
//! maps, balanced and quasi-free tests, extensions, refinements, Hom, Ext.

pub(crate) mod cover;
mod extension;
mod filtration;
mod homext;
mod ideal;
mod map;
mod presmod;
mod quasifree;
mod refine;

#[allow(non_snake_case)]
pub use extension::{build_extension, extension_R_by_Ri, Extension};
pub use filtration::{
    balance_criteria, comparison_maps, first_canonical_filtration, is_balanced, is_balanced_at, second_canonical_filtration,
    BalanceCertificate, BalanceCriteria, ComparisonMaps, FiltrationChain,
};
pub use homext::{ext1_module, hom_module, HomModule};
pub use ideal::{IdealBalance, IdealModule};
pub use map::ModMap;
pub use presmod::{Grading, Locality, PresMod, Submodule};
pub use quasifree::{generic_type, quasi_free_type, surjective_iff_restriction, QuasiFreeType};
pub use refine::refine_filtrations;

pub(crate) use presmod::subquotient;
