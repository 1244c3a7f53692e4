//! Linear algebra over finite fields.

pub mod classes;
pub mod echelon;
pub mod extension;
pub mod field;
pub mod matrix;
pub mod poly;
pub mod subspaces;

pub use classes::{
    canonical_unipotent, class_representative, conj_class_type, jordan_type_unipotent, primary_element,
    ConjClassType,
};
pub use echelon::{Echelon, FqSpace, Gf2Space, VecSpace};
pub use extension::{
    extend_type, extension_counts, extension_counts_auto, extension_counts_closed_form, extension_counts_of,
};
pub use field::FieldCtx;
pub use matrix::MatGF;
pub use poly::{factor, irreducibles, is_irreducible, FqPoly};
pub use subspaces::{
    all_subspaces, count_fixed_flags, count_unitriangular_by_type, invariant_subspaces, subspaces_of_dim,
    FlagType, Subspace,
};
