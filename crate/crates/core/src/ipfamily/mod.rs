//! Finite levels of IP-families: GL block towers, affine towers and
//! wreath products, with the group-algebra embedding i.

pub mod algebra;
pub mod checks;
pub mod groups;
pub mod levels;

pub use algebra::{convolve, involution, GroupAlgElem};
pub use checks::{
    check_embedding, de_finetti_central_check, flag_induction_check, is_g_central, unitriangular_coherence_bridge,
    CentralityVerdict, EmbeddingVerdict, FlagInductionVerdict,
};
pub use groups::{FiniteGroup, FiniteGroupTable, MatrixGroup, WreathElem};
pub use levels::{build_affine_ip_level, build_gl_ip_level, build_wreath_ip_level, embed_i, IPLevel};
