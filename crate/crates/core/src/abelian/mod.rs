//! Exact integer linear algebra and finitely generated abelian groups.

mod group;
mod matrix;
mod snf;

pub use group::{
    cyclic_membership, group_from_relations, FgAbelianGroup, GroupElement, GroupPresentation,
};
pub use matrix::IntMatrix;
pub use snf::{divisibility_chain_holds, smith_normal_form, SmithDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AbelianError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("elements belong to different groups")]
    ParentMismatch,
    #[error("not in invariant factor form: {0}")]
    NonCanonical(String),
}
