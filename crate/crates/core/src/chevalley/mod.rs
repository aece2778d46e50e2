//! Semisimple Lie algebras with exact structure constants and the
//! element-level operations built on them.

mod algebra;
mod build;
mod element;
mod ops;
mod roots;

pub use algebra::{LieAlgebra, StructureTable};
pub use build::chevalley_algebra;
pub use element::{Element, Subspace};
pub use ops::{
    ad_matrix, bracket, centralizer, complete_sl2, derived_algebra, is_nilpotent, is_semisimple,
    jordan_decomposition, killing, levi_classify, reductive_type, LeviFactor, LeviType, Sl2Triple,
};
pub use roots::{RootSystem, RootType};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChevalleyError {
    #[error("unsupported root system type '{0}'")]
    UnsupportedType(String),
    #[error("elements belong to different algebras ({left} vs {right})")]
    MixedAlgebra { left: String, right: String },
    #[error("algebra construction failed: {0}")]
    Construction(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("element is not nilpotent: {0}")]
    NotNilpotent(String),
    #[error("element is not semisimple: {0}")]
    NotSemisimple(String),
    #[error("no sl2-triple completion within the prescribed grading for {0}")]
    NoGradedCompletion(String),
    #[error("semisimple part of ad(x) is not in the image of ad; the algebra is not semisimple")]
    PullbackInconsistent,
}
