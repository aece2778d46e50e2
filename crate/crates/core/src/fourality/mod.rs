//! The 4-ality model of `so8` on `V₈ = C₁⊗C₂ ⊕ C₃⊗D`, its fixed-point
//! subalgebras `so7` and `G2` under permutations of the factors, the
//! projection `π: so7 → G2` and the fibres of `π` over the rank-≤2 locus.

mod fiber;
mod fixed;
mod model;

use thiserror::Error;

use crate::chevalley::ChevalleyError;
use crate::sympair::SympairError;

pub use fiber::{ab_diagram, fiber_over, ABDiagram, Fiber, FiberRecord};
pub use fixed::{
    fixed_point_subalgebra, match_g2_models, project_pi, rank_on_v7, tower_consistent, v7_matrix,
    FactorGroup, FixedSubalgebra, G2Match, Projection, RootMatch,
};
pub use model::{build_fourality_so8, FouralityAlgebra, TwoSpace, FACTORS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FouralityError {
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("element of {found} where {expected} was expected")]
    WrongAlgebra { expected: String, found: String },
    #[error("element is not in the odd part: {0}")]
    NotInP(String),
    #[error("element does not act nilpotently on V7: {0}")]
    NotNilpotentOnV7(String),
    #[error("not a model of G2: {0}")]
    NotG2(String),
    #[error(transparent)]
    Chevalley(#[from] ChevalleyError),
    #[error(transparent)]
    Sympair(#[from] SympairError),
}
