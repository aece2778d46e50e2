//! Symmetric pairs `g = k ⊕ p`: isotropy orbit dimensions, the open sets
//! `U_ℓ`, Slodowy slices with their contracting action, class fingerprints,
//! the stratum line search and slice induction.

mod classify;
mod pair;
mod slice;

pub use classify::{
    classify_in, classify_point, slice_induction, ClassId, Datum, Induction, InductionOutcome,
};
pub use pair::{
    build_split_g2_pair, hat_embed, hat_pair, k_orbit_dim, u_l_conditions, u_l_test, Levi,
    SymmetricPair,
};
pub use slice::{
    contraction_orbit, normal_triple, slodowy_slice, slodowy_slice_in, stratum_lines,
    NormalSl2Triple, SearchOptions, SlodowySlice, StratumLine, MAX_CANDIDATES,
};

use thiserror::Error;

use crate::chevalley::ChevalleyError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SympairError {
    #[error("invalid symmetric pair: {0}")]
    InvalidPair(String),
    #[error("not in p: {0}")]
    NotInP(String),
    #[error("not in the odd part of the Levi: {0}")]
    NotInLevi(String),
    #[error("not a Levi from p: {0} is not semisimple")]
    NotSemisimple(String),
    #[error("not nilpotent: {0}")]
    NotNilpotent(String),
    #[error("not a normal sl2-triple: {0}")]
    NotNormal(String),
    #[error("slice is not transverse: dim [k, e] = {image}, dim p^f = {slice}, dim p = {p}")]
    NotTransverse {
        image: usize,
        slice: usize,
        p: usize,
    },
    #[error("point is not in the slice: {0}")]
    NotInSlice(String),
    #[error("orbit dimension identity fails: dim K.x = {k_dim}, dim G.x = {g_dim}")]
    OrbitHalving { k_dim: usize, g_dim: usize },
    #[error("contraction parameter must be nonzero")]
    ZeroParameter,
    #[error("search space too large: slice dimension {dim} at height {height} exceeds {limit} candidates")]
    SearchTooLarge { dim: usize, height: u32, limit: u64 },
    #[error("search exhausted: no witness within height {0}")]
    SearchExhausted(u32),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Chevalley(#[from] ChevalleyError),
}
