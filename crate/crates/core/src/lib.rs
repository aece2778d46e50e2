//! Exact computations with symmetric Lie algebras: Chevalley bases, isotropy
//! orbits, Slodowy slices and slice induction, and the tensor models of
//! `so8`, `so7` and `G2`.

pub mod chevalley;
pub mod exact;
pub mod fourality;
pub mod sympair;
pub mod verify;
