//! Representatives of the split G2 pair and of the 4-ality tower used by
//! the reports.

use crate::chevalley::Element;
use crate::fourality::{
    build_fourality_so8, fixed_point_subalgebra, FactorGroup, FixedSubalgebra, FouralityAlgebra,
    FouralityError,
};
use crate::sympair::{
    build_split_g2_pair, classify_point, ClassId, Levi, SymmetricPair, SympairError,
};

/// Nilpotent representatives of the isotropy orbits: name, element,
/// `dim G.n`, `dim K.n`.
pub const ORBIT_REPS: [(&str, &str, usize, usize); 5] = [
    ("n3", "x5", 6, 3),
    ("n4", "x4", 8, 4),
    ("n5a", "x5 + y3", 10, 5),
    ("n5b", "x2 + x5", 10, 5),
    ("n6", "x3 + y2", 12, 6),
];

/// Base point of the slice at the orbit class of `n5b`.
///
/// `x3 + x4` has the same class as `x2 + x5` (they are `K`-conjugate over
/// the algebraic closure) but lies in a different rational orbit. At
/// `x2 + x5` only two of the four stratum lines are defined over `ℚ`;
/// at `x3 + x4` all four are.
pub const N5B_SLICE_BASE: &str = "x3 + x4";

/// Semisimple elements whose centralizers are the two subregular Levis:
/// `J1` has a short-root `A1`, `J2` a long-root `A1`.
pub const J1_V: &str = "x4 + y4";
pub const J2_V: &str = "x5 + y5";

pub struct G2Fixture {
    pub pair: SymmetricPair,
    pub j1: Levi,
    pub j2: Levi,
    pub j1_class: ClassId,
    pub j2_class: ClassId,
}

impl G2Fixture {
    pub fn build() -> Result<Self, SympairError> {
        let pair = build_split_g2_pair()?;
        let v1 = pair.element(J1_V)?;
        let v2 = pair.element(J2_V)?;
        Ok(G2Fixture {
            j1: Levi::new(&pair, &v1)?,
            j2: Levi::new(&pair, &v2)?,
            j1_class: classify_point(&pair, &v1)?,
            j2_class: classify_point(&pair, &v2)?,
            pair,
        })
    }

    pub fn element(&self, s: &str) -> Result<Element, SympairError> {
        self.pair.element(s)
    }

    /// `J1`, `J2` or `other` for a class fingerprint.
    pub fn sheet_label(&self, c: &ClassId) -> &'static str {
        if *c == self.j1_class {
            "J1"
        } else if *c == self.j2_class {
            "J2"
        } else {
            "other"
        }
    }
}

/// Inputs of the fibre table, their expected fibre cardinalities and
/// rational fibre points: class, `y ∈ p₂`, `#π⁻¹(y) ∩ 𝒯`, points in `p₁`.
///
/// Basis names: `c_{μ}_{σ}` is `μ ⊗ d_σ` with `μ` a monomial in `c₊ = p`,
/// `c₋ = m`; `s_{μ}_{σ₃}_{σ_d}` is `μ ⊗ c_{σ₃} ⊗ d_{σ_d}` with `μ ∈ S²C′`.
pub const FIBER_TABLE: [(&str, &str, usize, &[&str]); 6] = [
    ("J1", "c_ppm_p + c_pmm_m", 1, &["s_pm_p_p + s_pm_m_m"]),
    ("O5a", "c_ppp_p + c_ppm_m", 1, &["s_pp_p_p + s_pp_m_m"]),
    (
        "O5b",
        "c_ppm_p + c_pmm_p",
        3,
        &[
            "s_pm_p_p + s_pm_m_p",
            "s_pp_m_p + s_pm_m_p",
            "s_pm_p_p + s_mm_p_p",
        ],
    ),
    ("O4", "c_ppm_p", 2, &["s_pp_m_p", "s_pm_p_p"]),
    ("O3", "c_ppp_p", 1, &["s_pp_p_p"]),
    ("zero", "0", 1, &["0"]),
];

/// Expected ab-diagrams of the fibre points over the two classes of
/// dimension 5.
pub const AB_DIAGRAMS: [(&str, &str); 2] = [("O5a", "aba,a,b,b,b"), ("O5b", "bab,a,a,b,b")];

pub struct Tower {
    pub so8: FouralityAlgebra,
    pub g1: FixedSubalgebra,
    pub g2: FixedSubalgebra,
}

impl Tower {
    pub fn build() -> Result<Self, FouralityError> {
        let so8 = build_fourality_so8()?;
        let g1 = fixed_point_subalgebra(&so8, FactorGroup::SwapC1C2)?;
        let g2 = fixed_point_subalgebra(&so8, FactorGroup::S3)?;
        Ok(Tower { so8, g1, g2 })
    }
}
