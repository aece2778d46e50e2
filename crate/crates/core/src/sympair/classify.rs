use std::fmt;

use super::slice::{normal_triple, slodowy_slice_in, spectrum, stratum_lines};
use super::{Levi, SearchOptions, SymmetricPair, SympairError};
use crate::chevalley::{
    centralizer, complete_sl2, is_nilpotent, jordan_decomposition, reductive_type, Element,
    LeviType,
};
use crate::exact::{modp, q, Q};

/// Fingerprint of the decomposition class of a point of `p_ℓ`.
///
/// For `x = s + n` it records the type of `ℓ^s = g^s ∩ ℓ`, the `ad(h)`
/// spectra on `k_{ℓ^s}` and `p_{ℓ^s}` for a normal triple through `n`
/// inside `ℓ^s`, and `dim K_ℓ.x`. Points of one class share a fingerprint.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassId {
    pub levi: LeviType,
    pub k_spectrum: Vec<i64>,
    pub p_spectrum: Vec<i64>,
    pub orbit_dim: usize,
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} dim {} k{:?} p{:?}",
            self.levi, self.orbit_dim, self.k_spectrum, self.p_spectrum
        )
    }
}

/// Class fingerprint of `x ∈ p`.
pub fn classify_point(pair: &SymmetricPair, x: &Element) -> Result<ClassId, SympairError> {
    classify_in(pair, &Levi::whole(pair), x)
}

/// Class fingerprint of `x ∈ p_ℓ` relative to the pair `(ℓ, k_ℓ)`.
pub fn classify_in(
    pair: &SymmetricPair,
    ambient: &Levi,
    x: &Element,
) -> Result<ClassId, SympairError> {
    pair.require_p(x)?;
    if !ambient.p().contains(x) {
        return Err(SympairError::NotInLevi(x.to_string()));
    }
    let (s, n) = jordan_decomposition(x)?;
    let ls = if s.is_zero() {
        ambient.space().clone()
    } else {
        centralizer(std::slice::from_ref(&s), ambient.space())
    };
    let ks = ls.intersect(pair.k());
    let ps = ls.intersect(pair.p());
    let triple = complete_sl2(&n, Some(&ps))?;
    Ok(ClassId {
        levi: reductive_type(&ls),
        k_spectrum: spectrum(&triple.h, &ks),
        p_spectrum: spectrum(&triple.h, &ps),
        orbit_dim: ambient.orbit_dim(x),
    })
}

/// A datum `(ℓ, K_ℓ.n)`: a Levi arising from `p` and a nilpotent `n ∈ p_ℓ`.
#[derive(Clone, Debug)]
pub struct Datum {
    levi: Levi,
    n: Element,
}

impl Datum {
    pub fn new(pair: &SymmetricPair, levi: Levi, n: Element) -> Result<Self, SympairError> {
        pair.require_p(&n)?;
        if !levi.p().contains(&n) {
            return Err(SympairError::NotInLevi(n.to_string()));
        }
        if !is_nilpotent(&n) {
            return Err(SympairError::NotNilpotent(n.to_string()));
        }
        Ok(Datum { levi, n })
    }

    /// `(g, K.n)`.
    pub fn whole(pair: &SymmetricPair, n: Element) -> Result<Self, SympairError> {
        Self::new(pair, Levi::whole(pair), n)
    }

    pub fn levi(&self) -> &Levi {
        &self.levi
    }

    pub fn n(&self) -> &Element {
        &self.n
    }

    /// A point of the associated class: `v + n`.
    pub fn representative(&self) -> Element {
        self.levi.v() + &self.n
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Induction {
    None,
    Weak,
    Full,
}

impl fmt::Display for Induction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Induction::None => "none",
            Induction::Weak => "weak",
            Induction::Full => "full",
        })
    }
}

#[derive(Clone, Debug)]
pub struct InductionOutcome {
    pub kind: Induction,
    /// A point of the slice at `n₂` lying in the class of `d₁`.
    pub witness: Option<Element>,
}

impl InductionOutcome {
    fn none() -> Self {
        InductionOutcome {
            kind: Induction::None,
            witness: None,
        }
    }
}

/// Largest grid searched for induction witnesses.
const GRID_CAP: u64 = 250_000;
/// Largest number of directions tried by the line search during induction.
const LINE_CAP: u64 = 2_000_000;

/// Largest height `h ≤ height` with `(2h + 1)^m ≤ cap`.
fn fit_height(height: u32, m: usize, cap: u64) -> i64 {
    let mut h = i64::from(height);
    while h > 0
        && (2 * h as u64 + 1)
            .checked_pow(m as u32)
            .is_none_or(|c| c > cap)
    {
        h -= 1;
    }
    h
}

/// Decides whether `d₁` slice induces `d₂`: some point of the Slodowy
/// slice at `n₂` inside `ℓ₂` lies in the `(ℓ₂, k_{ℓ₂})`-class of `d₁`.
/// The induction is full when that class has `K_{ℓ₂}`-orbits of the same
/// dimension as `K_{ℓ₂}.n₂`.
///
/// Witnesses are sought at `n₂` itself, then on the stratum lines of the
/// slice for the class's orbit dimension, then on an integer grid. `None`
/// is only returned when `ℓ₁ ⊄ ℓ₂` or the orbit dimensions forbid
/// induction; a fruitless search is [`SympairError::SearchExhausted`].
pub fn slice_induction(
    pair: &SymmetricPair,
    d1: &Datum,
    d2: &Datum,
    opts: SearchOptions,
) -> Result<InductionOutcome, SympairError> {
    let l2 = d2.levi();
    if !l2.contains(d1.levi()) {
        return Ok(InductionOutcome::none());
    }
    let target = classify_in(pair, l2, &d1.representative())?;
    let o2 = l2.orbit_dim(d2.n());
    if o2 > target.orbit_dim {
        return Ok(InductionOutcome::none());
    }
    let kind = if o2 == target.orbit_dim {
        Induction::Full
    } else {
        Induction::Weak
    };
    let found = |x: Element| InductionOutcome {
        kind,
        witness: Some(x),
    };
    let matches = |x: &Element| -> Result<bool, SympairError> {
        Ok(l2.orbit_dim(x) == target.orbit_dim && classify_in(pair, l2, x)? == target)
    };
    if matches(d2.n())? {
        return Ok(found(d2.n().clone()));
    }
    let triple = normal_triple(pair, l2, d2.n())?;
    let slice = slodowy_slice_in(pair, l2, &triple)?;
    let m = slice.dim();
    if target.orbit_dim < slice.regular_orbit_dim() {
        let line_opts = SearchOptions {
            height: fit_height(opts.height, m, LINE_CAP) as u32,
            ..opts
        };
        for line in stratum_lines(&slice, target.orbit_dim, line_opts)? {
            for lam in 1..=3 {
                let x = &slice.triple().e + &line.direction.scale(&q(lam));
                if matches(&x)? {
                    return Ok(found(x));
                }
            }
        }
    }
    let h = fit_height(opts.height, m, GRID_CAP);
    if h == 0 || m == 0 {
        return Err(SympairError::SearchExhausted(opts.height));
    }
    let side = (2 * h + 1) as u64;
    for idx in 0..side.pow(m as u32) {
        let mut rest = idx;
        let mut c = vec![Q::from_integer(0.into()); m];
        for cj in c.iter_mut().rev() {
            *cj = q((rest % side) as i64 - h);
            rest /= side;
        }
        if !screen_dim(&slice, &c, target.orbit_dim) || slice.orbit_dim_at(&c) != target.orbit_dim {
            continue;
        }
        let x = slice.point(&c);
        if matches(&x)? {
            return Ok(found(x));
        }
    }
    Err(SympairError::SearchExhausted(opts.height))
}

/// Cheap necessary condition for `dim K_ℓ.x = d`: the modular rank of the
/// bracket matrix cannot exceed the rational one.
fn screen_dim(slice: &super::SlodowySlice, c: &[Q], d: usize) -> bool {
    match modp::reduce_matrix(&slice.orbit_matrix(c)) {
        Some(m) => modp::rank(m) <= d,
        None => true,
    }
}
