use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;

use super::pair::bracket_image;
use super::{Levi, SymmetricPair, SympairError};
use crate::chevalley::{centralizer, complete_sl2, Element, Sl2Triple, Subspace};
use crate::exact::{modp, q, rank_over_fraction_field, MatrixPoly, MatrixQ, Q};

/// An sl2-triple with `e, f ∈ p` and `h ∈ k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalSl2Triple {
    pub e: Element,
    pub h: Element,
    pub f: Element,
}

impl NormalSl2Triple {
    /// Checks normality and the sl2 relations.
    pub fn new(pair: &SymmetricPair, t: Sl2Triple) -> Result<Self, SympairError> {
        let normal = pair.in_p(&t.e) && pair.in_p(&t.f) && pair.in_k(&t.h);
        if !normal || !t.relations_hold() {
            return Err(SympairError::NotNormal(t.e.to_string()));
        }
        Ok(NormalSl2Triple {
            e: t.e,
            h: t.h,
            f: t.f,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.e.is_zero()
    }
}

/// Completes a nilpotent `e ∈ p_ℓ` to a normal triple inside `ℓ`.
pub fn normal_triple(
    pair: &SymmetricPair,
    levi: &Levi,
    e: &Element,
) -> Result<NormalSl2Triple, SympairError> {
    pair.require_p(e)?;
    let t = complete_sl2(e, Some(levi.p()))?;
    NormalSl2Triple::new(pair, t)
}

/// The slice `e + p_ℓ^f` with a basis adapted to the `ad(h)` grading.
#[derive(Clone, Debug)]
pub struct SlodowySlice {
    levi: Levi,
    triple: NormalSl2Triple,
    basis: Vec<Element>,
    weights: Vec<i64>,
    /// Bracket data for orbit dimensions: `[k_i, e]` and `[k_i, b_j]` in
    /// coordinates of `p_ℓ`, one matrix per slice basis vector.
    base_map: MatrixQ,
    basis_maps: Vec<MatrixQ>,
    max_orbit_dim: usize,
}

/// Graded decomposition of `sub` under `ad(h)`: (weight, RREF basis) pairs
/// with weights in descending order.
pub(crate) fn weight_spaces(h: &Element, sub: &Subspace) -> Vec<(i64, Subspace)> {
    let alg = sub.algebra();
    let m = sub.dim();
    let cols: Vec<Vec<Q>> = sub
        .basis()
        .iter()
        .map(|b| {
            sub.coords(&alg.bracket_vec(h.coeffs(), b))
                .expect("ad(h) preserves the subspace")
        })
        .collect();
    let ad = MatrixQ::from_cols(m, &cols);
    let mut out = Vec::new();
    let mut found = 0;
    let bound = 2 * alg.dim() as i64 + 2;
    for w in weight_order(bound) {
        if found == m {
            break;
        }
        let mut shifted = ad.clone();
        for i in 0..m {
            shifted[(i, i)] -= q(w);
        }
        let (_, ker) = crate::exact::rank_kernel(&shifted);
        if !ker.is_empty() {
            found += ker.len();
            let vecs = ker.iter().map(|c| sub.from_coords(c)).collect();
            out.push((w, Subspace::span_vecs(alg, vecs)));
        }
    }
    assert_eq!(found, m, "ad(h) has integer eigenvalues on graded pieces");
    out.sort_by_key(|a| std::cmp::Reverse(a.0));
    out
}

/// 0, 1, −1, 2, −2, …
fn weight_order(bound: i64) -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..=bound).flat_map(|k| [k, -k]))
}

/// Sorted `ad(h)` eigenvalues on `sub`, with multiplicity.
pub(crate) fn spectrum(h: &Element, sub: &Subspace) -> Vec<i64> {
    if h.is_zero() {
        return vec![0; sub.dim()];
    }
    let mut v: Vec<i64> = weight_spaces(h, sub)
        .into_iter()
        .flat_map(|(w, s)| std::iter::repeat_n(w, s.dim()))
        .collect();
    v.sort();
    v
}

/// `p_ℓ`-coordinates of `[b, x]` for each `b` in `k_ℓ`, as columns.
fn bracket_matrix(levi: &Levi, x: &Element) -> MatrixQ {
    let alg = x.algebra();
    let cols: Vec<Vec<Q>> = levi
        .k()
        .basis()
        .iter()
        .map(|b| {
            levi.p()
                .coords(&alg.bracket_vec(b, x.coeffs()))
                .expect("[k_ℓ, p_ℓ] ⊆ p_ℓ")
        })
        .collect();
    MatrixQ::from_cols(levi.p().dim(), &cols)
}

/// Slodowy slice at a normal triple, for `ℓ = g`.
pub fn slodowy_slice(
    pair: &SymmetricPair,
    triple: &NormalSl2Triple,
) -> Result<SlodowySlice, SympairError> {
    slodowy_slice_in(pair, &Levi::whole(pair), triple)
}

/// Slodowy slice `e + p_ℓ^f` inside a Levi arising from `p`.
pub fn slodowy_slice_in(
    pair: &SymmetricPair,
    levi: &Levi,
    triple: &NormalSl2Triple,
) -> Result<SlodowySlice, SympairError> {
    pair.require_p(&triple.e)?;
    if !levi.p().contains(&triple.e) || !levi.p().contains(&triple.f) {
        return Err(SympairError::NotInLevi(triple.e.to_string()));
    }
    let pf = centralizer(std::slice::from_ref(&triple.f), levi.p());
    let ke = bracket_image(levi.k(), &triple.e);
    if ke.dim() + pf.dim() != levi.p().dim() {
        return Err(SympairError::NotTransverse {
            image: ke.dim(),
            slice: pf.dim(),
            p: levi.p().dim(),
        });
    }
    let mut basis = Vec::new();
    let mut weights = Vec::new();
    for (w, space) in weight_spaces(&triple.h, &pf) {
        if w > 0 {
            return Err(SympairError::NotNormal(format!(
                "slice of {} has positive weight {w}",
                triple.e
            )));
        }
        for b in space.elements() {
            basis.push(b);
            weights.push(w);
        }
    }
    let base_map = bracket_matrix(levi, &triple.e);
    let basis_maps = basis.iter().map(|b| bracket_matrix(levi, b)).collect();
    let max_orbit_dim = regular_orbit_dim(levi);
    Ok(SlodowySlice {
        levi: levi.clone(),
        triple: triple.clone(),
        basis,
        weights,
        base_map,
        basis_maps,
        max_orbit_dim,
    })
}

/// Largest `K_ℓ`-orbit dimension in `p_ℓ`, attained on a dense open set.
/// The rank of `[k_ℓ, x]` is lower semicontinuous, so the maximum over a
/// few unrelated integer points equals it unless all of them fall on a
/// proper closed subset.
fn regular_orbit_dim(levi: &Levi) -> usize {
    let p = levi.p();
    (1..=3i64)
        .map(|seed| {
            let c: Vec<Q> = (0..p.dim() as i64)
                .map(|i| q((i + 1) * seed + (i * i) % 7))
                .collect();
            levi.orbit_dim(&p.element_from_coords(&c))
        })
        .max()
        .unwrap_or(0)
}

impl SlodowySlice {
    pub fn triple(&self) -> &NormalSl2Triple {
        &self.triple
    }

    pub fn levi(&self) -> &Levi {
        &self.levi
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Element] {
        &self.basis
    }

    /// `ad(h)`-weight of each basis vector (all ≤ 0).
    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    /// Generic orbit dimension in `p_ℓ`.
    pub fn regular_orbit_dim(&self) -> usize {
        self.max_orbit_dim
    }

    /// `Σ c_j b_j`.
    pub fn vector(&self, c: &[Q]) -> Element {
        let mut v = Element::zero(self.triple.e.algebra());
        for (cj, b) in c.iter().zip(&self.basis) {
            if !cj.is_zero() {
                v = &v + &b.scale(cj);
            }
        }
        v
    }

    /// `e + Σ c_j b_j`.
    pub fn point(&self, c: &[Q]) -> Element {
        &self.triple.e + &self.vector(c)
    }

    /// `p_ℓ`-coordinates of `[k_ℓ, e + Σ c_j b_j]`, one column per basis
    /// vector of `k_ℓ`.
    pub fn orbit_matrix(&self, c: &[Q]) -> MatrixQ {
        let mut m = self.base_map.clone();
        for (cj, bm) in c.iter().zip(&self.basis_maps) {
            if !cj.is_zero() {
                m = &m + &bm.scale(cj);
            }
        }
        m
    }

    /// `dim K_ℓ.(e + Σ c_j b_j)`.
    pub fn orbit_dim_at(&self, c: &[Q]) -> usize {
        self.orbit_matrix(c).rank()
    }

    /// The pencil `A + λ·B_t` whose rank is `dim K_ℓ.(e + λt)`.
    pub fn line_pencil(&self, t: &[Q]) -> MatrixPoly {
        let mut b = MatrixQ::zeros(self.base_map.rows(), self.base_map.cols());
        for (cj, bm) in t.iter().zip(&self.basis_maps) {
            if !cj.is_zero() {
                b = &b + &bm.scale(cj);
            }
        }
        MatrixPoly::linear_pencil(&self.base_map, &b)
    }
}

/// `F_t.(e + x) = e + Σ t^{2−i_j} x_j b_j` where `i_j` is the weight of
/// `b_j`; every exponent is at least 2, so the family tends to `e`.
pub fn contraction_orbit(s: &SlodowySlice, x: &[Q], t: &Q) -> Result<Element, SympairError> {
    if t.is_zero() {
        return Err(SympairError::ZeroParameter);
    }
    if x.len() != s.dim() {
        return Err(SympairError::NotInSlice(format!(
            "{} coordinates for a slice of dimension {}",
            x.len(),
            s.dim()
        )));
    }
    let scaled: Vec<Q> = x
        .iter()
        .zip(&s.weights)
        .map(|(c, &w)| c * pow(t, (2 - w) as u32))
        .collect();
    Ok(s.point(&scaled))
}

fn pow(t: &Q, e: u32) -> Q {
    let mut r = q(1);
    for _ in 0..e {
        r *= t;
    }
    r
}

/// A line `e + 𝕂t` of the slice lying in the locus of a fixed orbit dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumLine {
    /// Primitive integer coordinates in the slice basis, first nonzero
    /// coordinate positive.
    pub coords: Vec<i64>,
    /// The direction `t = Σ c_j b_j`.
    pub direction: Element,
    /// Smallest exponent `2 − i_j` over the support of `t`.
    pub min_contraction_exponent: i64,
}

/// Search configuration shared by the slice searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub height: u32,
    pub workers: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            height: 24,
            workers: 1,
        }
    }
}

/// Upper bound on candidate directions before a search is refused.
pub const MAX_CANDIDATES: u64 = 50_000_000;

/// Evaluation point for the modular screen.
const SCREEN_LAMBDA: u64 = 1_000_003;

/// All lines `e + 𝕂t` in the slice, with `t` of coordinate height at most
/// `H`, along which the orbit dimension is generically `d`.
///
/// Each candidate is screened by its rank modulo a prime at a fixed
/// parameter value (a full modular rank there proves the generic rank
/// exceeds `d`); survivors are certified by the exact rank over `Q(λ)`.
pub fn stratum_lines(
    s: &SlodowySlice,
    d: usize,
    opts: SearchOptions,
) -> Result<Vec<StratumLine>, SympairError> {
    let m = s.dim();
    if m == 0 {
        return Ok(Vec::new());
    }
    let h = i64::from(opts.height);
    let side = (2 * h + 1) as u64;
    let total = side
        .checked_pow(m as u32)
        .filter(|&t| t <= MAX_CANDIDATES)
        .ok_or(SympairError::SearchTooLarge {
            dim: m,
            height: opts.height,
            limit: MAX_CANDIDATES,
        })?;
    let reduce = |mat: &MatrixQ| modp::reduce_matrix(mat);
    let base = reduce(&s.base_map);
    let maps: Option<Vec<Vec<Vec<u64>>>> = s.basis_maps.iter().map(reduce).collect();
    let screen = base.zip(maps);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers.max(1))
        .build()
        .map_err(|e| SympairError::Config(e.to_string()))?;
    let decode = |mut idx: u64| -> Vec<i64> {
        let mut c = vec![0i64; m];
        for cj in c.iter_mut().rev() {
            *cj = (idx % side) as i64 - h;
            idx /= side;
        }
        c
    };
    let candidates: Vec<Vec<i64>> = pool.install(|| {
        (0..total)
            .into_par_iter()
            .filter_map(|idx| {
                let c = decode(idx);
                let first = c.iter().find(|&&x| x != 0)?;
                if *first < 0 || c.iter().fold(0i64, |g, &x| g.gcd(&x)) != 1 {
                    return None;
                }
                if let Some((base, maps)) = &screen {
                    let lam = SCREEN_LAMBDA;
                    let mut mm = base.clone();
                    for (cj, bm) in c.iter().zip(maps) {
                        if *cj == 0 {
                            continue;
                        }
                        let f = modp::mul(lam, modp::from_i64(*cj));
                        for (row, brow) in mm.iter_mut().zip(bm) {
                            for (x, y) in row.iter_mut().zip(brow) {
                                *x = modp::add(*x, modp::mul(f, *y));
                            }
                        }
                    }
                    if modp::rank(mm) > d {
                        return None;
                    }
                }
                Some(c)
            })
            .collect()
    });
    let mut lines: Vec<StratumLine> = pool.install(|| {
        candidates
            .into_par_iter()
            .filter_map(|c| {
                let t: Vec<Q> = c.iter().map(|&x| q(x)).collect();
                if rank_over_fraction_field(&s.line_pencil(&t)) != d {
                    return None;
                }
                let min_exp = c
                    .iter()
                    .zip(&s.weights)
                    .filter(|(x, _)| **x != 0)
                    .map(|(_, w)| 2 - w)
                    .min()
                    .unwrap_or(2);
                Some(StratumLine {
                    direction: s.vector(&t),
                    coords: c,
                    min_contraction_exponent: min_exp,
                })
            })
            .collect()
    });
    lines.sort_by(|a, b| a.coords.cmp(&b.coords));
    if let Some(bad) = lines.iter().find(|l| l.min_contraction_exponent < 2) {
        return Err(SympairError::NotNormal(format!(
            "line {:?} does not contract to e",
            bad.coords
        )));
    }
    Ok(lines)
}
