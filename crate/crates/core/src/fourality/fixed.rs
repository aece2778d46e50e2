use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::model::{sign_letter, structure_table, tensor_index, VectorSpan};
use super::{FouralityAlgebra, FouralityError};
use crate::chevalley::{Element, LieAlgebra, RootSystem, Subspace};
use crate::exact::{q, rank_kernel, MatrixQ, Q};
use crate::sympair::SymmetricPair;

/// The permutation groups of the factors `C₁, C₂, C₃` used in the tower.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FactorGroup {
    /// `𝔖₂` swapping `C₁` and `C₂`; fixed points `so7`.
    SwapC1C2,
    /// `𝔖₃` on `C₁, C₂, C₃`; fixed points `G2`.
    S3,
}

impl FactorGroup {
    fn generators(self) -> Vec<[usize; 4]> {
        match self {
            FactorGroup::SwapC1C2 => vec![[1, 0, 2, 3]],
            FactorGroup::S3 => vec![[1, 0, 2, 3], [0, 2, 1, 3]],
        }
    }

    /// Number of `C` factors symmetrized.
    fn arity(self) -> usize {
        match self {
            FactorGroup::SwapC1C2 => 2,
            FactorGroup::S3 => 3,
        }
    }
}

/// Fixed points of a factor permutation group acting on the 4-ality model.
///
/// The basis is `e_c, h_c, f_c` (diagonal `sl2` on the symmetrized factors),
/// then the remaining `sl2` factors, then the odd part in monomial form:
/// for `𝔖₂`, `s_{μ}_{σ₃}_{σ_d}` is `μ ⊗ c_{σ₃} ⊗ d_{σ_d}` with `μ` a
/// monomial of `S²C′`; for `𝔖₃`, `c_{μ}_{σ_d}` is `μ ⊗ d_{σ_d}` with `μ`
/// a monomial of `S³C`. A monomial `c₊^a c₋^b` is embedded as the
/// symmetrization `(a! b! / (a+b)!) Σ` over its distinct tensor orderings,
/// so products of monomials correspond to symmetrized tensor products.
#[derive(Clone, Debug)]
pub struct FixedSubalgebra {
    group: FactorGroup,
    alg: Arc<LieAlgebra>,
    embedding: Vec<Vec<Q>>,
    rep: Vec<MatrixQ>,
    k_dim: usize,
}

/// `c₊^{d−k} c₋^k` as a string of `p` and `m`.
pub(crate) fn monomial_name(degree: usize, k: usize) -> String {
    "p".repeat(degree - k) + &"m".repeat(k)
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// Vectors of `{0,1}^n` with exactly `minus` zeros, in lexicographic order.
fn arrangements(n: usize, minus: usize) -> Vec<Vec<usize>> {
    (0..1usize << n)
        .map(|code| {
            (0..n)
                .map(|i| code >> (n - 1 - i) & 1)
                .collect::<Vec<usize>>()
        })
        .filter(|s| s.iter().filter(|&&x| x == 0).count() == minus)
        .collect()
}

pub fn fixed_point_subalgebra(
    parent: &FouralityAlgebra,
    group: FactorGroup,
) -> Result<FixedSubalgebra, FouralityError> {
    let g0 = parent.algebra();
    let n0 = g0.dim();
    let gens: Vec<MatrixQ> = group
        .generators()
        .into_iter()
        .map(|p| parent.factor_permutation(p))
        .collect();
    for s in &gens {
        if !is_automorphism(g0, s) {
            return Err(FouralityError::Construction(
                "factor permutation is not an automorphism".into(),
            ));
        }
    }
    let arity = group.arity();
    let mut labels = Vec::new();
    let mut vecs = Vec::new();
    for (g, letter) in ['e', 'h', 'f'].into_iter().enumerate() {
        labels.push(format!("{letter}c"));
        let mut v = vec![Q::zero(); n0];
        for x in 0..arity {
            v[3 * x + g] = Q::one();
        }
        vecs.push(v);
    }
    for x in arity..4 {
        for (g, letter) in ['e', 'h', 'f'].into_iter().enumerate() {
            labels.push(format!("{letter}{}", super::model::FACTORS[x]));
            let mut v = vec![Q::zero(); n0];
            v[3 * x + g] = Q::one();
            vecs.push(v);
        }
    }
    let k_dim = vecs.len();
    let rest: Vec<Vec<usize>> = match group {
        FactorGroup::SwapC1C2 => vec![vec![1, 1], vec![1, 0], vec![0, 1], vec![0, 0]],
        FactorGroup::S3 => vec![vec![1], vec![0]],
    };
    for k in 0..=arity {
        let weight = q(factorial(arity - k) * factorial(k)) / q(factorial(arity));
        for tail in &rest {
            let tail_name: String = tail
                .iter()
                .map(|&s| format!("_{}", sign_letter(s)))
                .collect();
            let prefix = if arity == 2 { 's' } else { 'c' };
            labels.push(format!("{prefix}_{}{tail_name}", monomial_name(arity, k)));
            let mut v = vec![Q::zero(); n0];
            for head in arrangements(arity, k) {
                let mut s = [0usize; 4];
                for (i, &x) in head.iter().chain(tail).enumerate() {
                    s[i] = x;
                }
                v[tensor_index(s)] = weight.clone();
            }
            vecs.push(v);
        }
    }
    let fixed = fixed_space(g0, &gens);
    if fixed.dim() != vecs.len() || !vecs.iter().all(|v| fixed.contains_vec(v)) {
        return Err(FouralityError::Construction(format!(
            "fixed space has dimension {}, expected {}",
            fixed.dim(),
            vecs.len()
        )));
    }
    let name = match group {
        FactorGroup::SwapC1C2 => "so7",
        FactorGroup::S3 => "g2",
    };
    let table = structure_table(vecs.clone(), |a, b| g0.bracket_vec(a, b))?;
    let alg = LieAlgebra::new(name, labels, table)?;
    let rep = vecs.iter().map(|v| parent.rep_of(v)).collect();
    Ok(FixedSubalgebra {
        group,
        alg,
        embedding: vecs,
        rep,
        k_dim,
    })
}

fn is_automorphism(alg: &LieAlgebra, s: &MatrixQ) -> bool {
    let n = alg.dim();
    let cols: Vec<Vec<Q>> = (0..n).map(|j| s.col(j)).collect();
    (0..n).all(|i| {
        (i + 1..n).all(|j| {
            s.mul_vec(
                &alg.bracket_vec(&crate::exact::unit_vec(n, i), &crate::exact::unit_vec(n, j)),
            ) == alg.bracket_vec(&cols[i], &cols[j])
        })
    })
}

/// Common fixed vectors of the given linear maps.
fn fixed_space(alg: &Arc<LieAlgebra>, maps: &[MatrixQ]) -> Subspace {
    let n = alg.dim();
    let mut stacked: Option<MatrixQ> = None;
    for m in maps {
        let d = m - &MatrixQ::identity(n);
        stacked = Some(match stacked {
            None => d,
            Some(s) => s.vstack(&d),
        });
    }
    let (_, ker) = rank_kernel(&stacked.expect("at least one generator"));
    Subspace::span_vecs(alg, ker)
}

impl FixedSubalgebra {
    pub fn group(&self) -> FactorGroup {
        self.group
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.alg
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn k_dim(&self) -> usize {
        self.k_dim
    }

    pub fn p_dim(&self) -> usize {
        self.dim() - self.k_dim
    }

    /// Basis vectors in coordinates of the 4-ality model.
    pub fn embedding(&self) -> &[Vec<Q>] {
        &self.embedding
    }

    pub fn element(&self, s: &str) -> Result<Element, FouralityError> {
        Ok(Element::parse(&self.alg, s)?)
    }

    pub fn in_p(&self, x: &Element) -> bool {
        x.coeffs()[..self.k_dim].iter().all(Zero::is_zero)
    }

    /// The grading `θ = +1` on `k`, `−1` on `p` as a symmetric pair.
    pub fn symmetric_pair(&self) -> Result<SymmetricPair, FouralityError> {
        let mut theta = MatrixQ::identity(self.dim());
        for i in self.k_dim..self.dim() {
            theta[(i, i)] = -Q::one();
        }
        Ok(SymmetricPair::new(self.alg.clone(), theta)?)
    }

    /// Action of `x` on `V₈`.
    pub fn rep_of(&self, x: &Element) -> MatrixQ {
        let mut m = MatrixQ::zeros(8, 8);
        for (c, r) in x.coeffs().iter().zip(&self.rep) {
            if !c.is_zero() {
                m = &m + &r.scale(c);
            }
        }
        m
    }

    fn require_own(&self, x: &Element) -> Result<(), FouralityError> {
        if Arc::ptr_eq(x.algebra(), &self.alg) {
            Ok(())
        } else {
            Err(FouralityError::WrongAlgebra {
                expected: self.alg.name().to_string(),
                found: x.algebra().name().to_string(),
            })
        }
    }

    /// Coordinates of `sub`'s basis vectors inside `self`, if contained.
    pub(crate) fn inclusion_of(&self, sub: &FixedSubalgebra) -> Result<MatrixQ, FouralityError> {
        let span = VectorSpan::new(self.embedding.clone())?;
        let cols = sub
            .embedding
            .iter()
            .map(|v| span.coords(v))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| FouralityError::Construction("subalgebra not contained".into()))?;
        Ok(MatrixQ::from_cols(self.dim(), &cols))
    }
}

/// `V₇ = V_a ⊕ V_b` inside `V₈`: `V_a = S²C′` with basis `c₊², c₊c₋, c₋²`
/// (symmetrized as above) and `V_b = C₃⊗D` with basis `c₊⊗d₊, c₊⊗d₋,
/// c₋⊗d₊, c₋⊗d₋`.
pub(crate) fn v7_basis() -> Vec<Vec<Q>> {
    let unit = |i: usize| crate::exact::unit_vec(8, i);
    let half = q(1) / q(2);
    let mut mixed = vec![Q::zero(); 8];
    mixed[1] = half.clone();
    mixed[2] = half;
    vec![unit(3), mixed, unit(0), unit(7), unit(6), unit(5), unit(4)]
}

/// Matrix of `x ∈ g₁` on `V₇`.
pub fn v7_matrix(f1: &FixedSubalgebra, x: &Element) -> Result<MatrixQ, FouralityError> {
    f1.require_own(x)?;
    if f1.group != FactorGroup::SwapC1C2 {
        return Err(FouralityError::WrongAlgebra {
            expected: "so7".into(),
            found: f1.alg.name().to_string(),
        });
    }
    let basis = v7_basis();
    let span = VectorSpan::new(basis.clone())?;
    let m8 = f1.rep_of(x);
    let cols = basis
        .iter()
        .map(|v| span.coords(&m8.mul_vec(v)))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| FouralityError::Construction("V7 is not stable".into()))?;
    Ok(MatrixQ::from_cols(7, &cols))
}

/// Rank of `x ∈ g₁` acting on `V₇`; `x ∈ 𝒯` iff the rank is at most 2.
pub fn rank_on_v7(f1: &FixedSubalgebra, x: &Element) -> Result<usize, FouralityError> {
    Ok(v7_matrix(f1, x)?.rank())
}

/// The Killing-orthogonal projection `π: g₁ → g₂`. On the odd part it is
/// `xy ⊗ z ⊗ t ↦ xyz ⊗ t`.
#[derive(Clone, Debug)]
pub struct Projection {
    g1: Arc<LieAlgebra>,
    g2: Arc<LieAlgebra>,
    inclusion: MatrixQ,
    matrix: MatrixQ,
}

impl Projection {
    pub fn new(f1: &FixedSubalgebra, f2: &FixedSubalgebra) -> Result<Self, FouralityError> {
        let inclusion = f1.inclusion_of(f2)?;
        let k = f1.alg.killing_matrix();
        let it = inclusion.transpose();
        let gram = &(&it * k) * &inclusion;
        let inv = gram
            .inverse()
            .map_err(|_| FouralityError::Construction("Killing form degenerate on g2".into()))?;
        let matrix = &(&inv * &it) * k;
        Ok(Projection {
            g1: f1.alg.clone(),
            g2: f2.alg.clone(),
            inclusion,
            matrix,
        })
    }

    pub fn apply(&self, x: &Element) -> Result<Element, FouralityError> {
        if !Arc::ptr_eq(x.algebra(), &self.g1) {
            return Err(FouralityError::WrongAlgebra {
                expected: self.g1.name().to_string(),
                found: x.algebra().name().to_string(),
            });
        }
        Ok(Element::new(&self.g2, self.matrix.mul_vec(x.coeffs())))
    }

    /// The inclusion `g₂ ⊂ g₁`.
    pub fn include(&self, y: &Element) -> Result<Element, FouralityError> {
        if !Arc::ptr_eq(y.algebra(), &self.g2) {
            return Err(FouralityError::WrongAlgebra {
                expected: self.g2.name().to_string(),
                found: y.algebra().name().to_string(),
            });
        }
        Ok(Element::new(&self.g1, self.inclusion.mul_vec(y.coeffs())))
    }
}

pub fn project_pi(
    f1: &FixedSubalgebra,
    f2: &FixedSubalgebra,
    x: &Element,
) -> Result<Element, FouralityError> {
    Projection::new(f1, f2)?.apply(x)
}

/// One root space of `g₂` in the 4-ality model and its Chevalley name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootMatch {
    pub vector: String,
    /// Eigenvalues of `h_c` and `h_d`.
    pub weight: (i64, i64),
    /// Coordinates in the simple roots `α₁` (short), `α₂` (long).
    pub root: Vec<i64>,
    pub chevalley_label: String,
    pub squared_length: Q,
}

#[derive(Clone, Debug)]
pub struct G2Match {
    pub cartan_dim: usize,
    pub roots: Vec<RootMatch>,
    pub length_ratio: Q,
    pub cartan_matrix: Vec<Vec<i64>>,
}

impl fmt::Display for G2Match {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.roots {
            writeln!(
                f,
                "{:>10}  ({:>2},{:>2})  {:?}  {}",
                r.vector, r.weight.0, r.weight.1, r.root, r.chevalley_label
            )?;
        }
        Ok(())
    }
}

/// Root decomposition of the `𝔖₃`-fixed algebra for the Cartan subalgebra
/// spanned by `h_c, h_d`, matched against the Chevalley G2: the weight
/// `(w_c, w_d)` is sent to `m α₁ + k α₂` with `k = w_d`,
/// `m = (w_c + 3 w_d)/2`.
pub fn match_g2_models(f2: &FixedSubalgebra, chev: &LieAlgebra) -> Result<G2Match, FouralityError> {
    let not_g2 = |m: String| FouralityError::NotG2(m);
    if f2.dim() != 14 {
        return Err(not_g2(format!("dimension {}", f2.dim())));
    }
    let rs: &RootSystem = chev
        .root_system()
        .filter(|r| r.positive().len() == 6 && r.rank() == 2)
        .ok_or_else(|| not_g2("comparison algebra is not G2".into()))?;
    let alg = &f2.alg;
    let n = alg.dim();
    let hc = alg.label_index("hc").expect("label");
    let hd = alg.label_index("hd").expect("label");
    let cartan = [hc, hd];
    let mut roots = Vec::new();
    for j in 0..n {
        let mut w = [0i64; 2];
        for (slot, &h) in cartan.iter().enumerate() {
            let br = alg.structure(h, j);
            w[slot] = match br {
                [] => 0,
                [(k, c)] if *k == j && c.is_integer() => {
                    c.to_integer().try_into().unwrap_or(i64::MAX)
                }
                _ => {
                    return Err(not_g2(format!(
                        "{} is not a weight vector",
                        alg.labels()[j]
                    )))
                }
            };
        }
        if w == [0, 0] {
            if !cartan.contains(&j) {
                return Err(not_g2(format!("{} has weight zero", alg.labels()[j])));
            }
            continue;
        }
        if (w[0] + 3 * w[1]).rem_euclid(2) != 0 {
            return Err(not_g2(format!("weight {w:?} is not in the root lattice")));
        }
        let root = vec![(w[0] + 3 * w[1]) / 2, w[1]];
        let idx = rs
            .index_of(&root)
            .ok_or_else(|| not_g2(format!("weight {w:?} is not a G2 root")))?;
        let chevalley_label = chev.labels()[rs.rank() + idx].clone();
        roots.push(RootMatch {
            vector: alg.labels()[j].clone(),
            weight: (w[0], w[1]),
            root,
            chevalley_label,
            squared_length: Q::zero(),
        });
    }
    if roots.len() != 12 {
        return Err(not_g2(format!("{} roots", roots.len())));
    }
    // Inner product on weights dual to the Killing form on the Cartan.
    let k = alg.killing_matrix();
    let kt = MatrixQ::from_rows(vec![
        vec![k[(hc, hc)].clone(), k[(hc, hd)].clone()],
        vec![k[(hd, hc)].clone(), k[(hd, hd)].clone()],
    ]);
    let dual = kt
        .inverse()
        .map_err(|_| not_g2("Killing form degenerate on the Cartan".into()))?;
    let ip = |a: (i64, i64), b: (i64, i64)| -> Q {
        let (a, b) = ([q(a.0), q(a.1)], [q(b.0), q(b.1)]);
        let mut s = Q::zero();
        for i in 0..2 {
            for j in 0..2 {
                s += &a[i] * &dual[(i, j)] * &b[j];
            }
        }
        s
    };
    for r in &mut roots {
        r.squared_length = ip(r.weight, r.weight);
    }
    let mut lengths: Vec<Q> = roots.iter().map(|r| r.squared_length.clone()).collect();
    lengths.sort();
    lengths.dedup();
    if lengths.len() != 2 {
        return Err(not_g2(format!("{} root lengths", lengths.len())));
    }
    let length_ratio = &lengths[1] / &lengths[0];
    // Simple roots α₁ = (2, 0) and α₂ = (−3, 1) in weight coordinates.
    let simple = [(2, 0), (-3, 1)];
    let cartan_matrix: Vec<Vec<i64>> = (0..2)
        .map(|i| {
            (0..2)
                .map(|j| {
                    let c = q(2) * ip(simple[j], simple[i]) / ip(simple[i], simple[i]);
                    c.to_integer().try_into().unwrap_or(i64::MAX)
                })
                .collect()
        })
        .collect();
    if length_ratio != q(3) || cartan_matrix != *rs.cartan() {
        return Err(not_g2(format!(
            "length ratio {length_ratio}, Cartan matrix {cartan_matrix:?}"
        )));
    }
    roots.sort_by(|a, b| {
        a.chevalley_label
            .len()
            .cmp(&b.chevalley_label.len())
            .then(a.chevalley_label.cmp(&b.chevalley_label))
    });
    Ok(G2Match {
        cartan_dim: cartan.len(),
        roots,
        length_ratio,
        cartan_matrix,
    })
}

/// The `𝔖₃`-fixed part of `g₁` coincides with the `𝔖₃`-fixed part of `g₀`.
pub fn tower_consistent(
    parent: &FouralityAlgebra,
    f1: &FixedSubalgebra,
    f2: &FixedSubalgebra,
) -> bool {
    let g0 = parent.algebra();
    let g1 = Subspace::span_vecs(g0, f1.embedding.clone());
    let g2 = Subspace::span_vecs(g0, f2.embedding.clone());
    let swap23 = fixed_space(g0, &[parent.factor_permutation([0, 2, 1, 3])]);
    f1.group == FactorGroup::SwapC1C2 && f2.group == FactorGroup::S3 && g1.intersect(&swap23) == g2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arrangements_count_binomially() {
        for (n, minus, count) in [(3, 0, 1), (3, 1, 3), (3, 2, 3), (4, 2, 6)] {
            let a = arrangements(n, minus);
            assert_eq!(a.len(), count);
            assert!(a
                .iter()
                .all(|s| s.iter().filter(|&&x| x == 0).count() == minus));
        }
    }

    #[test]
    fn v7_basis_is_independent() {
        let b = v7_basis();
        assert_eq!(b.len(), 7);
        assert_eq!(MatrixQ::from_cols(8, &b).rank(), 7);
    }

    #[test]
    fn swap_group_fixes_so7() {
        let so8 = crate::fourality::build_fourality_so8().unwrap();
        let g1 = fixed_point_subalgebra(&so8, FactorGroup::SwapC1C2).unwrap();
        assert_eq!((g1.dim(), g1.k_dim(), g1.p_dim()), (21, 9, 12));
        let pair = g1.symmetric_pair().unwrap();
        assert!(pair.grading_holds());
        assert!(g1.in_p(&g1.element("s_pm_p_p").unwrap()));
        assert!(!g1.in_p(&g1.element("ec").unwrap()));
    }
}
