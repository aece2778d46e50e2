use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use super::{ChevalleyError, Element, LieAlgebra, Subspace};
use crate::exact::{jordan_chevalley, q, rank_kernel, solve_linear, MatrixQ, Q};

pub fn bracket(x: &Element, y: &Element) -> Result<Element, ChevalleyError> {
    x.bracket(y)
}

pub fn ad_matrix(x: &Element) -> MatrixQ {
    x.ad_matrix()
}

pub fn killing(x: &Element, y: &Element) -> Result<Q, ChevalleyError> {
    x.killing(y)
}

/// `ad(x)^{dim} = 0`, tested by repeated squaring.
pub fn is_nilpotent(x: &Element) -> bool {
    x.ad_matrix().is_nilpotent()
}

/// `ad(x)` has squarefree minimal polynomial.
pub fn is_semisimple(x: &Element) -> bool {
    x.ad_matrix().is_semisimple()
}

/// `{b ∈ B | [a, b] = 0 for all a ∈ A}`.
pub fn centralizer(a: &[Element], b: &Subspace) -> Subspace {
    let alg = b.algebra();
    let m = b.dim();
    if m == 0 {
        return b.clone();
    }
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for x in a {
        assert!(Arc::ptr_eq(x.algebra(), alg), "centralizer across algebras");
        if x.is_zero() {
            continue;
        }
        let cols: Vec<Vec<Q>> = b
            .basis()
            .iter()
            .map(|v| alg.bracket_vec(x.coeffs(), v))
            .collect();
        for k in 0..alg.dim() {
            let row: Vec<Q> = cols.iter().map(|c| c[k].clone()).collect();
            if row.iter().any(|c| !c.is_zero()) {
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return b.clone();
    }
    let (_, ker) = rank_kernel(&MatrixQ::from_rows(rows));
    Subspace::span_vecs(alg, ker.iter().map(|c| b.from_coords(c)).collect())
}

/// Additive Jordan decomposition `x = s + n`: the Jordan–Chevalley
/// decomposition of `ad(x)` pulled back through the injective map `ad`.
pub fn jordan_decomposition(x: &Element) -> Result<(Element, Element), ChevalleyError> {
    let alg = x.algebra();
    let ad = x.ad_matrix();
    let (s_mat, n_mat) = jordan_chevalley(&ad).expect("ad matrices are square");
    if n_mat.is_zero() {
        return Ok((x.clone(), Element::zero(alg)));
    }
    if s_mat.is_zero() {
        return Ok((Element::zero(alg), x.clone()));
    }
    let pb = alg
        .ad_pullback()
        .ok_or(ChevalleyError::PullbackInconsistent)?;
    let rhs: Vec<Q> = pb
        .positions
        .iter()
        .map(|&(k, j)| s_mat[(k, j)].clone())
        .collect();
    let s = Element::new(alg, pb.inverse.mul_vec(&rhs));
    if s.ad_matrix() != s_mat {
        return Err(ChevalleyError::PullbackInconsistent);
    }
    let n = x - &s;
    Ok((s, n))
}

/// An sl2-triple `(e, h, f)`, possibly zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl2Triple {
    pub e: Element,
    pub h: Element,
    pub f: Element,
}

impl Sl2Triple {
    /// The zero triple in `alg`.
    pub fn zero(alg: &Arc<LieAlgebra>) -> Self {
        let z = Element::zero(alg);
        Sl2Triple {
            e: z.clone(),
            h: z.clone(),
            f: z,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.e.is_zero() && self.h.is_zero() && self.f.is_zero()
    }

    /// `[h, e] = 2e`, `[e, f] = h`, `[h, f] = −2f`.
    pub fn relations_hold(&self) -> bool {
        let two = q(2);
        self.h.bracket(&self.e).ok() == Some(self.e.scale(&two))
            && self.e.bracket(&self.f).ok() == Some(self.h.clone())
            && self.h.bracket(&self.f).ok() == Some(self.f.scale(&-two))
    }
}

/// Completes a nilpotent `e` to an sl2-triple. With `odd` given (a subspace
/// containing `e`, such as the odd part of a grading), `f` is sought in
/// `odd` and `h = [e, z]` with `z ∈ odd`, so `h` lands in the even part.
///
/// First `z` solves `ad(e)² z = −2e`, giving `h = [e, z]` with `[h, e] = 2e`
/// and `h ∈ [e, g]`; then `f` solves `[e, f] = h`, `[h, f] = −2f`, which
/// is consistent by Morozov's lemma.
pub fn complete_sl2(e: &Element, odd: Option<&Subspace>) -> Result<Sl2Triple, ChevalleyError> {
    let alg = e.algebra();
    if e.is_zero() {
        return Ok(Sl2Triple::zero(alg));
    }
    let ade = e.ad_matrix();
    if !ade.is_nilpotent() {
        return Err(ChevalleyError::NotNilpotent(e.to_string()));
    }
    let whole;
    let space = match odd {
        Some(s) => s,
        None => {
            whole = Subspace::whole(alg);
            &whole
        }
    };
    let no_completion = || ChevalleyError::NoGradedCompletion(e.to_string());
    let basis = space.basis_matrix();
    let ade_b = &ade * &basis;
    let ade2_b = &ade * &ade_b;
    let rhs: Vec<Q> = e.coeffs().iter().map(|c| c * q(-2)).collect();
    let z = solve_linear(&ade2_b, &rhs)
        .expect("dimensions agree")
        .ok_or_else(no_completion)?;
    let z = space.element_from_coords(&z.particular);
    let h = e.bracket(&z)?;
    let adh_b = &(&h.ad_matrix() * &basis) + &basis.scale(&q(2));
    let system = ade_b.vstack(&adh_b);
    let mut rhs2 = h.coeffs().to_vec();
    rhs2.extend(std::iter::repeat_n(Q::zero(), alg.dim()));
    let f = solve_linear(&system, &rhs2)
        .expect("dimensions agree")
        .ok_or_else(no_completion)?;
    let f = space.element_from_coords(&f.particular);
    let t = Sl2Triple { e: e.clone(), h, f };
    debug_assert!(t.relations_hold());
    Ok(t)
}

pub fn derived_algebra(l: &Subspace) -> Subspace {
    let alg = l.algebra();
    let b = l.basis();
    let mut v = Vec::new();
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            let c = alg.bracket_vec(&b[i], &b[j]);
            if c.iter().any(|x| !x.is_zero()) {
                v.push(c);
            }
        }
    }
    Subspace::span_vecs(alg, v)
}

/// A block of the derived algebra on which the Casimir operator of the
/// ambient Killing form acts by one scalar.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LeviFactor {
    pub dim: usize,
    /// Number of simple ideals in the block, when determined.
    pub simple_count: Option<usize>,
    /// `κ_g(h′, h′)` for an sl2-triple of a simple ideal of dimension 3.
    pub killing_scalar: Option<Q>,
    /// Casimir eigenvalue `ω`; the ambient Killing form restricts to
    /// `(1/ω)·κ` on each simple ideal of the block.
    pub casimir: Q,
}

/// Invariants of a reductive subalgebra (typically a Levi `g^s`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LeviType {
    pub dim: usize,
    pub center_dim: usize,
    pub derived_dim: usize,
    pub factors: Vec<LeviFactor>,
    pub tag: String,
}

impl fmt::Display for LeviType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag)
    }
}

impl LeviType {
    /// Killing scalars of all 3-dimensional simple factors, sorted.
    pub fn a1_scalars(&self) -> Vec<Q> {
        let mut v = Vec::new();
        for f in &self.factors {
            if let (Some(k), Some(c)) = (&f.killing_scalar, f.simple_count) {
                v.extend(std::iter::repeat_n(k.clone(), c));
            }
        }
        v.sort();
        v
    }
}

/// Levi type of `g^s` for semisimple `s`.
pub fn levi_classify(s: &Element) -> Result<LeviType, ChevalleyError> {
    if !is_semisimple(s) {
        return Err(ChevalleyError::NotSemisimple(s.to_string()));
    }
    let l = centralizer(std::slice::from_ref(s), &Subspace::whole(s.algebra()));
    Ok(reductive_type(&l))
}

fn simple_name(dim: usize) -> String {
    match dim {
        3 => "A1".into(),
        8 => "A2".into(),
        10 => "B2".into(),
        14 => "G2".into(),
        15 => "A3".into(),
        21 => "B3".into(),
        28 => "D4".into(),
        d => format!("S{d}"),
    }
}

/// Center, derived algebra and Casimir blocks of a reductive subalgebra on
/// which the ambient Killing form is nondegenerate.
pub fn reductive_type(l: &Subspace) -> LeviType {
    let alg = l.algebra();
    let center = centralizer(&l.elements(), l);
    let derived = derived_algebra(l);
    let d = derived.dim();
    let mut factors = Vec::new();
    if d > 0 {
        for (omega, block) in casimir_blocks(alg, &derived) {
            let m = block.dim();
            let simple_count = if m <= 12 {
                Some(centroid_dim(alg, &block))
            } else {
                None
            };
            let killing_scalar = match simple_count {
                Some(k) if m == 3 * k => Some(q(8) / &omega),
                _ => None,
            };
            factors.push(LeviFactor {
                dim: m,
                simple_count,
                killing_scalar,
                casimir: omega,
            });
        }
    }
    factors.sort();
    let mut parts: Vec<String> = Vec::new();
    for f in &factors {
        let k = f.simple_count.unwrap_or(1);
        let name = simple_name(f.dim / k);
        let one = match &f.killing_scalar {
            Some(s) => format!("{name}[{s}]"),
            None => name,
        };
        parts.extend(std::iter::repeat_n(one, k));
    }
    if center.dim() > 0 {
        parts.push(format!("T{}", center.dim()));
    }
    let tag = if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    };
    LeviType {
        dim: l.dim(),
        center_dim: center.dim(),
        derived_dim: d,
        factors,
        tag,
    }
}

/// Eigenspaces of the Casimir operator `Σ ad(b_i) ad(b^i)` of the ambient
/// Killing form on a semisimple subalgebra `d`.
fn casimir_blocks(alg: &Arc<LieAlgebra>, d: &Subspace) -> Vec<(Q, Subspace)> {
    let b = d.basis();
    let m = b.len();
    let k = alg.killing_matrix();
    let gram = MatrixQ::from_rows(
        b.iter()
            .map(|x| b.iter().map(|y| form(k, x, y)).collect())
            .collect(),
    );
    let ginv = gram
        .inverse()
        .expect("Killing form nondegenerate on the derived algebra");
    let dual: Vec<Vec<Q>> = (0..m)
        .map(|i| {
            let mut v = vec![Q::zero(); alg.dim()];
            for j in 0..m {
                let c = &ginv[(i, j)];
                if !c.is_zero() {
                    for (x, y) in v.iter_mut().zip(&b[j]) {
                        *x += c * y;
                    }
                }
            }
            v
        })
        .collect();
    let mut omega = MatrixQ::zeros(m, m);
    for c in 0..m {
        let mut acc = vec![Q::zero(); alg.dim()];
        for i in 0..m {
            let inner = alg.bracket_vec(&dual[i], &b[c]);
            let outer = alg.bracket_vec(&b[i], &inner);
            for (x, y) in acc.iter_mut().zip(&outer) {
                *x += y;
            }
        }
        let coords = d
            .coords(&acc)
            .expect("Casimir preserves the derived algebra");
        for (r, v) in coords.into_iter().enumerate() {
            omega[(r, c)] = v;
        }
    }
    let cp = omega.charpoly().expect("square");
    let mut blocks = Vec::new();
    let mut covered = 0;
    for w in cp.rational_roots() {
        let mut shifted = omega.clone();
        for i in 0..m {
            shifted[(i, i)] -= &w;
        }
        let (_, ker) = rank_kernel(&shifted);
        covered += ker.len();
        let vecs = ker.iter().map(|c| d.from_coords(c)).collect();
        blocks.push((w, Subspace::span_vecs(alg, vecs)));
    }
    assert_eq!(
        covered, m,
        "Casimir operator is diagonalizable with rational eigenvalues"
    );
    blocks
}

fn form(k: &MatrixQ, x: &[Q], y: &[Q]) -> Q {
    let mut s = Q::zero();
    for (i, a) in x.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.iter().enumerate() {
            if !b.is_zero() {
                s += a * b * &k[(i, j)];
            }
        }
    }
    s
}

/// Dimension of the centroid `{T | T ad(x) = ad(x) T for all x}` of a
/// semisimple block, which counts its simple ideals.
fn centroid_dim(alg: &Arc<LieAlgebra>, block: &Subspace) -> usize {
    let b = block.basis();
    let m = b.len();
    // ad of each basis vector restricted to the block
    let ads: Vec<MatrixQ> = b
        .iter()
        .map(|x| {
            let cols: Vec<Vec<Q>> = b
                .iter()
                .map(|y| {
                    block
                        .coords(&alg.bracket_vec(x, y))
                        .expect("block is an ideal")
                })
                .collect();
            MatrixQ::from_cols(m, &cols)
        })
        .collect();
    // unknown T with entries t_{rc} at index r*m + c
    let mut rows = Vec::new();
    for a in &ads {
        for r in 0..m {
            for c in 0..m {
                // (T A − A T)_{rc} = Σ_k t_{rk} A_{kc} − A_{rk} t_{kc}
                let mut row = vec![Q::zero(); m * m];
                for kk in 0..m {
                    row[r * m + kk] += &a[(kk, c)];
                    row[kk * m + c] -= &a[(r, kk)];
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        return m * m;
    }
    let (_, ker) = rank_kernel(&MatrixQ::from_rows(rows));
    ker.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::{chevalley_algebra, RootType};

    #[test]
    fn g2_killing_scalars() {
        let g = chevalley_algebra(RootType::G2).unwrap();
        let h1 = Element::parse(&g, "h1").unwrap();
        let h2 = Element::parse(&g, "h2").unwrap();
        assert_eq!(h1.killing(&h1).unwrap(), q(48));
        assert_eq!(h2.killing(&h2).unwrap(), q(16));
    }

    #[test]
    fn a1xa1_has_two_factors() {
        let g = chevalley_algebra(RootType::A1xA1).unwrap();
        let t = levi_classify(&Element::zero(&g)).unwrap();
        assert_eq!(t.tag, "A1[8]+A1[8]");
        assert_eq!(t.a1_scalars(), vec![q(8), q(8)]);
    }
}
