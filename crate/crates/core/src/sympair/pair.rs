use std::fmt::Write as _;
use std::sync::Arc;

use num_traits::One;

use super::SympairError;
use crate::chevalley::{
    centralizer, chevalley_algebra, is_semisimple, Element, LieAlgebra, RootType, StructureTable,
    Subspace,
};
use crate::exact::{fmt_q, parse_q, MatrixQ, Q};

/// A ℤ/2-graded Lie algebra `g = k ⊕ p` given by an involutive automorphism.
#[derive(Clone, Debug)]
pub struct SymmetricPair {
    alg: Arc<LieAlgebra>,
    theta: MatrixQ,
    k: Subspace,
    p: Subspace,
}

impl SymmetricPair {
    /// Validates `θ² = 1` and `θ[x, y] = [θx, θy]` on basis pairs, then
    /// splits the algebra into the ±1 eigenspaces.
    pub fn new(alg: Arc<LieAlgebra>, theta: MatrixQ) -> Result<Self, SympairError> {
        let n = alg.dim();
        if theta.rows() != n || theta.cols() != n {
            return Err(SympairError::InvalidPair("θ has the wrong size".into()));
        }
        if &theta * &theta != MatrixQ::identity(n) {
            return Err(SympairError::InvalidPair("θ is not an involution".into()));
        }
        let cols: Vec<Vec<Q>> = (0..n).map(|j| theta.col(j)).collect();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = theta.mul_vec(
                    &alg.bracket_vec(&crate::exact::unit_vec(n, i), &crate::exact::unit_vec(n, j)),
                );
                let rhs = alg.bracket_vec(&cols[i], &cols[j]);
                if lhs != rhs {
                    return Err(SympairError::InvalidPair(format!(
                        "θ is not an automorphism on ({}, {})",
                        alg.labels()[i],
                        alg.labels()[j]
                    )));
                }
            }
        }
        let eigen = |sign: i64| {
            let mut m = theta.clone();
            for i in 0..n {
                m[(i, i)] -= Q::from_integer(sign.into());
            }
            let (_, ker) = crate::exact::rank_kernel(&m);
            Subspace::span_vecs(&alg, ker)
        };
        let k = eigen(1);
        let p = eigen(-1);
        Ok(SymmetricPair { alg, theta, k, p })
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.alg
    }

    pub fn theta(&self) -> &MatrixQ {
        &self.theta
    }

    pub fn k(&self) -> &Subspace {
        &self.k
    }

    pub fn p(&self) -> &Subspace {
        &self.p
    }

    pub fn element(&self, s: &str) -> Result<Element, SympairError> {
        Ok(Element::parse(&self.alg, s)?)
    }

    pub fn in_p(&self, x: &Element) -> bool {
        self.p.contains(x)
    }

    pub fn in_k(&self, x: &Element) -> bool {
        self.k.contains(x)
    }

    pub(crate) fn require_p(&self, x: &Element) -> Result<(), SympairError> {
        if Arc::ptr_eq(x.algebra(), &self.alg) && self.in_p(x) {
            Ok(())
        } else {
            Err(SympairError::NotInP(x.to_string()))
        }
    }

    /// `[k, p] ⊆ p`, `[p, p] ⊆ k`, `[k, k] ⊆ k` on basis vectors.
    pub fn grading_holds(&self) -> bool {
        let kb = self.k.basis();
        let pb = self.p.basis();
        let br = |a: &Vec<Q>, b: &Vec<Q>| self.alg.bracket_vec(a, b);
        kb.iter()
            .all(|a| kb.iter().all(|b| self.k.contains_vec(&br(a, b))))
            && kb
                .iter()
                .all(|a| pb.iter().all(|b| self.p.contains_vec(&br(a, b))))
            && pb
                .iter()
                .all(|a| pb.iter().all(|b| self.k.contains_vec(&br(a, b))))
    }

    /// Text form: the algebra, `end`, then a `theta` block of matrix rows.
    pub fn to_text(&self) -> String {
        let mut s = self.alg.to_text();
        s.push_str("end\ntheta\n");
        for i in 0..self.theta.rows() {
            let row: Vec<String> = self.theta.row(i).iter().map(fmt_q).collect();
            writeln!(s, "{}", row.join(" ")).unwrap();
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self, SympairError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let alg = LieAlgebra::parse_lines(&mut lines)?;
        if lines.next() != Some("theta") {
            return Err(SympairError::Parse("missing theta block".into()));
        }
        let rows: Vec<Vec<Q>> = lines
            .map(|l| {
                l.split_whitespace()
                    .map(|t| {
                        parse_q(t).ok_or_else(|| SympairError::Parse(format!("bad entry '{t}'")))
                    })
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        if rows.len() != alg.dim() || rows.iter().any(|r| r.len() != alg.dim()) {
            return Err(SympairError::Parse(
                "theta block has the wrong shape".into(),
            ));
        }
        Self::new(alg, MatrixQ::from_rows(rows))
    }
}

/// The split pair of G2: `θ = (−1)^{m₂}` on the root space of
/// `m₁α₁ + m₂α₂` and `θ = 1` on the Cartan subalgebra, so that
/// `k = h ⊕ g_{±α₁} ⊕ g_{±α₆} ≅ sl2 ⊕ sl2`.
pub fn build_split_g2_pair() -> Result<SymmetricPair, SympairError> {
    let g = chevalley_algebra(RootType::G2)?;
    let rs = g
        .root_system()
        .expect("Chevalley algebras carry roots")
        .clone();
    let r = rs.rank();
    let n = g.dim();
    let mut theta = MatrixQ::identity(n);
    for (i, root) in rs.roots().iter().enumerate() {
        if root[1].rem_euclid(2) == 1 {
            theta[(r + i, r + i)] = -Q::one();
        }
    }
    SymmetricPair::new(g, theta)
}

/// `ĝ = g × g` with the swap involution; `k̂ = {(x, x)}`, `p̂ = {(x, −x)}`.
pub fn hat_pair(g: &Arc<LieAlgebra>) -> Result<SymmetricPair, SympairError> {
    let n = g.dim();
    let mut labels: Vec<String> = g.labels().iter().map(|l| format!("{l}_a")).collect();
    labels.extend(g.labels().iter().map(|l| format!("{l}_b")));
    let mut table: StructureTable = vec![Vec::new(); 4 * n * n];
    for i in 0..n {
        for j in 0..n {
            let e = g.structure(i, j);
            table[i * 2 * n + j] = e.to_vec();
            table[(n + i) * 2 * n + n + j] = e.iter().map(|(k, c)| (k + n, c.clone())).collect();
        }
    }
    let alg = LieAlgebra::new(format!("{}x{}", g.name(), g.name()), labels, table)?;
    let mut theta = MatrixQ::zeros(2 * n, 2 * n);
    for i in 0..n {
        theta[(i, n + i)] = Q::one();
        theta[(n + i, i)] = Q::one();
    }
    SymmetricPair::new(alg, theta)
}

/// `x ↦ (x, −x)` into the odd part of [`hat_pair`].
pub fn hat_embed(hat: &SymmetricPair, x: &Element) -> Element {
    let mut c = x.coeffs().to_vec();
    c.extend(x.coeffs().iter().map(|v| -v));
    Element::new(hat.algebra(), c)
}

/// Image `[S, x]` of a subspace under `ad(x)`.
pub(crate) fn bracket_image(s: &Subspace, x: &Element) -> Subspace {
    let alg = s.algebra();
    Subspace::span_vecs(
        alg,
        s.basis()
            .iter()
            .map(|b| alg.bracket_vec(b, x.coeffs()))
            .collect(),
    )
}

/// `dim K.x = dim [k, x]`, checked against `2·dim K.x = dim G.x`.
pub fn k_orbit_dim(pair: &SymmetricPair, x: &Element) -> Result<usize, SympairError> {
    pair.require_p(x)?;
    let d = bracket_image(pair.k(), x).dim();
    let g = x.ad_matrix().rank();
    if 2 * d != g {
        return Err(SympairError::OrbitHalving { k_dim: d, g_dim: g });
    }
    Ok(d)
}

/// A Levi subalgebra `ℓ = g^v` arising from `p`, with its graded parts.
/// `v = 0` gives `ℓ = g`.
#[derive(Clone, Debug)]
pub struct Levi {
    v: Element,
    space: Subspace,
    k: Subspace,
    p: Subspace,
}

impl Levi {
    pub fn new(pair: &SymmetricPair, v: &Element) -> Result<Self, SympairError> {
        pair.require_p(v)?;
        if !is_semisimple(v) {
            return Err(SympairError::NotSemisimple(v.to_string()));
        }
        let space = centralizer(std::slice::from_ref(v), &Subspace::whole(pair.algebra()));
        let k = space.intersect(pair.k());
        let p = space.intersect(pair.p());
        Ok(Levi {
            v: v.clone(),
            space,
            k,
            p,
        })
    }

    pub fn whole(pair: &SymmetricPair) -> Self {
        Levi {
            v: Element::zero(pair.algebra()),
            space: Subspace::whole(pair.algebra()),
            k: pair.k().clone(),
            p: pair.p().clone(),
        }
    }

    pub fn v(&self) -> &Element {
        &self.v
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn k(&self) -> &Subspace {
        &self.k
    }

    pub fn p(&self) -> &Subspace {
        &self.p
    }

    pub fn is_whole(&self) -> bool {
        self.space.dim() == self.space.algebra().dim()
    }

    pub fn contains(&self, other: &Levi) -> bool {
        other.space.is_subspace_of(&self.space)
    }

    /// `dim K_ℓ.x = dim [k_ℓ, x]`.
    pub fn orbit_dim(&self, x: &Element) -> usize {
        bracket_image(&self.k, x).dim()
    }
}

/// `y ∈ U_ℓ`, i.e. `g^y ⊆ ℓ`.
pub fn u_l_test(pair: &SymmetricPair, levi: &Levi, y: &Element) -> Result<bool, SympairError> {
    require_in_levi(pair, levi, y)?;
    if levi.is_whole() {
        return Ok(true);
    }
    let gy = centralizer(std::slice::from_ref(y), &Subspace::whole(pair.algebra()));
    Ok(gy.is_subspace_of(levi.space()))
}

fn require_in_levi(pair: &SymmetricPair, levi: &Levi, y: &Element) -> Result<(), SympairError> {
    pair.require_p(y)?;
    if !levi.p().contains(y) {
        return Err(SympairError::NotInLevi(y.to_string()));
    }
    Ok(())
}

/// The four equivalent characterizations of `y ∈ U_ℓ`, each computed
/// independently:
/// (i) `g^y ⊆ ℓ`; (ii) `g^s ⊆ ℓ` for the semisimple part `s`;
/// (iii) `codim_p K.y = codim_{p_ℓ} K_ℓ.y`;
/// (iv) `[k, y] = p_{ℓ⊥} ⊕ [k_ℓ, y]` with `p_{ℓ⊥} = [k, v]`.
pub fn u_l_conditions(
    pair: &SymmetricPair,
    levi: &Levi,
    y: &Element,
) -> Result<[bool; 4], SympairError> {
    require_in_levi(pair, levi, y)?;
    let whole = Subspace::whole(pair.algebra());
    let c1 = centralizer(std::slice::from_ref(y), &whole).is_subspace_of(levi.space());
    let (s, _) = crate::chevalley::jordan_decomposition(y)?;
    let c2 = centralizer(std::slice::from_ref(&s), &whole).is_subspace_of(levi.space());
    let ky = bracket_image(pair.k(), y);
    let kly = bracket_image(levi.k(), y);
    let c3 = pair.p().dim() - ky.dim() == levi.p().dim() - kly.dim();
    let p_perp = bracket_image(pair.k(), levi.v());
    let c4 = ky == p_perp.sum(&kly);
    Ok([c1, c2, c3, c4])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_g2_dimensions() {
        let p = build_split_g2_pair().unwrap();
        assert_eq!((p.k().dim(), p.p().dim()), (6, 8));
        assert!(p.grading_holds());
    }

    #[test]
    fn pair_text_roundtrip() {
        let p = build_split_g2_pair().unwrap();
        let q = SymmetricPair::from_text(&p.to_text()).unwrap();
        assert_eq!(p.to_text(), q.to_text());
        assert_eq!(q.p().dim(), 8);
    }
}
