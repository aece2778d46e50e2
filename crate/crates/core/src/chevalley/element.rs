use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::{ChevalleyError, LieAlgebra};
use crate::exact::{is_zero_vec, parse_q, rank_kernel, unit_vec, MatrixQ, Q};

/// An element of a Lie algebra, as a coefficient vector over its basis.
#[derive(Clone)]
pub struct Element {
    alg: Arc<LieAlgebra>,
    coeffs: Vec<Q>,
}

impl Element {
    pub fn new(alg: &Arc<LieAlgebra>, coeffs: Vec<Q>) -> Self {
        assert_eq!(
            coeffs.len(),
            alg.dim(),
            "coefficient vector has wrong length"
        );
        Element {
            alg: alg.clone(),
            coeffs,
        }
    }

    pub fn zero(alg: &Arc<LieAlgebra>) -> Self {
        Self::new(alg, vec![Q::zero(); alg.dim()])
    }

    pub fn basis(alg: &Arc<LieAlgebra>, i: usize) -> Self {
        Self::new(alg, unit_vec(alg.dim(), i))
    }

    /// Parses a linear combination of basis labels such as
    /// `"x5 + y3"`, `"2h1 - 4h2"` or `"-4/3 y2 + 2/3 y3"`.
    pub fn parse(alg: &Arc<LieAlgebra>, s: &str) -> Result<Self, ChevalleyError> {
        let bad = || ChevalleyError::Parse(format!("cannot parse element '{s}'"));
        let mut coeffs = vec![Q::zero(); alg.dim()];
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "0" {
            return Ok(Self::new(alg, coeffs));
        }
        let mut terms = Vec::new();
        let mut cur = String::new();
        for ch in compact.chars() {
            // a sign directly after another sign belongs to the coefficient
            if (ch == '+' || ch == '-') && !(cur.is_empty() || cur == "+" || cur == "-") {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        for term in terms {
            let mut sign = Q::one();
            let mut body = term.as_str();
            while let Some(c) = body.chars().next().filter(|c| *c == '+' || *c == '-') {
                if c == '-' {
                    sign = -sign;
                }
                body = &body[1..];
            }
            // the label is the longest suffix matching a basis label
            let (idx, label_len) = alg
                .labels()
                .iter()
                .enumerate()
                .filter(|(_, l)| body.ends_with(l.as_str()))
                .map(|(i, l)| (i, l.len()))
                .max_by_key(|&(_, len)| len)
                .ok_or_else(bad)?;
            let c = body[..body.len() - label_len].trim_end_matches('*');
            let c = if c.is_empty() {
                Q::one()
            } else {
                parse_q(c).ok_or_else(bad)?
            };
            coeffs[idx] += sign * c;
        }
        Ok(Self::new(alg, coeffs))
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.alg
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Q> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.coeffs)
    }

    pub fn same_algebra(&self, other: &Element) -> bool {
        Arc::ptr_eq(&self.alg, &other.alg)
    }

    fn check_same(&self, other: &Element) -> Result<(), ChevalleyError> {
        if self.same_algebra(other) {
            Ok(())
        } else {
            Err(ChevalleyError::MixedAlgebra {
                left: self.alg.name().to_string(),
                right: other.alg.name().to_string(),
            })
        }
    }

    pub fn scale(&self, s: &Q) -> Element {
        Element::new(&self.alg, self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn bracket(&self, other: &Element) -> Result<Element, ChevalleyError> {
        self.check_same(other)?;
        Ok(Element::new(
            &self.alg,
            self.alg.bracket_vec(&self.coeffs, &other.coeffs),
        ))
    }

    pub fn ad_matrix(&self) -> MatrixQ {
        self.alg.ad_vec(&self.coeffs)
    }

    pub fn killing(&self, other: &Element) -> Result<Q, ChevalleyError> {
        self.check_same(other)?;
        let k = self.alg.killing_matrix();
        let mut s = Q::zero();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    s += a * b * &k[(i, j)];
                }
            }
        }
        Ok(s)
    }

    pub fn try_add(&self, other: &Element) -> Result<Element, ChevalleyError> {
        self.check_same(other)?;
        Ok(Element::new(
            &self.alg,
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    pub fn try_sub(&self, other: &Element) -> Result<Element, ChevalleyError> {
        self.try_add(&-other)
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.same_algebra(other) && self.coeffs == other.coeffs
    }
}

impl Eq for Element {}

/// Panics on elements of different algebras; use [`Element::try_add`] to
/// get an error instead.
impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.try_add(rhs).expect("elements of different algebras")
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.try_sub(rhs).expect("elements of different algebras")
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element::new(&self.alg, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, label) in self.coeffs.iter().zip(self.alg.labels()) {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let a = c.abs();
            let mag = if a.is_one() {
                String::new()
            } else {
                format!("{a} ")
            };
            if first {
                let lead = if c.is_negative() { "-" } else { "" };
                write!(f, "{lead}{mag}{label}")?;
                first = false;
            } else {
                write!(f, " {sign} {mag}{label}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({self})")
    }
}

/// A linear subspace stored by its reduced echelon basis, so equal
/// subspaces have identical representations.
#[derive(Clone)]
pub struct Subspace {
    alg: Arc<LieAlgebra>,
    basis: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span_vecs(alg: &Arc<LieAlgebra>, vecs: Vec<Vec<Q>>) -> Self {
        let n = alg.dim();
        if vecs.is_empty() {
            return Self::zero(alg);
        }
        let m = MatrixQ::from_rows(vecs);
        assert_eq!(m.cols(), n);
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace {
            alg: alg.clone(),
            basis,
            pivots,
        }
    }

    pub fn span(alg: &Arc<LieAlgebra>, elems: &[Element]) -> Self {
        Self::span_vecs(alg, elems.iter().map(|e| e.coeffs().to_vec()).collect())
    }

    pub fn whole(alg: &Arc<LieAlgebra>) -> Self {
        Self::span_vecs(
            alg,
            (0..alg.dim()).map(|i| unit_vec(alg.dim(), i)).collect(),
        )
    }

    pub fn zero(alg: &Arc<LieAlgebra>) -> Self {
        Subspace {
            alg: alg.clone(),
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.alg
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.basis
    }

    pub fn elements(&self) -> Vec<Element> {
        self.basis
            .iter()
            .map(|v| Element::new(&self.alg, v.clone()))
            .collect()
    }

    /// Coordinates of `v` in the echelon basis, `None` if `v` is outside.
    pub fn coords(&self, v: &[Q]) -> Option<Vec<Q>> {
        let c: Vec<Q> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut r = v.to_vec();
        for (ci, b) in c.iter().zip(&self.basis) {
            if ci.is_zero() {
                continue;
            }
            for (x, y) in r.iter_mut().zip(b) {
                *x -= ci * y;
            }
        }
        is_zero_vec(&r).then_some(c)
    }

    pub fn from_coords(&self, c: &[Q]) -> Vec<Q> {
        assert_eq!(c.len(), self.dim());
        let mut v = vec![Q::zero(); self.alg.dim()];
        for (ci, b) in c.iter().zip(&self.basis) {
            if ci.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(b) {
                *x += ci * y;
            }
        }
        v
    }

    pub fn element_from_coords(&self, c: &[Q]) -> Element {
        Element::new(&self.alg, self.from_coords(c))
    }

    pub fn contains_vec(&self, v: &[Q]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains(&self, x: &Element) -> bool {
        Arc::ptr_eq(&self.alg, x.algebra()) && self.contains_vec(x.coeffs())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains_vec(b))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Self::span_vecs(&self.alg, v)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        if self.dim() == 0 || other.dim() == 0 {
            return Self::zero(&self.alg);
        }
        // annihilator of `other`, then the part of `self` it kills
        let (_, ann) = rank_kernel(&MatrixQ::from_rows(other.basis.clone()));
        if ann.is_empty() {
            return self.clone();
        }
        let rows: Vec<Vec<Q>> = ann
            .iter()
            .map(|a| self.basis.iter().map(|b| crate::exact::dot(a, b)).collect())
            .collect();
        let (_, ker) = rank_kernel(&MatrixQ::from_rows(rows));
        Self::span_vecs(&self.alg, ker.iter().map(|c| self.from_coords(c)).collect())
    }

    /// Linear map `Q^{dim} → algebra` whose columns are the basis vectors.
    pub fn basis_matrix(&self) -> MatrixQ {
        MatrixQ::from_cols(self.alg.dim(), &self.basis)
    }
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.alg, &other.alg) && self.basis == other.basis
    }
}

impl Eq for Subspace {}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let elems: Vec<String> = self.elements().iter().map(ToString::to_string).collect();
        write!(f, "Subspace[{}]", elems.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::{chevalley_algebra, RootType};
    use crate::exact::{q, qr};

    #[test]
    fn parse_signed_coefficients() {
        let g = chevalley_algebra(RootType::G2).unwrap();
        let x = Element::parse(&g, "x2 + -40 x5 - 2/3 y1").unwrap();
        let mut c = vec![Q::zero(); 14];
        c[3] = Q::one();
        c[6] = q(-40);
        c[8] = qr(-2, 3);
        assert_eq!(x.coeffs(), &c[..]);
        assert_eq!(Element::parse(&g, &x.to_string()).unwrap(), x);
        assert!(Element::parse(&g, "x2 + z").is_err());
    }
}
