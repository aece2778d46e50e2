use std::sync::Arc;

use num_traits::{One, Zero};

use super::FouralityError;
use crate::chevalley::{LieAlgebra, StructureTable};
use crate::exact::{q, MatrixQ, Q};

/// A 2-dimensional space with basis `(c₋, c₊)` and the symplectic form
/// `ω(c₋, c₊) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwoSpace;

impl TwoSpace {
    /// Gram matrix of `ω` in the basis `(c₋, c₊)`.
    pub fn omega() -> MatrixQ {
        MatrixQ::from_i64(&[&[0, 1], &[-1, 0]])
    }

    /// `e: c₋ ↦ c₊`.
    pub fn e() -> MatrixQ {
        MatrixQ::from_i64(&[&[0, 0], &[1, 0]])
    }

    /// `h = diag(−1, 1)`.
    pub fn h() -> MatrixQ {
        MatrixQ::from_i64(&[&[-1, 0], &[0, 1]])
    }

    /// `f: c₊ ↦ c₋`.
    pub fn f() -> MatrixQ {
        MatrixQ::from_i64(&[&[0, 1], &[0, 0]])
    }
}

/// Index of a 2-space factor: `C₁, C₂, C₃, D`.
pub const FACTORS: [&str; 4] = ["1", "2", "3", "d"];

/// Letter for a basis vector of a 2-space: `m` for `c₋`, `p` for `c₊`.
pub(crate) fn sign_letter(s: usize) -> char {
    if s == 0 {
        'm'
    } else {
        'p'
    }
}

/// `so8` as `sl(C₁)×sl(C₂)×sl(C₃)×sl(D) ⊕ C₁⊗C₂⊗C₃⊗D`, realized on
/// `V₈ = C₁⊗C₂ ⊕ C₃⊗D`.
///
/// Basis: `e_X, h_X, f_X` for `X ∈ {1, 2, 3, d}`, then the 16 tensors
/// `t_{s₁s₂s₃s_d}` (`s ∈ {m, p}`). `V₈` coordinates: `2s₁ + s₂` on
/// `C₁⊗C₂` and `4 + 2s₃ + s_d` on `C₃⊗D` with `s = 0` for `c₋`.
#[derive(Clone, Debug)]
pub struct FouralityAlgebra {
    alg: Arc<LieAlgebra>,
    rep: Vec<MatrixQ>,
    form: MatrixQ,
}

/// Position of the tensor `t_{s₁s₂s₃s_d}` among the basis.
pub(crate) fn tensor_index(s: [usize; 4]) -> usize {
    12 + 8 * s[0] + 4 * s[1] + 2 * s[2] + s[3]
}

fn kron(a: &MatrixQ, b: &MatrixQ) -> MatrixQ {
    let (ra, ca, rb, cb) = (a.rows(), a.cols(), b.rows(), b.cols());
    let mut m = MatrixQ::zeros(ra * rb, ca * cb);
    for i in 0..ra {
        for j in 0..ca {
            if a[(i, j)].is_zero() {
                continue;
            }
            for k in 0..rb {
                for l in 0..cb {
                    m[(i * rb + k, j * cb + l)] = &a[(i, j)] * &b[(k, l)];
                }
            }
        }
    }
    m
}

/// Block-diagonal embedding of 4×4 blocks on `C₁⊗C₂` and `C₃⊗D`.
fn blocks(top: &MatrixQ, bottom: &MatrixQ) -> MatrixQ {
    let mut m = MatrixQ::zeros(8, 8);
    for i in 0..4 {
        for j in 0..4 {
            m[(i, j)] = top[(i, j)].clone();
            m[(4 + i, 4 + j)] = bottom[(i, j)].clone();
        }
    }
    m
}

/// Coordinates with respect to a fixed list of independent vectors.
pub(crate) struct VectorSpan {
    basis: Vec<Vec<Q>>,
    left_inverse: MatrixQ,
}

impl VectorSpan {
    pub(crate) fn new(basis: Vec<Vec<Q>>) -> Result<Self, FouralityError> {
        let a = MatrixQ::from_cols(basis[0].len(), &basis);
        let gram = &a.transpose() * &a;
        let inv = gram
            .inverse()
            .map_err(|_| FouralityError::Construction("vectors are linearly dependent".into()))?;
        Ok(VectorSpan {
            left_inverse: &inv * &a.transpose(),
            basis,
        })
    }

    /// Coordinates of `v`, or `None` outside the span.
    pub(crate) fn coords(&self, v: &[Q]) -> Option<Vec<Q>> {
        let c = self.left_inverse.mul_vec(v);
        let mut back = vec![Q::zero(); v.len()];
        for (ci, b) in c.iter().zip(&self.basis) {
            if !ci.is_zero() {
                for (x, y) in back.iter_mut().zip(b) {
                    *x += ci * y;
                }
            }
        }
        (back == v).then_some(c)
    }
}

/// Structure table of the Lie algebra with basis `vecs`, brackets computed
/// by `bracket`.
pub(crate) fn structure_table(
    vecs: Vec<Vec<Q>>,
    bracket: impl Fn(&[Q], &[Q]) -> Vec<Q>,
) -> Result<StructureTable, FouralityError> {
    let n = vecs.len();
    let span = VectorSpan::new(vecs)?;
    let mut table: StructureTable = vec![Vec::new(); n * n];
    for i in 0..n {
        for j in i + 1..n {
            let c = span
                .coords(&bracket(&span.basis[i], &span.basis[j]))
                .ok_or_else(|| {
                    FouralityError::Construction(format!(
                        "bracket of basis {i} and {j} leaves the span"
                    ))
                })?;
            let entries: Vec<(usize, Q)> = c
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(k, x)| (k, x.clone()))
                .collect();
            table[j * n + i] = entries.iter().map(|(k, x)| (*k, -x)).collect();
            table[i * n + j] = entries;
        }
    }
    Ok(table)
}

fn from_colmajor(v: &[Q]) -> MatrixQ {
    let mut m = MatrixQ::zeros(8, 8);
    for (k, x) in v.iter().enumerate() {
        m[(k % 8, k / 8)] = x.clone();
    }
    m
}

pub fn build_fourality_so8() -> Result<FouralityAlgebra, FouralityError> {
    let id2 = MatrixQ::identity(2);
    let zero4 = MatrixQ::zeros(4, 4);
    let mut labels = Vec::new();
    let mut rep = Vec::new();
    for (x, name) in FACTORS.iter().enumerate() {
        for (gen, letter) in [
            (TwoSpace::e(), 'e'),
            (TwoSpace::h(), 'h'),
            (TwoSpace::f(), 'f'),
        ] {
            labels.push(format!("{letter}{name}"));
            let on_pair = if x % 2 == 0 {
                kron(&gen, &id2)
            } else {
                kron(&id2, &gen)
            };
            rep.push(if x < 2 {
                blocks(&on_pair, &zero4)
            } else {
                blocks(&zero4, &on_pair)
            });
        }
    }
    let w = TwoSpace::omega();
    for s1 in 0..2 {
        for s2 in 0..2 {
            for s3 in 0..2 {
                for sd in 0..2 {
                    let s = [s1, s2, s3, sd];
                    labels.push(format!(
                        "t_{}",
                        s.iter().map(|&x| sign_letter(x)).collect::<String>()
                    ));
                    // (a⊗b⊗c⊗d).(u₁⊗u₂) = ω(a,u₁)ω(b,u₂) c⊗d, and symmetrically.
                    let mut m = MatrixQ::zeros(8, 8);
                    for u1 in 0..2 {
                        for u2 in 0..2 {
                            let c = &w[(s1, u1)] * &w[(s2, u2)];
                            if !c.is_zero() {
                                m[(4 + 2 * s3 + sd, 2 * u1 + u2)] = c;
                            }
                            let c = &w[(s3, u1)] * &w[(sd, u2)];
                            if !c.is_zero() {
                                m[(2 * s1 + s2, 4 + 2 * u1 + u2)] = c;
                            }
                        }
                    }
                    rep.push(m);
                }
            }
        }
    }
    let form = blocks(&kron(&w, &w), &kron(&w, &w).scale(&q(-1)));
    for (m, l) in rep.iter().zip(&labels) {
        if !(&(&m.transpose() * &form) + &(&form * m)).is_zero() {
            return Err(FouralityError::Construction(format!(
                "{l} does not preserve the form on V8"
            )));
        }
    }
    let table = structure_table(rep.iter().map(MatrixQ::vec_colmajor).collect(), |a, b| {
        let (a, b) = (from_colmajor(a), from_colmajor(b));
        a.commutator(&b).vec_colmajor()
    })?;
    let alg = LieAlgebra::new("so8", labels, table)?;
    let k_dim = 12;
    for i in k_dim..alg.dim() {
        for j in k_dim..alg.dim() {
            if alg.structure(i, j).iter().any(|(k, _)| *k >= k_dim) {
                return Err(FouralityError::Construction(
                    "[p0, p0] is not contained in k0".into(),
                ));
            }
        }
    }
    Ok(FouralityAlgebra { alg, rep, form })
}

impl FouralityAlgebra {
    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.alg
    }

    /// Matrix of each basis element on `V₈`.
    pub fn rep(&self) -> &[MatrixQ] {
        &self.rep
    }

    /// The invariant symmetric form on `V₈`.
    pub fn form(&self) -> &MatrixQ {
        &self.form
    }

    /// Matrix of `Σ c_i b_i` on `V₈`.
    pub fn rep_of(&self, coeffs: &[Q]) -> MatrixQ {
        let mut m = MatrixQ::zeros(8, 8);
        for (c, r) in coeffs.iter().zip(&self.rep) {
            if !c.is_zero() {
                m = &m + &r.scale(c);
            }
        }
        m
    }

    /// Every basis action preserves the form on `V₈`.
    pub fn form_invariant(&self) -> bool {
        self.rep
            .iter()
            .all(|m| (&(&m.transpose() * &self.form) + &(&self.form * m)).is_zero())
    }

    /// The basis permutation induced by a permutation of the factors
    /// `C₁, C₂, C₃, D` (`perm[i]` is the image of factor `i`).
    pub fn factor_permutation(&self, perm: [usize; 4]) -> MatrixQ {
        let n = self.alg.dim();
        let mut m = MatrixQ::zeros(n, n);
        for x in 0..4 {
            for g in 0..3 {
                m[(3 * perm[x] + g, 3 * x + g)] = Q::one();
            }
        }
        for code in 0..16 {
            let s = [code >> 3 & 1, code >> 2 & 1, code >> 1 & 1, code & 1];
            let mut t = [0; 4];
            for i in 0..4 {
                t[perm[i]] = s[i];
            }
            m[(tensor_index(t), tensor_index(s))] = Q::one();
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn so8_dimension_and_form() {
        let a = build_fourality_so8().unwrap();
        assert_eq!(a.algebra().dim(), 28);
        assert!(a.form_invariant());
        assert_eq!(a.algebra().killing_matrix().rank(), 28);
    }
}
