use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ExactError, MatrixQ, Q};

/// Univariate polynomial with rational coefficients, lowest degree first.
/// Trailing zeros are never stored, so the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Q>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::new(vec![Q::zero(), Q::one()])
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(super::ints(c))
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Q> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) => {
                let inv = l.recip();
                Self::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn scale(&self, s: &Q) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Q::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs
            .iter()
            .rev()
            .fold(Q::zero(), |acc, c| acc * x + c)
    }

    /// Evaluates at a square matrix by Horner's scheme.
    pub fn eval_matrix(&self, m: &MatrixQ) -> MatrixQ {
        let n = m.rows();
        let mut acc = MatrixQ::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = &acc * m;
            if !c.is_zero() {
                for i in 0..n {
                    acc[(i, i)] = &acc[(i, i)] + c;
                }
            }
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.lead().unwrap().recip();
        let mut r = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if nd < dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Q::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &r[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let v = &r[k + j] - &c * dc;
                r[k + j] = v;
            }
            quot[k] = c;
        }
        (Self::new(quot), Self::new(r))
    }

    /// Exact quotient, `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Extended Euclid: returns (g, s, t) with s·self + t·other = g monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::constant(Q::one()), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::constant(Q::one()));
        while !r1.is_zero() {
            let (qt, r) = r0.div_rem(&r1);
            let s2 = &s0 - &(&qt * &s1);
            let t2 = &t0 - &(&qt * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.lead().cloned() {
            None => (r0, s0, t0),
            Some(l) => {
                let inv = l.recip();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    /// The monic squarefree part `p / gcd(p, p')`.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree().unwrap_or(0) == 0
    }

    /// Integer polynomial proportional to `self` with coprime coefficients.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let l = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Q::from_integer(l.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            return ints;
        }
        ints.into_iter().map(|c| c / &g).collect()
    }

    /// All distinct rational roots, sorted ascending.
    pub fn rational_roots(&self) -> Vec<Q> {
        let mut roots = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return roots;
        }
        let mut p = self.clone();
        if p.coeff(0).is_zero() {
            roots.push(Q::zero());
            let k = p.coeffs.iter().position(|c| !c.is_zero()).unwrap();
            p = Self::new(p.coeffs[k..].to_vec());
        }
        if p.degree().unwrap_or(0) == 0 {
            return roots;
        }
        let ints = p.primitive_integer();
        let a0 = ints[0].abs();
        let an = ints.last().unwrap().abs();
        let num_divs = divisors(&a0);
        let den_divs = divisors(&an);
        let mut seen = std::collections::BTreeSet::new();
        for n in &num_divs {
            for d in &den_divs {
                for sign in [1i32, -1] {
                    let cand = Q::new(n * BigInt::from(sign), d.clone());
                    if seen.insert(cand.clone()) && p.eval(&cand).is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
        roots.sort();
        roots
    }

    /// Multiplicity of `r` as a root.
    pub fn root_multiplicity(&self, r: &Q) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let lin = Self::new(vec![-r.clone(), Q::one()]);
        let mut p = self.clone();
        let mut m = 0;
        while let Some(q) = p.exact_div(&lin) {
            p = q;
            m += 1;
        }
        m
    }
}

/// Positive divisors of |n| by trial division; {1} for n = 0.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() || n.is_one() {
        return vec![BigInt::one()];
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            small.push(d.clone());
            let o = &n / &d;
            if o != d {
                large.push(o);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

impl MatrixQ {
    /// Characteristic polynomial `det(xI - M)` via reduction to upper
    /// Hessenberg form followed by the standard recurrence.
    pub fn charpoly(&self) -> Result<UniPoly, ExactError> {
        if !self.is_square() {
            return Err(ExactError::NotSquare {
                rows: self.rows(),
                cols: self.cols(),
            });
        }
        let n = self.rows();
        let mut h = self.clone();
        for j in 0..n.saturating_sub(2) {
            let Some(p) = (j + 1..n).find(|&i| !h[(i, j)].is_zero()) else {
                continue;
            };
            if p != j + 1 {
                h.swap_rows(p, j + 1);
                for i in 0..n {
                    let a = h[(i, p)].clone();
                    let b = h[(i, j + 1)].clone();
                    h[(i, p)] = b;
                    h[(i, j + 1)] = a;
                }
            }
            let piv = h[(j + 1, j)].clone();
            for i in j + 2..n {
                if h[(i, j)].is_zero() {
                    continue;
                }
                let f = &h[(i, j)] / &piv;
                for k in 0..n {
                    let v = &h[(i, k)] - &f * &h[(j + 1, k)];
                    h[(i, k)] = v;
                }
                for k in 0..n {
                    let v = &h[(k, j + 1)] + &f * &h[(k, i)];
                    h[(k, j + 1)] = v;
                }
            }
        }
        // p_k = characteristic polynomial of the leading k×k block.
        let mut ps: Vec<UniPoly> = vec![UniPoly::constant(Q::one())];
        for k in 1..=n {
            let x_minus = UniPoly::new(vec![-h[(k - 1, k - 1)].clone(), Q::one()]);
            let mut pk = &x_minus * &ps[k - 1];
            let mut prod = Q::one();
            for i in (1..k).rev() {
                prod *= &h[(i, i - 1)];
                if prod.is_zero() {
                    break;
                }
                let c = &prod * &h[(i - 1, k - 1)];
                if !c.is_zero() {
                    pk = &pk - &ps[i - 1].scale(&c);
                }
            }
            ps.push(pk);
        }
        Ok(ps.pop().unwrap())
    }

    pub fn is_nilpotent(&self) -> bool {
        assert!(self.is_square());
        let mut p = self.clone();
        let mut e = 1usize;
        while e < self.rows() {
            p = &p * &p;
            e *= 2;
        }
        p.is_zero()
    }

    /// True when the minimal polynomial is squarefree, i.e. the squarefree
    /// part of the characteristic polynomial already annihilates the matrix.
    pub fn is_semisimple(&self) -> bool {
        let cp = self.charpoly().expect("square");
        cp.squarefree_part().eval_matrix(self).is_zero()
    }
}

/// Jordan–Chevalley decomposition `M = S + N`.
///
/// Newton iteration `S ← S − q(S)·v(S)` against the squarefree part `q` of
/// the characteristic polynomial, where `v·q' ≡ 1 mod q`. After `k` steps
/// `q(S)` lies in the ideal generated by `q(M)^{2^k}`, so
/// `⌈log₂ deg⌉ + 1` steps reach the exact semisimple part.
pub fn jordan_chevalley(m: &MatrixQ) -> Result<(MatrixQ, MatrixQ), ExactError> {
    let cp = m.charpoly()?;
    let sq = cp.squarefree_part();
    let (_, v, _) = sq.derivative().ext_gcd(&sq);
    let deg = cp.degree().unwrap_or(0).max(1);
    let steps = (usize::BITS - (deg - 1).leading_zeros()) as usize + 1;
    let mut s = m.clone();
    for _ in 0..steps {
        let qs = sq.eval_matrix(&s);
        if qs.is_zero() {
            break;
        }
        s = &s - &(&qs * &v.eval_matrix(&s));
    }
    debug_assert!(sq.eval_matrix(&s).is_zero());
    let n = m - &s;
    Ok((s, n))
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})x"),
                _ => format!("({c})x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qr};

    #[test]
    fn charpoly_of_companion() {
        // companion of x^3 - 2x + 5
        let m = MatrixQ::from_i64(&[&[0, 0, -5], &[1, 0, 2], &[0, 1, 0]]);
        assert_eq!(m.charpoly().unwrap(), UniPoly::from_i64(&[5, -2, 0, 1]));
    }

    #[test]
    fn charpoly_with_zero_subdiagonal() {
        let m = MatrixQ::from_i64(&[&[1, 2, 3], &[0, 4, 5], &[0, 0, 6]]);
        // (x-1)(x-4)(x-6)
        assert_eq!(m.charpoly().unwrap(), UniPoly::from_i64(&[-24, 34, -11, 1]));
    }

    #[test]
    fn gcd_and_squarefree() {
        let a = UniPoly::from_i64(&[-1, 0, 1]); // x^2-1
        let b = UniPoly::from_i64(&[1, 2, 1]); // (x+1)^2
        assert_eq!(a.gcd(&b), UniPoly::from_i64(&[1, 1]));
        assert_eq!(b.squarefree_part(), UniPoly::from_i64(&[1, 1]));
        assert!(a.is_squarefree());
        assert!(!b.is_squarefree());
    }

    #[test]
    fn rational_roots_found() {
        // (2x - 1)(x + 3)(x^2 + 1)
        let p = &(&UniPoly::from_i64(&[-1, 2]) * &UniPoly::from_i64(&[3, 1]))
            * &UniPoly::from_i64(&[1, 0, 1]);
        assert_eq!(p.rational_roots(), vec![q(-3), qr(1, 2)]);
        assert_eq!(UniPoly::from_i64(&[0, 0, 1]).rational_roots(), vec![q(0)]);
    }

    #[test]
    fn jc_unipotent_block() {
        let m = MatrixQ::from_i64(&[&[1, 1], &[0, 1]]);
        let (s, n) = jordan_chevalley(&m).unwrap();
        assert_eq!(s, MatrixQ::identity(2));
        assert_eq!(n, MatrixQ::from_i64(&[&[0, 1], &[0, 0]]));
    }

    #[test]
    fn jc_diagonal_and_nilpotent() {
        let d = MatrixQ::from_i64(&[&[1, 0], &[0, 2]]);
        let (s, n) = jordan_chevalley(&d).unwrap();
        assert_eq!(s, d);
        assert!(n.is_zero());
        let nil = MatrixQ::from_i64(&[&[0, 1], &[0, 0]]);
        let (s, n) = jordan_chevalley(&nil).unwrap();
        assert!(s.is_zero());
        assert_eq!(n, nil);
    }

    #[test]
    fn semisimple_test_irrational_eigenvalues() {
        // rotation-like: eigenvalues ±i, still semisimple over Q
        let m = MatrixQ::from_i64(&[&[0, -1], &[1, 0]]);
        assert!(m.is_semisimple());
        assert!(!MatrixQ::from_i64(&[&[0, 1], &[0, 0]]).is_semisimple());
    }
}
