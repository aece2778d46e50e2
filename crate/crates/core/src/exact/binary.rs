use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ExactError, UniPoly, Q};

/// Homogeneous form in `(c₊, c₋)`; coefficient `k` multiplies
/// `c₊^{d−k} c₋^k`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    coeffs: Vec<Q>,
}

/// A rational point `[c₊ : c₋]` of the projective line, stored with coprime
/// integer coordinates and first nonzero coordinate positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ProjPoint {
    pub plus: BigInt,
    pub minus: BigInt,
}

/// Result of [`binary_form_gcd_factor`]: `gcd = Π linear(p)^m · remainder`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryFactorization {
    pub gcd: BinaryForm,
    /// Zeros of the rational linear factors with multiplicity, sorted.
    pub factors: Vec<(ProjPoint, usize)>,
    /// The part without rational linear factors.
    pub remainder: BinaryForm,
}

impl BinaryFactorization {
    /// Number of distinct roots of the remainder over the algebraic closure.
    pub fn non_rational_root_count(&self) -> usize {
        self.remainder
            .dehomogenize()
            .squarefree_part()
            .degree()
            .unwrap_or(0)
    }
}

impl ProjPoint {
    pub fn new(plus: BigInt, minus: BigInt) -> Self {
        assert!(!(plus.is_zero() && minus.is_zero()), "[0:0] is not a point");
        let g = plus.gcd(&minus);
        let (mut a, mut b) = (plus / &g, minus / &g);
        if a.is_negative() || (a.is_zero() && b.is_negative()) {
            a = -a;
            b = -b;
        }
        ProjPoint { plus: a, minus: b }
    }

    pub fn from_i64(plus: i64, minus: i64) -> Self {
        Self::new(plus.into(), minus.into())
    }

    /// The linear form vanishing here: `c₊ − r c₋` for `r = plus/minus`, or
    /// `c₋` at infinity.
    pub fn linear_form(&self) -> BinaryForm {
        if self.minus.is_zero() {
            BinaryForm::new(vec![Q::zero(), Q::one()])
        } else {
            let r = Q::new(self.plus.clone(), self.minus.clone());
            BinaryForm::new(vec![Q::one(), -r])
        }
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}]", self.plus, self.minus)
    }
}

impl BinaryForm {
    pub fn new(coeffs: Vec<Q>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a binary form has degree + 1 coefficients"
        );
        BinaryForm { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(super::ints(c))
    }

    pub fn zero(degree: usize) -> Self {
        Self::new(vec![Q::zero(); degree + 1])
    }

    /// The monomial `c₊^{d−k} c₋^k`.
    pub fn monomial(degree: usize, k: usize) -> Self {
        let mut c = vec![Q::zero(); degree + 1];
        c[k] = Q::one();
        Self::new(c)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, s: &Q) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree());
        Self::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut c = vec![Q::zero(); self.degree() + other.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(c)
    }

    /// Exact quotient, `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero());
        if d.degree() > self.degree() {
            return self.is_zero().then(|| Self::zero(0));
        }
        let qd = self.degree() - d.degree();
        if self.is_zero() {
            return Some(Self::zero(qd));
        }
        let mf = self.minus_power();
        let md = d.minus_power();
        if md > mf {
            return None;
        }
        let (quot, rem) = self.dehomogenize().div_rem(&d.dehomogenize());
        if !rem.is_zero() {
            return None;
        }
        let q = Self::homogenize(&quot, qd - (mf - md));
        let mut c = vec![Q::zero(); mf - md];
        c.extend(q.coeffs);
        Some(Self::new(c))
    }

    /// Power of `c₋` dividing the form (index of the first nonzero
    /// coefficient).
    fn minus_power(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.degree())
    }

    /// `f(x) = F(x, 1)` with `x = c₊/c₋`.
    pub fn dehomogenize(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// Inverse of [`dehomogenize`](Self::dehomogenize) at a given degree.
    pub fn homogenize(p: &UniPoly, degree: usize) -> Self {
        let d = p.degree().unwrap_or(0);
        assert!(d <= degree, "degree too small to homogenize");
        Self::new((0..=degree).map(|k| p.coeff(degree - k)).collect())
    }

    /// Scaled so that the first nonzero coefficient is 1.
    pub fn normalized(&self) -> Self {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            None => self.clone(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    pub fn eval(&self, plus: &Q, minus: &Q) -> Q {
        let d = self.degree();
        let mut acc = Q::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc += c * pow(plus, d - k) * pow(minus, k);
        }
        acc
    }

    /// Normalized gcd.
    pub fn gcd(&self, other: &Self) -> Self {
        let m = self.minus_power().min(other.minus_power());
        let g = self.dehomogenize().gcd(&other.dehomogenize());
        let gd = g.degree().unwrap_or(0);
        let mut c = vec![Q::zero(); m];
        c.extend(Self::homogenize(&g, gd).coeffs);
        Self::new(c).normalized()
    }
}

fn pow(x: &Q, e: usize) -> Q {
    let mut r = Q::one();
    for _ in 0..e {
        r *= x;
    }
    r
}

/// Greatest common divisor of `f` and `g` (or `f` alone) with its rational
/// linear factors. Roots come from a rational-root search on the
/// dehomogenization plus the point at infinity, whose multiplicity is the
/// power of `c₋` dividing the form.
pub fn binary_form_gcd_factor(
    f: &BinaryForm,
    g: Option<&BinaryForm>,
) -> Result<BinaryFactorization, ExactError> {
    if f.is_zero() || g.is_some_and(BinaryForm::is_zero) {
        return Err(ExactError::ZeroForm);
    }
    let gcd = match g {
        Some(g) => f.gcd(g),
        None => f.normalized(),
    };
    let mut factors = Vec::new();
    let inf = gcd.minus_power();
    if inf > 0 {
        factors.push((ProjPoint::from_i64(1, 0), inf));
    }
    let p = gcd.dehomogenize();
    for r in p.rational_roots() {
        let m = p.root_multiplicity(&r);
        factors.push((ProjPoint::new(r.numer().clone(), r.denom().clone()), m));
    }
    factors.sort();
    let mut remainder = gcd.clone();
    for (pt, m) in &factors {
        let l = pt.linear_form();
        for _ in 0..*m {
            remainder = remainder.exact_div(&l).expect("root gives a factor");
        }
    }
    Ok(BinaryFactorization {
        gcd,
        factors,
        remainder,
    })
}

impl fmt::Debug for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut mono = String::new();
            for (var, e) in [("c+", d - k), ("c-", k)] {
                match e {
                    0 => {}
                    1 => mono.push_str(var),
                    _ => mono.push_str(&format!("{var}^{e}")),
                }
            }
            terms.push(match (c.is_one(), mono.is_empty()) {
                (true, false) => mono,
                (_, true) => format!("{c}"),
                _ => format!("({c}){mono}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_gcds() {
        let f = BinaryForm::from_i64(&[0, 1, 0, 0]); // c+^2 c-
        let g = BinaryForm::from_i64(&[0, 0, 1, 0]); // c+ c-^2
        let r = binary_form_gcd_factor(&f, Some(&g)).unwrap();
        assert_eq!(r.gcd, BinaryForm::from_i64(&[0, 1, 0]));
        let f = BinaryForm::from_i64(&[1, 0, 0, 0]); // c+^3
        let g = BinaryForm::from_i64(&[0, 1, 0, 0]); // c+^2 c-
        let r = binary_form_gcd_factor(&f, Some(&g)).unwrap();
        assert_eq!(r.gcd, BinaryForm::from_i64(&[1, 0, 0]));
        assert_eq!(r.factors, vec![(ProjPoint::from_i64(0, 1), 2)]);
    }

    #[test]
    fn split_cubic() {
        // c+ c- (c+ + c-) = c+^2 c- + c+ c-^2
        let f = BinaryForm::from_i64(&[0, 1, 1, 0]);
        let r = binary_form_gcd_factor(&f, None).unwrap();
        let pts: Vec<_> = r.factors.iter().map(|(p, m)| (p.to_string(), *m)).collect();
        assert_eq!(
            pts,
            vec![
                ("[0:1]".to_string(), 1),
                ("[1:-1]".to_string(), 1),
                ("[1:0]".to_string(), 1)
            ]
        );
        assert_eq!(r.remainder.degree(), 0);
    }

    #[test]
    fn zero_form_rejected() {
        assert_eq!(
            binary_form_gcd_factor(&BinaryForm::zero(2), None),
            Err(ExactError::ZeroForm)
        );
    }
}
