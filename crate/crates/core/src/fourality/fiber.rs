use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use super::fixed::{v7_matrix, FactorGroup, FixedSubalgebra, Projection};
use super::FouralityError;
use crate::chevalley::Element;
use crate::exact::{binary_form_gcd_factor, fmt_q, BinaryForm, MatrixQ, Q};

/// `π⁻¹(y) ∩ 𝒯_{𝔭₁}`: the rational points explicitly, plus the number of
/// points defined only over an extension of `ℚ`.
#[derive(Clone, Debug)]
pub struct Fiber {
    pub points: Vec<Element>,
    pub non_rational: usize,
}

/// Serialized form of a fibre: points as coefficient vectors in the basis
/// of `g₁`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberRecord {
    pub class: String,
    pub cardinality: usize,
    pub points: Vec<Vec<String>>,
}

impl Fiber {
    /// Number of points over the algebraic closure.
    pub fn cardinality(&self) -> usize {
        self.points.len() + self.non_rational
    }

    pub fn record(&self, class: &str) -> FiberRecord {
        FiberRecord {
            class: class.into(),
            cardinality: self.cardinality(),
            points: self
                .points
                .iter()
                .map(|p| p.coeffs().iter().map(fmt_q).collect())
                .collect(),
        }
    }
}

/// Position of `μ ⊗ c_{σ₃} ⊗ d_{σ_d}` in `𝔭₁`, with `μ = c₊^{2−k} c₋^k` and
/// `σ = 0` for the `+` vector.
fn p1_index(f1: &FixedSubalgebra, k: usize, s3: usize, sd: usize) -> usize {
    f1.k_dim() + 4 * k + 2 * s3 + sd
}

/// Position of `c₊^{3−k} c₋^k ⊗ d_{σ_d}` in `𝔭₂`.
fn p2_index(f2: &FixedSubalgebra, k: usize, sd: usize) -> usize {
    f2.k_dim() + 2 * k + sd
}

fn require_group(f: &FixedSubalgebra, g: FactorGroup) -> Result<(), FouralityError> {
    if f.group() == g {
        Ok(())
    } else {
        Err(FouralityError::Construction(format!(
            "expected the fixed points of {g:?}, got {:?}",
            f.group()
        )))
    }
}

/// Quadratic divisors of `f` up to scalars: the rational ones explicitly,
/// and the number of the others over the algebraic closure.
fn quadratic_divisors(f: &BinaryForm) -> Result<(Vec<BinaryForm>, usize), FouralityError> {
    let fac =
        binary_form_gcd_factor(f, None).map_err(|e| FouralityError::Construction(e.to_string()))?;
    let rem_deg = fac.non_rational_root_count();
    let mut rational = Vec::new();
    for (i, (p, m)) in fac.factors.iter().enumerate() {
        if *m >= 2 {
            rational.push(p.linear_form().mul(&p.linear_form()));
        }
        for (r, _) in &fac.factors[i + 1..] {
            rational.push(p.linear_form().mul(&r.linear_form()));
        }
    }
    if rem_deg == 2 {
        rational.push(fac.remainder.clone());
    }
    // Over the closure the remainder has distinct roots.
    let distinct = fac.factors.len() + rem_deg;
    let repeated = fac.factors.iter().filter(|(_, m)| *m >= 2).count();
    let total = distinct * distinct.saturating_sub(1) / 2 + repeated;
    let rational: Vec<BinaryForm> = rational.iter().map(BinaryForm::normalized).collect();
    let non_rational = total - rational.len();
    Ok((rational, non_rational))
}

/// Fibre of `π` over `y ∈ 𝔭₂` inside the rank-≤2 locus of `𝔭₁`.
///
/// Points of `𝒯 ∩ 𝔭₁` are the pure tensors `q ⊗ (ℓ₊ ⊗ d₊ + ℓ₋ ⊗ d₋)` with
/// `q ∈ S²C′`, `ℓ± ∈ C₃`, and `π` sends them to `qℓ₊ ⊗ d₊ + qℓ₋ ⊗ d₋`.
/// Writing `y = F₊ ⊗ d₊ + F₋ ⊗ d₋`, the fibre is parametrized by the
/// quadratics `q` dividing both cubics `F±`. Each `q` is normalized to have
/// first coefficient 1.
pub fn fiber_over(
    f1: &FixedSubalgebra,
    f2: &FixedSubalgebra,
    y: &Element,
) -> Result<Fiber, FouralityError> {
    require_group(f1, FactorGroup::SwapC1C2)?;
    require_group(f2, FactorGroup::S3)?;
    let proj = Projection::new(f1, f2)?;
    if !std::sync::Arc::ptr_eq(y.algebra(), f2.algebra()) || !f2.in_p(y) {
        return Err(FouralityError::NotInP(y.to_string()));
    }
    if y.is_zero() {
        return Ok(Fiber {
            points: vec![Element::zero(f1.algebra())],
            non_rational: 0,
        });
    }
    let cubic = |sd: usize| {
        BinaryForm::new(
            (0..4)
                .map(|k| y.coeffs()[p2_index(f2, k, sd)].clone())
                .collect(),
        )
    };
    let (fp, fm) = (cubic(0), cubic(1));
    let (quadratics, non_rational) = if independent(&fp, &fm) {
        let g = fp.gcd(&fm);
        (if g.degree() == 2 { vec![g] } else { Vec::new() }, 0)
    } else {
        quadratic_divisors(if fp.is_zero() { &fm } else { &fp })?
    };
    let mut points = Vec::new();
    for q in quadratics {
        let lp = fp.exact_div(&q).expect("q divides F+");
        let lm = fm.exact_div(&q).expect("q divides F-");
        let mut c = vec![Q::zero(); f1.dim()];
        for (k, qk) in q.coeffs().iter().enumerate() {
            for (sd, l) in [&lp, &lm].into_iter().enumerate() {
                for (s3, lc) in l.coeffs().iter().enumerate() {
                    c[p1_index(f1, k, s3, sd)] += qk * lc;
                }
            }
        }
        let z = Element::new(f1.algebra(), c);
        if proj.apply(&z)? != *y || rank_v7(f1, &z)? > 2 {
            return Err(FouralityError::Construction(format!(
                "fibre point {z} fails its check"
            )));
        }
        points.push(z);
    }
    points.sort_by(|a, b| a.coeffs().cmp(b.coeffs()));
    Ok(Fiber {
        points,
        non_rational,
    })
}

fn rank_v7(f1: &FixedSubalgebra, z: &Element) -> Result<usize, FouralityError> {
    Ok(v7_matrix(f1, z)?.rank())
}

fn independent(a: &BinaryForm, b: &BinaryForm) -> bool {
    MatrixQ::from_rows(vec![a.coeffs().to_vec(), b.coeffs().to_vec()]).rank() == 2
}

/// Graded Jordan chains of a nilpotent element of `𝔭₁` acting on
/// `V₇ = V_a ⊕ V_b`. Each row is a chain read from its top vector, with the
/// letter of the summand containing each vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct ABDiagram {
    pub rows: Vec<String>,
}

impl ABDiagram {
    pub fn count(&self, letter: char) -> usize {
        self.rows
            .iter()
            .flat_map(|r| r.chars())
            .filter(|&c| c == letter)
            .count()
    }

    /// Row lengths, longest first.
    pub fn shape(&self) -> Vec<usize> {
        self.rows.iter().map(String::len).collect()
    }
}

impl fmt::Display for ABDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.rows.join(","))
    }
}

fn columns(m: &MatrixQ, cols: std::ops::Range<usize>) -> MatrixQ {
    let c: Vec<Vec<Q>> = cols.map(|j| m.col(j)).collect();
    MatrixQ::from_cols(m.rows(), &c)
}

/// The ab-diagram of `n ∈ 𝔭₁`.
///
/// Since `n` swaps `V_a` and `V_b`, with `r_X(k) = rank(n^k|V_X)` the number
/// of chains with top in `V_X` and length `> k` is `r_X(k) − r_{X′}(k+1)`.
pub fn ab_diagram(f1: &FixedSubalgebra, n: &Element) -> Result<ABDiagram, FouralityError> {
    if !std::sync::Arc::ptr_eq(n.algebra(), f1.algebra()) || !f1.in_p(n) {
        return Err(FouralityError::NotInP(n.to_string()));
    }
    let m = v7_matrix(f1, n)?;
    if !m.pow(7).is_zero() {
        return Err(FouralityError::NotNilpotentOnV7(n.to_string()));
    }
    let ranges = [0..3, 3..7];
    let mut powers = vec![MatrixQ::identity(7)];
    for _ in 0..8 {
        let next = &m * powers.last().expect("nonempty");
        powers.push(next);
    }
    let r = |x: usize, k: usize| columns(&powers[k], ranges[x].clone()).rank();
    let longer_than = |x: usize, k: usize| r(x, k) - r(1 - x, k + 1);
    let mut rows = Vec::new();
    for len in (1..=7).rev() {
        for (x, letter) in ['a', 'b'].into_iter().enumerate() {
            let count = longer_than(x, len - 1) - longer_than(x, len);
            let row: String = (0..len)
                .map(|i| {
                    if (i % 2 == 0) == (letter == 'a') {
                        'a'
                    } else {
                        'b'
                    }
                })
                .collect();
            rows.extend(std::iter::repeat_n(row, count));
        }
    }
    Ok(ABDiagram { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_divisors_of_cubics() {
        // c₊²c₋: divisors c₊², c₊c₋
        let (r, n) = quadratic_divisors(&BinaryForm::from_i64(&[0, 1, 0, 0])).unwrap();
        assert_eq!((r.len(), n), (2, 0));
        // c₊(c₊² + c₋²): only the irreducible quadratic is rational
        let (r, n) = quadratic_divisors(&BinaryForm::from_i64(&[1, 0, 1, 0])).unwrap();
        assert_eq!((r, n), (vec![BinaryForm::from_i64(&[1, 0, 1])], 2));
        // c₊³: only c₊²
        let (r, n) = quadratic_divisors(&BinaryForm::from_i64(&[1, 0, 0, 0])).unwrap();
        assert_eq!((r.len(), n), (1, 0));
    }

    #[test]
    fn diagram_serializes_as_rows() {
        let d = ABDiagram {
            rows: vec!["aba".into(), "a".into(), "b".into()],
        };
        assert_eq!(serde_json::to_string(&d).unwrap(), r#"["aba","a","b"]"#);
        assert_eq!(d.to_string(), "aba,a,b");
        assert_eq!(
            (d.count('a'), d.count('b'), d.shape()),
            (3, 2, vec![3, 1, 1])
        );
    }
}
