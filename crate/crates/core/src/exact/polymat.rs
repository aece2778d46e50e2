use super::{q, MatrixQ, UniPoly, Q};

/// Dense matrix over `Q[λ]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatrixPoly {
    rows: usize,
    cols: usize,
    data: Vec<UniPoly>,
}

impl MatrixPoly {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatrixPoly {
            rows,
            cols,
            data: vec![UniPoly::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<UniPoly>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        MatrixPoly {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// `A + λ·B`.
    pub fn linear_pencil(a: &MatrixQ, b: &MatrixQ) -> Self {
        assert_eq!((a.rows(), a.cols()), (b.rows(), b.cols()));
        let mut m = Self::zeros(a.rows(), a.cols());
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                m.data[i * a.cols() + j] = UniPoly::new(vec![a[(i, j)].clone(), b[(i, j)].clone()]);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &UniPoly {
        &self.data[i * self.cols + j]
    }

    pub fn max_degree(&self) -> usize {
        self.data
            .iter()
            .filter_map(UniPoly::degree)
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, x: &Q) -> MatrixQ {
        let mut m = MatrixQ::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self.get(i, j).eval(x);
            }
        }
        m
    }
}

/// Rank over the rational function field `Q(λ)`, by fraction-free
/// (Bareiss) elimination in `Q[λ]` with full pivoting. Every division in
/// the recurrence is exact, so no rational functions are ever formed.
pub fn rank_over_fraction_field(m: &MatrixPoly) -> usize {
    let (r, c) = (m.rows, m.cols);
    let mut a: Vec<Vec<UniPoly>> = (0..r)
        .map(|i| (0..c).map(|j| m.get(i, j).clone()).collect())
        .collect();
    let mut prev = UniPoly::constant(q(1));
    let mut rank = 0;
    for k in 0..r.min(c) {
        // lowest-degree nonzero pivot keeps intermediate degrees small
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(k) {
            for (j, e) in row.iter().enumerate().skip(k) {
                if let Some(d) = e.degree() {
                    if best.is_none_or(|(_, _, bd)| d < bd) {
                        best = Some((i, j, d));
                    }
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        a.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        rank += 1;
        let piv = a[k][k].clone();
        for i in k + 1..r {
            for j in k + 1..c {
                let num = &(&piv * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = UniPoly::zero();
        }
        prev = piv;
    }
    rank
}

/// Generic rank by evaluation: a nonzero minor of size `s` has degree at
/// most `s·deg`, so it cannot vanish at `min(r, c)·deg + 1` distinct points.
/// The maximum rank over those points is therefore the generic rank.
pub fn generic_rank_by_evaluation(m: &MatrixPoly) -> usize {
    let n = m.rows.min(m.cols);
    let points = n * m.max_degree() + 1;
    let mut best = 0;
    for t in 0..points {
        let rk = m.eval(&q(t as i64)).rank();
        best = best.max(rk);
        if best == n {
            break;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_i64(c)
    }

    #[test]
    fn spec_examples() {
        let m = MatrixPoly::from_rows(vec![
            vec![p(&[1]), p(&[0, 1])],
            vec![p(&[0, 1]), p(&[0, 0, 1])],
        ]);
        assert_eq!(rank_over_fraction_field(&m), 1);
        assert_eq!(generic_rank_by_evaluation(&m), 1);
        let m = MatrixPoly::from_rows(vec![vec![p(&[1]), p(&[0, 1])], vec![p(&[]), p(&[1])]]);
        assert_eq!(rank_over_fraction_field(&m), 2);
        let m = MatrixPoly::from_rows(vec![vec![p(&[0, 1])]]);
        assert_eq!(rank_over_fraction_field(&m), 1);
    }

    #[test]
    fn rank_drops_only_at_special_values() {
        // det = λ(λ - 1): generic rank 2, rank 1 at λ = 0 and λ = 1
        let m = MatrixPoly::from_rows(vec![vec![p(&[0, 1]), p(&[1])], vec![p(&[]), p(&[-1, 1])]]);
        assert_eq!(rank_over_fraction_field(&m), 2);
        assert_eq!(m.eval(&q(0)).rank(), 1);
        assert_eq!(m.eval(&q(1)).rank(), 1);
    }
}
