use std::fmt::Write as _;
use std::sync::{Arc, OnceLock};

use num_traits::Zero;

use super::{ChevalleyError, RootSystem};
use crate::exact::{fmt_q, parse_q, MatrixQ, Q};

/// Sparse structure constants: `entries[i*n + j]` lists the nonzero
/// coordinates `(k, c)` of `[b_i, b_j]`.
pub type StructureTable = Vec<Vec<(usize, Q)>>;

/// A finite-dimensional Lie algebra given by basis labels and exact
/// structure constants. Construction verifies antisymmetry and the Jacobi
/// identity on all basis triples and caches the Killing form.
pub struct LieAlgebra {
    name: String,
    labels: Vec<String>,
    table: StructureTable,
    killing: MatrixQ,
    root_system: Option<RootSystem>,
    pullback: OnceLock<Option<AdPullback>>,
}

/// Left inverse of `x ↦ ad(x)` restricted to a set of matrix positions
/// whose rows of the linear map are independent.
pub(crate) struct AdPullback {
    pub positions: Vec<(usize, usize)>,
    pub inverse: MatrixQ,
}

impl std::fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LieAlgebra")
            .field("name", &self.name)
            .field("dim", &self.dim())
            .finish()
    }
}

impl LieAlgebra {
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        table: StructureTable,
    ) -> Result<Arc<Self>, ChevalleyError> {
        Self::with_roots(name, labels, table, None)
    }

    pub(crate) fn with_roots(
        name: impl Into<String>,
        labels: Vec<String>,
        table: StructureTable,
        root_system: Option<RootSystem>,
    ) -> Result<Arc<Self>, ChevalleyError> {
        let n = labels.len();
        if table.len() != n * n {
            return Err(ChevalleyError::Construction(format!(
                "structure table has {} entries, expected {}",
                table.len(),
                n * n
            )));
        }
        let mut alg = LieAlgebra {
            name: name.into(),
            labels,
            table,
            killing: MatrixQ::zeros(0, 0),
            root_system,
            pullback: OnceLock::new(),
        };
        alg.check_antisymmetry()?;
        alg.check_jacobi()?;
        alg.killing = alg.compute_killing();
        Ok(Arc::new(alg))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn root_system(&self) -> Option<&RootSystem> {
        self.root_system.as_ref()
    }

    /// Nonzero coordinates of `[b_i, b_j]`.
    pub fn structure(&self, i: usize, j: usize) -> &[(usize, Q)] {
        &self.table[i * self.dim() + j]
    }

    /// Killing form matrix in the algebra basis.
    pub fn killing_matrix(&self) -> &MatrixQ {
        &self.killing
    }

    /// Bracket of coefficient vectors.
    pub fn bracket_vec(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let n = self.dim();
        let mut out = vec![Q::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, s) in self.structure(i, j) {
                    out[*k] += &c * s;
                }
            }
        }
        out
    }

    /// `ad(x)`; column `j` holds `[x, b_j]`.
    pub fn ad_vec(&self, x: &[Q]) -> MatrixQ {
        let n = self.dim();
        let mut m = MatrixQ::zeros(n, n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..n {
                for (k, s) in self.structure(i, j) {
                    m[(*k, j)] += xi * s;
                }
            }
        }
        m
    }

    fn check_antisymmetry(&self) -> Result<(), ChevalleyError> {
        let n = self.dim();
        for i in 0..n {
            for j in i..n {
                let a = self.dense(i, j);
                let b = self.dense(j, i);
                if a.iter().zip(&b).any(|(x, y)| !(x + y).is_zero()) {
                    return Err(ChevalleyError::Construction(format!(
                        "antisymmetry fails on ({}, {})",
                        self.labels[i], self.labels[j]
                    )));
                }
            }
        }
        Ok(())
    }

    fn dense(&self, i: usize, j: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim()];
        for (k, c) in self.structure(i, j) {
            v[*k] += c;
        }
        v
    }

    /// Exhaustive Jacobi check on basis triples `i < j < k`. Construction
    /// already enforces it; exposed for independent re-verification.
    pub fn check_jacobi(&self) -> Result<(), ChevalleyError> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                let bij = self.dense(i, j);
                for k in j + 1..n {
                    let mut acc = vec![Q::zero(); n];
                    self.add_bracket_basis(&mut acc, &bij, k);
                    self.add_bracket_basis(&mut acc, &self.dense(j, k), i);
                    self.add_bracket_basis(&mut acc, &self.dense(k, i), j);
                    if acc.iter().any(|c| !c.is_zero()) {
                        return Err(ChevalleyError::Construction(format!(
                            "Jacobi identity fails on ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `acc += [v, b_k]`.
    fn add_bracket_basis(&self, acc: &mut [Q], v: &[Q], k: usize) {
        for (m, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (t, s) in self.structure(m, k) {
                acc[*t] += c * s;
            }
        }
    }

    fn compute_killing(&self) -> MatrixQ {
        let n = self.dim();
        let ads: Vec<MatrixQ> = (0..n)
            .map(|i| self.ad_vec(&crate::exact::unit_vec(n, i)))
            .collect();
        let mut k = MatrixQ::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let mut t = Q::zero();
                for a in 0..n {
                    for b in 0..n {
                        let x = &ads[i][(a, b)];
                        if x.is_zero() {
                            continue;
                        }
                        let y = &ads[j][(b, a)];
                        if !y.is_zero() {
                            t += x * y;
                        }
                    }
                }
                k[(i, j)] = t.clone();
                k[(j, i)] = t;
            }
        }
        k
    }

    pub(crate) fn ad_pullback(&self) -> Option<&AdPullback> {
        self.pullback
            .get_or_init(|| {
                // Row (k, j) of the linear map x ↦ ad(x) has entries c_{ij}^k.
                let n = self.dim();
                let mut chosen: Vec<(usize, usize)> = Vec::new();
                let mut rows: Vec<Vec<Q>> = Vec::new();
                // incremental echelon form of the rows chosen so far
                let mut echelon: Vec<(usize, Vec<Q>)> = Vec::new();
                'outer: for j in 0..n {
                    for k in 0..n {
                        let row: Vec<Q> = (0..n)
                            .map(|i| {
                                self.structure(i, j)
                                    .iter()
                                    .find(|(t, _)| *t == k)
                                    .map_or_else(Q::zero, |(_, c)| c.clone())
                            })
                            .collect();
                        let mut red = row.clone();
                        for (p, e) in &echelon {
                            if !red[*p].is_zero() {
                                let f = red[*p].clone();
                                for (x, y) in red.iter_mut().zip(e) {
                                    *x -= &f * y;
                                }
                            }
                        }
                        let Some(p) = red.iter().position(|c| !c.is_zero()) else {
                            continue;
                        };
                        let inv = red[p].recip();
                        red.iter_mut().for_each(|x| *x *= &inv);
                        echelon.push((p, red));
                        rows.push(row);
                        chosen.push((k, j));
                        if rows.len() == n {
                            break 'outer;
                        }
                    }
                }
                if rows.len() < n {
                    return None;
                }
                let inverse = MatrixQ::from_rows(rows).inverse().ok()?;
                Some(AdPullback {
                    positions: chosen,
                    inverse,
                })
            })
            .as_ref()
    }

    /// Text serialization: a header, the labels, then one line
    /// `i j -> (k, n/d) ...` per nonzero bracket with `i < j`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "algebra {}", self.name).unwrap();
        writeln!(s, "labels {}", self.labels.join(" ")).unwrap();
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                let e = self.structure(i, j);
                if e.is_empty() {
                    continue;
                }
                let terms: Vec<String> = e
                    .iter()
                    .map(|(k, c)| format!("({k}, {})", fmt_q(c)))
                    .collect();
                writeln!(s, "{i} {j} -> {}", terms.join(" ")).unwrap();
            }
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Arc<Self>, ChevalleyError> {
        Self::parse_lines(&mut text.lines().map(str::trim).filter(|l| !l.is_empty()))
    }

    pub(crate) fn parse_lines(
        lines: &mut dyn Iterator<Item = &str>,
    ) -> Result<Arc<Self>, ChevalleyError> {
        let bad = |m: &str| ChevalleyError::Parse(m.to_string());
        let name = lines
            .next()
            .and_then(|l| l.strip_prefix("algebra "))
            .ok_or_else(|| bad("missing 'algebra' header"))?
            .trim()
            .to_string();
        let labels: Vec<String> = lines
            .next()
            .and_then(|l| l.strip_prefix("labels"))
            .ok_or_else(|| bad("missing 'labels' line"))?
            .split_whitespace()
            .map(str::to_string)
            .collect();
        let n = labels.len();
        let mut table: StructureTable = vec![Vec::new(); n * n];
        let mut rest: Vec<&str> = Vec::new();
        for line in &mut *lines {
            if line == "end" {
                break;
            }
            rest.push(line);
        }
        for line in rest {
            let (lhs, rhs) = line.split_once("->").ok_or_else(|| bad(line))?;
            let ij: Vec<usize> = lhs
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| bad(line)))
                .collect::<Result<_, _>>()?;
            let [i, j] = ij[..] else {
                return Err(bad(line));
            };
            if i >= n || j >= n {
                return Err(bad(line));
            }
            let mut entries = Vec::new();
            for term in rhs.split(')').map(str::trim).filter(|t| !t.is_empty()) {
                let term = term.strip_prefix('(').ok_or_else(|| bad(line))?;
                let (k, c) = term.split_once(',').ok_or_else(|| bad(line))?;
                let k: usize = k.trim().parse().map_err(|_| bad(line))?;
                let c = parse_q(c).ok_or_else(|| bad(line))?;
                if k >= n {
                    return Err(bad(line));
                }
                entries.push((k, c));
            }
            table[j * n + i] = entries.iter().map(|(k, c)| (*k, -c)).collect();
            table[i * n + j] = entries;
        }
        Self::new(name, labels, table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    fn sl2() -> Arc<LieAlgebra> {
        // basis h, e, f
        let mut t: StructureTable = vec![Vec::new(); 9];
        let mut set = |i: usize, j: usize, v: Vec<(usize, Q)>| {
            t[j * 3 + i] = v.iter().map(|(k, c)| (*k, -c)).collect();
            t[i * 3 + j] = v;
        };
        set(0, 1, vec![(1, q(2))]);
        set(0, 2, vec![(2, q(-2))]);
        set(1, 2, vec![(0, q(1))]);
        LieAlgebra::new("sl2", vec!["h".into(), "e".into(), "f".into()], t).unwrap()
    }

    #[test]
    fn killing_of_sl2() {
        let a = sl2();
        assert_eq!(a.killing_matrix()[(0, 0)], q(8));
        assert_eq!(a.killing_matrix()[(1, 2)], q(4));
    }

    #[test]
    fn jacobi_violation_detected() {
        let mut t: StructureTable = vec![Vec::new(); 9];
        // [a,b] = a, [b,c] = b, [a,c] = 0 breaks Jacobi
        let mut set = |i: usize, j: usize, v: Vec<(usize, Q)>| {
            t[j * 3 + i] = v.iter().map(|(k, c)| (*k, -c)).collect();
            t[i * 3 + j] = v;
        };
        set(0, 1, vec![(0, q(1))]);
        set(1, 2, vec![(1, q(1))]);
        let r = LieAlgebra::new("bad", vec!["a".into(), "b".into(), "c".into()], t);
        assert!(matches!(r, Err(ChevalleyError::Construction(_))));
    }

    #[test]
    fn text_roundtrip() {
        let a = sl2();
        let b = LieAlgebra::from_text(&a.to_text()).unwrap();
        assert_eq!(a.to_text(), b.to_text());
        assert_eq!(a.killing_matrix(), b.killing_matrix());
    }
}
