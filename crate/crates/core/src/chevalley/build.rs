//! Chevalley bases from root systems.
//!
//! Simply-laced types use the Frenkel–Kac sign cocycle: `[E_α, E_β] =
//! ε(α, β) E_{α+β}` with `ε` bimultiplicative, `ε(α_i, α_i) = −1` and
//! `ε(α_i, α_j) = −1` exactly on oriented Dynkin edges `i → j`. The D4
//! orientation points from the trivalent node outwards, so `ε` is invariant
//! under every permutation of the outer nodes. G2 and B3 are then obtained
//! as fixed points of the triality and of the outer node swap, with root
//! vectors given by orbit sums.

use std::sync::Arc;

use num_traits::{One, Zero};

use super::{ChevalleyError, LieAlgebra, RootSystem, RootType, StructureTable};
use crate::exact::{q, Q};

pub fn chevalley_algebra(kind: RootType) -> Result<Arc<LieAlgebra>, ChevalleyError> {
    let alg = match kind {
        RootType::A1 | RootType::A1xA1 | RootType::D4 => simply_laced(kind)?,
        RootType::G2 => fold(&simply_laced(RootType::D4)?, &[0, 1, 0, 0], kind)?,
        RootType::B3 => fold(&simply_laced(RootType::D4)?, &[0, 1, 2, 2], kind)?,
    };
    validate_chevalley(&alg)?;
    Ok(alg)
}

fn labels_for(rank: usize, npos: usize) -> Vec<String> {
    let mut labels: Vec<String> = (1..=rank).map(|i| format!("h{i}")).collect();
    labels.extend((1..=npos).map(|i| format!("x{i}")));
    labels.extend((1..=npos).map(|i| format!("y{i}")));
    labels
}

fn oriented_edges(kind: RootType) -> Vec<(usize, usize)> {
    match kind {
        RootType::D4 => vec![(1, 0), (1, 2), (1, 3)],
        _ => Vec::new(),
    }
}

/// Basis order `h_1..h_r, x_α (α > 0), y_α = −E_{−α}`.
fn simply_laced(kind: RootType) -> Result<Arc<LieAlgebra>, ChevalleyError> {
    let rs = RootSystem::new(kind);
    let r = rs.rank();
    let pos = rs.positive().to_vec();
    let np = pos.len();
    let n = r + 2 * np;
    let edges = oriented_edges(kind);
    let eps = |a: &[i64], b: &[i64]| -> i64 {
        let mut odd = 0i64;
        for i in 0..r {
            odd += a[i] * b[i];
            for &(s, t) in &edges {
                if s == i {
                    odd += a[s] * b[t];
                }
            }
        }
        if odd.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    };
    let roots = rs.roots();
    // basis index of the root vector E_γ, and the sign relating it to the
    // Chevalley basis element (y_α = −E_{−α})
    let root_basis = |idx: usize| -> (usize, i64) {
        if idx < np {
            (r + idx, 1)
        } else {
            (r + idx, -1)
        }
    };
    let mut table: StructureTable = vec![Vec::new(); n * n];
    for (ai, a) in roots.iter().enumerate() {
        let (ba, sa) = root_basis(ai);
        for i in 0..r {
            let c = rs.pairing(a, i);
            if c != 0 {
                table[i * n + ba] = vec![(ba, q(c))];
                table[ba * n + i] = vec![(ba, q(-c))];
            }
        }
        for (bi, b) in roots.iter().enumerate() {
            let (bb, sb) = root_basis(bi);
            let sum: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            let entries = if sum.iter().all(|&c| c == 0) {
                // [E_α, E_−α] = −h_α, rescaled to the Chevalley basis
                a.iter()
                    .enumerate()
                    .filter(|(_, c)| **c != 0)
                    .map(|(j, c)| (j, q(-c * sa * sb)))
                    .collect()
            } else if let Some(ci) = rs.index_of(&sum) {
                let (bc, sc) = root_basis(ci);
                vec![(bc, q(eps(a, b) * sa * sb * sc))]
            } else {
                Vec::new()
            };
            table[ba * n + bb] = entries;
        }
    }
    LieAlgebra::with_roots(kind.name(), labels_for(r, np), table, Some(rs))
}

/// Fixed points of the diagram automorphism permuting simple nodes within
/// the classes given by `orbit_of` (node `i` lies in class `orbit_of[i]`).
fn fold(
    parent: &Arc<LieAlgebra>,
    orbit_of: &[usize],
    kind: RootType,
) -> Result<Arc<LieAlgebra>, ChevalleyError> {
    let prs = parent.root_system().expect("parent built from roots");
    let pr = prs.rank();
    let pnp = prs.positive().len();
    let rs = RootSystem::new(kind);
    let r = rs.rank();
    let np = rs.positive().len();
    let n = r + 2 * np;
    let pn = parent.dim();
    assert_eq!(orbit_of.iter().max().map(|m| m + 1), Some(r));
    let restrict = |c: &[i64]| -> Vec<i64> {
        let mut v = vec![0; r];
        for (i, ci) in c.iter().enumerate() {
            v[orbit_of[i]] += ci;
        }
        v
    };
    // folded basis as vectors in the parent
    let mut basis: Vec<Vec<Q>> = Vec::with_capacity(n);
    for k in 0..r {
        let mut v = vec![Q::zero(); pn];
        for i in 0..pr {
            if orbit_of[i] == k {
                v[i] = Q::one();
            }
        }
        basis.push(v);
    }
    for sign in [0usize, 1] {
        for gamma in rs.positive() {
            let mut v = vec![Q::zero(); pn];
            let mut hits = 0;
            for (pi, beta) in prs.positive().iter().enumerate() {
                if restrict(beta) == *gamma {
                    v[pr + pi + sign * pnp] = Q::one();
                    hits += 1;
                }
            }
            if hits == 0 {
                return Err(ChevalleyError::Construction(format!(
                    "folded root {gamma:?} has no preimage"
                )));
            }
            basis.push(v);
        }
    }
    // Supports are disjoint with unit coefficients, so the coordinate of a
    // fixed vector on basis element b is its entry at any support index of b.
    let lead: Vec<usize> = basis
        .iter()
        .map(|v| v.iter().position(|c| !c.is_zero()).unwrap())
        .collect();
    let express = |w: &[Q]| -> Result<Vec<(usize, Q)>, ChevalleyError> {
        let mut entries = Vec::new();
        let mut rebuilt = vec![Q::zero(); pn];
        for (k, &l) in lead.iter().enumerate() {
            if !w[l].is_zero() {
                for (x, y) in rebuilt.iter_mut().zip(&basis[k]) {
                    *x += &w[l] * y;
                }
                entries.push((k, w[l].clone()));
            }
        }
        if rebuilt != w {
            return Err(ChevalleyError::Construction(
                "bracket leaves the fixed subalgebra".into(),
            ));
        }
        Ok(entries)
    };
    let mut table: StructureTable = vec![Vec::new(); n * n];
    for i in 0..n {
        for j in 0..n {
            table[i * n + j] = express(&parent.bracket_vec(&basis[i], &basis[j]))?;
        }
    }
    LieAlgebra::with_roots(kind.name(), labels_for(r, np), table, Some(rs))
}

/// Structure constants are integers, `h_i` acts on `x_γ` by `⟨γ, α_i^∨⟩`,
/// `(x_i, h_i, y_i)` is an sl2-triple for each simple root and the Killing
/// form is nondegenerate.
fn validate_chevalley(alg: &LieAlgebra) -> Result<(), ChevalleyError> {
    let fail = |m: String| Err(ChevalleyError::Construction(m));
    let rs = alg.root_system().expect("root data");
    let r = rs.rank();
    let np = rs.positive().len();
    let n = alg.dim();
    for i in 0..n {
        for j in 0..n {
            if alg.structure(i, j).iter().any(|(_, c)| !c.is_integer()) {
                return fail(format!(
                    "non-integral constant in [{}, {}]",
                    alg.labels()[i],
                    alg.labels()[j]
                ));
            }
        }
    }
    for (gi, gamma) in rs.roots().iter().enumerate() {
        for i in 0..r {
            let expect = rs.pairing(gamma, i);
            let got = alg.structure(i, r + gi);
            let ok = if expect == 0 {
                got.is_empty()
            } else {
                got == [(r + gi, q(expect))]
            };
            if !ok {
                return fail(format!(
                    "h{} does not act on {} by its root value",
                    i + 1,
                    alg.labels()[r + gi]
                ));
            }
        }
    }
    for i in 0..r {
        let (x, y) = (r + i, r + np + i);
        let xy = alg.structure(x, y);
        let hx = alg.structure(i, x);
        let hy = alg.structure(i, y);
        if xy != [(i, q(1))] || hx != [(x, q(2))] || hy != [(y, q(-2))] {
            return fail(format!("(x{0}, h{0}, y{0}) is not an sl2-triple", i + 1));
        }
    }
    if alg.killing_matrix().rank() != n {
        return fail("Killing form is degenerate".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        let dims: Vec<usize> = RootType::ALL
            .iter()
            .map(|&t| chevalley_algebra(t).unwrap().dim())
            .collect();
        assert_eq!(dims, vec![3, 6, 14, 21, 28]);
    }

    #[test]
    fn a1_killing() {
        let a = chevalley_algebra(RootType::A1).unwrap();
        assert_eq!(a.killing_matrix()[(0, 0)], q(8));
    }
}
