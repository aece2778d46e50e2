use num_traits::Zero;
use proptest::prelude::*;
use slicelab::exact::{
    binary_form_gcd_factor, jordan_chevalley, modp, q, rank_kernel, rank_over_fraction_field,
    solve_linear, BinaryForm, MatrixPoly, MatrixQ, UniPoly, Q,
};

fn matrix(max_rows: usize, max_cols: usize, h: i64) -> impl Strategy<Value = MatrixQ> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(move |(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-h..=h, c), r).prop_map(|rows| {
            MatrixQ::from_rows(
                rows.into_iter()
                    .map(|r| r.into_iter().map(q).collect())
                    .collect(),
            )
        })
    })
}

/// Upper unitriangular times lower unitriangular: determinant 1.
fn unimodular(n: usize) -> impl Strategy<Value = MatrixQ> {
    proptest::collection::vec(-2i64..=2, n * n).prop_map(move |e| {
        let mut u = MatrixQ::identity(n);
        let mut l = MatrixQ::identity(n);
        for i in 0..n {
            for j in 0..n {
                if i < j {
                    u[(i, j)] = q(e[i * n + j]);
                } else if i > j {
                    l[(i, j)] = q(e[i * n + j]);
                }
            }
        }
        &u * &l
    })
}

/// A Jordan matrix with blocks of the given (eigenvalue, size).
fn jordan(blocks: &[(i64, usize)]) -> MatrixQ {
    let n: usize = blocks.iter().map(|b| b.1).sum();
    let mut m = MatrixQ::zeros(n, n);
    let mut at = 0;
    for &(ev, size) in blocks {
        for k in at..at + size {
            m[(k, k)] = q(ev);
            if k + 1 < at + size {
                m[(k, k + 1)] = q(1);
            }
        }
        at += size;
    }
    m
}

fn nonzero_form(max_deg: usize) -> impl Strategy<Value = BinaryForm> {
    (0..=max_deg)
        .prop_flat_map(|d| proptest::collection::vec(-3i64..=3, d + 1))
        .prop_filter("nonzero", |c| c.iter().any(|&x| x != 0))
        .prop_map(|c| BinaryForm::from_i64(&c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_matches_transpose_and_kernel(m in matrix(8, 8, 6)) {
        let (r, ker) = rank_kernel(&m);
        prop_assert_eq!(r, m.transpose().rank());
        prop_assert_eq!(ker.len(), m.cols() - r);
        for v in &ker {
            prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
        prop_assert_eq!(MatrixQ::from_cols(m.cols(), &ker).rank(), ker.len());
    }

    #[test]
    fn modular_rank_never_exceeds_rational_rank(m in matrix(6, 6, 20)) {
        let reduced = modp::reduce_matrix(&m).expect("integer entries reduce");
        prop_assert!(modp::rank(reduced) <= m.rank());
    }

    #[test]
    fn unimodular_inverse(p in unimodular(5)) {
        let inv = p.inverse().expect("invertible");
        prop_assert_eq!(&p * &inv, MatrixQ::identity(5));
        prop_assert!(inv.as_slice().iter().all(|x| x.is_integer()));
    }

    #[test]
    fn solutions_satisfy_the_system(m in matrix(6, 6, 5), x in proptest::collection::vec(-4i64..=4, 6)) {
        let x: Vec<Q> = x.into_iter().take(m.cols()).map(q).collect();
        prop_assume!(x.len() == m.cols());
        let b = m.mul_vec(&x);
        let sol = solve_linear(&m, &b).expect("shapes agree").expect("consistent by construction");
        prop_assert_eq!(m.mul_vec(&sol.particular), b);
    }

    #[test]
    fn jordan_chevalley_recovers_conjugated_parts(
        blocks in proptest::collection::vec((-2i64..=2, 1usize..=3), 1..=3),
        p in unimodular(9),
    ) {
        let j = jordan(&blocks);
        let n = j.rows();
        // leading n x n block of a unimodular matrix, made symmetric; singular draws are skipped
        let p = MatrixQ::from_rows((0..n).map(|i| p.row(i)[..n].to_vec()).collect());
        let p = &p.transpose() * &p;
        prop_assume!(p.rank() == n);
        let pinv = p.inverse().expect("invertible");
        let m = &(&p * &j) * &pinv;
        let (s, nil) = jordan_chevalley(&m).expect("rational eigenvalues");
        let mut d = j.clone();
        for i in 0..n.saturating_sub(1) {
            d[(i, i + 1)] = Q::zero();
        }
        prop_assert_eq!(&s, &(&(&p * &d) * &pinv));
        prop_assert_eq!(&s + &nil, m);
        prop_assert!(nil.is_nilpotent());
        prop_assert!(s.is_semisimple());
    }

    #[test]
    fn binary_gcd_contains_common_factor(
        c in nonzero_form(2),
        f in nonzero_form(2),
        g in nonzero_form(2),
    ) {
        let (cf, cg) = (f.mul(&c), g.mul(&c));
        let fac = binary_form_gcd_factor(&cf, Some(&cg)).expect("nonzero");
        prop_assert!(fac.gcd.degree() >= c.degree());
        prop_assert!(cf.exact_div(&fac.gcd).is_some());
        prop_assert!(cg.exact_div(&fac.gcd).is_some());
        prop_assert!(fac.gcd.exact_div(&c).is_some());
        let mut prod = fac.remainder.clone();
        for (pt, m) in &fac.factors {
            for _ in 0..*m {
                prod = prod.mul(&pt.linear_form());
            }
        }
        prop_assert_eq!(prod, fac.gcd);
    }

    #[test]
    fn pencil_rank_bounds_evaluations(a in matrix(4, 4, 4), b_entries in proptest::collection::vec(-4i64..=4, 16), ts in proptest::collection::vec(-30i64..=30, 6)) {
        let b = MatrixQ::from_rows(
            (0..a.rows()).map(|i| (0..a.cols()).map(|j| q(b_entries[i * 4 + j])).collect()).collect(),
        );
        let pencil = MatrixPoly::linear_pencil(&a, &b);
        let generic = rank_over_fraction_field(&pencil);
        for t in &ts {
            prop_assert!(pencil.eval(&q(*t)).rank() <= generic);
        }
        // a polynomial minor vanishing at more points than its degree vanishes identically
        let best = (-10..=10).map(|t| pencil.eval(&q(t)).rank()).max().unwrap_or(0);
        prop_assert_eq!(best, generic);
    }
}

#[test]
fn charpoly_of_companion_matrix() {
    // x^3 - 2x + 5
    let m = MatrixQ::from_i64(&[&[0, 0, -5], &[1, 0, 2], &[0, 1, 0]]);
    assert_eq!(m.charpoly().unwrap(), UniPoly::from_i64(&[5, -2, 0, 1]));
}
