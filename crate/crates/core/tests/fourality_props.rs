use std::sync::OnceLock;

use proptest::prelude::*;
use slicelab::chevalley::{chevalley_algebra, is_nilpotent, Element, RootType};
use slicelab::exact::q;
use slicelab::fourality::{
    ab_diagram, build_fourality_so8, fiber_over, fixed_point_subalgebra, match_g2_models,
    rank_on_v7, tower_consistent, v7_matrix, FactorGroup, FixedSubalgebra, FouralityAlgebra,
    Projection,
};

struct Tower {
    so8: FouralityAlgebra,
    g1: FixedSubalgebra,
    g2: FixedSubalgebra,
    pi: Projection,
}

fn tower() -> &'static Tower {
    static T: OnceLock<Tower> = OnceLock::new();
    T.get_or_init(|| {
        let so8 = build_fourality_so8().unwrap();
        let g1 = fixed_point_subalgebra(&so8, FactorGroup::SwapC1C2).unwrap();
        let g2 = fixed_point_subalgebra(&so8, FactorGroup::S3).unwrap();
        let pi = Projection::new(&g1, &g2).unwrap();
        Tower { so8, g1, g2, pi }
    })
}

fn e1(s: &str) -> Element {
    tower().g1.element(s).unwrap()
}

fn e2(s: &str) -> Element {
    tower().g2.element(s).unwrap()
}

/// `μ ⊗ (c₊ ⊗ ℓ₊ + c₋ ⊗ ℓ₋)` in `p₁`, with `μ = Σ μ_k c₊^{2−k} c₋^k` and
/// `ℓ± = (d₊, d₋)` coefficients.
fn pure_tensor(mu: [i64; 3], lp: [i64; 2], lm: [i64; 2]) -> Element {
    let g1 = &tower().g1;
    let mut c = vec![q(0); g1.dim()];
    for (k, m) in mu.iter().enumerate() {
        for sd in 0..2 {
            c[g1.k_dim() + 4 * k + sd] += q(m * lp[sd]);
            c[g1.k_dim() + 4 * k + 2 + sd] += q(m * lm[sd]);
        }
    }
    Element::new(g1.algebra(), c)
}

fn sorted(mut v: Vec<Element>) -> Vec<Element> {
    v.sort_by(|a, b| a.coeffs().cmp(b.coeffs()));
    v
}

#[test]
fn tower_dimensions() {
    let t = tower();
    assert_eq!(t.so8.algebra().dim(), 28);
    assert!(t.so8.form_invariant());
    assert_eq!((t.g1.dim(), t.g1.k_dim(), t.g1.p_dim()), (21, 9, 12));
    assert_eq!((t.g2.dim(), t.g2.k_dim(), t.g2.p_dim()), (14, 6, 8));
    for a in [t.so8.algebra(), t.g1.algebra(), t.g2.algebra()] {
        assert!(a.check_jacobi().is_ok());
        assert_eq!(a.killing_matrix().rank(), a.dim());
    }
    assert!(tower_consistent(&t.so8, &t.g1, &t.g2));
}

#[test]
fn fixed_algebra_has_g2_roots() {
    let chev = chevalley_algebra(RootType::G2).unwrap();
    let m = match_g2_models(&tower().g2, &chev).unwrap();
    assert_eq!(m.roots.len(), 12);
    assert_eq!(m.length_ratio, q(3));
    assert_eq!(m.cartan_dim, 2);
}

#[test]
fn projection_of_pure_tensors() {
    let pi = &tower().pi;
    assert_eq!(pi.apply(&e1("s_pp_p_p")).unwrap(), e2("c_ppp_p"));
    assert_eq!(pi.apply(&e1("s_pm_p_p")).unwrap(), e2("c_ppm_p"));
    assert_eq!(
        pi.apply(&e1("ec")).unwrap(),
        e2("ec").scale(&slicelab::exact::qr(2, 3))
    );
    assert_eq!(
        pi.apply(&e1("e3")).unwrap(),
        e2("ec").scale(&slicelab::exact::qr(1, 3))
    );
}

#[test]
fn fibre_table() {
    let t = tower();
    for (y, card, points) in [
        ("c_ppm_p + c_pmm_m", 1, vec!["s_pm_p_p + s_pm_m_m"]),
        ("c_ppp_p + c_ppm_m", 1, vec!["s_pp_p_p + s_pp_m_m"]),
        (
            "c_ppm_p + c_pmm_p",
            3,
            vec![
                "s_pm_p_p + s_mm_p_p",
                "s_pm_p_p + s_pm_m_p",
                "s_pp_m_p + s_pm_m_p",
            ],
        ),
        ("c_ppm_p", 2, vec!["s_pm_p_p", "s_pp_m_p"]),
        ("c_ppp_p", 1, vec!["s_pp_p_p"]),
        ("0", 1, vec!["0"]),
    ] {
        let f = fiber_over(&t.g1, &t.g2, &e2(y)).unwrap();
        assert_eq!(f.cardinality(), card, "{y}");
        assert_eq!(
            f.points,
            sorted(points.iter().map(|p| e1(p)).collect()),
            "{y}"
        );
    }
}

#[test]
fn ab_diagrams_of_the_dimension_5_fibres() {
    let t = tower();
    for (y, diagram) in [
        ("c_ppp_p + c_ppm_m", "aba,a,b,b,b"),
        ("c_ppm_p + c_pmm_p", "bab,a,a,b,b"),
    ] {
        for z in fiber_over(&t.g1, &t.g2, &e2(y)).unwrap().points {
            assert_eq!(ab_diagram(&t.g1, &z).unwrap().to_string(), diagram, "{z}");
        }
    }
    assert!(ab_diagram(&t.g1, &e1("ec")).is_err());
}

fn nonzero(n: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-3i64..=3, n).prop_filter("nonzero", |v| v.iter().any(|&x| x != 0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// The solver's fibre contains every pure tensor of small height over
    /// `y`, found by brute force.
    #[test]
    fn fibre_solver_matches_brute_force(mu in nonzero(3), l in nonzero(4)) {
        let t = tower();
        let z0 = pure_tensor([mu[0], mu[1], mu[2]], [l[0], l[1]], [l[2], l[3]]);
        prop_assert!(rank_on_v7(&t.g1, &z0).unwrap() <= 2);
        let y = t.pi.apply(&z0).unwrap();
        let fiber = fiber_over(&t.g1, &t.g2, &y).unwrap();
        prop_assert!(fiber.points.contains(&z0));
        for z in &fiber.points {
            prop_assert_eq!(&t.pi.apply(z).unwrap(), &y);
        }
        let r = -2..=2i64;
        for m0 in r.clone() { for m1 in r.clone() { for m2 in r.clone() {
            if [m0, m1, m2] == [0, 0, 0] { continue; }
            for a in r.clone() { for b in r.clone() { for c in r.clone() { for d in r.clone() {
                let z = pure_tensor([m0, m1, m2], [a, b], [c, d]);
                if t.pi.apply(&z).unwrap() == y {
                    prop_assert!(fiber.points.contains(&z), "{} missing", z);
                }
            }}}}
        }}}
    }

    #[test]
    fn projection_is_equivariant(
        v in proptest::collection::vec(-3i64..=3, 6),
        x in proptest::collection::vec(-3i64..=3, 21),
    ) {
        let t = tower();
        let v = Element::new(t.g2.algebra(), v.into_iter().chain(std::iter::repeat_n(0, 8)).map(q).collect());
        let x = Element::new(t.g1.algebra(), x.into_iter().map(q).collect());
        let v1 = t.pi.include(&v).unwrap();
        prop_assert_eq!(t.pi.apply(&v1.bracket(&x).unwrap()).unwrap(), v.bracket(&t.pi.apply(&x).unwrap()).unwrap());
        let px = t.pi.apply(&x).unwrap();
        prop_assert_eq!(t.pi.apply(&t.pi.include(&px).unwrap()).unwrap(), px);
    }

    /// A nilpotent in `p₁` swaps the 3- and 4-dimensional eigenspaces of
    /// `V₇`, so its diagram has 3 a's, 4 b's and the Jordan type as shape.
    #[test]
    fn ab_diagram_shape_is_jordan_type(mu in nonzero(3), l in nonzero(4), extra in proptest::collection::vec(-1i64..=1, 12)) {
        let t = tower();
        let mut z = pure_tensor([mu[0], mu[1], mu[2]], [l[0], l[1]], [l[2], l[3]]);
        // small perturbation inside p1; keep only nilpotent results
        let mut c = z.coeffs().to_vec();
        for (i, e) in extra.iter().enumerate() {
            if i % 5 == 0 {
                c[t.g1.k_dim() + i] += q(*e);
            }
        }
        let zp = Element::new(t.g1.algebra(), c);
        if is_nilpotent(&zp) {
            z = zp;
        }
        prop_assume!(is_nilpotent(&z));
        let d = ab_diagram(&t.g1, &z).unwrap();
        prop_assert_eq!((d.count('a'), d.count('b')), (3, 4));
        let m = v7_matrix(&t.g1, &z).unwrap();
        let ranks: Vec<usize> = (0..=8).map(|k| m.pow(k).rank()).collect();
        let mut jordan = Vec::new();
        for size in (1..=7).rev() {
            let at_least = |k: usize| ranks[k - 1] - ranks[k];
            jordan.extend(std::iter::repeat_n(size, at_least(size) - at_least(size + 1)));
        }
        prop_assert_eq!(d.shape(), jordan);
        for row in &d.rows {
            prop_assert!(!row.contains("aa") && !row.contains("bb"));
        }
    }
}
