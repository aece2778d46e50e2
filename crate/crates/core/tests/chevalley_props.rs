use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use slicelab::chevalley::{
    centralizer, chevalley_algebra, derived_algebra, is_nilpotent, is_semisimple,
    jordan_decomposition, Element, LieAlgebra, RootType, Subspace,
};
use slicelab::exact::q;

fn g2() -> &'static Arc<LieAlgebra> {
    static G2: OnceLock<Arc<LieAlgebra>> = OnceLock::new();
    G2.get_or_init(|| chevalley_algebra(RootType::G2).unwrap())
}

fn b3() -> &'static Arc<LieAlgebra> {
    static B3: OnceLock<Arc<LieAlgebra>> = OnceLock::new();
    B3.get_or_init(|| chevalley_algebra(RootType::B3).unwrap())
}

fn element(alg: &'static Arc<LieAlgebra>, h: i64) -> impl Strategy<Value = Element> {
    proptest::collection::vec(-h..=h, alg.dim())
        .prop_map(move |c| Element::new(alg, c.into_iter().map(q).collect()))
}

#[test]
fn dimensions_and_root_counts() {
    for (kind, dim, roots) in [
        (RootType::A1, 3, 2),
        (RootType::A1xA1, 6, 4),
        (RootType::G2, 14, 12),
        (RootType::B3, 21, 18),
        (RootType::D4, 28, 24),
    ] {
        let alg = chevalley_algebra(kind).unwrap();
        assert_eq!(alg.dim(), dim, "{kind}");
        assert_eq!(alg.root_system().unwrap().roots().len(), roots, "{kind}");
        assert!(alg.check_jacobi().is_ok(), "{kind}");
        assert_eq!(alg.killing_matrix().rank(), dim, "{kind}");
        assert_eq!(
            derived_algebra(&Subspace::whole(&alg)).dim(),
            dim,
            "{kind} is perfect"
        );
    }
}

#[test]
fn g2_cartan_matrix_and_root_lengths() {
    let rs = g2().root_system().unwrap().clone();
    let lengths: Vec<i64> = rs.positive().iter().map(|r| rs.inner(r, r)).collect();
    assert_eq!(lengths.iter().filter(|&&l| l == 2).count(), 3);
    assert_eq!(lengths.iter().filter(|&&l| l == 6).count(), 3);
    let c = rs.cartan();
    assert_eq!(c[0][0] * c[1][1] - c[0][1] * c[1][0], 1);
}

#[test]
fn parse_display_roundtrip() {
    let alg = g2();
    for s in ["x5 + y3", "x2 + x5", "2 h1 - 3/4 y6", "0"] {
        let x = Element::parse(alg, s).unwrap();
        assert_eq!(Element::parse(alg, &x.to_string()).unwrap(), x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bracket_is_antisymmetric_and_satisfies_jacobi(x in element(g2(), 3), y in element(g2(), 3), z in element(g2(), 3)) {
        prop_assert_eq!(x.bracket(&y).unwrap(), -&y.bracket(&x).unwrap());
        let jac = &(&x.bracket(&y.bracket(&z).unwrap()).unwrap() + &y.bracket(&z.bracket(&x).unwrap()).unwrap())
            + &z.bracket(&x.bracket(&y).unwrap()).unwrap();
        prop_assert!(jac.is_zero());
    }

    #[test]
    fn killing_form_is_invariant(x in element(b3(), 2), y in element(b3(), 2), z in element(b3(), 2)) {
        let lhs = x.bracket(&y).unwrap().killing(&z).unwrap();
        let rhs = x.killing(&y.bracket(&z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ad_is_a_representation(x in element(g2(), 3), y in element(g2(), 3)) {
        let lhs = x.bracket(&y).unwrap().ad_matrix();
        prop_assert_eq!(lhs, x.ad_matrix().commutator(&y.ad_matrix()));
    }

    #[test]
    fn jordan_decomposition_parts(x in element(g2(), 2)) {
        let (s, n) = jordan_decomposition(&x).unwrap();
        prop_assert_eq!(&s + &n, x.clone());
        prop_assert!(s.bracket(&n).unwrap().is_zero());
        prop_assert!(is_semisimple(&s));
        prop_assert!(is_nilpotent(&n));
        // both parts centralize everything x centralizes
        let whole = Subspace::whole(g2());
        let cx = centralizer(std::slice::from_ref(&x), &whole);
        prop_assert!(cx.is_subspace_of(&centralizer(std::slice::from_ref(&s), &whole)));
        prop_assert!(cx.is_subspace_of(&centralizer(std::slice::from_ref(&n), &whole)));
    }

    #[test]
    fn centralizer_dimension_matches_ad_rank(x in element(g2(), 3)) {
        let c = centralizer(std::slice::from_ref(&x), &Subspace::whole(g2()));
        prop_assert_eq!(c.dim() + x.ad_matrix().rank(), 14);
        for y in c.elements() {
            prop_assert!(x.bracket(&y).unwrap().is_zero());
        }
    }
}
