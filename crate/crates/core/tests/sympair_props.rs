use std::sync::OnceLock;

use proptest::prelude::*;
use slicelab::chevalley::{centralizer, derived_algebra, Element, Subspace};
use slicelab::exact::{q, MatrixQ, Q};
use slicelab::sympair::{
    build_split_g2_pair, classify_point, hat_embed, hat_pair, k_orbit_dim, normal_triple,
    slice_induction, slodowy_slice, stratum_lines, u_l_conditions, u_l_test, Datum, Induction,
    Levi, SearchOptions, SlodowySlice, SymmetricPair,
};

struct Fixture {
    pair: SymmetricPair,
    j1: Levi,
    j2: Levi,
}

fn fx() -> &'static Fixture {
    static FX: OnceLock<Fixture> = OnceLock::new();
    FX.get_or_init(|| {
        let pair = build_split_g2_pair().unwrap();
        let j1 = Levi::new(&pair, &pair.element("x4 + y4").unwrap()).unwrap();
        let j2 = Levi::new(&pair, &pair.element("x5 + y5").unwrap()).unwrap();
        Fixture { pair, j1, j2 }
    })
}

fn el(s: &str) -> Element {
    fx().pair.element(s).unwrap()
}

fn slice(base: &str) -> SlodowySlice {
    let pair = &fx().pair;
    slodowy_slice(
        pair,
        &normal_triple(pair, &Levi::whole(pair), &el(base)).unwrap(),
    )
    .unwrap()
}

/// `dim [k, x]` as the span of brackets with a basis of `k`.
fn k_orbit_span(x: &Element) -> usize {
    let pair = &fx().pair;
    let v: Vec<Vec<Q>> = pair
        .k()
        .elements()
        .iter()
        .map(|b| b.bracket(x).unwrap().into_coeffs())
        .collect();
    Subspace::span_vecs(pair.algebra(), v).dim()
}

fn exp_nilpotent(m: &MatrixQ) -> MatrixQ {
    let n = m.rows();
    let (mut sum, mut term) = (MatrixQ::identity(n), MatrixQ::identity(n));
    for k in 1..=n {
        term = (&term * m).scale(&(q(1) / q(k as i64)));
        sum = &sum + &term;
    }
    sum
}

/// `y` moved by `exp(ad b y1) exp(ad a x1) exp(ad d y6) exp(ad c x6)`, an
/// element of `K`.
fn k_conjugate(y: &Element, a: i64, b: i64, c: i64, d: i64) -> Element {
    let mut v = y.coeffs().to_vec();
    for (s, t, u, w) in [("x6", "y6", c, d), ("x1", "y1", a, b)] {
        for (name, coef) in [(s, u), (t, w)] {
            v = exp_nilpotent(&el(name).scale(&q(coef)).ad_matrix()).mul_vec(&v);
        }
    }
    Element::new(fx().pair.algebra(), v)
}

fn p_element(h: i64) -> impl Strategy<Value = Element> {
    proptest::collection::vec(-h..=h, 8).prop_map(|c| {
        let pair = &fx().pair;
        let mut x = Element::zero(pair.algebra());
        for (b, c) in pair.p().elements().iter().zip(c) {
            x = &x + &b.scale(&q(c));
        }
        x
    })
}

#[test]
fn pair_dimensions_and_orbit_table() {
    let pair = &fx().pair;
    assert_eq!((pair.k().dim(), pair.p().dim()), (6, 8));
    for (rep, g_dim, k_dim) in [
        ("x5", 6, 3),
        ("x4", 8, 4),
        ("x5 + y3", 10, 5),
        ("x2 + x5", 10, 5),
        ("x3 + y2", 12, 6),
    ] {
        let x = el(rep);
        assert_eq!(x.ad_matrix().rank(), g_dim, "{rep}");
        assert_eq!(k_orbit_dim(pair, &x).unwrap(), k_dim, "{rep}");
        assert_eq!(k_orbit_span(&x), k_dim, "{rep}");
    }
}

#[test]
fn subregular_classes_are_separated() {
    let pair = &fx().pair;
    let a = classify_point(pair, &el("x5 + y3")).unwrap();
    let b = classify_point(pair, &el("x2 + x5")).unwrap();
    assert_ne!(a, b);
    assert_eq!(classify_point(pair, &el("x3 + x4")).unwrap(), b);
}

#[test]
fn slice_dimensions_and_weights() {
    for (base, dim) in [
        ("x5 + y3", 3),
        ("x3 + x4", 3),
        ("x2 + x5", 3),
        ("x3 + y2", 2),
    ] {
        let s = slice(base);
        assert_eq!(s.dim(), dim, "{base}");
        assert_eq!(k_orbit_span(&el(base)) + s.dim(), 8, "{base}");
        assert!(s.weights().iter().all(|&w| w <= 0), "{base}");
    }
}

/// Every integer point of height at most 3 in the slice has orbit dimension
/// 5 exactly when it lies on one of the lines the search reports.
#[test]
fn line_search_agrees_with_exhaustive_scan() {
    let opts = SearchOptions {
        height: 24,
        workers: 2,
    };
    for (base, count) in [("x5 + y3", 2), ("x3 + x4", 4), ("x2 + x5", 2)] {
        let s = slice(base);
        let lines = stratum_lines(&s, 5, opts).unwrap();
        assert_eq!(lines.len(), count, "{base}");
        let on_line = |c: &[i64]| {
            lines.iter().any(|l| {
                let (a, b) = (&l.coords, c);
                (0..3).all(|i| (0..3).all(|j| a[i] * b[j] == a[j] * b[i]))
            })
        };
        for c0 in -3..=3i64 {
            for c1 in -3..=3i64 {
                for c2 in -3..=3i64 {
                    let c = [c0, c1, c2];
                    let d = k_orbit_span(&s.point(&c.map(q)));
                    assert!(d >= 5, "{base} {c:?}");
                    assert_eq!(d == 5, on_line(&c), "{base} {c:?}");
                }
            }
        }
    }
    assert!(stratum_lines(&slice("x3 + y2"), 5, opts)
        .unwrap()
        .is_empty());
}

#[test]
fn inductions_from_the_subregular_levis() {
    let pair = &fx().pair;
    let opts = SearchOptions::default();
    for levi in [&fx().j1, &fx().j2] {
        let d1 = Datum::new(pair, levi.clone(), Element::zero(pair.algebra())).unwrap();
        for (rep, kind) in [
            ("x5 + y3", Induction::Full),
            ("x3 + x4", Induction::Full),
            ("x3 + y2", Induction::None),
        ] {
            let d2 = Datum::whole(pair, el(rep)).unwrap();
            let out = slice_induction(pair, &d1, &d2, opts).unwrap();
            assert_eq!(out.kind, kind, "{rep}");
            assert_eq!(out.witness.is_some(), kind != Induction::None, "{rep}");
        }
        let d2 = Datum::whole(pair, el("x5")).unwrap();
        assert_eq!(
            slice_induction(pair, &d1, &d2, opts).unwrap().kind,
            Induction::Weak
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn orbit_dimension_halves(x in p_element(3)) {
        let pair = &fx().pair;
        let d = k_orbit_dim(pair, &x).unwrap();
        prop_assert_eq!(2 * d, x.ad_matrix().rank());
        prop_assert_eq!(d, k_orbit_span(&x));
        let kx = centralizer(std::slice::from_ref(&x), pair.k()).dim();
        let px = centralizer(std::slice::from_ref(&x), pair.p()).dim();
        prop_assert_eq!(6 - kx, 8 - px);
    }

    #[test]
    fn class_is_constant_on_k_orbits(
        i in 0usize..5,
        (a, b, c, d) in (-2i64..=2, -2i64..=2, -2i64..=2, -2i64..=2),
    ) {
        let x = el(["x5", "x4", "x5 + y3", "x2 + x5", "x4 + y4"][i]);
        let y = k_conjugate(&x, a, b, c, d);
        prop_assert!(fx().pair.in_p(&y));
        prop_assert_eq!(classify_point(&fx().pair, &y).unwrap(), classify_point(&fx().pair, &x).unwrap());
    }

    #[test]
    fn u_l_characterizations_agree(
        first in any::<bool>(),
        scale in 0i64..=3,
        c in proptest::collection::vec(-3i64..=3, 3),
    ) {
        let f = fx();
        let levi = if first { &f.j1 } else { &f.j2 };
        let mut y = levi.v().scale(&q(scale));
        for (b, c) in derived_algebra(levi.space()).intersect(f.pair.p()).elements().iter().zip(c) {
            y = &y + &b.scale(&q(c));
        }
        let conds = u_l_conditions(&f.pair, levi, &y).unwrap();
        prop_assert!(conds.iter().all(|&b| b == conds[0]), "{:?} at {}", conds, y);
        prop_assert_eq!(u_l_test(&f.pair, levi, &y).unwrap(), conds[0]);
    }

    #[test]
    fn hat_pair_orbits_match_adjoint_orbits(c in proptest::collection::vec(-2i64..=2, 14)) {
        let alg = fx().pair.algebra();
        let hat = hat_pair(alg).unwrap();
        let x = Element::new(alg, c.into_iter().map(q).collect());
        prop_assert_eq!(k_orbit_dim(&hat, &hat_embed(&hat, &x)).unwrap(), x.ad_matrix().rank());
    }
}
