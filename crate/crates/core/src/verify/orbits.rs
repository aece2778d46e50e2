use super::catalog::{G2Fixture, N5B_SLICE_BASE, ORBIT_REPS};
use super::{Config, Report, VerifyError};
use crate::sympair::{classify_point, k_orbit_dim, ClassId};

const HALVING: &str = "dim K.x = 1/2 dim G.x";

/// Orbit dimensions and class fingerprints of the nilpotent representatives.
pub fn cmd_orbits(config: &Config) -> Result<Report, VerifyError> {
    config.validate()?;
    let mut r = Report::new();
    let fx = match G2Fixture::build() {
        Ok(fx) => fx,
        Err(e) => {
            r.check_that(
                "orbits.setup",
                "split G2 pair",
                "built",
                false,
                format!("error: {e}"),
            );
            return Ok(r);
        }
    };
    let mut classes: Vec<(&str, Option<ClassId>)> = Vec::new();
    for (name, rep, g_dim, k_dim) in ORBIT_REPS {
        let anchor = format!("representative {name} = {rep}");
        let x = match fx.element(rep) {
            Ok(x) => x,
            Err(e) => {
                r.check_that(&format!("orbits.{name}.parse"), &anchor, rep, false, e);
                continue;
            }
        };
        r.check(
            &format!("orbits.{name}.dim_G"),
            &anchor,
            g_dim,
            x.ad_matrix().rank(),
        );
        r.check_result(
            &format!("orbits.{name}.dim_K"),
            HALVING,
            k_dim,
            k_orbit_dim(&fx.pair, &x),
        );
        let class = classify_point(&fx.pair, &x).ok();
        classes.push((name, class));
    }
    let zero = crate::chevalley::Element::zero(fx.pair.algebra());
    r.check_result(
        "orbits.zero.dim_K",
        HALVING,
        0,
        k_orbit_dim(&fx.pair, &zero),
    );

    let class_of = |n: &str| {
        classes
            .iter()
            .find(|(m, _)| *m == n)
            .and_then(|(_, c)| c.clone())
    };
    let (a, b) = (class_of("n5a"), class_of("n5b"));
    r.check_that(
        "orbits.n5a_n5b.distinct",
        "the classes of n5a and n5b are different K-orbits",
        "distinct",
        matches!((&a, &b), (Some(a), Some(b)) if a != b),
        format!("{} | {}", show(&a), show(&b)),
    );
    let small: Vec<Option<ClassId>> = ["n3", "n4", "n6"].iter().map(|n| class_of(n)).collect();
    let pairwise = small.iter().all(Option::is_some)
        && (0..3).all(|i| (i + 1..3).all(|j| small[i] != small[j]));
    r.check_that(
        "orbits.n3_n4_n6.distinct",
        "n3, n4, n6 lie in different K-orbits",
        "pairwise distinct",
        pairwise,
        small.iter().map(show).collect::<Vec<_>>().join(" | "),
    );
    let alt = fx
        .element(N5B_SLICE_BASE)
        .ok()
        .and_then(|x| classify_point(&fx.pair, &x).ok());
    r.check_that(
        "orbits.n5b.slice_base_class",
        "the slice base point for n5b lies in the class of n5b",
        show(&b),
        alt.is_some() && alt == b,
        show(&alt),
    );
    Ok(r)
}

fn show(c: &Option<ClassId>) -> String {
    c.as_ref()
        .map_or_else(|| "unclassified".into(), ClassId::to_string)
}
