use std::sync::Arc;

use super::catalog::{Tower, AB_DIAGRAMS, FIBER_TABLE};
use super::{Config, Report, VerifyError};
use crate::chevalley::{chevalley_algebra, Element, LieAlgebra, RootType};
use crate::fourality::{
    ab_diagram, fiber_over, match_g2_models, rank_on_v7, tower_consistent, Fiber, FiberRecord,
    FixedSubalgebra, FouralityError, Projection,
};
use crate::sympair::classify_point;

pub(crate) fn parse_in(alg: &Arc<LieAlgebra>, s: &str) -> Result<Element, FouralityError> {
    Ok(Element::parse(alg, s)?)
}

/// The 4-ality tower, the projection `π`, the fibre table and the
/// ab-diagrams of the fibre points.
pub fn cmd_fibers(config: &Config) -> Result<Report, VerifyError> {
    config.validate()?;
    let mut r = Report::new();
    let tower = match Tower::build() {
        Ok(t) => t,
        Err(e) => {
            r.check_that(
                "fibers.setup",
                "4-ality tower",
                "built",
                false,
                format!("error: {e}"),
            );
            return Ok(r);
        }
    };
    tower_report(&mut r, &tower);
    for (name, res) in [
        ("fibers.projection.setup", projection_report(&mut r, &tower)),
        ("fibers.table.setup", fiber_report(&mut r, &tower)),
        ("fibers.v7.setup", v7_report(&mut r, &tower)),
    ] {
        if let Err(e) = res {
            r.check_that(
                name,
                "computation completes",
                "no error",
                false,
                format!("error: {e}"),
            );
        }
    }
    Ok(r)
}

fn json(r: &FiberRecord) -> String {
    serde_json::to_string(r).expect("record serializes")
}

fn dims(f: &FixedSubalgebra) -> String {
    format!("({}, {}, {})", f.dim(), f.k_dim(), f.p_dim())
}

fn tower_report(r: &mut Report, t: &Tower) {
    let g0 = t.so8.algebra();
    r.check("fibers.so8.dim", "g0 = sl2^4 + C1 C2 C3 D", 28, g0.dim());
    r.check_that(
        "fibers.so8.form",
        "g0 preserves the symmetric form on V8",
        "invariant",
        t.so8.form_invariant(),
        if t.so8.form_invariant() {
            "invariant"
        } else {
            "not invariant"
        },
    );
    for (name, alg) in [("so8", g0), ("so7", t.g1.algebra()), ("g2", t.g2.algebra())] {
        let jac = alg.check_jacobi();
        r.check_that(
            &format!("fibers.{name}.jacobi"),
            "Jacobi identity on all basis triples",
            "holds",
            jac.is_ok(),
            jac.map_or_else(|e| e.to_string(), |_| "holds".into()),
        );
        r.check(
            &format!("fibers.{name}.killing_rank"),
            "Killing form nondegenerate",
            alg.dim(),
            alg.killing_matrix().rank(),
        );
    }
    r.check(
        "fibers.so7.dims",
        "(dim g1, dim k1, dim p1)",
        "(21, 9, 12)",
        dims(&t.g1),
    );
    r.check(
        "fibers.g2.dims",
        "(dim g2, dim k2, dim p2)",
        "(14, 6, 8)",
        dims(&t.g2),
    );
    let ok = tower_consistent(&t.so8, &t.g1, &t.g2);
    r.check_that(
        "fibers.tower",
        "S3-fixed points of g1 = S3-fixed points of g0",
        "equal",
        ok,
        if ok { "equal" } else { "different" },
    );
    let chev = match chevalley_algebra(RootType::G2) {
        Ok(c) => c,
        Err(e) => {
            r.check_that("fibers.g2.roots", "Chevalley G2", "built", false, e);
            return;
        }
    };
    match match_g2_models(&t.g2, &chev) {
        Ok(m) => {
            r.check(
                "fibers.g2.roots",
                "root decomposition of g2",
                12,
                m.roots.len(),
            );
            r.check(
                "fibers.g2.length_ratio",
                "long/short squared length",
                3,
                &m.length_ratio,
            );
            r.check(
                "fibers.g2.cartan_dim",
                "Cartan subalgebra in sl(C) x sl(D)",
                2,
                m.cartan_dim,
            );
            r.check(
                "fibers.g2.cartan_matrix",
                "Cartan matrix of the matched simple roots",
                "[[2, -3], [-1, 2]]",
                format!("{:?}", m.cartan_matrix),
            );
            let weight_of = |v: &str| {
                m.roots.iter().find(|x| x.vector == v).map_or_else(
                    || "absent".into(),
                    |x| format!("{} ({})", x.weight.0, x.chevalley_label),
                )
            };
            r.check(
                "fibers.g2.extreme_plus",
                "c+^3 d+ has sl(C)-weight 3",
                "3 (x5)",
                weight_of("c_ppp_p"),
            );
            r.check(
                "fibers.g2.extreme_minus",
                "c-^3 d+ has sl(C)-weight -3",
                "-3 (x2)",
                weight_of("c_mmm_p"),
            );
        }
        Err(e) => r.check_that("fibers.g2.roots", "root decomposition of g2", 12, false, e),
    }
}

fn projection_report(r: &mut Report, t: &Tower) -> Result<(), FouralityError> {
    let pi = Projection::new(&t.g1, &t.g2)?;
    let (a1, a2) = (t.g1.algebra(), t.g2.algebra());
    for (x, y) in [("s_pp_p_p", "c_ppp_p"), ("s_pm_p_p", "c_ppm_p")] {
        r.check(
            &format!("fibers.projection.{x}"),
            "pi(xy z t) = xyz t",
            y,
            pi.apply(&parse_in(a1, x)?)?,
        );
    }
    let mut identity = true;
    let mut idempotent = true;
    for i in 0..a2.dim() {
        let y = Element::basis(a2, i);
        identity &= pi.apply(&pi.include(&y)?)? == y;
    }
    for i in 0..a1.dim() {
        let x = Element::basis(a1, i);
        let p = pi.apply(&x)?;
        idempotent &= pi.apply(&pi.include(&p)?)? == p;
    }
    r.check_that(
        "fibers.projection.identity_on_g2",
        "pi restricted to g2 is the identity",
        "holds",
        identity,
        identity,
    );
    r.check_that(
        "fibers.projection.idempotent",
        "pi^2 = pi",
        "holds",
        idempotent,
        idempotent,
    );
    let mut equivariant = true;
    for i in 0..t.g2.k_dim() {
        let v = Element::basis(a2, i);
        let v1 = pi.include(&v)?;
        for j in 0..a1.dim() {
            let x = Element::basis(a1, j);
            equivariant &= pi.apply(&v1.bracket(&x)?)? == v.bracket(&pi.apply(&x)?)?;
        }
    }
    r.check_that(
        "fibers.projection.equivariant",
        "pi([v, x]) = [v, pi(x)] for v in k2, x in g1",
        "holds",
        equivariant,
        equivariant,
    );
    Ok(())
}

fn fiber_report(r: &mut Report, t: &Tower) -> Result<(), FouralityError> {
    let (a1, a2) = (t.g1.algebra(), t.g2.algebra());
    let pi = Projection::new(&t.g1, &t.g2)?;
    let pair = t.g1.symmetric_pair()?;
    let mut class_5 = Vec::new();
    for (class, y, card, points) in FIBER_TABLE {
        let key = |k: &str| format!("fibers.table.{class}.{k}");
        let y = parse_in(a2, y)?;
        let fiber = fiber_over(&t.g1, &t.g2, &y)?;
        r.check(
            &key("cardinality"),
            &format!("#fibre over {y}"),
            card,
            fiber.cardinality(),
        );
        let mut expected: Vec<Element> = points
            .iter()
            .map(|p| parse_in(a1, p))
            .collect::<Result<_, _>>()?;
        expected.sort_by(|a, b| a.coeffs().cmp(b.coeffs()));
        let show = |v: &[Element]| {
            v.iter()
                .map(Element::to_string)
                .collect::<Vec<_>>()
                .join("; ")
        };
        r.check(
            &key("points"),
            &format!("fibre points over {y}"),
            show(&expected),
            show(&fiber.points),
        );
        let expected_record = Fiber {
            points: expected,
            non_rational: card.saturating_sub(points.len()),
        }
        .record(class);
        r.check(
            &key("record"),
            "fibre as {class, cardinality, coefficient vectors}",
            json(&expected_record),
            json(&fiber.record(class)),
        );
        let mut exact = true;
        for z in &fiber.points {
            exact &= pi.apply(z)? == y && rank_on_v7(&t.g1, z)? <= 2;
        }
        r.check_that(
            &key("exact"),
            "pi(z) = y and rank on V7 <= 2",
            "holds",
            exact,
            exact,
        );
        if let Some((_, diagram)) = AB_DIAGRAMS.iter().find(|(c, _)| *c == class) {
            let mut shown = Vec::new();
            let mut ok = !fiber.points.is_empty();
            for z in &fiber.points {
                let d = ab_diagram(&t.g1, z)?;
                ok &= d.to_string() == *diagram;
                shown.push(d.to_string());
                class_5.push((class, classify_point(&pair, z)?));
            }
            r.check_that(
                &key("ab_diagram"),
                "ab-diagram of the fibre points",
                diagram,
                ok,
                shown.join("; "),
            );
        }
    }
    let dims: Vec<usize> = class_5.iter().map(|(_, c)| c.orbit_dim).collect();
    r.check_that(
        "fibers.table.orbit_dims",
        "K1-orbits of the fibre points over O5a and O5b",
        "all 5",
        !dims.is_empty() && dims.iter().all(|&d| d == 5),
        format!("{dims:?}"),
    );
    let a: Vec<_> = class_5
        .iter()
        .filter(|(c, _)| *c == "O5a")
        .map(|(_, x)| x)
        .collect();
    let b: Vec<_> = class_5
        .iter()
        .filter(|(c, _)| *c == "O5b")
        .map(|(_, x)| x)
        .collect();
    let separated = !a.is_empty() && !b.is_empty() && a.iter().all(|x| !b.contains(x));
    r.check_that(
        "fibers.table.classes_distinct",
        "fibre points over O5a and O5b lie in different K1-classes",
        "distinct",
        separated,
        if separated { "distinct" } else { "shared" },
    );
    Ok(())
}

fn v7_report(r: &mut Report, t: &Tower) -> Result<(), FouralityError> {
    let a1 = t.g1.algebra();
    for (name, x, rank) in [
        ("zero", "0", 0),
        ("fibre_5a", "s_pp_p_p + s_pp_m_m", 2),
        ("generic", "s_pp_p_p + s_mm_m_m", 4),
    ] {
        r.check(
            &format!("fibers.v7.{name}"),
            &format!("rank of {x} on V7"),
            rank,
            rank_on_v7(&t.g1, &parse_in(a1, x)?)?,
        );
    }
    Ok(())
}
