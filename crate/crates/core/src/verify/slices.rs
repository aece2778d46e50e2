use super::catalog::{G2Fixture, N5B_SLICE_BASE};
use super::{Config, Report, VerifyError};
use crate::chevalley::{centralizer, Element};
use crate::exact::{q, qr, Q};
use crate::sympair::{
    classify_point, contraction_orbit, k_orbit_dim, normal_triple, slice_induction, slodowy_slice,
    stratum_lines, ClassId, Datum, Induction, Levi, SearchOptions, SlodowySlice, StratumLine,
    SympairError,
};

/// Orbit dimension of the subregular classes `J1`, `J2`, `O5a`, `O5b`.
pub const SUBREGULAR: usize = 5;

pub type SliceCase = (&'static str, &'static str, usize, usize, (usize, usize));

/// Slices checked by the report: name, base point, slice dimension, number
/// of rational stratum lines, split of the lines between `J1` and `J2`.
pub const SLICES: [SliceCase; 4] = [
    ("s5a", "x5 + y3", 3, 2, (1, 1)),
    ("s5b", N5B_SLICE_BASE, 3, 4, (3, 1)),
    ("s5b_rep", "x2 + x5", 3, 2, (1, 1)),
    ("s6", "x3 + y2", 2, 0, (0, 0)),
];

/// Parameter values of the contraction family checked on every line.
pub fn contraction_parameters() -> [Q; 3] {
    [q(1), q(2), qr(1, 3)]
}

pub fn slice_at(fx: &G2Fixture, e: &Element) -> Result<SlodowySlice, SympairError> {
    let triple = normal_triple(&fx.pair, &Levi::whole(&fx.pair), e)?;
    slodowy_slice(&fx.pair, &triple)
}

/// A point `e + λt` of the line with orbit dimension `d` (λ ∈ {1, 2, 3}),
/// with its slice coordinates and class.
pub fn line_point(
    fx: &G2Fixture,
    slice: &SlodowySlice,
    line: &StratumLine,
    d: usize,
) -> Result<Option<(Vec<Q>, ClassId)>, SympairError> {
    for lam in 1..=3 {
        let x: Vec<Q> = line.coords.iter().map(|&c| q(c * lam)).collect();
        let class = classify_point(&fx.pair, &slice.point(&x))?;
        if class.orbit_dim == d {
            return Ok(Some((x, class)));
        }
    }
    Ok(None)
}

/// `F_t.(e + x)` stays in the class of `e + x` for each sample `t`.
pub fn contraction_stays(
    fx: &G2Fixture,
    slice: &SlodowySlice,
    x: &[Q],
    class: &ClassId,
) -> Result<bool, SympairError> {
    for t in contraction_parameters() {
        if classify_point(&fx.pair, &contraction_orbit(slice, x, &t)?)? != *class {
            return Ok(false);
        }
    }
    Ok(true)
}

fn fmt_coords(c: &[i64]) -> String {
    format!(
        "[{}]",
        c.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
    )
}

/// Slice dimensions, stratum lines and their classes, contraction families,
/// and the slice inductions between the subregular data.
pub fn cmd_slices(config: &Config) -> Result<Report, VerifyError> {
    config.validate()?;
    let mut r = Report::new();
    let fx = match G2Fixture::build() {
        Ok(fx) => fx,
        Err(e) => {
            r.check_that(
                "slices.setup",
                "split G2 pair",
                "built",
                false,
                format!("error: {e}"),
            );
            return Ok(r);
        }
    };
    let opts = config.search_options();
    for (name, base, dim, count, split) in SLICES {
        if let Err(e) = slice_report(&mut r, &fx, opts, name, base, dim, count, split) {
            r.check_that(
                &format!("slices.{name}.setup"),
                base,
                "slice built",
                false,
                format!("error: {e}"),
            );
        }
    }
    induction_report(&mut r, &fx, opts);
    Ok(r)
}

#[allow(clippy::too_many_arguments)]
fn slice_report(
    r: &mut Report,
    fx: &G2Fixture,
    opts: SearchOptions,
    name: &str,
    base: &str,
    dim: usize,
    count: usize,
    split: (usize, usize),
) -> Result<(), SympairError> {
    let e = fx.element(base)?;
    let slice = slice_at(fx, &e)?;
    let key = |k: &str| format!("slices.{name}.{k}");
    let p_dim = fx.pair.p().dim();
    let ke = k_orbit_dim(&fx.pair, &e)?;
    r.check(&key("dim"), &format!("dim p^f at {base}"), dim, slice.dim());
    r.check_that(
        &key("transversal"),
        "p = [k, e] + p^f",
        p_dim,
        ke + slice.dim() == p_dim,
        format!("{ke} + {} = {}", slice.dim(), ke + slice.dim()),
    );
    r.check_that(
        &key("weights"),
        "contraction exponents 2 - i are at least 2",
        "all weights <= 0",
        slice.weights().iter().all(|&w| w <= 0),
        format!("{:?}", slice.weights()),
    );

    let lines = stratum_lines(&slice, SUBREGULAR, opts)?;
    let listing: Vec<String> = lines.iter().map(|l| fmt_coords(&l.coords)).collect();
    r.check_that(
        &key("lines"),
        "the subregular stratum of the slice is a union of lines",
        count,
        lines.len() == count,
        format!("{} {}", lines.len(), listing.join(" ")),
    );
    let doubled = SearchOptions {
        height: opts.height.saturating_mul(2),
        ..opts
    };
    let again = stratum_lines(&slice, SUBREGULAR, doubled)?;
    r.check_that(
        &key("lines_stable"),
        "no further lines at twice the height bound",
        format!("same lines at height {}", doubled.height),
        again == lines,
        format!("{} lines at height {}", again.len(), doubled.height),
    );

    let mut labels = Vec::new();
    for line in &lines {
        let lk = format!("line{}", fmt_coords(&line.coords));
        match line_point(fx, &slice, line, SUBREGULAR)? {
            Some((x, class)) => {
                let label = fx.sheet_label(&class);
                labels.push(label);
                let stays = contraction_stays(fx, &slice, &x, &class)?;
                r.check_that(
                    &key(&format!("{lk}.contraction")),
                    "F_t.(e + x) stays in one class and tends to e",
                    "one class at t = 1, 2, 1/3; exponents >= 2",
                    stays && line.min_contraction_exponent >= 2,
                    format!("{label}, min exponent {}", line.min_contraction_exponent),
                );
            }
            None => r.check_that(
                &key(&format!("{lk}.contraction")),
                "line is subregular",
                "a point of dimension 5",
                false,
                "none found",
            ),
        }
    }
    let j1 = labels.iter().filter(|l| **l == "J1").count();
    let j2 = labels.iter().filter(|l| **l == "J2").count();
    r.check(
        &key("split"),
        "classes of the lines: J1 + J2",
        format!("{}+{}", split.0, split.1),
        format!("{j1}+{j2}"),
    );
    if dim == 3 {
        // dim J = dim of its K-orbits + dim c_p(l)
        let center = centralizer(&fx.j1.space().elements(), fx.j1.p()).dim();
        let codim = p_dim - (SUBREGULAR + center);
        let stratum = if lines.is_empty() { 0 } else { 1 };
        r.check_that(
            &key("codimension"),
            "dim of the stratum = dim slice - codim_p J",
            1,
            stratum == 1 && slice.dim() - codim == 1,
            format!(
                "{} - {codim} = {}, stratum of lines has dim {stratum}",
                slice.dim(),
                slice.dim() - codim
            ),
        );
    }
    Ok(())
}

fn induction_report(r: &mut Report, fx: &G2Fixture, opts: SearchOptions) {
    let targets = [
        ("n5a", "x5 + y3", Induction::Full),
        ("n5b", N5B_SLICE_BASE, Induction::Full),
        ("n5b_rep", "x2 + x5", Induction::Full),
        ("n6", "x3 + y2", Induction::None),
    ];
    for (jname, levi) in [("J1", &fx.j1), ("J2", &fx.j2)] {
        for (tname, rep, expected) in targets {
            let name = format!("slices.induction.{jname}_{tname}");
            let anchor = format!("({jname}, 0) slice induces (g, K.({rep}))");
            let outcome = (|| {
                let d1 = Datum::new(&fx.pair, levi.clone(), Element::zero(fx.pair.algebra()))?;
                let d2 = Datum::whole(&fx.pair, fx.element(rep)?)?;
                slice_induction(&fx.pair, &d1, &d2, opts)
            })();
            match outcome {
                Ok(o) => {
                    let witnessed = o.kind == Induction::None || o.witness.is_some();
                    let shown = match &o.witness {
                        Some(w) => format!("{} (witness {w})", o.kind),
                        None => o.kind.to_string(),
                    };
                    r.check_that(
                        &name,
                        &anchor,
                        expected,
                        o.kind == expected && witnessed,
                        shown,
                    );
                }
                Err(e) => r.check_that(&name, &anchor, expected, false, format!("error: {e}")),
            }
        }
    }
}
