//! Acceptance criteria, one line each. Expected values are written out here
//! rather than taken from the library's catalog, so a wrong catalog entry
//! fails.

use std::process::ExitCode;
use std::time::Instant;

use slicelab::chevalley::{Element, Subspace};
use slicelab::sympair::{build_split_g2_pair, k_orbit_dim};
use slicelab::verify::{cmd_all, Config, Report, Status};

struct Criterion {
    id: usize,
    title: &'static str,
    failures: Vec<String>,
}

impl Criterion {
    fn new(id: usize, title: &'static str) -> Self {
        Criterion {
            id,
            title,
            failures: Vec::new(),
        }
    }

    /// The row exists, passed, and its computed value is `computed`.
    fn row(&mut self, r: &Report, name: &str, computed: Option<&str>) {
        match r.get(name) {
            None => self.failures.push(format!("{name}: missing")),
            Some(rec) if rec.status != Status::Pass => self.failures.push(format!(
                "{name}: expected {}, computed {}",
                rec.expected, rec.computed
            )),
            Some(rec) => {
                if let Some(c) = computed {
                    if rec.computed != c {
                        self.failures
                            .push(format!("{name}: computed {}, want {c}", rec.computed));
                    }
                }
            }
        }
    }

    /// Every row whose name starts with `prefix` and ends with `suffix`
    /// passed; at least `min` of them exist.
    fn rows_matching(&mut self, r: &Report, prefix: &str, suffix: &str, min: usize) {
        let rows: Vec<_> = r
            .records()
            .iter()
            .filter(|x| x.name.starts_with(prefix) && x.name.ends_with(suffix))
            .collect();
        if rows.len() < min {
            self.failures.push(format!(
                "{prefix}*{suffix}: {} rows, want at least {min}",
                rows.len()
            ));
        }
        for x in rows {
            if x.status != Status::Pass {
                self.failures.push(format!("{}: {}", x.name, x.computed));
            }
        }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn print(&self) -> bool {
        let ok = self.failures.is_empty();
        println!(
            "criterion {}: {} - {}",
            self.id,
            if ok { "PASS" } else { "FAIL" },
            self.title
        );
        for f in &self.failures {
            println!("    {f}");
        }
        ok
    }
}

/// `dim G.x` and `dim K.x` computed from spans of brackets, independently of
/// the library's orbit routines.
fn orbit_dims_by_span(s: &str) -> (usize, usize) {
    let pair = build_split_g2_pair().expect("split G2");
    let x = pair.element(s).expect("element");
    let alg = pair.algebra();
    let span = |basis: Vec<Element>| {
        let v: Vec<_> = basis
            .iter()
            .map(|b| b.bracket(&x).expect("bracket").into_coeffs())
            .collect();
        Subspace::span_vecs(alg, v).dim()
    };
    let g_dim = span((0..alg.dim()).map(|i| Element::basis(alg, i)).collect());
    let k_dim = span(pair.k().elements());
    assert_eq!(
        Some(k_dim),
        k_orbit_dim(&pair, &x).ok(),
        "library disagrees at {s}"
    );
    (g_dim, k_dim)
}

fn main() -> ExitCode {
    let start = Instant::now();
    let config = Config {
        height: 24,
        seed: 0,
        workers: 1,
    };
    let r = cmd_all(&config).expect("valid configuration");
    let mut all = Vec::new();

    let mut c = Criterion::new(1, "orbit table and halving of orbit dimensions");
    for ((name, rep), (g, k)) in [
        ("n3", "x5"),
        ("n4", "x4"),
        ("n5a", "x5 + y3"),
        ("n5b", "x2 + x5"),
        ("n6", "x3 + y2"),
    ]
    .into_iter()
    .zip([(6, 3), (8, 4), (10, 5), (10, 5), (12, 6)])
    {
        c.row(&r, &format!("orbits.{name}.dim_G"), Some(&g.to_string()));
        c.row(&r, &format!("orbits.{name}.dim_K"), Some(&k.to_string()));
        let (gs, ks) = orbit_dims_by_span(rep);
        c.require(
            (gs, ks) == (g, k) && gs == 2 * ks,
            format!("{rep}: spans give ({gs}, {ks})"),
        );
    }
    c.row(&r, "orbits.zero.dim_K", Some("0"));
    all.push(c);

    let mut c = Criterion::new(2, "the two subregular nilpotent K-orbits are distinct");
    c.row(&r, "orbits.n5a_n5b.distinct", None);
    c.row(&r, "orbits.n5b.slice_base_class", None);
    all.push(c);

    let mut c = Criterion::new(
        3,
        "2 and 4 stratum lines, stable at height 48, split 1+1 and 3+1",
    );
    for (s, n, split) in [("s5a", 2, "1+1"), ("s5b", 4, "3+1")] {
        c.row(&r, &format!("slices.{s}.dim"), Some("3"));
        c.row(&r, &format!("slices.{s}.lines"), None);
        let count = r
            .get(&format!("slices.{s}.lines"))
            .map(|x| x.computed.split(' ').next().unwrap_or("").to_string());
        c.require(
            count.as_deref() == Some(&n.to_string()),
            format!("{s}: {count:?} lines, want {n}"),
        );
        c.row(
            &r,
            &format!("slices.{s}.lines_stable"),
            Some(&format!("{n} lines at height 48")),
        );
        c.row(&r, &format!("slices.{s}.split"), Some(split));
    }
    all.push(c);

    let mut c = Criterion::new(4, "J1 and J2 fully slice-induce both subregular orbits");
    for j in ["J1", "J2"] {
        for t in ["n5a", "n5b"] {
            let name = format!("slices.induction.{j}_{t}");
            c.row(&r, &name, None);
            let full = r
                .get(&name)
                .is_some_and(|x| x.computed.starts_with("full (witness"));
            c.require(full, format!("{name}: not a witnessed full induction"));
        }
    }
    all.push(c);

    let mut c = Criterion::new(
        5,
        "contraction families stay in one class and tend to the base point",
    );
    c.rows_matching(&r, "slices.s5a.line", ".contraction", 2);
    c.rows_matching(&r, "slices.s5b.line", ".contraction", 4);
    c.rows_matching(&r, "slices.s5a.", ".weights", 1);
    c.rows_matching(&r, "slices.s5b.", ".weights", 1);
    c.row(&r, "props.sympair.contraction", None);
    all.push(c);

    let mut c = Criterion::new(
        6,
        "4-ality tower: dimensions, Jacobi, invariant form, G2 roots",
    );
    c.row(&r, "fibers.so8.dim", Some("28"));
    c.row(&r, "fibers.so7.dims", Some("(21, 9, 12)"));
    c.row(&r, "fibers.g2.dims", Some("(14, 6, 8)"));
    for a in ["so8", "so7", "g2"] {
        c.row(&r, &format!("fibers.{a}.jacobi"), None);
        c.row(&r, &format!("fibers.{a}.killing_rank"), None);
    }
    c.row(&r, "fibers.so8.form", None);
    c.row(&r, "fibers.tower", None);
    c.row(&r, "fibers.g2.roots", Some("12"));
    c.row(&r, "fibers.g2.length_ratio", Some("3"));
    c.row(&r, "fibers.g2.cartan_matrix", None);
    c.row(&r, "fibers.g2.extreme_plus", None);
    c.row(&r, "fibers.g2.extreme_minus", None);
    all.push(c);

    let mut c = Criterion::new(
        7,
        "fibre cardinalities 1, 1, 3, 2, 1, 1 with the tabulated points",
    );
    for (class, card) in [
        ("J1", 1),
        ("O5a", 1),
        ("O5b", 3),
        ("O4", 2),
        ("O3", 1),
        ("zero", 1),
    ] {
        c.row(
            &r,
            &format!("fibers.table.{class}.cardinality"),
            Some(&card.to_string()),
        );
        c.row(&r, &format!("fibers.table.{class}.points"), None);
        c.row(&r, &format!("fibers.table.{class}.exact"), None);
    }
    c.row(&r, "fibers.table.J1.points", Some("s_pm_p_p + s_pm_m_m"));
    c.row(&r, "fibers.table.zero.points", Some("0"));
    all.push(c);

    let mut c = Criterion::new(8, "ab-diagrams aba,a,b,b,b and bab,a,a,b,b");
    c.row(&r, "fibers.table.O5a.ab_diagram", None);
    c.row(&r, "fibers.table.O5b.ab_diagram", None);
    for (class, d) in [("O5a", "aba,a,b,b,b"), ("O5b", "bab,a,a,b,b")] {
        let ok = r
            .get(&format!("fibers.table.{class}.ab_diagram"))
            .is_some_and(|x| !x.computed.is_empty() && x.computed.split("; ").all(|s| s == d));
        c.require(ok, format!("{class}: diagrams differ from {d}"));
    }
    c.row(&r, "fibers.table.classes_distinct", None);
    all.push(c);

    let mut c = Criterion::new(
        9,
        "property suites: halving, U_l coherence, transversality, hat pair, fibre oracle",
    );
    c.row(&r, "props.sympair.halving", None);
    c.row(&r, "props.sympair.u_l_coherence", None);
    c.row(&r, "props.sympair.transversality", None);
    c.rows_matching(&r, "slices.", ".transversal", 4);
    c.row(&r, "props.sympair.hat_pair", None);
    c.row(&r, "props.fourality.fiber_oracle", None);
    let sampled = |name: &str, n: &str| r.get(name).is_some_and(|x| x.computed.starts_with(n));
    c.require(
        sampled("props.sympair.halving", "100 samples"),
        "halving: not 100 samples",
    );
    c.require(
        sampled("props.sympair.u_l_coherence", "50 coherent"),
        "U_l coherence: not 50 samples",
    );
    c.require(
        sampled("props.sympair.hat_pair", "50 samples"),
        "hat pair: not 50 samples",
    );
    c.require(
        sampled("props.fourality.fiber_oracle", "20 instances"),
        "fibre oracle: not 20 instances",
    );
    c.require(
        r.summary().fail == 0,
        format!("{} failing report rows", r.summary().fail),
    );
    all.push(c);

    let printed: Vec<bool> = all.iter().map(Criterion::print).collect();
    let ok = printed.iter().all(|&b| b);
    let s = r.summary();
    println!(
        "{} report rows: {} passed, {} failed, {} skipped ({:.1}s)",
        r.records().len(),
        s.pass,
        s.fail,
        s.skipped,
        start.elapsed().as_secs_f64()
    );
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
