use std::error::Error;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::catalog::{G2Fixture, Tower, FIBER_TABLE, J1_V, J2_V, N5B_SLICE_BASE, ORBIT_REPS};
use super::fibers::parse_in;
use super::slices::{contraction_stays, line_point, slice_at, SUBREGULAR};
use super::{Config, Report, VerifyError};
use crate::chevalley::{
    centralizer, chevalley_algebra, derived_algebra, is_nilpotent, jordan_decomposition, Element,
    LieAlgebra, RootType, StructureTable, Subspace,
};
use crate::exact::{
    binary_form_gcd_factor, jordan_chevalley, q, rank_kernel, rank_over_fraction_field, BinaryForm,
    MatrixPoly, MatrixQ, Q,
};
use crate::fourality::{ab_diagram, fiber_over, v7_matrix, FixedSubalgebra, Projection};
use crate::sympair::{
    classify_point, hat_embed, hat_pair, k_orbit_dim, normal_triple, slodowy_slice_in,
    stratum_lines, u_l_conditions, Levi,
};

fn rint(rng: &mut ChaCha8Rng, h: i64) -> i64 {
    rng.gen_range(-h..=h)
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, h: i64) -> MatrixQ {
    let density: f64 = rng.gen_range(0.3..1.0);
    MatrixQ::from_rows(
        (0..rows)
            .map(|_| {
                (0..cols)
                    .map(|_| {
                        if rng.gen_bool(density) {
                            q(rint(rng, h))
                        } else {
                            Q::zero()
                        }
                    })
                    .collect()
            })
            .collect(),
    )
}

/// A product of elementary matrices with integer entries, hence invertible.
fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> MatrixQ {
    let mut p = MatrixQ::identity(n);
    for _ in 0..2 * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            continue;
        }
        let c = q(rint(rng, 2));
        let mut e = MatrixQ::identity(n);
        e[(i, j)] = c;
        p = &p * &e;
    }
    p
}

/// `exp(m)` for nilpotent `m`.
fn exp_nilpotent(m: &MatrixQ) -> MatrixQ {
    let n = m.rows();
    let mut sum = MatrixQ::identity(n);
    let mut term = MatrixQ::identity(n);
    for k in 1..=n {
        term = (&term * m).scale(&(q(1) / q(k as i64)));
        if term.is_zero() {
            break;
        }
        sum = &sum + &term;
    }
    sum
}

/// `exp(ad x)·y` for nilpotent `x`.
fn conjugate(x: &Element, y: &Element) -> Element {
    Element::new(
        y.algebra(),
        exp_nilpotent(&x.ad_matrix()).mul_vec(y.coeffs()),
    )
}

/// Conjugates `y` by a few random one-parameter subgroups `exp(t ad x)`,
/// `x` drawn from `nilpotents`.
fn random_conjugate(rng: &mut ChaCha8Rng, nilpotents: &[Element], y: &Element) -> Element {
    let mut y = y.clone();
    for _ in 0..3 {
        let x = nilpotents
            .choose(rng)
            .expect("nonempty")
            .scale(&q(rint(rng, 2)));
        y = conjugate(&x, &y);
    }
    y
}

fn random_combination(
    rng: &mut ChaCha8Rng,
    alg: &Arc<LieAlgebra>,
    basis: &[Element],
    sparse: bool,
) -> Element {
    let mut x = Element::zero(alg);
    if sparse {
        for _ in 0..rng.gen_range(1..=2) {
            let b = basis.choose(rng).expect("nonempty");
            x = &x + &b.scale(&q(rint(rng, 3)));
        }
    } else {
        for b in basis {
            x = &x + &b.scale(&q(rint(rng, 3)));
        }
    }
    x
}

type Outcome<T> = Result<T, Box<dyn Error>>;

/// Runs a fallible suite body so `?` can be used inside it.
fn attempt<T>(body: impl FnOnce() -> Outcome<T>) -> Outcome<T> {
    body()
}

fn suite_rng(seed: u64, suite: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ suite.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn record(
    r: &mut Report,
    name: &str,
    anchor: &str,
    expected: String,
    res: Outcome<(bool, String)>,
) {
    match res {
        Ok((ok, computed)) => r.check_that(name, anchor, expected, ok, computed),
        Err(e) => r.check_that(name, anchor, expected, false, format!("error: {e}")),
    }
}

/// Runs the property suites of every module with samples drawn from the
/// configured seed.
pub fn cmd_proptests(config: &Config) -> Result<Report, VerifyError> {
    config.validate()?;
    let mut r = Report::new();
    let seed = config.seed;
    exact_suites(&mut r, seed);
    chevalley_suites(&mut r, seed);
    match G2Fixture::build() {
        Ok(fx) => sympair_suites(&mut r, seed, config, &fx),
        Err(e) => r.check_that(
            "props.sympair.setup",
            "split G2 pair",
            "built",
            false,
            format!("error: {e}"),
        ),
    }
    match Tower::build() {
        Ok(t) => fourality_suites(&mut r, seed, &t),
        Err(e) => r.check_that(
            "props.fourality.setup",
            "4-ality tower",
            "built",
            false,
            format!("error: {e}"),
        ),
    }
    Ok(r)
}

fn exact_suites(r: &mut Report, seed: u64) {
    let mut rng = suite_rng(seed, 1);
    let res = attempt(|| {
        let mut ok = true;
        for _ in 0..30 {
            let (rows, cols) = (rng.gen_range(1..=12), rng.gen_range(1..=12));
            let m = random_matrix(&mut rng, rows, cols, 10);
            let (rk, ker) = rank_kernel(&m);
            let (rkt, _) = rank_kernel(&m.transpose());
            ok &= rk == rkt
                && ker.len() == cols - rk
                && ker.iter().all(|v| m.mul_vec(v).iter().all(Zero::is_zero));
        }
        Ok((
            ok,
            format!("30 matrices, {}", if ok { "all agree" } else { "mismatch" }),
        ))
    });
    record(
        r,
        "props.exact.rank_transpose",
        "rank M = rank M^T; M ker M = 0",
        "30 matrices, all agree".into(),
        res,
    );

    let mut rng = suite_rng(seed, 2);
    let res = attempt(|| {
        let mut ok = true;
        for _ in 0..20 {
            let n = rng.gen_range(2..=6);
            // block upper-triangular with repeated eigenvalues, then conjugated
            let mut j = MatrixQ::zeros(n, n);
            let mut i = 0;
            while i < n {
                let size = rng.gen_range(1..=(n - i).min(3));
                let ev = q(rint(&mut rng, 2));
                for k in i..i + size {
                    j[(k, k)] = ev.clone();
                    if k + 1 < i + size {
                        j[(k, k + 1)] = Q::one();
                    }
                }
                i += size;
            }
            let p = random_unimodular(&mut rng, n);
            let m = &(&p * &j) * &p.inverse()?;
            let (s, nn) = jordan_chevalley(&m)?;
            let m2 = &m * &m;
            ok &= &s + &nn == m
                && (&s * &nn) == (&nn * &s)
                && nn.pow(n as u32).is_zero()
                && s.is_semisimple()
                && (&s * &m) == (&m * &s)
                && (&s * &m2) == (&m2 * &s);
        }
        Ok((
            ok,
            format!("20 matrices, {}", if ok { "all hold" } else { "violated" }),
        ))
    });
    record(
        r,
        "props.exact.jordan_chevalley",
        "M = S + N, SN = NS, N nilpotent, S semisimple and commuting with M, M^2",
        "20 matrices, all hold".into(),
        res,
    );

    let mut rng = suite_rng(seed, 3);
    let res = attempt(|| {
        let mut ok = true;
        for _ in 0..20 {
            let (rows, cols) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
            let a = random_matrix(&mut rng, rows, cols, 5);
            // low-rank direction so the generic rank is often deficient
            let u = random_matrix(&mut rng, rows, 1, 3);
            let v = random_matrix(&mut rng, 1, cols, 3);
            let b = if rng.gen_bool(0.5) {
                &u * &v
            } else {
                random_matrix(&mut rng, rows, cols, 5)
            };
            let pencil = MatrixPoly::linear_pencil(&a, &b);
            let generic = rank_over_fraction_field(&pencil);
            let evals: Vec<usize> = (0..5)
                .map(|_| pencil.eval(&q(rint(&mut rng, 50))).rank())
                .collect();
            ok &= evals.iter().all(|&e| e <= generic) && evals.iter().max() == Some(&generic);
        }
        Ok((
            ok,
            format!("20 pencils, {}", if ok { "all agree" } else { "mismatch" }),
        ))
    });
    record(
        r,
        "props.exact.fraction_field_rank",
        "rank over Q(l) = max rank over 5 evaluations",
        "20 pencils, all agree".into(),
        res,
    );

    let mut rng = suite_rng(seed, 4);
    let res = attempt(|| {
        let mut ok = true;
        for _ in 0..30 {
            let form = |deg: usize, rng: &mut ChaCha8Rng| loop {
                let f = BinaryForm::new((0..=deg).map(|_| q(rint(rng, 3))).collect());
                if !f.is_zero() {
                    return f;
                }
            };
            let c = form(rng.gen_range(0..=2), &mut rng);
            let f = form(rng.gen_range(0..=2), &mut rng).mul(&c);
            let g = form(rng.gen_range(0..=2), &mut rng).mul(&c);
            let fac = binary_form_gcd_factor(&f, Some(&g))?;
            let mut prod = fac.remainder.clone();
            for (p, m) in &fac.factors {
                for _ in 0..*m {
                    prod = prod.mul(&p.linear_form());
                }
            }
            ok &= prod == fac.gcd
                && f.exact_div(&fac.gcd).is_some()
                && g.exact_div(&fac.gcd).is_some();
        }
        Ok((
            ok,
            format!("30 pairs, {}", if ok { "all hold" } else { "violated" }),
        ))
    });
    record(
        r,
        "props.exact.binary_gcd",
        "factors x remainder = gcd; gcd divides both forms",
        "30 pairs, all hold".into(),
        res,
    );
}

fn random_element(rng: &mut ChaCha8Rng, alg: &Arc<LieAlgebra>) -> Element {
    Element::new(alg, (0..alg.dim()).map(|_| q(rint(rng, 3))).collect())
}

/// The algebra with basis `b′_i = Σ_j P_{ji} b_j`.
fn change_basis(alg: &Arc<LieAlgebra>, p: &MatrixQ) -> Result<Arc<LieAlgebra>, Box<dyn Error>> {
    let n = alg.dim();
    let pinv = p.inverse()?;
    let cols: Vec<Vec<Q>> = (0..n).map(|j| p.col(j)).collect();
    let mut table: StructureTable = vec![Vec::new(); n * n];
    for i in 0..n {
        for j in 0..n {
            let c = pinv.mul_vec(&alg.bracket_vec(&cols[i], &cols[j]));
            table[i * n + j] = c
                .into_iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .collect();
        }
    }
    Ok(LieAlgebra::new(
        format!("{}'", alg.name()),
        alg.labels().to_vec(),
        table,
    )?)
}

fn chevalley_suites(r: &mut Report, seed: u64) {
    for (idx, kind) in [RootType::G2, RootType::B3, RootType::D4]
        .into_iter()
        .enumerate()
    {
        let name = kind.name();
        let alg = match chevalley_algebra(kind) {
            Ok(a) => a,
            Err(e) => {
                r.check_that(
                    &format!("props.chevalley.{name}.setup"),
                    "Chevalley algebra",
                    "built",
                    false,
                    e,
                );
                continue;
            }
        };
        let jac = alg.check_jacobi();
        r.check_that(
            &format!("props.chevalley.{name}.jacobi"),
            "Jacobi identity on all basis triples",
            "holds",
            jac.is_ok(),
            jac.map_or_else(|e| e.to_string(), |_| "holds".into()),
        );
        r.check(
            &format!("props.chevalley.{name}.killing_rank"),
            "Killing form nondegenerate",
            alg.dim(),
            alg.killing_matrix().rank(),
        );
        let mut rng = suite_rng(seed, 10 + idx as u64);
        let res = attempt(|| {
            let mut ok = true;
            for _ in 0..100 {
                let (x, y, z) = (
                    random_element(&mut rng, &alg),
                    random_element(&mut rng, &alg),
                    random_element(&mut rng, &alg),
                );
                ok &= (x.bracket(&y)?.killing(&z)? + y.killing(&x.bracket(&z)?)?).is_zero();
            }
            Ok((
                ok,
                format!("100 triples, {}", if ok { "all hold" } else { "violated" }),
            ))
        });
        record(
            r,
            &format!("props.chevalley.{name}.killing_invariance"),
            "k([x,y],z) + k(y,[x,z]) = 0",
            "100 triples, all hold".into(),
            res,
        );
    }

    let mut rng = suite_rng(seed, 20);
    let res = attempt(|| {
        let g = chevalley_algebra(RootType::G2)?;
        let rs = g.root_system().expect("roots").clone();
        let roots = rs.roots();
        let nilpotents: Vec<Element> = (2..g.dim()).map(|i| Element::basis(&g, i)).collect();
        let mut ok = true;
        for _ in 0..20 {
            // s in the Cartan subalgebra killing a root α, n a multiple of x_α
            let ai = rng.gen_range(0..roots.len());
            let alpha = &roots[ai];
            let (a, b) = (rs.pairing(alpha, 1), -rs.pairing(alpha, 0));
            let scale = q(rint(&mut rng, 3).max(1));
            let s = Element::new(&g, {
                let mut c = vec![Q::zero(); g.dim()];
                c[0] = q(a) * &scale;
                c[1] = q(b) * &scale;
                c
            });
            let n = Element::basis(&g, 2 + ai).scale(&q(rint(&mut rng, 3)));
            // a common conjugation keeps [s, n] = 0
            let mut s = s;
            let mut n = n;
            for _ in 0..3 {
                let x = nilpotents
                    .choose(&mut rng)
                    .expect("nonempty")
                    .scale(&q(rint(&mut rng, 2)));
                s = conjugate(&x, &s);
                n = conjugate(&x, &n);
            }
            ok &= s.bracket(&n)?.is_zero();
            let x = &s + &n;
            let (s1, n1) = jordan_decomposition(&x)?;
            ok &= s1 == s && n1 == n;
            let (ss, sn) = jordan_decomposition(&s)?;
            let (ns, nn) = jordan_decomposition(&n)?;
            ok &= ss == s && sn.is_zero() && ns.is_zero() && nn == n;
            let p = random_unimodular(&mut rng, g.dim());
            let g2 = change_basis(&g, &p)?;
            let pinv = p.inverse()?;
            let (s2, n2) = jordan_decomposition(&Element::new(&g2, pinv.mul_vec(x.coeffs())))?;
            ok &= p.mul_vec(s2.coeffs()) == s.coeffs() && p.mul_vec(n2.coeffs()) == n.coeffs();
        }
        Ok((
            ok,
            format!("20 elements, {}", if ok { "all hold" } else { "violated" }),
        ))
    });
    record(
        r,
        "props.chevalley.G2.jordan",
        "x = s + n recovered; s -> (s, 0); n -> (0, n); independent of the basis",
        "20 elements, all hold".into(),
        res,
    );

    let res = attempt(|| {
        let g = chevalley_algebra(RootType::G2)?;
        let rs = g.root_system().expect("roots").clone();
        let mut ok = true;
        let mut dims = Vec::new();
        for (i, root) in rs.roots().iter().enumerate() {
            let x = Element::basis(&g, 2 + i);
            let orbit = x.ad_matrix().rank();
            let cent = centralizer(std::slice::from_ref(&x), &Subspace::whole(&g)).dim();
            let long = rs.inner(root, root) > 2;
            ok &= cent == 14 - orbit && orbit == if long { 6 } else { 8 };
            dims.push(orbit);
        }
        Ok((ok, format!("{dims:?}")))
    });
    record(
        r,
        "props.chevalley.G2.root_orbits",
        "dim g^x = 14 - dim G.x for root vectors; 6 for long, 8 for short roots",
        "holds".into(),
        res,
    );
}

fn sympair_suites(r: &mut Report, seed: u64, config: &Config, fx: &G2Fixture) {
    let pair = &fx.pair;
    let alg = pair.algebra();
    let p_basis = pair.p().elements();
    let k_nilpotents: Vec<Element> = ["x1", "y1", "x6", "y6"]
        .iter()
        .filter_map(|s| fx.element(s).ok())
        .collect();
    let mut reps: Vec<Element> = ORBIT_REPS
        .iter()
        .filter_map(|(_, s, _, _)| fx.element(s).ok())
        .collect();
    reps.extend(
        [J1_V, J2_V, N5B_SLICE_BASE]
            .iter()
            .filter_map(|s| fx.element(s).ok()),
    );

    let mut rng = suite_rng(seed, 30);
    let res = attempt(|| {
        let mut ok = true;
        let mut seen = std::collections::BTreeSet::new();
        for i in 0..100 {
            let x = match i % 4 {
                0 | 1 => random_combination(&mut rng, alg, &p_basis, i % 4 == 1),
                _ => {
                    let rep = reps.choose(&mut rng).expect("reps").clone();
                    random_conjugate(&mut rng, &k_nilpotents, &rep)
                }
            };
            let d = k_orbit_dim(pair, &x)?;
            let kx = centralizer(std::slice::from_ref(&x), pair.k()).dim();
            let px = centralizer(std::slice::from_ref(&x), pair.p()).dim();
            ok &= pair.k().dim() - kx == pair.p().dim() - px && pair.k().dim() - kx == d;
            seen.insert(d);
        }
        Ok((
            ok,
            format!(
                "100 samples, orbit dims {seen:?}, {}",
                if ok { "all hold" } else { "violated" }
            ),
        ))
    });
    match res {
        Ok((ok, s)) => r.check_that(
            "props.sympair.halving",
            "2 dim [k,x] = dim [g,x] and dim k - dim k^x = dim p - dim p^x",
            "100 samples, all hold",
            ok,
            s,
        ),
        Err(e) => r.check_that(
            "props.sympair.halving",
            "dim K.x = 1/2 dim G.x",
            "100 samples, all hold",
            false,
            format!("error: {e}"),
        ),
    }

    let mut rng = suite_rng(seed, 31);
    let res = attempt(|| {
        let mut ok = true;
        let (mut yes, mut no) = (0, 0);
        for i in 0..50 {
            let levi = if i % 2 == 0 { &fx.j1 } else { &fx.j2 };
            let derived = derived_algebra(levi.space()).intersect(pair.p()).elements();
            let y = match rng.gen_range(0..3) {
                0 => random_combination(&mut rng, alg, &derived, false),
                1 => {
                    &levi.v().scale(&q(rint(&mut rng, 3).max(1)))
                        + &random_combination(&mut rng, alg, &derived, false)
                }
                _ => random_combination(&mut rng, alg, &levi.p().elements(), false),
            };
            let c = u_l_conditions(pair, levi, &y)?;
            ok &= c.iter().all(|&b| b == c[0]);
            if c[0] {
                yes += 1;
            } else {
                no += 1;
            }
        }
        Ok((ok, format!("50 coherent ({yes} in U_l, {no} outside)")))
    });
    record(
        r,
        "props.sympair.u_l_coherence",
        "the four characterizations of U_l agree",
        "coherent".into(),
        res,
    );

    let res = attempt(|| {
        let mut ok = true;
        let mut count = 0;
        let whole = Levi::whole(pair);
        let zero = Element::zero(alg);
        let mut cases: Vec<(Levi, Element)> = reps
            .iter()
            .filter(|x| is_nilpotent(x))
            .map(|x| (whole.clone(), x.clone()))
            .collect();
        cases.push((whole.clone(), zero.clone()));
        for levi in [&fx.j1, &fx.j2] {
            cases.push((levi.clone(), zero.clone()));
            for n in derived_algebra(levi.space()).intersect(pair.p()).elements() {
                if is_nilpotent(&n) {
                    cases.push((levi.clone(), n));
                }
            }
        }
        for (levi, e) in cases {
            let t = normal_triple(pair, &levi, &e)?;
            let s = slodowy_slice_in(pair, &levi, &t)?;
            ok &= levi.orbit_dim(&e) + s.dim() == levi.p().dim();
            count += 1;
        }
        Ok((
            ok,
            format!(
                "{count} slices, {}",
                if ok { "all transversal" } else { "violated" }
            ),
        ))
    });
    record(
        r,
        "props.sympair.transversality",
        "p_l = [k_l, e] + p_l^f",
        "all transversal".into(),
        res,
    );

    let mut rng = suite_rng(seed, 32);
    let res = attempt(|| {
        let hat = hat_pair(alg)?;
        let g_basis: Vec<Element> = (0..alg.dim()).map(|i| Element::basis(alg, i)).collect();
        let g_nilpotents: Vec<Element> = (2..alg.dim()).map(|i| Element::basis(alg, i)).collect();
        let mut ok = true;
        for i in 0..50 {
            let x = match i % 3 {
                0 => random_combination(&mut rng, alg, &g_basis, false),
                1 => random_combination(&mut rng, alg, &g_basis, true),
                _ => {
                    let rep = reps.choose(&mut rng).expect("reps").clone();
                    random_conjugate(&mut rng, &g_nilpotents, &rep)
                }
            };
            ok &= k_orbit_dim(&hat, &hat_embed(&hat, &x))? == x.ad_matrix().rank();
        }
        Ok((
            ok,
            format!("50 samples, {}", if ok { "all agree" } else { "mismatch" }),
        ))
    });
    record(
        r,
        "props.sympair.hat_pair",
        "dim K^.(x,-x) = dim G.x",
        "50 samples, all agree".into(),
        res,
    );

    // Lines of the two subregular slices and their classes, shared by the
    // contraction and open-cover suites.
    let opts = config.search_options();
    let res = attempt(|| {
        let mut classes = Vec::new();
        let mut ok = true;
        for base in ["x5 + y3", N5B_SLICE_BASE] {
            let slice = slice_at(fx, &fx.element(base)?)?;
            ok &= slice.weights().iter().all(|&w| 2 - w >= 2);
            for line in stratum_lines(&slice, SUBREGULAR, opts)? {
                match line_point(fx, &slice, &line, SUBREGULAR)? {
                    Some((x, class)) => {
                        ok &= contraction_stays(fx, &slice, &x, &class)?
                            && line.min_contraction_exponent >= 2;
                        classes.push(class);
                    }
                    None => ok = false,
                }
            }
        }
        if !ok {
            return Err("contraction family leaves its class".into());
        }
        Ok(classes)
    });
    let line_classes = match res {
        Ok(c) => {
            r.check_that(
                "props.sympair.contraction",
                "F_t.(e + x) stays in one class for t = 1, 2, 1/3",
                "all lines",
                !c.is_empty(),
                format!("{} lines", c.len()),
            );
            c
        }
        Err(e) => {
            r.check_that(
                "props.sympair.contraction",
                "F_t.(e + x) stays in one class",
                "all lines",
                false,
                format!("error: {e}"),
            );
            Vec::new()
        }
    };

    let mut rng = suite_rng(seed, 33);
    let res = attempt(|| {
        let mut ok = !line_classes.is_empty();
        for _ in 0..20 {
            let v = if rng.gen_bool(0.5) {
                fx.j1.v()
            } else {
                fx.j2.v()
            };
            let c = q(rint(&mut rng, 3).max(1));
            let z = random_conjugate(&mut rng, &k_nilpotents, &v.scale(&c));
            ok &= line_classes.contains(&classify_point(pair, &z)?);
        }
        Ok((
            ok,
            format!(
                "20 points, {}",
                if ok {
                    "each met by a slice line"
                } else {
                    "missed"
                }
            ),
        ))
    });
    record(
        r,
        "props.sympair.open_cover",
        "each subregular class meets a subregular slice along a line",
        "20 points, each met by a slice line".into(),
        res,
    );
}

/// `q ⊗ (c₊ ⊗ d₁ + c₋ ⊗ d₂)` in `p₁`, with `d` given by its `(d₊, d₋)`
/// coefficients.
fn pure_tensor(g1: &FixedSubalgebra, quad: [i64; 3], d1: [i64; 2], d2: [i64; 2]) -> Element {
    let mut c = vec![Q::zero(); g1.dim()];
    for (k, qk) in quad.iter().enumerate() {
        for sd in 0..2 {
            c[g1.k_dim() + 4 * k + sd] += q(qk * d1[sd]);
            c[g1.k_dim() + 4 * k + 2 + sd] += q(qk * d2[sd]);
        }
    }
    Element::new(g1.algebra(), c)
}

fn mul_quadratic_linear(quad: [i64; 3], l: [i64; 2]) -> [i64; 4] {
    let mut out = [0; 4];
    for (i, a) in quad.iter().enumerate() {
        for (j, b) in l.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

fn fourality_suites(r: &mut Report, seed: u64, t: &Tower) {
    let (a1, a2) = (t.g1.algebra(), t.g2.algebra());
    let mut rng = suite_rng(seed, 40);
    let res = attempt(|| {
        let pi = Projection::new(&t.g1, &t.g2)?;
        let mut ok = true;
        let mut brute = 0;
        for _ in 0..20 {
            let draw = |n: usize, rng: &mut ChaCha8Rng| loop {
                let v: Vec<i64> = (0..n).map(|_| rint(rng, 3)).collect();
                if v.iter().any(|&x| x != 0) {
                    return v;
                }
            };
            let quad: [i64; 3] = draw(3, &mut rng).try_into().expect("3");
            let d: Vec<i64> = draw(4, &mut rng);
            let z0 = pure_tensor(&t.g1, quad, [d[0], d[1]], [d[2], d[3]]);
            let y = pi.apply(&z0)?;
            let fiber = fiber_over(&t.g1, &t.g2, &y)?;
            ok &= fiber.points.contains(&z0);
            // F± as integer cubics
            let f: Vec<[i64; 4]> = (0..2)
                .map(|sd| {
                    let mut c = [0i64; 4];
                    for (k, ck) in c.iter_mut().enumerate() {
                        let v = &y.coeffs()[t.g2.k_dim() + 2 * k + sd];
                        *ck = v.to_integer().try_into().unwrap_or(i64::MAX);
                    }
                    c
                })
                .collect();
            let range = -3..=3i64;
            for q0 in range.clone() {
                for q1 in range.clone() {
                    for q2 in range.clone() {
                        let quad = [q0, q1, q2];
                        if quad == [0, 0, 0] {
                            continue;
                        }
                        let solve = |target: &[i64; 4]| -> Vec<[i64; 2]> {
                            let mut out = Vec::new();
                            for a in -3..=3i64 {
                                for b in -3..=3i64 {
                                    if mul_quadratic_linear(quad, [a, b]) == *target {
                                        out.push([a, b]);
                                    }
                                }
                            }
                            out
                        };
                        for lp in solve(&f[0]) {
                            for lm in solve(&f[1]) {
                                // ℓ± = (coefficient of c₊, of c₋)
                                let z = pure_tensor(&t.g1, quad, [lp[0], lm[0]], [lp[1], lm[1]]);
                                brute += 1;
                                ok &= fiber.points.contains(&z);
                            }
                        }
                    }
                }
            }
        }
        Ok((
            ok,
            format!(
                "20 instances, {brute} brute-force points, {}",
                if ok {
                    "all found by the solver"
                } else {
                    "missed"
                }
            ),
        ))
    });
    match res {
        Ok((ok, s)) => r.check_that(
            "props.fourality.fiber_oracle",
            "solver fibre contains the constructed point and every pure tensor of height <= 3 over y",
            "20 instances, all found by the solver",
            ok,
            s,
        ),
        Err(e) => r.check_that("props.fourality.fiber_oracle", "fibre solver", "20 instances", false, format!("error: {e}")),
    }

    let mut rng = suite_rng(seed, 41);
    let res = attempt(|| {
        let k1_nilpotents: Vec<Element> = ["ec", "fc", "e3", "f3", "ed", "fd"]
            .iter()
            .map(|s| parse_in(a1, s))
            .collect::<Result<_, _>>()?;
        let mut samples = Vec::new();
        for (_, y, _, _) in FIBER_TABLE {
            let fiber = fiber_over(&t.g1, &t.g2, &parse_in(a2, y)?)?;
            samples.extend(fiber.points.into_iter().filter(is_nilpotent));
        }
        let base = samples.clone();
        for _ in 0..20 {
            let z = base.choose(&mut rng).expect("samples");
            samples.push(random_conjugate(&mut rng, &k1_nilpotents, z));
        }
        let mut ok = true;
        for z in &samples {
            let d = ab_diagram(&t.g1, z)?;
            let m = v7_matrix(&t.g1, z)?;
            let mut jordan = Vec::new();
            let ranks: Vec<usize> = (0..=8).map(|k| m.pow(k).rank()).collect();
            for size in (1..=7).rev() {
                // blocks of size ≥ k number rank(M^{k-1}) − rank(M^k)
                let at_least = |k: usize| ranks[k - 1] - ranks[k];
                jordan.extend(std::iter::repeat_n(
                    size,
                    at_least(size) - at_least(size + 1),
                ));
            }
            ok &= d.count('a') == 3 && d.count('b') == 4 && d.shape() == jordan;
        }
        Ok((
            ok,
            format!(
                "{} nilpotent samples, {}",
                samples.len(),
                if ok { "all hold" } else { "violated" }
            ),
        ))
    });
    record(
        r,
        "props.fourality.ab_shape",
        "3 a's, 4 b's; row lengths = Jordan type on V7",
        "all hold".into(),
        res,
    );

    let mut rng = suite_rng(seed, 42);
    let res = attempt(|| {
        let pi = Projection::new(&t.g1, &t.g2)?;
        let k2: Vec<Element> = (0..t.g2.k_dim()).map(|i| Element::basis(a2, i)).collect();
        let mut ok = true;
        for _ in 0..10 {
            let v = random_combination(&mut rng, a2, &k2, false);
            let v1 = pi.include(&v)?;
            for _ in 0..10 {
                let x = random_element(&mut rng, a1);
                ok &= pi.apply(&v1.bracket(&x)?)? == v.bracket(&pi.apply(&x)?)?;
            }
        }
        Ok((
            ok,
            format!("100 pairs, {}", if ok { "all hold" } else { "violated" }),
        ))
    });
    record(
        r,
        "props.fourality.pi_equivariance",
        "pi([v, x]) = [v, pi(x)]",
        "100 pairs, all hold".into(),
        res,
    );
}
