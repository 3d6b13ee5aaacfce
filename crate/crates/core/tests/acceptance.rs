//! Acceptance criteria 1–9. Prints one line per criterion and exits non-zero
//! if any criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use orbifolder::catalog::{self, identify_root_system, FAMILIES};
use orbifolder::enumeration::Enumerator;
use orbifolder::exact::{arith, hermite_normal_form, rat, smith_normal_form};
use orbifolder::isometry::{order_doubling, Fixture, Isometry};
use orbifolder::lattice::{projection_lattice, Lattice};
use orbifolder::lift::{Cocycle, LiftedAutomorphism};
use orbifolder::orbifold::{c_coeff_product, c_coeff_system, OrbifoldContext};
use orbifolder::search::{self, golden_row, power_closure, Execution, SearchOptions, SearchResult};
use orbifolder::{Int, IntMatrix, Rational};

type Check = Result<String, String>;

struct Outcome {
    passed: bool,
}

fn run(id: u32, title: &str, limit: Option<Duration>, f: impl FnOnce() -> Check) -> Outcome {
    let start = Instant::now();
    let res = f();
    let elapsed = start.elapsed();
    let over = limit.is_some_and(|l| elapsed > l);
    let limit_text = limit.map_or("exact".to_string(), |l| format!("limit {} s", l.as_secs()));
    let (passed, detail) = match res {
        Ok(d) if !over => (true, d),
        Ok(d) => (false, format!("{d}; over time")),
        Err(e) => (false, e),
    };
    println!(
        "criterion {id}: {} {title} [{:.1} s, {limit_text}] {detail}",
        if passed { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    Outcome { passed }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

// ---------------------------------------------------------------------------

fn criterion_1() -> Check {
    let mut roots_total = 0;
    for label in catalog::niemeier_labels() {
        let n = catalog::niemeier(&label).map_err(err)?;
        let l = &n.lattice;
        ensure(l.rank() == 24, || format!("{label}: rank {}", l.rank()))?;
        ensure(*l.det() == Int::from(1), || format!("{label}: det {}", l.det()))?;
        ensure((0..24).all(|i| l.gram()[(i, i)].is_even()), || format!("{label}: not even"))?;
        let mut expected = n.spec.components.clone();
        expected.sort();
        let found = identify_root_system(l).map_err(err)?;
        ensure(found == expected, || {
            format!(
                "{label}: identified {} but expected {}",
                catalog::format_root_system(&found),
                catalog::format_root_system(&expected)
            )
        })?;
        roots_total += n.roots.roots.len();
    }
    let leech = catalog::niemeier("A24").map_err(err)?;
    ensure(leech.roots.roots.is_empty(), || "Leech lattice has roots".into())?;
    let e = Enumerator::new(leech.lattice.gram()).map_err(err)?;
    ensure(e.vectors_up_to_norm(&rat(2, 1)).is_empty(), || "Leech lattice has norm-2 vectors".into())?;
    let four = e.vectors_up_to_norm(&rat(4, 1)).len();
    ensure(four == 196560, || format!("Leech lattice has {four} vectors of norm 4"))?;
    Ok(format!("24 lattices, {roots_total} roots in total, Leech minimum 4 with {four} minimal vectors"))
}

fn criterion_2() -> Check {
    let classes = catalog::frame_classes().map_err(err)?;
    ensure(classes.len() == 11, || format!("{} Frame shapes", classes.len()))?;
    for c in classes {
        let deg: i64 = c.frame_shape.exponents().iter().map(|(t, b)| *t as i64 * b).sum();
        ensure(deg == 24, || format!("family {}: Σ t·b_t = {deg}", c.family))?;
    }
    let voas: u32 = classes.iter().map(|c| c.voa_count).sum();
    ensure(voas == 70, || format!("VOA counts sum to {voas}"))?;
    let t2 = catalog::class_counts().map_err(err)?;
    let expected = [24u32, 76, 27, 15, 31, 8, 26, 3, 6, 6, 4];
    let mut total = 0;
    for (f, want) in FAMILIES.iter().zip(expected) {
        let got: u32 = t2.rows.iter().map(|r| r.family_counts(*f).iter().sum::<u32>()).sum();
        ensure(got == want, || format!("family {f}: class table total {got}, expected {want}"))?;
        total += got;
    }
    ensure(total == 226, || format!("class table total {total}"))?;
    Ok(format!("11 Frame shapes of degree 24, 70 VOAs, 226 classes per family {expected:?}"))
}

fn criterion_3() -> Check {
    let mut checked = 0;
    for n in 1..=60u64 {
        let sys = c_coeff_system(n).map_err(err)?;
        for d in arith::divisors(n) {
            let p = c_coeff_product(n, d);
            ensure(sys[&d] == p, || format!("c_{n}({d}): product {p}, system {}", sys[&d]))?;
            checked += 1;
        }
    }
    let c2 = (c_coeff_product(2, 1), c_coeff_product(2, 2));
    ensure(c2 == (rat(3, 1), rat(-1, 1)), || format!("c_2 = {c2:?}"))?;
    Ok(format!("{checked} coefficients agree for n ≤ 60; c_2 = (3, -1)"))
}

struct Found {
    fixture: Fixture,
    result: SearchResult,
}

fn criterion_4(found: &mut Vec<Found>) -> Check {
    let report = search::reproduce_table('A', None, Execution::default()).map_err(err)?;
    for cell in &report.cells {
        let res = cell.result.as_ref().ok_or_else(|| format!("{}: no search", cell.column))?;
        ensure(cell.status == "pass", || format!("{}: {}", cell.column, cell.notes.join("; ")))?;
        ensure(res.classes.len() == 1, || format!("{}: {} classes", cell.column, res.classes.len()))?;
        let r = &res.classes[0].report;
        let n = catalog::niemeier(&cell.lattice).map_err(err)?;
        let want = 24 + n.roots.roots.len() as i64;
        ensure(r.short.is_short, || format!("{}: identity not short", cell.column))?;
        ensure(r.orbifold_dim == want, || format!("{}: dim {} instead of {want}", cell.column, r.orbifold_dim))?;
        let diag = catalog::golden_table('A').map_err(err)?.cell(&cell.column).map_err(err)?;
        ensure(
            diag.len() == 1 && r.identification.resolved == Some(diag[0].entry),
            || format!("{}: entry {:?}, table {:?}", cell.column, r.identification.resolved, diag.iter().map(|h| h.entry).collect::<Vec<_>>()),
        )?;
        found.push(Found { fixture: Fixture::identity(&cell.lattice).map_err(err)?, result: res.clone() });
    }
    Ok(format!("{}/24 identities short with dim 24 + |Φ| and the diagonal entry", report.passed))
}

fn criterion_5(found: &mut Vec<Found>) -> Check {
    let fixture = Fixture::load("e8x3_swap").map_err(err)?;
    let res = search::find_short(&fixture, &SearchOptions::default()).map_err(err)?;
    ensure(res.count.exact && res.count.upper == 1, || format!("count {:?}", res.count))?;
    let r = &res.classes[0].report;
    ensure(r.vacuum_anomaly == rat(1, 2), || format!("vacuum anomaly {}", r.vacuum_anomaly))?;
    ensure(r.type_residue == 0, || format!("type {}", r.type_residue))?;
    ensure(r.conformal_weights.iter().all(|w| w.rho >= rat(1, 1)), || "ρ < 1".into())?;
    ensure(r.fixed_dim(1) == Some(368), || format!("fixed dim {:?}", r.fixed_dim(1)))?;
    ensure(r.orbifold_dim == 384, || format!("orbifold dim {}", r.orbifold_dim))?;
    ensure(r.orbifold_rank == Some(16), || format!("rank {:?}", r.orbifold_rank))?;
    ensure(r.identification.resolved == Some(62), || format!("entry {:?}", r.identification.resolved))?;
    let row = golden_row(&fixture, 62).map_err(err)?;
    ensure(row.as_deref() == Some("B1"), || format!("row {row:?}"))?;
    let detail = format!(
        "{} candidates, 1 class: ρ = {}, fixed dim 368, dim 384, rank 16, entry 62 ({}) row B1",
        res.filters.candidates,
        r.conformal_weights[0].rho,
        r.identification.lie.clone().unwrap_or_default()
    );
    found.push(Found { fixture, result: res });
    Ok(detail)
}

fn criterion_6(found: &mut Vec<Found>) -> Check {
    let mut lines = Vec::new();
    for family in FAMILIES {
        let table = catalog::golden_table(family).map_err(err)?;
        let mut cells: Vec<String> = Vec::new();
        if family == 'A' {
            cells.push("A24".into());
        } else {
            for name in catalog::fixture_names().map_err(err)? {
                let spec = catalog::fixture(&name).map_err(err)?;
                let col = spec.column.clone().unwrap_or(spec.lattice.clone());
                if spec.family_char() == Some(family) && table.column_index(&col).is_some() {
                    cells.push(col);
                }
            }
        }
        ensure(!cells.is_empty(), || format!("family {family}: no fixture"))?;
        let report = search::reproduce_table(family, Some(&cells), Execution::default()).map_err(err)?;
        for cell in &report.cells {
            ensure(cell.status == "pass", || format!("{family} {}: {}", cell.column, cell.notes.join("; ")))?;
            let c = cell.count.as_ref().expect("searched cell");
            let entries: BTreeSet<u32> = cell.found_entries.iter().flatten().copied().collect();
            lines.push(format!(
                "{family}/{} {} {entries:?}",
                cell.column,
                if c.exact { format!("{}", c.upper) } else { format!("{}≤{}≤{}", c.lower, cell.expected_count, c.upper) }
            ));
            if family != 'A' {
                let fixture = Fixture::load(cell.fixture.as_deref().expect("fixture")).map_err(err)?;
                found.push(Found { fixture, result: cell.result.clone().expect("search") });
            }
        }
    }
    Ok(lines.join(", "))
}

fn criterion_7(found: &[Found]) -> Check {
    let mut checks = 0;
    for f in found {
        for class in &f.result.classes {
            let entry = class.report.identification.resolved.ok_or_else(|| format!("{}: unresolved class", f.fixture.spec.name))?;
            let row = if f.fixture.family() == Some('A') { None } else { golden_row(&f.fixture, entry).map_err(err)? };
            for p in power_closure(&f.fixture, class, row.as_deref()).map_err(err)? {
                ensure(p.ok, || {
                    format!(
                        "{} g^{}: short {} entry {:?}, expected {:?} ({})",
                        f.fixture.spec.name, p.power, p.short, p.entry, p.expected, p.source
                    )
                })?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} powers short and identified as tabulated"))
}

fn criterion_8(found: &[Found]) -> Check {
    let mut classes = 0;
    for f in found {
        for c in &f.result.classes {
            let r = &c.report;
            let name = &f.fixture.spec.name;
            ensure(r.type_residue == 0, || format!("{name}: type {}", r.type_residue))?;
            let o = r.orbit_lattice.as_ref().ok_or_else(|| format!("{name}: no orbit lattice"))?;
            ensure(o.index == Int::from(r.order), || format!("{name}: index {} for order {}", o.index, r.order))?;
            ensure(o.discriminant_identity_holds(r.order), || format!("{name}: disc {} vs {}", o.disc, o.fixed_disc))?;
            ensure(r.gdh_certificate, || format!("{name}: no generalised deep hole certificate"))?;
            classes += 1;
        }
    }
    Ok(format!("{classes} classes: type 0, index n, |disc| = n²|disc N^ν|, certificate holds"))
}

// ---------------------------------------------------------------------------
// Criterion 9 helpers

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(Config { cases, failure_persistence: None, ..Config::default() }, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn matrix_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

// d_k = D_k / D_{k-1}, D_k the gcd of the k×k minors.
fn invariant_factors_by_minors(m: &IntMatrix) -> Vec<Int> {
    let mut prev = Int::from(1);
    let mut out = Vec::new();
    for k in 1..=m.rows().min(m.cols()) {
        let mut g = Int::zero();
        for rs in subsets(m.rows(), k) {
            for cs in subsets(m.cols(), k) {
                let sub: Vec<Vec<Int>> = rs.iter().map(|&r| cs.iter().map(|&c| m[(r, c)].clone()).collect()).collect();
                g = g.gcd(&IntMatrix::from_rows(&sub).det());
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

fn check_snf_hnf() -> Check {
    let mut r = runner(300);
    r.run(&matrix_strategy(), |rows| {
        let m = IntMatrix::from_i64(&rows);
        let snf = smith_normal_form(&m);
        prop_assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.s.clone());
        prop_assert!(snf.u.det().abs() == Int::from(1) && snf.v.det().abs() == Int::from(1));
        prop_assert_eq!(snf.invariant_factors(), invariant_factors_by_minors(&m));
        let (h, u) = hermite_normal_form(&m);
        prop_assert_eq!(u.mul(&m), h.clone());
        prop_assert!(u.det().abs() == Int::from(1));
        let mut last: Option<usize> = None;
        for i in 0..h.rows() {
            match (0..h.cols()).find(|&j| !h[(i, j)].is_zero()) {
                Some(p) => {
                    prop_assert!(last.is_none_or(|q| p > q), "pivots not increasing");
                    prop_assert!(h[(i, p)].is_positive());
                    for k in 0..i {
                        prop_assert!(!h[(k, p)].is_negative() && h[(k, p)] < h[(i, p)]);
                    }
                    last = Some(p);
                }
                None => last = Some(usize::MAX),
            }
        }
        Ok(())
    })
    .map_err(err)?;
    Ok("SNF/HNF".into())
}

fn gram_strategy() -> impl Strategy<Value = (Vec<Vec<i64>>, i64, Vec<(i64, i64)>)> {
    (1usize..=4).prop_flat_map(|n| {
        (
            prop::collection::vec(prop::collection::vec(-2i64..=2, n), n),
            1i64..=10,
            prop::collection::vec((0i64..4, 1i64..=4), n),
        )
    })
}

fn brute_force(gram: &IntMatrix, t: &[Rational], bound: &Rational) -> Vec<(Vec<Rational>, Rational)> {
    let n = gram.rows();
    let inv = gram.to_qmatrix().inverse().expect("definite");
    let radius: Vec<i64> = (0..n)
        .map(|i| {
            let b = bound * &inv[(i, i)];
            let mut r = 0i64;
            while rat(r * r, 1) <= b {
                r += 1;
            }
            r
        })
        .collect();
    let centre: Vec<i64> = t.iter().map(|x| -x.round().to_integer().to_string().parse::<i64>().unwrap()).collect();
    let mut out = Vec::new();
    let mut x: Vec<i64> = centre.iter().zip(&radius).map(|(c, r)| c - r - 1).collect();
    loop {
        let v: Vec<Rational> = x.iter().zip(t).map(|(a, b)| rat(*a, 1) + b).collect();
        let gv = gram.mul_qvec(&v);
        let norm: Rational = v.iter().zip(&gv).map(|(a, b)| a * b).sum();
        if norm <= *bound && !norm.is_zero() {
            out.push((v, norm));
        }
        let mut i = 0;
        loop {
            if i == n {
                out.sort();
                return out;
            }
            x[i] += 1;
            if x[i] <= centre[i] + radius[i] + 1 {
                break;
            }
            x[i] = centre[i] - radius[i] - 1;
            i += 1;
        }
    }
}

fn check_enumeration() -> Check {
    let mut r = runner(120);
    r.run(&gram_strategy(), |(a, bound, shift)| {
        let n = a.len();
        let a = IntMatrix::from_i64(&a);
        let gram = a.transpose().mul(&a).add(&IntMatrix::identity(n));
        let e = Enumerator::new(&gram).expect("positive definite");
        let b = rat(bound, 1);
        let zero = vec![rat(0, 1); n];
        let fast: Vec<Vec<Rational>> =
            e.vectors_up_to_norm(&b).into_iter().map(|v| v.iter().map(|x| Rational::from_integer(x.clone())).collect()).collect();
        let mut fast = fast;
        fast.sort();
        let slow: Vec<Vec<Rational>> = brute_force(&gram, &zero, &b).into_iter().map(|(v, _)| v).collect();
        prop_assert_eq!(fast, slow);
        let t: Vec<Rational> = shift.iter().map(|(p, q)| rat(p % q, *q)).collect();
        if t.iter().any(|x| !x.is_integer()) {
            let min = e.min_coset_norm(&t);
            let gt = gram.mul_qvec(&t);
            let start: Rational = t.iter().zip(&gt).map(|(x, y)| x * y).sum();
            let box_min = brute_force(&gram, &t, &start).into_iter().map(|(_, q)| q).min().unwrap_or(start);
            prop_assert_eq!(min, box_min);
        }
        Ok(())
    })
    .map_err(err)?;
    Ok("enumeration/CVP".into())
}

fn fixtures() -> Result<Vec<Fixture>, String> {
    catalog::fixture_names().map_err(err)?.iter().map(|n| Fixture::load(n).map_err(err)).collect()
}

fn check_fixture_properties() -> Check {
    let fixtures = fixtures()?;
    for f in &fixtures {
        let nu = &f.isometry;
        let l = nu.lattice();
        let projected = projection_lattice(&l.dual(), nu.matrix(), nu.order());
        let fixed_dual = nu.fixed_lattice().dual();
        ensure(
            projected.contains_lattice(&fixed_dual) && fixed_dual.contains_lattice(&projected),
            || format!("{}: π(L') ≠ (L^ν)'", f.spec.name),
        )?;
        ensure(Cocycle::new(l).check_alternation(l), || format!("{}: cocycle", f.spec.name))?;
        let class = catalog::frame_class(f.family().expect("family")).map_err(err)?;
        let doubling = order_doubling(nu);
        ensure(doubling == class.order_doubling, || format!("{}: doubling flag", f.spec.name))?;
        let g = LiftedAutomorphism::new(nu.clone(), vec![rat(0, 1); 24], Some(f.niemeier.roots.clone())).map_err(err)?;
        let want = if class.order_doubling { 2 * nu.order() } else { nu.order() };
        ensure(g.order() == want, || format!("{}: standard lift has order {}, expected {want}", f.spec.name, g.order()))?;
    }
    Ok(format!("{} fixtures", fixtures.len()))
}

fn permuted(l: &Lattice, perm: &[usize]) -> IntMatrix {
    let n = l.rank();
    let mut p = IntMatrix::zeros(n, n);
    for (i, &j) in perm.iter().enumerate() {
        p[(j, i)] = Int::from(1);
    }
    p
}

fn check_permutation_invariance() -> Check {
    let fixture = Fixture::load("e8x3_swap").map_err(err)?;
    let ctx = OrbifoldContext::for_fixture(&fixture).map_err(err)?;
    let set = search::candidate_h_set(&ctx).map_err(err)?;
    let l = fixture.isometry.lattice();
    let mut r = runner(6);
    let strategy = (Just((0..24).collect::<Vec<usize>>()).prop_shuffle(), 0..set.len());
    r.run(&strategy, |(perm, k)| {
        let h = set[k].clone();
        let g = ctx.automorphism(h.clone()).expect("automorphism");
        let p = permuted(l, &perm);
        let p_inv = p.transpose();
        let gram = p.transpose().mul(l.gram()).mul(&p);
        let l2 = Lattice::new(gram, None).expect("lattice");
        let nu2 = Isometry::new(l2, p_inv.mul(fixture.isometry.matrix()).mul(&p)).expect("isometry");
        let h2 = p_inv.mul_qvec(&h);
        let g2 = LiftedAutomorphism::new(nu2, h2, None).expect("automorphism");
        for d in arith::divisors(g.order()) {
            prop_assert_eq!(g.fixed_weight_one_dim(d), g2.fixed_weight_one_dim(d));
        }
        Ok(())
    })
    .map_err(err)?;
    Ok("fixed dims invariant under basis permutations".into())
}

fn criterion_9() -> Check {
    let checks: [fn() -> Check; 4] = [check_snf_hnf, check_enumeration, check_fixture_properties, check_permutation_invariance];
    let mut parts = Vec::new();
    for check in checks {
        let start = Instant::now();
        let part = check()?;
        parts.push(format!("{part} ({:.1} s)", start.elapsed().as_secs_f64()));
    }
    Ok(parts.join("; "))
}

fn main() {
    // `cargo test` passes harness flags such as `--nocapture`; a name filter
    // that does not mention acceptance skips the run.
    let args: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    if !args.is_empty() && !args.iter().any(|a| "acceptance".contains(a.as_str())) {
        return;
    }
    let min = |m: u64| Some(Duration::from_secs(60 * m));
    let sec = |s: u64| Some(Duration::from_secs(s));
    let mut found = Vec::new();
    let outcomes = vec![
        run(1, "catalog integrity", min(2), criterion_1),
        run(2, "Frame-shape and class-count data", sec(1), criterion_2),
        run(3, "coefficient formula", sec(1), criterion_3),
        run(4, "identity family A", min(5), || criterion_4(&mut found)),
        run(5, "E8^3 involution pipeline", min(10), || criterion_5(&mut found)),
        run(6, "one cell per family", min(60), || criterion_6(&mut found)),
        run(7, "power closure", None, || criterion_7(&found)),
        run(8, "structural identities", None, || criterion_8(&found)),
        run(9, "property suites", min(5), criterion_9),
    ];
    let passed = outcomes.iter().filter(|o| o.passed).count();
    println!("acceptance: {passed}/{} criteria pass", outcomes.len());
    if passed != outcomes.len() {
        std::process::exit(1);
    }
}
