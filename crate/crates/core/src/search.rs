//! Enumeration of short automorphisms `ν̂ e^{−2πi h(0)}` for a fixed `ν`.
//!
//! For an isometry `ν` of order `m` the vectors `h` with `g` of order `m`
//! lie in `s + (1/m)L^ν`, where `s` is zero unless `ν` exhibits order
//! doubling. Only the class of `h` modulo `(L^ν)'` matters, so the search
//! runs over the finite group `(1/m)L^ν / (L^ν)'`, listed through a Smith
//! form. Each candidate passes the cheap filters first (coset order, then the
//! order of `g`, then the type); survivors are grouped into orbits under the
//! supplied centraliser elements and `−1`, and only one representative per
//! orbit gets a full report.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::catalog::{self, GoldenTable};
use crate::exact::{arith, lcm_of_denominators, rat, smith_normal_form, Int, IntMatrix, Rational};
use crate::isometry::{power_equivalence_classes, Fixture, Isometry};
use crate::orbifold::{power_report, Fingerprint, OrbifoldContext, OrbifoldReport};
use crate::{Error, Result};

/// How candidate filtering and report generation are scheduled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// `jobs = 0` uses the global pool. Without the `parallel` feature this
    /// behaves like [`Execution::Sequential`].
    Parallel { jobs: usize },
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel { jobs: 0 }
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// Maps `f` over `0..n`, keeping the output in index order.
    pub fn map<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            Execution::Sequential => (0..n).map(f).collect(),
            Execution::Parallel { jobs } => par_map(jobs, n, f),
        }
    }
}

#[cfg(feature = "parallel")]
fn par_map<T, F>(jobs: usize, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    if jobs == 0 {
        return (0..n).into_par_iter().map(f).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(|| (0..n).into_par_iter().map(&f).collect()),
        Err(_) => (0..n).map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
fn par_map<T, F>(_jobs: usize, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).map(f).collect()
}

/// The finite set `s + (1/m)L^ν` modulo `(L^ν)'`, indexed in mixed radix.
#[derive(Debug)]
pub struct CandidateSet {
    shift: Vec<Rational>,
    /// Columns: `(1/m)·B·U⁻¹`, one per invariant factor.
    steps: Vec<Vec<Rational>>,
    radices: Vec<u64>,
    /// Coordinates of the shift and of each step in the basis of `(L^ν)'`.
    shift_dual: Vec<Rational>,
    steps_dual: Vec<Vec<Rational>>,
}

impl CandidateSet {
    pub fn new(ctx: &OrbifoldContext) -> Result<Self> {
        let m = ctx.nu().order();
        let fixed = ctx.fixed();
        let k = fixed.rank();
        let shift = ctx.order_shift()?;
        let dual = ctx.fixed_dual();
        let mq = rat(m as i64, 1);
        // (L^ν)' in the basis (1/m)B of (1/m)L^ν is m·Gf⁻¹.
        let (gf, _) = fixed.integral_gram();
        let rel = if k == 0 {
            IntMatrix::zeros(0, 0)
        } else {
            gf.to_qmatrix()
                .inverse()
                .ok_or_else(|| Error::Internal("fixed lattice is degenerate".into()))?
                .scale(&mq)
                .to_int()
                .ok_or_else(|| Error::Internal("(L^ν)' is not contained in (1/m)L^ν".into()))?
        };
        let snf = smith_normal_form(&rel);
        let factors = snf.invariant_factors();
        // U·rel·V = D, so y = U·x identifies Z^k / rel·Z^k with ⊕ Z/d_i.
        let u_inv = snf
            .u
            .to_qmatrix()
            .inverse()
            .ok_or_else(|| Error::Internal("Smith transform is singular".into()))?;
        let basis_over_m = fixed.basis().scale(&(Rational::from_integer(Int::from(1)) / &mq));
        let cols = basis_over_m.mul(&u_inv);
        let mut steps = Vec::new();
        let mut radices = Vec::new();
        for (i, d) in factors.iter().enumerate() {
            let d: u64 = d.try_into().map_err(|_| Error::Internal("invariant factor too large".into()))?;
            if d > 1 {
                steps.push(cols.column(i));
                radices.push(d);
            }
        }
        let shift_dual = dual.coordinates(&shift).ok_or(Error::NotInSpan)?;
        let steps_dual = steps.iter().map(|v| dual.coordinates(v).ok_or(Error::NotInSpan)).collect::<Result<_>>()?;
        Ok(CandidateSet { shift, steps, radices, shift_dual, steps_dual })
    }

    pub fn len(&self) -> usize {
        self.radices.iter().map(|&d| d as usize).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn radices(&self) -> &[u64] {
        &self.radices
    }

    fn digits(&self, mut index: usize) -> Vec<u64> {
        self.radices
            .iter()
            .map(|&d| {
                let r = (index % d as usize) as u64;
                index /= d as usize;
                r
            })
            .collect()
    }

    fn combine(base: &[Rational], steps: &[Vec<Rational>], digits: &[u64]) -> Vec<Rational> {
        let mut v = base.to_vec();
        for (step, &c) in steps.iter().zip(digits) {
            if c == 0 {
                continue;
            }
            let cq = rat(c as i64, 1);
            for (vi, si) in v.iter_mut().zip(step) {
                *vi += si * &cq;
            }
        }
        v
    }

    /// The `index`-th candidate `h`.
    pub fn get(&self, index: usize) -> Vec<Rational> {
        Self::combine(&self.shift, &self.steps, &self.digits(index))
    }

    /// Order of the `index`-th candidate modulo `(L^ν)'`.
    pub fn coset_order(&self, index: usize) -> Int {
        lcm_of_denominators(Self::combine(&self.shift_dual, &self.steps_dual, &self.digits(index)).iter())
    }

    pub fn to_vec(&self) -> Vec<Vec<Rational>> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }
}

/// All candidates `h` for the standard lift of `ν`, one per class modulo
/// `(L^ν)'`.
pub fn candidate_h_set(ctx: &OrbifoldContext) -> Result<Vec<Vec<Rational>>> {
    Ok(CandidateSet::new(ctx)?.to_vec())
}

#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    pub execution: Execution,
    /// Extra centraliser elements used to merge candidates into orbits.
    pub dedup_generators: Vec<Isometry>,
}

/// How many candidates each filter stage let through.
#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct FilterCounts {
    pub candidates: usize,
    pub coset_order: usize,
    pub order: usize,
    pub type_zero: usize,
    /// Type checks that needed a closest-vector computation.
    pub type_by_cvp: usize,
}

/// One orbit of short `h` with the report of its representative.
#[derive(Clone, Debug, Serialize)]
pub struct ShortClass {
    pub orbit_size: usize,
    pub report: OrbifoldReport,
}

/// Class counts with their status. `lower` counts distinct fingerprints;
/// `upper` counts orbits. The count is exact when both agree.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ClassCount {
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
}

impl ClassCount {
    pub fn brackets(&self, expected: usize) -> bool {
        self.lower <= expected && expected <= self.upper
    }

    pub fn matches(&self, expected: usize) -> bool {
        if self.exact {
            self.upper == expected
        } else {
            self.brackets(expected)
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub lattice: String,
    pub fixture: String,
    pub fixture_hash: String,
    pub family: Option<char>,
    pub frame_shape: String,
    pub order: u64,
    pub order_doubling: bool,
    pub filters: FilterCounts,
    pub short_vectors: usize,
    pub generators: usize,
    pub count: ClassCount,
    pub classes: Vec<ShortClass>,
}

/// SHA-256 of the fixture's lattice label and matrix, for caching results.
pub fn fixture_hash(f: &Fixture) -> String {
    let mut hasher = Sha256::new();
    hasher.update(f.spec.lattice.as_bytes());
    let m = f.isometry.matrix();
    for r in 0..m.rows() {
        for x in m.row(r) {
            hasher.update(x.to_string().as_bytes());
            hasher.update(b",");
        }
        hasher.update(b";");
    }
    hex::encode(hasher.finalize())
}

enum Verdict {
    Coset,
    Order,
    Type { cvp: bool },
    Short { cvp: bool },
}

fn filter_one(ctx: &OrbifoldContext, set: &CandidateSet, index: usize) -> Result<Verdict> {
    let m = ctx.nu().order();
    if set.coset_order(index) != Int::from(m) {
        return Ok(Verdict::Coset);
    }
    let h = set.get(index);
    if ctx.base().order_with_h(&h) != m {
        return Ok(Verdict::Order);
    }
    let (t, cvp) = match ctx.quick_type(&h, m) {
        Some(t) => (t, false),
        None => (ctx.type_of(&ctx.automorphism(h)?)?, true),
    };
    Ok(if t == 0 { Verdict::Short { cvp } } else { Verdict::Type { cvp } })
}

/// Finds all short `g = ν̂ e^{−2πi h(0)}` for the fixture's `ν` and groups
/// them into classes.
pub fn find_short(fixture: &Fixture, options: &SearchOptions) -> Result<SearchResult> {
    let ctx = OrbifoldContext::for_fixture(fixture)?;
    let mut gens = fixture.dedup_generators.clone();
    gens.extend(options.dedup_generators.iter().cloned());
    let mut result = find_short_in(&ctx, &gens, options.execution)?;
    result.fixture = fixture.spec.name.clone();
    result.fixture_hash = fixture_hash(fixture);
    result.family = fixture.family().or(result.family);
    Ok(result)
}

/// [`find_short`] for a prepared context; `−1` is always added to the
/// generators.
pub fn find_short_in(ctx: &Arc<OrbifoldContext>, generators: &[Isometry], exec: Execution) -> Result<SearchResult> {
    let nu = ctx.nu();
    let m = nu.order();
    let mut filters = FilterCounts::default();
    let set = CandidateSet::new(ctx)?;
    filters.candidates = set.len();
    let verdicts = exec.map(set.len(), |i| filter_one(ctx, &set, i));
    let mut short = Vec::new();
    for (i, v) in verdicts.into_iter().enumerate() {
        let v = v?;
        match v {
            Verdict::Coset => continue,
            Verdict::Order => filters.coset_order += 1,
            Verdict::Type { cvp } | Verdict::Short { cvp } => {
                filters.coset_order += 1;
                filters.order += 1;
                filters.type_by_cvp += cvp as usize;
                if let Verdict::Short { .. } = v {
                    filters.type_zero += 1;
                    short.push(set.get(i));
                }
            }
        }
    }

    let mut gens: Vec<Isometry> = generators.to_vec();
    let minus = Isometry::new(nu.lattice().clone(), IntMatrix::identity(nu.lattice().rank()).neg())?;
    if !gens.iter().any(|g| g.matrix() == minus.matrix()) {
        gens.push(minus);
    }
    let orbits = power_equivalence_classes(&short, nu, &gens)?;
    let reports = exec.map(orbits.len(), |k| ctx.automorphism(short[orbits[k][0]].clone()).and_then(|g| ctx.report(&g)));
    let mut classes = Vec::with_capacity(orbits.len());
    for (orbit, report) in orbits.iter().zip(reports) {
        classes.push(ShortClass { orbit_size: orbit.len(), report: report? });
    }
    classes.sort_by(|a, b| {
        (&a.report.fingerprint, canonical(&a.report.h)).cmp(&(&b.report.fingerprint, canonical(&b.report.h)))
    });
    let fingerprints: BTreeSet<&Fingerprint> = classes.iter().map(|c| &c.report.fingerprint).collect();
    let count = ClassCount { lower: fingerprints.len(), upper: classes.len(), exact: fingerprints.len() == classes.len() };
    Ok(SearchResult {
        lattice: ctx.label().unwrap_or("").to_string(),
        fixture: String::new(),
        fixture_hash: String::new(),
        family: crate::orbifold::family_of(nu),
        frame_shape: nu.frame_shape().to_string(),
        order: m,
        order_doubling: ctx.order_doubling(),
        filters,
        short_vectors: short.len(),
        generators: gens.len(),
        count,
        classes,
    })
}

fn canonical(h: &[Rational]) -> Vec<(Int, Int)> {
    h.iter().map(|x| (x.numer().clone(), x.denom().clone())).collect()
}

// ---------------------------------------------------------------------------
// Table reproduction

/// Check of one power `g^d` of a short class.
#[derive(Clone, Debug, Serialize)]
pub struct PowerCheck {
    pub power: u64,
    pub frame_shape: String,
    pub family: Option<char>,
    pub short: bool,
    pub entry: Option<u32>,
    /// Entries allowed by the power table, or by the golden table of
    /// the power's family when no power table covers it.
    pub expected: Vec<u32>,
    pub source: String,
    pub ok: bool,
}

/// Checks every power `g^d`, `d | n`, `d > 1`, of a short class.
pub fn power_closure(fixture: &Fixture, class: &ShortClass, row: Option<&str>) -> Result<Vec<PowerCheck>> {
    let ctx = OrbifoldContext::for_fixture(fixture)?;
    let g = ctx.automorphism(class.report.h.clone())?;
    let lattice = fixture.niemeier.label();
    let column = fixture.spec.column.clone().unwrap_or_else(|| lattice.to_string());
    let mut out = Vec::new();
    for d in arith::divisors(g.order()) {
        if d == 1 {
            continue;
        }
        let (_, rep) = power_report(&ctx, &g, d)?;
        let fam = crate::orbifold::family_of(&rep_nu(&ctx, d));
        let mut expected = Vec::new();
        let mut source = String::new();
        if let (Some(src_family), Some(row)) = (fixture.family(), row) {
            if let Some((tf, rows)) = catalog::power_targets(src_family, &column, row, d)? {
                let table = catalog::golden_table(tf)?;
                for r in rows {
                    if let Some(gr) = table.row(&r) {
                        expected.push(gr.entry);
                    }
                }
                source = format!("power table {src_family}, p = {d}");
            }
        }
        if source.is_empty() {
            if let Some(f) = fam {
                expected = entries_for_lattice(catalog::golden_table(f)?, lattice)?;
                source = format!("golden table {f}, column {lattice}");
            }
        }
        expected.sort();
        expected.dedup();
        let entry = rep.identification.resolved;
        let ok = rep.short.is_short && entry.is_some_and(|e| expected.contains(&e));
        out.push(PowerCheck {
            power: d,
            frame_shape: rep.frame_shape.to_string(),
            family: fam,
            short: rep.short.is_short,
            entry,
            expected,
            source,
            ok,
        });
    }
    Ok(out)
}

fn rep_nu(ctx: &OrbifoldContext, d: u64) -> Isometry {
    ctx.nu().power(d)
}

fn entries_for_lattice(table: &GoldenTable, lattice: &str) -> Result<Vec<u32>> {
    let mut v = Vec::new();
    for col in table.columns_for(lattice) {
        v.extend(table.cell(&col.key())?.into_iter().map(|h| h.entry));
    }
    Ok(v)
}

#[derive(Clone, Debug, Serialize)]
pub struct CellReport {
    pub column: String,
    pub lattice: String,
    pub fixture: Option<String>,
    /// `pass`, `fail` or `skipped`.
    pub status: String,
    pub expected_count: usize,
    pub expected_entries: Vec<u32>,
    pub count: Option<ClassCount>,
    pub found_entries: Vec<Option<u32>>,
    pub notes: Vec<String>,
    /// The underlying search, kept for callers that inspect the classes.
    #[serde(skip)]
    pub result: Option<SearchResult>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableReport {
    pub family: char,
    pub cells: Vec<CellReport>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl TableReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

/// Fixtures that cover `(family, column)`; identities for family A.
fn fixtures_for(family: char, column: &str, lattice: &str) -> Result<Vec<Fixture>> {
    if family == 'A' {
        return Ok(vec![Fixture::identity(lattice)?]);
    }
    let mut out = Vec::new();
    for name in catalog::fixture_names()? {
        let spec = catalog::fixture(&name)?;
        let col = spec.column.clone().unwrap_or_else(|| spec.lattice.clone());
        if spec.family_char() == Some(family) && col == column {
            out.push(Fixture::from_spec(spec)?);
        }
    }
    Ok(out)
}

/// Compares searches against the golden table of `family`, restricted to
/// `cells` (column keys or lattice labels) when given. Cells without a
/// fixture are skipped.
pub fn reproduce_table(family: char, cells: Option<&[String]>, exec: Execution) -> Result<TableReport> {
    let table = catalog::golden_table(family)?;
    let mut report = TableReport { family, cells: Vec::new(), passed: 0, failed: 0, skipped: 0 };
    if let Some(cells) = cells {
        for c in cells {
            if !table.columns.iter().any(|col| col.key() == *c || col.lattice == *c) {
                return Err(Error::UnknownKey(format!("column {c} in table {family}")));
            }
        }
    }
    for col in &table.columns {
        let key = col.key();
        if let Some(cells) = cells {
            if !cells.iter().any(|c| *c == key || *c == col.lattice) {
                continue;
            }
        }
        let hits = table.cell(&key)?;
        let expected_count: usize = hits.iter().map(|h| h.multiplicity as usize).sum();
        let mut expected_entries: Vec<u32> =
            hits.iter().flat_map(|h| std::iter::repeat_n(h.entry, h.multiplicity as usize)).collect();
        expected_entries.sort();
        let fixtures = fixtures_for(family, &key, &col.lattice)?;
        let Some(fixture) = fixtures.first() else {
            report.skipped += 1;
            report.cells.push(CellReport {
                column: key,
                lattice: col.lattice.clone(),
                fixture: None,
                status: "skipped".into(),
                expected_count,
                expected_entries,
                count: None,
                found_entries: Vec::new(),
                notes: vec!["no fixture".into()],
                result: None,
            });
            continue;
        };
        let res = find_short(fixture, &SearchOptions { execution: exec, dedup_generators: Vec::new() })?;
        let mut found_entries: Vec<Option<u32>> = classes_by_fingerprint(&res).into_iter().map(|c| c.report.identification.resolved).collect();
        found_entries.sort();
        let mut notes = Vec::new();
        let count_ok = res.count.matches(expected_count);
        if !count_ok {
            notes.push(format!("found {}..{} classes, expected {expected_count}", res.count.lower, res.count.upper));
        }
        let distinct_expected: BTreeSet<u32> = expected_entries.iter().copied().collect();
        let distinct_found: BTreeSet<u32> = found_entries.iter().flatten().copied().collect();
        let unresolved = found_entries.iter().any(|e| e.is_none());
        if unresolved {
            notes.push("some classes are not resolved to a single entry".into());
        }
        if distinct_found != distinct_expected {
            notes.push(format!("entries {distinct_found:?}, expected {distinct_expected:?}"));
        }
        let invariants_ok = res.classes.iter().all(|c| {
            c.report.short.is_short
                && c.report.gdh_certificate
                && c.report.orbit_lattice.as_ref().is_some_and(|o| {
                    o.index == Int::from(c.report.order) && o.discriminant_identity_holds(c.report.order)
                })
        });
        if !invariants_ok {
            notes.push("a class fails the structural identities".into());
        }
        if !res.count.exact {
            notes.push(format!("count is a bound: {}..{}", res.count.lower, res.count.upper));
        }
        let pass = count_ok && !unresolved && distinct_found == distinct_expected && invariants_ok;
        if pass {
            report.passed += 1;
        } else {
            report.failed += 1;
        }
        report.cells.push(CellReport {
            column: key,
            lattice: col.lattice.clone(),
            fixture: Some(fixture.spec.name.clone()),
            status: if pass { "pass" } else { "fail" }.into(),
            expected_count,
            expected_entries,
            count: Some(res.count.clone()),
            found_entries,
            notes,
            result: Some(res),
        });
    }
    Ok(report)
}

/// One class per distinct fingerprint (the first in canonical order).
pub fn classes_by_fingerprint(res: &SearchResult) -> Vec<&ShortClass> {
    let mut seen: BTreeMap<&Fingerprint, &ShortClass> = BTreeMap::new();
    for c in &res.classes {
        seen.entry(&c.report.fingerprint).or_insert(c);
    }
    seen.into_values().collect()
}

/// The row of the golden table matching a resolved entry in the
/// fixture's column.
pub fn golden_row(fixture: &Fixture, entry: u32) -> Result<Option<String>> {
    let Some(family) = fixture.family() else { return Ok(None) };
    let table = catalog::golden_table(family)?;
    let column = fixture.spec.column.clone().unwrap_or_else(|| fixture.spec.lattice.clone());
    let Some(j) = table.column_index(&column) else { return Ok(None) };
    Ok(table.rows.iter().find(|r| r.entry == entry && r.counts[j] > 0).map(|r| r.row.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Lattice;

    #[test]
    fn identity_has_one_candidate() {
        let ctx = OrbifoldContext::for_fixture(&Fixture::identity("A3").unwrap()).unwrap();
        let set = candidate_h_set(&ctx).unwrap();
        assert_eq!(set.len(), 1);
        assert!(set[0].iter().all(|x| *x == Rational::from_integer(0.into())));
    }

    #[test]
    fn candidates_need_a_unimodular_lattice() {
        let l = Lattice::new(IntMatrix::from_i64(&[vec![2, -1], vec![-1, 2]]), None).unwrap();
        let ctx = OrbifoldContext::new(Isometry::identity(l), None, None).unwrap();
        assert!(candidate_h_set(&ctx).is_err());
    }

    #[test]
    fn sequential_and_parallel_maps_agree() {
        let f = |i: usize| i * i;
        assert_eq!(Execution::Sequential.map(100, f), Execution::Parallel { jobs: 2 }.map(100, f));
    }
}
