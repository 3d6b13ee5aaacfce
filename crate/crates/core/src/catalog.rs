//! Embedded data and the constructions built from it.
//!
//! Data files live in `data/` and are compiled into the library. Setting the
//! environment variable `ORBIFOLDER_DATA` to a directory makes every data read
//! go to that directory instead (same file names, same layout, including the
//! `fixtures/` subdirectory).

use std::borrow::Cow;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::PathBuf;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::enumeration::Enumerator;
use crate::exact::{rat, rat_from_int, Int, IntMatrix, QMatrix, Rational};
use crate::isometry::FrameShape;
use crate::lattice::{basis_from_generators, Lattice};
use crate::{Error, Result};

pub const DATA_ENV: &str = "ORBIFOLDER_DATA";

const EMBEDDED: &[(&str, &str)] = &[
    ("niemeier.json", include_str!("../data/niemeier.json")),
    ("schellekens.json", include_str!("../data/schellekens.json")),
    ("frame_classes.json", include_str!("../data/frame_classes.json")),
    ("class_counts.json", include_str!("../data/class_counts.json")),
    ("golden.json", include_str!("../data/golden.json")),
    ("powers.json", include_str!("../data/powers.json")),
];

const EMBEDDED_FIXTURES: &[(&str, &str)] = &[
    ("e8x3_swap", include_str!("../data/fixtures/e8x3_swap.json")),
    ("leech_b", include_str!("../data/fixtures/leech_b.json")),
    ("leech_c", include_str!("../data/fixtures/leech_c.json")),
    ("leech_d", include_str!("../data/fixtures/leech_d.json")),
    ("leech_e", include_str!("../data/fixtures/leech_e.json")),
    ("leech_f", include_str!("../data/fixtures/leech_f.json")),
    ("leech_g", include_str!("../data/fixtures/leech_g.json")),
    ("leech_h", include_str!("../data/fixtures/leech_h.json")),
    ("leech_i", include_str!("../data/fixtures/leech_i.json")),
    ("leech_j", include_str!("../data/fixtures/leech_j.json")),
    ("leech_k", include_str!("../data/fixtures/leech_k.json")),
];

fn override_dir() -> Option<PathBuf> {
    std::env::var_os(DATA_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

/// Reads a data file, honouring `ORBIFOLDER_DATA`.
pub fn data_file(name: &str) -> Result<Cow<'static, str>> {
    if let Some(dir) = override_dir() {
        let p = dir.join(name);
        return std::fs::read_to_string(&p)
            .map(Cow::Owned)
            .map_err(|e| Error::Data(format!("{}: {e}", p.display())));
    }
    EMBEDDED
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, s)| Cow::Borrowed(*s))
        .ok_or_else(|| Error::UnknownKey(name.into()))
}

fn parse_data<T: for<'de> Deserialize<'de>>(name: &str) -> Result<T> {
    let text = data_file(name)?;
    serde_json::from_str(&text).map_err(|e| Error::Data(format!("{name}: {e}")))
}

// ---------------------------------------------------------------------------
// Root systems

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RootType {
    A,
    D,
    E,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootComponent {
    pub kind: RootType,
    pub rank: usize,
}

impl PartialOrd for RootComponent {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RootComponent {
    // A before D before E, larger ranks first within a type.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.kind.cmp(&other.kind).then(other.rank.cmp(&self.rank))
    }
}

impl fmt::Display for RootComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.kind, self.rank)
    }
}

impl RootComponent {
    pub fn new(kind: RootType, rank: usize) -> Result<Self> {
        let ok = match kind {
            RootType::A => rank >= 1,
            RootType::D => rank >= 4,
            RootType::E => (6..=8).contains(&rank),
        };
        if ok {
            Ok(RootComponent { kind, rank })
        } else {
            Err(Error::Data(format!("no root system {kind:?}{rank}")))
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let kind = match s.chars().next() {
            Some('A') => RootType::A,
            Some('D') => RootType::D,
            Some('E') => RootType::E,
            _ => return Err(Error::Data(format!("bad root component {s:?}"))),
        };
        let rank = s[1..].parse().map_err(|_| Error::Data(format!("bad root component {s:?}")))?;
        Self::new(kind, rank)
    }

    pub fn root_count(&self) -> usize {
        let n = self.rank;
        match (self.kind, n) {
            (RootType::A, _) => n * (n + 1),
            (RootType::D, _) => 2 * n * (n - 1),
            (RootType::E, 6) => 72,
            (RootType::E, 7) => 126,
            (RootType::E, _) => 240,
        }
    }

    /// Classifies a connected simply-laced root system by its size and rank.
    pub fn classify(root_count: usize, rank: usize) -> Option<Self> {
        let candidates = [
            RootComponent { kind: RootType::A, rank },
            RootComponent { kind: RootType::D, rank },
            RootComponent { kind: RootType::E, rank },
        ];
        candidates.into_iter().find(|c| Self::new(c.kind, c.rank).is_ok() && c.root_count() == root_count)
    }

    /// Cartan matrix in Bourbaki numbering.
    pub fn cartan(&self) -> IntMatrix {
        let n = self.rank;
        let mut m = IntMatrix::identity(n).scale(&Int::from(2));
        let mut link = |a: usize, b: usize| {
            m[(a, b)] = Int::from(-1);
            m[(b, a)] = Int::from(-1);
        };
        match self.kind {
            RootType::A => (0..n - 1).for_each(|i| link(i, i + 1)),
            RootType::D => {
                (0..n - 2).for_each(|i| link(i, i + 1));
                link(n - 3, n - 1);
            }
            RootType::E => {
                link(0, 2);
                link(1, 3);
                (2..n - 1).for_each(|i| link(i, i + 1));
            }
        }
        m
    }

    /// Discriminant-group representative for glue class `class` as a weight,
    /// in simple-root coordinates.
    pub fn glue_weight(&self, class: i64) -> Result<Vec<Rational>> {
        let n = self.rank;
        let order = match self.kind {
            RootType::A => n as i64 + 1,
            RootType::D => 4,
            RootType::E => 9 - n as i64,
        };
        let class = class.rem_euclid(order);
        if class == 0 {
            return Ok(vec![Rational::zero(); n]);
        }
        // fundamental weight index, 1-based
        let node = match (self.kind, n, class) {
            (RootType::A, _, c) => c as usize,
            (RootType::D, _, 1) => n,
            (RootType::D, _, 2) => 1,
            (RootType::D, _, 3) => n - 1,
            (RootType::E, 6, 1) => 1,
            (RootType::E, 6, 2) => 6,
            (RootType::E, 7, 1) => 7,
            _ => return Err(Error::Data(format!("no glue class {class} for {self}"))),
        };
        let inv = self.cartan().to_qmatrix().inverse().expect("Cartan matrices are invertible");
        Ok(inv.row(node - 1).to_vec())
    }
}

/// Canonical text for a multiset of components, e.g. `A7^2 D5^2`.
pub fn format_root_system(components: &[RootComponent]) -> String {
    let mut sorted = components.to_vec();
    sorted.sort();
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        let k = j - i;
        parts.push(if k > 1 { format!("{}^{k}", sorted[i]) } else { sorted[i].to_string() });
        i = j;
    }
    if parts.is_empty() {
        "none".into()
    } else {
        parts.join(" ")
    }
}

/// Roots, a choice of simple roots and the component decomposition.
#[derive(Clone, Debug)]
pub struct RootData {
    /// All norm-2 vectors, sorted.
    pub roots: Vec<Vec<Int>>,
    /// Simple roots with respect to `functional`, in increasing height order.
    pub simple_roots: Vec<Vec<Int>>,
    /// Components, sorted canonically.
    pub components: Vec<RootComponent>,
    /// The linear form (on lattice coordinates) defining positivity.
    pub functional: Vec<Rational>,
}

impl RootData {
    pub fn positive_roots(&self) -> Vec<&Vec<Int>> {
        self.roots.iter().filter(|r| eval_functional(&self.functional, r).is_positive()).collect()
    }
}

fn eval_functional(w: &[Rational], v: &[Int]) -> Rational {
    w.iter().zip(v).filter(|(_, x)| !x.is_zero()).fold(Rational::zero(), |acc, (a, x)| acc + a * x)
}

fn dot(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).filter(|(x, _)| !x.is_zero()).fold(Int::zero(), |acc, (x, y)| acc + x * y)
}

/// Simple roots and components for the roots of `l` under the positivity
/// defined by `functional`, which must not vanish on any root.
pub fn root_data_with(l: &Lattice, roots: Vec<Vec<Int>>, functional: Vec<Rational>) -> Result<RootData> {
    let mut positive: Vec<(Rational, &Vec<Int>)> = Vec::new();
    for r in &roots {
        let f = eval_functional(&functional, r);
        if f.is_zero() {
            return Err(Error::Internal("functional vanishes on a root".into()));
        }
        if f.is_positive() {
            positive.push((f, r));
        }
    }
    positive.sort();
    // (root, G·root)
    let mut simple: Vec<(Vec<Int>, Vec<Int>)> = Vec::new();
    for (_, r) in &positive {
        if simple.iter().all(|(_, gs)| !dot(r, gs).is_positive()) {
            simple.push(((*r).clone(), l.gram().mul_vec(r)));
        }
    }
    // components of the Dynkin diagram
    let k = simple.len();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(p: &mut Vec<usize>, mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for i in 0..k {
        for j in i + 1..k {
            if !dot(&simple[i].0, &simple[j].1).is_zero() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut comp_rank: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 0..k {
        *comp_rank.entry(find(&mut parent, i)).or_default() += 1;
    }
    let mut comp_roots: BTreeMap<usize, usize> = BTreeMap::new();
    for (_, r) in &positive {
        let i = (0..k)
            .find(|&i| !dot(r, &simple[i].1).is_zero())
            .ok_or_else(|| Error::Internal("root orthogonal to all simple roots".into()))?;
        *comp_roots.entry(find(&mut parent, i)).or_default() += 2;
    }
    let mut components = Vec::new();
    for (c, rank) in &comp_rank {
        let count = comp_roots.get(c).copied().unwrap_or(0);
        let comp = RootComponent::classify(count, *rank).ok_or_else(|| {
            Error::InvalidLattice(format!("root component with {count} roots and rank {rank} is not ADE"))
        })?;
        components.push(comp);
    }
    components.sort();
    Ok(RootData { roots, simple_roots: simple.into_iter().map(|(r, _)| r).collect(), components, functional })
}

/// Root data with a generic positivity functional drawn from a fixed seed.
pub fn root_data(l: &Lattice) -> Result<RootData> {
    let roots = Enumerator::new(l.gram())?.vectors_up_to_norm(&rat(2, 1));
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0f_d157);
    for _ in 0..64 {
        let w: Vec<Rational> =
            (0..l.rank()).map(|_| Rational::from_integer(Int::from(rng.random_range(1i64..=1 << 24)))).collect();
        if roots.iter().all(|r| !eval_functional(&w, r).is_zero()) {
            return root_data_with(l, roots, w);
        }
    }
    Err(Error::Internal("no generic functional found".into()))
}

/// The root system of `l` as a sorted multiset of components.
pub fn identify_root_system(l: &Lattice) -> Result<Vec<RootComponent>> {
    Ok(root_data(l)?.components)
}

// ---------------------------------------------------------------------------
// Niemeier lattices

#[derive(Deserialize)]
struct NiemeierFile {
    golay_generators: Vec<Vec<u8>>,
    lattices: Vec<NiemeierSpecRaw>,
}

#[derive(Deserialize)]
struct NiemeierSpecRaw {
    label: String,
    components: Vec<String>,
    glue: Vec<Vec<i64>>,
    #[serde(default)]
    construction: Option<String>,
}

/// The description of one Niemeier lattice from the data file.
#[derive(Clone, Debug)]
pub struct NiemeierSpec {
    pub label: String,
    pub components: Vec<RootComponent>,
    pub glue: Vec<Vec<i64>>,
    pub leech: bool,
}

fn niemeier_file() -> Result<&'static NiemeierFile> {
    static FILE: OnceLock<std::result::Result<NiemeierFile, String>> = OnceLock::new();
    FILE.get_or_init(|| parse_data("niemeier.json").map_err(|e| e.to_string()))
        .as_ref()
        .map_err(|e| Error::Data(e.clone()))
}

pub fn niemeier_labels() -> Vec<String> {
    (1..=24).map(|i| format!("A{i}")).collect()
}

pub fn niemeier_spec(label: &str) -> Result<NiemeierSpec> {
    let file = niemeier_file()?;
    let raw = file
        .lattices
        .iter()
        .find(|l| l.label == label)
        .ok_or_else(|| Error::UnknownKey(format!("lattice {label}")))?;
    let components = raw.components.iter().map(|c| RootComponent::parse(c)).collect::<Result<Vec<_>>>()?;
    for w in &raw.glue {
        if w.len() != components.len() {
            return Err(Error::Data(format!("glue word length mismatch in {label}")));
        }
    }
    Ok(NiemeierSpec {
        label: raw.label.clone(),
        components,
        glue: raw.glue.clone(),
        leech: raw.construction.as_deref() == Some("leech"),
    })
}

/// Words of the extended binary Golay code used by the catalog (generators).
pub fn golay_generators() -> Result<Vec<Vec<u8>>> {
    Ok(niemeier_file()?.golay_generators.clone())
}

/// A Niemeier lattice together with the frame it was built in.
///
/// The frame is `Q^24` with Gram matrix `frame_gram`; the lattice basis
/// vectors are the columns of `frame_basis`. For lattices with roots the frame
/// coordinates are simple-root coordinates of the root sublattice; for the
/// Leech lattice they are the usual coordinates scaled by `√8`.
#[derive(Debug)]
pub struct NiemeierLattice {
    pub spec: NiemeierSpec,
    pub lattice: Lattice,
    pub frame_gram: QMatrix,
    pub frame_basis: QMatrix,
    pub frame_basis_inv: QMatrix,
    pub roots: Arc<RootData>,
}

impl NiemeierLattice {
    pub fn label(&self) -> &str {
        &self.spec.label
    }

    /// Rewrites a frame isometry in lattice coordinates: `B⁻¹ P B`.
    pub fn isometry_from_frame(&self, p: &IntMatrix) -> Result<IntMatrix> {
        let m = self.frame_basis_inv.mul(&p.to_qmatrix()).mul(&self.frame_basis);
        m.to_int().ok_or_else(|| Error::InvalidIsometry("frame map does not preserve the lattice".into()))
    }

    pub fn to_frame(&self, v: &[Rational]) -> Vec<Rational> {
        self.frame_basis.mul_vec(v)
    }

    pub fn from_frame(&self, v: &[Rational]) -> Vec<Rational> {
        self.frame_basis_inv.mul_vec(v)
    }
}

fn block_cartan(components: &[RootComponent]) -> (IntMatrix, Vec<usize>) {
    let n: usize = components.iter().map(|c| c.rank).sum();
    let mut g = IntMatrix::zeros(n, n);
    let mut offsets = Vec::new();
    let mut off = 0;
    for c in components {
        offsets.push(off);
        let cm = c.cartan();
        for i in 0..c.rank {
            for j in 0..c.rank {
                g[(off + i, off + j)] = cm[(i, j)].clone();
            }
        }
        off += c.rank;
    }
    (g, offsets)
}

fn build(spec: NiemeierSpec) -> Result<NiemeierLattice> {
    let (frame_gram, gens) = if spec.leech {
        let golay = golay_generators()?;
        let n = 24;
        let mut gens: Vec<Vec<Rational>> = Vec::new();
        for w in &golay {
            gens.push(w.iter().map(|&b| rat(2 * b as i64, 1)).collect());
        }
        for j in 1..n {
            for sign in [1i64, -1] {
                let mut v = vec![Rational::zero(); n];
                v[0] = rat(4, 1);
                v[j] = rat(4 * sign, 1);
                gens.push(v);
            }
        }
        let mut v = vec![rat(1, 1); n];
        v[0] = rat(-3, 1);
        gens.push(v);
        (QMatrix::identity(n).scale(&rat(1, 8)), gens)
    } else {
        let (cartan, offsets) = block_cartan(&spec.components);
        let n = cartan.rows();
        let mut gens: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut v = vec![Rational::zero(); n];
                v[i] = Rational::one();
                v
            })
            .collect();
        for word in &spec.glue {
            let mut v = vec![Rational::zero(); n];
            for ((c, off), &class) in spec.components.iter().zip(&offsets).zip(word) {
                for (k, x) in c.glue_weight(class)?.into_iter().enumerate() {
                    v[off + k] = x;
                }
            }
            gens.push(v);
        }
        (cartan.to_qmatrix(), gens)
    };
    let n = frame_gram.rows();
    if n != 24 {
        return Err(Error::Data(format!("{} has rank {n}", spec.label)));
    }
    let basis = basis_from_generators(&gens, n);
    if basis.cols() != n {
        return Err(Error::Data(format!("{}: generators do not span", spec.label)));
    }
    let gram_q = basis.transpose().mul(&frame_gram).mul(&basis);
    let gram = gram_q
        .to_int()
        .ok_or_else(|| Error::InvalidLattice(format!("{}: glue is not integral", spec.label)))?;
    let lattice = Lattice::new(gram, Some(spec.label.clone()))?;
    if !lattice.is_unimodular() {
        return Err(Error::InvalidLattice(format!("{}: determinant {}", spec.label, lattice.det())));
    }
    let frame_basis_inv = basis.inverse().expect("basis is invertible");
    let roots = Enumerator::new(lattice.gram())?.vectors_up_to_norm(&rat(2, 1));
    // Height with respect to the simple roots of the root sublattice: the
    // functional sums the frame coordinates, so it equals 1 on each frame
    // simple root.
    let functional: Vec<Rational> = (0..n)
        .map(|k| (0..n).fold(Rational::zero(), |acc, j| acc + &basis[(j, k)]))
        .collect();
    let roots = if spec.leech {
        RootData { roots, simple_roots: Vec::new(), components: Vec::new(), functional }
    } else {
        root_data_with(&lattice, roots, functional)?
    };
    let mut expected = spec.components.clone();
    expected.sort();
    if roots.components != expected {
        return Err(Error::InvalidLattice(format!(
            "{}: root system {} does not match {}",
            spec.label,
            format_root_system(&roots.components),
            format_root_system(&expected)
        )));
    }
    Ok(NiemeierLattice { spec, lattice, frame_gram, frame_basis: basis, frame_basis_inv, roots: Arc::new(roots) })
}

/// The Niemeier lattice with the given label, built and validated once per
/// process.
pub fn niemeier(label: &str) -> Result<Arc<NiemeierLattice>> {
    static CACHE: OnceLock<Mutex<HashMap<String, Arc<NiemeierLattice>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(n) = cache.lock().expect("catalog cache poisoned").get(label) {
        return Ok(n.clone());
    }
    let built = Arc::new(build(niemeier_spec(label)?)?);
    let mut guard = cache.lock().expect("catalog cache poisoned");
    Ok(guard.entry(label.to_string()).or_insert(built).clone())
}

pub fn build_niemeier(label: &str) -> Result<Lattice> {
    Ok(niemeier(label)?.lattice.clone())
}

// ---------------------------------------------------------------------------
// Schellekens' list

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct LieSummand {
    #[serde(rename = "type")]
    pub kind: char,
    pub rank: usize,
    pub level: u32,
    pub count: usize,
}

/// Dimension of the simple Lie algebra `X_n`.
pub fn lie_dim(kind: char, n: usize) -> Result<usize> {
    Ok(match (kind, n) {
        ('A', _) if n >= 1 => n * (n + 2),
        ('B', _) | ('C', _) if n >= 1 => n * (2 * n + 1),
        ('D', _) if n >= 3 => n * (2 * n - 1),
        ('E', 6) => 78,
        ('E', 7) => 133,
        ('E', 8) => 248,
        ('F', 4) => 52,
        ('G', 2) => 14,
        _ => return Err(Error::Data(format!("no simple Lie algebra {kind}{n}"))),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SchellekensEntry {
    pub number: u32,
    pub lie: String,
    pub abelian_rank: usize,
    pub summands: Vec<LieSummand>,
    pub dim: usize,
    pub rank: usize,
}

#[derive(Deserialize)]
struct SchellekensRaw {
    number: u32,
    lie: String,
    abelian_rank: usize,
    summands: Vec<LieSummand>,
}

fn cached<T: Send + Sync + 'static>(
    cell: &'static OnceLock<std::result::Result<T, String>>,
    f: impl FnOnce() -> Result<T>,
) -> Result<&'static T> {
    cell.get_or_init(|| f().map_err(|e| e.to_string())).as_ref().map_err(|e| Error::Data(e.clone()))
}

pub fn schellekens_entries() -> Result<&'static [SchellekensEntry]> {
    static CELL: OnceLock<std::result::Result<Vec<SchellekensEntry>, String>> = OnceLock::new();
    cached(&CELL, || {
        #[derive(Deserialize)]
        struct File {
            entries: Vec<SchellekensRaw>,
        }
        let file: File = parse_data("schellekens.json")?;
        file.entries
            .into_iter()
            .map(|e| {
                let mut dim = e.abelian_rank;
                let mut rank = e.abelian_rank;
                for s in &e.summands {
                    dim += s.count * lie_dim(s.kind, s.rank)?;
                    rank += s.count * s.rank;
                }
                Ok(SchellekensEntry { number: e.number, lie: e.lie, abelian_rank: e.abelian_rank, summands: e.summands, dim, rank })
            })
            .collect()
    })
    .map(|v| v.as_slice())
}

pub fn schellekens_entry(number: u32) -> Result<&'static SchellekensEntry> {
    schellekens_entries()?
        .iter()
        .find(|e| e.number == number)
        .ok_or_else(|| Error::UnknownKey(format!("Schellekens entry {number}")))
}

pub fn schellekens_candidates(dim: usize, rank: usize) -> Result<Vec<&'static SchellekensEntry>> {
    Ok(schellekens_entries()?.iter().filter(|e| e.dim == dim && e.rank == rank).collect())
}

// ---------------------------------------------------------------------------
// Frame classes and class counts

#[derive(Clone, Debug, Serialize)]
pub struct FrameClass {
    pub family: char,
    pub frame_shape: FrameShape,
    pub order: u64,
    pub order_doubling: bool,
    pub genus: String,
    pub class_number: u32,
    pub voa_count: u32,
}

pub const FAMILIES: [char; 11] = ['A', 'B', 'C', 'D', 'E', 'F', 'G', 'H', 'I', 'J', 'K'];

pub fn frame_classes() -> Result<&'static [FrameClass]> {
    static CELL: OnceLock<std::result::Result<Vec<FrameClass>, String>> = OnceLock::new();
    cached(&CELL, || {
        #[derive(Deserialize)]
        struct Raw {
            family: String,
            frame_shape: BTreeMap<String, i64>,
            order_doubling: bool,
            genus: String,
            class_number: u32,
            voa_count: u32,
        }
        #[derive(Deserialize)]
        struct File {
            families: Vec<Raw>,
        }
        let file: File = parse_data("frame_classes.json")?;
        file.families
            .into_iter()
            .map(|r| {
                let mut ex = BTreeMap::new();
                for (t, b) in r.frame_shape {
                    let t: u64 = t.parse().map_err(|_| Error::Data(format!("bad cycle length {t}")))?;
                    ex.insert(t, b);
                }
                let fs = FrameShape::new(ex);
                if fs.degree() != 24 {
                    return Err(Error::Data(format!("family {}: Frame shape {fs} has degree {}", r.family, fs.degree())));
                }
                Ok(FrameClass {
                    family: r.family.chars().next().ok_or_else(|| Error::Data("empty family".into()))?,
                    order: fs.order(),
                    frame_shape: fs,
                    order_doubling: r.order_doubling,
                    genus: r.genus,
                    class_number: r.class_number,
                    voa_count: r.voa_count,
                })
            })
            .collect()
    })
    .map(|v| v.as_slice())
}

pub fn frame_class(family: char) -> Result<&'static FrameClass> {
    frame_classes()?
        .iter()
        .find(|c| c.family == family)
        .ok_or_else(|| Error::UnknownKey(format!("family {family}")))
}

/// The family whose Frame shape is `fs`, if any.
pub fn family_of_frame_shape(fs: &FrameShape) -> Result<Option<char>> {
    Ok(frame_classes()?.iter().find(|c| &c.frame_shape == fs).map(|c| c.family))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassCountRow {
    pub lattice: String,
    pub root_system: String,
    pub counts: BTreeMap<String, Vec<u32>>,
    pub in_h: u32,
    pub in_aut: u32,
}

impl ClassCountRow {
    pub fn family_counts(&self, family: char) -> Vec<u32> {
        self.counts.get(&family.to_string()).cloned().unwrap_or_default()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassCounts {
    pub rows: Vec<ClassCountRow>,
    pub total_in_h: Vec<u32>,
    pub total_in_aut: Vec<u32>,
}

pub fn class_counts() -> Result<&'static ClassCounts> {
    static CELL: OnceLock<std::result::Result<ClassCounts, String>> = OnceLock::new();
    cached(&CELL, || parse_data("class_counts.json"))
}

// ---------------------------------------------------------------------------
// Golden tables

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GoldenColumn {
    pub lattice: String,
    pub tag: String,
}

impl GoldenColumn {
    /// Column key such as `A3` or `A16b`.
    pub fn key(&self) -> String {
        format!("{}{}", self.lattice, self.tag)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GoldenRow {
    pub row: String,
    pub entry: u32,
    pub lie: String,
    pub counts: Vec<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GoldenTable {
    pub family: String,
    pub columns: Vec<GoldenColumn>,
    pub rows: Vec<GoldenRow>,
}

/// One golden cell entry: a table row and how many classes land there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoldenHit {
    pub row: String,
    pub entry: u32,
    pub multiplicity: u32,
}

impl GoldenTable {
    pub fn column_index(&self, key: &str) -> Option<usize> {
        self.columns.iter().position(|c| c.key() == key)
    }

    pub fn columns_for(&self, lattice: &str) -> Vec<&GoldenColumn> {
        self.columns.iter().filter(|c| c.lattice == lattice).collect()
    }

    pub fn cell(&self, key: &str) -> Result<Vec<GoldenHit>> {
        let j = self
            .column_index(key)
            .ok_or_else(|| Error::UnknownKey(format!("column {key} in table {}", self.family)))?;
        Ok(self
            .rows
            .iter()
            .filter(|r| r.counts[j] > 0)
            .map(|r| GoldenHit { row: r.row.clone(), entry: r.entry, multiplicity: r.counts[j] })
            .collect())
    }

    pub fn row(&self, label: &str) -> Option<&GoldenRow> {
        self.rows.iter().find(|r| r.row == label)
    }
}

pub fn golden_tables() -> Result<&'static [GoldenTable]> {
    static CELL: OnceLock<std::result::Result<Vec<GoldenTable>, String>> = OnceLock::new();
    cached(&CELL, || {
        #[derive(Deserialize)]
        struct File {
            tables: Vec<GoldenTable>,
        }
        let f: File = parse_data("golden.json")?;
        for t in &f.tables {
            if t.rows.iter().any(|r| r.counts.len() != t.columns.len()) {
                return Err(Error::Data(format!("golden table {} is ragged", t.family)));
            }
        }
        Ok(f.tables)
    })
    .map(|v| v.as_slice())
}

pub fn golden_table(family: char) -> Result<&'static GoldenTable> {
    golden_tables()?
        .iter()
        .find(|t| t.family.starts_with(family))
        .ok_or_else(|| Error::UnknownKey(format!("family {family}")))
}

/// The stored column for `(family, lattice, tag)` as `(entry, multiplicity)`
/// pairs. `tag` may be omitted when the lattice has a single column.
pub fn golden_lookup(family: char, lattice: &str, tag: Option<&str>) -> Result<Vec<(u32, u32)>> {
    let t = golden_table(family)?;
    let key = match tag {
        Some(tag) => format!("{lattice}{tag}"),
        None => {
            let cols = t.columns_for(lattice);
            match cols.as_slice() {
                [one] => one.key(),
                [] => format!("{lattice}"),
                _ => {
                    let keys: Vec<String> = cols.iter().map(|c| c.key()).collect();
                    return Err(Error::UnknownKey(format!(
                        "{lattice} has several columns in table {family}: {}",
                        keys.join(", ")
                    )));
                }
            }
        }
    };
    Ok(t.cell(&key)?.into_iter().map(|h| (h.entry, h.multiplicity)).collect())
}

// ---------------------------------------------------------------------------
// Power tables

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct PowerSpec {
    pub exponent: u64,
    pub family: String,
    pub column_choice: Vec<Option<u32>>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct PowerRow {
    pub row: String,
    pub cells: BTreeMap<String, Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct PowerTable {
    pub family: String,
    pub columns: Vec<String>,
    pub powers: Vec<PowerSpec>,
    pub rows: Vec<PowerRow>,
}

pub fn power_tables() -> Result<&'static [PowerTable]> {
    static CELL: OnceLock<std::result::Result<Vec<PowerTable>, String>> = OnceLock::new();
    cached(&CELL, || {
        #[derive(Deserialize)]
        struct File {
            tables: Vec<PowerTable>,
        }
        Ok(parse_data::<File>("powers.json")?.tables)
    })
    .map(|v| v.as_slice())
}

/// Target rows (with any element index stripped) recorded for the `p`-th
/// power of the classes in `(family, column, row)`, one per class.
pub fn power_targets(family: char, column: &str, row: &str, p: u64) -> Result<Option<(char, Vec<String>)>> {
    let Some(t) = power_tables()?.iter().find(|t| t.family.starts_with(family)) else {
        return Ok(None);
    };
    let j = t
        .columns
        .iter()
        .position(|c| c == column)
        .ok_or_else(|| Error::UnknownKey(format!("power table {family} column {column}")))?;
    let Some(spec) = t.powers.iter().find(|s| s.exponent == p) else {
        return Ok(None);
    };
    let r = t.rows.iter().find(|r| r.row == row).ok_or_else(|| Error::UnknownKey(format!("row {row}")))?;
    let cell = r.cells.get(&p.to_string()).and_then(|c| c.get(j)).cloned().unwrap_or_default();
    let fam = spec.family.chars().next().ok_or_else(|| Error::Data("empty family".into()))?;
    Ok(Some((fam, cell.into_iter().map(|s| s.split('_').next().unwrap_or_default().to_string()).collect())))
}

// ---------------------------------------------------------------------------
// Fixtures

/// A curated isometry as stored on disk (unvalidated).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FixtureSpec {
    #[serde(default)]
    pub name: String,
    pub lattice: String,
    #[serde(with = "crate::json::int_matrix")]
    pub matrix: IntMatrix,
    pub claimed_frame_shape: String,
    #[serde(default)]
    pub family: Option<String>,
    /// Golden column key, e.g. `A3` or `A16b`.
    #[serde(default)]
    pub column: Option<String>,
    #[serde(default)]
    pub description: Option<String>,
    #[serde(default, with = "int_matrix_list")]
    pub dedup_generators: Vec<IntMatrix>,
}

mod int_matrix_list {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Wrap(#[serde(with = "crate::json::int_matrix")] IntMatrix);

    pub fn serialize<S: Serializer>(v: &[IntMatrix], s: S) -> std::result::Result<S::Ok, S::Error> {
        let w: Vec<Wrap> = v.iter().cloned().map(Wrap).collect();
        w.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<IntMatrix>, D::Error> {
        Ok(Vec::<Wrap>::deserialize(d)?.into_iter().map(|w| w.0).collect())
    }
}

impl FixtureSpec {
    pub fn from_json(name: &str, text: &str) -> Result<Self> {
        let mut f: FixtureSpec = serde_json::from_str(text).map_err(|e| Error::Data(format!("fixture {name}: {e}")))?;
        if f.name.is_empty() {
            f.name = name.to_string();
        }
        Ok(f)
    }

    pub fn family_char(&self) -> Option<char> {
        self.family.as_deref().and_then(|s| s.chars().next())
    }
}

/// Names of the available fixtures, sorted.
pub fn fixture_names() -> Result<Vec<String>> {
    if let Some(dir) = override_dir() {
        let mut names = Vec::new();
        let d = dir.join("fixtures");
        for entry in std::fs::read_dir(&d).map_err(|e| Error::Data(format!("{}: {e}", d.display())))? {
            let p = entry?.path();
            if p.extension().is_some_and(|e| e == "json") {
                if let Some(stem) = p.file_stem() {
                    names.push(stem.to_string_lossy().into_owned());
                }
            }
        }
        names.sort();
        return Ok(names);
    }
    let mut names: Vec<String> = EMBEDDED_FIXTURES.iter().map(|(n, _)| n.to_string()).collect();
    names.sort();
    Ok(names)
}

pub fn fixture(name: &str) -> Result<FixtureSpec> {
    if let Some(dir) = override_dir() {
        let p = dir.join("fixtures").join(format!("{name}.json"));
        let text = std::fs::read_to_string(&p).map_err(|e| Error::Data(format!("{}: {e}", p.display())))?;
        return FixtureSpec::from_json(name, &text);
    }
    let (_, text) = EMBEDDED_FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::UnknownKey(format!("fixture {name}")))?;
    FixtureSpec::from_json(name, text)
}

/// Integer vector helper for callers that work with frame coordinates.
pub fn int_vec_to_rational(v: &[Int]) -> Vec<Rational> {
    v.iter().map(rat_from_int).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cartan_determinants() {
        let cases = [("A4", 5), ("D5", 4), ("D6", 4), ("E6", 3), ("E7", 2), ("E8", 1)];
        for (s, d) in cases {
            assert_eq!(RootComponent::parse(s).unwrap().cartan().det(), Int::from(d), "{s}");
        }
    }

    #[test]
    fn glue_norms() {
        let d = RootComponent::parse("D8").unwrap();
        let c = d.cartan();
        let w = d.glue_weight(1).unwrap();
        assert_eq!(Lattice::new(c, None).unwrap().norm(&w), rat(2, 1));
        let e7 = RootComponent::parse("E7").unwrap();
        let w = e7.glue_weight(1).unwrap();
        assert_eq!(Lattice::new(e7.cartan(), None).unwrap().norm(&w), rat(3, 2));
    }

    #[test]
    fn classify_components() {
        assert_eq!(RootComponent::classify(12, 3).unwrap().to_string(), "A3");
        assert_eq!(RootComponent::classify(24, 4).unwrap().to_string(), "D4");
        assert_eq!(RootComponent::classify(240, 8).unwrap().to_string(), "E8");
        assert!(RootComponent::classify(10, 3).is_none());
    }

    #[test]
    fn format_multiset() {
        let c: Vec<RootComponent> =
            ["D5", "A7", "D5", "A7"].iter().map(|s| RootComponent::parse(s).unwrap()).collect();
        assert_eq!(format_root_system(&c), "A7^2 D5^2");
    }

    #[test]
    fn lie_dimensions() {
        assert_eq!(schellekens_entry(62).unwrap().dim, 384);
        assert_eq!(schellekens_entry(70).unwrap().dim, 1128);
        assert_eq!(schellekens_entry(15).unwrap().dim, 72);
        assert_eq!(schellekens_entry(1).unwrap().rank, 24);
    }
}
