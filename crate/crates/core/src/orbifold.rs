//! Invariants of `g = ν̂ e^{−2πi h(0)}` and of its cyclic orbifold.
//!
//! An [`OrbifoldContext`] holds everything that depends only on `ν` (the
//! standard lift, the sectors `ν̂^i` with their `s_i` vectors and projected
//! lattices, the fixed lattice and its dual) so that many `h` can be analysed
//! against one isometry without repeating that work.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::catalog::{self, RootData, SchellekensEntry};
use crate::enumeration::{sublattice_enumerator, Enumerator};
use crate::exact::{arith, integer_kernel, lcm_of_denominators, rat, solve_rational_q, Int, IntMatrix, QMatrix, Rational};
use crate::isometry::{order_doubling, stabilizes_simple_roots, Fixture, FrameShape, Isometry};
use crate::lattice::{project_fixed, projection_lattice, Sublattice};
use crate::lift::{standard_eta, LiftedAutomorphism};
use crate::{Error, Result};

/// `ρ_ν = (1/24) Σ b_t (t − 1/t)`.
pub fn vacuum_anomaly(fs: &FrameShape) -> Rational {
    fs.vacuum_anomaly()
}

/// `c_n(d)` from the Euler product.
pub fn c_coeff_product(n: u64, d: u64) -> Rational {
    assert!(n % d == 0, "d must divide n");
    let e = n / d;
    let mut c = rat(n as i64, (d * d) as i64);
    for p in arith::prime_factors(d) {
        c *= rat(-(p as i64), 1);
    }
    for p in arith::prime_factors(d.gcd(&e)) {
        c *= Rational::one() - rat(1, p as i64);
    }
    for p in arith::prime_factors(e) {
        c *= Rational::one() + rat(1, p as i64);
    }
    c
}

/// `c_n(d)` for all `d | n` from `Σ_{d|n} c_n(d)·(t,d) = n/t` for all `t | n`.
pub fn c_coeff_system(n: u64) -> Result<BTreeMap<u64, Rational>> {
    let ds = arith::divisors(n);
    let rows: Vec<Vec<Rational>> =
        ds.iter().map(|&t| ds.iter().map(|&d| rat(t.gcd(&d) as i64, 1)).collect()).collect();
    let rhs: Vec<Rational> = ds.iter().map(|&t| rat((n / t) as i64, 1)).collect();
    let sol = solve_rational_q(&QMatrix::from_rows(&rows), &rhs)
        .ok_or_else(|| Error::Internal(format!("c_{n} system is singular")))?;
    Ok(ds.into_iter().zip(sol).collect())
}

/// `c_n(d)`, cross-checked between the product formula and the linear
/// system.
pub fn c_coeff(n: u64, d: u64) -> Result<Rational> {
    if n == 0 || n % d != 0 {
        return Err(Error::Dimension(format!("{d} does not divide {n}")));
    }
    let p = c_coeff_product(n, d);
    let s = c_coeff_system(n)?.remove(&d).expect("d divides n");
    if p != s {
        return Err(Error::Internal(format!("c_{n}({d}): product {p} but system {s}")));
    }
    Ok(p)
}

/// Data for the sector `ν̂^i`.
#[derive(Debug)]
pub struct Sector {
    pub power: u64,
    pub nu_i: Isometry,
    pub s: Vec<Rational>,
    pub anomaly: Rational,
    /// `π_{ν^i}(L)`.
    pub projected: Sublattice,
    enumerator: Enumerator,
}

impl Sector {
    /// `min ⟨x,x⟩` over `x ∈ v + π_{ν^i}(L)`.
    pub fn min_norm(&self, v: &[Rational]) -> Result<Rational> {
        let t = self.projected.coordinates(v).ok_or(Error::NotInSpan)?;
        Ok(self.enumerator.min_coset_norm(&t))
    }

    pub fn has_norm_below(&self, v: &[Rational], bound: &Rational) -> Result<bool> {
        let t = self.projected.coordinates(v).ok_or(Error::NotInSpan)?;
        Ok(self.enumerator.coset_has_norm_below(&t, bound))
    }
}

type Lazy<T> = OnceLock<std::result::Result<T, String>>;

/// Everything about the standard lift of `ν` that does not depend on `h`.
#[derive(Debug)]
pub struct OrbifoldContext {
    label: Option<String>,
    base: LiftedAutomorphism,
    doubling: bool,
    simple_ok: bool,
    fixed: Sublattice,
    fixed_dual: Sublattice,
    /// `π_ν(L)`.
    projected: Sublattice,
    sectors: Vec<Lazy<Arc<Sector>>>,
    shift: Lazy<Vec<Rational>>,
    type_form: Lazy<TypeForm>,
}

// Data for reading the type off any representative of `h + π_ν(L)`:
// the basis `β_k` of `π_ν(L)`, `⟨β_k,β_k⟩/2`, and the lcm of the
// denominators of `⟨β_j,β_k⟩` (all j, k).
#[derive(Debug)]
struct TypeForm {
    basis: Vec<Vec<Rational>>,
    half_norms: Vec<Rational>,
    den: Int,
}

impl OrbifoldContext {
    pub fn new(nu: Isometry, roots: Option<Arc<RootData>>, label: Option<String>) -> Result<Arc<Self>> {
        let eta = standard_eta(&nu)?;
        let n = nu.lattice().rank();
        let base = LiftedAutomorphism::with_eta(nu.clone(), eta, vec![Rational::zero(); n], roots)?;
        let doubling = order_doubling(&nu);
        let simple_ok = stabilizes_simple_roots(&nu, &base.root_data().simple_roots);
        let fixed = nu.fixed_lattice();
        let fixed_dual = fixed.dual();
        let projected = projection_lattice(&nu.lattice().as_sublattice(), nu.matrix(), nu.order());
        let count = 2 * nu.order() as usize;
        Ok(Arc::new(OrbifoldContext {
            label,
            base,
            doubling,
            simple_ok,
            fixed,
            fixed_dual,
            projected,
            sectors: (0..count).map(|_| OnceLock::new()).collect(),
            shift: OnceLock::new(),
            type_form: OnceLock::new(),
        }))
    }

    pub fn for_fixture(f: &Fixture) -> Result<Arc<Self>> {
        Self::new(f.isometry.clone(), Some(f.niemeier.roots.clone()), Some(f.niemeier.label().to_string()))
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn nu(&self) -> &Isometry {
        self.base.nu()
    }

    pub fn base(&self) -> &LiftedAutomorphism {
        &self.base
    }

    pub fn order_doubling(&self) -> bool {
        self.doubling
    }

    pub fn stabilizes_simple_roots(&self) -> bool {
        self.simple_ok
    }

    /// `L^ν`.
    pub fn fixed(&self) -> &Sublattice {
        &self.fixed
    }

    /// `(L^ν)'`.
    pub fn fixed_dual(&self) -> &Sublattice {
        &self.fixed_dual
    }

    /// `π_ν(L)`.
    pub fn projected(&self) -> &Sublattice {
        &self.projected
    }

    pub fn automorphism(&self, h: Vec<Rational>) -> Result<LiftedAutomorphism> {
        self.base.with_h(h)
    }

    /// The sector `ν̂^i`, built on first use.
    pub fn sector(&self, i: u64) -> Result<Arc<Sector>> {
        let k = (i % self.sectors.len() as u64) as usize;
        self.sectors[k]
            .get_or_init(|| self.build_sector(k as u64).map(Arc::new).map_err(|e| e.to_string()))
            .clone()
            .map_err(Error::Internal)
    }

    fn build_sector(&self, i: u64) -> Result<Sector> {
        let nu = self.nu();
        let nu_i = nu.power(i);
        let s = self.base.s_vector(i)?;
        let projected = projection_lattice(&nu.lattice().as_sublattice(), nu_i.matrix(), nu_i.order());
        let enumerator = sublattice_enumerator(&projected)?;
        let anomaly = nu_i.frame_shape().vacuum_anomaly();
        Ok(Sector { power: i, nu_i, s, anomaly, projected, enumerator })
    }

    /// A vector `s` fixed by `ν` with `ν̂ e^{−2πi s(0)}` of order `|ν|`; zero
    /// unless `ν` exhibits order doubling.
    pub fn order_shift(&self) -> Result<Vec<Rational>> {
        self.shift.get_or_init(|| self.compute_shift().map_err(|e| e.to_string())).clone().map_err(Error::Internal)
    }

    fn compute_shift(&self) -> Result<Vec<Rational>> {
        let nu = self.nu();
        let n = nu.lattice().rank();
        let m = nu.order();
        if !self.doubling {
            return Ok(vec![Rational::zero(); n]);
        }
        // ν̂^m acts on e_α by (−1)^{m⟨π α, π α⟩}, a character of π_ν(L);
        // s = x/m with ⟨x, β⟩ ≡ ½·m⟨β,β⟩ (mod 1) on a basis β of π_ν(L).
        let dual = self.projected.dual();
        let mq = rat(m as i64, 1);
        let mut x = vec![Rational::zero(); n];
        for (k, beta) in self.projected.basis_vectors().iter().enumerate() {
            let q = nu.lattice().norm(beta) * &mq;
            if !q.is_integer() {
                return Err(Error::Internal("m⟨π α, π α⟩ is not integral".into()));
            }
            if q.to_integer().is_odd() {
                for (xj, dj) in x.iter_mut().zip(dual.basis().column(k)) {
                    *xj += dj * rat(1, 2);
                }
            }
        }
        let s: Vec<Rational> = x.iter().map(|v| v / &mq).collect();
        if self.base.order_with_h(&s) != m {
            return Err(Error::Internal("order-doubling shift does not restore the order".into()));
        }
        Ok(s)
    }

    fn type_form(&self) -> &std::result::Result<TypeForm, String> {
        self.type_form.get_or_init(|| {
            let gram = self.projected.gram();
            let k = gram.rows();
            let mut entries = Vec::new();
            for j in 0..k {
                for i in 0..k {
                    entries.push(gram[(i, j)].clone());
                }
            }
            Ok(TypeForm {
                basis: self.projected.basis_vectors(),
                half_norms: (0..k).map(|i| &gram[(i, i)] / rat(2, 1)).collect(),
                den: lcm_of_denominators(entries.iter()),
            })
        })
    }

    /// `n²ρ(V(g)) mod n` computed from `⟨x,x⟩` for `x = s_1 + h` instead of
    /// the minimum over `x + π_ν(L)`. Returns `None` unless every vector of the
    /// coset gives the same residue, which is the case when
    /// `n⟨β_j,β_k⟩ ∈ Z` and `n(⟨x,β_k⟩ + ⟨β_k,β_k⟩/2) ∈ Z` on a basis.
    pub fn quick_type(&self, h: &[Rational], n: u64) -> Option<u64> {
        let Ok(form) = self.type_form() else { return None };
        let nint = Int::from(n);
        if !nint.is_multiple_of(&form.den) {
            return None;
        }
        let sector = self.sector(1).ok()?;
        let x: Vec<Rational> = sector.s.iter().zip(h).map(|(a, b)| a + b).collect();
        let l = self.nu().lattice();
        let nq = Rational::from_integer(nint.clone());
        let gx = l.pairings(&x);
        for (beta, half) in form.basis.iter().zip(&form.half_norms) {
            let a: Rational = beta.iter().zip(&gx).fold(Rational::zero(), |acc, (p, q)| acc + p * q);
            if !((a + half) * &nq).is_integer() {
                return None;
            }
        }
        let t = (&sector.anomaly + l.norm(&x) / rat(2, 1)) * &nq * &nq;
        if !t.is_integer() {
            return None;
        }
        t.to_integer().mod_floor(&nint).try_into().ok()
    }

    /// `ρ(V(g^i)) = ρ_{ν^i} + ½ min ⟨x,x⟩` over `x ∈ s_i + i·h + π_{ν^i}(L)`.
    pub fn conformal_weight(&self, g: &LiftedAutomorphism, i: u64) -> Result<Rational> {
        let sector = self.sector(i)?;
        let v = sector_vector(&sector, g.h(), i);
        Ok(&sector.anomaly + sector.min_norm(&v)? / rat(2, 1))
    }

    /// Whether `ρ(V(g^i)) ≥ 1`, without computing the minimum exactly.
    pub fn weight_at_least_one(&self, g: &LiftedAutomorphism, i: u64) -> Result<bool> {
        let sector = self.sector(i)?;
        let v = sector_vector(&sector, g.h(), i);
        let bound = (Rational::one() - &sector.anomaly) * rat(2, 1);
        Ok(!sector.has_norm_below(&v, &bound)?)
    }

    pub fn type_of(&self, g: &LiftedAutomorphism) -> Result<u64> {
        let n = g.order();
        if n == 1 {
            return Ok(0);
        }
        let rho = self.conformal_weight(g, 1)?;
        let t = rho * rat((n * n) as i64, 1);
        if !t.is_integer() {
            return Err(Error::Internal(format!("n²ρ = {t} is not an integer")));
        }
        Ok(t.to_integer().mod_floor(&Int::from(n)).try_into().expect("residue fits"))
    }

    /// `π_ν(s_i) + i·h ∉ π_ν(L)` for all `i = 1, …, n−1`.
    pub fn rank_criterion(&self, g: &LiftedAutomorphism) -> Result<bool> {
        let nu = self.nu();
        for i in 1..g.order() {
            let s = self.sector(i)?.s.clone();
            let ps = project_fixed(nu.matrix(), nu.order(), &s);
            let iq = rat(i as i64, 1);
            let v: Vec<Rational> = ps.iter().zip(g.h()).map(|(a, b)| a + b * &iq).collect();
            if self.projected.contains(&v) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `[N^ν : N^{ν,h}]` and the discriminants of both lattices, where
    /// `N^{ν,h} = {α ∈ N^ν : ⟨α,h⟩ ∈ Z}`.
    pub fn orbit_lattice(&self, g: &LiftedAutomorphism) -> Result<OrbitLattice> {
        let l = self.nu().lattice();
        let basis = self.fixed.basis_vectors();
        let k = basis.len();
        let pairs: Vec<Rational> = basis.iter().map(|b| l.inner_product(b, g.h())).collect::<Result<_>>()?;
        let den = lcm_of_denominators(pairs.iter());
        let denq = Rational::from_integer(den.clone());
        // x ∈ Z^k with Σ a_j x_j ≡ 0 (mod den): kernel of [a | den]
        let mut row: Vec<Int> = pairs.iter().map(|p| (p * &denq).to_integer()).collect();
        row.push(den.clone());
        let ker = integer_kernel(&IntMatrix::from_rows(&[row]));
        let gens: Vec<Vec<Rational>> = (0..ker.cols())
            .map(|c| {
                let col = ker.column(c);
                let mut v = vec![Rational::zero(); l.rank()];
                for (j, b) in basis.iter().enumerate() {
                    for (vi, bi) in v.iter_mut().zip(b) {
                        *vi += bi * Rational::from_integer(col[j].clone());
                    }
                }
                v
            })
            .collect();
        let sub = Sublattice::from_generators(l.clone(), &gens);
        if sub.rank() != k {
            return Err(Error::Internal("orbit lattice has the wrong rank".into()));
        }
        let index = self.fixed.index_of(&sub)?;
        let disc = sub.determinant().to_integer();
        let fixed_disc = self.fixed.determinant().to_integer();
        Ok(OrbitLattice { index, disc, fixed_disc })
    }

    /// The full report for `g`.
    pub fn report(&self, g: &LiftedAutomorphism) -> Result<OrbifoldReport> {
        let nu = self.nu();
        let n = g.order();
        let m = nu.order();
        let mut weights = Vec::new();
        for i in 1..n {
            weights.push(SectorWeight { power: i, rho: self.conformal_weight(g, i)? });
        }
        let type_residue = if n == 1 {
            0
        } else {
            let t = &weights[0].rho * rat((n * n) as i64, 1);
            if !t.is_integer() {
                return Err(Error::Internal(format!("n²ρ = {t} is not an integer")));
            }
            t.to_integer().mod_floor(&Int::from(n)).try_into().expect("residue fits")
        };
        let extremal = weights.iter().all(|w| w.rho >= Rational::one());
        let fixed_dims: Vec<FixedDim> =
            arith::divisors(n).into_iter().map(|d| FixedDim { power: d, dim: g.fixed_weight_one_dim(d) }).collect();
        let coset_order = self.fixed_dual.coset_order(g.h())?;
        let mut reasons = Vec::new();
        if type_residue != 0 {
            reasons.push(format!("type {type_residue} is not 0"));
        }
        if n != m {
            reasons.push(format!("order of g is {n} but order of ν is {m}"));
        }
        if coset_order != Int::from(n) {
            reasons.push(format!("h has order {coset_order} modulo (L^ν)' instead of {n}"));
        }
        if !self.simple_ok {
            reasons.push("ν does not stabilise the simple roots".into());
        }
        let is_short = reasons.is_empty();
        let rank_ok = self.rank_criterion(g)?;
        let gdh = type_residue == 0 && extremal && rank_ok;
        let weight_one = g.weight_one_dim();
        let (orbifold_dim, dim_exact) = if n == 1 {
            (weight_one as i64, true)
        } else {
            let mut total = Rational::from_integer(Int::from(nu.lattice().rank()));
            for fd in &fixed_dims {
                total += c_coeff(n, fd.power)? * rat(fd.dim as i64, 1);
            }
            if !total.is_integer() {
                return Err(Error::Internal(format!("dimension formula gives {total}")));
            }
            (i64::try_from(total.to_integer()).expect("dimension fits"), type_residue == 0 && extremal)
        };
        let rank = nu.frame_shape().fixed_rank() as usize;
        let orbifold_rank = if rank_ok { Some(rank) } else { None };
        let family = catalog::family_of_frame_shape(nu.frame_shape()).ok().flatten();
        let identification = match orbifold_rank {
            Some(r) if dim_exact && orbifold_dim >= 0 => {
                identify(orbifold_dim as usize, r, family, self.label.as_deref())?
            }
            _ => Identification::none(orbifold_dim.max(0) as usize, orbifold_rank.unwrap_or(rank)),
        };
        let fingerprint = Fingerprint {
            order: n,
            type_zero: type_residue == 0,
            extremal,
            fixed_dim: g.fixed_weight_one_dim(1),
            orbifold: identification.key(),
            eigenspace_dim: if n == 1 { weight_one } else { g.eigenspace_dim(1) },
        };
        let orbit_lattice = if is_short { Some(self.orbit_lattice(g)?) } else { None };
        Ok(OrbifoldReport {
            lattice: self.label.clone(),
            frame_shape: nu.frame_shape().clone(),
            nu_order: m,
            order_doubling: self.doubling,
            stabilizes_simple_roots: self.simple_ok,
            h: g.h().to_vec(),
            order: n,
            type_residue,
            vacuum_anomaly: nu.frame_shape().vacuum_anomaly(),
            conformal_weights: weights,
            weight_one_dim: weight_one,
            fixed_dims,
            short: ShortVerdict { is_short, reasons },
            extremal,
            rank_criterion: rank_ok,
            gdh_certificate: gdh,
            is_inner: g.is_inner(),
            orbifold_dim,
            orbifold_dim_exact: dim_exact,
            orbifold_rank,
            identification,
            fingerprint,
            orbit_lattice,
        })
    }
}

fn sector_vector(sector: &Sector, h: &[Rational], i: u64) -> Vec<Rational> {
    let iq = rat(i as i64, 1);
    sector.s.iter().zip(h).map(|(s, x)| s + x * &iq).collect()
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SectorWeight {
    pub power: u64,
    #[serde(with = "crate::json::rational")]
    pub rho: Rational,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FixedDim {
    pub power: u64,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ShortVerdict {
    pub is_short: bool,
    pub reasons: Vec<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct OrbitLattice {
    #[serde(with = "crate::json::int")]
    pub index: Int,
    #[serde(with = "crate::json::int")]
    pub disc: Int,
    #[serde(with = "crate::json::int")]
    pub fixed_disc: Int,
}

impl OrbitLattice {
    /// `|disc N^{ν,h}| = n²·|disc N^ν|`.
    pub fn discriminant_identity_holds(&self, n: u64) -> bool {
        let n = Int::from(n);
        self.disc == &n * &n * &self.fixed_disc
    }
}

/// The result of matching `(dim, rank)` against Schellekens' list.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Identification {
    pub dim: usize,
    pub rank: usize,
    pub candidates: Vec<u32>,
    pub resolved: Option<u32>,
    pub lie: Option<String>,
    /// `unique`, `golden`, `ambiguous` or `none`.
    pub method: String,
}

impl Identification {
    fn none(dim: usize, rank: usize) -> Self {
        Identification { dim, rank, candidates: Vec::new(), resolved: None, lie: None, method: "none".into() }
    }

    /// A compact key: the resolved entry, or the candidate list.
    pub fn key(&self) -> String {
        match self.resolved {
            Some(e) => e.to_string(),
            None => {
                let c: Vec<String> = self.candidates.iter().map(|c| c.to_string()).collect();
                format!("?{}", c.join("|"))
            }
        }
    }
}

fn identification_from(dim: usize, rank: usize, cands: &[&SchellekensEntry], resolved: Option<u32>, method: &str) -> Identification {
    let lie = resolved.and_then(|r| cands.iter().find(|c| c.number == r)).map(|c| c.lie.clone());
    Identification {
        dim,
        rank,
        candidates: cands.iter().map(|c| c.number).collect(),
        resolved,
        lie,
        method: method.into(),
    }
}

/// Matches `(dim, rank)` against Schellekens' list; several candidates are
/// narrowed to the rows present in the golden table of `family` for
/// `lattice`.
pub fn identify(dim: usize, rank: usize, family: Option<char>, lattice: Option<&str>) -> Result<Identification> {
    let cands = catalog::schellekens_candidates(dim, rank)?;
    match cands.len() {
        0 => Ok(identification_from(dim, rank, &cands, None, "none")),
        1 => Ok(identification_from(dim, rank, &cands, Some(cands[0].number), "unique")),
        _ => {
            let (Some(family), Some(lattice)) = (family, lattice) else {
                return Ok(identification_from(dim, rank, &cands, None, "ambiguous"));
            };
            let table = catalog::golden_table(family)?;
            let mut allowed = Vec::new();
            for col in table.columns_for(lattice) {
                for hit in table.cell(&col.key())? {
                    allowed.push(hit.entry);
                }
            }
            let left: Vec<u32> = cands.iter().map(|c| c.number).filter(|e| allowed.contains(e)).collect();
            if left.len() == 1 {
                Ok(identification_from(dim, rank, &cands, Some(left[0]), "golden"))
            } else {
                Ok(identification_from(dim, rank, &cands, None, "ambiguous"))
            }
        }
    }
}

/// The six invariants that determine a short automorphism up to algebraic
/// conjugacy.
#[derive(Clone, Debug, Serialize, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    pub order: u64,
    pub type_zero: bool,
    pub extremal: bool,
    pub fixed_dim: usize,
    pub orbifold: String,
    pub eigenspace_dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbifoldReport {
    pub lattice: Option<String>,
    pub frame_shape: FrameShape,
    pub nu_order: u64,
    pub order_doubling: bool,
    pub stabilizes_simple_roots: bool,
    #[serde(with = "crate::json::rational_vec")]
    pub h: Vec<Rational>,
    pub order: u64,
    pub type_residue: u64,
    #[serde(with = "crate::json::rational")]
    pub vacuum_anomaly: Rational,
    pub conformal_weights: Vec<SectorWeight>,
    pub weight_one_dim: usize,
    pub fixed_dims: Vec<FixedDim>,
    pub short: ShortVerdict,
    pub extremal: bool,
    pub rank_criterion: bool,
    pub gdh_certificate: bool,
    pub is_inner: bool,
    pub orbifold_dim: i64,
    pub orbifold_dim_exact: bool,
    pub orbifold_rank: Option<usize>,
    pub identification: Identification,
    pub fingerprint: Fingerprint,
    pub orbit_lattice: Option<OrbitLattice>,
}

impl OrbifoldReport {
    pub fn fixed_dim(&self, d: u64) -> Option<usize> {
        self.fixed_dims.iter().find(|f| f.power == d).map(|f| f.dim)
    }
}

/// Convenience wrapper: analyse `(ν, h)` on its own.
pub fn analyze(nu: Isometry, h: Vec<Rational>, roots: Option<Arc<RootData>>, label: Option<String>) -> Result<OrbifoldReport> {
    let ctx = OrbifoldContext::new(nu, roots, label)?;
    let g = ctx.automorphism(h)?;
    ctx.report(&g)
}

/// `ρ(V(g^i))` for a standalone automorphism.
pub fn conformal_weight(g: &LiftedAutomorphism, i: u64) -> Result<Rational> {
    let ctx = OrbifoldContext::new(g.nu().clone(), Some(g.root_data().clone()), None)?;
    ctx.conformal_weight(g, i)
}

/// Analysis of `g^d` through its normal form `\widehat{ν^d} e^{−2πi(s_d + d h)(0)}`.
pub fn power_report(ctx: &OrbifoldContext, g: &LiftedAutomorphism, d: u64) -> Result<(Arc<OrbifoldContext>, OrbifoldReport)> {
    let gd = g.power(d)?;
    let sub = OrbifoldContext::new(gd.nu().clone(), Some(g.root_data().clone()), ctx.label.clone())?;
    let gd = sub.automorphism(gd.h().to_vec())?;
    let report = sub.report(&gd)?;
    Ok((sub, report))
}

/// Frame-shape family letter (A–K) of an isometry, if it is one of the
/// eleven classes.
pub fn family_of(nu: &Isometry) -> Option<char> {
    catalog::family_of_frame_shape(nu.frame_shape()).ok().flatten()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c_coefficients() {
        assert_eq!(c_coeff(1, 1).unwrap(), rat(1, 1));
        assert_eq!(c_coeff(2, 1).unwrap(), rat(3, 1));
        assert_eq!(c_coeff(2, 2).unwrap(), rat(-1, 1));
        for d in arith::divisors(6) {
            c_coeff(6, d).unwrap();
        }
    }

    #[test]
    fn anomalies() {
        assert_eq!(vacuum_anomaly(&FrameShape::parse("1^24").unwrap()), rat(0, 1));
        assert_eq!(vacuum_anomaly(&FrameShape::parse("1^8 2^8").unwrap()), rat(1, 2));
        assert_eq!(vacuum_anomaly(&FrameShape::parse("2^12").unwrap()), rat(3, 4));
    }

    #[test]
    fn identity_with_half_vector_on_a1() {
        use crate::lattice::Lattice;
        // ν = id and h = α/4: the coset minimum is ⟨h,h⟩ = 1/8, so ρ = 1/16.
        let l = Lattice::new(IntMatrix::from_i64(&[vec![2]]), None).unwrap();
        let nu = Isometry::identity(l);
        let ctx = OrbifoldContext::new(nu, None, None).unwrap();
        let g = ctx.automorphism(vec![rat(1, 4)]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(ctx.conformal_weight(&g, 1).unwrap(), rat(1, 16));
        // A1 is not unimodular, so n²ρ need not be integral.
        assert!(ctx.type_of(&g).is_err());
        assert!(ctx.rank_criterion(&g).unwrap());
    }
}
