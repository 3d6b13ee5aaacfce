//! Finite-order isometries, Frame shapes and the equivalences used to
//! deduplicate `h`-vectors.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::catalog::{self, FixtureSpec, NiemeierLattice};
use crate::exact::{arith, char_poly, poly, rat, Int, IntMatrix, Rational};
use crate::lattice::{fixed_sublattice, Lattice, Sublattice};
use crate::{Error, Result};

/// Formal product `Π t^{b_t}` standing for `Π (x^t − 1)^{b_t}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FrameShape {
    exponents: BTreeMap<u64, i64>,
}

impl FrameShape {
    pub fn new(exponents: BTreeMap<u64, i64>) -> Self {
        FrameShape { exponents: exponents.into_iter().filter(|(_, b)| *b != 0).collect() }
    }

    pub fn identity(rank: usize) -> Self {
        Self::new(BTreeMap::from([(1, rank as i64)]))
    }

    pub fn exponents(&self) -> &BTreeMap<u64, i64> {
        &self.exponents
    }

    pub fn exponent(&self, t: u64) -> i64 {
        self.exponents.get(&t).copied().unwrap_or(0)
    }

    /// `Σ t·b_t`, the rank of the lattice it acts on.
    pub fn degree(&self) -> i64 {
        self.exponents.iter().map(|(t, b)| *t as i64 * b).sum()
    }

    /// `lcm{t : b_t ≠ 0}`.
    pub fn order(&self) -> u64 {
        arith::lcm_all(self.exponents.keys().copied())
    }

    /// `Σ_t b_t`, the rank of the fixed lattice.
    pub fn fixed_rank(&self) -> i64 {
        self.exponents.values().sum()
    }

    /// Frame shape of the `k`-th power: a factor `t^b` becomes
    /// `(t/g)^{g·b}` with `g = gcd(t, k)`.
    pub fn power(&self, k: u64) -> FrameShape {
        let mut out: BTreeMap<u64, i64> = BTreeMap::new();
        for (&t, &b) in &self.exponents {
            let g = t.gcd(&k);
            *out.entry(t / g).or_default() += g as i64 * b;
        }
        FrameShape::new(out)
    }

    /// `(1/24)·Σ b_t (t − 1/t)`.
    pub fn vacuum_anomaly(&self) -> Rational {
        self.exponents.iter().fold(Rational::zero(), |acc, (&t, &b)| {
            let t = t as i64;
            acc + rat(b, 1) * (rat(t, 1) - rat(1, t))
        }) / rat(24, 1)
    }

    /// `Π (x^t − 1)^{b_t}` as `(numerator, denominator)` polynomials.
    pub fn polynomial(&self) -> (Vec<Int>, Vec<Int>) {
        let mut num = vec![Int::one()];
        let mut den = vec![Int::one()];
        for (&t, &b) in &self.exponents {
            let f = poly::x_pow_minus_one(t as usize);
            for _ in 0..b.unsigned_abs() {
                if b > 0 {
                    num = poly::mul(&num, &f);
                } else {
                    den = poly::mul(&den, &f);
                }
            }
        }
        (num, den)
    }

    /// Solves `charpoly = Π (x^t − 1)^{b_t}` by Möbius inversion of the
    /// cyclotomic multiplicities, then checks the product exactly.
    pub fn from_char_poly(cp: &[Int]) -> Result<FrameShape> {
        let deg = cp.len().saturating_sub(1);
        let mut rest = poly::normalize(cp.to_vec());
        let mut mult: BTreeMap<u64, i64> = BTreeMap::new();
        let mut s = 1u64;
        while rest.len() > 1 {
            // φ(s) ≥ sqrt(s/2), so cyclotomic factors of degree ≤ deg have s ≤ 2·deg².
            if s > 2 * (deg as u64).pow(2) + 2 {
                return Err(Error::InvalidIsometry("characteristic polynomial is not a product of cyclotomics".into()));
            }
            let phi = poly::cyclotomic(s as usize);
            while let Some(q) = poly::div_exact(&rest, &phi) {
                rest = q;
                *mult.entry(s).or_default() += 1;
            }
            s += 1;
        }
        if rest != [Int::one()] {
            return Err(Error::InvalidIsometry("characteristic polynomial is not monic cyclotomic".into()));
        }
        let mut b: BTreeMap<u64, i64> = BTreeMap::new();
        let max = mult.keys().copied().max().unwrap_or(1);
        for t in 1..=max {
            let v: i64 = mult
                .iter()
                .filter(|(s, _)| *s % t == 0)
                .map(|(s, a)| arith::mobius(s / t) * a)
                .sum();
            if v != 0 {
                b.insert(t, v);
            }
        }
        let fs = FrameShape::new(b);
        let (num, den) = fs.polynomial();
        if poly::normalize(poly::mul(cp, &den)) != poly::normalize(num) {
            return Err(Error::Internal("Frame shape product does not reproduce the characteristic polynomial".into()));
        }
        Ok(fs)
    }

    /// Parses `1^8 2^8`, `1^{8}2^{8}`, `2^12`, `1^-24 2^24` and similar.
    pub fn parse(s: &str) -> Result<FrameShape> {
        let bad = || Error::Data(format!("bad Frame shape {s:?}"));
        let mut ex: BTreeMap<u64, i64> = BTreeMap::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let tlen = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
            if tlen == 0 {
                return Err(bad());
            }
            let t: u64 = rest[..tlen].parse().map_err(|_| bad())?;
            rest = &rest[tlen..];
            let mut b = 1i64;
            if let Some(r) = rest.strip_prefix("^{") {
                let end = r.find('}').ok_or_else(bad)?;
                b = r[..end].trim().parse().map_err(|_| bad())?;
                rest = &r[end + 1..];
            } else if let Some(r) = rest.strip_prefix('^') {
                let blen = r
                    .char_indices()
                    .find(|&(i, c)| !(c.is_ascii_digit() || (i == 0 && c == '-')))
                    .map(|(i, _)| i)
                    .unwrap_or(r.len());
                b = r[..blen].parse().map_err(|_| bad())?;
                rest = &r[blen..];
            }
            *ex.entry(t).or_default() += b;
            rest = rest.trim_start_matches(|c: char| c.is_whitespace() || c == '.');
        }
        if ex.is_empty() {
            return Err(bad());
        }
        Ok(FrameShape::new(ex))
    }
}

impl fmt::Display for FrameShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.exponents.iter().map(|(t, b)| format!("{t}^{b}")).collect();
        f.write_str(&parts.join(" "))
    }
}

impl Serialize for FrameShape {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FrameShape {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        FrameShape::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// A finite-order isometry of a lattice, acting on basis coordinates
/// (`v ↦ M·v`).
#[derive(Clone, Debug)]
pub struct Isometry {
    lattice: Lattice,
    matrix: IntMatrix,
    order: u64,
    frame_shape: FrameShape,
}

impl PartialEq for Isometry {
    fn eq(&self, other: &Self) -> bool {
        self.lattice == other.lattice && self.matrix == other.matrix
    }
}

impl Isometry {
    pub fn new(lattice: Lattice, matrix: IntMatrix) -> Result<Self> {
        let n = lattice.rank();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::Dimension(format!("isometry is {}x{}, lattice rank {n}", matrix.rows(), matrix.cols())));
        }
        if &matrix.transpose().mul(lattice.gram()).mul(&matrix) != lattice.gram() {
            return Err(Error::InvalidIsometry("matrix does not preserve the Gram matrix".into()));
        }
        let frame_shape = FrameShape::from_char_poly(&char_poly(&matrix))?;
        let m = frame_shape.order();
        if !matrix.pow(m).is_identity() {
            return Err(Error::InvalidIsometry(format!("matrix is not of finite order dividing {m}")));
        }
        let order = arith::divisors(m).into_iter().find(|&d| matrix.pow(d).is_identity()).unwrap_or(m);
        Ok(Isometry { lattice, matrix, order, frame_shape })
    }

    pub fn identity(lattice: Lattice) -> Self {
        let n = lattice.rank();
        Isometry { lattice, matrix: IntMatrix::identity(n), order: 1, frame_shape: FrameShape::identity(n) }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn frame_shape(&self) -> &FrameShape {
        &self.frame_shape
    }

    pub fn is_identity(&self) -> bool {
        self.order == 1
    }

    pub fn power(&self, k: u64) -> Isometry {
        let k = k % self.order;
        if k == 0 {
            return Isometry::identity(self.lattice.clone());
        }
        Isometry {
            lattice: self.lattice.clone(),
            matrix: self.matrix.pow(k),
            order: self.order / self.order.gcd(&k),
            frame_shape: self.frame_shape.power(k),
        }
    }

    pub fn apply(&self, v: &[Int]) -> Vec<Int> {
        self.matrix.mul_vec(v)
    }

    pub fn apply_q(&self, v: &[Rational]) -> Vec<Rational> {
        self.matrix.mul_qvec(v)
    }

    pub fn fixes(&self, v: &[Rational]) -> bool {
        self.apply_q(v) == v
    }

    /// `L^ν`.
    pub fn fixed_lattice(&self) -> Sublattice {
        fixed_sublattice(&self.lattice, &self.matrix)
    }

    pub fn compose(&self, other: &Isometry) -> Result<Isometry> {
        Isometry::new(self.lattice.clone(), self.matrix.mul(&other.matrix))
    }

    pub fn inverse(&self) -> Isometry {
        self.power(self.order - 1)
    }
}

/// Frame shape of an isometry (exposed as a free function for symmetry with
/// the other operations).
pub fn frame_shape(nu: &Isometry) -> &FrameShape {
    nu.frame_shape()
}

/// Whether the standard lift of `ν` has twice the order of `ν`, i.e. whether
/// `⟨α, ν^{m/2} α⟩` is odd for some `α`.
pub fn order_doubling(nu: &Isometry) -> bool {
    let m = nu.order();
    if m % 2 == 1 {
        return false;
    }
    let p = nu.matrix().pow(m / 2);
    let n = nu.lattice().rank();
    let q = |v: &[Int]| nu.lattice().inner_product_int(v, &p.mul_vec(v)).is_odd();
    let unit = |i: usize| {
        let mut v = vec![Int::zero(); n];
        v[i] = Int::one();
        v
    };
    for i in 0..n {
        if q(&unit(i)) {
            return true;
        }
        for j in i + 1..n {
            let mut v = unit(i);
            v[j] = Int::one();
            if q(&v) {
                return true;
            }
        }
    }
    false
}

/// Whether `ν` permutes the set `Δ`.
pub fn stabilizes_simple_roots(nu: &Isometry, delta: &[Vec<Int>]) -> bool {
    let set: HashSet<&Vec<Int>> = delta.iter().collect();
    delta.iter().all(|d| set.contains(&nu.apply(d)))
}

/// The exponent `i` with `τ ν τ⁻¹ = ν^i`, if `τ` normalises `⟨ν⟩` with a unit.
pub fn conjugation_exponent(nu: &Isometry, tau: &Isometry) -> Option<u64> {
    let lhs = tau.matrix().mul(nu.matrix()).mul(tau.inverse().matrix());
    let n = nu.order();
    (1..=n).filter(|i| i.gcd(&n) == 1).find(|&i| nu.matrix().pow(i % n) == lhs)
}

fn inverse_mod(i: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let e = i64::extended_gcd(&(i as i64), &(n as i64));
    e.x.rem_euclid(n as i64) as u64
}

/// Partitions `hs` (indices) under `h ↦ i⁻¹·τh` modulo `(L^ν)'`, for the
/// supplied normaliser elements `τ`. Images that fall outside the list are
/// ignored. Without generators only the reduction modulo `(L^ν)'` identifies
/// vectors.
pub fn power_equivalence_classes(hs: &[Vec<Rational>], nu: &Isometry, gens: &[Isometry]) -> Result<Vec<Vec<usize>>> {
    let fixed_dual = nu.fixed_lattice().dual();
    let n = nu.order();
    let mut maps = Vec::new();
    for tau in gens {
        let i = conjugation_exponent(nu, tau)
            .ok_or_else(|| Error::InvalidIsometry("supplied generator does not normalise ⟨ν⟩".into()))?;
        maps.push((tau, Rational::from_integer(Int::from(inverse_mod(i, n)))));
    }
    let mut keys: Vec<Vec<Rational>> = Vec::with_capacity(hs.len());
    for h in hs {
        if !nu.fixes(h) {
            return Err(Error::HNotFixed);
        }
        keys.push(fixed_dual.coset_key(h)?);
    }
    let mut index: HashMap<&Vec<Rational>, usize> = HashMap::new();
    let mut parent: Vec<usize> = (0..hs.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (k, key) in keys.iter().enumerate() {
        if let Some(&j) = index.get(key) {
            let (a, b) = (find(&mut parent, k), find(&mut parent, j));
            parent[a.max(b)] = a.min(b);
        } else {
            index.insert(key, k);
        }
    }
    for (k, h) in hs.iter().enumerate() {
        for (tau, inv) in &maps {
            let img: Vec<Rational> = tau.apply_q(h).iter().map(|x| x * inv).collect();
            let key = fixed_dual.coset_key(&img)?;
            if let Some(&j) = index.get(&key) {
                let (a, b) = (find(&mut parent, k), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for k in 0..hs.len() {
        let r = find(&mut parent, k);
        classes.entry(r).or_default().push(k);
    }
    Ok(classes.into_values().collect())
}

/// A curated isometry validated against its Niemeier lattice.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub spec: FixtureSpec,
    pub niemeier: Arc<NiemeierLattice>,
    pub isometry: Isometry,
    pub dedup_generators: Vec<Isometry>,
}

impl Fixture {
    /// Validates a fixture: the matrix must be an isometry of the named
    /// lattice with the claimed Frame shape, and must permute the catalog's
    /// simple roots.
    pub fn from_spec(spec: FixtureSpec) -> Result<Fixture> {
        let niemeier = catalog::niemeier(&spec.lattice)?;
        let isometry = Isometry::new(niemeier.lattice.clone(), spec.matrix.clone())?;
        let claimed = FrameShape::parse(&spec.claimed_frame_shape)?;
        if &claimed != isometry.frame_shape() {
            return Err(Error::InvalidIsometry(format!(
                "fixture {}: claimed Frame shape {claimed}, computed {}",
                spec.name,
                isometry.frame_shape()
            )));
        }
        if !stabilizes_simple_roots(&isometry, &niemeier.roots.simple_roots) {
            return Err(Error::InvalidIsometry(format!("fixture {}: does not stabilise the simple roots", spec.name)));
        }
        let dedup_generators = spec
            .dedup_generators
            .iter()
            .map(|m| Isometry::new(niemeier.lattice.clone(), m.clone()))
            .collect::<Result<Vec<_>>>()?;
        for tau in &dedup_generators {
            if conjugation_exponent(&isometry, tau).is_none() {
                return Err(Error::InvalidIsometry(format!("fixture {}: generator does not normalise ⟨ν⟩", spec.name)));
            }
        }
        Ok(Fixture { spec, niemeier, isometry, dedup_generators })
    }

    pub fn load(name: &str) -> Result<Fixture> {
        Self::from_spec(catalog::fixture(name)?)
    }

    /// The identity on a catalog lattice.
    pub fn identity(label: &str) -> Result<Fixture> {
        let niemeier = catalog::niemeier(label)?;
        let isometry = Isometry::identity(niemeier.lattice.clone());
        let spec = FixtureSpec {
            name: format!("identity_{label}"),
            lattice: label.to_string(),
            matrix: isometry.matrix().clone(),
            claimed_frame_shape: isometry.frame_shape().to_string(),
            family: Some("A".into()),
            column: Some(label.to_string()),
            description: Some("identity".into()),
            dedup_generators: Vec::new(),
        };
        Ok(Fixture { spec, niemeier, isometry, dedup_generators: Vec::new() })
    }

    pub fn family(&self) -> Option<char> {
        self.spec.family_char()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Lattice {
        Lattice::new(IntMatrix::from_i64(&[vec![2, -1], vec![-1, 2]]), None).unwrap()
    }

    #[test]
    fn frame_shape_round_trip() {
        for s in ["1^8 2^8", "2^12", "1^-24 2^24", "1^2 2^1 4^1 8^2"] {
            assert_eq!(FrameShape::parse(s).unwrap().to_string(), s);
        }
        assert_eq!(FrameShape::parse("1^{8}2^{8}").unwrap(), FrameShape::parse("1^8 2^8").unwrap());
    }

    #[test]
    fn minus_identity_shape() {
        let cp = char_poly(&IntMatrix::identity(24).neg());
        let fs = FrameShape::from_char_poly(&cp).unwrap();
        assert_eq!(fs.to_string(), "1^-24 2^24");
        assert_eq!(fs.degree(), 24);
    }

    #[test]
    fn powers_of_shapes() {
        let fs = FrameShape::parse("2^2 10^2").unwrap();
        assert_eq!(fs.power(2).to_string(), "1^4 5^4");
        assert_eq!(fs.power(5).to_string(), "2^12");
        assert_eq!(fs.power(10).to_string(), "1^24");
        assert_eq!(FrameShape::parse("2^12").unwrap().vacuum_anomaly(), rat(3, 4));
    }

    #[test]
    fn rotation_of_a2() {
        // the Coxeter element of A2 has order 3 and shape 1^-1 3^1
        let nu = Isometry::new(a2(), IntMatrix::from_i64(&[vec![0, -1], vec![1, -1]])).unwrap();
        assert_eq!(nu.order(), 3);
        assert_eq!(nu.frame_shape().to_string(), "1^-1 3^1");
        assert!(!order_doubling(&nu));
        assert_eq!(nu.power(2).order(), 3);
        assert!(nu.power(3).is_identity());
    }

    #[test]
    fn reflection_is_not_a_stabiliser() {
        let s1 = Isometry::new(a2(), IntMatrix::from_i64(&[vec![-1, 1], vec![0, 1]])).unwrap();
        let delta = vec![vec![Int::one(), Int::zero()], vec![Int::zero(), Int::one()]];
        assert!(!stabilizes_simple_roots(&s1, &delta));
        assert!(stabilizes_simple_roots(&Isometry::identity(a2()), &delta));
    }

    #[test]
    fn rejects_non_isometry() {
        assert!(Isometry::new(a2(), IntMatrix::from_i64(&[vec![1, 1], vec![0, 1]])).is_err());
    }
}
