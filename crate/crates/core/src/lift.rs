//! Lifts of lattice isometries to the lattice vertex algebra.
//!
//! Signs are stored as bits (`0 ↦ +1`, `1 ↦ −1`) and scalars `e^{2πiθ}` as
//! rationals `θ` reduced modulo 1.
//!
//! The cocycle is `ε(b_i, b_j) = (−1)^{⟨b_i,b_j⟩}` for `i > j` and `+1`
//! otherwise, on the lattice basis, extended bimultiplicatively. For a lift
//! `ν̂ e_α = η(α) e_{να}` the sign function satisfies
//! `η(α+β) = η(α) η(β) f(α,β)` with `f(α,β) = ε(α,β) ε(να,νβ)`, so in bits
//! `η` is a quadratic form whose polar form is `f`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::catalog::{root_data, RootData};
use crate::exact::{format_rational, frac, rat, rat_from_int, solve_mod2, Int, IntMatrix, Rational};
use crate::isometry::Isometry;
use crate::lattice::{fixed_sublattice, Lattice};
use crate::{Error, Result};

fn parity(x: &Int) -> u8 {
    u8::from(x.is_odd())
}

/// An element of `Q/Z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phase(Rational);

impl Phase {
    pub fn new(q: Rational) -> Self {
        Phase(frac(&q))
    }

    pub fn zero() -> Self {
        Phase(Rational::zero())
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Order of the phase as a root of unity.
    pub fn order(&self) -> Int {
        self.0.denom().clone()
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

impl Serialize for Phase {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The bimultiplicative cocycle fixed by the basis order.
#[derive(Clone, Debug)]
pub struct Cocycle {
    /// `lower[i][j] = ⟨b_i, b_j⟩ mod 2` for `i > j`, zero otherwise.
    lower: Vec<Vec<u8>>,
}

impl Cocycle {
    pub fn new(l: &Lattice) -> Self {
        let n = l.rank();
        let g = l.gram();
        let lower = (0..n).map(|i| (0..n).map(|j| if i > j { parity(&g[(i, j)]) } else { 0 }).collect()).collect();
        Cocycle { lower }
    }

    pub fn bit(&self, a: &[Int], b: &[Int]) -> u8 {
        let pa: Vec<u8> = a.iter().map(parity).collect();
        let pb: Vec<u8> = b.iter().map(parity).collect();
        self.bit_mod2(&pa, &pb)
    }

    fn bit_mod2(&self, a: &[u8], b: &[u8]) -> u8 {
        let mut acc = 0u8;
        for (i, row) in self.lower.iter().enumerate() {
            if a[i] == 0 {
                continue;
            }
            for j in 0..i {
                acc ^= row[j] & b[j];
            }
        }
        acc
    }

    /// `ε(α,β) ε(β,α) = (−1)^{⟨α,β⟩}` on all pairs of basis vectors.
    pub fn check_alternation(&self, l: &Lattice) -> bool {
        let n = l.rank();
        let g = l.gram();
        let unit = |i: usize| {
            let mut v = vec![0u8; n];
            v[i] = 1;
            v
        };
        (0..n).all(|i| {
            (0..n).all(|j| {
                let (a, b) = (unit(i), unit(j));
                (self.bit_mod2(&a, &b) ^ self.bit_mod2(&b, &a)) == if i == j { 0 } else { parity(&g[(i, j)]) }
            })
        })
    }
}

/// A sign function `η: L → {±1}` for a lift of `ν`.
#[derive(Clone, Debug)]
pub struct Eta {
    /// Values on the basis.
    linear: Vec<u8>,
    /// The polar form `f` modulo 2 (symmetric).
    polar: Vec<Vec<u8>>,
}

impl Eta {
    pub fn bit(&self, a: &[Int]) -> u8 {
        let n = a.len();
        let p: Vec<u8> = a.iter().map(parity).collect();
        let mut acc = 0u8;
        for i in 0..n {
            if p[i] == 1 {
                acc ^= self.linear[i];
                for j in i + 1..n {
                    acc ^= self.polar[i][j] & p[j];
                }
            }
            // α_i(α_i − 1)/2 is odd iff α_i ≡ 2, 3 (mod 4)
            if self.polar[i][i] == 1 {
                let r = a[i].mod_floor(&Int::from(4));
                if r == Int::from(2) || r == Int::from(3) {
                    acc ^= 1;
                }
            }
        }
        acc
    }

    pub fn sign(&self, a: &[Int]) -> i8 {
        if self.bit(a) == 1 {
            -1
        } else {
            1
        }
    }

    pub fn basis_values(&self) -> &[u8] {
        &self.linear
    }
}

fn polar_form(nu: &Isometry) -> Result<Vec<Vec<u8>>> {
    let l = nu.lattice();
    let n = l.rank();
    let eps = Cocycle::new(l);
    let m = nu.matrix();
    let cols: Vec<Vec<u8>> = (0..n).map(|j| m.column(j).iter().map(parity).collect()).collect();
    let unit = |i: usize| {
        let mut v = vec![0u8; n];
        v[i] = 1;
        v
    };
    let mut f = vec![vec![0u8; n]; n];
    for i in 0..n {
        for j in 0..n {
            f[i][j] = eps.bit_mod2(&unit(i), &unit(j)) ^ eps.bit_mod2(&cols[i], &cols[j]);
        }
    }
    for i in 0..n {
        for j in 0..i {
            if f[i][j] != f[j][i] {
                return Err(Error::Internal("cocycle ratio is not symmetric".into()));
            }
        }
    }
    Ok(f)
}

/// A standard lift: `η` satisfies the functional equation and is trivial on
/// `L^ν`.
pub fn standard_eta(nu: &Isometry) -> Result<Eta> {
    let polar = polar_form(nu)?;
    let n = nu.lattice().rank();
    let zero = Eta { linear: vec![0; n], polar: polar.clone() };
    let fixed = fixed_sublattice(nu.lattice(), nu.matrix());
    let basis = fixed.basis().to_int().ok_or_else(|| Error::Internal("fixed lattice basis not integral".into()))?;
    let k = basis.cols();
    if k == 0 {
        return Ok(zero);
    }
    // linear part c with c·v ≡ Q0(v) (mod 2) for each fixed basis vector v
    let rows: Vec<Vec<Int>> = (0..k).map(|c| basis.column(c)).collect();
    let a = IntMatrix::from_rows(&rows);
    let b: Vec<Int> = rows.iter().map(|v| Int::from(zero.bit(v))).collect();
    let c = solve_mod2(&a, &b).ok_or_else(|| Error::Internal("no standard lift: restriction to L^ν not cancelled".into()))?;
    let eta = Eta { linear: c, polar };
    if rows.iter().any(|v| eta.bit(v) != 0) {
        return Err(Error::Internal("standard lift is not trivial on L^ν".into()));
    }
    Ok(eta)
}

/// Checks `η(b_i + b_j) = η(b_i) η(b_j) f(b_i, b_j)` directly against the
/// cocycle on all pairs of basis vectors.
pub fn check_functional_equation(nu: &Isometry, eta: &Eta) -> bool {
    let l = nu.lattice();
    let n = l.rank();
    let eps = Cocycle::new(l);
    let unit = |i: usize| {
        let mut v = vec![Int::zero(); n];
        v[i] = Int::one();
        v
    };
    (0..n).all(|i| {
        (0..n).all(|j| {
            let (a, b) = (unit(i), unit(j));
            let sum: Vec<Int> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
            let f = eps.bit(&a, &b) ^ eps.bit(&nu.apply(&a), &nu.apply(&b));
            eta.bit(&sum) == eta.bit(&a) ^ eta.bit(&b) ^ f
        })
    })
}

/// Permutation action of `ν` on the roots together with the `η` values.
#[derive(Clone, Debug)]
struct RootAction {
    perm: Vec<usize>,
    eta: Vec<u8>,
    /// Sign bits of `ν̂^m` on the basis vectors, `m = |ν|`.
    basis_bits: Vec<u8>,
}

/// `g = ν̂ e^{−2πi h(0)}` for a lift `ν̂` of `ν` with sign function `η` and a
/// vector `h` fixed by `ν`.
#[derive(Clone, Debug)]
pub struct LiftedAutomorphism {
    nu: Isometry,
    eta: Eta,
    h: Vec<Rational>,
    order: u64,
    roots: Arc<RootData>,
    action: Arc<RootAction>,
    /// `⟨h, α⟩` for each root.
    h_pairing: Vec<Rational>,
}

impl LiftedAutomorphism {
    /// Builds `g` from the standard lift of `ν`. Roots are computed when not
    /// supplied.
    pub fn new(nu: Isometry, h: Vec<Rational>, roots: Option<Arc<RootData>>) -> Result<Self> {
        let eta = standard_eta(&nu)?;
        Self::with_eta(nu, eta, h, roots)
    }

    pub fn with_eta(nu: Isometry, eta: Eta, h: Vec<Rational>, roots: Option<Arc<RootData>>) -> Result<Self> {
        if h.len() != nu.lattice().rank() {
            return Err(Error::Dimension(format!("h has length {}, lattice rank {}", h.len(), nu.lattice().rank())));
        }
        if !nu.fixes(&h) {
            return Err(Error::HNotFixed);
        }
        let roots = match roots {
            Some(r) => r,
            None => Arc::new(root_data(nu.lattice())?),
        };
        let index: HashMap<&Vec<Int>, usize> = roots.roots.iter().enumerate().map(|(i, r)| (r, i)).collect();
        let mut perm = Vec::with_capacity(roots.roots.len());
        for r in &roots.roots {
            let img = nu.apply(r);
            perm.push(*index.get(&img).ok_or_else(|| Error::Internal("isometry does not permute the roots".into()))?);
        }
        let eta_vals = roots.roots.iter().map(|r| eta.bit(r)).collect();
        let mut g = LiftedAutomorphism {
            nu,
            eta,
            h: Vec::new(),
            order: 0,
            roots,
            action: Arc::new(RootAction { perm, eta: eta_vals, basis_bits: Vec::new() }),
            h_pairing: Vec::new(),
        };
        let n = g.lattice().rank();
        let m = g.nu.order();
        let basis_bits = (0..n)
            .map(|i| {
                let mut e = vec![Int::zero(); n];
                e[i] = Int::one();
                g.lift_power_bit(m, &e)
            })
            .collect();
        Arc::get_mut(&mut g.action).expect("fresh root action").basis_bits = basis_bits;
        g.set_h(h);
        Ok(g)
    }

    /// The same lift of `ν` combined with another `h`.
    pub fn with_h(&self, h: Vec<Rational>) -> Result<Self> {
        if h.len() != self.lattice().rank() {
            return Err(Error::Dimension(format!("h has length {}, lattice rank {}", h.len(), self.lattice().rank())));
        }
        if !self.nu.fixes(&h) {
            return Err(Error::HNotFixed);
        }
        let mut g = LiftedAutomorphism {
            nu: self.nu.clone(),
            eta: self.eta.clone(),
            h: Vec::new(),
            order: 0,
            roots: self.roots.clone(),
            action: self.action.clone(),
            h_pairing: Vec::new(),
        };
        g.set_h(h);
        Ok(g)
    }

    fn set_h(&mut self, h: Vec<Rational>) {
        let gh = self.nu.lattice().pairings(&h);
        self.h_pairing = self
            .roots
            .roots
            .iter()
            .map(|r| r.iter().zip(&gh).filter(|(x, _)| !x.is_zero()).fold(Rational::zero(), |acc, (x, p)| acc + p * x))
            .collect();
        self.h = h;
        self.order = self.compute_order();
    }

    pub fn nu(&self) -> &Isometry {
        &self.nu
    }

    pub fn eta(&self) -> &Eta {
        &self.eta
    }

    pub fn h(&self) -> &[Rational] {
        &self.h
    }

    pub fn lattice(&self) -> &Lattice {
        self.nu.lattice()
    }

    pub fn root_data(&self) -> &Arc<RootData> {
        &self.roots
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// `dim (V_L)_1 = rank + |Φ|`.
    pub fn weight_one_dim(&self) -> usize {
        self.lattice().rank() + self.roots.roots.len()
    }

    /// Sign bit of `ν̂^i` on `e_α` (relative to `e_{ν^i α}`):
    /// `Σ_{j<i} η(ν^j α)`.
    pub fn lift_power_bit(&self, i: u64, alpha: &[Int]) -> u8 {
        let mut v = alpha.to_vec();
        let mut acc = 0u8;
        for _ in 0..i {
            acc ^= self.eta.bit(&v);
            v = self.nu.apply(&v);
        }
        acc
    }

    pub fn lift_power_sign(&self, i: u64, alpha: &[Int]) -> i8 {
        if self.lift_power_bit(i, alpha) == 1 {
            -1
        } else {
            1
        }
    }

    /// `s_i ∈ ½(L^{ν^i})'` with `e^{−2πi⟨s_i,α⟩}` equal to the sign of
    /// `ν̂^i` on `L^{ν^i}`; coordinates in `[0,1)` relative to the dual basis.
    pub fn s_vector(&self, i: u64) -> Result<Vec<Rational>> {
        let nu_i = self.nu.power(i);
        let fixed = nu_i.fixed_lattice();
        let n = self.lattice().rank();
        if fixed.rank() == 0 {
            return Ok(vec![Rational::zero(); n]);
        }
        let dual = fixed.dual();
        let basis = fixed.basis_vectors();
        let mut s = vec![Rational::zero(); n];
        for (k, w) in basis.iter().enumerate() {
            let w: Vec<Int> = w.iter().map(|x| x.to_integer()).collect();
            if self.lift_power_bit(i, &w) == 1 {
                for (sj, dj) in s.iter_mut().zip(dual.basis().column(k)) {
                    *sj += dj * rat(1, 2);
                }
            }
        }
        for w in &basis {
            let w: Vec<Int> = w.iter().map(|x| x.to_integer()).collect();
            let lhs = frac(&self.lattice().inner_product(&s, &w.iter().map(rat_from_int).collect::<Vec<_>>())?);
            let rhs = rat(self.lift_power_bit(i, &w) as i64, 2);
            if lhs != rhs {
                return Err(Error::Internal("s-vector system is inconsistent".into()));
            }
        }
        Ok(s)
    }

    /// Phase `θ` of `g^k e_α = e^{2πiθ} e_α` for `α` fixed by `ν^k`.
    fn phase_on_fixed(&self, k: u64, bit: u8, pairing: &Rational) -> Phase {
        Phase::new(rat(bit as i64, 2) - pairing * rat(k as i64, 1))
    }

    fn compute_order(&self) -> u64 {
        self.order_with_h(&self.h)
    }

    /// Order of `ν̂ e^{−2πi h(0)}` for another `h` fixed by `ν`, without
    /// building the full automorphism.
    pub fn order_with_h(&self, h: &[Rational]) -> u64 {
        let m = self.nu.order();
        let n = self.lattice().rank();
        let gh = self.lattice().pairings(h);
        let mut extra = Int::one();
        for i in 0..n {
            let ph = self.phase_on_fixed(m, self.action.basis_bits[i], &gh[i]);
            extra = extra.lcm(&ph.order());
        }
        let extra: u64 = extra.try_into().expect("order fits in u64");
        m * extra
    }

    /// Orbits of `⟨ν^d⟩` on the roots, as (length, holonomy phase of
    /// `(g^d)^length` on the orbit).
    pub fn root_orbits(&self, d: u64) -> Vec<(usize, Phase)> {
        let count = self.action.perm.len();
        let mut seen = vec![false; count];
        let mut out = Vec::new();
        for start in 0..count {
            if seen[start] {
                continue;
            }
            // walk ν until returning to start under ν^d
            let mut bit = 0u8;
            let mut steps = 0u64;
            let mut cur = start;
            let mut len = 0usize;
            loop {
                for _ in 0..d {
                    bit ^= self.action.eta[cur];
                    cur = self.action.perm[cur];
                    steps += 1;
                }
                len += 1;
                seen[cur] = true;
                if cur == start {
                    break;
                }
            }
            out.push((len, self.phase_on_fixed(steps, bit, &self.h_pairing[start])));
        }
        out
    }

    /// `dim (V_L)_1^{g^d}`: the fixed rank plus the root orbits of `ν^d`
    /// with trivial holonomy.
    pub fn fixed_weight_one_dim(&self, d: u64) -> usize {
        let rank = self.nu.frame_shape().power(d).fixed_rank() as usize;
        rank + self.root_orbits(d).iter().filter(|(_, ph)| ph.is_zero()).count()
    }

    /// Dimension of the `e^{2πi j/n}`-eigenspace of `g` on `(V_L)_1`, where
    /// `n` is the order of `g`.
    pub fn eigenspace_dim(&self, j: u64) -> usize {
        let n = self.order;
        let j = j % n;
        // Cartan part: multiplicity of a primitive s-th root of unity, s = n/gcd(n,j)
        let s = n / n.gcd(&j);
        let cartan: i64 = self.nu.frame_shape().exponents().iter().filter(|(t, _)| *t % s == 0).map(|(_, b)| *b).sum();
        let target = rat(j as i64, n as i64);
        let roots = self
            .root_orbits(1)
            .iter()
            .filter(|(k, ph)| Phase::new(&target * rat(*k as i64, 1)) == *ph)
            .count();
        cartan.max(0) as usize + roots
    }

    /// Whether `g` is inner, i.e. whether `ν` lies in the Weyl group. The
    /// image `ν(ρ)` of a regular vector is reflected back into the
    /// fundamental chamber; `ν ∈ W` iff the composite is the identity.
    pub fn is_inner(&self) -> bool {
        if self.nu.is_identity() {
            return true;
        }
        if self.roots.simple_roots.is_empty() {
            return false;
        }
        let l = self.lattice();
        let ginv = l.gram_inverse();
        let rho = ginv.mul_vec(&self.roots.functional);
        let simple: Vec<(Vec<Rational>, Vec<Rational>)> = self
            .roots
            .simple_roots
            .iter()
            .map(|s| {
                let q: Vec<Rational> = s.iter().map(rat_from_int).collect();
                let gq = l.gram().mul_qvec(&q);
                (q, gq)
            })
            .collect();
        let dot = |a: &[Rational], b: &[Rational]| a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y);
        let mut v = self.nu.apply_q(&rho);
        let mut w = self.nu.matrix().to_qmatrix();
        loop {
            let Some((s, gs)) = simple.iter().find(|(_, gs)| dot(&v, gs).is_negative()) else { break };
            let c = dot(&v, gs);
            for (vi, si) in v.iter_mut().zip(s) {
                *vi -= &c * si;
            }
            // w ← s_σ w, column by column
            for col in 0..w.cols() {
                let wc = w.column(col);
                let cc = dot(&wc, gs);
                for r in 0..w.rows() {
                    let delta = &cc * &s[r];
                    w[(r, col)] -= delta;
                }
            }
        }
        w == crate::exact::QMatrix::identity(l.rank())
    }

    /// `g^d`, rewritten with the standard lift of `ν^d`:
    /// `ν̂^d e^{−2πi d h(0)}` is conjugate to `\widehat{ν^d} e^{−2πi (s_d + d h)(0)}`.
    pub fn power(&self, d: u64) -> Result<LiftedAutomorphism> {
        let nu_d = self.nu.power(d);
        let s = self.s_vector(d)?;
        let dq = rat(d as i64, 1);
        let h: Vec<Rational> = s.iter().zip(&self.h).map(|(a, b)| a + b * &dq).collect();
        LiftedAutomorphism::new(nu_d, h, Some(self.roots.clone()))
    }
}

/// `order_of(g)`: the smallest `k` with `ν^k = 1` and `g^k` trivial on every
/// `e_α`.
pub fn order_of(g: &LiftedAutomorphism) -> u64 {
    g.order()
}

pub fn fixed_weight_one_dim(g: &LiftedAutomorphism, d: u64) -> usize {
    g.fixed_weight_one_dim(d)
}

pub fn is_inner(g: &LiftedAutomorphism) -> bool {
    g.is_inner()
}

pub fn s_vector(g: &LiftedAutomorphism, i: u64) -> Result<Vec<Rational>> {
    g.s_vector(i)
}

pub fn lift_power_sign(g: &LiftedAutomorphism, i: u64, alpha: &[Int]) -> i8 {
    g.lift_power_sign(i, alpha)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lattice(rows: &[Vec<i64>]) -> Lattice {
        Lattice::new(IntMatrix::from_i64(rows), None).unwrap()
    }

    fn d4() -> Lattice {
        lattice(&[vec![2, -1, 0, 0], vec![-1, 2, -1, -1], vec![0, -1, 2, 0], vec![0, -1, 0, 2]])
    }

    #[test]
    fn identity_has_trivial_eta() {
        let l = d4();
        let nu = Isometry::identity(l.clone());
        let eta = standard_eta(&nu).unwrap();
        assert!(eta.basis_values().iter().all(|&b| b == 0));
        let g = LiftedAutomorphism::new(nu, vec![Rational::zero(); 4], None).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.fixed_weight_one_dim(1), 28);
        assert!(g.is_inner());
    }

    #[test]
    fn triality_is_outer() {
        // cyclic permutation of the outer nodes of D4
        let l = d4();
        let m = IntMatrix::from_i64(&[vec![0, 0, 0, 1], vec![0, 1, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 1, 0]]);
        let nu = Isometry::new(l.clone(), m).unwrap();
        assert_eq!(nu.order(), 3);
        let eta = standard_eta(&nu).unwrap();
        assert!(check_functional_equation(&nu, &eta));
        let g = LiftedAutomorphism::new(nu, vec![Rational::zero(); 4], None).unwrap();
        assert!(!g.is_inner());
        // fixed algebra of triality on so(8) is G2
        assert_eq!(g.fixed_weight_one_dim(1), 14);
    }

    #[test]
    fn minus_identity_on_a1() {
        let l = lattice(&[vec![2]]);
        let nu = Isometry::new(l.clone(), IntMatrix::from_i64(&[vec![-1]])).unwrap();
        let g = LiftedAutomorphism::new(nu, vec![Rational::zero()], None).unwrap();
        // ⟨α, −α⟩ = −2 is even: no order doubling
        assert_eq!(g.order(), 2);
        // −1 on sl2 via the Chevalley involution fixes a 1-dimensional subalgebra
        assert_eq!(g.fixed_weight_one_dim(1), 1);
        assert!(g.is_inner());
    }

    #[test]
    fn weyl_reflection_is_inner() {
        let l = lattice(&[vec![2, -1], vec![-1, 2]]);
        let s1 = Isometry::new(l.clone(), IntMatrix::from_i64(&[vec![-1, 1], vec![0, 1]])).unwrap();
        let g = LiftedAutomorphism::new(s1, vec![Rational::zero(); 2], None).unwrap();
        assert!(g.is_inner());
    }

    #[test]
    fn alternation_on_basis_pairs() {
        let l = d4();
        assert!(Cocycle::new(&l).check_alternation(&l));
    }

    #[test]
    fn h_shifts_the_order() {
        let l = lattice(&[vec![2]]);
        let g = LiftedAutomorphism::new(Isometry::identity(l), vec![rat(1, 4)], None).unwrap();
        // ⟨h, α⟩ = 1/2 on the generator
        assert_eq!(g.order(), 2);
        assert_eq!(g.fixed_weight_one_dim(1), 1);
        assert_eq!(g.eigenspace_dim(1), 2);
    }
}
