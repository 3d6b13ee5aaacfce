//! Lattices given by Gram matrices, and sublattices spanned by rational
//! vectors in the ambient coordinates.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::{
    frac, hermite_normal_form, integer_kernel, lcm_of_denominators, rat_from_int, smith_normal_form, Int,
    IntMatrix, QMatrix, Rational,
};
use crate::{Error, Result};

struct LatticeData {
    gram: IntMatrix,
    gram_q: QMatrix,
    label: Option<String>,
    det: Int,
    gram_inv: OnceLock<QMatrix>,
}

/// An even, positive-definite integral lattice. Cheap to clone.
#[derive(Clone)]
pub struct Lattice(Arc<LatticeData>);

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Lattice")
            .field("label", &self.0.label)
            .field("rank", &self.rank())
            .field("det", &self.0.det)
            .finish()
    }
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.gram == other.0.gram
    }
}

impl Lattice {
    /// Validates symmetry, evenness and positive-definiteness.
    pub fn new(gram: IntMatrix, label: Option<String>) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::InvalidLattice("Gram matrix is not square".into()));
        }
        if !gram.is_symmetric() {
            return Err(Error::InvalidLattice("Gram matrix is not symmetric".into()));
        }
        if (0..gram.rows()).any(|i| gram[(i, i)].is_odd()) {
            return Err(Error::InvalidLattice("lattice is not even".into()));
        }
        let gram_q = gram.to_qmatrix();
        if !leading_pivots_positive(&gram_q) {
            return Err(Error::InvalidLattice("Gram matrix is not positive definite".into()));
        }
        let det = gram.det();
        Ok(Lattice(Arc::new(LatticeData { gram, gram_q, label, det, gram_inv: OnceLock::new() })))
    }

    pub fn rank(&self) -> usize {
        self.0.gram.rows()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.0.gram
    }

    pub fn gram_q(&self) -> &QMatrix {
        &self.0.gram_q
    }

    pub fn label(&self) -> Option<&str> {
        self.0.label.as_deref()
    }

    pub fn det(&self) -> &Int {
        &self.0.det
    }

    pub fn is_unimodular(&self) -> bool {
        self.0.det.is_one()
    }

    pub fn gram_inverse(&self) -> &QMatrix {
        self.0.gram_inv.get_or_init(|| self.0.gram_q.inverse().expect("positive definite Gram is invertible"))
    }

    pub fn inner_product(&self, u: &[Rational], v: &[Rational]) -> Result<Rational> {
        let n = self.rank();
        if u.len() != n || v.len() != n {
            return Err(Error::Dimension(format!("vectors of length {}/{} in rank {n}", u.len(), v.len())));
        }
        Ok(bilinear(&self.0.gram, u, v))
    }

    pub fn inner_product_int(&self, u: &[Int], v: &[Int]) -> Int {
        let g = &self.0.gram;
        let mut acc = Int::zero();
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            let mut row = Int::zero();
            for (j, vj) in v.iter().enumerate() {
                if !vj.is_zero() {
                    row += &g[(i, j)] * vj;
                }
            }
            acc += ui * row;
        }
        acc
    }

    pub fn norm(&self, v: &[Rational]) -> Rational {
        bilinear(&self.0.gram, v, v)
    }

    /// `G·v`: the pairings of `v` with the basis vectors.
    pub fn pairings(&self, v: &[Rational]) -> Vec<Rational> {
        self.0.gram.mul_qvec(v)
    }

    /// Columns of `G⁻¹`: the dual basis in lattice coordinates.
    pub fn dual_basis(&self) -> QMatrix {
        self.gram_inverse().clone()
    }

    pub fn discriminant_group(&self) -> DiscriminantGroup {
        let snf = smith_normal_form(&self.0.gram);
        let mut divisors = Vec::new();
        let mut generators = Vec::new();
        for i in 0..self.rank() {
            let d = snf.s[(i, i)].clone();
            if d > Int::one() {
                let col: Vec<Rational> =
                    snf.v.column(i).iter().map(|x| Rational::new(x.clone(), d.clone())).collect();
                divisors.push(d);
                generators.push(col);
            }
        }
        let order = divisors.iter().fold(Int::one(), |a, b| a * b);
        DiscriminantGroup { divisors, generators, order }
    }

    /// The lattice itself as a sublattice of its own span.
    pub fn as_sublattice(&self) -> Sublattice {
        Sublattice::from_basis(self.clone(), QMatrix::identity(self.rank()))
    }

    /// The dual lattice `L'` as a sublattice of `L ⊗ Q`.
    pub fn dual(&self) -> Sublattice {
        Sublattice::from_basis(self.clone(), self.dual_basis())
    }
}

fn bilinear(g: &IntMatrix, u: &[Rational], v: &[Rational]) -> Rational {
    let gv = g.mul_qvec(v);
    u.iter().zip(&gv).filter(|(a, _)| !a.is_zero()).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
}

fn leading_pivots_positive(g: &QMatrix) -> bool {
    let n = g.rows();
    let mut a = g.clone();
    for k in 0..n {
        if !a[(k, k)].is_positive() {
            return false;
        }
        let p = a[(k, k)].clone();
        for i in k + 1..n {
            if a[(i, k)].is_zero() {
                continue;
            }
            let f = &a[(i, k)] / &p;
            for j in k..n {
                let v = &f * &a[(k, j)];
                a[(i, j)] -= v;
            }
        }
    }
    true
}

/// `L'/L` as a product of cyclic groups.
#[derive(Clone, Debug)]
pub struct DiscriminantGroup {
    pub divisors: Vec<Int>,
    pub generators: Vec<Vec<Rational>>,
    pub order: Int,
}

/// A sublattice of `L ⊗ Q` with a basis of rational vectors in the ambient
/// coordinates. Rank zero is allowed.
#[derive(Clone)]
pub struct Sublattice {
    ambient: Lattice,
    basis: QMatrix,
    gram: QMatrix,
    // (G_M)⁻¹ Bᵀ G: maps an ambient vector in the span to its coordinates.
    coord_map: QMatrix,
}

impl fmt::Debug for Sublattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Sublattice").field("rank", &self.rank()).field("basis", &self.basis).finish()
    }
}

impl Sublattice {
    /// Builds a sublattice from linearly independent basis columns.
    pub fn from_basis(ambient: Lattice, basis: QMatrix) -> Self {
        assert_eq!(basis.rows(), ambient.rank(), "basis vectors must live in the ambient space");
        let gb = ambient.gram_q().mul(&basis);
        let gram = basis.transpose().mul(&gb);
        let coord_map = if basis.cols() == 0 {
            QMatrix::zeros(0, ambient.rank())
        } else {
            let inv = gram.inverse().expect("sublattice basis must be linearly independent");
            inv.mul(&gb.transpose())
        };
        Sublattice { ambient, basis, gram, coord_map }
    }

    /// The lattice generated by arbitrary rational vectors (HNF basis).
    pub fn from_generators(ambient: Lattice, gens: &[Vec<Rational>]) -> Self {
        let n = ambient.rank();
        let basis = basis_from_generators(gens, n);
        Self::from_basis(ambient, basis)
    }

    pub fn from_int_columns(ambient: Lattice, cols: &IntMatrix) -> Self {
        Self::from_basis(ambient, cols.to_qmatrix())
    }

    pub fn ambient(&self) -> &Lattice {
        &self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &QMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.columns()
    }

    pub fn gram(&self) -> &QMatrix {
        &self.gram
    }

    /// The Gram matrix scaled by the least common denominator, with the scale.
    pub fn integral_gram(&self) -> (IntMatrix, Int) {
        let d = self.gram.common_denominator();
        (self.gram.scaled_to_int(&d), d)
    }

    /// Coordinates of `v` in the sublattice basis, or `None` if `v` is not in
    /// the rational span.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(v.len(), self.ambient.rank());
        let x = self.coord_map.mul_vec(v);
        if self.basis.mul_vec(&x).as_slice() == v {
            Some(x)
        } else {
            None
        }
    }

    pub fn vector(&self, coords: &[Rational]) -> Vec<Rational> {
        self.basis.mul_vec(coords)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some_and(|x| x.iter().all(|c| c.is_integer()))
    }

    /// Smallest `k ≥ 1` with `k·h` in the sublattice.
    pub fn coset_order(&self, h: &[Rational]) -> Result<Int> {
        let x = self.coordinates(h).ok_or(Error::NotInSpan)?;
        Ok(lcm_of_denominators(x.iter()))
    }

    /// Canonical representative of `v` modulo the sublattice: coordinates
    /// reduced into `[0, 1)`.
    pub fn reduce(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        let x = self.coordinates(v).ok_or(Error::NotInSpan)?;
        let f: Vec<Rational> = x.iter().map(frac).collect();
        Ok(self.basis.mul_vec(&f))
    }

    /// Reduced coordinates in `[0,1)`, a hashable key for the coset `v + M`.
    pub fn coset_key(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        let x = self.coordinates(v).ok_or(Error::NotInSpan)?;
        Ok(x.iter().map(frac).collect())
    }

    /// The dual lattice inside the span: `{x ∈ span : ⟨x, M⟩ ⊆ Z}`.
    pub fn dual(&self) -> Sublattice {
        if self.rank() == 0 {
            return self.clone();
        }
        let inv = self.gram.inverse().expect("nondegenerate sublattice");
        Sublattice::from_basis(self.ambient.clone(), self.basis.mul(&inv))
    }

    /// `|det gram|`: the discriminant order when the sublattice is integral.
    pub fn determinant(&self) -> Rational {
        if self.rank() == 0 {
            return Rational::one();
        }
        self.gram.det()
    }

    /// Scales every basis vector by `k`.
    pub fn scaled(&self, k: &Rational) -> Sublattice {
        Sublattice::from_basis(self.ambient.clone(), self.basis.scale(k))
    }

    /// Same span, same ambient: `true` if every basis vector of `other` is in `self`.
    pub fn contains_lattice(&self, other: &Sublattice) -> bool {
        other.basis_vectors().iter().all(|v| self.contains(v))
    }

    /// Integer matrix whose columns are the coordinates of `inner`'s basis
    /// in this basis.
    fn relation_matrix(&self, inner: &Sublattice) -> Result<IntMatrix> {
        let mut cols = Vec::with_capacity(inner.rank());
        for v in inner.basis_vectors() {
            let x = self
                .coordinates(&v)
                .ok_or_else(|| Error::NotContained("vector outside the rational span".into()))?;
            if !x.iter().all(|c| c.is_integer()) {
                return Err(Error::NotContained("basis vector not in the outer lattice".into()));
            }
            cols.push(x.iter().map(|c| c.to_integer()).collect::<Vec<Int>>());
        }
        Ok(IntMatrix::from_columns(&cols))
    }

    /// Representatives of `self / inner` in lexicographic order of their Smith
    /// coordinates. `inner` must be a full-rank sublattice of `self`.
    pub fn quotient_representatives(&self, inner: &Sublattice) -> Result<Vec<Vec<Rational>>> {
        if inner.rank() != self.rank() {
            return Err(Error::NotContained("rank mismatch".into()));
        }
        let r = self.rank();
        if r == 0 {
            return Ok(vec![vec![Rational::zero(); self.ambient.rank()]]);
        }
        let rel = self.relation_matrix(inner)?;
        let snf = smith_normal_form(&rel);
        let u_inv = snf.u.to_qmatrix().inverse().expect("unimodular").to_int().expect("unimodular inverse");
        let divisors: Vec<Int> = (0..r).map(|i| snf.s[(i, i)].clone()).collect();
        if divisors.iter().any(Zero::is_zero) {
            return Err(Error::NotContained("inner lattice is not of full rank".into()));
        }
        let mut out = Vec::new();
        let mut a = vec![Int::zero(); r];
        loop {
            let y = u_inv.mul_vec(&a);
            let yq: Vec<Rational> = y.iter().map(rat_from_int).collect();
            out.push(inner.reduce(&self.vector(&yq))?);
            // odometer increment, last coordinate fastest
            let mut k = r;
            loop {
                if k == 0 {
                    return Ok(out);
                }
                k -= 1;
                a[k] += 1;
                if a[k] < divisors[k] {
                    break;
                }
                a[k] = Int::zero();
            }
        }
    }

    /// `[self : inner]` for a full-rank sublattice `inner`.
    pub fn index_of(&self, inner: &Sublattice) -> Result<Int> {
        if inner.rank() != self.rank() {
            return Err(Error::NotContained("rank mismatch".into()));
        }
        if self.rank() == 0 {
            return Ok(Int::one());
        }
        Ok(self.relation_matrix(inner)?.det().abs())
    }
}

/// `[A : B]` for `B ⊆ A` of equal rank.
pub fn sublattice_index(a: &Sublattice, b: &Sublattice) -> Result<Int> {
    a.index_of(b)
}

/// A basis (as matrix columns) of the lattice spanned by `gens` in `Q^n`.
pub fn basis_from_generators(gens: &[Vec<Rational>], n: usize) -> QMatrix {
    if gens.is_empty() {
        return QMatrix::zeros(n, 0);
    }
    let d = lcm_of_denominators(gens.iter().flatten());
    let dq = rat_from_int(&d);
    let rows: Vec<Vec<Int>> = gens
        .iter()
        .map(|g| {
            assert_eq!(g.len(), n, "generator length mismatch");
            g.iter().map(|x| (x * &dq).to_integer()).collect()
        })
        .collect();
    let (h, _) = hermite_normal_form(&IntMatrix::from_rows(&rows));
    let cols: Vec<Vec<Rational>> = (0..h.rows())
        .filter(|&i| !h.row(i).iter().all(Zero::is_zero))
        .map(|i| h.row(i).iter().map(|x| Rational::new(x.clone(), d.clone())).collect())
        .collect();
    QMatrix::from_columns(&cols, n)
}

/// `L^ν`: the primitive sublattice of vectors fixed by `ν`.
pub fn fixed_sublattice(l: &Lattice, nu: &IntMatrix) -> Sublattice {
    let n = l.rank();
    let k = integer_kernel(&nu.sub(&IntMatrix::identity(n)));
    Sublattice::from_int_columns(l.clone(), &k)
}

/// `L_ν = (L^ν)^⊥ ∩ L`.
pub fn coinvariant_sublattice(l: &Lattice, nu: &IntMatrix) -> Sublattice {
    let fixed = fixed_sublattice(l, nu);
    let n = l.rank();
    if fixed.rank() == 0 {
        return l.as_sublattice();
    }
    let f = fixed.basis().to_int().expect("fixed lattice basis is integral");
    let a = f.transpose().mul(l.gram());
    let k = integer_kernel(&a);
    debug_assert_eq!(k.rows(), n);
    Sublattice::from_int_columns(l.clone(), &k)
}

/// `π_ν(v) = (1/m)·Σ_{i<m} νⁱ v`.
pub fn project_fixed(nu: &IntMatrix, order: u64, v: &[Rational]) -> Vec<Rational> {
    let mut acc = v.to_vec();
    let mut cur = v.to_vec();
    for _ in 1..order {
        cur = nu.mul_qvec(&cur);
        for (a, c) in acc.iter_mut().zip(&cur) {
            *a += c;
        }
    }
    let m = Rational::from_integer(Int::from(order));
    acc.iter().map(|x| x / &m).collect()
}

/// The projection `π_ν(M)` of a sublattice (for instance `L` or `L'`).
pub fn projection_lattice(m: &Sublattice, nu: &IntMatrix, order: u64) -> Sublattice {
    let gens: Vec<Vec<Rational>> =
        m.basis_vectors().iter().map(|b| project_fixed(nu, order, b)).collect();
    Sublattice::from_generators(m.ambient().clone(), &gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn lat(rows: &[Vec<i64>]) -> Lattice {
        Lattice::new(IntMatrix::from_i64(rows), None).unwrap()
    }

    #[test]
    fn rejects_bad_grams() {
        assert!(Lattice::new(IntMatrix::from_i64(&[vec![1]]), None).is_err());
        assert!(Lattice::new(IntMatrix::from_i64(&[vec![2, 3], vec![3, 2]]), None).is_err());
        assert!(Lattice::new(IntMatrix::from_i64(&[vec![2, 1], vec![0, 2]]), None).is_err());
    }

    #[test]
    fn a1_dual_and_discriminant() {
        let a1 = lat(&[vec![2]]);
        assert_eq!(a1.dual_basis()[(0, 0)], rat(1, 2));
        let dg = a1.discriminant_group();
        assert_eq!(dg.divisors, vec![Int::from(2)]);
        assert_eq!(a1.inner_product(&[rat(1, 1)], &[rat(1, 1)]).unwrap(), rat(2, 1));
    }

    #[test]
    fn coset_orders_and_index() {
        let z2 = lat(&[vec![2, 0], vec![0, 2]]);
        let full = z2.as_sublattice();
        assert_eq!(full.coset_order(&[rat(0, 1), rat(0, 1)]).unwrap(), Int::from(1));
        assert_eq!(full.coset_order(&[rat(1, 3), rat(1, 3)]).unwrap(), Int::from(3));
        let sub = Sublattice::from_generators(z2.clone(), &[vec![rat(2, 1), rat(0, 1)], vec![rat(0, 1), rat(1, 1)]]);
        assert_eq!(sublattice_index(&full, &sub).unwrap(), Int::from(2));
        assert_eq!(sublattice_index(&full, &full).unwrap(), Int::from(1));
        assert!(!full.contains(&[rat(1, 2), rat(1, 2)]));
    }

    #[test]
    fn swap_projection() {
        let swap = IntMatrix::from_i64(&[vec![0, 1], vec![1, 0]]);
        let p = project_fixed(&swap, 2, &[rat(1, 1), rat(0, 1)]);
        assert_eq!(p, vec![rat(1, 2), rat(1, 2)]);
        assert_eq!(project_fixed(&swap, 2, &p), p);
    }

    #[test]
    fn quotient_reps_count() {
        let z2 = lat(&[vec![2, 0], vec![0, 2]]);
        let outer = z2.as_sublattice().scaled(&rat(1, 2));
        let reps = outer.quotient_representatives(&z2.as_sublattice()).unwrap();
        assert_eq!(reps.len(), 4);
    }
}
