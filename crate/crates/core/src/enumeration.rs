//! Exact short-vector and closest-vector enumeration.
//!
//! An [`Enumerator`] LLL-reduces an integral Gram matrix once (integer
//! arithmetic throughout), computes the rational Cholesky form of the reduced
//! Gram matrix and then answers any number of queries of the form
//! "all `x + t` with `x ∈ Zⁿ` and norm at most `B`" by depth-first search with
//! the last coordinate outermost. Results are reported in the caller's
//! original coordinates, sorted lexicographically.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exact::{rat_from_int, Int, IntMatrix, QMatrix, Rational};
use crate::lattice::{Lattice, Sublattice};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct Enumerator {
    n: usize,
    // x_original = basis · y_reduced
    basis: IntMatrix,
    basis_inv: QMatrix,
    // q[i][i] is the Cholesky pivot; q[i][j] (j > i) the coefficient.
    q: Vec<Vec<Rational>>,
    // Norms in this enumerator are `scale` times the caller's norms.
    scale: Rational,
    fast: Option<FloatForm>,
}

// Floating-point copy of the Cholesky form used to prune the search tree,
// together with the reduced Gram matrix for exact norms at the leaves.
#[derive(Clone, Debug)]
struct FloatForm {
    diag: Vec<f64>,
    coef: Vec<Vec<f64>>,
    gram: Vec<Vec<i128>>,
}

// Fixed-denominator form of a query vector: t = num / den.
struct FastTarget {
    tf: Vec<f64>,
    num: Vec<i128>,
    den: i128,
}

// Relative slack added to float bounds; rounding errors in the partial norms
// are many orders of magnitude smaller for the matrix sizes used here.
const SLACK: f64 = 1e-9;

fn slack(b: f64) -> f64 {
    b + SLACK * b.abs().max(1.0)
}

enum Flow {
    Continue,
    Shrink(Rational),
}

impl Enumerator {
    /// Prepares enumeration for an integral positive-definite Gram matrix.
    pub fn new(gram: &IntMatrix) -> Result<Self> {
        Self::with_scale(gram, Rational::one())
    }

    /// Accepts a rational Gram matrix by clearing denominators internally.
    pub fn from_rational_gram(gram: &QMatrix) -> Result<Self> {
        let d = gram.common_denominator();
        Self::with_scale(&gram.scaled_to_int(&d), rat_from_int(&d))
    }

    fn with_scale(gram: &IntMatrix, scale: Rational) -> Result<Self> {
        if !gram.is_square() || !gram.is_symmetric() {
            return Err(Error::InvalidLattice("Gram matrix must be square and symmetric".into()));
        }
        let n = gram.rows();
        let (reduced, basis) = lll_gram(gram)?;
        let basis_inv = if n == 0 {
            QMatrix::zeros(0, 0)
        } else {
            basis.to_qmatrix().inverse().ok_or_else(|| Error::Internal("LLL transform is singular".into()))?
        };
        let q = cholesky(&reduced);
        let fast = FloatForm::new(&reduced, &q);
        Ok(Enumerator { n, basis, basis_inv, q, scale, fast })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    fn to_reduced(&self, t: &[Rational]) -> Vec<Rational> {
        self.basis_inv.mul_vec(t)
    }

    fn to_original(&self, z: &[Rational]) -> Vec<Rational> {
        self.basis.mul_qvec(z)
    }

    // Depth-first walk over all z ∈ Zⁿ + t with q(z) ≤ bound (in internal units).
    fn walk(&self, t: &[Rational], bound: &mut Rational, visit: &mut dyn FnMut(&[Rational], &Rational) -> Flow) {
        if self.n == 0 {
            visit(&[], &Rational::zero());
            return;
        }
        let mut z = vec![Rational::zero(); self.n];
        self.descend(self.n - 1, t, &mut z, &Rational::zero(), bound, visit);
    }

    fn descend(
        &self,
        level: usize,
        t: &[Rational],
        z: &mut Vec<Rational>,
        partial: &Rational,
        bound: &mut Rational,
        visit: &mut dyn FnMut(&[Rational], &Rational) -> Flow,
    ) {
        let row = &self.q[level];
        let mut center = Rational::zero();
        for j in level + 1..self.n {
            if !z[j].is_zero() && !row[j].is_zero() {
                center -= &row[j] * &z[j];
            }
        }
        let base = &center - &t[level];
        let start = base.floor().to_integer();
        for upward in [false, true] {
            let mut y = if upward { &start + 1 } else { start.clone() };
            loop {
                let delta = rat_from_int(&y) - &base;
                let total = partial + &row[level] * &delta * &delta;
                if total > *bound {
                    break;
                }
                z[level] = rat_from_int(&y) + &t[level];
                if level == 0 {
                    if let Flow::Shrink(b) = visit(z, &total) {
                        *bound = b;
                    }
                } else {
                    self.descend(level - 1, t, z, &total, bound, visit);
                }
                if upward {
                    y += 1;
                } else {
                    y -= 1;
                }
            }
        }
    }

    /// Reference implementation of [`Self::vectors_up_to_norm`] in exact
    /// rational arithmetic throughout.
    pub fn vectors_up_to_norm_exact(&self, bound: &Rational) -> Vec<Vec<Int>> {
        let mut out = Vec::new();
        let mut b = bound * &self.scale;
        let zero = vec![Rational::zero(); self.n];
        self.walk(&zero, &mut b, &mut |z, norm| {
            if !norm.is_zero() {
                out.push(self.to_original(z).iter().map(|x| x.to_integer()).collect());
            }
            Flow::Continue
        });
        out.sort();
        out
    }

    pub fn coset_vectors_exact(&self, t: &[Rational], bound: &Rational) -> Vec<(Vec<Rational>, Rational)> {
        let tr = self.to_reduced(t);
        let mut b = bound * &self.scale;
        let mut out = Vec::new();
        self.walk(&tr, &mut b, &mut |z, norm| {
            out.push((self.to_original(z), norm / &self.scale));
            Flow::Continue
        });
        out.sort();
        out
    }

    pub fn min_coset_norm_exact(&self, t: &[Rational]) -> Rational {
        let tr = self.to_reduced(t);
        let mut best = self.nearest_plane_norm(&tr);
        let mut found = best.clone();
        self.walk(&tr, &mut best, &mut |_, norm| {
            if *norm < found {
                found = norm.clone();
            }
            Flow::Shrink(found.clone())
        });
        found / &self.scale
    }

    pub fn count_coset_vectors_of_norm_exact(&self, t: &[Rational], norm: &Rational) -> usize {
        let tr = self.to_reduced(t);
        let target = norm * &self.scale;
        let mut b = target.clone();
        let mut count = 0usize;
        self.walk(&tr, &mut b, &mut |_, nm| {
            if *nm == target {
                count += 1;
            }
            Flow::Continue
        });
        count
    }

    fn fast_target(&self, t: &[Rational]) -> Option<FastTarget> {
        let den = crate::exact::lcm_of_denominators(t.iter());
        let den: i128 = (&den).try_into().ok().filter(|d: &i128| *d < (1 << 40))?;
        let mut num = Vec::with_capacity(t.len());
        let mut tf = Vec::with_capacity(t.len());
        for x in t {
            let v = x * Rational::from_integer(Int::from(den));
            num.push(i128::try_from(v.to_integer()).ok().filter(|v| v.abs() < (1 << 60))?);
            tf.push(x.to_f64()?);
        }
        Some(FastTarget { tf, num, den })
    }

    // Depth-first walk over z = y + t with float pruning. `visit` receives the
    // integer part y and the exact numerator N of the norm (norm = N / den²);
    // it returns an optional tightened float bound. Returns false when exact
    // arithmetic overflowed, in which case callers use the rational walk.
    fn walk_fast(
        &self,
        ff: &FloatForm,
        t: &FastTarget,
        bound: f64,
        visit: &mut dyn FnMut(&[i64], i128) -> Option<f64>,
    ) -> bool {
        let n = self.n;
        if n == 0 {
            visit(&[], 0);
            return true;
        }
        let mut y = vec![0i64; n];
        let mut zf = vec![0f64; n];
        let mut bound = slack(bound);
        let mut ok = true;
        self.descend_fast(ff, t, n - 1, &mut y, &mut zf, 0.0, &mut bound, &mut ok, visit);
        ok
    }

    #[allow(clippy::too_many_arguments)]
    fn descend_fast(
        &self,
        ff: &FloatForm,
        t: &FastTarget,
        level: usize,
        y: &mut Vec<i64>,
        zf: &mut Vec<f64>,
        partial: f64,
        bound: &mut f64,
        ok: &mut bool,
        visit: &mut dyn FnMut(&[i64], i128) -> Option<f64>,
    ) {
        let row = &ff.coef[level];
        let mut center = 0.0;
        for j in level + 1..self.n {
            center -= row[j] * zf[j];
        }
        let base = center - t.tf[level];
        let start = base.floor() as i64;
        for upward in [false, true] {
            let mut v = if upward { start + 1 } else { start };
            loop {
                if !*ok {
                    return;
                }
                let delta = v as f64 - base;
                let total = partial + ff.diag[level] * delta * delta;
                if total > *bound {
                    break;
                }
                y[level] = v;
                zf[level] = v as f64 + t.tf[level];
                if level == 0 {
                    match exact_norm(&ff.gram, y, t) {
                        Some(nm) => {
                            if let Some(b) = visit(y, nm) {
                                *bound = slack(b);
                            }
                        }
                        None => {
                            *ok = false;
                            return;
                        }
                    }
                } else {
                    self.descend_fast(ff, t, level - 1, y, zf, total, bound, ok, visit);
                }
                if upward {
                    v += 1;
                } else {
                    v -= 1;
                }
            }
        }
    }

    fn y_to_original_int(&self, y: &[i64]) -> Vec<Int> {
        let yi: Vec<Int> = y.iter().map(|&v| Int::from(v)).collect();
        self.basis.mul_vec(&yi)
    }

    fn y_to_original(&self, y: &[i64], t: &[Rational]) -> Vec<Rational> {
        let z: Vec<Rational> = y.iter().zip(t).map(|(&v, tt)| Rational::from_integer(Int::from(v)) + tt).collect();
        self.to_original(&z)
    }

    /// All nonzero `x ∈ Zⁿ` with `xᵀGx ≤ bound`, sorted.
    pub fn vectors_up_to_norm(&self, bound: &Rational) -> Vec<Vec<Int>> {
        let b = bound * &self.scale;
        if let (Some(ff), Some(bf)) = (&self.fast, b.to_f64()) {
            let t = FastTarget { tf: vec![0.0; self.n], num: vec![0; self.n], den: 1 };
            let mut out = Vec::new();
            let ok = self.walk_fast(ff, &t, bf, &mut |y, nm| {
                if nm != 0 && Rational::from_integer(Int::from(nm)) <= b {
                    out.push(self.y_to_original_int(y));
                }
                None
            });
            if ok {
                out.sort();
                return out;
            }
        }
        self.vectors_up_to_norm_exact(bound)
    }

    /// All `v ∈ Zⁿ + t` with norm at most `bound`, paired with the norm.
    pub fn coset_vectors(&self, t: &[Rational], bound: &Rational) -> Vec<(Vec<Rational>, Rational)> {
        let tr = self.to_reduced(t);
        let b = bound * &self.scale;
        if let (Some(ff), Some(ft), Some(bf)) = (&self.fast, self.fast_target(&tr), b.to_f64()) {
            let d2 = Int::from(ft.den * ft.den);
            let mut out = Vec::new();
            let ok = self.walk_fast(ff, &ft, bf, &mut |y, nm| {
                let norm = Rational::new(Int::from(nm), d2.clone());
                if norm <= b {
                    out.push((self.y_to_original(y, &tr), norm / &self.scale));
                }
                None
            });
            if ok {
                out.sort();
                return out;
            }
        }
        self.coset_vectors_exact(t, bound)
    }

    /// Exact minimum of the norm over `Zⁿ + t`.
    pub fn min_coset_norm(&self, t: &[Rational]) -> Rational {
        let tr = self.to_reduced(t);
        if let (Some(ff), Some(ft)) = (&self.fast, self.fast_target(&tr)) {
            let start = self.nearest_plane_norm(&tr).to_f64().unwrap_or(f64::INFINITY);
            let mut best: Option<i128> = None;
            let den2 = (ft.den * ft.den) as f64;
            let ok = self.walk_fast(ff, &ft, start, &mut |_, nm| {
                if best.is_none_or(|b| nm < b) {
                    best = Some(nm);
                }
                best.map(|b| b as f64 / den2)
            });
            if let (true, Some(b)) = (ok, best) {
                return Rational::new(Int::from(b), Int::from(ft.den * ft.den)) / &self.scale;
            }
        }
        self.min_coset_norm_exact(t)
    }

    /// Whether some vector of `Zⁿ + t` has norm strictly below `bound`.
    pub fn coset_has_norm_below(&self, t: &[Rational], bound: &Rational) -> bool {
        let tr = self.to_reduced(t);
        let b = bound * &self.scale;
        if let (Some(ff), Some(ft), Some(bf)) = (&self.fast, self.fast_target(&tr), b.to_f64()) {
            let d2 = Int::from(ft.den * ft.den);
            let mut found = false;
            let ok = self.walk_fast(ff, &ft, bf, &mut |_, nm| {
                if Rational::new(Int::from(nm), d2.clone()) < b {
                    found = true;
                    // nothing further is needed: collapse the bound
                    return Some(-1.0);
                }
                None
            });
            if ok {
                return found;
            }
        }
        self.min_coset_norm_exact(t) < *bound
    }

    pub fn count_coset_vectors_of_norm(&self, t: &[Rational], norm: &Rational) -> usize {
        let tr = self.to_reduced(t);
        let target = norm * &self.scale;
        if let (Some(ff), Some(ft), Some(bf)) = (&self.fast, self.fast_target(&tr), target.to_f64()) {
            let d2 = Int::from(ft.den * ft.den);
            let mut count = 0usize;
            let ok = self.walk_fast(ff, &ft, bf, &mut |_, nm| {
                if Rational::new(Int::from(nm), d2.clone()) == target {
                    count += 1;
                }
                None
            });
            if ok {
                return count;
            }
        }
        self.count_coset_vectors_of_norm_exact(t, norm)
    }

    // Upper bound from successive rounding in the Cholesky coordinates.
    fn nearest_plane_norm(&self, t: &[Rational]) -> Rational {
        let mut z = vec![Rational::zero(); self.n];
        let mut total = Rational::zero();
        for level in (0..self.n).rev() {
            let row = &self.q[level];
            let mut center = Rational::zero();
            for j in level + 1..self.n {
                center -= &row[j] * &z[j];
            }
            let base = &center - &t[level];
            let y = base.round();
            let delta = &y - &base;
            total += &row[level] * &delta * &delta;
            z[level] = y + &t[level];
        }
        total
    }
}

impl FloatForm {
    fn new(reduced: &IntMatrix, q: &[Vec<Rational>]) -> Option<FloatForm> {
        let n = reduced.rows();
        let mut gram = vec![vec![0i128; n]; n];
        for i in 0..n {
            for j in 0..n {
                gram[i][j] = i128::try_from(&reduced[(i, j)]).ok().filter(|v| v.abs() < (1 << 40))?;
            }
        }
        let diag = (0..n).map(|i| q[i][i].to_f64()).collect::<Option<Vec<_>>>()?;
        let coef = q.iter().map(|row| row.iter().map(|x| x.to_f64()).collect::<Option<Vec<_>>>()).collect::<Option<Vec<_>>>()?;
        Some(FloatForm { diag, coef, gram })
    }
}

// Exact numerator wᵀGw of the norm of w = den·y + num.
fn exact_norm(gram: &[Vec<i128>], y: &[i64], t: &FastTarget) -> Option<i128> {
    let n = y.len();
    let mut w = Vec::with_capacity(n);
    for i in 0..n {
        w.push((y[i] as i128).checked_mul(t.den)?.checked_add(t.num[i])?);
    }
    let mut total: i128 = 0;
    for i in 0..n {
        if w[i] == 0 {
            continue;
        }
        let mut row: i128 = 0;
        for j in 0..n {
            if w[j] != 0 && gram[i][j] != 0 {
                row = row.checked_add(gram[i][j].checked_mul(w[j])?)?;
            }
        }
        total = total.checked_add(row.checked_mul(w[i])?)?;
    }
    Some(total)
}

fn cholesky(g: &IntMatrix) -> Vec<Vec<Rational>> {
    let n = g.rows();
    let mut q: Vec<Vec<Rational>> = (0..n).map(|i| g.row(i).iter().map(rat_from_int).collect()).collect();
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j].clone();
            q[i][j] = &q[i][j] / &q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                let v = &q[k][i] * &q[i][l];
                q[k][l] -= v;
            }
        }
    }
    for (i, row) in q.iter_mut().enumerate() {
        for x in row.iter_mut().take(i) {
            *x = Rational::zero();
        }
    }
    q
}

fn round_div(a: &Int, d: &Int) -> Int {
    // nearest integer to a/d for d > 0, ties towards +∞
    (a * Int::from(2) + d).div_floor(&(d * Int::from(2)))
}

/// Integral LLL (δ = 3/4) acting on a Gram matrix. Returns the reduced Gram
/// matrix and the transform whose columns are the new basis vectors in the
/// old coordinates.
pub fn lll_gram(gram: &IntMatrix) -> Result<(IntMatrix, IntMatrix)> {
    let n = gram.rows();
    let mut g = gram.clone();
    let mut h = IntMatrix::identity(n);
    if n <= 1 {
        if n == 1 && !g[(0, 0)].is_positive() {
            return Err(Error::InvalidLattice("Gram matrix is not positive definite".into()));
        }
        return Ok((g, h));
    }
    // 1-based in the bookkeeping arrays: d[0] = 1, d[k] = det of the leading k×k block.
    let mut d = vec![Int::zero(); n + 1];
    let mut lam = vec![vec![Int::zero(); n + 1]; n + 1];
    d[0] = Int::one();
    d[1] = g[(0, 0)].clone();
    if !d[1].is_positive() {
        return Err(Error::InvalidLattice("Gram matrix is not positive definite".into()));
    }
    let mut k = 2usize;
    let mut kmax = 1usize;

    let red = |k: usize, l: usize, g: &mut IntMatrix, h: &mut IntMatrix, lam: &mut Vec<Vec<Int>>, d: &Vec<Int>| {
        let two_l = &lam[k][l] * Int::from(2);
        if two_l.abs() <= d[l] {
            return;
        }
        let q = round_div(&lam[k][l], &d[l]);
        let neg = -&q;
        // b_k ← b_k − q b_l
        h.add_col_multiple(k - 1, l - 1, &neg);
        g.add_col_multiple(k - 1, l - 1, &neg);
        g.add_row_multiple(k - 1, l - 1, &neg);
        lam[k][l] -= &q * &d[l];
        for i in 1..l {
            let v = &q * &lam[l][i];
            lam[k][i] -= v;
        }
    };

    while k <= n {
        if k > kmax {
            kmax = k;
            for j in 1..=k {
                let mut u = g[(k - 1, j - 1)].clone();
                for i in 1..j {
                    u = (&d[i] * &u - &lam[k][i] * &lam[j][i]) / &d[i - 1];
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    if !u.is_positive() {
                        return Err(Error::InvalidLattice("Gram matrix is not positive definite".into()));
                    }
                    d[k] = u;
                }
            }
        }
        loop {
            red(k, k - 1, &mut g, &mut h, &mut lam, &d);
            let lhs = &d[k] * &d[k - 2] * Int::from(4);
            let rhs = &d[k - 1] * &d[k - 1] * Int::from(3) - &lam[k][k - 1] * &lam[k][k - 1] * Int::from(4);
            if lhs < rhs {
                // swap b_k and b_{k-1}
                h.swap_cols(k - 1, k - 2);
                g.swap_cols(k - 1, k - 2);
                g.swap_rows(k - 1, k - 2);
                for j in 1..k - 1 {
                    let tmp = std::mem::take(&mut lam[k][j]);
                    lam[k][j] = std::mem::replace(&mut lam[k - 1][j], tmp);
                }
                let l = lam[k][k - 1].clone();
                let b = (&d[k - 2] * &d[k] + &l * &l) / &d[k - 1];
                for i in k + 1..=kmax {
                    let t = lam[i][k].clone();
                    lam[i][k] = (&d[k] * &lam[i][k - 1] - &l * &t) / &d[k - 1];
                    lam[i][k - 1] = (&b * &t + &l * &lam[i][k]) / &d[k];
                }
                d[k - 1] = b;
                if k > 2 {
                    k -= 1;
                }
            } else {
                for l in (1..k - 1).rev() {
                    red(k, l, &mut g, &mut h, &mut lam, &d);
                }
                k += 1;
                break;
            }
        }
    }
    Ok((g, h))
}

/// Nonzero vectors of `L` with norm at most `bound`, in lattice coordinates.
pub fn vectors_up_to_norm(l: &Lattice, bound: &Rational) -> Result<Vec<Vec<Int>>> {
    if bound.is_negative() {
        return Err(Error::Dimension("negative norm bound".into()));
    }
    Ok(Enumerator::new(l.gram())?.vectors_up_to_norm(bound))
}

/// An enumerator for a sublattice, working in its own basis coordinates.
pub fn sublattice_enumerator(m: &Sublattice) -> Result<Enumerator> {
    Enumerator::from_rational_gram(m.gram())
}

/// Minimum of `⟨α, α⟩` over `α ∈ M + h` (the full norm, not halved).
pub fn min_coset_norm(m: &Sublattice, h: &[Rational]) -> Result<Rational> {
    let t = m.coordinates(h).ok_or(Error::NotInSpan)?;
    Ok(sublattice_enumerator(m)?.min_coset_norm(&t))
}

pub fn count_coset_vectors_of_norm(m: &Sublattice, h: &[Rational], norm: &Rational) -> Result<usize> {
    let t = m.coordinates(h).ok_or(Error::NotInSpan)?;
    Ok(sublattice_enumerator(m)?.count_coset_vectors_of_norm(&t, norm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn e8_cartan() -> IntMatrix {
        // Bourbaki numbering: 1-3-4-5-6-7-8 chain with 2 attached to 4.
        let mut m = IntMatrix::identity(8).scale(&Int::from(2));
        let edges = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];
        for (a, b) in edges {
            m[(a, b)] = Int::from(-1);
            m[(b, a)] = Int::from(-1);
        }
        m
    }

    #[test]
    fn e8_roots() {
        let e = Enumerator::new(&e8_cartan()).unwrap();
        assert_eq!(e.vectors_up_to_norm(&rat(2, 1)).len(), 240);
        assert_eq!(e.count_coset_vectors_of_norm(&vec![Rational::zero(); 8], &rat(4, 1)), 2160);
    }

    #[test]
    fn tiny_cosets() {
        let z = Enumerator::new(&IntMatrix::from_i64(&[vec![1]])).unwrap();
        assert_eq!(z.min_coset_norm(&[rat(1, 2)]), rat(1, 4));
        assert_eq!(z.count_coset_vectors_of_norm(&[rat(0, 1)], &rat(1, 1)), 2);
        let a1 = Enumerator::new(&IntMatrix::from_i64(&[vec![2]])).unwrap();
        assert_eq!(a1.min_coset_norm(&[rat(1, 2)]), rat(1, 2));
        assert_eq!(a1.min_coset_norm(&[rat(3, 1)]), rat(0, 1));
        assert_eq!(a1.count_coset_vectors_of_norm(&[rat(1, 2)], &rat(1, 2)), 2);
    }

    #[test]
    fn lll_preserves_determinant() {
        let g = IntMatrix::from_i64(&[vec![10, 7, 3], vec![7, 6, 2], vec![3, 2, 4]]);
        let (r, h) = lll_gram(&g).unwrap();
        assert_eq!(h.transpose().mul(&g).mul(&h), r);
        assert_eq!(r.det(), g.det());
        assert_eq!(h.det().abs(), Int::one());
    }

    #[test]
    fn rational_gram() {
        let g = QMatrix::from_rows(&[vec![rat(1, 2)]]);
        let e = Enumerator::from_rational_gram(&g).unwrap();
        assert_eq!(e.min_coset_norm(&[rat(1, 2)]), rat(1, 8));
        assert_eq!(e.vectors_up_to_norm(&rat(1, 2)), vec![vec![Int::from(-1)], vec![Int::from(1)]]);
    }
}
