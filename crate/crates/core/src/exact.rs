//! Exact integer and rational linear algebra.
//!
//! Everything here works over `BigInt` / `BigRational`; nothing in the crate
//! touches floating point. Matrices are small (rank at most 24 in practice),
//! so the algorithms favour simplicity over asymptotics.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rational = BigRational;

pub fn int(v: i64) -> Int {
    BigInt::from(v)
}

pub fn rat(p: i64, q: i64) -> Rational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_from_int(v: &Int) -> Rational {
    BigRational::from_integer(v.clone())
}

/// Formats a rational as `p/q`, or `p` when the denominator is 1.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: Int = p.trim().parse().ok()?;
            let q: Int = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(BigRational::new(p, q))
            }
        }
        None => s.parse::<Int>().ok().map(BigRational::from_integer),
    }
}

/// Fractional part in `[0, 1)`.
pub fn frac(q: &Rational) -> Rational {
    q - q.floor()
}

pub fn lcm_of_denominators<'a>(it: impl IntoIterator<Item = &'a Rational>) -> Int {
    it.into_iter()
        .fold(Int::one(), |acc, q| acc.lcm(q.denom()))
}

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Int>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        IntMatrix { rows: r, cols: c, data: rows.iter().flatten().cloned().collect() }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let rows: Vec<Vec<Int>> = rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        Self::from_rows(&rows)
    }

    pub fn from_columns(cols: &[Vec<Int>]) -> Self {
        Self::from_rows(cols).transpose()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[Int] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Int> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn mul_qvec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + b * a)
            })
            .collect()
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, k: &Int) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * k).collect() }
    }

    pub fn neg(&self) -> IntMatrix {
        self.scale(&int(-1))
    }

    pub fn pow(&self, mut e: u64) -> IntMatrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j { x.is_one() } else { x.is_zero() }
                })
            })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn trace(&self) -> Int {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn det(&self) -> Int {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut a = self.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !a[(r, k)].is_zero()) else {
                    return Int::zero();
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, k: &Int) {
        if k.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = &self[(src, c)] * k;
            self[(dst, c)] += v;
        }
    }

    /// col[dst] += k * col[src]
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, k: &Int) {
        if k.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = &self[(r, src)] * k;
            self[(r, dst)] += v;
        }
    }

    pub fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -&self[(r, c)];
            self[(r, c)] = v;
        }
    }

    pub fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            let v = -&self[(r, c)];
            self[(r, c)] = v;
        }
    }

    pub fn to_qmatrix(&self) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(rat_from_int).collect(),
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> IntMatrix {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (i, r) in rows.clone().enumerate() {
            for (j, c) in cols.clone().enumerate() {
                out[(i, j)] = self[(r, c)].clone();
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = Int;
    fn index(&self, (r, c): (usize, usize)) -> &Int {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Int {
        &mut self.data[r * self.cols + c]
    }
}

/// Dense rational matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| format_rational(&self[(r, c)])).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_columns(cols: &[Vec<Rational>], nrows: usize) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), nrows, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Rational>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        QMatrix { rows: r, cols: c, data: rows.iter().flatten().cloned().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rational>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn scale(&self, k: &Rational) -> QMatrix {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * k).collect() }
    }

    pub fn common_denominator(&self) -> Int {
        lcm_of_denominators(self.data.iter())
    }

    /// Returns the integer matrix if all entries are integral.
    pub fn to_int(&self) -> Option<IntMatrix> {
        if self.data.iter().all(|x| x.is_integer()) {
            Some(IntMatrix {
                rows: self.rows,
                cols: self.cols,
                data: self.data.iter().map(|x| x.to_integer()).collect(),
            })
        } else {
            None
        }
    }

    /// Multiplies by `d` and converts, panicking if the result is not integral.
    pub fn scaled_to_int(&self, d: &Int) -> IntMatrix {
        self.scale(&rat_from_int(d)).to_int().expect("scaling did not clear denominators")
    }

    /// Reduced row echelon form; returns (rref, pivot columns).
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..a.cols {
            if row == a.rows {
                break;
            }
            let Some(p) = (row..a.rows).find(|&r| !a[(r, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(p, row);
            let inv = a[(row, col)].recip();
            for c in col..a.cols {
                let v = &a[(row, c)] * &inv;
                a[(row, c)] = v;
            }
            for r in 0..a.rows {
                if r != row && !a[(r, col)].is_zero() {
                    let f = a[(r, col)].clone();
                    for c in col..a.cols {
                        let v = &a[(row, c)] * &f;
                        a[(r, c)] -= v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::one();
        }
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] >= n {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols);
        let d = self.common_denominator();
        let m = self.scaled_to_int(&d);
        let dn = num_traits::pow(d, self.rows);
        BigRational::new(m.det(), dn)
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Rational;
    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        &mut self.data[r * self.cols + c]
    }
}

/// `U·M·V = S` with `S` diagonal and `S[i][i] | S[i+1][i+1]`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// The nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<Int> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s[(i, i)].clone())
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // Pick the smallest nonzero entry of the trailing block as pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !s[(i, j)].is_zero()
                    && best.is_none_or(|(bi, bj)| s[(i, j)].abs() < s[(bi, bj)].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        let mut clean = true;
        for i in t + 1..rows {
            if s[(i, t)].is_zero() {
                continue;
            }
            let q = s[(i, t)].div_floor(&s[(t, t)]);
            let nq = -q;
            s.add_row_multiple(i, t, &nq);
            u.add_row_multiple(i, t, &nq);
            if !s[(i, t)].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..cols {
            if s[(t, j)].is_zero() {
                continue;
            }
            let q = s[(t, j)].div_floor(&s[(t, t)]);
            let nq = -q;
            s.add_col_multiple(j, t, &nq);
            v.add_col_multiple(j, t, &nq);
            if !s[(t, j)].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // Enforce divisibility of the trailing block by the pivot.
        let mut offender = None;
        'outer: for i in t + 1..rows {
            for j in t + 1..cols {
                if !s[(i, j)].is_multiple_of(&s[(t, t)]) {
                    offender = Some(i);
                    break 'outer;
                }
            }
        }
        if let Some(i) = offender {
            let one = Int::one();
            s.add_row_multiple(t, i, &one);
            u.add_row_multiple(t, i, &one);
            continue;
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    SmithDecomposition { s, u, v }
}

/// Row-style Hermite normal form with transform: returns `(H, U)` where
/// `U·M = H`, `U` unimodular, and `H` is in echelon form with positive pivots
/// and entries above each pivot reduced into `[0, pivot)`.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // Euclid down the column until a single nonzero entry remains at row r.
        loop {
            let mut best: Option<usize> = None;
            for i in r..rows {
                if !h[(i, c)].is_zero() && best.is_none_or(|b| h[(i, c)].abs() < h[(b, c)].abs()) {
                    best = Some(i);
                }
            }
            let Some(p) = best else { break };
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..rows {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = -h[(i, c)].div_floor(&h[(r, c)]);
                h.add_row_multiple(i, r, &q);
                u.add_row_multiple(i, r, &q);
                if !h[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = -h[(i, c)].div_floor(&h[(r, c)]);
            h.add_row_multiple(i, r, &q);
            u.add_row_multiple(i, r, &q);
        }
        r += 1;
    }
    (h, u)
}

/// A basis (as columns) of the integer kernel `{x ∈ Z^cols : A·x = 0}`.
/// The result is saturated: `Z^cols / ker` is torsion-free.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let (h, u) = hermite_normal_form(&a.transpose());
    let kernel_rows: Vec<Vec<Int>> = (0..h.rows())
        .filter(|&i| h.row(i).iter().all(Zero::is_zero))
        .map(|i| u.row(i).to_vec())
        .collect();
    if kernel_rows.is_empty() {
        return IntMatrix::zeros(a.cols(), 0);
    }
    let k = IntMatrix::from_rows(&kernel_rows);
    // Tidy the basis with a second HNF pass; this keeps entries small and
    // the basis deterministic.
    let (hk, _) = hermite_normal_form(&k);
    let rows: Vec<Vec<Int>> = (0..hk.rows())
        .filter(|&i| !hk.row(i).iter().all(Zero::is_zero))
        .map(|i| hk.row(i).to_vec())
        .collect();
    IntMatrix::from_rows(&rows).transpose()
}

/// Some integer `x` with `A·x = b`, if one exists.
pub fn solve_integer(a: &IntMatrix, b: &[Int]) -> Option<Vec<Int>> {
    assert_eq!(a.rows(), b.len(), "dimension mismatch");
    let snf = smith_normal_form(a);
    let ub = snf.u.mul_vec(b);
    let mut y = vec![Int::zero(); a.cols()];
    for (i, ubi) in ub.iter().enumerate() {
        let d = if i < a.cols() { snf.s[(i, i)].clone() } else { Int::zero() };
        if d.is_zero() {
            if !ubi.is_zero() {
                return None;
            }
        } else {
            let (q, r) = ubi.div_rem(&d);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// Some rational `x` with `A·x = b` (free variables set to zero), if consistent.
pub fn solve_rational(a: &IntMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    solve_rational_q(&a.to_qmatrix(), b)
}

pub fn solve_rational_q(a: &QMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(a.rows(), b.len(), "dimension mismatch");
    let n = a.cols();
    let mut aug = QMatrix::zeros(a.rows(), n + 1);
    for i in 0..a.rows() {
        for j in 0..n {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, n)] = b[i].clone();
    }
    let (r, piv) = aug.rref();
    if piv.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (row, &c) in piv.iter().enumerate() {
        x[c] = r[(row, n)].clone();
    }
    Some(x)
}

/// Characteristic polynomial `det(x·I − M)`, coefficients from constant term
/// upward (so the last entry is the leading coefficient 1).
pub fn char_poly(m: &IntMatrix) -> Vec<Int> {
    assert!(m.is_square(), "characteristic polynomial of non-square matrix");
    let n = m.rows();
    // Faddeev–LeVerrier; the divisions by k are exact over Z.
    let mut coeffs = vec![Int::zero(); n + 1];
    coeffs[n] = Int::one();
    let mut mk = IntMatrix::zeros(n, n);
    for k in 1..=n {
        let mut next = m.mul(&mk);
        for i in 0..n {
            next[(i, i)] += &coeffs[n - k + 1];
        }
        mk = next;
        let am = m.mul(&mk);
        let tr = am.trace();
        coeffs[n - k] = -(tr / int(k as i64));
    }
    coeffs
}

/// Dense integer polynomials, coefficients from constant term upward.
pub mod poly {
    use super::Int;
    use num_traits::{One, Zero};

    pub fn normalize(mut p: Vec<Int>) -> Vec<Int> {
        while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
        if p.is_empty() {
            p.push(Int::zero());
        }
        p
    }

    pub fn mul(a: &[Int], b: &[Int]) -> Vec<Int> {
        let mut out = vec![Int::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        normalize(out)
    }

    /// `x^t − 1`.
    pub fn x_pow_minus_one(t: usize) -> Vec<Int> {
        let mut p = vec![Int::zero(); t + 1];
        p[0] = -Int::one();
        p[t] = Int::one();
        p
    }

    /// Exact division by a monic polynomial; `None` if the remainder is nonzero.
    pub fn div_exact(a: &[Int], b: &[Int]) -> Option<Vec<Int>> {
        let b = normalize(b.to_vec());
        let db = b.len() - 1;
        assert!(b[db].is_one(), "divisor must be monic");
        let mut r = normalize(a.to_vec());
        if r.len() <= db {
            return if r.iter().all(Zero::is_zero) { Some(vec![Int::zero()]) } else { None };
        }
        let mut q = vec![Int::zero(); r.len() - db];
        for k in (0..q.len()).rev() {
            let c = r[k + db].clone();
            if c.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                r[k + j] -= &c * bj;
            }
            q[k] = c;
        }
        if r.iter().all(Zero::is_zero) { Some(normalize(q)) } else { None }
    }

    /// Evaluate at an integer.
    pub fn eval(p: &[Int], x: &Int) -> Int {
        p.iter().rev().fold(Int::zero(), |acc, c| acc * x + c)
    }

    /// The `n`-th cyclotomic polynomial.
    pub fn cyclotomic(n: usize) -> Vec<Int> {
        let mut p = x_pow_minus_one(n);
        for d in 1..n {
            if n % d == 0 {
                p = div_exact(&p, &cyclotomic(d)).expect("cyclotomic division");
            }
        }
        p
    }
}

/// Solves `A·x ≡ b (mod 2)` over GF(2); entries of `A`, `b` are read mod 2.
pub fn solve_mod2(a: &IntMatrix, b: &[Int]) -> Option<Vec<u8>> {
    let (rows, cols) = (a.rows(), a.cols());
    let bit = |x: &Int| -> u8 { if x.is_odd() { 1 } else { 0 } };
    let mut m: Vec<Vec<u8>> = (0..rows)
        .map(|i| {
            let mut r: Vec<u8> = a.row(i).iter().map(bit).collect();
            r.push(bit(&b[i]));
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&r| m[r][c] == 1) else { continue };
        m.swap(row, p);
        for r in 0..rows {
            if r != row && m[r][c] == 1 {
                for k in c..=cols {
                    m[r][k] ^= m[row][k];
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    if m[row..].iter().any(|r| r[cols] == 1) {
        return None;
    }
    let mut x = vec![0u8; cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][cols];
    }
    Some(x)
}

/// Integer square root (floor) of a non-negative integer.
pub fn isqrt(n: &Int) -> Int {
    assert!(!n.is_negative(), "isqrt of negative number");
    n.sqrt()
}

/// Euler's totient, Möbius function and divisors for small arguments.
pub mod arith {
    use num_integer::Integer;

    pub fn divisors(n: u64) -> Vec<u64> {
        (1..=n).filter(|d| n % d == 0).collect()
    }

    pub fn prime_factors(mut n: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                out.push(p);
                while n % p == 0 {
                    n /= p;
                }
            }
            p += 1;
        }
        if n > 1 {
            out.push(n);
        }
        out
    }

    pub fn mobius(n: u64) -> i64 {
        let mut m = n;
        let mut sign = 1;
        let mut p = 2;
        while p * p <= m {
            if m % p == 0 {
                m /= p;
                if m % p == 0 {
                    return 0;
                }
                sign = -sign;
            }
            p += 1;
        }
        if m > 1 {
            sign = -sign;
        }
        sign
    }

    pub fn lcm_all(it: impl IntoIterator<Item = u64>) -> u64 {
        it.into_iter().fold(1, |a, b| a.lcm(&b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d4() -> IntMatrix {
        IntMatrix::from_i64(&[
            vec![2, -1, 0, 0],
            vec![-1, 2, -1, -1],
            vec![0, -1, 2, 0],
            vec![0, -1, 0, 2],
        ])
    }

    #[test]
    fn snf_of_d4_gram() {
        let m = d4();
        let snf = smith_normal_form(&m);
        assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.s);
        let diag: Vec<i64> = (0..4).map(|i| i64::try_from(&snf.s[(i, i)]).unwrap()).collect();
        assert_eq!(diag, vec![1, 1, 2, 2]);
    }

    #[test]
    fn snf_edge_cases() {
        let z = IntMatrix::from_i64(&[vec![0]]);
        assert_eq!(smith_normal_form(&z).s, z);
        let d = IntMatrix::from_i64(&[vec![2, 0], vec![0, 2]]);
        assert_eq!(smith_normal_form(&d).s, d);
    }

    #[test]
    fn integer_solves() {
        let a = IntMatrix::from_i64(&[vec![2]]);
        assert_eq!(solve_integer(&a, &[int(4)]), Some(vec![int(2)]));
        assert_eq!(solve_integer(&a, &[int(3)]), None);
        let m = d4();
        let b: Vec<Int> = m.column(0).iter().map(|x| x * 2).collect();
        let x = solve_integer(&m, &b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
        assert_eq!(x, vec![int(2), int(0), int(0), int(0)]);
    }

    #[test]
    fn rational_solve_simple() {
        let a = IntMatrix::from_i64(&[vec![2]]);
        assert_eq!(solve_rational(&a, &[rat(3, 1)]), Some(vec![rat(3, 2)]));
        let id = IntMatrix::identity(3);
        let b = vec![rat(1, 2), rat(-7, 3), rat(5, 1)];
        assert_eq!(solve_rational(&id, &b), Some(b.clone()));
        let sing = IntMatrix::from_i64(&[vec![1, 1], vec![1, 1]]);
        assert_eq!(solve_rational(&sing, &[rat(1, 1), rat(2, 1)]), None);
    }

    #[test]
    fn char_poly_small() {
        assert_eq!(char_poly(&IntMatrix::identity(2)), vec![int(1), int(-2), int(1)]);
        let swap = IntMatrix::from_i64(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(char_poly(&swap), vec![int(-1), int(0), int(1)]);
    }

    #[test]
    fn hnf_kernel_is_saturated() {
        let a = IntMatrix::from_i64(&[vec![2, 4, 6]]);
        let k = integer_kernel(&a);
        assert_eq!(k.cols(), 2);
        assert!(a.mul(&k).is_zero());
        // Saturation: the gcd of the maximal minors of the kernel basis is 1.
        let snf = smith_normal_form(&k);
        assert!(snf.invariant_factors().iter().all(|d| d.is_one()));
    }

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(poly::cyclotomic(1), vec![int(-1), int(1)]);
        assert_eq!(poly::cyclotomic(6), vec![int(1), int(-1), int(1)]);
        assert_eq!(poly::cyclotomic(4), vec![int(1), int(0), int(1)]);
    }

    #[test]
    fn rational_format_roundtrip() {
        for q in [rat(3, 4), rat(-5, 1), rat(0, 1), rat(-7, 9)] {
            assert_eq!(parse_rational(&format_rational(&q)), Some(q));
        }
    }

    #[test]
    fn mod2_solver() {
        let a = IntMatrix::from_i64(&[vec![1, 1], vec![0, 1]]);
        let x = solve_mod2(&a, &[int(1), int(1)]).unwrap();
        assert_eq!(x, vec![0, 1]);
        let b = IntMatrix::from_i64(&[vec![2, 0]]);
        assert!(solve_mod2(&b, &[int(1)]).is_none());
    }
}
