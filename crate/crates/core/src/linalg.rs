//! Exact rational linear algebra: dense matrices, reduced row echelon form,
//! kernels and canonical subspaces.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact rational scalar. `BigRational` keeps numerator and denominator
/// reduced with a positive denominator.
pub type Rational = BigRational;

/// A column vector of rationals.
pub type Vector = Vec<Rational>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero_vector(len: usize) -> Vector {
    vec![Rational::zero(); len]
}

pub fn unit_vector(len: usize, i: usize) -> Vector {
    let mut v = zero_vector(len);
    v[i] = Rational::one();
    v
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `acc += c * v`
pub fn axpy(acc: &mut [Rational], c: &Rational, v: &[Rational]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += c * x;
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from row vectors. Panics on ragged input.
    pub fn from_rows(rows: &[Vector]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(rows, cols)
    }

    pub fn from_rows_with_cols(rows: &[Vector], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row.iter().cloned());
        }
        Self {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vector], rows: usize) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "ragged columns");
            for (r, x) in col.iter().enumerate() {
                m[(r, c)] = x.clone();
            }
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Self {
            rows,
            cols,
            data: entries.iter().map(|&x| rat(x)).collect(),
        }
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

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// True when every entry strictly above the diagonal vanishes.
    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|r| (r + 1..self.cols).all(|c| self[(r, c)].is_zero()))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self[(r, c)].is_zero()))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vector {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        assert!(self.is_square());
        let mut result = Self::identity(self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Entries flattened row-major.
    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn rref(&self) -> Echelon {
        let mut rows = self.row_vectors();
        let pivots = rref_in_place(&mut rows, self.cols);
        rows.truncate(pivots.len());
        Echelon {
            cols: self.cols,
            rows,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right kernel `{ v : m v = 0 }`.
    ///
    /// Each returned vector has a 1 at its own free column and zeros at every
    /// other free column, so the basis is canonical for the input.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        self.rref().kernel_basis()
    }

    /// One solution of `m x = b`, if any.
    pub fn solve(&self, b: &[Rational]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows);
        let mut rows: Vec<Vector> = (0..self.rows)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.push(b[r].clone());
                row
            })
            .collect();
        let pivots = rref_in_place(&mut rows, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = zero_vector(self.cols);
        for (row, &p) in rows.iter().zip(&pivots) {
            x[p] = row[self.cols].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut rows: Vec<Vector> = (0..n)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend(unit_vector(n, r));
                row
            })
            .collect();
        let pivots = rref_in_place(&mut rows, 2 * n);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |r, c| rows[r][n + c].clone()))
    }

    pub fn determinant(&self) -> Rational {
        assert!(self.is_square());
        let n = self.rows;
        let mut rows = self.row_vectors();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !rows[r][col].is_zero()) else {
                return Rational::zero();
            };
            if p != col {
                rows.swap(p, col);
                det = -det;
            }
            let pivot = rows[col][col].clone();
            det *= &pivot;
            for r in col + 1..n {
                if rows[r][col].is_zero() {
                    continue;
                }
                let f = &rows[r][col] / &pivot;
                let (top, bottom) = rows.split_at_mut(r);
                axpy(&mut bottom[0], &-f, &top[col]);
            }
        }
        det
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form: nonzero rows only, with their pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub cols: usize,
    pub rows: Vec<Vector>,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn kernel_basis(&self) -> Vec<Vector> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = unit_vector(self.cols, free);
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    if !row[free].is_zero() {
                        v[p] = -row[free].clone();
                    }
                }
                v
            })
            .collect()
    }
}

/// Gauss-Jordan elimination in place. Nonzero rows end up first, in pivot
/// order; the returned pivots are strictly increasing.
pub fn rref_in_place(rows: &mut [Vector], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..cols {
        if next == rows.len() {
            break;
        }
        let Some(found) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(found, next);
        let inv = rows[next][col].recip();
        if !inv.is_one() {
            for x in rows[next].iter_mut().skip(col) {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        let support: Vec<usize> = (col..cols).filter(|&c| !rows[next][c].is_zero()).collect();
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for &c in &support {
                let delta = &f * &pivot_row[c];
                row[c] -= delta;
            }
        }
        pivots.push(col);
        next += 1;
    }
    pivots
}

/// A linear subspace of `Q^ambient_dim`, stored as the nonzero rows of a
/// reduced row echelon form, so equal subspaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self::span(ambient_dim, (0..ambient_dim).map(|i| unit_vector(ambient_dim, i)))
    }

    pub fn span(ambient_dim: usize, vectors: impl IntoIterator<Item = Vector>) -> Self {
        let mut rows: Vec<Vector> = vectors
            .into_iter()
            .inspect(|v| assert_eq!(v.len(), ambient_dim, "vector length mismatch"))
            .filter(|v| !is_zero_vector(v))
            .collect();
        let pivots = rref_in_place(&mut rows, ambient_dim);
        rows.truncate(pivots.len());
        Self {
            ambient_dim,
            basis: rows,
            pivots,
        }
    }

    /// Span of a subset of the standard basis vectors.
    pub fn coordinate(ambient_dim: usize, indices: &[usize]) -> Self {
        Self::span(ambient_dim, indices.iter().map(|&i| unit_vector(ambient_dim, i)))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut rest = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if !rest[p].is_zero() {
                let f = -rest[p].clone();
                axpy(&mut rest, &f, row);
            }
        }
        is_zero_vector(&rest)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Self::span(self.ambient_dim, self.basis.iter().chain(&other.basis).cloned())
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.ambient_dim);
        }
        // Solve sum a_i u_i - sum b_j w_j = 0 and map the `a` part back.
        let columns: Vec<Vector> = self
            .basis
            .iter()
            .cloned()
            .chain(other.basis.iter().map(|w| w.iter().map(|x| -x.clone()).collect()))
            .collect();
        let m = RatMatrix::from_columns(&columns, self.ambient_dim);
        let vectors = m.kernel_basis().into_iter().map(|k| {
            let mut v = zero_vector(self.ambient_dim);
            for (a, u) in k.iter().zip(&self.basis) {
                axpy(&mut v, a, u);
            }
            v
        });
        Self::span(self.ambient_dim, vectors)
    }

    /// Image of the subspace under a linear map.
    pub fn image(&self, m: &RatMatrix) -> Subspace {
        Self::span(m.rows(), self.basis.iter().map(|v| m.mul_vec(v)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: usize, cols: usize, e: &[i64]) -> RatMatrix {
        RatMatrix::from_i64(rows, cols, e)
    }

    #[test]
    fn identity_has_trivial_kernel() {
        assert!(RatMatrix::identity(2).kernel_basis().is_empty());
    }

    #[test]
    fn single_equation_kernel() {
        let k = m(1, 2, &[1, 1]).kernel_basis();
        assert_eq!(k, vec![vec![rat(-1), rat(1)]]);
        // (1, -1) spans the same line
        let line = Subspace::span(2, k);
        assert!(line.contains(&[rat(1), rat(-1)]));
    }

    #[test]
    fn kernel_is_canonical_and_annihilated() {
        let a = m(2, 4, &[1, 2, 3, 4, 2, 4, 6, 9]);
        let k1 = a.kernel_basis();
        let k2 = a.kernel_basis();
        assert_eq!(k1, k2);
        assert_eq!(k1.len(), 4 - a.rank());
        for v in &k1 {
            assert!(is_zero_vector(&a.mul_vec(v)));
        }
    }

    #[test]
    fn inverse_and_determinant() {
        let a = m(3, 3, &[2, 0, 1, 1, 1, 0, 0, 3, 1]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), RatMatrix::identity(3));
        assert_eq!(a.determinant(), rat(5));
        assert!(m(2, 2, &[1, 2, 2, 4]).inverse().is_none());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = m(2, 2, &[1, 1, 2, 2]);
        assert!(a.solve(&[rat(1), rat(3)]).is_none());
        let x = a.solve(&[rat(1), rat(2)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![rat(1), rat(2)]);
    }

    #[test]
    fn subspace_operations() {
        let a = Subspace::coordinate(4, &[0, 1, 2]);
        let b = Subspace::span(
            4,
            vec![
                vec![rat(1), rat(0), rat(0), rat(1)],
                vec![rat(0), rat(1), rat(0), rat(0)],
            ],
        );
        assert_eq!(a.intersection(&b).dim(), 1);
        assert_eq!(a.sum(&b).dim(), 4);
        assert!(a.contains(&[rat(3), rat(-1), ratio(1, 2), rat(0)]));
        assert!(!a.contains(&unit_vector(4, 3)));
        // equality is structural
        let c = Subspace::span(
            4,
            vec![
                vec![rat(2), rat(2), rat(0), rat(0)],
                vec![rat(0), rat(1), rat(0), rat(0)],
            ],
        );
        assert_eq!(c, Subspace::coordinate(4, &[1, 0]));
    }

    #[test]
    fn matrix_power() {
        let n = m(3, 3, &[0, 0, 0, 1, 0, 0, 0, 1, 0]);
        assert!(!n.pow(2).is_zero());
        assert!(n.pow(3).is_zero());
        assert_eq!(n.pow(0), RatMatrix::identity(3));
    }
}
