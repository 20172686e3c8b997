//! Integer matrices and the Smith normal form with unimodular transforms.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Self {
            rows,
            cols,
            data: entries.iter().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn from_rows(rows: &[Vec<i64>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (c, &x) in row.iter().enumerate() {
                m[(r, c)] = BigInt::from(x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self[(r, c)].is_zero()))
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
                    out[(r, c)] += a * &other[(k, c)];
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.rows);
        (0..self.cols)
            .map(|c| {
                v.iter()
                    .enumerate()
                    .fold(BigInt::zero(), |acc, (r, x)| acc + x * &self[(r, c)])
            })
            .collect()
    }

    /// Fraction-free (Bareiss) determinant.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|r| self.row(r).to_vec()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[target] += f * row[source]
    fn add_row(&mut self, target: usize, source: usize, f: &BigInt) {
        for c in 0..self.cols {
            let delta = f * &self[(source, c)];
            self[(target, c)] += delta;
        }
    }

    /// col[target] += f * col[source]
    fn add_col(&mut self, target: usize, source: usize, f: &BigInt) {
        for r in 0..self.rows {
            let delta = f * &self[(r, source)];
            self[(r, target)] += delta;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -&self[(r, c)];
            self[(r, c)] = v;
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// `u * m * v == s` with `u`, `v` unimodular and `s` diagonal,
/// `s[0][0] | s[1][1] | ...`, all diagonal entries nonnegative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// The diagonal of `s`, including trailing zeros, of length min(rows, cols).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols))
            .map(|i| self.s[(i, i)].clone())
            .collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let Some((pr, pc)) = smallest_entry(&s, t) else {
            break;
        };
        s.swap_rows(t, pr);
        u.swap_rows(t, pr);
        s.swap_cols(t, pc);
        v.swap_cols(t, pc);

        loop {
            let mut changed = false;
            for r in t + 1..rows {
                if s[(r, t)].is_zero() {
                    continue;
                }
                let q = s[(r, t)].div_floor(&s[(t, t)]);
                s.add_row(r, t, &-&q);
                u.add_row(r, t, &-&q);
                if !s[(r, t)].is_zero() {
                    changed = true;
                }
            }
            for c in t + 1..cols {
                if s[(t, c)].is_zero() {
                    continue;
                }
                let q = s[(t, c)].div_floor(&s[(t, t)]);
                s.add_col(c, t, &-&q);
                v.add_col(c, t, &-&q);
                if !s[(t, c)].is_zero() {
                    changed = true;
                }
            }
            if changed {
                // A remainder survived; it is smaller than the pivot.
                let (pr, pc) = smallest_in_cross(&s, t);
                s.swap_rows(t, pr);
                u.swap_rows(t, pr);
                s.swap_cols(t, pc);
                v.swap_cols(t, pc);
                continue;
            }
            // Row and column are clear; enforce divisibility on the block.
            let bad = (t + 1..rows)
                .flat_map(|r| (t + 1..cols).map(move |c| (r, c)))
                .find(|&(r, c)| !s[(r, c)].is_multiple_of(&s[(t, t)]));
            match bad {
                Some((r, _)) => {
                    let one = BigInt::one();
                    s.add_row(t, r, &one);
                    u.add_row(t, r, &one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { u, s, v }
}

fn smallest_entry(s: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for r in t..s.rows {
        for c in t..s.cols {
            let x = &s[(r, c)];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(br, bc)| x.abs() < s[(br, bc)].abs()) {
                best = Some((r, c));
            }
        }
    }
    best
}

fn smallest_in_cross(s: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t);
    for r in t..s.rows {
        let x = &s[(r, t)];
        if !x.is_zero() && x.abs() < s[best].abs() {
            best = (r, t);
        }
    }
    for c in t..s.cols {
        let x = &s[(t, c)];
        if !x.is_zero() && x.abs() < s[best].abs() {
            best = (t, c);
        }
    }
    best
}
