//! Lie algebras given by structure constants over a fixed basis.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{axpy, is_zero_vector, unit_vector, zero_vector, RatMatrix, Rational, Subspace, Vector};

/// An antisymmetric bilinear map `V x V -> V` on a basis `e_0, ..., e_{dim-1}`.
///
/// Only pairs `i < j` are stored, each as a sparse list of `(k, c)` meaning
/// `(e_i, e_j) -> sum c e_k`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BilinearMap {
    dim: usize,
    entries: BTreeMap<(usize, usize), Vec<(usize, Rational)>>,
}

impl BilinearMap {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            entries: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Adds `c e_k` to the value on `(e_i, e_j)`; `(j, i)` is handled by antisymmetry.
    pub fn add_term(&mut self, i: usize, j: usize, k: usize, c: Rational) {
        assert!(
            i < self.dim && j < self.dim && k < self.dim,
            "basis index out of range"
        );
        if c.is_zero() {
            return;
        }
        assert!(i != j, "diagonal value of an antisymmetric map must vanish");
        let (key, c) = if i < j { ((i, j), c) } else { ((j, i), -c) };
        let terms = self.entries.entry(key).or_default();
        match terms.binary_search_by_key(&k, |(t, _)| *t) {
            Ok(pos) => {
                terms[pos].1 += c;
                if terms[pos].1.is_zero() {
                    terms.remove(pos);
                }
            }
            Err(pos) => terms.insert(pos, (k, c)),
        }
        if terms.is_empty() {
            self.entries.remove(&key);
        }
    }

    /// Sparse value on `(e_i, e_j)` for any ordering of the pair.
    pub fn terms(&self, i: usize, j: usize) -> Vec<(usize, Rational)> {
        if i == j {
            return Vec::new();
        }
        let (key, neg) = if i < j { ((i, j), false) } else { ((j, i), true) };
        match self.entries.get(&key) {
            None => Vec::new(),
            Some(t) if !neg => t.clone(),
            Some(t) => t.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }

    pub fn value(&self, i: usize, j: usize) -> Vector {
        let mut v = zero_vector(self.dim);
        for (k, c) in self.terms(i, j) {
            v[k] = c;
        }
        v
    }

    /// Stored entries, `i < j`, in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &Vec<(usize, Rational)>)> {
        self.entries.iter()
    }

    /// Number of nonzero pairs `i < j`.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn apply(&self, x: &[Rational], y: &[Rational]) -> Vector {
        let mut out = zero_vector(self.dim);
        for (&(i, j), terms) in &self.entries {
            let c = &x[i] * &y[j] - &x[j] * &y[i];
            if c.is_zero() {
                continue;
            }
            for (k, a) in terms {
                out[*k] += &c * a;
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let mut out = self.clone();
        for (&(i, j), terms) in &other.entries {
            for (k, c) in terms {
                out.add_term(i, j, *k, c.clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.dim);
        for (&(i, j), terms) in &self.entries {
            for (k, a) in terms {
                out.add_term(i, j, *k, a * c);
            }
        }
        out
    }

    /// Dense lookup table `t[i][j]` of all values, including both orders.
    pub fn dense(&self) -> Vec<Vec<Vector>> {
        let n = self.dim;
        let mut t = vec![vec![zero_vector(n); n]; n];
        for (&(i, j), terms) in &self.entries {
            for (k, c) in terms {
                t[i][j][*k] = c.clone();
                t[j][i][*k] = -c.clone();
            }
        }
        t
    }
}

impl fmt::Debug for BilinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for ((i, j), terms) in &self.entries {
            let rendered: Vec<String> = terms.iter().map(|(k, c)| format!("{c}*e{k}")).collect();
            m.entry(&format!("[e{i},e{j}]"), &rendered.join(" + "));
        }
        m.finish()
    }
}

/// A basis triple on which the Jacobi identity fails, with the residual
/// `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub residual: Vector,
}

/// Every basis triple `i < j < k` where the Jacobi identity fails.
pub fn jacobi_violations(table: &BilinearMap) -> Vec<JacobiViolation> {
    let n = table.dim();
    let dense = table.dense();
    let bracket_with_basis = |v: &Vector, k: usize| -> Vector {
        let mut out = zero_vector(n);
        for (m, c) in v.iter().enumerate() {
            if !c.is_zero() {
                axpy(&mut out, c, &dense[m][k]);
            }
        }
        out
    };
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let mut r = bracket_with_basis(&dense[i][j], k);
                let b = bracket_with_basis(&dense[j][k], i);
                let c = bracket_with_basis(&dense[k][i], j);
                for ((x, y), z) in r.iter_mut().zip(b).zip(c) {
                    *x += y + z;
                }
                if !is_zero_vector(&r) {
                    out.push(JacobiViolation { i, j, k, residual: r });
                }
            }
        }
    }
    out
}

/// A finite-dimensional Lie algebra over the rationals. Construction checks
/// the Jacobi identity, so every value of this type is a Lie algebra.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LieAlgebra {
    table: BilinearMap,
    labels: Vec<String>,
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LieAlgebra")
            .field("labels", &self.labels)
            .field("brackets", &self.table)
            .finish()
    }
}

/// Result of the filiform test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FiliformInfo {
    pub filiform: bool,
    /// Largest `k` with `g^k != 0`; `None` when the algebra is not nilpotent.
    pub nilindex: Option<usize>,
}

impl LieAlgebra {
    pub fn new(table: BilinearMap, labels: Vec<String>) -> Result<Self> {
        if labels.len() != table.dim() {
            return Err(Error::DimensionMismatch {
                expected: table.dim(),
                found: labels.len(),
            });
        }
        let violations = jacobi_violations(&table);
        if !violations.is_empty() {
            return Err(Error::JacobiViolation(violations));
        }
        Ok(Self { table, labels })
    }

    /// Labels `prefix1, prefix2, ...` (or starting from `origin`).
    pub fn with_prefix(table: BilinearMap, prefix: &str, origin: usize) -> Result<Self> {
        let labels = (0..table.dim())
            .map(|i| format!("{prefix}{}", i + origin))
            .collect();
        Self::new(table, labels)
    }

    pub fn abelian(dim: usize) -> Self {
        Self::with_prefix(BilinearMap::zero(dim), "e", 1).expect("abelian algebra")
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    pub fn table(&self) -> &BilinearMap {
        &self.table
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn relabeled(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim());
        self.labels = labels;
        self
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vector> {
        for v in [x, y] {
            if v.len() != self.dim() {
                return Err(Error::DimensionMismatch {
                    expected: self.dim(),
                    found: v.len(),
                });
            }
        }
        Ok(self.table.apply(x, y))
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> Vector {
        self.table.value(i, j)
    }

    /// Matrix of `ad(x)`; column `j` holds `[x, e_j]`.
    pub fn ad(&self, x: &[Rational]) -> RatMatrix {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| self.table.apply(x, &unit_vector(n, j))).collect();
        RatMatrix::from_columns(&cols, n)
    }

    /// `[U, W]` for subspaces given by spanning sets.
    pub fn bracket_subspaces(&self, u: &Subspace, w: &Subspace) -> Subspace {
        let n = self.dim();
        let mut vectors = Vec::new();
        for a in u.basis() {
            for b in w.basis() {
                let v = self.table.apply(a, b);
                if !is_zero_vector(&v) {
                    vectors.push(v);
                }
            }
        }
        Subspace::span(n, vectors)
    }

    /// `g^1 = g`, `g^{k+1} = [g^k, g]`, stopping before the first repeat.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let n = self.dim();
        let full = Subspace::full(n);
        let mut series = vec![full.clone()];
        loop {
            let last = series.last().expect("nonempty");
            let next = self.bracket_subspaces(last, &full);
            if &next == last {
                break;
            }
            let done = next.is_zero();
            series.push(next);
            if done {
                break;
            }
        }
        series
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().is_some_and(Subspace::is_zero)
    }

    pub fn nilindex(&self) -> Option<usize> {
        let series = self.lower_central_series();
        series
            .last()
            .is_some_and(Subspace::is_zero)
            .then(|| series.iter().filter(|s| !s.is_zero()).count())
    }

    pub fn is_filiform(&self) -> FiliformInfo {
        let n = self.dim();
        let series = self.lower_central_series();
        if !series.last().is_some_and(Subspace::is_zero) {
            return FiliformInfo {
                filiform: false,
                nilindex: None,
            };
        }
        let nilindex = series.iter().filter(|s| !s.is_zero()).count();
        let dims: Vec<usize> = series.iter().map(Subspace::dim).collect();
        // dims must read n, n-2, n-3, ..., 1, 0
        let filiform = n >= 2
            && nilindex == n - 1
            && dims[0] - dims.get(1).copied().unwrap_or(0) == 2
            && dims[1..].windows(2).all(|w| w[0] - w[1] == 1);
        FiliformInfo {
            filiform,
            nilindex: Some(nilindex),
        }
    }

    /// Checks `[g^i, g^j] ⊆ g^{i+j}` for all terms of the series.
    pub fn is_central_filtration(&self, series: &[Subspace]) -> bool {
        let n = self.dim();
        let term = |k: usize| series.get(k - 1).cloned().unwrap_or_else(|| Subspace::zero(n));
        (1..=series.len()).all(|i| {
            (1..=series.len())
                .all(|j| term(i + j).contains_subspace(&self.bracket_subspaces(&term(i), &term(j))))
        })
    }

    /// Expresses the algebra in a new basis. Column `i` of `change` holds the
    /// `i`-th new basis vector in old coordinates.
    pub fn change_basis(&self, change: &RatMatrix, labels: Vec<String>) -> Result<LieAlgebra> {
        let n = self.dim();
        if change.rows() != n || change.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: change.rows().max(change.cols()),
            });
        }
        let inv = change.inverse().ok_or(Error::SingularBasis)?;
        let cols: Vec<Vector> = (0..n).map(|i| change.column(i)).collect();
        let mut table = BilinearMap::zero(n);
        for i in 0..n {
            for j in i + 1..n {
                let v = inv.mul_vec(&self.table.apply(&cols[i], &cols[j]));
                for (k, c) in v.into_iter().enumerate() {
                    table.add_term(i, j, k, c);
                }
            }
        }
        LieAlgebra::new(table, labels)
    }

    /// True when `m` is invertible and preserves the bracket.
    pub fn is_automorphism(&self, m: &RatMatrix) -> bool {
        let n = self.dim();
        if m.rows() != n || m.cols() != n || m.determinant().is_zero() {
            return false;
        }
        let cols: Vec<Vector> = (0..n).map(|i| m.column(i)).collect();
        (0..n).all(|i| {
            (i + 1..n).all(|j| m.mul_vec(&self.basis_bracket(i, j)) == self.table.apply(&cols[i], &cols[j]))
        })
    }

    /// `exp(ad x)` for nilpotent `ad x`; always an automorphism.
    pub fn inner_automorphism(&self, x: &[Rational]) -> Result<RatMatrix> {
        let n = self.dim();
        let ad = self.ad(x);
        let mut term = RatMatrix::identity(n);
        let mut sum = RatMatrix::identity(n);
        for k in 1..=n {
            term = term.mul(&ad).scale(&Rational::new(1.into(), (k as i64).into()));
            if term.is_zero() {
                return Ok(sum);
            }
            sum = sum.add(&term);
        }
        Err(Error::Precondition("ad(x) is not nilpotent".into()))
    }

    /// Associated graded algebra of the lower central filtration.
    ///
    /// The basis of each `W_i = g^i / g^{i+1}` is made of rows of the echelon
    /// basis of `g^i` whose pivots are not pivots of `g^{i+1}`.
    pub fn associated_graded(&self) -> Result<LieAlgebra> {
        let n = self.dim();
        let series = self.lower_central_series();
        if !series.last().is_some_and(Subspace::is_zero) {
            return Err(Error::NotNilpotent);
        }
        let mut reps: Vec<(usize, Vector)> = Vec::new();
        for (level, pair) in series.windows(2).enumerate() {
            let (upper, lower) = (&pair[0], &pair[1]);
            for (row, p) in upper.basis().iter().zip(upper.pivots()) {
                if !lower.pivots().contains(p) {
                    reps.push((level + 1, row.clone()));
                }
            }
        }
        debug_assert_eq!(reps.len(), n);
        let change = RatMatrix::from_columns(&reps.iter().map(|(_, v)| v.clone()).collect::<Vec<_>>(), n);
        let inv = change.inverse().ok_or(Error::SingularBasis)?;
        let mut table = BilinearMap::zero(n);
        for a in 0..n {
            for b in a + 1..n {
                let target = reps[a].0 + reps[b].0;
                let coords = inv.mul_vec(&self.table.apply(&reps[a].1, &reps[b].1));
                for (k, c) in coords.into_iter().enumerate() {
                    if reps[k].0 == target {
                        table.add_term(a, b, k, c);
                    }
                }
            }
        }
        let labels = reps
            .iter()
            .map(|(_, v)| match v.iter().position(|c| !c.is_zero()) {
                Some(p) if v.iter().filter(|c| !c.is_zero()).count() == 1 && v[p].is_one() => {
                    self.labels[p].clone()
                }
                _ => "w".to_string(),
            })
            .collect();
        LieAlgebra::new(table, labels)
    }

    /// `u` is characteristic when `u ∉ g^2` and `ad(u)^{n-2} != 0`.
    pub fn is_characteristic_vector(&self, u: &[Rational]) -> Result<bool> {
        let n = self.dim();
        if u.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: u.len(),
            });
        }
        if !self.is_filiform().filiform {
            return Err(Error::NotFiliform);
        }
        let series = self.lower_central_series();
        if series[1].contains(u) {
            return Ok(false);
        }
        Ok(!self.ad(u).pow((n - 2) as u32).is_zero())
    }
}

/// One bracket `[e_i, e_j] = sum c e_k` as `(i, j, [(k, c)])`.
pub type BracketTerms = (usize, usize, Vec<(usize, Rational)>);

/// Builds a bracket table from zero-based bracket entries.
pub fn table_from_terms(dim: usize, brackets: &[BracketTerms]) -> BilinearMap {
    let mut t = BilinearMap::zero(dim);
    for (i, j, terms) in brackets {
        for (k, c) in terms {
            t.add_term(*i, *j, *k, c.clone());
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    /// L_n on X_1..X_n, zero-based: [X_1, X_i] = X_{i+1}.
    fn l_n(n: usize) -> LieAlgebra {
        let mut t = BilinearMap::zero(n);
        for i in 1..n - 1 {
            t.add_term(0, i, i + 1, rat(1));
        }
        LieAlgebra::with_prefix(t, "X", 1).unwrap()
    }

    fn dims(a: &LieAlgebra) -> Vec<usize> {
        a.lower_central_series().iter().map(Subspace::dim).collect()
    }

    #[test]
    fn bracket_is_antisymmetric() {
        let a = l_n(4);
        let x = vec![rat(1), rat(2), rat(-1), rat(3)];
        assert!(is_zero_vector(&a.bracket(&x, &x).unwrap()));
        assert_eq!(
            a.bracket(&unit_vector(4, 0), &unit_vector(4, 1)).unwrap(),
            unit_vector(4, 2)
        );
        assert!(a.bracket(&[rat(1)], &x).is_err());
    }

    #[test]
    fn lower_central_series_dims() {
        assert_eq!(dims(&l_n(4)), vec![4, 2, 1, 0]);
        assert_eq!(dims(&LieAlgebra::abelian(3)), vec![3, 0]);
    }

    #[test]
    fn non_nilpotent_series_stops_at_repeat() {
        // [e1, e2] = e2 : the two-dimensional non-abelian algebra
        let mut t = BilinearMap::zero(2);
        t.add_term(0, 1, 1, rat(1));
        let a = LieAlgebra::with_prefix(t, "e", 1).unwrap();
        assert_eq!(dims(&a), vec![2, 1]);
        assert_eq!(
            a.is_filiform(),
            FiliformInfo {
                filiform: false,
                nilindex: None
            }
        );
        assert!(a.associated_graded().is_err());
    }

    #[test]
    fn filiform_detection() {
        let info = l_n(7).is_filiform();
        assert_eq!(
            info,
            FiliformInfo {
                filiform: true,
                nilindex: Some(6)
            }
        );
        let ab = LieAlgebra::abelian(5).is_filiform();
        assert_eq!(
            ab,
            FiliformInfo {
                filiform: false,
                nilindex: Some(1)
            }
        );
    }

    #[test]
    fn characteristic_vectors_of_l6() {
        let a = l_n(6);
        assert!(a.is_characteristic_vector(&unit_vector(6, 0)).unwrap());
        assert!(!a.is_characteristic_vector(&unit_vector(6, 1)).unwrap());
        assert!(!a.is_characteristic_vector(&unit_vector(6, 2)).unwrap());
        assert_eq!(
            LieAlgebra::abelian(3).is_characteristic_vector(&unit_vector(3, 0)),
            Err(Error::NotFiliform)
        );
    }

    #[test]
    fn jacobi_failure_is_reported() {
        // [e1,e2]=e3 with [e3,e4]=e1 breaks Jacobi on (e1,e2,e4) and (e2,e3,e4)
        let mut t = BilinearMap::zero(4);
        t.add_term(0, 1, 2, rat(1));
        t.add_term(2, 3, 0, rat(1));
        let v = jacobi_violations(&t);
        let triples: Vec<_> = v.iter().map(|x| (x.i, x.j, x.k)).collect();
        assert_eq!(triples, vec![(0, 1, 3), (1, 2, 3)]);
        assert!(matches!(
            LieAlgebra::with_prefix(t, "e", 1),
            Err(Error::JacobiViolation(_))
        ));
    }

    #[test]
    fn graded_of_graded_is_itself() {
        let a = l_n(6);
        assert_eq!(a.associated_graded().unwrap().table(), a.table());
    }

    #[test]
    fn inner_automorphisms_preserve_bracket() {
        let a = l_n(5);
        let x = vec![rat(1), rat(-2), rat(0), rat(3), rat(1)];
        let phi = a.inner_automorphism(&x).unwrap();
        assert!(a.is_automorphism(&phi));
        assert!(!a.is_automorphism(&RatMatrix::zeros(5, 5)));
    }

    #[test]
    fn central_filtration_holds() {
        let a = l_n(6);
        assert!(a.is_central_filtration(&a.lower_central_series()));
    }

    #[test]
    fn basis_change_round_trip() {
        let a = l_n(4);
        let mut p = RatMatrix::identity(4);
        p[(1, 0)] = rat(1);
        let b = a.change_basis(&p, a.labels().to_vec()).unwrap();
        let back = b
            .change_basis(&p.inverse().unwrap(), a.labels().to_vec())
            .unwrap();
        assert_eq!(back.table(), a.table());
    }
}
