//! Derivation algebras, the diagonal torus rank and characteristic nilpotency.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::{axpy, rat, RatMatrix, Rational, Subspace, Vector};

/// A basis of `Der(g)`. Matrices act on column vectors: column `j` of `D`
/// is `D(e_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationSpace {
    pub basis: Vec<RatMatrix>,
}

impl DerivationSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Whether `d` satisfies `d[x,y] = [dx,y] + [x,dy]` on all basis pairs.
pub fn is_derivation(a: &LieAlgebra, d: &RatMatrix) -> bool {
    let n = a.dim();
    if d.rows() != n || d.cols() != n {
        return false;
    }
    let columns: Vec<Vector> = (0..n).map(|j| d.column(j)).collect();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = d.mul_vec(&a.basis_bracket(i, j));
            let mut rhs = a.table().apply(&columns[i], &crate::linalg::unit_vector(n, j));
            let second = a.table().apply(&crate::linalg::unit_vector(n, i), &columns[j]);
            axpy(&mut rhs, &rat(1), &second);
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Solves the Leibniz system; unknown `D[r][c]` sits at index `r * n + c`.
pub fn derivation_space(a: &LieAlgebra) -> DerivationSpace {
    let n = a.dim();
    let unknowns = n * n;
    let dense = a.table().dense();
    let mut rows: Vec<Vector> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for m in 0..n {
                let mut row = vec![Rational::zero(); unknowns];
                // D[e_i, e_j] component m
                for (k, c) in a.table().terms(i, j) {
                    row[m * n + k] += &c;
                }
                // -[D e_i, e_j] - [e_i, D e_j], component m
                for r in 0..n {
                    let c = &dense[r][j][m];
                    if !c.is_zero() {
                        row[r * n + i] -= c;
                    }
                    let c = &dense[i][r][m];
                    if !c.is_zero() {
                        row[r * n + j] -= c;
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let system = RatMatrix::from_rows_with_cols(&rows, unknowns);
    let basis = system
        .kernel_basis()
        .into_iter()
        .map(|v| RatMatrix::from_fn(n, n, |r, c| v[r * n + c].clone()))
        .collect();
    DerivationSpace { basis }
}

/// Runs the chain `V_0 = K^n`, `V_{k+1} = span{ D v }` over a basis of
/// `Der(g)`; the algebra is characteristically nilpotent iff it reaches zero.
pub fn is_characteristically_nilpotent(a: &LieAlgebra) -> bool {
    let space = derivation_space(a);
    characteristic_chain(a.dim(), &space)
        .last()
        .is_some_and(Subspace::is_zero)
}

/// The chain `V_0 ⊇ V_1 ⊇ ...`, stopped at zero or at the first repeat.
pub fn characteristic_chain(n: usize, space: &DerivationSpace) -> Vec<Subspace> {
    let mut chain = vec![Subspace::full(n)];
    for _ in 0..n {
        let current = chain.last().expect("chain is nonempty");
        if current.is_zero() {
            break;
        }
        let images = space
            .basis
            .iter()
            .flat_map(|d| current.basis().iter().map(move |v| d.mul_vec(v)));
        let next = Subspace::span(n, images);
        if &next == current {
            break;
        }
        chain.push(next);
    }
    chain
}

/// Dimension of the space of derivations diagonal in the given basis.
///
/// For the catalog models this is the rank: their maximal tori are diagonal
/// on the (quasi-)adapted basis. For other bases it is only a lower bound.
pub fn diagonal_torus_rank(a: &LieAlgebra) -> Result<usize> {
    if !a.is_filiform().filiform {
        return Err(Error::NotFiliform);
    }
    Ok(diagonal_derivation_dim(a))
}

/// `λ_i + λ_j = λ_k` for every nonzero structure constant `c_ij^k`.
pub fn diagonal_derivation_dim(a: &LieAlgebra) -> usize {
    let n = a.dim();
    let mut rows = Vec::new();
    for (&(i, j), terms) in a.table().iter() {
        for (k, _) in terms {
            let mut row = vec![Rational::zero(); n];
            row[i] += rat(1);
            row[j] += rat(1);
            row[*k] -= rat(1);
            rows.push(row);
        }
    }
    n - RatMatrix::from_rows_with_cols(&rows, n).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_model, ModelSpec};
    use crate::linalg::unit_vector;

    #[test]
    fn abelian_derivations_are_everything() {
        assert_eq!(derivation_space(&LieAlgebra::abelian(2)).dim(), 4);
        assert!(!is_characteristically_nilpotent(&LieAlgebra::abelian(2)));
    }

    #[test]
    fn l4_derivations() {
        // brute force: unknowns d_{rc}; Leibniz on [X1,X2]=X3, [X1,X3]=X4 and
        // zeros elsewhere leaves d11, d22, d21, d31, d41, d32, d42 free and fixes
        // the rest, with one extra relation linking d43 to d32
        let a = make_model(&ModelSpec::l(4)).unwrap();
        let space = derivation_space(&a);
        for d in &space.basis {
            assert!(is_derivation(&a, d));
        }
        assert_eq!(space.dim(), 7);
    }

    #[test]
    fn inner_derivations_are_found() {
        let a = make_model(&ModelSpec::q(6)).unwrap();
        let space = derivation_space(&a);
        let flat = |m: &RatMatrix| m.entries().to_vec();
        let span = Subspace::span(36, space.basis.iter().map(flat));
        for i in 0..6 {
            assert!(span.contains(&flat(&a.ad(&unit_vector(6, i)))));
        }
    }

    #[test]
    fn ranks_of_models() {
        for spec in [ModelSpec::l(5), ModelSpec::l(8), ModelSpec::q(6), ModelSpec::q(8)] {
            let a = make_model(&spec).unwrap();
            assert_eq!(diagonal_torus_rank(&a).unwrap(), 2, "{}", spec.name());
            assert!(!is_characteristically_nilpotent(&a));
        }
        let a = make_model(&ModelSpec::a(7, 1, vec![rat(1), rat(0)])).unwrap();
        assert_eq!(diagonal_torus_rank(&a).unwrap(), 1);
        assert!(diagonal_torus_rank(&LieAlgebra::abelian(3)).is_err());
    }
}
