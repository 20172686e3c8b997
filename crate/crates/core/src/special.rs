//! Two characteristically nilpotent examples: the 7-dimensional filiform
//! algebra `n_{7,4}` and the 8-dimensional Dixmier–Lister algebra, together
//! with the order-two map and the Z_2 decomposition displayed for the latter.

use crate::lie::{table_from_terms, BracketTerms, LieAlgebra};
use crate::linalg::{rat, RatMatrix};

fn one_based(dim: usize, brackets: &[(usize, usize, i64, usize)]) -> crate::lie::BilinearMap {
    let terms: Vec<BracketTerms> = brackets
        .iter()
        .map(|&(i, j, c, k)| (i - 1, j - 1, vec![(k - 1, rat(c))]))
        .collect();
    table_from_terms(dim, &terms)
}

/// `[X1,Xi] = X_{i+1}` (2 ≤ i ≤ 6), `[X2,X3] = -X6`, `[X2,X4] = -X7`,
/// `[X2,X5] = -X7`, `[X3,X4] = X7`.
pub fn n74() -> LieAlgebra {
    let mut brackets: Vec<(usize, usize, i64, usize)> = (2..=6).map(|i| (1, i, 1, i + 1)).collect();
    brackets.extend([(2, 3, -1, 6), (2, 4, -1, 7), (2, 5, -1, 7), (3, 4, 1, 7)]);
    LieAlgebra::with_prefix(one_based(7, &brackets), "X", 1).expect("n74 satisfies Jacobi")
}

/// The Dixmier–Lister table as displayed, with `[X2,X4] = -[X5,X2]`.
pub fn dixmier_lister() -> LieAlgebra {
    let brackets = [
        (1, 2, 1, 5),
        (1, 3, 1, 6),
        (1, 4, 1, 7),
        (1, 5, -1, 8),
        (2, 3, 1, 8),
        (2, 4, 1, 6),
        (2, 6, -1, 7),
        (3, 4, -1, 5),
        (3, 5, -1, 7),
        (4, 6, -1, 8),
    ];
    LieAlgebra::with_prefix(one_based(8, &brackets), "X", 1).expect("Dixmier-Lister satisfies Jacobi")
}

/// The displayed order-two map: swaps `X1↔X5`, `X2↔X7`, `X4↔X8` and negates
/// `X3`, `X6`. Columns are images of basis vectors.
pub fn dixmier_lister_sigma() -> RatMatrix {
    let mut m = RatMatrix::zeros(8, 8);
    for (a, b) in [(1, 5), (2, 7), (4, 8)] {
        m[(b - 1, a - 1)] = rat(1);
        m[(a - 1, b - 1)] = rat(1);
    }
    for i in [3, 6] {
        m[(i - 1, i - 1)] = rat(-1);
    }
    m
}

/// Homogeneous basis of the displayed Z_2 decomposition, as columns, with
/// the degree of each column: `X1+X5, X2+X7, X4+X8` in degree 0 and
/// `X1-X5, X2-X7, X4-X8, X3, X6` in degree 1.
pub fn dixmier_lister_z2_basis() -> (RatMatrix, Vec<u8>) {
    let mut m = RatMatrix::zeros(8, 8);
    let pairs = [(1, 5), (2, 7), (4, 8)];
    for (col, &(a, b)) in pairs.iter().enumerate() {
        m[(a - 1, col)] = rat(1);
        m[(b - 1, col)] = rat(1);
        m[(a - 1, col + 3)] = rat(1);
        m[(b - 1, col + 3)] = rat(-1);
    }
    m[(2, 6)] = rat(1);
    m[(5, 7)] = rat(1);
    (m, vec![0, 0, 0, 1, 1, 1, 1, 1])
}
