//! Certificates of (in)equivalence between gradings of a filiform algebra.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::grading::{universal_group, Grading};
use crate::group::FGAbelianGroup;
use crate::linalg::{axpy, rat, zero_vector, Subspace};

/// Quantities preserved by equivalence; distinct tuples prove inequivalence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InvariantTuple {
    /// Sorted component dimensions.
    pub dims: Vec<usize>,
    pub universal: FGAbelianGroup,
    /// Sorted dimensions of the components that contain a characteristic vector.
    pub characteristic_dims: Vec<usize>,
    /// Sorted per-component profiles `dim(C ∩ g^k)`, `k = 1, 2, ...`.
    pub filtration: Vec<Vec<usize>>,
}

const SAMPLES: usize = 6;

/// Whether a subspace contains a characteristic vector. Those vectors form
/// a Zariski-open subset, so a few seeded random points decide the question
/// with overwhelming probability; a hit is always a genuine witness.
pub fn contains_characteristic_vector(g: &Grading, c: &Subspace, seed: u64) -> Result<bool> {
    let a = g.algebra();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SAMPLES {
        let mut v = zero_vector(a.dim());
        for b in c.basis() {
            let coeff = rng.gen_range(-9i64..=9);
            axpy(&mut v, &rat(coeff), b);
        }
        if a.is_characteristic_vector(&v)? {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn equivalence_invariants(g: &Grading) -> Result<InvariantTuple> {
    let (universal, _) = universal_group(g)?;
    let a = g.algebra();
    if !a.is_filiform().filiform {
        return Err(Error::NotFiliform);
    }
    let series = a.lower_central_series();
    let components = g.component_subspaces();
    let mut dims: Vec<usize> = components.iter().map(Subspace::dim).collect();
    dims.sort_unstable();
    let mut characteristic_dims = Vec::new();
    let mut filtration = Vec::new();
    for (idx, c) in components.iter().enumerate() {
        if contains_characteristic_vector(g, c, 0x5eed + idx as u64)? {
            characteristic_dims.push(c.dim());
        }
        filtration.push(series.iter().map(|s| s.intersection(c).dim()).collect::<Vec<_>>());
    }
    characteristic_dims.sort_unstable();
    filtration.sort();
    Ok(InvariantTuple {
        dims,
        universal,
        characteristic_dims,
        filtration,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The identity maps each component of one grading onto one of the other.
    EquivalentByIdentity,
    /// No component bijection admits an invertible lower-triangular map.
    Inequivalent,
    Undecided,
}

/// Largest dimension at which the component-bijection search runs.
pub const SEARCH_MAX_DIM: usize = 7;

/// Searches for an automorphism carrying the components of `g1` onto those
/// of `g2`. Both gradings must be basis-aligned on the same (quasi-)adapted
/// basis, where every automorphism is lower triangular.
///
/// For a bijection `σ` of components, the lower-triangular maps with
/// `φ(C) ⊆ σ(C)` form the linear space
/// `{ φ : φ(e_i) ∈ span(e_k : k >= i, e_k ∈ σ(C(e_i))) }`, and its diagonal
/// entry `i` can be nonzero iff `e_i ∈ σ(C(e_i))`. A bijection admitting no
/// invertible member is ruled out; if all are, the gradings are inequivalent.
pub fn search_equivalence(g1: &Grading, g2: &Grading) -> Result<Verdict> {
    let n = g1.dim();
    if g1.algebra() != g2.algebra() {
        return Err(Error::Precondition("gradings live on different algebras".into()));
    }
    if !g1.is_basis_aligned() || !g2.is_basis_aligned() {
        return Ok(Verdict::Undecided);
    }
    if n > SEARCH_MAX_DIM {
        return Ok(Verdict::Undecided);
    }
    let c1 = g1.components();
    let c2 = g2.components();
    if c1.len() != c2.len() {
        return Ok(Verdict::Inequivalent);
    }
    let block2 = g2.partition();
    let mut used = vec![false; c2.len()];
    let mut sigma = vec![usize::MAX; c1.len()];
    let mut invertible = Vec::new();
    bijections(&c1, &c2, &block2, 0, &mut used, &mut sigma, &mut invertible);
    if invertible.is_empty() {
        return Ok(Verdict::Inequivalent);
    }
    if g1.partition() == g2.partition() {
        return Ok(Verdict::EquivalentByIdentity);
    }
    Ok(Verdict::Undecided)
}

fn bijections(
    c1: &[Vec<usize>],
    c2: &[Vec<usize>],
    block2: &[usize],
    at: usize,
    used: &mut [bool],
    sigma: &mut [usize],
    out: &mut Vec<Vec<usize>>,
) {
    if at == c1.len() {
        out.push(sigma.to_vec());
        return;
    }
    for t in 0..c2.len() {
        if used[t] || c2[t].len() != c1[at].len() {
            continue;
        }
        // diagonal entry of every e_i in this component must survive
        if !c1[at].iter().all(|&i| block2[i] == t) {
            continue;
        }
        used[t] = true;
        sigma[at] = t;
        bijections(c1, c2, block2, at + 1, used, sigma, out);
        used[t] = false;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairCertificate {
    Invariants,
    Search,
    /// The two gradings are equivalent.
    Equivalent,
    Undecided,
}

/// Separates two gradings, first by invariants and then by the search.
pub fn certify_pair(g1: &Grading, g2: &Grading) -> Result<PairCertificate> {
    if equivalence_invariants(g1)? != equivalence_invariants(g2)? {
        return Ok(PairCertificate::Invariants);
    }
    Ok(match search_equivalence(g1, g2)? {
        Verdict::Inequivalent => PairCertificate::Search,
        Verdict::EquivalentByIdentity => PairCertificate::Equivalent,
        Verdict::Undecided => PairCertificate::Undecided,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::ModelSpec;
    use crate::grading::{coarsen, standard_grading, GroupHom};

    fn gamma0(n: usize, l: i64) -> Grading {
        let st = standard_grading(&ModelSpec::l(n)).unwrap();
        coarsen(&st, &GroupHom::free_quotient(2, &[vec![l - 3, 1]])).unwrap()
    }

    #[test]
    fn gamma0_2_and_3_on_l5() {
        let (g2, g3) = (gamma0(5, 2), gamma0(5, 3));
        let (i2, i3) = (
            equivalence_invariants(&g2).unwrap(),
            equivalence_invariants(&g3).unwrap(),
        );
        assert_eq!(i2.dims, i3.dims);
        assert_eq!(i2.universal, i3.universal);
        assert_ne!(i2, i3);
        assert_eq!(search_equivalence(&g2, &g3).unwrap(), Verdict::Inequivalent);
    }

    #[test]
    fn identical_gradings_are_equivalent() {
        let g = gamma0(5, 4);
        assert_eq!(search_equivalence(&g, &g).unwrap(), Verdict::EquivalentByIdentity);
        assert_eq!(certify_pair(&g, &g).unwrap(), PairCertificate::Equivalent);
    }

    #[test]
    fn standard_has_characteristic_component() {
        let st = standard_grading(&ModelSpec::l(6)).unwrap();
        let inv = equivalence_invariants(&st).unwrap();
        assert_eq!(inv.dims, vec![1; 6]);
        assert_eq!(inv.characteristic_dims, vec![1]);
    }
}
