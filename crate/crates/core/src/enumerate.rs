//! Exhaustive enumeration of the factor-gradings of a standard grading.
//!
//! Every coarsening of the standard `Z^r` grading is determined by the
//! partition of the basis it induces: the kernel of the coarsening can be
//! replaced by the subgroup `H_P` spanned by differences of degrees inside
//! blocks, which induces the same partition. Starting from `H = 0`, adding
//! one difference between two blocks at a time reaches every such `H_P`.

use std::collections::{BTreeSet, VecDeque};

use crate::catalog::ModelSpec;
use crate::error::Result;
use crate::grading::{
    coarsen, partition_of, standard_degree_vectors, standard_grading, universal_group, Grading, GroupHom,
};
use crate::group::{quotient, FGAbelianGroup};

/// One factor-grading: the kernel generators, the grading by `Z^r / H` and
/// its universal group.
#[derive(Clone, Debug)]
pub struct FactorGrading {
    pub relations: Vec<Vec<i64>>,
    pub grading: Grading,
    pub universal: FGAbelianGroup,
}

impl FactorGrading {
    pub fn partition(&self) -> Vec<usize> {
        self.grading.partition()
    }
}

/// Basis partition induced by `Z^r / <relations>` on the standard degrees.
pub fn induced_partition(vectors: &[Vec<i64>], relations: &[Vec<i64>]) -> Vec<usize> {
    let rank = vectors.first().map_or(0, Vec::len);
    let q = quotient(rank, relations);
    let images: Vec<_> = vectors.iter().map(|v| q.map(v)).collect();
    partition_of(&images)
}

/// All factor-gradings of the standard grading, one per basis partition,
/// in breadth-first order (finest first).
pub fn enumerate_factor_gradings(spec: &ModelSpec) -> Result<Vec<FactorGrading>> {
    let vectors = standard_degree_vectors(spec)?;
    let standard = standard_grading(spec)?;
    let rank = spec.kind.rank();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut queue: VecDeque<Vec<Vec<i64>>> = VecDeque::new();
    let mut found: Vec<Vec<Vec<i64>>> = Vec::new();
    seen.insert(induced_partition(&vectors, &[]));
    queue.push_back(Vec::new());
    while let Some(relations) = queue.pop_front() {
        let part = induced_partition(&vectors, &relations);
        let reps: Vec<usize> = (0..part.iter().max().map_or(0, |m| m + 1))
            .map(|b| part.iter().position(|&x| x == b).expect("block has a member"))
            .collect();
        for (x, &a) in reps.iter().enumerate() {
            for &b in &reps[x + 1..] {
                let diff: Vec<i64> = vectors[a].iter().zip(&vectors[b]).map(|(u, v)| u - v).collect();
                let mut next = relations.clone();
                next.push(diff);
                let key = induced_partition(&vectors, &next);
                if seen.insert(key) {
                    queue.push_back(next);
                }
            }
        }
        found.push(relations);
    }
    found
        .into_iter()
        .map(|relations| {
            let grading = coarsen(&standard, &GroupHom::free_quotient(rank, &relations))?;
            let (universal, _) = universal_group(&grading)?;
            Ok(FactorGrading {
                relations,
                grading,
                universal,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::verify_grading;

    #[test]
    fn l4_has_nine() {
        let all = enumerate_factor_gradings(&ModelSpec::l(4)).unwrap();
        assert_eq!(all.len(), 9);
        for f in &all {
            assert_eq!(verify_grading(&f.grading), Ok(()));
        }
        let partitions: BTreeSet<_> = all.iter().map(FactorGrading::partition).collect();
        assert_eq!(partitions.len(), 9);
    }

    #[test]
    fn standard_comes_first() {
        let all = enumerate_factor_gradings(&ModelSpec::l(5)).unwrap();
        assert_eq!(all[0].partition(), vec![0, 1, 2, 3, 4]);
        assert_eq!(all[0].universal, FGAbelianGroup::free(2));
        // the trivial grading is reached and has trivial universal group
        assert!(all
            .iter()
            .any(|f| f.partition() == vec![0; 5] && f.universal.is_trivial()));
    }
}
