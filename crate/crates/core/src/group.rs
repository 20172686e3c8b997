//! Finitely generated abelian groups in invariant-factor form, and quotient
//! maps `Z^r -> Z^r / H` computed through the Smith normal form.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::snf::{smith_normal_form, IntMatrix};

/// `Z_{t_1} x ... x Z_{t_k} x Z^r` with `2 <= t_1 | t_2 | ... | t_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FGAbelianGroup {
    pub torsion: Vec<i64>,
    pub free_rank: usize,
}

/// Torsion residues followed by free coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub torsion: Vec<i64>,
    pub free: Vec<i64>,
}

impl FGAbelianGroup {
    pub fn trivial() -> Self {
        Self {
            torsion: Vec::new(),
            free_rank: 0,
        }
    }

    pub fn free(rank: usize) -> Self {
        Self {
            torsion: Vec::new(),
            free_rank: rank,
        }
    }

    pub fn cyclic(k: i64) -> Self {
        Self::from_factors(&[k], 0)
    }

    /// Canonical form of `Z_{k_1} x ... x Z_{k_s} x Z^r` for arbitrary positive
    /// `k_i`; factors equal to one are dropped.
    pub fn from_factors(factors: &[i64], free_rank: usize) -> Self {
        assert!(factors.iter().all(|&k| k >= 1), "cyclic factors must be positive");
        let m = IntMatrix::from_rows(
            &(0..factors.len())
                .map(|i| {
                    (0..factors.len())
                        .map(|j| if i == j { factors[i] } else { 0 })
                        .collect()
                })
                .collect::<Vec<_>>(),
            factors.len(),
        );
        let torsion = smith_normal_form(&m)
            .diagonal()
            .into_iter()
            .map(|d| d.to_i64().expect("invariant factor fits in i64"))
            .filter(|&d| d > 1)
            .collect();
        Self { torsion, free_rank }
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn order(&self) -> Option<i64> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            torsion: vec![0; self.torsion.len()],
            free: vec![0; self.free_rank],
        }
    }

    pub fn reduce(&self, mut e: GroupElement) -> GroupElement {
        for (x, &t) in e.torsion.iter_mut().zip(&self.torsion) {
            *x = x.rem_euclid(t);
        }
        e
    }

    pub fn element(&self, torsion: Vec<i64>, free: Vec<i64>) -> Result<GroupElement> {
        if torsion.len() != self.torsion.len() || free.len() != self.free_rank {
            return Err(Error::Precondition(format!(
                "element shape ({}, {}) does not fit {self}",
                torsion.len(),
                free.len()
            )));
        }
        Ok(self.reduce(GroupElement { torsion, free }))
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.reduce(GroupElement {
            torsion: a.torsion.iter().zip(&b.torsion).map(|(x, y)| x + y).collect(),
            free: a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect(),
        })
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        self.reduce(GroupElement {
            torsion: a.torsion.iter().map(|x| -x).collect(),
            free: a.free.iter().map(|x| -x).collect(),
        })
    }

    pub fn scale(&self, c: i64, a: &GroupElement) -> GroupElement {
        self.reduce(GroupElement {
            torsion: a.torsion.iter().map(|x| c * x).collect(),
            free: a.free.iter().map(|x| c * x).collect(),
        })
    }

    pub fn contains(&self, e: &GroupElement) -> bool {
        e.torsion.len() == self.torsion.len()
            && e.free.len() == self.free_rank
            && e.torsion
                .iter()
                .zip(&self.torsion)
                .all(|(&x, &t)| (0..t).contains(&x))
    }
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|t| format!("Z_{t}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" x "))
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .torsion
            .iter()
            .map(|t| format!("{t}bar"))
            .chain(self.free.iter().map(ToString::to_string))
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The quotient `Z^g / <relations>` together with the images of the
/// standard generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub group: FGAbelianGroup,
    pub generator_images: Vec<GroupElement>,
}

impl Quotient {
    pub fn map(&self, v: &[i64]) -> GroupElement {
        assert_eq!(
            v.len(),
            self.generator_images.len(),
            "vector length differs from generator count"
        );
        let mut acc = self.group.zero();
        for (c, img) in v.iter().zip(&self.generator_images) {
            if *c != 0 {
                acc = self.group.add(&acc, &self.group.scale(*c, img));
            }
        }
        acc
    }
}

/// Presents `Z^generators / rowspace(relations)`.
///
/// With `U R V = S`, the coordinates `y = x V` diagonalize the relations:
/// `y_i` is dropped when `s_i = 1`, reduced mod `s_i` when `s_i > 1` and
/// free otherwise.
pub fn quotient(generators: usize, relations: &[Vec<i64>]) -> Quotient {
    if relations.is_empty() {
        let group = FGAbelianGroup::free(generators);
        let generator_images = (0..generators)
            .map(|j| GroupElement {
                torsion: Vec::new(),
                free: (0..generators).map(|i| i64::from(i == j)).collect(),
            })
            .collect();
        return Quotient {
            group,
            generator_images,
        };
    }
    let r = IntMatrix::from_rows(relations, generators);
    let snf = smith_normal_form(&r);
    let diag = snf.diagonal();
    let mut torsion_coords = Vec::new();
    let mut torsion = Vec::new();
    let mut free_coords = Vec::new();
    for i in 0..generators {
        match diag.get(i) {
            Some(d) if d.is_one() => {}
            Some(d) if !d.is_zero() => {
                torsion_coords.push(i);
                torsion.push(d.to_i64().expect("invariant factor fits in i64"));
            }
            _ => free_coords.push(i),
        }
    }
    let group = FGAbelianGroup {
        torsion,
        free_rank: free_coords.len(),
    };
    let v = &snf.v;
    let entry = |j: usize, i: usize| -> i64 { v[(j, i)].to_i64().expect("transform entry fits in i64") };
    let generator_images = (0..generators)
        .map(|j| {
            group.reduce(GroupElement {
                torsion: torsion_coords.iter().map(|&i| entry(j, i)).collect(),
                free: free_coords.iter().map(|&i| entry(j, i)).collect(),
            })
        })
        .collect();
    Quotient {
        group,
        generator_images,
    }
}

/// Whether `b` is a quotient of `a`. Listing invariant factors from the
/// top, free factors first as zeros, `b` is a quotient iff it has no more
/// factors than `a` and each of its factors divides the matching one of `a`.
pub fn is_quotient_of(a: &FGAbelianGroup, b: &FGAbelianGroup) -> bool {
    let chain = |g: &FGAbelianGroup| -> Vec<i64> {
        std::iter::repeat_n(0, g.free_rank)
            .chain(g.torsion.iter().rev().copied())
            .collect()
    };
    let (ca, cb) = (chain(a), chain(b));
    cb.len() <= ca.len()
        && cb
            .iter()
            .zip(&ca)
            .all(|(&x, &y)| if x == 0 { y == 0 } else { y % x == 0 })
}

/// Greatest common divisor helper on machine integers via the big-integer path.
pub fn gcd(a: i64, b: i64) -> i64 {
    use num_integer::Integer;
    BigInt::from(a)
        .gcd(&BigInt::from(b))
        .abs()
        .to_i64()
        .expect("gcd fits")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_products() {
        assert_eq!(FGAbelianGroup::from_factors(&[2, 3], 0).torsion, vec![6]);
        assert_eq!(
            FGAbelianGroup::from_factors(&[2, 2], 1).to_string(),
            "Z_2 x Z_2 x Z"
        );
        assert_eq!(FGAbelianGroup::from_factors(&[1], 1), FGAbelianGroup::free(1));
        assert_eq!(FGAbelianGroup::from_factors(&[4, 6], 0).torsion, vec![2, 12]);
        assert!(FGAbelianGroup::from_factors(&[1], 0).is_trivial());
    }

    #[test]
    fn quotient_of_z2_by_k0() {
        for k in 2..6 {
            let q = quotient(2, &[vec![k, 0]]);
            assert_eq!(q.group, FGAbelianGroup::from_factors(&[k], 1));
            assert_eq!(q.map(&[k, 0]), q.group.zero());
            assert_ne!(q.map(&[1, 0]), q.group.zero());
        }
    }

    #[test]
    fn quotient_by_full_rank_relations() {
        // relations (n-4, 2) give Z x Z_2 for even n - 4
        let q = quotient(2, &[vec![2, 2]]);
        assert_eq!(q.group, FGAbelianGroup::from_factors(&[2], 1));
        let q = quotient(2, &[vec![1, 0], vec![0, 1]]);
        assert!(q.group.is_trivial());
        let q = quotient(1, &[vec![6], vec![4]]);
        assert_eq!(q.group, FGAbelianGroup::cyclic(2));
    }

    #[test]
    fn quotient_map_kills_relations() {
        let rels = vec![vec![3, -6, 9], vec![0, 4, 2]];
        let q = quotient(3, &rels);
        for r in &rels {
            assert_eq!(q.map(r), q.group.zero());
        }
        assert_eq!(q.group.free_rank, 1);
    }

    #[test]
    fn quotient_sanity() {
        let z2 = FGAbelianGroup::free(2);
        assert!(is_quotient_of(&z2, &FGAbelianGroup::from_factors(&[3], 1)));
        assert!(is_quotient_of(
            &FGAbelianGroup::cyclic(6),
            &FGAbelianGroup::cyclic(3)
        ));
        assert!(!is_quotient_of(
            &FGAbelianGroup::cyclic(6),
            &FGAbelianGroup::cyclic(4)
        ));
        assert!(!is_quotient_of(&FGAbelianGroup::free(1), &z2));
        assert_eq!(gcd(12, -18), 6);
    }
}
