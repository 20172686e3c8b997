//! Gradings by finitely generated abelian groups with a homogeneous basis.

use std::collections::BTreeMap;
use std::fmt;

use crate::catalog::{make_model, ModelKind, ModelSpec};
use crate::error::{Error, Result};
use crate::group::{quotient, FGAbelianGroup, GroupElement};
use crate::lie::LieAlgebra;
use crate::linalg::{RatMatrix, Subspace};

/// A grading in which a chosen basis is homogeneous. When `basis` is `None`
/// the algebra's own basis is used; otherwise its columns, written in the
/// algebra's coordinates, are the homogeneous vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    algebra: LieAlgebra,
    basis: Option<RatMatrix>,
    homogeneous: LieAlgebra,
    group: FGAbelianGroup,
    degrees: Vec<GroupElement>,
    pub name: Option<String>,
}

/// A basis pair whose bracket leaves the expected component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingViolation {
    pub i: usize,
    pub j: usize,
    /// Index of a basis vector in `[e_i, e_j]` whose degree is not `d_i + d_j`.
    pub witness: usize,
}

impl fmt::Display for GradingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[e{}, e{}] has a term along e{} outside degree d{} + d{}",
            self.i, self.j, self.witness, self.i, self.j
        )
    }
}

impl Grading {
    pub fn new(algebra: LieAlgebra, group: FGAbelianGroup, degrees: Vec<GroupElement>) -> Result<Self> {
        Self::build(algebra, None, group, degrees)
    }

    pub fn with_basis(
        algebra: LieAlgebra,
        basis: RatMatrix,
        group: FGAbelianGroup,
        degrees: Vec<GroupElement>,
    ) -> Result<Self> {
        Self::build(algebra, Some(basis), group, degrees)
    }

    fn build(
        algebra: LieAlgebra,
        basis: Option<RatMatrix>,
        group: FGAbelianGroup,
        degrees: Vec<GroupElement>,
    ) -> Result<Self> {
        let n = algebra.dim();
        if degrees.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: degrees.len(),
            });
        }
        if let Some(bad) = degrees.iter().find(|d| !group.contains(d)) {
            return Err(Error::Precondition(format!(
                "degree {bad} is not a reduced element of {group}"
            )));
        }
        let homogeneous = match &basis {
            None => algebra.clone(),
            Some(m) => {
                let labels = (0..n).map(|i| format!("h{}", i + 1)).collect();
                algebra.change_basis(m, labels)?
            }
        };
        Ok(Self {
            algebra,
            basis,
            homogeneous,
            group,
            degrees,
            name: None,
        })
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    /// The algebra rewritten on the homogeneous basis.
    pub fn homogeneous_algebra(&self) -> &LieAlgebra {
        &self.homogeneous
    }

    pub fn basis(&self) -> Option<&RatMatrix> {
        self.basis.as_ref()
    }

    pub fn is_basis_aligned(&self) -> bool {
        self.basis.is_none()
    }

    pub fn group(&self) -> &FGAbelianGroup {
        &self.group
    }

    pub fn degrees(&self) -> &[GroupElement] {
        &self.degrees
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    /// Block label of each basis index, numbered by first occurrence.
    pub fn partition(&self) -> Vec<usize> {
        partition_of(&self.degrees)
    }

    /// Basis indices of each component, in order of first occurrence.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let part = self.partition();
        let blocks = part.iter().max().map_or(0, |m| m + 1);
        let mut out = vec![Vec::new(); blocks];
        for (i, &b) in part.iter().enumerate() {
            out[b].push(i);
        }
        out
    }

    /// Degree of each component, aligned with `components`.
    pub fn support(&self) -> Vec<GroupElement> {
        self.components()
            .iter()
            .map(|c| self.degrees[c[0]].clone())
            .collect()
    }

    /// Components as subspaces of the algebra in its own coordinates.
    pub fn component_subspaces(&self) -> Vec<Subspace> {
        let n = self.dim();
        self.components()
            .into_iter()
            .map(|c| {
                let vectors = c.into_iter().map(|i| match &self.basis {
                    None => crate::linalg::unit_vector(n, i),
                    Some(m) => m.column(i),
                });
                Subspace::span(n, vectors)
            })
            .collect()
    }
}

/// Canonical block labelling of a sequence, numbered by first occurrence.
pub fn partition_of<T: Ord>(values: &[T]) -> Vec<usize> {
    let mut seen: BTreeMap<&T, usize> = BTreeMap::new();
    values
        .iter()
        .map(|v| {
            let next = seen.len();
            *seen.entry(v).or_insert(next)
        })
        .collect()
}

/// Checks `[g_a, g_b] ⊆ g_{a+b}` on the homogeneous basis.
pub fn verify_grading(g: &Grading) -> std::result::Result<(), GradingViolation> {
    let table = g.homogeneous.table();
    for (&(i, j), terms) in table.iter() {
        let target = g.group.add(&g.degrees[i], &g.degrees[j]);
        if let Some((k, _)) = terms.iter().find(|(k, _)| g.degrees[*k] != target) {
            return Err(GradingViolation { i, j, witness: *k });
        }
    }
    Ok(())
}

/// The universal group: generators are the components, one relation
/// `s_1 + s_2 - s_3` per nonzero bracket `[g_{s_1}, g_{s_2}] ⊆ g_{s_3}`.
/// Returns the group in canonical form and the grading re-expressed over it.
pub fn universal_group(g: &Grading) -> Result<(FGAbelianGroup, Grading)> {
    verify_grading(g).map_err(|v| Error::Precondition(format!("not a grading: {v}")))?;
    let part = g.partition();
    let blocks = part.iter().max().map_or(0, |m| m + 1);
    let mut relations: Vec<Vec<i64>> = Vec::new();
    for (&(i, j), terms) in g.homogeneous.table().iter() {
        let k = terms[0].0;
        let mut r = vec![0i64; blocks];
        r[part[i]] += 1;
        r[part[j]] += 1;
        r[part[k]] -= 1;
        if r.iter().any(|&x| x != 0) && !relations.contains(&r) {
            relations.push(r);
        }
    }
    let q = quotient(blocks, &relations);
    let degrees = part.iter().map(|&b| q.generator_images[b].clone()).collect();
    let mut out = Grading::build(g.algebra.clone(), g.basis.clone(), q.group.clone(), degrees)?;
    out.name = g.name.clone();
    Ok((q.group, out))
}

/// Integer degree vectors of the standard grading in `Z^r`, `r` the rank.
pub fn standard_degree_vectors(spec: &ModelSpec) -> Result<Vec<Vec<i64>>> {
    spec.validate()?;
    let n = spec.n as i64;
    let p = spec.p as i64;
    let v: Vec<Vec<i64>> = match spec.kind {
        ModelKind::L => (1..=n)
            .map(|s| if s == 1 { vec![1, 0] } else { vec![s - 2, 1] })
            .collect(),
        ModelKind::Q => (1..=n)
            .map(|s| match s {
                1 => vec![1, 0],
                s if s == n => vec![n - 3, 2],
                s => vec![s - 2, 1],
            })
            .collect(),
        ModelKind::A => (1..=n)
            .map(|s| if s == 1 { vec![1] } else { vec![s + p - 1] })
            .collect(),
        ModelKind::B => (1..=n)
            .map(|s| match s {
                1 => vec![1],
                s if s == n => vec![n + 2 * p - 1],
                s => vec![s + p - 1],
            })
            .collect(),
    };
    Ok(v)
}

/// The standard grading by `Z^2` (kinds `L`, `Q`) or `Z` (kinds `A`, `B`).
pub fn standard_grading(spec: &ModelSpec) -> Result<Grading> {
    let algebra = make_model(spec)?;
    let vectors = standard_degree_vectors(spec)?;
    let r = spec.kind.rank();
    let group = FGAbelianGroup::free(r);
    let degrees = vectors
        .into_iter()
        .map(|free| GroupElement {
            torsion: Vec::new(),
            free,
        })
        .collect();
    Ok(Grading::new(algebra, group, degrees)?.named("standard"))
}

/// A homomorphism given by the images of the source generators: torsion
/// generators first, then the free ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    pub source: FGAbelianGroup,
    pub target: FGAbelianGroup,
    pub images: Vec<GroupElement>,
}

impl GroupHom {
    pub fn new(source: FGAbelianGroup, target: FGAbelianGroup, images: Vec<GroupElement>) -> Result<Self> {
        let gens = source.torsion.len() + source.free_rank;
        if images.len() != gens {
            return Err(Error::DimensionMismatch {
                expected: gens,
                found: images.len(),
            });
        }
        if let Some(bad) = images.iter().find(|e| !target.contains(e)) {
            return Err(Error::Precondition(format!(
                "image {bad} is not an element of {}",
                target
            )));
        }
        for (t, img) in source.torsion.iter().zip(&images) {
            if target.scale(*t, img) != target.zero() {
                return Err(Error::Precondition(format!(
                    "generator of order {t} maps to {img}, not well defined"
                )));
            }
        }
        Ok(Self {
            source,
            target,
            images,
        })
    }

    pub fn identity(group: &FGAbelianGroup) -> Self {
        let gens = group.torsion.len() + group.free_rank;
        let images = (0..gens)
            .map(|g| {
                let mut e = group.zero();
                if g < group.torsion.len() {
                    e.torsion[g] = 1;
                } else {
                    e.free[g - group.torsion.len()] = 1;
                }
                group.reduce(e)
            })
            .collect();
        Self {
            source: group.clone(),
            target: group.clone(),
            images,
        }
    }

    /// The projection `Z^r -> Z^r / <relations>`.
    pub fn free_quotient(rank: usize, relations: &[Vec<i64>]) -> Self {
        let q = quotient(rank, relations);
        Self {
            source: FGAbelianGroup::free(rank),
            target: q.group,
            images: q.generator_images,
        }
    }

    pub fn apply(&self, e: &GroupElement) -> GroupElement {
        let coeffs = e.torsion.iter().chain(&e.free);
        let mut acc = self.target.zero();
        for (c, img) in coeffs.zip(&self.images) {
            if *c != 0 {
                acc = self.target.add(&acc, &self.target.scale(*c, img));
            }
        }
        acc
    }
}

/// Pushes the degrees of `g` through `hom`.
pub fn coarsen(g: &Grading, hom: &GroupHom) -> Result<Grading> {
    if hom.source != g.group {
        return Err(Error::Precondition(format!(
            "homomorphism source {} differs from grading group {}",
            hom.source, g.group
        )));
    }
    let degrees = g.degrees.iter().map(|d| hom.apply(d)).collect();
    Grading::build(g.algebra.clone(), g.basis.clone(), hom.target.clone(), degrees)
}
