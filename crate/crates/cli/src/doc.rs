//! JSON interchange documents for algebras and gradings.

use filiform::catalog::{coeff_table, ModelKind, ModelSpec};
use filiform::cohomology::PsiTerm;
use filiform::grading::Grading;
use filiform::group::{FGAbelianGroup, GroupElement};
use filiform::linalg::{RatMatrix, Rational};
use filiform::{BilinearMap, LieAlgebra};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const SCHEMA_VERSION: &str = "1";

/// Formats a rational as a reduced `p/q` string, `q > 0`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `p/q` or a bare integer `p`.
pub fn parse_rational(s: &str) -> Result<Rational, CliError> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| CliError::invalid(format!("bad rational {s:?}: {e}")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub k: usize,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketDoc {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<TermDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffDoc {
    pub i: usize,
    pub j: usize,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiDoc {
    pub k: usize,
    pub s: usize,
    pub coeff: String,
}

/// How an algebra document was produced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Provenance {
    Model {
        kind: String,
        n: usize,
        p: usize,
        alphas: Vec<String>,
        /// The `a_{i,j}` values, indexed from one, for kinds `A` and `B`.
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        coeff_table: Vec<CoeffDoc>,
    },
    Deformation {
        n: usize,
        terms: Vec<PsiDoc>,
    },
    Named {
        name: String,
    },
}

impl Provenance {
    pub fn model(spec: &ModelSpec) -> Self {
        let coeff = if matches!(spec.kind, ModelKind::A | ModelKind::B) {
            coeff_table(spec.kind, spec.n, spec.p, &spec.alphas)
                .map(|t| {
                    t.iter()
                        .map(|(&(i, j), v)| CoeffDoc {
                            i,
                            j,
                            value: format_rational(v),
                        })
                        .collect()
                })
                .unwrap_or_default()
        } else {
            Vec::new()
        };
        Provenance::Model {
            kind: spec.kind.to_string(),
            n: spec.n,
            p: spec.p,
            alphas: spec.alphas.iter().map(format_rational).collect(),
            coeff_table: coeff,
        }
    }

    pub fn deformation(n: usize, terms: &[PsiTerm]) -> Self {
        Provenance::Deformation {
            n,
            terms: terms
                .iter()
                .map(|t| PsiDoc {
                    k: t.k,
                    s: t.s,
                    coeff: format_rational(&t.coeff),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub schema_version: String,
    /// Index of the first basis vector in `brackets`; when absent the
    /// reader's `--basis-origin` applies.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_origin: Option<usize>,
    pub dim: usize,
    pub basis: Vec<String>,
    pub brackets: Vec<BracketDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

fn check_origin(origin: usize) -> Result<(), CliError> {
    if origin > 1 {
        return Err(CliError::invalid(format!(
            "basis origin must be 0 or 1, got {origin}"
        )));
    }
    Ok(())
}

impl AlgebraDoc {
    pub fn from_algebra(a: &LieAlgebra, origin: usize, provenance: Option<Provenance>) -> Self {
        let brackets = a
            .table()
            .iter()
            .map(|(&(i, j), terms)| BracketDoc {
                i: i + origin,
                j: j + origin,
                terms: terms
                    .iter()
                    .map(|(k, c)| TermDoc {
                        k: k + origin,
                        coeff: format_rational(c),
                    })
                    .collect(),
            })
            .collect();
        AlgebraDoc {
            schema_version: SCHEMA_VERSION.into(),
            basis_origin: Some(origin),
            dim: a.dim(),
            basis: a.labels().to_vec(),
            brackets,
            provenance,
        }
    }

    pub fn to_algebra(&self, default_origin: usize) -> Result<LieAlgebra, CliError> {
        let origin = self.basis_origin.unwrap_or(default_origin);
        check_origin(origin)?;
        if self.basis.len() != self.dim {
            return Err(CliError::invalid(format!(
                "{} basis labels for dimension {}",
                self.basis.len(),
                self.dim
            )));
        }
        let index = |x: usize| -> Result<usize, CliError> {
            x.checked_sub(origin)
                .filter(|&i| i < self.dim)
                .ok_or_else(|| CliError::invalid(format!("basis index {x} out of range")))
        };
        let mut table = BilinearMap::zero(self.dim);
        for b in &self.brackets {
            let (i, j) = (index(b.i)?, index(b.j)?);
            if i >= j {
                return Err(CliError::invalid(format!(
                    "bracket entries need i < j, got ({}, {})",
                    b.i, b.j
                )));
            }
            for t in &b.terms {
                table.add_term(i, j, index(t.k)?, parse_rational(&t.coeff)?);
            }
        }
        Ok(LieAlgebra::new(table, self.basis.clone())?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDoc {
    pub free_rank: usize,
    pub torsion: Vec<i64>,
}

impl From<&FGAbelianGroup> for GroupDoc {
    fn from(g: &FGAbelianGroup) -> Self {
        GroupDoc {
            free_rank: g.free_rank,
            torsion: g.torsion.clone(),
        }
    }
}

impl GroupDoc {
    pub fn to_group(&self) -> Result<FGAbelianGroup, CliError> {
        if self.torsion.iter().any(|&t| t < 2) {
            return Err(CliError::invalid("torsion factors must be at least 2"));
        }
        if self.torsion.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(CliError::invalid(
                "torsion factors must form a divisibility chain",
            ));
        }
        Ok(FGAbelianGroup {
            torsion: self.torsion.clone(),
            free_rank: self.free_rank,
        })
    }
}

/// A grading: each degree lists torsion residues first, then free coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingDoc {
    pub group: GroupDoc,
    pub degrees: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Homogeneous basis vectors in algebra coordinates, when not the algebra's own basis.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<String>>>,
}

impl GradingDoc {
    pub fn from_grading(g: &Grading) -> Self {
        let basis = g.basis().map(|m| {
            (0..m.cols())
                .map(|c| m.column(c).iter().map(format_rational).collect())
                .collect()
        });
        GradingDoc {
            group: g.group().into(),
            degrees: g
                .degrees()
                .iter()
                .map(|d| d.torsion.iter().chain(&d.free).copied().collect())
                .collect(),
            name: g.name.clone(),
            basis,
        }
    }

    pub fn to_grading(&self, algebra: LieAlgebra) -> Result<Grading, CliError> {
        let group = self.group.to_group()?;
        if self.degrees.len() != algebra.dim() {
            return Err(CliError::invalid(format!(
                "{} degrees for an algebra of dimension {}",
                self.degrees.len(),
                algebra.dim()
            )));
        }
        let t = group.torsion.len();
        let mut degrees = Vec::with_capacity(self.degrees.len());
        for d in &self.degrees {
            if d.len() != t + group.free_rank {
                return Err(CliError::invalid(format!("degree {d:?} does not fit {group}")));
            }
            degrees.push(group.reduce(GroupElement {
                torsion: d[..t].to_vec(),
                free: d[t..].to_vec(),
            }));
        }
        let g = match &self.basis {
            None => Grading::new(algebra, group, degrees)?,
            Some(cols) => {
                let n = algebra.dim();
                if cols.len() != n || cols.iter().any(|c| c.len() != n) {
                    return Err(CliError::invalid("homogeneous basis must be square"));
                }
                let columns = cols
                    .iter()
                    .map(|c| c.iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?;
                Grading::with_basis(algebra, RatMatrix::from_columns(&columns, n), group, degrees)?
            }
        };
        Ok(match &self.name {
            Some(name) => g.named(name.clone()),
            None => g,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use filiform::catalog::make_model;
    use filiform::grading::standard_grading;
    use filiform::linalg::rat;

    #[test]
    fn rationals_round_trip() {
        for s in ["3/4", "-1/2", "0/1", "5/1"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(format_rational(&parse_rational("6/-4").unwrap()), "-3/2");
        assert_eq!(parse_rational("7").unwrap(), rat(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn algebra_doc_round_trip() {
        let spec = ModelSpec::b(8, 1, vec![rat(1), rat(-2)]);
        let a = make_model(&spec).unwrap();
        for origin in [0, 1] {
            let doc = AlgebraDoc::from_algebra(&a, origin, Some(Provenance::model(&spec)));
            let text = serde_json::to_string(&doc).unwrap();
            let back: AlgebraDoc = serde_json::from_str(&text).unwrap();
            assert_eq!(back, doc);
            assert_eq!(back.to_algebra(1 - origin).unwrap(), a);
        }
    }

    #[test]
    fn grading_doc_round_trip() {
        let g = standard_grading(&ModelSpec::q(6)).unwrap();
        let doc = GradingDoc::from_grading(&g);
        let back: GradingDoc = serde_json::from_str(&serde_json::to_string(&doc).unwrap()).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_grading(g.algebra().clone()).unwrap(), g);
    }

    #[test]
    fn malformed_documents_are_rejected() {
        let a = make_model(&ModelSpec::l(4)).unwrap();
        let mut doc = AlgebraDoc::from_algebra(&a, 0, None);
        doc.brackets[0].i = 9;
        assert!(doc.to_algebra(0).is_err());
        let bad_group = GradingDoc {
            group: GroupDoc {
                free_rank: 0,
                torsion: vec![4, 6],
            },
            degrees: vec![vec![0, 0]; 4],
            name: None,
            basis: None,
        };
        assert!(bad_group.to_grading(a).is_err());
    }
}
