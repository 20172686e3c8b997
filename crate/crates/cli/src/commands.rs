//! Subcommand implementations. Each returns an [`Output`] that the binary
//! renders as JSON or text.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use filiform::catalog::{make_model, ModelKind, ModelSpec};
use filiform::classify::classify;
use filiform::cohomology::{cn_zk_grading, deformation, PsiTerm};
use filiform::derivations::{derivation_space, diagonal_torus_rank, is_characteristically_nilpotent};
use filiform::enumerate::enumerate_factor_gradings;
use filiform::grading::{standard_grading, universal_group, verify_grading, Grading};
use filiform::group::{FGAbelianGroup, GroupElement};
use filiform::special::{dixmier_lister, dixmier_lister_z2_basis, n74};
use filiform::LieAlgebra;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use crate::doc::{parse_rational, AlgebraDoc, GradingDoc, Provenance};
use crate::error::CliError;

/// Outcome of a command: 0 ok, 1 a property was checked and fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Negative,
}

#[derive(Clone, Debug)]
pub struct Output {
    pub json: Value,
    pub text: String,
    pub status: Status,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Output {
            json,
            text,
            status: Status::Ok,
        }
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let raw = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&raw).map_err(|source| CliError::Json {
        path: path.display().to_string(),
        source,
    })
}

/// Pretty JSON with a trailing newline; key order follows the struct fields.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    fs::write(path, to_json_string(value)).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_algebra(path: &Path, origin: usize) -> Result<LieAlgebra, CliError> {
    read_json::<AlgebraDoc>(path)?.to_algebra(origin)
}

pub fn parse_alphas(list: &str) -> Result<Vec<filiform::Rational>, CliError> {
    if list.trim().is_empty() {
        return Ok(Vec::new());
    }
    list.split(',').map(parse_rational).collect()
}

/// Model specification from command-line pieces; `A`/`B` default to `α_1 = 1`.
pub fn model_spec(
    kind: &str,
    n: usize,
    p: Option<usize>,
    alphas: Option<&str>,
) -> Result<ModelSpec, CliError> {
    let kind: ModelKind = kind.parse()?;
    let spec = match kind {
        ModelKind::L | ModelKind::Q => {
            if p.is_some() || alphas.is_some() {
                return Err(CliError::invalid(format!(
                    "{kind} takes neither --p nor --alphas"
                )));
            }
            if kind == ModelKind::L {
                ModelSpec::l(n)
            } else {
                ModelSpec::q(n)
            }
        }
        ModelKind::A | ModelKind::B => {
            let p = p.ok_or_else(|| CliError::invalid(format!("{kind} needs --p")))?;
            match alphas {
                Some(list) => ModelSpec {
                    kind,
                    n,
                    p,
                    alphas: parse_alphas(list)?,
                },
                None => ModelSpec::with_leading_alpha(kind, n, p)?,
            }
        }
    };
    spec.validate()?;
    Ok(spec)
}

fn algebra_text(a: &LieAlgebra) -> String {
    let labels = a.labels();
    let mut out = String::new();
    let _ = writeln!(out, "dimension {}", a.dim());
    for (&(i, j), terms) in a.table().iter() {
        let rhs: Vec<String> = terms
            .iter()
            .map(|(k, c)| {
                if c == &filiform::Rational::from_integer(1.into()) {
                    labels[*k].clone()
                } else {
                    format!("({c}) {}", labels[*k])
                }
            })
            .collect();
        let _ = writeln!(out, "[{}, {}] = {}", labels[i], labels[j], rhs.join(" + "));
    }
    out
}

fn group_element_text(e: &GroupElement) -> String {
    e.to_string()
}

fn grading_text(g: &Grading) -> String {
    let labels = g.algebra().labels();
    let mut out = String::new();
    if let Some(name) = &g.name {
        let _ = writeln!(out, "grading {name}");
    }
    let _ = writeln!(out, "group {}", g.group());
    for (i, d) in g.degrees().iter().enumerate() {
        let label = if g.is_basis_aligned() {
            labels[i].clone()
        } else {
            format!("v{i}")
        };
        let _ = writeln!(out, "  deg {label:<6} = {}", group_element_text(d));
    }
    out
}

pub struct Made {
    pub algebra: AlgebraDoc,
    pub grading: Option<GradingDoc>,
}

/// `make`: catalog models plus the two named algebras `n74` and
/// `dixmier-lister`. The companion grading is the standard grading, or the
/// displayed `Z_2` decomposition for `dixmier-lister` (none for `n74`).
pub fn make(
    kind: &str,
    n: Option<usize>,
    p: Option<usize>,
    alphas: Option<&str>,
    origin: usize,
) -> Result<(Made, Output), CliError> {
    let (algebra, provenance, grading) = match kind.to_ascii_lowercase().as_str() {
        "n74" => (n74(), Provenance::Named { name: "n74".into() }, None),
        "dixmier-lister" | "dl" => {
            let a = dixmier_lister();
            let (basis, degrees) = dixmier_lister_z2_basis();
            let z2 = FGAbelianGroup::cyclic(2);
            let degrees = degrees
                .iter()
                .map(|&d| {
                    z2.reduce(GroupElement {
                        torsion: vec![i64::from(d)],
                        free: vec![],
                    })
                })
                .collect();
            let g = Grading::with_basis(a.clone(), basis, z2, degrees)?.named("displayed Z_2 decomposition");
            (
                a,
                Provenance::Named {
                    name: "dixmier-lister".into(),
                },
                Some(g),
            )
        }
        _ => {
            let n = n.ok_or_else(|| CliError::invalid("missing dimension"))?;
            let spec = model_spec(kind, n, p, alphas)?;
            let a = make_model(&spec)?;
            let g = standard_grading(&spec)?;
            (a, Provenance::model(&spec), Some(g))
        }
    };
    let doc = AlgebraDoc::from_algebra(&algebra, origin, Some(provenance));
    let gdoc = grading.as_ref().map(GradingDoc::from_grading);
    let out = Output::ok(
        serde_json::to_value(&doc).expect("serializable"),
        algebra_text(&algebra),
    );
    Ok((
        Made {
            algebra: doc,
            grading: gdoc,
        },
        out,
    ))
}

pub fn classify_cmd(spec: &ModelSpec) -> Result<Output, CliError> {
    let c = classify(spec)?;
    let mut rows = Vec::new();
    let mut text = String::new();
    let _ = writeln!(text, "{} ({} representatives)", spec.name(), c.list_count());
    let width = c
        .representatives
        .iter()
        .map(|r| r.name.len())
        .max()
        .unwrap_or(4)
        .max(4);
    let _ = writeln!(
        text,
        "{:<width$}  {:<12}  {:<12}  {:<5}  degrees",
        "name", "U", "stated", "match"
    );
    for r in &c.representatives {
        let degrees: Vec<String> = r.grading.degrees().iter().map(group_element_text).collect();
        let _ = writeln!(
            text,
            "{:<width$}  {:<12}  {:<12}  {:<5}  {}",
            r.name,
            r.universal.to_string(),
            r.stated_group.to_string(),
            if r.group_matches() { "yes" } else { "NO" },
            degrees.join(" ")
        );
        rows.push(json!({
            "name": r.name,
            "universal_group": r.universal.to_string(),
            "stated_group": r.stated_group.to_string(),
            "group_matches": r.group_matches(),
            "displayed_degrees_verify": r.displayed_degrees_verify,
            "grading": GradingDoc::from_grading(&r.grading),
            "enumerated_index": r.enumerated,
        }));
    }
    let _ = writeln!(text, "enumerated factor-gradings: {}", c.enumerated_count());
    let _ = writeln!(text, "listed representatives:    {}", c.list_count());
    let mut totals = Vec::new();
    for t in &c.stated_totals {
        let verdict = if c.agrees(t) { "AGREE" } else { "DISAGREE" };
        let _ = writeln!(text, "stated total ({}): {} {verdict}", t.source, t.value);
        totals.push(json!({ "source": t.source, "value": t.value, "verdict": verdict }));
    }
    let unlisted: Vec<Value> = c
        .unlisted()
        .into_iter()
        .map(|i| {
            let f = &c.enumerated[i];
            let _ = writeln!(
                text,
                "unlisted: partition {:?}, U = {}",
                f.partition(),
                f.universal
            );
            json!({ "partition": f.partition(), "universal_group": f.universal.to_string() })
        })
        .collect();
    let json = json!({
        "model": spec.name(),
        "representatives": rows,
        "enumerated_count": c.enumerated_count(),
        "list_count": c.list_count(),
        "stated_totals": totals,
        "unlisted": unlisted,
    });
    Ok(Output::ok(json, text))
}

pub fn check(algebra: LieAlgebra, grading: &GradingDoc, origin: usize) -> Result<Output, CliError> {
    let g = grading.to_grading(algebra)?;
    match verify_grading(&g) {
        Ok(()) => {
            let (u, _) = universal_group(&g)?;
            Ok(Output::ok(
                json!({ "ok": true, "universal_group": u.to_string() }),
                format!("ok, U = {u}\n"),
            ))
        }
        Err(v) => {
            let (i, j, w) = (v.i + origin, v.j + origin, v.witness + origin);
            Ok(Output {
                json: json!({ "ok": false, "violation": { "i": i, "j": j, "witness": w } }),
                text: format!(
                    "violation: [e{i}, e{j}] has a component along e{w} outside degree d{i} + d{j}\n"
                ),
                status: Status::Negative,
            })
        }
    }
}

pub fn cn(a: &LieAlgebra) -> Output {
    let info = a.is_filiform();
    let der_dim = derivation_space(a).dim();
    let char_nilpotent = is_characteristically_nilpotent(a);
    // every torus is trivial when all derivations are nilpotent
    let rank = match diagonal_torus_rank(a) {
        Ok(r) => Some(r),
        Err(_) if char_nilpotent => Some(0),
        Err(_) => None,
    };
    let json = json!({
        "filiform": info.filiform,
        "nilindex": info.nilindex,
        "rank": rank,
        "char_nilpotent": char_nilpotent,
        "der_dim": der_dim,
    });
    let show = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
    let text = format!(
        "filiform        {}\nnilindex        {}\nrank            {}\nchar_nilpotent  {}\nder_dim         {}\n",
        info.filiform,
        show(info.nilindex),
        show(rank),
        char_nilpotent,
        der_dim
    );
    Output::ok(json, text)
}

/// Parses `k,s,coeff`.
pub fn parse_term(s: &str) -> Result<PsiTerm, CliError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [k, s_, c] = parts.as_slice() else {
        return Err(CliError::invalid(format!("term {s:?} must be k,s,coeff")));
    };
    let k = k
        .parse()
        .map_err(|_| CliError::invalid(format!("bad k in {s:?}")))?;
    let s_ = s_
        .parse()
        .map_err(|_| CliError::invalid(format!("bad s in {s:?}")))?;
    Ok(PsiTerm::new(k, s_, parse_rational(c)?))
}

pub fn deform(n: usize, terms: &[PsiTerm], origin: usize) -> Result<(AlgebraDoc, Output), CliError> {
    let a = deformation(n, terms)?;
    let doc = AlgebraDoc::from_algebra(&a, origin, Some(Provenance::deformation(n, terms)));
    let out = Output::ok(
        serde_json::to_value(&doc).expect("serializable"),
        algebra_text(&a),
    );
    Ok((doc, out))
}

/// `zk`: a failed construction on a well-formed deformation is a negative
/// verification rather than an input error.
pub fn zk(a: LieAlgebra, k: usize) -> Result<(Option<GradingDoc>, Output), CliError> {
    match cn_zk_grading(&a, k) {
        Ok(g) => {
            let doc = GradingDoc::from_grading(&g);
            let out = Output::ok(
                serde_json::to_value(&doc).expect("serializable"),
                grading_text(&g),
            );
            Ok((Some(doc), out))
        }
        Err(filiform::Error::Precondition(msg)) => Ok((
            None,
            Output {
                json: json!({ "ok": false, "reason": msg }),
                text: format!("no Z_{k} grading: {msg}\n"),
                status: Status::Negative,
            },
        )),
        Err(e) => Err(e.into()),
    }
}

pub fn enumerate(spec: &ModelSpec) -> Result<Output, CliError> {
    let all = enumerate_factor_gradings(spec)?;
    let mut text = String::new();
    let _ = writeln!(text, "{}: {} factor-gradings", spec.name(), all.len());
    let items: Vec<Value> = all
        .iter()
        .enumerate()
        .map(|(idx, f)| {
            let _ = writeln!(
                text,
                "{idx:>3}  U = {:<12}  partition {:?}  relations {:?}",
                f.universal.to_string(),
                f.partition(),
                f.relations
            );
            let (_, over_u) = universal_group(&f.grading).expect("enumerated gradings verify");
            json!({
                "relations": f.relations,
                "partition": f.partition(),
                "universal_group": f.universal.to_string(),
                "grading": GradingDoc::from_grading(&over_u),
            })
        })
        .collect();
    Ok(Output::ok(
        json!({ "model": spec.name(), "count": all.len(), "gradings": items }),
        text,
    ))
}
