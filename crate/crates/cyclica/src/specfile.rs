//! JSON spec files: external descriptions of algebras, Hopf algebras,
//! actions, and subalgebras.
//!
//! Every scalar is written as an exact fraction string `"p"` or `"p/q"`;
//! floats are rejected by construction. A file carries one principal
//! `algebra`. A `hopf` block without its own nested `algebra` puts the Hopf
//! structure on the principal algebra; with a nested `algebra` (required when
//! an `action` block is present) the principal algebra is the module algebra
//! A and the `hopf` block fully describes H.

use crate::algebra::{StructureConstantAlgebra, SubalgebraInclusion};
use crate::hopf::{HopfAlgebraData, ModuleAlgebraAction};
use crate::scalar::{format_scalar, parse_scalar, Scalar};
use crate::sparse::SparseMatrix;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("cannot read `{path}`: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("validation failed for {subject}: {}", violations.join("; "))]
    Validation {
        subject: String,
        violations: Vec<String>,
    },
}

fn parse_err(location: impl Into<String>, message: impl std::fmt::Display) -> SpecError {
    SpecError::Parse {
        location: location.into(),
        message: message.to_string(),
    }
}

/// `e_i · e_j = Σ c · e_k` (or `Δ(e_i) = Σ c · e_j ⊗ e_k` in a coproduct).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct TripleEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: String,
}

/// `e_h(a_a) = Σ c · a_k`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ActionEntry {
    pub h: usize,
    pub a: usize,
    pub k: usize,
    pub c: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub dim: usize,
    pub basis: Vec<String>,
    pub unit: Vec<String>,
    pub mul: Vec<TripleEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct HopfSpec {
    /// Present when the Hopf algebra is distinct from the principal algebra.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraSpec>,
    pub coproduct: Vec<TripleEntry>,
    pub counit: Vec<String>,
    pub antipode: Vec<Vec<String>>,
    pub antipode_inverse: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub semisimple: Option<bool>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SubalgebraSpec {
    pub dim: usize,
    pub labels: Vec<String>,
    /// `dim(big) × dim(small)` matrix, rows over the principal algebra basis.
    pub embed: Vec<Vec<String>>,
}

/// One spec file: a principal algebra plus optional Hopf structure, action,
/// and subalgebra.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SpecFile {
    pub name: String,
    pub field: String,
    pub algebra: AlgebraSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hopf: Option<HopfSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<ActionEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subalgebra: Option<SubalgebraSpec>,
}

/// Core objects produced from a validated spec file.
#[derive(Debug, Clone)]
pub struct ResolvedSpec {
    pub name: String,
    pub algebra: StructureConstantAlgebra,
    pub hopf: Option<HopfAlgebraData>,
    pub action: Option<ModuleAlgebraAction>,
    pub subalgebra: Option<SubalgebraInclusion>,
}

fn scalar_at(s: &str, location: &str) -> Result<Scalar, SpecError> {
    parse_scalar(s).map_err(|e| parse_err(location, e))
}

fn vector_at(v: &[String], location: &str) -> Result<Vec<Scalar>, SpecError> {
    v.iter()
        .enumerate()
        .map(|(i, s)| scalar_at(s, &format!("{location}[{i}]")))
        .collect()
}

fn matrix_at(rows: &[Vec<String>], location: &str) -> Result<SparseMatrix, SpecError> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut triplets = Vec::new();
    for (r, row) in rows.iter().enumerate() {
        if row.len() != ncols {
            return Err(parse_err(
                format!("{location}[{r}]"),
                format!("expected {ncols} columns, found {}", row.len()),
            ));
        }
        for (c, s) in row.iter().enumerate() {
            let v = scalar_at(s, &format!("{location}[{r}][{c}]"))?;
            triplets.push((r, c, v));
        }
    }
    Ok(SparseMatrix::from_triplets(nrows, ncols, triplets))
}

fn triples_at(
    entries: &[TripleEntry],
    dim: usize,
    location: &str,
) -> Result<Vec<(usize, usize, usize, Scalar)>, SpecError> {
    entries
        .iter()
        .enumerate()
        .map(|(idx, t)| {
            let loc = format!("{location}[{idx}]");
            if t.i >= dim || t.j >= dim || t.k >= dim {
                return Err(parse_err(
                    &loc,
                    format!("index out of range for dimension {dim}"),
                ));
            }
            Ok((t.i, t.j, t.k, scalar_at(&t.c, &format!("{loc}.c"))?))
        })
        .collect()
}

fn build_algebra(
    spec: &AlgebraSpec,
    name: &str,
    location: &str,
) -> Result<StructureConstantAlgebra, SpecError> {
    if spec.basis.len() != spec.dim {
        return Err(parse_err(
            format!("{location}.basis"),
            format!("{} labels for dimension {}", spec.basis.len(), spec.dim),
        ));
    }
    if spec.unit.len() != spec.dim {
        return Err(parse_err(
            format!("{location}.unit"),
            format!("{} entries for dimension {}", spec.unit.len(), spec.dim),
        ));
    }
    let mul = triples_at(&spec.mul, spec.dim, &format!("{location}.mul"))?;
    let unit = vector_at(&spec.unit, &format!("{location}.unit"))?;
    StructureConstantAlgebra::new(name, spec.basis.clone(), mul, unit)
        .map_err(|e| parse_err(location, e))
}

fn build_hopf(
    spec: &HopfSpec,
    alg: StructureConstantAlgebra,
    location: &str,
) -> Result<HopfAlgebraData, SpecError> {
    let dim = alg.dim();
    let coproduct = triples_at(&spec.coproduct, dim, &format!("{location}.coproduct"))?;
    let counit = vector_at(&spec.counit, &format!("{location}.counit"))?;
    let antipode = matrix_at(&spec.antipode, &format!("{location}.antipode"))?;
    let antipode_inverse = matrix_at(
        &spec.antipode_inverse,
        &format!("{location}.antipode_inverse"),
    )?;
    HopfAlgebraData::new(
        alg,
        coproduct,
        counit,
        antipode,
        antipode_inverse,
        spec.semisimple,
    )
    .map_err(|e| parse_err(location, e))
}

impl SpecFile {
    /// Parses JSON text; syntax errors carry line/column locations.
    pub fn parse_str(text: &str) -> Result<SpecFile, SpecError> {
        let file: SpecFile = serde_json::from_str(text)
            .map_err(|e| parse_err(format!("line {}, column {}", e.line(), e.column()), &e))?;
        if file.field != "rational" {
            return Err(parse_err(
                "field",
                format!("unsupported field `{}`", file.field),
            ));
        }
        Ok(file)
    }

    pub fn parse_path(path: &std::path::Path) -> Result<SpecFile, SpecError> {
        let text = std::fs::read_to_string(path).map_err(|source| SpecError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse_str(&text)
    }

    /// Builds and validates the core objects. Any failed axiom becomes a
    /// [`SpecError::Validation`] naming its witnesses.
    pub fn resolve(&self) -> Result<ResolvedSpec, SpecError> {
        if self.action.is_some() && self.hopf.as_ref().is_none_or(|hs| hs.algebra.is_none()) {
            return Err(parse_err(
                "hopf.algebra",
                "an action file must give the Hopf algebra its own algebra block",
            ));
        }
        let algebra = build_algebra(&self.algebra, &self.name, "algebra")?;
        let check = |report: crate::report::ValidationReport| -> Result<(), SpecError> {
            if report.passed() {
                Ok(())
            } else {
                Err(SpecError::Validation {
                    subject: report.subject.clone(),
                    violations: report.violations(),
                })
            }
        };
        check(algebra.validate())?;

        let hopf = match &self.hopf {
            None => None,
            Some(hs) => {
                let carrier_alg = match &hs.algebra {
                    None => algebra.clone(),
                    Some(inner) => {
                        let named = format!("{}/hopf", self.name);
                        build_algebra(inner, &named, "hopf.algebra")?
                    }
                };
                let hopf = build_hopf(hs, carrier_alg, "hopf")?;
                check(hopf.validate())?;
                Some(hopf)
            }
        };

        let action = match &self.action {
            None => None,
            Some(entries) => {
                let hopf = hopf
                    .clone()
                    .expect("checked above: action requires a hopf block");
                let dim_a = algebra.dim();
                let dim_h = hopf.dim();
                let mut triples = Vec::new();
                for (idx, e) in entries.iter().enumerate() {
                    let loc = format!("action[{idx}]");
                    if e.h >= dim_h || e.a >= dim_a || e.k >= dim_a {
                        return Err(parse_err(&loc, "index out of range"));
                    }
                    triples.push((e.h, e.a, e.k, scalar_at(&e.c, &format!("{loc}.c"))?));
                }
                let action = ModuleAlgebraAction::new(&self.name, hopf, algebra.clone(), triples)
                    .map_err(|e| parse_err("action", e))?;
                check(action.validate())?;
                Some(action)
            }
        };

        let subalgebra = match &self.subalgebra {
            None => None,
            Some(ss) => {
                if ss.labels.len() != ss.dim {
                    return Err(parse_err(
                        "subalgebra.labels",
                        format!("{} labels for dimension {}", ss.labels.len(), ss.dim),
                    ));
                }
                let embed = matrix_at(&ss.embed, "subalgebra.embed")?;
                let inc = SubalgebraInclusion::from_embedding(
                    &algebra,
                    embed,
                    format!("{}/sub", self.name),
                    ss.labels.clone(),
                )
                .map_err(|e| parse_err("subalgebra", e))?;
                check(inc.validate())?;
                Some(inc)
            }
        };

        Ok(ResolvedSpec {
            name: self.name.clone(),
            algebra,
            hopf,
            action,
            subalgebra,
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec files serialize infallibly")
    }

    /// Spec description of a plain algebra.
    pub fn from_algebra(alg: &StructureConstantAlgebra) -> SpecFile {
        SpecFile {
            name: alg.name().to_string(),
            field: "rational".to_string(),
            algebra: algebra_spec(alg),
            hopf: None,
            action: None,
            subalgebra: None,
        }
    }

    /// Spec description of a Hopf algebra (structure on the principal algebra).
    pub fn from_hopf(hopf: &HopfAlgebraData) -> SpecFile {
        SpecFile {
            name: hopf.alg().name().to_string(),
            field: "rational".to_string(),
            algebra: algebra_spec(hopf.alg()),
            hopf: Some(hopf_spec(hopf, false)),
            action: None,
            subalgebra: None,
        }
    }

    /// Spec description of an action: principal algebra A, nested Hopf H.
    pub fn from_action(action: &ModuleAlgebraAction) -> SpecFile {
        SpecFile {
            name: action.name().to_string(),
            field: "rational".to_string(),
            algebra: algebra_spec(action.alg()),
            hopf: Some(hopf_spec(action.hopf(), true)),
            action: Some(
                action
                    .action_triples()
                    .into_iter()
                    .map(|(h, a, k, c)| ActionEntry {
                        h,
                        a,
                        k,
                        c: format_scalar(&c),
                    })
                    .collect(),
            ),
            subalgebra: None,
        }
    }
}

fn algebra_spec(alg: &StructureConstantAlgebra) -> AlgebraSpec {
    let mut mul = Vec::new();
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            for (k, c) in alg.product_basis(i, j) {
                mul.push(TripleEntry {
                    i,
                    j,
                    k: *k,
                    c: format_scalar(c),
                });
            }
        }
    }
    let mut unit = vec![format_scalar(&Scalar::from_integer(0.into())); alg.dim()];
    for (i, c) in alg.unit() {
        unit[*i] = format_scalar(c);
    }
    AlgebraSpec {
        dim: alg.dim(),
        basis: alg.basis_labels().to_vec(),
        unit,
        mul,
    }
}

fn dense_matrix(m: &SparseMatrix) -> Vec<Vec<String>> {
    let zero = format_scalar(&Scalar::from_integer(0.into()));
    let mut rows = vec![vec![zero; m.cols()]; m.rows()];
    for (r, c, v) in m.entries() {
        rows[r][c] = format_scalar(v);
    }
    rows
}

fn hopf_spec(hopf: &HopfAlgebraData, nested: bool) -> HopfSpec {
    let mut coproduct = Vec::new();
    for i in 0..hopf.dim() {
        for (j, k, c) in hopf.coproduct_terms(i) {
            coproduct.push(TripleEntry {
                i,
                j: *j,
                k: *k,
                c: format_scalar(c),
            });
        }
    }
    HopfSpec {
        algebra: nested.then(|| algebra_spec(hopf.alg())),
        coproduct,
        counit: hopf.counit().iter().map(format_scalar).collect(),
        antipode: dense_matrix(hopf.antipode()),
        antipode_inverse: dense_matrix(hopf.antipode_inv()),
        semisimple: hopf.semisimple_flag(),
    }
}
