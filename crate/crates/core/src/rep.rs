//! Faithful orthogonal representations of a logic.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::logic::{Logic, ValidationReport, Violation};
use crate::quantum::{inner, norm, BasisContext};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RepError {
    #[error("malformed representation: {0}")]
    Parse(String),
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("no vector for atom `{0}`")]
    MissingVector(String),
    #[error("vector for unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("atom `{atom}` has {found} components, expected {expected}")]
    DimensionMismatch { atom: String, expected: usize, found: usize },
    #[error("unknown context `{0}`")]
    UnknownContext(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepFile {
    pub dimension: usize,
    pub vectors: BTreeMap<String, Vec<[f64; 2]>>,
}

/// Atom id to unit vector in `C^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalRep {
    dimension: usize,
    vectors: BTreeMap<String, Vec<Complex64>>,
}

impl OrthogonalRep {
    pub fn new(dimension: usize, vectors: BTreeMap<String, Vec<Complex64>>) -> Result<Self, RepError> {
        if dimension == 0 {
            return Err(RepError::ZeroDimension);
        }
        Ok(Self { dimension, vectors })
    }

    pub fn from_real(dimension: usize, vectors: &[(&str, Vec<f64>)]) -> Result<Self, RepError> {
        Self::new(
            dimension,
            vectors
                .iter()
                .map(|(id, v)| (id.to_string(), v.iter().map(|&x| Complex64::new(x, 0.0)).collect()))
                .collect(),
        )
    }

    pub fn parse(text: &str) -> Result<Self, RepError> {
        let file: RepFile = serde_json::from_str(text).map_err(|e| RepError::Parse(e.to_string()))?;
        Self::new(
            file.dimension,
            file.vectors
                .into_iter()
                .map(|(id, v)| (id, v.into_iter().map(|[re, im]| Complex64::new(re, im)).collect()))
                .collect(),
        )
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn vector(&self, atom: &str) -> Option<&[Complex64]> {
        self.vectors.get(atom).map(Vec::as_slice)
    }

    /// The vectors of a context's atoms, in context order.
    pub fn basis(&self, logic: &Logic, context: &str) -> Result<BasisContext<f64>, RepError> {
        let ctx = logic.context(context).ok_or_else(|| RepError::UnknownContext(context.to_string()))?;
        let mut vectors = Vec::with_capacity(ctx.len());
        for atom in &ctx.atoms {
            let v = self.vector(atom).ok_or_else(|| RepError::MissingVector(atom.clone()))?;
            if v.len() != self.dimension {
                return Err(RepError::DimensionMismatch {
                    atom: atom.clone(),
                    expected: self.dimension,
                    found: v.len(),
                });
            }
            vectors.push(v.to_vec());
        }
        Ok(BasisContext::new(self.dimension, vectors).expect("lengths checked"))
    }
}

/// Checks unit norms and in-context orthogonality (violations), distinct
/// atoms sharing a ray (violation), and orthogonality between atoms that
/// share no context (warning only).
pub fn check_orthogonal_rep(logic: &Logic, rep: &OrthogonalRep, tol: f64) -> Result<ValidationReport, RepError> {
    for id in rep.vectors.keys() {
        if logic.atom_index(id).is_none() {
            return Err(RepError::UnknownAtom(id.clone()));
        }
    }
    let mut vectors = Vec::with_capacity(logic.atom_count());
    for atom in logic.atoms() {
        let v = rep.vector(&atom.id).ok_or_else(|| RepError::MissingVector(atom.id.clone()))?;
        if v.len() != rep.dimension {
            return Err(RepError::DimensionMismatch { atom: atom.id.clone(), expected: rep.dimension, found: v.len() });
        }
        vectors.push(v);
    }

    let mut report = ValidationReport::default();
    for atom in logic.atoms() {
        let n = norm(vectors[atom.index]);
        if (n - 1.0).abs() > tol {
            report.violations.push(Violation::NotUnit { atom: atom.id.clone(), norm: n });
        }
    }
    for ctx in logic.contexts() {
        let members = ctx.members();
        for (k, &a) in members.iter().enumerate() {
            for &b in &members[k + 1..] {
                let overlap = inner(vectors[a], vectors[b]).norm();
                if overlap > tol {
                    report.violations.push(Violation::NotOrthogonal {
                        context: ctx.name.clone(),
                        first: logic.atom_id(a).to_string(),
                        second: logic.atom_id(b).to_string(),
                        overlap,
                    });
                }
            }
        }
    }
    let n = logic.atom_count();
    for a in 0..n {
        for b in a + 1..n {
            let overlap = inner(vectors[a], vectors[b]).norm();
            let scale = norm(vectors[a]) * norm(vectors[b]);
            let (first, second) = (logic.atom_id(a).to_string(), logic.atom_id(b).to_string());
            if (overlap - scale).abs() <= tol {
                report.violations.push(Violation::DuplicateVector { first, second });
            } else if !logic.co_contextual(a, b) && overlap <= tol {
                report.warnings.push(Violation::OrthogonalOutsideContext { first, second, overlap });
            }
        }
    }
    Ok(report)
}
