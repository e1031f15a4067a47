//! Classical probabilities on partition logics and conditional-probability
//! matrices between contexts, in exact rational arithmetic.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::logic::{Context, Logic};
use crate::matrix::Matrix;
use crate::partition::{Label, PartitionLabeling};
use crate::scalar::parse_rational;
use crate::states::DispersionlessState;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProbError {
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),
    #[error("measure has {found} weights but the family has {expected} states")]
    Misaligned { expected: usize, found: usize },
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("unknown context `{0}`")]
    UnknownContext(String),
    #[error("atom `{atom}` has value {value}; only 0 and 1/2 are supported")]
    NotHalfValued { atom: String, value: String },
}

/// Convex weights over the states of a family, 1-based aligned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Measure {
    weights: Vec<BigRational>,
}

impl Measure {
    pub fn new(weights: Vec<BigRational>) -> Result<Self, ProbError> {
        if weights.is_empty() {
            return Err(ProbError::InvalidMeasure("no weights".into()));
        }
        if let Some(w) = weights.iter().find(|w| w.is_negative()) {
            return Err(ProbError::InvalidMeasure(format!("negative weight {w}")));
        }
        let total: BigRational = weights.iter().cloned().sum();
        if !total.is_one() {
            return Err(ProbError::InvalidMeasure(format!("weights sum to {total}, not 1")));
        }
        Ok(Self { weights })
    }

    pub fn uniform(k: usize) -> Self {
        let w = BigRational::new(BigInt::one(), BigInt::from(k));
        Self { weights: vec![w; k] }
    }

    /// Point mass on the 1-based state index `k` out of `size`.
    pub fn point(size: usize, k: usize) -> Self {
        Self { weights: (1..=size).map(|i| if i == k { BigRational::one() } else { BigRational::zero() }).collect() }
    }

    /// Parses `{"weights": ["1/5", 1, ...]}`.
    pub fn parse(text: &str) -> Result<Self, ProbError> {
        #[derive(serde::Deserialize)]
        #[serde(deny_unknown_fields)]
        struct File {
            weights: Vec<serde_json::Value>,
        }
        let file: File = serde_json::from_str(text).map_err(|e| ProbError::InvalidMeasure(e.to_string()))?;
        let weights = file
            .weights
            .iter()
            .map(|v| {
                let parsed = match v {
                    serde_json::Value::String(s) => parse_rational(s),
                    serde_json::Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string()),
                    _ => None,
                };
                parsed.ok_or_else(|| ProbError::InvalidMeasure(format!("weight {v} is not a rational")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(weights)
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Weight of a set of 1-based state indices.
    pub fn mass(&self, label: &Label) -> BigRational {
        label.iter().map(|&i| self.weights[i - 1].clone()).sum()
    }

    /// True when every weight is strictly positive.
    pub fn is_strictly_positive(&self) -> bool {
        self.weights.iter().all(Signed::is_positive)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CondProbEntry {
    Defined(BigRational),
    /// Conditioning on a probability-zero event (0/0).
    Undefined,
}

impl CondProbEntry {
    pub fn value(&self) -> Option<&BigRational> {
        match self {
            CondProbEntry::Defined(p) => Some(p),
            CondProbEntry::Undefined => None,
        }
    }
}

impl fmt::Display for CondProbEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CondProbEntry::Defined(p) => write!(f, "{p}"),
            CondProbEntry::Undefined => f.write_str("0/0"),
        }
    }
}

/// How the entries of a [`CondProbMatrix`] were generated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixRule {
    /// `P(f_j | e_i) = P(f_j ∩ e_i) / P(e_i)`.
    Conditional,
    /// `2 s(e_i) s(f_j)` for a {0, 1/2}-valued state. Rows conditioning on a
    /// zero-valued atom come out all-zero, not undefined.
    HalfStateProduct,
}

impl MatrixRule {
    pub fn name(self) -> &'static str {
        match self {
            MatrixRule::Conditional => "conditional",
            MatrixRule::HalfStateProduct => "half-state-product",
        }
    }
}

/// Entry `(i, j)` is `P(f_j | e_i)`: rows follow the conditioning context,
/// columns the outcome context, both in their declared atom order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CondProbMatrix {
    pub row_context: String,
    pub col_context: String,
    pub row_atoms: Vec<String>,
    pub col_atoms: Vec<String>,
    pub entries: Matrix<CondProbEntry>,
    pub rule: MatrixRule,
}

impl CondProbMatrix {
    pub fn entry(&self, i: usize, j: usize) -> &CondProbEntry {
        self.entries.get(i, j)
    }

    pub fn entry_by_atoms(&self, row_atom: &str, col_atom: &str) -> Option<&CondProbEntry> {
        let i = self.row_atoms.iter().position(|a| a == row_atom)?;
        let j = self.col_atoms.iter().position(|a| a == col_atom)?;
        Some(self.entries.get(i, j))
    }

    pub fn is_row_defined(&self, i: usize) -> bool {
        self.entries.row(i).iter().all(|e| e.value().is_some())
    }

    /// Sum of a fully defined row.
    pub fn row_sum(&self, i: usize) -> Option<BigRational> {
        self.entries.row(i).iter().map(|e| e.value().cloned()).sum()
    }

    pub fn to_partial(&self) -> Matrix<Option<BigRational>> {
        self.entries.map(|e| e.value().cloned())
    }

    /// The rational matrix, if no entry is undefined.
    pub fn to_total(&self) -> Option<Matrix<BigRational>> {
        self.entries.iter().all(|e| e.value().is_some()).then(|| self.entries.map(|e| e.value().unwrap().clone()))
    }
}

fn context<'a>(logic: &'a Logic, name: &str) -> Result<&'a Context, ProbError> {
    logic.context(name).ok_or_else(|| ProbError::UnknownContext(name.to_string()))
}

fn check_alignment(labeling: &PartitionLabeling, measure: &Measure) -> Result<(), ProbError> {
    if labeling.size() != measure.len() {
        return Err(ProbError::Misaligned { expected: labeling.size(), found: measure.len() });
    }
    Ok(())
}

/// `Σ_{i ∈ label(atom)} λ_i`.
pub fn atom_probability(labeling: &PartitionLabeling, measure: &Measure, atom: &str) -> Result<BigRational, ProbError> {
    check_alignment(labeling, measure)?;
    let label = labeling.label(atom).ok_or_else(|| ProbError::UnknownAtom(atom.to_string()))?;
    Ok(measure.mass(label))
}

/// Row for a probability-zero condition `e`. If `label(e)` is nonempty and
/// lies inside a single `label(f_j)`, then `e` implies `f_j` under every
/// measure and the row is the indicator of `j`; otherwise it is `0/0`.
fn forced_row(labeling: &PartitionLabeling, given: &Label, outcomes: &[usize]) -> Vec<CondProbEntry> {
    let implied =
        (!given.is_empty()).then(|| outcomes.iter().position(|&f| given.is_subset(labeling.label_at(f)))).flatten();
    match implied {
        Some(j) => (0..outcomes.len())
            .map(|k| CondProbEntry::Defined(if k == j { BigRational::one() } else { BigRational::zero() }))
            .collect(),
        None => vec![CondProbEntry::Undefined; outcomes.len()],
    }
}

/// Conditional probabilities `P(f_j | e_i)` of the outcome context
/// `cols` given each atom of the conditioning context `rows`.
///
/// A row conditioning on a probability-zero atom is undefined (`0/0`)
/// unless its label lies inside a single outcome label, which forces that
/// outcome under every measure.
pub fn classical_cond_prob_matrix(
    labeling: &PartitionLabeling,
    measure: &Measure,
    rows: &str,
    cols: &str,
) -> Result<CondProbMatrix, ProbError> {
    check_alignment(labeling, measure)?;
    let logic = labeling.logic();
    let (c1, c2) = (context(logic, rows)?, context(logic, cols)?);
    let mut grid = Vec::with_capacity(c1.len());
    for &e in c1.members() {
        let given = labeling.label_at(e);
        let denom = measure.mass(given);
        let row = if denom.is_zero() {
            forced_row(labeling, given, c2.members())
        } else {
            c2.members()
                .iter()
                .map(|&f| {
                    let joint: Label = labeling.label_at(f).intersection(given).copied().collect();
                    CondProbEntry::Defined(measure.mass(&joint) / &denom)
                })
                .collect()
        };
        grid.push(row);
    }
    Ok(CondProbMatrix {
        row_context: c1.name.clone(),
        col_context: c2.name.clone(),
        row_atoms: c1.atoms.clone(),
        col_atoms: c2.atoms.clone(),
        entries: Matrix::from_rows(grid).expect("rectangular"),
        rule: MatrixRule::Conditional,
    })
}

/// Matrix `2 s(e_i) s(f_j)` for the half-valued dispersionless state.
pub fn exotic_cond_prob_matrix(
    state: &DispersionlessState,
    rows: &str,
    cols: &str,
) -> Result<CondProbMatrix, ProbError> {
    let logic = state.logic();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    for atom in logic.atoms() {
        let v = &state.values()[atom.index];
        if !v.is_zero() && *v != half {
            return Err(ProbError::NotHalfValued { atom: atom.id.clone(), value: v.to_string() });
        }
    }
    let (c1, c2) = (context(logic, rows)?, context(logic, cols)?);
    let two = BigRational::from_integer(BigInt::from(2));
    let values = state.values();
    let entries = Matrix::from_fn(c1.len(), c2.len(), |i, j| {
        let (e, f) = (c1.members()[i], c2.members()[j]);
        CondProbEntry::Defined(&two * &values[e] * &values[f])
    });
    Ok(CondProbMatrix {
        row_context: c1.name.clone(),
        col_context: c2.name.clone(),
        row_atoms: c1.atoms.clone(),
        col_atoms: c2.atoms.clone(),
        entries,
        rule: MatrixRule::HalfStateProduct,
    })
}
