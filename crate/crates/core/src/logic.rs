//! Atoms, contexts and their pastings into logics.
//!
//! A [`Logic`] is a Greechie-style pasting: an ordered list of atoms and an
//! ordered list of contexts (blocks), each context being a set of mutually
//! exclusive atoms. Atom and context order is fixed by the input and every
//! downstream matrix or state vector follows it.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Atom {
    pub id: String,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Context {
    pub name: String,
    pub atoms: Vec<String>,
    members: Vec<usize>,
}

impl Context {
    /// Canonical atom indices, in the context's own order.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Position of the atom with canonical index `atom` in this context.
    pub fn position(&self, atom: usize) -> Option<usize> {
        self.members.iter().position(|&a| a == atom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Logic {
    atoms: Vec<Atom>,
    contexts: Vec<Context>,
    by_id: HashMap<String, usize>,
    membership: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LogicError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("malformed logic at line {line}, column {column}: {message}")]
    Schema { line: usize, column: usize, message: String },
    #[error("empty atom id")]
    EmptyAtomId,
    #[error("duplicate atom `{0}`")]
    DuplicateAtom(String),
    #[error("duplicate context name `{0}`")]
    DuplicateContextName(String),
    #[error("duplicate atom `{atom}` in context `{context}`")]
    DuplicateAtomInContext { context: String, atom: String },
    #[error("context `{context}` references undeclared atom `{atom}`")]
    UnknownAtom { context: String, atom: String },
    #[error("invalid logic: {0}")]
    Invalid(ValidationReport),
}

/// A structural defect found by [`validate_logic`] or by the
/// orthogonal-representation check.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    EmptyContext { context: String },
    SingletonContext { context: String },
    Overlap { first: String, second: String, shared: Vec<String> },
    OrphanAtom { atom: String },
    NotUnit { atom: String, norm: f64 },
    NotOrthogonal { context: String, first: String, second: String, overlap: f64 },
    DuplicateVector { first: String, second: String },
    OrthogonalOutsideContext { first: String, second: String, overlap: f64 },
}

impl Violation {
    /// Short stable code, used in reports.
    pub fn code(&self) -> &'static str {
        match self {
            Violation::EmptyContext { .. } => "empty-context",
            Violation::SingletonContext { .. } => "singleton-context",
            Violation::Overlap { .. } => "overlap>1",
            Violation::OrphanAtom { .. } => "orphan-atom",
            Violation::NotUnit { .. } => "not-unit",
            Violation::NotOrthogonal { .. } => "not-orthogonal",
            Violation::DuplicateVector { .. } => "duplicate-vector",
            Violation::OrthogonalOutsideContext { .. } => "orthogonal-outside-context",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let code = self.code();
        match self {
            Violation::EmptyContext { context } | Violation::SingletonContext { context } => {
                write!(f, "{code}: context `{context}`")
            }
            Violation::Overlap { first, second, shared } => {
                write!(f, "{code}: contexts `{first}` and `{second}` share {}", shared.join(","))
            }
            Violation::OrphanAtom { atom } => write!(f, "{code}: atom `{atom}` is in no context"),
            Violation::NotUnit { atom, norm } => write!(f, "{code}: atom `{atom}` has norm {norm}"),
            Violation::NotOrthogonal { context, first, second, overlap } => {
                write!(f, "{code}: `{first}` and `{second}` in context `{context}` have |<u,v>| = {overlap}")
            }
            Violation::DuplicateVector { first, second } => {
                write!(f, "{code}: `{first}` and `{second}` share a vector")
            }
            Violation::OrthogonalOutsideContext { first, second, overlap } => {
                write!(f, "{code}: `{first}` and `{second}` share no context but |<u,v>| = {overlap}")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("; "))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContextSpec {
    pub name: String,
    pub atoms: Vec<String>,
}

/// On-disk logic format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LogicFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub atoms: Option<Vec<String>>,
    pub contexts: Vec<ContextSpec>,
}

impl Logic {
    /// Builds a logic from declared atoms (optional) and contexts.
    ///
    /// Only referential integrity is checked here; pasting rules are left to
    /// [`validate_logic`] so that defective logics can still be inspected.
    pub fn from_parts(atoms: Option<Vec<String>>, contexts: Vec<ContextSpec>) -> Result<Self, LogicError> {
        let declared = atoms.is_some();
        let mut ids: Vec<String> = Vec::new();
        let mut by_id = HashMap::new();
        let mut intern = |id: &str, ids: &mut Vec<String>| -> Result<usize, LogicError> {
            if id.is_empty() {
                return Err(LogicError::EmptyAtomId);
            }
            Ok(*by_id.entry(id.to_string()).or_insert_with(|| {
                ids.push(id.to_string());
                ids.len() - 1
            }))
        };

        if let Some(atoms) = &atoms {
            for id in atoms {
                let before = ids.len();
                intern(id, &mut ids)?;
                if ids.len() == before {
                    return Err(LogicError::DuplicateAtom(id.clone()));
                }
            }
        }

        let mut names = HashSet::new();
        let mut built = Vec::with_capacity(contexts.len());
        for spec in contexts {
            if !names.insert(spec.name.clone()) {
                return Err(LogicError::DuplicateContextName(spec.name));
            }
            let mut members = Vec::with_capacity(spec.atoms.len());
            for id in &spec.atoms {
                if declared && !ids.contains(id) {
                    return Err(LogicError::UnknownAtom { context: spec.name.clone(), atom: id.clone() });
                }
                let idx = intern(id, &mut ids)?;
                if members.contains(&idx) {
                    return Err(LogicError::DuplicateAtomInContext { context: spec.name.clone(), atom: id.clone() });
                }
                members.push(idx);
            }
            built.push(Context { name: spec.name, atoms: spec.atoms, members });
        }

        let atoms: Vec<Atom> = ids.into_iter().enumerate().map(|(index, id)| Atom { id, index }).collect();
        let by_id = atoms.iter().map(|a| (a.id.clone(), a.index)).collect();
        let mut membership = vec![Vec::new(); atoms.len()];
        for (c, ctx) in built.iter().enumerate() {
            for &a in &ctx.members {
                membership[a].push(c);
            }
        }
        Ok(Self { atoms, contexts: built, by_id, membership })
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn contexts(&self) -> &[Context] {
        &self.contexts
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn atom_index(&self, id: &str) -> Option<usize> {
        self.by_id.get(id).copied()
    }

    pub fn atom_id(&self, index: usize) -> &str {
        &self.atoms[index].id
    }

    pub fn context(&self, name: &str) -> Option<&Context> {
        self.contexts.iter().find(|c| c.name == name)
    }

    pub fn context_index(&self, name: &str) -> Option<usize> {
        self.contexts.iter().position(|c| c.name == name)
    }

    /// Indices of the contexts containing atom `index`.
    pub fn contexts_of(&self, index: usize) -> &[usize] {
        &self.membership[index]
    }

    pub fn membership_count(&self, index: usize) -> usize {
        self.membership[index].len()
    }

    /// True if the two atoms appear together in some context.
    pub fn co_contextual(&self, a: usize, b: usize) -> bool {
        self.membership[a].iter().any(|c| self.membership[b].contains(c))
    }

    pub fn to_file(&self) -> LogicFile {
        LogicFile {
            atoms: Some(self.atoms.iter().map(|a| a.id.clone()).collect()),
            contexts: self
                .contexts
                .iter()
                .map(|c| ContextSpec { name: c.name.clone(), atoms: c.atoms.clone() })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("logic serializes")
    }
}

/// Parses a logic file without applying the pasting rules.
pub fn read_logic(text: &str) -> Result<Logic, LogicError> {
    let file: LogicFile = serde_json::from_str(text).map_err(|e| {
        let (line, column, message) = (e.line(), e.column(), e.to_string());
        match e.classify() {
            serde_json::error::Category::Data => LogicError::Schema { line, column, message },
            _ => LogicError::Syntax { line, column, message },
        }
    })?;
    Logic::from_parts(file.atoms, file.contexts)
}

/// Parses and validates a logic file.
pub fn parse_logic(text: &str) -> Result<Logic, LogicError> {
    let logic = read_logic(text)?;
    let report = validate_logic(&logic);
    if report.is_valid() {
        Ok(logic)
    } else {
        Err(LogicError::Invalid(report))
    }
}

pub fn validate_logic(logic: &Logic) -> ValidationReport {
    let mut report = ValidationReport::default();
    for ctx in logic.contexts() {
        match ctx.len() {
            0 => report.violations.push(Violation::EmptyContext { context: ctx.name.clone() }),
            1 => report.violations.push(Violation::SingletonContext { context: ctx.name.clone() }),
            _ => {}
        }
    }
    let contexts = logic.contexts();
    for (i, a) in contexts.iter().enumerate() {
        for b in &contexts[i + 1..] {
            let shared: Vec<String> =
                a.members().iter().filter(|x| b.members().contains(x)).map(|&x| logic.atom_id(x).to_string()).collect();
            if shared.len() > 1 {
                report.violations.push(Violation::Overlap { first: a.name.clone(), second: b.name.clone(), shared });
            }
        }
    }
    for atom in logic.atoms() {
        if logic.membership_count(atom.index) == 0 {
            report.violations.push(Violation::OrphanAtom { atom: atom.id.clone() });
        }
    }
    report
}

/// Atoms appearing in two or more contexts.
pub fn intertwines(logic: &Logic) -> BTreeSet<String> {
    logic.atoms().iter().filter(|a| logic.membership_count(a.index) >= 2).map(|a| a.id.clone()).collect()
}
