//! Canonical partition logic: each atom labeled by the set of (1-based)
//! two-valued state indices that value it 1.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use crate::logic::Logic;
use crate::states::StateFamily;

pub type Label = BTreeSet<usize>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PartitionError {
    #[error("empty state family: no ground set to partition")]
    EmptyFamily,
    #[error("no label for atom `{0}`")]
    MissingAtom(String),
    #[error("label for unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("state index {index} outside 1..={size}")]
    IndexOutOfRange { index: usize, size: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionLabeling {
    logic: Arc<Logic>,
    size: usize,
    labels: Vec<Label>,
}

impl PartitionLabeling {
    /// Builds a labeling from explicit atom labels over the ground set
    /// `1..=size`. Every atom of the logic must be labeled.
    pub fn from_map(logic: Arc<Logic>, size: usize, map: &BTreeMap<String, Label>) -> Result<Self, PartitionError> {
        if let Some(id) = map.keys().find(|id| logic.atom_index(id).is_none()) {
            return Err(PartitionError::UnknownAtom(id.clone()));
        }
        let mut labels = Vec::with_capacity(logic.atom_count());
        for atom in logic.atoms() {
            let label = map.get(&atom.id).ok_or_else(|| PartitionError::MissingAtom(atom.id.clone()))?;
            if let Some(&index) = label.iter().find(|&&i| i == 0 || i > size) {
                return Err(PartitionError::IndexOutOfRange { index, size });
            }
            labels.push(label.clone());
        }
        Ok(Self { logic, size, labels })
    }

    pub fn logic(&self) -> &Arc<Logic> {
        &self.logic
    }

    /// Size `K` of the ground set `{1..K}`.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn label(&self, atom: &str) -> Option<&Label> {
        self.logic.atom_index(atom).map(|i| &self.labels[i])
    }

    pub fn label_at(&self, atom: usize) -> &Label {
        &self.labels[atom]
    }

    /// `(atom id, label)` in canonical atom order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &Label)> {
        self.logic.atoms().iter().map(|a| (a.id.as_str(), &self.labels[a.index]))
    }

    pub fn to_map(&self) -> BTreeMap<String, Label> {
        self.iter().map(|(id, l)| (id.to_string(), l.clone())).collect()
    }

    /// Names of contexts whose labels fail to partition `{1..K}`.
    pub fn non_partitioning_contexts(&self) -> Vec<String> {
        let ground: Label = (1..=self.size).collect();
        self.logic
            .contexts()
            .iter()
            .filter(|ctx| {
                let total: usize = ctx.members().iter().map(|&a| self.labels[a].len()).sum();
                let union: Label = ctx.members().iter().flat_map(|&a| self.labels[a].iter().copied()).collect();
                total != union.len() || union != ground
            })
            .map(|ctx| ctx.name.clone())
            .collect()
    }

    /// True when all atom labels are pairwise distinct.
    pub fn labels_distinct(&self) -> bool {
        let set: BTreeSet<&Label> = self.labels.iter().collect();
        set.len() == self.labels.len()
    }

    /// Renumbers state indices: index `i` becomes `perm[i - 1]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        Self {
            logic: self.logic.clone(),
            size: self.size,
            labels: self.labels.iter().map(|l| l.iter().map(|&i| perm[i - 1]).collect()).collect(),
        }
    }
}

pub fn canonical_partition_labels(family: &StateFamily) -> Result<PartitionLabeling, PartitionError> {
    if family.is_empty() {
        return Err(PartitionError::EmptyFamily);
    }
    let logic = family.logic().clone();
    let mut labels = vec![Label::new(); logic.atom_count()];
    for (k, state) in family.states().iter().enumerate() {
        for atom in state.ones() {
            labels[atom].insert(k + 1);
        }
    }
    Ok(PartitionLabeling { logic, size: family.len(), labels })
}

pub fn verify_partition_labels(family: &StateFamily, labeling: &PartitionLabeling) -> bool {
    canonical_partition_labels(family).is_ok_and(|canonical| canonical == *labeling)
}

/// Finds the state-index permutation taking `other`'s numbering onto
/// `labeling`'s: the returned `perm` satisfies
/// `other.relabel(&perm) == labeling` (with `perm[j - 1]` the index in
/// `labeling` of `other`'s state `j`).
///
/// Each state index is identified by the set of atoms whose label contains
/// it; the two numberings match iff these signatures coincide as multisets.
pub fn match_up_to_permutation(labeling: &PartitionLabeling, other: &PartitionLabeling) -> Option<Vec<usize>> {
    if labeling.size != other.size || labeling.logic.atom_count() != other.logic.atom_count() {
        return None;
    }
    fn signatures(l: &PartitionLabeling) -> Vec<Vec<&str>> {
        let mut sig = vec![Vec::new(); l.size];
        for (id, label) in l.iter() {
            for &i in label {
                sig[i - 1].push(id);
            }
        }
        for s in &mut sig {
            s.sort_unstable();
        }
        sig
    }
    let mut pool: HashMap<Vec<&str>, Vec<usize>> = HashMap::new();
    for (i, sig) in signatures(labeling).into_iter().enumerate() {
        pool.entry(sig).or_default().push(i + 1);
    }
    let mut perm = Vec::with_capacity(other.size);
    for sig in signatures(other) {
        perm.push(pool.get_mut(&sig)?.pop()?);
    }
    (other.relabel(&perm).to_map() == labeling.to_map()).then_some(perm)
}
