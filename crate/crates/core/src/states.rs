//! Two-valued states and the half-valued dispersionless state on odd cycles.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::logic::Logic;

/// A {0,1} assignment over the logic's canonical atom order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoValuedState {
    values: Vec<bool>,
}

impl TwoValuedState {
    pub fn new(values: Vec<bool>) -> Self {
        Self { values }
    }

    pub fn value(&self, atom: usize) -> bool {
        self.values[atom]
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    /// Canonical indices of the atoms valued 1.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.values.iter().enumerate().filter(|(_, &v)| v).map(|(i, _)| i)
    }

    /// True if every context of `logic` has exactly one atom valued 1.
    pub fn is_admissible(&self, logic: &Logic) -> bool {
        self.values.len() == logic.atom_count()
            && logic.contexts().iter().all(|c| c.members().iter().filter(|&&a| self.values[a]).count() == 1)
    }
}

/// All two-valued states of a logic in canonical order. State indices
/// exposed to users are 1-based.
#[derive(Debug, Clone, PartialEq)]
pub struct StateFamily {
    logic: Arc<Logic>,
    states: Vec<TwoValuedState>,
}

impl StateFamily {
    /// Wraps an explicit list of states (for restricted families). States
    /// are kept in the given order.
    pub fn from_states(logic: Arc<Logic>, states: Vec<TwoValuedState>) -> Self {
        Self { logic, states }
    }

    pub fn logic(&self) -> &Arc<Logic> {
        &self.logic
    }

    pub fn states(&self) -> &[TwoValuedState] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// State with 1-based index `k`.
    pub fn state(&self, k: usize) -> Option<&TwoValuedState> {
        k.checked_sub(1).and_then(|i| self.states.get(i))
    }
}

/// Exhaustive backtracking over contexts in logic order.
///
/// Within a context with no atom valued 1 yet, each unassigned atom is tried
/// as the 1-valued one (ascending atom index) and the rest are forced to 0.
/// Atoms outside every context are left free. The result is sorted so that
/// states valuing earlier atoms 1 come first (descending lexicographic order
/// of the 0/1 vector), which is also the order in which the search meets them
/// when contexts list their atoms in canonical order.
pub fn enumerate_two_valued_states(logic: &Logic) -> StateFamily {
    let mut assign: Vec<Option<bool>> = vec![None; logic.atom_count()];
    let mut found = Vec::new();
    search(logic, 0, &mut assign, &mut found);
    found.sort_unstable_by(|a: &TwoValuedState, b| b.cmp(a));
    found.dedup();
    StateFamily { logic: Arc::new(logic.clone()), states: found }
}

fn search(logic: &Logic, next: usize, assign: &mut Vec<Option<bool>>, out: &mut Vec<TwoValuedState>) {
    let Some(ctx) = logic.contexts().get(next) else {
        emit_free(assign, 0, out);
        return;
    };
    let members = ctx.members();
    let ones = members.iter().filter(|&&a| assign[a] == Some(true)).count();
    let mut open: Vec<usize> = members.iter().copied().filter(|&a| assign[a].is_none()).collect();
    open.sort_unstable();
    match ones {
        0 => {
            for &pick in &open {
                for &a in &open {
                    assign[a] = Some(a == pick);
                }
                search(logic, next + 1, assign, out);
            }
            for &a in &open {
                assign[a] = None;
            }
        }
        1 => {
            for &a in &open {
                assign[a] = Some(false);
            }
            search(logic, next + 1, assign, out);
            for &a in &open {
                assign[a] = None;
            }
        }
        _ => {}
    }
}

fn emit_free(assign: &mut Vec<Option<bool>>, from: usize, out: &mut Vec<TwoValuedState>) {
    match (from..assign.len()).find(|&i| assign[i].is_none()) {
        None => out.push(TwoValuedState::new(assign.iter().map(|v| v.unwrap_or(false)).collect())),
        Some(i) => {
            for v in [true, false] {
                assign[i] = Some(v);
                emit_free(assign, i + 1, out);
            }
            assign[i] = None;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationReport {
    pub separating: bool,
    /// Pairs of atom ids no state tells apart.
    pub non_separated: Vec<(String, String)>,
}

pub fn is_separating(family: &StateFamily) -> SeparationReport {
    let logic = family.logic();
    let n = logic.atom_count();
    let mut non_separated = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if !family.states.iter().any(|s| s.value(a) != s.value(b)) {
                non_separated.push((logic.atom_id(a).to_string(), logic.atom_id(b).to_string()));
            }
        }
    }
    SeparationReport { separating: non_separated.is_empty(), non_separated }
}

/// A state with exact rational values summing to 1 in every context.
#[derive(Debug, Clone, PartialEq)]
pub struct DispersionlessState {
    logic: Arc<Logic>,
    values: Vec<BigRational>,
}

impl DispersionlessState {
    /// Values in canonical atom order; each must lie in `[0,1]` and every
    /// context must sum to exactly 1.
    pub fn new(logic: Arc<Logic>, values: Vec<BigRational>) -> Result<Self, StructureError> {
        if values.len() != logic.atom_count() {
            return Err(StructureError(format!("{} values for {} atoms", values.len(), logic.atom_count())));
        }
        if let Some(v) = values.iter().find(|v| **v < BigRational::zero() || **v > BigRational::one()) {
            return Err(StructureError(format!("value {v} outside [0,1]")));
        }
        let state = Self { logic, values };
        for (c, ctx) in state.logic.contexts().iter().enumerate() {
            let sum = state.context_sum(c);
            if !sum.is_one() {
                return Err(StructureError(format!("context `{}` sums to {sum}", ctx.name)));
            }
        }
        Ok(state)
    }

    pub fn logic(&self) -> &Arc<Logic> {
        &self.logic
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn value(&self, atom: &str) -> Option<&BigRational> {
        self.logic.atom_index(atom).map(|i| &self.values[i])
    }

    pub fn context_sum(&self, context: usize) -> BigRational {
        self.logic.contexts()[context].members().iter().map(|&a| self.values[a].clone()).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct StructureError(pub String);

fn not_odd_cycle(reason: impl std::fmt::Display) -> StructureError {
    StructureError(format!("not an odd cyclic pasting: {reason}"))
}

/// The state valued 1/2 on every intertwine and 0 elsewhere, defined on a
/// cyclic pasting of an odd number (at least 3) of contexts where each
/// context holds exactly two intertwines, each shared by two contexts.
pub fn exotic_half_state(logic: &Logic) -> Result<DispersionlessState, StructureError> {
    let contexts = logic.contexts();
    let k = contexts.len();
    if k < 3 || k.is_multiple_of(2) {
        return Err(not_odd_cycle(format!("{k} contexts; need an odd number of at least 3")));
    }
    let is_link = |a: usize| logic.membership_count(a) >= 2;
    if let Some(a) = logic.atoms().iter().find(|a| logic.membership_count(a.index) > 2) {
        return Err(not_odd_cycle(format!("atom `{}` lies in more than two contexts", a.id)));
    }
    for ctx in contexts {
        let links = ctx.members().iter().filter(|&&a| is_link(a)).count();
        if links != 2 {
            return Err(not_odd_cycle(format!("context `{}` has {links} intertwines, need 2", ctx.name)));
        }
    }
    // each context has degree 2 in the context graph; it is a single cycle
    // iff a walk from context 0 visits every context before returning
    let mut visited = vec![false; k];
    let (mut current, mut via) = (0usize, usize::MAX);
    for _ in 0..k {
        visited[current] = true;
        let link = contexts[current]
            .members()
            .iter()
            .copied()
            .find(|&a| is_link(a) && a != via)
            .expect("two intertwines per context");
        let next = logic.contexts_of(link).iter().copied().find(|&c| c != current).expect("shared atom");
        via = link;
        current = next;
    }
    if current != 0 || visited.iter().any(|v| !v) {
        return Err(not_odd_cycle("contexts do not form a single cycle"));
    }

    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let values =
        logic.atoms().iter().map(|a| if is_link(a.index) { half.clone() } else { BigRational::zero() }).collect();
    Ok(DispersionlessState { logic: Arc::new(logic.clone()), values })
}
