//! A relaxation defined by an explicit table, for exercising the search
//! engine without a real problem behind it.

use super::problem::{DomainSpec, DomainValue, RelaxationOracle, VarId};
use crate::Bound;

/// Table-driven relaxation over uniform domains.
///
/// The value of an assignment is the maximum entry value over all table
/// entries contained in it (plus the root value), so the oracle is a function
/// of the assignment as a set and is monotone under extension by
/// construction.
pub struct ScriptedOracle {
    variables: usize,
    domain: usize,
    root: Bound,
    entries: Vec<(Vec<(VarId, DomainValue)>, Bound)>,
}

impl ScriptedOracle {
    pub fn new(
        variables: usize,
        domain: usize,
        root: Bound,
        entries: impl IntoIterator<Item = (Vec<(VarId, DomainValue)>, Bound)>,
    ) -> Self {
        ScriptedOracle {
            variables,
            domain,
            root,
            entries: entries.into_iter().collect(),
        }
    }
}

impl DomainSpec for ScriptedOracle {
    fn variable_count(&self) -> usize {
        self.variables
    }

    fn domain_size(&self, _var: VarId) -> usize {
        self.domain
    }
}

impl RelaxationOracle for ScriptedOracle {
    fn value_of(&self, assignment: &[(VarId, DomainValue)]) -> Bound {
        let mut value = self.root;
        for (key, entry) in &self.entries {
            if key.iter().all(|pair| assignment.contains(pair)) {
                value = value.max(*entry);
            }
        }
        value
    }

    fn is_terminal_assignment(&self, assignment: &[(VarId, DomainValue)]) -> bool {
        assignment.len() == self.variables
    }
}
