use std::fmt;

use super::problem::{DomainSpec, DomainValue, RelaxationOracle, VarId};
use crate::Bound;

/// The three obligations a relaxation must meet for dual search to prove
/// sound and eventually optimal bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContractRule {
    /// Extending an assignment may not decrease the value.
    ExtensionMonotone,
    /// On complete assignments the value equals the true objective.
    SharpAtTerminal,
    /// The value is a function of the assignment as a set, not of the order
    /// in which it was built.
    HistoryIndependent,
}

impl fmt::Display for ContractRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ContractRule::ExtensionMonotone => "extension-monotone",
            ContractRule::SharpAtTerminal => "sharp-at-terminal",
            ContractRule::HistoryIndependent => "history-independent",
        };
        f.write_str(name)
    }
}

#[derive(Clone, Debug)]
pub struct ContractViolation {
    pub rule: ContractRule,
    pub assignment: Vec<(VarId, DomainValue)>,
    pub detail: String,
}

impl fmt::Display for ContractViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violated at {:?}: {}", self.rule, self.assignment, self.detail)
    }
}

/// Checks an oracle against its contract on the given sample assignments.
///
/// For each sample: every one-step extension by a variable from
/// `extension_vars` must not decrease the value; complete assignments must
/// match `objective` exactly; and evaluating the same pairs in permuted order
/// must give the same value. Returns all violations found (empty = pass).
pub fn check_relaxation_contract<D, O>(
    domain: &D,
    oracle: &O,
    samples: &[Vec<(VarId, DomainValue)>],
    extension_vars: impl Fn(&[(VarId, DomainValue)]) -> Vec<VarId>,
    objective: impl Fn(&[(VarId, DomainValue)]) -> Bound,
) -> Vec<ContractViolation>
where
    D: DomainSpec,
    O: RelaxationOracle,
{
    let mut violations = Vec::new();
    for sample in samples {
        let base = oracle.value_of(sample);

        // (a) one-step extensions
        for var in extension_vars(sample) {
            debug_assert!(
                sample.iter().all(|&(v, _)| v != var),
                "extension variable already assigned"
            );
            let mut extended = sample.clone();
            extended.push((var, 0));
            for value in 0..domain.domain_size(var) {
                extended.last_mut().expect("just pushed").1 = value;
                let child = oracle.value_of(&extended);
                if child < base {
                    violations.push(ContractViolation {
                        rule: ContractRule::ExtensionMonotone,
                        assignment: sample.clone(),
                        detail: format!(
                            "extension ({var}, {value}) dropped the value from {base} to {child}"
                        ),
                    });
                }
            }
        }

        // (b) sharpness on complete assignments
        if oracle.is_terminal_assignment(sample) {
            let truth = objective(sample);
            if base != truth {
                violations.push(ContractViolation {
                    rule: ContractRule::SharpAtTerminal,
                    assignment: sample.clone(),
                    detail: format!("oracle value {base} differs from objective {truth}"),
                });
            }
        }

        // (c) history independence: same pairs, different call sequences
        for permuted in reorderings(sample) {
            let value = oracle.value_of(&permuted);
            if value != base {
                violations.push(ContractViolation {
                    rule: ContractRule::HistoryIndependent,
                    assignment: sample.clone(),
                    detail: format!("order {permuted:?} gave {value} instead of {base}"),
                });
            }
        }
    }
    violations
}

/// A few deterministic reorderings of an assignment: reversed, sorted by
/// variable index, and rotated by one.
fn reorderings(sample: &[(VarId, DomainValue)]) -> Vec<Vec<(VarId, DomainValue)>> {
    if sample.len() < 2 {
        return Vec::new();
    }
    let mut reversed = sample.to_vec();
    reversed.reverse();
    let mut sorted = sample.to_vec();
    sorted.sort_unstable();
    let mut rotated = sample.to_vec();
    rotated.rotate_left(1);
    let mut out = vec![reversed, sorted, rotated];
    out.dedup();
    out.retain(|p| p != sample);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual::problem::RelaxationOracle;
    use crate::dual::scripted::ScriptedOracle;

    /// Wraps an oracle and understates terminal values by one.
    struct SaggingTerminal<'a>(&'a ScriptedOracle);

    impl RelaxationOracle for SaggingTerminal<'_> {
        fn value_of(&self, assignment: &[(VarId, DomainValue)]) -> Bound {
            let v = self.0.value_of(assignment);
            if self.0.is_terminal_assignment(assignment) {
                match v {
                    Bound::Finite(x) => Bound::Finite(x - 1),
                    Bound::Infinite => Bound::Infinite,
                }
            } else {
                v
            }
        }

        fn is_terminal_assignment(&self, assignment: &[(VarId, DomainValue)]) -> bool {
            self.0.is_terminal_assignment(assignment)
        }
    }

    fn samples(vars: usize, domain: usize) -> Vec<Vec<(VarId, DomainValue)>> {
        // empty, all singletons, and all full assignments in layer order
        let mut out = vec![vec![]];
        for var in 0..vars {
            for value in 0..domain {
                out.push(vec![(var, value)]);
            }
        }
        let mut full = vec![vec![]];
        for var in 0..vars {
            full = full
                .into_iter()
                .flat_map(|a: Vec<(VarId, DomainValue)>| {
                    (0..domain).map(move |value| {
                        let mut b = a.clone();
                        b.push((var, value));
                        b
                    })
                })
                .collect();
        }
        out.extend(full);
        out
    }

    #[test]
    fn scripted_oracle_passes_its_own_contract() {
        let oracle = ScriptedOracle::new(2, 2, Bound::Finite(1), [
            (vec![(0, 0)], Bound::Finite(2)),
            (vec![(0, 0), (1, 1)], Bound::Finite(3)),
        ]);
        let objective = |a: &[(VarId, DomainValue)]| oracle.value_of(a);
        let unused =
            |a: &[(VarId, DomainValue)]| (0..2).filter(|v| a.iter().all(|&(w, _)| w != *v)).collect();
        let violations =
            check_relaxation_contract(&oracle, &oracle, &samples(2, 2), unused, objective);
        assert!(violations.is_empty(), "{violations:?}");
    }

    #[test]
    fn planted_terminal_fault_is_reported() {
        let inner = ScriptedOracle::new(2, 2, Bound::Finite(1), [
            (vec![(0, 0), (1, 0)], Bound::Finite(5)),
        ]);
        let broken = SaggingTerminal(&inner);
        let objective = |a: &[(VarId, DomainValue)]| inner.value_of(a);
        let unused =
            |a: &[(VarId, DomainValue)]| (0..2).filter(|v| a.iter().all(|&(w, _)| w != *v)).collect();
        let violations =
            check_relaxation_contract(&inner, &broken, &samples(2, 2), unused, objective);
        assert!(violations
            .iter()
            .any(|v| v.rule == ContractRule::SharpAtTerminal));
    }
}
