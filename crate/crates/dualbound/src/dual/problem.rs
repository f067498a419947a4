use crate::Bound;

/// Index of a decision variable.
pub type VarId = usize;

/// A value from a variable's domain. Domains are the integers
/// `0..domain_size(var)`.
pub type DomainValue = usize;

/// A partial assignment: the (variable, value) pairs fixed along a
/// root-to-node path, in path order.
pub type Assignment = Vec<(VarId, DomainValue)>;

/// Shape of a finite-domain problem: how many variables, and how large each
/// variable's domain is.
pub trait DomainSpec {
    fn variable_count(&self) -> usize;
    fn domain_size(&self, var: VarId) -> usize;
}

/// Relaxation supplying a lower bound for every partial assignment.
///
/// Implementations must treat the assignment as a set: the value may not
/// depend on the order in which pairs were fixed. Detected infeasibility is
/// reported as [`Bound::Infinite`]. The search engine enforces monotonicity
/// along tree paths by combining each child's raw value with its parent's, so
/// a sound but non-monotone implementation stays usable.
pub trait RelaxationOracle {
    fn value_of(&self, assignment: &[(VarId, DomainValue)]) -> Bound;

    /// Whether the assignment fixes every variable. On complete assignments
    /// `value_of` must equal the true objective.
    fn is_terminal_assignment(&self, assignment: &[(VarId, DomainValue)]) -> bool;
}

/// Chooses the next variable to branch on at a node, given the partial
/// assignment of its path. The returned variable must not occur in the
/// assignment.
///
/// A selector is *fixed* when its choice is a pure function of the assignment
/// (as a set), and *layered* when it depends only on the assignment's length.
/// The optimality guarantees of worst-bound search hold for fixed selectors.
pub trait LabelSelector {
    fn choose_label(&self, assignment: &[(VarId, DomainValue)]) -> VarId;
}

/// Layered selector branching on variables in index order: level `j` receives
/// variable `j - 1`.
pub struct NaturalOrderSelector;

impl LabelSelector for NaturalOrderSelector {
    fn choose_label(&self, assignment: &[(VarId, DomainValue)]) -> VarId {
        assignment.len()
    }
}
