use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop at vertex {vertex}")]
    Loop { vertex: usize },
    #[error("duplicate edge {u}-{v}")]
    DuplicateEdge { u: usize, v: usize },
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleError {
    #[error("odd cycle enumeration exceeded the bound of {bound} cycles")]
    BudgetExceeded { bound: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecognizeError {
    #[error("contract violation: {0}")]
    ContractViolation(String),
    #[error(transparent)]
    Cycles(#[from] CycleError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrientError {
    #[error("contract violation: {0}")]
    ContractViolation(String),
    #[error("parameter {param} = {value} is below the required {required}")]
    ParameterTooSmall { param: &'static str, value: usize, required: usize },
    #[error("no f_{{3,v}}-orientation exists for the diamond at a degree-2 vertex; k >= 4 is required")]
    DiamondTipImpossible,
    #[error("graph is not in the class: odd cycles {cycle1:?} and {cycle2:?} share at least two edges")]
    NotInClass { cycle1: Vec<usize>, cycle2: Vec<usize> },
    #[error("graph is not in the class (block with edges {block:?} is neither bipartite, K4 nor an odd-unit theta)")]
    NotInClassNoWitness { block: Vec<usize> },
    #[error("assembled orientation violates its demand at edge {edge}: outdegree {outdegree}, cap {cap}")]
    BoundViolation { edge: usize, outdegree: usize, cap: usize },
    #[error("orientation leaves the adjacent pair ({0}, {1}) without an arc")]
    MissingPair(usize, usize),
    #[error("arc ({0}, {1}) joins non-adjacent edges")]
    NonAdjacentArc(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColorError {
    #[error("no kernel exists on the vertex set {z:?}")]
    KernelAbsent { z: Vec<usize> },
    #[error("edge {edge} has {have} colors but needs at least {need}")]
    Demand { edge: usize, have: usize, need: usize },
    #[error("contract violation: {0}")]
    ContractViolation(String),
    #[error(transparent)]
    Orient(#[from] OrientError),
    #[error("no proper coloring exists from the given lists")]
    Uncolorable,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PaintError {
    #[error("protocol error: {0}")]
    Protocol(String),
    #[error("no kernel strategy: {0}")]
    StrategyFailure(String),
    #[error("game too large: {0}")]
    Size(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("size cap exceeded: {0}")]
    SizeCap(String),
    #[error("enumeration budget of {budget} exceeded")]
    Budget { budget: u64 },
    #[error(transparent)]
    Orient(#[from] OrientError),
    #[error("reduction step failed: {0}")]
    Reduction(String),
}
