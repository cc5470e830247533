use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("dart {dart} appears more than once in {section} lines")]
    DuplicateDart { dart: u64, section: &'static str },
    #[error("vertex {vertex} declared more than once")]
    DuplicateVertex { vertex: u64 },
    #[error("dart {dart} is paired with itself")]
    SelfPairedDart { dart: u64 },
    #[error("dart {dart} appears in a vertex rotation but in no edge")]
    DartWithoutEdge { dart: u64 },
    #[error("dart {dart} appears in an edge but in no vertex rotation")]
    DartWithoutVertex { dart: u64 },
    #[error("vertex {vertex} has {degree} darts, expected 3")]
    NotTrivalent { vertex: u64, degree: usize },
    #[error("map is disconnected: dart {dart} is unreachable from dart {root}")]
    Disconnected { dart: u64, root: u64 },
    #[error("Euler-formula failure: V - E + F = {v} - {e} + {f} = {chi}, expected 2 (embedding is not planar)")]
    EulerFailure { v: usize, e: usize, f: usize, chi: i64 },
    #[error("empty map")]
    Empty,
    #[error("vertex {vertex} does not lie on face {face}")]
    VertexNotOnFace { vertex: u64, face: usize },
    #[error("vertex {vertex} occurs {count} times on face {face}; ambiguous without a dart qualifier")]
    AmbiguousBaseVertex { vertex: u64, face: usize, count: usize },
    #[error("dart {dart} does not leave vertex {vertex} along face {face}")]
    BadDartQualifier { dart: u64, vertex: u64, face: usize },
    #[error("no face with index {face}")]
    NoSuchFace { face: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("division by zero")]
    DivisionByZero,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("lattice dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("relation vector {index} is not central: pairs to {value} with generator {generator}")]
    NotCentral { index: usize, generator: usize, value: i64 },
    #[error("character of relation {index} is not a unit monomial: {value}")]
    NotUnit { index: usize, value: String },
    #[error("relations and complement do not form a basis of the lattice (rank {rank}, dimension {dim})")]
    NotABasis { rank: usize, dim: usize },
    #[error("lattice vector {vector:?} is not an integral combination of relations and complement")]
    NotDecomposable { vector: Vec<i64> },
    #[error("complement basis is not symplectic: <{i}, {j}> = {value}")]
    NotSymplectic { i: usize, j: usize, value: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpinError {
    #[error("twisted refinement does not descend: {detail}")]
    DescentFailure { detail: String },
    #[error("loop sign recursion disagrees with direct evaluation at l_{k} on face {face}")]
    LoopSignMismatch { face: usize, k: usize },
    #[error("symplectic quotient is not unimodular (elementary divisors {divisors:?})")]
    NotUnimodular { divisors: Vec<i64> },
    #[error("class has dimension {found}, refinement has dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OperatorError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spin(#[from] SpinError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("specialization a -> q^(1/2) differs from R on face {face}: {terms:?}")]
    SpecializationMismatch { face: usize, terms: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WaveError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error("representation choice invalid: {0}")]
    BadChoice(String),
}

/// Umbrella error for callers that mix modules (CLI, FFI).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Spin(#[from] SpinError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Wave(#[from] WaveError),
}
