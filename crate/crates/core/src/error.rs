//! Error types shared across the exact kernel.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum CoreError {
    #[error("operands live on different charts")]
    ChartMismatch,
    #[error("invalid chart: {0}")]
    BadChart(String),
    #[error("substitution produced a zero denominator")]
    DivisionByZeroDenominator,
    #[error("not divisible: remainder leading monomial {witness}")]
    NotDivisible { witness: String },
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("form is not closed: d gave {0}")]
    NotClosed(String),
    #[error("form does not vanish along the zero section: offending term {0}")]
    NotVanishingOnBase(String),
    #[error("nonzero fiber-weight-0 component: {0}")]
    ZeroWeightComponent(String),
    #[error("spinor vanishes at the evaluation point")]
    ZeroSpinorAtPoint,
    #[error("operator is not a generalized complex structure: {0}")]
    InvalidJ(String),
    #[error("L ∩ conj(L) ≠ 0: pair is degenerate")]
    DegeneratePair,
    #[error("not an almost complex structure: {0}")]
    NotAComplexStructure(String),
    #[error("image is not half-dimensional (rank {got}, expected {expected})")]
    RankDrop { got: usize, expected: usize },
    #[error("structure constants fail the Jacobi identity at triple ({0}, {1}, {2})")]
    NotJacobi(usize, usize, usize),
    #[error("bivector fails the Jacobi identity at triple ({0}, {1}, {2})")]
    NotJacobiBivector(usize, usize, usize),
    #[error("center is not a Poisson submanifold: {0}")]
    NotPoissonSubmanifold(String),
    #[error("conormal Lie algebra is not degenerate: {0}")]
    NotDegenerate(String),
    #[error("input Lie algebra is not degenerate")]
    NotDegenerateInput,
    #[error("chart index {0} out of range 1..={1}")]
    IndexOutOfRange(usize, usize),
    #[error("pushforward identity fails on chart {chart} for pair ({f}, {g})")]
    IdentityFails { chart: usize, f: String, g: String },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("wrong degree: {0}")]
    DegreeError(String),
    #[error("evaluation point has wrong length: got {0}, chart needs {1}")]
    PointLength(usize, usize),
}
