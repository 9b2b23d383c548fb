use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{n} is not a prime power (factorization: {factorization})")]
    NotPrimePower { n: u64, factorization: String },

    #[error("field order {0} exceeds the supported maximum of 2^16")]
    FieldTooLarge(u64),

    #[error("polynomial {0} is not irreducible over Z_{1}")]
    ReducibleModulus(String, u64),

    #[error("division by zero in GF({0})")]
    DivisionByZero(u64),

    #[error("the zero element has no multiplicative order")]
    ZeroOrder,

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("entry is not in label form: {0}")]
    NotLabelForm(String),

    #[error("not a general Schur matrix: {0}")]
    NotGeneralSchur(String),

    #[error("not a reduced general Schur matrix: {0}")]
    NotReduced(String),

    #[error("assignments must bind x_1..x_r consecutively: {0}")]
    NonConsecutiveAssignment(String),

    #[error("shape {0} is not a rectangle (a^n) with a >= n")]
    NotRectangle(String),

    #[error("pivot elimination left a nonzero entry outside the pivot cross at {0}")]
    PivotResidue(String),

    #[error("budget exceeded: needs {needed} determinant evaluations, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("conditioning event has zero probability")]
    EmptyConditioningEvent,

    #[error("value-distribution formula requires a nonzero target")]
    ZeroTarget,

    #[error("insufficient interpolation points for residue class {class} mod {modulus}: have {have}, need {need}")]
    InsufficientPoints {
        class: u64,
        modulus: u64,
        have: usize,
        need: usize,
    },

    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
