use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cannot parse root system spec `{0}`")]
    ParseSpec(String),

    #[error("unsupported root system type {series}{rank}")]
    UnsupportedType { series: char, rank: usize },

    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("simple root label {label} out of range 1..={rank}")]
    IndexOutOfRange { label: usize, rank: usize },

    #[error("weight is not dominant")]
    NotDominant,

    #[error("weight is not dominant integral")]
    NotDominantIntegral,

    #[error("exponent {exponent} exceeds overflow bound {bound}")]
    Overflow { exponent: f64, bound: f64 },

    #[error("tolerance must be a positive finite number, got {0}")]
    ToleranceInvalid(f64),

    #[error("iteration budget of {iterations} exhausted (residual {residual:e})")]
    BudgetExceeded { iterations: usize, residual: f64 },

    #[error("potential forms do not span the dual of the cell (rank {rank} < {dim})")]
    DegeneratePotential { rank: usize, dim: usize },

    #[error("invalid potential: {0}")]
    InvalidPotential(String),

    #[error("potential lives on cell {potential:?} but cell {requested:?} was requested")]
    CellMismatch {
        potential: Vec<usize>,
        requested: Vec<usize>,
    },

    #[error("weight has nonzero coordinates on pinned simple roots {0:?}")]
    WeightOutsideCell(Vec<usize>),

    #[error("dimension {dim} exceeds the supported maximum {max}")]
    DimensionTooLarge { dim: usize, max: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
