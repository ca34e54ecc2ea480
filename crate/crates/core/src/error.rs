use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a permutation must have positive degree")]
    EmptyPermutation,
    #[error("degree {0} exceeds the representable maximum of 255")]
    DegreeUnrepresentable(usize),
    #[error("value {value} is outside 1..={n}")]
    ValueOutOfRange { value: usize, n: usize },
    #[error("value {0} appears more than once")]
    DuplicateValue(usize),
    #[error("value {0} does not appear")]
    MissingValue(usize),
    #[error("cycle {index} is empty")]
    EmptyCycle { index: usize },
    #[error("cycle {index} does not begin with its largest element")]
    CycleNotMaxFirst { index: usize },
    #[error("cycle {index} does not start with a larger element than the cycle before it")]
    CyclesOutOfOrder { index: usize },
    #[error("word is not a rearrangement of its support")]
    SupportMismatch,
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("rank {index} is outside [0, {n}!)")]
    RankOutOfRange { index: u64, n: usize },
    #[error("degree {n} exceeds the cap of {cap} (use the large-n override)")]
    DegreeTooLarge { n: usize, cap: usize },
    #[error("degree {0} is too large to index by rank (maximum 20)")]
    RankOverflow(usize),
    #[error("operation on an empty heap")]
    EmptyHeap,
    #[error("label {0} is not in the heap")]
    LabelNotFound(usize),
    #[error("statistic {stat} needs parameters valid for degree {n}")]
    InvalidStatParam { stat: String, n: usize },
    #[error("unknown symmetry `{0}`")]
    UnknownSymmetry(String),
    #[error("unknown statistic `{0}`")]
    UnknownStatistic(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("statistic sum overflowed 64 bits")]
    SumOverflow,
}
