use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("cover pair ({0}, {0}) relates an element to itself")]
    SelfCover(String),
    #[error("cover pair ({0}, {1}) listed twice")]
    DuplicateCover(String, String),
    #[error("cover relation contains a cycle through `{0}`")]
    CyclicCovers(String),
    #[error("empty element set")]
    Empty,
    #[error("`{0}` and `{1}` have no {2}")]
    NotALattice(String, String, &'static str),
    #[error("size {size} exceeds the cap of {cap}")]
    SizeLimit { size: usize, cap: usize },
    #[error("seed set is empty")]
    EmptySeeds,
    #[error("element index {0} out of range")]
    BadIndex(usize),
    #[error("unknown catalog entry `{0}`")]
    UnknownName(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("unknown profile `{0}`")]
    UnknownProfile(String),
    #[error("unknown theorem `{0}`")]
    UnknownTheorem(String),
    #[error("search budget of {0} nodes exhausted")]
    SearchBudgetExceeded(u64),
    #[error("blocks do not partition the elements: {0}")]
    NotAPartition(String),
    #[error("lattice is not distributive")]
    NotDistributive,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error("generator `{0}` has no assigned element")]
    UnassignedGenerator(String),
    #[error("not a congruence: {0}")]
    NotACongruence(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse_at(text: &str, offset: usize, message: impl Into<String>) -> Self {
        let before = &text[..offset.min(text.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rfind('\n').map_or(before.len(), |p| before.len() - p - 1) + 1;
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
