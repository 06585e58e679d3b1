use thiserror::Error;

use crate::subset::KSubset;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("permutation {omega:?} labels no minimal circuit for k = {k}")]
    NoCircuit { omega: Vec<u32>, k: usize },

    #[error("collection is not maximal: expected {expected} members, found {found}")]
    NotMaximal { expected: usize, found: usize },

    #[error("collection is not sorted: {0} and {1} are not a sorted pair")]
    NotSorted(KSubset, KSubset),

    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("degenerate query: {0}")]
    DegenerateQuery(String),

    #[error("{w} does not lie in any facet-neighbour of the given collection")]
    NotAdjacent { w: KSubset },

    #[error("internal error: {0}")]
    Internal(String),

    #[error("incidence system of {0:?} is singular")]
    SingularIncidence(Vec<KSubset>),

    #[error("precision failure: {0}")]
    PrecisionFailure(String),

    #[error("witness search exhausted after {attempts} epsilon values: {diagnostics}")]
    WitnessSearchExhausted { attempts: u32, diagnostics: String },

    #[error("sorted vertices of the circuit are not contiguous for {w}: {detail}")]
    LemmaViolation { w: KSubset, detail: String },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("construction failure: {0}")]
    ConstructionFailure(String),

    #[error("inconsistent poset: strict cycle through {0}")]
    InconsistentPoset(KSubset),

    #[error("parse error: {0}")]
    Parse(String),
}
