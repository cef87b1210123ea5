use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("gene-tree vertex at line {line}, column {column} has {children} children (gene trees are binary)")]
    NonBinary {
        line: usize,
        column: usize,
        children: usize,
    },

    #[error("species-tree vertex at line {line}, column {column} has a single child")]
    UnaryVertex { line: usize, column: usize },

    #[error("input contains no trees")]
    EmptyInput,

    #[error("forest contains no trees")]
    EmptyForest,

    #[error("invalid genome name {0:?} (allowed characters: A-Z a-z 0-9 _ . -)")]
    InvalidName(String),

    #[error("genome {0:?} labels more than one species-tree leaf")]
    DuplicateSpeciesLeaf(String),

    #[error("genome {0:?} is absent from the species tree")]
    GenomeNotInSpecies(String),

    #[error("unknown genome {0:?}")]
    UnknownGenome(String),

    #[error("no internal vertex carries label {0}")]
    UnknownVertex(u32),

    #[error("vertex set is not ancestor-closed: the parent of {0} is missing")]
    NotAncestorClosed(u32),

    #[error("ground-set mismatch: {0}")]
    GroundMismatch(String),

    #[error("invalid bipartition: {0}")]
    InvalidBipartition(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("at least two genomes are required, found {0}")]
    TooFewGenomes(usize),

    #[error("{what}: size {size} exceeds the limit of {limit}")]
    LimitExceeded {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("edge ({u}, {v}) labeled {label} is not an edge of H(F)")]
    EdgeNotInGraph { u: String, v: String, label: u32 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
