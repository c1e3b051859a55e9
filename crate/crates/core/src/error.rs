use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Reading the transaction source failed.
    #[error("failed to read transactions at line {line}: {source}")]
    Ingest {
        line: usize,
        #[source]
        source: std::io::Error,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("unknown item id {0}")]
    UnknownItem(usize),

    /// A caller broke a documented precondition (mixed itemset sizes,
    /// an item missing from the L1 index, ...).
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("arithmetic domain error: {0}")]
    Domain(String),

    /// Internal consistency failure, e.g. a rule antecedent whose support is
    /// not present in the mining result.
    #[error("inconsistent mining result: {0}")]
    Inconsistent(String),

    #[error("malformed report: {0}")]
    Report(#[from] serde_json::Error),
}
