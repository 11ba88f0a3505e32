use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("size guard: {op} refuses n = {n} (limit {limit})")]
    SizeGuard {
        op: &'static str,
        n: usize,
        limit: usize,
    },
    #[error("invalid regime: {0}")]
    InvalidRegime(String),
    #[error("degree sums differ: sum(in) = {in_sum}, sum(out) = {out_sum}")]
    DegreeSumMismatch { in_sum: usize, out_sum: usize },
    #[error("rejection budget of {budget} attempts exhausted ({accepted} accepted)")]
    BudgetExceeded { budget: u64, accepted: u64 },
    #[error("truncation budget exceeded: {terms} terms requested (limit {limit})")]
    TruncationBudget { terms: usize, limit: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("golden value mismatch for `{key}`: stored {stored}, computed {computed}")]
    GoldenMismatch {
        key: String,
        stored: String,
        computed: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
