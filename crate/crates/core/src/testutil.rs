use crate::dataset::{load_transactions, Delimiter, TransactionDb, TransactionId};
use crate::mining::Itemset;

pub const WORKED_EXAMPLE: &str = "I1 I2 I5\nI2 I4\nI2 I4\nI1 I2 I4\nI1 I3\nI2 I3\nI1 I3\nI1 I2 I3 I5\nI1 I2 I3\n";

pub fn worked_example() -> TransactionDb {
    load_transactions(WORKED_EXAMPLE.as_bytes(), Delimiter::Whitespace).unwrap()
}

pub fn itemset(db: &TransactionDb, tokens: &[&str]) -> Itemset {
    Itemset::new(tokens.iter().map(|t| db.item_id(t).unwrap()).collect())
}

/// 1-based labels (T1 ..) to ids.
pub fn tids(labels: &[usize]) -> Vec<TransactionId> {
    labels.iter().map(|&l| TransactionId::new(l - 1)).collect()
}
