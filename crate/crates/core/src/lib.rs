//! Frequent itemset and association rule mining.
//!
//! The level-wise search comes in two counting variants that return the
//! same itemsets: `classic` counts each candidate over the whole database,
//! `improved` counts it only over the transactions that contain its
//! least-supported item. Every run carries a [`ScanLedger`] with the number
//! of transactions examined per level, which is what makes the two variants
//! comparable independently of the machine.
//!
//! ```
//! use tidapriori::{load_transactions, run_apriori, CandidateStrategy, Delimiter, MinSupport, MiningOptions, Variant};
//!
//! let db = load_transactions("a b\na c\na b c\n".as_bytes(), Delimiter::Whitespace).unwrap();
//! let opts = MiningOptions::new(MinSupport::Count(2), Variant::Improved, CandidateStrategy::Join);
//! let result = run_apriori(&db, &opts).unwrap();
//! assert_eq!(result.num_itemsets(), 5);
//! ```

pub mod dataset;
pub mod error;
pub mod metrics;
pub mod mining;
pub mod rules;

#[cfg(test)]
mod testutil;

pub use dataset::{
    generate_synthetic, load_transactions, write_transactions, Delimiter, GeneratorConfig, ItemId, Transaction,
    TransactionDb, TransactionId,
};
pub use error::{Error, Result};
pub use metrics::{
    compare_variants, mean_rate, parse_report, reduction_rate, render_bench_table, render_report, CompareOptions,
    ComparisonReport, Percent, ReportFormat, ReportRecord, RunTiming, ScanLedger,
};
pub use mining::{
    run_apriori, CandidateStrategy, FrequentItemset, Itemset, L1Index, Level, MinSupport, MiningOptions, MiningResult,
    SupportCount, Variant,
};
pub use rules::{generate_rules, AssociationRule, MinConfidence};
