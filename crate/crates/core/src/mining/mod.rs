//! Level-wise frequent itemset mining.
//!
//! Two counting variants share one loop:
//!
//! * [`Variant::Classic`] checks every candidate against every transaction.
//! * [`Variant::Improved`] keeps, for each frequent item, the sorted list of
//!   transaction ids that contain it ([`L1Index`]). A candidate is only
//!   checked against the transactions of its least-supported member, since
//!   every transaction containing the candidate must contain that item.
//!
//! Both report the same itemsets and supports; they differ in how many
//! transactions they examine, which is recorded in a [`ScanLedger`].

mod candidates;
mod counting;
mod l1;

use std::fmt;
use std::str::FromStr;

use rayon::ThreadPool;
use serde::{Deserialize, Serialize};

use crate::dataset::{ItemId, TransactionDb};
use crate::error::{Error, Result};
use crate::metrics::ScanLedger;

pub use candidates::{
    generate_candidates_combinations, generate_candidates_join, min_support_item, target_tids, CandidateSet,
};
pub use counting::{count_support_full, count_support_restricted};
pub use l1::{compute_l1, L1Entry, L1Index};

/// Number of transactions containing an itemset.
pub type SupportCount = usize;

/// A canonical, strictly increasing, non-empty sequence of item ids.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Itemset(Vec<ItemId>);

impl Itemset {
    /// Sorts and deduplicates `items`. Panics when `items` is empty.
    pub fn new(mut items: Vec<ItemId>) -> Self {
        assert!(!items.is_empty(), "an itemset needs at least one item");
        items.sort_unstable();
        items.dedup();
        Itemset(items)
    }

    pub fn single(item: ItemId) -> Self {
        Itemset(vec![item])
    }

    pub(crate) fn from_sorted(items: Vec<ItemId>) -> Self {
        debug_assert!(!items.is_empty() && items.windows(2).all(|w| w[0] < w[1]));
        Itemset(items)
    }

    pub fn items(&self) -> &[ItemId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; itemsets are non-empty.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<ItemId> for Itemset {
    fn from(item: ItemId) -> Self {
        Itemset::single(item)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrequentItemset {
    pub itemset: Itemset,
    pub support: SupportCount,
}

/// Frequent itemsets of one size, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    pub k: usize,
    pub itemsets: Vec<FrequentItemset>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// Full database scan per candidate.
    Classic,
    /// Scan restricted to the TID list of the candidate's least-supported item.
    Improved,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CandidateStrategy {
    /// Self-join of L(k-1) with subset pruning.
    #[default]
    Join,
    /// Self-join of L(k-1) without subset pruning.
    JoinUnpruned,
    /// Every k-combination of frequent single items.
    Combinations,
}

macro_rules! keyword_enum {
    ($ty:ty, $what:literal, $($variant:path => $name:literal),+ $(,)?) => {
        impl $ty {
            pub fn as_str(self) -> &'static str {
                match self { $($variant => $name),+ }
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $ty {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($name => Ok($variant),)+
                    other => Err(Error::Config(format!(concat!("unknown ", $what, " '{}'"), other))),
                }
            }
        }
    };
}

keyword_enum!(Variant, "variant", Variant::Classic => "classic", Variant::Improved => "improved");
keyword_enum!(
    CandidateStrategy,
    "candidate strategy",
    CandidateStrategy::Join => "join",
    CandidateStrategy::JoinUnpruned => "join-unpruned",
    CandidateStrategy::Combinations => "combinations",
);

/// Minimum support, either as an absolute transaction count or as a
/// fraction of the database size.
#[derive(Copy, Clone, Debug, PartialEq)]
pub enum MinSupport {
    Count(SupportCount),
    Fraction(f64),
}

impl MinSupport {
    /// Absolute threshold for a database of `db_len` transactions.
    /// Fractions round up (`ceil(fraction * db_len)`), never below 1.
    pub fn resolve(self, db_len: usize) -> Result<SupportCount> {
        match self {
            MinSupport::Count(0) => Err(Error::Config("min_support must be at least 1".into())),
            MinSupport::Count(n) => Ok(n),
            MinSupport::Fraction(f) if f > 0.0 && f <= 1.0 => {
                let exact = f * db_len as f64;
                let nearest = exact.round();
                // 0.1 * 30 is 3.0000000000000004 in binary; that is still 3.
                let count = if (exact - nearest).abs() <= 1e-9 * nearest.max(1.0) {
                    nearest
                } else {
                    exact.ceil()
                };
                Ok((count as SupportCount).max(1))
            }
            MinSupport::Fraction(f) => Err(Error::Config(format!("min_support fraction must be in (0, 1], got {f}"))),
        }
    }
}

impl fmt::Display for MinSupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinSupport::Count(n) => write!(f, "{n}"),
            MinSupport::Fraction(x) => write!(f, "{x}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct MiningOptions {
    pub min_support: MinSupport,
    pub variant: Variant,
    pub strategy: CandidateStrategy,
    /// Worker threads for support counting; 1 counts inline.
    pub threads: usize,
}

impl MiningOptions {
    pub fn new(min_support: MinSupport, variant: Variant, strategy: CandidateStrategy) -> Self {
        MiningOptions {
            min_support,
            variant,
            strategy,
            threads: 1,
        }
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MiningResult {
    levels: Vec<Level>,
    ledger: ScanLedger,
    min_support: SupportCount,
    variant: Variant,
    strategy: CandidateStrategy,
}

impl MiningResult {
    /// Non-empty levels, contiguous from k = 1.
    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn level(&self, k: usize) -> Option<&Level> {
        k.checked_sub(1).and_then(|i| self.levels.get(i))
    }

    pub fn ledger(&self) -> &ScanLedger {
        &self.ledger
    }

    /// The absolute threshold the run used.
    pub fn min_support(&self) -> SupportCount {
        self.min_support
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn strategy(&self) -> CandidateStrategy {
        self.strategy
    }

    pub fn itemsets(&self) -> impl Iterator<Item = &FrequentItemset> {
        self.levels.iter().flat_map(|l| l.itemsets.iter())
    }

    pub fn num_itemsets(&self) -> usize {
        self.levels.iter().map(|l| l.itemsets.len()).sum()
    }

    /// Support of a frequent itemset, or `None` if it is not frequent.
    pub fn support_of(&self, itemset: &Itemset) -> Option<SupportCount> {
        let level = self.level(itemset.len())?;
        level
            .itemsets
            .binary_search_by(|f| f.itemset.cmp(itemset))
            .ok()
            .map(|i| level.itemsets[i].support)
    }
}

fn build_pool(threads: usize) -> Result<Option<ThreadPool>> {
    if threads <= 1 {
        return Ok(None);
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map(Some)
        .map_err(|e| Error::Config(format!("cannot start {threads} worker threads: {e}")))
}

/// Runs the level-wise search until a level comes back empty.
pub fn run_apriori(db: &TransactionDb, options: &MiningOptions) -> Result<MiningResult> {
    let min_support = options.min_support.resolve(db.len())?;
    let pool = build_pool(options.threads)?;
    let mut ledger = ScanLedger::default();

    let l1 = compute_l1(db, min_support, &mut ledger)?;
    let mut levels = Vec::new();
    let first: Vec<FrequentItemset> = l1
        .iter()
        .map(|(item, entry)| FrequentItemset {
            itemset: Itemset::single(item),
            support: entry.support,
        })
        .collect();
    if !first.is_empty() {
        levels.push(Level { k: 1, itemsets: first });
    }

    let mut k = 2;
    while let Some(prev) = levels.last() {
        let candidates = match options.strategy {
            CandidateStrategy::Join | CandidateStrategy::JoinUnpruned => {
                let prev: Vec<Itemset> = prev.itemsets.iter().map(|f| f.itemset.clone()).collect();
                generate_candidates_join(&prev, k, options.strategy == CandidateStrategy::Join)?
            }
            CandidateStrategy::Combinations => generate_candidates_combinations(&l1, k)?,
        };
        let counted = counting::count_level(&candidates, db, &l1, options.variant, pool.as_ref())?;
        ledger.record(k, counted.iter().map(|c| c.scanned).sum());

        let frequent: Vec<FrequentItemset> = candidates
            .candidates
            .into_iter()
            .zip(counted)
            .filter(|(_, c)| c.support >= min_support)
            .map(|(itemset, c)| FrequentItemset {
                itemset,
                support: c.support,
            })
            .collect();
        if frequent.is_empty() {
            break;
        }
        levels.push(Level { k, itemsets: frequent });
        k += 1;
    }

    Ok(MiningResult {
        levels,
        ledger,
        min_support,
        variant: options.variant,
        strategy: options.strategy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fraction_resolution() {
        assert_eq!(MinSupport::Fraction(0.1).resolve(30).unwrap(), 3);
        assert_eq!(MinSupport::Fraction(0.02).resolve(555).unwrap(), 12);
        assert_eq!(MinSupport::Fraction(1.0).resolve(9).unwrap(), 9);
        assert_eq!(MinSupport::Fraction(0.5).resolve(0).unwrap(), 1);
        assert!(MinSupport::Fraction(0.0).resolve(9).is_err());
        assert!(MinSupport::Fraction(1.5).resolve(9).is_err());
        assert!(MinSupport::Fraction(f64::NAN).resolve(9).is_err());
        assert!(MinSupport::Count(0).resolve(9).is_err());
    }

    #[test]
    fn keywords_round_trip() {
        for s in [CandidateStrategy::Join, CandidateStrategy::JoinUnpruned, CandidateStrategy::Combinations] {
            assert_eq!(s.as_str().parse::<CandidateStrategy>().unwrap(), s);
        }
        assert_eq!("improved".parse::<Variant>().unwrap(), Variant::Improved);
        assert!("fast".parse::<Variant>().is_err());
    }

    #[test]
    fn single_transaction_every_subset() {
        let db = TransactionDb::from_token_lines([vec!["A", "B"]]);
        for variant in [Variant::Classic, Variant::Improved] {
            for strategy in [CandidateStrategy::Join, CandidateStrategy::Combinations] {
                let r = run_apriori(&db, &MiningOptions::new(MinSupport::Count(1), variant, strategy)).unwrap();
                assert_eq!(r.num_itemsets(), 3);
                assert!(r.itemsets().all(|f| f.support == 1));
                assert_eq!(r.levels().len(), 2);
            }
        }
    }

    #[test]
    fn empty_database_mines_nothing() {
        let db = TransactionDb::default();
        let r = run_apriori(&db, &MiningOptions::new(MinSupport::Count(1), Variant::Improved, CandidateStrategy::Join)).unwrap();
        assert!(r.levels().is_empty());
        assert_eq!(r.ledger().total(), 0);
    }

    #[test]
    fn thread_count_does_not_change_result() {
        let db = crate::dataset::generate_synthetic(&crate::dataset::GeneratorConfig::new(300, 15, 4.0, 11)).unwrap();
        let opts = MiningOptions::new(MinSupport::Fraction(0.05), Variant::Improved, CandidateStrategy::Join);
        let one = run_apriori(&db, &opts).unwrap();
        let four = run_apriori(&db, &opts.clone().with_threads(4)).unwrap();
        assert_eq!(one, four);
    }
}
