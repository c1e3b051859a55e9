use std::collections::BTreeMap;

use rayon::prelude::*;
use rayon::ThreadPool;

use crate::dataset::TransactionDb;
use crate::error::Result;
use crate::metrics::ScanLedger;

use super::{min_support_item, target_tids, CandidateSet, Itemset, L1Index, SupportCount, Variant};

/// Outcome of counting one candidate.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub(crate) struct Counted {
    pub support: SupportCount,
    /// Transactions examined for this candidate.
    pub scanned: u64,
}

fn count_full(candidate: &Itemset, db: &TransactionDb) -> Counted {
    let support = db
        .transactions()
        .iter()
        .filter(|t| t.contains_all(candidate.items()))
        .count();
    Counted {
        support,
        scanned: db.len() as u64,
    }
}

fn count_restricted(candidate: &Itemset, db: &TransactionDb, l1: &L1Index) -> Result<Counted> {
    let pivot = min_support_item(candidate, l1)?;
    let tids = target_tids(pivot, l1)?;
    let transactions = db.transactions();
    let support = tids
        .iter()
        .filter(|tid| transactions[tid.index()].contains_all(candidate.items()))
        .count();
    Ok(Counted {
        support,
        scanned: tids.len() as u64,
    })
}

/// Counts every candidate against the whole database. The ledger is charged
/// `|candidates| * |db|` at the candidates' level.
pub fn count_support_full(
    candidates: &CandidateSet,
    db: &TransactionDb,
    ledger: &mut ScanLedger,
) -> BTreeMap<Itemset, SupportCount> {
    let mut supports = BTreeMap::new();
    let mut scanned = 0;
    for c in &candidates.candidates {
        let counted = count_full(c, db);
        scanned += counted.scanned;
        supports.insert(c.clone(), counted.support);
    }
    ledger.record(candidates.level, scanned);
    supports
}

/// Counts `candidate` only over the TID list of its least-supported item.
/// The result equals the full-database support; the ledger is charged the
/// length of that TID list.
pub fn count_support_restricted(
    candidate: &Itemset,
    db: &TransactionDb,
    l1: &L1Index,
    ledger: &mut ScanLedger,
) -> Result<SupportCount> {
    let counted = count_restricted(candidate, db, l1)?;
    ledger.record(candidate.len(), counted.scanned);
    Ok(counted.support)
}

/// Counts a whole level, in candidate order. With a pool, candidates are
/// split across its workers; the output does not depend on the split.
pub(crate) fn count_level(
    candidates: &CandidateSet,
    db: &TransactionDb,
    l1: &L1Index,
    variant: Variant,
    pool: Option<&ThreadPool>,
) -> Result<Vec<Counted>> {
    let one = |c: &Itemset| match variant {
        Variant::Classic => Ok(count_full(c, db)),
        Variant::Improved => count_restricted(c, db, l1),
    };
    match pool {
        Some(pool) => pool.install(|| candidates.candidates.par_iter().map(one).collect()),
        None => candidates.candidates.iter().map(one).collect(),
    }
}
