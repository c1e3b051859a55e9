use crate::dataset::{ItemId, TransactionDb, TransactionId};
use crate::error::{Error, Result};
use crate::metrics::ScanLedger;

use super::SupportCount;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct L1Entry {
    pub support: SupportCount,
    /// Strictly increasing ids of the transactions containing the item.
    pub tids: Vec<TransactionId>,
}

/// Frequent single items with their support and TID lists. Items below the
/// threshold are dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct L1Index {
    entries: Vec<Option<L1Entry>>,
    len: usize,
}

impl L1Index {
    pub fn get(&self, item: ItemId) -> Option<&L1Entry> {
        self.entries.get(item.index()).and_then(Option::as_ref)
    }

    pub fn contains(&self, item: ItemId) -> bool {
        self.get(item).is_some()
    }

    pub fn support(&self, item: ItemId) -> Option<SupportCount> {
        self.get(item).map(|e| e.support)
    }

    /// Entries in ascending item order.
    pub fn iter(&self) -> impl Iterator<Item = (ItemId, &L1Entry)> {
        self.entries
            .iter()
            .enumerate()
            .filter_map(|(i, e)| e.as_ref().map(|e| (ItemId::new(i), e)))
    }

    pub fn items(&self) -> Vec<ItemId> {
        self.iter().map(|(item, _)| item).collect()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

/// One pass over `db` collecting support and TID lists per item.
///
/// The ledger is charged `|db|` examinations for every distinct item, the
/// same per-candidate accounting used at higher levels.
pub fn compute_l1(db: &TransactionDb, min_support: SupportCount, ledger: &mut ScanLedger) -> Result<L1Index> {
    if min_support < 1 {
        return Err(Error::Config("min_support must be at least 1".into()));
    }
    let mut tids: Vec<Vec<TransactionId>> = vec![Vec::new(); db.num_items()];
    for (i, t) in db.transactions().iter().enumerate() {
        for item in t.items() {
            tids[item.index()].push(TransactionId::new(i));
        }
    }
    let distinct = tids.iter().filter(|t| !t.is_empty()).count();
    ledger.record(1, (db.len() * distinct) as u64);

    let entries: Vec<Option<L1Entry>> = tids
        .into_iter()
        .map(|tids| {
            (tids.len() >= min_support).then(|| L1Entry {
                support: tids.len(),
                tids,
            })
        })
        .collect();
    let len = entries.iter().flatten().count();
    Ok(L1Index { entries, len })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{worked_example, tids};

    #[test]
    fn worked_example_frequent_items() {
        let db = worked_example();
        let mut ledger = ScanLedger::default();
        let l1 = compute_l1(&db, 3, &mut ledger).unwrap();
        let id = |s| db.item_id(s).unwrap();
        let expect = [
            ("I1", 6, tids(&[1, 4, 5, 7, 8, 9])),
            ("I2", 7, tids(&[1, 2, 3, 4, 6, 8, 9])),
            ("I3", 5, tids(&[5, 6, 7, 8, 9])),
            ("I4", 3, tids(&[2, 3, 4])),
        ];
        for (token, support, list) in expect {
            let e = l1.get(id(token)).unwrap();
            assert_eq!(e.support, support, "{token}");
            assert_eq!(e.tids, list, "{token}");
        }
        assert!(!l1.contains(id("I5")));
        assert_eq!(l1.len(), 4);
        assert_eq!(ledger.level(1), 45);
    }

    #[test]
    fn empty_db() {
        let mut ledger = ScanLedger::default();
        let l1 = compute_l1(&TransactionDb::default(), 1, &mut ledger).unwrap();
        assert!(l1.is_empty());
        assert_eq!(ledger.total(), 0);
    }

    #[test]
    fn threshold_equal_to_db_size_keeps_ubiquitous_items() {
        let db = TransactionDb::from_token_lines([vec!["a", "b"], vec!["a", "c"], vec!["a"]]);
        let l1 = compute_l1(&db, 3, &mut ScanLedger::default()).unwrap();
        assert_eq!(l1.items(), vec![db.item_id("a").unwrap()]);
    }

    #[test]
    fn zero_threshold_rejected() {
        assert!(matches!(
            compute_l1(&worked_example(), 0, &mut ScanLedger::default()),
            Err(Error::Config(_))
        ));
    }
}
