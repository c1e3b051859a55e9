#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};
use std::fs::File;
use std::io::BufReader;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tidapriori::mining::{compute_l1, generate_candidates_combinations, generate_candidates_join, L1Index};
use tidapriori::{
    load_transactions, CandidateStrategy, Delimiter, ItemId, Itemset, MinSupport, MiningResult, ScanLedger,
    TransactionDb,
};

pub fn worked_example() -> TransactionDb {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/worked_example.txt");
    load_transactions(BufReader::new(File::open(path).unwrap()), Delimiter::Whitespace).unwrap()
}

pub fn itemset(db: &TransactionDb, tokens: &[&str]) -> Itemset {
    Itemset::new(tokens.iter().map(|t| db.item_id(t).unwrap()).collect())
}

/// Brute force: every non-empty subset of the item universe, counted by
/// direct membership tests against hashed transactions. Returns only the
/// subsets meeting `min_support`.
pub fn oracle_frequent(db: &TransactionDb, min_support: usize) -> BTreeMap<Vec<ItemId>, usize> {
    let n = db.num_items();
    assert!(n <= 16, "oracle enumerates 2^n subsets");
    let sets: Vec<HashSet<ItemId>> = db
        .transactions()
        .iter()
        .map(|t| t.items().iter().copied().collect())
        .collect();
    let mut out = BTreeMap::new();
    for mask in 1u32..(1 << n) {
        let subset: Vec<ItemId> = (0..n).filter(|b| mask & (1 << b) != 0).map(ItemId::new).collect();
        let support = oracle_support(&sets, &subset);
        if support >= min_support {
            out.insert(subset, support);
        }
    }
    out
}

pub fn oracle_support(sets: &[HashSet<ItemId>], items: &[ItemId]) -> usize {
    sets.iter().filter(|t| items.iter().all(|i| t.contains(i))).count()
}

pub fn hashed(db: &TransactionDb) -> Vec<HashSet<ItemId>> {
    db.transactions()
        .iter()
        .map(|t| t.items().iter().copied().collect())
        .collect()
}

pub fn as_map(result: &MiningResult) -> BTreeMap<Vec<ItemId>, usize> {
    result
        .itemsets()
        .map(|f| (f.itemset.items().to_vec(), f.support))
        .collect()
}

/// Small random database: up to `max_items` items, up to `max_tx` lines.
pub fn random_db(rng: &mut ChaCha8Rng, max_items: usize, max_tx: usize) -> TransactionDb {
    let items = rng.random_range(1..=max_items);
    let tx = rng.random_range(1..=max_tx);
    let density: f64 = rng.random_range(0.1..0.9);
    let lines: Vec<Vec<String>> = (0..tx)
        .map(|_| {
            (0..items)
                .filter(|_| rng.random_bool(density))
                .map(|i| format!("x{i}"))
                .collect()
        })
        .collect();
    TransactionDb::from_token_lines(lines)
}

pub fn random_min_support(rng: &mut ChaCha8Rng, db_len: usize) -> MinSupport {
    if rng.random_bool(0.3) {
        MinSupport::Fraction(rng.random_range(1..=10) as f64 / 10.0)
    } else {
        MinSupport::Count(rng.random_range(1..=db_len.max(1)))
    }
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn l1_of(db: &TransactionDb, result: &MiningResult) -> L1Index {
    compute_l1(db, result.min_support(), &mut ScanLedger::default()).unwrap()
}

/// The candidates a run counted at level `k >= 2`, regenerated from its output.
pub fn candidates_at(db: &TransactionDb, result: &MiningResult, k: usize) -> Vec<Itemset> {
    match result.strategy() {
        CandidateStrategy::Combinations => generate_candidates_combinations(&l1_of(db, result), k).unwrap().candidates,
        strategy => {
            let prev: Vec<Itemset> = result
                .level(k - 1)
                .map(|l| l.itemsets.iter().map(|f| f.itemset.clone()).collect())
                .unwrap_or_default();
            generate_candidates_join(&prev, k, strategy == CandidateStrategy::Join)
                .unwrap()
                .candidates
        }
    }
}
