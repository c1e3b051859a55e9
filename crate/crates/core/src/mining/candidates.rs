use std::collections::HashSet;

use itertools::Itertools;

use crate::dataset::{ItemId, TransactionId};
use crate::error::{Error, Result};

use super::{Itemset, L1Index};

/// Candidates of one size, duplicate-free and in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateSet {
    pub level: usize,
    pub candidates: Vec<Itemset>,
}

impl CandidateSet {
    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }
}

/// Classic self-join: two (k-1)-itemsets sharing their first k-2 items merge
/// into a k-itemset. With `prune`, candidates having a (k-1)-subset outside
/// `prev` are dropped.
///
/// `prev` must hold itemsets of size `level - 1` in canonical order.
pub fn generate_candidates_join(prev: &[Itemset], level: usize, prune: bool) -> Result<CandidateSet> {
    if level < 2 {
        return Err(Error::Contract(format!("candidate level must be at least 2, got {level}")));
    }
    if let Some(bad) = prev.iter().find(|s| s.len() != level - 1) {
        return Err(Error::Contract(format!(
            "join input mixes sizes: expected {}-itemsets, found a {}-itemset",
            level - 1,
            bad.len()
        )));
    }
    if !prev.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::Contract("join input is not in canonical order".into()));
    }

    let known: HashSet<&[ItemId]> = if prune {
        prev.iter().map(Itemset::items).collect()
    } else {
        HashSet::new()
    };
    let prefix_len = level - 2;
    let mut candidates = Vec::new();
    let mut start = 0;
    while start < prev.len() {
        let prefix = &prev[start].items()[..prefix_len];
        let end = start + prev[start..].iter().take_while(|s| &s.items()[..prefix_len] == prefix).count();
        for (i, a) in prev[start..end].iter().enumerate() {
            for b in &prev[start + i + 1..end] {
                let mut merged = a.items().to_vec();
                merged.push(*b.items().last().expect("non-empty"));
                if prune && !all_facets_known(&merged, &known) {
                    continue;
                }
                candidates.push(Itemset::from_sorted(merged));
            }
        }
        start = end;
    }
    Ok(CandidateSet { level, candidates })
}

// The two facets obtained by dropping one of the last two items are the join
// parents, so only the first k-2 removals need checking.
fn all_facets_known(items: &[ItemId], known: &HashSet<&[ItemId]>) -> bool {
    let mut facet = Vec::with_capacity(items.len() - 1);
    (0..items.len().saturating_sub(2)).all(|skip| {
        facet.clear();
        facet.extend(items.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &x)| x));
        known.contains(facet.as_slice())
    })
}

/// Every k-combination of the items in `l1`, in canonical order. Asking for
/// more items than `l1` holds yields an empty set.
pub fn generate_candidates_combinations(l1: &L1Index, k: usize) -> Result<CandidateSet> {
    if k < 2 {
        return Err(Error::Contract(format!("candidate level must be at least 2, got {k}")));
    }
    let candidates = l1
        .items()
        .into_iter()
        .combinations(k)
        .map(Itemset::from_sorted)
        .collect();
    Ok(CandidateSet { level: k, candidates })
}

/// The member of `candidate` with the smallest L1 support; ties go to the
/// smaller item id.
pub fn min_support_item(candidate: &Itemset, l1: &L1Index) -> Result<ItemId> {
    let mut best: Option<(usize, ItemId)> = None;
    for &item in candidate.items() {
        let support = l1
            .support(item)
            .ok_or_else(|| Error::Contract(format!("item {item} of candidate is not in L1")))?;
        if best.is_none_or(|(s, _)| support < s) {
            best = Some((support, item));
        }
    }
    Ok(best.expect("itemsets are non-empty").1)
}

pub fn target_tids(item: ItemId, l1: &L1Index) -> Result<&[TransactionId]> {
    l1.get(item)
        .map(|e| e.tids.as_slice())
        .ok_or_else(|| Error::Contract(format!("item {item} is not in L1")))
}
