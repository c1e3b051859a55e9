//! Association rules `A => F \ A` derived from frequent itemsets.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::mining::{Itemset, MiningResult, SupportCount};

/// A confidence threshold held as an exact fraction `num / den`, so that a
/// rule sitting exactly on the threshold is never misclassified by float
/// rounding.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct MinConfidence {
    num: u64,
    den: u64,
}

impl MinConfidence {
    /// Admits every rule: any confidence `s / a` with `a` below `u64::MAX`
    /// exceeds it.
    pub const MIN_POSITIVE: MinConfidence = MinConfidence { num: 1, den: u64::MAX };
    pub const ONE: MinConfidence = MinConfidence { num: 1, den: 1 };

    const MAX_FRACTION_DIGITS: usize = 18;

    pub fn from_ratio(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 || num > den {
            return Err(Error::Config(format!("min_confidence must be in (0, 1], got {num}/{den}")));
        }
        Ok(MinConfidence { num, den })
    }

    /// Converts through the shortest decimal that round-trips `value`, so
    /// `0.6` means exactly 6/10. Digits beyond the 18th decimal are dropped.
    pub fn from_f64(value: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::Config(format!("min_confidence must be in (0, 1], got {value}")));
        }
        format!("{value}").parse()
    }

    pub fn as_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Whether `rule_support / antecedent_support` meets the threshold.
    pub fn admits(self, rule_support: SupportCount, antecedent_support: SupportCount) -> bool {
        rule_support as u128 * self.den as u128 >= antecedent_support as u128 * self.num as u128
    }
}

impl FromStr for MinConfidence {
    type Err = Error;

    /// Parses a plain decimal such as `1`, `0.6` or `.75`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("min_confidence must be a decimal in (0, 1], got '{s}'"));
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if (int.is_empty() && frac.is_empty()) || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let frac = &frac[..frac.len().min(Self::MAX_FRACTION_DIGITS)];
        let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        if int > 1 {
            return Err(bad());
        }
        let den = 10u64.pow(frac.len() as u32);
        let frac_val: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        let num = int * den + frac_val;
        MinConfidence::from_ratio(num, den).map_err(|_| bad())
    }
}

impl fmt::Display for MinConfidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_f64())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AssociationRule {
    pub antecedent: Itemset,
    pub consequent: Itemset,
    /// Support of antecedent and consequent together.
    pub support: SupportCount,
    pub antecedent_support: SupportCount,
    pub confidence: f64,
}

/// Every rule `A => F \ A` over frequent itemsets `F` of size at least two and
/// non-empty proper subsets `A`, kept when its confidence meets
/// `min_confidence`. Sorted by `(|F|, F, A)`.
pub fn generate_rules(result: &MiningResult, min_confidence: MinConfidence) -> Result<Vec<AssociationRule>> {
    let supports: HashMap<&[_], SupportCount> = result
        .itemsets()
        .map(|f| (f.itemset.items(), f.support))
        .collect();

    let mut rules = Vec::new();
    for level in result.levels().iter().filter(|l| l.k >= 2) {
        if level.k >= u32::BITS as usize {
            return Err(Error::Inconsistent(format!("{}-itemsets are too large to enumerate rules for", level.k)));
        }
        for frequent in &level.itemsets {
            let items = frequent.itemset.items();
            let mut from_this = Vec::new();
            for mask in 1u32..(1 << items.len()) - 1 {
                let (mut ante, mut cons) = (Vec::new(), Vec::new());
                for (bit, &item) in items.iter().enumerate() {
                    if mask & (1 << bit) != 0 {
                        ante.push(item);
                    } else {
                        cons.push(item);
                    }
                }
                let antecedent_support = *supports.get(ante.as_slice()).ok_or_else(|| {
                    Error::Inconsistent(format!("antecedent {ante:?} of a frequent itemset has no recorded support"))
                })?;
                if !min_confidence.admits(frequent.support, antecedent_support) {
                    continue;
                }
                from_this.push(AssociationRule {
                    antecedent: Itemset::from_sorted(ante),
                    consequent: Itemset::from_sorted(cons),
                    support: frequent.support,
                    antecedent_support,
                    confidence: frequent.support as f64 / antecedent_support as f64,
                });
            }
            from_this.sort_by(|a, b| a.antecedent.cmp(&b.antecedent));
            rules.extend(from_this);
        }
    }
    Ok(rules)
}
