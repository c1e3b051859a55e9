//! Transaction databases: ingestion from delimited text, serialization back
//! to text, and a seeded synthetic generator with skewed item popularity.

use std::collections::HashMap;
use std::fmt;
use std::io::{BufRead, Write};

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Geometric};

use crate::error::{Error, Result};

/// Dense index into a database's intern table, assigned in first-seen order.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ItemId(u32);

impl ItemId {
    pub fn new(index: usize) -> Self {
        ItemId(u32::try_from(index).expect("item id overflows u32"))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ItemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// 0-based position of a transaction in its database (input line order).
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TransactionId(u32);

impl TransactionId {
    pub fn new(index: usize) -> Self {
        TransactionId(u32::try_from(index).expect("transaction id overflows u32"))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for TransactionId {
    /// Renders 1-based, the way transaction tables are usually labelled (T1, T2, ...).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{}", self.0 + 1)
    }
}

/// A non-empty set of items, stored as strictly increasing ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Transaction {
    items: Vec<ItemId>,
}

impl Transaction {
    pub fn items(&self) -> &[ItemId] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn contains(&self, item: ItemId) -> bool {
        self.items.binary_search(&item).is_ok()
    }

    /// True when every id of `needle` (sorted, strictly increasing) is in
    /// this transaction. Linear merge of the two sorted sequences.
    pub fn contains_all(&self, needle: &[ItemId]) -> bool {
        if needle.len() > self.items.len() {
            return false;
        }
        let mut hay = self.items.iter();
        'outer: for want in needle {
            for have in hay.by_ref() {
                match have.cmp(want) {
                    std::cmp::Ordering::Less => continue,
                    std::cmp::Ordering::Equal => continue 'outer,
                    std::cmp::Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }
}

/// How tokens are separated within a line.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub enum Delimiter {
    #[default]
    Whitespace,
    /// Comma separated; surrounding whitespace of each token is trimmed.
    Comma,
}

impl Delimiter {
    fn split<'a>(self, line: &'a str) -> Box<dyn Iterator<Item = &'a str> + 'a> {
        match self {
            Delimiter::Whitespace => Box::new(line.split_whitespace()),
            Delimiter::Comma => Box::new(line.split(',').map(str::trim).filter(|t| !t.is_empty())),
        }
    }

    fn separator(self) -> &'static str {
        match self {
            Delimiter::Whitespace => " ",
            Delimiter::Comma => ",",
        }
    }
}

/// An immutable, interned collection of transactions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TransactionDb {
    transactions: Vec<Transaction>,
    tokens: Vec<String>,
    ids: HashMap<String, ItemId>,
}

impl TransactionDb {
    /// Builds a database from token lines; equivalent to loading a file with
    /// one transaction per element.
    pub fn from_token_lines<L, T>(lines: L) -> Self
    where
        L: IntoIterator<Item = T>,
        T: IntoIterator,
        T::Item: AsRef<str>,
    {
        let mut db = TransactionDb::default();
        for line in lines {
            db.push_tokens(line);
        }
        db
    }

    fn intern(&mut self, token: &str) -> ItemId {
        if let Some(&id) = self.ids.get(token) {
            return id;
        }
        let id = ItemId::new(self.tokens.len());
        self.tokens.push(token.to_owned());
        self.ids.insert(token.to_owned(), id);
        id
    }

    fn push_tokens<T>(&mut self, tokens: T)
    where
        T: IntoIterator,
        T::Item: AsRef<str>,
    {
        let mut items: Vec<ItemId> = tokens.into_iter().map(|t| self.intern(t.as_ref())).collect();
        items.sort_unstable();
        items.dedup();
        if !items.is_empty() {
            self.transactions.push(Transaction { items });
        }
    }

    pub fn len(&self) -> usize {
        self.transactions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transactions.is_empty()
    }

    pub fn transactions(&self) -> &[Transaction] {
        &self.transactions
    }

    pub fn transaction(&self, tid: TransactionId) -> Option<&Transaction> {
        self.transactions.get(tid.index())
    }

    /// Size of the intern table.
    pub fn num_items(&self) -> usize {
        self.tokens.len()
    }

    pub fn item_ids(&self) -> impl Iterator<Item = ItemId> + '_ {
        (0..self.tokens.len()).map(ItemId::new)
    }

    /// Original token for an interned id.
    pub fn token(&self, id: ItemId) -> Result<&str> {
        self.tokens
            .get(id.index())
            .map(String::as_str)
            .ok_or(Error::UnknownItem(id.index()))
    }

    pub fn item_id(&self, token: &str) -> Option<ItemId> {
        self.ids.get(token).copied()
    }

    /// Tokens for a sequence of ids; panics on ids foreign to this database.
    pub fn tokens_of(&self, items: &[ItemId]) -> Vec<&str> {
        items.iter().map(|&i| self.tokens[i.index()].as_str()).collect()
    }

    /// Per-item support counts indexed by `ItemId`.
    pub fn item_supports(&self) -> Vec<usize> {
        let mut counts = vec![0; self.num_items()];
        for t in &self.transactions {
            for item in t.items() {
                counts[item.index()] += 1;
            }
        }
        counts
    }
}

/// Reads one transaction per non-blank line. Tokens are interned in
/// first-seen order and duplicates within a line are collapsed.
pub fn load_transactions<R: BufRead>(mut source: R, delimiter: Delimiter) -> Result<TransactionDb> {
    let mut db = TransactionDb::default();
    let mut line = String::new();
    let mut line_no = 0;
    loop {
        line.clear();
        line_no += 1;
        let read = source
            .read_line(&mut line)
            .map_err(|source| Error::Ingest { line: line_no, source })?;
        if read == 0 {
            break;
        }
        let trimmed = line.trim_end_matches(['\n', '\r']);
        db.push_tokens(delimiter.split(trimmed));
    }
    Ok(db)
}

/// Writes `db` back out in the line format accepted by [`load_transactions`].
/// Items within a line are emitted in id order, so reloading reproduces the
/// same ids.
pub fn write_transactions<W: Write>(db: &TransactionDb, mut out: W, delimiter: Delimiter) -> std::io::Result<()> {
    for t in db.transactions() {
        let line = db.tokens_of(t.items()).join(delimiter.separator());
        writeln!(out, "{line}")?;
    }
    Ok(())
}

/// Parameters for [`generate_synthetic`].
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorConfig {
    pub num_transactions: usize,
    /// Universe size; generated tokens are `i0` (most popular) .. `i{n-1}`.
    pub num_items: usize,
    /// Mean transaction length, at least 1 and at most `num_items`.
    pub avg_transaction_len: f64,
    pub seed: u64,
    /// Zipf exponent of item popularity: item of rank `r` has weight `1 / (r + 1)^skew`.
    pub skew: f64,
}

impl GeneratorConfig {
    pub const DEFAULT_SKEW: f64 = 1.0;

    pub fn new(num_transactions: usize, num_items: usize, avg_transaction_len: f64, seed: u64) -> Self {
        GeneratorConfig {
            num_transactions,
            num_items,
            avg_transaction_len,
            seed,
            skew: Self::DEFAULT_SKEW,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.num_transactions == 0 {
            return Err(Error::Config("num_transactions must be positive".into()));
        }
        if self.num_items == 0 {
            return Err(Error::Config("num_items must be positive".into()));
        }
        if !self.avg_transaction_len.is_finite() || self.avg_transaction_len < 1.0 {
            return Err(Error::Config(format!(
                "avg_transaction_len must be at least 1, got {}",
                self.avg_transaction_len
            )));
        }
        if self.avg_transaction_len > self.num_items as f64 {
            return Err(Error::Config(format!(
                "avg_transaction_len {} exceeds num_items {}",
                self.avg_transaction_len, self.num_items
            )));
        }
        if !self.skew.is_finite() || self.skew < 0.0 {
            return Err(Error::Config(format!("skew must be a non-negative number, got {}", self.skew)));
        }
        Ok(())
    }
}

/// Generates a reproducible database.
///
/// Lengths are `1 + Geometric(1 / avg)` (mean `avg`), clamped to
/// `[1, num_items]`. Items of a transaction are drawn without replacement
/// with Zipf weights, so supports fall off with popularity rank.
pub fn generate_synthetic(config: &GeneratorConfig) -> Result<TransactionDb> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let extra_len = Geometric::new(1.0 / config.avg_transaction_len)
        .map_err(|e| Error::Config(format!("transaction length distribution: {e}")))?;
    let ranks: Vec<usize> = (0..config.num_items).collect();
    let weights: Vec<f64> = ranks.iter().map(|&r| ((r + 1) as f64).powf(-config.skew)).collect();
    let tokens: Vec<String> = ranks.iter().map(|r| format!("i{r}")).collect();

    let mut db = TransactionDb::default();
    for _ in 0..config.num_transactions {
        let len = extra_len
            .sample(&mut rng)
            .saturating_add(1)
            .min(config.num_items as u64) as usize;
        let picked = ranks
            .choose_multiple_weighted(&mut rng, len, |&r| weights[r])
            .map_err(|e| Error::Config(format!("item weights: {e}")))?;
        db.push_tokens(picked.map(|&r| tokens[r].as_str()));
    }
    Ok(db)
}
