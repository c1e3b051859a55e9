//! Scan accounting, timing, reduction-rate arithmetic and comparison reports.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::dataset::TransactionDb;
use crate::error::{Error, Result};
use crate::mining::{run_apriori, CandidateStrategy, MinSupport, MiningOptions, MiningResult, SupportCount, Variant};

/// Transactions examined while counting, per level.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanLedger {
    per_level: BTreeMap<usize, u64>,
    total: u64,
}

impl ScanLedger {
    /// Adds `examined` to level `k`. Recording zero still creates the level.
    pub fn record(&mut self, k: usize, examined: u64) {
        *self.per_level.entry(k).or_insert(0) += examined;
        self.total += examined;
    }

    pub fn level(&self, k: usize) -> u64 {
        self.per_level.get(&k).copied().unwrap_or(0)
    }

    pub fn per_level(&self) -> &BTreeMap<usize, u64> {
        &self.per_level
    }

    pub fn total(&self) -> u64 {
        self.total
    }
}

/// A percentage kept at full precision; `Display` rounds to two decimals.
#[derive(Copy, Clone, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Percent(pub f64);

impl Percent {
    pub fn value(self) -> f64 {
        self.0
    }

    /// Rounded to two decimals, halves away from zero.
    pub fn rounded(self) -> f64 {
        (self.0 * 100.0).round() / 100.0
    }
}

impl fmt::Display for Percent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.2}", self.rounded())
    }
}

/// `(original - improved) / original * 100`. Negative when `improved` is slower.
pub fn reduction_rate(original_seconds: f64, improved_seconds: f64) -> Result<Percent> {
    if !(original_seconds.is_finite() && original_seconds > 0.0) {
        return Err(Error::Domain(format!(
            "original time must be positive, got {original_seconds}"
        )));
    }
    if !(improved_seconds.is_finite() && improved_seconds >= 0.0) {
        return Err(Error::Domain(format!(
            "improved time must be non-negative, got {improved_seconds}"
        )));
    }
    Ok(Percent((original_seconds - improved_seconds) / original_seconds * 100.0))
}

pub fn mean_rate(rates: &[Percent]) -> Result<Percent> {
    if rates.is_empty() {
        return Err(Error::Domain("mean of an empty sequence of rates".into()));
    }
    Ok(Percent(rates.iter().map(|r| r.0).sum::<f64>() / rates.len() as f64))
}

/// Median of `samples`; the mean of the middle pair for even counts.
pub fn median(samples: &[f64]) -> Option<f64> {
    if samples.is_empty() {
        return None;
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    Some(if sorted.len() % 2 == 0 {
        (sorted[mid - 1] + sorted[mid]) / 2.0
    } else {
        sorted[mid]
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunTiming {
    /// Median wall-clock seconds over the repetitions.
    pub wall_seconds: f64,
    pub variant: Variant,
    pub dataset: String,
    pub min_support: SupportCount,
}

/// One side of a comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct VariantRun {
    pub variant: Variant,
    pub ledger: ScanLedger,
    pub timing: Option<RunTiming>,
}

/// Two runs over the same database, threshold and candidate strategy.
#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonReport {
    dataset: String,
    num_transactions: usize,
    min_support: SupportCount,
    strategy: CandidateStrategy,
    baseline: VariantRun,
    contender: VariantRun,
}

impl ComparisonReport {
    /// Fails unless both results share the threshold and candidate strategy.
    pub fn from_results(
        dataset: impl Into<String>,
        num_transactions: usize,
        baseline: (&MiningResult, Option<f64>),
        contender: (&MiningResult, Option<f64>),
    ) -> Result<Self> {
        let (b, c) = (baseline.0, contender.0);
        if b.min_support() != c.min_support() || b.strategy() != c.strategy() {
            return Err(Error::Contract(format!(
                "runs are not comparable: min_support {} vs {}, candidates {} vs {}",
                b.min_support(),
                c.min_support(),
                b.strategy(),
                c.strategy()
            )));
        }
        let dataset = dataset.into();
        let side = |r: &MiningResult, secs: Option<f64>| VariantRun {
            variant: r.variant(),
            ledger: r.ledger().clone(),
            timing: secs.map(|wall_seconds| RunTiming {
                wall_seconds,
                variant: r.variant(),
                dataset: dataset.clone(),
                min_support: r.min_support(),
            }),
        };
        Ok(ComparisonReport {
            baseline: side(b, baseline.1),
            contender: side(c, contender.1),
            dataset: dataset.clone(),
            num_transactions,
            min_support: b.min_support(),
            strategy: b.strategy(),
        })
    }

    pub fn dataset(&self) -> &str {
        &self.dataset
    }

    pub fn num_transactions(&self) -> usize {
        self.num_transactions
    }

    pub fn min_support(&self) -> SupportCount {
        self.min_support
    }

    pub fn strategy(&self) -> CandidateStrategy {
        self.strategy
    }

    pub fn baseline(&self) -> &VariantRun {
        &self.baseline
    }

    pub fn contender(&self) -> &VariantRun {
        &self.contender
    }

    /// Wall-clock reduction of the contender relative to the baseline; `None`
    /// when the runs were not timed or the baseline took no measurable time.
    pub fn reduction_rate(&self) -> Option<Percent> {
        let b = self.baseline.timing.as_ref()?;
        let c = self.contender.timing.as_ref()?;
        reduction_rate(b.wall_seconds, c.wall_seconds).ok()
    }

    /// Reduction in total transactions scanned; machine independent.
    pub fn scan_reduction(&self) -> Option<Percent> {
        let b = self.baseline.ledger.total();
        (b > 0).then(|| {
            let c = self.contender.ledger.total();
            Percent((b as f64 - c as f64) / b as f64 * 100.0)
        })
    }

    fn levels(&self) -> Vec<usize> {
        let mut ks: Vec<usize> = self
            .baseline
            .ledger
            .per_level()
            .keys()
            .chain(self.contender.ledger.per_level().keys())
            .copied()
            .collect();
        ks.sort_unstable();
        ks.dedup();
        ks
    }

    pub fn to_record(&self) -> ReportRecord {
        let variant = |r: &VariantRun| VariantRecord {
            variant: r.variant,
            per_level_scans: r.ledger.per_level().clone(),
            total_scans: r.ledger.total(),
            wall_seconds: r.timing.as_ref().map(|t| t.wall_seconds),
        };
        ReportRecord {
            schema_version: REPORT_SCHEMA_VERSION,
            dataset: self.dataset.clone(),
            num_transactions: self.num_transactions,
            min_support: self.min_support,
            candidate_strategy: self.strategy,
            variants: vec![variant(&self.baseline), variant(&self.contender)],
            reduction_rate_percent: self.reduction_rate().map(Percent::value),
            scan_reduction_percent: self.scan_reduction().map(Percent::value),
        }
    }
}

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Machine-readable form of a [`ComparisonReport`], one JSON object per line.
/// Variants are listed baseline first. Percentages are at full precision.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub schema_version: u32,
    pub dataset: String,
    pub num_transactions: usize,
    pub min_support: SupportCount,
    pub candidate_strategy: CandidateStrategy,
    pub variants: Vec<VariantRecord>,
    pub reduction_rate_percent: Option<f64>,
    pub scan_reduction_percent: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VariantRecord {
    pub variant: Variant,
    pub per_level_scans: BTreeMap<usize, u64>,
    pub total_scans: u64,
    pub wall_seconds: Option<f64>,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub enum ReportFormat {
    #[default]
    Human,
    Machine,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "human" => Ok(ReportFormat::Human),
            "machine" => Ok(ReportFormat::Machine),
            other => Err(Error::Config(format!("unknown report format '{other}'"))),
        }
    }
}

pub fn render_report(report: &ComparisonReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Machine => {
            let mut line = serde_json::to_string(&report.to_record()).expect("report records always serialize");
            line.push('\n');
            line
        }
        ReportFormat::Human => render_human(report),
    }
}

pub fn parse_report(line: &str) -> Result<ReportRecord> {
    Ok(serde_json::from_str(line.trim_end())?)
}

const LABEL_WIDTH: usize = 22;

fn render_human(report: &ComparisonReport) -> String {
    let (b, c) = (&report.baseline, &report.contender);
    let mut out = String::new();
    let mut row = |label: &str, value: String| {
        let _ = writeln!(out, "{label:<LABEL_WIDTH$}{value}");
    };
    row("dataset", report.dataset.clone());
    row("transactions", report.num_transactions.to_string());
    row("min_support", report.min_support.to_string());
    row("candidates", report.strategy.to_string());
    row("", String::new());
    row("transactions scanned", format!("{} / {}", b.variant, c.variant));
    for k in report.levels() {
        row(&format!("{k}-itemset"), format!("{} / {}", b.ledger.level(k), c.ledger.level(k)));
    }
    row("sum", format!("{} / {}", b.ledger.total(), c.ledger.total()));
    row(
        "scan reduction",
        report.scan_reduction().map_or_else(|| "n/a".to_owned(), |p| format!("{p}%")),
    );
    row("", String::new());
    match (&b.timing, &c.timing) {
        (Some(bt), Some(ct)) => {
            row("wall seconds", format!("{:.6} / {:.6}", bt.wall_seconds, ct.wall_seconds));
            row(
                "time reduction rate",
                report.reduction_rate().map_or_else(|| "n/a".to_owned(), |p| format!("{p}%")),
            );
        }
        _ => {
            row("wall seconds", "not measured".to_owned());
            row("time reduction rate", "n/a".to_owned());
        }
    }
    out
}

/// Renders several reports as one table: a row per dataset with both median
/// times and the reduction rate, then the mean rate.
pub fn render_bench_table(reports: &[ComparisonReport], format: ReportFormat) -> String {
    let rates: Vec<Percent> = reports.iter().filter_map(ComparisonReport::reduction_rate).collect();
    let mean = if rates.len() == reports.len() {
        mean_rate(&rates).ok()
    } else {
        None
    };
    match format {
        ReportFormat::Machine => {
            let mut out: String = reports.iter().map(|r| render_report(r, format)).collect();
            let summary = serde_json::json!({
                "schema_version": REPORT_SCHEMA_VERSION,
                "mean_reduction_rate_percent": mean.map(Percent::value),
            });
            out.push_str(&summary.to_string());
            out.push('\n');
            out
        }
        ReportFormat::Human => {
            let mut out = String::new();
            let (b, c) = reports
                .first()
                .map_or((Variant::Classic, Variant::Improved), |r| (r.baseline.variant, r.contender.variant));
            let _ = writeln!(
                out,
                "{:<44} {:>12} {:>14} {:>14} {:>14}",
                "dataset",
                "transactions",
                format!("{b} (s)"),
                format!("{c} (s)"),
                "reduction (%)"
            );
            let secs = |r: &VariantRun| r.timing.as_ref().map_or_else(|| "n/a".to_owned(), |t| format!("{:.6}", t.wall_seconds));
            for r in reports {
                let _ = writeln!(
                    out,
                    "{:<44} {:>12} {:>14} {:>14} {:>14}",
                    r.dataset,
                    r.num_transactions,
                    secs(&r.baseline),
                    secs(&r.contender),
                    r.reduction_rate().map_or_else(|| "n/a".to_owned(), |p| p.to_string())
                );
            }
            let _ = writeln!(
                out,
                "{:<44} {:>12} {:>14} {:>14} {:>14}",
                "mean",
                "",
                "",
                "",
                mean.map_or_else(|| "n/a".to_owned(), |p| p.to_string())
            );
            out
        }
    }
}

/// Settings for [`compare_variants`].
#[derive(Clone, Debug)]
pub struct CompareOptions {
    pub min_support: MinSupport,
    pub strategy: CandidateStrategy,
    pub baseline: Variant,
    pub contender: Variant,
    /// Timed repetitions per variant; the median is reported.
    pub repetitions: usize,
    /// When false nothing is timed and reports carry no wall-clock fields.
    pub timed: bool,
    pub threads: usize,
}

impl CompareOptions {
    pub const DEFAULT_REPETITIONS: usize = 5;

    pub fn new(min_support: MinSupport, strategy: CandidateStrategy) -> Self {
        CompareOptions {
            min_support,
            strategy,
            baseline: Variant::Classic,
            contender: Variant::Improved,
            repetitions: Self::DEFAULT_REPETITIONS,
            timed: true,
            threads: 1,
        }
    }
}

/// Mines `db` once per repetition and returns the result with its median
/// wall time (or `None` when untimed).
pub fn timed_run(db: &TransactionDb, options: &MiningOptions, repetitions: usize, timed: bool) -> Result<(MiningResult, Option<f64>)> {
    if repetitions == 0 {
        return Err(Error::Config("repetitions must be at least 1".into()));
    }
    let runs = if timed { repetitions } else { 1 };
    let mut samples = Vec::with_capacity(runs);
    let mut result = None;
    for _ in 0..runs {
        let start = Instant::now();
        let r = run_apriori(db, options)?;
        samples.push(start.elapsed().as_secs_f64());
        debug_assert!(result.as_ref().is_none_or(|prev| prev == &r));
        result = Some(r);
    }
    Ok((result.expect("at least one run"), if timed { median(&samples) } else { None }))
}

/// Runs the baseline and contender variants on `db` and reports both. When
/// both sides name the same variant it is measured once and mirrored.
pub fn compare_variants(db: &TransactionDb, dataset: &str, options: &CompareOptions) -> Result<ComparisonReport> {
    let mining = |variant| MiningOptions::new(options.min_support, variant, options.strategy).with_threads(options.threads);
    let baseline = timed_run(db, &mining(options.baseline), options.repetitions, options.timed)?;
    let contender = if options.contender == options.baseline {
        baseline.clone()
    } else {
        timed_run(db, &mining(options.contender), options.repetitions, options.timed)?
    };
    ComparisonReport::from_results(dataset, db.len(), (&baseline.0, baseline.1), (&contender.0, contender.1))
}
