use std::fmt::Write as _;
use std::fs::File;
use std::io::BufReader;

use serde::Serialize;
use tidapriori::{
    compare_variants, generate_rules, generate_synthetic, load_transactions, render_bench_table, render_report,
    run_apriori, CandidateStrategy, CompareOptions, Error, GeneratorConfig, ItemId, MinSupport, MiningOptions,
    MiningResult, ReportFormat, TransactionDb, Variant,
};

use crate::args::{CliConfig, InputSource, Mode};

const SCHEMA_VERSION: u32 = 1;

struct Dataset {
    label: String,
    db: TransactionDb,
}

fn generated_label(g: &GeneratorConfig) -> String {
    format!(
        "synthetic(n={},items={},avg_len={},seed={})",
        g.num_transactions, g.num_items, g.avg_transaction_len, g.seed
    )
}

/// A failed command: usage problems exit with 2, everything else with 1.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        match err {
            Error::Config(msg) => Failure::Usage(msg),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

fn load_datasets(config: &CliConfig) -> Result<Vec<Dataset>, Failure> {
    match &config.source {
        InputSource::Files(paths) => paths
            .iter()
            .map(|path| {
                let file =
                    File::open(path).map_err(|e| Failure::Runtime(format!("cannot open {}: {e}", path.display())))?;
                Ok(Dataset {
                    label: path.display().to_string(),
                    db: load_transactions(BufReader::new(file), config.delimiter)
                        .map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))?,
                })
            })
            .collect(),
        InputSource::Generated(configs) => configs
            .iter()
            .map(|g| {
                Ok(Dataset {
                    label: generated_label(g),
                    db: generate_synthetic(g)?,
                })
            })
            .collect(),
    }
}

/// Runs the command and returns what goes to standard output.
pub fn execute(config: &CliConfig) -> Result<String, Failure> {
    let datasets = load_datasets(config)?;
    let out = match config.mode {
        Mode::Mine => cmd_mine(config, &datasets[0]),
        Mode::Rules => cmd_rules(config, &datasets[0]),
        Mode::Compare => cmd_compare(config, &datasets[0]),
        Mode::Bench => cmd_bench(config, &datasets),
    };
    Ok(out?)
}

fn mine(config: &CliConfig, data: &Dataset) -> Result<MiningResult, Error> {
    let options =
        MiningOptions::new(config.min_supports[0], config.variant, config.strategy).with_threads(config.threads);
    run_apriori(&data.db, &options)
}

fn tokens(db: &TransactionDb, items: &[ItemId]) -> Vec<String> {
    db.tokens_of(items).into_iter().map(str::to_owned).collect()
}

#[derive(Serialize)]
struct MineRecord<'a> {
    schema_version: u32,
    dataset: &'a str,
    num_transactions: usize,
    min_support: usize,
    variant: Variant,
    candidate_strategy: CandidateStrategy,
    levels: Vec<LevelRecord>,
    per_level_scans: &'a std::collections::BTreeMap<usize, u64>,
    total_scans: u64,
}

#[derive(Serialize)]
struct LevelRecord {
    k: usize,
    itemsets: Vec<ItemsetRecord>,
}

#[derive(Serialize)]
struct ItemsetRecord {
    items: Vec<String>,
    support: usize,
}

fn ledger_line(result: &MiningResult) -> String {
    let mut line = String::from("transactions scanned:");
    for (k, n) in result.ledger().per_level() {
        let _ = write!(line, " {k}-itemset {n},");
    }
    let _ = write!(line, " sum {}", result.ledger().total());
    line
}

fn header(config: &CliConfig, data: &Dataset, result: &MiningResult) -> String {
    format!(
        "{} ({} transactions), min_support {}, variant {}, candidates {}\n",
        data.label,
        data.db.len(),
        result.min_support(),
        config.variant,
        config.strategy
    )
}

fn cmd_mine(config: &CliConfig, data: &Dataset) -> Result<String, Error> {
    let result = mine(config, data)?;
    let db = &data.db;
    match config.format {
        ReportFormat::Machine => {
            let record = MineRecord {
                schema_version: SCHEMA_VERSION,
                dataset: &data.label,
                num_transactions: db.len(),
                min_support: result.min_support(),
                variant: result.variant(),
                candidate_strategy: result.strategy(),
                levels: result
                    .levels()
                    .iter()
                    .map(|l| LevelRecord {
                        k: l.k,
                        itemsets: l
                            .itemsets
                            .iter()
                            .map(|f| ItemsetRecord {
                                items: tokens(db, f.itemset.items()),
                                support: f.support,
                            })
                            .collect(),
                    })
                    .collect(),
                per_level_scans: result.ledger().per_level(),
                total_scans: result.ledger().total(),
            };
            Ok(serde_json::to_string(&record).expect("serializable") + "\n")
        }
        ReportFormat::Human => {
            let mut out = header(config, data, &result);
            for level in result.levels() {
                let _ = writeln!(out, "L{} ({} itemsets)", level.k, level.itemsets.len());
                for f in &level.itemsets {
                    let _ = writeln!(out, "  {{{}}}  support {}", tokens(db, f.itemset.items()).join(", "), f.support);
                }
            }
            let _ = writeln!(out, "{} frequent itemsets", result.num_itemsets());
            let _ = writeln!(out, "{}", ledger_line(&result));
            Ok(out)
        }
    }
}

#[derive(Serialize)]
struct RulesRecord<'a> {
    schema_version: u32,
    dataset: &'a str,
    num_transactions: usize,
    min_support: usize,
    min_confidence: f64,
    rules: Vec<RuleRecord>,
}

#[derive(Serialize)]
struct RuleRecord {
    antecedent: Vec<String>,
    consequent: Vec<String>,
    support: usize,
    antecedent_support: usize,
    confidence: f64,
}

fn cmd_rules(config: &CliConfig, data: &Dataset) -> Result<String, Error> {
    let min_confidence = config
        .min_confidence
        .ok_or_else(|| Error::Config("rules needs --min-confidence".into()))?;
    let result = mine(config, data)?;
    let rules = generate_rules(&result, min_confidence)?;
    let db = &data.db;
    match config.format {
        ReportFormat::Machine => {
            let record = RulesRecord {
                schema_version: SCHEMA_VERSION,
                dataset: &data.label,
                num_transactions: db.len(),
                min_support: result.min_support(),
                min_confidence: min_confidence.as_f64(),
                rules: rules
                    .iter()
                    .map(|r| RuleRecord {
                        antecedent: tokens(db, r.antecedent.items()),
                        consequent: tokens(db, r.consequent.items()),
                        support: r.support,
                        antecedent_support: r.antecedent_support,
                        confidence: r.confidence,
                    })
                    .collect(),
            };
            Ok(serde_json::to_string(&record).expect("serializable") + "\n")
        }
        ReportFormat::Human => {
            let mut out = header(config, data, &result);
            for r in &rules {
                let _ = writeln!(
                    out,
                    "{} => {} (support {}, confidence {:.2})",
                    tokens(db, r.antecedent.items()).join(", "),
                    tokens(db, r.consequent.items()).join(", "),
                    r.support,
                    r.confidence
                );
            }
            let _ = writeln!(out, "{} rules", rules.len());
            Ok(out)
        }
    }
}

fn compare_options(config: &CliConfig, min_support: MinSupport) -> CompareOptions {
    let mut options = CompareOptions::new(min_support, config.strategy);
    options.contender = config.variant;
    options.repetitions = config.repetitions;
    options.timed = config.timed;
    options.threads = config.threads;
    options
}

fn cmd_compare(config: &CliConfig, data: &Dataset) -> Result<String, Error> {
    let mut out = String::new();
    for (i, &min_support) in config.min_supports.iter().enumerate() {
        let report = compare_variants(&data.db, &data.label, &compare_options(config, min_support))?;
        if i > 0 && config.format == ReportFormat::Human {
            out.push('\n');
        }
        out.push_str(&render_report(&report, config.format));
    }
    Ok(out)
}

fn cmd_bench(config: &CliConfig, datasets: &[Dataset]) -> Result<String, Error> {
    let options = compare_options(config, config.min_supports[0]);
    let reports = datasets
        .iter()
        .map(|d| compare_variants(&d.db, &d.label, &options))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(render_bench_table(&reports, config.format))
}
