use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tidapriori::{
    CandidateStrategy, CompareOptions, Delimiter, GeneratorConfig, MinConfidence, MinSupport, ReportFormat, Variant,
};

#[derive(Debug, Parser)]
#[command(name = "tidapriori", version, about = "Frequent itemset and association rule mining")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mine frequent itemsets and print them with the scan ledger.
    Mine(#[command(flatten)] CommonArgs),
    /// Mine frequent itemsets and print the association rules they support.
    Rules {
        #[command(flatten)]
        common: CommonArgs,
        /// Minimum confidence, a decimal in (0, 1].
        #[arg(long)]
        min_confidence: String,
    },
    /// Run the classic variant and --variant on the same input and compare them.
    Compare {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        timing: TimingArgs,
    },
    /// Time both variants over one or more datasets.
    Bench {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        timing: TimingArgs,
    },
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Transaction file, one transaction per line.
    #[arg(long, value_name = "PATH")]
    pub input: Vec<PathBuf>,
    /// Synthetic dataset as N,ITEMS,AVGLEN.
    #[arg(long, value_name = "N,ITEMS,AVGLEN")]
    pub generate: Vec<String>,
    #[arg(long, value_enum, default_value = "whitespace")]
    pub delimiter: DelimiterArg,
    /// Absolute count (`3`) or fraction of transactions (`0.02`). `compare`
    /// accepts a comma separated sweep.
    #[arg(long, value_name = "X")]
    pub min_support: String,
    #[arg(long, value_enum, default_value = "improved")]
    pub variant: VariantArg,
    #[arg(long, value_enum, default_value = "join")]
    pub candidates: StrategyArg,
    #[arg(long, value_enum, default_value = "human")]
    pub format: FormatArg,
    /// Seed for --generate.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Worker threads for support counting; output does not depend on it.
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
}

#[derive(Debug, Args)]
pub struct TimingArgs {
    /// Timed repetitions per variant; the median is reported.
    #[arg(long, default_value_t = CompareOptions::DEFAULT_REPETITIONS)]
    pub reps: usize,
    /// Skip wall-clock measurement, leaving only the scan counts.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum DelimiterArg {
    Whitespace,
    Comma,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum VariantArg {
    Classic,
    Improved,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum StrategyArg {
    Join,
    JoinUnpruned,
    Combinations,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum FormatArg {
    Human,
    Machine,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    Mine,
    Rules,
    Compare,
    Bench,
}

#[derive(Clone, Debug, PartialEq)]
pub enum InputSource {
    Files(Vec<PathBuf>),
    Generated(Vec<GeneratorConfig>),
}

/// Validated command line.
#[derive(Clone, Debug)]
pub struct CliConfig {
    pub mode: Mode,
    pub source: InputSource,
    pub delimiter: Delimiter,
    pub min_supports: Vec<MinSupport>,
    pub min_confidence: Option<MinConfidence>,
    pub variant: Variant,
    pub strategy: CandidateStrategy,
    pub format: ReportFormat,
    pub repetitions: usize,
    pub timed: bool,
    pub threads: usize,
}

/// Bad flag values; reported as usage errors.
#[derive(Debug)]
pub struct UsageError(pub String);

/// `3` is a count, `0.25` (anything with a decimal point) a fraction.
pub fn parse_min_support(text: &str) -> Result<MinSupport, UsageError> {
    let text = text.trim();
    let bad = |why: &str| UsageError(format!("invalid --min-support '{text}': {why}"));
    if text.contains('.') {
        let f: f64 = text.parse().map_err(|_| bad("not a number"))?;
        if !(f > 0.0 && f <= 1.0) {
            return Err(bad("fractions must be in (0, 1]"));
        }
        Ok(MinSupport::Fraction(f))
    } else {
        let n: usize = text.parse().map_err(|_| bad("not a non-negative integer"))?;
        if n == 0 {
            return Err(bad("counts must be at least 1"));
        }
        Ok(MinSupport::Count(n))
    }
}

fn parse_generate(text: &str, seed: u64) -> Result<GeneratorConfig, UsageError> {
    let bad = |why: String| UsageError(format!("invalid --generate '{text}': {why}"));
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let [n, items, avg] = parts.as_slice() else {
        return Err(bad("expected N,ITEMS,AVGLEN".into()));
    };
    let config = GeneratorConfig::new(
        n.parse().map_err(|_| bad(format!("'{n}' is not a transaction count")))?,
        items.parse().map_err(|_| bad(format!("'{items}' is not an item count")))?,
        avg.parse().map_err(|_| bad(format!("'{avg}' is not a length")))?,
        seed,
    );
    config.validate().map_err(|e| bad(e.to_string()))?;
    Ok(config)
}

impl CliConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, UsageError> {
        let (mode, common, min_confidence, timing) = match cli.command {
            Command::Mine(common) => (Mode::Mine, common, None, None),
            Command::Rules { common, min_confidence } => (Mode::Rules, common, Some(min_confidence), None),
            Command::Compare { common, timing } => (Mode::Compare, common, None, Some(timing)),
            Command::Bench { common, timing } => (Mode::Bench, common, None, Some(timing)),
        };

        let source = match (common.input.is_empty(), common.generate.is_empty()) {
            (false, true) => InputSource::Files(common.input),
            (true, false) => InputSource::Generated(
                common
                    .generate
                    .iter()
                    .map(|g| parse_generate(g, common.seed))
                    .collect::<Result<_, _>>()?,
            ),
            _ => return Err(UsageError("give exactly one kind of input: --input or --generate".into())),
        };
        let sources = match &source {
            InputSource::Files(f) => f.len(),
            InputSource::Generated(g) => g.len(),
        };
        if mode != Mode::Bench && sources != 1 {
            return Err(UsageError("only `bench` accepts more than one dataset".into()));
        }

        let min_supports: Vec<MinSupport> = common
            .min_support
            .split(',')
            .map(parse_min_support)
            .collect::<Result<_, _>>()?;
        if mode != Mode::Compare && min_supports.len() != 1 {
            return Err(UsageError("only `compare` accepts a --min-support sweep".into()));
        }

        let min_confidence = min_confidence
            .map(|c| {
                c.trim()
                    .parse::<MinConfidence>()
                    .map_err(|_| UsageError(format!("invalid --min-confidence '{c}': expected a decimal in (0, 1]")))
            })
            .transpose()?;

        if common.threads == 0 {
            return Err(UsageError("--threads must be at least 1".into()));
        }
        let (repetitions, timed) = timing.map_or((1, false), |t| (t.reps, !t.no_timing));
        if repetitions == 0 {
            return Err(UsageError("--reps must be at least 1".into()));
        }

        Ok(CliConfig {
            mode,
            source,
            delimiter: match common.delimiter {
                DelimiterArg::Whitespace => Delimiter::Whitespace,
                DelimiterArg::Comma => Delimiter::Comma,
            },
            min_supports,
            min_confidence,
            variant: match common.variant {
                VariantArg::Classic => Variant::Classic,
                VariantArg::Improved => Variant::Improved,
            },
            strategy: match common.candidates {
                StrategyArg::Join => CandidateStrategy::Join,
                StrategyArg::JoinUnpruned => CandidateStrategy::JoinUnpruned,
                StrategyArg::Combinations => CandidateStrategy::Combinations,
            },
            format: match common.format {
                FormatArg::Human => ReportFormat::Human,
                FormatArg::Machine => ReportFormat::Machine,
            },
            repetitions,
            timed,
            threads: common.threads,
        })
    }
}
