//! `mlion`: multilayer input-output network analysis from the command line.

mod run;

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "mlion", version, about = "Multilayer world input-output network analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate an input table and cache it as a binary snapshot.
    Ingest(IngestArgs),
    /// Strength, degree, HHI and communicability-centrality tables.
    Metrics(MetricsArgs),
    /// Every layer-pair table.
    Layers(CommonArgs),
    /// Average-linkage dendrogram of the layers over one layer-pair table.
    Dendrogram(DendrogramArgs),
    /// Community detection with its report and sweep trace.
    Communities(DetectArgs),
    /// Members of one community ranked by strength inside the community.
    Rank(RankArgs),
    /// Community detection on the country-level aggregate.
    Aggregate(DetectArgs),
    /// Sector similarity table from a partition file.
    Similarity(SimilarityArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Long,
    WiotWide,
    Snapshot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Emit {
    Metrics,
    Layers,
    Communities,
    Rankings,
    Dendrogram,
    Trace,
    Fields,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Centrality {
    Weighted,
    Binary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RankBy {
    In,
    Out,
    Sum,
}

#[derive(Args, Debug, Clone)]
struct InputArgs {
    /// Input file.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "long")]
    format: Format,
    /// `kind,label` file fixing country and sector order of a long CSV.
    #[arg(long)]
    labels: Option<PathBuf>,
    #[arg(long, default_value_t = 2014)]
    year: i32,
    /// Reject negative weights instead of clamping them to zero.
    #[arg(long)]
    no_clamp: bool,
    /// Remove sectors without any weight.
    #[arg(long)]
    drop_zero_layers: bool,
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    #[arg(long, env = "MLION_OUTPUT_DIR", default_value = "mlion-out")]
    output_dir: PathBuf,
    /// Output groups to write.
    #[arg(long, value_enum, value_delimiter = ',', default_values = ["metrics", "layers", "communities", "rankings", "dendrogram", "trace"])]
    emit: Vec<Emit>,
}

#[derive(Args, Debug, Clone)]
struct CommonArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
struct DetectionArgs {
    /// Number of threshold steps in the sweep.
    #[arg(long, default_value_t = 100)]
    r: usize,
    /// Smallest community shown in the membership grid.
    #[arg(long, default_value_t = 30)]
    min_size: usize,
    /// Number of leading communities tallied in the reports.
    #[arg(long, default_value_t = 2)]
    top_k: usize,
}

#[derive(Args, Debug, Clone)]
struct IngestArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
struct MetricsArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Communicability used for the centralities.
    #[arg(long, value_enum, default_value = "weighted")]
    centrality: Centrality,
}

#[derive(Args, Debug, Clone)]
struct DendrogramArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Layer-pair table to cluster, e.g. corr_w or jaccard.
    #[arg(long, default_value = "corr_w")]
    table: String,
    /// Partition file, required for the jaccard table.
    #[arg(long)]
    partition: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct DetectArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[command(flatten)]
    detection: DetectionArgs,
}

#[derive(Args, Debug, Clone)]
struct RankArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[command(flatten)]
    detection: DetectionArgs,
    /// Community id as written in partition.csv.
    #[arg(long)]
    community: usize,
    /// Partition file; detection runs when it is absent.
    #[arg(long)]
    partition: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "sum")]
    by: RankBy,
}

#[derive(Args, Debug, Clone)]
struct SimilarityArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long)]
    partition: PathBuf,
}

impl OutputArgs {
    fn emits(&self, e: Emit) -> bool {
        self.emit.contains(&e)
    }

    fn emit_names(&self) -> String {
        let set: BTreeSet<Emit> = self.emit.iter().copied().collect();
        set.iter()
            .map(|e| e.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default())
            .collect::<Vec<_>>()
            .join("+")
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run::dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("mlion: {:#}", failure.error());
            ExitCode::from(failure.code())
        }
    }
}
