//! Subcommand bodies and the exit-status mapping.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use mlion_core::io::{
    cell_table, correlation_table, dendrogram_table, grid_table, ingest, layer_table, parse_partition, partition_table,
    rank_table, report_table, trace_table, write_atomic, write_snapshot, IngestSpec, InputFormat, Table,
};
use mlion_core::{
    centrality_table, communicability, community_members, community_report, detect_monolayer, detect_on_distance,
    detection_fields, hcluster_layers, hhi_table, jaccard_table, layer_pair_table, rank_members, strength_table,
    CommunicabilityMode, Direction, LayerPairKind, MultilayerNetwork, Partition, RankDirection, StrengthKind,
};
use sha2::{Digest, Sha256};

use crate::{Centrality, Command, CommonArgs, DetectionArgs, Emit, Format, InputArgs, OutputArgs, RankBy};

/// A failed run: bad usage, configuration or input (status 2) or a failed
/// computation (status 1).
#[derive(Debug)]
pub(crate) enum Failure {
    Usage(anyhow::Error),
    Compute(anyhow::Error),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Compute(_) => 1,
        }
    }

    pub fn error(&self) -> &anyhow::Error {
        match self {
            Failure::Usage(e) | Failure::Compute(e) => e,
        }
    }
}

type Outcome<T = ()> = Result<T, Failure>;

fn usage(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Usage(e.into())
}

fn compute(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Compute(e.into())
}

/// A loaded network plus everything needed to stamp and place outputs.
struct Run {
    net: MultilayerNetwork,
    digest: String,
    input: PathBuf,
    out_dir: PathBuf,
    config: Vec<(String, String)>,
}

impl Run {
    fn open(subcommand: &str, input: &InputArgs, output: &OutputArgs) -> Outcome<Self> {
        let bytes = fs::read(&input.input)
            .with_context(|| format!("cannot read input {}", input.input.display()))
            .map_err(usage)?;
        let digest = hex::encode(Sha256::digest(&bytes));
        let format = match input.format {
            Format::Long => InputFormat::Long,
            Format::WiotWide => InputFormat::WiotWide,
            Format::Snapshot => InputFormat::Snapshot,
        };
        let spec = IngestSpec {
            labels: input.labels.clone(),
            clamp_negatives: !input.no_clamp,
            drop_zero_layers: input.drop_zero_layers,
            year: input.year,
            ..IngestSpec::new(format, &input.input)
        };
        let net = ingest(&spec).map_err(usage)?;
        fs::create_dir_all(&output.output_dir)
            .with_context(|| format!("cannot create output directory {}", output.output_dir.display()))
            .map_err(usage)?;
        let config = vec![
            ("command".into(), subcommand.into()),
            ("format".into(), format.name().into()),
            ("year".into(), input.year.to_string()),
            ("clamp".into(), (!input.no_clamp).to_string()),
            ("drop_zero_layers".into(), input.drop_zero_layers.to_string()),
            ("emit".into(), output.emit_names()),
        ];
        Ok(Run {
            net,
            digest,
            input: input.input.clone(),
            out_dir: output.output_dir.clone(),
            config,
        })
    }

    fn set(&mut self, key: &str, value: impl ToString) {
        self.config.push((key.to_string(), value.to_string()));
    }

    fn header(&self) -> String {
        let cfg: Vec<String> = self.config.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!(
            "mlion {} input={} sha256={} n={} l={} clamped={} config: {}",
            env!("CARGO_PKG_VERSION"),
            self.input.display(),
            self.digest,
            self.net.n_nodes(),
            self.net.n_layers(),
            self.net.meta().clamped,
            cfg.join(" ")
        )
    }

    fn write(&self, name: &str, bytes: &[u8]) -> Outcome {
        let path = self.out_dir.join(name);
        write_atomic(&path, bytes)
            .with_context(|| format!("cannot write {}", path.display()))
            .map_err(compute)?;
        println!("wrote {}", path.display());
        Ok(())
    }

    fn write_table(&self, name: &str, table: &Table) -> Outcome {
        self.write(name, table.to_csv(Some(&self.header())).as_bytes())
    }

    fn read_partition(&self, path: &Path) -> Outcome<Partition> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("cannot read partition {}", path.display()))
            .map_err(usage)?;
        parse_partition(&text, path, &self.net).map_err(usage)
    }
}

fn check_detection(run: &mut Run, d: &DetectionArgs) -> Outcome {
    if d.r == 0 {
        return Err(usage(anyhow!("--r must be at least 1")));
    }
    if d.min_size == 0 {
        return Err(usage(anyhow!("--min-size must be at least 1")));
    }
    run.set("r", d.r);
    run.set("min_size", d.min_size);
    run.set("top_k", d.top_k);
    Ok(())
}

pub(crate) fn dispatch(command: Command) -> Outcome {
    match command {
        Command::Ingest(a) => cmd_ingest(&a.input, &a.output),
        Command::Metrics(a) => cmd_metrics(&a.common, a.centrality),
        Command::Layers(a) => cmd_layers(&a),
        Command::Dendrogram(a) => cmd_dendrogram(&a.common, &a.table, a.partition.as_deref()),
        Command::Communities(a) => cmd_communities(&a.common, &a.detection),
        Command::Rank(a) => cmd_rank(&a.common, &a.detection, a.community, a.partition.as_deref(), a.by),
        Command::Aggregate(a) => cmd_aggregate(&a.common, &a.detection),
        Command::Similarity(a) => cmd_similarity(&a.common, &a.partition),
    }
}

fn cmd_ingest(input: &InputArgs, output: &OutputArgs) -> Outcome {
    let run = Run::open("ingest", input, output)?;
    let path = run.out_dir.join("network.mlio");
    write_snapshot(&run.net, &path)
        .with_context(|| format!("cannot write {}", path.display()))
        .map_err(compute)?;
    println!(
        "wrote {} ({} countries, {} sectors, {} clamped)",
        path.display(),
        run.net.n_nodes(),
        run.net.n_layers(),
        run.net.meta().clamped
    );
    Ok(())
}

fn some(v: Vec<f64>) -> Vec<Option<f64>> {
    v.into_iter().map(|x| x.is_finite().then_some(x)).collect()
}

fn cmd_metrics(args: &CommonArgs, centrality: Centrality) -> Outcome {
    let mut run = Run::open("metrics", &args.input, &args.output)?;
    if !args.output.emits(Emit::Metrics) {
        return Ok(());
    }
    let mode = match centrality {
        Centrality::Weighted => CommunicabilityMode::Weighted,
        Centrality::Binary => CommunicabilityMode::Binary,
    };
    run.set("centrality", format!("{mode:?}").to_lowercase());
    let net = &run.net;
    let binary = net.binarize();
    let kinds = [
        (StrengthKind::Intralayer, "intra"),
        (StrengthKind::Total, "total"),
        (StrengthKind::TotalInterlayer, "total_inter"),
    ];
    let mut strengths = Vec::new();
    for (dir, d) in [(Direction::In, "in"), (Direction::Out, "out")] {
        for (kind, k) in kinds {
            strengths.push((format!("strength_{d}_{k}"), some(strength_table(net, dir, kind))));
        }
        for (kind, k) in kinds {
            strengths.push((format!("degree_{d}_{k}"), some(strength_table(&binary, dir, kind))));
        }
    }
    let hhi = vec![
        ("hhi_in".to_string(), hhi_table(net, Direction::In)),
        ("hhi_out".to_string(), hhi_table(net, Direction::Out)),
    ];
    // an unusable field leaves the centrality columns empty
    let field = communicability(net, mode);
    if let Err(e) = &field {
        eprintln!("mlion: centralities unavailable: {e}");
    }
    let column = |dir| match &field {
        Ok(f) => some(centrality_table(f, dir)),
        Err(_) => vec![None; net.n_cells()],
    };
    let centrality = vec![
        ("receive".to_string(), column(Direction::In)),
        ("broadcast".to_string(), column(Direction::Out)),
    ];
    let mut measures: Vec<(String, Vec<Option<f64>>)> = strengths
        .iter()
        .filter(|(name, _)| name.ends_with("_total"))
        .cloned()
        .collect();
    measures.extend(hhi.iter().cloned());
    measures.extend(centrality.iter().cloned());

    run.write_table("strengths.csv", &cell_table(net, &strengths))?;
    run.write_table("hhi.csv", &cell_table(net, &hhi))?;
    run.write_table("centrality.csv", &cell_table(net, &centrality))?;
    run.write_table("correlations.csv", &correlation_table(&measures))
}

fn cmd_layers(args: &CommonArgs) -> Outcome {
    let run = Run::open("layers", &args.input, &args.output)?;
    if !args.output.emits(Emit::Layers) {
        return Ok(());
    }
    for kind in LayerPairKind::NETWORK_KINDS {
        let table = layer_pair_table(&run.net, kind)
            .with_context(|| format!("{} table", kind.name()))
            .map_err(compute)?;
        run.write_table(&format!("{}.csv", kind.name()), &layer_table(&table))?;
    }
    Ok(())
}

fn cmd_dendrogram(args: &CommonArgs, table: &str, partition: Option<&Path>) -> Outcome {
    let mut run = Run::open("dendrogram", &args.input, &args.output)?;
    let kind = LayerPairKind::from_name(table).ok_or_else(|| usage(anyhow!("unknown layer-pair table {table:?}")))?;
    run.set("table", kind.name());
    let pairs = if kind == LayerPairKind::Jaccard {
        let path = partition.ok_or_else(|| usage(anyhow!("the jaccard table needs --partition")))?;
        run.set("partition", path.display());
        let p = run.read_partition(path)?;
        jaccard_table(&p, run.net.layer_labels()).map_err(compute)?
    } else {
        layer_pair_table(&run.net, kind).map_err(compute)?
    };
    if !args.output.emits(Emit::Dendrogram) {
        return Ok(());
    }
    let features = pairs.features().map_err(compute)?;
    let dendrogram = hcluster_layers(&features, &pairs.layer_labels).map_err(compute)?;
    let name = format!("dendrogram_{}", kind.name());
    run.write(&format!("{name}.nwk"), format!("{}\n", dendrogram.to_newick()).as_bytes())?;
    run.write_table(&format!("{name}.csv"), &dendrogram_table(&dendrogram))
}

fn cmd_communities(args: &CommonArgs, d: &DetectionArgs) -> Outcome {
    let mut run = Run::open("communities", &args.input, &args.output)?;
    check_detection(&mut run, d)?;
    let (field, dist) = detection_fields(&run.net).map_err(compute)?;
    let detection = detect_on_distance(&dist, d.r).map_err(compute)?;
    let p = &detection.partition;
    println!(
        "{} communities, {} isolated cells, threshold {}, quality {}",
        p.n_communities(),
        p.isolated().len(),
        p.threshold(),
        p.quality()
    );
    let net = &run.net;
    if args.output.emits(Emit::Communities) {
        let report = community_report(p, net, d.min_size, d.top_k).map_err(compute)?;
        run.write_table("partition.csv", &partition_table(p, net))?;
        run.write_table("report_country.csv", &report_table(&report, "country"))?;
        run.write_table("report_sector.csv", &report_table(&report, "sector"))?;
        run.write_table("grid.csv", &grid_table(&report, net))?;
    }
    if args.output.emits(Emit::Trace) {
        run.write_table("trace.csv", &trace_table(&detection.trace))?;
    }
    if args.output.emits(Emit::Fields) {
        let g = field.g();
        let columns = vec![
            ("g_self".to_string(), some((0..net.n_cells()).map(|a| g[(a, a)]).collect())),
            ("xi_mean".to_string(), some(dist.row_means().to_vec())),
        ];
        run.write_table("fields.csv", &cell_table(net, &columns))?;
    }
    Ok(())
}

fn cmd_rank(args: &CommonArgs, d: &DetectionArgs, community: usize, partition: Option<&Path>, by: RankBy) -> Outcome {
    let mut run = Run::open("rank", &args.input, &args.output)?;
    run.set("community", community);
    run.set("by", format!("{by:?}").to_lowercase());
    let p = match partition {
        Some(path) => {
            run.set("partition", path.display());
            run.read_partition(path)?
        }
        None => {
            check_detection(&mut run, d)?;
            let (_, dist) = detection_fields(&run.net).map_err(compute)?;
            detect_on_distance(&dist, d.r).map_err(compute)?.partition
        }
    };
    if community >= p.n_communities() {
        return Err(usage(anyhow!(
            "community {community} does not exist (the partition has {})",
            p.n_communities()
        )));
    }
    if !args.output.emits(Emit::Rankings) {
        return Ok(());
    }
    let members = community_members(&p, community).map_err(compute)?;
    let direction = match by {
        RankBy::In => RankDirection::In,
        RankBy::Out => RankDirection::Out,
        RankBy::Sum => RankDirection::Sum,
    };
    let ranked = rank_members(&run.net, &members, direction).map_err(compute)?;
    run.write_table(&format!("rank_{community}.csv"), &rank_table(&run.net, &ranked))
}

fn cmd_aggregate(args: &CommonArgs, d: &DetectionArgs) -> Outcome {
    let mut run = Run::open("aggregate", &args.input, &args.output)?;
    check_detection(&mut run, d)?;
    let detection = detect_monolayer(&run.net, d.r).map_err(compute)?;
    let mono = run.net.aggregate_monolayer();
    println!(
        "{} country communities, {} isolated countries",
        detection.partition.n_communities(),
        detection.partition.isolated().len()
    );
    if args.output.emits(Emit::Communities) {
        run.write_table("partition_monolayer.csv", &partition_table(&detection.partition, &mono))?;
    }
    if args.output.emits(Emit::Trace) {
        run.write_table("trace_monolayer.csv", &trace_table(&detection.trace))?;
    }
    Ok(())
}

fn cmd_similarity(args: &CommonArgs, partition: &Path) -> Outcome {
    let mut run = Run::open("similarity", &args.input, &args.output)?;
    run.set("partition", partition.display());
    let p = run.read_partition(partition)?;
    if !args.output.emits(Emit::Layers) {
        return Ok(());
    }
    let table = jaccard_table(&p, run.net.layer_labels()).map_err(compute)?;
    run.write_table("jaccard.csv", &layer_table(&table))
}
