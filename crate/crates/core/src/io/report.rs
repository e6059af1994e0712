//! Tabular reports. Numbers use [`format_number`]; undefined values are
//! written as empty fields.

use std::collections::HashMap;
use std::path::Path;

use super::format_number;
use super::long::csv_field;
use crate::community::{CommunityReport, Partition, ReportRow, SweepTrace};
use crate::error::{Error, Result};
use crate::layers::{Dendrogram, LayerPairTable};
use crate::metrics::pearson;
use crate::net::{Cell, MultilayerNetwork};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// CSV text, optionally preceded by a `# comment` line.
    pub fn to_csv(&self, comment: Option<&str>) -> String {
        let mut out = String::new();
        if let Some(c) = comment {
            out.push_str("# ");
            out.push_str(&c.replace('\n', " "));
            out.push('\n');
        }
        for row in std::iter::once(&self.header).chain(&self.rows) {
            let fields: Vec<String> = row.iter().map(|f| csv_field(f)).collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }
}

fn opt(v: Option<f64>) -> String {
    v.map(format_number).unwrap_or_default()
}

/// One row per cell in supra order: country, sector, then the given columns.
pub fn cell_table(net: &MultilayerNetwork, columns: &[(String, Vec<Option<f64>>)]) -> Table {
    let mut t = Table::new(["country", "sector"].into_iter().map(String::from).chain(columns.iter().map(|c| c.0.clone())));
    for a in 0..net.n_cells() {
        let c = net.cell_of(a);
        let mut row = vec![net.node_labels()[c.node].clone(), net.layer_labels()[c.layer].clone()];
        row.extend(columns.iter().map(|(_, v)| opt(v[a])));
        t.push(row);
    }
    t
}

/// Pairwise Pearson correlations between named per-cell measures. Entries
/// are empty where a measure has undefined values or is constant.
pub fn correlation_table(columns: &[(String, Vec<Option<f64>>)]) -> Table {
    let mut t = Table::new(std::iter::once("measure".to_string()).chain(columns.iter().map(|c| c.0.clone())));
    for (name, x) in columns {
        let mut row = vec![name.clone()];
        for (_, y) in columns {
            let pair: Option<(Vec<f64>, Vec<f64>)> = x.iter().zip(y).map(|(a, b)| Some(((*a)?, (*b)?))).collect::<Option<Vec<_>>>().map(|v| v.into_iter().unzip());
            row.push(opt(pair.and_then(|(a, b)| pearson(&a, &b).ok())));
        }
        t.push(row);
    }
    t
}

pub fn layer_table(table: &LayerPairTable) -> Table {
    let mut t = Table::new(std::iter::once("layer".to_string()).chain(table.layer_labels.iter().cloned()));
    for (a, label) in table.layer_labels.iter().enumerate() {
        let mut row = vec![label.clone()];
        row.extend(table.row(a).iter().map(|v| opt(*v)));
        t.push(row);
    }
    t
}

/// Merge steps; leaves are `0..L` and the cluster created at step `k` is
/// `L + k`.
pub fn dendrogram_table(d: &Dendrogram) -> Table {
    let mut t = Table::new(["step", "cluster_a", "cluster_b", "height", "size", "new_cluster"]);
    let l = d.leaf_labels.len();
    for (k, m) in d.merges.iter().enumerate() {
        t.push(vec![
            k.to_string(),
            m.cluster_a.to_string(),
            m.cluster_b.to_string(),
            format_number(m.height),
            m.size.to_string(),
            (l + k).to_string(),
        ]);
    }
    t
}

pub fn partition_table(partition: &Partition, net: &MultilayerNetwork) -> Table {
    let mut t = Table::new(["country", "sector", "community_id", "is_isolated"]);
    for a in 0..partition.n_cells() {
        let c = net.cell_of(a);
        t.push(vec![
            net.node_labels()[c.node].clone(),
            net.layer_labels()[c.layer].clone(),
            partition.assignment()[a].to_string(),
            partition.is_isolated(a).to_string(),
        ]);
    }
    t
}

/// Reads a partition table back against a network's labels. Every cell must
/// appear exactly once.
pub fn parse_partition(text: &str, path: &Path, net: &MultilayerNetwork) -> Result<Partition> {
    let perr = |line: u64, message: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = rdr.headers()?.clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| perr(1, format!("missing column {name:?}")))
    };
    let (ci, si, ki) = (col("country")?, col("sector")?, col("community_id")?);
    let nodes: HashMap<&str, usize> = net.node_labels().iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let layers: HashMap<&str, usize> = net.layer_labels().iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let mut assignment: Vec<Option<usize>> = vec![None; net.n_cells()];
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        let field = |i: usize| rec.get(i).ok_or_else(|| perr(line, "short row".into()));
        let node = *nodes
            .get(field(ci)?)
            .ok_or_else(|| perr(line, format!("unknown country {:?}", &rec[ci])))?;
        let layer = *layers
            .get(field(si)?)
            .ok_or_else(|| perr(line, format!("unknown sector {:?}", &rec[si])))?;
        let id: usize = field(ki)?
            .parse()
            .map_err(|_| perr(line, format!("community id {:?} is not a nonnegative integer", &rec[ki])))?;
        let a = net.index_of(Cell::new(node, layer))?.0;
        if assignment[a].replace(id).is_some() {
            return Err(perr(line, format!("cell {} listed twice", net.cell_label(Cell::new(node, layer)))));
        }
    }
    let assignment = assignment
        .into_iter()
        .enumerate()
        .map(|(a, v)| {
            v.ok_or_else(|| Error::Format {
                path: path.to_path_buf(),
                message: format!("cell {} has no community", net.cell_label(net.cell_of(a))),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Partition::from_assignment(assignment, net.n_nodes(), net.n_layers(), f64::NAN, f64::NAN)
}

pub fn trace_table(trace: &SweepTrace) -> Table {
    let mut t = Table::new(["threshold", "components", "quality"]);
    for p in &trace.points {
        t.push(vec![format_number(p.threshold), p.components.to_string(), format_number(p.quality)]);
    }
    t
}

/// Per-country (`kind = "country"`) or per-sector report rows.
pub fn report_table(report: &CommunityReport, kind: &str) -> Table {
    let rows: &[ReportRow] = if kind == "sector" { &report.per_sector } else { &report.per_country };
    let mut header = vec![kind.to_string()];
    header.extend(report.top_communities.iter().map(|c| format!("community_{c}")));
    header.extend(["other", "isolated", "dominant", "gini"].map(String::from));
    let mut t = Table::new(header);
    for r in rows {
        let mut row = vec![r.label.clone()];
        row.extend(r.counts.iter().map(|c| c.to_string()));
        row.extend([
            r.other.to_string(),
            r.isolated.to_string(),
            r.dominant.to_string(),
            format_number(r.gini),
        ]);
        t.push(row);
    }
    t
}

/// Country x sector community ids; empty where the cell is isolated or its
/// community is below the size cut.
pub fn grid_table(report: &CommunityReport, net: &MultilayerNetwork) -> Table {
    let mut t = Table::new(std::iter::once("country".to_string()).chain(net.layer_labels().iter().cloned()));
    for (i, row) in report.grid.iter().enumerate() {
        let mut out = vec![net.node_labels()[i].clone()];
        out.extend(row.iter().map(|c| c.map(|c| c.to_string()).unwrap_or_default()));
        t.push(out);
    }
    t
}

pub fn rank_table(net: &MultilayerNetwork, ranked: &[(Cell, f64)]) -> Table {
    let mut t = Table::new(["rank", "country", "sector", "strength"]);
    for (k, (c, s)) in ranked.iter().enumerate() {
        t.push(vec![
            (k + 1).to_string(),
            net.node_labels()[c.node].clone(),
            net.layer_labels()[c.layer].clone(),
            format_number(*s),
        ]);
    }
    t
}
