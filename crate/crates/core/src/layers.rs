//! Relations between layers: average connectivity and intensity of the
//! interlayer blocks, overlap and correlation of the intralayer blocks,
//! Jaccard similarity of community assignments, and average-linkage
//! dendrograms of layers.
//!
//! Unlike the strength sums, the block statistics here range over all `N^2`
//! ordered node pairs, node diagonal included.

use nalgebra::DMatrix;

use crate::community::Partition;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::io::format_number;
use crate::metrics::pearson;
use crate::net::{check_index, MultilayerNetwork};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LayerPairKind {
    Connectivity,
    Intensity,
    IntensityNorm,
    OverlapBin,
    OverlapW,
    CorrBin,
    CorrW,
    Jaccard,
}

impl LayerPairKind {
    pub const NETWORK_KINDS: [LayerPairKind; 7] = [
        LayerPairKind::Connectivity,
        LayerPairKind::Intensity,
        LayerPairKind::IntensityNorm,
        LayerPairKind::OverlapBin,
        LayerPairKind::OverlapW,
        LayerPairKind::CorrBin,
        LayerPairKind::CorrW,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LayerPairKind::Connectivity => "connectivity",
            LayerPairKind::Intensity => "intensity",
            LayerPairKind::IntensityNorm => "intensity_norm",
            LayerPairKind::OverlapBin => "overlap_bin",
            LayerPairKind::OverlapW => "overlap_w",
            LayerPairKind::CorrBin => "corr_bin",
            LayerPairKind::CorrW => "corr_w",
            LayerPairKind::Jaccard => "jaccard",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::NETWORK_KINDS
            .iter()
            .chain(std::iter::once(&LayerPairKind::Jaccard))
            .copied()
            .find(|k| k.name() == name)
    }

    pub fn is_symmetric(self) -> bool {
        !matches!(
            self,
            LayerPairKind::Connectivity | LayerPairKind::Intensity | LayerPairKind::IntensityNorm
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockMode {
    Binary,
    Weighted,
}

/// An `L x L` table of a layer-pair statistic. Entries whose statistic is
/// undefined (empty or constant blocks) are `None`.
#[derive(Clone, Debug, PartialEq)]
pub struct LayerPairTable {
    pub kind: LayerPairKind,
    pub layer_labels: Vec<String>,
    values: Vec<Option<f64>>,
}

impl LayerPairTable {
    pub fn n_layers(&self) -> usize {
        self.layer_labels.len()
    }

    pub fn get(&self, a: usize, b: usize) -> Option<f64> {
        self.values[a * self.n_layers() + b]
    }

    pub fn row(&self, a: usize) -> &[Option<f64>] {
        let l = self.n_layers();
        &self.values[a * l..(a + 1) * l]
    }

    /// The table as a feature matrix, one row per layer. Fails if any entry
    /// is undefined.
    pub fn features(&self) -> Result<DMatrix<f64>> {
        let l = self.n_layers();
        let mut m = DMatrix::zeros(l, l);
        for a in 0..l {
            for b in 0..l {
                m[(a, b)] = self.get(a, b).ok_or_else(|| {
                    Error::NonFinite(format!(
                        "{} table entry ({}, {}) is undefined",
                        self.kind.name(),
                        self.layer_labels[a],
                        self.layer_labels[b]
                    ))
                })?;
            }
        }
        Ok(m)
    }
}

pub fn avg_connectivity(net: &MultilayerNetwork, layer_a: usize, layer_b: usize) -> Result<f64> {
    let block = net.block(layer_a, layer_b)?;
    let n = net.n_nodes() as f64;
    Ok(block.iter().filter(|w| **w > 0.0).count() as f64 / (n * n))
}

pub fn avg_intensity(
    net: &MultilayerNetwork,
    layer_a: usize,
    layer_b: usize,
    normalized: bool,
) -> Result<f64> {
    let block = net.block(layer_a, layer_b)?;
    let n = net.n_nodes() as f64;
    let mean = block.sum() / (n * n);
    if !normalized {
        return Ok(mean);
    }
    let w_max = net.max_weight();
    if w_max <= 0.0 {
        return Err(Error::InvalidArgument(
            "normalized intensity of an all-zero network".into(),
        ));
    }
    Ok(mean / w_max)
}

fn intralayer(net: &MultilayerNetwork, layer: usize, mode: BlockMode) -> Result<DMatrix<f64>> {
    let b = net.block(layer, layer)?;
    Ok(match mode {
        BlockMode::Weighted => b,
        BlockMode::Binary => b.map(|w| if w > 0.0 { 1.0 } else { 0.0 }),
    })
}

fn overlap_of(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Result<f64> {
    let mut common = 0.0;
    let mut total = 0.0;
    for (x, y) in a.iter().zip(b.iter()) {
        common += x.min(*y);
        total += x + y;
    }
    if total <= 0.0 {
        return Err(Error::UndefinedOverlap);
    }
    Ok((2.0 * common / total).min(1.0))
}

fn correlation_of(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Result<f64> {
    pearson(a.as_slice(), b.as_slice())
        .map_err(|_| Error::UndefinedCorrelation("constant intralayer block".into()))
}

/// Normalized overlap of the intralayer blocks of two layers.
pub fn layer_overlap(
    net: &MultilayerNetwork,
    layer_a: usize,
    layer_b: usize,
    mode: BlockMode,
) -> Result<f64> {
    overlap_of(&intralayer(net, layer_a, mode)?, &intralayer(net, layer_b, mode)?)
}

/// Elementwise Pearson correlation of the intralayer blocks of two layers.
pub fn layer_correlation(
    net: &MultilayerNetwork,
    layer_a: usize,
    layer_b: usize,
    mode: BlockMode,
) -> Result<f64> {
    correlation_of(&intralayer(net, layer_a, mode)?, &intralayer(net, layer_b, mode)?)
}

/// Builds the full table for one of the network-derived kinds.
pub fn layer_pair_table(net: &MultilayerNetwork, kind: LayerPairKind) -> Result<LayerPairTable> {
    layer_pair_table_with(Execution::default(), net, kind)
}

pub fn layer_pair_table_with(
    exec: Execution,
    net: &MultilayerNetwork,
    kind: LayerPairKind,
) -> Result<LayerPairTable> {
    let l = net.n_layers();
    let blocks = |mode| -> Result<Vec<DMatrix<f64>>> {
        (0..l).map(|a| intralayer(net, a, mode)).collect()
    };
    let values: Vec<Option<f64>> = match kind {
        LayerPairKind::Connectivity => {
            exec.map_range(l * l, |p| avg_connectivity(net, p / l, p % l).ok())
        }
        LayerPairKind::Intensity => {
            exec.map_range(l * l, |p| avg_intensity(net, p / l, p % l, false).ok())
        }
        LayerPairKind::IntensityNorm => {
            if net.max_weight() <= 0.0 {
                return Err(Error::InvalidArgument(
                    "normalized intensity of an all-zero network".into(),
                ));
            }
            exec.map_range(l * l, |p| avg_intensity(net, p / l, p % l, true).ok())
        }
        LayerPairKind::OverlapBin | LayerPairKind::OverlapW => {
            let mode = if kind == LayerPairKind::OverlapBin {
                BlockMode::Binary
            } else {
                BlockMode::Weighted
            };
            let b = blocks(mode)?;
            symmetric_fill(exec, l, |x, y| overlap_of(&b[x], &b[y]).ok())
        }
        LayerPairKind::CorrBin | LayerPairKind::CorrW => {
            let mode = if kind == LayerPairKind::CorrBin {
                BlockMode::Binary
            } else {
                BlockMode::Weighted
            };
            let b = blocks(mode)?;
            symmetric_fill(exec, l, |x, y| correlation_of(&b[x], &b[y]).ok())
        }
        LayerPairKind::Jaccard => {
            return Err(Error::InvalidArgument(
                "the jaccard table is built from a partition, see jaccard_table".into(),
            ))
        }
    };
    Ok(LayerPairTable {
        kind,
        layer_labels: net.layer_labels().to_vec(),
        values,
    })
}

/// Evaluates `f` on the upper triangle and mirrors it, so symmetric tables
/// are symmetric bit for bit.
fn symmetric_fill<F>(exec: Execution, l: usize, f: F) -> Vec<Option<f64>>
where
    F: Fn(usize, usize) -> Option<f64> + Send + Sync,
{
    let upper = exec.map_range(l * l, |p| {
        let (a, b) = (p / l, p % l);
        if a <= b {
            f(a, b)
        } else {
            None
        }
    });
    (0..l * l)
        .map(|p| {
            let (a, b) = (p / l, p % l);
            if a <= b {
                upper[p]
            } else {
                upper[b * l + a]
            }
        })
        .collect()
}

/// Jaccard similarity of the `(node, community)` pairs of two layers,
/// ignoring isolated cells.
pub fn jaccard_sector_similarity(partition: &Partition, layer_a: usize, layer_b: usize) -> Result<f64> {
    check_index("layer", layer_a, partition.n_layers())?;
    check_index("layer", layer_b, partition.n_layers())?;
    let n = partition.n_nodes();
    let labels = |layer: usize| -> Vec<Option<usize>> {
        (0..n)
            .map(|node| {
                let idx = layer * n + node;
                (!partition.is_isolated(idx)).then(|| partition.assignment()[idx])
            })
            .collect()
    };
    let (a, b) = (labels(layer_a), labels(layer_b));
    let mut inter = 0usize;
    let mut union = 0usize;
    for (x, y) in a.iter().zip(&b) {
        match (x, y) {
            (Some(p), Some(q)) if p == q => {
                inter += 1;
                union += 1;
            }
            (Some(_), Some(_)) => union += 2,
            (Some(_), None) | (None, Some(_)) => union += 1,
            (None, None) => {}
        }
    }
    if union == 0 {
        return Err(Error::UndefinedSimilarity);
    }
    Ok(inter as f64 / union as f64)
}

pub fn jaccard_table(partition: &Partition, layer_labels: &[String]) -> Result<LayerPairTable> {
    let l = partition.n_layers();
    if layer_labels.len() != l {
        return Err(Error::InvalidArgument(format!(
            "{} layer labels for a partition with {l} layers",
            layer_labels.len()
        )));
    }
    let values = symmetric_fill(Execution::default(), l, |a, b| {
        jaccard_sector_similarity(partition, a, b).ok()
    });
    Ok(LayerPairTable {
        kind: LayerPairKind::Jaccard,
        layer_labels: layer_labels.to_vec(),
        values,
    })
}

/// One agglomeration step. Cluster ids below the leaf count are leaves;
/// the cluster created by merge `k` has id `n_leaves + k`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Merge {
    pub cluster_a: usize,
    pub cluster_b: usize,
    pub height: f64,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Dendrogram {
    pub merges: Vec<Merge>,
    pub leaf_labels: Vec<String>,
}

/// Average-linkage (UPGMA) clustering of the rows of `features` under
/// euclidean distance.
///
/// Among equally distant candidate pairs the one with the smallest
/// `(min leaf, max leaf)` key wins, where each cluster is represented by its
/// smallest leaf index.
pub fn hcluster_layers(features: &DMatrix<f64>, leaf_labels: &[String]) -> Result<Dendrogram> {
    let l = features.nrows();
    if l < 2 {
        return Err(Error::InvalidArgument(
            "clustering needs at least two rows".into(),
        ));
    }
    if leaf_labels.len() != l {
        return Err(Error::InvalidArgument(format!(
            "{} labels for {l} rows",
            leaf_labels.len()
        )));
    }
    if features.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument("non-finite feature value".into()));
    }

    let mut dist = DMatrix::<f64>::zeros(l, l);
    for i in 0..l {
        for j in (i + 1)..l {
            let d = (features.row(i) - features.row(j)).norm();
            dist[(i, j)] = d;
            dist[(j, i)] = d;
        }
    }

    // slot i holds the cluster currently stored in row/column i
    let mut active: Vec<bool> = vec![true; l];
    let mut id: Vec<usize> = (0..l).collect();
    let mut size: Vec<usize> = vec![1; l];
    let mut min_leaf: Vec<usize> = (0..l).collect();
    let mut merges = Vec::with_capacity(l - 1);

    for step in 0..l - 1 {
        let mut best: Option<(f64, (usize, usize), usize, usize)> = None;
        for i in 0..l {
            if !active[i] {
                continue;
            }
            for j in (i + 1)..l {
                if !active[j] {
                    continue;
                }
                let d = dist[(i, j)];
                let key = (min_leaf[i].min(min_leaf[j]), min_leaf[i].max(min_leaf[j]));
                let better = match best {
                    None => true,
                    Some((bd, bk, _, _)) => d < bd || (d == bd && key < bk),
                };
                if better {
                    best = Some((d, key, i, j));
                }
            }
        }
        let (height, _, i, j) = best.expect("at least two active clusters");
        let (first, second) = if min_leaf[i] < min_leaf[j] { (i, j) } else { (j, i) };
        let merged = size[i] + size[j];
        merges.push(Merge {
            cluster_a: id[first],
            cluster_b: id[second],
            height,
            size: merged,
        });
        // Lance-Williams update for group average
        let (wi, wj) = (size[i] as f64, size[j] as f64);
        for k in 0..l {
            if active[k] && k != i && k != j {
                let d = (wi * dist[(i, k)] + wj * dist[(j, k)]) / (wi + wj);
                dist[(i, k)] = d;
                dist[(k, i)] = d;
            }
        }
        active[j] = false;
        id[i] = l + step;
        size[i] = merged;
        min_leaf[i] = min_leaf[i].min(min_leaf[j]);
    }

    Ok(Dendrogram {
        merges,
        leaf_labels: leaf_labels.to_vec(),
    })
}

impl Dendrogram {
    pub fn n_leaves(&self) -> usize {
        self.leaf_labels.len()
    }

    /// Newick serialization. Branch lengths are the height differences
    /// between a node and its parent (leaves sit at height 0), so every
    /// root-to-leaf path has length equal to the root merge height.
    pub fn to_newick(&self) -> String {
        let l = self.n_leaves();
        if self.merges.is_empty() {
            return format!("{};", quote_label(&self.leaf_labels[0]));
        }
        let height = |id: usize| if id < l { 0.0 } else { self.merges[id - l].height };
        let mut out = String::new();
        self.write_node(l + self.merges.len() - 1, &height, &mut out);
        out.push(';');
        out
    }

    fn write_node(&self, id: usize, height: &dyn Fn(usize) -> f64, out: &mut String) {
        let l = self.n_leaves();
        if id < l {
            out.push_str(&quote_label(&self.leaf_labels[id]));
            return;
        }
        let m = self.merges[id - l];
        out.push('(');
        for (k, child) in [m.cluster_a, m.cluster_b].into_iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            self.write_node(child, height, out);
            out.push(':');
            out.push_str(&format_number((m.height - height(child)).max(0.0)));
        }
        out.push(')');
    }
}

fn quote_label(label: &str) -> String {
    if label
        .chars()
        .any(|c| c.is_whitespace() || "()[]':;,".contains(c))
    {
        format!("'{}'", label.replace('\'', "''"))
    } else {
        label.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::fixtures::{single_layer, t1};
    use crate::net::MultilayerNetwork;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("L{i}")).collect()
    }

    #[test]
    fn connectivity_and_intensity_t1() {
        let t1 = t1();
        assert_eq!(avg_connectivity(&t1, 0, 1).unwrap(), 0.5);
        assert_eq!(avg_connectivity(&t1, 0, 0).unwrap(), 0.5);
        assert_eq!(avg_intensity(&t1, 0, 1, false).unwrap(), 1.0);
        assert_eq!(avg_intensity(&t1, 0, 1, true).unwrap(), 0.25);
        let full = single_layer(&[&[1.0, 2.0], &[3.0, 4.0]]);
        assert_eq!(avg_connectivity(&full, 0, 0).unwrap(), 1.0);
        let zero = crate::net::fixtures::zero(2, 2);
        assert_eq!(avg_intensity(&zero, 0, 1, false).unwrap(), 0.0);
        assert!(avg_intensity(&zero, 0, 1, true).is_err());
        assert!(avg_connectivity(&t1, 0, 3).is_err());
    }

    #[test]
    fn zero_block_normalized_intensity() {
        // block (x, y) of this network is empty, max weight is positive
        let net = MultilayerNetwork::from_rows(
            &["u", "v"],
            &["x", "y"],
            &[
                &[0.0, 2.0, 0.0, 0.0],
                &[1.0, 0.0, 0.0, 0.0],
                &[0.0, 1.0, 0.0, 2.0],
                &[4.0, 0.0, 1.0, 0.0],
            ],
        )
        .unwrap();
        assert_eq!(avg_intensity(&net, 0, 1, true).unwrap(), 0.0);
    }

    fn two_layer(a: [f64; 4], b: [f64; 4]) -> MultilayerNetwork {
        MultilayerNetwork::from_rows(
            &["u", "v"],
            &["x", "y"],
            &[
                &[a[0], a[1], 0.0, 0.0],
                &[a[2], a[3], 0.0, 0.0],
                &[0.0, 0.0, b[0], b[1]],
                &[0.0, 0.0, b[2], b[3]],
            ],
        )
        .unwrap()
    }

    #[test]
    fn overlap_examples() {
        let same = two_layer([0.0, 2.0, 1.0, 5.0], [0.0, 2.0, 1.0, 5.0]);
        assert_eq!(layer_overlap(&same, 0, 1, BlockMode::Weighted).unwrap(), 1.0);
        let disjoint = two_layer([0.0, 2.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0]);
        assert_eq!(layer_overlap(&disjoint, 0, 1, BlockMode::Binary).unwrap(), 0.0);
        let partial = two_layer([0.0, 2.0, 1.0, 0.0], [0.0, 1.0, 3.0, 0.0]);
        let o = layer_overlap(&partial, 0, 1, BlockMode::Weighted).unwrap();
        assert!((o - 4.0 / 7.0).abs() < 1e-15);
        let empty = two_layer([0.0; 4], [0.0; 4]);
        assert!(matches!(
            layer_overlap(&empty, 0, 1, BlockMode::Weighted),
            Err(Error::UndefinedOverlap)
        ));
    }

    #[test]
    fn correlation_examples() {
        let a = [0.0, 2.0, 1.0, 5.0];
        let same = two_layer(a, a);
        assert!((layer_correlation(&same, 0, 1, BlockMode::Weighted).unwrap() - 1.0).abs() < 1e-15);
        let neg = a.map(|x| 5.0 - x);
        let anti = two_layer(a, neg);
        assert!((layer_correlation(&anti, 0, 1, BlockMode::Weighted).unwrap() + 1.0).abs() < 1e-15);
        assert!((layer_correlation(&t1(), 0, 1, BlockMode::Binary).unwrap() - 1.0).abs() < 1e-15);
        let flat = two_layer([1.0; 4], a);
        assert!(matches!(
            layer_correlation(&flat, 0, 1, BlockMode::Weighted),
            Err(Error::UndefinedCorrelation(_))
        ));
    }

    #[test]
    fn tables_mark_undefined_entries() {
        let net = two_layer([0.0; 4], [0.0, 2.0, 1.0, 5.0]);
        let o = layer_pair_table(&net, LayerPairKind::OverlapW).unwrap();
        assert_eq!(o.get(0, 0), None);
        assert_eq!(o.get(1, 1), Some(1.0));
        assert_eq!(o.get(0, 1), Some(0.0));
        let c = layer_pair_table(&net, LayerPairKind::CorrW).unwrap();
        assert_eq!(c.get(0, 1), None);
        assert!(c.features().is_err());
        assert!(layer_pair_table(&net, LayerPairKind::Jaccard).is_err());
        let zero = crate::net::fixtures::zero(2, 2);
        assert!(layer_pair_table(&zero, LayerPairKind::IntensityNorm).is_err());
    }

    #[test]
    fn kind_names_round_trip() {
        for k in LayerPairKind::NETWORK_KINDS {
            assert_eq!(LayerPairKind::from_name(k.name()), Some(k));
        }
        assert_eq!(LayerPairKind::from_name("jaccard"), Some(LayerPairKind::Jaccard));
        assert_eq!(LayerPairKind::from_name("nope"), None);
    }

    fn partition_from_grid(grid: &[Vec<usize>], n_nodes: usize, n_layers: usize) -> Partition {
        // grid[layer][node]
        let mut assignment = vec![0; n_nodes * n_layers];
        for (l, row) in grid.iter().enumerate() {
            for (n, c) in row.iter().enumerate() {
                assignment[l * n_nodes + n] = *c;
            }
        }
        Partition::from_assignment(assignment, n_nodes, n_layers, 0.0, 0.0).unwrap()
    }

    #[test]
    fn jaccard_examples() {
        // every community spans both layers, so none is isolated
        let a: Vec<usize> = (0..10).map(|i| i / 5).collect();
        let p = partition_from_grid(&[a.clone(), a.clone()], 10, 2);
        assert_eq!(jaccard_sector_similarity(&p, 0, 1).unwrap(), 1.0);

        let mut b = a.clone();
        b[9] = 2;
        let mut c = a.clone();
        c[9] = 3;
        // community 2 and 3 are singletons: make them pairs via a third layer
        let p = partition_from_grid(&[b.clone(), c.clone(), b.clone(), c.clone()], 10, 4);
        let j = jaccard_sector_similarity(&p, 0, 1).unwrap();
        assert!((j - 9.0 / 11.0).abs() < 1e-15);
        assert_eq!(jaccard_sector_similarity(&p, 0, 2).unwrap(), 1.0);

        let x: Vec<usize> = vec![0; 4];
        let y: Vec<usize> = vec![1; 4];
        let p = partition_from_grid(&[x, y], 4, 2);
        assert_eq!(jaccard_sector_similarity(&p, 0, 1).unwrap(), 0.0);
    }

    #[test]
    fn jaccard_all_isolated_is_undefined() {
        let p = Partition::from_assignment(vec![0, 1, 2, 3], 2, 2, 0.0, 0.0).unwrap();
        assert!(matches!(
            jaccard_sector_similarity(&p, 0, 1),
            Err(Error::UndefinedSimilarity)
        ));
    }

    #[test]
    fn upgma_examples() {
        let two = DMatrix::from_row_slice(2, 2, &[0.0, 0.0, 3.0, 4.0]);
        let d = hcluster_layers(&two, &labels(2)).unwrap();
        assert_eq!(d.merges.len(), 1);
        assert_eq!(d.merges[0].height, 5.0);

        let line = DMatrix::from_row_slice(3, 1, &[0.0, 1.0, 10.0]);
        let d = hcluster_layers(&line, &labels(3)).unwrap();
        assert_eq!(d.merges[0], Merge { cluster_a: 0, cluster_b: 1, height: 1.0, size: 2 });
        assert_eq!(d.merges[1], Merge { cluster_a: 3, cluster_b: 2, height: 9.5, size: 3 });
        assert_eq!(d.to_newick(), "((L0:1,L1:1):8.5,L2:9.5);");

        let dup = DMatrix::from_row_slice(3, 2, &[1.0, 2.0, 5.0, 5.0, 1.0, 2.0]);
        let d = hcluster_layers(&dup, &labels(3)).unwrap();
        assert_eq!(d.merges[0].height, 0.0);
        assert_eq!((d.merges[0].cluster_a, d.merges[0].cluster_b), (0, 2));
    }

    #[test]
    fn upgma_ties_follow_leaf_order() {
        // four corners of a unit square: all four edges tie at distance 1
        let sq = DMatrix::from_row_slice(4, 2, &[0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 1.0, 1.0]);
        let d = hcluster_layers(&sq, &labels(4)).unwrap();
        assert_eq!((d.merges[0].cluster_a, d.merges[0].cluster_b), (0, 1));
        assert_eq!((d.merges[1].cluster_a, d.merges[1].cluster_b), (2, 3));
    }

    #[test]
    fn upgma_rejects_bad_input() {
        let one = DMatrix::from_row_slice(1, 1, &[0.0]);
        assert!(hcluster_layers(&one, &labels(1)).is_err());
        let nan = DMatrix::from_row_slice(2, 1, &[0.0, f64::NAN]);
        assert!(hcluster_layers(&nan, &labels(2)).is_err());
    }

    #[test]
    fn newick_quotes_odd_labels() {
        let two = DMatrix::from_row_slice(2, 1, &[0.0, 2.0]);
        let d = hcluster_layers(&two, &["C10-C12".to_string(), "a b".to_string()]).unwrap();
        assert_eq!(d.to_newick(), "(C10-C12:2,'a b':2);");
    }
}
