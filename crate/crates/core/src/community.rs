//! Threshold-sweep community detection on the communicability distance,
//! the partition model, community reports and within-community rankings.

use nalgebra::DMatrix;

use crate::communicability::{
    communicability, community_quality, distance_field, quality, CommunicabilityField, CommunicabilityMode,
    DistanceField,
};
use crate::error::{Error, Result};
use crate::metrics::gini_heterogeneity;
use crate::net::{check_index, Cell, Direction, MemberSet, MultilayerNetwork};

/// Assignment of every supra cell to a community.
///
/// Ids are canonical: communities are numbered from 0 by descending size,
/// ties broken by the smallest member supra index. Singleton communities are
/// the isolated cells.
#[derive(Clone, Debug, PartialEq)]
pub struct Partition {
    assignment: Vec<usize>,
    sizes: Vec<usize>,
    n_nodes: usize,
    n_layers: usize,
    threshold: f64,
    quality: f64,
}

impl Partition {
    /// Canonicalizes an arbitrary labelling of the cells.
    pub fn from_assignment(
        assignment: Vec<usize>,
        n_nodes: usize,
        n_layers: usize,
        threshold: f64,
        quality: f64,
    ) -> Result<Self> {
        if assignment.len() != n_nodes * n_layers {
            return Err(Error::InvalidArgument(format!(
                "assignment has {} entries, expected {}",
                assignment.len(),
                n_nodes * n_layers
            )));
        }
        // (size, first member) per raw label, in first-appearance order
        let mut raw: std::collections::HashMap<usize, usize> = Default::default();
        let mut groups: Vec<(usize, usize)> = Vec::new();
        for (idx, &label) in assignment.iter().enumerate() {
            let g = *raw.entry(label).or_insert_with(|| {
                groups.push((0, idx));
                groups.len() - 1
            });
            groups[g].0 += 1;
        }
        let mut order: Vec<usize> = (0..groups.len()).collect();
        order.sort_by(|&a, &b| groups[b].0.cmp(&groups[a].0).then(groups[a].1.cmp(&groups[b].1)));
        let mut canonical = vec![0; groups.len()];
        for (id, &g) in order.iter().enumerate() {
            canonical[g] = id;
        }
        let assignment = assignment.iter().map(|l| canonical[raw[l]]).collect();
        let sizes = order.iter().map(|&g| groups[g].0).collect();
        Ok(Partition {
            assignment,
            sizes,
            n_nodes,
            n_layers,
            threshold,
            quality,
        })
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn n_layers(&self) -> usize {
        self.n_layers
    }

    pub fn n_cells(&self) -> usize {
        self.assignment.len()
    }

    pub fn n_communities(&self) -> usize {
        self.sizes.len()
    }

    /// Community sizes indexed by id (nonincreasing).
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Threshold on the distance that produced this partition.
    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn quality(&self) -> f64 {
        self.quality
    }

    pub fn community_of(&self, cell: Cell) -> Result<usize> {
        check_index("node", cell.node, self.n_nodes)?;
        check_index("layer", cell.layer, self.n_layers)?;
        Ok(self.assignment[cell.layer * self.n_nodes + cell.node])
    }

    /// Supra indices of the members of community `id`, ascending.
    pub fn members(&self, id: usize) -> Vec<usize> {
        (0..self.n_cells()).filter(|&a| self.assignment[a] == id).collect()
    }

    pub fn is_isolated(&self, index: usize) -> bool {
        self.sizes[self.assignment[index]] == 1
    }

    /// Supra indices of the isolated cells, ascending.
    pub fn isolated(&self) -> Vec<usize> {
        (0..self.n_cells()).filter(|&a| self.is_isolated(a)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepPoint {
    pub threshold: f64,
    pub components: usize,
    pub quality: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepTrace {
    pub points: Vec<SweepPoint>,
    pub xi_min: f64,
    pub xi_max: f64,
    pub step: f64,
    pub r: usize,
    /// All off-diagonal distances are equal (or there is a single cell), so
    /// only one threshold was evaluated.
    pub degenerate: bool,
}

impl SweepTrace {
    pub fn best(&self) -> Option<&SweepPoint> {
        let mut best: Option<&SweepPoint> = None;
        for p in &self.points {
            if best.is_none_or(|b| p.quality > b.quality) {
                best = Some(p);
            }
        }
        best
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Detection {
    pub partition: Partition,
    pub trace: SweepTrace,
}

struct Components {
    parent: Vec<usize>,
    members: Vec<Vec<usize>>,
    sum_r: Vec<f64>,
    internal: Vec<f64>,
    count: usize,
}

impl Components {
    fn new(row_means: &[f64]) -> Self {
        let n = row_means.len();
        Components {
            parent: (0..n).collect(),
            members: (0..n).map(|a| vec![a]).collect(),
            sum_r: row_means.to_vec(),
            internal: vec![0.0; n],
            count: n,
        }
    }

    fn find(&mut self, mut a: usize) -> usize {
        let mut root = a;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[a] != root {
            let next = self.parent[a];
            self.parent[a] = root;
            a = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize, xi: &DMatrix<f64>) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.members[ra].len() < self.members[rb].len() {
            std::mem::swap(&mut ra, &mut rb);
        }
        let moved = std::mem::take(&mut self.members[rb]);
        let mut cross = 0.0;
        for &y in &moved {
            let col = xi.column(y);
            for &x in &self.members[ra] {
                cross += col[x];
            }
        }
        self.internal[ra] += self.internal[rb] + 2.0 * cross;
        self.sum_r[ra] += self.sum_r[rb];
        self.members[ra].extend(moved);
        self.parent[rb] = ra;
        self.count -= 1;
    }

    fn quality(&self, global_mean: f64) -> f64 {
        (0..self.parent.len())
            .filter(|&a| self.parent[a] == a)
            .map(|a| community_quality(self.members[a].len(), self.sum_r[a], self.internal[a], global_mean))
            .sum()
    }

    fn labels(&mut self) -> Vec<usize> {
        (0..self.parent.len()).map(|a| self.find(a)).collect()
    }
}

/// Connected components of the graph linking every pair of distinct cells
/// with `xi <= xi_h`.
pub fn components_at_threshold(dist: &DistanceField, xi_h: f64) -> Result<Partition> {
    if !xi_h.is_finite() {
        return Err(Error::InvalidArgument(format!("threshold {xi_h} is not finite")));
    }
    let nl = dist.n_cells();
    let xi = dist.xi();
    let mut comps = Components::new(&vec![0.0; nl]);
    for j in 0..nl {
        let col = xi.column(j);
        for i in 0..j {
            if col[i] <= xi_h {
                let (ri, rj) = (comps.find(i), comps.find(j));
                if ri != rj {
                    // cross sums are not needed here
                    comps.parent[rj] = ri;
                }
            }
        }
    }
    let labels = comps.labels();
    let mut p = Partition::from_assignment(labels, dist.n_nodes(), dist.n_layers(), xi_h, 0.0)?;
    p.quality = quality(dist, &p)?;
    Ok(p)
}

/// Sweeps `xi_h = xi_min + h (xi_max - xi_min) / r` for `h = 0..=r` and keeps
/// the partition of largest quality (the smallest threshold on ties).
pub fn detect_on_distance(dist: &DistanceField, r: usize) -> Result<Detection> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be at least 1".into()));
    }
    let nl = dist.n_cells();
    if nl == 0 {
        return Err(Error::InvalidArgument("empty network".into()));
    }
    let xi = dist.xi();
    let mut pairs: Vec<(f64, u32, u32)> = Vec::with_capacity(nl * nl.saturating_sub(1) / 2);
    for j in 0..nl {
        let col = xi.column(j);
        for i in 0..j {
            pairs.push((col[i], i as u32, j as u32));
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let (xi_min, xi_max) = match (pairs.first(), pairs.last()) {
        (Some(lo), Some(hi)) => (lo.0, hi.0),
        _ => (0.0, 0.0),
    };
    let degenerate = xi_max == xi_min;
    let step = if degenerate { 0.0 } else { (xi_max - xi_min) / r as f64 };
    let thresholds: Vec<f64> = if degenerate {
        vec![xi_min]
    } else {
        (0..=r)
            .map(|h| if h == r { xi_max } else { xi_min + h as f64 * step })
            .collect()
    };

    let mut comps = Components::new(dist.row_means());
    let mut points = Vec::with_capacity(thresholds.len());
    let mut next = 0;
    let mut best: Option<(f64, f64, Vec<usize>)> = None;
    for &t in &thresholds {
        while next < pairs.len() && pairs[next].0 <= t {
            let (_, i, j) = pairs[next];
            comps.union(i as usize, j as usize, xi);
            next += 1;
        }
        let q = comps.quality(dist.global_mean());
        points.push(SweepPoint {
            threshold: t,
            components: comps.count,
            quality: q,
        });
        if best.as_ref().is_none_or(|b| q > b.1) {
            best = Some((t, q, comps.labels()));
        }
    }
    let (threshold, q, labels) = best.expect("at least one threshold");
    let partition = Partition::from_assignment(labels, dist.n_nodes(), dist.n_layers(), threshold, q)?;
    Ok(Detection {
        partition,
        trace: SweepTrace {
            points,
            xi_min,
            xi_max,
            step,
            r,
            degenerate,
        },
    })
}

/// Communicability and distance fields used by the detection pipeline:
/// the network is symmetrized and strength-normalized before `exp`.
pub fn detection_fields(net: &MultilayerNetwork) -> Result<(CommunicabilityField, DistanceField)> {
    let sym = net.symmetrize();
    let field = communicability(&sym, CommunicabilityMode::Weighted)?;
    let dist = distance_field(&field)?;
    Ok((field, dist))
}

pub fn detect_communities(net: &MultilayerNetwork, r: usize) -> Result<Detection> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be at least 1".into()));
    }
    let (_, dist) = detection_fields(net)?;
    detect_on_distance(&dist, r)
}

/// Detection on the country-level aggregate (one layer).
pub fn detect_monolayer(net: &MultilayerNetwork, r: usize) -> Result<Detection> {
    detect_communities(&net.aggregate_monolayer(), r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReportOptions {
    /// Smallest community shown in the membership grid.
    pub min_size: usize,
    /// Number of leading non-singleton communities tallied per row.
    pub top_k: usize,
    /// Count all isolated cells of a row as one class in the Gini index
    /// instead of one class each.
    pub isolated_as_one_class: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            min_size: 30,
            top_k: 2,
            isolated_as_one_class: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    pub label: String,
    /// Cells in each of the top communities, in `top_communities` order.
    pub counts: Vec<usize>,
    pub isolated: usize,
    /// Cells in non-singleton communities outside the top ones.
    pub other: usize,
    /// Community holding most of the row's cells (smaller id on ties).
    pub dominant: usize,
    pub gini: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CommunityReport {
    pub top_communities: Vec<usize>,
    pub top_sizes: Vec<usize>,
    pub per_country: Vec<ReportRow>,
    pub per_sector: Vec<ReportRow>,
    /// `grid[node][layer]`: the community id when it has at least
    /// `min_size` members and the cell is not isolated.
    pub grid: Vec<Vec<Option<usize>>>,
    pub min_size: usize,
    pub n_communities: usize,
    pub n_isolated: usize,
}

pub fn community_report(
    partition: &Partition,
    net: &MultilayerNetwork,
    min_size: usize,
    top_k: usize,
) -> Result<CommunityReport> {
    community_report_with(
        partition,
        net,
        ReportOptions {
            min_size,
            top_k,
            ..Default::default()
        },
    )
}

pub fn community_report_with(
    partition: &Partition,
    net: &MultilayerNetwork,
    opts: ReportOptions,
) -> Result<CommunityReport> {
    if partition.n_nodes() != net.n_nodes() || partition.n_layers() != net.n_layers() {
        return Err(Error::InvalidArgument(format!(
            "partition is {}x{}, network {}x{}",
            partition.n_nodes(),
            partition.n_layers(),
            net.n_nodes(),
            net.n_layers()
        )));
    }
    let (n, l) = (net.n_nodes(), net.n_layers());
    let sizes = partition.sizes();
    let top: Vec<usize> = (0..sizes.len()).filter(|&c| sizes[c] >= 2).take(opts.top_k).collect();

    let row = |label: &str, cells: &[usize]| -> Result<ReportRow> {
        let mut tally: std::collections::BTreeMap<usize, usize> = Default::default();
        for &a in cells {
            *tally.entry(partition.assignment()[a]).or_default() += 1;
        }
        let counts = top.iter().map(|c| tally.get(c).copied().unwrap_or(0)).collect::<Vec<_>>();
        let isolated = cells.iter().filter(|&&a| partition.is_isolated(a)).count();
        let other = cells.len() - isolated - counts.iter().sum::<usize>();
        let mut dominant = 0;
        let mut most = 0;
        for (&c, &k) in &tally {
            if k > most {
                most = k;
                dominant = c;
            }
        }
        let total = cells.len() as f64;
        let mut classes: Vec<f64> = tally
            .iter()
            .filter(|(&c, _)| !(opts.isolated_as_one_class && sizes[c] == 1))
            .map(|(_, &k)| k as f64 / total)
            .collect();
        if opts.isolated_as_one_class && isolated > 0 {
            classes.push(isolated as f64 / total);
        }
        Ok(ReportRow {
            label: label.to_string(),
            counts,
            isolated,
            other,
            dominant,
            gini: gini_heterogeneity(&classes)?,
        })
    };

    let per_country = (0..n)
        .map(|i| {
            let cells: Vec<usize> = (0..l).map(|a| a * n + i).collect();
            row(&net.node_labels()[i], &cells)
        })
        .collect::<Result<Vec<_>>>()?;
    let per_sector = (0..l)
        .map(|a| {
            let cells: Vec<usize> = (0..n).map(|i| a * n + i).collect();
            row(&net.layer_labels()[a], &cells)
        })
        .collect::<Result<Vec<_>>>()?;
    let grid = (0..n)
        .map(|i| {
            (0..l)
                .map(|a| {
                    let c = partition.assignment()[a * n + i];
                    (sizes[c] >= opts.min_size && sizes[c] >= 2).then_some(c)
                })
                .collect()
        })
        .collect();
    Ok(CommunityReport {
        top_sizes: top.iter().map(|&c| sizes[c]).collect(),
        top_communities: top,
        per_country,
        per_sector,
        grid,
        min_size: opts.min_size,
        n_communities: partition.n_communities(),
        n_isolated: partition.isolated().len(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankDirection {
    In,
    Out,
    /// In plus out.
    Sum,
}

/// Members of community `id` as a cell set.
pub fn community_members(partition: &Partition, id: usize) -> Result<MemberSet> {
    check_index("community", id, partition.n_communities())?;
    Ok(partition
        .members(id)
        .into_iter()
        .map(|a| Cell::new(a % partition.n_nodes(), a / partition.n_nodes()))
        .collect())
}

/// Member cells sorted by total strength inside the sub-network they span,
/// descending; equal strengths keep supra order.
pub fn rank_members(
    net: &MultilayerNetwork,
    members: &MemberSet,
    direction: RankDirection,
) -> Result<Vec<(Cell, f64)>> {
    if members.is_empty() {
        return Err(Error::InvalidArgument("empty member set".into()));
    }
    let sub = net.subnetwork(members)?;
    let strengths = match direction {
        RankDirection::In => sub.strengths(Direction::In),
        RankDirection::Out => sub.strengths(Direction::Out),
        RankDirection::Sum => sub
            .strengths(Direction::In)
            .iter()
            .zip(sub.strengths(Direction::Out))
            .map(|(a, b)| a + b)
            .collect(),
    };
    let mut ranked: Vec<(Cell, f64)> = sub.cells().iter().copied().zip(strengths).collect();
    ranked.sort_by(|a, b| b.1.total_cmp(&a.1));
    Ok(ranked)
}
