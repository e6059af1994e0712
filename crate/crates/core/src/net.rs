//! The multilayer network model.
//!
//! A network has `N` nodes (countries) replicated across `L` layers
//! (sectors). Its weights live in a dense `NL x NL` supra matrix ordered
//! layer-major: the cell `(node, layer)` sits at supra index
//! `layer * N + node`, so the block for a layer pair `(a, b)` is the
//! contiguous `N x N` sub-matrix at rows `a*N..`, columns `b*N..`. Rows are
//! sellers (sources), columns are buyers (targets).
//!
//! Weights on the node diagonal of any block (a country trading with itself,
//! within one sector or across two) are stored as supplied. They take part in
//! the communicability computations but are skipped by every strength and
//! degree sum.

use std::collections::{BTreeSet, HashMap};

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// A `(node, layer)` position in the multilayer network.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub node: usize,
    pub layer: usize,
}

impl Cell {
    pub fn new(node: usize, layer: usize) -> Self {
        Cell { node, layer }
    }
}

/// Position of a cell in the layer-major supra ordering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SupraIndex(pub usize);

impl SupraIndex {
    pub fn new(cell: Cell, n_nodes: usize, n_layers: usize) -> Result<Self> {
        check_index("node", cell.node, n_nodes)?;
        check_index("layer", cell.layer, n_layers)?;
        Ok(SupraIndex(cell.layer * n_nodes + cell.node))
    }

    pub fn cell(self, n_nodes: usize) -> Cell {
        Cell {
            node: self.0 % n_nodes,
            layer: self.0 / n_nodes,
        }
    }
}

/// `layer * n_nodes + node`, validated against the network shape.
pub fn supra_index(node: usize, layer: usize, n_nodes: usize, n_layers: usize) -> Result<SupraIndex> {
    SupraIndex::new(Cell::new(node, layer), n_nodes, n_layers)
}

pub(crate) fn check_index(what: &'static str, index: usize, bound: usize) -> Result<()> {
    if index < bound {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { what, index, bound })
    }
}

/// A deduplicated, ordered set of cells.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MemberSet {
    cells: BTreeSet<Cell>,
}

impl MemberSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, cell: Cell) -> bool {
        self.cells.insert(cell)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, cell: &Cell) -> bool {
        self.cells.contains(cell)
    }

    /// Cells ordered by `(node, layer)`.
    pub fn iter(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter()
    }

    /// Every cell of an `n_nodes x n_layers` network.
    pub fn all(n_nodes: usize, n_layers: usize) -> Self {
        (0..n_layers)
            .flat_map(|l| (0..n_nodes).map(move |n| Cell::new(n, l)))
            .collect()
    }
}

impl FromIterator<Cell> for MemberSet {
    fn from_iter<I: IntoIterator<Item = Cell>>(iter: I) -> Self {
        MemberSet {
            cells: iter.into_iter().collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Meta {
    pub year: i32,
    pub source: String,
    pub currency_unit: String,
    /// Number of negative source entries clamped to zero at ingest.
    pub clamped: u64,
}

impl Default for Meta {
    fn default() -> Self {
        Meta {
            year: 0,
            source: String::new(),
            currency_unit: "millions USD".to_string(),
            clamped: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    In,
    Out,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NormalizeMode {
    /// `S_in^{-1/2} W S_out^{-1/2}`
    Directed,
    /// `S^{-1/2} W S^{-1/2}`, only valid for symmetric weights.
    Symmetric,
}

/// Immutable multilayer network with label registries.
#[derive(Clone, Debug, PartialEq)]
pub struct MultilayerNetwork {
    node_labels: Vec<String>,
    layer_labels: Vec<String>,
    supra: DMatrix<f64>,
    meta: Meta,
}

impl MultilayerNetwork {
    pub fn new(
        node_labels: Vec<String>,
        layer_labels: Vec<String>,
        supra: DMatrix<f64>,
        meta: Meta,
    ) -> Result<Self> {
        if node_labels.is_empty() || layer_labels.is_empty() {
            return Err(Error::InvalidArgument(
                "a network needs at least one node and one layer".into(),
            ));
        }
        ensure_unique("node", &node_labels)?;
        ensure_unique("layer", &layer_labels)?;
        let n = node_labels.len() * layer_labels.len();
        if supra.nrows() != n || supra.ncols() != n {
            return Err(Error::InvalidArgument(format!(
                "supra matrix is {}x{}, expected {n}x{n}",
                supra.nrows(),
                supra.ncols()
            )));
        }
        if let Some((pos, w)) = supra
            .iter()
            .enumerate()
            .find(|(_, w)| !w.is_finite() || **w < 0.0)
        {
            // column-major storage
            let (r, c) = (pos % n, pos / n);
            return Err(Error::InvalidArgument(format!(
                "weight at ({r}, {c}) is {w}; weights must be finite and non-negative"
            )));
        }
        Ok(MultilayerNetwork {
            node_labels,
            layer_labels,
            supra,
            meta,
        })
    }

    /// Builds a network from row-major supra weights.
    pub fn from_rows(
        node_labels: &[&str],
        layer_labels: &[&str],
        rows: &[&[f64]],
    ) -> Result<Self> {
        let n = node_labels.len() * layer_labels.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument(format!(
                "expected {n} rows of {n} weights"
            )));
        }
        let supra = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
        Self::new(
            node_labels.iter().map(|s| s.to_string()).collect(),
            layer_labels.iter().map(|s| s.to_string()).collect(),
            supra,
            Meta::default(),
        )
    }

    pub fn n_nodes(&self) -> usize {
        self.node_labels.len()
    }

    pub fn n_layers(&self) -> usize {
        self.layer_labels.len()
    }

    /// `N * L`
    pub fn n_cells(&self) -> usize {
        self.supra.nrows()
    }

    pub fn node_labels(&self) -> &[String] {
        &self.node_labels
    }

    pub fn layer_labels(&self) -> &[String] {
        &self.layer_labels
    }

    pub fn meta(&self) -> &Meta {
        &self.meta
    }

    pub fn supra(&self) -> &DMatrix<f64> {
        &self.supra
    }

    pub fn node_index(&self, label: &str) -> Option<usize> {
        self.node_labels.iter().position(|l| l == label)
    }

    pub fn layer_index(&self, label: &str) -> Option<usize> {
        self.layer_labels.iter().position(|l| l == label)
    }

    pub fn index_of(&self, cell: Cell) -> Result<SupraIndex> {
        SupraIndex::new(cell, self.n_nodes(), self.n_layers())
    }

    pub fn cell_of(&self, index: usize) -> Cell {
        SupraIndex(index).cell(self.n_nodes())
    }

    /// `"<node>/<layer>"` label for a cell.
    pub fn cell_label(&self, cell: Cell) -> String {
        format!("{}/{}", self.node_labels[cell.node], self.layer_labels[cell.layer])
    }

    /// Weight from `from` to `to`.
    pub fn weight(&self, from: Cell, to: Cell) -> Result<f64> {
        let i = self.index_of(from)?.0;
        let j = self.index_of(to)?.0;
        Ok(self.supra[(i, j)])
    }

    /// The `N x N` block `W^[a,b]`: rows are source nodes in layer `a`,
    /// columns target nodes in layer `b`.
    pub fn block(&self, layer_a: usize, layer_b: usize) -> Result<DMatrix<f64>> {
        check_index("layer", layer_a, self.n_layers())?;
        check_index("layer", layer_b, self.n_layers())?;
        let n = self.n_nodes();
        Ok(self
            .supra
            .view((layer_a * n, layer_b * n), (n, n))
            .into_owned())
    }

    pub fn total_weight(&self) -> f64 {
        self.supra.sum()
    }

    pub fn max_weight(&self) -> f64 {
        self.supra.iter().copied().fold(0.0, f64::max)
    }

    pub fn is_symmetric(&self) -> bool {
        is_symmetric(&self.supra)
    }

    fn with_supra(&self, supra: DMatrix<f64>) -> Self {
        MultilayerNetwork {
            node_labels: self.node_labels.clone(),
            layer_labels: self.layer_labels.clone(),
            supra,
            meta: self.meta.clone(),
        }
    }

    /// 1 where the weight is positive, 0 elsewhere.
    pub fn binarize(&self) -> Self {
        self.with_supra(self.supra.map(|w| if w > 0.0 { 1.0 } else { 0.0 }))
    }

    /// Splits into (intralayer, interlayer) parts: the first keeps the
    /// diagonal blocks, the second everything else.
    pub fn split_intra_inter(&self) -> (Self, Self) {
        let n = self.n_nodes();
        let intra = DMatrix::from_fn(self.n_cells(), self.n_cells(), |i, j| {
            if i / n == j / n {
                self.supra[(i, j)]
            } else {
                0.0
            }
        });
        let inter = DMatrix::from_fn(self.n_cells(), self.n_cells(), |i, j| {
            if i / n != j / n {
                self.supra[(i, j)]
            } else {
                0.0
            }
        });
        (self.with_supra(intra), self.with_supra(inter))
    }

    /// `(W + W^T) / 2`. The result is bit-exactly symmetric.
    pub fn symmetrize(&self) -> Self {
        let w = &self.supra;
        let n = self.n_cells();
        self.with_supra(DMatrix::from_fn(n, n, |i, j| (w[(i, j)] + w[(j, i)]) / 2.0))
    }

    /// Total strength of every cell in supra order, summing over all layers
    /// and skipping partners that are the same node.
    pub fn total_strengths(&self, direction: Direction) -> Vec<f64> {
        let n = self.n_nodes();
        let nl = self.n_cells();
        let w = &self.supra;
        (0..nl)
            .map(|a| {
                let node = a % n;
                (0..nl)
                    .filter(|b| b % n != node)
                    .map(|b| match direction {
                        Direction::Out => w[(a, b)],
                        Direction::In => w[(b, a)],
                    })
                    .sum()
            })
            .collect()
    }

    /// Strength normalization. Rows and columns of zero-strength cells are
    /// scaled by zero.
    pub fn normalize_strength(&self, mode: NormalizeMode) -> Result<Self> {
        let inv_sqrt = |s: Vec<f64>| -> Vec<f64> {
            s.into_iter()
                .map(|x| if x > 0.0 { 1.0 / x.sqrt() } else { 0.0 })
                .collect()
        };
        let (row_scale, col_scale) = match mode {
            NormalizeMode::Directed => (
                inv_sqrt(self.total_strengths(Direction::In)),
                inv_sqrt(self.total_strengths(Direction::Out)),
            ),
            NormalizeMode::Symmetric => {
                if !self.is_symmetric() {
                    return Err(Error::Contract(
                        "symmetric normalization requires a symmetric supra matrix".into(),
                    ));
                }
                let s = inv_sqrt(self.total_strengths(Direction::Out));
                (s.clone(), s)
            }
        };
        let n = self.n_cells();
        let w = &self.supra;
        let scaled = DMatrix::from_fn(n, n, |i, j| row_scale[i] * w[(i, j)] * col_scale[j]);
        let out = self.with_supra(scaled);
        if mode == NormalizeMode::Symmetric {
            // row and column scale are equal, but floating-point products are
            // not commutative in order; make the symmetry exact.
            return Ok(out.symmetrize());
        }
        Ok(out)
    }

    /// Single-layer country network: weight(c, d) sums `W^[a,b]_cd` over all
    /// layer pairs.
    pub fn aggregate_monolayer(&self) -> Self {
        let n = self.n_nodes();
        let mut agg = DMatrix::<f64>::zeros(n, n);
        for j in 0..self.n_cells() {
            for i in 0..self.n_cells() {
                agg[(i % n, j % n)] += self.supra[(i, j)];
            }
        }
        let layer = if self.n_layers() == 1 {
            self.layer_labels[0].clone()
        } else {
            "TOTAL".to_string()
        };
        MultilayerNetwork {
            node_labels: self.node_labels.clone(),
            layer_labels: vec![layer],
            supra: agg,
            meta: self.meta.clone(),
        }
    }

    /// Keeps only the weights among `members`.
    pub fn subnetwork(&self, members: &MemberSet) -> Result<SubNetwork> {
        if members.is_empty() {
            return Err(Error::InvalidArgument("member set is empty".into()));
        }
        let mut cells = Vec::with_capacity(members.len());
        for &c in members.iter() {
            self.index_of(c)?;
            cells.push(c);
        }
        // present members in supra order
        cells.sort_by_key(|c| c.layer * self.n_nodes() + c.node);
        let idx: Vec<usize> = cells
            .iter()
            .map(|c| c.layer * self.n_nodes() + c.node)
            .collect();
        let m = idx.len();
        let weights = DMatrix::from_fn(m, m, |a, b| self.supra[(idx[a], idx[b])]);
        Ok(SubNetwork { cells, weights })
    }

    /// Removes layers that carry no weight in any block.
    pub fn drop_zero_layers(&self) -> Result<Self> {
        let n = self.n_nodes();
        let keep: Vec<usize> = (0..self.n_layers())
            .filter(|&l| {
                let rows = self.supra.rows(l * n, n).iter().any(|w| *w != 0.0);
                let cols = self.supra.columns(l * n, n).iter().any(|w| *w != 0.0);
                rows || cols
            })
            .collect();
        if keep.len() == self.n_layers() {
            return Ok(self.clone());
        }
        let idx: Vec<usize> = keep
            .iter()
            .flat_map(|&l| (0..n).map(move |i| l * n + i))
            .collect();
        let supra = DMatrix::from_fn(idx.len(), idx.len(), |a, b| self.supra[(idx[a], idx[b])]);
        MultilayerNetwork::new(
            self.node_labels.clone(),
            keep.iter().map(|&l| self.layer_labels[l].clone()).collect(),
            supra,
            self.meta.clone(),
        )
    }
}

/// Restriction of a network to a set of member cells. Keeps the original
/// `(node, layer)` identity of each retained cell.
#[derive(Clone, Debug, PartialEq)]
pub struct SubNetwork {
    cells: Vec<Cell>,
    weights: DMatrix<f64>,
}

impl SubNetwork {
    /// Member cells in supra order of the parent network.
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn weights(&self) -> &DMatrix<f64> {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Weight between two parent cells, `None` if either is not a member.
    pub fn weight(&self, from: Cell, to: Cell) -> Option<f64> {
        let a = self.cells.iter().position(|c| *c == from)?;
        let b = self.cells.iter().position(|c| *c == to)?;
        Some(self.weights[(a, b)])
    }

    /// Total strength of each member within the sub-network, skipping
    /// partners that are the same node.
    pub fn strengths(&self, direction: Direction) -> Vec<f64> {
        let m = self.cells.len();
        (0..m)
            .map(|a| {
                (0..m)
                    .filter(|&b| self.cells[b].node != self.cells[a].node)
                    .map(|b| match direction {
                        Direction::Out => self.weights[(a, b)],
                        Direction::In => self.weights[(b, a)],
                    })
                    .sum()
            })
            .collect()
    }
}

pub(crate) fn is_symmetric(m: &DMatrix<f64>) -> bool {
    let n = m.nrows();
    if n != m.ncols() {
        return false;
    }
    let scale = m.iter().fold(0.0f64, |acc, x| acc.max(x.abs())).max(1.0);
    for j in 0..n {
        for i in (j + 1)..n {
            if (m[(i, j)] - m[(j, i)]).abs() > 1e-12 * scale {
                return false;
            }
        }
    }
    true
}

fn ensure_unique(what: &str, labels: &[String]) -> Result<()> {
    let mut seen = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if let Some(prev) = seen.insert(l.as_str(), i) {
            return Err(Error::InvalidArgument(format!(
                "duplicate {what} label {l:?} at positions {prev} and {i}"
            )));
        }
    }
    Ok(())
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use proptest::prelude::*;

    fn rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
        (0..m.nrows())
            .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
            .collect()
    }

    #[test]
    fn supra_index_examples() {
        assert_eq!(supra_index(0, 0, 44, 56).unwrap().0, 0);
        assert_eq!(supra_index(3, 2, 44, 56).unwrap().0, 91);
        assert!(matches!(
            supra_index(44, 0, 44, 56),
            Err(Error::IndexOutOfRange { what: "node", .. })
        ));
        assert!(supra_index(0, 56, 44, 56).is_err());
        for l in 0..3 {
            for n in 0..5 {
                let s = supra_index(n, l, 5, 3).unwrap();
                assert_eq!(s.cell(5), Cell::new(n, l));
            }
        }
    }

    #[test]
    fn block_extraction() {
        let t1 = t1();
        assert_eq!(rows(&t1.block(0, 0).unwrap()), vec![vec![0.0, 2.0], vec![1.0, 0.0]]);
        assert_eq!(rows(&t1.block(0, 1).unwrap()), vec![vec![1.0, 0.0], vec![0.0, 3.0]]);
        assert!(t1.block(2, 0).is_err());
        let z = zero(3, 2);
        assert_eq!(z.block(1, 0).unwrap(), DMatrix::zeros(3, 3));
    }

    #[test]
    fn blocks_reassemble_supra() {
        let t1 = t1();
        let n = t1.n_nodes();
        let mut re = DMatrix::zeros(4, 4);
        for a in 0..2 {
            for b in 0..2 {
                re.view_mut((a * n, b * n), (n, n)).copy_from(&t1.block(a, b).unwrap());
            }
        }
        assert_eq!(&re, t1.supra());
    }

    #[test]
    fn binarize_t1() {
        let b = t1().binarize();
        assert_eq!(
            rows(b.supra()),
            vec![
                vec![0.0, 1.0, 1.0, 0.0],
                vec![1.0, 0.0, 0.0, 1.0],
                vec![0.0, 1.0, 0.0, 1.0],
                vec![1.0, 0.0, 1.0, 0.0],
            ]
        );
        assert_eq!(b.binarize(), b);
        assert_eq!(zero(2, 2).binarize(), zero(2, 2));
    }

    #[test]
    fn split_t1() {
        let t1 = t1();
        let (intra, inter) = t1.split_intra_inter();
        assert_eq!(intra.block(0, 0).unwrap(), t1.block(0, 0).unwrap());
        assert_eq!(intra.block(1, 1).unwrap(), t1.block(1, 1).unwrap());
        assert_eq!(intra.block(0, 1).unwrap(), DMatrix::zeros(2, 2));
        assert_eq!(inter.block(1, 0).unwrap(), t1.block(1, 0).unwrap());
        assert_eq!(inter.block(0, 0).unwrap(), DMatrix::zeros(2, 2));
        assert_eq!(intra.supra() + inter.supra(), *t1.supra());

        let single = single_layer(&[&[0.0, 1.0], &[2.0, 0.0]]);
        let (a, b) = single.split_intra_inter();
        assert_eq!(a, single);
        assert_eq!(b.total_weight(), 0.0);
    }

    #[test]
    fn split_with_empty_diagonal_blocks() {
        let net = MultilayerNetwork::from_rows(
            &["u"],
            &["x", "y"],
            &[&[0.0, 5.0], &[2.0, 0.0]],
        )
        .unwrap();
        let (intra, inter) = net.split_intra_inter();
        assert_eq!(intra.total_weight(), 0.0);
        assert_eq!(inter, net);
    }

    #[test]
    fn symmetrize_t1() {
        let s = t1().symmetrize();
        assert_eq!(
            rows(s.supra()),
            vec![
                vec![0.0, 1.5, 0.5, 2.0],
                vec![1.5, 0.0, 0.5, 1.5],
                vec![0.5, 0.5, 0.0, 1.5],
                vec![2.0, 1.5, 1.5, 0.0],
            ]
        );
        assert_eq!(s.symmetrize(), s);
        assert_eq!(s.total_weight(), t1().total_weight());
    }

    #[test]
    fn normalize_star_and_complete() {
        // center 0 joined to leaves 1 and 2 with unit weights
        let star = single_layer(&[&[0.0, 1.0, 1.0], &[1.0, 0.0, 0.0], &[1.0, 0.0, 0.0]]);
        let nrm = star.normalize_strength(NormalizeMode::Symmetric).unwrap();
        let expect = 1.0 / 2f64.sqrt();
        assert!((nrm.supra()[(0, 1)] - expect).abs() < 1e-15);
        assert!((nrm.supra()[(2, 0)] - expect).abs() < 1e-15);
        assert_eq!(nrm.supra()[(1, 2)], 0.0);

        let n = 5;
        let w = 3.5;
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 0.0 } else { w }).collect())
            .collect();
        let refs: Vec<&[f64]> = rows.iter().map(|r| r.as_slice()).collect();
        let nrm = single_layer(&refs).normalize_strength(NormalizeMode::Symmetric).unwrap();
        for i in 0..n {
            for j in 0..n {
                let e = if i == j { 0.0 } else { 1.0 / (n as f64 - 1.0) };
                assert!((nrm.supra()[(i, j)] - e).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn normalize_isolated_cell_stays_zero() {
        let net = single_layer(&[&[0.0, 2.0, 0.0], &[2.0, 0.0, 0.0], &[0.0, 0.0, 0.0]]);
        for mode in [NormalizeMode::Directed, NormalizeMode::Symmetric] {
            let nrm = net.normalize_strength(mode).unwrap();
            assert!(nrm.supra().row(2).iter().all(|w| *w == 0.0));
            assert!(nrm.supra().column(2).iter().all(|w| *w == 0.0));
            assert!(nrm.supra().iter().all(|w| w.is_finite()));
        }
    }

    #[test]
    fn normalize_symmetric_rejects_asymmetric() {
        assert!(matches!(
            t1().normalize_strength(NormalizeMode::Symmetric),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn directed_normalization_uses_in_rows_out_columns() {
        let t1 = t1();
        let s_in = t1.total_strengths(Direction::In);
        let s_out = t1.total_strengths(Direction::Out);
        let nrm = t1.normalize_strength(NormalizeMode::Directed).unwrap();
        for (i, si) in s_in.iter().enumerate() {
            for (j, sj) in s_out.iter().enumerate() {
                let e = t1.supra()[(i, j)] / (si.sqrt() * sj.sqrt());
                assert!((nrm.supra()[(i, j)] - e).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn aggregate_t1() {
        let agg = t1().aggregate_monolayer();
        assert_eq!(agg.n_layers(), 1);
        assert_eq!(rows(agg.supra()), vec![vec![1.0, 5.0], vec![6.0, 3.0]]);
        assert_eq!(agg.node_labels(), t1().node_labels());
        let single = single_layer(&[&[0.0, 1.0], &[2.0, 0.0]]);
        assert_eq!(single.aggregate_monolayer(), single);
    }

    #[test]
    fn subnetwork_examples() {
        let t1 = t1();
        let members: MemberSet = [Cell::new(0, 0), Cell::new(1, 0)].into_iter().collect();
        let sub = t1.subnetwork(&members).unwrap();
        assert_eq!(sub.len(), 2);
        assert_eq!(sub.weight(Cell::new(0, 0), Cell::new(1, 0)), Some(2.0));
        assert_eq!(sub.weight(Cell::new(1, 0), Cell::new(0, 0)), Some(1.0));
        assert_eq!(sub.weight(Cell::new(0, 0), Cell::new(0, 1)), None);

        let full = t1.subnetwork(&MemberSet::all(2, 2)).unwrap();
        assert_eq!(full.weights(), t1.supra());

        let single: MemberSet = [Cell::new(1, 1)].into_iter().collect();
        let one = t1.subnetwork(&single).unwrap();
        assert_eq!(one.weights(), &DMatrix::zeros(1, 1));

        assert!(matches!(t1.subnetwork(&MemberSet::new()), Err(Error::InvalidArgument(_))));
        let bad: MemberSet = [Cell::new(5, 0)].into_iter().collect();
        assert!(t1.subnetwork(&bad).is_err());
    }

    #[test]
    fn constructor_validation() {
        assert!(MultilayerNetwork::from_rows(&["a", "a"], &["x"], &[&[0.0, 1.0], &[1.0, 0.0]]).is_err());
        assert!(MultilayerNetwork::from_rows(&["a", "b"], &["x"], &[&[0.0, -1.0], &[1.0, 0.0]]).is_err());
        assert!(MultilayerNetwork::from_rows(&["a", "b"], &["x"], &[&[0.0, f64::NAN], &[1.0, 0.0]]).is_err());
        assert!(MultilayerNetwork::from_rows(&["a", "b"], &["x"], &[&[0.0, 1.0]]).is_err());
    }

    #[test]
    fn drop_zero_layers_removes_empty_sector() {
        let net = MultilayerNetwork::from_rows(
            &["u", "v"],
            &["x", "z", "y"],
            &[
                &[0.0, 2.0, 0.0, 0.0, 1.0, 0.0],
                &[1.0, 0.0, 0.0, 0.0, 0.0, 3.0],
                &[0.0; 6],
                &[0.0; 6],
                &[0.0, 1.0, 0.0, 0.0, 0.0, 2.0],
                &[4.0, 0.0, 0.0, 0.0, 1.0, 0.0],
            ],
        )
        .unwrap();
        let dropped = net.drop_zero_layers().unwrap();
        assert_eq!(dropped.supra(), t1().supra());
        assert_eq!(dropped.layer_labels(), &["x".to_string(), "y".to_string()]);
    }

    fn arb_net() -> impl Strategy<Value = MultilayerNetwork> {
        (1usize..4, 1usize..4).prop_flat_map(|(n, l)| {
            let nl = n * l;
            proptest::collection::vec(prop_oneof![Just(0.0), 0.0f64..100.0], nl * nl).prop_map(
                move |w| {
                    let nodes = (0..n).map(|i| format!("c{i}")).collect();
                    let layers = (0..l).map(|i| format!("s{i}")).collect();
                    MultilayerNetwork::new(nodes, layers, DMatrix::from_row_slice(nl, nl, &w), Meta::default())
                        .unwrap()
                },
            )
        })
    }

    proptest! {
        #[test]
        fn structural_invariants(net in arb_net()) {
            let (intra, inter) = net.split_intra_inter();
            prop_assert_eq!(intra.supra() + inter.supra(), net.supra().clone());

            let s = net.symmetrize();
            prop_assert_eq!(s.supra().transpose(), s.supra().clone());
            let total = net.total_weight();
            prop_assert!((s.total_weight() - total).abs() <= 1e-9 * total.max(1.0));

            let agg = net.aggregate_monolayer();
            prop_assert!((agg.total_weight() - total).abs() <= 1e-12 * total.max(1.0));

            let b = net.binarize();
            prop_assert!(b.supra().iter().all(|w| *w == 0.0 || *w == 1.0));

            let ns = s.normalize_strength(NormalizeMode::Symmetric).unwrap();
            let m = ns.supra();
            prop_assert!((m - m.transpose()).amax() <= 1e-12);
        }
    }
}
