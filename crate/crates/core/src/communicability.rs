//! Multilayer communicability `G = exp(A)` and the quantities built on it:
//! receive/broadcast centralities, the communicability distance
//! `xi_ab = G_aa - 2 G_ab + G_bb`, the cohesion `gamma` and the partition
//! quality `Q`.

use nalgebra::DMatrix;

use crate::community::Partition;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::expm::expm;
use crate::net::{check_index, Cell, Direction, MultilayerNetwork, NormalizeMode};

pub use crate::expm::{expm_with, ExpmMethod};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CommunicabilityMode {
    /// `exp(A)` of the binarized supra matrix.
    Binary,
    /// `exp(W̄)` of the strength-normalized supra matrix.
    Weighted,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CommunicabilityField {
    g: DMatrix<f64>,
    mode: CommunicabilityMode,
    n_nodes: usize,
    n_layers: usize,
    symmetric_source: bool,
}

impl CommunicabilityField {
    /// Wraps an already computed communicability matrix.
    pub fn from_matrix(
        g: DMatrix<f64>,
        mode: CommunicabilityMode,
        n_nodes: usize,
        n_layers: usize,
        symmetric_source: bool,
    ) -> Result<Self> {
        let nl = n_nodes * n_layers;
        if g.nrows() != nl || g.ncols() != nl {
            return Err(Error::InvalidArgument(format!(
                "communicability matrix is {}x{}, expected {nl}x{nl}",
                g.nrows(),
                g.ncols()
            )));
        }
        Ok(CommunicabilityField {
            g,
            mode,
            n_nodes,
            n_layers,
            symmetric_source,
        })
    }

    pub fn g(&self) -> &DMatrix<f64> {
        &self.g
    }

    pub fn mode(&self) -> CommunicabilityMode {
        self.mode
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn n_layers(&self) -> usize {
        self.n_layers
    }

    pub fn n_cells(&self) -> usize {
        self.g.nrows()
    }

    pub fn symmetric_source(&self) -> bool {
        self.symmetric_source
    }
}

/// Communicability of a network.
///
/// In weighted mode a symmetric network is normalized as `S^-1/2 W S^-1/2`
/// and a directed one as `S_in^-1/2 W S_out^-1/2`; both use total strengths.
pub fn communicability(net: &MultilayerNetwork, mode: CommunicabilityMode) -> Result<CommunicabilityField> {
    let symmetric = net.is_symmetric();
    let source = match mode {
        CommunicabilityMode::Binary => net.binarize(),
        CommunicabilityMode::Weighted => net.normalize_strength(if symmetric {
            NormalizeMode::Symmetric
        } else {
            NormalizeMode::Directed
        })?,
    };
    // route through the spectral path whenever the source allows it
    let m = if symmetric {
        let s = source.supra();
        let n = s.nrows();
        DMatrix::from_fn(n, n, |i, j| (s[(i, j)] + s[(j, i)]) / 2.0)
    } else {
        source.supra().clone()
    };
    let g = expm(&m)?;
    CommunicabilityField::from_matrix(g, mode, net.n_nodes(), net.n_layers(), symmetric)
}

/// Selects one partner layer or all of them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LayerSel {
    All,
    Layer(usize),
}

fn layer_range(field: &CommunicabilityField, sel: LayerSel) -> Result<std::ops::Range<usize>> {
    let n = field.n_nodes;
    match sel {
        LayerSel::All => Ok(0..field.n_cells()),
        LayerSel::Layer(b) => {
            check_index("layer", b, field.n_layers)?;
            Ok(b * n..(b + 1) * n)
        }
    }
}

/// `sum_j G^[b,a]_ji`: walks arriving at `(node, layer)` from layer `b`
/// (or from every layer).
pub fn receive_centrality(field: &CommunicabilityField, node: usize, layer: usize, from: LayerSel) -> Result<f64> {
    check_index("node", node, field.n_nodes)?;
    check_index("layer", layer, field.n_layers)?;
    let a = layer * field.n_nodes + node;
    Ok(layer_range(field, from)?.map(|j| field.g[(j, a)]).sum())
}

/// `sum_j G^[a,b]_ij`: walks leaving `(node, layer)` towards layer `b`
/// (or towards every layer).
pub fn broadcast_centrality(field: &CommunicabilityField, node: usize, layer: usize, to: LayerSel) -> Result<f64> {
    check_index("node", node, field.n_nodes)?;
    check_index("layer", layer, field.n_layers)?;
    let a = layer * field.n_nodes + node;
    Ok(layer_range(field, to)?.map(|j| field.g[(a, j)]).sum())
}

/// Total receive (`In`) or broadcast (`Out`) centrality of every cell.
pub fn centrality_table(field: &CommunicabilityField, direction: Direction) -> Vec<f64> {
    let g = &field.g;
    Execution::default().map_range(field.n_cells(), |a| match direction {
        Direction::In => g.column(a).sum(),
        Direction::Out => g.row(a).sum(),
    })
}

/// Denominator used for the mean distances.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MeanConvention {
    /// Means over all `NL` entries, self-distance included. With this choice
    /// the cohesion sums to zero over all ordered pairs.
    #[default]
    AllEntries,
    /// Means over the `NL - 1` other cells.
    ExcludeSelf,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DistanceField {
    xi: DMatrix<f64>,
    row_means: Vec<f64>,
    global_mean: f64,
    n_nodes: usize,
    n_layers: usize,
    convention: MeanConvention,
}

impl DistanceField {
    pub fn xi(&self) -> &DMatrix<f64> {
        &self.xi
    }

    pub fn row_means(&self) -> &[f64] {
        &self.row_means
    }

    pub fn global_mean(&self) -> f64 {
        self.global_mean
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn n_layers(&self) -> usize {
        self.n_layers
    }

    pub fn n_cells(&self) -> usize {
        self.xi.nrows()
    }

    pub fn convention(&self) -> MeanConvention {
        self.convention
    }
}

pub fn distance_field(field: &CommunicabilityField) -> Result<DistanceField> {
    distance_field_with(Execution::default(), field, MeanConvention::AllEntries)
}

pub fn distance_field_with(
    exec: Execution,
    field: &CommunicabilityField,
    convention: MeanConvention,
) -> Result<DistanceField> {
    if !field.symmetric_source {
        return Err(Error::Contract(
            "communicability distance needs a field built from a symmetric network".into(),
        ));
    }
    let g = &field.g;
    let nl = field.n_cells();
    let diag: Vec<f64> = (0..nl).map(|i| g[(i, i)]).collect();
    let mut data = vec![0.0; nl * nl];
    // column-major: chunk j is column j; the sum G_ii + G_jj is commutative
    // so the result is exactly symmetric
    exec.for_each_chunk(&mut data, nl, |j, col| {
        for (i, x) in col.iter_mut().enumerate() {
            *x = (diag[i] + diag[j]) - 2.0 * g[(i, j)];
        }
    });
    let xi = DMatrix::from_vec(nl, nl, data);
    let row_sums: Vec<f64> = exec.map_range(nl, |i| xi.column(i).iter().sum());
    let (row_den, global_den) = match convention {
        MeanConvention::AllEntries => (nl as f64, (nl * nl) as f64),
        MeanConvention::ExcludeSelf => {
            let d = nl.saturating_sub(1).max(1) as f64;
            (d, nl as f64 * d)
        }
    };
    let row_means = row_sums.iter().map(|s| s / row_den).collect();
    let global_mean = row_sums.iter().sum::<f64>() / global_den;
    Ok(DistanceField {
        xi,
        row_means,
        global_mean,
        n_nodes: field.n_nodes,
        n_layers: field.n_layers,
        convention,
    })
}

/// `gamma_ab = mean_a + mean_b - xi_ab - global mean`.
pub fn cohesion(dist: &DistanceField, cell_a: Cell, cell_b: Cell) -> Result<f64> {
    let n = dist.n_nodes;
    for c in [cell_a, cell_b] {
        check_index("node", c.node, n)?;
        check_index("layer", c.layer, dist.n_layers)?;
    }
    let a = cell_a.layer * n + cell_a.node;
    let b = cell_b.layer * n + cell_b.node;
    Ok(cohesion_at(dist, a, b))
}

#[inline]
pub(crate) fn cohesion_at(dist: &DistanceField, a: usize, b: usize) -> f64 {
    dist.row_means[a] + dist.row_means[b] - dist.xi[(a, b)] - dist.global_mean
}

/// Quality of a community contribution from its aggregates:
/// `2 |c| sum_r - X_c - |c|^2 m`, where `X_c` sums the distances over all
/// ordered member pairs.
#[inline]
pub(crate) fn community_quality(size: usize, sum_row_means: f64, internal_xi: f64, global_mean: f64) -> f64 {
    let s = size as f64;
    2.0 * s * sum_row_means - internal_xi - s * s * global_mean
}

/// Sum of the cohesion over all ordered pairs (self-pairs included) that
/// share a community.
pub fn quality(dist: &DistanceField, partition: &Partition) -> Result<f64> {
    if partition.n_cells() != dist.n_cells() {
        return Err(Error::InvalidArgument(format!(
            "partition covers {} cells, distance field {}",
            partition.n_cells(),
            dist.n_cells()
        )));
    }
    let mut q = 0.0;
    for c in 0..partition.n_communities() {
        let members = partition.members(c);
        let sum_r: f64 = members.iter().map(|&a| dist.row_means[a]).sum();
        let mut internal = 0.0;
        for &b in &members {
            let col = dist.xi.column(b);
            for &a in &members {
                internal += col[a];
            }
        }
        q += community_quality(members.len(), sum_r, internal, dist.global_mean);
    }
    Ok(q)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::net::fixtures::{single_layer, zero};
    use std::f64::consts::E;

    /// Two cells joined by a unit edge: `G = [[cosh 1, sinh 1], [sinh 1, cosh 1]]`.
    pub fn pair_field() -> CommunicabilityField {
        communicability(&single_layer(&[&[0.0, 1.0], &[1.0, 0.0]]), CommunicabilityMode::Weighted).unwrap()
    }

    #[test]
    fn empty_network_gives_identity() {
        for mode in [CommunicabilityMode::Binary, CommunicabilityMode::Weighted] {
            let f = communicability(&zero(2, 3), mode).unwrap();
            assert_eq!(f.g(), &DMatrix::identity(6, 6));
        }
    }

    #[test]
    fn pair_closed_form() {
        let f = pair_field();
        assert!((f.g()[(0, 0)] - 1f64.cosh()).abs() < 1e-12);
        assert!((f.g()[(0, 1)] - 1f64.sinh()).abs() < 1e-12);
        assert!(f.symmetric_source());
    }

    #[test]
    fn block_diagonal_source_gives_block_diagonal_field() {
        let net = single_layer(&[
            &[0.0, 2.0, 0.0, 0.0],
            &[2.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
            &[0.0, 0.0, 1.0, 0.0],
        ]);
        let f = communicability(&net, CommunicabilityMode::Binary).unwrap();
        for i in 0..2 {
            for j in 2..4 {
                assert_eq!(f.g()[(i, j)], 0.0);
                assert_eq!(f.g()[(j, i)], 0.0);
            }
        }
    }

    #[test]
    fn centralities() {
        let id = CommunicabilityField::from_matrix(DMatrix::identity(4, 4), CommunicabilityMode::Binary, 2, 2, true)
            .unwrap();
        assert_eq!(receive_centrality(&id, 1, 1, LayerSel::All).unwrap(), 1.0);
        assert_eq!(broadcast_centrality(&id, 0, 1, LayerSel::All).unwrap(), 1.0);
        assert_eq!(broadcast_centrality(&id, 0, 1, LayerSel::Layer(0)).unwrap(), 0.0);
        assert!(receive_centrality(&id, 0, 2, LayerSel::All).is_err());
        assert!(receive_centrality(&id, 0, 0, LayerSel::Layer(2)).is_err());

        let f = pair_field();
        for node in 0..2 {
            assert!((receive_centrality(&f, node, 0, LayerSel::All).unwrap() - E).abs() < 1e-12);
            assert!((broadcast_centrality(&f, node, 0, LayerSel::All).unwrap() - E).abs() < 1e-12);
        }
    }

    #[test]
    fn directed_chain_centralities() {
        let chain = single_layer(&[&[0.0, 1.0], &[0.0, 0.0]]);
        let f = communicability(&chain, CommunicabilityMode::Binary).unwrap();
        let bc: Vec<f64> = (0..2).map(|n| broadcast_centrality(&f, n, 0, LayerSel::All).unwrap()).collect();
        let rc: Vec<f64> = (0..2).map(|n| receive_centrality(&f, n, 0, LayerSel::All).unwrap()).collect();
        assert!((bc[0] - 2.0).abs() < 1e-15 && (bc[1] - 1.0).abs() < 1e-15);
        assert!(rc[1] > rc[0]);
        assert_eq!(centrality_table(&f, Direction::Out), bc);
        assert!(!f.symmetric_source());
        assert!(matches!(distance_field(&f), Err(Error::Contract(_))));
    }

    #[test]
    fn distance_cohesion_quality_on_pair() {
        let d = distance_field(&pair_field()).unwrap();
        assert_eq!(d.xi()[(0, 0)], 0.0);
        assert!((d.xi()[(0, 1)] - 2.0 / E).abs() < 1e-12);
        assert!((d.global_mean() - 1.0 / E).abs() < 1e-12);
        let (a, b) = (Cell::new(0, 0), Cell::new(1, 0));
        assert!((cohesion(&d, a, b).unwrap() + 1.0 / E).abs() < 1e-12);
        assert!((cohesion(&d, a, a).unwrap() - 1.0 / E).abs() < 1e-12);
        assert!(cohesion(&d, a, Cell::new(2, 0)).is_err());

        let singles = Partition::from_assignment(vec![0, 1], 2, 1, 0.0, 0.0).unwrap();
        assert!((quality(&d, &singles).unwrap() - 2.0 / E).abs() < 1e-12);
        let together = Partition::from_assignment(vec![0, 0], 2, 1, 0.0, 0.0).unwrap();
        assert!(quality(&d, &together).unwrap().abs() < 1e-12);
        let wrong = Partition::from_assignment(vec![0, 0, 0], 3, 1, 0.0, 0.0).unwrap();
        assert!(quality(&d, &wrong).is_err());
    }

    #[test]
    fn identity_field_distance() {
        let id = CommunicabilityField::from_matrix(DMatrix::identity(2, 2), CommunicabilityMode::Binary, 2, 1, true)
            .unwrap();
        let d = distance_field(&id).unwrap();
        assert_eq!(d.xi()[(0, 1)], 2.0);
    }

    #[test]
    fn exclude_self_means() {
        let d = distance_field_with(Execution::Sequential, &pair_field(), MeanConvention::ExcludeSelf).unwrap();
        assert!((d.row_means()[0] - 2.0 / E).abs() < 1e-12);
        assert!((d.global_mean() - 2.0 / E).abs() < 1e-12);
    }
}
