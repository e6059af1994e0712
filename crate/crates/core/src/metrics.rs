//! Node-level degree and strength families, Herfindahl-Hirschman
//! concentration, Gini-Simpson heterogeneity and Pearson correlation.
//!
//! All strength sums skip partners that are the same node (`j != i`), in
//! every layer pair. Degrees are strengths of the binarized network.

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::net::{check_index, Cell, Direction, MultilayerNetwork};

#[derive(Clone, Debug, PartialEq)]
pub struct StrengthProfile {
    pub cell: Cell,
    pub direction: Direction,
    /// Strength exchanged with the cell's own layer.
    pub intralayer: f64,
    /// Strength exchanged with each layer, in layer order.
    pub per_layer: Vec<f64>,
    pub total: f64,
    pub total_interlayer: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StrengthKind {
    Intralayer,
    Total,
    TotalInterlayer,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConcentrationIndex {
    pub cell: Cell,
    pub direction: Direction,
    pub value: f64,
}

/// Weight between supra cells `a` and `b`, oriented by `direction`
/// (out: a -> b, in: b -> a).
#[inline]
fn partner_weight(net: &MultilayerNetwork, a: usize, b: usize, direction: Direction) -> f64 {
    match direction {
        Direction::Out => net.supra()[(a, b)],
        Direction::In => net.supra()[(b, a)],
    }
}

fn per_layer_sums(net: &MultilayerNetwork, cell: Cell, direction: Direction) -> Vec<f64> {
    let n = net.n_nodes();
    let a = cell.layer * n + cell.node;
    (0..net.n_layers())
        .map(|beta| {
            (0..n)
                .filter(|&j| j != cell.node)
                .map(|j| partner_weight(net, a, beta * n + j, direction))
                .sum()
        })
        .collect()
}

pub fn strength_profile(
    net: &MultilayerNetwork,
    node: usize,
    layer: usize,
    direction: Direction,
) -> Result<StrengthProfile> {
    check_index("node", node, net.n_nodes())?;
    check_index("layer", layer, net.n_layers())?;
    let cell = Cell::new(node, layer);
    let per_layer = per_layer_sums(net, cell, direction);
    let intralayer = per_layer[layer];
    let total: f64 = per_layer.iter().sum();
    // sum of the other layers rather than total - intralayer, so the value
    // is exactly zero when there is no interlayer weight
    let total_interlayer = per_layer
        .iter()
        .enumerate()
        .filter(|(b, _)| *b != layer)
        .map(|(_, s)| s)
        .sum();
    Ok(StrengthProfile {
        cell,
        direction,
        intralayer,
        per_layer,
        total,
        total_interlayer,
    })
}

/// One strength value per cell, in supra order.
pub fn strength_table(net: &MultilayerNetwork, direction: Direction, kind: StrengthKind) -> Vec<f64> {
    strength_table_with(Execution::default(), net, direction, kind)
}

pub fn strength_table_with(
    exec: Execution,
    net: &MultilayerNetwork,
    direction: Direction,
    kind: StrengthKind,
) -> Vec<f64> {
    exec.map_range(net.n_cells(), |a| {
        let cell = net.cell_of(a);
        let p = strength_profile(net, cell.node, cell.layer, direction)
            .expect("cell index in range");
        match kind {
            StrengthKind::Intralayer => p.intralayer,
            StrengthKind::Total => p.total,
            StrengthKind::TotalInterlayer => p.total_interlayer,
        }
    })
}

/// Herfindahl-Hirschman index of a cell's total in- or out-strength.
///
/// Shares are taken over every partner cell of a different node, across all
/// layers, and divided by the total strength in the same direction.
pub fn hhi(
    net: &MultilayerNetwork,
    node: usize,
    layer: usize,
    direction: Direction,
) -> Result<ConcentrationIndex> {
    check_index("node", node, net.n_nodes())?;
    check_index("layer", layer, net.n_layers())?;
    let cell = Cell::new(node, layer);
    let n = net.n_nodes();
    let a = layer * n + node;
    let partners = || {
        (0..net.n_cells())
            .filter(move |b| b % n != node)
            .map(move |b| partner_weight(net, a, b, direction))
    };
    let total: f64 = partners().sum();
    if total <= 0.0 {
        return Err(Error::UndefinedConcentration(cell));
    }
    let value = partners().map(|w| (w / total) * (w / total)).sum();
    Ok(ConcentrationIndex {
        cell,
        direction,
        value,
    })
}

/// HHI for every cell; `None` where the total strength is zero.
pub fn hhi_table(net: &MultilayerNetwork, direction: Direction) -> Vec<Option<f64>> {
    hhi_table_with(Execution::default(), net, direction)
}

pub fn hhi_table_with(exec: Execution, net: &MultilayerNetwork, direction: Direction) -> Vec<Option<f64>> {
    exec.map_range(net.n_cells(), |a| {
        let c = net.cell_of(a);
        hhi(net, c.node, c.layer, direction).ok().map(|h| h.value)
    })
}

/// Gini-Simpson heterogeneity `1 - sum p^2` of a distribution.
pub fn gini_heterogeneity(proportions: &[f64]) -> Result<f64> {
    if proportions.iter().any(|p| !p.is_finite() || *p < 0.0) {
        return Err(Error::InvalidArgument(
            "proportions must be finite and non-negative".into(),
        ));
    }
    let total: f64 = proportions.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidArgument(format!(
            "proportions sum to {total}, expected 1"
        )));
    }
    Ok(1.0 - proportions.iter().map(|p| p * p).sum::<f64>())
}

/// Pearson correlation coefficient.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::InvalidArgument(format!(
            "vector lengths differ ({} vs {})",
            x.len(),
            y.len()
        )));
    }
    if x.len() < 2 {
        return Err(Error::InvalidArgument(
            "correlation needs at least two observations".into(),
        ));
    }
    if x.iter().chain(y).any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("correlation input".into()));
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::UndefinedCorrelation("constant vector".into()));
    }
    Ok((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::fixtures::{t1, zero};

    #[test]
    fn profile_t1() {
        let t1 = t1();
        let out = strength_profile(&t1, 0, 0, Direction::Out).unwrap();
        assert_eq!(out.intralayer, 2.0);
        assert_eq!(out.per_layer, vec![2.0, 0.0]);
        assert_eq!(out.total, 2.0);
        assert_eq!(out.total_interlayer, 0.0);

        let inn = strength_profile(&t1, 0, 0, Direction::In).unwrap();
        assert_eq!(inn.intralayer, 1.0);
        assert_eq!(inn.per_layer, vec![1.0, 4.0]);
        assert_eq!(inn.total, 5.0);
        assert_eq!(inn.total_interlayer, 4.0);

        let z = strength_profile(&zero(2, 3), 1, 2, Direction::In).unwrap();
        assert_eq!(z.total, 0.0);
        assert!(z.per_layer.iter().all(|v| *v == 0.0));
        assert!(strength_profile(&t1, 2, 0, Direction::In).is_err());
    }

    #[test]
    fn tables_t1() {
        let t1 = t1();
        // replica entries (same node, other layer) are not partners
        assert_eq!(strength_table(&t1, Direction::Out, StrengthKind::Total), vec![2.0, 1.0, 3.0, 5.0]);
        assert_eq!(strength_table(&t1, Direction::In, StrengthKind::Intralayer), vec![1.0, 2.0, 1.0, 2.0]);
        assert_eq!(strength_table(&zero(2, 2), Direction::In, StrengthKind::Total), vec![0.0; 4]);
    }

    #[test]
    fn degrees_are_binary_strengths() {
        let b = t1().binarize();
        assert_eq!(strength_table(&b, Direction::Out, StrengthKind::Total), vec![1.0, 1.0, 2.0, 2.0]);
        assert_eq!(strength_table(&b, Direction::In, StrengthKind::TotalInterlayer), vec![1.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn hhi_examples() {
        let t1 = t1();
        let h = hhi(&t1, 0, 0, Direction::In).unwrap();
        assert!((h.value - 0.68).abs() < 1e-12);
        // (u, x) out: single partner (v, x)
        assert!((hhi(&t1, 0, 0, Direction::Out).unwrap().value - 1.0).abs() < 1e-15);
        assert!(matches!(
            hhi(&zero(2, 2), 0, 0, Direction::In),
            Err(Error::UndefinedConcentration(_))
        ));
    }

    #[test]
    fn hhi_equal_partners() {
        let k = 4usize;
        let rows: Vec<Vec<f64>> = (0..=k)
            .map(|i| (0..=k).map(|j| if i == 0 && j > 0 { 2.5 } else { 0.0 }).collect())
            .collect();
        let refs: Vec<&[f64]> = rows.iter().map(|r| r.as_slice()).collect();
        let net = crate::net::fixtures::single_layer(&refs);
        let h = hhi(&net, 0, 0, Direction::Out).unwrap();
        assert!((h.value - 1.0 / k as f64).abs() < 1e-15);
    }

    #[test]
    fn gini_examples() {
        assert_eq!(gini_heterogeneity(&[1.0]).unwrap(), 0.0);
        assert_eq!(gini_heterogeneity(&[0.5, 0.5]).unwrap(), 0.5);
        assert_eq!(gini_heterogeneity(&[0.25; 4]).unwrap(), 0.75);
        assert!(gini_heterogeneity(&[0.5, 0.4]).is_err());
        assert!(gini_heterogeneity(&[1.5, -0.5]).is_err());
    }

    #[test]
    fn pearson_examples() {
        let x = [1.0, 2.0, 3.0];
        assert!((pearson(&x, &x).unwrap() - 1.0).abs() < 1e-15);
        assert!((pearson(&x, &[-1.0, -2.0, -3.0]).unwrap() + 1.0).abs() < 1e-15);
        // textbook formula with y mean 13/3
        let r = pearson(&x, &[2.0, 4.0, 7.0]).unwrap();
        let sxy = 5.0;
        let sxx = 2.0;
        let syy: f64 = [2.0f64, 4.0, 7.0].iter().map(|v| (v - 13.0 / 3.0).powi(2)).sum();
        assert!((r - sxy / (sxx * syy).sqrt()).abs() < 1e-14);
        assert!((r - 0.9933992677987828).abs() < 1e-12);
        assert!(matches!(pearson(&[1.0, 1.0], &[1.0, 2.0]), Err(Error::UndefinedCorrelation(_))));
        assert!(pearson(&[1.0], &[1.0]).is_err());
        assert!(pearson(&[1.0, 2.0], &[1.0]).is_err());
    }
}
