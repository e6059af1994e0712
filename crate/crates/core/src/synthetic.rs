//! Seeded network generators and the adjusted Rand index, for benchmarks
//! and tests.

use std::collections::HashMap;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::net::{Meta, MultilayerNetwork};

#[derive(Clone, Debug, PartialEq)]
pub struct PlantedSpec {
    pub blocks: usize,
    pub layers: usize,
    pub nodes_per_block: usize,
    pub intra: (f64, f64),
    pub cross: (f64, f64),
}

impl Default for PlantedSpec {
    fn default() -> Self {
        PlantedSpec {
            blocks: 3,
            layers: 2,
            nodes_per_block: 10,
            intra: (5.0, 10.0),
            cross: (0.0, 0.5),
        }
    }
}

fn labels(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// Planted block network. Node `i` belongs to block `i / nodes_per_block`
/// in every layer; any two distinct cells of the same block are linked with
/// a uniform weight from `intra`, all other pairs from `cross`. Returns the
/// network and the block of every cell in supra order.
pub fn planted(spec: &PlantedSpec, seed: u64) -> Result<(MultilayerNetwork, Vec<usize>)> {
    if spec.blocks == 0 || spec.layers == 0 || spec.nodes_per_block == 0 {
        return Err(Error::InvalidArgument("planted network needs at least one cell".into()));
    }
    for (lo, hi) in [spec.intra, spec.cross] {
        if !(0.0 <= lo && lo <= hi && hi.is_finite()) {
            return Err(Error::InvalidArgument(format!("bad weight range [{lo}, {hi}]")));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = spec.blocks * spec.nodes_per_block;
    let nl = n * spec.layers;
    let block = |a: usize| (a % n) / spec.nodes_per_block;
    let mut sample = |(lo, hi): (f64, f64)| if hi > lo { rng.random_range(lo..hi) } else { lo };
    let mut supra = DMatrix::zeros(nl, nl);
    for i in 0..nl {
        for j in 0..nl {
            if i != j {
                supra[(i, j)] = sample(if block(i) == block(j) { spec.intra } else { spec.cross });
            }
        }
    }
    let meta = Meta {
        source: "planted".into(),
        ..Meta::default()
    };
    let net = MultilayerNetwork::new(labels("c", n), labels("s", spec.layers), supra, meta)?;
    Ok((net, (0..nl).map(block).collect()))
}

/// Heavy-tailed directed network with dense domestic blocks, shaped like a
/// world input-output table.
pub fn wiod_like(n_countries: usize, n_sectors: usize, seed: u64) -> Result<MultilayerNetwork> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (n, l) = (n_countries, n_sectors);
    let nl = n * l;
    let mut supra = DMatrix::zeros(nl, nl);
    for j in 0..nl {
        for i in 0..nl {
            let domestic = i % n == j % n;
            let density = if domestic { 0.9 } else { 0.3 };
            if rng.random::<f64>() < density {
                let u: f64 = rng.random();
                let scale = if domestic { 1000.0 } else { 50.0 };
                supra[(i, j)] = scale * u.powi(4);
            }
        }
    }
    let meta = Meta {
        year: 2014,
        source: "wiod-like".into(),
        ..Meta::default()
    };
    MultilayerNetwork::new(labels("C", n), labels("S", l), supra, meta)
}

/// Network with independent uniform `[0, 1)` weights present with the given
/// probability, optionally symmetric.
pub fn random_network(n: usize, l: usize, density: f64, symmetric: bool, seed: u64) -> Result<MultilayerNetwork> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nl = n * l;
    let mut supra = DMatrix::zeros(nl, nl);
    for i in 0..nl {
        for j in 0..nl {
            if symmetric && j < i {
                supra[(i, j)] = supra[(j, i)];
            } else if rng.random::<f64>() < density {
                supra[(i, j)] = rng.random::<f64>();
            }
        }
    }
    MultilayerNetwork::new(labels("n", n), labels("l", l), supra, Meta::default())
}

/// Adjusted Rand index of two labellings of the same items.
pub fn adjusted_rand_index(a: &[usize], b: &[usize]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::InvalidArgument(format!(
            "labellings differ in length ({} vs {})",
            a.len(),
            b.len()
        )));
    }
    let pairs = |k: usize| (k * k.saturating_sub(1)) as f64 / 2.0;
    let mut joint: HashMap<(usize, usize), usize> = HashMap::new();
    let mut ra: HashMap<usize, usize> = HashMap::new();
    let mut rb: HashMap<usize, usize> = HashMap::new();
    for (&x, &y) in a.iter().zip(b) {
        *joint.entry((x, y)).or_default() += 1;
        *ra.entry(x).or_default() += 1;
        *rb.entry(y).or_default() += 1;
    }
    let index: f64 = joint.values().map(|&k| pairs(k)).sum();
    let sa: f64 = ra.values().map(|&k| pairs(k)).sum();
    let sb: f64 = rb.values().map(|&k| pairs(k)).sum();
    let total = pairs(a.len());
    let expected = if total > 0.0 { sa * sb / total } else { 0.0 };
    let max = (sa + sb) / 2.0;
    if max == expected {
        // both trivial labellings: identical up to relabelling
        return Ok(1.0);
    }
    Ok((index - expected) / (max - expected))
}
