//! Seeded random instances.
//!
//! Every random decision draws from a substream keyed by what it decides:
//! edge existence by the pair `(a, b)`, each preference list and critical
//! flag by its owner `(side, index)`. Growing an instance therefore leaves
//! the decisions about the vertices it already had untouched.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{Edge, Instance, InstanceData, Side};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenParams {
    pub n_a: usize,
    pub n_b: usize,
    pub edge_probability: f64,
    /// Probability that a list entry shares the rank of the entry before it.
    pub tie_density: f64,
    pub critical_fraction_a: f64,
    pub critical_fraction_b: f64,
    pub seed: u64,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            n_a: 5,
            n_b: 5,
            edge_probability: 0.5,
            tie_density: 0.3,
            critical_fraction_a: 0.3,
            critical_fraction_b: 0.3,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("{name} = {value} is not a probability")]
    NotAProbability { name: &'static str, value: f64 },
}

impl GenParams {
    pub fn validate(&self) -> Result<(), GenError> {
        let probabilities = [
            ("edge_probability", self.edge_probability),
            ("tie_density", self.tie_density),
            ("critical_fraction_a", self.critical_fraction_a),
            ("critical_fraction_b", self.critical_fraction_b),
        ];
        for (name, value) in probabilities {
            if !(0.0..=1.0).contains(&value) {
                return Err(GenError::NotAProbability { name, value });
            }
        }
        Ok(())
    }
}

/// splitmix64 finalizer.
pub fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Clone, Copy)]
enum Stream {
    Edge(usize, usize),
    List(Side, usize),
    Critical(Side, usize),
}

fn substream(seed: u64, stream: Stream) -> ChaCha8Rng {
    let side = |s: Side| match s {
        Side::A => 0u64,
        Side::B => 1,
    };
    let key = match stream {
        Stream::Edge(a, b) => [1, a as u64, b as u64],
        Stream::List(s, i) => [2, side(s), i as u64],
        Stream::Critical(s, i) => [3, side(s), i as u64],
    };
    let state = key.iter().fold(mix(seed), |h, &k| mix(h ^ k));
    ChaCha8Rng::seed_from_u64(state)
}

/// Random permutation of `neighbours` turned into ranks, each entry tying
/// with its predecessor at rate `tie_density`.
fn ranks(rng: &mut ChaCha8Rng, neighbours: &[usize], tie_density: f64) -> Vec<(usize, u32)> {
    let mut order = neighbours.to_vec();
    order.shuffle(rng);
    let mut rank = 0;
    order
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            if i == 0 || !rng.random_bool(tie_density) {
                rank += 1;
            }
            (v, rank)
        })
        .collect()
}

pub fn random_instance(params: &GenParams) -> Result<Instance, GenError> {
    params.validate()?;
    let GenParams { n_a, n_b, seed, .. } = *params;

    let mut adj_a = vec![Vec::new(); n_a];
    let mut adj_b = vec![Vec::new(); n_b];
    for (a, row) in adj_a.iter_mut().enumerate() {
        for (b, column) in adj_b.iter_mut().enumerate() {
            if substream(seed, Stream::Edge(a, b)).random_bool(params.edge_probability) {
                row.push(b);
                column.push(a);
            }
        }
    }

    let mut rank_a = vec![Vec::new(); n_a];
    for (a, nbrs) in adj_a.iter().enumerate() {
        let mut rng = substream(seed, Stream::List(Side::A, a));
        rank_a[a] = ranks(&mut rng, nbrs, params.tie_density);
        rank_a[a].sort_unstable();
    }
    let mut edges = Vec::new();
    for (b, nbrs) in adj_b.iter().enumerate() {
        let mut rng = substream(seed, Stream::List(Side::B, b));
        for (a, rank_b) in ranks(&mut rng, nbrs, params.tie_density) {
            let i = rank_a[a]
                .binary_search_by_key(&b, |&(v, _)| v)
                .expect("adjacency is symmetric");
            edges.push(Edge {
                a,
                b,
                rank_a: rank_a[a][i].1,
                rank_b,
            });
        }
    }

    let critical = |side: Side, n: usize, fraction: f64| -> Vec<usize> {
        (0..n)
            .filter(|&i| substream(seed, Stream::Critical(side, i)).random_bool(fraction))
            .collect()
    };
    let data = InstanceData {
        n_a,
        n_b,
        critical_a: critical(Side::A, n_a, params.critical_fraction_a),
        critical_b: critical(Side::B, n_b, params.critical_fraction_b),
        edges,
    };
    Ok(Instance::new(data).expect("generated instances are valid"))
}
