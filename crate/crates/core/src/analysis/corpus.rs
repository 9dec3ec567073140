//! Seeded random connected hosts: a uniformly random labeled recursive tree
//! joined with Erdős–Rényi extra edges.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Edge, HostGraph};

/// Edge probabilities cycled through a corpus to vary density.
const DENSITIES: [f64; 4] = [0.15, 0.3, 0.5, 0.8];

/// Parameters of a reproducible host corpus.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CorpusSpec {
    pub count: usize,
    pub n_min: usize,
    pub n_max: usize,
    /// Extra edges beyond this total are dropped at random.
    pub max_edges: Option<usize>,
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub struct RandomHost {
    pub index: usize,
    pub density: f64,
    pub host: HostGraph,
}

/// A connected host on `n` nodes: the tree gives node `order[i]` a parent
/// among `order[..i]`, then every other pair is added with probability `p`.
pub fn random_host(n: usize, p: f64, max_edges: Option<usize>, rng: &mut impl Rng) -> HostGraph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut tree: Vec<Edge> = (1..n)
        .map(|i| Edge::new(order[i], order[rng.random_range(0..i)]))
        .collect();
    tree.sort();
    let mut extra: Vec<Edge> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| Edge::new(u, v)))
        .filter(|e| tree.binary_search(e).is_err())
        .filter(|_| rng.random_bool(p))
        .collect();
    if let Some(cap) = max_edges {
        let room = cap.saturating_sub(tree.len());
        if extra.len() > room {
            extra.shuffle(rng);
            extra.truncate(room);
        }
    }
    HostGraph::new(n, tree.into_iter().chain(extra)).expect("a spanning tree plus extra edges is a host")
}

/// `spec.count` hosts with `n` uniform in `n_min..=n_max` and densities
/// cycling through 0.15, 0.3, 0.5, 0.8.
pub fn random_corpus(spec: &CorpusSpec) -> Vec<RandomHost> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    (0..spec.count)
        .map(|index| {
            let n = rng.random_range(spec.n_min..=spec.n_max);
            let density = DENSITIES[index % DENSITIES.len()];
            RandomHost {
                index,
                density,
                host: random_host(n, density, spec.max_edges, &mut rng),
            }
        })
        .collect()
}
