//! Generators for the standard graph families and the clique-network
//! constructions, plus closed-form welfare for the simple families.
//!
//! Labels are deterministic. In a clique network the clique replacing base
//! node `i` occupies the contiguous label range `blocks[i]`, in base order.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use thiserror::Error;

use crate::game::{Alpha, Rational};
use crate::graph::{Edge, GraphError, HostGraph, Node};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn infeasible<T>(msg: impl Into<String>) -> Result<T, ConstructionError> {
    Err(ConstructionError::Infeasible(msg.into()))
}

pub fn path(n: usize) -> Result<HostGraph, ConstructionError> {
    if n < 2 {
        return infeasible(format!("path needs n >= 2, got {n}"));
    }
    Ok(HostGraph::new(n, (1..n).map(|i| Edge::new(i - 1, i)))?)
}

pub fn cycle(n: usize) -> Result<HostGraph, ConstructionError> {
    if n < 3 {
        return infeasible(format!("cycle needs n >= 3, got {n}"));
    }
    Ok(HostGraph::new(n, (0..n).map(|i| Edge::new(i, (i + 1) % n)))?)
}

/// Star with center 0.
pub fn star(n: usize) -> Result<HostGraph, ConstructionError> {
    if n < 2 {
        return infeasible(format!("star needs n >= 2, got {n}"));
    }
    Ok(HostGraph::new(n, (1..n).map(|i| Edge::new(0, i)))?)
}

pub fn clique(n: usize) -> Result<HostGraph, ConstructionError> {
    if n < 2 {
        return infeasible(format!("clique needs n >= 2, got {n}"));
    }
    Ok(HostGraph::complete(n)?)
}

/// Hypercube on `2^d` nodes; node labels are the bit strings.
pub fn hypercube(d: u32) -> Result<HostGraph, ConstructionError> {
    if !(1..=20).contains(&d) {
        return infeasible(format!("hypercube needs 1 <= d <= 20, got {d}"));
    }
    let n = 1usize << d;
    let edges = (0..n)
        .flat_map(|v| (0..d).map(move |b| (v, v ^ 1 << b)))
        .filter(|&(v, w)| v < w);
    Ok(HostGraph::new(n, edges.map(|(v, w)| Edge::new(v, w)))?)
}

/// Wheel on `n` nodes: center 0 joined to the rim cycle `1..n`.
pub fn wheel(n: usize) -> Result<HostGraph, ConstructionError> {
    if n < 4 {
        return infeasible(format!("wheel needs n >= 4, got {n}"));
    }
    let rim = n - 1;
    let spokes = (1..n).map(|i| Edge::new(0, i));
    let ring = (0..rim).map(|i| Edge::new(1 + i, 1 + (i + 1) % rim));
    Ok(HostGraph::new(n, spokes.chain(ring))?)
}

/// Path `0..n-k` whose last node is joined to the first `c` nodes of a
/// clique on the remaining `k` labels. `k = 0` gives the path, `k = n` the
/// clique (and `c` is ignored in both cases).
pub fn path_clique(n: usize, k: usize, c: usize) -> Result<HostGraph, ConstructionError> {
    if k == 0 {
        return path(n);
    }
    if k == n {
        return clique(n);
    }
    if k > n {
        return infeasible(format!("clique size k = {k} exceeds n = {n}"));
    }
    if !(2..=k).contains(&c) {
        return infeasible(format!("need 2 <= c <= k for connecting edges, got c = {c}, k = {k}"));
    }
    let p = n - k;
    let path_edges = (1..p).map(|i| Edge::new(i - 1, i));
    let clique_edges = (p..n).flat_map(|u| (u + 1..n).map(move |v| Edge::new(u, v)));
    let links = (p..p + c).map(|v| Edge::new(p - 1, v));
    Ok(HostGraph::new(n, path_edges.chain(clique_edges).chain(links))?)
}

/// A clique network with the label range of each base node's clique.
#[derive(Clone, Debug)]
pub struct CliqueNetwork {
    pub host: HostGraph,
    pub blocks: Vec<Range<Node>>,
}

/// Replaces base node `i` by a clique of `sizes[i]` nodes and each base edge
/// by a complete bipartite join.
pub fn clique_network(base: &HostGraph, sizes: &[usize]) -> Result<CliqueNetwork, ConstructionError> {
    if sizes.len() != base.n() {
        return infeasible(format!("{} sizes for {} base nodes", sizes.len(), base.n()));
    }
    if let Some(i) = sizes.iter().position(|&s| s < 2) {
        return infeasible(format!("clique sizes must be >= 2, base node {i} has {}", sizes[i]));
    }
    let mut blocks = Vec::with_capacity(sizes.len());
    let mut next = 0;
    for &s in sizes {
        blocks.push(next..next + s);
        next += s;
    }
    let mut edges = Vec::new();
    for b in &blocks {
        for u in b.clone() {
            edges.extend((u + 1..b.end).map(|v| Edge::new(u, v)));
        }
    }
    for e in base.edges() {
        for u in blocks[e.lo()].clone() {
            edges.extend(blocks[e.hi()].clone().map(|v| Edge::new(u, v)));
        }
    }
    Ok(CliqueNetwork {
        host: HostGraph::new(next, edges)?,
        blocks,
    })
}

/// `total` split into `parts` sizes differing by at most one, larger sizes
/// first.
fn balanced(total: usize, parts: usize) -> Vec<usize> {
    (0..parts)
        .map(|i| total / parts + usize::from(i < total % parts))
        .collect()
}

/// Star of cliques for edge price `alpha`: with `c = ceil(alpha) + 2` and
/// `d = floor((n - 2) / c)`, each of `d` rays is a clique `K_i` of `c - 2`
/// nodes fully joined to a connector pair, and every connector pair is fully
/// joined to a center clique of `n - c d` nodes.
///
/// Blocks are `K_0, pair_0, K_1, pair_1, ..., center`.
pub fn star_of_cliques(n: usize, alpha: Alpha) -> Result<CliqueNetwork, ConstructionError> {
    if !alpha.exceeds(1) {
        return infeasible(format!("star of cliques needs alpha > 1, got {alpha}"));
    }
    if alpha.value() * alpha.value() > Rational::from_integer(n as i128) {
        return infeasible(format!(
            "star of cliques needs alpha <= sqrt(n), got {alpha} for n = {n}"
        ));
    }
    let ceil = alpha.value().ceil().to_integer() as usize;
    let c = ceil + 2;
    let d = n.saturating_sub(2) / c;
    let center = n - c * d;
    if d < 1 || center < 2 {
        return infeasible(format!(
            "star of cliques needs d >= 1 rays and a center of >= 2 nodes (n = {n}, c = {c})"
        ));
    }
    let hub = 2 * d;
    let mut base_edges = Vec::new();
    let mut sizes = Vec::new();
    for i in 0..d {
        sizes.extend([c - 2, 2]);
        base_edges.push(Edge::new(2 * i, 2 * i + 1));
        base_edges.push(Edge::new(2 * i + 1, hub));
    }
    sizes.push(center);
    clique_network(&HostGraph::new(hub + 1, base_edges)?, &sizes)
}

/// Clique network over the hypercube of dimension `floor(log2 n) - 1` with
/// balanced clique sizes, larger cliques at lower labels.
pub fn hypercube_clique_network(n: usize) -> Result<CliqueNetwork, ConstructionError> {
    if n < 8 {
        return infeasible(format!("hypercube clique network needs n >= 8, got {n}"));
    }
    let d = n.ilog2() - 1;
    let base = hypercube(d)?;
    clique_network(&base, &balanced(n, 1 << d))
}

/// Path of cliques: `d` cliques, split in two halves around six middle
/// nodes `v1, v1', v2, v2', v3, v3'`. It is the clique network of a path with
/// blocks `K_1..K_{d/2}, {v1,v1'}, {v2,v2'}, {v3,v3'}, K_{d/2+1}..K_d`. The
/// first half holds `ceil((n-6)/2)` nodes, the second `floor((n-6)/2)`, and
/// within a half the larger cliques sit next to the middle.
pub fn path_of_cliques(n: usize, d: usize) -> Result<CliqueNetwork, ConstructionError> {
    if d < 2 || d % 2 == 1 || n < 6 || 2 * d > n - 6 {
        return infeasible(format!(
            "path of cliques needs even d with 2 <= d <= (n-6)/2, got n = {n}, d = {d}"
        ));
    }
    let rest = n - 6;
    let half = d / 2;
    let mut left = balanced(rest.div_ceil(2), half);
    left.reverse();
    let right = balanced(rest / 2, half);
    let sizes: Vec<usize> = left.into_iter().chain([2, 2, 2]).chain(right).collect();
    clique_network(&path(sizes.len())?, &sizes)
}

impl CliqueNetwork {
    /// `v1` of a path of cliques with `d` cliques.
    pub fn path_of_cliques_v1(&self, d: usize) -> Node {
        self.blocks[d / 2].start
    }

    /// `v3` of a path of cliques with `d` cliques.
    pub fn path_of_cliques_v3(&self, d: usize) -> Node {
        self.blocks[d / 2 + 2].start
    }
}

/// Clique network over the wheel on `floor(n/2)` nodes: every clique has
/// two nodes, except the center's, which has three when `n` is odd.
pub fn wheel_clique_network(n: usize) -> Result<CliqueNetwork, ConstructionError> {
    if n < 8 {
        return infeasible(format!("wheel clique network needs n >= 8, got {n}"));
    }
    let w = n / 2;
    let mut sizes = vec![2; w];
    sizes[0] += n % 2;
    clique_network(&wheel(w)?, &sizes)
}

/// Families with a closed-form social welfare.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WelfareFamily {
    Path,
    Clique,
    CycleOdd,
    CycleEven,
    Star,
}

/// Social welfare `2 alpha |E| + d(V,V)` of the family member on `n` nodes.
pub fn closed_form_sw(family: WelfareFamily, n: usize, alpha: Alpha) -> Result<Rational, ConstructionError> {
    let min = match family {
        WelfareFamily::CycleOdd | WelfareFamily::CycleEven => 3,
        _ => 2,
    };
    if n < min {
        return infeasible(format!("{family:?} needs n >= {min}, got {n}"));
    }
    let odd = n % 2 == 1;
    if family == WelfareFamily::CycleOdd && !odd || family == WelfareFamily::CycleEven && odd {
        return infeasible(format!("{family:?} does not match the parity of n = {n}"));
    }
    let a = alpha.value();
    let k = n as i128;
    let int = Rational::from_integer;
    Ok(match family {
        WelfareFamily::Path => a * int(2 * (k - 1)) + int((k - 1) * k * (k + 1) / 3),
        WelfareFamily::Clique => (a + 1) * int(k * (k - 1)),
        WelfareFamily::CycleOdd => a * int(2 * k) + int((k - 1) * k * (k + 1) / 4),
        WelfareFamily::CycleEven => a * int(2 * k) + int(k * k * k / 4),
        WelfareFamily::Star => a * int(2 * (k - 1)) + int(2 * (k - 1) * (k - 1)),
    })
}

/// A generator name plus its parameters, as accepted by `gen`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstructionSpec {
    Path(usize),
    Cycle(usize),
    Star(usize),
    Clique(usize),
    Hypercube(u32),
    Wheel(usize),
    PathClique {
        n: usize,
        k: usize,
        c: usize,
    },
    /// Clique network over the path on `sizes.len()` nodes.
    CliqueNetwork {
        sizes: Vec<usize>,
    },
    StarOfCliques {
        n: usize,
        alpha: Alpha,
    },
    HypercubeCliqueNetwork(usize),
    PathOfCliques {
        n: usize,
        d: usize,
    },
    WheelCliqueNetwork(usize),
}

impl ConstructionSpec {
    pub fn build(&self) -> Result<HostGraph, ConstructionError> {
        match self {
            ConstructionSpec::Path(n) => path(*n),
            ConstructionSpec::Cycle(n) => cycle(*n),
            ConstructionSpec::Star(n) => star(*n),
            ConstructionSpec::Clique(n) => clique(*n),
            ConstructionSpec::Hypercube(d) => hypercube(*d),
            ConstructionSpec::Wheel(n) => wheel(*n),
            ConstructionSpec::PathClique { n, k, c } => path_clique(*n, *k, *c),
            ConstructionSpec::CliqueNetwork { sizes } => Ok(clique_network(&path(sizes.len())?, sizes)?.host),
            ConstructionSpec::StarOfCliques { n, alpha } => Ok(star_of_cliques(*n, *alpha)?.host),
            ConstructionSpec::HypercubeCliqueNetwork(n) => Ok(hypercube_clique_network(*n)?.host),
            ConstructionSpec::PathOfCliques { n, d } => Ok(path_of_cliques(*n, *d)?.host),
            ConstructionSpec::WheelCliqueNetwork(n) => Ok(wheel_clique_network(*n)?.host),
        }
    }
}

impl fmt::Display for ConstructionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionSpec::Path(n) => write!(f, "path:{n}"),
            ConstructionSpec::Cycle(n) => write!(f, "cycle:{n}"),
            ConstructionSpec::Star(n) => write!(f, "star:{n}"),
            ConstructionSpec::Clique(n) => write!(f, "clique:{n}"),
            ConstructionSpec::Hypercube(d) => write!(f, "hypercube:{d}"),
            ConstructionSpec::Wheel(n) => write!(f, "wheel:{n}"),
            ConstructionSpec::PathClique { n, k, c } => write!(f, "path-clique:{n},{k},{c}"),
            ConstructionSpec::CliqueNetwork { sizes } => {
                let s: Vec<String> = sizes.iter().map(ToString::to_string).collect();
                write!(f, "clique-network:{}", s.join(","))
            }
            ConstructionSpec::StarOfCliques { n, alpha } => write!(f, "star-of-cliques:{n},{alpha}"),
            ConstructionSpec::HypercubeCliqueNetwork(n) => write!(f, "hypercube-clique-network:{n}"),
            ConstructionSpec::PathOfCliques { n, d } => write!(f, "path-of-cliques:{n},{d}"),
            ConstructionSpec::WheelCliqueNetwork(n) => write!(f, "wheel-clique-network:{n}"),
        }
    }
}

impl FromStr for ConstructionSpec {
    type Err = ConstructionError;

    /// `family:p1,p2,...`, e.g. `path:5`, `path-clique:6,3,2`,
    /// `star-of-cliques:14,2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, args) = s.split_once(':').unwrap_or((s, ""));
        let args: Vec<&str> = args.split(',').filter(|a| !a.is_empty()).collect();
        let bad = || ConstructionError::Infeasible(format!("malformed family spec {s:?}"));
        let int = |i: usize| -> Result<usize, ConstructionError> {
            args.get(i).and_then(|a| a.trim().parse().ok()).ok_or_else(bad)
        };
        let arity = |k: usize| if args.len() == k { Ok(()) } else { Err(bad()) };
        Ok(match name {
            "path" => {
                arity(1)?;
                ConstructionSpec::Path(int(0)?)
            }
            "cycle" => {
                arity(1)?;
                ConstructionSpec::Cycle(int(0)?)
            }
            "star" => {
                arity(1)?;
                ConstructionSpec::Star(int(0)?)
            }
            "clique" => {
                arity(1)?;
                ConstructionSpec::Clique(int(0)?)
            }
            "hypercube" => {
                arity(1)?;
                ConstructionSpec::Hypercube(u32::try_from(int(0)?).map_err(|_| bad())?)
            }
            "wheel" => {
                arity(1)?;
                ConstructionSpec::Wheel(int(0)?)
            }
            "path-clique" => {
                arity(3)?;
                ConstructionSpec::PathClique {
                    n: int(0)?,
                    k: int(1)?,
                    c: int(2)?,
                }
            }
            "clique-network" => {
                if args.is_empty() {
                    return Err(bad());
                }
                let sizes = (0..args.len()).map(int).collect::<Result<_, _>>()?;
                ConstructionSpec::CliqueNetwork { sizes }
            }
            "star-of-cliques" => {
                arity(2)?;
                let alpha = args[1]
                    .trim()
                    .parse()
                    .map_err(|e| ConstructionError::Infeasible(format!("{e}")))?;
                ConstructionSpec::StarOfCliques { n: int(0)?, alpha }
            }
            "hypercube-clique-network" => {
                arity(1)?;
                ConstructionSpec::HypercubeCliqueNetwork(int(0)?)
            }
            "path-of-cliques" => {
                arity(2)?;
                ConstructionSpec::PathOfCliques { n: int(0)?, d: int(1)? }
            }
            "wheel-clique-network" => {
                arity(1)?;
                ConstructionSpec::WheelCliqueNetwork(int(0)?)
            }
            _ => return Err(ConstructionError::Infeasible(format!("unknown family {name:?}"))),
        })
    }
}
