//! Spanning trees of large routing cost.
//!
//! [`smrcst`] is a swap local search: seed with a long path, extend it to a
//! spanning tree, then apply tree-edge swaps while one strictly increases the
//! routing cost. The result is swap-maximal. [`mrcst_exact`] is the exact
//! maximum by enumeration, for small hosts.

mod enumerate;

use std::collections::VecDeque;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::analysis::{optimum_exact, AnalysisError};
use crate::game::{welfare_of, Alpha, Rational};
use crate::graph::{Edge, EdgeSet, GameState, GraphError, HostGraph, Node, TreeScaffold};

pub use enumerate::{enumerate_spanning_trees, for_each_spanning_tree, spanning_tree_count};

/// Largest host for which the exact longest-path fallback runs.
pub const EXACT_PATH_NODE_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpanningError {
    #[error("more than {budget} spanning trees, over the budget")]
    BudgetExceeded { budget: u64 },
    #[error("certificate violated: {0}")]
    Certificate(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Analysis(#[from] Box<AnalysisError>),
}

/// A simple path in the host used to seed the local search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LongPath {
    pub nodes: Vec<Node>,
    /// The greedy path was too short and the exact search replaced it.
    pub used_exact_fallback: bool,
    /// `length * n >= m`, i.e. the path has at least `m / n` edges.
    pub meets_bound: bool,
}

impl LongPath {
    /// Number of edges on the path.
    pub fn length(&self) -> usize {
        self.nodes.len() - 1
    }
}

fn greedy_extend(host: &HostGraph) -> Vec<Node> {
    let n = host.n();
    let start = (0..n).min_by_key(|&v| (host.degree(v), v)).expect("n >= 2");
    let mut visited = vec![false; n];
    visited[start] = true;
    let mut path = VecDeque::from([start]);
    let residual = |v: Node, visited: &[bool]| host.incident(v).iter().filter(|(u, _)| !visited[*u]).count();
    let next_from = |end: Node, visited: &[bool]| {
        host.incident(end)
            .iter()
            .map(|&(u, _)| u)
            .filter(|&u| !visited[u])
            .min_by_key(|&u| (residual(u, visited), u))
    };
    loop {
        let tail = *path.back().expect("nonempty");
        if let Some(u) = next_from(tail, &visited) {
            visited[u] = true;
            path.push_back(u);
            continue;
        }
        let head = *path.front().expect("nonempty");
        if let Some(u) = next_from(head, &visited) {
            visited[u] = true;
            path.push_front(u);
            continue;
        }
        break;
    }
    path.into()
}

/// A longest simple path, by dynamic programming over node subsets.
/// Returns `None` above [`EXACT_PATH_NODE_LIMIT`] nodes.
pub fn longest_path_exact(host: &HostGraph) -> Option<Vec<Node>> {
    let n = host.n();
    if n > EXACT_PATH_NODE_LIMIT {
        return None;
    }
    let adj = host.masks().expect("small hosts have masks");
    // ends[mask]: nodes v such that some simple path visiting exactly `mask` ends at v
    let mut ends = vec![0u32; 1 << n];
    for v in 0..n {
        ends[1 << v] = 1 << v;
    }
    let mut best = (1usize, 1u32);
    for mask in 1u32..(1 << n) {
        let e = ends[mask as usize];
        if e == 0 {
            continue;
        }
        let size = mask.count_ones() as usize;
        if size > best.0 {
            best = (size, mask);
        }
        let mut rest = e;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let mut nb = adj[v] as u32 & !mask;
            while nb != 0 {
                let w = nb.trailing_zeros();
                nb &= nb - 1;
                ends[(mask | 1 << w) as usize] |= 1 << w;
            }
        }
    }
    let (_, mut mask) = best;
    let mut v = ends[mask as usize].trailing_zeros() as usize;
    let mut path = vec![v];
    while mask.count_ones() > 1 {
        let prev_mask = mask & !(1 << v);
        let cand = ends[prev_mask as usize] & adj[v] as u32;
        let u = cand.trailing_zeros() as usize;
        path.push(u);
        mask = prev_mask;
        v = u;
    }
    path.reverse();
    Some(path)
}

/// Long simple path: two-sided greedy extension (next node has the fewest
/// unvisited neighbors, ties by label), replaced by an exact longest path
/// when it has fewer than `m / n` edges and the host is small enough.
pub fn greedy_long_path(host: &HostGraph) -> LongPath {
    let meets = |p: &[Node]| (p.len() - 1) * host.n() >= host.edge_count();
    let nodes = greedy_extend(host);
    if meets(&nodes) {
        return LongPath {
            nodes,
            used_exact_fallback: false,
            meets_bound: true,
        };
    }
    match longest_path_exact(host) {
        Some(exact) => LongPath {
            meets_bound: meets(&exact),
            nodes: exact,
            used_exact_fallback: true,
        },
        None => LongPath {
            nodes,
            used_exact_fallback: false,
            meets_bound: false,
        },
    }
}

/// Extends a simple host path to a spanning tree: path edges first, then
/// host edges in index order whenever they join two components.
pub fn extend_to_spanning_tree(host: &Arc<HostGraph>, path: &[Node]) -> Result<TreeScaffold, GraphError> {
    let n = host.n();
    let mut comp: Vec<usize> = (0..n).collect();
    fn root(comp: &mut [usize], mut x: usize) -> usize {
        while comp[x] != x {
            comp[x] = comp[comp[x]];
            x = comp[x];
        }
        x
    }
    let mut set = EdgeSet::empty(host.edge_count());
    let path_edges = path.windows(2).map(|w| Edge::new(w[0], w[1]));
    let rest = host.edges().iter().copied();
    for e in path_edges.chain(rest) {
        let i = host.edge_index(e).ok_or(GraphError::NotInHost(e))?;
        let (a, b) = (root(&mut comp, e.lo()), root(&mut comp, e.hi()));
        if a != b {
            comp[a] = b;
            set.insert(i);
        } else if !set.contains(i) && path.windows(2).any(|w| Edge::new(w[0], w[1]) == e) {
            // a repeated node on the input path closes a cycle
            return Err(GraphError::DuplicateEdge(e));
        }
    }
    TreeScaffold::new(GameState::from_edge_set(Arc::clone(host), set)?)
}

/// How [`smrcst`] picks among improving swaps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Pivot {
    /// Largest increase; ties to the first in (removed, added) edge order.
    BestSwap,
    /// First improving swap in (removed, added) edge order.
    FirstSwap,
}

/// An improving (or candidate) swap and its routing-cost change.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Swap {
    pub remove: (Node, Node),
    pub add: (Node, Node),
    pub delta: i64,
}

/// Visits every legal swap `(remove, add, delta)` of a spanning tree in
/// (removed edge, added edge) index order. Stops when `visit` returns false.
fn for_each_swap(tree: &TreeScaffold, mut visit: impl FnMut(Edge, Edge, i64) -> bool) {
    let state = tree.state();
    let host = state.host();
    for remove in state.edges() {
        let c = tree.child_endpoint(remove).expect("tree edge");
        for (j, &add) in host.edges().iter().enumerate() {
            if state.active().contains(j) {
                continue;
            }
            let (x, y) = add.ends();
            let (a, b) = match (tree.in_subtree(c, x), tree.in_subtree(c, y)) {
                (true, false) => (x, y),
                (false, true) => (y, x),
                _ => continue,
            };
            if !visit(remove, add, tree.delta_unchecked(c, a, b)) {
                return;
            }
        }
    }
}

/// The swap `pivot` would apply next, if any swap strictly increases cost.
pub fn next_swap(tree: &TreeScaffold, pivot: Pivot) -> Option<Swap> {
    let mut best: Option<Swap> = None;
    for_each_swap(tree, |remove, add, delta| {
        if delta > 0 && best.is_none_or(|b| delta > b.delta) {
            best = Some(Swap {
                remove: remove.ends(),
                add: add.ends(),
                delta,
            });
            return pivot == Pivot::BestSwap;
        }
        true
    });
    best
}

/// Every swap that strictly increases routing cost.
pub fn improving_swaps(tree: &TreeScaffold) -> Vec<Swap> {
    let mut out = Vec::new();
    for_each_swap(tree, |remove, add, delta| {
        if delta > 0 {
            out.push(Swap {
                remove: remove.ends(),
                add: add.ends(),
                delta,
            });
        }
        true
    });
    out
}

#[derive(Clone, Debug)]
pub struct SmrcstResult {
    pub tree: TreeScaffold,
    pub seed_path: LongPath,
    pub initial_cost: u64,
    pub iterations: u64,
    pub routing_cost: u64,
}

impl SmrcstResult {
    pub fn seed_path_length(&self) -> usize {
        self.seed_path.length()
    }
}

/// Swap-maximal routing-cost spanning tree by local search.
pub fn smrcst(host: &Arc<HostGraph>, pivot: Pivot) -> SmrcstResult {
    let seed_path = greedy_long_path(host);
    let mut tree = extend_to_spanning_tree(host, &seed_path.nodes).expect("greedy path is a simple host path");
    let initial_cost = tree.total();
    let mut iterations = 0;
    while let Some(s) = next_swap(&tree, pivot) {
        let before = tree.total();
        tree = tree
            .swapped(s.remove.into(), s.add.into())
            .expect("scanned swaps are legal");
        debug_assert_eq!(tree.total() as i64, before as i64 + s.delta);
        iterations += 1;
    }
    let routing_cost = tree.total();
    SmrcstResult {
        tree,
        seed_path,
        initial_cost,
        iterations,
        routing_cost,
    }
}

/// A maximum routing-cost spanning tree by exhaustive enumeration; ties go
/// to the smallest edge bitmask.
pub fn mrcst_exact(host: &Arc<HostGraph>, budget: u64) -> Result<TreeScaffold, SpanningError> {
    let n = host.n() as u64;
    let mut best: Option<(u64, EdgeSet)> = None;
    let mut adj: Vec<Vec<Node>> = vec![Vec::new(); host.n()];
    for_each_spanning_tree(host, budget, |set| {
        for l in &mut adj {
            l.clear();
        }
        for i in set.iter() {
            let (u, v) = host.edge(i).ends();
            adj[u].push(v);
            adj[v].push(u);
        }
        let cost = tree_cost_from_lists(&adj, n);
        if best.as_ref().is_none_or(|(b, _)| cost > *b) {
            best = Some((cost, set.clone()));
        }
    })?;
    let (_, set) = best.expect("connected hosts have a spanning tree");
    Ok(TreeScaffold::new(GameState::from_edge_set_unchecked(
        Arc::clone(host),
        set,
    ))?)
}

/// `2 * sum over edges of s * (n - s)` from adjacency lists of a tree.
fn tree_cost_from_lists(adj: &[Vec<Node>], n: u64) -> u64 {
    let mut order = Vec::with_capacity(adj.len());
    let mut parent = vec![usize::MAX; adj.len()];
    parent[0] = 0;
    order.push(0);
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for &v in &adj[u] {
            if parent[v] == usize::MAX {
                parent[v] = u;
                order.push(v);
            }
        }
    }
    let mut size = vec![1u64; adj.len()];
    let mut cost = 0;
    for &v in order.iter().skip(1).rev() {
        cost += size[v] * (n - size[v]);
        size[parent[v]] += size[v];
    }
    2 * cost
}

/// Welfare comparison between the optimum and spanning trees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproximationCheck {
    pub sw_opt: Rational,
    pub sw_mrcst: Rational,
    pub sw_smrcst: Rational,
    /// `SW(OPT) / SW(MRCST)`
    pub ratio_mrcst: Rational,
    /// `SW(OPT) / SW(SMRCST)`, reported only
    pub ratio_smrcst: Rational,
    /// `m / (n - 1) + 1`
    pub bound: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmrcstCertificates {
    pub path_length: usize,
    /// `9 * routing_cost >= n * l^2`
    pub path_bound: bool,
    /// `iterations <= (n - 1) n (n + 1) / 3`
    pub iteration_bound: bool,
    pub swap_maximal: bool,
    /// Present when `alpha <= 1` and the host is small enough for the
    /// exact optimum and MRCST under `budget`.
    pub approximation: Option<ApproximationCheck>,
}

/// Compares `SW(OPT)` with the welfare of an MRCST and the given SMRCST.
pub fn approximation_check(
    result: &SmrcstResult,
    host: &Arc<HostGraph>,
    alpha: Alpha,
    budget: u64,
) -> Result<ApproximationCheck, SpanningError> {
    let n = host.n();
    let m = host.edge_count();
    let opt = optimum_exact(host, alpha, budget).map_err(Box::new)?;
    let mrcst = mrcst_exact(host, budget)?;
    let sw_mrcst = welfare_of(alpha, n - 1, mrcst.total());
    let sw_smrcst = welfare_of(alpha, n - 1, result.routing_cost);
    Ok(ApproximationCheck {
        ratio_mrcst: opt.welfare / sw_mrcst,
        ratio_smrcst: opt.welfare / sw_smrcst,
        bound: Rational::new(m as i128, (n - 1) as i128) + 1,
        sw_opt: opt.welfare,
        sw_mrcst,
        sw_smrcst,
    })
}

/// Re-verifies an [`smrcst`] result; any failed inequality is an error
/// naming it.
pub fn smrcst_certificates(
    result: &SmrcstResult,
    host: &Arc<HostGraph>,
    alpha: Alpha,
    budget: u64,
) -> Result<SmrcstCertificates, SpanningError> {
    let n = host.n() as u128;
    let l = result.seed_path_length() as u128;
    let cost = result.routing_cost as u128;
    let path_bound = 9 * cost >= n * l * l;
    if !path_bound {
        return Err(SpanningError::Certificate(format!(
            "9 * d_T(V,V) >= n * l^2 fails: 9 * {cost} < {n} * {l}^2"
        )));
    }
    let max_iter = (n - 1) * n * (n + 1) / 3;
    let iteration_bound = (result.iterations as u128) <= max_iter;
    if !iteration_bound {
        return Err(SpanningError::Certificate(format!(
            "iterations <= (n-1)n(n+1)/3 fails: {} > {max_iter}",
            result.iterations
        )));
    }
    if let Some(s) = improving_swaps(&result.tree).first() {
        return Err(SpanningError::Certificate(format!(
            "swap-maximality fails: removing {:?} and adding {:?} gains {}",
            s.remove, s.add, s.delta
        )));
    }
    let small = (host.edge_count() as u32) < 64
        && 1u64 << host.edge_count() <= budget
        && spanning_tree_count(host).is_some_and(|c| c <= budget as u128);
    let approximation = if !alpha.exceeds(1) && small {
        let check = approximation_check(result, host, alpha, budget)?;
        if check.ratio_mrcst > check.bound {
            return Err(SpanningError::Certificate(format!(
                "SW(OPT)/SW(MRCST) <= m/(n-1) + 1 fails: {} > {}",
                check.ratio_mrcst, check.bound
            )));
        }
        Some(check)
    } else {
        None
    };
    Ok(SmrcstCertificates {
        path_length: result.seed_path_length(),
        path_bound,
        iteration_bound,
        swap_maximal: true,
        approximation,
    })
}
