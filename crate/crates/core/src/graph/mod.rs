//! Host graphs, game states and distance machinery.
//!
//! Nodes are dense labels `0..n`. A [`HostGraph`] fixes the universe of
//! permitted edges and an edge ordering; a [`GameState`] is a connected
//! spanning subgraph of a host, stored as a bitset over that ordering.

mod distance;
pub mod io;
mod tree;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub(crate) use distance::mask_routing_cost;
pub use distance::{bfs_all_pairs, is_bridge, routing_cost, Adjacency, DistanceTable};
pub use tree::{tree_routing_cost, tree_swap_delta, TreeScaffold};

/// Node label.
pub type Node = usize;

/// Largest node count for which adjacency bitmasks are used.
pub const MASK_NODE_LIMIT: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("a graph needs at least 2 nodes, got {0}")]
    TooFewNodes(usize),
    #[error("self-loop at node {0}")]
    SelfLoop(Node),
    #[error("node {node} out of range for n = {n}")]
    NodeOutOfRange { node: Node, n: usize },
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("edge {0} is not a host edge")]
    NotInHost(Edge),
    #[error("edge {0} is not active")]
    NotActive(Edge),
    #[error("edge {0} is already active")]
    AlreadyActive(Edge),
    #[error("removing bridge {0} disconnects the network")]
    Bridge(Edge),
    #[error("expected a spanning tree, got {edges} edges on {n} nodes")]
    NotATree { n: usize, edges: usize },
    #[error("swapping out {remove} for {add} does not reconnect the tree")]
    SwapDisconnects { remove: Edge, add: Edge },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Unordered node pair, normalized so that `lo < hi`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Edge {
    lo: u32,
    hi: u32,
}

impl Edge {
    /// Builds the unordered pair `{a, b}`. Self-loops are representable here
    /// and rejected by [`HostGraph::new`].
    pub fn new(a: Node, b: Node) -> Self {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        Edge {
            lo: lo as u32,
            hi: hi as u32,
        }
    }

    pub fn lo(self) -> Node {
        self.lo as Node
    }

    pub fn hi(self) -> Node {
        self.hi as Node
    }

    pub fn ends(self) -> (Node, Node) {
        (self.lo(), self.hi())
    }

    pub fn touches(self, v: Node) -> bool {
        self.lo() == v || self.hi() == v
    }

    /// The endpoint that is not `v`.
    pub fn other(self, v: Node) -> Node {
        if self.lo() == v {
            self.hi()
        } else {
            self.lo()
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.lo, self.hi)
    }
}

impl From<(Node, Node)> for Edge {
    fn from((a, b): (Node, Node)) -> Self {
        Edge::new(a, b)
    }
}

/// Fixed-width bitset over host edge indices.
///
/// Ordering compares the sets as binary numbers where edge index `i` is bit
/// `i`, so iteration in ascending order is "lexicographic on the edge bitmask".
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct EdgeSet {
    words: Vec<u64>,
    len: usize,
}

impl EdgeSet {
    pub fn empty(len: usize) -> Self {
        EdgeSet {
            words: vec![0; len.div_ceil(64).max(1)],
            len,
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    /// Builds a set from the low `len` bits of `mask` (`len <= 64`).
    pub fn from_mask(mask: u64, len: usize) -> Self {
        debug_assert!(len <= 64);
        EdgeSet { words: vec![mask], len }
    }

    /// Number of addressable indices (the host edge count).
    pub fn universe(&self) -> usize {
        self.len
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn insert(&mut self, i: usize) -> bool {
        debug_assert!(i < self.len);
        let had = self.contains(i);
        self.words[i / 64] |= 1 << (i % 64);
        !had
    }

    pub fn remove(&mut self, i: usize) -> bool {
        let had = self.contains(i);
        self.words[i / 64] &= !(1 << (i % 64));
        had
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    /// The set as a single word, when the universe fits in 64 bits.
    pub fn as_mask(&self) -> Option<u64> {
        (self.len <= 64).then(|| self.words[0])
    }
}

impl Ord for EdgeSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| {
            for (a, b) in self.words.iter().rev().zip(other.words.iter().rev()) {
                match a.cmp(b) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for EdgeSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Labeled identity of a state: its active edge set under the host's edge
/// ordering. Isomorphic but differently labeled states get different keys.
pub type StateKey = EdgeSet;

/// Immutable connected simple graph; the universe of permitted edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HostGraph {
    n: usize,
    edges: Vec<Edge>,
    // per node: (neighbor, edge index), sorted by neighbor
    adj: Vec<Vec<(Node, usize)>>,
    masks: Option<Vec<u64>>,
}

impl HostGraph {
    /// Validates and builds a host. Edges are sorted, so the edge index order
    /// is lexicographic on `(lo, hi)` regardless of input order.
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self, GraphError> {
        let g = Self::unchecked_connectivity(n, edges)?;
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    /// Same as [`HostGraph::new`] but accepts node pairs.
    pub fn from_pairs(n: usize, pairs: &[(Node, Node)]) -> Result<Self, GraphError> {
        Self::new(n, pairs.iter().map(|&p| Edge::from(p)))
    }

    fn unchecked_connectivity(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self, GraphError> {
        if n < 2 {
            return Err(GraphError::TooFewNodes(n));
        }
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        for &e in &edges {
            if e.hi() >= n {
                return Err(GraphError::NodeOutOfRange { node: e.hi(), n });
            }
            if e.lo() == e.hi() {
                return Err(GraphError::SelfLoop(e.lo()));
            }
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0]));
        }
        let mut adj = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            adj[e.lo()].push((e.hi(), i));
            adj[e.hi()].push((e.lo(), i));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let masks = (n <= MASK_NODE_LIMIT).then(|| {
            adj.iter()
                .map(|l| l.iter().fold(0u64, |m, &(u, _)| m | 1 << u))
                .collect()
        });
        Ok(HostGraph { n, edges, adj, masks })
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &(v, _) in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.n
    }

    /// The complete graph on `n` nodes.
    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| Edge::new(u, v)));
        Self::new(n, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Host edges in index order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> Edge {
        self.edges[index]
    }

    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        if e.hi() >= self.n {
            return None;
        }
        let list = &self.adj[e.lo()];
        list.binary_search_by_key(&e.hi(), |&(v, _)| v).ok().map(|p| list[p].1)
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edge_index(e).is_some()
    }

    /// `(neighbor, edge index)` pairs of `v`, sorted by neighbor.
    pub fn incident(&self, v: Node) -> &[(Node, usize)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Node) -> usize {
        self.adj[v].len()
    }

    /// Per-node neighbor bitmasks, present when `n <= 64`.
    pub fn masks(&self) -> Option<&[u64]> {
        self.masks.as_deref()
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * (self.n - 1) / 2
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() == self.n - 1
    }
}

/// A connected spanning subnetwork of a host.
#[derive(Clone, Debug)]
pub struct GameState {
    host: Arc<HostGraph>,
    active: EdgeSet,
}

impl PartialEq for GameState {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.host, &other.host) || self.host == other.host) && self.active == other.active
    }
}

impl Eq for GameState {}

impl GameState {
    pub fn new(host: Arc<HostGraph>, edges: impl IntoIterator<Item = Edge>) -> Result<Self, GraphError> {
        let mut active = EdgeSet::empty(host.edge_count());
        for e in edges {
            let i = host.edge_index(e).ok_or(GraphError::NotInHost(e))?;
            if !active.insert(i) {
                return Err(GraphError::DuplicateEdge(e));
            }
        }
        Self::from_edge_set(host, active)
    }

    /// Builds a state from an edge-index set; fails when it does not span.
    pub fn from_edge_set(host: Arc<HostGraph>, active: EdgeSet) -> Result<Self, GraphError> {
        assert_eq!(active.universe(), host.edge_count(), "edge set universe");
        let state = GameState { host, active };
        if !state.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(state)
    }

    /// The state using every host edge.
    pub fn full(host: Arc<HostGraph>) -> Self {
        let active = EdgeSet::full(host.edge_count());
        GameState { host, active }
    }

    fn is_connected(&self) -> bool {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for v in self.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == n
    }

    pub fn host(&self) -> &Arc<HostGraph> {
        &self.host
    }

    pub fn n(&self) -> usize {
        self.host.n()
    }

    pub fn active(&self) -> &EdgeSet {
        &self.active
    }

    pub fn edge_count(&self) -> usize {
        self.active.count()
    }

    /// Active edges in host index order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.active.iter().map(|i| self.host.edge(i))
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.host.edge_index(e).is_some_and(|i| self.active.contains(i))
    }

    pub fn neighbors(&self, v: Node) -> impl Iterator<Item = Node> + '_ {
        self.host
            .incident(v)
            .iter()
            .filter(|&&(_, i)| self.active.contains(i))
            .map(|&(u, _)| u)
    }

    pub fn degree(&self, v: Node) -> usize {
        self.neighbors(v).count()
    }

    pub fn is_tree(&self) -> bool {
        self.edge_count() == self.n() - 1
    }

    pub fn canonical_key(&self) -> StateKey {
        self.active.clone()
    }

    /// Per-node active neighbor bitmasks, when `n <= 64`.
    pub fn masks(&self) -> Option<Vec<u64>> {
        (self.n() <= MASK_NODE_LIMIT).then(|| {
            let mut m = vec![0u64; self.n()];
            for e in self.edges() {
                m[e.lo()] |= 1 << e.hi();
                m[e.hi()] |= 1 << e.lo();
            }
            m
        })
    }

    /// Copy of this state with edge index `i` toggled; no connectivity check.
    pub(crate) fn toggled(&self, i: usize) -> GameState {
        let mut active = self.active.clone();
        if !active.remove(i) {
            active.insert(i);
        }
        GameState {
            host: Arc::clone(&self.host),
            active,
        }
    }

    /// Builds a state the caller already knows to be connected.
    pub(crate) fn from_edge_set_unchecked(host: Arc<HostGraph>, active: EdgeSet) -> Self {
        debug_assert!(GameState {
            host: Arc::clone(&host),
            active: active.clone()
        }
        .is_connected());
        GameState { host, active }
    }
}

/// Free-function form of [`GameState::canonical_key`].
pub fn canonical_key(state: &GameState) -> StateKey {
    state.canonical_key()
}
