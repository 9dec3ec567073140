use super::{Edge, GameState, GraphError, Node, MASK_NODE_LIMIT};

/// Active adjacency of a state, in one of two equivalent encodings.
///
/// `Masks` is a bit-parallel encoding for `n <= 64`; `Lists` works for any
/// size. Both give identical distances.
#[derive(Clone, Debug)]
pub enum Adjacency {
    Masks(Vec<u64>),
    Lists(Vec<Vec<Node>>),
}

impl Adjacency {
    /// Bitmask encoding when the state is small enough, lists otherwise.
    pub fn of(state: &GameState) -> Self {
        match state.masks() {
            Some(m) => Adjacency::Masks(m),
            None => Self::lists(state),
        }
    }

    pub fn lists(state: &GameState) -> Self {
        Adjacency::Lists((0..state.n()).map(|v| state.neighbors(v).collect()).collect())
    }

    pub fn n(&self) -> usize {
        match self {
            Adjacency::Masks(m) => m.len(),
            Adjacency::Lists(l) => l.len(),
        }
    }

    /// BFS from `src`, ignoring edge `skip` if given. Writes hop counts into
    /// `dist` (`u32::MAX` when unreachable) and returns `(reached, sum)`.
    pub fn bfs(&self, src: Node, skip: Option<Edge>, dist: &mut [u32]) -> (usize, u64) {
        dist.fill(u32::MAX);
        match self {
            Adjacency::Masks(adj) => mask_bfs(adj, src, skip, |u, d| dist[u] = d),
            Adjacency::Lists(adj) => {
                let mut queue = Vec::with_capacity(adj.len());
                dist[src] = 0;
                queue.push(src);
                let mut head = 0;
                let mut sum = 0u64;
                while head < queue.len() {
                    let u = queue[head];
                    head += 1;
                    let du = dist[u];
                    sum += du as u64;
                    for &v in &adj[u] {
                        if dist[v] == u32::MAX && skip != Some(Edge::new(u, v)) {
                            dist[v] = du + 1;
                            queue.push(v);
                        }
                    }
                }
                (queue.len(), sum)
            }
        }
    }

    /// `(reached, sum of distances)` from `src`, ignoring `skip`.
    pub fn distance_sum(&self, src: Node, skip: Option<Edge>) -> (usize, u64) {
        match self {
            Adjacency::Masks(adj) => mask_bfs(adj, src, skip, |_, _| {}),
            Adjacency::Lists(_) => {
                let mut dist = vec![0; self.n()];
                self.bfs(src, skip, &mut dist)
            }
        }
    }
}

fn mask_bfs(adj: &[u64], src: Node, skip: Option<Edge>, mut visit: impl FnMut(Node, u32)) -> (usize, u64) {
    debug_assert!(adj.len() <= MASK_NODE_LIMIT);
    let (sa, sb) = skip.map_or((usize::MAX, usize::MAX), Edge::ends);
    let mut visited = 1u64 << src;
    let mut frontier = visited;
    let mut depth = 0u32;
    let mut sum = 0u64;
    while frontier != 0 {
        sum += depth as u64 * frontier.count_ones() as u64;
        let mut next = 0u64;
        let mut f = frontier;
        while f != 0 {
            let u = f.trailing_zeros() as usize;
            f &= f - 1;
            visit(u, depth);
            let mut nb = adj[u];
            if u == sa {
                nb &= !(1 << sb);
            } else if u == sb {
                nb &= !(1 << sa);
            }
            next |= nb;
        }
        next &= !visited;
        visited |= next;
        frontier = next;
        depth += 1;
    }
    (visited.count_ones() as usize, sum)
}

/// Routing cost of a graph given by neighbor masks, or `None` when the graph
/// is disconnected.
pub(crate) fn mask_routing_cost(adj: &[u64]) -> Option<u64> {
    let n = adj.len();
    let mut total = 0;
    for v in 0..n {
        let (reached, sum) = mask_bfs(adj, v, None, |_, _| {});
        if reached != n {
            return None;
        }
        total += sum;
    }
    Some(total)
}

/// All-pairs hop distances of a connected state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceTable {
    n: usize,
    dist: Vec<u32>,
    per_node: Vec<u64>,
    total: u64,
}

impl DistanceTable {
    pub fn from_adjacency(adj: &Adjacency) -> Result<Self, GraphError> {
        let n = adj.n();
        let mut dist = vec![0u32; n * n];
        let mut per_node = Vec::with_capacity(n);
        for v in 0..n {
            let (reached, sum) = adj.bfs(v, None, &mut dist[v * n..(v + 1) * n]);
            if reached != n {
                return Err(GraphError::Disconnected);
            }
            per_node.push(sum);
        }
        let total = per_node.iter().sum();
        Ok(DistanceTable {
            n,
            dist,
            per_node,
            total,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dist(&self, u: Node, v: Node) -> u32 {
        self.dist[u * self.n + v]
    }

    pub fn row(&self, u: Node) -> &[u32] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }

    /// `d(v, V)`: sum of distances from `v` to every node.
    pub fn per_node(&self, v: Node) -> u64 {
        self.per_node[v]
    }

    /// `d(V, V)`: sum over ordered pairs.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// How much `u`'s distance sum drops when edge `{u, v}` is added.
    pub fn addition_drop(&self, u: Node, v: Node) -> u64 {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .map(|(&du, &dv)| du.saturating_sub(dv + 1) as u64)
            .sum()
    }
}

/// Exact all-pairs shortest-path distances of `state`.
pub fn bfs_all_pairs(state: &GameState) -> Result<DistanceTable, GraphError> {
    DistanceTable::from_adjacency(&Adjacency::of(state))
}

/// `d(V, V)` of a state (the Wiener index counted over ordered pairs).
pub fn routing_cost(state: &GameState) -> u64 {
    match state.masks() {
        Some(m) => mask_routing_cost(&m),
        None => bfs_all_pairs(state).ok().map(|t| t.total()),
    }
    .expect("game states are connected")
}

/// Whether removing active edge `e` disconnects the state.
pub fn is_bridge(state: &GameState, e: Edge) -> Result<bool, GraphError> {
    if !state.contains(e) {
        return Err(GraphError::NotActive(e));
    }
    let (reached, _) = Adjacency::of(state).distance_sum(e.lo(), Some(e));
    Ok(reached != state.n())
}
