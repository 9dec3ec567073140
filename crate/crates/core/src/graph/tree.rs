use super::{Edge, GameState, GraphError, Node};

/// A spanning tree rooted at node 0 with the cached quantities needed to
/// price an edge swap in O(n).
///
/// For every node `v` the scaffold keeps the size of the subtree below `v`,
/// the summed distance from `v` to its own subtree (`down`) and to the whole
/// tree (`per_node`).
#[derive(Clone, Debug)]
pub struct TreeScaffold {
    state: GameState,
    parent: Vec<Node>,
    depth: Vec<u32>,
    tin: Vec<u32>,
    tout: Vec<u32>,
    subtree: Vec<u64>,
    down: Vec<u64>,
    per_node: Vec<u64>,
    total: u64,
}

const ROOT: Node = 0;

impl TreeScaffold {
    pub fn new(state: GameState) -> Result<Self, GraphError> {
        let n = state.n();
        if !state.is_tree() {
            return Err(GraphError::NotATree {
                n,
                edges: state.edge_count(),
            });
        }
        let adj: Vec<Vec<Node>> = (0..n).map(|v| state.neighbors(v).collect()).collect();

        // iterative DFS for preorder and Euler intervals
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![0u32; n];
        let mut tin = vec![0u32; n];
        let mut tout = vec![0u32; n];
        let mut order = Vec::with_capacity(n);
        let mut stack = vec![(ROOT, 0usize)];
        parent[ROOT] = ROOT;
        tin[ROOT] = 0;
        order.push(ROOT);
        let mut clock = 1u32;
        while let Some(&(u, next)) = stack.last() {
            if let Some(&v) = adj[u].get(next) {
                stack.last_mut().expect("nonempty").1 += 1;
                if v == parent[u] {
                    continue;
                }
                parent[v] = u;
                depth[v] = depth[u] + 1;
                tin[v] = clock;
                clock += 1;
                order.push(v);
                stack.push((v, 0));
            } else {
                tout[u] = clock;
                stack.pop();
            }
        }
        debug_assert_eq!(order.len(), n);

        let mut subtree = vec![1u64; n];
        let mut down = vec![0u64; n];
        for &v in order.iter().rev() {
            if v != ROOT {
                let p = parent[v];
                subtree[p] += subtree[v];
                down[p] += down[v] + subtree[v];
            }
        }
        let nn = n as u64;
        let mut per_node = vec![0u64; n];
        per_node[ROOT] = down[ROOT];
        for &v in order.iter().skip(1) {
            // moving the root across edge (parent, v): subtree gets 1 closer,
            // everything else 1 further
            per_node[v] = per_node[parent[v]] + nn - 2 * subtree[v];
        }
        let total = per_node.iter().sum();
        Ok(TreeScaffold {
            state,
            parent,
            depth,
            tin,
            tout,
            subtree,
            down,
            per_node,
            total,
        })
    }

    pub fn state(&self) -> &GameState {
        &self.state
    }

    pub fn into_state(self) -> GameState {
        self.state
    }

    pub fn n(&self) -> usize {
        self.state.n()
    }

    /// `d(v, V)` in the tree.
    pub fn per_node(&self, v: Node) -> u64 {
        self.per_node[v]
    }

    /// Routing cost accumulated from per-node sums.
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn parent(&self, v: Node) -> Option<Node> {
        (v != ROOT).then(|| self.parent[v])
    }

    /// Whether `x` lies in the subtree hanging below `v`.
    pub fn in_subtree(&self, v: Node, x: Node) -> bool {
        self.tin[v] <= self.tin[x] && self.tin[x] < self.tout[v]
    }

    /// For a tree edge, the endpoint farther from the root.
    pub fn child_endpoint(&self, e: Edge) -> Option<Node> {
        let (a, b) = e.ends();
        if a != ROOT && self.parent[a] == b {
            Some(a)
        } else if b != ROOT && self.parent[b] == a {
            Some(b)
        } else {
            None
        }
    }

    /// Size of the component containing the child side when `e` is cut.
    pub fn cut_size(&self, e: Edge) -> Option<u64> {
        self.child_endpoint(e).map(|c| self.subtree[c])
    }

    /// Hop distance in the tree, by climbing to the lowest common ancestor.
    pub fn distance(&self, mut a: Node, mut b: Node) -> u64 {
        let mut d = 0;
        while self.depth[a] > self.depth[b] {
            a = self.parent[a];
            d += 1;
        }
        while self.depth[b] > self.depth[a] {
            b = self.parent[b];
            d += 1;
        }
        while a != b {
            a = self.parent[a];
            b = self.parent[b];
            d += 2;
        }
        d
    }

    /// Change in routing cost from replacing tree edge `remove` by host edge
    /// `add`. Replacing an edge by itself is the identity swap.
    pub fn swap_delta(&self, remove: Edge, add: Edge) -> Result<i64, GraphError> {
        let c = self.child_endpoint(remove).ok_or(GraphError::NotActive(remove))?;
        if add == remove {
            return Ok(0);
        }
        if !self.state.host().contains(add) {
            return Err(GraphError::NotInHost(add));
        }
        if self.state.contains(add) {
            return Err(GraphError::AlreadyActive(add));
        }
        let (x, y) = add.ends();
        let (a, b) = match (self.in_subtree(c, x), self.in_subtree(c, y)) {
            (true, false) => (x, y),
            (false, true) => (y, x),
            _ => return Err(GraphError::SwapDisconnects { remove, add }),
        };
        Ok(self.delta_unchecked(c, a, b))
    }

    /// Swap delta for cutting above child `c` and joining `a` (inside the
    /// cut subtree) to `b` (outside). Only the cross pairs change:
    /// `2 * [(n - s)(D_C(a) - D_C(c)) + s(D_out(b) - D_out(p))]`.
    pub(crate) fn delta_unchecked(&self, c: Node, a: Node, b: Node) -> i64 {
        let n = self.n() as i64;
        let s = self.subtree[c] as i64;
        let p = self.parent[c];
        let inside_c = self.down[c] as i64;
        let outside_p = self.per_node[p] as i64 - inside_c - s;
        let a_depth = (self.depth[a] - self.depth[c]) as i64;
        let inside_a = self.per_node[a] as i64 - (n - s) * (a_depth + 1) - outside_p;
        let bp = self.distance(b, p) as i64;
        let outside_b = self.per_node[b] as i64 - s * (bp + 1) - inside_c;
        2 * ((n - s) * (inside_a - inside_c) + s * (outside_b - outside_p))
    }

    /// The tree with `remove` replaced by `add`.
    pub fn swapped(&self, remove: Edge, add: Edge) -> Result<TreeScaffold, GraphError> {
        self.swap_delta(remove, add)?;
        if add == remove {
            return Ok(self.clone());
        }
        let host = self.state.host();
        let ri = host.edge_index(remove).expect("tree edge is a host edge");
        let ai = host.edge_index(add).expect("checked above");
        let state = self.state.toggled(ri).toggled(ai);
        TreeScaffold::new(state)
    }
}

/// Routing cost of a tree via `2 * sum over edges of s_e * (n - s_e)`.
pub fn tree_routing_cost(scaffold: &TreeScaffold) -> u64 {
    let n = scaffold.n() as u64;
    2 * (0..scaffold.n())
        .filter(|&v| v != ROOT)
        .map(|v| {
            let s = scaffold.subtree[v];
            s * (n - s)
        })
        .sum::<u64>()
}

/// Free-function form of [`TreeScaffold::swap_delta`].
pub fn tree_swap_delta(scaffold: &TreeScaffold, remove: Edge, add: Edge) -> Result<i64, GraphError> {
    scaffold.swap_delta(remove, add)
}
