use std::sync::Arc;

use super::SpanningError;
use crate::graph::{EdgeSet, GameState, HostGraph, TreeScaffold};

/// Union-find without path compression so unions can be undone.
struct RollbackUf {
    parent: Vec<usize>,
    size: Vec<usize>,
    history: Vec<usize>,
}

impl RollbackUf {
    fn new(n: usize) -> Self {
        RollbackUf {
            parent: (0..n).collect(),
            size: vec![1; n],
            history: Vec::new(),
        }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.history.push(b);
        true
    }

    fn undo(&mut self) {
        let b = self.history.pop().expect("undo after union");
        let a = self.parent[b];
        self.size[a] -= self.size[b];
        self.parent[b] = b;
    }
}

/// Binary contraction-deletion over the host edges, deciding the highest
/// edge index first and trying "exclude" before "include", so trees come out
/// in ascending order of their edge bitmask.
struct Enumerator<'a, F> {
    host: &'a HostGraph,
    uf: RollbackUf,
    chosen: EdgeSet,
    emitted: u64,
    budget: u64,
    visit: F,
}

impl<F: FnMut(&EdgeSet)> Enumerator<'_, F> {
    /// Whether the chosen edges plus undecided edges `0..undecided` span.
    fn can_span(&self, undecided: usize) -> bool {
        let n = self.host.n();
        let mut scratch = RollbackUf::new(n);
        let mut comps = n;
        for v in 0..n {
            let r = self.uf.find(v);
            if r != v && scratch.union(v, r) {
                comps -= 1;
            }
        }
        for e in &self.host.edges()[..undecided] {
            if scratch.union(e.lo(), e.hi()) {
                comps -= 1;
                if comps == 1 {
                    return true;
                }
            }
        }
        comps == 1
    }

    fn run(&mut self, undecided: usize, picked: usize) -> Result<(), SpanningError> {
        if picked == self.host.n() - 1 {
            if self.emitted == self.budget {
                return Err(SpanningError::BudgetExceeded { budget: self.budget });
            }
            self.emitted += 1;
            (self.visit)(&self.chosen);
            return Ok(());
        }
        if undecided == 0 {
            return Ok(());
        }
        let i = undecided - 1;
        if self.can_span(i) {
            self.run(i, picked)?;
        }
        let e = self.host.edge(i);
        if self.uf.union(e.lo(), e.hi()) {
            self.chosen.insert(i);
            let r = self.run(i, picked + 1);
            self.chosen.remove(i);
            self.uf.undo();
            r?;
        }
        Ok(())
    }
}

/// Calls `visit` with the edge set of every labeled spanning tree of `host`,
/// in ascending bitmask order. Fails once more than `budget` trees exist;
/// the trees visited before that point have already been reported.
pub fn for_each_spanning_tree(
    host: &HostGraph,
    budget: u64,
    visit: impl FnMut(&EdgeSet),
) -> Result<u64, SpanningError> {
    let mut en = Enumerator {
        host,
        uf: RollbackUf::new(host.n()),
        chosen: EdgeSet::empty(host.edge_count()),
        emitted: 0,
        budget,
        visit,
    };
    en.run(host.edge_count(), 0)?;
    Ok(en.emitted)
}

/// Every labeled spanning tree of `host`, in ascending bitmask order.
pub fn enumerate_spanning_trees(host: &Arc<HostGraph>, budget: u64) -> Result<Vec<TreeScaffold>, SpanningError> {
    let mut out = Vec::new();
    for_each_spanning_tree(host, budget, |set| {
        let state = GameState::from_edge_set_unchecked(Arc::clone(host), set.clone());
        out.push(TreeScaffold::new(state).expect("enumerated sets are spanning trees"));
    })?;
    Ok(out)
}

/// Number of labeled spanning trees by the matrix-tree theorem, or `None`
/// if the exact count overflows 128-bit arithmetic.
pub fn spanning_tree_count(host: &HostGraph) -> Option<u128> {
    let n = host.n();
    let k = n - 1;
    // reduced Laplacian: drop row and column 0
    let mut a = vec![vec![0i128; k]; k];
    for v in 1..n {
        a[v - 1][v - 1] = host.degree(v) as i128;
    }
    for e in host.edges() {
        let (u, v) = e.ends();
        if u > 0 && v > 0 {
            a[u - 1][v - 1] = -1;
            a[v - 1][u - 1] = -1;
        }
    }
    // Bareiss fraction-free elimination
    let mut sign = 1i128;
    let mut prev = 1i128;
    for p in 0..k {
        if a[p][p] == 0 {
            let Some(r) = (p + 1..k).find(|&r| a[r][p] != 0) else {
                return Some(0);
            };
            a.swap(p, r);
            sign = -sign;
        }
        for i in p + 1..k {
            for j in p + 1..k {
                let x = a[i][j].checked_mul(a[p][p])?;
                let y = a[i][p].checked_mul(a[p][j])?;
                a[i][j] = x.checked_sub(y)? / prev;
            }
        }
        prev = a[p][p];
    }
    let det = if k == 0 { 1 } else { sign * a[k - 1][k - 1] };
    u128::try_from(det).ok()
}
