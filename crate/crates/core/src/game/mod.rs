//! Utilities, social welfare, improving moves and pairwise stability.
//!
//! Agent `v` in state `G` has utility `alpha * deg(v) + d(v, V)`: every
//! incident edge is worth `alpha`, and every hop of distance to another agent
//! is worth 1. An edge may be removed by either endpoint alone (if that does
//! not disconnect the network) and added only with the consent of both.

mod dynamics;

use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::graph::{Adjacency, DistanceTable, Edge, GameState, GraphError, Node};

pub use dynamics::{run_dynamics, DynamicsOutcome, DynamicsStep, Policy, Terminal};

/// Exact rational used for utilities, welfare and ratios.
pub type Rational = Ratio<i128>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlphaError {
    #[error("alpha must be positive, got {0}")]
    NotPositive(String),
    #[error("alpha must be an exact rational like \"5/2\" or \"3\", got {0:?}")]
    Malformed(String),
}

/// The edge benefit `alpha`, a positive exact rational in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Alpha(Rational);

impl Alpha {
    pub fn new(value: Rational) -> Result<Self, AlphaError> {
        if value.is_positive() {
            Ok(Alpha(value))
        } else {
            Err(AlphaError::NotPositive(value.to_string()))
        }
    }

    pub fn ratio(numer: i128, denom: i128) -> Result<Self, AlphaError> {
        if denom == 0 {
            return Err(AlphaError::Malformed(format!("{numer}/{denom}")));
        }
        Self::new(Rational::new(numer, denom))
    }

    pub fn integer(k: i128) -> Result<Self, AlphaError> {
        Self::new(Rational::from_integer(k))
    }

    pub fn value(self) -> Rational {
        self.0
    }

    pub fn numer(self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(self) -> i128 {
        *self.0.denom()
    }

    /// `alpha > k`
    pub fn exceeds(self, k: u64) -> bool {
        self.numer() > k as i128 * self.denom()
    }

    /// `alpha < k`
    pub fn below(self, k: u64) -> bool {
        self.numer() < k as i128 * self.denom()
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Alpha {
    type Err = AlphaError;

    /// Accepts `"p/q"` or an integer. Decimal notation is rejected: a value
    /// like `0.333` would silently miss a threshold such as `n/3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || AlphaError::Malformed(s.to_string());
        let t = s.trim();
        let parse = |x: &str| -> Result<i128, AlphaError> {
            if x.is_empty() || !x.trim_start_matches(['-', '+']).chars().all(|c| c.is_ascii_digit()) {
                return Err(malformed());
            }
            x.parse().map_err(|_| malformed())
        };
        match t.split_once('/') {
            Some((p, q)) => {
                let (p, q) = (parse(p.trim())?, parse(q.trim())?);
                if q == 0 {
                    return Err(malformed());
                }
                Self::new(Rational::new(p, q))
            }
            None => Self::new(Rational::from_integer(parse(t)?)),
        }
    }
}

impl TryFrom<Rational> for Alpha {
    type Error = AlphaError;

    fn try_from(value: Rational) -> Result<Self, Self::Error> {
        Alpha::new(value)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MoveKind {
    Add,
    Remove,
}

/// An edge addition or removal. Moves order by kind, then by edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Move {
    pub kind: MoveKind,
    pub edge: Edge,
}

impl Move {
    pub fn add(edge: impl Into<Edge>) -> Self {
        Move {
            kind: MoveKind::Add,
            edge: edge.into(),
        }
    }

    pub fn remove(edge: impl Into<Edge>) -> Self {
        Move {
            kind: MoveKind::Remove,
            edge: edge.into(),
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verb = match self.kind {
            MoveKind::Add => "add",
            MoveKind::Remove => "remove",
        };
        write!(f, "{verb} {}", self.edge)
    }
}

/// `alpha * deg(v) + d(v, V)`.
pub fn utility(state: &GameState, v: Node, alpha: Alpha) -> Rational {
    let (_, dist) = Adjacency::of(state).distance_sum(v, None);
    alpha.value() * state.degree(v) as i128 + dist as i128
}

fn welfare_from_parts(alpha: Alpha, edges: usize, routing: u64) -> Rational {
    alpha.value() * (2 * edges as i128) + routing as i128
}

/// `2 * alpha * |E| + d(V, V)`, cross-checked against the sum of utilities.
pub fn social_welfare(state: &GameState, alpha: Alpha) -> Rational {
    let table = DistanceTable::from_adjacency(&Adjacency::of(state)).expect("game states are connected");
    let by_parts = welfare_from_parts(alpha, state.edge_count(), table.total());
    let by_agents: Rational = (0..state.n())
        .map(|v| alpha.value() * state.degree(v) as i128 + table.per_node(v) as i128)
        .sum();
    assert_eq!(by_parts, by_agents, "welfare identity");
    by_parts
}

/// Welfare from a known edge count and routing cost.
pub fn welfare_of(alpha: Alpha, edges: usize, routing: u64) -> Rational {
    welfare_from_parts(alpha, edges, routing)
}

/// Outcome of a pairwise-stability check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport {
    pub stable: bool,
    pub stable_against_addition: bool,
    pub stable_against_removal: bool,
    /// Improving moves found, in move order.
    pub witnesses: Vec<Move>,
    /// Whether some moves were skipped after enough witnesses were found.
    pub truncated: bool,
    pub moves_examined: usize,
}

/// Exact move evaluation over one state.
struct Scanner<'a> {
    state: &'a GameState,
    alpha: Alpha,
    adj: Adjacency,
    table: DistanceTable,
}

impl<'a> Scanner<'a> {
    fn new(state: &'a GameState, alpha: Alpha) -> Self {
        let adj = Adjacency::of(state);
        let table = DistanceTable::from_adjacency(&adj).expect("game states are connected");
        Scanner {
            state,
            alpha,
            adj,
            table,
        }
    }

    fn addition_improves(&self, e: Edge) -> bool {
        let (u, v) = e.ends();
        // both endpoints must strictly gain: alpha - drop > 0 for each
        self.alpha.exceeds(self.table.addition_drop(u, v)) && self.alpha.exceeds(self.table.addition_drop(v, u))
    }

    /// `None` for bridges; otherwise whether some endpoint strictly gains.
    fn removal_improves(&self, e: Edge) -> Option<bool> {
        let n = self.state.n();
        let (u, v) = e.ends();
        let (reached, sum_u) = self.adj.distance_sum(u, Some(e));
        if reached != n {
            return None;
        }
        if self.alpha.below(sum_u - self.table.per_node(u)) {
            return Some(true);
        }
        let (_, sum_v) = self.adj.distance_sum(v, Some(e));
        Some(self.alpha.below(sum_v - self.table.per_node(v)))
    }

    fn additions(&self, mut visit: impl FnMut(Move) -> ControlFlow<()>) -> (usize, bool) {
        let host = self.state.host();
        let mut examined = 0;
        for (i, &e) in host.edges().iter().enumerate() {
            if self.state.active().contains(i) {
                continue;
            }
            examined += 1;
            if self.addition_improves(e) && visit(Move::add(e)).is_break() {
                return (examined, true);
            }
        }
        (examined, false)
    }

    fn removals(&self, mut visit: impl FnMut(Move) -> ControlFlow<()>) -> (usize, bool) {
        let mut examined = 0;
        for e in self.state.edges() {
            examined += 1;
            if self.removal_improves(e) == Some(true) && visit(Move::remove(e)).is_break() {
                return (examined, true);
            }
        }
        (examined, false)
    }
}

/// Improving moves of `state` in move order (additions first, then
/// removals, each by edge), truncated to `limit` when given.
pub fn improving_moves(state: &GameState, alpha: Alpha, limit: Option<usize>) -> Vec<Move> {
    let limit = limit.unwrap_or(usize::MAX);
    let mut out = Vec::new();
    if limit == 0 {
        return out;
    }
    let scan = Scanner::new(state, alpha);
    let mut collect = |m: Move| {
        out.push(m);
        if out.len() >= limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    };
    let (_, stopped) = scan.additions(&mut collect);
    if !stopped {
        scan.removals(&mut collect);
    }
    out
}

/// Full stability check: every host-legal addition and every removal.
pub fn is_pairwise_stable(state: &GameState, alpha: Alpha) -> StabilityReport {
    stability_report(state, alpha, None)
}

/// Stability check that stops scanning a move class once it has produced
/// `per_class_limit` witnesses. Both verdict flags stay exact.
pub fn stability_report(state: &GameState, alpha: Alpha, per_class_limit: Option<usize>) -> StabilityReport {
    let limit = per_class_limit.unwrap_or(usize::MAX).max(1);
    let scan = Scanner::new(state, alpha);
    let mut adds = Vec::new();
    let (add_examined, add_cut) = scan.additions(|m| {
        adds.push(m);
        if adds.len() >= limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    let mut rems = Vec::new();
    let (rem_examined, rem_cut) = scan.removals(|m| {
        rems.push(m);
        if rems.len() >= limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    let total_moves = (state.host().edge_count() - state.edge_count()) + state.edge_count();
    let examined = add_examined + rem_examined;
    let stable_against_addition = adds.is_empty();
    let stable_against_removal = rems.is_empty();
    adds.extend(rems);
    StabilityReport {
        stable: stable_against_addition && stable_against_removal,
        stable_against_addition,
        stable_against_removal,
        witnesses: adds,
        truncated: (add_cut || rem_cut) && examined < total_moves,
        moves_examined: examined,
    }
}

/// Whether `state` is pairwise stable, stopping at the first witness.
pub fn is_stable(state: &GameState, alpha: Alpha) -> bool {
    improving_moves(state, alpha, Some(1)).is_empty()
}

/// Applies a legal move.
pub fn apply_move(state: &GameState, m: Move) -> Result<GameState, GraphError> {
    let i = state.host().edge_index(m.edge).ok_or(GraphError::NotInHost(m.edge))?;
    match m.kind {
        MoveKind::Add => {
            if state.active().contains(i) {
                return Err(GraphError::AlreadyActive(m.edge));
            }
            Ok(state.toggled(i))
        }
        MoveKind::Remove => {
            if !state.active().contains(i) {
                return Err(GraphError::NotActive(m.edge));
            }
            let (reached, _) = Adjacency::of(state).distance_sum(m.edge.lo(), Some(m.edge));
            if reached != state.n() {
                return Err(GraphError::Bridge(m.edge));
            }
            Ok(state.toggled(i))
        }
    }
}

/// Utility change of each endpoint `(lo, hi)` if `m` were played,
/// recomputed from scratch on the resulting state.
pub fn move_gains(state: &GameState, m: Move, alpha: Alpha) -> Result<(Rational, Rational), GraphError> {
    let next = apply_move(state, m)?;
    let (u, v) = m.edge.ends();
    Ok((
        utility(&next, u, alpha) - utility(state, u, alpha),
        utility(&next, v, alpha) - utility(state, v, alpha),
    ))
}

/// Whether `m` is an improving move, judged by recomputing utilities.
pub fn is_improving_by_recomputation(state: &GameState, m: Move, alpha: Alpha) -> bool {
    match move_gains(state, m, alpha) {
        Ok((gu, gv)) => match m.kind {
            MoveKind::Add => gu > Rational::zero() && gv > Rational::zero(),
            MoveKind::Remove => gu > Rational::zero() || gv > Rational::zero(),
        },
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::graph::HostGraph;

    fn host(n: usize) -> Arc<HostGraph> {
        Arc::new(HostGraph::complete(n).unwrap())
    }

    fn state(h: &Arc<HostGraph>, pairs: &[(usize, usize)]) -> GameState {
        GameState::new(h.clone(), pairs.iter().map(|&p| Edge::from(p))).unwrap()
    }

    fn path(n: usize) -> Vec<(usize, usize)> {
        (0..n - 1).map(|i| (i, i + 1)).collect()
    }

    fn a(s: &str) -> Alpha {
        s.parse().unwrap()
    }

    fn q(p: i128, d: i128) -> Rational {
        Rational::new(p, d)
    }

    #[test]
    fn alpha_parsing() {
        assert_eq!(a("5/2").value(), q(5, 2));
        assert_eq!(a("10/4").value(), q(5, 2));
        assert_eq!(a(" 3 ").value(), q(3, 1));
        assert!(matches!("2.5".parse::<Alpha>(), Err(AlphaError::Malformed(_))));
        assert!(matches!("1/0".parse::<Alpha>(), Err(AlphaError::Malformed(_))));
        assert!(matches!("0".parse::<Alpha>(), Err(AlphaError::NotPositive(_))));
        assert!(matches!("-1/2".parse::<Alpha>(), Err(AlphaError::NotPositive(_))));
        assert!(matches!("abc".parse::<Alpha>(), Err(AlphaError::Malformed(_))));
        assert_eq!(a("7/3").to_string(), "7/3");
        assert!(a("7/3").exceeds(2) && !a("7/3").exceeds(3));
        assert!(a("2").below(3) && !a("2").below(2));
    }

    #[test]
    fn utility_examples() {
        let k4 = host(4);
        assert_eq!(utility(&state(&k4, &path(4)), 0, a("1")), q(7, 1));
        let k5 = GameState::full(host(5));
        assert_eq!(utility(&k5, 3, a("2")), q(12, 1));
        let s4 = state(&k4, &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(utility(&s4, 0, a("1/2")), q(9, 2));
    }

    #[test]
    fn welfare_examples() {
        assert_eq!(social_welfare(&state(&host(5), &path(5)), a("1")), q(48, 1));
        assert_eq!(social_welfare(&GameState::full(host(6)), a("2")), q(90, 1));
        let mut c5 = path(5);
        c5.push((0, 4));
        assert_eq!(social_welfare(&state(&host(5), &c5), a("1")), q(40, 1));
    }

    #[test]
    fn improving_move_examples() {
        let k4 = host(4);
        let p4 = state(&k4, &path(4));
        let moves = improving_moves(&p4, a("3"), None);
        assert!(moves.contains(&Move::add((0, 3))));
        for m in &moves {
            assert!(is_improving_by_recomputation(&p4, *m, a("3")));
        }
        assert!(improving_moves(&p4, a("1"), None).is_empty());
        let star = state(&k4, &[(0, 1), (0, 2), (0, 3)]);
        assert!(improving_moves(&star, a("1"), None).is_empty());

        let full = GameState::full(k4);
        let moves = improving_moves(&full, a("1/2"), None);
        assert_eq!(moves.len(), 6);
        assert!(moves.iter().all(|m| m.kind == MoveKind::Remove));
        let gains = move_gains(&full, moves[0], a("1/2")).unwrap();
        assert_eq!(gains, (q(1, 2), q(1, 2)));
    }

    #[test]
    fn stability_examples() {
        let p6 = state(&host(6), &path(6));
        assert!(is_pairwise_stable(&p6, a("5/2")).stable);
        // every addition to P_6 cuts some endpoint's distances by >= 3
        assert!(is_pairwise_stable(&p6, a("3")).stable);
        let r = is_pairwise_stable(&p6, a("7/2"));
        assert!(r.witnesses.contains(&Move::add((2, 4))) && r.witnesses.contains(&Move::add((1, 3))));

        let k5 = GameState::full(host(5));
        let r = is_pairwise_stable(&k5, a("3"));
        assert!(r.stable && r.witnesses.is_empty());
        assert_eq!(r.moves_examined, 10);

        let s5 = state(&host(5), &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        let r = is_pairwise_stable(&s5, a("3/2"));
        assert!(!r.stable && !r.stable_against_addition && r.stable_against_removal);
        assert_eq!(r.witnesses.len(), 6);
        assert_eq!(
            move_gains(&s5, Move::add((1, 2)), a("3/2")).unwrap(),
            (q(1, 2), q(1, 2))
        );
    }

    #[test]
    fn truncated_report_keeps_verdicts() {
        let k4 = GameState::full(host(4));
        let r = stability_report(&k4, a("1/2"), Some(1));
        assert!(!r.stable && !r.stable_against_removal && r.stable_against_addition);
        assert_eq!(r.witnesses.len(), 1);
        assert!(r.truncated);
        assert_eq!(improving_moves(&k4, a("1/2"), Some(2)).len(), 2);
    }

    #[test]
    fn apply_move_checks_legality() {
        let h = host(4);
        let p4 = state(&h, &path(4));
        let added = apply_move(&p4, Move::add((0, 3))).unwrap();
        let back = apply_move(&added, Move::remove((0, 3))).unwrap();
        assert_eq!(back, p4);
        assert_eq!(
            apply_move(&p4, Move::remove((1, 2))),
            Err(GraphError::Bridge(Edge::new(1, 2)))
        );
        assert_eq!(
            apply_move(&p4, Move::add((0, 1))),
            Err(GraphError::AlreadyActive(Edge::new(0, 1)))
        );
        let tree_host = Arc::new(HostGraph::from_pairs(4, &path(4)).unwrap());
        let t = GameState::full(tree_host);
        assert_eq!(
            apply_move(&t, Move::add((0, 3))),
            Err(GraphError::NotInHost(Edge::new(0, 3)))
        );
    }
}
