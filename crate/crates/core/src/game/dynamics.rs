use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{apply_move, improving_moves, welfare_of, Alpha, Move};
use crate::graph::{routing_cost, GameState, StateKey};

/// How the next improving move is picked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Policy {
    /// First improving move in move order.
    FirstImproving,
    /// Move whose resulting state has maximum social welfare; ties go to the
    /// first in move order.
    BestImproving,
    /// Uniformly random improving move from a seeded generator.
    SeededRandom(u64),
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Policy::FirstImproving => write!(f, "first"),
            Policy::BestImproving => write!(f, "best"),
            Policy::SeededRandom(seed) => write!(f, "random(seed={seed})"),
        }
    }
}

impl FromStr for Policy {
    type Err = String;

    /// `first`, `best`, or `random` (seed 0; use [`Policy::SeededRandom`]
    /// directly for other seeds).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "first" => Ok(Policy::FirstImproving),
            "best" => Ok(Policy::BestImproving),
            "random" => Ok(Policy::SeededRandom(0)),
            _ => Err(format!("unknown policy {s:?} (expected first, best or random)")),
        }
    }
}

/// One applied move and the key of the state it was applied to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynamicsStep {
    pub key: StateKey,
    pub mv: Move,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Terminal {
    /// The final state has no improving move.
    Stable,
    /// The final state equals the state before step `start`.
    Cycle {
        start: usize,
    },
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynamicsOutcome {
    pub steps: Vec<DynamicsStep>,
    pub terminal: Terminal,
    pub final_state: GameState,
}

impl DynamicsOutcome {
    pub fn is_cycle(&self) -> bool {
        matches!(self.terminal, Terminal::Cycle { .. })
    }

    /// The moves forming the cycle, if the run ended in one.
    pub fn cycle_moves(&self) -> Option<Vec<Move>> {
        match self.terminal {
            Terminal::Cycle { start } => Some(self.steps[start..].iter().map(|s| s.mv).collect()),
            _ => None,
        }
    }
}

fn pick(state: &GameState, alpha: Alpha, policy: Policy, rng: &mut Option<ChaCha8Rng>) -> Option<Move> {
    match policy {
        Policy::FirstImproving => improving_moves(state, alpha, Some(1)).first().copied(),
        Policy::BestImproving => {
            let moves = improving_moves(state, alpha, None);
            let mut best: Option<(Move, _)> = None;
            for m in moves {
                let next = apply_move(state, m).expect("improving moves are legal");
                let w = welfare_of(alpha, next.edge_count(), routing_cost(&next));
                if best.as_ref().is_none_or(|(_, bw)| w > *bw) {
                    best = Some((m, w));
                }
            }
            best.map(|(m, _)| m)
        }
        Policy::SeededRandom(_) => {
            let moves = improving_moves(state, alpha, None);
            if moves.is_empty() {
                return None;
            }
            let rng = rng.as_mut().expect("seeded policy has a generator");
            Some(moves[rng.random_range(0..moves.len())])
        }
    }
}

/// Plays improving moves from `start` until the state is stable, a state
/// repeats, or `budget` moves have been applied.
pub fn run_dynamics(start: &GameState, alpha: Alpha, policy: Policy, budget: usize) -> DynamicsOutcome {
    let mut rng = match policy {
        Policy::SeededRandom(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let mut seen: HashMap<StateKey, usize> = HashMap::new();
    let mut steps = Vec::new();
    let mut state = start.clone();
    let terminal = loop {
        let key = state.canonical_key();
        if let Some(&i) = seen.get(&key) {
            break Terminal::Cycle { start: i };
        }
        let Some(mv) = pick(&state, alpha, policy, &mut rng) else {
            break Terminal::Stable;
        };
        if steps.len() >= budget {
            break Terminal::BudgetExhausted;
        }
        seen.insert(key.clone(), steps.len());
        steps.push(DynamicsStep { key, mv });
        state = apply_move(&state, mv).expect("improving moves are legal");
    };
    DynamicsOutcome {
        steps,
        terminal,
        final_state: state,
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::game::is_pairwise_stable;
    use crate::graph::{Edge, HostGraph};

    fn k(n: usize) -> Arc<HostGraph> {
        Arc::new(HostGraph::complete(n).unwrap())
    }

    #[test]
    fn trees_are_immediately_stable_at_alpha_one() {
        let h = k(6);
        let star = GameState::new(h, (1..6).map(|i| Edge::new(0, i))).unwrap();
        for policy in [Policy::FirstImproving, Policy::BestImproving, Policy::SeededRandom(9)] {
            let out = run_dynamics(&star, "1".parse().unwrap(), policy, 100);
            assert_eq!(out.terminal, Terminal::Stable);
            assert!(out.steps.is_empty());
        }
    }

    #[test]
    fn clique_sheds_edges_down_to_a_tree() {
        let alpha: Alpha = "1/2".parse().unwrap();
        for policy in [Policy::FirstImproving, Policy::BestImproving, Policy::SeededRandom(3)] {
            let out = run_dynamics(&GameState::full(k(4)), alpha, policy, 100);
            assert_eq!(out.terminal, Terminal::Stable);
            assert!(out.final_state.is_tree());
            assert!(is_pairwise_stable(&out.final_state, alpha).stable);
            assert_eq!(out.steps.len(), 3);
        }
    }

    #[test]
    fn seeded_runs_are_reproducible() {
        let alpha: Alpha = "5/2".parse().unwrap();
        let start = GameState::full(k(5));
        let a = run_dynamics(&start, alpha, Policy::SeededRandom(42), 500);
        let b = run_dynamics(&start, alpha, Policy::SeededRandom(42), 500);
        assert_eq!(a, b);
    }

    #[test]
    fn budget_is_an_outcome() {
        let out = run_dynamics(
            &GameState::full(k(5)),
            "1/2".parse().unwrap(),
            Policy::FirstImproving,
            2,
        );
        assert_eq!(out.terminal, Terminal::BudgetExhausted);
        assert_eq!(out.steps.len(), 2);
    }
}
