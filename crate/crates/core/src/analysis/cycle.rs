//! Search for improving cycles on complete hosts.
//!
//! A depth-first search over the directed graph whose arcs are improving
//! moves. Start states are drawn from a seeded generator and the move order
//! at each state is a seeded shuffle; a move into a state on the current
//! search path closes a cycle. Colors persist across start states, so a
//! state is expanded at most once. On hosts with few edges, once random
//! starts stop producing unseen states, every remaining state is tried.

use std::collections::HashMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::random_host;
use crate::game::{apply_move, improving_moves, Alpha, DynamicsOutcome, DynamicsStep, Move, Terminal};
use crate::graph::{EdgeSet, GameState, HostGraph};

/// Largest edge count for which every start state is eventually tried.
const SWEEP_EDGE_LIMIT: usize = 21;

#[derive(Clone, Debug)]
pub struct CycleSearch {
    /// The search path from its start state, ending in a cycle.
    pub outcome: Option<DynamicsOutcome>,
    /// Improving moves followed.
    pub moves_examined: u64,
    pub states_visited: usize,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Color {
    OnPath,
    Done,
}

struct Frame {
    state: GameState,
    moves: Vec<Move>,
    next: usize,
}

/// Searches `K_n` for a cyclic sequence of improving moves, following at
/// most `budget` moves. Not finding one is a result, not an error.
pub fn find_improving_cycle(n: usize, alpha: Alpha, budget: u64, seed: u64) -> CycleSearch {
    let host = Arc::new(HostGraph::complete(n).expect("n >= 2"));
    let m = host.edge_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut color: HashMap<EdgeSet, Color> = HashMap::new();
    let mut examined = 0u64;
    let mut fresh_starts_missed = 0;
    while examined < budget && fresh_starts_missed < 64 {
        let density = rng.random_range(0.0..1.0);
        let random = random_host(n, density, None, &mut rng);
        let key = random.edges().iter().fold(EdgeSet::empty(m), |mut set, e| {
            set.insert(host.edge_index(*e).expect("complete host"));
            set
        });
        if color.contains_key(&key) {
            fresh_starts_missed += 1;
            continue;
        }
        fresh_starts_missed = 0;
        let start = GameState::from_edge_set(Arc::clone(&host), key).expect("random hosts are connected");
        if let Some(outcome) = search_from(start, alpha, budget, &mut examined, &mut color, &mut rng) {
            return CycleSearch {
                outcome: Some(outcome),
                moves_examined: examined,
                states_visited: color.len(),
            };
        }
    }
    // random starts stopped finding unseen states: sweep the rest in order
    if m <= SWEEP_EDGE_LIMIT {
        for mask in 0u64..1 << m {
            if examined >= budget {
                break;
            }
            let key = EdgeSet::from_mask(mask, m);
            if color.contains_key(&key) {
                continue;
            }
            let Ok(start) = GameState::from_edge_set(Arc::clone(&host), key) else {
                continue;
            };
            if let Some(outcome) = search_from(start, alpha, budget, &mut examined, &mut color, &mut rng) {
                return CycleSearch {
                    outcome: Some(outcome),
                    moves_examined: examined,
                    states_visited: color.len(),
                };
            }
        }
    }
    CycleSearch {
        outcome: None,
        moves_examined: examined,
        states_visited: color.len(),
    }
}

fn frame(state: GameState, alpha: Alpha, rng: &mut ChaCha8Rng) -> Frame {
    let mut moves = improving_moves(&state, alpha, None);
    moves.shuffle(rng);
    Frame { state, moves, next: 0 }
}

fn search_from(
    start: GameState,
    alpha: Alpha,
    budget: u64,
    examined: &mut u64,
    color: &mut HashMap<EdgeSet, Color>,
    rng: &mut ChaCha8Rng,
) -> Option<DynamicsOutcome> {
    color.insert(start.canonical_key(), Color::OnPath);
    let mut stack = vec![frame(start, alpha, rng)];
    while let Some(top) = stack.last_mut() {
        if top.next == top.moves.len() {
            let done = stack.pop().expect("nonempty");
            color.insert(done.state.canonical_key(), Color::Done);
            continue;
        }
        if *examined >= budget {
            return None;
        }
        *examined += 1;
        let mv = top.moves[top.next];
        top.next += 1;
        let next = apply_move(&top.state, mv).expect("improving moves are legal");
        let key = next.canonical_key();
        match color.get(&key) {
            Some(Color::Done) => {}
            Some(Color::OnPath) => {
                let start = stack
                    .iter()
                    .position(|f| f.state.canonical_key() == key)
                    .expect("on-path states are on the stack");
                let steps = stack
                    .iter()
                    .map(|f| DynamicsStep {
                        key: f.state.canonical_key(),
                        mv: f.moves[f.next - 1],
                    })
                    .collect();
                return Some(DynamicsOutcome {
                    steps,
                    terminal: Terminal::Cycle { start },
                    final_state: next,
                });
            }
            None => {
                color.insert(key, Color::OnPath);
                stack.push(frame(next, alpha, rng));
            }
        }
    }
    None
}
