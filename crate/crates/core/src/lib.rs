//! Social distancing network creation game.
//!
//! Agents are the nodes of a network inside a fixed host graph. Agent `v`
//! values each incident edge at `alpha` and each hop of distance to every
//! other agent at 1, so utility is `alpha * deg(v) + d(v, V)`. Edges are
//! removed unilaterally and added bilaterally.
//!
//! - [`graph`]: host graphs, states, distances and spanning-tree scaffolds.
//! - [`game`]: utilities, welfare, improving moves, stability and dynamics.
//! - [`spanning`]: routing-cost maximizing spanning trees.
//! - [`constructions`]: graph families and the clique-network constructions.
//! - [`analysis`]: exact optima, equilibrium sets, prices and campaigns.

pub mod analysis;
pub mod constructions;
pub mod game;
pub mod graph;
pub mod spanning;
