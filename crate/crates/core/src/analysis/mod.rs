//! Exact optima, equilibrium sets and prices of anarchy and stability by
//! exhaustive enumeration of edge subsets, plus the verification campaigns.
//!
//! Enumeration walks edge bitmasks in ascending order, split into fixed
//! ranges that rayon workers process independently; per-range results are
//! merged in range order, so output never depends on the worker count.

mod campaign;
mod corpus;
mod cycle;

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::game::{is_stable, welfare_of, Alpha, Rational};
use crate::graph::{mask_routing_cost, EdgeSet, GameState, GraphError, HostGraph, MASK_NODE_LIMIT};
use crate::spanning::{smrcst, smrcst_certificates, ApproximationCheck, Pivot, SpanningError};

pub use campaign::{theorem_campaign, CampaignConfig, CampaignReport, ClaimResult, Suite};
pub use corpus::{random_corpus, random_host, CorpusSpec, RandomHost};
pub use cycle::{find_improving_cycle, CycleSearch};

/// Largest edge count for subset enumeration (masks are `u64`).
pub const MAX_ENUMERATION_EDGES: usize = 63;

/// Bitmasks per work unit.
const CHUNK: u64 = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("enumeration needs 2^{edges} subsets, over the budget of {budget}")]
    BudgetExceeded { edges: usize, budget: u64 },
    #[error("no pairwise stable state exists for this host and alpha")]
    NoEquilibrium,
    #[error(transparent)]
    Spanning(#[from] SpanningError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Welfare-maximizing states of a host.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OptimumResult {
    pub welfare: Rational,
    /// Every optimal state, in ascending bitmask order.
    pub best_states: Vec<EdgeSet>,
    /// Connected spanning subnetworks evaluated.
    pub states_examined: u64,
}

impl OptimumResult {
    pub fn states(&self, host: &Arc<HostGraph>) -> Vec<GameState> {
        self.best_states
            .iter()
            .map(|s| GameState::from_edge_set_unchecked(Arc::clone(host), s.clone()))
            .collect()
    }
}

/// A pairwise stable state and its welfare.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableState {
    pub key: EdgeSet,
    pub edge_count: usize,
    pub routing_cost: u64,
    pub welfare: Rational,
}

/// Every pairwise stable state of a host at one `alpha`.
#[derive(Clone, Debug)]
pub struct EquilibriumAtlas {
    pub host: Arc<HostGraph>,
    pub alpha: Alpha,
    /// In ascending bitmask order.
    pub stable: Vec<StableState>,
    pub states_examined: u64,
}

impl EquilibriumAtlas {
    pub fn is_empty(&self) -> bool {
        self.stable.is_empty()
    }

    pub fn worst(&self) -> Option<Rational> {
        self.stable.iter().map(|s| s.welfare).min()
    }

    pub fn best(&self) -> Option<Rational> {
        self.stable.iter().map(|s| s.welfare).max()
    }

    pub fn states(&self) -> Vec<GameState> {
        self.stable
            .iter()
            .map(|s| GameState::from_edge_set_unchecked(Arc::clone(&self.host), s.key.clone()))
            .collect()
    }
}

/// Per-range enumeration result.
#[derive(Default)]
struct Census {
    /// Scaled welfare `q * SW` for `alpha = p / q`, and its maximizers.
    best: Option<(i128, Vec<u64>)>,
    stable: Vec<(u64, usize, u64)>,
    states: u64,
}

impl Census {
    fn absorb(&mut self, other: Census) {
        self.states += other.states;
        self.stable.extend(other.stable);
        match (&mut self.best, other.best) {
            (_, None) => {}
            (None, b) => self.best = b,
            (Some((w, list)), Some((ow, olist))) => {
                if ow > *w {
                    *w = ow;
                    *list = olist;
                } else if ow == *w {
                    list.extend(olist);
                }
            }
        }
    }
}

fn check_budget(host: &HostGraph, budget: u64) -> Result<(), AnalysisError> {
    let m = host.edge_count();
    if m > MAX_ENUMERATION_EDGES || host.n() > MASK_NODE_LIMIT || 1u64 << m > budget {
        return Err(AnalysisError::BudgetExceeded { edges: m, budget });
    }
    Ok(())
}

fn census(host: &Arc<HostGraph>, alpha: Alpha, budget: u64, want_stable: bool) -> Result<Census, AnalysisError> {
    check_budget(host, budget)?;
    let n = host.n();
    let m = host.edge_count();
    let ends: Vec<(usize, usize)> = host.edges().iter().map(|e| e.ends()).collect();
    let (p, q) = (alpha.numer(), alpha.denom());
    let total = 1u64 << m;
    let chunks = total.div_ceil(CHUNK);
    let parts: Vec<Census> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut out = Census::default();
            let mut adj = vec![0u64; n];
            for mask in c * CHUNK..((c + 1) * CHUNK).min(total) {
                let edges = mask.count_ones() as usize;
                if edges + 1 < n {
                    continue;
                }
                adj.iter_mut().for_each(|a| *a = 0);
                let mut rest = mask;
                while rest != 0 {
                    let (u, v) = ends[rest.trailing_zeros() as usize];
                    rest &= rest - 1;
                    adj[u] |= 1 << v;
                    adj[v] |= 1 << u;
                }
                let Some(routing) = mask_routing_cost(&adj) else {
                    continue;
                };
                out.states += 1;
                let scaled = 2 * p * edges as i128 + q * routing as i128;
                match &mut out.best {
                    Some((w, list)) if scaled == *w => list.push(mask),
                    Some((w, _)) if scaled < *w => {}
                    _ => out.best = Some((scaled, vec![mask])),
                }
                if want_stable {
                    let state = GameState::from_edge_set_unchecked(Arc::clone(host), EdgeSet::from_mask(mask, m));
                    if is_stable(&state, alpha) {
                        out.stable.push((mask, edges, routing));
                    }
                }
            }
            out
        })
        .collect();
    let mut all = Census::default();
    for part in parts {
        all.absorb(part);
    }
    Ok(all)
}

fn optimum_of(census: &Census, m: usize, alpha: Alpha) -> OptimumResult {
    let (scaled, masks) = census.best.clone().expect("connected hosts have a connected state");
    OptimumResult {
        welfare: Rational::new(scaled, alpha.denom()),
        best_states: masks.into_iter().map(|k| EdgeSet::from_mask(k, m)).collect(),
        states_examined: census.states,
    }
}

fn atlas_of(census: Census, host: &Arc<HostGraph>, alpha: Alpha) -> EquilibriumAtlas {
    let m = host.edge_count();
    EquilibriumAtlas {
        host: Arc::clone(host),
        alpha,
        stable: census
            .stable
            .into_iter()
            .map(|(mask, edge_count, routing_cost)| StableState {
                key: EdgeSet::from_mask(mask, m),
                edge_count,
                routing_cost,
                welfare: welfare_of(alpha, edge_count, routing_cost),
            })
            .collect(),
        states_examined: census.states,
    }
}

/// Social optimum over every connected spanning subnetwork of `host`.
/// Fails unless `2^m <= budget`.
pub fn optimum_exact(host: &Arc<HostGraph>, alpha: Alpha, budget: u64) -> Result<OptimumResult, AnalysisError> {
    let c = census(host, alpha, budget, false)?;
    Ok(optimum_of(&c, host.edge_count(), alpha))
}

/// All pairwise stable states of `host`. Fails unless `2^m <= budget`.
pub fn enumerate_stable_states(
    host: &Arc<HostGraph>,
    alpha: Alpha,
    budget: u64,
) -> Result<EquilibriumAtlas, AnalysisError> {
    let c = census(host, alpha, budget, true)?;
    Ok(atlas_of(c, host, alpha))
}

/// Optimum welfare over the worst stable welfare.
pub fn poa_exact(host: &Arc<HostGraph>, alpha: Alpha, budget: u64) -> Result<Rational, AnalysisError> {
    price_summary(host, alpha, budget)?
        .poa
        .ok_or(AnalysisError::NoEquilibrium)
}

/// Optimum welfare over the best stable welfare.
pub fn pos_exact(host: &Arc<HostGraph>, alpha: Alpha, budget: u64) -> Result<Rational, AnalysisError> {
    price_summary(host, alpha, budget)?
        .pos
        .ok_or(AnalysisError::NoEquilibrium)
}

/// One enumeration pass producing optimum, equilibrium set and both prices.
#[derive(Clone, Debug)]
pub struct PriceSummary {
    pub n: usize,
    pub m: usize,
    pub alpha: Alpha,
    pub optimum: OptimumResult,
    pub atlas: EquilibriumAtlas,
    pub poa: Option<Rational>,
    pub pos: Option<Rational>,
}

pub const CSV_HEADER: &str =
    "n,m,alpha_num,alpha_den,sw_opt,sw_worst_stable,sw_best_stable,poa,pos,stable_count,states_examined";

impl PriceSummary {
    /// A CSV row matching [`CSV_HEADER`]; missing values are `none`.
    pub fn csv_row(&self) -> String {
        let opt = |r: Option<Rational>| r.map_or_else(|| "none".to_string(), |r| r.to_string());
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.n,
            self.m,
            self.alpha.numer(),
            self.alpha.denom(),
            self.optimum.welfare,
            opt(self.atlas.worst()),
            opt(self.atlas.best()),
            opt(self.poa),
            opt(self.pos),
            self.atlas.stable.len(),
            self.optimum.states_examined
        )
    }
}

pub fn price_summary(host: &Arc<HostGraph>, alpha: Alpha, budget: u64) -> Result<PriceSummary, AnalysisError> {
    let c = census(host, alpha, budget, true)?;
    let optimum = optimum_of(&c, host.edge_count(), alpha);
    let atlas = atlas_of(c, host, alpha);
    let poa = atlas.worst().map(|w| optimum.welfare / w);
    let pos = atlas.best().map(|b| optimum.welfare / b);
    Ok(PriceSummary {
        n: host.n(),
        m: host.edge_count(),
        alpha,
        optimum,
        atlas,
        poa,
        pos,
    })
}

/// Which networks are optimal on a complete host.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompleteOptimumKind {
    Path,
    Clique,
    /// Path and clique have equal welfare and are both optimal.
    Both,
}

impl fmt::Display for CompleteOptimumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CompleteOptimumKind::Path => "path",
            CompleteOptimumKind::Clique => "clique",
            CompleteOptimumKind::Both => "path and clique",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompleteOptimum {
    pub kind: CompleteOptimumKind,
    pub welfare: Rational,
}

/// Optimum on `K_n`: the path below `alpha = n/3`, the clique above it,
/// both at equality.
pub fn optimum_complete_closed_form(n: usize, alpha: Alpha) -> CompleteOptimum {
    let k = n as i128;
    let path = alpha.value() * (2 * (k - 1)) + (k - 1) * k * (k + 1) / 3;
    let clique = (alpha.value() + 1) * (k * (k - 1));
    let kind = match path.cmp(&clique) {
        std::cmp::Ordering::Greater => CompleteOptimumKind::Path,
        std::cmp::Ordering::Less => CompleteOptimumKind::Clique,
        std::cmp::Ordering::Equal => CompleteOptimumKind::Both,
    };
    CompleteOptimum {
        kind,
        welfare: path.max(clique),
    }
}

/// The `alpha` thresholds that separate the regimes on `n` nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThresholdTable {
    pub n: usize,
    /// `n / 3`
    pub third: Rational,
    /// `(n - 1) / 2`
    pub half_minus: Rational,
    /// `n / 2`
    pub half: Rational,
    /// `N2 = (n - 1)^2 / 4`
    pub n2: Rational,
    /// `N3 = (n - 2) n (n + 2) / 24`
    pub n3: Rational,
}

pub fn threshold_table(n: usize) -> ThresholdTable {
    let k = n as i128;
    ThresholdTable {
        n,
        third: Rational::new(k, 3),
        half_minus: Rational::new(k - 1, 2),
        half: Rational::new(k, 2),
        n2: Rational::new((k - 1) * (k - 1), 4),
        n3: Rational::new((k - 2) * k * (k + 2), 24),
    }
}

impl fmt::Display for ThresholdTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}", self.n)?;
        writeln!(f, "n/3 = {}", self.third)?;
        writeln!(f, "(n-1)/2 = {}", self.half_minus)?;
        writeln!(f, "n/2 = {}", self.half)?;
        writeln!(f, "N2 = {}", self.n2)?;
        write!(f, "N3 = {}", self.n3)
    }
}

/// Welfare of the optimum against an MRCST and the local-search tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproximationReport {
    pub check: ApproximationCheck,
    pub seed_path_length: usize,
    pub smrcst_routing_cost: u64,
    /// `9 * d_T(V,V) >= n * l^2` for the local-search tree.
    pub path_bound: bool,
}

/// Computes `SW(OPT)/SW(MRCST)` and `SW(OPT)/SW(SMRCST)` and fails if
/// `SW(OPT)/SW(MRCST) <= m/(n-1) + 1` or `9 d_T(V,V) >= n l^2` is violated.
pub fn approximation_report(
    host: &Arc<HostGraph>,
    alpha: Alpha,
    budget: u64,
) -> Result<ApproximationReport, AnalysisError> {
    let result = smrcst(host, Pivot::BestSwap);
    smrcst_certificates(&result, host, alpha, 0)?;
    let check = crate::spanning::approximation_check(&result, host, alpha, budget)?;
    if check.ratio_mrcst > check.bound {
        return Err(SpanningError::Certificate(format!(
            "SW(OPT)/SW(MRCST) <= m/(n-1) + 1 fails: {} > {}",
            check.ratio_mrcst, check.bound
        ))
        .into());
    }
    Ok(ApproximationReport {
        check,
        seed_path_length: result.seed_path_length(),
        smrcst_routing_cost: result.routing_cost,
        path_bound: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{bfs_all_pairs, Edge};

    fn alpha(s: &str) -> Alpha {
        s.parse().unwrap()
    }

    fn k(n: usize) -> Arc<HostGraph> {
        Arc::new(HostGraph::complete(n).unwrap())
    }

    fn int(v: i128) -> Rational {
        Rational::from_integer(v)
    }

    fn is_labeled_path(s: &GameState) -> bool {
        s.is_tree() && (0..s.n()).all(|v| s.degree(v) <= 2)
    }

    #[test]
    fn optimum_examples() {
        let r = optimum_exact(&k(4), alpha("1"), 1 << 20).unwrap();
        assert_eq!(r.welfare, int(26));
        assert_eq!(r.best_states.len(), 12);
        assert!(r.states(&k(4)).iter().all(is_labeled_path));
        assert_eq!(r.states_examined, 38);

        let r = optimum_exact(&k(4), alpha("2"), 1 << 20).unwrap();
        assert_eq!(r.welfare, int(36));
        assert_eq!(r.best_states, vec![EdgeSet::full(6)]);

        let c6 = Arc::new(HostGraph::new(6, (0..6).map(|i| Edge::new(i, (i + 1) % 6))).unwrap());
        let r = optimum_exact(&c6, alpha("7"), 1 << 20).unwrap();
        assert_eq!(r.welfare, int(140));
        assert_eq!(r.best_states.len(), 6);

        assert_eq!(
            optimum_exact(&k(8), alpha("1"), 1 << 20),
            Err(AnalysisError::BudgetExceeded {
                edges: 28,
                budget: 1 << 20
            })
        );
    }

    #[test]
    fn closed_form_complete_optimum() {
        let c = optimum_complete_closed_form(6, alpha("2"));
        assert_eq!((c.kind, c.welfare), (CompleteOptimumKind::Both, int(90)));
        assert_eq!(
            optimum_complete_closed_form(6, alpha("1")).kind,
            CompleteOptimumKind::Path
        );
        assert_eq!(
            optimum_complete_closed_form(6, alpha("5")).kind,
            CompleteOptimumKind::Clique
        );
    }

    #[test]
    fn atlas_examples() {
        let a = enumerate_stable_states(&k(5), alpha("3"), 1 << 20).unwrap();
        assert_eq!(a.stable.len(), 1);
        assert_eq!(a.stable[0].key, EdgeSet::full(10));

        let a = enumerate_stable_states(&k(4), alpha("1/2"), 1 << 20).unwrap();
        assert_eq!(a.stable.len(), 16);
        assert!(a.states().iter().all(GameState::is_tree));

        let tree = Arc::new(HostGraph::from_pairs(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap());
        for s in ["1/3", "1", "40"] {
            let a = enumerate_stable_states(&tree, alpha(s), 1 << 20).unwrap();
            assert_eq!(a.stable.len(), 1);
            assert_eq!(a.states_examined, 1);
        }
    }

    #[test]
    fn prices() {
        assert_eq!(poa_exact(&k(6), alpha("1"), 1 << 20).unwrap(), Rational::new(4, 3));
        assert_eq!(pos_exact(&k(6), alpha("1"), 1 << 20).unwrap(), int(1));
        assert_eq!(poa_exact(&k(5), alpha("3"), 1 << 20).unwrap(), int(1));
        let s = price_summary(&k(4), alpha("1"), 1 << 20).unwrap();
        assert_eq!(
            s.csv_row(),
            format!(
                "4,6,1,1,26,{},26,{},1,{},38",
                s.atlas.worst().unwrap(),
                s.poa.unwrap(),
                s.atlas.stable.len()
            )
        );
    }

    #[test]
    fn enumeration_welfare_matches_bfs() {
        let host =
            Arc::new(HostGraph::from_pairs(5, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 4), (3, 4), (0, 4)]).unwrap());
        let a = enumerate_stable_states(&host, alpha("3/2"), 1 << 20).unwrap();
        for (s, st) in a.states().iter().zip(&a.stable) {
            assert_eq!(bfs_all_pairs(s).unwrap().total(), st.routing_cost);
            assert_eq!(s.edge_count(), st.edge_count);
        }
    }

    #[test]
    fn thresholds() {
        let t = threshold_table(10);
        assert_eq!(t.n3, int(40));
        assert_eq!(t.n2, Rational::new(81, 4));
        assert_eq!(threshold_table(3).third, int(1));
        for n in 6..40 {
            let t = threshold_table(n);
            assert!(t.n2 < t.n3);
        }
    }

    #[test]
    fn approximation_examples() {
        let r = approximation_report(&k(4), alpha("1"), 1 << 20).unwrap();
        assert_eq!(r.check.ratio_mrcst, int(1));
        let r = approximation_report(&k(6), alpha("1"), 1 << 20).unwrap();
        assert!(r.check.ratio_mrcst <= int(4));
        let tree = Arc::new(HostGraph::from_pairs(4, &[(0, 1), (0, 2), (0, 3)]).unwrap());
        let r = approximation_report(&tree, alpha("9"), 1 << 20).unwrap();
        assert_eq!(r.check.ratio_mrcst, int(1));
    }
}
