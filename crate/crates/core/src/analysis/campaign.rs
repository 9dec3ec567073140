//! Verification campaigns: each suite checks one family of claims over a
//! fixed grid or a seeded random corpus and reports pass/fail per claim,
//! with counterexamples.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::{
    enumerate_stable_states, find_improving_cycle, optimum_complete_closed_form, optimum_exact, price_summary,
    random_corpus, threshold_table, CompleteOptimumKind, CorpusSpec,
};
use crate::constructions::{
    closed_form_sw, cycle, hypercube_clique_network, path, path_of_cliques, star, star_of_cliques,
    wheel_clique_network, WelfareFamily,
};
use crate::game::{
    apply_move, is_improving_by_recomputation, is_pairwise_stable, social_welfare, welfare_of, Alpha, Rational,
    Terminal,
};
use crate::graph::{bfs_all_pairs, is_bridge, EdgeSet, GameState, HostGraph};
use crate::spanning::{mrcst_exact, smrcst, smrcst_certificates, spanning_tree_count, Pivot};

/// Counterexamples kept per claim.
const MAX_COUNTEREXAMPLES: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    ClosedForms,
    CompleteOptimum,
    CompleteStability,
    SmrcstStability,
    MrcstOptimality,
    HostUniqueness,
    ImprovingCycle,
    Constructions,
    Prices,
    Certificates,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::ClosedForms,
        Suite::CompleteOptimum,
        Suite::CompleteStability,
        Suite::SmrcstStability,
        Suite::MrcstOptimality,
        Suite::HostUniqueness,
        Suite::ImprovingCycle,
        Suite::Constructions,
        Suite::Prices,
        Suite::Certificates,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::ClosedForms => "closed-forms",
            Suite::CompleteOptimum => "complete-optimum",
            Suite::CompleteStability => "complete-stability",
            Suite::SmrcstStability => "smrcst-stability",
            Suite::MrcstOptimality => "mrcst-optimality",
            Suite::HostUniqueness => "host-uniqueness",
            Suite::ImprovingCycle => "improving-cycle",
            Suite::Constructions => "constructions",
            Suite::Prices => "prices",
            Suite::Certificates => "certificates",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
            format!("unknown suite {s:?} (expected one of {})", names.join(", "))
        })
    }
}

/// Grid and corpus knobs. Unset fields take the suite's defaults.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CampaignConfig {
    pub seed: u64,
    /// Random hosts per corpus.
    pub hosts: Option<usize>,
    /// Largest node count on size grids.
    pub n_max: Option<usize>,
    /// Subset budget for exhaustive enumeration.
    pub budget: u64,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            seed: 0,
            hosts: None,
            n_max: None,
            budget: 1 << 21,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimResult {
    pub claim: String,
    pub passed: bool,
    pub checked: u64,
    pub failures: u64,
    pub counterexamples: Vec<String>,
    /// Recorded values that are reported but not asserted.
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CampaignReport {
    pub suite: Suite,
    pub seed: u64,
    /// How any random corpus was drawn.
    pub corpus: Vec<String>,
    pub claims: Vec<ClaimResult>,
    pub passed: bool,
}

struct Claim(ClaimResult);

impl Claim {
    fn new(name: impl Into<String>) -> Self {
        Claim(ClaimResult {
            claim: name.into(),
            passed: true,
            checked: 0,
            failures: 0,
            counterexamples: Vec::new(),
            notes: Vec::new(),
        })
    }

    fn check(&mut self, ok: bool, counterexample: impl FnOnce() -> String) {
        self.0.checked += 1;
        if !ok {
            self.0.passed = false;
            self.0.failures += 1;
            if self.0.counterexamples.len() < MAX_COUNTEREXAMPLES {
                self.0.counterexamples.push(counterexample());
            }
        }
    }

    fn note(&mut self, note: String) {
        self.0.notes.push(note);
    }

    fn done(self) -> ClaimResult {
        self.0
    }
}

fn describe(state: &GameState) -> String {
    let edges: Vec<String> = state.edges().map(|e| format!("{}-{}", e.lo(), e.hi())).collect();
    format!("n={} edges=[{}]", state.n(), edges.join(" "))
}

fn describe_host(host: &HostGraph) -> String {
    describe(&GameState::full(Arc::new(host.clone())))
}

fn a(numer: i128, denom: i128) -> Alpha {
    Alpha::ratio(numer, denom).expect("grid values are positive")
}

fn alpha_of(r: Rational) -> Alpha {
    Alpha::new(r).expect("grid values are positive")
}

fn is_labeled_path(s: &GameState) -> bool {
    s.is_tree() && (0..s.n()).all(|v| s.degree(v) <= 2)
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Hosts with `n` in 8..=16 for the local-search suites.
pub fn smrcst_corpus_spec(config: &CampaignConfig) -> CorpusSpec {
    CorpusSpec {
        count: config.hosts.unwrap_or(100),
        n_min: 8,
        n_max: config.n_max.unwrap_or(16).max(8),
        max_edges: None,
        seed: config.seed,
    }
}

/// Hosts with `n` in 4..=`n_max` and at most 20 edges, small enough for
/// exhaustive optima.
pub fn small_corpus_spec(
    config: &CampaignConfig,
    count: usize,
    n_max: usize,
    max_edges: usize,
    salt: u64,
) -> CorpusSpec {
    CorpusSpec {
        count: config.hosts.unwrap_or(count),
        n_min: 4,
        n_max: config.n_max.unwrap_or(n_max).clamp(4, n_max),
        max_edges: Some(max_edges),
        seed: config.seed.wrapping_add(salt),
    }
}

fn corpus_line(name: &str, spec: &CorpusSpec) -> String {
    format!(
        "{name}: {} hosts, n in {}..={}, max edges {}, seed {}, random recursive tree plus edges with p cycling 0.15/0.3/0.5/0.8",
        spec.count,
        spec.n_min,
        spec.n_max,
        spec.max_edges.map_or("none".into(), |m| m.to_string()),
        spec.seed
    )
}

/// Runs one suite. Deterministic given the config.
pub fn theorem_campaign(suite: Suite, config: &CampaignConfig) -> CampaignReport {
    let mut corpus = Vec::new();
    let claims = match suite {
        Suite::ClosedForms => closed_forms(config),
        Suite::CompleteOptimum => complete_optimum(config),
        Suite::CompleteStability => complete_stability(config),
        Suite::SmrcstStability => {
            let spec = smrcst_corpus_spec(config);
            corpus.push(corpus_line("hosts", &spec));
            smrcst_stability(&spec)
        }
        Suite::MrcstOptimality => {
            let spec = small_corpus_spec(config, 50, 8, 20, 1);
            corpus.push(corpus_line("hosts", &spec));
            mrcst_optimality(&spec, config)
        }
        Suite::HostUniqueness => {
            let spec = small_corpus_spec(config, 50, 7, 18, 2);
            corpus.push(corpus_line("hosts", &spec));
            host_uniqueness(&spec, config)
        }
        Suite::ImprovingCycle => improving_cycle(config),
        Suite::Constructions => constructions(),
        Suite::Prices => {
            let spec = small_corpus_spec(config, 20, 7, 18, 3);
            corpus.push(corpus_line("hosts", &spec));
            prices(&spec, config)
        }
        Suite::Certificates => {
            let big = smrcst_corpus_spec(config);
            let small = small_corpus_spec(config, 50, 8, 20, 1);
            corpus.push(corpus_line("large hosts", &big));
            corpus.push(corpus_line("small hosts", &small));
            certificates(&big, &small, config)
        }
    };
    CampaignReport {
        suite,
        seed: config.seed,
        corpus,
        passed: claims.iter().all(|c| c.passed),
        claims,
    }
}

fn closed_forms(config: &CampaignConfig) -> Vec<ClaimResult> {
    let mut claim = Claim::new("SW of P_n, K_n, C_n, S_n equals the closed forms for alpha in {1/2, 1, n/3, n}");
    for n in 3..=config.n_max.unwrap_or(50).max(3) {
        let k = n as i128;
        let cyc = if n % 2 == 1 {
            WelfareFamily::CycleOdd
        } else {
            WelfareFamily::CycleEven
        };
        let graphs = [
            (WelfareFamily::Path, path(n)),
            (WelfareFamily::Clique, crate::constructions::clique(n)),
            (cyc, cycle(n)),
            (WelfareFamily::Star, star(n)),
        ];
        for (family, g) in graphs {
            let state = GameState::full(Arc::new(g.expect("n >= 3")));
            for alpha in [a(1, 2), a(1, 1), a(k, 3), a(k, 1)] {
                let want = closed_form_sw(family, n, alpha).expect("parity matches");
                let got = social_welfare(&state, alpha);
                claim.check(got == want, || {
                    format!("{family:?} n={n} alpha={alpha}: {got} != {want}")
                });
            }
        }
    }
    vec![claim.done()]
}

fn complete_optimum(config: &CampaignConfig) -> Vec<ClaimResult> {
    let mut claim = Claim::new("exhaustive optimum on K_n is the path below n/3, the clique above, both at n/3");
    for n in 4..=config.n_max.unwrap_or(6).clamp(4, 6) {
        let host = Arc::new(HostGraph::complete(n).expect("n >= 2"));
        let m = host.edge_count();
        let k = n as i128;
        for alpha in [a(2 * k - 3, 6), a(k, 3), a(2 * k + 3, 6)] {
            let want = optimum_complete_closed_form(n, alpha);
            let got = optimum_exact(&host, alpha, config.budget).expect("K_6 fits the budget");
            let states = got.states(&host);
            let paths = states.iter().filter(|s| is_labeled_path(s)).count() as u64;
            let cliques = got.best_states.iter().filter(|s| **s == EdgeSet::full(m)).count() as u64;
            let all_paths = factorial(n) / 2;
            let shape_ok = match want.kind {
                CompleteOptimumKind::Path => paths == all_paths && states.len() as u64 == all_paths,
                CompleteOptimumKind::Clique => cliques == 1 && states.len() == 1,
                CompleteOptimumKind::Both => paths == all_paths && cliques == 1 && states.len() as u64 == all_paths + 1,
            };
            claim.check(got.welfare == want.welfare && shape_ok, || {
                format!(
                    "n={n} alpha={alpha}: expected {} with SW {}, found SW {} over {} states ({paths} paths, {cliques} cliques)",
                    want.kind,
                    want.welfare,
                    got.welfare,
                    states.len()
                )
            });
        }
    }
    vec![claim.done()]
}

fn complete_stability(config: &CampaignConfig) -> Vec<ClaimResult> {
    let mut only_trees = Claim::new("alpha = 3/4: the stable states of K_n are exactly its spanning trees");
    let mut at_one = Claim::new(
        "alpha = 1: every spanning tree and K_n are stable, and every edge of a stable non-tree lies in a triangle",
    );
    let mut path_stable = Claim::new("alpha = (n-1)/2: every labeled path is stable");
    let mut only_clique = Claim::new("alpha = n/2 + 1/4: K_n is the only stable state");
    for n in 4..=config.n_max.unwrap_or(6).clamp(4, 6) {
        let host = Arc::new(HostGraph::complete(n).expect("n >= 2"));
        let m = host.edge_count();
        let trees = (n as u64).pow(n as u32 - 2);
        let k = n as i128;

        let atlas = enumerate_stable_states(&host, a(3, 4), config.budget).expect("within budget");
        let states = atlas.states();
        let bad = states.iter().find(|s| !s.is_tree());
        only_trees.check(bad.is_none() && states.len() as u64 == trees, || {
            bad.map_or(
                format!("n={n}: {} stable states, expected {trees}", states.len()),
                |s| format!("n={n}: stable non-tree {}", describe(s)),
            )
        });

        let atlas = enumerate_stable_states(&host, a(1, 1), config.budget).expect("within budget");
        let states = atlas.states();
        let stable_trees = states.iter().filter(|s| s.is_tree()).count() as u64;
        let has_clique = atlas.stable.iter().any(|s| s.key == EdgeSet::full(m));
        at_one.check(stable_trees == trees && has_clique, || {
            format!("n={n}: {stable_trees} of {trees} trees stable, clique stable: {has_clique}")
        });
        for s in states.iter().filter(|s| !s.is_tree()) {
            let table = bfs_all_pairs(s).expect("connected");
            let ok = s.edges().all(|e| {
                is_bridge(s, e) == Ok(true) || (0..n).any(|w| table.dist(e.lo(), w) == 1 && table.dist(e.hi(), w) == 1)
            });
            at_one.check(ok, || {
                format!("n={n}: stable state with a triangle-free cycle edge {}", describe(s))
            });
        }

        let half = a(k - 1, 2);
        let mut order: Vec<usize> = (0..n).collect();
        let mut checked_paths = 0;
        loop {
            if order[0] < order[n - 1] {
                let state = GameState::new(
                    Arc::clone(&host),
                    order.windows(2).map(|w| crate::graph::Edge::new(w[0], w[1])),
                )
                .expect("paths are connected");
                let r = is_pairwise_stable(&state, half);
                path_stable.check(r.stable, || {
                    format!("n={n}: {} has {:?}", describe(&state), r.witnesses)
                });
                checked_paths += 1;
            }
            if !next_permutation(&mut order) {
                break;
            }
        }
        debug_assert_eq!(checked_paths, factorial(n) / 2);

        let atlas = enumerate_stable_states(&host, a(2 * k + 1, 4), config.budget).expect("within budget");
        let ok = atlas.stable.len() == 1 && atlas.stable[0].key == EdgeSet::full(m);
        only_clique.check(ok, || {
            let first = atlas.states().into_iter().find(|s| s.edge_count() != m);
            format!(
                "n={n}: {} stable states{}",
                atlas.stable.len(),
                first.map_or(String::new(), |s| format!(", e.g. {}", describe(&s)))
            )
        });
    }
    vec![only_trees.done(), at_one.done(), path_stable.done(), only_clique.done()]
}

/// Lexicographic successor; false after the last permutation.
fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn smrcst_stability(spec: &CorpusSpec) -> Vec<ClaimResult> {
    let mut stable = Claim::new("the local-search tree is pairwise stable at alpha = n/3 (both pivot rules)");
    let mut drops = Claim::new("adding any host edge to the tree cuts some endpoint's distance sum by >= n/3");
    let hosts = random_corpus(spec);
    let results: Vec<_> = hosts
        .par_iter()
        .map(|h| {
            let host = Arc::new(h.host.clone());
            let n = host.n();
            let alpha = a(n as i128, 3);
            [Pivot::BestSwap, Pivot::FirstSwap].map(|pivot| {
                let tree = smrcst(&host, pivot).tree.into_state();
                let report = is_pairwise_stable(&tree, alpha);
                let table = bfs_all_pairs(&tree).expect("trees are connected");
                let short: Vec<String> = host
                    .edges()
                    .iter()
                    .filter(|e| !tree.contains(**e))
                    .filter(|e| {
                        let (u, v) = e.ends();
                        3 * table.addition_drop(u, v).max(table.addition_drop(v, u)) < n as u64
                    })
                    .map(|e| e.to_string())
                    .collect();
                (h.index, pivot, describe(&tree), report, short)
            })
        })
        .collect();
    for pair in results {
        for (index, pivot, tree, report, short) in pair {
            stable.check(report.stable, || {
                format!("host #{index} {pivot:?}: {tree} has {:?}", report.witnesses)
            });
            drops.check(short.is_empty(), || {
                format!("host #{index} {pivot:?}: {tree} edges {}", short.join(" "))
            });
        }
    }
    vec![stable.done(), drops.done()]
}

fn mrcst_optimality(spec: &CorpusSpec, config: &CampaignConfig) -> Vec<ClaimResult> {
    let mut claim = Claim::new("SW(MRCST) = SW(OPT) at alpha in {1/2, 1}");
    let hosts = random_corpus(spec);
    let results: Vec<_> = hosts
        .par_iter()
        .map(|h| {
            let host = Arc::new(h.host.clone());
            let trees = spanning_tree_count(&host).unwrap_or(u128::MAX);
            if trees > 1_000_000 {
                return (h.index, None);
            }
            let best = mrcst_exact(&host, 1_000_000).expect("tree count checked");
            let rows = [a(1, 2), a(1, 1)].map(|alpha| {
                let opt = optimum_exact(&host, alpha, config.budget).expect("corpus fits the budget");
                (alpha, welfare_of(alpha, host.n() - 1, best.total()), opt.welfare)
            });
            (h.index, Some((describe_host(&host), rows)))
        })
        .collect();
    let mut skipped = 0;
    for (index, r) in results {
        let Some((host, rows)) = r else {
            skipped += 1;
            continue;
        };
        for (alpha, tree, opt) in rows {
            claim.check(tree == opt, || {
                format!("host #{index} {host} alpha={alpha}: MRCST {tree} < OPT {opt}")
            });
        }
    }
    claim.note(format!("{skipped} hosts skipped for more than 10^6 spanning trees"));
    vec![claim.done()]
}

fn host_uniqueness(spec: &CorpusSpec, config: &CampaignConfig) -> Vec<ClaimResult> {
    let mut claim = Claim::new("alpha = (n-1)^2/4 + 1: the host is the only stable state");
    let hosts = random_corpus(spec);
    for h in &hosts {
        let host = Arc::new(h.host.clone());
        let alpha = alpha_of(threshold_table(host.n()).n2 + 1);
        let atlas = enumerate_stable_states(&host, alpha, config.budget).expect("corpus fits the budget");
        let ok = atlas.stable.len() == 1 && atlas.stable[0].key == EdgeSet::full(host.edge_count());
        claim.check(ok, || {
            let other = atlas.states().into_iter().find(|s| s.edge_count() != host.edge_count());
            format!(
                "host #{} {}: {} stable states{}",
                h.index,
                describe_host(&host),
                atlas.stable.len(),
                other.map_or(String::new(), |s| format!(", e.g. {}", describe(&s)))
            )
        });
    }
    vec![claim.done()]
}

fn improving_cycle(config: &CampaignConfig) -> Vec<ClaimResult> {
    let mut claim = Claim::new("an improving cycle exists on K_5 at alpha = 5/2 within 10^6 moves");
    let alpha = a(5, 2);
    let search = find_improving_cycle(5, alpha, 1_000_000, config.seed);
    match &search.outcome {
        None => claim.check(false, || format!("none found after {} moves", search.moves_examined)),
        Some(out) => {
            let host = Arc::new(HostGraph::complete(5).expect("n >= 2"));
            let Terminal::Cycle { start } = out.terminal else {
                unreachable!("searches end in cycles")
            };
            let mut state = GameState::from_edge_set_unchecked(host, out.steps[start].key.clone());
            let mut genuine = true;
            let mut moves = Vec::new();
            for step in &out.steps[start..] {
                genuine &= state.canonical_key() == step.key && is_improving_by_recomputation(&state, step.mv, alpha);
                moves.push(step.mv.to_string());
                state = apply_move(&state, step.mv).expect("improving moves are legal");
            }
            genuine &= state.canonical_key() == out.steps[start].key;
            claim.check(genuine, || "replayed cycle is not improving".to_string());
            claim.note(format!(
                "cycle of {} moves after {} moves examined: {}",
                moves.len(),
                search.moves_examined,
                moves.join(", ")
            ));
        }
    }
    vec![claim.done()]
}

fn constructions() -> Vec<ClaimResult> {
    let mut claim = Claim::new("the lower-bound constructions are pairwise stable at their alpha");
    let cases = [
        (
            "star_of_cliques(14, 2)",
            star_of_cliques(14, a(2, 1)).map(|c| c.host),
            a(2, 1),
        ),
        (
            "hypercube_clique_network(64)",
            hypercube_clique_network(64).map(|c| c.host),
            a(64 - 18, 6),
        ),
        (
            "path_of_cliques(20, 4)",
            path_of_cliques(20, 4).map(|c| c.host),
            a(8, 1),
        ),
        (
            "wheel_clique_network(10)",
            wheel_clique_network(10).map(|c| c.host),
            a(1, 1),
        ),
    ];
    for (name, host, alpha) in cases {
        let state = GameState::full(Arc::new(host.expect("feasible parameters")));
        let r = is_pairwise_stable(&state, alpha);
        claim.check(r.stable, || format!("{name} at alpha={alpha}: {:?}", r.witnesses));
    }
    let wheel = GameState::full(Arc::new(wheel_clique_network(10).expect("n >= 8").host));
    let p10 = GameState::full(Arc::new(path(10).expect("n >= 2")));
    let ratio = social_welfare(&p10, a(1, 1)) / social_welfare(&wheel, a(1, 1));
    let mut ratio_claim = Claim::new("SW(P_10)/SW(wheel clique network on 10 nodes) at alpha = 1 exceeds 1");
    ratio_claim.check(ratio > Rational::from_integer(1), || format!("ratio {ratio}"));
    ratio_claim.note(format!("ratio = {ratio}"));
    vec![claim.done(), ratio_claim.done()]
}

fn prices(spec: &CorpusSpec, config: &CampaignConfig) -> Vec<ClaimResult> {
    let mut k6 = Claim::new("PoA(K_6, alpha = 1) = 4/3");
    let host = Arc::new(HostGraph::complete(6).expect("n >= 2"));
    let s = price_summary(&host, a(1, 1), config.budget).expect("within budget");
    k6.check(s.poa == Some(Rational::new(4, 3)), || format!("PoA = {:?}", s.poa));

    let mut pos = Claim::new("PoS(K_n, alpha) = 1 and PoS <= PoA for n <= 6 across the alpha grid");
    for n in 3..=6 {
        let host = Arc::new(HostGraph::complete(n).expect("n >= 2"));
        let t = threshold_table(n);
        let k = n as i128;
        let grid = [
            a(1, 2),
            a(3, 4),
            a(1, 1),
            a(k, 3),
            a(k - 1, 2),
            a(2 * k + 1, 4),
            alpha_of(t.n2 + 1),
            alpha_of(t.n3 + 1),
        ];
        for alpha in grid {
            let s = price_summary(&host, alpha, config.budget).expect("within budget");
            let ok = s.pos == Some(Rational::from_integer(1)) && s.pos <= s.poa;
            pos.check(ok, || format!("n={n} alpha={alpha}: PoS {:?}, PoA {:?}", s.pos, s.poa));
        }
    }

    let mut dense = Claim::new("PoA = 1 for alpha = N3 + 1 on random hosts");
    for h in random_corpus(spec) {
        let host = Arc::new(h.host);
        let alpha = alpha_of(threshold_table(host.n()).n3 + 1);
        let s = price_summary(&host, alpha, config.budget).expect("corpus fits the budget");
        dense.check(s.poa == Some(Rational::from_integer(1)), || {
            format!("host #{} {}: PoA {:?}", h.index, describe_host(&host), s.poa)
        });
    }
    vec![k6.done(), pos.done(), dense.done()]
}

fn certificates(big: &CorpusSpec, small: &CorpusSpec, config: &CampaignConfig) -> Vec<ClaimResult> {
    let mut claim = Claim::new(
        "local search: iterations <= (n-1)n(n+1)/3, 9 d_T(V,V) >= n l^2, swap-maximal, and SW(OPT)/SW(MRCST) <= m/(n-1) + 1 where OPT is computed",
    );
    let hosts: Vec<_> = random_corpus(big).into_iter().chain(random_corpus(small)).collect();
    let results: Vec<_> = hosts
        .par_iter()
        .map(|h| {
            let host = Arc::new(h.host.clone());
            [Pivot::BestSwap, Pivot::FirstSwap].map(|pivot| {
                let r = smrcst(&host, pivot);
                let cert = smrcst_certificates(&r, &host, a(1, 1), config.budget);
                (describe_host(&host), pivot, cert.map(|c| c.approximation.is_some()))
            })
        })
        .collect();
    let mut with_opt = 0;
    for (host, pivot, cert) in results.into_iter().flatten() {
        if let Ok(true) = cert {
            with_opt += 1;
        }
        claim.check(cert.is_ok(), || format!("{host} {pivot:?}: {}", cert.unwrap_err()));
    }
    claim.note(format!("optimum computed on {with_opt} runs"));
    vec![claim.done()]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn permutations() {
        let mut v = vec![0, 1, 2, 3];
        let mut count = 1;
        while next_permutation(&mut v) {
            count += 1;
        }
        assert_eq!(count, 24);
    }

    #[test]
    fn small_campaigns_pass() {
        let config = CampaignConfig {
            hosts: Some(4),
            n_max: Some(5),
            ..CampaignConfig::default()
        };
        for suite in [
            Suite::ClosedForms,
            Suite::CompleteOptimum,
            Suite::CompleteStability,
            Suite::MrcstOptimality,
        ] {
            let r = theorem_campaign(suite, &config);
            assert!(r.passed, "{suite}: {:?}", r.claims);
        }
        let r = theorem_campaign(
            Suite::SmrcstStability,
            &CampaignConfig {
                n_max: Some(9),
                ..config
            },
        );
        assert!(r.passed, "{:?}", r.claims);
        assert!(r.corpus[0].contains("seed 0"));
    }

    #[test]
    fn failures_carry_counterexamples() {
        let mut c = Claim::new("x");
        for i in 0..10 {
            c.check(i % 2 == 0, || format!("odd {i}"));
        }
        let r = c.done();
        assert!(!r.passed);
        assert_eq!((r.checked, r.failures, r.counterexamples.len()), (10, 5, 5));
    }
}
