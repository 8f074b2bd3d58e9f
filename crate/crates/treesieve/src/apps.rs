//! Problem-level entry points. Each function builds the auxiliary graph
//! for its problem, assigns the edge-weight monomials, wires up a sieve
//! instance, and post-processes the engine's result.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::graph::{
    attach_apex, contract_independent, square_bipartite, CompanionSpec, Edge, EdgeLabel, Graph,
    GraphError,
};
use crate::matching::{self, MatchingError};
use crate::sieve::{
    run_count, run_detect, DetectResult, EdgeWeight, Premultiplier, SieveInstance, SieveMode,
};

#[derive(Debug, Error)]
pub enum AppError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Sieve(#[from] crate::sieve::SieveError),
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error("invalid input: {0}")]
    Invalid(String),
}

/// Counting results do not depend on the sampled primes, so the counting
/// entry points fix the prime-sampling stream.
const PRIME_SEED: u64 = 0;

fn check_endpoints(g: &Graph, s: usize, t: usize) -> Result<(), AppError> {
    if s >= g.n() || t >= g.n() {
        return Err(AppError::Graph(GraphError::VertexOutOfRange(s.max(t))));
    }
    if s == t {
        return Err(AppError::Invalid("source equals target".into()));
    }
    Ok(())
}

fn require_undirected(g: &Graph) -> Result<(), AppError> {
    if g.directed() {
        return Err(AppError::Invalid("expected an undirected graph".into()));
    }
    Ok(())
}

fn require_directed(g: &Graph) -> Result<(), AppError> {
    if !g.directed() {
        return Err(AppError::Invalid("expected a directed graph".into()));
    }
    Ok(())
}

/// Exact number of Hamiltonian paths from `s` to `t`.
///
/// Every edge `{u,v}` weighs `x_u·x_v`, so a spanning tree's monomial
/// records all vertex degrees; multiplying by `x_s·x_t` and sieving with
/// square roots of unity keeps exactly the trees whose degrees are odd at
/// `s` and `t` and even elsewhere — and a tree with at most two leaves is a
/// path.
pub fn count_ham_paths_undirected(g: &Graph, s: usize, t: usize) -> Result<BigInt, AppError> {
    require_undirected(g)?;
    check_endpoints(g, s, t)?;
    let inst = ham_count_instance(g, s, t, CompanionSpec::IncidenceOriented);
    Ok(run_count(&inst, PRIME_SEED)?.value)
}

/// Exact number of directed Hamiltonian paths from `s` to `t`.
pub fn count_ham_paths_directed(g: &Graph, s: usize, t: usize) -> Result<BigInt, AppError> {
    require_directed(g)?;
    check_endpoints(g, s, t)?;
    let inst = ham_count_instance(g, s, t, CompanionSpec::InIncidence);
    let mut value = run_count(&inst, PRIME_SEED)?.value;
    // Against the head-indicator companion, every tree term carries a
    // uniform sign (−1)^(n−1): triangularizing the product by repeatedly
    // peeling leaves puts each non-root vertex's single incoming arc on the
    // diagonal, where the weighted matrix holds −w and the companion +1.
    if g.n() % 2 == 0 {
        value = -value;
    }
    Ok(value)
}

fn ham_count_instance(g: &Graph, s: usize, t: usize, cspec: CompanionSpec) -> SieveInstance {
    let weights = g
        .edges()
        .iter()
        .map(|e| EdgeWeight::unit().vertex(e.tail, 1).vertex(e.head, 1))
        .collect();
    SieveInstance {
        h: g.clone(),
        root: s,
        cspec,
        weights,
        order: 2,
        sieved: (0..g.n()).collect(),
        pre: Premultiplier::Monomial(vec![(s, 1), (t, 1)]),
        y_target: vec![],
        mode: SieveMode::Count,
    }
}

fn detect_instance(
    h: &Graph,
    root: usize,
    label_rows: Vec<EdgeLabel>,
    order: u64,
    head_exp: u64,
    pre: Vec<(usize, u64)>,
) -> SieveInstance {
    let weights = h
        .edges()
        .iter()
        .map(|e| {
            EdgeWeight::unit()
                .vertex(e.tail, 1)
                .vertex(e.head, head_exp)
                .isolating()
        })
        .collect();
    SieveInstance {
        h: h.clone(),
        root,
        cspec: CompanionSpec::LabelIndicator { rows: label_rows },
        weights,
        order,
        sieved: (0..h.n()).collect(),
        pre: Premultiplier::Monomial(pre),
        y_target: vec![],
        mode: SieveMode::Detect,
    }
}

/// One-sided randomized test for a Hamiltonian `s`–`t` path in a balanced
/// bipartite graph, running over the squared graph: `2^(n/2 + 1)`
/// substitutions instead of `2^n`. "Detected" is always correct; a path can
/// be missed with probability at most about 1/4 per trial.
pub fn detect_ham_path_bip_undirected(
    g: &Graph,
    s: usize,
    t: usize,
    trials: usize,
    seed: u64,
) -> Result<DetectResult, AppError> {
    require_undirected(g)?;
    check_endpoints(g, s, t)?;
    let sq = square_bipartite(g, s, t)?;
    let inst = detect_instance(
        &sq.h,
        sq.s_h,
        sq.label_rows,
        2,
        1,
        vec![(sq.s_h, 1), (sq.t_prime_h, 1)],
    );
    Ok(run_detect(&inst, trials, seed)?)
}

/// One-sided randomized test for a Hamiltonian `s`–`t` path given an
/// independent set `v0` avoiding `s` and `t`: the substitution space is
/// `2^(n − |v0|)`.
pub fn detect_ham_path_indep_undirected(
    g: &Graph,
    v0: &BTreeSet<usize>,
    s: usize,
    t: usize,
    trials: usize,
    seed: u64,
) -> Result<DetectResult, AppError> {
    require_undirected(g)?;
    check_endpoints(g, s, t)?;
    let ci = contract_independent(g, v0, s, t)?;
    let inst = detect_instance(
        &ci.h,
        ci.s_h,
        ci.label_rows,
        2,
        1,
        vec![(ci.s_h, 1), (ci.t_h, 1)],
    );
    Ok(run_detect(&inst, trials, seed)?)
}

/// Directed-bipartite variant of the squared-graph detector: cube roots of
/// unity with arc weights `x_u·x_v²` keep only consistently oriented paths.
pub fn detect_ham_path_bip_directed(
    g: &Graph,
    s: usize,
    t: usize,
    trials: usize,
    seed: u64,
) -> Result<DetectResult, AppError> {
    require_directed(g)?;
    check_endpoints(g, s, t)?;
    let sq = square_bipartite(g, s, t)?;
    let inst = detect_instance(
        &sq.h,
        sq.s_h,
        sq.label_rows,
        3,
        2,
        vec![(sq.s_h, 2), (sq.t_prime_h, 1)],
    );
    Ok(run_detect(&inst, trials, seed)?)
}

/// Directed variant of the independent-set detector.
pub fn detect_ham_path_indep_directed(
    g: &Graph,
    v0: &BTreeSet<usize>,
    s: usize,
    t: usize,
    trials: usize,
    seed: u64,
) -> Result<DetectResult, AppError> {
    require_directed(g)?;
    check_endpoints(g, s, t)?;
    let ci = contract_independent(g, v0, s, t)?;
    let inst = detect_instance(
        &ci.h,
        ci.s_h,
        ci.label_rows,
        3,
        2,
        vec![(ci.s_h, 2), (ci.t_h, 1)],
    );
    Ok(run_detect(&inst, trials, seed)?)
}

/// Exact number of perfect matchings in a balanced bipartite graph, in
/// `2^(n/2)` substitutions: an apex joined to part 1 contributes `y` per
/// apex edge, graph edges contribute the part-1 endpoint's variable, and
/// extracting `[y^(n/2)]` with all part-1 degrees even forces every part-1
/// vertex to pair with exactly one graph edge.
pub fn count_pm_bipartite(g: &Graph) -> Result<BigInt, AppError> {
    require_undirected(g)?;
    let (p1, p2) = g.bipartition()?;
    if p1.len() != p2.len() {
        return Err(AppError::Graph(GraphError::UnbalancedBipartition(
            p1.len(),
            p2.len(),
        )));
    }
    let (h, apex) = attach_apex(g, &p1)?;
    let weights = h
        .edges()
        .iter()
        .map(|e| {
            if e.tail == apex || e.head == apex {
                EdgeWeight::unit().grading(vec![1])
            } else {
                let u = if p1.contains(&e.tail) { e.tail } else { e.head };
                EdgeWeight::unit().vertex(u, 1).grading(vec![0])
            }
        })
        .collect();
    let sieved: Vec<usize> = p1.iter().copied().collect();
    let pre = Premultiplier::Monomial(sieved.iter().map(|&u| (u, 1)).collect());
    let inst = SieveInstance {
        h,
        root: apex,
        cspec: CompanionSpec::IncidenceOriented,
        weights,
        order: 2,
        sieved,
        pre,
        y_target: vec![p1.len()],
        mode: SieveMode::Count,
    };
    Ok(run_count(&inst, PRIME_SEED)?.value)
}

/// Exact number of matchings of size `k` in a bipartite graph, in
/// `2^min(|V1|,|V2|)` substitutions. The elementary symmetric premultiplier
/// selects which `k` smaller-side vertices are matched; two apex gradings
/// pin the tree shape on each side.
pub fn count_k_matchings_bipartite(g: &Graph, k: usize) -> Result<BigInt, AppError> {
    require_undirected(g)?;
    let (p1, p2) = g.bipartition()?;
    let (small, large) = if p1.len() <= p2.len() {
        (p1, p2)
    } else {
        (p2, p1)
    };
    if k > small.len() {
        return Err(AppError::Invalid(format!(
            "matching size {k} exceeds the smaller part ({})",
            small.len()
        )));
    }
    let hub: BTreeSet<usize> = (0..g.n()).collect();
    let (h, apex) = attach_apex(g, &hub)?;
    let weights = h
        .edges()
        .iter()
        .map(|e| {
            if e.tail == apex || e.head == apex {
                let v = if e.tail == apex { e.head } else { e.tail };
                if small.contains(&v) {
                    EdgeWeight::unit().grading(vec![1, 0])
                } else {
                    EdgeWeight::unit().grading(vec![0, 1])
                }
            } else {
                let u = if small.contains(&e.tail) {
                    e.tail
                } else {
                    e.head
                };
                EdgeWeight::unit().vertex(u, 1).grading(vec![0, 0])
            }
        })
        .collect();
    let sieved: Vec<usize> = small.iter().copied().collect();
    let pre = Premultiplier::ElemSym {
        degree: k,
        vars: sieved.clone(),
    };
    let inst = SieveInstance {
        h,
        root: apex,
        cspec: CompanionSpec::IncidenceOriented,
        weights,
        order: 2,
        sieved,
        pre,
        y_target: vec![small.len(), large.len() - k],
        mode: SieveMode::Count,
    };
    Ok(run_count(&inst, PRIME_SEED)?.value)
}

/// Exact number of perfect `k`-star covers (vertex-disjoint stars on `k`
/// vertices covering everything). Sums a per-center-set sieve over all
/// `C(n, n/k)` choices of the center set, keeping only center-to-leaf
/// edges. For `k = 2` the two endpoints of an edge are interchangeable as
/// "center", so the per-set sum counts every cover `2^(n/2)` times and is
/// divided down.
pub fn count_kstar_covers(g: &Graph, k: usize) -> Result<BigInt, AppError> {
    require_undirected(g)?;
    if k < 2 {
        return Err(AppError::Invalid("star size must be at least 2".into()));
    }
    let n = g.n();
    if n % k != 0 {
        return Err(AppError::Invalid(format!(
            "star size {k} does not divide the vertex count {n}"
        )));
    }
    let centers = n / k;
    let adj = g.adjacency();
    let mut total = BigInt::zero();
    for combo in (0..n).combinations(centers) {
        let v0: BTreeSet<usize> = combo.iter().copied().collect();
        // A vertex with no neighbor among the centers cannot be covered.
        let feasible = (0..n)
            .filter(|v| !v0.contains(v))
            .all(|v| adj[v].iter().any(|u| v0.contains(u)));
        if !feasible {
            continue;
        }
        let cross: Vec<Edge> = g
            .edges()
            .iter()
            .filter(|e| v0.contains(&e.tail) != v0.contains(&e.head))
            .copied()
            .collect();
        let restricted = Graph::with_edges(n, false, cross)?;
        let (h, apex) = attach_apex(&restricted, &v0)?;
        let weights = h
            .edges()
            .iter()
            .map(|e| {
                if e.tail == apex || e.head == apex {
                    EdgeWeight::unit().grading(vec![1])
                } else {
                    let u = if v0.contains(&e.tail) { e.tail } else { e.head };
                    EdgeWeight::unit().vertex(u, 1).grading(vec![0])
                }
            })
            .collect();
        let sieved: Vec<usize> = v0.iter().copied().collect();
        let pre = Premultiplier::Monomial(sieved.iter().map(|&u| (u, 1)).collect());
        let inst = SieveInstance {
            h,
            root: apex,
            cspec: CompanionSpec::IncidenceOriented,
            weights,
            order: k as u64,
            sieved,
            pre,
            y_target: vec![centers],
            mode: SieveMode::Count,
        };
        total += run_count(&inst, PRIME_SEED)?.value;
    }
    if k == 2 {
        let overcount = BigInt::from(2).pow(centers as u32);
        assert!(
            (&total % &overcount).is_zero(),
            "center-choice overcount must divide the 2-star total"
        );
        total /= overcount;
    }
    Ok(total)
}

/// Exact number of maximum matchings. The vertices some maximum matching
/// misses decompose into factor-critical components; a maximum matching is
/// a perfect matching of the untouched part, a near-perfect matching of
/// each component, and a matching of the components' neighborhood into
/// distinct components. The latter is counted by a sieve over a small
/// bipartite contraction whose weights carry the near-perfect-matching
/// counts.
pub fn count_maximum_matchings(g: &Graph) -> Result<BigInt, AppError> {
    require_undirected(g)?;
    let ge = matching::gallai_edmonds(g);
    let k = ge.d_components.len();
    let a_count = ge.a.len();
    assert!(
        k >= a_count,
        "every maximum matching matches the neighborhood into distinct components"
    );
    let pm_c = matching::count_pm_general(&g.induced(&ge.c))?;

    let adj = g.adjacency();
    let a_pos: std::collections::BTreeMap<usize, usize> =
        ge.a.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut edge_weight = vec![vec![BigInt::zero(); k]; a_count];
    let mut comp_weight = vec![BigInt::zero(); k];
    for (ci, comp) in ge.d_components.iter().enumerate() {
        let sub = g.induced(comp);
        let (total, per_vertex) = matching::near_pm_weights(&sub)?;
        comp_weight[ci] = total;
        for (j, &d) in comp.iter().enumerate() {
            for u in &adj[d] {
                if let Some(&ai) = a_pos.get(u) {
                    edge_weight[ai][ci] += &per_vertex[j];
                }
            }
        }
    }

    // Contraction vertices: the neighborhood set first, then one vertex per
    // component.
    let mut edges = Vec::new();
    for (ai, row) in edge_weight.iter().enumerate() {
        for (ci, w) in row.iter().enumerate() {
            if !w.is_zero() {
                edges.push(Edge {
                    tail: ai,
                    head: a_count + ci,
                    label: None,
                });
            }
        }
    }
    let contraction = Graph::with_edges(a_count + k, false, edges)?;
    let hub: BTreeSet<usize> = (0..contraction.n()).collect();
    let (h, apex) = attach_apex(&contraction, &hub)?;
    let weights = h
        .edges()
        .iter()
        .map(|e| {
            if e.tail == apex || e.head == apex {
                let v = if e.tail == apex { e.head } else { e.tail };
                if v < a_count {
                    EdgeWeight::unit().grading(vec![1, 0])
                } else {
                    EdgeWeight::unit()
                        .grading(vec![0, 1])
                        .scaled(comp_weight[v - a_count].clone())
                }
            } else {
                let (ai, ci) = (e.tail.min(e.head), e.tail.max(e.head) - a_count);
                EdgeWeight::unit()
                    .vertex(ai, 1)
                    .grading(vec![0, 0])
                    .scaled(edge_weight[ai][ci].clone())
            }
        })
        .collect();
    let sieved: Vec<usize> = (0..a_count).collect();
    let pre = Premultiplier::Monomial(sieved.iter().map(|&u| (u, 1)).collect());
    let inst = SieveInstance {
        h,
        root: apex,
        cspec: CompanionSpec::IncidenceOriented,
        weights,
        order: 2,
        sieved,
        pre,
        y_target: vec![a_count, k - a_count],
        mode: SieveMode::Count,
    };
    let among_missed = run_count(&inst, PRIME_SEED)?.value;
    Ok(among_missed * pm_c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::gen;
    use crate::oracle;
    use num_traits::One;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn ham_path_counts_on_small_graphs() {
        assert_eq!(
            count_ham_paths_undirected(&gen::path(4), 0, 3).unwrap(),
            BigInt::from(1)
        );
        assert_eq!(
            count_ham_paths_undirected(&gen::cycle(5), 0, 4).unwrap(),
            BigInt::from(1)
        );
        assert_eq!(
            count_ham_paths_undirected(&gen::cycle(5), 0, 2).unwrap(),
            BigInt::from(0)
        );
        assert_eq!(
            count_ham_paths_undirected(&gen::complete(4), 0, 1).unwrap(),
            BigInt::from(2)
        );
        assert!(count_ham_paths_undirected(&gen::path(4), 2, 2).is_err());
        assert!(count_ham_paths_undirected(&gen::directed_path(4), 0, 3).is_err());
    }

    #[test]
    fn directed_ham_path_counts_have_the_right_sign() {
        assert_eq!(
            count_ham_paths_directed(&gen::directed_path(4), 0, 3).unwrap(),
            BigInt::from(1)
        );
        assert_eq!(
            count_ham_paths_directed(&gen::directed_cycle(3), 0, 2).unwrap(),
            BigInt::from(1)
        );
        assert_eq!(
            count_ham_paths_directed(&gen::bidirected_complete(3), 0, 1).unwrap(),
            BigInt::from(1)
        );
        // Even orders exercise the (−1)^(n−1) companion sign.
        let two = Graph::new(2, true, &[(0, 1)]).unwrap();
        assert_eq!(
            count_ham_paths_directed(&two, 0, 1).unwrap(),
            BigInt::from(1)
        );
        assert_eq!(
            count_ham_paths_directed(&two, 1, 0).unwrap(),
            BigInt::from(0)
        );
        let k4 = gen::bidirected_complete(4);
        assert_eq!(
            count_ham_paths_directed(&k4, 0, 1).unwrap(),
            oracle::ham_paths(&k4, 0, 1).unwrap()
        );
        assert!(count_ham_paths_directed(&gen::path(4), 0, 3).is_err());
    }

    #[test]
    fn undirected_counts_match_oracle_on_random_graphs() {
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        for _ in 0..25 {
            let g = gen::random_connected(6, 0.4, &mut rng);
            assert_eq!(
                count_ham_paths_undirected(&g, 0, 5).unwrap(),
                oracle::ham_paths(&g, 0, 5).unwrap()
            );
        }
    }

    #[test]
    fn bipartite_detector_finds_and_rejects() {
        let k33 = gen::complete_bipartite(3, 3);
        assert!(detect_ham_path_bip_undirected(&k33, 0, 3, 10, 1)
            .unwrap()
            .detected);
        // Cycle endpoints must be adjacent for a Hamiltonian path; (0, 3)
        // in a 6-cycle is a non-instance, and rejection is exact.
        let c6 = gen::cycle(6);
        assert!(!detect_ham_path_bip_undirected(&c6, 0, 3, 30, 1)
            .unwrap()
            .detected);
        assert!(detect_ham_path_bip_undirected(&gen::path(6), 0, 5, 10, 1)
            .unwrap()
            .detected);
        // Same side (both in part 1) is rejected as malformed.
        assert!(detect_ham_path_bip_undirected(&c6, 0, 2, 5, 1).is_err());
    }

    #[test]
    fn independent_set_detector_finds_and_rejects() {
        let p5 = gen::path(5);
        let v0 = BTreeSet::from([1, 3]);
        assert!(detect_ham_path_indep_undirected(&p5, &v0, 0, 4, 10, 1)
            .unwrap()
            .detected);
        // A star with more than two leaves has no Hamiltonian path.
        let star = gen::star(5);
        let v0 = BTreeSet::from([3, 4]);
        assert!(!detect_ham_path_indep_undirected(&star, &v0, 1, 2, 30, 1)
            .unwrap()
            .detected);
        // Dependent set rejected.
        assert!(
            detect_ham_path_indep_undirected(&p5, &BTreeSet::from([1, 2]), 0, 4, 5, 1).is_err()
        );
    }

    #[test]
    fn both_undirected_detectors_agree_on_shared_instances() {
        // The independent-set detector answers the bipartite detector's
        // question when the set is part 2 minus the target.
        for (g, s, t, expect) in [
            (gen::complete_bipartite(3, 3), 0, 3, true),
            (gen::cycle(6), 0, 3, false),
            (gen::path(6), 0, 5, true),
        ] {
            let (_, p2) = g.bipartition().unwrap();
            let v0: BTreeSet<usize> = p2.iter().copied().filter(|&v| v != t).collect();
            let bip = detect_ham_path_bip_undirected(&g, s, t, 12, 7).unwrap();
            let ind = detect_ham_path_indep_undirected(&g, &v0, s, t, 12, 7).unwrap();
            assert_eq!(bip.detected, expect);
            assert_eq!(ind.detected, expect);
        }
    }

    #[test]
    fn directed_bipartite_detector() {
        let c6 = gen::directed_cycle(6);
        assert!(detect_ham_path_bip_directed(&c6, 0, 5, 10, 1)
            .unwrap()
            .detected);
        assert!(!detect_ham_path_bip_directed(&c6, 0, 1, 30, 1)
            .unwrap()
            .detected);
        let k22 = gen::bidirected_complete_bipartite(2, 2);
        assert!(detect_ham_path_bip_directed(&k22, 0, 2, 10, 1)
            .unwrap()
            .detected);
    }

    #[test]
    fn directed_independent_set_detector() {
        let p5 = gen::directed_path(5);
        let v0 = BTreeSet::from([1, 3]);
        assert!(detect_ham_path_indep_directed(&p5, &v0, 0, 4, 10, 1)
            .unwrap()
            .detected);
        // Reversing an internal arc destroys the only directed path.
        let broken = Graph::new(5, true, &[(0, 1), (2, 1), (2, 3), (3, 4)]).unwrap();
        assert!(!detect_ham_path_indep_directed(&broken, &v0, 0, 4, 30, 1)
            .unwrap()
            .detected);
    }

    #[test]
    fn directed_detector_with_empty_set_matches_oracle() {
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        let empty = BTreeSet::new();
        for _ in 0..12 {
            let g = gen::random_digraph(5, 0.35, &mut rng);
            let exists = oracle::ham_paths(&g, 0, 4).unwrap() > BigInt::zero();
            let verdict = detect_ham_path_indep_directed(&g, &empty, 0, 4, 25, 3)
                .unwrap()
                .detected;
            if exists {
                assert!(verdict, "{g:?} has a path but 25 trials all missed");
            } else {
                assert!(!verdict, "{g:?} has no path; detection must be exact");
            }
        }
    }

    #[test]
    fn perfect_matching_counts() {
        assert_eq!(
            count_pm_bipartite(&gen::complete_bipartite(3, 3)).unwrap(),
            BigInt::from(6)
        );
        assert_eq!(
            count_pm_bipartite(&gen::cycle(6)).unwrap(),
            BigInt::from(2)
        );
        assert!(matches!(
            count_pm_bipartite(&gen::complete_bipartite(2, 3)),
            Err(AppError::Graph(GraphError::UnbalancedBipartition(2, 3)))
        ));
        assert!(count_pm_bipartite(&gen::complete(3)).is_err());
        // Empty graph: one (empty) perfect matching.
        assert_eq!(
            count_pm_bipartite(&Graph::new(0, false, &[]).unwrap()).unwrap(),
            BigInt::one()
        );
    }

    #[test]
    fn perfect_matching_counts_match_permanent() {
        let mut rng = ChaCha12Rng::seed_from_u64(23);
        for _ in 0..10 {
            let g = gen::random_bipartite(4, 4, 0.5, &mut rng);
            let mut rows = vec![vec![0u64; 4]; 4];
            for e in g.edges() {
                rows[e.tail][e.head - 4] = 1;
            }
            assert_eq!(
                count_pm_bipartite(&g).unwrap(),
                oracle::permanent_ryser(&rows).unwrap()
            );
        }
    }

    #[test]
    fn k_matching_counts() {
        let k33 = gen::complete_bipartite(3, 3);
        assert_eq!(
            count_k_matchings_bipartite(&k33, 0).unwrap(),
            BigInt::one()
        );
        assert_eq!(
            count_k_matchings_bipartite(&k33, 1).unwrap(),
            BigInt::from(9)
        );
        assert_eq!(
            count_k_matchings_bipartite(&k33, 2).unwrap(),
            BigInt::from(18)
        );
        assert_eq!(
            count_k_matchings_bipartite(&k33, 3).unwrap(),
            count_pm_bipartite(&k33).unwrap()
        );
        assert!(count_k_matchings_bipartite(&k33, 4).is_err());
        // An unbalanced graph exercises the side swap.
        let k23 = gen::complete_bipartite(2, 3);
        assert_eq!(
            count_k_matchings_bipartite(&k23, 2).unwrap(),
            oracle::matchings_of_size(&k23, 2).unwrap()
        );
    }

    #[test]
    fn k_matching_counts_match_oracle_on_random_graphs() {
        let mut rng = ChaCha12Rng::seed_from_u64(31);
        for _ in 0..8 {
            let g = gen::random_bipartite(3, 4, 0.6, &mut rng);
            for k in 0..=3 {
                assert_eq!(
                    count_k_matchings_bipartite(&g, k).unwrap(),
                    oracle::matchings_of_size(&g, k).unwrap(),
                    "k = {k}"
                );
            }
        }
    }

    #[test]
    fn star_cover_counts() {
        assert_eq!(
            count_kstar_covers(&gen::complete(3), 3).unwrap(),
            BigInt::from(3)
        );
        assert_eq!(
            count_kstar_covers(&gen::complete_bipartite(3, 3), 3).unwrap(),
            oracle::kstar_covers(&gen::complete_bipartite(3, 3), 3).unwrap()
        );
        assert!(count_kstar_covers(&gen::path(5), 2).is_err());
        assert!(count_kstar_covers(&gen::path(4), 1).is_err());
        // 2-star covers are perfect matchings, bipartite or not.
        assert_eq!(
            count_kstar_covers(&gen::path(4), 2).unwrap(),
            count_pm_bipartite(&gen::path(4)).unwrap()
        );
        assert_eq!(
            count_kstar_covers(&gen::cycle(6), 2).unwrap(),
            BigInt::from(2)
        );
        assert_eq!(
            count_kstar_covers(&gen::complete(4), 2).unwrap(),
            BigInt::from(3)
        );
    }

    #[test]
    fn star_cover_counts_match_oracle() {
        let mut rng = ChaCha12Rng::seed_from_u64(47);
        for _ in 0..6 {
            let g = gen::random_graph(6, 0.5, &mut rng);
            for k in [2, 3, 6] {
                assert_eq!(
                    count_kstar_covers(&g, k).unwrap(),
                    oracle::kstar_covers(&g, k).unwrap(),
                    "k = {k} on {g:?}"
                );
            }
        }
    }

    #[test]
    fn maximum_matching_counts() {
        assert_eq!(
            count_maximum_matchings(&gen::complete(3)).unwrap(),
            BigInt::from(3)
        );
        assert_eq!(
            count_maximum_matchings(&gen::path(3)).unwrap(),
            BigInt::from(2)
        );
        assert_eq!(
            count_maximum_matchings(&gen::path(5)).unwrap(),
            BigInt::from(3)
        );
        assert_eq!(
            count_maximum_matchings(&Graph::new(4, false, &[]).unwrap()).unwrap(),
            BigInt::one()
        );
        assert_eq!(
            count_maximum_matchings(&gen::complete(4)).unwrap(),
            BigInt::from(3)
        );
        assert_eq!(
            count_maximum_matchings(&gen::cycle(5)).unwrap(),
            BigInt::from(5)
        );
    }

    #[test]
    fn maximum_matching_counts_match_oracle_on_random_graphs() {
        let mut rng = ChaCha12Rng::seed_from_u64(61);
        for _ in 0..15 {
            let g = gen::random_graph(7, 0.35, &mut rng);
            let (_, expect) = oracle::maximum_matchings(&g).unwrap();
            assert_eq!(count_maximum_matchings(&g).unwrap(), expect, "{g:?}");
        }
    }

    #[test]
    fn maximum_matchings_on_bipartite_pm_graphs_reduce_to_pm_count() {
        for g in [
            gen::complete_bipartite(3, 3),
            gen::cycle(6),
            gen::path(4),
        ] {
            assert_eq!(
                count_maximum_matchings(&g).unwrap(),
                count_pm_bipartite(&g).unwrap()
            );
        }
    }
}
