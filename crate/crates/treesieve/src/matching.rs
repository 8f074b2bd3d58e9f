//! Maximum matchings (blossom contraction), the structural decomposition of
//! maximum matchings, and exact perfect-matching counters for the component
//! weights it needs.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatchingError {
    #[error("graph too large for exact matching count ({0} vertices)")]
    TooLarge(usize),
    #[error("graph is not factor-critical: deleting vertex {0} leaves no perfect matching")]
    NotFactorCritical(usize),
    #[error("{0}")]
    Internal(String),
}

/// Maximum-cardinality matching as a mate table. Deterministic: vertices
/// are processed in ascending order and neighbor lists are sorted, so a
/// fixed graph always yields the same matching.
pub fn maximum_matching(g: &Graph) -> Vec<Option<usize>> {
    let n = g.n();
    let adj = g.adjacency();
    let mut mate: Vec<Option<usize>> = vec![None; n];
    for v in 0..n {
        if mate[v].is_none() {
            if let Some(&u) = adj[v].iter().find(|&&u| mate[u].is_none()) {
                mate[v] = Some(u);
                mate[u] = Some(v);
            }
        }
    }
    for start in 0..n {
        if mate[start].is_none() {
            augment_from(&adj, &mut mate, start);
        }
    }
    mate
}

/// Size of a maximum matching.
pub fn matching_number(g: &Graph) -> usize {
    maximum_matching(g).iter().flatten().count() / 2
}

/// One phase of the blossom search: grow an alternating forest from `start`,
/// contracting odd cycles, and flip the first augmenting path found.
fn augment_from(adj: &[Vec<usize>], mate: &mut [Option<usize>], start: usize) -> bool {
    let n = adj.len();
    let mut base: Vec<usize> = (0..n).collect();
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    let mut queue = std::collections::VecDeque::new();
    used[start] = true;
    queue.push_back(start);

    fn lca(
        base: &[usize],
        parent: &[Option<usize>],
        mate: &[Option<usize>],
        mut a: usize,
        mut b: usize,
    ) -> usize {
        let mut marked = vec![false; base.len()];
        loop {
            a = base[a];
            marked[a] = true;
            match mate[a] {
                Some(m) => match parent[m] {
                    Some(p) => a = p,
                    None => break,
                },
                None => break,
            }
        }
        loop {
            b = base[b];
            if marked[b] {
                return b;
            }
            b = parent[mate[b].expect("even vertex on root path has a mate")]
                .expect("even vertex on root path has a parent");
        }
    }

    fn mark_path(
        base: &[usize],
        parent: &mut [Option<usize>],
        mate: &[Option<usize>],
        in_blossom: &mut [bool],
        mut v: usize,
        b: usize,
        mut child: usize,
    ) {
        while base[v] != b {
            let m = mate[v].expect("blossom path alternates through matched edges");
            in_blossom[base[v]] = true;
            in_blossom[base[m]] = true;
            parent[v] = Some(child);
            child = m;
            v = parent[m].expect("blossom path reaches the common ancestor");
        }
    }

    while let Some(v) = queue.pop_front() {
        for &u in &adj[v] {
            if base[v] == base[u] || mate[v] == Some(u) {
                continue;
            }
            if u == start || mate[u].map_or(false, |m| parent[m].is_some()) {
                // Odd cycle: contract the blossom down to the common base.
                let cur_base = lca(&base, &parent, mate, v, u);
                let mut in_blossom = vec![false; n];
                mark_path(&base, &mut parent, mate, &mut in_blossom, v, cur_base, u);
                mark_path(&base, &mut parent, mate, &mut in_blossom, u, cur_base, v);
                for i in 0..n {
                    if in_blossom[base[i]] {
                        base[i] = cur_base;
                        if !used[i] {
                            used[i] = true;
                            queue.push_back(i);
                        }
                    }
                }
            } else if parent[u].is_none() {
                parent[u] = Some(v);
                match mate[u] {
                    None => {
                        // Augmenting path found: flip matched edges back to
                        // the root.
                        let mut cur = u;
                        loop {
                            let pv = parent[cur].expect("path leads back to the root");
                            let next = mate[pv];
                            mate[cur] = Some(pv);
                            mate[pv] = Some(cur);
                            match next {
                                Some(nx) => cur = nx,
                                None => return true,
                            }
                        }
                    }
                    Some(m) => {
                        if !used[m] {
                            used[m] = true;
                            queue.push_back(m);
                        }
                    }
                }
            }
        }
    }
    false
}

/// Structural decomposition of maximum matchings: `d_components` are the
/// components of the set of vertices some maximum matching misses, `a` is
/// that set's outside neighborhood, `c` is everything else.
#[derive(Debug, Clone)]
pub struct GallaiEdmonds {
    pub nu: usize,
    pub d_components: Vec<Vec<usize>>,
    pub a: Vec<usize>,
    pub c: Vec<usize>,
}

pub fn gallai_edmonds(g: &Graph) -> GallaiEdmonds {
    let n = g.n();
    let nu = matching_number(g);
    let mut in_d = vec![false; n];
    for v in 0..n {
        let others: Vec<usize> = (0..n).filter(|&u| u != v).collect();
        if matching_number(&g.induced(&others)) == nu {
            in_d[v] = true;
        }
    }
    let adj = g.adjacency();
    let mut a = Vec::new();
    let mut c = Vec::new();
    for v in 0..n {
        if in_d[v] {
            continue;
        }
        if adj[v].iter().any(|&u| in_d[u]) {
            a.push(v);
        } else {
            c.push(v);
        }
    }
    let mut seen = vec![false; n];
    let mut d_components = Vec::new();
    for v in 0..n {
        if !in_d[v] || seen[v] {
            continue;
        }
        let mut comp = vec![v];
        seen[v] = true;
        let mut head = 0;
        while head < comp.len() {
            let u = comp[head];
            head += 1;
            for &w in &adj[u] {
                if in_d[w] && !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        d_components.push(comp);
    }

    // The decomposition's structure theorem, checked outright.
    for comp in &d_components {
        assert!(comp.len() % 2 == 1, "missed-vertex components must be odd");
        let target = (comp.len() - 1) / 2;
        for &v in comp {
            let others: Vec<usize> = comp.iter().copied().filter(|&u| u != v).collect();
            assert_eq!(
                matching_number(&g.induced(&others)),
                target,
                "missed-vertex components must be factor-critical"
            );
        }
    }
    assert_eq!(
        matching_number(&g.induced(&c)) * 2,
        c.len(),
        "the untouched part must have a perfect matching"
    );
    assert_eq!(
        2 * nu,
        n - d_components.len() + a.len(),
        "matching number must match the decomposition"
    );

    GallaiEdmonds {
        nu,
        d_components,
        a,
        c,
    }
}

/// Exact number of perfect matchings. Balanced bipartite inputs are routed
/// through the spanning-tree sieve; everything else is counted by branching
/// on the lowest unmatched vertex.
pub fn count_pm_general(g: &Graph) -> Result<BigInt, MatchingError> {
    let n = g.n();
    if n % 2 == 1 {
        return Ok(BigInt::zero());
    }
    if n == 0 {
        return Ok(BigInt::one());
    }
    if let Ok((p1, p2)) = g.bipartition() {
        if p1.len() != p2.len() {
            return Ok(BigInt::zero());
        }
        return crate::apps::count_pm_bipartite(g)
            .map_err(|e| MatchingError::Internal(e.to_string()));
    }
    if n > 64 {
        return Err(MatchingError::TooLarge(n));
    }
    let mut nbr = vec![0u64; n];
    for e in g.edges() {
        nbr[e.tail] |= 1 << e.head;
        nbr[e.head] |= 1 << e.tail;
    }
    fn branch(nbr: &[u64], alive: u64) -> BigInt {
        if alive == 0 {
            return BigInt::one();
        }
        let v = alive.trailing_zeros() as usize;
        let rest = alive & !(1 << v);
        let mut candidates = nbr[v] & rest;
        let mut total = BigInt::zero();
        while candidates != 0 {
            let u = candidates.trailing_zeros() as usize;
            candidates &= candidates - 1;
            total += branch(nbr, rest & !(1 << u));
        }
        total
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    Ok(branch(&nbr, full))
}

/// For a factor-critical graph: the perfect-matching count of every
/// single-vertex deletion, plus their total. Errors when some deletion has
/// no perfect matching.
pub fn near_pm_weights(g: &Graph) -> Result<(BigInt, Vec<BigInt>), MatchingError> {
    let n = g.n();
    let mut per_vertex = Vec::with_capacity(n);
    for v in 0..n {
        let others: Vec<usize> = (0..n).filter(|&u| u != v).collect();
        let count = count_pm_general(&g.induced(&others))?;
        if count.is_zero() {
            return Err(MatchingError::NotFactorCritical(v));
        }
        per_vertex.push(count);
    }
    let total = per_vertex.iter().sum();
    Ok((total, per_vertex))
}
