//! Brute-force reference counters. Everything here enumerates objects
//! explicitly and is deliberately independent of the algebraic machinery it
//! is used to check; size guards reject inputs beyond desk scale.

use itertools::Itertools;
use num_bigint::BigInt;
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("input too large for brute force: {0} exceeds {1}")]
    TooLarge(usize, usize),
    #[error("{0}")]
    Invalid(String),
}

pub const MAX_TREE_VERTICES: usize = 10;
pub const MAX_PATH_VERTICES: usize = 12;
pub const MAX_MATCHING_VERTICES: usize = 14;
pub const MAX_PERMANENT_SIDE: usize = 20;
pub const MAX_COVER_VERTICES: usize = 12;

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    /// Returns false when both endpoints were already connected.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Number of spanning trees, by enumerating all edge subsets of size
/// `n - 1` and keeping the acyclic ones.
pub fn spanning_trees(g: &Graph) -> Result<BigInt, OracleError> {
    let n = g.n();
    if n > MAX_TREE_VERTICES {
        return Err(OracleError::TooLarge(n, MAX_TREE_VERTICES));
    }
    if n <= 1 {
        return Ok(BigInt::from(1));
    }
    let mut count = 0u64;
    for subset in (0..g.edges().len()).combinations(n - 1) {
        let mut dsu = Dsu::new(n);
        if subset
            .iter()
            .all(|&j| dsu.union(g.edges()[j].tail, g.edges()[j].head))
        {
            count += 1;
        }
    }
    Ok(BigInt::from(count))
}

/// Number of spanning in-arborescences rooted at `root`: spanning trees of
/// the underlying graph in which every non-root vertex has in-degree
/// exactly one.
pub fn in_arborescences(g: &Graph, root: usize) -> Result<BigInt, OracleError> {
    if !g.directed() {
        return Err(OracleError::Invalid(
            "arborescence counting needs a directed graph".into(),
        ));
    }
    let n = g.n();
    if n > MAX_TREE_VERTICES {
        return Err(OracleError::TooLarge(n, MAX_TREE_VERTICES));
    }
    if n <= 1 {
        return Ok(BigInt::from(1));
    }
    let mut count = 0u64;
    for subset in (0..g.edges().len()).combinations(n - 1) {
        let mut indeg = vec![0usize; n];
        let mut dsu = Dsu::new(n);
        let mut ok = true;
        for &j in &subset {
            let e = g.edges()[j];
            indeg[e.head] += 1;
            if !dsu.union(e.tail, e.head) {
                ok = false;
                break;
            }
        }
        if ok && indeg[root] == 0 && (0..n).all(|v| v == root || indeg[v] == 1) {
            count += 1;
        }
    }
    Ok(BigInt::from(count))
}

/// Number of Hamiltonian paths from `s` to `t`, by backtracking. Respects
/// edge directions on directed graphs.
pub fn ham_paths(g: &Graph, s: usize, t: usize) -> Result<BigInt, OracleError> {
    let n = g.n();
    if n > MAX_PATH_VERTICES {
        return Err(OracleError::TooLarge(n, MAX_PATH_VERTICES));
    }
    if s >= n || t >= n {
        return Err(OracleError::Invalid("endpoint out of range".into()));
    }
    if n == 0 {
        return Ok(BigInt::from(0));
    }
    let adj = if g.directed() {
        g.out_adjacency()
    } else {
        g.adjacency()
    };
    fn walk(adj: &[Vec<usize>], visited: &mut [bool], at: usize, t: usize, left: usize) -> u64 {
        if left == 0 {
            return (at == t) as u64;
        }
        let mut count = 0;
        for &v in &adj[at] {
            if !visited[v] {
                visited[v] = true;
                count += walk(adj, visited, v, t, left - 1);
                visited[v] = false;
            }
        }
        count
    }
    let mut visited = vec![false; n];
    visited[s] = true;
    Ok(BigInt::from(walk(&adj, &mut visited, s, t, n - 1)))
}

/// Perfect-matching counts of every induced subgraph, indexed by vertex
/// bitmask: `pm[mask]` counts perfect matchings of the subgraph on `mask`.
fn pm_table(g: &Graph) -> Vec<u64> {
    let n = g.n();
    let mut nbr = vec![0u32; n];
    for e in g.edges() {
        nbr[e.tail] |= 1 << e.head;
        nbr[e.head] |= 1 << e.tail;
    }
    let mut pm = vec![0u64; 1 << n];
    pm[0] = 1;
    for mask in 1u32..(1 << n) as u32 {
        let v = mask.trailing_zeros() as usize;
        let mut others = nbr[v] & mask & !(1 << v);
        let mut total = 0u64;
        while others != 0 {
            let u = others.trailing_zeros();
            total += pm[(mask & !(1 << v) & !(1 << u)) as usize];
            others &= others - 1;
        }
        pm[mask as usize] = total;
    }
    pm
}

/// Number of matchings with exactly `k` edges.
pub fn matchings_of_size(g: &Graph, k: usize) -> Result<BigInt, OracleError> {
    let n = g.n();
    if n > MAX_MATCHING_VERTICES {
        return Err(OracleError::TooLarge(n, MAX_MATCHING_VERTICES));
    }
    if 2 * k > n {
        return Ok(BigInt::from(0));
    }
    let pm = pm_table(g);
    let total: u64 = (0..1u32 << n)
        .filter(|m| m.count_ones() as usize == 2 * k)
        .map(|m| pm[m as usize])
        .sum();
    Ok(BigInt::from(total))
}

/// Number of perfect matchings.
pub fn perfect_matchings(g: &Graph) -> Result<BigInt, OracleError> {
    let n = g.n();
    if n > MAX_MATCHING_VERTICES {
        return Err(OracleError::TooLarge(n, MAX_MATCHING_VERTICES));
    }
    let pm = pm_table(g);
    Ok(BigInt::from(pm[(1usize << n) - 1]))
}

/// Matching number and the count of maximum matchings.
pub fn maximum_matchings(g: &Graph) -> Result<(usize, BigInt), OracleError> {
    let n = g.n();
    if n > MAX_MATCHING_VERTICES {
        return Err(OracleError::TooLarge(n, MAX_MATCHING_VERTICES));
    }
    let pm = pm_table(g);
    let nu = (0..1u32 << n)
        .filter(|&m| pm[m as usize] > 0)
        .map(|m| m.count_ones() as usize / 2)
        .max()
        .unwrap_or(0);
    let total: u64 = (0..1u32 << n)
        .filter(|m| m.count_ones() as usize == 2 * nu)
        .map(|m| pm[m as usize])
        .sum();
    Ok((nu, BigInt::from(total)))
}

/// Permanent of a square 0/1 matrix by Ryser's inclusion-exclusion with a
/// Gray-code walk over column subsets.
pub fn permanent_ryser(rows: &[Vec<u64>]) -> Result<BigInt, OracleError> {
    let n = rows.len();
    if n > MAX_PERMANENT_SIDE {
        return Err(OracleError::TooLarge(n, MAX_PERMANENT_SIDE));
    }
    for r in rows {
        if r.len() != n {
            return Err(OracleError::Invalid("matrix must be square".into()));
        }
        if r.iter().any(|&v| v > 1) {
            return Err(OracleError::Invalid("entries must be 0 or 1".into()));
        }
    }
    if n == 0 {
        return Ok(BigInt::from(1));
    }
    let mut row_sums = vec![0i128; n];
    let mut total = 0i128;
    let mut prev = 0u32;
    for g in 1u32..(1u32 << n) {
        let gray = g ^ (g >> 1);
        let changed = (gray ^ prev).trailing_zeros() as usize;
        let sign_in = gray >> changed & 1 == 1;
        for (i, row) in rows.iter().enumerate() {
            let v = row[changed] as i128;
            if sign_in {
                row_sums[i] += v;
            } else {
                row_sums[i] -= v;
            }
        }
        prev = gray;
        let prod: i128 = row_sums.iter().product();
        if gray.count_ones() % 2 == n as u32 % 2 {
            total += prod;
        } else {
            total -= prod;
        }
    }
    Ok(BigInt::from(total))
}

/// Number of ways to cover all vertices by vertex-disjoint k-stars (a
/// center joined to k-1 leaves; the star is not required to be induced).
/// Covers are sets of star subgraphs: for k ≥ 3 distinct centers give
/// distinct subgraphs, while a 2-star is just its edge.
pub fn kstar_covers(g: &Graph, k: usize) -> Result<BigInt, OracleError> {
    let n = g.n();
    if n > MAX_COVER_VERTICES {
        return Err(OracleError::TooLarge(n, MAX_COVER_VERTICES));
    }
    if k < 2 {
        return Err(OracleError::Invalid("star size must be at least 2".into()));
    }
    if n % k != 0 {
        return Err(OracleError::Invalid(format!(
            "star size {k} does not divide vertex count {n}"
        )));
    }
    let mut nbr = vec![0u32; n];
    for e in g.edges() {
        nbr[e.tail] |= 1 << e.head;
        nbr[e.head] |= 1 << e.tail;
    }
    fn bits(mut m: u32) -> Vec<usize> {
        let mut out = Vec::new();
        while m != 0 {
            out.push(m.trailing_zeros() as usize);
            m &= m - 1;
        }
        out
    }
    fn cover(nbr: &[u32], k: usize, uncovered: u32) -> u64 {
        if uncovered == 0 {
            return 1;
        }
        let v = uncovered.trailing_zeros() as usize;
        let rest = uncovered & !(1 << v);
        let mut total = 0u64;
        if k == 2 {
            for u in bits(nbr[v] & rest) {
                total += cover(nbr, k, rest & !(1 << u));
            }
            return total;
        }
        // v as the center
        for leaves in bits(nbr[v] & rest).into_iter().combinations(k - 1) {
            let mut next = rest;
            for l in leaves {
                next &= !(1 << l);
            }
            total += cover(nbr, k, next);
        }
        // v as a leaf of center c
        for c in bits(nbr[v] & rest) {
            let pool = bits(nbr[c] & rest & !(1 << c));
            for leaves in pool.into_iter().combinations(k - 2) {
                let mut next = rest & !(1 << c);
                for l in leaves {
                    next &= !(1 << l);
                }
                total += cover(nbr, k, next);
            }
        }
        total
    }
    Ok(BigInt::from(cover(&nbr, k, ((1u64 << n) - 1) as u32)))
}
