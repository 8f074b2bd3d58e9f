//! Graph representation, the text file format, and the constructions that
//! turn an input graph into the auxiliary graph whose spanning trees are
//! sieved: bipartite squaring, independent-set contraction, and apex
//! attachment.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("malformed graph file: {0}")]
    Malformed(String),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("declared bipartition has a non-crossing edge ({0}, {1})")]
    NonCrossingEdge(usize, usize),
    #[error("bipartition is unbalanced ({0} vs {1})")]
    UnbalancedBipartition(usize, usize),
    #[error("{0}")]
    Invalid(String),
}

/// Edge annotation used by the squared/contracted constructions: the middle
/// vertex of the length-two path an edge stands for, or a synthetic tag
/// distinguishing parallel copies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum EdgeLabel {
    Vertex(usize),
    Tag(usize),
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeLabel::Vertex(v) => write!(f, "v{v}"),
            EdgeLabel::Tag(t) => write!(f, "t{t}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    pub label: Option<EdgeLabel>,
}

/// A finite graph on vertices `0..n`, directed or undirected, with optional
/// edge labels and an optional bipartition.
///
/// Invariants enforced at construction: endpoints in range and distinct,
/// `(tail, head, label)` triples unique, undirected edges normalized to
/// `tail < head`, edges sorted by `(tail, head, label)`, and every edge
/// crossing the bipartition when one is present.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    directed: bool,
    edges: Vec<Edge>,
    part1: Option<BTreeSet<usize>>,
}

impl Graph {
    pub fn new(n: usize, directed: bool, pairs: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let edges: Vec<Edge> = pairs
            .iter()
            .map(|&(u, v)| Edge {
                tail: u,
                head: v,
                label: None,
            })
            .collect();
        Graph::with_edges(n, directed, edges)
    }

    pub fn with_edges(n: usize, directed: bool, edges: Vec<Edge>) -> Result<Graph, GraphError> {
        let mut g = Graph {
            n,
            directed,
            edges,
            part1: None,
        };
        g.normalize()?;
        Ok(g)
    }

    fn normalize(&mut self) -> Result<(), GraphError> {
        for e in &mut self.edges {
            if e.tail >= self.n {
                return Err(GraphError::VertexOutOfRange(e.tail));
            }
            if e.head >= self.n {
                return Err(GraphError::VertexOutOfRange(e.head));
            }
            if e.tail == e.head {
                return Err(GraphError::SelfLoop(e.tail));
            }
            if !self.directed && e.tail > e.head {
                std::mem::swap(&mut e.tail, &mut e.head);
            }
        }
        self.edges.sort();
        for w in self.edges.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateEdge(w[0].tail, w[0].head));
            }
        }
        Ok(())
    }

    /// Attaches an explicit bipartition; every edge must cross it.
    pub fn set_bipartition(&mut self, part1: BTreeSet<usize>) -> Result<(), GraphError> {
        if let Some(&v) = part1.iter().find(|&&v| v >= self.n) {
            return Err(GraphError::VertexOutOfRange(v));
        }
        for e in &self.edges {
            if part1.contains(&e.tail) == part1.contains(&e.head) {
                return Err(GraphError::NonCrossingEdge(e.tail, e.head));
            }
        }
        self.part1 = Some(part1);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn directed(&self) -> bool {
        self.directed
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn declared_part1(&self) -> Option<&BTreeSet<usize>> {
        self.part1.as_ref()
    }

    /// Neighbor lists of the underlying undirected graph, sorted ascending.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.tail].push(e.head);
            adj[e.head].push(e.tail);
        }
        for l in &mut adj {
            l.sort_unstable();
            l.dedup();
        }
        adj
    }

    /// Out-neighbor lists (directed graphs), sorted ascending.
    pub fn out_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.tail].push(e.head);
        }
        for l in &mut adj {
            l.sort_unstable();
            l.dedup();
        }
        adj
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if self.directed {
            self.edges.iter().any(|e| e.tail == u && e.head == v)
        } else {
            let (a, b) = (u.min(v), u.max(v));
            self.edges.iter().any(|e| e.tail == a && e.head == b)
        }
    }

    /// The bipartition: the declared one if present, otherwise a 2-coloring
    /// computed by BFS, placing the smallest-index vertex of every connected
    /// component in part 1. Directed graphs are colored on their underlying
    /// undirected graph.
    pub fn bipartition(&self) -> Result<(BTreeSet<usize>, BTreeSet<usize>), GraphError> {
        if let Some(p1) = &self.part1 {
            let p2: BTreeSet<usize> = (0..self.n).filter(|v| !p1.contains(v)).collect();
            return Ok((p1.clone(), p2.clone()));
        }
        let adj = self.adjacency();
        let mut color = vec![None; self.n];
        for start in 0..self.n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for &v in &adj[u] {
                    match color[v] {
                        None => {
                            color[v] = Some(!cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return Err(GraphError::NotBipartite),
                        _ => {}
                    }
                }
            }
        }
        let p1 = (0..self.n).filter(|&v| color[v] == Some(false)).collect();
        let p2 = (0..self.n).filter(|&v| color[v] == Some(true)).collect();
        Ok((p1, p2))
    }

    /// Subgraph induced by `verts` (kept in ascending order), with vertices
    /// renumbered accordingly. Labels are dropped.
    pub fn induced(&self, verts: &[usize]) -> Graph {
        let sorted: Vec<usize> = {
            let mut v = verts.to_vec();
            v.sort_unstable();
            v.dedup();
            v
        };
        let index: BTreeMap<usize, usize> =
            sorted.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .filter_map(|e| {
                let t = index.get(&e.tail)?;
                let h = index.get(&e.head)?;
                Some(Edge {
                    tail: *t,
                    head: *h,
                    label: None,
                })
            })
            .collect();
        Graph::with_edges(sorted.len(), self.directed, edges).expect("induced subgraph is valid")
    }
}

/// Parses the text format: first non-comment line `<n> <m> <U|D>`, then `m`
/// lines `u v` with 0-indexed endpoints, optionally one line
/// `P v1 v2 ...` declaring part 1 of a bipartition. Lines starting with `#`
/// are ignored.
pub fn parse_graph(input: &str) -> Result<Graph, GraphError> {
    let mut lines = input
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| GraphError::Malformed("empty input".into()))?;
    let tokens: Vec<&str> = header.split_ascii_whitespace().collect();
    if tokens.len() != 3 {
        return Err(GraphError::Malformed(format!(
            "header must be '<n> <m> <U|D>', got '{header}'"
        )));
    }
    let n: usize = tokens[0]
        .parse()
        .map_err(|_| GraphError::Malformed(format!("bad vertex count '{}'", tokens[0])))?;
    let m: usize = tokens[1]
        .parse()
        .map_err(|_| GraphError::Malformed(format!("bad edge count '{}'", tokens[1])))?;
    let directed = match tokens[2] {
        "U" => false,
        "D" => true,
        other => {
            return Err(GraphError::Malformed(format!(
                "orientation flag must be U or D, got '{other}'"
            )))
        }
    };
    let mut pairs = Vec::with_capacity(m);
    let mut part1: Option<BTreeSet<usize>> = None;
    for line in lines {
        if let Some(rest) = line.strip_prefix('P') {
            if part1.is_some() {
                return Err(GraphError::Malformed("multiple P lines".into()));
            }
            let verts = rest
                .split_ascii_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| GraphError::Malformed(format!("bad P entry '{t}'")))
                })
                .collect::<Result<BTreeSet<usize>, _>>()?;
            part1 = Some(verts);
            continue;
        }
        let tok: Vec<&str> = line.split_ascii_whitespace().collect();
        if tok.len() != 2 {
            return Err(GraphError::Malformed(format!("bad edge line '{line}'")));
        }
        let u: usize = tok[0]
            .parse()
            .map_err(|_| GraphError::Malformed(format!("bad endpoint '{}'", tok[0])))?;
        let v: usize = tok[1]
            .parse()
            .map_err(|_| GraphError::Malformed(format!("bad endpoint '{}'", tok[1])))?;
        pairs.push((u, v));
    }
    if pairs.len() != m {
        return Err(GraphError::Malformed(format!(
            "header declares {m} edges, found {}",
            pairs.len()
        )));
    }
    let mut g = Graph::new(n, directed, &pairs)?;
    if let Some(p1) = part1 {
        g.set_bipartition(p1)?;
    }
    Ok(g)
}

/// Specifies the right-hand factor of the sieved matrix product: the rows it
/// lives on and the column each edge contributes.
#[derive(Debug, Clone)]
pub enum CompanionSpec {
    /// Unweighted oriented incidence: `+1` at the tail row, `-1` at the head
    /// row, root row removed. Rows are `V \ {root}` in vertex order.
    IncidenceOriented,
    /// `+1` at the head row only, root row removed.
    InIncidence,
    /// `+1` at the row of the edge's label; rows are the given label
    /// universe, which must have exactly `n - 1` entries.
    LabelIndicator { rows: Vec<EdgeLabel> },
}

/// Oriented incidence rows of `g` with the root row removed and unit
/// weights: entry `+1` at the tail, `-1` at the head of each edge. Rows are
/// the non-root vertices in ascending order, columns follow edge order.
pub fn incidence_rows(g: &Graph, root: usize) -> Vec<Vec<i64>> {
    let rows: Vec<usize> = (0..g.n()).filter(|&v| v != root).collect();
    let row_of: BTreeMap<usize, usize> = rows.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut m = vec![vec![0i64; g.edges().len()]; rows.len()];
    for (j, e) in g.edges().iter().enumerate() {
        if let Some(&i) = row_of.get(&e.tail) {
            m[i][j] += 1;
        }
        if let Some(&i) = row_of.get(&e.head) {
            m[i][j] -= 1;
        }
    }
    m
}

/// Companion matrix rows per `spec`, same column order as `g.edges()`.
pub fn companion_rows(
    g: &Graph,
    root: usize,
    spec: &CompanionSpec,
) -> Result<Vec<Vec<i64>>, GraphError> {
    let m_edges = g.edges().len();
    match spec {
        CompanionSpec::IncidenceOriented => Ok(incidence_rows(g, root)),
        CompanionSpec::InIncidence => {
            let rows: Vec<usize> = (0..g.n()).filter(|&v| v != root).collect();
            let row_of: BTreeMap<usize, usize> =
                rows.iter().enumerate().map(|(i, &v)| (v, i)).collect();
            let mut m = vec![vec![0i64; m_edges]; rows.len()];
            for (j, e) in g.edges().iter().enumerate() {
                if let Some(&i) = row_of.get(&e.head) {
                    m[i][j] += 1;
                }
            }
            Ok(m)
        }
        CompanionSpec::LabelIndicator { rows } => {
            if rows.len() + 1 != g.n() {
                return Err(GraphError::Invalid(format!(
                    "label universe has {} rows, need {}",
                    rows.len(),
                    g.n() - 1
                )));
            }
            let row_of: BTreeMap<EdgeLabel, usize> =
                rows.iter().enumerate().map(|(i, &l)| (l, i)).collect();
            let mut m = vec![vec![0i64; m_edges]; rows.len()];
            for (j, e) in g.edges().iter().enumerate() {
                let label = e.label.ok_or_else(|| {
                    GraphError::Invalid(format!("edge ({}, {}) has no label", e.tail, e.head))
                })?;
                let i = row_of.get(&label).ok_or_else(|| {
                    GraphError::Invalid(format!("label {label} missing from row universe"))
                })?;
                m[*i][j] += 1;
            }
            Ok(m)
        }
    }
}

/// Result of squaring a bipartite graph through its second part.
#[derive(Debug, Clone)]
pub struct SquaredBipartite {
    /// Graph on part 1 plus the pendant copy of the target; every edge is
    /// labelled by the middle vertex of the length-two path it represents.
    pub h: Graph,
    pub s_h: usize,
    pub t_prime_h: usize,
    /// Original vertex id per H vertex; the pendant vertex reports as `n`.
    pub h_to_orig: Vec<usize>,
    /// Label universe for the companion matrix: part 2 in ascending order.
    pub label_rows: Vec<EdgeLabel>,
}

/// Squares a balanced bipartite graph: attaches a pendant vertex `t'` to
/// `t`, then forms the graph on part 1 ∪ {t'} whose edges are the
/// length-two paths of the input, each labelled by its middle vertex.
/// Directed inputs yield directed length-two paths.
///
/// `s` and `t` must lie in opposite parts; part names are chosen so that
/// `s` sits on the squared side.
pub fn square_bipartite(g: &Graph, s: usize, t: usize) -> Result<SquaredBipartite, GraphError> {
    if s >= g.n() || t >= g.n() {
        return Err(GraphError::VertexOutOfRange(s.max(t)));
    }
    if s == t {
        return Err(GraphError::Invalid("source equals target".into()));
    }
    let (p1, p2) = g.bipartition()?;
    let (side1, side2) = if p1.contains(&s) && p2.contains(&t) {
        (p1, p2)
    } else if p2.contains(&s) && p1.contains(&t) {
        (p2, p1)
    } else {
        return Err(GraphError::Invalid(
            "source and target must lie in opposite parts".into(),
        ));
    };
    if side1.len() != side2.len() {
        return Err(GraphError::UnbalancedBipartition(side1.len(), side2.len()));
    }

    let t_prime_orig = g.n();
    let mut h_to_orig: Vec<usize> = side1.iter().copied().collect();
    h_to_orig.push(t_prime_orig);
    let h_index: BTreeMap<usize, usize> = h_to_orig
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();

    let mut edges = Vec::new();
    if g.directed() {
        let mut ins = vec![Vec::new(); g.n()];
        let mut outs = vec![Vec::new(); g.n()];
        for e in g.edges() {
            outs[e.tail].push(e.head);
            ins[e.head].push(e.tail);
        }
        for &w in &side2 {
            // The pendant arc t -> t' extends every path arriving at t.
            let mut targets: Vec<usize> = outs[w].clone();
            if w == t {
                targets.push(t_prime_orig);
            }
            for &u in &ins[w] {
                for &v in &targets {
                    if u == v {
                        continue;
                    }
                    edges.push(Edge {
                        tail: h_index[&u],
                        head: h_index[&v],
                        label: Some(EdgeLabel::Vertex(w)),
                    });
                }
            }
        }
    } else {
        let adj = g.adjacency();
        for &w in &side2 {
            let mut around: Vec<usize> = adj[w].clone();
            if w == t {
                around.push(t_prime_orig);
            }
            for i in 0..around.len() {
                for j in i + 1..around.len() {
                    edges.push(Edge {
                        tail: h_index[&around[i]],
                        head: h_index[&around[j]],
                        label: Some(EdgeLabel::Vertex(w)),
                    });
                }
            }
        }
    }

    let h = Graph::with_edges(h_to_orig.len(), g.directed(), edges)?;
    let label_rows: Vec<EdgeLabel> = side2.iter().map(|&w| EdgeLabel::Vertex(w)).collect();
    Ok(SquaredBipartite {
        h,
        s_h: h_index[&s],
        t_prime_h: h_index[&t_prime_orig],
        h_to_orig,
        label_rows,
    })
}

/// Result of contracting an independent set out of a graph.
#[derive(Debug, Clone)]
pub struct ContractedIndependent {
    /// Graph on `V \ V0`: length-two paths through `V0` become edges
    /// labelled by their middle vertex, and every surviving original edge is
    /// replicated into `copies` parallel edges with distinct tags.
    pub h: Graph,
    pub s_h: usize,
    pub t_h: usize,
    pub h_to_orig: Vec<usize>,
    pub copies: usize,
    /// Label universe: `V0` in ascending order, then tags `1..=copies`.
    pub label_rows: Vec<EdgeLabel>,
}

/// Contracts the independent set `v0` out of `g`: vertices of `v0`
/// disappear, length-two paths through them become labelled edges, and each
/// remaining original edge is replicated `|V \ V0| - |V0| - 1` times with
/// synthetic tags. Errors when `v0` is not independent, touches `s`/`t`, or
/// is too large for the replication count to be nonnegative.
pub fn contract_independent(
    g: &Graph,
    v0: &BTreeSet<usize>,
    s: usize,
    t: usize,
) -> Result<ContractedIndependent, GraphError> {
    if s >= g.n() || t >= g.n() {
        return Err(GraphError::VertexOutOfRange(s.max(t)));
    }
    if s == t {
        return Err(GraphError::Invalid("source equals target".into()));
    }
    if let Some(&v) = v0.iter().find(|&&v| v >= g.n()) {
        return Err(GraphError::VertexOutOfRange(v));
    }
    if v0.contains(&s) || v0.contains(&t) {
        return Err(GraphError::Invalid(
            "source and target must avoid the contracted set".into(),
        ));
    }
    for e in g.edges() {
        if v0.contains(&e.tail) && v0.contains(&e.head) {
            return Err(GraphError::Invalid(format!(
                "set is not independent: edge ({}, {})",
                e.tail, e.head
            )));
        }
    }
    let h_to_orig: Vec<usize> = (0..g.n()).filter(|v| !v0.contains(v)).collect();
    let h_n = h_to_orig.len();
    if h_n < v0.len() + 1 {
        return Err(GraphError::Invalid(format!(
            "contracted set too large: {} survivors for {} contracted vertices",
            h_n,
            v0.len()
        )));
    }
    let copies = h_n - v0.len() - 1;
    let h_index: BTreeMap<usize, usize> = h_to_orig
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();

    let mut edges = Vec::new();
    if g.directed() {
        let mut ins = vec![Vec::new(); g.n()];
        let mut outs = vec![Vec::new(); g.n()];
        for e in g.edges() {
            outs[e.tail].push(e.head);
            ins[e.head].push(e.tail);
        }
        for &w in v0 {
            for &u in &ins[w] {
                for &v in &outs[w] {
                    if u == v {
                        continue;
                    }
                    edges.push(Edge {
                        tail: h_index[&u],
                        head: h_index[&v],
                        label: Some(EdgeLabel::Vertex(w)),
                    });
                }
            }
        }
    } else {
        let adj = g.adjacency();
        for &w in v0 {
            let around = &adj[w];
            for i in 0..around.len() {
                for j in i + 1..around.len() {
                    edges.push(Edge {
                        tail: h_index[&around[i]],
                        head: h_index[&around[j]],
                        label: Some(EdgeLabel::Vertex(w)),
                    });
                }
            }
        }
    }
    for e in g.edges() {
        let (Some(&u), Some(&v)) = (h_index.get(&e.tail), h_index.get(&e.head)) else {
            continue;
        };
        for c in 1..=copies {
            edges.push(Edge {
                tail: u,
                head: v,
                label: Some(EdgeLabel::Tag(c)),
            });
        }
    }

    let h = Graph::with_edges(h_n, g.directed(), edges)?;
    let mut label_rows: Vec<EdgeLabel> = v0.iter().map(|&w| EdgeLabel::Vertex(w)).collect();
    label_rows.extend((1..=copies).map(EdgeLabel::Tag));
    Ok(ContractedIndependent {
        h,
        s_h: h_index[&s],
        t_h: h_index[&t],
        h_to_orig,
        copies,
        label_rows,
    })
}

/// `g` plus a fresh apex vertex (index `g.n()`) adjacent to every vertex of
/// `hub`. Undirected graphs only.
pub fn attach_apex(g: &Graph, hub: &BTreeSet<usize>) -> Result<(Graph, usize), GraphError> {
    assert!(!g.directed(), "apex attachment is an undirected construction");
    if let Some(&v) = hub.iter().find(|&&v| v >= g.n()) {
        return Err(GraphError::VertexOutOfRange(v));
    }
    let apex = g.n();
    let mut edges = g.edges().to_vec();
    for &v in hub {
        edges.push(Edge {
            tail: v,
            head: apex,
            label: None,
        });
    }
    let h = Graph::with_edges(g.n() + 1, false, edges)?;
    Ok((h, apex))
}

/// Deterministic graph families and seeded random graphs, used throughout
/// the test corpus.
pub mod gen {
    use super::{Edge, Graph};
    use rand::Rng;

    pub fn path(n: usize) -> Graph {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, false, &pairs).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        let mut pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        pairs.push((n - 1, 0));
        Graph::new(n, false, &pairs).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                pairs.push((u, v));
            }
        }
        Graph::new(n, false, &pairs).unwrap()
    }

    /// K_{a,b} with part 1 = 0..a.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut pairs = Vec::new();
        for u in 0..a {
            for v in 0..b {
                pairs.push((u, a + v));
            }
        }
        let mut g = Graph::new(a + b, false, &pairs).unwrap();
        g.set_bipartition((0..a).collect()).unwrap();
        g
    }

    /// Star with center 0 and `n - 1` leaves.
    pub fn star(n: usize) -> Graph {
        assert!(n >= 1);
        let pairs: Vec<_> = (1..n).map(|v| (0, v)).collect();
        Graph::new(n, false, &pairs).unwrap()
    }

    pub fn directed_path(n: usize) -> Graph {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, true, &pairs).unwrap()
    }

    pub fn directed_cycle(n: usize) -> Graph {
        assert!(n >= 2);
        let mut pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        pairs.push((n - 1, 0));
        Graph::new(n, true, &pairs).unwrap()
    }

    /// Complete graph with both arcs on every vertex pair.
    pub fn bidirected_complete(n: usize) -> Graph {
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    pairs.push((u, v));
                }
            }
        }
        Graph::new(n, true, &pairs).unwrap()
    }

    /// Both arcs of every K_{a,b} edge.
    pub fn bidirected_complete_bipartite(a: usize, b: usize) -> Graph {
        let mut pairs = Vec::new();
        for u in 0..a {
            for v in 0..b {
                pairs.push((u, a + v));
                pairs.push((a + v, u));
            }
        }
        Graph::new(a + b, true, &pairs).unwrap()
    }

    /// Erdős–Rényi graph: each pair independently with probability `p`.
    pub fn random_graph(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    pairs.push((u, v));
                }
            }
        }
        Graph::new(n, false, &pairs).unwrap()
    }

    /// Connected graph: a uniformly random spanning tree (random attachment)
    /// plus each remaining pair independently with probability `extra`.
    pub fn random_connected(n: usize, extra: f64, rng: &mut impl Rng) -> Graph {
        assert!(n >= 1);
        let mut edges = std::collections::BTreeSet::new();
        for v in 1..n {
            let u = rng.gen_range(0..v);
            edges.insert((u, v));
        }
        for u in 0..n {
            for v in u + 1..n {
                if !edges.contains(&(u, v)) && rng.gen_bool(extra) {
                    edges.insert((u, v));
                }
            }
        }
        let pairs: Vec<_> = edges.into_iter().collect();
        Graph::new(n, false, &pairs).unwrap()
    }

    /// Each ordered pair independently with probability `p`.
    pub fn random_digraph(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if u != v && rng.gen_bool(p) {
                    pairs.push((u, v));
                }
            }
        }
        Graph::new(n, true, &pairs).unwrap()
    }

    /// Bipartite graph with parts 0..a and a..a+b, each cross pair
    /// independently with probability `p`; the bipartition is declared.
    pub fn random_bipartite(a: usize, b: usize, p: f64, rng: &mut impl Rng) -> Graph {
        let mut pairs = Vec::new();
        for u in 0..a {
            for v in 0..b {
                if rng.gen_bool(p) {
                    pairs.push((u, a + v));
                }
            }
        }
        let mut g = Graph::new(a + b, false, &pairs).unwrap();
        g.set_bipartition((0..a).collect()).unwrap();
        g
    }

    /// Relabels vertices by a random permutation (labels are dropped).
    pub fn shuffled(g: &Graph, rng: &mut impl Rng) -> (Graph, Vec<usize>) {
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rng.gen_range(0..=i);
            perm.swap(i, j);
        }
        let edges: Vec<Edge> = g
            .edges()
            .iter()
            .map(|e| Edge {
                tail: perm[e.tail],
                head: perm[e.head],
                label: None,
            })
            .collect();
        (
            Graph::with_edges(n, g.directed(), edges).unwrap(),
            perm,
        )
    }
}
