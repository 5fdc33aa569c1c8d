//! The edge filtration of a symmetric matrix and its graph snapshots.
//!
//! Vertex pairs are sorted by increasing matrix entry, ties broken
//! lexicographically by `(i, j)`. The graph at density `p` holds the first
//! `round(p · n(n-1)/2)` pairs of that order, rounding half up.

use crate::error::{Error, Result};
use crate::matrix::SymmetricMatrix;
use std::collections::VecDeque;

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeFiltration {
    n: usize,
    order: Vec<(usize, usize)>,
}

impl EdgeFiltration {
    pub fn n(&self) -> usize {
        self.n
    }

    /// All `n(n-1)/2` pairs `(i, j)` with `i < j`, in insertion order.
    pub fn order(&self) -> &[(usize, usize)] {
        &self.order
    }

    pub fn pair_count(&self) -> usize {
        self.order.len()
    }

    /// Edge count for a target density, `floor(p · C + 1/2)`.
    pub fn edges_at_density(&self, p: f64) -> Result<usize> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!(
                "density must lie in [0, 1], got {p}"
            )));
        }
        let m = (p * self.pair_count() as f64 + 0.5).floor() as usize;
        Ok(m.min(self.pair_count()))
    }

    /// Graph on the first `m` edges of the order.
    pub fn graph_with_edges(&self, m: usize) -> Result<Graph> {
        if m > self.pair_count() {
            return Err(Error::InvalidParameter(format!(
                "edge count {m} exceeds {} pairs",
                self.pair_count()
            )));
        }
        let mut g = Graph::empty(self.n);
        for &(i, j) in &self.order[..m] {
            g.push_edge(i, j);
        }
        g.set_pair_count(self.pair_count());
        Ok(g)
    }
}

pub fn build_filtration(m: &SymmetricMatrix) -> Result<EdgeFiltration> {
    let n = m.n();
    if n < 2 {
        return Err(Error::InvalidMatrix(format!(
            "need at least 2 vertices, got {n}"
        )));
    }
    let mut entries: Vec<(f64, usize, usize)> = Vec::with_capacity(n * (n - 1) / 2);
    for (i, j, v) in m.upper_entries() {
        if !v.is_finite() {
            return Err(Error::InvalidMatrix(format!("entry ({i}, {j}) is {v}")));
        }
        entries.push((v, i, j));
    }
    // `upper_entries` yields pairs lexicographically and the sort is stable,
    // which realizes the (i, j) tie-break.
    entries.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(EdgeFiltration {
        n,
        order: entries.into_iter().map(|(_, i, j)| (i, j)).collect(),
    })
}

pub fn graph_at_density(f: &EdgeFiltration, p: f64) -> Result<Graph> {
    f.graph_with_edges(f.edges_at_density(p)?)
}

/// Simple undirected graph snapshot. Equality compares vertex count and edge
/// set, ignoring insertion order.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    pair_count: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adjacency: vec![Vec::new(); n],
            pair_count: n * n.saturating_sub(1) / 2,
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for i in 0..n {
            for j in (i + 1)..n {
                g.push_edge(i, j);
            }
        }
        g
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(a, b) in edges {
            if a >= n || b >= n || a == b {
                return Err(Error::InvalidInput(format!(
                    "bad edge ({a}, {b}) for n = {n}"
                )));
            }
            if g.adjacency[a].contains(&b) {
                return Err(Error::InvalidInput(format!("duplicate edge ({a}, {b})")));
            }
            g.push_edge(a.min(b), a.max(b));
        }
        Ok(g)
    }

    fn push_edge(&mut self, i: usize, j: usize) {
        self.edges.push((i, j));
        self.adjacency[i].push(j);
        self.adjacency[j].push(i);
    }

    fn set_pair_count(&mut self, pairs: usize) {
        self.pair_count = pairs;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges as `(i, j)` with `i < j`, in insertion order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    /// Realized edge density `|E| / C(n, 2)`.
    pub fn density(&self) -> f64 {
        if self.pair_count == 0 {
            0.0
        } else {
            self.edges.len() as f64 / self.pair_count as f64
        }
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        // scan the shorter list
        let (x, y) = if self.degree(a) <= self.degree(b) {
            (a, b)
        } else {
            (b, a)
        };
        self.adjacency[x].contains(&y)
    }

    /// Row-major 0/1 adjacency matrix.
    pub fn dense_adjacency(&self) -> Vec<u8> {
        let mut out = vec![0u8; self.n * self.n];
        for &(i, j) in &self.edges {
            out[i * self.n + j] = 1;
            out[j * self.n + i] = 1;
        }
        out
    }

    /// Edge set as sorted pairs, for set comparisons.
    pub fn sorted_edges(&self) -> Vec<(usize, usize)> {
        let mut e = self.edges.clone();
        e.sort_unstable();
        e
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.sorted_edges() == other.sorted_edges()
    }
}

impl Eq for Graph {}

/// Incremental snapshots at increasing edge counts.
pub struct PrefixStream<'a> {
    filtration: &'a EdgeFiltration,
    checkpoints: std::vec::IntoIter<usize>,
    current: Graph,
}

impl Iterator for PrefixStream<'_> {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        let target = self.checkpoints.next()?;
        let order = self.filtration.order();
        for &(i, j) in &order[self.current.edge_count()..target] {
            self.current.push_edge(i, j);
        }
        Some(self.current.clone())
    }
}

/// Yields the graph at each checkpoint edge count, inserting edges
/// incrementally. Checkpoints must be non-decreasing and at most `C(n, 2)`.
pub fn stream_prefixes<'a>(
    f: &'a EdgeFiltration,
    checkpoints: &[usize],
) -> Result<PrefixStream<'a>> {
    if let Some(w) = checkpoints.windows(2).find(|w| w[0] > w[1]) {
        return Err(Error::InvalidParameter(format!(
            "checkpoints must be sorted, found {} before {}",
            w[0], w[1]
        )));
    }
    if let Some(&last) = checkpoints.last() {
        if last > f.pair_count() {
            return Err(Error::InvalidParameter(format!(
                "checkpoint {last} exceeds {} pairs",
                f.pair_count()
            )));
        }
    }
    let mut current = Graph::empty(f.n());
    current.set_pair_count(f.pair_count());
    Ok(PrefixStream {
        filtration: f,
        checkpoints: Vec::from(checkpoints).into_iter(),
        current,
    })
}

struct DisjointSets {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

pub fn count_components(g: &Graph) -> usize {
    let mut sets = DisjointSets::new(g.n());
    let merges = g.edges().iter().filter(|&&(a, b)| sets.union(a, b)).count();
    g.n() - merges
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    A,
    B,
    Unassigned,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition2 {
    pub side: Vec<Side>,
    pub bipartite: bool,
}

impl Partition2 {
    pub fn members(&self, side: Side) -> Vec<usize> {
        (0..self.side.len())
            .filter(|&v| self.side[v] == side)
            .collect()
    }
}

/// Breadth-first two-coloring, one component at a time, starting each
/// component on side `A`. Stops at the first conflict; components finished
/// before it keep their labels and everything else is left unassigned.
pub fn check_bipartite(g: &Graph) -> Partition2 {
    let n = g.n();
    let mut side = vec![Side::Unassigned; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        if side[root] != Side::Unassigned {
            continue;
        }
        let mut component = vec![root];
        side[root] = Side::A;
        queue.clear();
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            let other = if side[u] == Side::A { Side::B } else { Side::A };
            for &w in g.neighbors(u) {
                if side[w] == Side::Unassigned {
                    side[w] = other;
                    component.push(w);
                    queue.push_back(w);
                } else if side[w] == side[u] {
                    for v in component {
                        side[v] = Side::Unassigned;
                    }
                    return Partition2 {
                        side,
                        bipartite: false,
                    };
                }
            }
        }
    }
    Partition2 {
        side,
        bipartite: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::{sample_gaussian_symmetric, sample_wishart_rank_one};
    use crate::rng::Seed;

    fn three_by_three() -> SymmetricMatrix {
        SymmetricMatrix::from_rows(&[
            vec![0.0, 0.3, 0.1],
            vec![0.3, 0.0, 0.2],
            vec![0.1, 0.2, 0.0],
        ])
        .unwrap()
    }

    #[test]
    fn orders_by_entry() {
        let f = build_filtration(&three_by_three()).unwrap();
        assert_eq!(f.order(), &[(0, 2), (1, 2), (0, 1)]);
    }

    #[test]
    fn ties_break_lexicographically() {
        let n = 5;
        let m = SymmetricMatrix::from_fn(n, |i, j| if i == j { 9.0 } else { 1.0 });
        let f = build_filtration(&m).unwrap();
        let expected: Vec<_> = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .collect();
        assert_eq!(f.order(), expected.as_slice());
    }

    #[test]
    fn matches_brute_force_sort() {
        let m = sample_gaussian_symmetric(6, Seed(77)).unwrap();
        let mut triples = Vec::new();
        for i in 0..6 {
            for j in (i + 1)..6 {
                triples.push((m.get(i, j), i, j));
            }
        }
        triples.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let expected: Vec<_> = triples.iter().map(|t| (t.1, t.2)).collect();
        assert_eq!(build_filtration(&m).unwrap().order(), expected.as_slice());
    }

    #[test]
    fn rejects_nan_and_tiny_matrices() {
        let mut m = three_by_three();
        m.set(0, 1, f64::NAN);
        assert!(matches!(build_filtration(&m), Err(Error::InvalidMatrix(_))));
        assert!(build_filtration(&SymmetricMatrix::zeros(1)).is_err());
    }

    #[test]
    fn density_endpoints() {
        let m = sample_gaussian_symmetric(7, Seed(1)).unwrap();
        let f = build_filtration(&m).unwrap();
        let empty = graph_at_density(&f, 0.0).unwrap();
        assert_eq!(empty.edge_count(), 0);
        assert_eq!(empty.n(), 7);
        let full = graph_at_density(&f, 1.0).unwrap();
        assert_eq!(full.edge_count(), 21);
        assert_eq!(full.density(), 1.0);
        assert!(graph_at_density(&f, 1.5).is_err());
        assert!(graph_at_density(&f, -0.1).is_err());
        assert!(graph_at_density(&f, f64::NAN).is_err());
    }

    #[test]
    fn half_density_on_four_vertices_takes_three_smallest() {
        let m = sample_gaussian_symmetric(4, Seed(19)).unwrap();
        let f = build_filtration(&m).unwrap();
        let g = graph_at_density(&f, 0.5).unwrap();
        assert_eq!(g.edge_count(), 3);
        let mut all: Vec<_> = m.upper_entries().collect();
        all.sort_by(|a, b| a.2.partial_cmp(&b.2).unwrap());
        let mut expected: Vec<_> = all[..3].iter().map(|e| (e.0, e.1)).collect();
        expected.sort_unstable();
        assert_eq!(g.sorted_edges(), expected);
    }

    #[test]
    fn rounding_is_half_up() {
        // C(5,2) = 10: p = 0.25 -> 2.5 -> 3 edges, p = 0.24 -> 2.4 -> 2 edges.
        let f = build_filtration(&sample_gaussian_symmetric(5, Seed(0)).unwrap()).unwrap();
        assert_eq!(f.edges_at_density(0.25).unwrap(), 3);
        assert_eq!(f.edges_at_density(0.24).unwrap(), 2);
        assert_eq!(f.edges_at_density(0.05).unwrap(), 1);
    }

    #[test]
    fn prefix_stream_matches_from_scratch() {
        for seed in 0..5 {
            let m = sample_gaussian_symmetric(8, Seed(seed)).unwrap();
            let f = build_filtration(&m).unwrap();
            let checkpoints: Vec<usize> = (0..=f.pair_count()).collect();
            let snapshots: Vec<Graph> = stream_prefixes(&f, &checkpoints).unwrap().collect();
            assert_eq!(snapshots.len(), checkpoints.len());
            for (m, g) in checkpoints.iter().zip(&snapshots) {
                let p = *m as f64 / f.pair_count() as f64;
                assert_eq!(
                    g.sorted_edges(),
                    graph_at_density(&f, p).unwrap().sorted_edges()
                );
            }
        }
    }

    #[test]
    fn prefix_stream_rejects_bad_checkpoints() {
        let f = build_filtration(&three_by_three()).unwrap();
        assert!(stream_prefixes(&f, &[2, 1]).is_err());
        assert!(stream_prefixes(&f, &[0, 4]).is_err());
        let ends: Vec<_> = stream_prefixes(&f, &[0, 3]).unwrap().collect();
        assert_eq!(ends[0].edge_count(), 0);
        assert_eq!(ends[1], Graph::complete(3));
    }

    #[test]
    fn component_counts() {
        assert_eq!(count_components(&Graph::empty(6)), 6);
        assert_eq!(count_components(&Graph::complete(6)), 1);
        let two_triangles =
            Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_eq!(count_components(&two_triangles), 2);
    }

    #[test]
    fn bipartite_checks() {
        let path_tree = Graph::from_edges(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        assert!(check_bipartite(&path_tree).bipartite);
        let triangle = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let p = check_bipartite(&triangle);
        assert!(!p.bipartite);
        assert!(p.side.iter().all(|s| *s == Side::Unassigned));
    }

    #[test]
    fn conflict_keeps_finished_components() {
        // component {0,1} is bipartite; {2,3,4} is a triangle
        let g = Graph::from_edges(5, &[(0, 1), (2, 3), (3, 4), (2, 4)]).unwrap();
        let p = check_bipartite(&g);
        assert!(!p.bipartite);
        assert_eq!(p.side[0], Side::A);
        assert_eq!(p.side[1], Side::B);
        assert_eq!(p.side[2], Side::Unassigned);
    }

    #[test]
    fn wishart_graph_at_cross_count_is_sign_bipartite() {
        let r = sample_wishart_rank_one(40, Seed(31)).unwrap();
        let k = r.negative_count();
        let f = build_filtration(&r.matrix).unwrap();
        let g = f.graph_with_edges(k * (40 - k)).unwrap();
        let part = check_bipartite(&g);
        assert!(part.bipartite);
        for &(a, b) in g.edges() {
            assert!((r.vector[a] < 0.0) != (r.vector[b] < 0.0));
        }
        let negatives: Vec<usize> = (0..40).filter(|&i| r.vector[i] < 0.0).collect();
        let a = part.members(Side::A);
        let b = part.members(Side::B);
        assert!(a == negatives || b == negatives);
    }

    #[test]
    fn degrees_match_edges() {
        let m = sample_gaussian_symmetric(12, Seed(4)).unwrap();
        let f = build_filtration(&m).unwrap();
        for g in stream_prefixes(&f, &[0, 5, 17, 40, 66]).unwrap() {
            assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.edge_count());
            let adj = g.dense_adjacency();
            for v in 0..12 {
                let row: usize = adj[v * 12..(v + 1) * 12].iter().map(|&x| x as usize).sum();
                assert_eq!(row, g.degree(v));
            }
        }
    }
}
