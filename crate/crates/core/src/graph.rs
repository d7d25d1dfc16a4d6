//! Bit-packed simple graphs on at most 64 vertices.
//!
//! Row `v` of the adjacency array is the neighbourhood `N(v)` as a `u64`
//! bitmask, so adjacency tests are a shift and a mask and neighbourhood
//! intersections are a single `&`.

use std::fmt;

use thiserror::Error;

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex count {0} outside 1..=64")]
    VertexCount(usize),
    #[error("loop edge at vertex {0}")]
    Loop(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("adjacency is not symmetric between {0} and {1}")]
    Asymmetric(usize, usize),
    #[error("rotation precondition violated: {0}")]
    Rotation(&'static str),
}

#[inline]
pub(crate) const fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Subset of `{0, .., n-1}` stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vs: I) -> Self {
        VertexSet(vs.into_iter().fold(0u64, |acc, v| acc | (1u64 << v)))
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        VertexSet(low_mask(n))
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < 64 && (self.0 >> v) & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn iter(self) -> BitIter {
        BitIter(self.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::from_vertices(iter)
    }
}

/// Iterator over the set bits of a word, lowest first.
#[derive(Clone, Copy, Debug)]
pub struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for BitIter {}

/// Immutable simple undirected graph on `1..=64` vertices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Builds a graph from an edge list. Repeated edges collapse to one.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            g.adj[u] |= 1u64 << v;
            g.adj[v] |= 1u64 << u;
        }
        Ok(g)
    }

    pub fn empty(n: usize) -> Result<Graph, GraphError> {
        if n == 0 || n > MAX_VERTICES {
            return Err(GraphError::VertexCount(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn complete(n: usize) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        let all = low_mask(n);
        for v in 0..n {
            g.adj[v] = all & !(1u64 << v);
        }
        Ok(g)
    }

    /// Builds a graph from raw adjacency rows after checking every invariant.
    pub fn from_rows(rows: &[u64]) -> Result<Graph, GraphError> {
        let n = rows.len();
        if n == 0 || n > MAX_VERTICES {
            return Err(GraphError::VertexCount(n));
        }
        let mask = low_mask(n);
        for (v, &row) in rows.iter().enumerate() {
            if row & !mask != 0 {
                let bad = (row & !mask).trailing_zeros() as usize;
                return Err(GraphError::VertexOutOfRange { vertex: bad, n });
            }
            if (row >> v) & 1 == 1 {
                return Err(GraphError::Loop(v));
            }
            for u in BitIter(row) {
                if (rows[u] >> v) & 1 == 0 {
                    return Err(GraphError::Asymmetric(v, u));
                }
            }
        }
        Ok(Graph { n, adj: rows.to_vec() })
    }

    /// Unchecked constructor for rows produced by code that already
    /// maintains symmetry and loop-freeness.
    pub(crate) fn from_rows_unchecked(rows: &[u64]) -> Graph {
        debug_assert!(Graph::from_rows(rows).is_ok());
        Graph { n: rows.len(), adj: rows.to_vec() }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        (self.adj[u] >> v) & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in BitIter(self.adj[u] & !low_mask(u + 1)) {
                out.push((u, v));
            }
        }
        out
    }

    /// `e(A)`: edges with both ends in `a`.
    pub fn edges_within(&self, a: VertexSet) -> usize {
        a.iter().map(|v| (self.adj[v] & a.0).count_ones() as usize).sum::<usize>() / 2
    }

    /// `e(A, B)` for disjoint `a`, `b`.
    pub fn edges_between(&self, a: VertexSet, b: VertexSet) -> usize {
        a.iter().map(|v| (self.adj[v] & b.0).count_ones() as usize).sum()
    }

    /// `d_A(w)`.
    pub fn degree_into(&self, w: usize, a: VertexSet) -> usize {
        (self.adj[w] & a.0).count_ones() as usize
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        let mut edges = self.edges();
        edges.push((u, v));
        Graph::new(self.n, &edges)
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = self.clone();
        if u < self.n && v < self.n {
            g.adj[u] &= !(1u64 << v);
            g.adj[v] &= !(1u64 << u);
        }
        g
    }

    /// Relabels vertices: vertex `v` of `self` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length must equal n");
        let mut rows = vec![0u64; self.n];
        for v in 0..self.n {
            let mut r = 0u64;
            for u in BitIter(self.adj[v]) {
                r |= 1u64 << perm[u];
            }
            rows[perm[v]] = r;
        }
        Graph { n: self.n, adj: rows }
    }

    /// Subgraph induced on `keep`, vertices renumbered in increasing order.
    pub fn induced(&self, keep: VertexSet) -> Result<Graph, GraphError> {
        let verts: Vec<usize> = keep.iter().filter(|&v| v < self.n).collect();
        let mut index = [usize::MAX; 64];
        for (i, &v) in verts.iter().enumerate() {
            index[v] = i;
        }
        let rows: Vec<u64> = verts
            .iter()
            .map(|&v| BitIter(self.adj[v] & keep.0).fold(0u64, |acc, u| acc | (1u64 << index[u])))
            .collect();
        if rows.is_empty() {
            return Err(GraphError::VertexCount(0));
        }
        Ok(Graph { n: rows.len(), adj: rows })
    }

    /// Number of triangles, by word-parallel intersection of forward
    /// neighbourhoods.
    pub fn count_triangles(&self) -> u64 {
        let mut total = 0u64;
        for u in 0..self.n {
            let fwd_u = self.adj[u] & !low_mask(u + 1);
            for v in BitIter(fwd_u) {
                total += (fwd_u & self.adj[v] & !low_mask(v + 1)).count_ones() as u64;
            }
        }
        total
    }

    /// Connected components, each as a vertex set, ordered by smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for s in 0..self.n {
            if (seen >> s) & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << s;
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0u64;
                for v in BitIter(frontier) {
                    next |= self.adj[v];
                }
                frontier = next & !comp;
                comp |= next;
            }
            seen |= comp;
            out.push(VertexSet(comp));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Moves the edges `vj-v` (`v` in `s`) over to `vi-v`.
    ///
    /// Requires `s` non-empty, `s ⊆ N(vj)`, and `s` disjoint from
    /// `N(vi) ∪ {vi}`.
    pub fn rotate_edges(&self, vi: usize, vj: usize, s: VertexSet) -> Result<Graph, GraphError> {
        for v in [vi, vj] {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        if vi == vj {
            return Err(GraphError::Rotation("vi and vj must differ"));
        }
        if s.is_empty() {
            return Err(GraphError::Rotation("rotation set is empty"));
        }
        if s.0 & !self.adj[vj] != 0 {
            return Err(GraphError::Rotation("rotation set is not contained in N(vj)"));
        }
        if s.0 & (self.adj[vi] | (1u64 << vi)) != 0 {
            return Err(GraphError::Rotation("rotation set meets N(vi) or contains vi"));
        }
        let mut rows = self.adj.clone();
        for v in s.iter() {
            rows[vj] &= !(1u64 << v);
            rows[v] &= !(1u64 << vj);
            rows[vi] |= 1u64 << v;
            rows[v] |= 1u64 << vi;
        }
        Ok(Graph { n: self.n, adj: rows })
    }

    /// Disjoint union, with `other`'s vertices shifted past `self`'s.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(GraphError::VertexCount(n));
        }
        let mut rows = self.adj.clone();
        rows.extend(other.adj.iter().map(|r| r << self.n));
        Ok(Graph { n, adj: rows })
    }

    pub fn complement(&self) -> Graph {
        let all = low_mask(self.n);
        let rows = (0..self.n).map(|v| all & !self.adj[v] & !(1u64 << v)).collect();
        Graph { n: self.n, adj: rows }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

pub fn path(n: usize) -> Result<Graph, GraphError> {
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    Graph::new(n, &edges)
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    edges.push((n - 1, 0));
    Graph::new(n, &edges)
}

/// Complete bipartite graph with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph, GraphError> {
    let mut edges = Vec::with_capacity(a * b);
    for u in 0..a {
        for v in a..a + b {
            edges.push((u, v));
        }
    }
    Graph::new(a + b, &edges)
}

/// `K_{1,m}` centred at vertex 0.
pub fn star(m: usize) -> Result<Graph, GraphError> {
    complete_bipartite(1, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangles_by_wedges(g: &Graph) -> u64 {
        let mut t = 0u64;
        for v in 0..g.n() {
            let nb: Vec<usize> = g.neighbors(v).iter().collect();
            for (i, &u) in nb.iter().enumerate() {
                for &w in &nb[i + 1..] {
                    if g.has_edge(u, w) {
                        t += 1;
                    }
                }
            }
        }
        t / 3
    }

    #[test]
    fn construction_examples() {
        let k3 = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(k3, Graph::complete(3).unwrap());
        let e2 = Graph::new(2, &[]).unwrap();
        assert_eq!(e2.edge_count(), 0);
        let dup = Graph::new(4, &[(0, 1), (0, 1)]).unwrap();
        assert_eq!(dup, Graph::new(4, &[(1, 0)]).unwrap());
        assert_eq!(dup.edge_count(), 1);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Graph::new(3, &[(1, 1)]), Err(GraphError::Loop(1)));
        assert_eq!(
            Graph::new(3, &[(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        );
        assert_eq!(Graph::new(0, &[]), Err(GraphError::VertexCount(0)));
        assert_eq!(Graph::new(65, &[]), Err(GraphError::VertexCount(65)));
        assert!(Graph::new(64, &[(0, 63)]).is_ok());
        assert!(Graph::from_rows(&[0b10, 0b00]).is_err());
    }

    #[test]
    fn triangle_examples() {
        assert_eq!(Graph::complete(4).unwrap().count_triangles(), 4);
        assert_eq!(complete_bipartite(3, 3).unwrap().count_triangles(), 0);
        let k64 = Graph::complete(64).unwrap();
        assert_eq!(k64.count_triangles(), 64 * 63 * 62 / 6);
        assert_eq!(triangles_by_wedges(&k64), 64 * 63 * 62 / 6);
    }

    #[test]
    fn components_examples() {
        let k3k1 = Graph::new(4, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(k3k1.components().len(), 2);
        assert!(path(5).unwrap().is_connected());
        assert_eq!(Graph::empty(4).unwrap().components().len(), 4);
    }

    #[test]
    fn rotation_to_star() {
        let p4 = path(4).unwrap();
        let g = p4.rotate_edges(1, 2, VertexSet::from_vertices([3])).unwrap();
        assert_eq!(g, star(3).unwrap().permuted(&[1, 0, 2, 3]));
        assert_eq!(g.edge_count(), p4.edge_count());
    }

    #[test]
    fn rotation_preconditions() {
        let p4 = path(4).unwrap();
        // 0 is a neighbour of 1 already
        assert!(p4.rotate_edges(1, 2, VertexSet::from_vertices([1])).is_err());
        assert!(p4.rotate_edges(2, 1, VertexSet::from_vertices([0, 2])).is_err());
        assert!(p4.rotate_edges(1, 2, VertexSet::EMPTY).is_err());
        assert!(p4.rotate_edges(1, 1, VertexSet::from_vertices([0])).is_err());
        // 0 is not a neighbour of 2
        assert!(p4.rotate_edges(3, 2, VertexSet::from_vertices([0])).is_err());
        // s meets N(vi)
        let c4 = cycle(4).unwrap();
        assert!(c4.rotate_edges(0, 2, VertexSet::from_vertices([1])).is_err());
    }

    #[test]
    fn permutation_and_induced() {
        let p3 = path(3).unwrap();
        let q = p3.permuted(&[1, 0, 2]);
        assert!(q.has_edge(1, 0) && q.has_edge(0, 2) && !q.has_edge(1, 2));
        let k4 = Graph::complete(4).unwrap();
        let sub = k4.induced(VertexSet::from_vertices([0, 2, 3])).unwrap();
        assert_eq!(sub, Graph::complete(3).unwrap());
        assert_eq!(k4.complement().edge_count(), 0);
        assert_eq!(k4.edges_within(VertexSet::from_vertices([0, 1, 2])), 3);
        assert_eq!(
            k4.edges_between(VertexSet::from_vertices([0]), VertexSet::from_vertices([1, 2])),
            2
        );
    }
}
