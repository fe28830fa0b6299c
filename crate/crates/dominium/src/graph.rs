//! Immutable simple graphs on at most 64 vertices with bit-vector adjacency rows.
//!
//! Vertices are dense labels `0..n-1`. Each adjacency row is a single `u64`
//! mask, so neighborhood queries, degree-in-set counts, and the solvers'
//! subset searches are all word operations.

use std::fmt;

use thiserror::Error;

/// Largest supported order. One adjacency row fits one machine word.
pub const MAX_ORDER: usize = 64;

/// Errors raised while constructing a [`Graph`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph order {n} out of range (supported: 1..={MAX_ORDER})")]
    OrderOutOfRange { n: usize },
    #[error("edge endpoint {v} out of range for order {n}")]
    EndpointOutOfRange { v: usize, n: usize },
    #[error("self-loop at vertex {v}")]
    SelfLoop { v: usize },
}

#[inline]
fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Mask with the lowest `n` bits set.
#[inline]
pub(crate) fn low_bits(n: usize) -> u64 {
    debug_assert!(n <= 64);
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A subset of the vertices of a graph of a fixed order.
///
/// The width is carried along so that sets built for one graph cannot be
/// silently reused against another of a different order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    bits: u64,
    width: usize,
}

impl VertexSet {
    /// Empty set over `width` vertices.
    pub fn empty(width: usize) -> Self {
        assert!(width <= MAX_ORDER, "width {width} exceeds {MAX_ORDER}");
        VertexSet { bits: 0, width }
    }

    /// Full set `{0, .., width-1}`.
    pub fn full(width: usize) -> Self {
        assert!(width <= MAX_ORDER, "width {width} exceeds {MAX_ORDER}");
        VertexSet {
            bits: low_bits(width),
            width,
        }
    }

    /// Builds a set from explicit vertex labels.
    ///
    /// # Panics
    /// Panics if any label is `>= width`.
    pub fn from_vertices(width: usize, vertices: &[usize]) -> Self {
        let mut s = VertexSet::empty(width);
        for &v in vertices {
            assert!(v < width, "vertex {v} out of range for width {width}");
            s.bits |= bit(v);
        }
        s
    }

    /// Wraps a raw mask. Bits outside `width` must be clear.
    pub(crate) fn from_bits(width: usize, bits: u64) -> Self {
        debug_assert_eq!(bits & !low_bits(width), 0, "stray bits beyond width");
        VertexSet { bits, width }
    }

    #[inline]
    pub(crate) fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    /// Membership test.
    ///
    /// # Panics
    /// Panics if `v >= width`.
    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        assert!(
            v < self.width,
            "vertex {v} out of range for width {}",
            self.width
        );
        self.bits & bit(v) != 0
    }

    /// Copy of the set with `v` added.
    pub fn with(&self, v: usize) -> Self {
        assert!(
            v < self.width,
            "vertex {v} out of range for width {}",
            self.width
        );
        VertexSet {
            bits: self.bits | bit(v),
            width: self.width,
        }
    }

    /// Copy of the set with `v` removed.
    pub fn without(&self, v: usize) -> Self {
        assert!(
            v < self.width,
            "vertex {v} out of range for width {}",
            self.width
        );
        VertexSet {
            bits: self.bits & !bit(v),
            width: self.width,
        }
    }

    pub fn union(&self, other: &VertexSet) -> Self {
        self.check_width(other);
        VertexSet {
            bits: self.bits | other.bits,
            width: self.width,
        }
    }

    pub fn intersection(&self, other: &VertexSet) -> Self {
        self.check_width(other);
        VertexSet {
            bits: self.bits & other.bits,
            width: self.width,
        }
    }

    pub fn difference(&self, other: &VertexSet) -> Self {
        self.check_width(other);
        VertexSet {
            bits: self.bits & !other.bits,
            width: self.width,
        }
    }

    /// Complement within `{0, .., width-1}`.
    pub fn complement(&self) -> Self {
        VertexSet {
            bits: !self.bits & low_bits(self.width),
            width: self.width,
        }
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.check_width(other);
        self.bits & !other.bits == 0
    }

    /// Vertices in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let mut rest = self.bits;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(v)
            }
        })
    }

    /// Sorted vertex labels, the form used in reports.
    pub fn to_sorted_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    #[inline]
    fn check_width(&self, other: &VertexSet) {
        assert_eq!(
            self.width, other.width,
            "vertex-set width mismatch: {} vs {}",
            self.width, other.width
        );
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// An immutable simple graph: `n` vertices, symmetric loop-free adjacency
/// rows, cached edge count.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
    m: usize,
}

impl Graph {
    /// Builds a graph of order `n` from an edge list. Duplicate edges are
    /// collapsed; loops and out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        if n == 0 || n > MAX_ORDER {
            return Err(GraphError::OrderOutOfRange { n });
        }
        let mut adj = vec![0u64; n];
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::EndpointOutOfRange { v: u, n });
            }
            if v >= n {
                return Err(GraphError::EndpointOutOfRange { v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop { v });
            }
            adj[u] |= bit(v);
            adj[v] |= bit(u);
        }
        Ok(Self::from_rows(n, adj))
    }

    /// Wraps validated adjacency rows. Callers must guarantee symmetry and
    /// looplessness; both are checked in debug builds.
    pub(crate) fn from_rows(n: usize, adj: Vec<u64>) -> Graph {
        debug_assert!((1..=MAX_ORDER).contains(&n));
        debug_assert_eq!(adj.len(), n);
        #[cfg(debug_assertions)]
        {
            for (v, &row) in adj.iter().enumerate() {
                debug_assert_eq!(row & !low_bits(n), 0, "stray bits in row {v}");
                debug_assert_eq!(row & bit(v), 0, "loop at {v}");
            }
            for u in 0..n {
                for v in (u + 1)..n {
                    debug_assert_eq!(
                        adj[u] & bit(v) != 0,
                        adj[v] & bit(u) != 0,
                        "asymmetric pair ({u},{v})"
                    );
                }
            }
        }
        let total: u32 = adj.iter().map(|row| row.count_ones()).sum();
        Graph {
            n,
            adj,
            m: total as usize / 2,
        }
    }

    /// Number of vertices.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        assert!(u < self.n && v < self.n, "edge query out of range");
        self.adj[u] & bit(v) != 0
    }

    /// Raw neighborhood mask of `v`.
    #[inline]
    pub(crate) fn row(&self, v: usize) -> u64 {
        self.adj[v]
    }

    /// Raw closed-neighborhood mask of `v`.
    #[inline]
    pub(crate) fn closed_row(&self, v: usize) -> u64 {
        self.adj[v] | bit(v)
    }

    /// Mask with every vertex set.
    #[inline]
    pub(crate) fn full_mask(&self) -> u64 {
        low_bits(self.n)
    }

    /// Open neighborhood `N(v)`.
    pub fn neighbors(&self, v: usize) -> VertexSet {
        assert!(v < self.n, "vertex {v} out of range for order {}", self.n);
        VertexSet::from_bits(self.n, self.adj[v])
    }

    /// Closed neighborhood `N[v] = N(v) ∪ {v}`.
    pub fn closed_neighborhood(&self, v: usize) -> VertexSet {
        assert!(v < self.n, "vertex {v} out of range for order {}", self.n);
        VertexSet::from_bits(self.n, self.adj[v] | bit(v))
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        assert!(v < self.n, "vertex {v} out of range for order {}", self.n);
        self.adj[v].count_ones() as usize
    }

    /// Number of neighbors of `v` inside `s`. Membership of `v` itself in
    /// `s` never counts.
    ///
    /// # Panics
    /// Panics if `v` is out of range or `s` was built for a different order.
    pub fn degree_in(&self, v: usize, s: &VertexSet) -> usize {
        assert!(v < self.n, "vertex {v} out of range for order {}", self.n);
        assert_eq!(
            s.width(),
            self.n,
            "vertex-set width {} does not match graph order {}",
            s.width(),
            self.n
        );
        (self.adj[v] & s.bits()).count_ones() as usize
    }

    pub fn min_degree(&self) -> usize {
        self.adj
            .iter()
            .map(|row| row.count_ones() as usize)
            .min()
            .unwrap()
    }

    pub fn max_degree(&self) -> usize {
        self.adj
            .iter()
            .map(|row| row.count_ones() as usize)
            .max()
            .unwrap()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// Every vertex as a set.
    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Join of two graphs: disjoint union plus all edges between the parts.
    /// Vertices of `self` keep their labels; vertices of `other` are shifted
    /// by `self.n()`.
    pub fn join(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.n + other.n;
        if n > MAX_ORDER {
            return Err(GraphError::OrderOutOfRange { n });
        }
        let left_mask = low_bits(self.n);
        let right_mask = low_bits(n) & !left_mask;
        let mut adj = Vec::with_capacity(n);
        for v in 0..self.n {
            adj.push(self.adj[v] | right_mask);
        }
        for v in 0..other.n {
            adj.push((other.adj[v] << self.n) | left_mask);
        }
        Ok(Graph::from_rows(n, adj))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn from_edges_rejects_bad_input() {
        assert_eq!(
            Graph::from_edges(0, &[]),
            Err(GraphError::OrderOutOfRange { n: 0 })
        );
        assert_eq!(
            Graph::from_edges(65, &[]),
            Err(GraphError::OrderOutOfRange { n: 65 })
        );
        assert_eq!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(GraphError::EndpointOutOfRange { v: 3, n: 3 })
        );
        assert_eq!(
            Graph::from_edges(3, &[(1, 1)]),
            Err(GraphError::SelfLoop { v: 1 })
        );
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn closed_neighborhood_on_cycle() {
        let g = families::cycle(5).unwrap();
        assert_eq!(
            g.closed_neighborhood(0),
            VertexSet::from_vertices(5, &[4, 0, 1])
        );
    }

    #[test]
    fn closed_neighborhood_on_complete_graph() {
        let g = families::complete(4).unwrap();
        assert_eq!(g.closed_neighborhood(2), VertexSet::full(4));
    }

    #[test]
    fn closed_neighborhood_of_isolated_vertex() {
        let g = families::empty(3).unwrap();
        assert_eq!(g.closed_neighborhood(1), VertexSet::from_vertices(3, &[1]));
    }

    #[test]
    fn degree_in_does_not_count_the_vertex_itself() {
        let g = families::complete(4).unwrap();
        let s = VertexSet::from_vertices(4, &[0, 1, 2]);
        assert_eq!(g.degree_in(0, &s), 2);
    }

    #[test]
    fn degree_in_counts_cycle_neighbors() {
        let g = families::cycle(6).unwrap();
        let s = VertexSet::from_vertices(6, &[1, 5]);
        assert_eq!(g.degree_in(0, &s), 2);
    }

    #[test]
    fn degree_in_of_empty_set_is_zero() {
        let g = families::cycle(6).unwrap();
        for v in g.vertices() {
            assert_eq!(g.degree_in(v, &VertexSet::empty(6)), 0);
        }
    }

    #[test]
    #[should_panic(expected = "width")]
    fn degree_in_panics_on_width_mismatch() {
        let g = families::cycle(5).unwrap();
        let s = VertexSet::empty(6);
        let _ = g.degree_in(0, &s);
    }

    #[test]
    fn degree_extremes() {
        let g = families::complete_bipartite(2, 3).unwrap();
        assert_eq!(g.min_degree(), 2);
        assert_eq!(g.max_degree(), 3);

        let c = families::cycle(7).unwrap();
        assert_eq!(c.min_degree(), 2);
        assert_eq!(c.max_degree(), 2);
    }

    #[test]
    fn join_of_cliques_is_a_clique() {
        let g = families::complete(3).unwrap();
        let h = families::cycle(3).unwrap();
        let j = g.join(&h).unwrap();
        assert_eq!(j, families::complete(6).unwrap());
    }

    #[test]
    fn join_counts_edges_by_the_product_formula() {
        let g = families::complete(3).unwrap();
        let h = families::cycle(4).unwrap();
        let j = g.join(&h).unwrap();
        assert_eq!(j.n(), 7);
        assert_eq!(j.m(), 3 + 4 + 12);
        assert_eq!(j.min_degree(), 5);
    }

    #[test]
    fn join_with_a_point_makes_a_wheel() {
        let g = families::empty(1).unwrap();
        let h = families::cycle(4).unwrap();
        let j = g.join(&h).unwrap();
        assert_eq!(j.n(), 5);
        assert_eq!(j.m(), 8);
    }

    #[test]
    fn join_rejects_oversized_result() {
        let g = families::complete(40).unwrap();
        let h = families::complete(40).unwrap();
        assert!(matches!(
            g.join(&h),
            Err(GraphError::OrderOutOfRange { n: 80 })
        ));
    }

    #[test]
    fn handshake_sum_matches_cached_edge_count() {
        for g in [
            families::complete(7).unwrap(),
            families::cycle(9).unwrap(),
            families::path(5).unwrap(),
            families::complete_bipartite(3, 4).unwrap(),
            families::h_family(4, 2).unwrap(),
        ] {
            let sum: usize = g.vertices().map(|v| g.degree(v)).sum();
            assert_eq!(sum, 2 * g.m());
        }
    }

    #[test]
    fn vertex_set_display_is_sorted() {
        let s = VertexSet::from_vertices(8, &[5, 0, 3]);
        assert_eq!(s.to_string(), "{0, 3, 5}");
        assert_eq!(s.to_sorted_vec(), vec![0, 3, 5]);
    }

    #[test]
    fn vertex_set_algebra() {
        let a = VertexSet::from_vertices(6, &[0, 1, 2]);
        let b = VertexSet::from_vertices(6, &[2, 3]);
        assert_eq!(a.union(&b), VertexSet::from_vertices(6, &[0, 1, 2, 3]));
        assert_eq!(a.intersection(&b), VertexSet::from_vertices(6, &[2]));
        assert_eq!(a.difference(&b), VertexSet::from_vertices(6, &[0, 1]));
        assert_eq!(b.complement(), VertexSet::from_vertices(6, &[0, 1, 4, 5]));
        assert!(VertexSet::empty(6).is_subset_of(&a));
        assert!(!a.is_subset_of(&b));
    }
}
