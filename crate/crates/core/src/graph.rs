//! Finite simplicial graphs with the connectivity, domination, clique and
//! separator predicates used by the RAAG analysis.
//!
//! Vertices are indexed `0..n` in declaration order; that order is the
//! tie-breaker for every enumeration in this crate. Vertex subsets are
//! bitmasks, so a graph holds at most [`MAX_VERTICES`] vertices.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;

/// A subset of a graph's vertices, stored as a bitmask over vertex indices.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, Debug)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const fn empty() -> Self {
        VertexSet(0)
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices
            .into_iter()
            .fold(VertexSet::empty(), |s, v| s.with(v))
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    #[must_use]
    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1u64 << v)
    }

    #[must_use]
    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[must_use]
    pub fn union(self, other: VertexSet) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[must_use]
    pub fn intersection(self, other: VertexSet) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[must_use]
    pub fn difference(self, other: VertexSet) -> Self {
        VertexSet(self.0 & !other.0)
    }

    /// Least element.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Members in increasing index order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(v)
        })
    }

    /// Canonical output order: by size, then lexicographically on the sorted
    /// index tuples.
    pub fn canonical_cmp(&self, other: &VertexSet) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

/// Finite simplicial graph with an ordered vertex list.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    labels: Vec<String>,
    adjacency: Vec<VertexSet>,
}

/// The two combinatorial conditions that together characterize finiteness
/// of `Out(A_Γ)`: absence of separating closed stars and absence of
/// `lk(v) ⊆ st(w)` for distinct `v, w`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct OutFiniteness {
    /// First vertex whose closed star separates the graph.
    pub separating_closed_star: Option<usize>,
    /// First ordered pair `(v, w)`, `v != w`, with `lk(v) ⊆ st(w)`.
    pub link_in_star: Option<(usize, usize)>,
}

impl OutFiniteness {
    pub fn criterion_holds(&self) -> bool {
        self.separating_closed_star.is_none() && self.link_in_star.is_none()
    }
}

impl Graph {
    /// Builds a graph from labels and labelled edges.
    pub fn new<S, E>(labels: &[S], edges: &[(E, E)]) -> Result<Self>
    where
        S: AsRef<str>,
        E: AsRef<str>,
    {
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_owned()).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.as_str(), i).is_some() {
                return Err(Error::InvalidInput(format!("duplicate vertex `{l}`")));
            }
        }
        let mut pairs = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            let lookup = |name: &str| {
                index
                    .get(name)
                    .copied()
                    .ok_or_else(|| Error::UnknownVertex(name.to_owned()))
            };
            pairs.push((lookup(a.as_ref())?, lookup(b.as_ref())?));
        }
        Self::from_index_edges(labels, &pairs)
    }

    /// Builds a graph whose vertices are labelled by the given strings and
    /// whose edges are given by index pairs.
    pub fn from_index_edges(labels: Vec<String>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        if n > MAX_VERTICES {
            return Err(Error::InvalidInput(format!(
                "graphs are limited to {MAX_VERTICES} vertices, got {n}"
            )));
        }
        let mut adjacency = vec![VertexSet::empty(); n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidInput(format!("edge ({a},{b}) out of range")));
            }
            if a == b {
                return Err(Error::InvalidInput(format!("self-loop at `{}`", labels[a])));
            }
            if adjacency[a].contains(b) {
                return Err(Error::InvalidInput(format!(
                    "duplicate edge `{}-{}`",
                    labels[a], labels[b]
                )));
            }
            adjacency[a] = adjacency[a].with(b);
            adjacency[b] = adjacency[b].with(a);
        }
        Ok(Graph { labels, adjacency })
    }

    /// Graph on vertices labelled `0..n` (as strings).
    pub fn with_numbered_vertices(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::from_index_edges((0..n).map(|i| i.to_string()).collect(), edges)
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::with_numbered_vertices(n, &edges).expect("path graph")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least three vertices");
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::with_numbered_vertices(n, &edges).expect("cycle graph")
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        Self::with_numbered_vertices(n, &edges).expect("complete graph")
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Edges as index pairs `(i, j)` with `i < j`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.vertex_count())
            .flat_map(|i| {
                self.adjacency[i]
                    .iter()
                    .filter(move |&j| j > i)
                    .map(move |j| (i, j))
            })
            .collect()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].contains(b)
    }

    /// The link `lk(v)`: neighbours of `v`.
    pub fn link(&self, v: usize) -> VertexSet {
        self.adjacency[v]
    }

    /// The closed star `st(v)`: `v` together with its neighbours.
    pub fn closed_star(&self, v: usize) -> VertexSet {
        self.adjacency[v].with(v)
    }

    /// Resolves labels to a vertex set.
    pub fn vertex_set<S: AsRef<str>>(&self, labels: &[S]) -> Result<VertexSet> {
        labels.iter().try_fold(VertexSet::empty(), |s, l| {
            let l = l.as_ref();
            self.index_of(l)
                .map(|v| s.with(v))
                .ok_or_else(|| Error::UnknownVertex(l.to_owned()))
        })
    }

    /// Renders a vertex set as `{a,b}` using vertex labels.
    pub fn format_set(&self, s: VertexSet) -> String {
        let names: Vec<&str> = s.iter().map(|v| self.label(v)).collect();
        format!("{{{}}}", names.join(","))
    }

    fn check_subset(&self, s: VertexSet) {
        assert!(
            s.is_subset(self.vertices()),
            "vertex set {:#b} is not a subset of a {}-vertex graph",
            s.bits(),
            self.vertex_count()
        );
    }

    pub fn induced_subgraph(&self, s: VertexSet) -> Result<Graph> {
        if !s.is_subset(self.vertices()) {
            return Err(Error::InvalidInput(
                "vertex set is not a subset of the graph".into(),
            ));
        }
        let kept: Vec<usize> = s.iter().collect();
        let labels = kept.iter().map(|&v| self.labels[v].clone()).collect();
        let position = |v: usize| kept.iter().position(|&k| k == v);
        let edges: Vec<(usize, usize)> = self
            .edges()
            .into_iter()
            .filter_map(|(a, b)| Some((position(a)?, position(b)?)))
            .collect();
        Graph::from_index_edges(labels, &edges)
    }

    /// Connectivity of the whole graph. The empty graph is not connected.
    pub fn is_connected(&self) -> bool {
        self.is_connected_on(self.vertices())
    }

    /// Connectivity of the subgraph induced on `s`; false when `s` is empty.
    pub fn is_connected_on(&self, s: VertexSet) -> bool {
        self.check_subset(s);
        let Some(start) = s.first() else {
            return false;
        };
        let mut reached = VertexSet::singleton(start);
        let mut frontier = reached;
        while !frontier.is_empty() {
            let next = frontier
                .iter()
                .fold(VertexSet::empty(), |acc, v| acc.union(self.adjacency[v]))
                .intersection(s)
                .difference(reached);
            reached = reached.union(next);
            frontier = next;
        }
        reached == s
    }

    /// Connected components of the subgraph induced on `s`, ordered by
    /// their least vertex.
    pub fn components_on(&self, s: VertexSet) -> Vec<VertexSet> {
        self.check_subset(s);
        let mut rest = s;
        let mut out = Vec::new();
        while let Some(start) = rest.first() {
            let mut comp = VertexSet::singleton(start);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let next = frontier
                    .iter()
                    .fold(VertexSet::empty(), |acc, v| acc.union(self.adjacency[v]))
                    .intersection(rest)
                    .difference(comp);
                comp = comp.union(next);
                frontier = next;
            }
            rest = rest.difference(comp);
            out.push(comp);
        }
        out
    }

    /// Every vertex outside `s` has a neighbour in `s`.
    pub fn is_dominating(&self, s: VertexSet) -> bool {
        self.undominated(s).is_empty()
    }

    /// Vertices outside `s` with no neighbour in `s`.
    pub fn undominated(&self, s: VertexSet) -> VertexSet {
        self.check_subset(s);
        VertexSet::from_indices(
            self.vertices()
                .difference(s)
                .iter()
                .filter(|&v| self.adjacency[v].intersection(s).is_empty()),
        )
    }

    /// All pairs in `s` are adjacent; the empty set and singletons qualify.
    pub fn is_clique(&self, s: VertexSet) -> bool {
        self.check_subset(s);
        s.iter().all(|v| s.without(v).is_subset(self.adjacency[v]))
    }

    /// True when the whole graph is a clique (including the empty graph).
    pub fn is_complete(&self) -> bool {
        self.is_clique(self.vertices())
    }

    /// Removing `s` leaves a disconnected (hence nonempty) remainder.
    pub fn is_separating(&self, s: VertexSet) -> bool {
        self.check_subset(s);
        let rest = self.vertices().difference(s);
        !rest.is_empty() && !self.is_connected_on(rest)
    }

    /// All `k`-cliques in lexicographic order of their sorted index tuples.
    pub fn cliques_of_size(&self, k: usize) -> Vec<VertexSet> {
        fn extend(
            g: &Graph,
            current: VertexSet,
            candidates: VertexSet,
            remaining: usize,
            out: &mut Vec<VertexSet>,
        ) {
            if remaining == 0 {
                out.push(current);
                return;
            }
            for v in candidates.iter() {
                // only larger indices keep the tuple sorted
                let higher = u64::MAX.checked_shl(v as u32 + 1).unwrap_or(0);
                let later = VertexSet::from_bits(candidates.bits() & higher);
                if later.len() + 1 < remaining {
                    break;
                }
                extend(
                    g,
                    current.with(v),
                    later.intersection(g.adjacency[v]),
                    remaining - 1,
                    out,
                );
            }
        }
        let mut out = Vec::new();
        extend(self, VertexSet::empty(), self.vertices(), k, &mut out);
        out
    }

    /// First separating clique in the order (size, lexicographic), if any.
    pub fn min_separating_clique_witness(&self) -> Option<VertexSet> {
        (0..=self.vertex_count()).find_map(|k| {
            self.cliques_of_size(k)
                .into_iter()
                .find(|&c| self.is_separating(c))
        })
    }

    /// Least `k` such that some `k`-clique separates the graph.
    pub fn min_separating_clique(&self) -> Option<usize> {
        self.min_separating_clique_witness().map(VertexSet::len)
    }

    pub fn out_finiteness_predicates(&self) -> OutFiniteness {
        let n = self.vertex_count();
        let separating_closed_star = (0..n).find(|&v| self.is_separating(self.closed_star(v)));
        let link_in_star = (0..n)
            .flat_map(|v| (0..n).map(move |w| (v, w)))
            .find(|&(v, w)| v != w && self.link(v).is_subset(self.closed_star(w)));
        OutFiniteness {
            separating_closed_star,
            link_in_star,
        }
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "vertices: {}", self.labels.join(" "))?;
        let edges = self.edges();
        if !edges.is_empty() {
            let rendered: Vec<String> = edges
                .iter()
                .map(|&(a, b)| format!("{}-{}", self.labels[a], self.labels[b]))
                .collect();
            write!(f, "\nedges: {}", rendered.join(" "))?;
        }
        Ok(())
    }
}
