//! Undirected simple graphs, canonical node sets and the random-walk
//! transition structure.
//!
//! Nodes carry their original integer labels from the edge list; internally
//! they are addressed by contiguous indices assigned in increasing label
//! order, so comparing index sets and comparing label sets agree.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Sorted, duplicate-free set of internal node indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeSet(Vec<usize>);

impl NodeSet {
    pub fn empty() -> Self {
        NodeSet(Vec::new())
    }

    pub fn singleton(node: usize) -> Self {
        NodeSet(vec![node])
    }

    /// Builds a canonical set from arbitrary indices (sorted, deduplicated).
    pub fn from_indices<I: IntoIterator<Item = usize>>(nodes: I) -> Self {
        let mut v: Vec<usize> = nodes.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        NodeSet(v)
    }

    /// Wraps a vector that is already strictly increasing.
    pub(crate) fn from_sorted_unchecked(v: Vec<usize>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        NodeSet(v)
    }

    pub fn full(n: usize) -> Self {
        NodeSet((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, node: usize) -> bool {
        self.0.binary_search(&node).is_ok()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn with(&self, node: usize) -> NodeSet {
        match self.0.binary_search(&node) {
            Ok(_) => self.clone(),
            Err(pos) => {
                let mut v = Vec::with_capacity(self.0.len() + 1);
                v.extend_from_slice(&self.0[..pos]);
                v.push(node);
                v.extend_from_slice(&self.0[pos..]);
                NodeSet(v)
            }
        }
    }

    pub fn without(&self, node: usize) -> NodeSet {
        NodeSet(self.0.iter().copied().filter(|&x| x != node).collect())
    }

    pub fn union(&self, other: &NodeSet) -> NodeSet {
        NodeSet::from_indices(self.iter().chain(other.iter()))
    }

    pub fn difference(&self, other: &NodeSet) -> NodeSet {
        NodeSet(self.iter().filter(|&x| !other.contains(x)).collect())
    }

    pub fn is_subset(&self, other: &NodeSet) -> bool {
        self.iter().all(|x| other.contains(x))
    }

    pub fn is_disjoint(&self, other: &NodeSet) -> bool {
        self.iter().all(|x| !other.contains(x))
    }

    /// Membership mask of length `n`.
    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for i in self.iter() {
            m[i] = true;
        }
        m
    }

    /// Original labels of the members, in increasing order.
    pub fn labels(&self, g: &Graph) -> Vec<u64> {
        self.iter().map(|i| g.label(i)).collect()
    }

    /// Ordering by cardinality first, then lexicographically.
    pub fn cmp_shortlex(&self, other: &NodeSet) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// Immutable connected undirected simple graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<u64>,
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

/// Result of parsing an edge list: the graph plus how many repeated edges
/// were collapsed.
#[derive(Debug, Clone)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub duplicate_edges: usize,
}

impl Graph {
    /// Builds and validates a graph from labelled edges. Repeated edges (in
    /// either orientation) are collapsed.
    pub fn from_edges<I: IntoIterator<Item = (u64, u64)>>(edges: I) -> Result<ParsedGraph> {
        let mut unique = BTreeSet::new();
        let mut total = 0usize;
        for (u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            total += 1;
            unique.insert((u.min(v), u.max(v)));
        }
        if unique.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let labels: Vec<u64> = unique
            .iter()
            .flat_map(|&(u, v)| [u, v])
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let index = |l: u64| labels.binary_search(&l).expect("label collected above");
        let mut adjacency = vec![Vec::new(); labels.len()];
        for &(u, v) in &unique {
            let (i, j) = (index(u), index(v));
            adjacency[i].push(j);
            adjacency[j].push(i);
        }
        for adj in &mut adjacency {
            adj.sort_unstable();
        }
        let graph = Graph {
            labels,
            adjacency,
            edge_count: unique.len(),
        };
        let components = graph.components();
        if components.len() > 1 {
            return Err(Error::Disconnected(
                components
                    .into_iter()
                    .map(|c| c.into_iter().map(|i| graph.labels[i]).collect())
                    .collect(),
            ));
        }
        Ok(ParsedGraph {
            graph,
            duplicate_edges: total - unique.len(),
        })
    }

    /// Parses whitespace-separated `u v` lines. Blank lines and lines whose
    /// first non-blank character is `#` are skipped.
    pub fn parse_edge_list(text: &str) -> Result<ParsedGraph> {
        let mut edges = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let malformed = || Error::MalformedLine {
                line: lineno + 1,
                content: line.to_string(),
            };
            let mut tokens = trimmed.split_whitespace();
            let (Some(a), Some(b), None) = (tokens.next(), tokens.next(), tokens.next()) else {
                return Err(malformed());
            };
            let u: u64 = a.parse().map_err(|_| malformed())?;
            let v: u64 = b.parse().map_err(|_| malformed())?;
            edges.push((u, v));
        }
        Graph::from_edges(edges)
    }

    /// Edge list in canonical form: one `u v` line per edge, `u < v`, sorted.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (i, j) in self.edges() {
            out.push_str(&format!("{} {}\n", self.labels[i], self.labels[j]));
        }
        out
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn label(&self, i: usize) -> u64 {
        self.labels[i]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn index_of(&self, label: u64) -> Result<usize> {
        self.labels
            .binary_search(&label)
            .map_err(|_| Error::UnknownLabel(label))
    }

    pub fn set_from_labels(&self, labels: &[u64]) -> Result<NodeSet> {
        labels
            .iter()
            .map(|&l| self.index_of(l))
            .collect::<Result<Vec<_>>>()
            .map(NodeSet::from_indices)
    }

    /// Edges as index pairs `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(i, adj)| adj.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].binary_search(&j).is_ok()
    }

    fn components(&self) -> Vec<Vec<usize>> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &v in &self.adjacency[u] {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn transition_matrix(&self) -> TransitionMatrix {
        let n = self.node_count();
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            let p = 1.0 / self.degree(i) as f64;
            for &j in &self.adjacency[i] {
                data[i * n + j] = p;
            }
        }
        TransitionMatrix { n, data }
    }
}

/// Dense row-stochastic matrix of the simple random walk, `p(i,j) = 1/deg(i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    n: usize,
    data: Vec<f64>,
}

impl TransitionMatrix {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// Principal submatrix on the complement of `a`.
    pub fn restrict(&self, a: &NodeSet) -> Result<RestrictedMatrix> {
        if a.is_empty() {
            return Err(Error::EmptyTarget);
        }
        if a.len() >= self.n {
            return Err(Error::FullTarget);
        }
        let mask = a.mask(self.n);
        let nodes: Vec<usize> = (0..self.n).filter(|&i| !mask[i]).collect();
        let dim = nodes.len();
        let mut data = vec![0.0; dim * dim];
        for (r, &i) in nodes.iter().enumerate() {
            for (c, &j) in nodes.iter().enumerate() {
                data[r * dim + c] = self.get(i, j);
            }
        }
        Ok(RestrictedMatrix { dim, data, nodes })
    }
}

/// Sub-stochastic principal submatrix `P_A` with the map from its rows back
/// to node indices.
#[derive(Debug, Clone, PartialEq)]
pub struct RestrictedMatrix {
    pub dim: usize,
    pub data: Vec<f64>,
    pub nodes: Vec<usize>,
}

impl RestrictedMatrix {
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.dim + c]
    }

    pub fn row_sums(&self) -> Vec<f64> {
        self.data.chunks(self.dim.max(1)).map(|r| r.iter().sum()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Graph {
        Graph::parse_edge_list("1 2\n2 3").unwrap().graph
    }

    #[test]
    fn parses_path() {
        let g = p3();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.labels(), &[1, 2, 3]);
    }

    #[test]
    fn duplicates_are_collapsed() {
        let parsed = Graph::parse_edge_list("1 2\n1 2\n2 3").unwrap();
        assert_eq!(parsed.graph, p3());
        assert_eq!(parsed.duplicate_edges, 1);
        let parsed = Graph::parse_edge_list("2 1\n1 2\n3 2").unwrap();
        assert_eq!(parsed.duplicate_edges, 1);
        assert_eq!(parsed.graph.edge_count(), 2);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(Graph::parse_edge_list("1 1").unwrap_err(), Error::SelfLoop(1));
        assert_eq!(Graph::parse_edge_list("# nothing\n\n").unwrap_err(), Error::EmptyGraph);
        assert!(matches!(
            Graph::parse_edge_list("1 2\nfoo 3").unwrap_err(),
            Error::MalformedLine { line: 2, .. }
        ));
        assert!(matches!(
            Graph::parse_edge_list("1 2 3").unwrap_err(),
            Error::MalformedLine { line: 1, .. }
        ));
        assert!(matches!(
            Graph::parse_edge_list("1 -2").unwrap_err(),
            Error::MalformedLine { .. }
        ));
        match Graph::parse_edge_list("1 2\n3 4").unwrap_err() {
            Error::Disconnected(c) => assert_eq!(c, vec![vec![1, 2], vec![3, 4]]),
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn comments_and_labels() {
        let g = Graph::parse_edge_list("# star\n  # indented comment\n10 3\n10 7\n\n10 42\n")
            .unwrap()
            .graph;
        assert_eq!(g.labels(), &[3, 7, 10, 42]);
        assert_eq!(g.degree(g.index_of(10).unwrap()), 3);
        assert_eq!(g.index_of(5).unwrap_err(), Error::UnknownLabel(5));
    }

    #[test]
    fn transition_rows() {
        let p = p3().transition_matrix();
        assert_eq!(p.row(0), &[0.0, 1.0, 0.0]);
        assert_eq!(p.row(1), &[0.5, 0.0, 0.5]);
        assert_eq!(p.row(2), &[0.0, 1.0, 0.0]);

        let k4 = Graph::parse_edge_list("1 2\n1 3\n1 4\n2 3\n2 4\n3 4").unwrap().graph;
        let p = k4.transition_matrix();
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { 0.0 } else { 1.0 / 3.0 };
                assert_eq!(p.get(i, j), want);
            }
        }

        let star = Graph::parse_edge_list("0 1\n0 2\n0 3").unwrap().graph;
        let p = star.transition_matrix();
        assert_eq!(p.row(0), &[0.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0]);
        for leaf in 1..4 {
            assert_eq!(p.get(leaf, 0), 1.0);
            assert!((p.row(leaf).iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn restriction() {
        let g = p3();
        let p = g.transition_matrix();
        let r = p.restrict(&NodeSet::singleton(1)).unwrap();
        assert_eq!(r.dim, 2);
        assert!(r.data.iter().all(|&x| x == 0.0));

        let r = p.restrict(&NodeSet::singleton(0)).unwrap();
        assert_eq!(r.nodes, vec![1, 2]);
        assert_eq!(r.data, vec![0.0, 0.5, 1.0, 0.0]);

        let k4 = Graph::parse_edge_list("1 2\n1 3\n1 4\n2 3\n2 4\n3 4").unwrap().graph;
        let r = k4.transition_matrix().restrict(&NodeSet::singleton(0)).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(r.get(a, b), if a == b { 0.0 } else { 1.0 / 3.0 });
            }
        }

        assert_eq!(p.restrict(&NodeSet::empty()).unwrap_err(), Error::EmptyTarget);
        assert_eq!(p.restrict(&NodeSet::full(3)).unwrap_err(), Error::FullTarget);
    }

    #[test]
    fn node_set_ops() {
        let s = NodeSet::from_indices([3, 1, 3, 2]);
        assert_eq!(s.as_slice(), &[1, 2, 3]);
        assert_eq!(s.with(0).as_slice(), &[0, 1, 2, 3]);
        assert_eq!(s.without(2).as_slice(), &[1, 3]);
        assert!(NodeSet::from_indices([1, 3]).is_subset(&s));
        assert!(NodeSet::singleton(1) < NodeSet::from_indices([1, 2]));
        assert_eq!(
            NodeSet::singleton(5).cmp_shortlex(&NodeSet::from_indices([0, 1])),
            std::cmp::Ordering::Less
        );
    }
}
