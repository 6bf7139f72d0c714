//! Undirected simple graphs on dense adjacency storage.
//!
//! Vertices are indices in `[0, n)`. The adjacency matrix is kept symmetric
//! with a zero diagonal by construction; all mutation goes through
//! [`Graph::set_edge`], which writes both triangles.

use std::collections::BTreeMap;
use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Vertex index, valid for the graph it came from.
pub type VertexId = usize;

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
    labels: BTreeMap<VertexId, String>,
}

impl Graph {
    /// Graph on `n` isolated vertices.
    pub fn empty_graph(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        Ok(Graph { n, adj: vec![false; n * n], labels: BTreeMap::new() })
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Graph::empty_graph(n)?;
        for u in 0..n {
            for v in 0..u {
                g.set_edge(u, v, true);
            }
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::CycleOrder(n));
        }
        let mut g = Graph::empty_graph(n)?;
        for v in 0..n {
            g.set_edge(v, (v + 1) % n, true);
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::PathOrder(n));
        }
        let mut g = Graph::empty_graph(n)?;
        for v in 0..n - 1 {
            g.set_edge(v, v + 1, true);
        }
        Ok(g)
    }

    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut g = Graph::empty_graph(n)?;
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::EdgeList { line: 0, reason: format!("self-loop at {u}") });
            }
            g.set_edge(u, v, true);
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u * self.n + v]
    }

    pub fn set_edge(&mut self, u: VertexId, v: VertexId, present: bool) {
        assert!(u != v, "no self-loops");
        self.adj[u * self.n + v] = present;
        self.adj[v * self.n + u] = present;
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexRange { vertex: v, order: self.n })
        }
    }

    pub fn degree(&self, v: VertexId) -> usize {
        (0..self.n).filter(|&u| self.has_edge(v, u)).count()
    }

    /// Common degree when the graph is regular.
    pub fn regularity(&self) -> Option<usize> {
        let k = self.degree(0);
        (1..self.n).all(|v| self.degree(v) == k).then_some(k)
    }

    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph { n: self.n, adj: vec![false; self.n * self.n], labels: self.labels.clone() };
        for u in 0..self.n {
            for v in 0..u {
                g.set_edge(u, v, !self.has_edge(u, v));
            }
        }
        g
    }

    /// Hop count between `a` and `b`, `None` when unreachable.
    pub fn distance(&self, a: VertexId, b: VertexId) -> Option<usize> {
        assert!(a < self.n && b < self.n, "vertex out of range");
        if a == b {
            return Some(0);
        }
        let mut dist = vec![usize::MAX; self.n];
        dist[a] = 0;
        let mut queue = VecDeque::from([a]);
        while let Some(v) = queue.pop_front() {
            for u in 0..self.n {
                if self.has_edge(v, u) && dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    if u == b {
                        return Some(dist[u]);
                    }
                    queue.push_back(u);
                }
            }
        }
        None
    }

    pub fn is_connected(&self) -> bool {
        (1..self.n).all(|v| self.distance(0, v).is_some())
    }

    /// Largest finite pairwise distance; `None` for a disconnected graph.
    pub fn diameter(&self) -> Option<usize> {
        let mut best = 0;
        for a in 0..self.n {
            for b in a + 1..self.n {
                best = best.max(self.distance(a, b)?);
            }
        }
        Some(best)
    }

    pub fn label(&self, v: VertexId) -> Option<&str> {
        self.labels.get(&v).map(|s| s.as_str())
    }

    pub fn set_label(&mut self, v: VertexId, label: impl Into<String>) {
        self.labels.insert(v, label.into());
    }

    pub fn adjacency_matrix(&self) -> Matrix {
        Matrix::from_fn(self.n, |i, j| if self.has_edge(i, j) { 1.0 } else { 0.0 })
    }

    /// Relabel vertices: vertex `v` of `self` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph { n: self.n, adj: vec![false; self.n * self.n], labels: BTreeMap::new() };
        for (v, label) in &self.labels {
            g.labels.insert(perm[*v], label.clone());
        }
        for (u, v) in self.edges() {
            g.set_edge(perm[u], perm[v], true);
        }
        g
    }

    /// Parse the text edge-list format: a header `n <order>`, then one
    /// `u v` pair per line. `#` starts a comment. Self-loops, duplicate
    /// edges, and out-of-range endpoints are rejected.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut graph: Option<Graph> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split_whitespace();
            match &mut graph {
                None => {
                    if fields.next() != Some("n") {
                        return Err(Error::EdgeList {
                            line: line_no,
                            reason: "expected header `n <order>`".into(),
                        });
                    }
                    let order = parse_field(fields.next(), line_no, "order")?;
                    if fields.next().is_some() {
                        return Err(Error::EdgeList {
                            line: line_no,
                            reason: "trailing fields after header".into(),
                        });
                    }
                    graph = Some(Graph::empty_graph(order).map_err(|_| Error::EdgeList {
                        line: line_no,
                        reason: "order must be at least 1".into(),
                    })?);
                }
                Some(g) => {
                    let u: usize = parse_field(fields.next(), line_no, "endpoint")?;
                    let v: usize = parse_field(fields.next(), line_no, "endpoint")?;
                    if fields.next().is_some() {
                        return Err(Error::EdgeList {
                            line: line_no,
                            reason: "expected exactly two endpoints".into(),
                        });
                    }
                    if u == v {
                        return Err(Error::EdgeList { line: line_no, reason: format!("self-loop at {u}") });
                    }
                    for w in [u, v] {
                        if w >= g.order() {
                            return Err(Error::EdgeList {
                                line: line_no,
                                reason: format!("vertex {w} out of range for order {}", g.order()),
                            });
                        }
                    }
                    if g.has_edge(u, v) {
                        return Err(Error::EdgeList { line: line_no, reason: format!("duplicate edge {u} {v}") });
                    }
                    g.set_edge(u, v, true);
                }
            }
        }
        graph.ok_or(Error::EdgeList { line: 0, reason: "missing header".into() })
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

fn parse_field(field: Option<&str>, line: usize, what: &str) -> Result<usize> {
    field
        .ok_or(Error::EdgeList { line, reason: format!("missing {what}") })?
        .parse()
        .map_err(|_| Error::EdgeList { line, reason: format!("bad {what}") })
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builders_reject_degenerate_orders() {
        assert_eq!(Graph::empty_graph(0), Err(Error::EmptyGraph));
        assert_eq!(Graph::complete(0), Err(Error::EmptyGraph));
        assert_eq!(Graph::cycle(2), Err(Error::CycleOrder(2)));
        assert_eq!(Graph::path(1), Err(Error::PathOrder(1)));
    }

    #[test]
    fn complete_graph_shape() {
        let g = Graph::complete(5).unwrap();
        assert_eq!(g.edge_count(), 10);
        assert_eq!(g.regularity(), Some(4));
        assert_eq!(g.diameter(), Some(1));
    }

    #[test]
    fn five_cycle_is_self_complementary() {
        let c5 = Graph::cycle(5).unwrap();
        let co = c5.complement();
        // complement of C5 is again a 5-cycle (up to labels): connected, 2-regular
        assert_eq!(co.regularity(), Some(2));
        assert!(co.is_connected());
        assert_eq!(co.complement(), c5);
    }

    #[test]
    fn complement_of_empty_is_complete() {
        let g = Graph::empty_graph(4).unwrap().complement();
        assert_eq!(g, Graph::complete(4).unwrap());
    }

    #[test]
    fn path_distances() {
        let p = Graph::path(6).unwrap();
        assert_eq!(p.distance(0, 5), Some(5));
        assert_eq!(p.distance(2, 2), Some(0));
        assert_eq!(p.diameter(), Some(5));
        assert_eq!(p.regularity(), None);
    }

    #[test]
    fn disconnected_distance_is_none() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(g.distance(0, 3), None);
        assert!(!g.is_connected());
        assert_eq!(g.diameter(), None);
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::cycle(5).unwrap();
        let text = g.to_edge_list();
        assert!(text.starts_with("n 5\n"));
        assert_eq!(Graph::parse_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn edge_list_accepts_comments_and_blank_lines() {
        let text = "# a square\nn 4\n0 1\n1 2 # right side\n\n2 3\n0 3\n";
        let g = Graph::parse_edge_list(text).unwrap();
        assert_eq!(g, Graph::cycle(4).unwrap());
    }

    #[test]
    fn edge_list_rejections() {
        for (text, needle) in [
            ("0 1\n", "header"),
            ("n 4\n1 1\n", "self-loop"),
            ("n 4\n0 1\n0 1\n", "duplicate"),
            ("n 4\n0 9\n", "out of range"),
            ("n 4\n0\n", "missing endpoint"),
            ("n 0\n", "at least 1"),
        ] {
            let err = Graph::parse_edge_list(text).unwrap_err();
            let msg = err.to_string();
            assert!(msg.contains(needle), "{text:?} -> {msg}");
        }
    }

    #[test]
    fn labels_survive_permutation() {
        let mut g = Graph::path(3).unwrap();
        g.set_label(0, "in");
        g.set_label(2, "out");
        let h = g.permuted(&[2, 1, 0]);
        assert_eq!(h.label(2), Some("in"));
        assert_eq!(h.label(0), Some("out"));
        assert!(h.has_edge(2, 1) && h.has_edge(1, 0));
    }
}
