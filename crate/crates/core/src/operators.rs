//! Graph products and joins.
//!
//! The two-copy circulant join takes a graph `G` of order `n` and an `n x n`
//! boolean circulant `C` and builds the `2n`-vertex graph with adjacency
//! blocks `[[A, C], [C^T, A]]`. With `C = I` this is two copies of `G`
//! connected by rungs; with `C = J` it is the join `G + G`; everything in
//! between is reachable through other circulant rows. Vertices of the
//! composite are pairs `(u, s)` with `u` a vertex of `G` and `s` the copy.

use crate::circulant::{all_divisors, as_circulant, CirculantSpec, DivisorSet};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// Vertex numbering for two-copy composites.
///
/// `Block` maps `(u, s)` to `s*n + u` (copy 0 first, then copy 1);
/// `Interleaved` maps `(u, s)` to `2u + s`, the ordering under which a
/// palindrome connector keeps the composite circulant.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum JoinLayout {
    Block,
    Interleaved,
}

impl JoinLayout {
    pub fn index(self, n: usize, u: VertexId, s: usize) -> usize {
        debug_assert!(u < n && s < 2);
        match self {
            JoinLayout::Block => s * n + u,
            JoinLayout::Interleaved => 2 * u + s,
        }
    }
}

/// Permutation sending indices in layout `from` to indices in layout `to`
/// for a two-copy composite over an order-`n` base.
pub fn layout_permutation(n: usize, from: JoinLayout, to: JoinLayout) -> Vec<usize> {
    let mut perm = vec![0; 2 * n];
    for u in 0..n {
        for s in 0..2 {
            perm[from.index(n, u, s)] = to.index(n, u, s);
        }
    }
    perm
}

/// Join: both operands plus all edges between them. `g` keeps its vertex
/// indices, `h` is shifted up by `g.order()`.
pub fn join(g: &Graph, h: &Graph) -> Graph {
    let (ng, nh) = (g.order(), h.order());
    let mut out = Graph::empty_graph(ng + nh).expect("operands are nonempty");
    for (u, v) in g.edges() {
        out.set_edge(u, v, true);
    }
    for (u, v) in h.edges() {
        out.set_edge(ng + u, ng + v, true);
    }
    for u in 0..ng {
        for v in 0..nh {
            out.set_edge(u, ng + v, true);
        }
    }
    out
}

/// Cartesian product; vertex `(u, v)` gets index `u * h.order() + v`.
pub fn cartesian(g: &Graph, h: &Graph) -> Graph {
    let (ng, nh) = (g.order(), h.order());
    let mut out = Graph::empty_graph(ng * nh).expect("operands are nonempty");
    for u in 0..ng {
        for (v, w) in h.edges() {
            out.set_edge(u * nh + v, u * nh + w, true);
        }
    }
    for (u, w) in g.edges() {
        for v in 0..nh {
            out.set_edge(u * nh + v, w * nh + v, true);
        }
    }
    out
}

/// Iterated join of `m` copies of `g`: each copy keeps its own edges and is
/// completely connected to every other copy. Copy `c` occupies indices
/// `c*n .. (c+1)*n`.
pub fn self_join(g: &Graph, m: usize) -> Result<Graph> {
    if m == 0 {
        return Err(Error::ZeroCopies);
    }
    let n = g.order();
    let mut out = Graph::empty_graph(m * n)?;
    for c in 0..m {
        for (u, v) in g.edges() {
            out.set_edge(c * n + u, c * n + v, true);
        }
    }
    for c in 0..m {
        for d in c + 1..m {
            for u in 0..n {
                for v in 0..n {
                    out.set_edge(c * n + u, d * n + v, true);
                }
            }
        }
    }
    Ok(out)
}

/// Two copies of `g` with cross edges given by the circulant `c`:
/// `(u, 0) ~ (v, 1)` iff `c.row[(v - u) mod n]`.
pub fn circulant_join(g: &Graph, c: &CirculantSpec, layout: JoinLayout) -> Result<Graph> {
    let n = g.order();
    if c.order() != n {
        return Err(Error::OrderMismatch { left: n, right: c.order() });
    }
    let mut out = Graph::empty_graph(2 * n)?;
    for (u, v) in g.edges() {
        for s in 0..2 {
            out.set_edge(layout.index(n, u, s), layout.index(n, v, s), true);
        }
    }
    for u in 0..n {
        for v in 0..n {
            if c.row()[(n + v - u) % n] {
                out.set_edge(layout.index(n, u, 0), layout.index(n, v, 1), true);
            }
        }
    }
    if layout == JoinLayout::Interleaved && c.is_palindrome() && as_circulant(g).is_some() {
        debug_assert!(as_circulant(&out).is_some(), "palindrome connector must keep the composite circulant");
    }
    Ok(out)
}

/// Whether `x` is an odd prime. Connector orders keep this in trial-division
/// territory.
fn is_odd_prime(x: u64) -> bool {
    if x < 3 || x.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= x {
        if x.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Structured connector over `n = 2^u * m` (`u >= 3`, odd `m >= 3`).
///
/// For each chosen divisor `q` of `m`, position `j` is set when `2j + 1` is
/// divisible by `q` but by no `r = q * p` with `p` an odd prime and `r | m`;
/// equivalently, when `gcd(2j + 1, m) = q`. Distinct `q` therefore mark
/// disjoint positions, and the union over `q` forms the row. The result is
/// always a palindrome.
pub fn connector(n: usize, q: &DivisorSet) -> Result<CirculantSpec> {
    let u = (n as u64).trailing_zeros();
    let m = (n as u64) >> u;
    if n == 0 || u < 3 || m < 3 {
        return Err(Error::ConnectorOrder(n));
    }
    if q.n() != m || q.is_empty() {
        return Err(Error::ConnectorDivisors { m });
    }
    let dbar = all_divisors(m);
    let mut row = vec![false; n];
    for (j, slot) in row.iter_mut().enumerate() {
        let x = 2 * j as u64 + 1;
        let mut hits = 0;
        for qi in q.divisors() {
            let neighbors_clear = dbar
                .iter()
                .filter(|&&r| r % qi == 0 && is_odd_prime(r / qi))
                .all(|&r| !x.is_multiple_of(r));
            if x.is_multiple_of(qi) && neighbors_clear {
                hits += 1;
            }
        }
        assert!(hits <= 1, "divisor indicators must be disjoint");
        *slot = hits == 1;
    }
    let spec = CirculantSpec::from_row(row)?;
    assert!(spec.is_palindrome(), "structured connectors are palindromes");
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circulant::{circulant_graph, icg};

    fn icg8_14() -> Graph {
        icg(&DivisorSet::proper(8, [1, 4]).unwrap()).unwrap()
    }

    #[test]
    fn join_of_empties_is_complete_bipartite() {
        let a = Graph::empty_graph(2).unwrap();
        let b = Graph::empty_graph(3).unwrap();
        let j = join(&a, &b);
        assert_eq!(j.edge_count(), 6);
        assert_eq!(j.distance(0, 1), Some(2));
    }

    #[test]
    fn join_of_two_k1_bars_is_p3_and_c4() {
        let k1 = Graph::empty_graph(1).unwrap();
        let k2bar = Graph::empty_graph(2).unwrap();
        assert_eq!(join(&k2bar, &k1), Graph::from_edges(3, &[(0, 2), (1, 2)]).unwrap());
        let c4 = join(&k2bar, &k2bar);
        assert_eq!(c4.regularity(), Some(2));
        assert!(c4.is_connected());
        assert_eq!(c4.edge_count(), 4);
    }

    #[test]
    fn cartesian_of_k2s_is_the_cube() {
        let k2 = Graph::complete(2).unwrap();
        let q3 = cartesian(&k2, &cartesian(&k2, &k2));
        assert_eq!(q3.order(), 8);
        assert_eq!(q3.regularity(), Some(3));
        assert_eq!(q3.distance(0, 7), Some(3));
    }

    #[test]
    fn self_join_degree() {
        let c4 = Graph::cycle(4).unwrap();
        let g = self_join(&c4, 2).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.regularity(), Some(6)); // 2 from the cycle + 4 across
        assert!(self_join(&c4, 0).is_err());
        assert_eq!(self_join(&c4, 1).unwrap(), c4);
    }

    #[test]
    fn self_join_two_copies_equals_plain_join() {
        let g = icg8_14();
        assert_eq!(self_join(&g, 2).unwrap(), join(&g, &g));
    }

    #[test]
    fn block_layout_identity_connector_is_the_bunkbed() {
        let g = icg8_14();
        let bunk = circulant_join(&g, &CirculantSpec::identity(8), JoinLayout::Block).unwrap();
        let k2 = Graph::complete(2).unwrap();
        assert_eq!(bunk, cartesian(&k2, &g));
    }

    #[test]
    fn block_layout_ones_connector_is_the_join() {
        let g = icg8_14();
        let jn = circulant_join(&g, &CirculantSpec::all_ones(8), JoinLayout::Block).unwrap();
        assert_eq!(jn, join(&g, &g));
    }

    #[test]
    fn layouts_are_permutations_of_each_other() {
        let g = icg8_14();
        let c = circulant_permutation(8, 3);
        let block = circulant_join(&g, &c, JoinLayout::Block).unwrap();
        let inter = circulant_join(&g, &c, JoinLayout::Interleaved).unwrap();
        let perm = layout_permutation(8, JoinLayout::Block, JoinLayout::Interleaved);
        assert_eq!(block.permuted(&perm), inter);
        let back = layout_permutation(8, JoinLayout::Interleaved, JoinLayout::Block);
        assert_eq!(inter.permuted(&back), block);
    }

    use crate::circulant::circulant_permutation;

    #[test]
    fn connector_rejects_bad_orders_and_divisors() {
        let q = DivisorSet::extended(3, [3]).unwrap();
        assert!(matches!(connector(12, &q), Err(Error::ConnectorOrder(12)))); // u = 2
        assert!(matches!(connector(16, &q), Err(Error::ConnectorOrder(16)))); // m = 1
        let empty = DivisorSet::extended(3, []).unwrap();
        assert!(matches!(connector(24, &empty), Err(Error::ConnectorDivisors { .. })));
        let wrong_m = DivisorSet::extended(5, [5]).unwrap();
        assert!(matches!(connector(24, &wrong_m), Err(Error::ConnectorDivisors { .. })));
    }

    #[test]
    fn connector_rows_for_n_24() {
        // q = 3 marks j with 2j+1 divisible by 3, i.e. j = 1 mod 3
        let q3 = connector(24, &DivisorSet::extended(3, [3]).unwrap()).unwrap();
        let ones: Vec<usize> = (0..24).filter(|&j| q3.row()[j]).collect();
        assert_eq!(ones, vec![1, 4, 7, 10, 13, 16, 19, 22]);

        // q = 1 marks the complement: 2j+1 coprime to 3
        let q1 = connector(24, &DivisorSet::extended(3, [1]).unwrap()).unwrap();
        assert_eq!(q1.ones(), 16);
        for j in 0..24 {
            assert_eq!(q1.row()[j], !q3.row()[j]);
        }

        // the full divisor choice degenerates to the all-ones row
        let q13 = connector(24, &DivisorSet::extended(3, [1, 3]).unwrap()).unwrap();
        assert_eq!(q13, CirculantSpec::all_ones(24));
    }

    #[test]
    fn interleaved_composite_row_interlaces_base_and_connector() {
        let g = icg(&DivisorSet::proper(24, [1, 6]).unwrap()).unwrap();
        let c = connector(24, &DivisorSet::extended(3, [3]).unwrap()).unwrap();
        let composite = circulant_join(&g, &c, JoinLayout::Interleaved).unwrap();
        let row = as_circulant(&composite).unwrap();
        let base = as_circulant(&g).unwrap();
        for k in 0..48 {
            let expect = if k % 2 == 0 { k > 0 && base.row()[k / 2] } else { c.row()[k / 2] };
            assert_eq!(row.row()[k], expect, "position {k}");
        }
    }

    #[test]
    fn composite_identity_with_the_doubled_divisor_set() {
        // interleaved join of ICG_24({1,6}) through the q=3 connector is
        // exactly ICG_48({2,12,3})
        let g = icg(&DivisorSet::proper(24, [1, 6]).unwrap()).unwrap();
        let c = connector(24, &DivisorSet::extended(3, [3]).unwrap()).unwrap();
        let composite = circulant_join(&g, &c, JoinLayout::Interleaved).unwrap();
        let target = icg(&DivisorSet::proper(48, [2, 12, 3]).unwrap()).unwrap();
        assert_eq!(composite, target);
    }

    #[test]
    fn circulant_join_checks_orders() {
        let g = Graph::cycle(6).unwrap();
        let c = CirculantSpec::identity(8);
        assert!(matches!(
            circulant_join(&g, &c, JoinLayout::Block),
            Err(Error::OrderMismatch { .. })
        ));
    }

    #[test]
    fn non_palindrome_connector_still_builds_a_graph() {
        let g = circulant_graph(6, &[1, 5]).unwrap();
        let c = circulant_permutation(6, 2); // not a palindrome
        let out = circulant_join(&g, &c, JoinLayout::Interleaved).unwrap();
        assert_eq!(out.order(), 12);
        assert_eq!(out.regularity(), Some(3));
        assert!(as_circulant(&out).is_none());
    }
}
