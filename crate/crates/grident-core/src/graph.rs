//! The labeled digraph of a strongly multilinear monomial.
//!
//! The vertex set is the whole group; the monomial's j-th factor
//! `x[i,w]` contributes an edge labeled `i` from the prefix product before
//! position j to the prefix product through position j. Reading the edges
//! in monomial order is an Eulerian path over the edge set starting at the
//! identity. Every edge carries a weight, `inv(src)*dst`, and the group
//! value of any vertex reached from the identity equals the ordered
//! product of edge weights along any path to it.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupElement};
use crate::monomial::Monomial;

/// Edge-labeled digraph on all group elements.
///
/// Equality is exact equality of the label-to-endpoints map, not graph
/// isomorphism: labels are shared between a monomial and its reorderings,
/// which is what makes the comparison meaningful.
#[derive(Clone)]
pub struct MonomialGraph {
    group: FiniteGroup,
    /// label -> (src, dst), 0-based element positions
    edges: BTreeMap<u32, (usize, usize)>,
}

impl MonomialGraph {
    /// The graph of a monomial.
    pub fn of_monomial(m: &Monomial) -> MonomialGraph {
        let group = m.group().clone();
        let mut edges = BTreeMap::new();
        let mut at = 0usize; // identity
        for (var, w) in m.factors() {
            let next = group.mul_pos(at, w.pos());
            edges.insert(*var, (at, next));
            at = next;
        }
        MonomialGraph { group, edges }
    }

    /// Builds a graph from explicit labeled edges. Not every such graph is
    /// the graph of a monomial; path enumeration accepts them all.
    pub fn from_edges(
        group: &FiniteGroup,
        edges: &[(u32, GroupElement, GroupElement)],
    ) -> Result<MonomialGraph> {
        let mut map = BTreeMap::new();
        for (label, src, dst) in edges {
            if src.group() != group || dst.group() != group {
                return Err(Error::GroupMismatch);
            }
            if map.insert(*label, (src.pos(), dst.pos())).is_some() {
                return Err(Error::RepeatedVariable(*label));
            }
        }
        Ok(MonomialGraph {
            group: group.clone(),
            edges: map,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_labels(&self) -> impl Iterator<Item = u32> + '_ {
        self.edges.keys().copied()
    }

    /// Endpoints of the edge with the given label.
    pub fn edge(&self, label: u32) -> Option<(GroupElement, GroupElement)> {
        self.edges
            .get(&label)
            .map(|&(s, d)| (self.group.element_at(s), self.group.element_at(d)))
    }

    /// Edges in label order as (label, src, dst).
    pub fn edges(&self) -> impl Iterator<Item = (u32, GroupElement, GroupElement)> + '_ {
        self.edges
            .iter()
            .map(|(&l, &(s, d))| (l, self.group.element_at(s), self.group.element_at(d)))
    }

    /// Weight of an edge: `inv(src) * dst`.
    pub fn weight(&self, label: u32) -> Option<GroupElement> {
        self.edges.get(&label).map(|&(s, d)| {
            self.group
                .element_at(self.group.mul_pos(self.group.inv_pos(s), d))
        })
    }

    pub(crate) fn edge_map(&self) -> &BTreeMap<u32, (usize, usize)> {
        &self.edges
    }

    /// Deterministic DOT rendering: all group elements as vertices (visited
    /// or not), edges sorted by label, each labeled `label (weight)`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph monomial {\n  rankdir=LR;\n  node [shape=circle];\n");
        for i in 1..=self.group.order() {
            let _ = writeln!(out, "  \"{}\";", self.group.name(i));
        }
        for (&label, &(s, d)) in &self.edges {
            let w = self.weight(label).unwrap();
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{} ({})\"];",
                self.group.name(s + 1),
                self.group.name(d + 1),
                label,
                w.name()
            );
        }
        out.push_str("}\n");
        out
    }
}

impl PartialEq for MonomialGraph {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.edges == other.edges
    }
}

impl Eq for MonomialGraph {}

impl std::hash::Hash for MonomialGraph {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.edges.hash(state);
    }
}

impl std::fmt::Debug for MonomialGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "MonomialGraph{{")?;
        for (l, s, d) in self.edges() {
            write!(f, " {}:({},{})", l, s.name(), d.name())?;
        }
        write!(f, " }}")
    }
}

/// Exact equality of two monomial graphs over the same group.
pub fn graphs_equal(a: &MonomialGraph, b: &MonomialGraph) -> Result<bool> {
    if a.group() != b.group() {
        return Err(Error::GroupMismatch);
    }
    Ok(a.edge_map() == b.edge_map())
}

/// Two monomials are equivalent when one is a reordering of the other and
/// both have the same graph; equivalently, their difference is a graded
/// identity.
pub fn equivalent(m: &Monomial, r: &Monomial) -> Result<bool> {
    if m.group() != r.group() {
        return Err(Error::GroupMismatch);
    }
    if m.sorted_factor_key() != r.sorted_factor_key() {
        return Ok(false);
    }
    graphs_equal(
        &MonomialGraph::of_monomial(m),
        &MonomialGraph::of_monomial(r),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph_of(text: &str, g: &FiniteGroup) -> MonomialGraph {
        MonomialGraph::of_monomial(&Monomial::parse(text, g).unwrap())
    }

    fn edge_names(g: &MonomialGraph, label: u32) -> (String, String) {
        let (s, d) = g.edge(label).unwrap();
        (s.name().to_string(), d.name().to_string())
    }

    #[test]
    fn five_factor_worked_example_edges() {
        let c3 = FiniteGroup::cyclic(3).unwrap();
        let g = graph_of("x[3,s] x[2,s2] x[5,s2] x[4,e] x[1,s]", &c3);
        assert_eq!(g.edge_count(), 5);
        assert_eq!(edge_names(&g, 3), ("e".into(), "s".into()));
        assert_eq!(edge_names(&g, 2), ("s".into(), "e".into()));
        assert_eq!(edge_names(&g, 5), ("e".into(), "s2".into()));
        assert_eq!(edge_names(&g, 4), ("s2".into(), "s2".into()));
        assert_eq!(edge_names(&g, 1), ("s2".into(), "e".into()));
    }

    #[test]
    fn loop_inside_walk_edges() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let g = graph_of("x[1,s] x[2,e] x[3,s] x[4,s]", &c2);
        assert_eq!(edge_names(&g, 1), ("e".into(), "s".into()));
        assert_eq!(edge_names(&g, 2), ("s".into(), "s".into()));
        assert_eq!(edge_names(&g, 3), ("s".into(), "e".into()));
        assert_eq!(edge_names(&g, 4), ("e".into(), "s".into()));
    }

    #[test]
    fn empty_monomial_graph_has_no_edges() {
        let c3 = FiniteGroup::cyclic(3).unwrap();
        let g = MonomialGraph::of_monomial(&Monomial::empty(&c3));
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn graph_equals_itself() {
        let c3 = FiniteGroup::cyclic(3).unwrap();
        let g = graph_of("x[1,s] x[2,s] x[3,s] x[4,s2]", &c3);
        assert!(graphs_equal(&g, &g.clone()).unwrap());
    }

    #[test]
    fn rotated_cycle_reordering_has_same_graph() {
        let c3 = FiniteGroup::cyclic(3).unwrap();
        let a = graph_of("x[1,s] x[2,s] x[3,s] x[4,s2]", &c3);
        let b = graph_of("x[4,s2] x[3,s] x[1,s] x[2,s]", &c3);
        assert!(graphs_equal(&a, &b).unwrap());
    }

    #[test]
    fn loops_at_different_vertices_differ() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let a = graph_of("x[1,e] x[2,s]", &c2);
        let b = graph_of("x[2,s] x[1,e]", &c2);
        // edge 1 is a loop at e in the first, a loop at s in the second
        assert!(!graphs_equal(&a, &b).unwrap());
        assert_eq!(edge_names(&a, 1), ("e".into(), "e".into()));
        assert_eq!(edge_names(&b, 1), ("s".into(), "s".into()));
    }

    #[test]
    fn four_reorderings_pairwise_equivalent() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let texts = [
            "x[1,s] x[2,e] x[3,s] x[4,s]",
            "x[4,s] x[2,e] x[3,s] x[1,s]",
            "x[1,s] x[3,s] x[4,s] x[2,e]",
            "x[4,s] x[3,s] x[1,s] x[2,e]",
        ];
        let ms: Vec<Monomial> = texts
            .iter()
            .map(|t| Monomial::parse(t, &c2).unwrap())
            .collect();
        for a in &ms {
            for b in &ms {
                assert!(equivalent(a, b).unwrap(), "{a} vs {b}");
            }
        }
    }

    #[test]
    fn self_equivalence() {
        let c3 = FiniteGroup::cyclic(3).unwrap();
        let m = Monomial::parse("x[7,s] x[2,e] x[3,s2]", &c3).unwrap();
        assert!(equivalent(&m, &m).unwrap());
    }

    #[test]
    fn swapped_loop_not_equivalent() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let a = Monomial::parse("x[1,e] x[2,s]", &c2).unwrap();
        let b = Monomial::parse("x[2,s] x[1,e]", &c2).unwrap();
        assert!(!equivalent(&a, &b).unwrap());
    }

    #[test]
    fn group_mismatch_is_an_error() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let c3 = FiniteGroup::cyclic(3).unwrap();
        let a = Monomial::parse("x[1,e]", &c2).unwrap();
        let b = Monomial::parse("x[1,e]", &c3).unwrap();
        assert!(matches!(equivalent(&a, &b), Err(Error::GroupMismatch)));
    }

    #[test]
    fn weight_is_src_inverse_times_dst() {
        let c4 = FiniteGroup::cyclic(4).unwrap();
        let m = Monomial::parse("x[1,s2] x[2,s] x[3,e] x[4,s3]", &c4).unwrap();
        let g = MonomialGraph::of_monomial(&m);
        for (label, src, dst) in g.edges() {
            let w = g.weight(label).unwrap();
            assert_eq!(src.inv().mul(&dst).unwrap(), w);
        }
        // weights along the path reproduce the factor weights in order
        for (j, (var, w)) in m.factors().iter().enumerate() {
            assert_eq!(g.weight(*var).unwrap(), *w, "factor {j}");
        }
    }

    #[test]
    fn dot_export_shape_and_determinism() {
        let c3 = FiniteGroup::cyclic(3).unwrap();
        let empty = MonomialGraph::of_monomial(&Monomial::empty(&c3));
        let dot = empty.to_dot();
        assert_eq!(dot.matches("\";").count(), 3);
        assert_eq!(dot.matches("->").count(), 0);

        let g = graph_of("x[3,s] x[2,s2] x[5,s2] x[4,e] x[1,s]", &c3);
        let dot1 = g.to_dot();
        let dot2 = g.to_dot();
        assert_eq!(dot1, dot2);
        assert_eq!(dot1.matches("->").count(), 5);
        assert!(dot1.contains("\"e\" -> \"s\" [label=\"3 (s)\"];"));
    }
}
