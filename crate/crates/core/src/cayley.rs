//! Cayley graphs and the three equivalent perfect-code criteria: graph
//! domination, the group-ring product, and transversals.

use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::element::{ElementId, ElementSet};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::subgroups::{coset_index, Side, Subgroup};

/// From this order on, adjacency is cached as bitsets instead of being
/// recomputed from the table.
pub const ADJACENCY_CACHE_THRESHOLD: usize = 1024;

/// An inverse-closed set of non-identity elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct ConnectionSet {
    elements: ElementSet,
}

impl ConnectionSet {
    pub fn new(g: &FiniteGroup, elements: ElementSet) -> Result<Self> {
        if elements.universe() != g.order() {
            return Err(Error::InvalidSpec(format!(
                "connection set is over {} elements but the group has order {}",
                elements.universe(),
                g.order()
            )));
        }
        if elements.contains(ElementId::IDENTITY) {
            return Err(Error::ContainsIdentity);
        }
        if let Some(element) = elements.iter().find(|&s| !elements.contains(g.inv(s))) {
            return Err(Error::NotInverseClosed { element });
        }
        Ok(ConnectionSet { elements })
    }

    pub fn empty(g: &FiniteGroup) -> Self {
        ConnectionSet {
            elements: g.empty_set(),
        }
    }

    /// `G ∖ {e}`.
    pub fn complete(g: &FiniteGroup) -> Self {
        let mut elements = g.full_set();
        elements.remove(ElementId::IDENTITY);
        ConnectionSet { elements }
    }

    pub fn elements(&self) -> &ElementSet {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `S ∪ {e}`.
    pub fn with_identity(&self) -> ElementSet {
        let mut t = self.elements.clone();
        t.insert(ElementId::IDENTITY);
        t
    }
}

/// `Cay(G, S)`: `x ~ y` iff `y·x⁻¹ ∈ S`.
#[derive(Clone, Debug)]
pub struct CayleyGraph<'g> {
    group: &'g FiniteGroup,
    connection: ConnectionSet,
    adjacency: Option<Vec<FixedBitSet>>,
}

impl<'g> CayleyGraph<'g> {
    pub fn new(group: &'g FiniteGroup, connection: ConnectionSet) -> Self {
        let adjacency = (group.order() >= ADJACENCY_CACHE_THRESHOLD).then(|| {
            group
                .elements()
                .map(|x| {
                    let mut row = FixedBitSet::with_capacity(group.order());
                    for s in connection.elements().iter() {
                        row.insert(group.mul(s, x).index());
                    }
                    row
                })
                .collect()
        });
        CayleyGraph {
            group,
            connection,
            adjacency,
        }
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    pub fn connection_set(&self) -> &ConnectionSet {
        &self.connection
    }

    pub fn vertex_count(&self) -> usize {
        self.group.order()
    }

    pub fn degree(&self) -> usize {
        self.connection.len()
    }

    pub fn edge_count(&self) -> usize {
        self.vertex_count() * self.degree() / 2
    }

    pub fn is_adjacent(&self, x: ElementId, y: ElementId) -> bool {
        match &self.adjacency {
            Some(rows) => rows[x.index()].contains(y.index()),
            None => self
                .connection
                .elements()
                .contains(self.group.mul(y, self.group.inv(x))),
        }
    }

    /// Neighbours `s·x` for `s ∈ S`, in connection-set order.
    pub fn neighbors(&self, x: ElementId) -> impl Iterator<Item = ElementId> + '_ {
        self.connection.elements().iter().map(move |s| self.group.mul(s, x))
    }

    /// Edges `(x, y)` with `x < y`, sorted.
    pub fn edges(&self) -> Vec<(ElementId, ElementId)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for x in self.group.elements() {
            let mut ns: Vec<ElementId> = self.neighbors(x).filter(|&y| y > x).collect();
            ns.sort_unstable();
            out.extend(ns.into_iter().map(|y| (x, y)));
        }
        out
    }

    /// Connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<ElementId>> {
        let mut seen = self.group.empty_set();
        let mut out = Vec::new();
        for start in self.group.elements() {
            if seen.contains(start) {
                continue;
            }
            seen.insert(start);
            let mut comp = vec![start];
            let mut i = 0;
            while i < comp.len() {
                let x = comp[i];
                for y in self.neighbors(x) {
                    if seen.insert(y) {
                        comp.push(y);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

/// Builds `Cay(G, S)` after checking `e ∉ S` and `S⁻¹ = S`.
pub fn build_cayley(g: &FiniteGroup, s: ElementSet) -> Result<CayleyGraph<'_>> {
    Ok(CayleyGraph::new(g, ConnectionSet::new(g, s)?))
}

/// `C` is independent and every vertex outside `C` has exactly one
/// neighbour in `C`.
pub fn is_perfect_code_graph(graph: &CayleyGraph<'_>, code: &ElementSet) -> bool {
    let members: Vec<ElementId> = code.iter().collect();
    graph.group().elements().all(|v| {
        let hits = members.iter().filter(|&&c| graph.is_adjacent(v, c)).count();
        if code.contains(v) {
            hits == 0
        } else {
            hits == 1
        }
    })
}

/// Coefficients of the group-ring product `(S ∪ {e})·C`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct MultiplicityMap {
    counts: Vec<u32>,
}

impl MultiplicityMap {
    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn get(&self, g: ElementId) -> u32 {
        self.counts[g.index()]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().map(|&c| u64::from(c)).sum()
    }

    /// Every element is covered exactly once.
    pub fn is_all_ones(&self) -> bool {
        self.counts.iter().all(|&c| c == 1)
    }

    /// Elements whose coefficient is not 1.
    pub fn defects(&self) -> Vec<(ElementId, u32)> {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 1)
            .map(|(i, &c)| (ElementId::from(i), c))
            .collect()
    }
}

/// `μ[g] = #{(s, c) ∈ (S ∪ {e}) × C : s·c = g}`.
pub fn group_ring_product_check(g: &FiniteGroup, s: &ConnectionSet, code: &ElementSet) -> MultiplicityMap {
    let mut counts = vec![0u32; g.order()];
    for a in s.with_identity().iter() {
        for c in code.iter() {
            counts[g.mul(a, c).index()] += 1;
        }
    }
    MultiplicityMap { counts }
}

/// `T` has `[G:H]` elements and meets every coset on `side` exactly once.
pub fn is_transversal(g: &FiniteGroup, h: &Subgroup, t: &ElementSet, side: Side) -> bool {
    let index = h.index_in(g);
    if t.len() != index {
        return false;
    }
    let coset = coset_index(g, h, side);
    let mut hit = vec![false; index];
    for x in t.iter() {
        let c = coset[x.index()];
        if hit[c] {
            return false;
        }
        hit[c] = true;
    }
    true
}

/// Graphviz rendering. Vertices are element indices labelled by the group's
/// labels; `highlight` vertices are filled.
pub fn export_dot(graph: &CayleyGraph<'_>, highlight: &ElementSet) -> String {
    let g = graph.group();
    let mut out = String::from("graph cayley {\n");
    for v in g.elements() {
        let label = g.label(v).replace('\\', "\\\\").replace('"', "\\\"");
        if highlight.contains(v) {
            let _ = writeln!(out, "  {} [label=\"{label}\", style=filled, fillcolor=gold];", v.0);
        } else {
            let _ = writeln!(out, "  {} [label=\"{label}\"];", v.0);
        }
    }
    for (x, y) in graph.edges() {
        let _ = writeln!(out, "  {} -- {};", x.0, y.0);
    }
    out.push_str("}\n");
    out
}
