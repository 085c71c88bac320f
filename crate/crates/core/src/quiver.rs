//! Finite quivers: directed multigraphs with labeled vertices and arrows.
//!
//! Loops and parallel arrows are allowed. Quivers are immutable after
//! construction and keep their vertex and arrow lists sorted by id, so
//! serialization is byte-stable and iteration order is deterministic.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Identifier of a vertex. Opaque, nonempty, unique within one quiver.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(String);

/// Identifier of an arrow. Opaque, nonempty, unique within one quiver.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ArrowId(String);

macro_rules! impl_id {
    ($ty:ident) => {
        impl $ty {
            pub fn new(id: impl Into<String>) -> Self {
                $ty(id.into())
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $ty {
            fn from(s: &str) -> Self {
                $ty(s.to_string())
            }
        }

        impl From<String> for $ty {
            fn from(s: String) -> Self {
                $ty(s)
            }
        }
    };
}

impl_id!(VertexId);
impl_id!(ArrowId);

/// A labeled vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: VertexId,
    pub label: String,
}

impl Vertex {
    pub fn new(id: impl Into<VertexId>, label: impl Into<String>) -> Self {
        Vertex {
            id: id.into(),
            label: label.into(),
        }
    }
}

/// A labeled arrow between two vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub id: ArrowId,
    #[serde(rename = "src")]
    pub source: VertexId,
    #[serde(rename = "tgt")]
    pub target: VertexId,
    pub label: String,
}

impl Arrow {
    pub fn new(
        id: impl Into<ArrowId>,
        source: impl Into<VertexId>,
        target: impl Into<VertexId>,
        label: impl Into<String>,
    ) -> Self {
        Arrow {
            id: id.into(),
            source: source.into(),
            target: target.into(),
            label: label.into(),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuiverError {
    #[error("empty {kind} id")]
    EmptyId { kind: &'static str },
    #[error("duplicate {kind} id `{id}`")]
    DuplicateId { kind: &'static str, id: String },
    #[error("arrow `{arrow}` references unknown vertex `{vertex}`")]
    DanglingEndpoint { arrow: String, vertex: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("pushout legs do not share a domain")]
    InvalidSpan,
    #[error("invalid graph morphism: {0}")]
    InvalidMorphism(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MorphismError {
    #[error("{kind} `{id}` is not mapped")]
    PartialMap { kind: &'static str, id: String },
    #[error("{kind} `{id}` maps to `{image}`, which is not in the codomain")]
    UnknownImage {
        kind: &'static str,
        id: String,
        image: String,
    },
}

#[derive(Serialize, Deserialize)]
struct QuiverData {
    vertices: Vec<Vertex>,
    arrows: Vec<Arrow>,
}

/// A finite quiver. Vertices and arrows are stored sorted by id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "QuiverData", into = "QuiverData")]
pub struct Quiver {
    vertices: Vec<Vertex>,
    arrows: Vec<Arrow>,
}

impl TryFrom<QuiverData> for Quiver {
    type Error = QuiverError;

    fn try_from(data: QuiverData) -> Result<Self, QuiverError> {
        Quiver::new(data.vertices, data.arrows)
    }
}

impl From<Quiver> for QuiverData {
    fn from(q: Quiver) -> QuiverData {
        QuiverData {
            vertices: q.vertices,
            arrows: q.arrows,
        }
    }
}

impl Quiver {
    /// Validates and builds a quiver. Vertex and arrow lists are sorted by id.
    pub fn new(vertices: Vec<Vertex>, arrows: Vec<Arrow>) -> Result<Self, QuiverError> {
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if v.id.as_str().is_empty() {
                return Err(QuiverError::EmptyId { kind: "vertex" });
            }
            if !seen.insert(v.id.clone()) {
                return Err(QuiverError::DuplicateId {
                    kind: "vertex",
                    id: v.id.to_string(),
                });
            }
        }
        let mut seen_arrows = BTreeSet::new();
        for a in &arrows {
            if a.id.as_str().is_empty() {
                return Err(QuiverError::EmptyId { kind: "arrow" });
            }
            if !seen_arrows.insert(a.id.clone()) {
                return Err(QuiverError::DuplicateId {
                    kind: "arrow",
                    id: a.id.to_string(),
                });
            }
            for endpoint in [&a.source, &a.target] {
                if !seen.contains(endpoint) {
                    return Err(QuiverError::DanglingEndpoint {
                        arrow: a.id.to_string(),
                        vertex: endpoint.to_string(),
                    });
                }
            }
        }
        let mut vertices = vertices;
        let mut arrows = arrows;
        vertices.sort_by(|a, b| a.id.cmp(&b.id));
        arrows.sort_by(|a, b| a.id.cmp(&b.id));
        Ok(Quiver { vertices, arrows })
    }

    /// Terse constructor from `(id, label)` and `(id, src, tgt, label)` tuples.
    pub fn build(
        vertices: &[(&str, &str)],
        arrows: &[(&str, &str, &str, &str)],
    ) -> Result<Self, QuiverError> {
        Quiver::new(
            vertices.iter().map(|(id, l)| Vertex::new(*id, *l)).collect(),
            arrows
                .iter()
                .map(|(id, s, t, l)| Arrow::new(*id, *s, *t, *l))
                .collect(),
        )
    }

    pub fn empty() -> Self {
        Quiver {
            vertices: Vec::new(),
            arrows: Vec::new(),
        }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex(&self, id: &VertexId) -> Option<&Vertex> {
        self.vertices
            .binary_search_by(|v| v.id.cmp(id))
            .ok()
            .map(|i| &self.vertices[i])
    }

    pub fn arrow(&self, id: &ArrowId) -> Option<&Arrow> {
        self.arrows
            .binary_search_by(|a| a.id.cmp(id))
            .ok()
            .map(|i| &self.arrows[i])
    }

    pub fn has_vertex(&self, id: &VertexId) -> bool {
        self.vertex(id).is_some()
    }

    /// Outgoing arrows of `v`, in arrow-id order.
    pub fn outgoing(&self, v: &VertexId) -> Vec<&Arrow> {
        self.arrows.iter().filter(|a| &a.source == v).collect()
    }

    pub fn is_acyclic(&self) -> bool {
        find_oriented_cycle(self).is_none()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("quiver serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// A morphism of quivers: a vertex map and an arrow map that respect
/// sources and targets. The maps are plain data; [`GraphMorphism::check`]
/// verifies the commuting conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphMorphism {
    pub domain: Quiver,
    pub codomain: Quiver,
    pub vertex_map: BTreeMap<VertexId, VertexId>,
    pub arrow_map: BTreeMap<ArrowId, ArrowId>,
}

impl GraphMorphism {
    pub fn new(
        domain: Quiver,
        codomain: Quiver,
        vertex_map: BTreeMap<VertexId, VertexId>,
        arrow_map: BTreeMap<ArrowId, ArrowId>,
    ) -> Self {
        GraphMorphism {
            domain,
            codomain,
            vertex_map,
            arrow_map,
        }
    }

    pub fn identity(q: &Quiver) -> Self {
        GraphMorphism {
            domain: q.clone(),
            codomain: q.clone(),
            vertex_map: q.vertices().iter().map(|v| (v.id.clone(), v.id.clone())).collect(),
            arrow_map: q.arrows().iter().map(|a| (a.id.clone(), a.id.clone())).collect(),
        }
    }

    /// Checks that the maps are total, land in the codomain, and satisfy
    /// s(f(e)) = f(s(e)) and t(f(e)) = f(t(e)) for every arrow e.
    ///
    /// Totality failures are errors; a commuting failure is `Ok(false)`.
    pub fn check(&self) -> Result<bool, MorphismError> {
        for v in self.domain.vertices() {
            let image = self.vertex_map.get(&v.id).ok_or(MorphismError::PartialMap {
                kind: "vertex",
                id: v.id.to_string(),
            })?;
            if !self.codomain.has_vertex(image) {
                return Err(MorphismError::UnknownImage {
                    kind: "vertex",
                    id: v.id.to_string(),
                    image: image.to_string(),
                });
            }
        }
        for a in self.domain.arrows() {
            let image_id = self.arrow_map.get(&a.id).ok_or(MorphismError::PartialMap {
                kind: "arrow",
                id: a.id.to_string(),
            })?;
            let image = self
                .codomain
                .arrow(image_id)
                .ok_or(MorphismError::UnknownImage {
                    kind: "arrow",
                    id: a.id.to_string(),
                    image: image_id.to_string(),
                })?;
            if image.source != self.vertex_map[&a.source] || image.target != self.vertex_map[&a.target]
            {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Composition `g ∘ f` (`f` applied first). Requires cod(f) = dom(g).
    pub fn compose(g: &GraphMorphism, f: &GraphMorphism) -> Result<GraphMorphism, QuiverError> {
        if f.codomain != g.domain {
            return Err(QuiverError::InvalidMorphism(
                "composition endpoints do not match".into(),
            ));
        }
        let vertex_map = f
            .vertex_map
            .iter()
            .filter_map(|(k, v)| g.vertex_map.get(v).map(|w| (k.clone(), w.clone())))
            .collect();
        let arrow_map = f
            .arrow_map
            .iter()
            .filter_map(|(k, v)| g.arrow_map.get(v).map(|w| (k.clone(), w.clone())))
            .collect();
        Ok(GraphMorphism::new(
            f.domain.clone(),
            g.codomain.clone(),
            vertex_map,
            arrow_map,
        ))
    }
}

/// Checks a morphism's commuting conditions. See [`GraphMorphism::check`].
pub fn check_graph_morphism(m: &GraphMorphism) -> Result<bool, MorphismError> {
    m.check()
}

/// True iff the underlying undirected graph has exactly one connected
/// component. The empty quiver is not connected; a single isolated vertex is.
pub fn is_weakly_connected(q: &Quiver) -> bool {
    let Some(start) = q.vertices().first() else {
        return false;
    };
    let mut adjacency: BTreeMap<&VertexId, Vec<&VertexId>> = BTreeMap::new();
    for a in q.arrows() {
        adjacency.entry(&a.source).or_default().push(&a.target);
        adjacency.entry(&a.target).or_default().push(&a.source);
    }
    let mut visited = BTreeSet::new();
    let mut queue = VecDeque::from([&start.id]);
    visited.insert(&start.id);
    while let Some(v) = queue.pop_front() {
        for w in adjacency.get(v).into_iter().flatten() {
            if visited.insert(w) {
                queue.push_back(w);
            }
        }
    }
    visited.len() == q.vertices().len()
}

/// Finds an oriented cycle: a nonempty composable arrow sequence returning
/// to its start vertex. Returns `None` exactly when the quiver is a DAG.
pub fn find_oriented_cycle(q: &Quiver) -> Option<Vec<ArrowId>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Color {
        White,
        Gray,
        Black,
    }
    let mut color: BTreeMap<&VertexId, Color> =
        q.vertices().iter().map(|v| (&v.id, Color::White)).collect();
    let mut outgoing: BTreeMap<&VertexId, Vec<&Arrow>> = BTreeMap::new();
    for a in q.arrows() {
        outgoing.entry(&a.source).or_default().push(a);
    }

    for root in q.vertices() {
        if color[&root.id] != Color::White {
            continue;
        }
        // Explicit DFS stack: (vertex, index into its outgoing-arrow list).
        let mut stack: Vec<(&VertexId, usize)> = vec![(&root.id, 0)];
        let mut chain_vertices: Vec<&VertexId> = vec![&root.id];
        let mut chain_arrows: Vec<&ArrowId> = Vec::new();
        *color.get_mut(&root.id).unwrap() = Color::Gray;

        while let Some((v, idx)) = stack.last_mut() {
            let arcs = outgoing.get(*v).map(Vec::as_slice).unwrap_or(&[]);
            if *idx < arcs.len() {
                let arrow = arcs[*idx];
                *idx += 1;
                match color[&arrow.target] {
                    Color::White => {
                        *color.get_mut(&arrow.target).unwrap() = Color::Gray;
                        chain_arrows.push(&arrow.id);
                        chain_vertices.push(&arrow.target);
                        stack.push((&arrow.target, 0));
                    }
                    Color::Gray => {
                        let pos = chain_vertices
                            .iter()
                            .position(|u| **u == arrow.target)
                            .expect("gray vertex is on the current chain");
                        let mut cycle: Vec<ArrowId> =
                            chain_arrows[pos..].iter().map(|a| (*a).clone()).collect();
                        cycle.push(arrow.id.clone());
                        return Some(cycle);
                    }
                    Color::Black => {}
                }
            } else {
                *color.get_mut(*v).unwrap() = Color::Black;
                stack.pop();
                chain_vertices.pop();
                chain_arrows.pop();
            }
        }
    }
    None
}

/// Structural summary used to decide whether an ontology graph supports
/// the category-theoretic constructions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategorificationReport {
    /// Always true for this data model; reported for completeness.
    pub finite: bool,
    pub nonempty: bool,
    pub connected: bool,
    pub acyclic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_cycle: Option<Vec<ArrowId>>,
}

impl CategorificationReport {
    /// The headline predicate: finite, nonempty, and weakly connected.
    /// Acyclicity is reported separately; representation-theoretic
    /// constructions additionally require it.
    pub fn accepted(&self) -> bool {
        self.finite && self.nonempty && self.connected
    }
}

/// Computes the categorification report for a quiver.
pub fn accepts_categorification(q: &Quiver) -> CategorificationReport {
    let witness_cycle = find_oriented_cycle(q);
    CategorificationReport {
        finite: true,
        nonempty: !q.vertices().is_empty(),
        connected: is_weakly_connected(q),
        acyclic: witness_cycle.is_none(),
        witness_cycle,
    }
}

/// Result of gluing two quivers along a shared sub-quiver.
#[derive(Debug, Clone)]
pub struct Pushout {
    pub quiver: Quiver,
    pub inj_left: GraphMorphism,
    pub inj_right: GraphMorphism,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Side {
    Left,
    Right,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, i: usize) -> usize {
        if self.parent[i] != i {
            let root = self.find(self.parent[i]);
            self.parent[i] = root;
        }
        self.parent[i]
    }

    fn union(&mut self, i: usize, j: usize) {
        let (ri, rj) = (self.find(i), self.find(j));
        if ri != rj {
            self.parent[ri] = rj;
        }
    }
}

/// Quotients the tagged members into classes and assigns each class a
/// deterministic canonical id: the lexicographically least member id,
/// disambiguated with a `~n` suffix when distinct classes collide.
fn quotient_ids(
    members: &[(Side, String, String)], // (side, id, label)
    unions: &[(usize, usize)],
) -> (Vec<(String, String)>, BTreeMap<(Side, String), usize>) {
    let mut uf = UnionFind::new(members.len());
    for &(i, j) in unions {
        uf.union(i, j);
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..members.len() {
        let root = uf.find(i);
        classes.entry(root).or_default().push(i);
    }
    // Sort classes by their sorted member keys for a deterministic order.
    let mut sorted_classes: Vec<Vec<usize>> = classes.into_values().collect();
    for class in &mut sorted_classes {
        class.sort_by_key(|&i| (members[i].1.clone(), members[i].0));
    }
    sorted_classes.sort_by_key(|class| {
        class
            .iter()
            .map(|&i| (members[i].1.clone(), members[i].0))
            .collect::<Vec<_>>()
    });

    let mut used: BTreeMap<String, usize> = BTreeMap::new();
    let mut canonical: Vec<(String, String)> = Vec::new();
    let mut index: BTreeMap<(Side, String), usize> = BTreeMap::new();
    for (class_idx, class) in sorted_classes.iter().enumerate() {
        let least = class[0];
        let base = members[least].1.clone();
        let label = members[least].2.clone();
        let count = used.entry(base.clone()).or_insert(0);
        *count += 1;
        let id = if *count == 1 {
            base
        } else {
            format!("{base}~{count}")
        };
        canonical.push((id, label));
        for &i in class {
            index.insert((members[i].0, members[i].1.clone()), class_idx);
        }
    }
    (canonical, index)
}

/// Pushout of the span `G1 <-f- G0 -g-> G2`, computed componentwise as the
/// quotient of the disjoint union by the span-generated equivalence.
pub fn pushout(f: &GraphMorphism, g: &GraphMorphism) -> Result<Pushout, QuiverError> {
    if f.domain != g.domain {
        return Err(QuiverError::InvalidSpan);
    }
    for (leg, name) in [(f, "left"), (g, "right")] {
        match leg.check() {
            Ok(true) => {}
            Ok(false) => {
                return Err(QuiverError::InvalidMorphism(format!(
                    "{name} leg does not commute with sources/targets"
                )))
            }
            Err(e) => return Err(QuiverError::InvalidMorphism(format!("{name} leg: {e}"))),
        }
    }
    let (g1, g2) = (&f.codomain, &g.codomain);

    let mut vertex_members: Vec<(Side, String, String)> = Vec::new();
    let mut vertex_pos: BTreeMap<(Side, &VertexId), usize> = BTreeMap::new();
    for (side, quiver) in [(Side::Left, g1), (Side::Right, g2)] {
        for v in quiver.vertices() {
            vertex_pos.insert((side, &v.id), vertex_members.len());
            vertex_members.push((side, v.id.to_string(), v.label.clone()));
        }
    }
    let vertex_unions: Vec<(usize, usize)> = f
        .domain
        .vertices()
        .iter()
        .map(|v| {
            (
                vertex_pos[&(Side::Left, &f.vertex_map[&v.id])],
                vertex_pos[&(Side::Right, &g.vertex_map[&v.id])],
            )
        })
        .collect();
    let (vertex_canon, vertex_index) = quotient_ids(&vertex_members, &vertex_unions);

    let mut arrow_members: Vec<(Side, String, String)> = Vec::new();
    let mut arrow_pos: BTreeMap<(Side, &ArrowId), usize> = BTreeMap::new();
    let mut arrow_refs: Vec<(Side, &Arrow)> = Vec::new();
    for (side, quiver) in [(Side::Left, g1), (Side::Right, g2)] {
        for a in quiver.arrows() {
            arrow_pos.insert((side, &a.id), arrow_members.len());
            arrow_members.push((side, a.id.to_string(), a.label.clone()));
            arrow_refs.push((side, a));
        }
    }
    let arrow_unions: Vec<(usize, usize)> = f
        .domain
        .arrows()
        .iter()
        .map(|a| {
            (
                arrow_pos[&(Side::Left, &f.arrow_map[&a.id])],
                arrow_pos[&(Side::Right, &g.arrow_map[&a.id])],
            )
        })
        .collect();
    let (arrow_canon, arrow_index) = quotient_ids(&arrow_members, &arrow_unions);

    let vertices: Vec<Vertex> = vertex_canon
        .iter()
        .map(|(id, label)| Vertex::new(id.clone(), label.clone()))
        .collect();
    // Endpoints are well defined on classes: members identified through the
    // span have endpoints identified by the vertex quotient.
    let mut arrow_of_class: BTreeMap<usize, Arrow> = BTreeMap::new();
    for (side, a) in &arrow_refs {
        let class = arrow_index[&(*side, a.id.to_string())];
        let (id, label) = &arrow_canon[class];
        let src_class = vertex_index[&(*side, a.source.to_string())];
        let tgt_class = vertex_index[&(*side, a.target.to_string())];
        arrow_of_class.entry(class).or_insert_with(|| {
            Arrow::new(
                id.clone(),
                vertex_canon[src_class].0.clone(),
                vertex_canon[tgt_class].0.clone(),
                label.clone(),
            )
        });
    }
    let arrows: Vec<Arrow> = arrow_of_class.into_values().collect();
    let quiver = Quiver::new(vertices, arrows)?;

    let injection = |side: Side, from: &Quiver| -> GraphMorphism {
        GraphMorphism::new(
            from.clone(),
            quiver.clone(),
            from.vertices()
                .iter()
                .map(|v| {
                    let class = vertex_index[&(side, v.id.to_string())];
                    (v.id.clone(), VertexId::new(vertex_canon[class].0.clone()))
                })
                .collect(),
            from.arrows()
                .iter()
                .map(|a| {
                    let class = arrow_index[&(side, a.id.to_string())];
                    (a.id.clone(), ArrowId::new(arrow_canon[class].0.clone()))
                })
                .collect(),
        )
    };
    Ok(Pushout {
        inj_left: injection(Side::Left, g1),
        inj_right: injection(Side::Right, g2),
        quiver,
    })
}

/// Exhaustively enumerates all graph morphisms `domain -> codomain`.
/// Intended for small instances; the search backtracks over vertex
/// assignments and then over arrow assignments constrained by endpoints.
pub fn enumerate_graph_morphisms(domain: &Quiver, codomain: &Quiver) -> Vec<GraphMorphism> {
    let mut by_endpoints: BTreeMap<(&VertexId, &VertexId), Vec<&Arrow>> = BTreeMap::new();
    for a in codomain.arrows() {
        by_endpoints.entry((&a.source, &a.target)).or_default().push(a);
    }

    let mut results = Vec::new();
    let mut vertex_map: BTreeMap<VertexId, VertexId> = BTreeMap::new();

    fn assign_arrows(
        domain: &Quiver,
        codomain: &Quiver,
        by_endpoints: &BTreeMap<(&VertexId, &VertexId), Vec<&Arrow>>,
        vertex_map: &BTreeMap<VertexId, VertexId>,
        idx: usize,
        arrow_map: &mut BTreeMap<ArrowId, ArrowId>,
        results: &mut Vec<GraphMorphism>,
    ) {
        if idx == domain.arrows().len() {
            results.push(GraphMorphism::new(
                domain.clone(),
                codomain.clone(),
                vertex_map.clone(),
                arrow_map.clone(),
            ));
            return;
        }
        let arrow = &domain.arrows()[idx];
        let key = (&vertex_map[&arrow.source], &vertex_map[&arrow.target]);
        for candidate in by_endpoints.get(&key).into_iter().flatten() {
            arrow_map.insert(arrow.id.clone(), candidate.id.clone());
            assign_arrows(
                domain, codomain, by_endpoints, vertex_map, idx + 1, arrow_map, results,
            );
            arrow_map.remove(&arrow.id);
        }
    }

    fn assign_vertices(
        domain: &Quiver,
        codomain: &Quiver,
        by_endpoints: &BTreeMap<(&VertexId, &VertexId), Vec<&Arrow>>,
        idx: usize,
        vertex_map: &mut BTreeMap<VertexId, VertexId>,
        results: &mut Vec<GraphMorphism>,
    ) {
        if idx == domain.vertices().len() {
            let mut arrow_map = BTreeMap::new();
            assign_arrows(
                domain, codomain, by_endpoints, vertex_map, 0, &mut arrow_map, results,
            );
            return;
        }
        let v = &domain.vertices()[idx];
        for w in codomain.vertices() {
            vertex_map.insert(v.id.clone(), w.id.clone());
            assign_vertices(domain, codomain, by_endpoints, idx + 1, vertex_map, results);
            vertex_map.remove(&v.id);
        }
    }

    assign_vertices(domain, codomain, &by_endpoints, 0, &mut vertex_map, &mut results);
    results
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Quiver {
        Quiver::build(&[("1", ""), ("2", "")], &[("a", "1", "2", "")]).unwrap()
    }

    #[test]
    fn build_empty_quiver() {
        let q = Quiver::new(Vec::new(), Vec::new()).unwrap();
        assert!(q.vertices().is_empty());
        assert!(q.arrows().is_empty());
    }

    #[test]
    fn build_a2() {
        let q = a2();
        assert_eq!(q.vertices().len(), 2);
        assert_eq!(q.arrows().len(), 1);
    }

    #[test]
    fn build_rejects_dangling_endpoint() {
        let err = Quiver::build(&[("1", "")], &[("a", "1", "2", "")]).unwrap_err();
        assert_eq!(
            err,
            QuiverError::DanglingEndpoint {
                arrow: "a".into(),
                vertex: "2".into()
            }
        );
    }

    #[test]
    fn build_rejects_duplicate_ids() {
        let err = Quiver::build(&[("1", ""), ("1", "")], &[]).unwrap_err();
        assert!(matches!(err, QuiverError::DuplicateId { kind: "vertex", .. }));
        let err = Quiver::build(
            &[("1", "")],
            &[("a", "1", "1", ""), ("a", "1", "1", "")],
        )
        .unwrap_err();
        assert!(matches!(err, QuiverError::DuplicateId { kind: "arrow", .. }));
    }

    #[test]
    fn build_rejects_empty_id() {
        let err = Quiver::build(&[("", "")], &[]).unwrap_err();
        assert_eq!(err, QuiverError::EmptyId { kind: "vertex" });
    }

    #[test]
    fn loops_and_parallel_arrows_allowed() {
        let q = Quiver::build(
            &[("1", ""), ("2", "")],
            &[("a", "1", "2", ""), ("b", "1", "2", ""), ("l", "1", "1", "")],
        )
        .unwrap();
        assert_eq!(q.arrows().len(), 3);
    }

    #[test]
    fn identity_morphism_checks() {
        let m = GraphMorphism::identity(&a2());
        assert_eq!(m.check(), Ok(true));
    }

    #[test]
    fn swapped_vertex_map_fails_source_condition() {
        let q = a2();
        let m = GraphMorphism::new(
            q.clone(),
            q,
            [("1".into(), "2".into()), ("2".into(), "1".into())].into(),
            [("a".into(), "a".into())].into(),
        );
        assert_eq!(m.check(), Ok(false));
    }

    #[test]
    fn loop_to_a2_fails_target_condition() {
        let loop_q = Quiver::build(&[("1", "")], &[("l", "1", "1", "")]).unwrap();
        let m = GraphMorphism::new(
            loop_q,
            a2(),
            [("1".into(), "1".into())].into(),
            [("l".into(), "a".into())].into(),
        );
        // s(a) = 1 = f(s(l)) holds, but t(a) = 2 != 1 = f(t(l)).
        assert_eq!(m.check(), Ok(false));
    }

    #[test]
    fn partial_map_is_an_error() {
        let q = a2();
        let m = GraphMorphism::new(
            q.clone(),
            q,
            [("1".into(), "1".into())].into(),
            BTreeMap::new(),
        );
        assert!(matches!(m.check(), Err(MorphismError::PartialMap { .. })));
    }

    #[test]
    fn weak_connectivity() {
        assert!(is_weakly_connected(&a2()));
        let two = Quiver::build(&[("1", ""), ("2", "")], &[]).unwrap();
        assert!(!is_weakly_connected(&two));
        assert!(!is_weakly_connected(&Quiver::empty()));
        let point = Quiver::build(&[("1", "")], &[]).unwrap();
        assert!(is_weakly_connected(&point));
    }

    #[test]
    fn a2_has_no_cycle() {
        assert_eq!(find_oriented_cycle(&a2()), None);
    }

    #[test]
    fn single_loop_is_a_cycle() {
        let q = Quiver::build(&[("1", "")], &[("l", "1", "1", "")]).unwrap();
        assert_eq!(find_oriented_cycle(&q), Some(vec!["l".into()]));
    }

    #[test]
    fn four_cycle_witness() {
        // hypothesis -> deduction -> observation -> induction -> hypothesis
        let q = Quiver::build(
            &[("ded", ""), ("hyp", ""), ("ind", ""), ("obs", "")],
            &[
                ("r1", "hyp", "ded", ""),
                ("r2", "ded", "obs", ""),
                ("r3", "obs", "ind", ""),
                ("r4", "ind", "hyp", ""),
            ],
        )
        .unwrap();
        let cycle = find_oriented_cycle(&q).unwrap();
        assert_eq!(cycle.len(), 4);
        // The witness composes and returns to its start vertex.
        for w in cycle.windows(2) {
            assert_eq!(q.arrow(&w[0]).unwrap().target, q.arrow(&w[1]).unwrap().source);
        }
        assert_eq!(
            q.arrow(cycle.last().unwrap()).unwrap().target,
            q.arrow(&cycle[0]).unwrap().source
        );
    }

    #[test]
    fn categorification_report_cases() {
        let report = accepts_categorification(&a2());
        assert!(report.connected && report.nonempty && report.acyclic && report.accepted());

        let two = Quiver::build(&[("1", ""), ("2", "")], &[]).unwrap();
        assert!(!accepts_categorification(&two).connected);

        let empty = accepts_categorification(&Quiver::empty());
        assert!(!empty.nonempty && !empty.accepted());
    }

    #[test]
    fn pushout_glues_along_shared_vertex() {
        let g0 = Quiver::build(&[("v", "")], &[]).unwrap();
        let g1 = Quiver::build(&[("v", ""), ("w", "")], &[("a", "v", "w", "")]).unwrap();
        let g2 = Quiver::build(&[("u", ""), ("v", "")], &[]).unwrap();
        let f = GraphMorphism::new(g0.clone(), g1, [("v".into(), "v".into())].into(), BTreeMap::new());
        let g = GraphMorphism::new(g0, g2, [("v".into(), "v".into())].into(), BTreeMap::new());
        let po = pushout(&f, &g).unwrap();
        assert_eq!(po.quiver.vertices().len(), 3);
        assert_eq!(po.quiver.arrows().len(), 1);
        assert_eq!(po.inj_left.check(), Ok(true));
        assert_eq!(po.inj_right.check(), Ok(true));
    }

    #[test]
    fn pushout_along_identities_is_isomorphic() {
        let q = a2();
        let id = GraphMorphism::identity(&q);
        let po = pushout(&id, &id).unwrap();
        assert_eq!(po.quiver, q);
    }

    #[test]
    fn pushout_of_empty_span_is_disjoint_union() {
        let g0 = Quiver::empty();
        let g1 = Quiver::build(&[("x", ""), ("y", "")], &[("a", "x", "y", "")]).unwrap();
        let g2 = Quiver::build(&[("z", "")], &[]).unwrap();
        let f = GraphMorphism::new(g0.clone(), g1, BTreeMap::new(), BTreeMap::new());
        let g = GraphMorphism::new(g0, g2, BTreeMap::new(), BTreeMap::new());
        let po = pushout(&f, &g).unwrap();
        assert_eq!(po.quiver.vertices().len(), 3);
    }

    #[test]
    fn pushout_disambiguates_colliding_ids() {
        // "x" appears on both sides but is not identified by the span.
        let g0 = Quiver::empty();
        let g1 = Quiver::build(&[("x", "left")], &[]).unwrap();
        let g2 = Quiver::build(&[("x", "right")], &[]).unwrap();
        let f = GraphMorphism::new(g0.clone(), g1, BTreeMap::new(), BTreeMap::new());
        let g = GraphMorphism::new(g0, g2, BTreeMap::new(), BTreeMap::new());
        let po = pushout(&f, &g).unwrap();
        assert_eq!(po.quiver.vertices().len(), 2);
        let ids: Vec<&str> = po.quiver.vertices().iter().map(|v| v.id.as_str()).collect();
        assert_eq!(ids, vec!["x", "x~2"]);
    }

    #[test]
    fn pushout_rejects_mismatched_span() {
        let g0a = Quiver::build(&[("v", "")], &[]).unwrap();
        let g0b = Quiver::build(&[("w", "")], &[]).unwrap();
        let f = GraphMorphism::new(g0a.clone(), g0a.clone(), [("v".into(), "v".into())].into(), BTreeMap::new());
        let g = GraphMorphism::new(g0b.clone(), g0b, [("w".into(), "w".into())].into(), BTreeMap::new());
        assert_eq!(pushout(&f, &g).unwrap_err(), QuiverError::InvalidSpan);
    }

    #[test]
    fn json_round_trip_is_sorted_and_stable() {
        let q = Quiver::build(
            &[("b", "B"), ("a", "A")],
            &[("e2", "b", "a", ""), ("e1", "a", "b", "")],
        )
        .unwrap();
        let text = q.to_json();
        let back = Quiver::from_json(&text).unwrap();
        assert_eq!(back, q);
        assert_eq!(back.to_json(), text);
        let ids: Vec<&str> = q.vertices().iter().map(|v| v.id.as_str()).collect();
        assert_eq!(ids, vec!["a", "b"]);
    }

    #[test]
    fn json_rejects_invalid_quiver() {
        let text = r#"{"vertices":[{"id":"1","label":""}],"arrows":[{"id":"a","src":"1","tgt":"9","label":""}]}"#;
        assert!(Quiver::from_json(text).is_err());
    }

    #[test]
    fn enumerate_morphisms_counts() {
        // A2 -> A2: vertex maps fixing direction; only the identity works
        // plus collapsing is impossible (no loops in codomain).
        let q = a2();
        assert_eq!(enumerate_graph_morphisms(&q, &q).len(), 1);
        // Into a single loop: everything collapses, exactly one morphism.
        let loop_q = Quiver::build(&[("1", "")], &[("l", "1", "1", "")]).unwrap();
        assert_eq!(enumerate_graph_morphisms(&q, &loop_q).len(), 1);
        // From the empty quiver: exactly one (empty) morphism.
        assert_eq!(enumerate_graph_morphisms(&Quiver::empty(), &q).len(), 1);
    }
}
