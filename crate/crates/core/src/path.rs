//! Paths in a quiver and the free category they generate.
//!
//! A path is a composable arrow sequence stored source-to-target; the empty
//! path at a vertex is that vertex's identity. `compose(p, q)` applies `q`
//! first, matching the composition-table convention in [`crate::fincat`].
//! The free category is materialized in bounded form: for acyclic quivers
//! it is the whole thing, for cyclic quivers enumeration is truncated at a
//! length bound and flagged as incomplete.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fincat::{FinCategory, FinFunctor, MorId, Morphism, ObId};
use crate::quiver::{Arrow, ArrowId, GraphMorphism, Quiver, Vertex, VertexId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PathError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("arrows `{first}` and `{second}` do not compose")]
    NotComposable { first: String, second: String },
    #[error("paths do not compose: `{left}` ends at a different vertex than `{right}` starts")]
    NonComposable { left: String, right: String },
    #[error("quiver has an oriented cycle; its path category is infinite")]
    CyclicQuiver,
    #[error("invalid graph morphism: {0}")]
    InvalidMorphism(String),
}

/// A composable arrow sequence with its derived endpoints. The empty
/// sequence is the identity path at `source` (= `target`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    source: VertexId,
    target: VertexId,
    arrows: Vec<ArrowId>,
}

impl Path {
    /// The identity path at `v`.
    pub fn identity(q: &Quiver, v: &VertexId) -> Result<Self, PathError> {
        if !q.has_vertex(v) {
            return Err(PathError::UnknownVertex(v.to_string()));
        }
        Ok(Path {
            source: v.clone(),
            target: v.clone(),
            arrows: Vec::new(),
        })
    }

    /// Builds a path from a nonempty arrow sequence, checking composability.
    pub fn from_arrows(q: &Quiver, arrows: Vec<ArrowId>) -> Result<Self, PathError> {
        let resolved: Vec<&Arrow> = arrows
            .iter()
            .map(|id| q.arrow(id).ok_or_else(|| PathError::UnknownArrow(id.to_string())))
            .collect::<Result<_, _>>()?;
        let (first, rest) = resolved
            .split_first()
            .expect("from_arrows requires a nonempty sequence; use identity() for empty paths");
        let mut current = first;
        for next in rest {
            if current.target != next.source {
                return Err(PathError::NotComposable {
                    first: current.id.to_string(),
                    second: next.id.to_string(),
                });
            }
            current = next;
        }
        Ok(Path {
            source: first.source.clone(),
            target: current.target.clone(),
            arrows,
        })
    }

    pub fn source(&self) -> &VertexId {
        &self.source
    }

    pub fn target(&self) -> &VertexId {
        &self.target
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// True for identity paths (empty arrow sequence).
    pub fn is_identity(&self) -> bool {
        self.arrows.is_empty()
    }

    /// True iff every arrow exists in `q` with matching endpoints.
    pub fn is_valid_in(&self, q: &Quiver) -> bool {
        if self.arrows.is_empty() {
            return q.has_vertex(&self.source) && self.source == self.target;
        }
        let mut at = &self.source;
        for id in &self.arrows {
            match q.arrow(id) {
                Some(a) if &a.source == at => at = &a.target,
                _ => return false,
            }
        }
        at == &self.target
    }

    /// Stable id of the form `path:<source>:<a>|<b>`, with an empty arrow
    /// part for identity paths.
    pub fn encode(&self) -> String {
        let joined = self
            .arrows
            .iter()
            .map(ArrowId::as_str)
            .collect::<Vec<_>>()
            .join("|");
        format!("path:{}:{}", self.source, joined)
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Path {
    /// Orders by length, then source, then the arrow-id sequence.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.arrows.len(), &self.source, &self.arrows, &self.target).cmp(&(
            other.arrows.len(),
            &other.source,
            &other.arrows,
            &other.target,
        ))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum PathData {
    Identity { at: VertexId },
    Arrows { arrows: Vec<ArrowId> },
}

impl Serialize for Path {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let data = if self.is_identity() {
            PathData::Identity {
                at: self.source.clone(),
            }
        } else {
            PathData::Arrows {
                arrows: self.arrows.clone(),
            }
        };
        data.serialize(serializer)
    }
}

/// Deserialized path payload, not yet bound to a quiver. Binding with
/// [`RawPath::resolve`] recovers endpoints and validates composability.
#[derive(Debug, Clone, Deserialize)]
#[serde(from = "PathData")]
pub struct RawPath {
    pub at: Option<VertexId>,
    pub arrows: Vec<ArrowId>,
}

impl From<PathData> for RawPath {
    fn from(data: PathData) -> Self {
        match data {
            PathData::Identity { at } => RawPath {
                at: Some(at),
                arrows: Vec::new(),
            },
            PathData::Arrows { arrows } => RawPath { at: None, arrows },
        }
    }
}

impl RawPath {
    pub fn resolve(self, q: &Quiver) -> Result<Path, PathError> {
        match (self.at, self.arrows) {
            (Some(v), arrows) if arrows.is_empty() => Path::identity(q, &v),
            (_, arrows) => Path::from_arrows(q, arrows),
        }
    }
}

/// The identity path at `v`.
pub fn id_path(q: &Quiver, v: &VertexId) -> Result<Path, PathError> {
    Path::identity(q, v)
}

/// Composes `q_first` first, then `p`. Requires `target(q_first) = source(p)`.
pub fn compose_paths(p: &Path, q_first: &Path) -> Result<Path, PathError> {
    if q_first.target != p.source {
        return Err(PathError::NonComposable {
            left: q_first.encode(),
            right: p.encode(),
        });
    }
    let mut arrows = q_first.arrows.clone();
    arrows.extend(p.arrows.iter().cloned());
    Ok(Path {
        source: q_first.source.clone(),
        target: p.target.clone(),
        arrows,
    })
}

/// A bounded path enumeration. `complete` records whether the bound rules
/// out truncation: it is set exactly when the quiver is acyclic and
/// `max_len` is at least the arrow count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathSet {
    pub paths: Vec<Path>,
    pub complete: bool,
}

/// All paths from `i` to `j` of length at most `max_len`, sorted by
/// (length, arrow-id sequence). Includes the identity path when `i = j`.
pub fn enumerate_paths(
    q: &Quiver,
    i: &VertexId,
    j: &VertexId,
    max_len: usize,
) -> Result<PathSet, PathError> {
    for v in [i, j] {
        if !q.has_vertex(v) {
            return Err(PathError::UnknownVertex(v.to_string()));
        }
    }
    let mut outgoing: BTreeMap<&VertexId, Vec<&Arrow>> = BTreeMap::new();
    for a in q.arrows() {
        outgoing.entry(&a.source).or_default().push(a);
    }

    fn walk(
        outgoing: &BTreeMap<&VertexId, Vec<&Arrow>>,
        at: &VertexId,
        start: &VertexId,
        goal: &VertexId,
        budget: usize,
        stack: &mut Vec<ArrowId>,
        paths: &mut Vec<Path>,
    ) {
        if at == goal {
            paths.push(Path {
                source: start.clone(),
                target: goal.clone(),
                arrows: stack.clone(),
            });
        }
        if budget == 0 {
            return;
        }
        for arrow in outgoing.get(at).into_iter().flatten() {
            stack.push(arrow.id.clone());
            walk(outgoing, &arrow.target, start, goal, budget - 1, stack, paths);
            stack.pop();
        }
    }

    let mut paths = Vec::new();
    let mut stack: Vec<ArrowId> = Vec::new();
    walk(&outgoing, i, i, j, max_len, &mut stack, &mut paths);
    paths.sort();
    Ok(PathSet {
        complete: q.is_acyclic() && max_len >= q.arrows().len(),
        paths,
    })
}

/// The derived graph: same vertices, one arrow per path of length at most
/// `max_len`. For an acyclic quiver with `max_len >= |arrows|` this is the
/// full underlying graph of the free category.
pub fn path_graph(q: &Quiver, max_len: usize) -> Quiver {
    let vertices: Vec<Vertex> = q.vertices().to_vec();
    let mut arrows = Vec::new();
    for i in q.vertices() {
        for j in q.vertices() {
            let set = enumerate_paths(q, &i.id, &j.id, max_len)
                .expect("vertices come from the quiver itself");
            for p in set.paths {
                let label = if p.is_identity() {
                    String::new()
                } else {
                    p.arrows()
                        .iter()
                        .map(ArrowId::as_str)
                        .collect::<Vec<_>>()
                        .join("|")
                };
                arrows.push(Arrow::new(p.encode(), i.id.as_str(), j.id.as_str(), label));
            }
        }
    }
    Quiver::new(vertices, arrows).expect("path ids are unique by construction")
}

/// All paths of an acyclic quiver in a deterministic order: identities
/// first, then by (length, source, arrow sequence).
pub fn all_paths(q: &Quiver) -> Result<Vec<Path>, PathError> {
    if !q.is_acyclic() {
        return Err(PathError::CyclicQuiver);
    }
    let mut paths = Vec::new();
    for i in q.vertices() {
        for j in q.vertices() {
            paths.extend(enumerate_paths(q, &i.id, &j.id, q.arrows().len())?.paths);
        }
    }
    paths.sort();
    Ok(paths)
}

/// Materializes the free category of an acyclic quiver: objects are the
/// vertices, morphisms are all paths, composition is concatenation.
pub fn path_category(q: &Quiver) -> Result<FinCategory, PathError> {
    let paths = all_paths(q)?;
    let objects: Vec<ObId> = q.vertices().iter().map(|v| ObId::new(v.id.as_str())).collect();
    let morphisms: Vec<Morphism> = paths
        .iter()
        .map(|p| Morphism::new(p.encode(), p.source().as_str(), p.target().as_str()))
        .collect();
    let identity: BTreeMap<ObId, MorId> = q
        .vertices()
        .iter()
        .map(|v| {
            let eps = Path::identity(q, &v.id).expect("vertex exists");
            (ObId::new(v.id.as_str()), MorId::new(eps.encode()))
        })
        .collect();
    let mut compose = BTreeMap::new();
    for g in &paths {
        for f in &paths {
            if f.target() == g.source() {
                let gf = compose_paths(g, f).expect("endpoints match");
                compose.insert(
                    (MorId::new(g.encode()), MorId::new(f.encode())),
                    MorId::new(gf.encode()),
                );
            }
        }
    }
    FinCategory::new(objects, morphisms, identity, compose)
        .map_err(|e| PathError::InvalidMorphism(e.to_string()))
}

/// Extends a graph morphism `q -> underlying_graph(c)` to the unique
/// functor `PathG(q) -> c` that agrees with it on vertices and single-arrow
/// paths. The quiver must be acyclic so that the free category is finite.
pub fn extend_to_functor(
    q: &Quiver,
    c: &FinCategory,
    m: &GraphMorphism,
) -> Result<FinFunctor, PathError> {
    if !q.is_acyclic() {
        return Err(PathError::CyclicQuiver);
    }
    let underlying = crate::fincat::underlying_graph(c)
        .map_err(|e| PathError::InvalidMorphism(e.to_string()))?;
    if &m.domain != q || m.codomain != underlying {
        return Err(PathError::InvalidMorphism(
            "morphism endpoints are not q -> underlying_graph(c)".into(),
        ));
    }
    match m.check() {
        Ok(true) => {}
        Ok(false) => {
            return Err(PathError::InvalidMorphism(
                "morphism does not commute with sources/targets".into(),
            ))
        }
        Err(e) => return Err(PathError::InvalidMorphism(e.to_string())),
    }

    let free = path_category(q)?;
    let object_map: BTreeMap<ObId, ObId> = m
        .vertex_map
        .iter()
        .map(|(k, v)| (ObId::new(k.as_str()), ObId::new(v.as_str())))
        .collect();
    let mut morphism_map: BTreeMap<MorId, MorId> = BTreeMap::new();
    for p in all_paths(q)? {
        let image = if p.is_identity() {
            c.identity_of(&ObId::new(m.vertex_map[p.source()].as_str()))
                .expect("valid category has identities")
                .clone()
        } else {
            // Fold arrow images through c's table in path order.
            let mut arrows = p.arrows().iter();
            let first = arrows.next().expect("nonempty path");
            let mut acc = MorId::new(m.arrow_map[first].as_str());
            for a in arrows {
                let next = MorId::new(m.arrow_map[a].as_str());
                acc = c
                    .composite(&next, &acc)
                    .ok_or_else(|| {
                        PathError::InvalidMorphism(format!(
                            "codomain table lacks composite for path {}",
                            p.encode()
                        ))
                    })?
                    .clone();
            }
            acc
        };
        morphism_map.insert(MorId::new(p.encode()), image);
    }
    Ok(FinFunctor::new(free, c.clone(), object_map, morphism_map))
}
