//! Marked quivers: a finite category attached to each vertex and a
//! set-valued bifunctor, contravariant in the source, attached to each
//! arrow. All functor laws are checked exhaustively over the finite data.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::fincat::{check_category_axioms, AxiomViolation, FinCategory, MorId, ObId};
use crate::quiver::{ArrowId, Quiver, VertexId};

/// Element ids of the value sets.
pub type ElemId = String;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MarkedError {
    #[error("incomplete marking: {0}")]
    IncompleteMarking(String),
}

/// A functor `(C_i)^op x C_j -> Set` as tables.
///
/// `sets[(x, y)]` is the value set E(x, y). For `u: x' -> x` in C_i and
/// `v: y -> y'` in C_j, `maps[(u, v)]` is the function E(x, y) -> E(x', y').
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetValuedBifunctor {
    pub sets: BTreeMap<(ObId, ObId), BTreeSet<ElemId>>,
    pub maps: BTreeMap<(MorId, MorId), BTreeMap<ElemId, ElemId>>,
}

impl SetValuedBifunctor {
    /// The constant singleton bifunctor on `(c_i)^op x c_j`.
    pub fn singleton(c_i: &FinCategory, c_j: &FinCategory) -> Self {
        let mut sets = BTreeMap::new();
        for x in c_i.objects() {
            for y in c_j.objects() {
                sets.insert(
                    (x.clone(), y.clone()),
                    BTreeSet::from(["*".to_string()]),
                );
            }
        }
        let mut maps = BTreeMap::new();
        for u in c_i.morphisms() {
            for v in c_j.morphisms() {
                maps.insert(
                    (u.id.clone(), v.id.clone()),
                    BTreeMap::from([("*".to_string(), "*".to_string())]),
                );
            }
        }
        SetValuedBifunctor { sets, maps }
    }

    /// The hom bifunctor of a category: E(x, y) = Hom(x, y), with
    /// E(u, v)(w) = v ∘ w ∘ u.
    pub fn hom_of(c: &FinCategory) -> Self {
        let mut sets = BTreeMap::new();
        for x in c.objects() {
            for y in c.objects() {
                let homset: BTreeSet<ElemId> = c
                    .morphisms()
                    .iter()
                    .filter(|m| &m.source == x && &m.target == y)
                    .map(|m| m.id.to_string())
                    .collect();
                sets.insert((x.clone(), y.clone()), homset);
            }
        }
        let mut maps = BTreeMap::new();
        for u in c.morphisms() {
            for v in c.morphisms() {
                // Domain: Hom(target(u), source(v)).
                let mut table = BTreeMap::new();
                for w in c.morphisms() {
                    if w.source != u.target || w.target != v.source {
                        continue;
                    }
                    let wu = c
                        .composite(&w.id, &u.id)
                        .expect("valid category table");
                    let vwu = c.composite(&v.id, wu).expect("valid category table");
                    table.insert(w.id.to_string(), vwu.to_string());
                }
                maps.insert((u.id.clone(), v.id.clone()), table);
            }
        }
        SetValuedBifunctor { sets, maps }
    }

    /// Copy with one function-table entry replaced. Used by mutation tests.
    pub fn with_map_entry(
        &self,
        u: &MorId,
        v: &MorId,
        elem: &str,
        image: impl Into<ElemId>,
    ) -> Self {
        let mut copy = self.clone();
        copy.maps
            .entry((u.clone(), v.clone()))
            .or_default()
            .insert(elem.to_string(), image.into());
        copy
    }
}

/// A quiver together with its vertex categories and arrow bifunctors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedQuiver {
    pub quiver: Quiver,
    pub vertex_cats: BTreeMap<VertexId, FinCategory>,
    pub arrow_functors: BTreeMap<ArrowId, SetValuedBifunctor>,
}

/// A single broken marking law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MarkingViolation {
    VertexCategory {
        vertex: VertexId,
        violation: AxiomViolation,
    },
    MissingSet {
        arrow: ArrowId,
        x: ObId,
        y: ObId,
    },
    MissingMap {
        arrow: ArrowId,
        u: MorId,
        v: MorId,
    },
    NotAFunction {
        arrow: ArrowId,
        u: MorId,
        v: MorId,
    },
    IdentityLaw {
        arrow: ArrowId,
        x: ObId,
        y: ObId,
    },
    CompositionLaw {
        arrow: ArrowId,
        u1: MorId,
        u2: MorId,
        v1: MorId,
        v2: MorId,
    },
}

impl fmt::Display for MarkingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MarkingViolation::VertexCategory { vertex, violation } => {
                write!(f, "vertex `{vertex}`: {violation}")
            }
            MarkingViolation::MissingSet { arrow, x, y } => {
                write!(f, "arrow `{arrow}`: no value set at ({x}, {y})")
            }
            MarkingViolation::MissingMap { arrow, u, v } => {
                write!(f, "arrow `{arrow}`: no function at ({u}, {v})")
            }
            MarkingViolation::NotAFunction { arrow, u, v } => {
                write!(f, "arrow `{arrow}`: table at ({u}, {v}) is not a function between the value sets")
            }
            MarkingViolation::IdentityLaw { arrow, x, y } => {
                write!(f, "arrow `{arrow}`: E(id_{x}, id_{y}) is not the identity")
            }
            MarkingViolation::CompositionLaw { arrow, u1, u2, v1, v2 } => {
                write!(
                    f,
                    "arrow `{arrow}`: E(({u1}, {v1}) then ({u2}, {v2})) differs from the composite"
                )
            }
        }
    }
}

/// Marks every vertex with the terminal category and every arrow with the
/// constant singleton bifunctor.
pub fn trivial_marking(q: &Quiver) -> MarkedQuiver {
    let terminal = crate::fincat::catalog::terminal();
    let vertex_cats: BTreeMap<VertexId, FinCategory> = q
        .vertices()
        .iter()
        .map(|v| (v.id.clone(), terminal.clone()))
        .collect();
    let arrow_functors = q
        .arrows()
        .iter()
        .map(|a| {
            (
                a.id.clone(),
                SetValuedBifunctor::singleton(&terminal, &terminal),
            )
        })
        .collect();
    MarkedQuiver {
        quiver: q.clone(),
        vertex_cats,
        arrow_functors,
    }
}

/// Exhaustively checks every vertex category and every arrow bifunctor.
/// Returns the list of law violations; missing coverage is an error.
pub fn check_marking(mq: &MarkedQuiver) -> Result<Vec<MarkingViolation>, MarkedError> {
    for v in mq.quiver.vertices() {
        if !mq.vertex_cats.contains_key(&v.id) {
            return Err(MarkedError::IncompleteMarking(format!(
                "vertex `{}` has no category",
                v.id
            )));
        }
    }
    for a in mq.quiver.arrows() {
        if !mq.arrow_functors.contains_key(&a.id) {
            return Err(MarkedError::IncompleteMarking(format!(
                "arrow `{}` has no bifunctor",
                a.id
            )));
        }
    }

    let mut violations = Vec::new();
    for (vertex, cat) in &mq.vertex_cats {
        for violation in check_category_axioms(cat) {
            violations.push(MarkingViolation::VertexCategory {
                vertex: vertex.clone(),
                violation,
            });
        }
    }

    for arrow in mq.quiver.arrows() {
        let e = &mq.arrow_functors[&arrow.id];
        let c_i = &mq.vertex_cats[&arrow.source];
        let c_j = &mq.vertex_cats[&arrow.target];

        for x in c_i.objects() {
            for y in c_j.objects() {
                if !e.sets.contains_key(&(x.clone(), y.clone())) {
                    violations.push(MarkingViolation::MissingSet {
                        arrow: arrow.id.clone(),
                        x: x.clone(),
                        y: y.clone(),
                    });
                }
            }
        }

        // Every morphism pair (u: x' -> x, v: y -> y') must carry a function
        // E(x, y) -> E(x', y').
        for u in c_i.morphisms() {
            for v in c_j.morphisms() {
                let key = (u.id.clone(), v.id.clone());
                let Some(table) = e.maps.get(&key) else {
                    violations.push(MarkingViolation::MissingMap {
                        arrow: arrow.id.clone(),
                        u: u.id.clone(),
                        v: v.id.clone(),
                    });
                    continue;
                };
                let dom = e.sets.get(&(u.target.clone(), v.source.clone()));
                let cod = e.sets.get(&(u.source.clone(), v.target.clone()));
                let (Some(dom), Some(cod)) = (dom, cod) else {
                    continue; // missing sets already reported
                };
                let total = dom.iter().all(|x| table.contains_key(x));
                let into_cod = table
                    .iter()
                    .all(|(x, y)| dom.contains(x) && cod.contains(y));
                if !total || !into_cod {
                    violations.push(MarkingViolation::NotAFunction {
                        arrow: arrow.id.clone(),
                        u: u.id.clone(),
                        v: v.id.clone(),
                    });
                }
            }
        }

        // Identity law: E(id_x, id_y) = id.
        for x in c_i.objects() {
            for y in c_j.objects() {
                let (Some(id_x), Some(id_y)) = (c_i.identity_of(x), c_j.identity_of(y)) else {
                    continue;
                };
                let (Some(table), Some(set)) = (
                    e.maps.get(&(id_x.clone(), id_y.clone())),
                    e.sets.get(&(x.clone(), y.clone())),
                ) else {
                    continue;
                };
                if !set.iter().all(|el| table.get(el) == Some(el)) {
                    violations.push(MarkingViolation::IdentityLaw {
                        arrow: arrow.id.clone(),
                        x: x.clone(),
                        y: y.clone(),
                    });
                }
            }
        }

        // Composition law on the product category: (u1, v1): (x,y) -> (x',y')
        // followed by (u2, v2): (x',y') -> (x'',y'') equals
        // E(u1 ∘ u2, v2 ∘ v1).
        for u1 in c_i.morphisms() {
            for u2 in c_i.morphisms() {
                if u2.target != u1.source {
                    continue; // u1 ∘ u2 undefined
                }
                let Some(u12) = c_i.composite(&u1.id, &u2.id) else {
                    continue;
                };
                for v1 in c_j.morphisms() {
                    for v2 in c_j.morphisms() {
                        if v1.target != v2.source {
                            continue; // v2 ∘ v1 undefined
                        }
                        let Some(v21) = c_j.composite(&v2.id, &v1.id) else {
                            continue;
                        };
                        let (Some(first), Some(second), Some(combined)) = (
                            e.maps.get(&(u1.id.clone(), v1.id.clone())),
                            e.maps.get(&(u2.id.clone(), v2.id.clone())),
                            e.maps.get(&(u12.clone(), v21.clone())),
                        ) else {
                            continue;
                        };
                        let dom = e.sets.get(&(u1.target.clone(), v1.source.clone()));
                        let Some(dom) = dom else {
                            continue;
                        };
                        let agrees = dom.iter().all(|el| {
                            let via = first.get(el).and_then(|mid| second.get(mid));
                            via.is_some() && via == combined.get(el)
                        });
                        if !agrees {
                            violations.push(MarkingViolation::CompositionLaw {
                                arrow: arrow.id.clone(),
                                u1: u1.id.clone(),
                                u2: u2.id.clone(),
                                v1: v1.id.clone(),
                                v2: v2.id.clone(),
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(violations)
}

/// Every single-entry corruption of a bifunctor's function tables: each
/// entry redirected to each other element of its codomain set.
pub fn single_entry_corruptions(
    e: &SetValuedBifunctor,
    c_i: &FinCategory,
    c_j: &FinCategory,
) -> Vec<SetValuedBifunctor> {
    let mut corruptions = Vec::new();
    for ((u, v), table) in &e.maps {
        let (Some(um), Some(vm)) = (c_i.morphism(u), c_j.morphism(v)) else {
            continue;
        };
        let cod = &e.sets[&(um.source.clone(), vm.target.clone())];
        for (elem, image) in table {
            for candidate in cod {
                if candidate != image {
                    corruptions.push(e.with_map_entry(u, v, elem, candidate.clone()));
                }
            }
        }
    }
    corruptions
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::catalog;

    fn a2() -> Quiver {
        Quiver::build(&[("1", ""), ("2", "")], &[("a", "1", "2", "")]).unwrap()
    }

    #[test]
    fn trivial_marking_passes() {
        for q in [
            a2(),
            Quiver::empty(),
            Quiver::build(&[("1", "")], &[("l", "1", "1", "")]).unwrap(),
        ] {
            let mq = trivial_marking(&q);
            assert_eq!(check_marking(&mq), Ok(vec![]));
        }
    }

    #[test]
    fn hom_marking_passes() {
        // The walking arrow's hom bifunctor: E(x,x) = {id_x}, E(x,y) = {u},
        // E(y,y) = {id_y}, E(y,x) = empty.
        let c = catalog::chain2();
        let e = SetValuedBifunctor::hom_of(&c);
        assert!(e.sets[&("y".into(), "x".into())].is_empty());
        assert_eq!(e.sets[&("x".into(), "y".into())].len(), 1);
        let mq = MarkedQuiver {
            quiver: a2(),
            vertex_cats: [("1".into(), c.clone()), ("2".into(), c)].into(),
            arrow_functors: [("a".into(), e)].into(),
        };
        assert_eq!(check_marking(&mq), Ok(vec![]));
    }

    #[test]
    fn corrupted_identity_entry_is_flagged() {
        // Two-element value sets; send E(id, id) to a swap instead of the
        // identity and expect exactly an identity-law violation.
        let c = catalog::walking_iso();
        let e = swap_marking_bifunctor();
        let corrupted = e
            .with_map_entry(&"id_x".into(), &"id_x".into(), "0", "1")
            .with_map_entry(&"id_x".into(), &"id_x".into(), "1", "0");
        let mq = MarkedQuiver {
            quiver: a2(),
            vertex_cats: [("1".into(), c.clone()), ("2".into(), c)].into(),
            arrow_functors: [("a".into(), corrupted)].into(),
        };
        let report = check_marking(&mq).unwrap();
        assert!(report
            .iter()
            .any(|v| matches!(v, MarkingViolation::IdentityLaw { .. })));
    }

    #[test]
    fn incomplete_marking_is_an_error() {
        let mut mq = trivial_marking(&a2());
        mq.arrow_functors.clear();
        assert!(matches!(
            check_marking(&mq),
            Err(MarkedError::IncompleteMarking(_))
        ));
    }

    /// Both walking-iso vertex categories act on two-element sets by swaps:
    /// E(m1, m2) = swap^(nt(m1) + nt(m2)) where nt(m) = 1 for u, v.
    pub(super) fn swap_marking_bifunctor() -> SetValuedBifunctor {
        let c = catalog::walking_iso();
        let elems: BTreeSet<ElemId> = ["0".to_string(), "1".to_string()].into();
        let mut sets = BTreeMap::new();
        for x in c.objects() {
            for y in c.objects() {
                sets.insert((x.clone(), y.clone()), elems.clone());
            }
        }
        let nontrivial = |m: &MorId| m.as_str() == "x_to_y" || m.as_str() == "y_to_x";
        let mut maps = BTreeMap::new();
        for m1 in c.morphisms() {
            for m2 in c.morphisms() {
                let swaps = nontrivial(&m1.id) ^ nontrivial(&m2.id);
                let table: BTreeMap<ElemId, ElemId> = if swaps {
                    [("0".to_string(), "1".to_string()), ("1".to_string(), "0".to_string())].into()
                } else {
                    [("0".to_string(), "0".to_string()), ("1".to_string(), "1".to_string())].into()
                };
                maps.insert((m1.id.clone(), m2.id.clone()), table);
            }
        }
        SetValuedBifunctor { sets, maps }
    }

    #[test]
    fn swap_marking_passes_and_is_corruption_rigid() {
        let c = catalog::walking_iso();
        let e = swap_marking_bifunctor();
        let base = MarkedQuiver {
            quiver: a2(),
            vertex_cats: [("1".into(), c.clone()), ("2".into(), c.clone())].into(),
            arrow_functors: [("a".into(), e.clone())].into(),
        };
        assert_eq!(check_marking(&base), Ok(vec![]));

        let corruptions = single_entry_corruptions(&e, &c, &c);
        assert_eq!(corruptions.len(), 32); // 16 morphism pairs x 2 entries x 1 alternative
        for (i, bad) in corruptions.into_iter().enumerate() {
            let mq = MarkedQuiver {
                arrow_functors: [("a".into(), bad)].into(),
                ..base.clone()
            };
            let report = check_marking(&mq).unwrap();
            assert!(!report.is_empty(), "corruption #{i} went undetected");
        }
    }
}
