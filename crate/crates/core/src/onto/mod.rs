//! The ontology DSL: parsing, canonical serialization, compilation of
//! documents to labeled quivers, and the unit-expression normalizer.
//!
//! Equality on documents and their parts is structural: provenance (source
//! name and line/column spans) is deliberately ignored so that
//! `parse(serialize(doc)) == doc`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::quiver::{Arrow, Quiver, Vertex};

mod parse;

pub use parse::parse_ontology;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OntoError {
    #[error("{line}:{col}: expected {expected}, found {found}")]
    Syntax {
        line: usize,
        col: usize,
        expected: String,
        found: String,
    },
    #[error("{line}:{col}: unknown relation kind `{kind}` (custom kinds are written as quoted strings)")]
    UnknownRelationKind {
        line: usize,
        col: usize,
        kind: String,
    },
    #[error("{line}:{col}: relation references undeclared concept `{id}`")]
    UndeclaredConcept {
        line: usize,
        col: usize,
        id: String,
    },
    #[error("duplicate concept id `{0}`")]
    DuplicateConcept(String),
    #[error("unknown unit name `{0}`")]
    UnknownUnitName(String),
    #[error("unit alias cycle through `{0}`")]
    AliasCycle(String),
}

/// Source position (1-based), kept for diagnostics only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum RelationKind {
    IsA,
    PartOf,
    Subordinate,
    Higher,
    Associative,
    Custom(String),
}

impl RelationKind {
    pub fn label(&self) -> &str {
        match self {
            RelationKind::IsA => "is_a",
            RelationKind::PartOf => "part_of",
            RelationKind::Subordinate => "subordinate",
            RelationKind::Higher => "higher",
            RelationKind::Associative => "associative",
            RelationKind::Custom(s) => s,
        }
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Eq)]
pub struct Concept {
    pub id: String,
    pub description: Option<String>,
    pub span: Span,
}

impl PartialEq for Concept {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id && self.description == other.description
    }
}

#[derive(Debug, Clone, Eq)]
pub struct Relation {
    pub kind: RelationKind,
    pub from: String,
    pub to: String,
    pub span: Span,
}

impl PartialEq for Relation {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.from == other.from && self.to == other.to
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnnotationKind {
    Axiom,
    Rule,
    Confirmation,
    Induction,
}

impl AnnotationKind {
    pub fn keyword(&self) -> &'static str {
        match self {
            AnnotationKind::Axiom => "axiom",
            AnnotationKind::Rule => "rule",
            AnnotationKind::Confirmation => "confirmation",
            AnnotationKind::Induction => "induction",
        }
    }
}

/// An opaque annotation: stored and re-serialized, never executed.
#[derive(Debug, Clone, Eq)]
pub struct Annotation {
    pub kind: AnnotationKind,
    pub text: String,
    pub span: Span,
}

impl PartialEq for Annotation {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.text == other.text
    }
}

/// A unit expression tree in the defobject algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnitExpr {
    /// `(basic-unit NAME)`, name lowercased.
    Basic(String),
    /// A bare reference to a declared unit, lowercased.
    Ref(String),
    /// `(unit* e1 e2 ...)`.
    Product(Vec<UnitExpr>),
    /// `(unit^ e n)`.
    Power(Box<UnitExpr>, i64),
}

#[derive(Debug, Clone, Eq)]
pub struct UnitDecl {
    /// Name as written, tokens joined by spaces (e.g. `NEWTON / COULOMB`).
    pub name: String,
    /// The name inside an `(= name expr)` equality form, when present.
    pub alias: Option<String>,
    pub body: UnitExpr,
    pub span: Span,
}

impl PartialEq for UnitDecl {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.alias == other.alias && self.body == other.body
    }
}

#[derive(Debug, Clone, Eq)]
pub struct OntologyDoc {
    pub name: String,
    pub concepts: Vec<Concept>,
    pub relations: Vec<Relation>,
    pub units: Vec<UnitDecl>,
    pub annotations: Vec<Annotation>,
    /// Provenance: where the document was read from, if anywhere.
    pub source: Option<String>,
}

impl PartialEq for OntologyDoc {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.concepts == other.concepts
            && self.relations == other.relations
            && self.units == other.units
            && self.annotations == other.annotations
    }
}

impl OntologyDoc {
    pub fn new(name: impl Into<String>) -> Self {
        OntologyDoc {
            name: name.into(),
            concepts: Vec::new(),
            relations: Vec::new(),
            units: Vec::new(),
            annotations: Vec::new(),
            source: None,
        }
    }

    pub fn concept(&self, id: &str) -> Option<&Concept> {
        self.concepts.iter().find(|c| c.id == id)
    }

    /// Case-insensitive lookup of a unit declaration by name.
    pub fn unit(&self, name: &str) -> Option<&UnitDecl> {
        let wanted = name.to_lowercase();
        self.units.iter().find(|u| u.name.to_lowercase() == wanted)
    }
}

/// Parses a document and records its source name for diagnostics.
pub fn parse_ontology_named(text: &str, source: impl Into<String>) -> Result<OntologyDoc, OntoError> {
    let mut doc = parse_ontology(text)?;
    doc.source = Some(source.into());
    Ok(doc)
}

fn is_bare_ident(s: &str) -> bool {
    let mut chars = s.chars();
    let Some(first) = chars.next() else {
        return false;
    };
    (first.is_alphabetic() || first == '_')
        && chars.all(|c| c.is_alphanumeric() || matches!(c, '_' | '.' | '-'))
        && !s.contains("->")
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn emit_id(s: &str) -> String {
    if is_bare_ident(s) {
        s.to_string()
    } else {
        quote(s)
    }
}

fn emit_unit_expr(expr: &UnitExpr) -> String {
    match expr {
        UnitExpr::Basic(n) => format!("(basic-unit {n})"),
        UnitExpr::Ref(n) => n.clone(),
        UnitExpr::Product(factors) => {
            let parts: Vec<String> = factors.iter().map(emit_unit_expr).collect();
            format!("(unit* {})", parts.join(" "))
        }
        UnitExpr::Power(base, exp) => format!("(unit^ {} {exp})", emit_unit_expr(base)),
    }
}

/// Canonical text form. Declaration order is preserved within each section;
/// parsing the output yields a structurally equal document.
pub fn serialize_ontology(doc: &OntologyDoc) -> String {
    let name = emit_id(&doc.name);
    let empty = doc.concepts.is_empty()
        && doc.relations.is_empty()
        && doc.units.is_empty()
        && doc.annotations.is_empty();
    if empty {
        return format!("ontology {name} {{ }}\n");
    }
    let mut out = format!("ontology {name} {{\n");
    for c in &doc.concepts {
        match &c.description {
            Some(d) => out.push_str(&format!("  concept {} {};\n", emit_id(&c.id), quote(d))),
            None => out.push_str(&format!("  concept {};\n", emit_id(&c.id))),
        }
    }
    for r in &doc.relations {
        let kind = match &r.kind {
            RelationKind::Custom(label) => quote(label),
            named => named.label().to_string(),
        };
        out.push_str(&format!(
            "  relation {kind} {} -> {};\n",
            emit_id(&r.from),
            emit_id(&r.to)
        ));
    }
    for a in &doc.annotations {
        out.push_str(&format!("  {} {};\n", a.kind.keyword(), quote(&a.text)));
    }
    for u in &doc.units {
        let body = match &u.alias {
            Some(alias) => format!("(= {} {})", alias, emit_unit_expr(&u.body)),
            None => emit_unit_expr(&u.body),
        };
        out.push_str(&format!("  (defobject {} {})\n", u.name, body));
    }
    out.push_str("}\n");
    out
}

/// Compiles a document to its ontology graph: one vertex per concept, one
/// arrow per relation instance (parallel relations become parallel arrows,
/// self-relations become loops). Unit declarations produce no vertices.
pub fn ontology_to_quiver(doc: &OntologyDoc) -> Quiver {
    let vertices: Vec<Vertex> = doc
        .concepts
        .iter()
        .map(|c| Vertex::new(c.id.clone(), c.id.clone()))
        .collect();
    let arrows: Vec<Arrow> = doc
        .relations
        .iter()
        .enumerate()
        .map(|(i, r)| {
            Arrow::new(
                format!("rel{i:04}"),
                r.from.clone(),
                r.to.clone(),
                r.kind.label(),
            )
        })
        .collect();
    Quiver::new(vertices, arrows).expect("validated document compiles to a valid quiver")
}

/// Exponent vector of a unit expression: the free abelian group on basic
/// units, written additively. Zero exponents are never stored.
pub type UnitVector = BTreeMap<String, i64>;

fn add_scaled(acc: &mut UnitVector, v: UnitVector, k: i64) {
    for (name, exp) in v {
        let entry = acc.entry(name).or_insert(0);
        *entry += exp * k;
    }
    acc.retain(|_, e| *e != 0);
}

fn normalize_rec<'a>(
    expr: &'a UnitExpr,
    decls: &BTreeMap<String, &'a UnitDecl>,
    visiting: &mut BTreeSet<&'a str>,
) -> Result<UnitVector, OntoError> {
    match expr {
        UnitExpr::Basic(name) => Ok(BTreeMap::from([(name.clone(), 1)])),
        UnitExpr::Ref(name) => {
            let decl = decls
                .get(name.as_str())
                .ok_or_else(|| OntoError::UnknownUnitName(name.clone()))?;
            if !visiting.insert(name.as_str()) {
                return Err(OntoError::AliasCycle(name.clone()));
            }
            let result = normalize_rec(&decl.body, decls, visiting);
            visiting.remove(name.as_str());
            result
        }
        UnitExpr::Product(factors) => {
            let mut acc = UnitVector::new();
            for f in factors {
                add_scaled(&mut acc, normalize_rec(f, decls, visiting)?, 1);
            }
            Ok(acc)
        }
        UnitExpr::Power(base, exp) => {
            let mut acc = UnitVector::new();
            add_scaled(&mut acc, normalize_rec(base, decls, visiting)?, *exp);
            Ok(acc)
        }
    }
}

/// Folds a unit expression to its exponent vector. Bare names resolve
/// through the document's declarations (cycle-checked); products add
/// exponents and powers multiply them.
pub fn normalize_unit(doc: &OntologyDoc, expr: &UnitExpr) -> Result<UnitVector, OntoError> {
    let decls: BTreeMap<String, &UnitDecl> = doc
        .units
        .iter()
        .map(|u| (u.name.to_lowercase(), u))
        .collect();
    let mut visiting = BTreeSet::new();
    normalize_rec(expr, &decls, &mut visiting)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::find_oriented_cycle;

    #[test]
    fn parse_minimal_document() {
        let doc =
            parse_ontology("ontology t { concept A; concept B; relation is_a A -> B; }").unwrap();
        assert_eq!(doc.name, "t");
        assert_eq!(doc.concepts.len(), 2);
        assert_eq!(doc.relations.len(), 1);
        assert_eq!(doc.relations[0].kind, RelationKind::IsA);
    }

    #[test]
    fn parse_defobject_basic_unit() {
        let doc = parse_ontology("ontology u { (defobject COULOMB (basic-unit COULOMB)) }").unwrap();
        assert_eq!(doc.units.len(), 1);
        assert_eq!(doc.units[0].name, "COULOMB");
        assert_eq!(doc.units[0].body, UnitExpr::Basic("coulomb".into()));
    }

    #[test]
    fn parse_defobject_alias_form() {
        let text = "ontology u {\n\
            (defobject NEWTON (basic-unit NEWTON))\n\
            (defobject COULOMB (basic-unit COULOMB))\n\
            (defobject NEWTON / COULOMB (= NEWTON / COULOMB (unit* newton (unit^ coulomb -1))))\n\
        }";
        let doc = parse_ontology(text).unwrap();
        assert_eq!(doc.units.len(), 3);
        let ratio = doc.unit("NEWTON / COULOMB").unwrap();
        assert_eq!(ratio.alias.as_deref(), Some("NEWTON / COULOMB"));
        let v = normalize_unit(&doc, &ratio.body).unwrap();
        assert_eq!(v, BTreeMap::from([("newton".into(), 1), ("coulomb".into(), -1)]));
    }

    #[test]
    fn undeclared_concept_is_reported_with_span() {
        let err = parse_ontology("ontology t { concept A;\n relation is_a A -> C; }").unwrap_err();
        assert_eq!(
            err,
            OntoError::UndeclaredConcept {
                line: 2,
                col: 2,
                id: "C".into()
            }
        );
    }

    #[test]
    fn unknown_bare_relation_kind_is_an_error() {
        let err = parse_ontology("ontology t { concept A; relation is_A A -> A; }").unwrap_err();
        assert!(matches!(err, OntoError::UnknownRelationKind { kind, .. } if kind == "is_A"));
    }

    #[test]
    fn custom_relation_kinds_are_quoted() {
        let doc = parse_ontology(
            "ontology t { concept A; concept B; relation \"partial order\" A -> B; }",
        )
        .unwrap();
        assert_eq!(
            doc.relations[0].kind,
            RelationKind::Custom("partial order".into())
        );
    }

    #[test]
    fn duplicate_concept_rejected() {
        let err = parse_ontology("ontology t { concept A; concept A; }").unwrap_err();
        assert_eq!(err, OntoError::DuplicateConcept("A".into()));
    }

    #[test]
    fn syntax_error_carries_position_and_expectation() {
        let err = parse_ontology("ontology t { concept A }").unwrap_err();
        match err {
            OntoError::Syntax { line, col, expected, .. } => {
                assert_eq!(line, 1);
                assert_eq!(col, 24);
                assert!(expected.contains("`;`"), "expected set was: {expected}");
            }
            other => panic!("wrong error: {other:?}"),
        }
    }

    #[test]
    fn comments_and_quoted_ids() {
        let text = "# a file-level comment\n\
            ontology spaces {\n\
              concept \"M^{1,3}\" \"Minkowski space-time\"; # trailing comment\n\
              concept Space;\n\
              relation is_a \"M^{1,3}\" -> Space;\n\
            }";
        let doc = parse_ontology(text).unwrap();
        assert_eq!(doc.concepts[0].id, "M^{1,3}");
        assert_eq!(doc.concepts[0].description.as_deref(), Some("Minkowski space-time"));
    }

    #[test]
    fn annotations_are_stored_opaquely() {
        let doc = parse_ontology(
            "ontology t { concept A; axiom \"every A is itself\"; rule \"modus ponens\"; }",
        )
        .unwrap();
        assert_eq!(doc.annotations.len(), 2);
        assert_eq!(doc.annotations[0].kind, AnnotationKind::Axiom);
    }

    #[test]
    fn serialize_empty_document() {
        let doc = OntologyDoc::new("t");
        assert_eq!(serialize_ontology(&doc), "ontology t { }\n");
        assert_eq!(parse_ontology(&serialize_ontology(&doc)).unwrap(), doc);
    }

    #[test]
    fn round_trip_preserves_structure_and_order() {
        let text = "ontology rich {\n\
            concept B;\n\
            concept A \"described\";\n\
            concept \"odd id\";\n\
            relation part_of B -> A;\n\
            relation is_a A -> B;\n\
            relation \"precedes\" A -> \"odd id\";\n\
            axiom \"stays opaque\";\n\
            (defobject COULOMB (basic-unit COULOMB))\n\
            (defobject X (= X (unit^ coulomb 2)))\n\
        }";
        let doc = parse_ontology(text).unwrap();
        let round = parse_ontology(&serialize_ontology(&doc)).unwrap();
        assert_eq!(round, doc);
        // Relation order is exactly as declared.
        let kinds: Vec<&str> = round.relations.iter().map(|r| r.kind.label()).collect();
        assert_eq!(kinds, vec!["part_of", "is_a", "precedes"]);
        // Serialization is a fixpoint.
        assert_eq!(serialize_ontology(&round), serialize_ontology(&doc));
    }

    #[test]
    fn quiver_compilation_counts_and_shape() {
        let doc =
            parse_ontology("ontology t { concept A; concept B; relation is_a A -> B; }").unwrap();
        let q = ontology_to_quiver(&doc);
        assert_eq!(q.vertices().len(), 2);
        assert_eq!(q.arrows().len(), 1);
        assert_eq!(q.arrows()[0].label, "is_a");
        assert_eq!(q.arrows()[0].source.as_str(), "A");

        // Parallel relations and self-relations are kept.
        let doc = parse_ontology(
            "ontology t { concept A; concept B;\n\
             relation is_a A -> B; relation part_of A -> B; relation associative A -> A; }",
        )
        .unwrap();
        let q = ontology_to_quiver(&doc);
        assert_eq!(q.arrows().len(), 3);
        assert!(q.arrows().iter().any(|a| a.source == a.target));
    }

    #[test]
    fn iterative_method_compiles_to_a_cycle() {
        let doc = parse_ontology(
            "ontology method {\n\
              concept Hypothesis; concept Deduction; concept Observation; concept Induction;\n\
              relation \"precedes\" Hypothesis -> Deduction;\n\
              relation \"precedes\" Deduction -> Observation;\n\
              relation \"precedes\" Observation -> Induction;\n\
              relation \"precedes\" Induction -> Hypothesis;\n\
            }",
        )
        .unwrap();
        let q = ontology_to_quiver(&doc);
        let cycle = find_oriented_cycle(&q).unwrap();
        assert_eq!(cycle.len(), 4);
    }

    #[test]
    fn normalize_unit_examples() {
        let doc = parse_ontology(
            "ontology em {\n\
            (defobject COULOMB (basic-unit COULOMB))\n\
            (defobject NEWTON (basic-unit NEWTON))\n\
            }",
        )
        .unwrap();
        let expr = UnitExpr::Product(vec![
            UnitExpr::Ref("newton".into()),
            UnitExpr::Power(Box::new(UnitExpr::Ref("coulomb".into())), -1),
        ]);
        assert_eq!(
            normalize_unit(&doc, &expr).unwrap(),
            BTreeMap::from([("newton".into(), 1), ("coulomb".into(), -1)])
        );

        // Zero exponents vanish.
        let dimensionless = UnitExpr::Power(Box::new(UnitExpr::Ref("coulomb".into())), 0);
        assert!(normalize_unit(&doc, &dimensionless).unwrap().is_empty());

        // Exponent folding.
        let folded = UnitExpr::Product(vec![
            UnitExpr::Power(Box::new(UnitExpr::Ref("newton".into())), 2),
            UnitExpr::Power(Box::new(UnitExpr::Ref("newton".into())), -1),
        ]);
        assert_eq!(
            normalize_unit(&doc, &folded).unwrap(),
            BTreeMap::from([("newton".into(), 1)])
        );

        let unknown = UnitExpr::Ref("parsec".into());
        assert_eq!(
            normalize_unit(&doc, &unknown),
            Err(OntoError::UnknownUnitName("parsec".into()))
        );
    }

    #[test]
    fn alias_cycles_are_detected() {
        let doc = parse_ontology(
            "ontology bad {\n\
            (defobject A (= A b))\n\
            (defobject B (= B a))\n\
            }",
        )
        .unwrap();
        assert_eq!(
            normalize_unit(&doc, &UnitExpr::Ref("a".into())),
            Err(OntoError::AliasCycle("a".into()))
        );
    }
}
