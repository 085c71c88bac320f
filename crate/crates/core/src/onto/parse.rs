//! Lexer and recursive-descent parser for the `.onto` DSL.
//!
//! ```text
//! doc        := "ontology" name "{" item* "}"
//! name, id   := IDENT | STRING
//! item       := "concept" id STRING? ";"
//!             | "relation" kind id "->" id ";"
//!             | ("axiom" | "rule" | "confirmation" | "induction") STRING ";"
//!             | unitdecl
//! kind       := "is_a" | "part_of" | "subordinate" | "higher"
//!             | "associative" | STRING          (custom kinds are quoted)
//! unitdecl   := "(" "defobject" unitname unitbody ")"
//! unitbody   := "(" "=" unitname unitexpr ")" | unitexpr
//! unitexpr   := "(" "basic-unit" IDENT ")"
//!             | "(" "unit" "*" unitexpr+ ")"
//!             | "(" "unit" "^" unitexpr INT ")"
//!             | IDENT
//! ```
//!
//! `#` starts a line comment. Identifiers may contain letters, digits,
//! `_`, `.`, `-`; `->` always lexes as the relation arrow.

use super::{
    Annotation, AnnotationKind, Concept, OntoError, OntologyDoc, Relation, RelationKind, Span,
    UnitDecl, UnitExpr,
};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Str(String),
    Int(i64),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Semi,
    Arrow,
    Star,
    Caret,
    Eq,
    Slash,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Str(_) => "string literal".into(),
            Tok::Int(n) => format!("`{n}`"),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Star => "`*`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

fn ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn ident_continue(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '.' | '-')
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            chars: text.chars().peekable(),
            line: 1,
            col: 1,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn error(&self, expected: &str, found: String) -> OntoError {
        OntoError::Syntax {
            line: self.line,
            col: self.col,
            expected: expected.to_string(),
            found,
        }
    }

    fn tokens(mut self) -> Result<Vec<(Tok, Span)>, OntoError> {
        let mut out = Vec::new();
        loop {
            while let Some(&c) = self.chars.peek() {
                if c == '#' {
                    while let Some(&c) = self.chars.peek() {
                        if c == '\n' {
                            break;
                        }
                        self.bump();
                    }
                } else if c.is_whitespace() {
                    self.bump();
                } else {
                    break;
                }
            }
            let span = Span {
                line: self.line,
                col: self.col,
            };
            let Some(&c) = self.chars.peek() else {
                out.push((Tok::Eof, span));
                return Ok(out);
            };
            let tok = match c {
                '{' => {
                    self.bump();
                    Tok::LBrace
                }
                '}' => {
                    self.bump();
                    Tok::RBrace
                }
                '(' => {
                    self.bump();
                    Tok::LParen
                }
                ')' => {
                    self.bump();
                    Tok::RParen
                }
                ';' => {
                    self.bump();
                    Tok::Semi
                }
                '*' => {
                    self.bump();
                    Tok::Star
                }
                '^' => {
                    self.bump();
                    Tok::Caret
                }
                '=' => {
                    self.bump();
                    Tok::Eq
                }
                '/' => {
                    self.bump();
                    Tok::Slash
                }
                '"' => {
                    self.bump();
                    let mut s = String::new();
                    loop {
                        match self.bump() {
                            Some('"') => break,
                            Some('\\') => match self.bump() {
                                Some('"') => s.push('"'),
                                Some('\\') => s.push('\\'),
                                Some('n') => s.push('\n'),
                                other => {
                                    return Err(self.error(
                                        "escape sequence",
                                        other.map_or("end of input".into(), |c| format!("`\\{c}`")),
                                    ))
                                }
                            },
                            Some(c) => s.push(c),
                            None => {
                                return Err(
                                    self.error("closing `\"`", "end of input".to_string())
                                )
                            }
                        }
                    }
                    Tok::Str(s)
                }
                '-' => {
                    self.bump();
                    match self.chars.peek().copied() {
                        Some('>') => {
                            self.bump();
                            Tok::Arrow
                        }
                        Some(d) if d.is_ascii_digit() => {
                            let mut n = String::from("-");
                            while let Some(&d) = self.chars.peek() {
                                if d.is_ascii_digit() {
                                    n.push(d);
                                    self.bump();
                                } else {
                                    break;
                                }
                            }
                            Tok::Int(n.parse().expect("digits"))
                        }
                        other => {
                            return Err(self.error(
                                "`->` or a number",
                                other.map_or("end of input".into(), |c| format!("`-{c}`")),
                            ))
                        }
                    }
                }
                d if d.is_ascii_digit() => {
                    let mut n = String::new();
                    while let Some(&d) = self.chars.peek() {
                        if d.is_ascii_digit() {
                            n.push(d);
                            self.bump();
                        } else {
                            break;
                        }
                    }
                    Tok::Int(n.parse().expect("digits"))
                }
                c if ident_start(c) => {
                    let mut s = String::new();
                    while let Some(&c) = self.chars.peek() {
                        if !ident_continue(c) {
                            break;
                        }
                        // `->` wins over `-` inside identifiers.
                        if c == '-' {
                            let mut ahead = self.chars.clone();
                            ahead.next();
                            if ahead.peek() == Some(&'>') {
                                break;
                            }
                        }
                        s.push(c);
                        self.bump();
                    }
                    Tok::Ident(s)
                }
                other => return Err(self.error("a token", format!("`{other}`"))),
            };
            out.push((tok, span));
        }
    }
}

struct Parser {
    tokens: Vec<(Tok, Span)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].0
    }

    fn span(&self) -> Span {
        self.tokens[self.pos].1
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> OntoError {
        let span = self.span();
        OntoError::Syntax {
            line: span.line,
            col: span.col,
            expected: expected.to_string(),
            found: self.peek().describe(),
        }
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<Span, OntoError> {
        if self.peek() == &tok {
            Ok(self.bump().1)
        } else {
            Err(self.error(expected))
        }
    }

    fn expect_keyword(&mut self, word: &str) -> Result<Span, OntoError> {
        match self.peek() {
            Tok::Ident(s) if s == word => Ok(self.bump().1),
            _ => Err(self.error(&format!("`{word}`"))),
        }
    }

    /// IDENT or STRING.
    fn name(&mut self, expected: &str) -> Result<(String, Span), OntoError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let span = self.bump().1;
                Ok((s, span))
            }
            Tok::Str(s) => {
                let span = self.bump().1;
                Ok((s, span))
            }
            _ => Err(self.error(expected)),
        }
    }

    fn doc(&mut self) -> Result<OntologyDoc, OntoError> {
        self.expect_keyword("ontology")?;
        let (name, _) = self.name("ontology name")?;
        self.expect(Tok::LBrace, "`{`")?;
        let mut doc = OntologyDoc::new(name);
        loop {
            match self.peek().clone() {
                Tok::RBrace => {
                    self.bump();
                    break;
                }
                Tok::LParen => {
                    let unit = self.unit_decl()?;
                    doc.units.push(unit);
                }
                Tok::Ident(word) => match word.as_str() {
                    "concept" => {
                        let span = self.bump().1;
                        let (id, _) = self.name("concept id")?;
                        let description = match self.peek().clone() {
                            Tok::Str(s) => {
                                self.bump();
                                Some(s)
                            }
                            _ => None,
                        };
                        self.expect(Tok::Semi, "`;`")?;
                        doc.concepts.push(Concept {
                            id,
                            description,
                            span,
                        });
                    }
                    "relation" => {
                        let span = self.bump().1;
                        let kind = self.relation_kind()?;
                        let (from, _) = self.name("concept id")?;
                        self.expect(Tok::Arrow, "`->`")?;
                        let (to, _) = self.name("concept id")?;
                        self.expect(Tok::Semi, "`;`")?;
                        doc.relations.push(Relation {
                            kind,
                            from,
                            to,
                            span,
                        });
                    }
                    "axiom" | "rule" | "confirmation" | "induction" => {
                        let span = self.bump().1;
                        let kind = match word.as_str() {
                            "axiom" => AnnotationKind::Axiom,
                            "rule" => AnnotationKind::Rule,
                            "confirmation" => AnnotationKind::Confirmation,
                            _ => AnnotationKind::Induction,
                        };
                        let text = match self.peek().clone() {
                            Tok::Str(s) => {
                                self.bump();
                                s
                            }
                            _ => return Err(self.error("string literal")),
                        };
                        self.expect(Tok::Semi, "`;`")?;
                        doc.annotations.push(Annotation { kind, text, span });
                    }
                    _ => {
                        return Err(self.error(
                            "`concept`, `relation`, `axiom`, `rule`, `confirmation`, `induction`, `(defobject ...)`, or `}`",
                        ))
                    }
                },
                _ => {
                    return Err(self.error(
                        "`concept`, `relation`, an annotation, `(defobject ...)`, or `}`",
                    ))
                }
            }
        }
        match self.peek() {
            Tok::Eof => Ok(doc),
            _ => Err(self.error("end of input")),
        }
    }

    fn relation_kind(&mut self) -> Result<RelationKind, OntoError> {
        let span = self.span();
        match self.peek().clone() {
            Tok::Ident(word) => {
                let kind = match word.as_str() {
                    "is_a" => RelationKind::IsA,
                    "part_of" => RelationKind::PartOf,
                    "subordinate" => RelationKind::Subordinate,
                    "higher" => RelationKind::Higher,
                    "associative" => RelationKind::Associative,
                    other => {
                        return Err(OntoError::UnknownRelationKind {
                            line: span.line,
                            col: span.col,
                            kind: other.to_string(),
                        })
                    }
                };
                self.bump();
                Ok(kind)
            }
            Tok::Str(label) => {
                if label.is_empty() {
                    return Err(OntoError::UnknownRelationKind {
                        line: span.line,
                        col: span.col,
                        kind: label,
                    });
                }
                self.bump();
                Ok(RelationKind::Custom(label))
            }
            _ => Err(self.error("relation kind")),
        }
    }

    /// A unit name is a run of identifier and `/` tokens, joined by spaces,
    /// e.g. `NEWTON / COULOMB`. The run stops before the expression that
    /// follows it: an atom directly followed by `)` is that expression, not
    /// part of the name.
    fn unit_name(&mut self) -> Result<String, OntoError> {
        let mut parts = Vec::new();
        loop {
            let next_is_rparen = matches!(self.tokens.get(self.pos + 1), Some((Tok::RParen, _)));
            match self.peek().clone() {
                Tok::Ident(s) if !next_is_rparen => {
                    self.bump();
                    parts.push(s);
                }
                Tok::Slash if !next_is_rparen => {
                    self.bump();
                    parts.push("/".to_string());
                }
                _ => break,
            }
        }
        if parts.is_empty() {
            return Err(self.error("unit name"));
        }
        Ok(parts.join(" "))
    }

    fn unit_decl(&mut self) -> Result<UnitDecl, OntoError> {
        let span = self.expect(Tok::LParen, "`(`")?;
        self.expect_keyword("defobject")?;
        let name = self.unit_name()?;
        // Body: either the (= name expr) alias form or a bare expression.
        let (alias, body) = if self.peek() == &Tok::LParen && self.tokens[self.pos + 1].0 == Tok::Eq
        {
            self.bump(); // (
            self.bump(); // =
            let alias = self.unit_name()?;
            let expr = self.unit_expr()?;
            self.expect(Tok::RParen, "`)`")?;
            (Some(alias), expr)
        } else {
            (None, self.unit_expr()?)
        };
        self.expect(Tok::RParen, "`)`")?;
        Ok(UnitDecl {
            name,
            alias,
            body,
            span,
        })
    }

    fn unit_expr(&mut self) -> Result<UnitExpr, OntoError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(UnitExpr::Ref(s.to_lowercase()))
            }
            Tok::LParen => {
                self.bump();
                let expr = match self.peek().clone() {
                    Tok::Ident(head) if head == "basic-unit" => {
                        self.bump();
                        let (name, _) = self.name("basic unit name")?;
                        UnitExpr::Basic(name.to_lowercase())
                    }
                    Tok::Ident(head) if head == "unit" => {
                        self.bump();
                        match self.bump().0 {
                            Tok::Star => {
                                let mut factors = vec![self.unit_expr()?];
                                while self.peek() != &Tok::RParen {
                                    factors.push(self.unit_expr()?);
                                }
                                UnitExpr::Product(factors)
                            }
                            Tok::Caret => {
                                let base = self.unit_expr()?;
                                let exponent = match self.bump().0 {
                                    Tok::Int(n) => n,
                                    _ => return Err(self.error("integer exponent")),
                                };
                                UnitExpr::Power(Box::new(base), exponent)
                            }
                            _ => return Err(self.error("`*` or `^` after `unit`")),
                        }
                    }
                    _ => return Err(self.error("`basic-unit`, `unit*`, or `unit^`")),
                };
                self.expect(Tok::RParen, "`)`")?;
                Ok(expr)
            }
            _ => Err(self.error("unit expression")),
        }
    }
}

/// Parses one ontology document. Relation endpoints are checked against the
/// declared concepts after the document is assembled, so forward references
/// are fine.
pub fn parse_ontology(text: &str) -> Result<OntologyDoc, OntoError> {
    let tokens = Lexer::new(text).tokens()?;
    let mut parser = Parser { tokens, pos: 0 };
    let doc = parser.doc()?;

    let mut seen = std::collections::BTreeSet::new();
    for c in &doc.concepts {
        if !seen.insert(c.id.as_str()) {
            return Err(OntoError::DuplicateConcept(c.id.clone()));
        }
    }
    for r in &doc.relations {
        for endpoint in [&r.from, &r.to] {
            if !seen.contains(endpoint.as_str()) {
                return Err(OntoError::UndeclaredConcept {
                    line: r.span.line,
                    col: r.span.col,
                    id: endpoint.clone(),
                });
            }
        }
    }
    Ok(doc)
}
